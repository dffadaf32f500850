mod common;

use altknot_core::diagram::{
    checkerboard_stats, dt_code, nugatory_crossings, parse_pd, verify_alternating_diagram, verify_star_diagrammatic,
    PlanarDiagram,
};
use altknot_core::DtCode;
use common::{all_pd, pd};

#[test]
fn small_knots_have_the_expected_faces_and_surfaces() {
    let t = pd("3_1").diagram;
    assert_eq!((t.crossing_count(), t.face_count()), (3, 5));
    let s = checkerboard_stats(&t).unwrap();
    let mut chis = [s.chi_black, s.chi_white];
    chis.sort();
    assert_eq!(chis, [-1, 0]);
    assert_eq!(s.i_diagrammatic, 6);

    let f = pd("4_1").diagram;
    assert_eq!((f.crossing_count(), f.face_count()), (4, 6));
    let s = checkerboard_stats(&f).unwrap();
    assert_eq!((s.chi_black, s.chi_white), (-1, -1));
}

#[test]
fn corpus_faces_and_euler_identity() {
    let all = all_pd();
    assert_eq!(all.len(), 17);
    for (name, e) in all {
        let d = &e.diagram;
        assert_eq!(d.face_count(), d.crossing_count() + 2, "{name}");
        let s = checkerboard_stats(d).unwrap();
        assert_eq!(s.chi_black + s.chi_white + s.n as i64, 2, "{name}");
        assert_eq!(Some(d.crossing_count()), e.crossing_number, "{name}");
    }
}

#[test]
fn alternation_follows_the_corpus_labels() {
    for (name, e) in all_pd() {
        let non = ["8_19", "8_20", "8_21"].contains(&name.as_str());
        assert_eq!(verify_alternating_diagram(&e.diagram), !non, "{name}");
        assert_eq!(e.alternating, Some(!non), "{name}");
    }
    assert!(!verify_alternating_diagram(&PlanarDiagram::new(vec![]).unwrap()));
}

#[test]
fn criterion_holds_on_reduced_alternating_diagrams() {
    for (name, e) in all_pd() {
        if verify_alternating_diagram(&e.diagram) {
            let star = verify_star_diagrammatic(&e.diagram).unwrap();
            assert!(star.holds && star.nugatory.is_empty(), "{name}");
        }
    }
}

#[test]
fn nugatory_crossings_are_reported() {
    // A trefoil with an extra curl on one strand.
    let d = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,7) X(7,8,8,2)").unwrap();
    assert_eq!(nugatory_crossings(&d), vec![3]);
    let star = verify_star_diagrammatic(&d).unwrap();
    assert_eq!(star.nugatory, vec![3]);
}

#[test]
fn malformed_codes_are_rejected() {
    assert!(parse_pd("X(1,1,2,2) X(1,3,3,4)").is_err());
    // Two separate curls.
    assert!(parse_pd("X(1,2,2,1) X(3,4,4,3)").is_err());
    assert!(parse_pd("X(1,2,3)").is_err());
}

/// Unsigned DT codes from the standard knot tables.
const TABLE: [(&str, &str); 14] = [
    ("3_1", "4 6 2"),
    ("4_1", "4 6 8 2"),
    ("5_1", "6 8 10 2 4"),
    ("5_2", "4 8 10 2 6"),
    ("6_1", "4 8 12 10 2 6"),
    ("6_2", "4 8 10 12 2 6"),
    ("6_3", "4 8 10 2 12 6"),
    ("7_1", "8 10 12 14 2 4 6"),
    ("7_2", "4 10 14 12 2 8 6"),
    ("7_3", "6 10 12 14 2 4 8"),
    ("7_4", "6 10 12 14 4 2 8"),
    ("7_5", "4 10 12 14 2 8 6"),
    ("7_6", "4 8 12 2 14 6 10"),
    ("7_7", "4 8 10 12 2 14 6"),
];

#[test]
fn corpus_dt_codes_match_the_tables() {
    for (name, code) in TABLE {
        let ours = dt_code(&pd(name).diagram).unwrap();
        let table: DtCode = code.parse().unwrap();
        assert!(ours.is_valid());
        assert_eq!(ours.canonical(), table.canonical(), "{name}");
    }
}
