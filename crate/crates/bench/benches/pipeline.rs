use altknot_bench::{pd_corpus, triangulation};
use altknot_core::decider::{decide_alternating, DeciderOptions};
use altknot_core::diagram::{checkerboard_stats, verify_alternating_diagram};
use altknot_core::enumeration::{enumerate_fundamental_surfaces, enumerate_vertex_surfaces};
use altknot_core::{EnumOptions, Layout};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("vertex_surfaces");
    for name in ["trefoil", "torus_3_4", "figure8"] {
        let tri = triangulation(name);
        let layout = Layout::new(&tri).unwrap();
        g.bench_function(name, |b| {
            b.iter(|| enumerate_vertex_surfaces(black_box(&tri), &layout, &EnumOptions::default()).unwrap())
        });
    }
    g.finish();

    let tri = triangulation("trefoil");
    let layout = Layout::new(&tri).unwrap();
    c.bench_function("fundamental_surfaces/trefoil", |b| {
        b.iter(|| enumerate_fundamental_surfaces(black_box(&tri), &layout, &EnumOptions::default()).unwrap())
    });
}

fn decider(c: &mut Criterion) {
    let tri = triangulation("trefoil");
    let m = tri.meridian().unwrap().clone();
    c.bench_function("decide/trefoil", |b| {
        b.iter(|| decide_alternating(black_box(&tri), &m, &DeciderOptions::default()).unwrap())
    });
}

fn diagrams(c: &mut Criterion) {
    let corpus = pd_corpus();
    c.bench_function("diagram_oracle/corpus", |b| {
        b.iter(|| {
            for e in &corpus {
                black_box(checkerboard_stats(&e.diagram).unwrap());
                black_box(verify_alternating_diagram(&e.diagram));
            }
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = enumeration, decider, diagrams
}
criterion_main!(benches);
