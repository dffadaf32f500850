use altknot_core::decider::{decide_alternating, fundamental_surfaces, vertex_surfaces, DeciderOptions, Decision};
use altknot_core::diagram::{checkerboard_stats, parse_pd_entry, verify_alternating_diagram, verify_star_diagrammatic};
use altknot_core::enumeration::{EnumOptions, SurfaceSet};
use altknot_core::normal::Layout;
use altknot_core::triangulation::{
    farey_distance, filled_homology, first_homology, layer_tetrahedron, normalize_boundary,
};
use altknot_core::{BoundaryTriangulation, Error, Triangulation};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_ERROR: u8 = 4;

/// Writes to stdout, exiting quietly once the reader has gone away.
fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed printing to stdout: {e}");
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(format_args!("{}\n", format_args!($($arg)*))) };
}

#[derive(Parser)]
#[command(name = "altknot", version, about = "Decide whether a knot exterior is prime and alternating")]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    /// Worker threads for enumeration (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full decision procedure.
    Check {
        input: PathBuf,
        #[arg(long)]
        assume_atoroidal: bool,
        #[command(flatten)]
        run: RunArgs,
        /// Also write the result document to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List vertex or fundamental normal surfaces.
    Enumerate {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Vertex)]
        kind: Kind,
        /// Layer tetrahedra first so that the meridian is a boundary edge.
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the diagram identities over a directory or list of PD files.
    Oracle {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Layer a tetrahedron on a boundary edge, or normalize the meridian.
    Layer {
        input: PathBuf,
        /// Boundary edge class to layer on.
        #[arg(long, conflicts_with = "normalize", required_unless_present = "normalize")]
        edge: Option<usize>,
        #[arg(long)]
        normalize: bool,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate a triangulation and describe its boundary.
    Info {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Intermediate rays allowed during vertex enumeration.
    #[arg(long, default_value_t = EnumOptions::default().max_rays, value_parser = positive)]
    max_rays: usize,
    /// Lattice points examined per cone during Hilbert basis search.
    #[arg(long, default_value_t = EnumOptions::default().max_candidates, value_parser = positive)]
    max_candidates: usize,
    /// Print the structured result document instead of the summary.
    #[arg(long)]
    json: bool,
}

impl RunArgs {
    fn options(&self, assume_atoroidal: bool) -> DeciderOptions {
        DeciderOptions {
            assume_atoroidal,
            enumeration: EnumOptions { max_rays: self.max_rays, max_candidates: self.max_candidates },
            cache_dir: self.cache_dir.clone(),
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Vertex,
    Fundamental,
}

fn main() -> ExitCode {
    // Usage errors share the error exit code so that 2 always means UNKNOT.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn read_triangulation(path: &Path) -> Result<Triangulation, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    Triangulation::parse(&text)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    outln!("{}", to_json(value)?);
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Io(std::io::Error::other(e)))
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Check { input, assume_atoroidal, run, out } => {
            let tri = read_triangulation(&input)?;
            let m = tri
                .meridian()
                .cloned()
                .ok_or_else(|| Error::InvalidMarking(format!("{} has no meridian line", input.display())))?;
            let start = Instant::now();
            let decision = decide_alternating(&tri, &m, &run.options(assume_atoroidal))?;
            log::info!("decided in {:.3}s", start.elapsed().as_secs_f64());
            if let Some(path) = out {
                std::fs::write(path, to_json(&decision)? + "\n")?;
            }
            if run.json {
                print_json(&decision)?;
            } else {
                print_decision(&decision);
            }
            Ok(decision.exit_code() as u8)
        }
        Command::Enumerate { input, kind, normalize, run } => {
            let mut tri = read_triangulation(&input)?;
            tri.require_knot_manifold()?;
            if normalize {
                let m = tri
                    .meridian()
                    .cloned()
                    .ok_or_else(|| Error::InvalidMarking("--normalize needs a meridian line".into()))?;
                tri = normalize_boundary(&tri, &m)?;
            }
            let layout = Layout::new(&tri)?;
            let opts = run.options(false);
            let start = Instant::now();
            let vertices = vertex_surfaces(&tri, &layout, &opts)?;
            let set = match kind {
                Kind::Vertex => vertices,
                Kind::Fundamental => fundamental_surfaces(&tri, &layout, &vertices, &opts)?,
            };
            log::info!("enumerated in {:.3}s", start.elapsed().as_secs_f64());
            if run.json {
                print_json(&Listing { fixture_hash: tri.content_hash(), set: &set })?;
            } else {
                print_listing(&set);
            }
            Ok(0)
        }
        Command::Oracle { inputs, json } => oracle(&inputs, json),
        Command::Layer { input, edge, output, .. } => {
            let tri = read_triangulation(&input)?;
            tri.require_knot_manifold()?;
            let layered = match edge {
                Some(e) => layer_tetrahedron(&tri, e)?,
                None => {
                    let m = tri
                        .meridian()
                        .cloned()
                        .ok_or_else(|| Error::InvalidMarking("--normalize needs a meridian line".into()))?;
                    normalize_boundary(&tri, &m)?
                }
            };
            let text = layered.serialize();
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => out!("{text}"),
            }
            Ok(0)
        }
        Command::Info { input, json } => info(&input, json),
    }
}

#[derive(Serialize)]
struct Listing<'a> {
    fixture_hash: String,
    #[serde(flatten)]
    set: &'a SurfaceSet,
}

fn print_listing(set: &SurfaceSet) {
    outln!("{} {} surfaces", set.len(), set.kind.tag());
    for s in &set.surfaces {
        outln!(
            "chi {:>3}  {}  {}  boundary ({},{},{})  {}",
            s.euler,
            if s.connected { "connected   " } else { "disconnected" },
            if s.two_sided { "two-sided" } else { "one-sided" },
            s.boundary[0],
            s.boundary[1],
            s.boundary[2],
            s.coords
        );
    }
}

fn print_decision(d: &Decision) {
    outln!("verdict: {}", d.verdict.as_str());
    outln!("fixture: {}", d.fixture_hash);
    outln!("tetrahedra: {} ({} after normalizing the meridian)", d.tetrahedra, d.normalized_tetrahedra);
    outln!("vertex surfaces: {}", d.counts.vertex);
    match &d.screens.unknot_disk {
        Some(c) => outln!("unknot screen: spanning disk {c}"),
        None => outln!("unknot screen: no spanning disk"),
    }
    let parallel = d.screens.tori.iter().filter(|t| t.boundary_parallel).count();
    outln!(
        "torus screen: {} tori, {} boundary-parallel{}",
        d.screens.tori.len(),
        parallel,
        if d.screens.assume_atoroidal { ", others assumed inessential" } else { "" }
    );
    for t in &d.offending_tori {
        outln!("  unresolved torus {t}");
    }
    if let (Some(f), Some(s), Some(p)) = (d.counts.fundamental, d.counts.spanning, d.counts.passing_pairs) {
        outln!("fundamental surfaces: {f}, connected spanning: {s}, pairs passing: {p}");
    }
    if let Some(w) = &d.witness {
        for (name, s) in [("a", &w.a), ("b", &w.b)] {
            outln!("witness {name}: chi {} boundary {:?} y {}  {}", s.euler, s.family, s.y, s.coords);
        }
        outln!("i = {}", w.intersection);
        outln!("{}", w.star);
        outln!("DT: {}", w.dt);
    }
    for a in &d.anomalies {
        outln!("anomaly: same-family pair passes with i = {}", a.intersection);
    }
}

#[derive(Serialize)]
struct OracleRow {
    file: String,
    name: Option<String>,
    n: Option<usize>,
    chi_black: Option<i64>,
    chi_white: Option<i64>,
    alternating: Option<bool>,
    expected_alternating: Option<bool>,
    star: Option<bool>,
    nugatory: Vec<usize>,
    error: Option<String>,
    pass: bool,
}

fn pd_files(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, Error> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(p)?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()?;
            found.retain(|f| f.extension().is_some_and(|x| x == "pd"));
            found.sort();
            files.extend(found);
        } else {
            files.push(p.clone());
        }
    }
    Ok(files)
}

fn oracle_row(path: &Path) -> OracleRow {
    let mut row = OracleRow {
        file: path.display().to_string(),
        name: None,
        n: None,
        chi_black: None,
        chi_white: None,
        alternating: None,
        expected_alternating: None,
        star: None,
        nugatory: Vec::new(),
        error: None,
        pass: false,
    };
    let result = std::fs::read_to_string(path).map_err(Error::from).and_then(|text| {
        let entry = parse_pd_entry(&text)?;
        let d = &entry.diagram;
        let stats = checkerboard_stats(d)?;
        let star = verify_star_diagrammatic(d)?;
        row.name = entry.name;
        row.n = Some(stats.n);
        row.chi_black = Some(stats.chi_black);
        row.chi_white = Some(stats.chi_white);
        row.alternating = Some(verify_alternating_diagram(d));
        row.expected_alternating = entry.alternating;
        row.star = Some(star.holds);
        row.nugatory = star.nugatory;
        Ok(())
    });
    match result {
        Ok(()) => {
            let flag_ok = row.expected_alternating.is_none_or(|e| Some(e) == row.alternating);
            let star_ok = row.alternating != Some(true) || row.star == Some(true);
            row.pass = flag_ok && star_ok;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

fn oracle(inputs: &[PathBuf], json: bool) -> Result<u8, Error> {
    let files = pd_files(inputs)?;
    if files.is_empty() {
        log::warn!("no PD files found");
    }
    let rows: Vec<OracleRow> = files.iter().map(|f| oracle_row(f)).collect();
    let failed = rows.iter().filter(|r| !r.pass).count();
    if json {
        print_json(&rows)?;
    } else {
        outln!("{:<8} {:>3} {:>6} {:>6} {:>5} {:>5}  result", "knot", "n", "chi_b", "chi_w", "alt", "star");
        for r in &rows {
            let name = r.name.clone().unwrap_or_else(|| r.file.clone());
            match &r.error {
                Some(e) => outln!("{name:<8} error: {e}"),
                None => outln!(
                    "{:<8} {:>3} {:>6} {:>6} {:>5} {:>5}  {}",
                    name,
                    r.n.unwrap_or(0),
                    r.chi_black.unwrap_or(0),
                    r.chi_white.unwrap_or(0),
                    r.alternating.unwrap_or(false),
                    r.star.unwrap_or(false),
                    if r.pass { "ok" } else { "FAIL" }
                ),
            }
        }
        outln!("{} diagrams, {} failed", rows.len(), failed);
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

#[derive(Serialize)]
struct Info {
    fixture_hash: String,
    tetrahedra: usize,
    valid: bool,
    failures: Vec<&'static str>,
    first_homology: Option<String>,
    boundary_edges: Option<[usize; 3]>,
    meridian: Option<String>,
    filled_homology: Option<String>,
    layers_to_normalize: Option<usize>,
    boundary_slopes: Option<[Option<String>; 3]>,
}

fn info(path: &Path, json: bool) -> Result<u8, Error> {
    let tri = read_triangulation(path)?;
    let report = tri.validate();
    let mut out = Info {
        fixture_hash: tri.content_hash(),
        tetrahedra: tri.size(),
        valid: report.ok(),
        failures: report.failures(),
        first_homology: None,
        boundary_edges: None,
        meridian: tri.meridian().map(|m| m.to_string()),
        filled_homology: None,
        layers_to_normalize: None,
        boundary_slopes: None,
    };
    if report.ok() {
        out.first_homology = Some(first_homology(&tri)?.to_string());
        let bdry = BoundaryTriangulation::new(&tri)?;
        out.boundary_edges = Some(bdry.edges);
        if let Some(m) = tri.meridian() {
            let h = m.homology(&tri)?;
            out.filled_homology = Some(filled_homology(&tri, h)?.to_string());
            out.layers_to_normalize = Some(farey_distance(&tri, m)?);
            if bdry.is_normalized() {
                out.boundary_slopes = Some(bdry.slopes.map(|s| s.map(|s| s.to_string())));
            }
        }
    }
    if json {
        print_json(&out)?;
    } else {
        outln!("fixture: {}", out.fixture_hash);
        outln!("tetrahedra: {}", out.tetrahedra);
        if out.valid {
            outln!("valid knot manifold triangulation");
        }
        for f in &out.failures {
            outln!("invalid: {f}");
        }
        if let Some(h) = &out.first_homology {
            outln!("H1: {h}");
        }
        if let Some(e) = out.boundary_edges {
            outln!("boundary edge classes: {} {} {}", e[0], e[1], e[2]);
        }
        if let Some(m) = &out.meridian {
            outln!("{m}");
        }
        if let Some(h) = &out.filled_homology {
            outln!("H1 after filling along the meridian: {h}");
        }
        if let Some(k) = out.layers_to_normalize {
            outln!("layers needed to make the meridian an edge: {k}");
        }
        if let Some(s) = &out.boundary_slopes {
            let s: Vec<&str> = s.iter().map(|x| x.as_deref().unwrap_or("?")).collect();
            outln!("boundary edge slopes: {}", s.join(" "));
        }
    }
    Ok(if out.valid { 0 } else { 1 })
}
