//! The `imglab` command line.
//!
//! Every subcommand renders a deterministic primary output (stdout, or the
//! file given by `--out`). With `--out PATH` a metadata sidecar
//! `PATH.meta.json` records the arguments, crate version, seed and wall time.
//!
//! Exit codes: `0` success, `1` a checked property failed, `2` bad input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::automaton::{img_automaton, moore_dot, recursion_mismatch, MealyAutomaton};
use crate::format::fmt_sig;
use crate::group::{
    act, element_order, gamma_normal_form, level_decomposition, section_at, triviality, GroupWord, TreeVertex,
};
use crate::measure::{
    fixed_point, phi_transform, restrict0, self_affinity_residual, uniqueness_scan, walk_oracle, FiniteMeasure,
};
use crate::presentation::{branch_identity_check, hnn_presentation, verify_relators};
use crate::schreier::{ExportFormat, SchreierGraph};
use crate::spectral::{
    attractor_cloud, cloud_csv, conjecture_report, histogram, inclusion_check, line_spectrum_candidates,
    markov_spectrum, random_admissible_points, schur_residual, special_point_check, BoxBounds,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "imglab", version, about = "Computational laboratory for IMG(z² + i)", args_override_self = true)]
pub struct Cli {
    /// Write the primary output to this file (plus a `.meta.json` sidecar).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// `key=value` file mirroring long flags; flags on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Word arithmetic and the word problem.
    #[command(subcommand)]
    Word(WordCmd),
    /// Mealy automata.
    #[command(subcommand)]
    Automaton(AutomatonCmd),
    /// Relators of the L-presentation and related identities.
    #[command(subcommand)]
    Relators(RelatorsCmd),
    /// Level Schreier graphs.
    #[command(subcommand)]
    Schreier(SchreierCmd),
    /// Spectra of the Markov operators.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// The operator pencil and its renormalisation map.
    #[command(subcommand)]
    Pencil(PencilCmd),
    /// Point cloud of preimages of the plane P.
    Attractor(AttractorArgs),
    /// Self-affine measures and the random-walk oracle.
    #[command(subcommand)]
    Measure(MeasureCmd),
}

#[derive(Debug, Subcommand)]
pub enum WordCmd {
    /// Free reduction followed by the C₂ ∗ D₄ normal form.
    Reduce { word: String },
    /// Order of the element, if at most `--cap`.
    Order {
        word: String,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Whether the word is the identity of the group.
    Trivial { word: String },
    /// Image of a vertex.
    Act { word: String, vertex: String },
    /// Section at a vertex.
    Section { word: String, vertex: String },
    /// Sections and permutation on a whole level.
    Decompose {
        word: String,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum AutomatonCmd {
    /// Moore diagram in DOT.
    Dot {
        /// Automaton JSON; defaults to the generating automaton.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Invertibility, and agreement with the wreath recursion for states named a, b, c.
    Check {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum RelatorsCmd {
    /// Verifies φⁿ(r) for all seven families and n ≤ max-n.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// CSV with per-relator timings.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// The branch identities [b,c] = ([a,b],1) and [c,bᵃ] = ([b,c],1).
    Branch {
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// HNN-extension presentation as JSON.
    Hnn,
}

#[derive(Debug, Subcommand)]
pub enum SchreierCmd {
    Build {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value = "dot")]
        format: String,
        /// Keep loops (needed for regular degree 3).
        #[arg(long)]
        loops: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpectrumCmd {
    /// Eigenvalues of Mₙ with multiplicities.
    Eigs {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Eigenvalue histogram of Mₙ over [−1, 1].
    Histogram {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 100)]
        bins: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PencilCmd {
    /// Schur identity at random admissible points.
    SchurCheck {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every eigenvalue of aₙ + bₙ + cₙ reaches P ∪ Z1 ∪ Z2 within n steps.
    Inclusion {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Fraction of eigenvalues explained by preimages of P (informational).
    Conjecture {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// 4 is an eigenvalue of (aₙ₋₁ + 1)(cₙ₋₁ + 1).
    SpecialPoint {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Zeros of ψₖ on the line y = z = 1.
    Candidates {
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct AttractorArgs {
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, default_value_t = 200)]
    pub grid: usize,
    /// `lo,hi` or `ylo,yhi,zlo,zhi,llo,lhi`.
    #[arg(long = "box", default_value = "-3,3", allow_hyphen_values = true)]
    pub bounds: String,
    /// Nodes with `|ψ| ≤ tol` are emitted as they are.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum MeasureCmd {
    /// ζ and the fixed point of Φ.
    FixedPoint {
        #[arg(long, default_value_t = 1e-15)]
        tol: f64,
    },
    /// μ|₀ and Φ(μ) for μ = xa + yb + zc.
    Restrict {
        /// `x,y,z`, defaults to uniform.
        #[arg(long)]
        weights: Option<String>,
    },
    /// μ|₀ = αe + (1 − α)μ within tol (defaults to the fixed point).
    SelfAffine {
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Multi-start search for interior fixed points of Φ.
    Uniqueness {
        #[arg(long, default_value_t = 100)]
        grid: usize,
    },
    /// Monte-Carlo estimate of μ|₀.
    Walk {
        #[arg(long, default_value_t = 1_000_000)]
        returns: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        streams: usize,
        #[arg(long)]
        weights: Option<String>,
        /// Fail unless the L1 distance to the closed form is at most this.
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
    },
}

/// Primary output of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    /// Whether every checked property held.
    pub passed: bool,
    pub seed: Option<u64>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, passed: true, seed: None }
    }

    fn check(output: String, passed: bool) -> Self {
        Outcome { output, passed, seed: None }
    }
}

/// Appends `--key value` pairs from a `key=value` file for every key not
/// already given on the command line.
fn merge_config(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let strings: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let path = strings.iter().enumerate().find_map(|(i, a)| {
        a.strip_prefix("--config=").map(String::from).or_else(|| (a == "--config").then(|| strings.get(i + 1).cloned()).flatten())
    });
    let Some(path) = path else { return Ok(argv) };
    let text = fs::read_to_string(&path).map_err(|e| Error::input(format!("cannot read config {path}: {e}")))?;
    let given = |key: &str| {
        let flag = format!("--{key}");
        strings.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
    };
    let mut out = argv;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::input(format!("{path}:{}: expected key=value", lineno + 1)))?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        if key == "config" || given(&key) {
            continue;
        }
        match value {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            v => out.push(format!("--{key}={v}").into()),
        }
    }
    Ok(out)
}

fn parse_weights(s: Option<&str>) -> Result<FiniteMeasure> {
    let Some(s) = s else { return Ok(FiniteMeasure::uniform()) };
    let vals = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::input(format!("bad weight {t:?}"))))
        .collect::<Result<Vec<f64>>>()?;
    match vals.as_slice() {
        [x, y, z] => FiniteMeasure::on_generators(*x, *y, *z),
        _ => Err(Error::input("weights need three values x,y,z")),
    }
}

fn read_automaton(file: Option<&Path>) -> Result<MealyAutomaton> {
    match file {
        None => Ok(img_automaton()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::input(format!("cannot read {}: {e}", p.display())))?;
            MealyAutomaton::from_json(&text)
        }
    }
}

fn measure_line(label: &str, m: &FiniteMeasure) -> String {
    format!("{label},{},{},{},{}\n", fmt_sig(m.e), fmt_sig(m.a), fmt_sig(m.b), fmt_sig(m.c))
}

fn run_word(cmd: WordCmd) -> Result<Outcome> {
    let out = match cmd {
        WordCmd::Reduce { word } => {
            let w = GroupWord::parse(&word)?;
            let nf = gamma_normal_form(&w);
            format!("{}\n{}\n", nf.geodesic(), nf)
        }
        WordCmd::Order { word, cap } => match element_order(&GroupWord::parse(&word)?, cap) {
            Some(k) => format!("{k}\n"),
            None => format!("> {cap}\n"),
        },
        WordCmd::Trivial { word } => format!("{}\n", triviality(&GroupWord::parse(&word)?).trivial),
        WordCmd::Act { word, vertex } => format!("{}\n", act(&GroupWord::parse(&word)?, &TreeVertex::parse(&vertex)?)),
        WordCmd::Section { word, vertex } => {
            format!("{}\n", section_at(&GroupWord::parse(&word)?, &TreeVertex::parse(&vertex)?))
        }
        WordCmd::Decompose { word, level } => {
            if level > 12 {
                return Err(Error::input("decompose is limited to level 12"));
            }
            let d = level_decomposition(&GroupWord::parse(&word)?, level);
            let sections: Vec<String> = d.sections.iter().map(|s| s.to_string()).collect();
            format!("({}) {}\n", sections.join(","), d.cycles())
        }
    };
    Ok(Outcome::ok(out))
}

fn run_automaton(cmd: AutomatonCmd) -> Result<Outcome> {
    match cmd {
        AutomatonCmd::Dot { file } => Ok(Outcome::ok(moore_dot(&read_automaton(file.as_deref())?))),
        AutomatonCmd::Check { file, depth } => {
            if depth > 16 {
                return Err(Error::input("check depth is limited to 16"));
            }
            let m = read_automaton(file.as_deref())?;
            let invertible = m.is_invertible();
            let mismatch = if invertible { recursion_mismatch(&m, depth)? } else { None };
            let mut out = format!("invertible,{invertible}\n");
            match &mismatch {
                None => {
                    let _ = writeln!(out, "recursion_agrees,true");
                }
                Some((state, v)) => {
                    let _ = writeln!(out, "recursion_agrees,false\nmismatch,{state},{v}");
                }
            }
            Ok(Outcome::check(out, invertible && mismatch.is_none()))
        }
    }
}

fn run_relators(cmd: RelatorsCmd) -> Result<Outcome> {
    match cmd {
        RelatorsCmd::Verify { max_n, report } => {
            let r = verify_relators(max_n, |_| {})?;
            if let Some(path) = report {
                fs::write(&path, r.to_csv()).map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))?;
            }
            let mut out = String::from("family,n,reduced_length,verified\n");
            for row in &r.rows {
                let _ = writeln!(out, "{},{},{},{}", row.family, row.n, row.reduced_length, row.verified);
            }
            Ok(Outcome::check(out, r.all_verified()))
        }
        RelatorsCmd::Branch { depth } => {
            let ok = branch_identity_check(depth)?;
            Ok(Outcome::check(format!("{ok}\n"), ok))
        }
        RelatorsCmd::Hnn => {
            let h = hnn_presentation();
            let ok = h.verified.iter().all(|v| *v);
            Ok(Outcome::check(h.to_json() + "\n", ok))
        }
    }
}

fn run_schreier(cmd: SchreierCmd) -> Result<Outcome> {
    let SchreierCmd::Build { level, format, loops } = cmd;
    let format: ExportFormat = format.parse()?;
    Ok(Outcome::ok(SchreierGraph::build(level, loops)?.export(format)))
}

fn run_spectrum(cmd: SpectrumCmd) -> Result<Outcome> {
    match cmd {
        SpectrumCmd::Eigs { level, tol } => Ok(Outcome::ok(markov_spectrum(level, tol)?.to_csv(tol))),
        SpectrumCmd::Histogram { level, bins } => {
            Ok(Outcome::ok(histogram(&markov_spectrum(level, 1e-9)?, bins)?.to_csv()))
        }
    }
}

fn run_pencil(cmd: PencilCmd) -> Result<Outcome> {
    match cmd {
        PencilCmd::SchurCheck { level, tol, samples, seed } => {
            let mut worst = 0.0_f64;
            for p in random_admissible_points(samples, seed) {
                worst = worst.max(schur_residual(level, p)?);
            }
            let passed = worst <= tol;
            let out = format!("level,samples,max_residual,passed\n{level},{samples},{},{passed}\n", fmt_sig(worst));
            Ok(Outcome { output: out, passed, seed: Some(seed) })
        }
        PencilCmd::Inclusion { level, tol } => {
            let r = inclusion_check(level, tol)?;
            let ok = r.all_accounted();
            Ok(Outcome::check(r.to_json() + "\n", ok))
        }
        PencilCmd::Conjecture { level, tol } => Ok(Outcome::ok(conjecture_report(level, tol)?.to_json() + "\n")),
        PencilCmd::SpecialPoint { level, tol } => {
            let r = special_point_check(level, tol)?;
            let out = format!(
                "level,nearest_to_four,pencil_min_abs_eigenvalue,found\n{},{},{},{}\n",
                r.level,
                fmt_sig(r.nearest_to_four),
                fmt_sig(r.pencil_min_abs_eigenvalue),
                r.found
            );
            Ok(Outcome::check(out, r.found))
        }
        PencilCmd::Candidates { level, grid, tol } => {
            let c = line_spectrum_candidates(level, grid, tol)?;
            let mut out = String::from("lambda\n");
            for r in &c.roots {
                let _ = writeln!(out, "{}", fmt_sig(*r));
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn run_measure(cmd: MeasureCmd) -> Result<Outcome> {
    match cmd {
        MeasureCmd::FixedPoint { tol } => {
            let fp = fixed_point(tol);
            let out = format!(
                "x,y,z,alpha,cubic_residual,map_residual\n{},{},{},{},{},{}\n",
                fmt_sig(fp.x),
                fmt_sig(fp.y),
                fmt_sig(fp.z),
                fmt_sig(fp.alpha),
                fmt_sig(fp.cubic_residual),
                fmt_sig(fp.map_residual)
            );
            Ok(Outcome::check(out, fp.verified))
        }
        MeasureCmd::Restrict { weights } => {
            let m = parse_weights(weights.as_deref())?;
            let mut out = String::from("measure,e,a,b,c\n");
            out += &measure_line("input", &m);
            out += &measure_line("restrict0", &restrict0(&m)?);
            out += &measure_line("phi", &phi_transform(&m)?);
            Ok(Outcome::ok(out))
        }
        MeasureCmd::SelfAffine { weights, tol } => {
            let m = match weights {
                Some(w) => parse_weights(Some(&w))?,
                None => fixed_point(1e-15).measure(),
            };
            let alpha = restrict0(&m)?.e;
            let residual = self_affinity_residual(&m)?;
            let passed = alpha > 0.0 && alpha < 1.0 && residual < tol;
            let out = format!("alpha,residual,self_affine\n{},{},{passed}\n", fmt_sig(alpha), fmt_sig(residual));
            Ok(Outcome::check(out, passed))
        }
        MeasureCmd::Uniqueness { grid } => {
            let r = uniqueness_scan(grid)?;
            let ok = r.is_unique();
            Ok(Outcome::check(serde_json::to_string_pretty(&r).expect("report serialises") + "\n", ok))
        }
        MeasureCmd::Walk { returns, seed, streams, weights, tol } => {
            let m = parse_weights(weights.as_deref())?;
            let r = walk_oracle(&m, returns, seed, streams)?;
            let passed = r.l1_distance <= tol;
            Ok(Outcome { output: r.to_json() + "\n", passed, seed: Some(seed) })
        }
    }
}

/// Runs an already parsed command.
pub fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Word(c) => run_word(c),
        Command::Automaton(c) => run_automaton(c),
        Command::Relators(c) => run_relators(c),
        Command::Schreier(c) => run_schreier(c),
        Command::Spectrum(c) => run_spectrum(c),
        Command::Pencil(c) => run_pencil(c),
        Command::Attractor(AttractorArgs { depth, grid, bounds, tol }) => {
            let b = BoxBounds::parse(&bounds)?;
            Ok(Outcome::ok(cloud_csv(&attractor_cloud(depth, grid, b, tol)?)))
        }
        Command::Measure(c) => run_measure(c),
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::input("--threads must be positive")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::input(format!("cannot build thread pool: {e}"))),
    }
}

fn write_outputs(path: &Path, outcome: &Outcome, argv: &[String], threads: Option<usize>, started: Instant) -> Result<()> {
    fs::write(path, &outcome.output).map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))?;
    let meta = json!({
        "argv": argv,
        "version": env!("CARGO_PKG_VERSION"),
        "seed": outcome.seed,
        "threads": threads,
        "passed": outcome.passed,
        "wall_time_seconds": started.elapsed().as_secs_f64(),
    });
    let mut sidecar = path.as_os_str().to_owned();
    sidecar.push(".meta.json");
    fs::write(&sidecar, serde_json::to_string_pretty(&meta).expect("metadata serialises") + "\n")
        .map_err(|e| Error::input(format!("cannot write sidecar: {e}")))
}

/// Parses `argv` (program name first), runs it and returns the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let started = Instant::now();
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match merge_config(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    let Cli { out, threads, command, .. } = cli;
    let outcome = match with_threads(threads, || run(command)).and_then(|r| r) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::Input(_) | Error::InputSize { .. } | Error::InvalidAutomaton(_) => EXIT_INPUT,
                _ => EXIT_FAILED,
            };
        }
    };
    match &out {
        Some(path) => {
            let argv: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
            if let Err(e) = write_outputs(path, &outcome, &argv, threads, started) {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
        }
        None => print!("{}", outcome.output),
    }
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
