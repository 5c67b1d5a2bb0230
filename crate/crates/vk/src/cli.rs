//! Command-line surface: obstruction checks, constructions, embeddings,
//! linking, thickness, refinement-complexity bounds, free words, and
//! expander experiments. Every artifact-producing run emits a reproducible
//! run manifest.

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::Read;

use crate::constructions::{
    k0, magnus_expansion, parse_word, suspend_embedding, telescope, telescope_embedding,
    vk_flores_complex, AbstractCycle,
};
use crate::expander::{scaling_experiment, ExpanderError};
use crate::geometry::{
    gauss_linking_pl, linking_number, normalize_to_unit_ball, thickness, GeomError, Rat,
};
use crate::io::{
    parse_complex, parse_embedding, rat_from_string, rat_to_string, serialize_complex,
    serialize_embedding, IoError,
};
use crate::obstruction::{
    embeddability_verdict, rc_lower_bound_from_linking, ObstructionError, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONEMBEDDABLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::DegenerateInput(_) | GeomError::DimensionMismatch(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::Domain(_) => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ExpanderError> for CliError {
    fn from(e: ExpanderError) -> Self {
        match e {
            ExpanderError::BadRegularity { .. }
            | ExpanderError::TooLargeForExact(_)
            | ExpanderError::Domain(_) => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// Everything needed to reproduce a run bit-for-bit.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command_line: Vec<String>,
    pub seeds: Vec<u64>,
    /// SHA-256 of every input the run consumed, keyed by path ("-" = stdin).
    pub input_digests: BTreeMap<String, String>,
    pub threads: Option<usize>,
    pub wall_time_ms: u128,
}

struct ManifestBuilder {
    argv: Vec<String>,
    seeds: Vec<u64>,
    digests: BTreeMap<String, String>,
    threads: Option<usize>,
    start: std::time::Instant,
}

impl ManifestBuilder {
    fn new(argv: Vec<String>, threads: Option<usize>) -> Self {
        ManifestBuilder {
            argv,
            seeds: Vec::new(),
            digests: BTreeMap::new(),
            threads,
            start: std::time::Instant::now(),
        }
    }

    fn record_input(&mut self, path: &str, content: &str) {
        let mut h = Sha256::new();
        h.update(content.as_bytes());
        self.digests.insert(path.to_string(), format!("{:x}", h.finalize()));
    }

    fn record_seeds(&mut self, seeds: &[u64]) {
        self.seeds.extend_from_slice(seeds);
    }

    fn finish(self) -> RunManifest {
        RunManifest {
            tool: "vk".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command_line: self.argv,
            seeds: self.seeds,
            input_digests: self.digests,
            threads: self.threads,
            wall_time_ms: self.start.elapsed().as_millis(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "vk", version, about = "Embedding obstructions and geometric complexity")]
struct Cli {
    /// Cap the worker thread count for parallel stages.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the embedding-obstruction certificate of a complex file.
    Check {
        /// Complex file, or - for stdin.
        complex_file: String,
        /// Seeds for the generic map, tried in order.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8")]
        seeds: Vec<u64>,
        /// Exit with code 1 when the verdict is NonEmbeddable.
        #[arg(long)]
        fail_on_nonembeddable: bool,
    },
    /// Build a named complex or derived object.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Produce an explicit exact embedding.
    Embed {
        #[command(subcommand)]
        what: EmbedCmd,
    },
    /// Linking number of two named or listed cycles of an embedding file.
    Link {
        /// Embedding file, or - for stdin.
        embedding_file: String,
        /// Cycle alias (SBAR, S1, S2) or comma-separated polygon vertex ids.
        #[arg(long)]
        cycle_a: String,
        #[arg(long)]
        cycle_b: String,
        /// cone = exact signed count; gauss = quadrature estimate.
        #[arg(long, default_value = "cone")]
        method: String,
        /// Per-parameter quadrature resolution for the gauss method.
        #[arg(long, default_value_t = 48)]
        resolution: usize,
        /// Apex seed for the cone method.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Thickness of an embedding: minimal distance between vertex-disjoint
    /// simplex images, reported exactly.
    Thickness {
        embedding_file: String,
        /// Rescale the embedding into the unit ball first.
        #[arg(long)]
        normalize: bool,
    },
    /// Refinement-complexity bounds: a linking-based simplex-count lower
    /// bound plus the lambda-based finger-move bound when tractable.
    RcBounds {
        embedding_file: String,
        /// Seeds for the obstruction stage.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8")]
        seeds: Vec<u64>,
    },
    /// Reduce a free-group word; optionally expand it in the Magnus ring.
    Word {
        /// Word text, e.g. "[x,[x,y]]" or "x1 x2' x1'".
        text: String,
        /// Truncation degree for the Magnus expansion.
        #[arg(long)]
        magnus_degree: Option<usize>,
    },
    /// Expander distortion experiments.
    Expander {
        #[command(subcommand)]
        what: ExpanderCmd,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    /// 2-skeleton analogue with the central simplex removed.
    K0 {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// n-skeleton of the (2n+2)-simplex.
    Flores {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Mapping telescope with l stages (abstract complex; collar-ratio only
    /// affects the embedding, accepted here for pipeline symmetry).
    Telescope {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        collar_ratio: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Suspend an embedding file: rescale into the unit ball, cone to two
    /// poles, and suspend every top-dimensional named cycle.
    Suspend {
        embedding_file: String,
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum EmbedCmd {
    /// Exact embedding of the l-stage telescope in R^4 with named cycles
    /// SBAR (outermost ring), S1 (base ring), S2 (linking sphere).
    Telescope {
        #[arg(long)]
        l: usize,
        /// Per-stage shrink factor of the rotation radius, in (0,1).
        #[arg(long, default_value = "1/2")]
        collar_ratio: String,
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ExpanderCmd {
    /// Scaling experiment: random regular graphs, spectral embeddings,
    /// measured distortion against the theoretical lower bound.
    Run {
        #[arg(long = "N", value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long = "dim", default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        samples_per_edge: usize,
        #[arg(long, default_value_t = 1e-5)]
        c_prime: f64,
        #[arg(short, long)]
        output: Option<String>,
    },
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

/// Writes the artifact to the file or stdout; the manifest goes next to the
/// file, or to stderr when the artifact streams to stdout.
fn emit_artifact(
    output: &Option<String>,
    content: &str,
    manifest: &RunManifest,
) -> Result<(), CliError> {
    let manifest_json = serde_json::to_string_pretty(manifest)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    match output {
        Some(path) => {
            std::fs::write(path, content)
                .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            let mpath = format!("{path}.manifest.json");
            std::fs::write(&mpath, manifest_json)
                .map_err(|e| CliError::Input(format!("{mpath}: {e}")))?;
        }
        None => {
            print!("{content}");
            eprintln!("{manifest_json}");
        }
    }
    Ok(())
}

fn resolve_cycle(
    spec: &str,
    named: &BTreeMap<String, AbstractCycle>,
) -> Result<AbstractCycle, CliError> {
    if let Some(c) = named.get(spec) {
        return Ok(c.clone());
    }
    if spec.chars().all(|c| c.is_ascii_digit() || c == ',') && spec.contains(',') {
        let ids: Result<Vec<usize>, _> = spec.split(',').map(str::parse).collect();
        let ids = ids.map_err(|_| CliError::Input(format!("bad vertex list {spec:?}")))?;
        if ids.len() < 3 {
            return Err(CliError::Input("polygon needs at least 3 vertices".into()));
        }
        return Ok(AbstractCycle::polygon(&ids));
    }
    Err(CliError::Input(format!(
        "unknown cycle {spec:?}; expected a named cycle ({}) or a vertex list",
        named.keys().cloned().collect::<Vec<_>>().join(", ")
    )))
}

fn parse_ratio(s: &str) -> Result<Rat, CliError> {
    rat_from_string(s).map_err(|e| CliError::Input(e.to_string()))
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            // clap renders --help/--version as "errors" with success status
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // ignore failure: the global pool can only be installed once
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let manifest = ManifestBuilder::new(argv, cli.threads);
    match dispatch(cli.command, manifest) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cmd: Command, mut mb: ManifestBuilder) -> Result<i32, CliError> {
    match cmd {
        Command::Check {
            complex_file,
            seeds,
            fail_on_nonembeddable,
        } => {
            let text = read_input(&complex_file)?;
            mb.record_input(&complex_file, &text);
            mb.record_seeds(&seeds);
            let k = parse_complex(&text, &complex_file)?;
            let cert = embeddability_verdict(&k, &seeds)?;
            let report = cert.report();
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            emit_artifact(&None, &format!("{json}\n"), &mb.finish())?;
            if fail_on_nonembeddable && report.verdict == Verdict::NonEmbeddable {
                return Ok(EXIT_NONEMBEDDABLE);
            }
            Ok(EXIT_OK)
        }
        Command::Construct { what } => construct(what, mb),
        Command::Embed { what } => embed(what, mb),
        Command::Link {
            embedding_file,
            cycle_a,
            cycle_b,
            method,
            resolution,
            seed,
        } => {
            let text = read_input(&embedding_file)?;
            mb.record_input(&embedding_file, &text);
            let (e, named) = parse_embedding(&text)?;
            let a = resolve_cycle(&cycle_a, &named)?.realize(&e);
            let b = resolve_cycle(&cycle_b, &named)?.realize(&e);
            let out = match method.as_str() {
                "cone" => {
                    mb.record_seeds(&[seed]);
                    let lk = linking_number(&a, &b, e.dim_ambient, seed)?;
                    format!("{lk}\n")
                }
                "gauss" => {
                    let est = gauss_linking_pl(&a, &b, resolution)?;
                    format!(
                        "{:.6} (error estimate {:.6}, resolution {})\n",
                        est.value, est.error, est.subdivisions
                    )
                }
                other => {
                    return Err(CliError::Input(format!(
                        "unknown method {other:?}; expected cone or gauss"
                    )))
                }
            };
            emit_artifact(&None, &out, &mb.finish())?;
            Ok(EXIT_OK)
        }
        Command::Thickness {
            embedding_file,
            normalize,
        } => {
            let text = read_input(&embedding_file)?;
            mb.record_input(&embedding_file, &text);
            let (e, _) = parse_embedding(&text)?;
            let report = thickness(&e, normalize)?;
            let json = serde_json::json!({
                "thickness": report.distance(),
                "thickness_sq": report.min_distance_sq.as_ref().map(rat_to_string),
                "normalized": report.normalized,
                "unbounded": report.is_unbounded(),
            });
            emit_artifact(
                &None,
                &format!("{}\n", serde_json::to_string_pretty(&json).unwrap()),
                &mb.finish(),
            )?;
            Ok(EXIT_OK)
        }
        Command::RcBounds {
            embedding_file,
            seeds,
        } => {
            let text = read_input(&embedding_file)?;
            mb.record_input(&embedding_file, &text);
            mb.record_seeds(&seeds);
            let (e, named) = parse_embedding(&text)?;
            let mut json = serde_json::Map::new();
            if let (Some(a), Some(b)) = (named.get("SBAR"), named.get("S2")) {
                let lk = linking_number(&a.realize(&e), &b.realize(&e), e.dim_ambient, seeds[0])?;
                json.insert("linking".into(), lk.into());
                json.insert(
                    "rc_lower_bound".into(),
                    rc_lower_bound_from_linking(lk.unsigned_abs()).into(),
                );
            }
            // the lambda pipeline walks every vertex-disjoint simplex pair of
            // the deleted product; cap it to keep the command interactive
            let n = e.complex.dim();
            let top = e.complex.num_simplices(n);
            if top * top <= 40_000 {
                let cert = embeddability_verdict(&e.complex, &seeds)?;
                json.insert("lambda".into(), cert.lambda.into());
                json.insert("finger_move_bound".into(), cert.finger_move_bound.into());
                json.insert(
                    "solvable_mod2".into(),
                    cert.solvable_mod2.into(),
                );
            } else {
                json.insert(
                    "finger_move_bound".into(),
                    serde_json::Value::String("skipped: deleted product too large".into()),
                );
            }
            let out = serde_json::to_string_pretty(&serde_json::Value::Object(json)).unwrap();
            emit_artifact(&None, &format!("{out}\n"), &mb.finish())?;
            Ok(EXIT_OK)
        }
        Command::Word { text, magnus_degree } => {
            let w = parse_word(&text).map_err(CliError::Input)?;
            let mut out = format!("reduced length {}\n", w.len());
            if let Some(d) = magnus_degree {
                if d < 1 {
                    return Err(CliError::Input("magnus degree must be >= 1".into()));
                }
                let series = magnus_expansion(&w, d);
                match series.lowest_nonconstant_degree() {
                    None => out.push_str(&format!("magnus: trivial up to degree {d}\n")),
                    Some(lo) => {
                        out.push_str(&format!("magnus lowest degree {lo}\n"));
                        for (m, c) in &series.terms {
                            if m.len() == lo {
                                let mono: Vec<String> =
                                    m.iter().map(|g| format!("X{}", g + 1)).collect();
                                out.push_str(&format!("  {} {:+}\n", mono.join(" "), c));
                            }
                        }
                    }
                }
            }
            emit_artifact(&None, &out, &mb.finish())?;
            Ok(EXIT_OK)
        }
        Command::Expander { what } => match what {
            ExpanderCmd::Run {
                n,
                d,
                m,
                trials,
                seed,
                samples_per_edge,
                c_prime,
                output,
            } => {
                if n.is_empty() {
                    return Err(CliError::Input("--N needs at least one size".into()));
                }
                mb.record_seeds(&[seed]);
                let report =
                    scaling_experiment(&n, d, m, seed, trials, samples_per_edge, c_prime)?;
                let csv = report.to_csv();
                eprintln!(
                    "medians: {:?}; non-decreasing: {}; all above lower bound: {}",
                    report.medians, report.medians_non_decreasing, report.all_exceed_lower_bound
                );
                emit_artifact(&output, &csv, &mb.finish())?;
                Ok(EXIT_OK)
            }
        },
    }
}

fn construct(cmd: ConstructCmd, mut mb: ManifestBuilder) -> Result<i32, CliError> {
    match cmd {
        ConstructCmd::K0 { n, output } => {
            if n < 1 {
                return Err(CliError::Input("n must be >= 1".into()));
            }
            let text = serialize_complex(&k0(n).complex);
            emit_artifact(&output, &text, &mb.finish())?;
            Ok(EXIT_OK)
        }
        ConstructCmd::Flores { n, output } => {
            if n < 1 {
                return Err(CliError::Input("n must be >= 1".into()));
            }
            let text = serialize_complex(&vk_flores_complex(n));
            emit_artifact(&output, &text, &mb.finish())?;
            Ok(EXIT_OK)
        }
        ConstructCmd::Telescope {
            l,
            collar_ratio,
            output,
        } => {
            if let Some(r) = collar_ratio {
                parse_ratio(&r)?; // validated, but only the embedding uses it
            }
            let text = serialize_complex(&telescope(l).complex);
            emit_artifact(&output, &text, &mb.finish())?;
            Ok(EXIT_OK)
        }
        ConstructCmd::Suspend {
            embedding_file,
            output,
        } => {
            let text = read_input(&embedding_file)?;
            mb.record_input(&embedding_file, &text);
            let (e, named) = parse_embedding(&text)?;
            // shrink to half the unit ball so the image is strictly interior
            let normalized = normalize_to_unit_ball(&e)?;
            let half = crate::geometry::PLEmbedding::new(
                normalized.complex.clone(),
                normalized.dim_ambient,
                normalized
                    .coords
                    .iter()
                    .map(|p| p.scale(&crate::geometry::rat(1, 2)))
                    .collect(),
            );
            let dim = half.complex.dim();
            let north = half.complex.num_vertices;
            let suspended = suspend_embedding(&half)?;
            let cycles: BTreeMap<String, AbstractCycle> = named
                .iter()
                .map(|(name, c)| {
                    // top-dimensional cycles get suspended; lower ones
                    // (e.g. the marked ring) keep their linking as is
                    let c2 = if c.dim == dim {
                        c.suspend(north, north + 1)
                    } else {
                        c.clone()
                    };
                    (name.clone(), c2)
                })
                .collect();
            let out = serialize_embedding(&suspended, &cycles)?;
            emit_artifact(&output, &format!("{out}\n"), &mb.finish())?;
            Ok(EXIT_OK)
        }
    }
}

fn embed(cmd: EmbedCmd, mb: ManifestBuilder) -> Result<i32, CliError> {
    match cmd {
        EmbedCmd::Telescope {
            l,
            collar_ratio,
            output,
        } => {
            let ratio = parse_ratio(&collar_ratio)?;
            let e = telescope_embedding(l, &ratio)?;
            let t = telescope(l);
            let mut cycles = BTreeMap::new();
            cycles.insert("SBAR".to_string(), t.sphere1);
            cycles.insert("S1".to_string(), AbstractCycle::polygon(&[0, 1, 2]));
            cycles.insert("S2".to_string(), t.sphere2);
            let out = serialize_embedding(&e, &cycles)?;
            emit_artifact(&output, &format!("{out}\n"), &mb.finish())?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_resolution() {
        let mut named = BTreeMap::new();
        named.insert("SBAR".to_string(), AbstractCycle::polygon(&[0, 1, 2]));
        assert_eq!(resolve_cycle("SBAR", &named).unwrap().cells.len(), 3);
        assert_eq!(resolve_cycle("3,4,5,6", &named).unwrap().cells.len(), 4);
        assert!(resolve_cycle("NOPE", &named).is_err());
        assert!(resolve_cycle("1,2", &named).is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::Input("x".into()).code(), EXIT_INPUT);
        assert_eq!(CliError::Internal("x".into()).code(), EXIT_INTERNAL);
    }
}
