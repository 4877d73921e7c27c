//! Command-line front end.
//!
//! Exit statuses: 0 success, 1 usage or parse error, 2 domain error (for
//! example asking for a witness of the identity), 3 verification failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cert::{self, CertificateJson, DecomposeResultJson, GraphJson, ReductionJson, ResultsJson, SeparationJson};
use crate::decomp;
use crate::error::Error;
use crate::parse::{self, Input};
use crate::sweep::{self, SweepConfig};
use crate::verify;
use crate::witness;
use crate::word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "raagpl",
    version,
    about = "Left-greedy forms and exact PL witnesses for right-angled Artin groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Input file (`vertices:`, `graph:` and `word:` lines).
    #[arg(long, value_name = "FILE", conflicts_with = "inline")]
    pub graph: Option<PathBuf>,
    /// Input text in the same grammar; `;` separates lines.
    #[arg(long, value_name = "TEXT")]
    pub inline: Option<String>,
    /// Word such as `a b^-1 c^2`; repeatable, appended after input words.
    #[arg(long = "word", value_name = "TEXT")]
    pub words: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the JSON document here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical reduced form, triviality and support of each word.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Left-greedy clique word decomposition of each word.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build and verify the witness for a single nontrivial word.
    Witness {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-check a certificate (or separation) file independently.
    Verify {
        /// Certificate JSON file.
        certificate: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Certify a finite set of nontrivial elements, one witness each.
    Separate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Seeded random sweep of every invariant.
    Sweep {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Failure carrying the exit status it maps to.
struct Failure {
    status: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Input(_) | Error::Parse { .. } => EXIT_USAGE,
            Error::Domain(_) => EXIT_DOMAIN,
            Error::Verification(_) => EXIT_VERIFY,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        status: EXIT_USAGE,
        message: message.into(),
    }
}

fn load_input(args: &InputArgs) -> Result<Input, Failure> {
    let text = match (&args.graph, &args.inline) {
        (Some(path), _) => fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(text)) => text.clone(),
        (None, None) => return Err(usage("one of --graph or --inline is required")),
    };
    let mut input = parse::parse_input(&text)?;
    for w in &args.words {
        input.words.push(parse::parse_word(&input.graph, w)?);
    }
    Ok(input)
}

fn emit(out: &mut dyn Write, output: &OutputArgs, json: &str, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| usage(format!("write failed: {e}"));
    if let Some(path) = &output.out {
        fs::write(path, json).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    match (output.format, &output.out) {
        (Format::Json, None) => out.write_all(json.as_bytes()).map_err(io),
        _ => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn run_inner(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| usage(format!("write failed: {e}"));
    match &cli.command {
        Command::Reduce { input, output } => {
            let Input { graph, words } = load_input(input)?;
            let mut results = Vec::new();
            let mut text = String::new();
            for w in &words {
                let reduced = word::reduce(&graph, w)?;
                let support = word::support(&graph, w)?;
                text.push_str(&format!(
                    "{}  =>  {}\n",
                    w.display(&graph),
                    if reduced.is_empty() { "1".to_string() } else { reduced.display(&graph).to_string() }
                ));
                results.push(ReductionJson {
                    word: cert::word_to_json(&graph, w),
                    reduced: cert::word_to_json(&graph, &reduced),
                    trivial: reduced.is_empty(),
                    support: support.iter().map(|&v| graph.name(v).to_string()).collect(),
                });
            }
            let doc = ResultsJson {
                graph: GraphJson::from_graph(&graph),
                results,
            };
            emit(out, output, &cert::to_pretty(&doc), &text)
        }
        Command::Decompose { input, output } => {
            let Input { graph, words } = load_input(input)?;
            let mut results = Vec::new();
            let mut text = String::new();
            for w in &words {
                let run = decomp::left_greedy_run(&graph, w)?;
                let blocks: Vec<String> = run
                    .decomposition
                    .blocks()
                    .iter()
                    .map(|b| format!("[{}]", b.word().display(&graph)))
                    .collect();
                text.push_str(&format!(
                    "{}  =>  k={} {} ({} slides)\n",
                    w.display(&graph),
                    run.decomposition.k(),
                    blocks.join(" "),
                    run.slides()
                ));
                results.push(DecomposeResultJson::new(&graph, w, &run));
            }
            let doc = ResultsJson {
                graph: GraphJson::from_graph(&graph),
                results,
            };
            emit(out, output, &cert::to_pretty(&doc), &text)
        }
        Command::Witness { input, output } => {
            let Input { graph, words } = load_input(input)?;
            let [w] = words.as_slice() else {
                return Err(usage(format!("witness needs exactly one word, got {}", words.len())));
            };
            let wit = witness::build_witness(&graph, w)?;
            let certificate = witness::verify_witness(&wit)?;
            let json = CertificateJson::new(&certificate);
            verify::verify_certificate(&json)?;
            let summary = format!(
                "psi(g)({}) = {} in [{}, {}]\n",
                json.test_point, json.image, json.target_interval[0], json.target_interval[1]
            );
            let text = match output.format {
                Format::Text => json.report(),
                Format::Json => summary,
            };
            emit(out, output, &cert::to_pretty(&json), &text)
        }
        Command::Separate { input, output } => {
            let Input { graph, words } = load_input(input)?;
            if words.is_empty() {
                return Err(usage("separate needs at least one word"));
            }
            let wits = witness::separate_set(&graph, &words)?;
            let mut certificates = Vec::with_capacity(wits.len());
            let mut text = String::new();
            for (i, wit) in wits.iter().enumerate() {
                let json = CertificateJson::new(&witness::verify_witness(wit)?);
                verify::verify_certificate(&json)?;
                text.push_str(&format!(
                    "#{i}: psi(g)({}) = {} in [{}, {}]\n",
                    json.test_point, json.image, json.target_interval[0], json.target_interval[1]
                ));
                certificates.push(json);
            }
            emit(out, output, &cert::to_pretty(&SeparationJson { certificates }), &text)
        }
        Command::Verify { certificate, format } => {
            let text = fs::read_to_string(certificate)
                .map_err(|e| usage(format!("cannot read {}: {e}", certificate.display())))?;
            let certs = parse_certificates(&text)?;
            let mut lines = String::new();
            for (i, c) in certs.iter().enumerate() {
                let v = verify::verify_certificate(c).map_err(|e| Failure {
                    status: EXIT_VERIFY,
                    message: format!("certificate {i}: {e}"),
                })?;
                lines.push_str(&format!(
                    "certificate {i} verified: k={}, psi(g)({}) = {}\n",
                    v.k,
                    crate::rational::format(&v.test_point),
                    crate::rational::format(&v.image)
                ));
            }
            let body = match format {
                Format::Text => lines,
                Format::Json => cert::to_pretty(&serde_json::json!({
                    "verified": true,
                    "certificates": certs.len(),
                })),
            };
            out.write_all(body.as_bytes()).map_err(io)
        }
        Command::Sweep {
            seed,
            cases,
            max_vertices,
            max_length,
            format,
        } => {
            if *max_vertices < 2 || *max_length < 1 {
                return Err(usage("sweep needs --max-vertices >= 2 and --max-length >= 1"));
            }
            let cfg = SweepConfig {
                seed: *seed,
                cases: *cases,
                max_vertices: *max_vertices,
                max_length: *max_length,
            };
            let report = sweep::run_sweep(&cfg);
            let body = match format {
                Format::Text => {
                    let mut s = format!(
                        "sweep seed={} cases={}: {} passed, {} failed\n",
                        cfg.seed,
                        cfg.cases,
                        report.passed,
                        report.failures.len()
                    );
                    for f in &report.failures {
                        s.push_str(&format!(
                            "  case {}: [{}] word {}: {}\n",
                            f.index,
                            f.graph.to_string().replace('\n', "; "),
                            f.word.display(&f.graph),
                            f.error
                        ));
                    }
                    s
                }
                Format::Json => cert::to_pretty(&serde_json::json!({
                    "seed": cfg.seed,
                    "cases": cfg.cases,
                    "passed": report.passed,
                    "failed": report.failures.iter().map(|f| f.index).collect::<Vec<_>>(),
                })),
            };
            out.write_all(body.as_bytes()).map_err(io)?;
            if report.ok() {
                Ok(())
            } else {
                Err(Failure {
                    status: EXIT_VERIFY,
                    message: format!("{} sweep cases failed", report.failures.len()),
                })
            }
        }
    }
}

/// A certificate file holds one certificate or a `{"certificates": [...]}` set.
fn parse_certificates(text: &str) -> Result<Vec<CertificateJson>, Failure> {
    let bad = |e: serde_json::Error| Failure {
        status: EXIT_VERIFY,
        message: format!("malformed certificate: {e}"),
    };
    let value: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
    if value.get("certificates").is_some() {
        let set: SeparationJson = serde_json::from_value(value).map_err(bad)?;
        if set.certificates.is_empty() {
            return Err(Failure {
                status: EXIT_VERIFY,
                message: "empty certificate set".into(),
            });
        }
        Ok(set.certificates)
    } else {
        Ok(vec![serde_json::from_value(value).map_err(bad)?])
    }
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match run_inner(cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let _ = write!(err, "{e}");
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}
