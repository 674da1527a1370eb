//! File format, JSON output, instance generator and the `bimenger` front end.

pub mod gen;
pub mod instance;
pub mod json;
pub mod selfcheck;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bigraph::{BidirectedGraph, VertexId};
use crate::certify::{solve_menger, solve_st, solve_xpaths, CertifyError, MengerCertificate};
use crate::oracle::{self, OracleBounds, SeparatorSize};
use crate::reduce::ReduceError;
use crate::walks::Link;

use gen::{random_instance, GenParams};
use instance::{parse_instance, serialize_instance, InstanceFile};
use json::{certificate_json, packing_json, separator_json, xpath_json, OracleJson, XPathOracleJson};
use selfcheck::{run_selfcheck, SelfcheckConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INFINITE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bimenger", about = "Disjoint links and separators in bidirected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certificate for X–Y links.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also compute the brute-force optimum and compare.
        #[arg(long)]
        oracle_verify: bool,
    },
    /// Certificate for internally disjoint s–t links.
    SolveSt {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to the file's `terminal s`.
        #[arg(long)]
        s: Option<String>,
        /// Defaults to the file's `terminal t`.
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Disjoint X-paths and a hitting set at most twice their number.
    Xpaths {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force values and witnesses.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Emits a random instance file.
    Gen {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        x: usize,
        #[arg(long, default_value_t = 1)]
        y: usize,
        #[arg(long)]
        overlap: bool,
    },
    /// Seeded comparison of certificates against the oracle.
    Selfcheck {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 7)]
        max_vertices: usize,
        /// Print every trial, not just failures.
        #[arg(long)]
        verbose: bool,
    },
}

/// Message plus exit code.
struct Failure(i32, String);

impl Failure {
    fn input(msg: impl ToString) -> Self {
        Failure(EXIT_INPUT, msg.to_string())
    }
}

impl From<CertifyError> for Failure {
    fn from(e: CertifyError) -> Self {
        let code = match &e {
            CertifyError::Reduce(ReduceError::DirectTerminalEdge) => EXIT_INFINITE,
            e if e.is_verification_failure() => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

fn load(path: &PathBuf) -> Result<InstanceFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, value: &impl serde::Serialize) {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{text}").ok();
}

fn link_line(g: &BidirectedGraph, l: &Link) -> String {
    let j = json::link_json(g, l);
    match &j.parts {
        Some(parts) => format!(
            "turnaround {} | {}",
            parts[0].vertices.join(" "),
            parts[1].vertices.join(" ")
        ),
        None => format!("path {}", j.vertices.join(" ")),
    }
}

fn print_certificate(out: &mut dyn Write, g: &BidirectedGraph, cert: &MengerCertificate) {
    writeln!(out, "value {}", cert.value).ok();
    for l in &cert.links {
        writeln!(out, "  {}", link_line(g, l)).ok();
    }
    let sep: Vec<String> = cert.separator.iter().map(VertexId::to_string).collect();
    writeln!(out, "separator [{}] size {}", sep.join(" "), sep.len()).ok();
    writeln!(
        out,
        "lp primal {} dual {}",
        crate::ratlp::format_pq(&cert.primal_value),
        crate::ratlp::format_pq(&cert.dual_value)
    )
    .ok();
    writeln!(out, "checks {}", if cert.checks.passed() { "passed" } else { "FAILED" }).ok();
    writeln!(out, "{:#?}", cert.checks).ok();
}

fn verdict(passed: bool) -> Result<i32, Failure> {
    if passed {
        Ok(EXIT_OK)
    } else {
        Err(Failure(EXIT_VERIFY, "certificate checks failed".into()))
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Solve {
            input,
            json,
            oracle_verify,
        } => {
            let inst = load(&input)?;
            let g = &inst.graph;
            let cert = solve_menger(g, &inst.x, &inst.y)?;
            let mut agree = true;
            let mut oracle_out = None;
            if oracle_verify {
                let bounds = OracleBounds::default();
                let max = oracle::max_links(g, &inst.x, &inst.y, &bounds).map_err(Failure::input)?;
                let min = oracle::min_separator(g, &inst.x, &inst.y, &bounds).map_err(Failure::input)?;
                agree = max.value == cert.value;
                if !json {
                    writeln!(out, "oracle max {} min {}", max.value, min.size).ok();
                }
                oracle_out = Some(OracleJson {
                    max_links: Some(packing_json(g, &max)),
                    min_separator: Some(separator_json(&min)),
                    st_max_links: None,
                    st_min_separator: None,
                    xpaths: None,
                });
            }
            if json {
                let mut j = certificate_json(g, &cert);
                j.oracle = oracle_out;
                emit(out, &j);
            } else {
                print_certificate(out, g, &cert);
            }
            verdict(cert.checks.passed() && agree)
        }
        Command::SolveSt { input, s, t, json } => {
            let inst = load(&input)?;
            let pick = |flag: Option<String>, file: &Option<VertexId>, name: &str| {
                flag.map(VertexId::from)
                    .or_else(|| file.clone())
                    .ok_or_else(|| Failure::input(format!("no terminal {name} given")))
            };
            let s = pick(s, &inst.s, "s")?;
            let t = pick(t, &inst.t, "t")?;
            let cert = solve_st(&inst.graph, &s, &t)?;
            if json {
                emit(out, &certificate_json(&inst.graph, &cert));
            } else {
                print_certificate(out, &inst.graph, &cert);
            }
            verdict(cert.checks.passed())
        }
        Command::Xpaths { input, json } => {
            let inst = load(&input)?;
            let cert = solve_xpaths(&inst.graph, &inst.x)?;
            if json {
                emit(out, &xpath_json(&inst.graph, &cert));
            } else {
                writeln!(out, "packing {}", cert.packing).ok();
                for w in &cert.paths {
                    writeln!(out, "  {}", link_line(&inst.graph, &Link::Path(w.clone()))).ok();
                }
                let sep: Vec<String> = cert.separator.iter().map(VertexId::to_string).collect();
                writeln!(out, "hitting set [{}] size {} bound {}", sep.join(" "), sep.len(), 2 * cert.packing)
                    .ok();
                writeln!(out, "checks {}", if cert.passed() { "passed" } else { "FAILED" }).ok();
            }
            verdict(cert.passed())
        }
        Command::Oracle { input, json } => {
            let inst = load(&input)?;
            let g = &inst.graph;
            let bounds = OracleBounds::default();
            let mut result = OracleJson {
                max_links: None,
                min_separator: None,
                st_max_links: None,
                st_min_separator: None,
                xpaths: None,
            };
            let mut infinite = false;
            if !inst.x.is_empty() && !inst.y.is_empty() {
                let max = oracle::max_links(g, &inst.x, &inst.y, &bounds).map_err(Failure::input)?;
                let min = oracle::min_separator(g, &inst.x, &inst.y, &bounds).map_err(Failure::input)?;
                if !json {
                    writeln!(out, "X-Y links {}", max.value).ok();
                    for l in &max.links {
                        writeln!(out, "  {}", link_line(g, l)).ok();
                    }
                    writeln!(out, "X-Y separator {} {:?}", min.size, min.vertices).ok();
                }
                result.max_links = Some(packing_json(g, &max));
                result.min_separator = Some(separator_json(&min));
            }
            if let (Some(s), Some(t)) = (&inst.s, &inst.t) {
                let (max, min) = oracle::st(g, s, t, &bounds).map_err(Failure::input)?;
                infinite = min.size == SeparatorSize::Infinite;
                if !json {
                    writeln!(out, "s-t links {}", max.value).ok();
                    for l in &max.links {
                        writeln!(out, "  {}", link_line(g, l)).ok();
                    }
                    writeln!(out, "s-t separator {} {:?}", min.size, min.vertices).ok();
                }
                result.st_max_links = Some(packing_json(g, &max));
                result.st_min_separator = Some(separator_json(&min));
            }
            if !inst.x.is_empty() {
                let (packing, hitting) = oracle::xpaths(g, &inst.x, &bounds).map_err(Failure::input)?;
                if !json {
                    writeln!(out, "X-paths {packing} hitting set {hitting}").ok();
                }
                result.xpaths = Some(XPathOracleJson {
                    packing,
                    min_hitting_set: hitting,
                });
            }
            if json {
                emit(out, &result);
            }
            Ok(if infinite { EXIT_INFINITE } else { EXIT_OK })
        }
        Command::Gen {
            vertices,
            edges,
            seed,
            x,
            y,
            overlap,
        } => {
            let params = GenParams {
                n: vertices,
                m: edges,
                seed,
                x_size: x,
                y_size: y,
                overlap_allowed: overlap,
            };
            let inst = random_instance(&params).map_err(Failure::input)?;
            write!(out, "{}", serialize_instance(&inst)).ok();
            Ok(EXIT_OK)
        }
        Command::Selfcheck {
            trials,
            seed,
            max_vertices,
            verbose,
        } => {
            if max_vertices < 2 {
                return Err(Failure::input("--max-vertices must be at least 2"));
            }
            let cfg = SelfcheckConfig {
                trials,
                seed,
                max_vertices,
                ..SelfcheckConfig::default()
            };
            let summary = run_selfcheck(&cfg);
            write!(out, "{}", summary.render(verbose)).ok();
            Ok(if summary.passed() { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            write!(target, "{}", e.render()).ok();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            writeln!(err, "error: {msg}").ok();
            code
        }
    }
}
