use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use nlflow::cut_lattice::{enumerate_dicuts, is_dijoin};
use nlflow::matroid::{
    count_nl_group_flows_matroid, count_nl_integer_kflows_matroid, farkas_certificate,
    fit_integer_flow_rational_matroid, flow_degree_bound_matroid, FarkasCertificate, TuMatrix,
};
use nlflow::oracles::{
    count_acyclic_colorings, count_nl_group_flows, count_nl_integer_kflows, default_k_range,
    verify_catalog, AbelianGroup, VerifyConfig, DEFAULT_BUDGET,
};
use nlflow::tournaments::{complete_acyclic_nl_poly, complete_digraph_nl_poly};
use nlflow::{ArcSet, Digraph, IntPolynomial, NlError, RatPolynomial};

#[derive(Parser)]
#[command(
    name = "nlflow",
    version,
    about = "NL-flow and NL-coflow polynomials of digraphs"
)]
struct Cli {
    /// Print results as JSON
    #[arg(long, global = true)]
    json: bool,

    /// Write a run report (input digest, timing) to stderr
    #[arg(long, global = true)]
    report: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Budget {
    /// Maximum number of candidate assignments
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// NL-flow polynomial of a digraph file (`-` reads stdin)
    Poly { file: String },
    /// NL-coflow polynomial
    Copoly { file: String },
    /// Count NL-G-flows by enumeration
    Count {
        file: String,
        #[arg(long)]
        group: AbelianGroup,
        #[command(flatten)]
        budget: Budget,
    },
    /// Count integer NL-k-flows by enumeration
    CountInt {
        file: String,
        #[arg(short)]
        k: u64,
        #[command(flatten)]
        budget: Budget,
    },
    /// Count acyclic k-colorings by enumeration
    Colorings {
        file: String,
        #[arg(short)]
        k: u64,
        #[command(flatten)]
        budget: Budget,
    },
    /// List the directed cuts, one sorted arc-index list per line
    Dicuts { file: String },
    /// Whether an arc set meets every directed cut
    Dijoin {
        file: String,
        /// Comma-separated arc indices
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        arcs: Vec<usize>,
    },
    /// Closed-form polynomial of the complete acyclic digraph
    CompleteAcyclic {
        #[arg(short)]
        n: usize,
    },
    /// Closed-form polynomial of a complete digraph by strong component sizes
    Tournament {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Flows of the regular matroid of a totally unimodular matrix
    Matroid {
        #[command(subcommand)]
        command: MatroidCommand,
    },
    /// Compare every formula with its oracle over all small digraphs
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_k: u64,
        #[arg(long, default_value_t = 6)]
        max_m: usize,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Subcommand)]
enum MatroidCommand {
    /// Count NL-flows over a group or integer NL-k-flows
    Count {
        #[arg(long)]
        matrix: String,
        #[arg(long, conflicts_with = "k", required_unless_present = "k")]
        group: Option<AbelianGroup>,
        #[arg(short)]
        k: Option<u64>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Total cyclicity, with the certificate that decides it
    Tc {
        #[arg(long)]
        matrix: String,
    },
    /// Fit the integer NL-k-flow counts to a polynomial in k
    PolyFit {
        #[arg(long)]
        matrix: String,
        /// k values to sample; defaults to 2..=(q - rank + 3)
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<u64>>,
        #[command(flatten)]
        budget: Budget,
    },
}

/// What a command produced: the text for stdout plus its JSON form.
struct Outcome {
    text: String,
    json: Value,
    mismatch: bool,
}

impl Outcome {
    fn value(v: impl ToString) -> Self {
        let s = v.to_string();
        Outcome {
            json: json!({ "schema": 1, "value": s }),
            text: s,
            mismatch: false,
        }
    }

    fn poly(p: &IntPolynomial) -> Self {
        let mut j = serde_json::to_value(p).expect("polynomials serialize");
        j["schema"] = json!(1);
        j["text"] = json!(p.to_string());
        Outcome {
            text: p.to_string(),
            json: j,
            mismatch: false,
        }
    }
}

/// Where input files come from, and the running digest of their bytes.
struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    digest: Sha256,
}

fn read_input(path: &str, inp: &mut Inputs<'_>) -> Result<String, NlError> {
    let mut text = String::new();
    let res = if path == "-" {
        inp.stdin.read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| NlError::Io(format!("cannot read {path}: {e}")))?;
    inp.digest.update(text.as_bytes());
    Ok(text)
}

fn read_digraph(path: &str, inp: &mut Inputs<'_>) -> Result<Digraph, NlError> {
    read_input(path, inp)?.parse()
}

fn read_matrix(path: &str, inp: &mut Inputs<'_>) -> Result<TuMatrix, NlError> {
    read_input(path, inp)?.parse()
}

fn rational_outcome(p: &RatPolynomial, ks: &[u64]) -> Outcome {
    let text = p.to_string();
    let json = match p.to_integer() {
        Some(ip) => {
            let mut j = serde_json::to_value(&ip).expect("polynomials serialize");
            j["schema"] = json!(1);
            j["text"] = json!(text);
            j["ks"] = json!(ks);
            j
        }
        None => json!({ "schema": 1, "text": text, "integer": false, "ks": ks }),
    };
    Outcome {
        text,
        json,
        mismatch: false,
    }
}

fn run(cmd: &Command, inp: &mut Inputs<'_>) -> Result<Outcome, NlError> {
    Ok(match cmd {
        Command::Poly { file } => {
            Outcome::poly(&nlflow::nl_flow_polynomial(&read_digraph(file, inp)?)?)
        }
        Command::Copoly { file } => {
            Outcome::poly(&nlflow::nl_coflow_polynomial(&read_digraph(file, inp)?)?)
        }
        Command::Count {
            file,
            group,
            budget,
        } => Outcome::value(count_nl_group_flows(
            &read_digraph(file, inp)?,
            group,
            budget.budget,
        )?),
        Command::CountInt { file, k, budget } => Outcome::value(count_nl_integer_kflows(
            &read_digraph(file, inp)?,
            *k,
            budget.budget,
        )?),
        Command::Colorings { file, k, budget } => Outcome::value(count_acyclic_colorings(
            &read_digraph(file, inp)?,
            *k,
            budget.budget,
        )?),
        Command::Dicuts { file } => {
            let cuts = enumerate_dicuts(&read_digraph(file, inp)?)?;
            let lists: Vec<Vec<usize>> = cuts.cuts().iter().map(|c| c.to_vec()).collect();
            let text = lists
                .iter()
                .map(|l| {
                    l.iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("\n");
            Outcome {
                text,
                json: json!({ "schema": 1, "dicuts": lists }),
                mismatch: false,
            }
        }
        Command::Dijoin { file, arcs } => {
            let d = read_digraph(file, inp)?;
            if let Some(a) = arcs.iter().find(|&&a| a >= d.m()) {
                return Err(NlError::Domain(format!("arc {a} outside 0..{}", d.m())));
            }
            let s = ArcSet::from_indices(d.m(), arcs.iter().copied());
            let yes = is_dijoin(&d, &s);
            Outcome {
                text: yes.to_string(),
                json: json!({ "schema": 1, "value": yes }),
                mismatch: false,
            }
        }
        Command::CompleteAcyclic { n } => Outcome::poly(&complete_acyclic_nl_poly(*n)?),
        Command::Tournament { sizes } => Outcome::poly(&complete_digraph_nl_poly(sizes)?),
        Command::Matroid { command } => run_matroid(command, inp)?,
        Command::Verify {
            max_n,
            max_k,
            max_m,
            budget,
        } => {
            let cfg = VerifyConfig {
                max_n: *max_n,
                max_m: *max_m,
                max_k: *max_k,
                budget: budget.budget,
                loops: false,
            };
            let report = verify_catalog(&cfg)?;
            let mut lines: Vec<String> = report
                .mismatches
                .iter()
                .map(|m| {
                    format!(
                        "mismatch {} [{}] k={} expected={} got={}",
                        m.check, m.digraph, m.k, m.expected, m.got
                    )
                })
                .collect();
            lines.push(format!(
                "digraphs={} checks={} mismatches={}",
                report.digraphs,
                report.checks,
                report.mismatches.len()
            ));
            let mismatches: Vec<Value> = report
                .mismatches
                .iter()
                .map(|m| {
                    json!({
                        "check": m.check, "digraph": m.digraph, "k": m.k,
                        "expected": m.expected, "got": m.got,
                    })
                })
                .collect();
            Outcome {
                text: lines.join("\n"),
                json: json!({
                    "schema": 1,
                    "digraphs": report.digraphs,
                    "checks": report.checks,
                    "mismatches": mismatches,
                }),
                mismatch: !report.ok(),
            }
        }
    })
}

fn run_matroid(cmd: &MatroidCommand, inp: &mut Inputs<'_>) -> Result<Outcome, NlError> {
    Ok(match cmd {
        MatroidCommand::Count {
            matrix,
            group,
            k,
            budget,
        } => {
            let m = read_matrix(matrix, inp)?;
            match (group, k) {
                (Some(g), _) => Outcome::value(count_nl_group_flows_matroid(&m, g, budget.budget)?),
                (None, Some(k)) => {
                    Outcome::value(count_nl_integer_kflows_matroid(&m, *k, budget.budget)?)
                }
                (None, None) => unreachable!("clap requires --group or -k"),
            }
        }
        MatroidCommand::Tc { matrix } => {
            let m = read_matrix(matrix, inp)?;
            let cert = farkas_certificate(&m, &ArcSet::empty(m.cols()))?;
            let (yes, side, vector) = match &cert {
                FarkasCertificate::Positive(x) => (true, "positive", x),
                FarkasCertificate::Obstruction(w) => (false, "obstruction", w),
            };
            let vector: Vec<String> = vector.iter().map(|v| v.to_string()).collect();
            Outcome {
                text: yes.to_string(),
                json: json!({ "schema": 1, "value": yes, "certificate": { "side": side, "vector": vector } }),
                mismatch: false,
            }
        }
        MatroidCommand::PolyFit { matrix, ks, budget } => {
            let m = read_matrix(matrix, inp)?;
            let ks = ks
                .clone()
                .unwrap_or_else(|| default_k_range(flow_degree_bound_matroid(&m)));
            let p = fit_integer_flow_rational_matroid(&m, &ks, budget.budget)?;
            rational_outcome(&p, &ks)
        }
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Poly { .. } => "poly",
        Command::Copoly { .. } => "copoly",
        Command::Count { .. } => "count",
        Command::CountInt { .. } => "count-int",
        Command::Colorings { .. } => "colorings",
        Command::Dicuts { .. } => "dicuts",
        Command::Dijoin { .. } => "dijoin",
        Command::CompleteAcyclic { .. } => "complete-acyclic",
        Command::Tournament { .. } => "tournament",
        Command::Matroid { command } => match command {
            MatroidCommand::Count { .. } => "matroid count",
            MatroidCommand::Tc { .. } => "matroid tc",
            MatroidCommand::PolyFit { .. } => "matroid poly-fit",
        },
        Command::Verify { .. } => "verify",
    }
}

/// Exit status and the two output streams of one invocation.
struct Dispatch {
    code: u8,
    stdout: String,
    stderr: String,
}

fn dispatch<I, T>(args: I, stdin: &mut dyn Read) -> Dispatch
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            return Dispatch {
                code: 0,
                stdout: e.render().to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            return Dispatch {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: usage: {first}\n"),
            };
        }
    };

    let start = Instant::now();
    let mut inp = Inputs {
        stdin,
        digest: Sha256::new(),
    };
    let result = run(&cli.command, &mut inp);
    let elapsed = start.elapsed();

    let mut out = Dispatch {
        code: 0,
        stdout: String::new(),
        stderr: String::new(),
    };
    let verdict = match &result {
        Ok(o) => {
            let body = if cli.json {
                o.json.to_string()
            } else {
                o.text.clone()
            };
            if !body.is_empty() {
                out.stdout = format!("{body}\n");
            }
            if o.mismatch {
                out.code = 2;
                "mismatch"
            } else {
                "ok"
            }
        }
        Err(e) => {
            out.code = 1;
            out.stderr = format!("error: {}: {e}\n", e.kind());
            e.kind()
        }
    };

    if cli.report {
        let report = json!({
            "schema": 1,
            "command": command_name(&cli.command),
            "input_sha256": hex::encode(inp.digest.finalize()),
            "output": result.as_ref().ok().map(|o| o.json.clone()),
            "verdict": verdict,
            "elapsed_ms": elapsed.as_secs_f64() * 1e3,
        });
        out.stderr.push_str(&format!("{report}\n"));
    }
    out
}

fn main() -> ExitCode {
    let out = dispatch(std::env::args_os(), &mut io::stdin());
    let _ = io::stdout().lock().write_all(out.stdout.as_bytes());
    let _ = io::stderr().lock().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
