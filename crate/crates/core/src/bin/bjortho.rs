//! Command-line front end. Results go to stdout as JSON (or flattened CSV);
//! exit status 0 means the computation finished, whatever the verdict.
//! Input errors exit with 2, numerical failures with 3.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use bjortho::harness::{run_suite, run_suite_untimed, truncated_example, Suite, SuiteConfig};
use bjortho::io::{read_matrix, read_vector};
use bjortho::linalg::operator_norm;
use bjortho::operator::{bj_operator_oracle, bj_operator_spectral, descent_lambda, norm_attaining_set};
use bjortho::smoothness::{
    compact_smooth_conditions_with, hyperplane_sup, nonsmooth_witness, operator_smooth, DEFAULT_STARTS,
};
use bjortho::vector::{bj_vector, bj_vector_oracle, one_sided_derivatives, right_additivity_probe, vector_smooth};
use bjortho::{Error, NormSelector, PNorm, DEFAULT_TOL};

#[derive(Parser)]
#[command(name = "bjortho", version, about = "Birkhoff-James orthogonality and smoothness of real matrices")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Relative tolerance for verdicts and multiplicities.
    #[arg(long, global = true, env = "BJORTHO_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Norm exponent: 1, 2 or inf for operators, any p >= 1 or inf for vectors.
    #[arg(long, global = true, default_value = "2")]
    p: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trial count for `verify` and the additivity probes.
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Use the minimization oracle instead of the spectral or derivative test.
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Induced operator norm.
    Norm {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Norm-attaining set: orthonormal basis of the top singular subspace.
    Mt {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Decide T ⊥_B A.
    Bj {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Decide x ⊥_B y in ℓ_p.
    BjVector {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Smoothness of an operator, of an operator into ℓ_p (`--target-p`), or of a vector (`--x`).
    Smooth {
        #[arg(long, required_unless_present = "x", conflicts_with = "x")]
        matrix: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Target space exponent for operators ℓ₂ → ℓ_p.
        #[arg(long)]
        target_p: Option<String>,
    },
    /// Orthogonal pair whose sum is not orthogonal: the operator split, or a
    /// probe result for a vector (`--x`).
    Witness {
        #[arg(long, required_unless_present = "x", conflicts_with = "x")]
        matrix: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Scalar λ₀ with ‖T + λ₀A‖₂ < ‖T‖₂, or null when T ⊥_B A.
    Descent {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Largest ‖Ty‖₂ over unit y orthogonal to x0.
    HyperplaneSup {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
    },
    /// Truncated diagonal family T_n = diag(-1, 1/2, ..., 1 - 1/n) against A = I.
    Example {
        #[arg(long, default_value = "2.5")]
        name: String,
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Run a randomized verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 2)]
        min_dim: usize,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        /// Report runtime_seconds as 0 so repeated runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
}

const DEFAULT_VERIFY_TRIALS: usize = 100;
const DEFAULT_PROBE_TRIALS: usize = 200;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn with_fields(v: Value, extra: Value) -> Value {
    let mut obj = match v {
        Value::Object(o) => o,
        other => Map::from_iter([("value".to_string(), other)]),
    };
    if let Value::Object(e) = extra {
        obj.extend(e);
    }
    Value::Object(obj)
}

fn operator_p(g: &Global) -> Result<NormSelector, Error> {
    g.p.parse()
}

fn run(cli: &Cli) -> Result<Value, Error> {
    let g = &cli.global;
    if !(g.tol.is_finite() && g.tol > 0.0 && g.tol < 1.0) {
        return Err(Error::InvalidArgument(format!("--tol {} (need 0 < tol < 1)", g.tol)));
    }
    let tol = g.tol;
    Ok(match &cli.command {
        Command::Norm { matrix } => {
            let p = operator_p(g)?;
            json!({ "norm": operator_norm(&read_matrix(matrix)?, p)?, "p": p })
        }
        Command::Mt { matrix } => to_value(&norm_attaining_set(&read_matrix(matrix)?, tol)?),
        Command::Bj { left, right } => {
            let (t, a) = (read_matrix(left)?, read_matrix(right)?);
            let p = operator_p(g)?;
            if g.oracle || p != NormSelector::Two {
                to_value(&bj_operator_oracle(&t, &a, p, tol)?)
            } else {
                to_value(&bj_operator_spectral(&t, &a, tol)?)
            }
        }
        Command::BjVector { x, y } => {
            let (x, y, p) = (read_vector(x)?, read_vector(y)?, g.p.parse::<PNorm>()?);
            let (d_minus, d_plus) = one_sided_derivatives(&x, &y, p, tol)?;
            let verdict = if g.oracle { bj_vector_oracle(&x, &y, p, tol)? } else { bj_vector(&x, &y, p, tol)? };
            with_fields(to_value(&verdict), json!({ "d_minus": d_minus, "d_plus": d_plus, "p": p }))
        }
        Command::Smooth { matrix: Some(m), target_p: Some(q), .. } => {
            let q: PNorm = q.parse()?;
            to_value(&compact_smooth_conditions_with(&read_matrix(m)?, q, tol, DEFAULT_STARTS, g.seed)?)
        }
        Command::Smooth { matrix: Some(m), .. } => to_value(&operator_smooth(&read_matrix(m)?, tol)?),
        Command::Smooth { x: Some(x), .. } => to_value(&vector_smooth(&read_vector(x)?, g.p.parse()?, tol)?),
        Command::Witness { matrix: Some(m), .. } => {
            let (a1, a2) = nonsmooth_witness(&read_matrix(m)?, tol)?;
            json!({ "a1": a1, "a2": a2 })
        }
        Command::Witness { x: Some(x), .. } => {
            let (x, p) = (read_vector(x)?, g.p.parse::<PNorm>()?);
            let trials = g.trials.unwrap_or(DEFAULT_PROBE_TRIALS);
            match right_additivity_probe(&x, p, trials, g.seed, tol)? {
                Some((y, z)) => json!({ "found": true, "y": y, "z": z }),
                None => json!({ "found": false, "trials": trials }),
            }
        }
        Command::Smooth { .. } | Command::Witness { .. } => unreachable!("clap requires --matrix or --x"),
        Command::Descent { left, right } => {
            to_value(&descent_lambda(&read_matrix(left)?, &read_matrix(right)?, tol, g.seed)?)
        }
        Command::HyperplaneSup { matrix, x0 } => {
            json!({ "hyperplane_sup": hyperplane_sup(&read_matrix(matrix)?, &read_vector(x0)?)? })
        }
        Command::Example { name, n } => {
            if name != "2.5" {
                return Err(Error::InvalidArgument(format!("unknown example {name:?} (available: 2.5)")));
            }
            let e = truncated_example(*n, tol)?;
            json!({
                "n": e.n,
                "gap": e.gap,
                "lambda_star": e.lambda_star,
                "norm_min": e.norm_min,
                "orthogonal": e.orthogonal,
                "closed_form": e.closed_form,
            })
        }
        Command::Verify { suite, min_dim, max_dim, no_timing } => {
            let suite: Suite = suite.parse()?;
            let config = SuiteConfig {
                seed: g.seed,
                trials: g.trials.unwrap_or(DEFAULT_VERIFY_TRIALS),
                min_dim: *min_dim,
                max_dim: *max_dim,
                tol,
            };
            let report = if *no_timing { run_suite_untimed(suite, &config)? } else { run_suite(suite, &config)? };
            to_value(&report)
        }
    })
}

/// `path,value` lines for every leaf of `v`; paths join keys and indices
/// with dots.
fn flatten(v: &Value, path: &str, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(o) => o.iter().for_each(|(k, x)| flatten(x, &join(k), out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(x, &join(&i.to_string()), out)),
        Value::String(s) => out.push((path.to_string(), s.clone())),
        other => out.push((path.to_string(), other.to_string())),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable output"),
        Format::Csv => {
            let mut rows = Vec::new();
            flatten(v, "", &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["field", "value"]).expect("in-memory write");
            for (k, x) in rows {
                w.write_record([k, x]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 output").trim_end().to_string()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            println!("{}", render(&v, cli.global.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}
