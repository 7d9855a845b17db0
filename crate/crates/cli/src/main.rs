//! `bergman`: verification suites and ad-hoc access to the core operations.

mod config;
mod error;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bergman_core::operators::FirstOrderOp;
use bergman_core::report::{sig17, to_json_line, to_json_pretty, CONVENTIONS};
use bergman_core::shift::{compare_kernel_shift, kernel_shift_residual};
use bergman_core::verify::{self, VerifyReport};
use bergman_core::{
    classify_symmetric, frame_constants, soltani_up, to_rep, CoeffVector, Complex64, KernelPoint, SelfAdjointParams,
    ShiftOp, Verdict, WeightParam,
};
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use config::{Format, RunConfig};
use error::CliError;

#[derive(Parser)]
#[command(
    name = "bergman",
    version,
    about = "Weighted Bergman space and SU(1,1) discrete series toolkit"
)]
struct Cli {
    #[command(flatten)]
    run: RunFlags,

    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand. Unset flags fall back to `--config`, then to defaults.
#[derive(Args)]
struct RunFlags {
    /// Weight parameter, in (-1, 100]
    #[arg(long, global = true, allow_negative_numbers = true)]
    xi: Option<f64>,
    /// Truncation degree N
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Radial quadrature nodes
    #[arg(long, global = true)]
    quad_r: Option<usize>,
    /// Angular quadrature nodes
    #[arg(long, global = true)]
    quad_m: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance for coefficient-exact comparisons
    #[arg(long, global = true)]
    tol_exact: Option<f64>,
    /// Tolerance for quadrature comparisons
    #[arg(long, global = true)]
    tol_quad: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// `key = value` file read before the flags above
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the invariant suites; exits 1 if any property is violated
    Verify {
        /// Run only these suites (repeatable or comma-separated)
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
    },
    /// Evaluate the Bergman uncertainty inequality for f over a grid of shifts
    Uncertainty {
        /// JSON coefficient array, e.g. [1, [0, 2]]
        f_file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0", allow_negative_numbers = true)]
        w: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0", allow_negative_numbers = true)]
        y: Vec<f64>,
    },
    /// Decide whether f d/dz + g is symmetric on A²_ξ
    Classify {
        /// JSON object {"f": [...], "g": [...]}
        op_file: PathBuf,
    },
    /// Decompose a symmetric operator as i π(U) + d
    Rep {
        /// JSON {"a": .., "b": .., "c": ..} or {"f": [...], "g": [...]}
        op_file: PathBuf,
    },
    /// Frame constants of the shift a_k -> (k + c) a_k from A²_ξ to A²_{ξ+2}
    Shift {
        /// `re` or `re,im`
        #[arg(allow_negative_numbers = true)]
        c: String,
        #[arg(allow_negative_numbers = true)]
        xi: f64,
        k_range: usize,
    },
    /// Residual of (α z d/dz + 1) K_ξ(·, w) against K_{ξ+1}(·, w)
    Kernel {
        #[arg(allow_negative_numbers = true)]
        alpha: f64,
        /// `re` or `re,im`
        #[arg(allow_negative_numbers = true)]
        w: String,
        #[arg(allow_negative_numbers = true)]
        xi: f64,
        n: usize,
    },
}

fn parse_complex(field: &str, s: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| {
        p.parse::<f64>()
            .map_err(|e| CliError::Config(format!("field `{field}`: {e} (got {s:?})")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(CliError::Config(format!(
            "field `{field}`: expected `re` or `re,im`, got {s:?}"
        ))),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::json(path.to_path_buf(), &text, e))
}

fn resolve(flags: &RunFlags, suite: Vec<String>) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &flags.config {
        cfg.load_file(path)?;
    }
    macro_rules! take {
        ($($f:ident),*) => { $(if let Some(v) = flags.$f.clone() { cfg.$f = v; })* };
    }
    take!(xi, trunc, quad_r, quad_m, seed, tol_exact, tol_quad);
    if flags.format.is_some() {
        cfg.format = flags.format;
    }
    if flags.out.is_some() {
        cfg.out = flags.out.clone();
    }
    if !suite.is_empty() {
        cfg.suite = suite;
    }
    Ok(cfg)
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn json_err(e: serde_json::Error) -> CliError {
    CliError::Output(io::Error::other(e))
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| CliError::Output(e.into()))?;
    for row in rows {
        w.write_record(&row).map_err(|e| CliError::Output(e.into()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    run_config: &'a RunConfig,
    #[serde(flatten)]
    report: &'a VerifyReport,
}

fn verify_csv(cfg: &RunConfig, report: &VerifyReport) -> Result<String, CliError> {
    let mut text = format!("# run_config {}\n", to_json_line(cfg).map_err(json_err)?);
    for c in CONVENTIONS {
        text.push_str(&format!("# convention {}\n", to_json_line(c).map_err(json_err)?));
    }
    for row in &report.kernel_shift {
        text.push_str(&format!("# kernel_shift {}\n", to_json_line(row).map_err(json_err)?));
    }
    let rows = report
        .properties
        .iter()
        .map(|p| {
            vec![
                p.suite.to_string(),
                p.name.to_string(),
                sig17(p.measured),
                match p.comparison {
                    verify::Comparison::AtMost => "<=".into(),
                    verify::Comparison::AtLeast => ">=".into(),
                },
                sig17(p.threshold),
                p.tolerance.to_string(),
                p.passed.to_string(),
            ]
        })
        .collect();
    text.push_str(&csv_text(
        &[
            "suite",
            "property",
            "measured",
            "comparison",
            "threshold",
            "tolerance",
            "passed",
        ],
        rows,
    )?);
    Ok(text)
}

fn cmd_verify(cfg: &RunConfig) -> Result<(), CliError> {
    let report = verify::run(&cfg.verify_config(), &cfg.suite)?;
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            to_json_pretty(&VerifyOutput {
                run_config: cfg,
                report: &report,
            })
            .map_err(json_err)?
                + "\n"
        }
        Format::Csv => verify_csv(cfg, &report)?,
    };
    emit(cfg, &text)?;
    for p in report.failures() {
        eprintln!(
            "FAIL {}::{} measured {} threshold {} ({})",
            p.suite,
            p.name,
            sig17(p.measured),
            sig17(p.threshold),
            p.tolerance
        );
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::Violations { count: report.failed })
    }
}

fn cmd_uncertainty(cfg: &RunConfig, f_file: &Path, ws: &[f64], ys: &[f64]) -> Result<(), CliError> {
    let f: CoeffVector = read_json(f_file)?;
    let xi = WeightParam::new(cfg.xi)?;
    let f = &f;
    let reports: Vec<_> = ws
        .iter()
        .flat_map(|&w| ys.iter().map(move |&y| soltani_up(f, w, y, xi)))
        .collect();
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&to_json_line(r).map_err(json_err)?);
                s.push('\n');
            }
            s
        }
        Format::Csv => csv_text(
            &["xi", "deg", "w", "y", "lhs", "rhs", "slack"],
            reports
                .iter()
                .map(|r| {
                    vec![
                        sig17(r.xi),
                        r.degree.to_string(),
                        sig17(r.shift_first),
                        sig17(r.shift_second),
                        sig17(r.lhs),
                        sig17(r.rhs),
                        sig17(r.slack),
                    ]
                })
                .collect(),
        )?,
    };
    emit(cfg, &text)
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    xi: f64,
    #[serde(flatten)]
    verdict: &'a Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'static str>,
}

fn cmd_classify(cfg: &RunConfig, op_file: &Path) -> Result<(), CliError> {
    let op: FirstOrderOp = read_json(op_file)?;
    let xi = WeightParam::new(cfg.xi)?;
    let verdict = classify_symmetric(&op, xi, cfg.tol_exact);
    let reason = match &verdict {
        Verdict::NotSymmetric { witness } => Some(witness.condition.describe()),
        Verdict::Symmetric { .. } => None,
    };
    emit(
        cfg,
        &(to_json_line(&ClassifyOutput {
            xi: cfg.xi,
            verdict: &verdict,
            reason,
        })
        .map_err(json_err)?
            + "\n"),
    )
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RepInput {
    Params(SelfAdjointParams),
    Op(FirstOrderOp),
}

fn cmd_rep(cfg: &RunConfig, op_file: &Path) -> Result<(), CliError> {
    let xi = WeightParam::new(cfg.xi)?;
    let params = match read_json::<RepInput>(op_file)? {
        RepInput::Params(p) => p,
        RepInput::Op(op) => match classify_symmetric(&op, xi, cfg.tol_exact) {
            Verdict::Symmetric { form } => form.params(),
            Verdict::NotSymmetric { witness } => {
                return Err(CliError::Config(format!(
                    "{}: operator is not symmetric ({}, defect {})",
                    op_file.display(),
                    witness.condition.describe(),
                    sig17(witness.defect)
                )))
            }
        },
    };
    #[derive(Serialize)]
    struct Out {
        xi: f64,
        params: SelfAdjointParams,
        #[serde(flatten)]
        rep: bergman_core::RepDecomposition,
    }
    let out = Out {
        xi: cfg.xi,
        params,
        rep: to_rep(params, xi),
    };
    emit(cfg, &(to_json_line(&out).map_err(json_err)? + "\n"))
}

fn cmd_shift(cfg: &RunConfig, c: &str, xi: f64, k_range: usize) -> Result<(), CliError> {
    let c = parse_complex("c", c)?;
    let op = ShiftOp::new(c)?;
    let fc = frame_constants(op, WeightParam::new(xi)?, k_range);
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => csv_text(
            &["xi", "c_re", "c_im", "k_range", "m", "M"],
            vec![vec![
                sig17(xi),
                sig17(c.re),
                sig17(c.im),
                k_range.to_string(),
                sig17(fc.lower),
                sig17(fc.upper),
            ]],
        )?,
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                xi: f64,
                c_re: f64,
                c_im: f64,
                k_range: usize,
                m: f64,
                #[serde(rename = "M")]
                big_m: f64,
            }
            let out = Out {
                xi,
                c_re: c.re,
                c_im: c.im,
                k_range,
                m: fc.lower,
                big_m: fc.upper,
            };
            to_json_line(&out).map_err(json_err)? + "\n"
        }
    };
    emit(cfg, &text)
}

fn cmd_kernel(cfg: &RunConfig, alpha: f64, w: &str, xi: f64, n: usize) -> Result<(), CliError> {
    let point = KernelPoint::new(parse_complex("w", w)?)?;
    let weight = WeightParam::new(xi)?;
    let residual = kernel_shift_residual(alpha, point, weight, n)?;
    let cmp = compare_kernel_shift(point, weight, n)?;
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                alpha: f64,
                residual: f64,
                comparison: bergman_core::shift::KernelShiftComparison,
            }
            to_json_line(&Out {
                alpha,
                residual,
                comparison: cmp,
            })
            .map_err(json_err)?
                + "\n"
        }
        Format::Csv => csv_text(
            &["xi", "w_re", "w_im", "degree", "label", "alpha", "residual"],
            [
                ("requested", alpha, residual),
                ("derived", cmp.alpha_derived, cmp.residual_derived),
                ("printed", cmp.alpha_printed, cmp.residual_printed),
            ]
            .into_iter()
            .map(|(label, a, r)| {
                vec![
                    sig17(xi),
                    sig17(cmp.w_re),
                    sig17(cmp.w_im),
                    n.to_string(),
                    label.to_string(),
                    sig17(a),
                    sig17(r),
                ]
            })
            .collect(),
        )?,
    };
    emit(cfg, &text)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let suite = match &cli.command {
        Command::Verify { suite } => suite.clone(),
        _ => Vec::new(),
    };
    let cfg = resolve(&cli.run, suite)?;
    match &cli.command {
        Command::Verify { .. } => cmd_verify(&cfg),
        Command::Uncertainty { f_file, w, y } => cmd_uncertainty(&cfg, f_file, w, y),
        Command::Classify { op_file } => cmd_classify(&cfg, op_file),
        Command::Rep { op_file } => cmd_rep(&cfg, op_file),
        Command::Shift { c, xi, k_range } => cmd_shift(&cfg, c, *xi, *k_range),
        Command::Kernel { alpha, w, xi, n } => cmd_kernel(&cfg, *alpha, w, *xi, *n),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
