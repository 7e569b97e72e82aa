//! Command-line front end.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::config::{Limits, CONFIG_ENV};
use crate::crossed::from_cuntz;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::expr::parse_expression;
use crate::maps::{iterate, NamedMap};
use crate::permutative::norm_lower_bounds;
use crate::rfs::car_generator;
use crate::suites::{passed, run_suite, Suite};
use crate::uhf::{norm_gauge_invariant, to_matrix_level};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cuntz", version, about = "Exact computation in the Cuntz algebra O_2")]
pub struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub max_car_index: Option<usize>,
    #[arg(long, global = true)]
    pub max_level: Option<usize>,
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,
    #[arg(long, global = true)]
    pub max_basis_level: Option<usize>,
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Collapse an expression to its minimal level, or expand it to --level.
    Normalize {
        expr: String,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Decide equality of two expressions.
    Eq { lhs: String, rhs: String },
    /// Split an expression into gauge-degree components.
    Grade { expr: String },
    /// Print the image of the CAR annihilator a_N.
    Car { n: usize },
    /// Apply rho, zeta, phi, delta or delta-star.
    Apply {
        map: NamedMap,
        expr: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Crossed-product normal form.
    Decompose { expr: String },
    /// Matrix of a gauge-invariant expression at a UHF level.
    Matrix {
        expr: String,
        #[arg(long)]
        level: usize,
    },
    /// Exact norm of the gauge-invariant part and compression lower bounds.
    Norm {
        expr: String,
        #[arg(long)]
        lower_bound_depth: Option<usize>,
    },
    /// Run a verification suite: cuntz, rfs, car N, transfer, covariance,
    /// crossed-roundtrip, condition-star, fa K or all.
    Check {
        suite: String,
        arg: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

impl Cli {
    pub fn limits(&self) -> Result<Limits> {
        let path = self
            .config
            .clone()
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        let mut limits = match path {
            Some(p) => Limits::load(&p)?,
            None => Limits::default(),
        };
        if let Some(v) = self.max_car_index {
            limits.max_car_index = v;
        }
        if let Some(v) = self.max_level {
            limits.max_level = v;
        }
        if let Some(v) = self.max_depth {
            limits.max_depth = v;
        }
        if let Some(v) = self.max_basis_level {
            limits.max_basis_level = v;
        }
        if let Some(v) = self.tolerance {
            limits.tolerance = v;
        }
        Ok(limits)
    }
}

/// Text and JSON renderings of a command result plus its exit code.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            code: EXIT_PASS,
        }
    }
}

fn element_json(x: &Element) -> Value {
    json!({ "text": x.to_string(), "element": x })
}

fn execute(cli: &Cli, limits: &Limits) -> Result<Output> {
    Ok(match &cli.command {
        Command::Normalize { expr, level } => {
            let x = parse_expression(expr)?;
            let y = match level {
                Some(l) => {
                    Limits::check("level", *l, limits.max_level)?;
                    x.expand_to_level(*l)?
                }
                None => x.normalize(),
            };
            Output::ok(y.to_string(), element_json(&y))
        }
        Command::Eq { lhs, rhs } => {
            let equal = parse_expression(lhs)?.equals(&parse_expression(rhs)?);
            Output {
                text: equal.to_string(),
                json: json!({ "equal": equal }),
                code: if equal { EXIT_PASS } else { EXIT_FAIL },
            }
        }
        Command::Grade { expr } => {
            let g = parse_expression(expr)?.grade();
            let mut text = String::new();
            let mut map = serde_json::Map::new();
            for (deg, part) in g.components() {
                text.push_str(&format!("{}: {}\n", deg, part));
                map.insert(deg.to_string(), element_json(part));
            }
            if text.is_empty() {
                text.push_str("0\n");
            }
            Output::ok(text.trim_end().to_string(), Value::Object(map))
        }
        Command::Car { n } => {
            let g = car_generator(*n, limits)?;
            Output::ok(
                g.value.to_string(),
                json!({ "n": n, "terms": g.value.len(), "text": g.value.to_string(), "element": g.value }),
            )
        }
        Command::Apply { map, expr, times } => {
            let x = parse_expression(expr)?;
            if x.d() != 2 {
                return Err(Error::UnsupportedGeneratorCount(x.d()));
            }
            Limits::check("iteration count", *times, limits.max_level)?;
            let f = match map {
                NamedMap::Rho => crate::maps::apply_rho,
                NamedMap::Zeta => crate::maps::apply_zeta,
                NamedMap::Phi => crate::maps::apply_phi,
                NamedMap::Delta => crate::maps::apply_delta,
                NamedMap::DeltaStar => crate::maps::apply_delta_star,
            };
            let y = iterate(f, &x, *times)?;
            Output::ok(y.to_string(), element_json(&y))
        }
        Command::Decompose { expr } => {
            let ce = from_cuntz(&parse_expression(expr)?)?;
            let map: BTreeMap<String, String> =
                ce.coeffs().iter().map(|(k, a)| (k.to_string(), a.to_string())).collect();
            Output::ok(ce.to_string(), serde_json::to_value(map).expect("string map"))
        }
        Command::Matrix { expr, level } => {
            Limits::check("matrix level", *level, limits.max_level)?;
            let m = to_matrix_level(&parse_expression(expr)?, *level)?;
            let rows: Vec<Vec<String>> = (0..m.dim())
                .map(|r| (0..m.dim()).map(|c| m.get(r, c).to_string()).collect())
                .collect();
            Output::ok(m.to_string(), json!({ "level": level, "dim": m.dim(), "entries": rows }))
        }
        Command::Norm { expr, lower_bound_depth } => {
            let x = parse_expression(expr)?;
            let exact = if x.is_gauge_invariant() {
                Some(norm_gauge_invariant(&x)?)
            } else {
                None
            };
            let depth = lower_bound_depth.or(if exact.is_none() { Some(limits.max_depth) } else { None });
            let bounds = match depth {
                Some(dep) => norm_lower_bounds(&x, dep, limits)?,
                None => Vec::new(),
            };
            let mut text = Vec::new();
            if let Some(n) = exact {
                text.push(format!("norm = {:.12}", n));
            }
            if let Some(l) = bounds.last() {
                text.push(format!("lower bound (depth {}) = {:.12}", bounds.len(), l));
            }
            Output::ok(
                text.join("\n"),
                json!({ "exact": exact, "lower_bounds": bounds, "lower_bound": bounds.last() }),
            )
        }
        Command::Check { suite, arg, seed } => {
            let name = match arg {
                Some(a) => format!("{} {}", suite, a),
                None => suite.clone(),
            };
            let suite: Suite = name.parse()?;
            let seed = seed.unwrap_or(limits.seed);
            let report = run_suite(suite, seed, limits)?;
            let ok = passed(&report);
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["passed"] = Value::Bool(ok);
            Output {
                text: report.to_string().trim_end().to_string(),
                json: value,
                code: if ok { EXIT_PASS } else { EXIT_FAIL },
            }
        }
    })
}

/// Exit code for an error: resource bounds are distinct from bad input.
pub fn error_code(e: &Error) -> i32 {
    if e.is_resource_bound() {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

/// Runs the command line, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = cli.limits().and_then(|limits| execute(&cli, &limits));
    match result {
        Ok(output) => {
            let _ = if cli.json {
                writeln!(out, "{}", output.json)
            } else {
                writeln!(out, "{}", output.text)
            };
            output.code
        }
        Err(e) => {
            let code = error_code(&e);
            let _ = if cli.json {
                writeln!(err, "{}", json!({ "error": e.to_string(), "resource_bound": e.is_resource_bound() }))
            } else {
                writeln!(err, "error: {}", e)
            };
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("cuntz").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eq_command() {
        assert_eq!(run_args(&["eq", "s1* s1", "I"]).0, 0);
        assert_eq!(run_args(&["eq", "s1 s1*", "I"]).0, 1);
        let (code, out, _) = run_args(&["--json", "eq", "s1* s1", "I"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"equal":true}"#);
    }

    #[test]
    fn decompose_command() {
        let (code, out, _) = run_args(&["decompose", "s1", "--json"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"1":"s1 s1*"}"#);
    }

    #[test]
    fn car_and_apply() {
        let (code, out, _) = run_args(&["car", "2"]);
        assert_eq!(code, 0);
        assert_eq!(parse_expression(out.trim()).unwrap(), car_generator(2, &Limits::default()).unwrap().value);
        let (code, out, _) = run_args(&["apply", "delta-star", "s1 s1 s2* s1*"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "s1 s2*");
        let (_, out, _) = run_args(&["apply", "rho", "I", "--times", "2"]);
        assert!(parse_expression(out.trim()).unwrap().equals(&Element::identity(2)));
    }

    #[test]
    fn normalize_and_grade() {
        assert_eq!(run_args(&["normalize", "s1 s1* + s2 s2*"]).1.trim(), "I");
        let (_, out, _) = run_args(&["normalize", "s1", "--level", "1"]);
        assert_eq!(out.trim(), "s1 s1 s1* + s1 s2 s2*");
        let (_, out, _) = run_args(&["grade", "s1 + s2* + I"]);
        assert_eq!(out.trim(), "-1: s2*\n0: I\n1: s1");
    }

    #[test]
    fn matrix_and_norm() {
        let (code, out, _) = run_args(&["--json", "matrix", "s1 s2* + s2 s1*", "--level", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["entries"], json!([["0", "1"], ["1", "0"]]));
        let (code, out, _) = run_args(&["--json", "norm", "s1 + s2", "--lower-bound-depth", "6"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert!(v["exact"].is_null());
        assert!(v["lower_bound"].as_f64().unwrap() > 1.3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["check", "car", "4"]).0, 0);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["eq", "s1 +", "I"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["check", "nothing"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["apply", "sigma", "s1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["matrix", "s1", "--level", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["car", "13"]).0, EXIT_RESOURCE);
        assert_eq!(run_args(&["--max-car-index", "3", "check", "car", "4"]).0, EXIT_RESOURCE);
        assert_eq!(run_args(&["matrix", "I", "--level", "9"]).0, EXIT_RESOURCE);
        assert_eq!(run_args(&["--help"]).0, EXIT_PASS);
    }

    #[test]
    fn config_file() {
        let dir = std::env::temp_dir().join(format!("cuntz-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("limits.conf");
        std::fs::write(&path, "max_car_index = 2\n").unwrap();
        let p = path.to_str().unwrap();
        assert_eq!(run_args(&["--config", p, "car", "3"]).0, EXIT_RESOURCE);
        assert_eq!(run_args(&["--config", p, "--max-car-index", "5", "car", "3"]).0, EXIT_PASS);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
