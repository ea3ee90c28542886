//! `branchloci`: validation, realization, coordinates, locus sweeps,
//! rendering and the self-test suite.

mod render;

use branchloci_core::acceptance::{self, CheckResult};
use branchloci_core::dataset::{DataSet, DataSetError};
use branchloci_core::fnpipe::{
    branch_locus_point, gamma2_two_route_residual, solve_fixed_point, Family, FnError,
};
use branchloci_core::oracle::closed_forms;
use branchloci_core::polygon::{embed, realize_type1, PolygonError};
use clap::{Parser, Subcommand};
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use render::{RenderSpec, What};

#[derive(Parser, Debug)]
#[command(
    name = "branchloci",
    version,
    about = "Fenchel-Nielsen coordinates of branch loci"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Human-readable output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a data set against the validity conditions.
    Validate { dataset: String },
    /// Classify a data set as rotational, Type 1 or Type 2.
    Classify { dataset: String },
    /// Coordinates of the fixed point of a supported genus-2 action.
    Fn { dataset: String },
    /// CSV sweep of the compatible-pair locus.
    Locus {
        /// One value or a `MIN MAX` range.
        #[arg(long, num_args = 1..=2, required = true, allow_negative_numbers = true)]
        alpha: Vec<f64>,
        /// One value or a `MIN MAX` range.
        #[arg(long, num_args = 1..=2, required = true, allow_negative_numbers = true)]
        s: Vec<f64>,
        /// Grid points per range.
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Emit an SVG diagram.
    Render {
        /// Data set for polygon diagrams.
        dataset: Option<String>,
        #[arg(long, value_enum, default_value = "polygon")]
        what: What,
        #[arg(long, default_value_t = 512)]
        size: u32,
        #[arg(long)]
        no_labels: bool,
        #[arg(long, default_value_t = 1.5)]
        stroke: f64,
        /// Locus plot: one value or a `MIN MAX` range.
        #[arg(long, num_args = 1..=2, allow_negative_numbers = true)]
        alpha: Vec<f64>,
        /// Locus plot: one value or a `MIN MAX` range.
        #[arg(long, num_args = 1..=2, allow_negative_numbers = true)]
        s: Vec<f64>,
        #[arg(long, default_value_t = 40)]
        steps: usize,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Replace every tolerance with this value.
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

/// Exit status contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok = 0,
    InvalidInput = 1,
    Constraint = 2,
    Internal = 3,
}

struct Failure {
    status: Status,
    message: String,
}

impl Failure {
    fn new(status: Status, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<DataSetError> for Failure {
    fn from(e: DataSetError) -> Self {
        Failure::new(Status::InvalidInput, e.to_string())
    }
}

impl From<PolygonError> for Failure {
    fn from(e: PolygonError) -> Self {
        let status = match e {
            PolygonError::Disc(_) | PolygonError::InconsistentPairing(_) => Status::Internal,
            _ => Status::Constraint,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<FnError> for Failure {
    fn from(e: FnError) -> Self {
        match e {
            FnError::Polygon(p) => p.into(),
            FnError::Unsupported(_) | FnError::Constraint(_) => {
                Failure::new(Status::Constraint, e.to_string())
            }
            _ => Failure::new(Status::Internal, e.to_string()),
        }
    }
}

/// What a command produced: text for the output sink and an exit status.
struct Output {
    text: String,
    status: Status,
}

fn ok(text: String) -> Result<Output, Failure> {
    Ok(Output {
        text,
        status: Status::Ok,
    })
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Fifteen significant digits, plain decimal notation.
fn sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let int_digits = x.abs().log10().floor() as i32 + 1;
    let decimals = (15 - int_digits).clamp(0, 30) as usize;
    format!("{x:.decimals$}")
}

fn parse(text: &str) -> Result<DataSet, Failure> {
    Ok(DataSet::parse(text)?)
}

fn cmd_validate(text: &str, pretty: bool) -> Result<Output, Failure> {
    let d = parse(text)?;
    let report = d.validate();
    let genus = d.genus().ok().filter(|_| report.valid);
    let class = report.valid.then(|| d.classify());
    let text = if pretty {
        let mut s = format!("data set  {d}\nvalid     {}\n", report.valid);
        if let (Some(g), Some(c)) = (genus, class) {
            let _ = writeln!(
                s,
                "genus     {g}\nclass     {}{}",
                c.kind,
                if c.irreducible { "-irreducible" } else { "" }
            );
        }
        for v in &report.violations {
            let _ = writeln!(s, "  ({}) {}", v.condition, v.message);
        }
        s
    } else {
        json_line(&json!({
            "data_set": d.to_string(),
            "valid": report.valid,
            "violations": report.violations,
            "genus": genus,
            "class": class,
        }))
    };
    Ok(Output {
        text,
        status: if report.valid {
            Status::Ok
        } else {
            Status::InvalidInput
        },
    })
}

fn cmd_classify(text: &str, pretty: bool) -> Result<Output, Failure> {
    let d = parse(text)?;
    let report = d.validate();
    if !report.valid {
        let first = &report.violations[0];
        return Err(Failure::new(
            Status::InvalidInput,
            format!(
                "{d} is not a valid data set: ({}) {}",
                first.condition, first.message
            ),
        ));
    }
    let c = d.classify();
    let genus = d.genus()?;
    ok(if pretty {
        format!(
            "{d}: {}{} on genus {genus}\n",
            c.kind,
            if c.irreducible { ", irreducible" } else { "" }
        )
    } else {
        json_line(&json!({
            "data_set": d.to_string(),
            "kind": c.kind,
            "irreducible": c.irreducible,
            "genus": genus,
        }))
    })
}

fn cmd_fn(text: &str, pretty: bool) -> Result<Output, Failure> {
    let d = parse(text)?;
    let report = d.validate();
    if !report.valid {
        return Err(Failure::new(
            Status::InvalidInput,
            format!("{d} is not a valid data set"),
        ));
    }
    let fp = solve_fixed_point(&d)?;
    let family =
        Family::of(&fp.polygon).ok_or_else(|| Failure::new(Status::Internal, "family lost"))?;
    let forms = closed_forms(family);
    let values = fp.coords.as_vec();
    ok(if pretty {
        let mut s = format!("{d}  (polygon with {} sides)\n", fp.polygon.k());
        for (f, v) in forms.iter().zip(&values) {
            let _ = writeln!(s, "{:<3} {:>20}  {}", f.name, sig15(*v), f.expression);
        }
        s
    } else {
        // no echo of the input: data sets with a shared fixed point print identically
        json_line(&json!({
            "lengths": fp.coords.lengths,
            "twists": fp.coords.twists,
            "convention": fp.coords.convention,
            "closed_forms": forms.iter().map(|f| f.expression).collect::<Vec<_>>(),
            "decimals": values.iter().map(|v| sig15(*v)).collect::<Vec<_>>(),
        }))
    })
}

fn grid(values: &[f64], steps: usize) -> Result<Vec<f64>, Failure> {
    match *values {
        [x] => Ok(vec![x]),
        [a, b] => {
            if steps < 1 {
                return Err(Failure::new(
                    Status::InvalidInput,
                    "steps must be at least 1",
                ));
            }
            if steps == 1 {
                return Ok(vec![a]);
            }
            Ok((0..steps)
                .map(|i| a + (b - a) * i as f64 / (steps - 1) as f64)
                .collect())
        }
        _ => Err(Failure::new(
            Status::InvalidInput,
            "expected one value or a MIN MAX range",
        )),
    }
}

fn cmd_locus(alpha: &[f64], s: &[f64], steps: usize) -> Result<Output, Failure> {
    let mut csv = String::from("alpha,s,gamma1,gamma2,t,gamma2_residual\n");
    let mut rows = 0;
    for &a in &grid(alpha, steps)? {
        for &sv in &grid(s, steps)? {
            let point = branch_locus_point(a, sv)
                .map_err(Failure::from)
                .and_then(|p| Ok((p, gamma2_two_route_residual(a, sv)?)));
            match point {
                Ok((p, residual)) => {
                    rows += 1;
                    let _ = writeln!(
                        csv,
                        "{a},{sv},{},{},{},{residual}",
                        p.gamma1(),
                        p.gamma2(),
                        p.t()
                    );
                }
                Err(f) if f.status == Status::Constraint => {
                    eprintln!("skipped alpha={a}, s={sv}: {}", f.message);
                }
                Err(f) => return Err(f),
            }
        }
    }
    if rows == 0 {
        return Err(Failure::new(
            Status::Constraint,
            "no grid point satisfies 0 < alpha < pi/3 and cosh s > cot^2(alpha/2)",
        ));
    }
    ok(csv)
}

fn cmd_render(
    dataset: Option<&str>,
    spec: RenderSpec,
    alpha: &[f64],
    s: &[f64],
    steps: usize,
) -> Result<Output, Failure> {
    spec.check()
        .map_err(|m| Failure::new(Status::InvalidInput, m))?;
    let need_data = || {
        dataset.ok_or_else(|| Failure::new(Status::InvalidInput, "this diagram needs a data set"))
    };
    let svg = match spec.what {
        What::Polygon => {
            let d = parse(need_data()?)?;
            render::polygon_svg(&spec, &embed(&realize_type1(&d)?))
        }
        What::PolygonPants => {
            let d = parse(need_data()?)?;
            render::pants_svg(&spec, &solve_fixed_point(&d)?)
        }
        What::LocusPlot => {
            let alphas = if alpha.is_empty() {
                vec![0.5, 0.7, 0.9]
            } else {
                grid(alpha, 5)?
            };
            let range = match *s {
                [] => (2.5, 6.0),
                [x] => (x, x),
                [a, b] => (a, b),
                _ => unreachable!("clap limits the arity"),
            };
            render::locus_svg(&spec, &alphas, range, steps).ok_or_else(|| {
                Failure::new(
                    Status::Constraint,
                    "no valid locus point in the requested range",
                )
            })?
        }
    };
    ok(svg)
}

fn cmd_selftest(tolerance: Option<f64>, pretty: bool) -> Result<Output, Failure> {
    let results: Vec<CheckResult> = acceptance::run(tolerance);
    let passed = acceptance::all_passed(&results);
    let text = if pretty {
        let mut s: String = results.iter().map(|r| r.line() + "\n").collect();
        let _ = writeln!(
            s,
            "{} of {} checks passed",
            results.iter().filter(|r| r.passed).count(),
            results.len()
        );
        s
    } else {
        json_line(&json!({
            "passed": passed,
            "failed": results.iter().filter(|r| !r.passed).map(|r| r.criterion).collect::<Vec<_>>(),
            "checks": results,
        }))
    };
    Ok(Output {
        text,
        status: if passed { Status::Ok } else { Status::Internal },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pretty = cli.pretty && !cli.json;
    let result = match &cli.command {
        Command::Validate { dataset } => cmd_validate(dataset, pretty),
        Command::Classify { dataset } => cmd_classify(dataset, pretty),
        Command::Fn { dataset } => cmd_fn(dataset, pretty),
        Command::Locus { alpha, s, steps } => cmd_locus(alpha, s, *steps),
        Command::Render {
            dataset,
            what,
            size,
            no_labels,
            stroke,
            alpha,
            s,
            steps,
        } => cmd_render(
            dataset.as_deref(),
            RenderSpec {
                what: *what,
                size: *size,
                labels: !no_labels,
                stroke: *stroke,
            },
            alpha,
            s,
            *steps,
        ),
        Command::Selftest { tolerance } => cmd_selftest(*tolerance, pretty),
    };
    match result {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(msg) = written {
                eprintln!("error: {msg}");
                return ExitCode::from(Status::InvalidInput as u8);
            }
            ExitCode::from(out.status as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(sig15(2.765142618158056), "2.76514261815806");
        assert_eq!(sig15(-1.6169216675118867), "-1.61692166751189");
        assert_eq!(sig15(0.0), "0");
        assert_eq!(sig15(12.5), "12.5000000000000");
    }

    #[test]
    fn grids() {
        assert_eq!(grid(&[1.2], 10).ok().unwrap(), vec![1.2]);
        assert_eq!(grid(&[0.0, 1.0], 3).ok().unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(grid(&[0.0, 1.0], 0).is_err());
    }

    #[test]
    fn status_mapping() {
        let f: Failure = FnError::Unsupported("x".into()).into();
        assert_eq!(f.status, Status::Constraint);
        let f: Failure = FnError::NoSeam(1).into();
        assert_eq!(f.status, Status::Internal);
        let f: Failure = DataSetError::Invalid("x".into()).into();
        assert_eq!(f.status, Status::InvalidInput);
    }
}
