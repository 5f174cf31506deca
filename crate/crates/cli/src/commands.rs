//! Subcommand implementations. Each returns the process exit code.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermiphase_core::info::{covariance, renyi_entropy};
use fermiphase_core::phase_space::{TemperatureBranch, ThermalParams};
use fermiphase_core::verify::{run_suite, Mode, SuiteConfig};
use fermiphase_core::PhaseSpace;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::eval::eval_str;
use crate::format::format_g;
use crate::parser::parse;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

const DIGITS: usize = 15;

#[derive(Debug, Parser)]
#[command(name = "fermiphase", version, about = "Single-mode fermionic phase space: algebra, distributions and uncertainty measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity, bound, majorization and figure checks.
    Verify(VerifyArgs),
    /// Tabulate moments, entropies and purity over a grid of ⟨n⟩.
    Sweep(SweepArgs),
    /// Tabulate the Fermi-Dirac occupation over a range of ε/T.
    FermiDirac(FermiDiracArgs),
    /// Evaluate an expression and print its normal-ordered form.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    /// Number of equally spaced ⟨n⟩ points on [0, 1].
    #[arg(long, default_value_t = 513)]
    pub grid: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1,2,4")]
    pub orders: Vec<f64>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Write the full report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Print every check, not only failures.
    #[arg(long)]
    pub verbose: bool,
}

/// A rational given as `p/q` or as a decimal.
#[derive(Clone, Debug, PartialEq)]
pub struct Ratio(pub BigRational);

impl FromStr for Ratio {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("`{s}` is not a rational number");
        let (neg, body) = match s.trim().strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.trim()),
        };
        if body.is_empty() || body.contains(['i', '†']) {
            return Err(bad());
        }
        let ast = parse(body).map_err(|e| format!("{}: {e}", bad()))?;
        let value = match ast.kind {
            crate::ast::ExprKind::Number(lit) if !lit.imaginary => lit.value,
            _ => return Err(bad()),
        };
        Ok(Ratio(if neg { -value } else { value }))
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub from: Ratio,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub to: Ratio,
    #[arg(long, default_value = "1/512", allow_hyphen_values = true)]
    pub step: Ratio,
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1,2,4")]
    pub orders: Vec<f64>,
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioRange {
    pub min: f64,
    pub max: f64,
}

impl FromStr for RatioRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s.split_once(',').ok_or_else(|| format!("`{s}` is not of the form MIN,MAX"))?;
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
        Ok(RatioRange { min: num(lo)?, max: num(hi)? })
    }
}

#[derive(Debug, Args)]
pub struct FermiDiracArgs {
    /// `MIN,MAX` for ε/T.
    #[arg(long, default_value = "-10,10", allow_hyphen_values = true)]
    pub ratio_range: RatioRange,
    #[arg(long, default_value_t = 41)]
    pub points: usize,
    /// Excitation energy ε.
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub expression: String,
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Verify(a) => verify(&a, &mut io::stdout().lock()),
        Command::Sweep(a) => sweep(&a),
        Command::FermiDirac(a) => fermi_dirac(&a),
        Command::Eval(a) => eval(&a),
    }
}

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// A reader that stops early (`| head`) is not an error.
fn finish(result: io::Result<()>) -> i32 {
    match result {
        Ok(()) => EXIT_OK,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> i32 {
    let config = SuiteConfig {
        mode: match args.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        },
        grid: args.grid,
        orders: args.orders.clone(),
        tol: args.tol,
    };
    let report = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let lines = report.checks.iter().filter(|c| args.verbose || !c.pass).map(|c| {
        let params: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{} {} [{}] lhs={} rhs={} tol={}",
            if c.pass { "PASS" } else { "FAIL" },
            c.check,
            params.join(" "),
            c.lhs,
            c.rhs,
            c.tolerance
        )
    });
    let write = || -> io::Result<()> {
        for line in lines {
            writeln!(out, "{line}")?;
        }
        writeln!(out, "{} checks: {} passed, {} failed", report.checks.len(), report.passed, report.failed)
    };
    if let Err(e) = write() {
        eprintln!("error: {e}");
        return EXIT_ERROR;
    }
    if let Some(path) = &args.json {
        let written = File::create(path).map_err(|e| e.to_string()).and_then(|f| {
            let mut w = BufWriter::new(f);
            serde_json::to_writer_pretty(&mut w, &report).map_err(|e| e.to_string())?;
            w.write_all(b"\n").and_then(|_| w.flush()).map_err(|e| e.to_string())
        });
        if let Err(e) = written {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_ERROR;
        }
    }
    if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

/// `from, from+step, …` up to and including `to`, computed exactly.
pub fn sweep_grid(from: &BigRational, to: &BigRational, step: &BigRational) -> Result<Vec<f64>, String> {
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());
    if !(zero <= *from && from < to && *to <= one) {
        return Err(format!("need 0 <= from < to <= 1, got from={from} to={to}"));
    }
    if *step <= zero {
        return Err(format!("step must be positive, got {step}"));
    }
    let mut grid = Vec::new();
    let mut n = from.clone();
    while n <= *to {
        grid.push(n.to_f64().ok_or("grid point not representable")?);
        n += step;
    }
    Ok(grid)
}

fn order_label(r: f64) -> String {
    format_g(r, DIGITS)
}

/// Writes the sweep table for `grid` to `out`.
pub fn write_sweep(grid: &[f64], orders: &[f64], out: &mut dyn Write) -> io::Result<()> {
    let ps = PhaseSpace::new();
    let mut header = vec!["nbar".to_string(), "det_gamma_W".into(), "det_gamma_Q".into()];
    header.extend(orders.iter().map(|r| format!("S_W_r{}", order_label(*r))));
    header.extend(orders.iter().map(|r| format!("S_Q_r{}", order_label(*r))));
    header.push("purity".into());
    header.push("wigner_sign".into());
    writeln!(out, "{}", header.join(","))?;
    for &n in grid {
        let nb = Complex64::new(n, 0.0);
        let (w, q) = (ps.wigner_of(nb), ps.husimi_of(nb));
        let mut row = vec![format_g(n, DIGITS), format_g(covariance(&w).det().re, DIGITS)];
        row.push(format_g(covariance(&q).det().re, DIGITS));
        for z in [&w, &q] {
            for &r in orders {
                let s = renyi_entropy(z, r).map_err(io::Error::other)?;
                row.push(format_g(s.value, DIGITS));
            }
        }
        let purity = 1.0 - 2.0 * n * (1.0 - n);
        row.push(format_g(purity, DIGITS));
        let body = w.body().re;
        row.push(
            if body > 0.0 {
                "+"
            } else if body < 0.0 {
                "-"
            } else {
                "0"
            }
            .into(),
        );
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()
}

fn check_orders(orders: &[f64]) -> Result<(), String> {
    match orders.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
        Some(r) => Err(format!("entropy order r = {r} must be positive and finite")),
        None => Ok(()),
    }
}

pub fn sweep(args: &SweepArgs) -> i32 {
    let grid = match sweep_grid(&args.from.0, &args.to.0, &args.step.0).and_then(|g| {
        check_orders(&args.orders)?;
        Ok(g)
    }) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let result = open_output(args.out.as_deref()).and_then(|mut w| write_sweep(&grid, &args.orders, &mut w));
    finish(result)
}

pub fn write_fermi_dirac(ratios: &[f64], epsilon: f64, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "eps_over_T,nbar,nu,branch")?;
    for &x in ratios {
        let p = ThermalParams::from_ratio(x, epsilon).map_err(io::Error::other)?;
        let branch = match p.branch() {
            TemperatureBranch::Positive => "positive",
            TemperatureBranch::Negative => "negative",
            TemperatureBranch::Infinite => "infinite",
        };
        writeln!(out, "{},{},{},{branch}", format_g(x, DIGITS), format_g(p.nbar, DIGITS), format_g(p.nu, DIGITS))?;
    }
    out.flush()
}

pub fn fermi_dirac_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>, String> {
    if !(min.is_finite() && max.is_finite() && min < max) {
        return Err(format!("ratio range needs MIN < MAX, got {min},{max}"));
    }
    if points < 2 {
        return Err(format!("need at least 2 points, got {points}"));
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points).map(|k| if k == points - 1 { max } else { min + step * k as f64 }).collect())
}

pub fn fermi_dirac(args: &FermiDiracArgs) -> i32 {
    let RatioRange { min, max } = args.ratio_range;
    let grid = match fermi_dirac_grid(min, max, args.points) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let result = open_output(args.out.as_deref()).and_then(|mut w| write_fermi_dirac(&grid, args.epsilon, &mut w));
    finish(result)
}

pub fn eval(args: &EvalArgs) -> i32 {
    match eval_str(&args.expression) {
        Ok(s) => {
            println!("{s}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(s: &str) -> BigRational {
        s.parse::<Ratio>().unwrap().0
    }

    #[test]
    fn ratios() {
        assert_eq!(ratio("1/512"), BigRational::new(1.into(), 512.into()));
        assert_eq!(ratio("0.25"), BigRational::new(1.into(), 4.into()));
        assert_eq!(ratio("-3"), BigRational::from_integer((-3).into()));
        assert!("a".parse::<Ratio>().is_err());
        assert!("2i".parse::<Ratio>().is_err());
        assert!("1+1".parse::<Ratio>().is_err());
    }

    #[test]
    fn default_sweep_grid() {
        let g = sweep_grid(&ratio("0"), &ratio("1"), &ratio("1/512")).unwrap();
        assert_eq!(g.len(), 513);
        assert_eq!(g[384], 0.75);
        assert!(sweep_grid(&ratio("0.5"), &ratio("0.5"), &ratio("0.1")).is_err());
        assert!(sweep_grid(&ratio("0"), &ratio("1.5"), &ratio("0.1")).is_err());
        assert!(sweep_grid(&ratio("0"), &ratio("1"), &ratio("0")).is_err());
    }

    #[test]
    fn sweep_rows() {
        let mut buf = Vec::new();
        write_sweep(&[0.0, 0.5, 0.75], &[1.0, 2.0], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "nbar,det_gamma_W,det_gamma_Q,S_W_r1,S_W_r2,S_Q_r1,S_Q_r2,purity,wigner_sign");
        assert_eq!(lines[1], "0,-0.25,-1,-0.306852819440055,0,-1,-0.693147180559945,1,+");
        let mid: Vec<&str> = lines[2].split(',').collect();
        assert_eq!((mid[3], mid[4], mid[8]), ("inf", "inf", "0"));
        let cross: Vec<&str> = lines[3].split(',').collect();
        assert_eq!(cross[3], cross[5]);
        assert_eq!(cross[4], cross[6]);
    }

    #[test]
    fn fermi_dirac_table() {
        let grid = fermi_dirac_grid(-2.0, 2.0, 5).unwrap();
        let mut buf = Vec::new();
        write_fermi_dirac(&grid, 1.0, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\n0,0.5,0,infinite\n"));
        assert!(text.contains("\n-2,0.880797077977882,2,negative\n"));
        assert!(fermi_dirac_grid(1.0, -1.0, 5).is_err());
    }

    #[test]
    fn cli_parses() {
        let cli = Cli::try_parse_from(["fermiphase", "verify", "--mode", "float", "--orders", "0.5,2"]).unwrap();
        let Command::Verify(v) = cli.command else { panic!() };
        assert_eq!(v.mode, ModeArg::Float);
        assert_eq!(v.orders, [0.5, 2.0]);
        assert_eq!(v.grid, 513);
        let cli = Cli::try_parse_from(["fermiphase", "fermi-dirac", "--ratio-range", "-5,5"]).unwrap();
        let Command::FermiDirac(f) = cli.command else { panic!() };
        assert_eq!(f.ratio_range, RatioRange { min: -5.0, max: 5.0 });
        assert!(Cli::try_parse_from(["fermiphase", "sweep", "--step", "x"]).is_err());
    }
}
