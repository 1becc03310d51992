use std::path::PathBuf;
use std::process::ExitCode;

use adjtor_core::charvar::KnotPreset;
use adjtor_core::num_complex::Complex;
use adjtor_core::residue::Verdict;
use adjtor_core::verifier::{khovanskii_certify, selftest, verify_vanishing, KhovanskiiReport, VerificationReport, VerifyOptions};
use adjtor_core::Precision;
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "adjtor", version, about = "Adjoint torsion vanishing checks for two-bridge knot exteriors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the trace fiber and check that the inverse torsions sum to zero
    Verify(VerifyArgs),
    /// Evaluate the twisted index at the given genera
    Index {
        #[command(flatten)]
        common: VerifyArgs,
        /// Genus, or a comma-separated list of genera
        #[arg(long, value_delimiter = ',', required = true)]
        genus: Vec<u32>,
    },
    /// Check the residue-theorem hypotheses for (A, m^p l^q - x) and evaluate the residue sum
    CertifyGrt {
        #[arg(long, default_value = "4_1")]
        knot: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_slope)]
        slope: (i64, i64),
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        x: Complex<f64>,
        #[arg(long, default_value_t = 53)]
        precision: u32,
        /// Write the certification report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the longitude and slope torsions at every fiber point
    Torsion {
        #[arg(long)]
        knot: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_slope)]
        slope: (i64, i64),
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex<f64>,
        #[arg(long, default_value_t = 53)]
        precision: u32,
    },
    /// Run the built-in consistency checks
    Selftest,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Built-in preset name (4_1, 5_2, 7_4) or path to a preset TOML file
    #[arg(long)]
    knot: String,
    /// Slope as P,Q
    #[arg(long, allow_hyphen_values = true, value_parser = parse_slope)]
    slope: (i64, i64),
    /// Trace value, e.g. 1.5+0.5i
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    z: Complex<f64>,
    /// Root of x + 1/x = z to use (default: the one with |x| > 1)
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    x: Option<Complex<f64>>,
    /// Working precision in bits (53 or 106)
    #[arg(long, default_value_t = 53)]
    precision: u32,
    /// Threshold for the normalized vanishing metric
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Write the report as JSON
    #[arg(long)]
    json: Option<PathBuf>,
    /// Record wall-clock time in the report
    #[arg(long)]
    timing: bool,
}

/// `A+Bi`, `A-Bi`, `A`, or `Bi`, with decimal or exponent notation and no spaces.
fn parse_complex(s: &str) -> Result<Complex<f64>, String> {
    let err = || format!("invalid complex literal {s:?}, expected A+Bi");
    let s = s.trim();
    if let Some(body) = s.strip_suffix('i') {
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(k, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[k - 1], b'e' | b'E'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let re: f64 = re.parse().map_err(|_| err())?;
        let im: f64 = im.trim_start_matches('+').parse().map_err(|_| err())?;
        Ok(Complex::new(re, im))
    } else {
        s.parse::<f64>().map(|re| Complex::new(re, 0.0)).map_err(|_| err())
    }
}

fn parse_slope(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("invalid slope {s:?}, expected P,Q"))?;
    let p = p.trim().parse().map_err(|_| format!("invalid integer {p:?}"))?;
    let q = q.trim().parse().map_err(|_| format!("invalid integer {q:?}"))?;
    Ok((p, q))
}

fn fmt_c(z: Complex<f64>) -> String {
    format!("{:.10}{:+.10}i", z.re, z.im)
}

fn write_json(path: &PathBuf, json: &str) -> Result<()> {
    std::fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))
}

fn load(knot: &str) -> Result<KnotPreset> {
    KnotPreset::load(knot).with_context(|| format!("loading preset {knot:?}"))
}

fn run_verify(args: &VerifyArgs, genera: Vec<u32>) -> Result<VerificationReport> {
    let preset = load(&args.knot)?;
    let opts = VerifyOptions {
        precision: Precision::new(args.precision)?,
        tol: args.tol,
        x: args.x,
        genera,
        khovanskii: preset.name == "4_1",
        timing: args.timing,
        ..Default::default()
    };
    let (p, q) = args.slope;
    let report = verify_vanishing(&preset, p, q, args.z, &opts)?;
    if let Some(path) = &args.json {
        write_json(path, &report.to_json())?;
    }
    Ok(report)
}

fn print_summary(r: &VerificationReport) {
    println!("{} slope ({}, {})  z = {}  x = {}", r.preset, r.slope[0], r.slope[1], fmt_c(r.z.0), fmt_c(r.x.0));
    for c in &r.components {
        println!(
            "component {}: {} points, sign {:+}, sum 1/Tor = {}",
            c.index,
            c.points.len(),
            c.sign,
            fmt_c(c.inverse_sum.0)
        );
    }
    println!("total = {}", fmt_c(r.total_sum.0));
    println!("metric = {:.3e}", r.vanishing_metric);
    if let Some(k) = &r.khovanskii {
        println!("residue certification: {}", verdict_word(k.verdict));
    }
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    println!("{}", r.verdict);
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Indeterminate => "INDETERMINATE",
    }
}

fn print_certification(k: &KhovanskiiReport) {
    println!("slope ({}, {})  x = {}", k.slope[0], k.slope[1], fmt_c(k.x.0));
    println!("non-degenerate: {} ({} faces)", verdict_word(k.nondegenerate.verdict), k.nondegenerate.faces.len());
    println!("simple zeros: {} (min |Jac|/scale {:.3e})", k.simplicity.simple, k.simplicity.min_normalized_jacobian);
    match &k.containment.witness {
        None => println!("strict containment: true"),
        Some(w) => println!("strict containment: false (normal {w:?})"),
    }
    if let Some(e) = k.closed_form_jacobian_error {
        println!("closed-form Jacobian deviation: {e:.3e}");
    }
    println!("zeros: {}", k.zero_count);
    println!("residue sum = {}  metric = {:.3e}", fmt_c(k.residue_sum.0), k.residue_metric);
    if let Some(e) = k.cross_check_error {
        println!("torsion/residue cross-check deviation: {e:.3e}");
    }
    println!("{}", verdict_word(k.verdict));
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => {
            let r = run_verify(&args, Vec::new())?;
            print_summary(&r);
            Ok(status(r.passed()))
        }
        Command::Index { common, genus } => {
            let r = run_verify(&common, genus)?;
            for v in r.index_values.as_deref().unwrap_or_default() {
                println!("g = {}: {}", v.genus, fmt_c(v.value.0));
            }
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CertifyGrt { knot, slope, x, precision, json } => {
            let preset = load(&knot)?;
            let k = khovanskii_certify(&preset, slope.0, slope.1, x, Precision::new(precision)?)?;
            if let Some(path) = &json {
                write_json(path, &k.to_json())?;
            }
            print_certification(&k);
            Ok(status(k.verdict == Verdict::Pass))
        }
        Command::Torsion { knot, slope, z, precision } => {
            let preset = load(&knot)?;
            let opts = VerifyOptions { precision: Precision::new(precision)?, ..Default::default() };
            let r = verify_vanishing(&preset, slope.0, slope.1, z, &opts)?;
            for c in &r.components {
                println!("component {}", c.index);
                for (i, pt) in c.points.iter().enumerate() {
                    println!(
                        "{:3}  m = {}  l = {}  Tor(lambda) = {}  Tor(gamma) = {}",
                        i + 1,
                        fmt_c(pt.m.0),
                        fmt_c(pt.l.0),
                        fmt_c(pt.torsion_lambda.0),
                        fmt_c(pt.torsion.0)
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let cases = selftest();
            for c in &cases {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed = cases.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                bail!("{failed} of {} checks failed", cases.len());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5+0.5i").unwrap(), Complex::new(1.5, 0.5));
        assert_eq!(parse_complex("-2-3i").unwrap(), Complex::new(-2.0, -3.0));
        assert_eq!(parse_complex("1e-3-2.5e+1i").unwrap(), Complex::new(1e-3, -25.0));
        assert_eq!(parse_complex("2").unwrap(), Complex::new(2.0, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex::new(0.0, -1.0));
        assert_eq!(parse_complex("3i").unwrap(), Complex::new(0.0, 3.0));
        assert!(parse_complex("1+2j").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn slopes() {
        assert_eq!(parse_slope("3,1").unwrap(), (3, 1));
        assert_eq!(parse_slope("-2,5").unwrap(), (-2, 5));
        assert!(parse_slope("3").is_err());
    }
}
