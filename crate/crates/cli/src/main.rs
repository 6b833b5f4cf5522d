use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use torsor_cli::commands::{
    cmd_cohomology, cmd_counterexample, cmd_saturation, parse_coeff_list, parse_curve_line,
};
use torsor_cli::report::VerificationReport;
use torsor_cli::selftest::{run_selftest, SelftestConfig};
use torsor_core::{EtaleCoverSpec, HasseFormula, Polynomial, TwistMap};

/// Exact verification of alpha_p-torsor descent on A^1 x E: cohomology of
/// Weierstrass curves, the spread-out Frobenius torsor, base-change and
/// Kunneth verdicts, and Artin-Schreier saturation.
#[derive(Parser)]
#[command(name = "torsor-verify", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full counterexample pipeline on a characteristic-2 curve and
    /// a family polynomial f(x).
    Counterexample {
        /// Curve as `p a1 a2 a3 a4 a6`.
        #[arg(long, conflicts_with = "fixture")]
        curve: Option<String>,
        /// Coefficients of f as `c0,c1,...`.
        #[arg(long, conflicts_with = "fixture", allow_hyphen_values = true)]
        poly: Option<String>,
        /// JSON family spec: {"curve": "p a1 a2 a3 a4 a6", "poly": [c0, ...]}.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Report discriminant, Frobenius scalar on H^1(O), and dim H^1_fl(alpha_p).
    Cohomology {
        /// Curve as `p a1 a2 a3 a4 a6`.
        #[arg(long, conflicts_with = "fixture")]
        curve: Option<String>,
        /// Text fixture: one curve line per row.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Saturation (connectedness) of an Artin-Schreier cover T^p - T = f(x),
    /// or of an abstract cover with a known component count.
    Saturation {
        /// Characteristic for the Artin-Schreier cover.
        #[arg(long, requires = "poly", conflicts_with_all = ["components", "fixture"])]
        prime: Option<u32>,
        /// Coefficients of f as `c0,c1,...`.
        #[arg(long, requires = "prime", allow_hyphen_values = true)]
        poly: Option<String>,
        /// Component count of an abstract cover.
        #[arg(long, conflicts_with_all = ["prime", "poly", "fixture"])]
        components: Option<usize>,
        /// JSON cover spec: {"prime": p, "poly": [c0, ...]} or {"components": n}.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Run every module's invariant suite.
    Selftest {
        /// Inject a known-wrong variant; the self-test must fail under it.
        #[arg(long, value_enum)]
        probe: Option<Probe>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Probe {
    /// Replace the action twist (x, y) -> (x, xy) by the plain projection.
    UntwistedLambda,
    /// Negate the closed-form Hasse scalar.
    NegatedHasse,
}

#[derive(Deserialize)]
struct FamilyFixture {
    curve: String,
    poly: Vec<i64>,
}

#[derive(Deserialize)]
struct CoverFixture {
    prime: Option<u32>,
    poly: Option<Vec<i64>>,
    components: Option<usize>,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(report: VerificationReport, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Counterexample {
            curve,
            poly,
            fixture,
        } => {
            let (curve_line, coeffs, label) = match (curve, poly, fixture) {
                (Some(c), Some(f), None) => {
                    let label = format!("curve {c}; f = [{f}]");
                    (c, f, label)
                }
                (None, None, Some(path)) => {
                    let raw = match fs::read_to_string(&path) {
                        Ok(r) => r,
                        Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
                    };
                    let spec: FamilyFixture = match serde_json::from_str(&raw) {
                        Ok(s) => s,
                        Err(e) => return usage(format!("bad family fixture: {e}")),
                    };
                    let poly = spec
                        .poly
                        .iter()
                        .map(i64::to_string)
                        .collect::<Vec<_>>()
                        .join(",");
                    let label = format!("curve {}; f = [{}]", spec.curve, poly);
                    (spec.curve, poly, label)
                }
                _ => return usage("provide either --curve with --poly, or --fixture"),
            };
            let curve = match parse_curve_line(&curve_line) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let coeffs = match parse_coeff_list(&coeffs) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            match cmd_counterexample(&curve, &coeffs, label) {
                Ok(report) => emit(report, cli.format),
                Err(e) => usage(e),
            }
        }
        Command::Cohomology { curve, fixture } => {
            let (lines, label) = match (curve, fixture) {
                (Some(c), None) => (vec![c.clone()], format!("curve {c}")),
                (None, Some(path)) => {
                    let raw = match fs::read_to_string(&path) {
                        Ok(r) => r,
                        Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
                    };
                    let lines: Vec<String> = raw
                        .lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .map(str::to_string)
                        .collect();
                    (lines, format!("fixture {}", path.display()))
                }
                _ => return usage("provide either --curve or --fixture"),
            };
            if lines.is_empty() {
                return usage("fixture file contains no curves");
            }
            let mut curves = Vec::new();
            for line in &lines {
                match parse_curve_line(line) {
                    Ok(c) => curves.push(c),
                    Err(e) => return usage(e),
                }
            }
            emit(cmd_cohomology(&curves, label), cli.format)
        }
        Command::Saturation {
            prime,
            poly,
            components,
            fixture,
        } => {
            let parsed: (Option<(u32, Vec<i64>)>, Option<usize>) =
                match (prime, poly, components, fixture) {
                    (Some(p), Some(f), None, None) => match parse_coeff_list(&f) {
                        Ok(c) => (Some((p, c)), None),
                        Err(e) => return usage(e),
                    },
                    (None, None, Some(n), None) => (None, Some(n)),
                    (None, None, None, Some(path)) => {
                        let raw = match fs::read_to_string(&path) {
                            Ok(r) => r,
                            Err(e) => {
                                return usage(format!("cannot read {}: {e}", path.display()))
                            }
                        };
                        let spec: CoverFixture = match serde_json::from_str(&raw) {
                            Ok(s) => s,
                            Err(e) => return usage(format!("bad cover fixture: {e}")),
                        };
                        match (spec.prime, spec.poly, spec.components) {
                            (Some(p), Some(f), None) => (Some((p, f)), None),
                            (None, None, Some(n)) => (None, Some(n)),
                            _ => return usage("cover fixture needs prime+poly or components"),
                        }
                    }
                    _ => {
                        return usage(
                            "provide --prime with --poly, or --components, or --fixture",
                        )
                    }
                };
            let (spec, label) = match parsed {
                (Some((p, coeffs)), None) => {
                    let f = match Polynomial::from_univariate_coeffs(p, "x", &coeffs) {
                        Ok(f) => f,
                        Err(e) => return usage(e),
                    };
                    let label = format!("artin-schreier p={p}, f = {f}");
                    (EtaleCoverSpec::ArtinSchreier { f }, label)
                }
                (None, Some(n)) => (
                    EtaleCoverSpec::Abstract { components: n },
                    format!("abstract cover with {n} components"),
                ),
                _ => unreachable!(),
            };
            match cmd_saturation(&spec, label) {
                Ok(report) => emit(report, cli.format),
                Err(e) => usage(e),
            }
        }
        Command::Selftest { probe } => {
            let mut config = SelftestConfig::default();
            match probe {
                Some(Probe::UntwistedLambda) => config.twist = TwistMap::UntwistedProjection,
                Some(Probe::NegatedHasse) => config.hasse = HasseFormula::Negated,
                None => {}
            }
            emit(run_selftest(config), cli.format)
        }
    }
}
