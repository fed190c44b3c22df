//! Command-line surface: every verification as a reproducible run with
//! machine-readable output. Exit codes: 0 success, 1 verification failure,
//! 2 domain or usage error.

use clap::{Parser, Subcommand, ValueEnum};
use dirichlet_core::characters::{enumerate_characters, Character};
use dirichlet_core::index::factorize_modulus;
use dirichlet_core::lseries::{
    default_rho_grid, dirichlet_series, euler_product, l_one_closed_form_prime, l_one_integral,
    principal_pole_scan, LValue,
};
use dirichlet_core::verify::{self, SuiteCase};
use dirichlet_core::{ap_identity_check, census, quadratic_report, Error};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dirichlet",
    version,
    about = "Dirichlet characters, L-series evaluation, and prime-progression verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Series,
    Euler,
    Integral,
    ClosedForm,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Orthogonality,
    Pole,
    Quadratic,
    Identity,
    Nonvanishing,
}

#[derive(Subcommand)]
enum Command {
    /// Table of the K characters mod k: labels, classes, conjugates
    Chars {
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate L(s, χ) for a labelled character
    Lvalue {
        /// character label, e.g. "chi[k=5;c=1]"
        chi: String,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, value_enum, default_value = "series")]
        method: MethodArg,
        /// series cutoff
        #[arg(long = "N", default_value_t = 1_000_000)]
        n_cutoff: u64,
        /// Euler-product prime cutoff
        #[arg(long = "Q", default_value_t = 100_000)]
        q_cutoff: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite, one JSON line per case
    Verify {
        suite: Suite,
        /// upper bound of the suite's k (or p) range
        #[arg(long)]
        k: Option<u64>,
        /// rho values for the identity suite / pole grid
        #[arg(long, value_delimiter = ',')]
        rho: Vec<f64>,
        #[arg(long = "N", default_value_t = 1_000_000)]
        n_cutoff: u64,
        #[arg(long = "Q", default_value_t = 1_000_000)]
        q_cutoff: u64,
        /// tolerance override (suite-specific default otherwise)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Prime census per coprime residue class, as CSV
    Census {
        #[arg(long = "N")]
        n_max: u64,
        #[arg(long)]
        k: u64,
        /// output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residue sums, Gauss sum, L(1), and Pell data for an odd prime k
    Quad {
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check the prime-sum identity for the class m mod k at s = 1+rho
    Identity {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 0.5)]
        rho: f64,
        #[arg(long = "N", default_value_t = 1_000_000)]
        n_cutoff: u64,
        #[arg(long = "Q", default_value_t = 1_000_000)]
        q_cutoff: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Scan the pole of the principal series mod k
    Pole {
        #[arg(long)]
        k: u64,
        /// rho grid (comma-separated; geometric 0.1..0.001 when omitted)
        #[arg(long, value_delimiter = ',')]
        rho: Vec<f64>,
        /// residue tolerance for the pass flag
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(serde::Serialize)]
struct CharRow {
    label: String,
    class: String,
    conjugate: String,
}

#[derive(serde::Serialize)]
struct LValueRow {
    chi: String,
    #[serde(flatten)]
    lvalue: LValue,
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(value).expect("serializable")),
        Format::Text => println!("{text}"),
    }
}

fn cmd_chars(k: u64, format: Format) -> Result<ExitCode, Error> {
    let f = factorize_modulus(k)?;
    for chi in enumerate_characters(&f) {
        let row = CharRow {
            label: chi.label(),
            class: chi.classify().to_string(),
            conjugate: chi.conjugate().label(),
        };
        emit(
            format,
            &row,
            format!(
                "{:<28} {:<18} conj: {}",
                row.label, row.class, row.conjugate
            ),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn lvalue_row(chi: &Character, lvalue: LValue) -> LValueRow {
    LValueRow {
        chi: chi.label(),
        lvalue,
    }
}

fn cmd_lvalue(
    label: &str,
    s: f64,
    method: MethodArg,
    n_cutoff: u64,
    q_cutoff: u64,
    format: Format,
) -> Result<ExitCode, Error> {
    let chi = Character::from_label(label)?;
    let mut rows = Vec::new();
    match method {
        MethodArg::Series => rows.push(lvalue_row(&chi, dirichlet_series(&chi, s, n_cutoff)?)),
        MethodArg::Euler => rows.push(lvalue_row(&chi, euler_product(&chi, s, q_cutoff)?)),
        MethodArg::Integral => {
            if s != 1.0 {
                return Err(Error::Domain(format!(
                    "the integral method evaluates at s = 1, not s = {s}"
                )));
            }
            rows.push(lvalue_row(&chi, l_one_integral(&chi)?));
        }
        MethodArg::ClosedForm => {
            if s != 1.0 {
                return Err(Error::Domain(format!(
                    "the closed form evaluates at s = 1, not s = {s}"
                )));
            }
            rows.push(lvalue_row(&chi, l_one_closed_form_prime(&chi)?));
        }
        MethodArg::All => {
            // every method whose domain covers this (χ, s)
            if let Ok(lv) = dirichlet_series(&chi, s, n_cutoff) {
                rows.push(lvalue_row(&chi, lv));
            }
            if let Ok(lv) = euler_product(&chi, s, q_cutoff) {
                rows.push(lvalue_row(&chi, lv));
            }
            if s == 1.0 {
                if let Ok(lv) = l_one_integral(&chi) {
                    rows.push(lvalue_row(&chi, lv));
                }
                if let Ok(lv) = l_one_closed_form_prime(&chi) {
                    rows.push(lvalue_row(&chi, lv));
                }
            }
            if rows.is_empty() {
                return Err(Error::Domain(format!(
                    "no evaluation method applies to {label} at s = {s}"
                )));
            }
        }
    }
    for row in rows {
        let text = format!(
            "{} s={} {}: {:+.10} {:+.10}i  (± {:.3e})",
            row.chi,
            row.lvalue.s,
            row.lvalue.method,
            row.lvalue.value.re,
            row.lvalue.value.im,
            row.lvalue.error_bound
        );
        emit(format, &row, text);
    }
    Ok(ExitCode::SUCCESS)
}

fn run_suite(
    suite: Suite,
    k: Option<u64>,
    rho: &[f64],
    n_cutoff: u64,
    q_cutoff: u64,
    tol: Option<f64>,
) -> Result<Vec<SuiteCase>, Error> {
    match suite {
        Suite::Orthogonality => verify::verify_orthogonality(k.unwrap_or(60), tol.unwrap_or(1e-9)),
        Suite::Pole => {
            let ks: Vec<u64> = verify::POLE_K_SET
                .iter()
                .copied()
                .filter(|&x| x <= k.unwrap_or(u64::MAX))
                .collect();
            let grid = if rho.is_empty() {
                default_rho_grid()
            } else {
                rho.to_vec()
            };
            verify::verify_pole(&ks, &grid, tol.unwrap_or(1e-2))
        }
        Suite::Quadratic => verify::verify_quadratic(k.unwrap_or(1000), tol.unwrap_or(1e-6)),
        Suite::Identity => {
            let ks: Vec<u64> = verify::IDENTITY_K_SET
                .iter()
                .copied()
                .filter(|&x| x <= k.unwrap_or(u64::MAX))
                .collect();
            let rhos: Vec<f64> = if rho.is_empty() {
                vec![0.5, 0.25]
            } else {
                rho.to_vec()
            };
            verify::verify_identity(&ks, &rhos, n_cutoff, q_cutoff)
        }
        Suite::Nonvanishing => verify::verify_nonvanishing(k.unwrap_or(100), tol.unwrap_or(1e-6)),
    }
}

fn cmd_verify(
    suite: Suite,
    k: Option<u64>,
    rho: &[f64],
    n_cutoff: u64,
    q_cutoff: u64,
    tol: Option<f64>,
) -> Result<ExitCode, Error> {
    let cases = run_suite(suite, k, rho, n_cutoff, q_cutoff, tol)?;
    for case in &cases {
        println!("{}", serde_json::to_string(case).expect("serializable"));
    }
    match cases.iter().find(|c| !c.pass) {
        Some(first) => {
            eprintln!("verification failed at {}: {}", first.id, first.detail);
            Ok(ExitCode::from(1))
        }
        None => Ok(ExitCode::SUCCESS),
    }
}

fn cmd_census(n_max: u64, k: u64, out: Option<PathBuf>) -> Result<ExitCode, Error> {
    let report = census(n_max, k)?;
    let csv = report.to_csv();
    match out {
        Some(path) => std::fs::write(&path, csv)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_quad(p: u64, format: Format) -> Result<ExitCode, Error> {
    let report = quadratic_report(p)?;
    let pell = match (&report.pell, report.pell_skipped) {
        (Some(sol), _) => format!("g={} h={} k={}", sol.g, sol.h, sol.k_int),
        (None, true) => "skipped (precision failover)".to_string(),
        (None, false) => "n/a (p ≡ 3 mod 4)".to_string(),
    };
    let text = format!(
        "p={} ({} mod 4)  Σa={} Σb={}  f={:+.7}{:+.7}i  L(1)={:.7}  pell: {}",
        report.p,
        report.class_mod4,
        report.sum_a,
        report.sum_b,
        report.gauss_sum.re,
        report.gauss_sum.im,
        report.l_one,
        pell
    );
    emit(format, &report, text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_identity(
    k: u64,
    m: u64,
    rho: f64,
    n_cutoff: u64,
    q_cutoff: u64,
    format: Format,
) -> Result<ExitCode, Error> {
    let check = ap_identity_check(k, m, rho, n_cutoff, q_cutoff)?;
    let pass = check.passes();
    let text = format!(
        "k={k} m={m} rho={rho}: lhs {:.12} rhs {:.12}{:+.3e}i  |Δ|={:.3e} bound={:.3e}  {}",
        check.lhs,
        check.rhs.re,
        check.rhs.im,
        check.discrepancy,
        check.bound,
        if pass { "PASS" } else { "FAIL" }
    );
    emit(format, &check, text);
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_pole(k: u64, rho: &[f64], tol: f64, format: Format) -> Result<ExitCode, Error> {
    let f = factorize_modulus(k)?;
    let grid = if rho.is_empty() {
        default_rho_grid()
    } else {
        rho.to_vec()
    };
    let report = principal_pole_scan(&f, &grid)?;
    let err = (report.extrapolated_residue - report.expected).abs();
    let pass = err < tol;
    let text = format!(
        "k={k}: extrapolated residue {:.6}, K/k = {:.6}, |Δ| = {:.2e}  {}",
        report.extrapolated_residue,
        report.expected,
        err,
        if pass { "PASS" } else { "FAIL" }
    );
    emit(format, &report, text);
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Chars { k, format } => cmd_chars(k, format),
        Command::Lvalue {
            chi,
            s,
            method,
            n_cutoff,
            q_cutoff,
            format,
        } => cmd_lvalue(&chi, s, method, n_cutoff, q_cutoff, format),
        Command::Verify {
            suite,
            k,
            rho,
            n_cutoff,
            q_cutoff,
            tol,
        } => cmd_verify(suite, k, &rho, n_cutoff, q_cutoff, tol),
        Command::Census { n_max, k, out } => cmd_census(n_max, k, out),
        Command::Quad { k, format } => cmd_quad(k, format),
        Command::Identity {
            k,
            m,
            rho,
            n_cutoff,
            q_cutoff,
            format,
        } => cmd_identity(k, m, rho, n_cutoff, q_cutoff, format),
        Command::Pole {
            k,
            rho,
            tol,
            format,
        } => cmd_pole(k, &rho, tol, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
