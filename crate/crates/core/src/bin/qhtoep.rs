//! Command-line front end for the Bergman-space Toeplitz toolkit.
//!
//! Every subcommand is a thin wrapper over the library: plain-text input,
//! deterministic plain-text output (fractions for exact values, shortest
//! round-trip decimals for floats), suitable for golden-file diffing.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use num_rational::Rational64;

use qhtoep::commutant::{self, parse_problem};
use qhtoep::mellin::{mellin_eval, mellin_quadrature, MellinPoint};
use qhtoep::operator::{apply, assemble_matrix, commutator, PolarSymbol};
use qhtoep::radial::{l1_membership, RadialFunction};
use qhtoep::verify::{all_reports, constants_csv, cross_check_constants, Verdict};
use qhtoep::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qhtoep",
    version,
    about = "Toeplitz operators with quasihomogeneous symbols on the Bergman space"
)]
struct Cli {
    /// Engine thread count; accepted for compatibility, the output bytes do
    /// not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mellin transform of a radial function at a point
    Mellin {
        /// Inline terms `KIND coeff a b` separated by `;`, or `@file`
        #[arg(long)]
        symbol: String,
        /// Argument: integer, `p/q`, decimal, or `re+imi`
        #[arg(long)]
        z: String,
        /// Evaluate by the adaptive-quadrature oracle instead
        #[arg(long)]
        quad: bool,
    },
    /// Image of the basis monomial z^n under T_f
    Apply {
        /// Polar symbol (`degree k:` headers) or bare radial terms; `@file` to load
        #[arg(long)]
        symbol: String,
        /// Quasihomogeneous degree when the symbol is bare radial terms
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        n: i64,
    },
    /// CSV matrix of T_f on z^0..z^nmax
    Matrix {
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        nmax: i64,
    },
    /// CSV matrix of the commutator [T_f, T_g]
    Commutator {
        /// Polar symbol file for f
        #[arg(long)]
        f: PathBuf,
        /// Polar symbol file for g
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        nmax: i64,
    },
    /// Null space of a commutant problem file
    Solve {
        #[arg(long)]
        problem: PathBuf,
        /// Directory for the kernel basis symbol files
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Replay the proof cases; exits 1 only on an inconclusive verdict
    Verify {
        /// Print the constants cross-check table as CSV instead
        #[arg(long)]
        table: bool,
        /// Only cases whose id contains this substring
        #[arg(long)]
        case: Option<String>,
    },
    /// Membership of a radial function in L¹([0,1], r dr)
    L1check {
        #[arg(long)]
        symbol: String,
    },
}

/// Inline symbols use `;` as a line separator; `@path` loads a file.
fn read_symbol_text(arg: &str) -> Result<String> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read `{path}`: {e}")))
    } else {
        Ok(arg.replace(';', "\n"))
    }
}

fn parse_radial(arg: &str) -> Result<RadialFunction> {
    read_symbol_text(arg)?.parse()
}

/// Polar symbol if the text has `degree k:` headers, otherwise bare radial
/// terms promoted to the single degree `k`.
fn parse_polar(arg: &str, k: i64) -> Result<PolarSymbol> {
    let text = read_symbol_text(arg)?;
    if text.lines().any(|l| l.trim_start().starts_with("degree ")) {
        text.parse()
    } else {
        Ok(PolarSymbol::from_parts(vec![(k, text.parse()?)]))
    }
}

fn parse_point(arg: &str) -> Result<MellinPoint> {
    if let Ok(n) = arg.parse::<i64>() {
        return Ok(MellinPoint::from_int(n));
    }
    if arg.contains('/') {
        let q: Rational64 = arg
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational argument `{arg}`")))?;
        return Ok(MellinPoint::from_rational(q));
    }
    if let Some(rest) = arg.strip_suffix('i') {
        // `re+imi` / `re-imi`: split at the sign of the imaginary part.
        if let Some(pos) = rest[1..].rfind(['+', '-']).map(|p| p + 1) {
            let (re, im) = (&rest[..pos], &rest[pos..]);
            let re: f64 = re
                .parse()
                .map_err(|_| Error::Parse(format!("bad complex argument `{arg}`")))?;
            let im: f64 = im
                .parse()
                .map_err(|_| Error::Parse(format!("bad complex argument `{arg}`")))?;
            return Ok(MellinPoint::from_c64(Complex64::new(re, im)));
        }
    }
    let x: f64 = arg
        .parse()
        .map_err(|_| Error::Parse(format!("bad transform argument `{arg}`")))?;
    Ok(MellinPoint::from_c64(Complex64::new(x, 0.0)))
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Mellin { symbol, z, quad } => {
            let f = parse_radial(&symbol)?;
            let z = parse_point(&z)?;
            let v = if quad {
                mellin_quadrature(&|r| f.eval(r), &z, 1e-12)?
            } else {
                mellin_eval(&f, &z)?
            };
            println!("{}", v.render());
        }
        Cmd::Apply { symbol, k, n } => {
            let sym = parse_polar(&symbol, k)?;
            for (d, w) in apply(&sym, n)? {
                println!("degree={d} value={w}");
            }
        }
        Cmd::Matrix { symbol, k, nmax } => {
            let sym = parse_polar(&symbol, k)?;
            print!("{}", assemble_matrix(&sym, nmax)?.to_csv());
        }
        Cmd::Commutator { f, g, nmax } => {
            let f = parse_polar(&format!("@{}", f.display()), 0)?;
            let g = parse_polar(&format!("@{}", g.display()), 0)?;
            print!("{}", commutator(&f, &g, nmax)?.to_csv());
        }
        Cmd::Solve { problem, out } => {
            let text = std::fs::read_to_string(&problem)
                .map_err(|e| Error::Parse(format!("cannot read `{}`: {e}", problem.display())))?;
            let p = parse_problem(&text)?;
            let (_, ns) = commutant::solve(&p)?;
            println!("{ns}");
            if let Some(w) = &ns.warning {
                println!("warning={w}");
            }
            for (i, v) in ns.basis.iter().enumerate() {
                let path = out.join(format!("kernel_{i}.sym"));
                std::fs::write(&path, format!("{}", p.ansatz.reconstruct(v)))
                    .map_err(|e| Error::Parse(format!("cannot write `{}`: {e}", path.display())))?;
                println!("wrote {}", path.display());
            }
        }
        Cmd::Verify { table, case } => {
            if table {
                print!("{}", constants_csv(&cross_check_constants()?));
                return Ok(0);
            }
            let mut inconclusive = false;
            for rep in all_reports()? {
                if let Some(filter) = &case {
                    if !rep.id.contains(filter.as_str()) {
                        continue;
                    }
                }
                print!("{}", rep.render());
                inconclusive |= matches!(rep.verdict, Verdict::Inconclusive(_));
            }
            if inconclusive {
                return Ok(1);
            }
        }
        Cmd::L1check { symbol } => {
            let f = parse_radial(&symbol)?;
            let (ok, norm) = l1_membership(&f);
            match norm {
                Some(v) => println!("l1={ok} norm_estimate={v}"),
                None => println!("l1={ok} norm_estimate=na"),
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
