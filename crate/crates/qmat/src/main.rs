//! Command-line front end for the reflection-equation computer algebra.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! or input errors. All output for fixed arguments is deterministic.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, ensure, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmat_core::central::ck;
use qmat_core::minors::{dl_coinv, dlmin, ptmin};
use qmat_core::ncpoly::{parse, Algebra};
use qmat_core::pbw::PbwEngine;
use qmat_core::qcomb::{gamma, wt, Bij};
use qmat_core::rmatrix::{build_flip, build_r, build_r21, build_rtilde, unpack, TensorOp};
use qmat_core::twist::minor_preimage;

use qmat::cache;
use qmat::fixtures;
use qmat::format::{ratfunc_latex, ratfunc_to_json, render_poly, OutFormat};
use qmat::verify;

#[derive(Parser)]
#[command(name = "qmat", version, about = "Exact computations in the reflection equation and FRT algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    Rea,
    Frt,
}

impl From<AlgebraArg> for Algebra {
    fn from(a: AlgebraArg) -> Algebra {
        match a {
            AlgebraArg::Rea => Algebra::Rea,
            AlgebraArg::Frt => Algebra::Frt,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MinorType {
    /// Quantum minor in the FRT algebra.
    Dl,
    /// Weighted minor in the reflection equation algebra.
    Pt,
    /// Twist preimage of the FRT minor, expressed in reflection generators.
    Tw,
    /// Coinvariant combination of FRT minors.
    Coinv,
}

#[derive(Clone, Copy, ValueEnum)]
enum RWhich {
    R,
    Rtilde,
    Rinv,
    R21,
    Flip,
}

#[derive(Subcommand)]
enum Cmd {
    /// Straighten an expression into ordered normal form.
    Nf {
        /// Expression, e.g. "a[2,1]*a[1,2] - q^2*a[1,1]".
        expr: String,
        #[arg(long = "N")]
        n: u8,
        #[arg(long, value_enum, default_value_t = AlgebraArg::Rea)]
        algebra: AlgebraArg,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Print the k-th central coefficient c_k.
    Ck {
        #[arg(long = "N")]
        n: u8,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Print the weighted trace of the k-th matrix power.
    Sk {
        #[arg(long = "N")]
        n: u8,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Print a quantum minor for given row and column sets.
    Minor {
        #[arg(long = "type", value_enum)]
        minor_type: MinorType,
        #[arg(long = "N")]
        n: u8,
        /// Row set, comma separated, e.g. --I 1,3.
        #[arg(long = "I", value_delimiter = ',')]
        i_set: Vec<u8>,
        /// Column set, same size as I.
        #[arg(long = "J", value_delimiter = ',')]
        j_set: Vec<u8>,
        /// Shift set for weighted minors.
        #[arg(long = "U", value_delimiter = ',')]
        u_set: Option<Vec<u8>>,
        /// For --type coinv: which coinvariant (uses --k, ignores I and J).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Print the combinatorial statistics attached to (U, I, J).
    Stats {
        #[arg(long = "N")]
        n: u8,
        #[arg(long = "I", value_delimiter = ',')]
        i_set: Vec<u8>,
        #[arg(long = "J", value_delimiter = ',')]
        j_set: Vec<u8>,
        #[arg(long = "U", value_delimiter = ',')]
        u_set: Option<Vec<u8>>,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Check the Hecke-algebra identities behind the trace calculus.
    Hecke {
        #[arg(long = "N")]
        n: u8,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Print a braiding operator as sparse entries.
    Rmatrix {
        #[arg(long = "N")]
        n: u8,
        #[arg(long, value_enum, default_value_t = RWhich::R)]
        what: RWhich,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Run a verification check; exits 1 if it fails.
    Verify {
        /// One of: central, qch, newton, clique, unipotent, subalgebra, hecke.
        check: String,
        #[arg(long = "N")]
        n: u8,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "I", value_delimiter = ',')]
        i_set: Option<Vec<u8>>,
        #[arg(long = "J", value_delimiter = ',')]
        j_set: Option<Vec<u8>>,
        /// Worker threads for the per-k sweep; 1 keeps logs ordered.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Fit the coefficients of a claimed identity from scratch.
    Fit {
        /// Currently only "newton".
        target: String,
        #[arg(long = "N")]
        n: u8,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Replay or regenerate the golden fixture file.
    Fixtures {
        /// "check" replays every record; "write" regenerates the file.
        action: String,
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
}

fn ensure_n(n: u8) -> Result<()> {
    ensure!((1..=6).contains(&n), "N must be between 1 and 6");
    Ok(())
}

fn ensure_set(n: u8, name: &str, set: &[u8]) -> Result<()> {
    ensure!(
        set.windows(2).all(|w| w[0] < w[1]),
        "{name} must be strictly increasing"
    );
    ensure!(
        set.iter().all(|&x| 1 <= x && x <= n),
        "{name} entries must lie in 1..={n}"
    );
    Ok(())
}

fn with_cache<T>(
    engine: &PbwEngine,
    dir: Option<PathBuf>,
    body: impl FnOnce(&PbwEngine) -> Result<T>,
) -> Result<T> {
    let dir = cache::dir_from_env(dir);
    if let Some(d) = &dir {
        cache::load(engine, d)?;
    }
    let out = body(engine)?;
    if let Some(d) = &dir {
        cache::save(engine, d)?;
    }
    Ok(out)
}

fn print_tensor(n: u8, name: &str, op: &TensorOp, fmt: OutFormat) {
    match fmt {
        OutFormat::Json => {
            let entries: Vec<_> = op
                .terms()
                .map(|(&(row, col), c)| {
                    let out: Vec<u8> = unpack(n, 2, row).iter().map(|d| d + 1).collect();
                    let inp: Vec<u8> = unpack(n, 2, col).iter().map(|d| d + 1).collect();
                    json!({ "out": out, "in": inp, "coeff": ratfunc_to_json(c) })
                })
                .collect();
            println!("{}", json!({ "n": n, "what": name, "entries": entries }));
        }
        OutFormat::Text => {
            for (&(row, col), c) in op.terms() {
                let out = unpack(n, 2, row);
                let inp = unpack(n, 2, col);
                println!(
                    "({},{}) <- ({},{}): {}",
                    out[0] + 1,
                    out[1] + 1,
                    inp[0] + 1,
                    inp[1] + 1,
                    c
                );
            }
        }
        OutFormat::Latex => {
            for (&(row, col), c) in op.terms() {
                let out = unpack(n, 2, row);
                let inp = unpack(n, 2, col);
                println!(
                    "{}^{{{}{}}}_{{{}{}}} = {}",
                    name,
                    out[0] + 1,
                    out[1] + 1,
                    inp[0] + 1,
                    inp[1] + 1,
                    ratfunc_latex(c)
                );
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Nf { expr, n, algebra, format, cache_dir } => {
            ensure_n(n)?;
            let algebra: Algebra = algebra.into();
            let p = parse(&expr, algebra, n).map_err(|e| anyhow!("parse error: {e}"))?;
            let engine = PbwEngine::new(algebra, n);
            let nf = with_cache(&engine, cache_dir, |eng| {
                eng.normal_form(&p).map_err(|e| anyhow!("{e}"))
            })?;
            println!("{}", render_poly(&nf, format));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ck { n, k, format } => {
            ensure_n(n)?;
            ensure!(1 <= k && k <= n as usize, "k must be between 1 and N");
            println!("{}", render_poly(&ck(n, k), format));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sk { n, k, format, cache_dir } => {
            ensure_n(n)?;
            ensure!(1 <= k && k <= 16, "k must be between 1 and 16");
            let engine = PbwEngine::new(Algebra::Rea, n);
            let s = with_cache(&engine, cache_dir, |eng| {
                qmat_core::central::sk(eng, k).map_err(|e| anyhow!("{e}"))
            })?;
            println!("{}", render_poly(&s, format));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Minor { minor_type, n, i_set, j_set, u_set, k, format } => {
            ensure_n(n)?;
            let p = match minor_type {
                MinorType::Coinv => {
                    let k = k.ok_or_else(|| anyhow!("--type coinv needs --k"))?;
                    ensure!(1 <= k && k <= n as usize, "k must be between 1 and N");
                    dl_coinv(n, k)
                }
                _ => {
                    ensure_set(n, "I", &i_set)?;
                    ensure_set(n, "J", &j_set)?;
                    ensure!(!i_set.is_empty(), "I must be nonempty");
                    ensure!(i_set.len() == j_set.len(), "I and J must have the same size");
                    match minor_type {
                        MinorType::Dl => dlmin(n, &i_set, &j_set),
                        MinorType::Tw => minor_preimage(n, &i_set, &j_set),
                        MinorType::Pt => {
                            let u = u_set.as_deref().unwrap_or(&[]);
                            ensure_set(n, "U", u)?;
                            ptmin(n, u, &i_set, &j_set)
                        }
                        MinorType::Coinv => unreachable!(),
                    }
                }
            };
            println!("{}", render_poly(&p, format));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Stats { n, i_set, j_set, u_set, format } => {
            ensure_n(n)?;
            ensure_set(n, "I", &i_set)?;
            ensure_set(n, "J", &j_set)?;
            ensure!(!i_set.is_empty(), "I must be nonempty");
            ensure!(i_set.len() == j_set.len(), "I and J must have the same size");
            let u = u_set.as_deref().unwrap_or(&[]);
            ensure_set(n, "U", u)?;
            let tau = Bij::order_preserving(&i_set, &j_set);
            let gammas: Vec<u64> =
                (1..=i_set.len()).map(|m| gamma(u, &i_set, &j_set, m)).collect();
            match format {
                OutFormat::Json => println!(
                    "{}",
                    json!({
                        "wt_I": wt(&i_set),
                        "wt_J": wt(&j_set),
                        "exceedance": tau.exceedance(),
                        "ell_U": tau.ell_u(u),
                        "gamma": gammas,
                    })
                ),
                _ => {
                    println!("wt(I) = {}", wt(&i_set));
                    println!("wt(J) = {}", wt(&j_set));
                    println!("e(tau) = {}", tau.exceedance());
                    println!("ell_U(tau) = {}", tau.ell_u(u));
                    for (m, g) in gammas.iter().enumerate() {
                        println!("gamma(m={}) = {}", m + 1, g);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hecke { n, k, format } => {
            let report = verify::verify_hecke(n, k)?;
            println!("{}", report.render(format));
            Ok(ExitCode::from(u8::try_from(report.exit_code()).unwrap_or(1)))
        }
        Cmd::Rmatrix { n, what, format } => {
            ensure_n(n)?;
            let (name, op) = match what {
                RWhich::R => ("R", build_r(n)),
                RWhich::Rtilde => ("Rt", build_rtilde(n)),
                RWhich::Rinv => ("Rinv", build_r(n).inverse()),
                RWhich::R21 => ("R21", build_r21(n)),
                RWhich::Flip => ("P", build_flip(n)),
            };
            print_tensor(n, name, &op, format);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { check, n, k, i_set, j_set, jobs, format } => {
            ensure!(jobs >= 1, "--jobs must be at least 1");
            let report = verify::run_check(&check, n, k, i_set, j_set, jobs)?;
            println!("{}", report.render(format));
            Ok(ExitCode::from(u8::try_from(report.exit_code()).unwrap_or(1)))
        }
        Cmd::Fit { target, n, k, format } => {
            let report = match target.as_str() {
                "newton" => verify::fit_newton_report(n, k)?,
                other => bail!("unknown fit target {other:?}"),
            };
            println!("{}", report.render(format));
            Ok(ExitCode::from(u8::try_from(report.exit_code()).unwrap_or(1)))
        }
        Cmd::Fixtures { action, path, format } => {
            let path = path.unwrap_or_else(fixtures::default_path);
            match action.as_str() {
                "check" => {
                    let report = fixtures::check(&path)?;
                    println!("{}", report.render(format));
                    Ok(ExitCode::from(u8::try_from(report.exit_code()).unwrap_or(1)))
                }
                "write" => {
                    let count = fixtures::write(&path)?;
                    println!("wrote {count} records to {}", path.display());
                    Ok(ExitCode::SUCCESS)
                }
                other => bail!("unknown fixtures action {other:?}"),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
