//! Command-line front end for the exact Hecke-module kernels: double-coset
//! classification, convolution, universal operators, Shintani functions,
//! ideal certificates, zeta oracles, eigenform period ideals, and the
//! verification battery.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hecke_core::certificates::universal_op_certificate;
use hecke_core::cosets::{
    cartan_cosets, classify_pair, iwasawa_decompose, torus_coset_reps, CosetIndex, TorusConfig,
};
use hecke_core::matrix::GL2;
use hecke_core::modform::{load_eigenform, period_ideal};
use hecke_core::module::{convolve_generator, universal_operator, ConvGen, SphericalFunction};
use hecke_core::ring::{RingGen, SatakeData, TorusKind};
use hecke_core::scalar::Scalar;
use hecke_core::shintani::{shintani_universal_closed, shintani_universal_engine};
use hecke_core::verify::{self, SuiteReport};
use hecke_core::zeta::{zeta_avg_nonsplit, zeta_split};
use num_complex::Complex64;
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "hecke",
    about = "Exact spherical Hecke-module computations for GL2(Qp) with an unramified torus",
    version
)]
struct Cli {
    /// Write the JSON output to this path instead of stdout.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum TorusArg {
    Nonsplit,
    Split,
}

impl From<TorusArg> for TorusKind {
    fn from(t: TorusArg) -> TorusKind {
        match t {
            TorusArg::Nonsplit => TorusKind::NonSplit,
            TorusArg::Split => TorusKind::Split,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Iwasawa-decompose a matrix and classify its double coset.
    Decompose {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "nonsplit")]
        torus: TorusArg,
        /// Matrix "a,b;c,d" with rational entries.
        matrix: String,
        /// Optional torus element "a,b;c,d" for the pair classification.
        #[arg(long)]
        h: Option<String>,
        /// Also list coset representatives: "cartan:LAMBDA" or "torus:LAMBDA".
        #[arg(long)]
        cosets: Option<String>,
    },
    /// Convolve a generator against a spherical function (JSON file).
    Convolve {
        /// Generator: T, S, S-, A, A-, B, B-, X, X-, or C:LAMBDA.
        #[arg(long = "gen")]
        generator: String,
        #[arg(long)]
        xi: PathBuf,
    },
    /// Solve for the universal Hecke operator of a spherical function.
    UniversalOp {
        #[arg(long)]
        xi: PathBuf,
    },
    /// Universal or local Shintani values.
    Shintani {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        torus: TorusArg,
        #[arg(long)]
        lambda: u32,
        /// Use the module-engine route (default).
        #[arg(long)]
        engine: bool,
        /// Use the closed-form route.
        #[arg(long)]
        closed: bool,
        /// Satake parameters "re,im re,im" to emit the specialized value.
        #[arg(long, num_args = 2)]
        satake: Option<Vec<String>>,
        /// chi value "re,im": chi_p(p) (non-split) or chi_p(diag(p,1)) (split).
        #[arg(long)]
        chi: Option<String>,
    },
    /// Certificate that the universal operator of an L1 element lies in the
    /// obstruction ideal.
    Certify {
        #[arg(long)]
        xi: PathBuf,
    },
    /// Zeta-integral oracle value and its exact expansion in p^{-s}.
    Zeta {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        torus: TorusArg,
        #[arg(long)]
        lambda: u32,
        /// "re,im"
        #[arg(long)]
        alpha: String,
        /// "re,im"
        #[arg(long)]
        beta: String,
        /// "re,im": chi_p(p) (non-split) resp. chi_p(diag(p,1)) (split).
        #[arg(long)]
        chi: Option<String>,
    },
    /// Per-prime integrality ideal of the toric period of an eigenform.
    PeriodIdeal {
        #[arg(long)]
        eigenform: PathBuf,
        #[arg(long)]
        p: u64,
        /// Rational chi value at diag(1/p, 1), required at split primes.
        #[arg(long)]
        chi_value: Option<String>,
    },
    /// Run verification suites; nonzero exit status on any failure.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Comma-separated primes.
        #[arg(long, default_value = "3,5")]
        p: String,
        #[arg(long, default_value_t = 4)]
        lambda_max: u32,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 17)]
        seed: u64,
    },
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("expected \"re,im\", got `{s}`"))?;
    Ok(Complex64::new(re.trim().parse()?, im.trim().parse()?))
}

fn parse_primes(s: &str) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|e| anyhow!("bad prime `{x}`: {e}")))
        .collect()
}

fn read_spherical(path: &Path) -> Result<SphericalFunction> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}

fn parse_generator(s: &str) -> Result<ConvGen> {
    Ok(match s {
        "T" => ConvGen::Ring(RingGen::T),
        "S" => ConvGen::Ring(RingGen::S),
        "S-" | "Sinv" => ConvGen::Ring(RingGen::SInv),
        "A" => ConvGen::Ring(RingGen::A),
        "A-" | "Ainv" => ConvGen::Ring(RingGen::AInv),
        "B" => ConvGen::Ring(RingGen::B),
        "B-" | "Binv" => ConvGen::Ring(RingGen::BInv),
        "X" => ConvGen::Ring(RingGen::X),
        "X-" | "Xinv" => ConvGen::Ring(RingGen::XInv),
        other => match other.split_once(':') {
            Some(("C", lam)) => ConvGen::Cartan(lam.parse()?),
            _ => bail!("unknown generator `{other}`"),
        },
    })
}

fn satake_from_args(
    kind: TorusKind,
    p: u64,
    alpha: &str,
    beta: &str,
    chi: Option<&str>,
) -> Result<SatakeData> {
    let alpha = parse_complex(alpha)?;
    let beta = parse_complex(beta)?;
    Ok(match kind {
        TorusKind::NonSplit => SatakeData::new_nonsplit(p, alpha, beta),
        TorusKind::Split => {
            let chi = chi.ok_or_else(|| anyhow!("split data needs --chi re,im"))?;
            SatakeData::new_split(p, alpha, beta, parse_complex(chi)?)
        }
    })
}

fn emit(out: &Option<PathBuf>, value: serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(&value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run_suite(name: &str, primes: &[u64], lambda_max: u32, samples: usize, seed: u64) -> Result<Vec<SuiteReport>> {
    Ok(match name {
        "all" => verify::run_all().map_err(|e| anyhow!(e.to_string()))?,
        "decomposition" => vec![verify::suite_decomposition(primes, lambda_max, samples, seed)?],
        "convolution" => vec![
            verify::suite_convolution_nonsplit(primes, lambda_max),
            verify::suite_convolution_split(primes, lambda_max),
        ],
        "shintani" => vec![verify::suite_shintani_crosscheck(primes, lambda_max)?],
        "denominator" => vec![verify::suite_denominator_optimality(primes, lambda_max)?],
        "commuting-diagram" => {
            vec![verify::suite_commuting_diagram(primes, lambda_max, samples, seed)?]
        }
        "eps" => vec![verify::suite_eps_integrals(primes)],
        "certificates" => vec![verify::suite_certificates(
            primes,
            lambda_max.max(1),
            primes,
            lambda_max,
            samples,
            seed,
        )?],
        "coset-partition" => vec![verify::suite_coset_partition(primes, lambda_max)?],
        "recurrence" => vec![verify::suite_hecke_recurrence(primes, lambda_max.min(4).max(2))?],
        "period-ideal" => {
            vec![verify::suite_period_ideals(primes.iter().copied().max().unwrap_or(47).max(7))?]
        }
        "integrality" => vec![verify::suite_integrality(lambda_max)?],
        other => bail!("unknown suite `{other}`"),
    })
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Decompose { p, torus, matrix, h, cosets } => {
            let cfg = TorusConfig::new(torus.into(), p);
            let g = GL2::parse(&matrix, p).map_err(|e| anyhow!(e.to_string()))?;
            let iw = iwasawa_decompose(&g).map_err(|e| anyhow!(e.to_string()))?;
            let mut body = json!({
                "p": p,
                "torus": cfg.kind,
                "iwasawa": {
                    "z": iw.z,
                    "r": iw.r,
                    "n": format!("{}", iw.n),
                    "k": iw.k.render(),
                },
                "lambda": hecke_core::cosets::classify_g(&g, &cfg).map_err(|e| anyhow!(e.to_string()))?,
            });
            if let Some(h) = h {
                let h = GL2::parse(&h, p).map_err(|e| anyhow!(e.to_string()))?;
                let idx = classify_pair(&g, &h, &cfg).map_err(|e| anyhow!(e.to_string()))?;
                body["index"] = serde_json::to_value(idx)?;
            }
            if let Some(spec) = cosets {
                let (family, lam) =
                    spec.split_once(':').ok_or_else(|| anyhow!("expected FAMILY:LAMBDA"))?;
                let lam: u32 = lam.parse()?;
                let list: Vec<String> = match family {
                    "cartan" => cartan_cosets(lam, p).iter().map(|m| m.render()).collect(),
                    "torus" => torus_coset_reps(lam, &cfg)
                        .map_err(|e| anyhow!(e.to_string()))?
                        .iter()
                        .map(|m| m.render())
                        .collect(),
                    other => bail!("unknown coset family `{other}`"),
                };
                body["cosets"] = json!(list);
            }
            emit(&cli.json_out, body)
        }
        Cmd::Convolve { generator, xi } => {
            let xi = read_spherical(&xi)?;
            let gen = parse_generator(&generator)?;
            let out = convolve_generator(gen, &xi).map_err(|e| anyhow!(e.to_string()))?;
            emit(&cli.json_out, serde_json::to_value(out)?)
        }
        Cmd::UniversalOp { xi } => {
            let xi = read_spherical(&xi)?;
            let op = universal_operator(&xi).map_err(|e| anyhow!(e.to_string()))?;
            emit(&cli.json_out, serde_json::to_value(op)?)
        }
        Cmd::Shintani { p, torus, lambda, engine, closed, satake, chi } => {
            let kind: TorusKind = torus.into();
            let cfg = TorusConfig::new(kind, p);
            if engine && closed {
                bail!("choose one of --engine / --closed");
            }
            let value = if closed {
                shintani_universal_closed(lambda, kind, p)
            } else {
                let idx = match kind {
                    TorusKind::NonSplit => CosetIndex::nonsplit(lambda, 0),
                    TorusKind::Split => CosetIndex::split(lambda, 0, 0),
                };
                shintani_universal_engine(&idx, &cfg).map_err(|e| anyhow!(e.to_string()))?
            };
            match satake {
                None => emit(&cli.json_out, serde_json::to_value(value)?),
                Some(params) => {
                    let data =
                        satake_from_args(kind, p, &params[0], &params[1], chi.as_deref())?;
                    let v = value.specialize(&data).map_err(|e| anyhow!(e.to_string()))?;
                    emit(&cli.json_out, json!({ "re": v.re, "im": v.im }))
                }
            }
        }
        Cmd::Certify { xi } => {
            let xi = read_spherical(&xi)?;
            let cert = universal_op_certificate(&xi).map_err(|e| anyhow!(e.to_string()))?;
            let verified = hecke_core::certificates::verify_certificate(&cert);
            let mut body = serde_json::to_value(&cert)?;
            body["verified"] = json!(verified);
            emit(&cli.json_out, body)
        }
        Cmd::Zeta { p, torus, lambda, alpha, beta, chi } => {
            let kind: TorusKind = torus.into();
            let data = satake_from_args(kind, p, &alpha, &beta, chi.as_deref())?;
            let result = match kind {
                TorusKind::NonSplit => {
                    let cfg = TorusConfig::nonsplit(p);
                    zeta_avg_nonsplit(lambda, &data, &cfg).map_err(|e| anyhow!(e.to_string()))?
                }
                TorusKind::Split => zeta_split(lambda, &data).map_err(|e| anyhow!(e.to_string()))?,
            };
            emit(
                &cli.json_out,
                json!({
                    "value": { "re": result.value_at_half.re, "im": result.value_at_half.im },
                    "s_polynomial": result
                        .s_polynomial
                        .iter()
                        .map(|c| json!({ "re": c.re, "im": c.im }))
                        .collect::<Vec<_>>(),
                    "truncation_exact": result.truncation_exact,
                }),
            )
        }
        Cmd::PeriodIdeal { eigenform, p, chi_value } => {
            let f = load_eigenform(&eigenform).map_err(|e| anyhow!(e.to_string()))?;
            let chi = match chi_value {
                None => None,
                Some(s) => Some(
                    Scalar::rat_from_str(&s).ok_or_else(|| anyhow!("bad rational `{s}`"))?,
                ),
            };
            let ideal = period_ideal(&f, p, chi.as_ref()).map_err(|e| anyhow!(e.to_string()))?;
            emit(&cli.json_out, serde_json::to_value(ideal)?)
        }
        Cmd::Verify { suite, p, lambda_max, samples, seed } => {
            let primes = parse_primes(&p)?;
            if primes.is_empty() && suite != "all" {
                emit(&cli.json_out, json!([]))?;
                return Ok(());
            }
            let reports = run_suite(&suite, &primes, lambda_max, samples, seed)?;
            let ok = reports.iter().all(|r| r.ok());
            for r in &reports {
                eprintln!(
                    "[{}] {} : {}/{} instances, max_error {:.2e}, {:.2}s",
                    if r.ok() { "PASS" } else { "FAIL" },
                    r.suite,
                    r.passed,
                    r.instances,
                    r.max_error,
                    r.wall_time
                );
            }
            emit(&cli.json_out, serde_json::to_value(&reports)?)?;
            if !ok {
                std::process::exit(1);
            }
            Ok(())
        }
    }
}
