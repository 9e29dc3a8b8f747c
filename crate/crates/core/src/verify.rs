//! End-to-end verification suites. Each suite checks one family of exact
//! identities or oracle agreements at fixed tolerances, and reports
//! instance counts, the worst numeric error (zero for exact checks), and
//! wall time. The battery with its pinned parameters is what `cargo test`
//! runs in the `acceptance` target and what the CLI `verify` command prints.

use crate::certificates::{
    cartan_certificate, decide_nonsplit_membership, l1_basis, universal_op_certificate,
    verify_certificate,
};
use crate::cosets::{
    cartan_polynomial, expected_partition_statistics, torus_partition_statistics, tpk_cosets,
    CosetIndex, TorusConfig,
};
use crate::error::Result;
use crate::matrix::{p_pow, GL2};
use crate::modform::{delta_eigenform, is_prime, period_ideal, split_type, SplitType};
use crate::module::{
    convolve_cartan_shifted, convolve_coset_list, imap_scale, universal_operator,
    SphericalFunction,
};
use crate::ring::{SatakeData, TorusKind};
use crate::scalar::Scalar;
use crate::shintani::{shintani_universal_closed, shintani_universal_engine};
use crate::zeta::{eps_char_sum, eps_value, normalized_period};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::time::Instant;

/// Outcome of one verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: usize,
    pub passed: usize,
    pub max_error: f64,
    pub wall_time: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            instances: 0,
            passed: 0,
            max_error: 0.0,
            wall_time: 0.0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.instances
    }

    fn check(&mut self, ok: bool, label: impl Fn() -> String) {
        self.instances += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < 16 {
            self.failures.push(label());
        }
    }

    fn check_error(&mut self, err: f64, tol: f64, label: impl Fn() -> String) {
        if err.is_finite() {
            self.max_error = self.max_error.max(err);
        }
        self.check(err.is_finite() && err < tol, || format!("{} (error {err:.3e})", label()));
    }

    fn finish(mut self, start: Instant) -> Self {
        self.wall_time = start.elapsed().as_secs_f64();
        self
    }
}

fn basis_index(kind: TorusKind, lambda: u32) -> CosetIndex {
    match kind {
        TorusKind::NonSplit => CosetIndex::nonsplit(lambda, 0),
        TorusKind::Split => CosetIndex::split(lambda, 0, 0),
    }
}

/// Exact convolution identity at the non-split torus:
/// `involute(C_lambda) * xi_0 = xi_{lambda,0}`.
pub fn suite_convolution_nonsplit(primes: &[u64], lambda_max: u32) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("convolution-nonsplit");
    for &p in primes {
        let cfg = TorusConfig::nonsplit(p);
        let base = SphericalFunction::base_point(cfg);
        for lambda in 1..=lambda_max {
            let image = convolve_cartan_shifted(lambda, -(lambda as i64), &base);
            let expected = SphericalFunction::basis(cfg, CosetIndex::nonsplit(lambda, 0)).unwrap();
            report.check(image == expected, || format!("p={p} lambda={lambda}"));
        }
    }
    report.finish(start)
}

/// Exact convolution identity at the split torus:
/// `involute(C_lambda) * xi_0 =
///    xi_{lambda,0,0} + sum_{0<=i<lambda} (xi_{i,lambda-i,0} + xi_{i,i-lambda,lambda-i})`.
pub fn suite_convolution_split(primes: &[u64], lambda_max: u32) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("convolution-split");
    for &p in primes {
        let cfg = TorusConfig::split(p);
        let base = SphericalFunction::base_point(cfg);
        for lambda in 1..=lambda_max {
            let image = convolve_cartan_shifted(lambda, -(lambda as i64), &base);
            let mut expected = SphericalFunction::zero(cfg);
            expected.add_term(CosetIndex::split(lambda, 0, 0), Scalar::one());
            for i in 0..lambda {
                expected.add_term(
                    CosetIndex::split(i, lambda as i64 - i as i64, 0),
                    Scalar::one(),
                );
                expected.add_term(
                    CosetIndex::split(i, i as i64 - lambda as i64, lambda as i64 - i as i64),
                    Scalar::one(),
                );
            }
            report.check(image == expected, || format!("p={p} lambda={lambda}"));
        }
    }
    report.finish(start)
}

/// Closed-form universal Shintani values against the module-engine values,
/// exactly, for both torus kinds.
pub fn suite_shintani_crosscheck(primes: &[u64], lambda_max: u32) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("shintani-crosscheck");
    report.notes.push(
        "engine normalization: involute(universal operator) divided by #H_Z(Z/p^lambda) \
         = (p -+ 1) p^(lambda-1); the closed bracket carries the (p -+ 1) denominator only, \
         with no residual p-power"
            .into(),
    );
    for &p in primes {
        for kind in [TorusKind::NonSplit, TorusKind::Split] {
            let cfg = TorusConfig::new(kind, p);
            for lambda in 0..=lambda_max {
                let closed = shintani_universal_closed(lambda, kind, p);
                let engine = shintani_universal_engine(&basis_index(kind, lambda), &cfg)?;
                report.check(closed == engine, || {
                    format!("p={p} {} lambda={lambda}", kind.name())
                });
            }
        }
    }
    Ok(report.finish(start))
}

/// Denominator structure of the universal Shintani values: scaling by
/// `#H_Z(F_p)` lands in `Z[1/p]` for every stratum, the unscaled `lambda = 1`
/// value does not, and the non-split `lambda = 1` value is `T/(p+1)` exactly.
pub fn suite_denominator_optimality(primes: &[u64], lambda_max: u32) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("denominator-optimality");
    for &p in primes {
        for kind in [TorusKind::NonSplit, TorusKind::Split] {
            let cfg = TorusConfig::new(kind, p);
            let hz = kind.hz_order(p);
            for lambda in 0..=lambda_max {
                let sh = shintani_universal_engine(&basis_index(kind, lambda), &cfg)?;
                report.check(sh.denominator_bound(hz)?, || {
                    format!("scaled value leaves Z[1/p]: p={p} {} lambda={lambda}", kind.name())
                });
            }
            let sh1 = shintani_universal_engine(&basis_index(kind, 1), &cfg)?;
            report.check(!sh1.denominator_bound(1)?, || {
                format!("lambda=1 value unexpectedly integral: p={p} {}", kind.name())
            });
        }
        // non-split lambda = 1 is T/(p+1) on the nose
        let cfg = TorusConfig::nonsplit(p);
        let sh1 = shintani_universal_engine(&basis_index(TorusKind::NonSplit, 1), &cfg)?;
        let expected = cartan_polynomial(1, TorusKind::NonSplit, p)
            .rat_mul(&BigRational::new(1.into(), (p as i64 + 1).into()));
        report.check(sh1 == expected, || format!("p={p} lambda=1 value"));
    }
    Ok(report.finish(start))
}

fn sample_unit(rng: &mut StdRng, lo: f64, hi: f64) -> Complex64 {
    let r = rng.gen_range(lo..hi);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

/// Random admissible Satake data, kept away from the L-factor pole so the
/// normalized period is well-conditioned.
pub fn sample_satake(rng: &mut StdRng, kind: TorusKind, p: u64) -> SatakeData {
    loop {
        let alpha = sample_unit(rng, 0.3, 2.0);
        let beta = sample_unit(rng, 0.3, 2.0);
        let data = match kind {
            TorusKind::NonSplit => SatakeData::new_nonsplit(p, alpha, beta),
            TorusKind::Split => {
                let chi_a = sample_unit(rng, 0.5, 1.8);
                SatakeData::new_split(p, alpha, beta, chi_a)
            }
        };
        if crate::shintani::inverse_l_at_half(&data, kind).norm() > 0.05 {
            return data;
        }
    }
}

/// Specialized engine values against the zeta-integral oracle, including the
/// torus-character factors of translated orbits. Tolerance 1e-9 absolute.
pub fn suite_commuting_diagram(
    primes: &[u64],
    lambda_max: u32,
    samples: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("commuting-diagram");
    let mut rng = StdRng::seed_from_u64(seed);
    for &p in primes {
        for kind in [TorusKind::NonSplit, TorusKind::Split] {
            let cfg = TorusConfig::new(kind, p);
            // engine values are reused across samples
            let mut indices = Vec::new();
            for lambda in 0..=lambda_max {
                indices.push(basis_index(kind, lambda));
            }
            // a couple of translated orbits exercise the character factors
            indices.push(match kind {
                TorusKind::NonSplit => CosetIndex::nonsplit(1, 2),
                TorusKind::Split => CosetIndex::split(1, 1, -1),
            });
            indices.push(match kind {
                TorusKind::NonSplit => CosetIndex::nonsplit(2, -1),
                TorusKind::Split => CosetIndex::split(2, -1, 1),
            });
            let engines: Vec<_> = indices
                .iter()
                .map(|idx| shintani_universal_engine(idx, &cfg))
                .collect::<Result<_>>()?;
            for _ in 0..samples {
                let data = sample_satake(&mut rng, kind, p);
                for (idx, engine) in indices.iter().zip(engines.iter()) {
                    let symbolic = engine.specialize(&data)?;
                    let oracle = normalized_period(idx, &data, &cfg)?;
                    report.check_error((symbolic - oracle).norm(), 1e-9, || {
                        format!("p={p} {} idx={idx:?}", kind.name())
                    });
                }
            }
        }
    }
    Ok(report.finish(start))
}

/// Closed-form epsilon integrals against literal character sums, 1e-10.
/// The grid keeps the conductor within p^6, the modulus the sums run over.
pub fn suite_eps_integrals(primes: &[u64]) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("eps-integrals");
    for &p in primes {
        for m in -6..=6i64 {
            for i in -6..=6i64 {
                if m + i < -6 {
                    continue;
                }
                let closed = eps_value(m, i, p).to_f64().unwrap();
                let numeric = eps_char_sum(m, i, p);
                report.check_error(
                    (numeric - Complex64::new(closed, 0.0)).norm(),
                    1e-10,
                    || format!("p={p} m={m} i={i}"),
                );
            }
        }
    }
    report.finish(start)
}

/// Certificates: Cartan cells at the non-split torus, universal operators of
/// `L1` basis data at both tori, and the non-split decision procedure on
/// random `L1` combinations.
pub fn suite_certificates(
    cartan_primes: &[u64],
    cartan_lambda_max: u32,
    basis_primes: &[u64],
    basis_lambda_max: u32,
    random_combinations: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("certificates");
    for &p in cartan_primes {
        for lambda in 1..=cartan_lambda_max {
            let cert = cartan_certificate(lambda, p)?;
            report.check(
                verify_certificate(&cert)
                    && cert.target == cartan_polynomial(lambda, TorusKind::NonSplit, p),
                || format!("cartan p={p} lambda={lambda}"),
            );
        }
    }
    for &p in basis_primes {
        for kind in [TorusKind::NonSplit, TorusKind::Split] {
            let cfg = TorusConfig::new(kind, p);
            for xi in l1_basis(&cfg, basis_lambda_max, 1) {
                let cert = universal_op_certificate(&xi)?;
                let ok = verify_certificate(&cert) && cert.target == universal_operator(&xi)?;
                report.check(ok, || format!("universal p={p} {}", kind.name()));
            }
        }
    }
    // random L1 combinations stay inside the non-split ideal
    let mut rng = StdRng::seed_from_u64(seed);
    for &p in basis_primes {
        let cfg = TorusConfig::nonsplit(p);
        let basis = l1_basis(&cfg, basis_lambda_max, 2);
        for _ in 0..random_combinations / basis_primes.len().max(1) {
            let mut xi = SphericalFunction::zero(cfg);
            for _ in 0..rng.gen_range(1..=4usize) {
                let pick = &basis[rng.gen_range(0..basis.len())];
                let c = Scalar::from_int(rng.gen_range(-5..=5i64));
                xi = xi.add(&pick.scalar_mul(&c))?;
            }
            let op = universal_operator(&xi)?;
            report.check(decide_nonsplit_membership(&op)?, || format!("membership p={p}"));
        }
        // and the base point itself is not in the ideal
        let unit = universal_operator(&SphericalFunction::base_point(cfg))?;
        report.check(!decide_nonsplit_membership(&unit)?, || {
            format!("unit wrongly admitted p={p}")
        });
    }
    Ok(report.finish(start))
}

/// Iwasawa statistics of the torus representatives against the predicted
/// partition, exactly.
pub fn suite_coset_partition(primes: &[u64], lambda_max: u32) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("coset-partition");
    for &p in primes {
        let cfg = TorusConfig::nonsplit(p);
        for lambda in 1..=lambda_max {
            let got = torus_partition_statistics(lambda, &cfg)?;
            let want = expected_partition_statistics(lambda, p);
            report.check(got == want, || format!("p={p} lambda={lambda}"));
        }
    }
    Ok(report.finish(start))
}

/// The determinant-p^k set acts like `T T(p^{k-1}) - p S T(p^{k-2})`,
/// verified at the level of literal coset sums on sample functions.
pub fn suite_hecke_recurrence(primes: &[u64], k_max: u32) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("hecke-recurrence");
    for &p in primes {
        for kind in [TorusKind::NonSplit, TorusKind::Split] {
            let cfg = TorusConfig::new(kind, p);
            let mut samples = vec![SphericalFunction::base_point(cfg)];
            let mut shifted = SphericalFunction::basis(
                cfg,
                match kind {
                    TorusKind::NonSplit => CosetIndex::nonsplit(1, -1),
                    TorusKind::Split => CosetIndex::split(1, 0, 1),
                },
            )
            .unwrap();
            shifted = shifted.scalar_mul(&Scalar::from_frac(2, 3));
            samples.push(shifted);
            for xi in &samples {
                for k in 2..=k_max {
                    let act = |j: u32, f: &SphericalFunction| -> Result<SphericalFunction> {
                        let cosets = tpk_cosets(j, p);
                        let inv: Vec<GL2> =
                            cosets.iter().map(|g| g.scale(&p_pow(p, -(j as i64)))).collect();
                        convolve_coset_list(&cosets, &inv, &GL2::identity(p), f)
                    };
                    let lhs = act(k, xi)?;
                    // T * T(p^{k-1}) xi
                    let t_part = convolve_cartan_shifted(1, 0, &act(k - 1, xi)?);
                    // p S * T(p^{k-2}) xi
                    let s_part = match kind {
                        TorusKind::NonSplit => act(k - 2, xi)?.rat_mul(&p_pow(p, 1)).index_shift(-1, 0),
                        TorusKind::Split => act(k - 2, xi)?.rat_mul(&p_pow(p, 1)).index_shift(0, -1),
                    };
                    let rhs = t_part.sub(&s_part)?;
                    report.check(lhs == rhs, || format!("p={p} {} k={k}", kind.name()));
                }
            }
        }
    }
    Ok(report.finish(start))
}

/// Period ideals of the weight-12 level-one form with M = 1: the pinned
/// values at p = 7 (inert) and p = 5 (split, chi = 1), plus divisibility of
/// every generator by the matching `p -+ 1` across the good primes.
pub fn suite_period_ideals(max_p: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("period-ideals");
    let f = delta_eigenform(max_p.max(7), 1);
    let one = BigRational::one();

    let inert = period_ideal(&f, 7, None)?;
    report.check(inert.split_type == SplitType::Inert && inert.generator == 8, || {
        format!("inert p=7 generator {} (want 8)", inert.generator)
    });
    let split = period_ideal(&f, 5, Some(&one))?;
    report.check(split.split_type == SplitType::Split && split.generator == 4, || {
        format!("split p=5 generator {} (want 4)", split.generator)
    });
    for p in (3..=max_p).filter(|&p| is_prime(p)) {
        let ideal = period_ideal(&f, p, Some(&one))?;
        let bound = match ideal.split_type {
            SplitType::Inert => p + 1,
            SplitType::Split => p - 1,
        };
        report.check(ideal.generator != 0 && bound % ideal.generator == 0, || {
            format!("p={p} generator {}", ideal.generator)
        });
        report.check(split_type(1, p)? == ideal.split_type, || format!("p={p} split type"));
    }
    Ok(report.finish(start))
}

/// Integral multiplicity one for the eigensystem of the weight-12 form: the
/// universal operators of integral basis data have `Z[1/p]` coefficients and
/// their involuted specializations (the scaled periods) are `Z[1/p]` values,
/// checked exactly on the symbolic side and cross-checked numerically.
pub fn suite_integrality(lambda_max: u32) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("integrality");
    let f = delta_eigenform(11, 1);
    let one = BigRational::one();
    for p in [5u64, 7] {
        let sp = f.satake_params(p)?;
        let kind = match split_type(1, p)? {
            SplitType::Split => TorusKind::Split,
            SplitType::Inert => TorusKind::NonSplit,
        };
        let cfg = TorusConfig::new(kind, p);
        let data = match kind {
            TorusKind::Split => sp.to_split(Complex64::new(1.0, 0.0)),
            TorusKind::NonSplit => sp.to_nonsplit(),
        };
        let chi_exact = match kind {
            TorusKind::Split => Some(one.clone()),
            TorusKind::NonSplit => None,
        };
        for lambda in 0..=lambda_max {
            for a in -1..=1i64 {
                let bs: Vec<Option<i64>> = match kind {
                    TorusKind::NonSplit => vec![None],
                    TorusKind::Split => vec![Some(-1), Some(0), Some(1)],
                };
                for b in bs {
                    let idx = CosetIndex { lambda, a, b };
                    let xi = SphericalFunction::basis(cfg, idx)?;
                    let op = universal_operator(&xi)?;
                    report.check(op.denominator_bound(1)?, || {
                        format!("operator coefficients leave Z[1/p]: p={p} idx={idx:?}")
                    });
                    // scaled period: specialize the involuted operator
                    let period = op.involute().specialize_exact(
                        &sp.theta_t,
                        &sp.theta_s,
                        chi_exact.as_ref(),
                    )?;
                    report.check(period.in_z1p(p), || {
                        format!("scaled period leaves Z[1/p]: p={p} idx={idx:?}")
                    });
                    // numeric cross-check through the oracle
                    let numeric = normalized_period(&idx, &data, &cfg)?
                        * Complex64::new(imap_scale(&idx, &cfg) as f64, 0.0);
                    report.check_error((numeric - period.to_complex(p)).norm(), 1e-9, || {
                        format!("numeric path disagrees: p={p} idx={idx:?}")
                    });
                }
            }
        }
    }
    Ok(report.finish(start))
}

/// classify invariance under random torus and unit translations; part of the
/// decomposition battery.
pub fn suite_decomposition(primes: &[u64], lambda_max: u32, samples: usize, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("decomposition");
    let mut rng = StdRng::seed_from_u64(seed);
    for &p in primes {
        for kind in [TorusKind::NonSplit, TorusKind::Split] {
            let cfg = TorusConfig::new(kind, p);
            for lambda in 0..=lambda_max {
                let idx = basis_index(kind, lambda);
                let (g0, h0) = idx.representative(&cfg);
                for _ in 0..samples {
                    let h = random_torus_element(&mut rng, &cfg);
                    let k1 = random_unit_matrix(&mut rng, p);
                    let k2 = random_torus_unit(&mut rng, &cfg);
                    let g = h.inv()?.mul(&g0).mul(&k1);
                    let y = h.mul(&h0).mul(&k2);
                    let got = crate::cosets::classify_pair(&g, &y, &cfg)?;
                    report.check(got == idx, || {
                        format!("p={p} {} lambda={lambda}: got {got:?}", kind.name())
                    });
                }
            }
        }
        // Iwasawa reassembly on random matrices
        for _ in 0..samples {
            let g = random_invertible(&mut rng, p);
            let iw = crate::cosets::iwasawa_decompose(&g)?;
            report.check(iw.reassemble() == g && iw.k.is_unit(), || format!("iwasawa p={p}"));
        }
    }
    Ok(report.finish(start))
}

fn random_torus_element(rng: &mut StdRng, cfg: &TorusConfig) -> GL2 {
    let p = cfg.p;
    loop {
        let e1 = rng.gen_range(-2..=2i64);
        match cfg.kind {
            TorusKind::NonSplit => {
                let a = rng.gen_range(-6..=6i64);
                let b = rng.gen_range(-6..=6i64);
                if a == 0 && b == 0 {
                    continue;
                }
                let m = GL2::from_ints(a, b, -b * cfg.d as i64, a, p);
                return m.scale(&p_pow(p, e1));
            }
            TorusKind::Split => {
                let e2 = rng.gen_range(-2..=2i64);
                let u1 = random_unit_scalar(rng, p);
                let u2 = random_unit_scalar(rng, p);
                return GL2::new(
                    p_pow(p, e1) * u1,
                    crate::matrix::big(0),
                    crate::matrix::big(0),
                    p_pow(p, e2) * u2,
                    p,
                );
            }
        }
    }
}

fn random_unit_scalar(rng: &mut StdRng, p: u64) -> BigRational {
    loop {
        let n = rng.gen_range(1..=9i64);
        if n as u64 % p != 0 {
            return crate::matrix::big(if rng.gen_bool(0.5) { n } else { -n });
        }
    }
}

fn random_torus_unit(rng: &mut StdRng, cfg: &TorusConfig) -> GL2 {
    loop {
        let h = random_torus_element(rng, cfg);
        if h.is_unit() {
            return h;
        }
    }
}

fn random_unit_matrix(rng: &mut StdRng, p: u64) -> GL2 {
    let x = rng.gen_range(-6..=6i64);
    let y = rng.gen_range(-6..=6i64);
    let lower = GL2::from_ints(1, 0, x, 1, p);
    let upper = GL2::from_ints(1, y, 0, 1, p);
    let diag = GL2::new(
        random_unit_scalar(rng, p),
        crate::matrix::big(0),
        crate::matrix::big(0),
        random_unit_scalar(rng, p),
        p,
    );
    let mut m = lower.mul(&upper).mul(&diag);
    if rng.gen_bool(0.5) {
        m = m.mul(&GL2::from_ints(0, 1, 1, 0, p));
    }
    m
}

fn random_invertible(rng: &mut StdRng, p: u64) -> GL2 {
    loop {
        let e = rng.gen_range(-2..=2i64);
        let m = GL2::new(
            crate::matrix::big(rng.gen_range(-9..=9i64)) * p_pow(p, rng.gen_range(0..=2i64)),
            crate::matrix::big(rng.gen_range(-9..=9i64)),
            crate::matrix::big(rng.gen_range(-9..=9i64)),
            crate::matrix::big(rng.gen_range(-9..=9i64)) * p_pow(p, rng.gen_range(0..=2i64)),
            p,
        )
        .scale(&p_pow(p, e));
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// The whole battery at its pinned parameters.
pub fn run_all() -> Result<Vec<SuiteReport>> {
    Ok(vec![
        suite_convolution_nonsplit(&[3, 5, 7, 11, 13], 6),
        suite_convolution_split(&[3, 5, 7, 11, 13], 6),
        suite_shintani_crosscheck(&[3, 5, 7], 5)?,
        suite_denominator_optimality(&[3, 5, 7], 5)?,
        suite_commuting_diagram(&[3, 5, 7], 4, 50, 17)?,
        suite_eps_integrals(&[3, 5, 7]),
        suite_certificates(&[3, 5, 7, 11], 8, &[3, 5], 5, 100, 23)?,
        suite_coset_partition(&[3, 5, 7, 11, 13], 4)?,
        suite_hecke_recurrence(&[3, 5], 4)?,
        suite_period_ideals(47)?,
        suite_integrality(4)?,
        suite_decomposition(&[3, 5], 3, 25, 41)?,
    ])
}
