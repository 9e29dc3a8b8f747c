//! Eigenform data, Satake parameters at good primes, and the per-prime
//! integrality ideals of toric periods.
//!
//! Only rational-coefficient eigenforms with rational nebentypus values are
//! handled, which keeps every ideal computation inside `Z[1/p]`. Ideals of
//! `Z[1/p]` are represented by their unique nonnegative generator prime
//! to `p`.

use crate::error::{Error, Result};
use crate::ring::SatakeData;
use crate::scalar::prime_to_p_part;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// A normalized cuspidal eigenform with rational data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenformData {
    pub label: String,
    /// Level N.
    pub level: u64,
    /// Even weight k.
    pub weight: u64,
    /// Nebentypus values at primes; trivial by default.
    pub eps: BTreeMap<u64, BigRational>,
    /// Hecke eigenvalues a_p.
    pub ap: BTreeMap<u64, BigInt>,
    /// The positive squarefree M of the quadratic field parameter.
    pub m_field: u64,
}

#[derive(Serialize, Deserialize)]
struct EigenformRepr {
    label: String,
    #[serde(rename = "N")]
    level: u64,
    k: u64,
    #[serde(default)]
    eps: BTreeMap<String, String>,
    ap: BTreeMap<String, serde_json::Value>,
    #[serde(rename = "M")]
    m_field: u64,
}

fn is_squarefree(mut m: u64) -> bool {
    let mut d = 2u64;
    while d * d <= m {
        if m % (d * d) == 0 {
            return false;
        }
        while m % d == 0 {
            m /= d;
        }
        d += 1;
    }
    true
}

impl EigenformData {
    pub fn validate(&self) -> Result<()> {
        if self.weight == 0 || self.weight % 2 != 0 {
            return Err(Error::Load(format!("weight {} must be a positive even integer", self.weight)));
        }
        if self.level == 0 {
            return Err(Error::Load("level must be positive".into()));
        }
        if self.m_field == 0 || !is_squarefree(self.m_field) {
            return Err(Error::Load(format!("M = {} must be positive and squarefree", self.m_field)));
        }
        Ok(())
    }

    pub fn eps_at(&self, p: u64) -> BigRational {
        self.eps.get(&p).cloned().unwrap_or_else(BigRational::one)
    }

    pub fn ap_at(&self, p: u64) -> Result<BigInt> {
        self.ap
            .get(&p)
            .cloned()
            .ok_or_else(|| Error::Load(format!("missing Hecke eigenvalue a_{p}")))
    }

    /// Satake parameters at a good odd prime: the roots of
    /// `X^2 - a_p X + eps(p) p^{k-1}` scaled by `p^{(1-k)/2}`. The symmetric
    /// functions stay rational because `k` is even: `theta_t = a_p p^{1-k/2}`
    /// is the eigenvalue of `T` and `theta_s = eps(p)` of `S`.
    pub fn satake_params(&self, p: u64) -> Result<SatakePair> {
        if p == 2 || p % 2 == 0 {
            return Err(Error::Load("only odd primes are spherical here".into()));
        }
        if self.level % p == 0 {
            return Err(Error::Load(format!("p = {p} divides the level; the local component is ramified")));
        }
        let ap = self.ap_at(p)?;
        let eps = self.eps_at(p);
        let k = self.weight;

        let apf = ap.to_f64().ok_or_else(|| Error::Load("a_p out of range".into()))?;
        let epsf = eps.to_f64().ok_or_else(|| Error::Load("eps out of range".into()))?;
        let pf = p as f64;
        // roots of X^2 - a_p X + eps p^{k-1}
        let disc = apf * apf - 4.0 * epsf * pf.powi(k as i32 - 1);
        let sqrt_disc = Complex64::new(disc, 0.0).sqrt();
        let root1 = (Complex64::new(apf, 0.0) + sqrt_disc) / 2.0;
        let root2 = (Complex64::new(apf, 0.0) - sqrt_disc) / 2.0;
        let scale = pf.powf((1.0 - k as f64) / 2.0);
        let p_big = BigInt::from(p);

        // theta_t = p^{1/2} (alpha + beta) = a_p p^{1 - k/2}
        let theta_t = BigRational::from_integer(ap)
            * BigRational::new(BigInt::one(), p_big.pow((k / 2 - 1) as u32));
        Ok(SatakePair {
            p,
            alpha: root1 * scale,
            beta: root2 * scale,
            theta_t,
            theta_s: eps,
        })
    }
}

/// Satake parameters as numbers, together with the exact rational eigenvalues
/// of the `T` and `S` generators.
#[derive(Clone, Debug)]
pub struct SatakePair {
    pub p: u64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub theta_t: BigRational,
    pub theta_s: BigRational,
}

impl SatakePair {
    pub fn to_nonsplit(&self) -> SatakeData {
        SatakeData::new_nonsplit(self.p, self.alpha, self.beta)
    }

    pub fn to_split(&self, chi_a: Complex64) -> SatakeData {
        SatakeData::new_split(self.p, self.alpha, self.beta, chi_a)
    }
}

/// Parse and validate the eigenform JSON schema.
pub fn load_eigenform(path: &Path) -> Result<EigenformData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Load(format!("cannot read {}: {e}", path.display())))?;
    parse_eigenform(&text)
}

pub fn parse_eigenform(text: &str) -> Result<EigenformData> {
    let repr: EigenformRepr =
        serde_json::from_str(text).map_err(|e| Error::Load(format!("schema violation: {e}")))?;
    let mut eps = BTreeMap::new();
    for (k, v) in repr.eps {
        let p: u64 = k.parse().map_err(|_| Error::Load(format!("bad prime key `{k}`")))?;
        let val = crate::scalar::Scalar::rat_from_str(&v)
            .ok_or_else(|| Error::Load(format!("bad nebentypus value `{v}`")))?;
        eps.insert(p, val);
    }
    let mut ap = BTreeMap::new();
    for (k, v) in repr.ap {
        let p: u64 = k.parse().map_err(|_| Error::Load(format!("bad prime key `{k}`")))?;
        let val = match &v {
            serde_json::Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|_| Error::Load(format!("bad eigenvalue `{s}`")))?,
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::Load(format!("bad eigenvalue `{n}`")))?,
            other => return Err(Error::Load(format!("bad eigenvalue `{other}`"))),
        };
        ap.insert(p, val);
    }
    let data = EigenformData {
        label: repr.label,
        level: repr.level,
        weight: repr.k,
        eps,
        ap,
        m_field: repr.m_field,
    };
    data.validate()?;
    Ok(data)
}

/// Whether the odd prime `p` (coprime to `2M`) is split or inert in
/// `Q(sqrt(-M))`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitType {
    Inert,
    Split,
}

pub fn split_type(m_field: u64, p: u64) -> Result<SplitType> {
    if p == 2 || p % 2 == 0 || m_field % p == 0 {
        return Err(Error::Load(format!("p = {p} is ramified in Q(sqrt(-{m_field}))")));
    }
    if crate::cosets::is_quadratic_residue(-(m_field as i64), p) {
        Ok(SplitType::Split)
    } else {
        Ok(SplitType::Inert)
    }
}

/// The per-prime integrality ideal of the toric period.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodIdeal {
    pub prime: u64,
    pub split_type: SplitType,
    /// Nonnegative generator, prime to p, of the ideal in `Z[1/p]`.
    pub generator: u64,
}

/// `(p+1, a_p)` at inert primes; `(p-1, L_p^{-1}(f; chi))` with
/// `L_p^{-1}(f; X) = 1 - a_p p^{-k/2} X + eps(p) p^{-1} X^2` at split primes.
pub fn period_ideal(
    f: &EigenformData,
    p: u64,
    chi_value: Option<&BigRational>,
) -> Result<PeriodIdeal> {
    f.validate()?;
    if p == 2 || f.level % p == 0 || f.m_field % p == 0 {
        return Err(Error::Load(format!("p = {p} is not coprime to 2 N M")));
    }
    let st = split_type(f.m_field, p)?;
    let ap = f.ap_at(p)?;
    let generator = match st {
        SplitType::Inert => {
            let bound = BigInt::from(p + 1);
            if ap.is_zero() {
                p + 1
            } else {
                let reduced = prime_to_p_part(&BigRational::from_integer(ap), p);
                reduced.gcd(&bound).to_u64().expect("gcd of small ints")
            }
        }
        SplitType::Split => {
            let chi = chi_value.ok_or_else(|| {
                Error::Load("split primes need the rational torus character value chi".into())
            })?;
            let k = f.weight;
            let pk2 = BigRational::new(BigInt::one(), BigInt::from(p).pow((k / 2) as u32));
            let p1 = BigRational::new(BigInt::one(), BigInt::from(p));
            // 1 - a_p p^{-k/2} chi + eps(p) p^{-1} chi^2
            let value = BigRational::one() - BigRational::from_integer(ap) * &pk2 * chi
                + f.eps_at(p) * &p1 * chi * chi;
            let bound = BigInt::from(p - 1);
            if value.is_zero() {
                p - 1
            } else {
                if !crate::scalar::rat_in_z1p(&value, p) {
                    return Err(Error::Load(
                        "character value leaves Z[1/p]; the ideal is not defined there".into(),
                    ));
                }
                let reduced = prime_to_p_part(&value, p);
                reduced.gcd(&bound).to_u64().expect("gcd of small ints")
            }
        }
    };
    Ok(PeriodIdeal { prime: p, split_type: st, generator })
}

/// Exact q-expansion of the weight-12 level-one cusp form as the eta product
/// `q prod (1 - q^n)^24`, returning its Hecke eigenvalues at primes up to the
/// bound.
pub fn delta_eigenform(max_p: u64, m_field: u64) -> EigenformData {
    let n_terms = (max_p + 1) as usize;
    let coeffs = delta_q_expansion(n_terms);
    let mut ap = BTreeMap::new();
    for p in 2..=max_p {
        if is_prime(p) {
            ap.insert(p, coeffs[p as usize].clone());
        }
    }
    EigenformData {
        label: "Delta".into(),
        level: 1,
        weight: 12,
        eps: BTreeMap::new(),
        ap,
        m_field,
    }
}

/// Coefficients `tau(1) .. tau(n-1)` of `q prod_{m >= 1} (1 - q^m)^24`,
/// as entries `1..n` of the returned vector (entry 0 is zero).
pub fn delta_q_expansion(n: usize) -> Vec<BigInt> {
    // Euler product, truncated at q^n, then raised to the 24th power.
    let mut euler = vec![BigInt::zero(); n];
    if n > 0 {
        euler[0] = BigInt::one();
    }
    for m in 1..n {
        // multiply by (1 - q^m) in place
        for i in (m..n).rev() {
            let low = euler[i - m].clone();
            euler[i] -= low;
        }
    }
    let mut pow = vec![BigInt::zero(); n];
    if n > 0 {
        pow[0] = BigInt::one();
    }
    for _ in 0..24 {
        pow = poly_mul_trunc(&pow, &euler, n);
    }
    // shift by q
    let mut out = vec![BigInt::zero(); n];
    for i in 1..n {
        out[i] = pow[i - 1].clone();
    }
    out
}

pub fn poly_mul_trunc(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
