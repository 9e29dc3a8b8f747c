//! Schur and mu polynomials, the local L-factor polynomial, and the
//! universal / local Shintani functions.
//!
//! The universal Shintani function takes values in the Hecke ring itself and
//! is computed along two independent routes: a closed formula in terms of
//! `Sch^o` and `mu` polynomials, and a first-principles route through the
//! module engine (`involute(universal_operator(xi_idx)) / #H_Z(Z/p^lambda)`).
//! The two must agree exactly; specializing at Satake parameters must land on
//! the local Shintani values produced by the zeta-integral oracle.

use crate::cosets::{CosetIndex, TorusConfig};
use crate::error::{Error, Result};
use crate::module::{imap_scale, universal_operator, SphericalFunction};
use crate::ring::{Exponents, HeckeElement, SatakeData, TorusKind};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `Sch_n(x, y) = (x^{n+1} - y^{n+1})/(x - y)` stored through its expansion
/// in the symmetric functions `e1 = x + y`, `e2 = xy`:
/// `Sch_n = sum_i (-1)^i binom(n-i, i) e1^{n-2i} e2^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurPoly {
    pub n: u32,
    /// Coefficient of `e1^{n-2i} e2^i` at position `i`.
    pub coeffs: Vec<BigInt>,
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl SchurPoly {
    pub fn new(n: u32) -> Self {
        let coeffs = (0..=(n / 2))
            .map(|i| {
                let c = binomial((n - i) as u64, i as u64);
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        SchurPoly { n, coeffs }
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let e1 = x + y;
        let e2 = x * y;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            let cf = c.to_string().parse::<f64>().expect("binomial fits in f64");
            acc += cf * e1.powi((self.n - 2 * i as u32) as i32) * e2.powi(i as i32);
        }
        acc
    }

    /// `Sch_n(1, y)` is the geometric sum `1 + y + ... + y^n`; used by the mu
    /// polynomials.
    pub fn eval_geometric(y: &BigRational, n: u32) -> BigRational {
        let mut acc = BigRational::zero();
        let mut pow = BigRational::one();
        for _ in 0..=n {
            acc += &pow;
            pow *= y;
        }
        acc
    }
}

/// Numeric `Sch_n(alpha, beta)` with `Sch_n = 0` for `n < 0`.
pub fn schur_value(n: i64, alpha: Complex64, beta: Complex64) -> Complex64 {
    if n < 0 {
        Complex64::new(0.0, 0.0)
    } else {
        SchurPoly::new(n as u32).eval(alpha, beta)
    }
}

/// `Sch^o_m(S, T)`: the ring element with
/// `Theta(Sch^o_m(S, T)) = p^{-m/2} Sch_m(alpha, beta)`. Its coefficients lie
/// in `Z[1/p]` (monomial `T^{m-2i} S^i` carries `(-1)^i binom(m-i,i) p^{i-m}`).
pub fn schur_circ(m: u32, kind: TorusKind, p: u64) -> HeckeElement {
    let sch = SchurPoly::new(m);
    let mut out = HeckeElement::zero(kind, p);
    for (i, c) in sch.coeffs.iter().enumerate() {
        let i = i as u32;
        let coeff = BigRational::from_integer(c.clone())
            * crate::matrix::p_pow(p, i as i64 - m as i64);
        out.add_term(Exponents::new(m - 2 * i, i as i64, 0), Scalar::from_rat(coeff));
    }
    out
}

/// The pair `(Sch_m, Sch^o_m(S,T))`.
pub fn schur_family(m: u32, kind: TorusKind, p: u64) -> (SchurPoly, HeckeElement) {
    (SchurPoly::new(m), schur_circ(m, kind, p))
}

/// The auxiliary polynomial
/// `mu_{m,lambda}(T) = phi(p)(1 - Sch_{lambda-m-2}(1, 1/p) - Sch_{lambda-m-2}(1, T/p))
///                     - p^{2+m-lambda}(1 + T^{lambda-m-1})`
/// for `-1 <= m <= lambda - 2`, over `Z[1/p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuPoly {
    pub m: i64,
    pub lambda: u32,
    /// Coefficients of `T^0 .. T^{lambda-m-1}`.
    pub coeffs: Vec<BigRational>,
}

pub fn mu_poly(m: i64, lambda: u32, p: u64) -> Result<MuPoly> {
    if m < -1 || m > lambda as i64 - 2 {
        return Err(Error::Domain(format!(
            "mu polynomial needs -1 <= m <= lambda-2, got m={m}, lambda={lambda}"
        )));
    }
    let k = (lambda as i64 - m - 2) as u32;
    let deg = (lambda as i64 - m - 1) as usize;
    let phi_p = BigRational::from_integer(BigInt::from(p as i64 - 1));
    let p_inv = crate::matrix::p_pow(p, -1);
    let mut coeffs = vec![BigRational::zero(); deg + 1];

    // phi(p) * (1 - Sch_k(1, 1/p))
    coeffs[0] += &phi_p * (BigRational::one() - SchurPoly::eval_geometric(&p_inv, k));
    // -phi(p) * Sch_k(1, T/p) = -phi(p) * sum_t p^{-t} T^t
    let mut pw = BigRational::one();
    for t in 0..=(k as usize) {
        coeffs[t] -= &phi_p * &pw;
        pw *= &p_inv;
    }
    // -p^{2+m-lambda} (1 + T^{lambda-m-1})
    let scale = crate::matrix::p_pow(p, 2 + m - lambda as i64);
    coeffs[0] -= &scale;
    coeffs[deg] -= &scale;

    Ok(MuPoly { m, lambda, coeffs })
}

impl MuPoly {
    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c.to_string_f64() * t.powi(i as i32);
        }
        acc
    }

    /// Substitute `T -> S^k` powers: the closed formulas use `mu(S_p)`.
    pub fn eval_at_s(&self, kind: TorusKind, p: u64) -> HeckeElement {
        let mut out = HeckeElement::zero(kind, p);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.add_term(Exponents::new(0, i as i64, 0), Scalar::from_rat(c.clone()));
        }
        out
    }
}

trait RatToF64 {
    fn to_string_f64(&self) -> f64;
}

impl RatToF64 for BigRational {
    fn to_string_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_f64().expect("rational fits in f64")
    }
}

/// The degree-two polynomial interpolating inverse local L-factors, together
/// with its value at `p^{-1/2}` and the involuted value.
#[derive(Clone, Debug)]
pub struct LFactor {
    pub kind: TorusKind,
    pub p: u64,
    /// Coefficients of `X^0, X^1, X^2`.
    pub poly: [HeckeElement; 3],
    /// `P(p^{-1/2})`, an element with `Z[1/p]` coefficients.
    pub at_half: HeckeElement,
    /// `P(p^{-1/2})` composed with the ring involution.
    pub at_half_involuted: HeckeElement,
}

/// `P(X) = 1 - p^{-1/2} T X + S X^2` (non-split), with `A^{-1}`, `A^{-2}`
/// twisting the coefficients in the split case.
pub fn lfactor_poly(kind: TorusKind, p: u64) -> LFactor {
    let one = HeckeElement::one(kind, p);
    let a_twist = |e: i64| -> i64 {
        match kind {
            TorusKind::NonSplit => 0,
            TorusKind::Split => e,
        }
    };
    let mut lin = HeckeElement::zero(kind, p);
    lin.add_term(Exponents::new(1, 0, a_twist(-1)), -Scalar::p_half_power(p, -1));
    let mut quad = HeckeElement::zero(kind, p);
    quad.add_term(Exponents::new(0, 1, a_twist(-2)), Scalar::one());

    // value at X = p^{-1/2}
    let at_half = one
        .add(&lin.scalar_mul(&Scalar::p_half_power(p, -1)))
        .and_then(|x| x.add(&quad.scalar_mul(&Scalar::p_power(p, -1))))
        .expect("same context");
    let at_half_involuted = at_half.involute();
    LFactor { kind, p, poly: [one, lin, quad], at_half, at_half_involuted }
}

/// Closed-form value of the (involuted) universal Shintani function at the
/// orbit of `n_H s(lambda)`.
pub fn shintani_universal_closed(lambda: u32, kind: TorusKind, p: u64) -> HeckeElement {
    if lambda == 0 {
        return HeckeElement::one(kind, p);
    }
    let lf = lfactor_poly(kind, p);
    match kind {
        TorusKind::NonSplit => {
            // (-mu_{-1,lambda}(S) - (p Sch^o_{lambda-1} - sum_m mu_{m,lambda}(S) Sch^o_m) P(p^{-1/2})) / (p+1)
            let mut bracket = mu_poly(-1, lambda, p).unwrap().eval_at_s(kind, p).neg();
            let mut inner = schur_circ(lambda - 1, kind, p).rat_mul(&crate::matrix::big(p as i64));
            for m in 0..=(lambda as i64 - 2) {
                let mus = mu_poly(m, lambda, p).unwrap().eval_at_s(kind, p);
                let term = mus.mul(&schur_circ(m as u32, kind, p)).expect("same context");
                inner = inner.sub(&term).expect("same context");
            }
            bracket = bracket
                .sub(&inner.mul(&lf.at_half).expect("same context"))
                .expect("same context");
            bracket.rat_mul(&BigRational::new(BigInt::one(), BigInt::from(p + 1)))
        }
        TorusKind::Split => {
            // A^lambda - ((p/(p-1)) A Sch^o_{lambda-1} + sum_m A^{lambda-m} Sch^o_m) P(p^{-1/2})
            let a_pow = |e: i64| HeckeElement::monomial(kind, p, Exponents::new(0, 0, e), Scalar::one());
            let mut inner = schur_circ(lambda - 1, kind, p)
                .mul(&a_pow(1))
                .expect("same context")
                .rat_mul(&BigRational::new(BigInt::from(p), BigInt::from(p - 1)));
            for m in 0..=(lambda as i64 - 2) {
                let term = schur_circ(m as u32, kind, p)
                    .mul(&a_pow(lambda as i64 - m))
                    .expect("same context");
                inner = inner.add(&term).expect("same context");
            }
            a_pow(lambda as i64)
                .sub(&inner.mul(&lf.at_half).expect("same context"))
                .expect("same context")
        }
    }
}

/// First-principles value: `involute(universal_operator(xi_idx))` scaled by
/// `1 / #H_Z(Z/p^lambda)`.
pub fn shintani_universal_engine(idx: &CosetIndex, cfg: &TorusConfig) -> Result<HeckeElement> {
    let xi = SphericalFunction::basis(*cfg, *idx)?;
    let op = universal_operator(&xi)?;
    let scale = BigRational::new(BigInt::one(), BigInt::from(imap_scale(idx, cfg)));
    Ok(op.involute().rat_mul(&scale))
}

/// Numeric local Shintani value at the orbit of `n_H s(lambda)` from the
/// explicit Satake-parameter formula.
pub fn shintani_local(lambda: u32, data: &SatakeData, kind: TorusKind) -> Result<Complex64> {
    data.check(kind, data.p)?;
    if lambda == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let p = data.p;
    let pf = p as f64;
    let alpha = data.alpha;
    let beta = data.beta;
    let ell = inverse_l_at_half(data, kind);
    if ell.norm() < 1e-12 {
        return Err(Error::Pole("local L-factor has a pole at the center".into()));
    }
    let hz = kind.hz_order(p) as f64;
    match kind {
        TorusKind::NonSplit => {
            let s = alpha * beta;
            let mut acc = -mu_poly(-1, lambda, p)?.eval_complex(s);
            acc -= pf
                * schur_value(lambda as i64 - 1, alpha, beta)
                * pf.powf(-((lambda as f64 - 1.0) / 2.0))
                * ell;
            for m in 0..=(lambda as i64 - 2) {
                acc += mu_poly(m, lambda, p)?.eval_complex(s)
                    * schur_value(m, alpha, beta)
                    * pf.powf(-(m as f64) / 2.0)
                    * ell;
            }
            Ok(acc / hz)
        }
        TorusKind::Split => {
            let delta = data.chi_a();
            let mut acc = delta.powi(lambda as i32);
            acc -= pf * delta * schur_value(lambda as i64 - 1, alpha, beta)
                * pf.powf(-((lambda as f64 - 1.0) / 2.0))
                * ell
                / hz;
            for m in 0..=(lambda as i64 - 2) {
                acc -= delta.powi((lambda as i64 - m) as i32)
                    * schur_value(m, alpha, beta)
                    * pf.powf(-(m as f64) / 2.0)
                    * ell;
            }
            Ok(acc)
        }
    }
}

/// `L^{H_p}(pi x chi, 1/2)^{-1}` as a number: the product
/// `(1 - alpha' p^{-1/2})(1 - beta' p^{-1/2})` with the split parameters
/// twisted by `chi_a^{-1}`.
pub fn inverse_l_at_half(data: &SatakeData, kind: TorusKind) -> Complex64 {
    let pf = data.p as f64;
    let twist = match kind {
        TorusKind::NonSplit => Complex64::new(1.0, 0.0),
        TorusKind::Split => data.chi_a().inv(),
    };
    let a = data.alpha * twist;
    let b = data.beta * twist;
    (Complex64::new(1.0, 0.0) - a / pf.sqrt()) * (Complex64::new(1.0, 0.0) - b / pf.sqrt())
}
