//! The spherical Hecke rings as exact Laurent-polynomial rings.
//!
//! For the non-split torus the ring is `Z[1/p]`-spanned by monomials
//! `T^e S^f` (the relation `X = S` eliminates the torus generator); for the
//! split torus an extra `A^g` survives (`B = S A^{-1}`). The exponent of `T`
//! is always nonnegative: `T` is not invertible in the spherical algebra.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Which unramified maximal torus the computation is relative to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Hash, PartialOrd, Ord)]
pub enum TorusKind {
    #[serde(rename = "nonsplit")]
    NonSplit,
    #[serde(rename = "split")]
    Split,
}

impl TorusKind {
    pub fn name(self) -> &'static str {
        match self {
            TorusKind::NonSplit => "nonsplit",
            TorusKind::Split => "split",
        }
    }

    /// `#H_Z(F_p)`: p+1 in the non-split case, p-1 in the split case.
    pub fn hz_order(self, p: u64) -> u64 {
        match self {
            TorusKind::NonSplit => p + 1,
            TorusKind::Split => p - 1,
        }
    }
}

/// Monomial exponents in canonical form. `t >= 0` always; `a == 0` for the
/// non-split torus.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Exponents {
    pub t: u32,
    pub s: i64,
    pub a: i64,
}

impl Exponents {
    pub fn new(t: u32, s: i64, a: i64) -> Self {
        Exponents { t, s, a }
    }
}

/// Sparse element of the quotient Hecke ring, in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    pub kind: TorusKind,
    pub p: u64,
    terms: BTreeMap<Exponents, Scalar>,
}

/// The multiplicative generators accepted by constructors and the module
/// action. `X` reduces to `S` (non-split) and `B` to `S A^{-1}` (split).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingGen {
    T,
    S,
    SInv,
    A,
    AInv,
    B,
    BInv,
    X,
    XInv,
}

impl HeckeElement {
    pub fn zero(kind: TorusKind, p: u64) -> Self {
        HeckeElement { kind, p, terms: BTreeMap::new() }
    }

    pub fn one(kind: TorusKind, p: u64) -> Self {
        Self::monomial(kind, p, Exponents::new(0, 0, 0), Scalar::one())
    }

    pub fn monomial(kind: TorusKind, p: u64, e: Exponents, c: Scalar) -> Self {
        let mut x = Self::zero(kind, p);
        x.add_term(e, c);
        x
    }

    /// Scalar as a ring element.
    pub fn constant(kind: TorusKind, p: u64, c: Scalar) -> Self {
        Self::monomial(kind, p, Exponents::new(0, 0, 0), c)
    }

    /// A single generator in canonical form.
    pub fn generator(kind: TorusKind, p: u64, g: RingGen) -> Result<Self> {
        let e = match (g, kind) {
            (RingGen::T, _) => Exponents::new(1, 0, 0),
            (RingGen::S, _) => Exponents::new(0, 1, 0),
            (RingGen::SInv, _) => Exponents::new(0, -1, 0),
            (RingGen::X, TorusKind::NonSplit) => Exponents::new(0, 1, 0),
            (RingGen::XInv, TorusKind::NonSplit) => Exponents::new(0, -1, 0),
            (RingGen::A, TorusKind::Split) => Exponents::new(0, 0, 1),
            (RingGen::AInv, TorusKind::Split) => Exponents::new(0, 0, -1),
            (RingGen::B, TorusKind::Split) => Exponents::new(0, 1, -1),
            (RingGen::BInv, TorusKind::Split) => Exponents::new(0, -1, 1),
            (g, kind) => return Err(Error::InvalidGenerator(format!("{g:?}"), kind.name())),
        };
        Ok(Self::monomial(kind, p, e, Scalar::one()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponents) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    fn check_exponents(&self, e: &Exponents) {
        if self.kind == TorusKind::NonSplit {
            assert_eq!(e.a, 0, "non-split elements have no A exponent");
        }
    }

    /// Add `c * monomial(e)`, dropping the term if the total vanishes.
    pub fn add_term(&mut self, e: Exponents, c: Scalar) {
        self.check_exponents(&e);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn same_context(&self, other: &HeckeElement) -> Result<()> {
        if self.p != other.p || self.kind != other.kind {
            return Err(Error::ContextMismatch(format!(
                "({}, p={}) vs ({}, p={})",
                self.kind.name(),
                self.p,
                other.kind.name(),
                other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(*e, -c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.same_context(other)?;
        let mut out = Self::zero(self.kind, self.p);
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in other.terms.iter() {
                let e = Exponents::new(e1.t + e2.t, e1.s + e2.s, e1.a + e2.a);
                out.add_term(e, c1.mul_scalar(c2, self.p));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Scalar) -> HeckeElement {
        let mut out = Self::zero(self.kind, self.p);
        for (e, v) in self.terms.iter() {
            out.add_term(*e, v.mul_scalar(c, self.p));
        }
        out
    }

    pub fn rat_mul(&self, c: &BigRational) -> HeckeElement {
        self.scalar_mul(&Scalar::from_rat(c.clone()))
    }

    pub fn neg(&self) -> HeckeElement {
        self.rat_mul(&-BigRational::from_integer(1.into()))
    }

    /// Multiply by the monomial `T^t S^s A^a` (t must keep exponents >= 0).
    pub fn shift(&self, t: i64, s: i64, a: i64) -> HeckeElement {
        let mut out = Self::zero(self.kind, self.p);
        for (e, c) in self.terms.iter() {
            let nt = e.t as i64 + t;
            assert!(nt >= 0, "T is not invertible in the spherical Hecke algebra");
            out.add_term(Exponents::new(nt as u32, e.s + s, e.a + a), c.clone());
        }
        out
    }

    /// The involution induced by `g -> g^{-1}`: `S -> S^{-1}`, `A -> A^{-1}`,
    /// `T -> S^{-1} T`. It is a ring automorphism of order two.
    pub fn involute(&self) -> HeckeElement {
        let mut out = Self::zero(self.kind, self.p);
        for (e, c) in self.terms.iter() {
            let ne = Exponents::new(e.t, -(e.t as i64) - e.s, -e.a);
            out.add_term(ne, c.clone());
        }
        out
    }

    /// True iff `m * self` has all coefficients in `Z[1/p]`.
    ///
    /// `m` must be coprime to `p` (p is already a unit, so a p-divisible `m`
    /// would make the test vacuous).
    pub fn denominator_bound(&self, m: u64) -> Result<bool> {
        if m == 0 || m % self.p == 0 {
            return Err(Error::Domain(format!(
                "denominator bound {m} must be a positive integer coprime to p = {}",
                self.p
            )));
        }
        let mrat = BigRational::from_integer(m.into());
        Ok(self
            .terms
            .values()
            .all(|c| c.clone().mul_rat(&mrat).in_z1p(self.p)))
    }

    /// Numeric spherical eigensystem evaluation.
    pub fn specialize(&self, data: &SatakeData) -> Result<Complex64> {
        data.check(self.kind, self.p)?;
        let sqrt_p = (self.p as f64).sqrt();
        let theta_t = sqrt_p * (data.alpha + data.beta);
        let theta_s = data.alpha * data.beta;
        let theta_a = data.chi_a();
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms.iter() {
            let mut v = c.to_complex(self.p);
            v *= theta_t.powi(e.t as i32);
            v *= theta_s.powi(e.s as i32);
            if self.kind == TorusKind::Split {
                v *= theta_a.powi(e.a as i32);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Exact eigensystem evaluation in `Q(sqrt(p))`, available when the images
    /// of the generators are rational: `T -> t`, `S -> s`, `A -> chi_a`.
    pub fn specialize_exact(
        &self,
        t: &BigRational,
        s: &BigRational,
        chi_a: Option<&BigRational>,
    ) -> Result<Scalar> {
        if s.is_zero() {
            return Err(Error::Domain("S must map to a unit".into()));
        }
        if self.kind == TorusKind::Split && chi_a.map_or(true, |c| c.is_zero()) {
            return Err(Error::Domain("split specialization needs a unit value for A".into()));
        }
        let mut acc = Scalar::zero();
        for (e, c) in self.terms.iter() {
            let mut v = rat_power(t, e.t as i64);
            v *= rat_power(s, e.s);
            if self.kind == TorusKind::Split {
                v *= rat_power(chi_a.unwrap(), e.a);
            }
            acc += &c.clone().mul_rat(&v);
        }
        Ok(acc)
    }
}

fn rat_power(x: &BigRational, e: i64) -> BigRational {
    let mut out = BigRational::from_integer(1.into());
    let base = if e < 0 { x.recip() } else { x.clone() };
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    out
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if e.t != 0 {
                write!(f, "*T^{}", e.t)?;
            }
            if e.s != 0 {
                write!(f, "*S^{}", e.s)?;
            }
            if e.a != 0 {
                write!(f, "*A^{}", e.a)?;
            }
        }
        Ok(())
    }
}

/// Satake parameters together with the unramified torus character values.
///
/// The central-character constraint ties them together: `alpha*beta` must
/// equal the character of the torus at the central element `p`.
#[derive(Clone, Debug)]
pub struct SatakeData {
    pub p: u64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub chi: TorusChi,
}

/// Unramified character data of the torus at its standard generators.
#[derive(Clone, Debug)]
pub enum TorusChi {
    /// chi_p(p) for the non-split torus.
    NonSplit { chi_center: Complex64 },
    /// chi_p(diag(p,1)) and chi_p(diag(1,p)) for the split torus.
    Split { chi_a: Complex64, chi_b: Complex64 },
}

const CENTRAL_TOL: f64 = 1e-9;

impl SatakeData {
    pub fn new_nonsplit(p: u64, alpha: Complex64, beta: Complex64) -> Self {
        SatakeData { p, alpha, beta, chi: TorusChi::NonSplit { chi_center: alpha * beta } }
    }

    pub fn new_split(p: u64, alpha: Complex64, beta: Complex64, chi_a: Complex64) -> Self {
        let chi_b = alpha * beta / chi_a;
        SatakeData { p, alpha, beta, chi: TorusChi::Split { chi_a, chi_b } }
    }

    pub fn kind(&self) -> TorusKind {
        match self.chi {
            TorusChi::NonSplit { .. } => TorusKind::NonSplit,
            TorusChi::Split { .. } => TorusKind::Split,
        }
    }

    /// chi_p(diag(p,1)) in the split case (the delta of the local formulas).
    pub fn chi_a(&self) -> Complex64 {
        match self.chi {
            TorusChi::NonSplit { .. } => Complex64::new(1.0, 0.0),
            TorusChi::Split { chi_a, .. } => chi_a,
        }
    }

    pub fn chi_b(&self) -> Complex64 {
        match self.chi {
            TorusChi::NonSplit { .. } => Complex64::new(1.0, 0.0),
            TorusChi::Split { chi_b, .. } => chi_b,
        }
    }

    /// chi_p at the central element p.
    pub fn chi_center(&self) -> Complex64 {
        match self.chi {
            TorusChi::NonSplit { chi_center } => chi_center,
            TorusChi::Split { chi_a, chi_b } => chi_a * chi_b,
        }
    }

    pub fn check(&self, kind: TorusKind, p: u64) -> Result<()> {
        if self.kind() != kind || self.p != p {
            return Err(Error::ContextMismatch(format!(
                "satake data for ({}, p={}) used with ({}, p={})",
                self.kind().name(),
                self.p,
                kind.name(),
                p
            )));
        }
        let lhs = self.alpha * self.beta;
        if (lhs - self.chi_center()).norm() > CENTRAL_TOL * (1.0 + lhs.norm()) {
            return Err(Error::CentralCharacter);
        }
        Ok(())
    }
}

/// JSON wire format for ring elements.
#[derive(Serialize, Deserialize)]
struct HeckeTermRepr {
    #[serde(rename = "T")]
    t: u32,
    #[serde(rename = "S")]
    s: i64,
    #[serde(rename = "A", default, skip_serializing_if = "is_zero_i64")]
    a: i64,
    coeff: Scalar,
}

fn is_zero_i64(x: &i64) -> bool {
    *x == 0
}

#[derive(Serialize, Deserialize)]
struct HeckeElementRepr {
    p: u64,
    torus: TorusKind,
    terms: Vec<HeckeTermRepr>,
}

impl Serialize for HeckeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| HeckeTermRepr { t: e.t, s: e.s, a: e.a, coeff: c.clone() })
            .collect();
        HeckeElementRepr { p: self.p, torus: self.kind, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeckeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = HeckeElementRepr::deserialize(d)?;
        let mut out = HeckeElement::zero(repr.torus, repr.p);
        for term in repr.terms {
            if repr.torus == TorusKind::NonSplit && term.a != 0 {
                return Err(serde::de::Error::custom("non-split element with A exponent"));
            }
            out.add_term(Exponents::new(term.t, term.s, term.a), term.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(kind: TorusKind, p: u64) -> HeckeElement {
        HeckeElement::generator(kind, p, RingGen::T).unwrap()
    }

    #[test]
    fn additive_doubling() {
        let p = 5;
        let ts_inv = t(TorusKind::NonSplit, p).shift(0, -1, 0);
        let sum = ts_inv.add(&ts_inv).unwrap();
        assert_eq!(sum.coeff(&Exponents::new(1, -1, 0)), Scalar::from_int(2));
        assert_eq!(sum.num_terms(), 1);
    }

    #[test]
    fn quotient_relations() {
        let p = 7;
        // split: A * B = S
        let a = HeckeElement::generator(TorusKind::Split, p, RingGen::A).unwrap();
        let b = HeckeElement::generator(TorusKind::Split, p, RingGen::B).unwrap();
        let s = HeckeElement::generator(TorusKind::Split, p, RingGen::S).unwrap();
        assert_eq!(a.mul(&b).unwrap(), s);
        // non-split: X^2 = S^2
        let x = HeckeElement::generator(TorusKind::NonSplit, p, RingGen::X).unwrap();
        let s2 = HeckeElement::generator(TorusKind::NonSplit, p, RingGen::S)
            .unwrap()
            .mul(&HeckeElement::generator(TorusKind::NonSplit, p, RingGen::S).unwrap())
            .unwrap();
        assert_eq!(x.mul(&x).unwrap(), s2);
    }

    #[test]
    fn involution_on_generators() {
        let p = 5;
        let s = HeckeElement::generator(TorusKind::NonSplit, p, RingGen::S).unwrap();
        assert_eq!(s.involute(), HeckeElement::generator(TorusKind::NonSplit, p, RingGen::SInv).unwrap());
        // T' = S^{-1} T
        let tt = t(TorusKind::NonSplit, p);
        assert_eq!(tt.involute(), tt.shift(0, -1, 0));
        // T^2 - (p+1) S  ->  S^{-2} T^2 - (p+1) S^{-1}
        let mut x = tt.mul(&tt).unwrap();
        x.add_term(Exponents::new(0, 1, 0), Scalar::from_int(-(p as i64) - 1));
        let mut expected = tt.mul(&tt).unwrap().shift(0, -2, 0);
        expected.add_term(Exponents::new(0, -1, 0), Scalar::from_int(-(p as i64) - 1));
        assert_eq!(x.involute(), expected);
        // involutive
        assert_eq!(x.involute().involute(), x);
    }

    #[test]
    fn specialize_generators() {
        let p = 5;
        let data = SatakeData::new_nonsplit(p, Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        let v = t(TorusKind::NonSplit, p).specialize(&data).unwrap();
        assert!((v - Complex64::new(2.0 * 5f64.sqrt(), 0.0)).norm() < 1e-12);

        let data = SatakeData::new_nonsplit(p, Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0));
        let s = HeckeElement::generator(TorusKind::NonSplit, p, RingGen::S).unwrap();
        assert!((s.specialize(&data).unwrap() - Complex64::new(6.0, 0.0)).norm() < 1e-12);

        // split: A*B specializes to chi_a * chi_b = alpha * beta
        let data = SatakeData::new_split(
            p,
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(0.0, 1.0),
        );
        let ab = HeckeElement::generator(TorusKind::Split, p, RingGen::A)
            .unwrap()
            .mul(&HeckeElement::generator(TorusKind::Split, p, RingGen::B).unwrap())
            .unwrap();
        assert!((ab.specialize(&data).unwrap() - Complex64::new(6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn central_character_violation_is_rejected() {
        let p = 5;
        let mut data =
            SatakeData::new_nonsplit(p, Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0));
        data.chi = TorusChi::NonSplit { chi_center: Complex64::new(1.0, 0.0) };
        let s = HeckeElement::generator(TorusKind::NonSplit, p, RingGen::S).unwrap();
        assert!(matches!(s.specialize(&data), Err(crate::error::Error::CentralCharacter)));
    }

    #[test]
    fn denominator_bound_examples() {
        let p = 5u64;
        let x = t(TorusKind::NonSplit, p).rat_mul(&BigRational::new(1.into(), (p as i64 + 1).into()));
        assert!(x.denominator_bound(p + 1).unwrap());
        assert!(!x.denominator_bound(1).unwrap());
        let y = t(TorusKind::NonSplit, p).scalar_mul(&Scalar::p_half_power(p, 1));
        assert!(!y.denominator_bound(1).unwrap());
        assert!(x.denominator_bound(p).is_err());
    }

    #[test]
    fn cancellation_empties_term_set() {
        let p = 3;
        let x = t(TorusKind::Split, p).shift(0, 2, -1);
        let zero = x.sub(&x).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.num_terms(), 0);
    }

    #[test]
    fn serde_round_trip() {
        let p = 3;
        let mut x = t(TorusKind::Split, p).shift(0, -2, 1);
        x.add_term(Exponents::new(0, 0, 0), Scalar::from_frac(-7, 8));
        let json = serde_json::to_string(&x).unwrap();
        let back: HeckeElement = serde_json::from_str(&json).unwrap();
        assert_eq!(x, back);
    }
}
