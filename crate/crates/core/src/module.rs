//! The convolution module of compactly supported functions on the double
//! coset space, with the universal-operator solver.
//!
//! Elements are finitely supported assignments `CosetIndex -> Scalar`. The
//! Hecke action is the integral `((phi (x) f) * xi)(x, y) = sum xi(x g, y h)`
//! over left-coset representatives `g` of `supp(phi)` and `h` of `supp(f)`,
//! evaluated at orbit representatives.
//!
//! Two implementations of the action by a Cartan cell `ch(G^o s(mu) G^o)`
//! are provided: a literal enumeration over coset matrices, and an exact
//! aggregation over valuation buckets of the coset families (the orbit label
//! of `n_H s(lambda') g` depends only on the valuations of the entries of
//! `g`, except for one split-case cancellation which the buckets refine).
//! Both are exact; the bucket path handles sizes like `p = 13, mu = 6`
//! where the coset list has millions of entries.

use crate::cosets::{
    cartan_polynomial, classify_pair, CosetIndex, TorusConfig,
};
use crate::error::{Error, Result};
use crate::matrix::GL2;
use crate::ring::{HeckeElement, RingGen, TorusKind};
use crate::scalar::Scalar;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Finitely supported function on the double-coset space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SphericalFunction {
    pub cfg: TorusConfig,
    support: BTreeMap<CosetIndex, Scalar>,
}

/// Integral lattice membership of a spherical function.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum LatticeClass {
    /// Values in `Z[1/p]`, with the `lambda = 0` stratum divisible by `#H_Z(F_p)`.
    L1,
    /// Values in `Z[1/p]`.
    L,
    Neither,
}

impl SphericalFunction {
    pub fn zero(cfg: TorusConfig) -> Self {
        SphericalFunction { cfg, support: BTreeMap::new() }
    }

    /// The characteristic function of a single orbit.
    pub fn basis(cfg: TorusConfig, idx: CosetIndex) -> Result<Self> {
        if !idx.matches(cfg.kind) {
            return Err(Error::ContextMismatch(format!(
                "index {idx:?} does not fit the {} torus",
                cfg.kind.name()
            )));
        }
        let mut f = Self::zero(cfg);
        f.add_term(idx, Scalar::one());
        Ok(f)
    }

    /// `xi_0`: the characteristic function of the base orbit.
    pub fn base_point(cfg: TorusConfig) -> Self {
        Self::basis(cfg, CosetIndex::base(cfg.kind)).expect("base index always fits")
    }

    pub fn add_term(&mut self, idx: CosetIndex, c: Scalar) {
        assert!(idx.matches(self.cfg.kind), "index shape must match the torus kind");
        if c.is_zero() {
            return;
        }
        let entry = self.support.entry(idx).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.support.remove(&idx);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (&CosetIndex, &Scalar)> {
        self.support.iter()
    }

    pub fn value(&self, idx: &CosetIndex) -> Scalar {
        self.support.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.support.len()
    }

    pub fn max_lambda(&self) -> u32 {
        self.support.keys().map(|i| i.lambda).max().unwrap_or(0)
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.cfg);
        for (idx, v) in self.support.iter() {
            out.add_term(*idx, v.mul_scalar(c, self.cfg.p));
        }
        out
    }

    pub fn rat_mul(&self, c: &BigRational) -> Self {
        self.scalar_mul(&Scalar::from_rat(c.clone()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (idx, v) in other.support.iter() {
            out.add_term(*idx, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (idx, v) in other.support.iter() {
            out.add_term(*idx, -v.clone());
        }
        Ok(out)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.cfg != other.cfg {
            return Err(Error::ContextMismatch("mixed torus configurations".into()));
        }
        Ok(())
    }

    /// Shift every index by `(da, db)`; the exact translation action of the
    /// invertible torus generators.
    pub fn index_shift(&self, da: i64, db: i64) -> Self {
        let mut out = Self::zero(self.cfg);
        for (idx, v) in self.support.iter() {
            let idx2 = CosetIndex { lambda: idx.lambda, a: idx.a + da, b: idx.b.map(|b| b + db) };
            out.add_term(idx2, v.clone());
        }
        out
    }

    /// Lattice membership: `L` needs all values in `Z[1/p]`; `L1` additionally
    /// needs the `lambda = 0` values divisible by `#H_Z(F_p)`.
    pub fn lattice_class(&self) -> LatticeClass {
        let p = self.cfg.p;
        if !self.support.values().all(|v| v.in_z1p(p)) {
            return LatticeClass::Neither;
        }
        let hz = BigRational::from_integer(self.cfg.kind.hz_order(p).into());
        let l1 = self
            .support
            .iter()
            .filter(|(idx, _)| idx.lambda == 0)
            .all(|(_, v)| v.clone().mul_rat(&hz.recip()).in_z1p(p));
        if l1 {
            LatticeClass::L1
        } else {
            LatticeClass::L
        }
    }
}

/// `#H_Z(Z/p^lambda)`: the scale relating the characteristic function of an
/// orbit to the corresponding single-coset class (1, then `(p -+ 1) p^{lambda-1}`).
pub fn imap_scale(idx: &CosetIndex, cfg: &TorusConfig) -> u64 {
    cfg.hz_order_mod(idx.lambda)
}

/// Generators accepted by [`convolve_generator`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConvGen {
    Ring(RingGen),
    /// `ch(G^o s(mu) G^o)`, acting through its left cosets.
    Cartan(u32),
}

/// Apply a single generator by convolution.
pub fn convolve_generator(gen: ConvGen, xi: &SphericalFunction) -> Result<SphericalFunction> {
    let kind = xi.cfg.kind;
    match gen {
        ConvGen::Cartan(mu) => Ok(convolve_cartan_shifted(mu, 0, xi)),
        ConvGen::Ring(RingGen::T) => Ok(convolve_cartan_shifted(1, 0, xi)),
        ConvGen::Ring(g) => {
            let (da, db) = match (g, kind) {
                (RingGen::S, TorusKind::NonSplit) | (RingGen::X, TorusKind::NonSplit) => (-1, 0),
                (RingGen::SInv, TorusKind::NonSplit) | (RingGen::XInv, TorusKind::NonSplit) => (1, 0),
                (RingGen::S, TorusKind::Split) => (0, -1),
                (RingGen::SInv, TorusKind::Split) => (0, 1),
                (RingGen::A, TorusKind::Split) => (-1, 0),
                (RingGen::AInv, TorusKind::Split) => (1, 0),
                (RingGen::B, TorusKind::Split) => (1, -1),
                (RingGen::BInv, TorusKind::Split) => (-1, 1),
                (g, kind) => return Err(Error::InvalidGenerator(format!("{g:?}"), kind.name())),
            };
            Ok(xi.index_shift(da, db))
        }
    }
}

/// Apply an arbitrary ring element: linear extension of monomial actions,
/// with `T^e` a repeated Cartan convolution and the unit generators exact
/// index shifts.
pub fn apply_hecke(x: &HeckeElement, xi: &SphericalFunction) -> Result<SphericalFunction> {
    if x.kind != xi.cfg.kind || x.p != xi.cfg.p {
        return Err(Error::ContextMismatch("ring element and module element disagree".into()));
    }
    let mut out = SphericalFunction::zero(xi.cfg);
    for (e, c) in x.terms() {
        let mut tmp = xi.clone();
        for _ in 0..e.t {
            tmp = convolve_cartan_shifted(1, 0, &tmp);
        }
        tmp = match xi.cfg.kind {
            TorusKind::NonSplit => tmp.index_shift(-e.s, 0),
            TorusKind::Split => tmp.index_shift(-e.a, -e.s),
        };
        out = out.add(&tmp.scalar_mul(c))?;
    }
    Ok(out)
}

/// Valuation bucket of the left cosets `[[p^a, beta], [0, p^c]] G^o` of a
/// Cartan cell: `j = v_p(beta)` (`None` for `beta = 0`) with multiplicity.
struct CosetBucket {
    a: i64,
    c: i64,
    j: Option<i64>,
    count: u64,
}

fn cartan_buckets(mu: u32, p: u64) -> Vec<CosetBucket> {
    if mu == 0 {
        return vec![CosetBucket { a: 0, c: 0, j: None, count: 1 }];
    }
    let phi = |e: u32| -> u64 {
        if e == 0 {
            1
        } else {
            p.pow(e) - p.pow(e - 1)
        }
    };
    let mut out = Vec::new();
    let m = mu as i64;
    // [[p^mu, beta], [0, 1]], beta mod p^mu
    for j in 0..mu {
        out.push(CosetBucket { a: m, c: 0, j: Some(j as i64), count: phi(mu - j) });
    }
    out.push(CosetBucket { a: m, c: 0, j: None, count: 1 });
    // [[p^i, beta], [0, p^{mu-i}]], unit beta mod p^i
    for i in 1..mu {
        out.push(CosetBucket { a: i as i64, c: m - i as i64, j: Some(0), count: phi(i) });
    }
    // [[1, 0], [0, p^mu]]
    out.push(CosetBucket { a: 0, c: m, j: None, count: 1 });
    out
}

/// Orbit label of an upper-triangular matrix with entry valuations
/// `(r1, r2, r3)` relative to the non-split torus (`r2 = None` when the
/// off-diagonal entry vanishes). Matches the constructive case analysis
/// behind the double-coset decomposition.
fn nonsplit_lambda_from_valuations(r1: i64, r2: Option<i64>, r3: i64) -> u32 {
    let lam = match r2 {
        None => (r1 - r3).abs(),
        Some(r2) if r2 >= r1 => (r1 - r3).abs(),
        Some(r2) if r2 > r3 => r1 - r3,
        Some(r2) => r1 + r3 - 2 * r2,
    };
    debug_assert!(lam >= 0);
    lam as u32
}

/// Convolution by the coset set `p^shift * (G^o s(mu) G^o)`, aggregated over
/// valuation buckets. `shift = -mu` gives the involuted cell
/// `ch(G^o s(mu)^{-1} G^o)`.
pub fn convolve_cartan_shifted(mu: u32, shift: i64, xi: &SphericalFunction) -> SphericalFunction {
    let cfg = xi.cfg;
    let p = cfg.p;
    let mut out = SphericalFunction::zero(cfg);
    if xi.is_zero() {
        return out;
    }
    let lam_hi = xi.max_lambda() + mu;
    let buckets = cartan_buckets(mu, p);
    let phi = |e: i64| -> u64 {
        debug_assert!(e >= 1);
        p.pow(e as u32) - p.pow(e as u32 - 1)
    };

    for lam_t in 0..=lam_hi {
        let lt = lam_t as i64;
        match cfg.kind {
            TorusKind::NonSplit => {
                // s(lam_t) * [[p^a, beta], [0, p^c]] = [[p^{lt+a}, p^lt beta], [0, p^c]]
                for b in &buckets {
                    let lam_src = nonsplit_lambda_from_valuations(lt + b.a, b.j.map(|j| lt + j), b.c);
                    // v(det) of the translated point, including the central shift
                    let det_v = lt + b.a + b.c + 2 * shift;
                    let diff = det_v - lam_src as i64;
                    debug_assert_eq!(diff.rem_euclid(2), 0);
                    for (idx, v) in xi.support.iter().filter(|(i, _)| i.lambda == lam_src) {
                        // a_src = a_target + diff/2
                        let a_t = idx.a - diff / 2;
                        let mut c = v.clone();
                        c *= &BigRational::from_integer(b.count.into());
                        out.add_term(CosetIndex::nonsplit(lam_t, a_t), c);
                    }
                }
            }
            TorusKind::Split => {
                // n0 s(lam_t) * [[p^a, beta], [0, p^c]]
                //   = [[p^{lt+a}, p^lt beta + p^c], [0, p^c]]
                // z = c + shift, r = lt + a - c; the orbit label is
                // max(0, (lt + a) - v(B)).
                let mut push = |vb: Option<i64>, count: u64, b: &CosetBucket| {
                    // vb = None encodes v(B) large enough that the unipotent
                    // coordinate is integral (orbit label 0).
                    let lam_src = match vb {
                        Some(vb) => ((lt + b.a) - vb).max(0) as u32,
                        None => 0,
                    };
                    let z = b.c + shift;
                    let r = lt + b.a - b.c;
                    for (idx, v) in xi.support.iter().filter(|(i, _)| i.lambda == lam_src) {
                        // a_src = (r - lam_src) + a_t, b_src = z + b_t
                        let a_t = idx.a - (r - lam_src as i64);
                        let b_t = idx.b.expect("split index") - z;
                        let mut c = v.clone();
                        c *= &BigRational::from_integer(count.into());
                        out.add_term(CosetIndex::split(lam_t, a_t, b_t), c);
                    }
                };
                for b in &buckets {
                    match b.j {
                        None => {
                            // B = p^c exactly (for mu = 0 the entry is the unit of n0).
                            push(Some(b.c), b.count, b);
                        }
                        Some(j) if lt + j != b.c => {
                            push(Some((lt + j).min(b.c)), b.count, b);
                        }
                        Some(j) => {
                            // Cancellation p^lt beta + p^c with v(p^lt beta) = c:
                            // refine by t = v(w + 1) over the unit part w of beta,
                            // which runs over the units mod p^{a-j}.
                            let width = b.a - j;
                            debug_assert!(width >= 1);
                            debug_assert_eq!(b.count, phi(width) * 1);
                            for t in 0..width {
                                let cnt = if t == 0 {
                                    // units with w != -1 mod p
                                    p.pow(width as u32) - 2 * p.pow(width as u32 - 1)
                                } else {
                                    phi(width - t)
                                };
                                push(Some(b.c + t), cnt, b);
                            }
                            // w = -1 mod p^{a-j}: v(B) >= c + (a-j), unipotent
                            // coordinate integral.
                            push(None, 1, b);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Literal coset-level convolution: `cosets` are the left-coset translates of
/// the group-side support, `inv_cosets` of its inverse (used to locate the
/// support of the result), `h` the single torus translate.
pub fn convolve_coset_list(
    cosets: &[GL2],
    inv_cosets: &[GL2],
    h: &GL2,
    xi: &SphericalFunction,
) -> Result<SphericalFunction> {
    let cfg = xi.cfg;
    let h_inv = h.inv()?;
    let mut candidates: Vec<CosetIndex> = Vec::new();
    for (idx, _) in xi.support.iter() {
        let (x, y) = idx.representative(&cfg);
        let y_shift = y.mul(&h_inv);
        for d in inv_cosets {
            let cand = classify_pair(&x.mul(d), &y_shift, &cfg)?;
            if !candidates.contains(&cand) {
                candidates.push(cand);
            }
        }
    }
    let mut out = SphericalFunction::zero(cfg);
    for cand in candidates {
        let (x, y) = cand.representative(&cfg);
        let y_trans = y.mul(h);
        let mut total = Scalar::zero();
        for g in cosets {
            let src = classify_pair(&x.mul(g), &y_trans, &cfg)?;
            total += &xi.value(&src);
        }
        out.add_term(cand, total);
    }
    Ok(out)
}

/// The unique ring element carrying the base point to `xi_{lambda,0[,0]}`.
///
/// Non-split: the involuted Cartan element does it on the nose. Split: the
/// convolution of the involuted Cartan element with the base point also hits
/// lower strata, which are eliminated recursively (highest stratum first, the
/// `a`/`b` displacements being unit translations).
fn basis_operator(cfg: TorusConfig, lambda: u32, cache: &mut Vec<Option<HeckeElement>>) -> HeckeElement {
    if let Some(op) = &cache[lambda as usize] {
        return op.clone();
    }
    let op = match cfg.kind {
        TorusKind::NonSplit => cartan_polynomial(lambda, cfg.kind, cfg.p).involute(),
        TorusKind::Split => {
            if lambda == 0 {
                HeckeElement::one(cfg.kind, cfg.p)
            } else {
                let base = SphericalFunction::base_point(cfg);
                let image = convolve_cartan_shifted(lambda, -(lambda as i64), &base);
                let top = CosetIndex::split(lambda, 0, 0);
                debug_assert_eq!(image.value(&top), Scalar::one());
                let mut op = cartan_polynomial(lambda, cfg.kind, cfg.p).involute();
                for (idx, v) in image.support() {
                    if *idx == top {
                        continue;
                    }
                    debug_assert!(idx.lambda < lambda);
                    let lower = basis_operator(cfg, idx.lambda, cache);
                    let translated = lower.shift(0, -idx.b.expect("split"), -idx.a);
                    op = op.sub(&translated.scalar_mul(v)).expect("same context");
                }
                op
            }
        }
    };
    cache[lambda as usize] = Some(op.clone());
    op
}

/// Solve `P * xi_0 = xi` for `P` (the module is free of rank one over the
/// quotient ring, so `P` exists and is unique).
pub fn universal_operator(xi: &SphericalFunction) -> Result<HeckeElement> {
    let cfg = xi.cfg;
    let mut cache: Vec<Option<HeckeElement>> = vec![None; (xi.max_lambda() + 1) as usize];
    let mut out = HeckeElement::zero(cfg.kind, cfg.p);
    for (idx, v) in xi.support.iter() {
        let op = basis_operator(cfg, idx.lambda, &mut cache);
        let translated = match cfg.kind {
            TorusKind::NonSplit => op.shift(0, -idx.a, 0),
            TorusKind::Split => op.shift(0, -idx.b.expect("split"), -idx.a),
        };
        out = out.add(&translated.scalar_mul(v))?;
    }
    Ok(out)
}

/// Serialization mirror of [`SphericalFunction`].
#[derive(Serialize, Deserialize)]
struct SupportTermRepr {
    lambda: u32,
    a: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<i64>,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct SphericalFunctionRepr {
    torus: TorusKind,
    p: u64,
    support: Vec<SupportTermRepr>,
}

impl Serialize for SphericalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let support = self
            .support
            .iter()
            .map(|(i, c)| SupportTermRepr { lambda: i.lambda, a: i.a, b: i.b, coeff: c.clone() })
            .collect();
        SphericalFunctionRepr { torus: self.cfg.kind, p: self.cfg.p, support }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SphericalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SphericalFunctionRepr::deserialize(d)?;
        let cfg = TorusConfig::new(repr.torus, repr.p);
        let mut out = SphericalFunction::zero(cfg);
        for term in repr.support {
            let idx = CosetIndex { lambda: term.lambda, a: term.a, b: term.b };
            if !idx.matches(cfg.kind) {
                return Err(serde::de::Error::custom("index shape does not match torus"));
            }
            out.add_term(idx, term.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::{cartan_cosets, tpk_cosets};
    use crate::matrix::p_pow;
    use crate::ring::Exponents;

    fn nonsplit(p: u64) -> TorusConfig {
        TorusConfig::nonsplit(p)
    }

    fn split(p: u64) -> TorusConfig {
        TorusConfig::split(p)
    }

    #[test]
    fn s_translation_on_base_point() {
        let cfg = nonsplit(5);
        let base = SphericalFunction::base_point(cfg);
        let mut xi = base.clone();
        for a in 1..4i64 {
            xi = convolve_generator(ConvGen::Ring(RingGen::SInv), &xi).unwrap();
            let mut expected = SphericalFunction::zero(cfg);
            expected.add_term(CosetIndex::nonsplit(0, a), Scalar::one());
            assert_eq!(xi, expected);
        }
    }

    #[test]
    fn nonsplit_cartan_identity_small() {
        for p in [3u64, 5] {
            let cfg = nonsplit(p);
            let base = SphericalFunction::base_point(cfg);
            for lambda in 1..5u32 {
                let image = convolve_cartan_shifted(lambda, -(lambda as i64), &base);
                let mut expected = SphericalFunction::zero(cfg);
                expected.add_term(CosetIndex::nonsplit(lambda, 0), Scalar::one());
                assert_eq!(image, expected, "p={p} lambda={lambda}");
            }
        }
    }

    #[test]
    fn split_cartan_identity_lambda_one() {
        let cfg = split(5);
        let base = SphericalFunction::base_point(cfg);
        let image = convolve_cartan_shifted(1, -1, &base);
        let mut expected = SphericalFunction::zero(cfg);
        expected.add_term(CosetIndex::split(1, 0, 0), Scalar::one());
        expected.add_term(CosetIndex::split(0, 1, 0), Scalar::one());
        expected.add_term(CosetIndex::split(0, -1, 1), Scalar::one());
        assert_eq!(image, expected);
    }

    #[test]
    fn bucket_path_matches_coset_path() {
        for p in [3u64, 5] {
            for cfg in [nonsplit(p), split(p)] {
                let mut xi = SphericalFunction::base_point(cfg);
                // a slightly lopsided test function
                let idx = match cfg.kind {
                    TorusKind::NonSplit => CosetIndex::nonsplit(1, -1),
                    TorusKind::Split => CosetIndex::split(1, 2, -1),
                };
                xi.add_term(idx, Scalar::from_frac(3, 7));
                for mu in 0..3u32 {
                    let fast = convolve_cartan_shifted(mu, 0, &xi);
                    let cosets = cartan_cosets(mu, p);
                    let inv: Vec<GL2> =
                        cosets.iter().map(|g| g.scale(&p_pow(p, -(mu as i64)))).collect();
                    let slow =
                        convolve_coset_list(&cosets, &inv, &GL2::identity(p), &xi).unwrap();
                    assert_eq!(fast, slow, "p={p} kind={:?} mu={mu}", cfg.kind);

                    // and the involuted cell
                    let fast_inv = convolve_cartan_shifted(mu, -(mu as i64), &xi);
                    let slow_inv = convolve_coset_list(&inv, &cosets, &GL2::identity(p), &xi).unwrap();
                    assert_eq!(fast_inv, slow_inv, "involuted p={p} kind={:?} mu={mu}", cfg.kind);
                }
            }
        }
    }

    #[test]
    fn module_law_on_samples() {
        for cfg in [nonsplit(3), split(3)] {
            let base = SphericalFunction::base_point(cfg);
            let t = HeckeElement::generator(cfg.kind, cfg.p, RingGen::T).unwrap();
            let s = HeckeElement::generator(cfg.kind, cfg.p, RingGen::S).unwrap();
            let ts = t.mul(&s).unwrap();
            let lhs = apply_hecke(&ts, &base).unwrap();
            let rhs = apply_hecke(&t, &apply_hecke(&s, &base).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let t2 = t.mul(&t).unwrap();
            assert_eq!(
                apply_hecke(&t2, &base).unwrap(),
                apply_hecke(&t, &apply_hecke(&t, &base).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn universal_operator_round_trip() {
        for cfg in [nonsplit(3), split(3), nonsplit(5), split(5)] {
            let base = SphericalFunction::base_point(cfg);
            let mut xi = SphericalFunction::zero(cfg);
            let indices: Vec<CosetIndex> = match cfg.kind {
                TorusKind::NonSplit => {
                    vec![CosetIndex::nonsplit(2, 1), CosetIndex::nonsplit(1, -1), CosetIndex::nonsplit(0, 0)]
                }
                TorusKind::Split => {
                    vec![CosetIndex::split(2, 0, 1), CosetIndex::split(1, -1, 0), CosetIndex::split(0, 2, -1)]
                }
            };
            for (k, idx) in indices.into_iter().enumerate() {
                xi.add_term(idx, Scalar::from_frac(k as i64 + 1, 3));
            }
            let op = universal_operator(&xi).unwrap();
            assert_eq!(apply_hecke(&op, &base).unwrap(), xi);
        }
    }

    #[test]
    fn universal_operator_examples() {
        let cfg = nonsplit(5);
        // xi_{0,a} -> S^{-a}
        let xi = SphericalFunction::basis(cfg, CosetIndex::nonsplit(0, 2)).unwrap();
        let op = universal_operator(&xi).unwrap();
        assert_eq!(op, HeckeElement::one(cfg.kind, cfg.p).shift(0, -2, 0));
        // xi_{2,0} -> S^{-2}(T^2 - (p+1)S)
        let xi = SphericalFunction::basis(cfg, CosetIndex::nonsplit(2, 0)).unwrap();
        let op = universal_operator(&xi).unwrap();
        let c2 = cartan_polynomial(2, cfg.kind, cfg.p);
        assert_eq!(op, c2.shift(0, -2, 0));

        // split xi_{1,0,0} -> involute(C_1) - A^{-1} - A S^{-1}
        let cfg = split(5);
        let xi = SphericalFunction::basis(cfg, CosetIndex::split(1, 0, 0)).unwrap();
        let op = universal_operator(&xi).unwrap();
        let mut expected = cartan_polynomial(1, cfg.kind, cfg.p).involute();
        expected.add_term(Exponents::new(0, 0, -1), -Scalar::one());
        expected.add_term(Exponents::new(0, -1, 1), -Scalar::one());
        assert_eq!(op, expected);
    }

    #[test]
    fn lattice_classes() {
        let cfg = nonsplit(5);
        let p1 = Scalar::from_int(cfg.p as i64 + 1);
        let xi = SphericalFunction::basis(cfg, CosetIndex::nonsplit(3, 1)).unwrap();
        assert_eq!(xi.lattice_class(), LatticeClass::L1);
        let xi0 = SphericalFunction::base_point(cfg);
        assert_eq!(xi0.lattice_class(), LatticeClass::L);
        assert_eq!(xi0.scalar_mul(&p1).lattice_class(), LatticeClass::L1);
        assert_eq!(xi0.scalar_mul(&Scalar::from_frac(1, 3)).lattice_class(), LatticeClass::Neither);
        assert_eq!(
            xi0.scalar_mul(&Scalar::p_half_power(cfg.p, -3)).lattice_class(),
            LatticeClass::Neither
        );
    }

    #[test]
    fn imap_scales() {
        assert_eq!(imap_scale(&CosetIndex::nonsplit(0, 0), &nonsplit(7)), 1);
        assert_eq!(imap_scale(&CosetIndex::nonsplit(1, 0), &nonsplit(7)), 8);
        assert_eq!(imap_scale(&CosetIndex::split(3, 0, 0), &split(5)), 100);
    }

    #[test]
    fn tpk_set_action_matches_polynomial_action() {
        // the full determinant-p^k set acts like its T,S-polynomial
        for p in [3u64] {
            for cfg in [nonsplit(p), split(p)] {
                let base = SphericalFunction::base_point(cfg);
                for k in 1..4u32 {
                    let cosets = tpk_cosets(k, p);
                    let inv: Vec<GL2> =
                        cosets.iter().map(|g| g.scale(&p_pow(p, -(k as i64)))).collect();
                    let lhs =
                        convolve_coset_list(&cosets, &inv, &GL2::identity(p), &base).unwrap();
                    let poly = crate::cosets::tpk_polynomial(k, cfg.kind, p);
                    let rhs = apply_hecke(&poly, &base).unwrap();
                    assert_eq!(lhs, rhs, "p={p} kind={:?} k={k}", cfg.kind);
                }
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let cfg = split(3);
        let mut xi = SphericalFunction::base_point(cfg);
        xi.add_term(CosetIndex::split(2, -1, 3), Scalar::from_frac(7, 9));
        let json = serde_json::to_string(&xi).unwrap();
        let back: SphericalFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(xi, back);
    }
}
