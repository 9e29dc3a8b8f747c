//! Constructive membership certificates for the obstruction ideal
//! `(#H_Z(F_p), T)` (non-split) resp. `(#H_Z(F_p), P'(p^{-1/2}))` (split)
//! of the integral Hecke ring, together with a sound-and-complete decision
//! procedure in the non-split case.

use crate::cosets::{cartan_polynomial, tpk_polynomial, CosetIndex, TorusConfig};
use crate::error::{Error, Result};
use crate::module::{universal_operator, LatticeClass, SphericalFunction};
use crate::ring::{Exponents, HeckeElement, TorusKind};
use crate::scalar::{prime_to_p_part, Scalar};
use crate::shintani::{lfactor_poly, schur_circ};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

/// Witness for `target = u * g1 + v * g2` with `g1 = #H_Z(F_p)` and `g2` the
/// ring generator of the ideal.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub u: HeckeElement,
    pub v: HeckeElement,
    pub g1: u64,
    pub g2: HeckeElement,
    pub target: HeckeElement,
}

/// Exact re-expansion check of the certificate identity.
pub fn verify_certificate(c: &Certificate) -> bool {
    let g1 = HeckeElement::constant(c.u.kind, c.u.p, Scalar::from_int(c.g1 as i64));
    let lhs = c
        .u
        .mul(&g1)
        .and_then(|x| c.v.mul(&c.g2).and_then(|y| x.add(&y)));
    match lhs {
        Ok(lhs) => lhs == c.target,
        Err(_) => false,
    }
}

/// The ring generator `g2` of the ideal for each torus kind: `T` in the
/// non-split case, the involuted L-factor value in the split case.
pub fn ideal_generator(kind: TorusKind, p: u64) -> HeckeElement {
    match kind {
        TorusKind::NonSplit => {
            HeckeElement::monomial(kind, p, Exponents::new(1, 0, 0), Scalar::one())
        }
        TorusKind::Split => lfactor_poly(kind, p).at_half_involuted,
    }
}

/// Certificate for `C_lambda` in `(p+1, T)`, built by the inductive
/// rewriting `C_lambda = T T(p^{lambda-1}) - p S T(p^{lambda-2})
/// - sum_j S^j C_{lambda-2j}`: the `T(p^{lambda-1})` factor feeds `v`, the
/// lower Cartan elements recurse, and the constant terms pair up into exact
/// `(p+1)` multiples.
pub fn cartan_certificate(lambda: u32, p: u64) -> Result<Certificate> {
    if lambda == 0 {
        return Err(Error::Domain("the lambda = 0 cell is the unit, not in the ideal".into()));
    }
    let kind = TorusKind::NonSplit;
    let cache = build_cartan_certificates(lambda, p);
    let (u, v) = cache[lambda as usize].clone();
    Ok(Certificate {
        u,
        v,
        g1: p + 1,
        g2: ideal_generator(kind, p),
        target: cartan_polynomial(lambda, kind, p),
    })
}

/// `(u, v)` pairs for `C_1 .. C_lambda`; index 0 is unused.
fn build_cartan_certificates(lambda: u32, p: u64) -> Vec<(HeckeElement, HeckeElement)> {
    let kind = TorusKind::NonSplit;
    let zero = HeckeElement::zero(kind, p);
    let one = HeckeElement::one(kind, p);
    let mut cache: Vec<(HeckeElement, HeckeElement)> = vec![(zero.clone(), zero.clone())];
    for lam in 1..=lambda {
        if lam == 1 {
            cache.push((zero.clone(), one.clone()));
            continue;
        }
        // v picks up T(p^{lam-1}) from the leading T * T(p^{lam-1}).
        let mut u = zero.clone();
        let mut v = tpk_polynomial(lam - 1, kind, p);
        // Remaining terms: -p S T(p^{lam-2}) - sum_{j>=1} S^j C_{lam-2j},
        // grouped as S-multiples of lower Cartan cells plus a constant part.
        let mut constant = zero.clone();
        let push = |mu: u32, coeff: HeckeElement, u: &mut HeckeElement, v: &mut HeckeElement, constant: &mut HeckeElement| {
            if mu == 0 {
                *constant = constant.add(&coeff).expect("ctx");
            } else {
                let (lu, lv) = cache[mu as usize].clone();
                *u = u.add(&coeff.mul(&lu).expect("ctx")).expect("ctx");
                *v = v.add(&coeff.mul(&lv).expect("ctx")).expect("ctx");
            }
        };
        // -p S T(p^{lam-2}) expanded into Cartan cells: T(p^k) = sum_j S^j C_{k-2j}
        let k = lam - 2;
        for j in 0..=(k / 2) {
            let coeff = HeckeElement::monomial(
                kind,
                p,
                Exponents::new(0, 1 + j as i64, 0),
                Scalar::from_int(-(p as i64)),
            );
            push(k - 2 * j, coeff, &mut u, &mut v, &mut constant);
        }
        // -sum_{j=1}^{lam/2} S^j C_{lam-2j}
        for j in 1..=(lam / 2) {
            let coeff =
                HeckeElement::monomial(kind, p, Exponents::new(0, j as i64, 0), -Scalar::one());
            push(lam - 2 * j, coeff, &mut u, &mut v, &mut constant);
        }
        // Constant part is an exact (p+1)-multiple (zero for odd lam).
        let p1 = BigRational::from_integer(BigInt::from(p + 1));
        let scaled = constant.rat_mul(&p1.recip());
        debug_assert!(scaled
            .mul(&HeckeElement::constant(kind, p, Scalar::from_int(p as i64 + 1)))
            .map(|x| x == constant)
            .unwrap_or(false));
        u = u.add(&scaled).expect("ctx");
        cache.push((u, v));
    }
    cache
}

/// Certificate for the universal operator of an `L1` lattice element.
pub fn universal_op_certificate(xi: &SphericalFunction) -> Result<Certificate> {
    if xi.lattice_class() != LatticeClass::L1 {
        return Err(Error::Domain(
            "certificates require integral data with the lambda = 0 stratum divisible by #H_Z(F_p)".into(),
        ));
    }
    let cfg = xi.cfg;
    let p = cfg.p;
    let kind = cfg.kind;
    let hz = kind.hz_order(p);
    let hz_rat = BigRational::from_integer(BigInt::from(hz));
    let target = universal_operator(xi)?;
    let mut u = HeckeElement::zero(kind, p);
    let mut v = HeckeElement::zero(kind, p);

    match kind {
        TorusKind::NonSplit => {
            let max_lambda = xi.max_lambda();
            let cache = build_cartan_certificates(max_lambda.max(1), p);
            for (idx, val) in xi.support() {
                if idx.lambda == 0 {
                    // operator is val * S^{-a}, with val in (p+1) Z[1/p]
                    let c = val.clone().mul_rat(&hz_rat.recip());
                    u.add_term(Exponents::new(0, -idx.a, 0), c);
                } else {
                    // operator is val * S^{-a-lambda} * C_lambda
                    let (lu, lv) = cache[idx.lambda as usize].clone();
                    let shift = -idx.a - idx.lambda as i64;
                    u = u.add(&lu.shift(0, shift, 0).scalar_mul(val))?;
                    v = v.add(&lv.shift(0, shift, 0).scalar_mul(val))?;
                }
            }
        }
        TorusKind::Split => {
            for (idx, val) in xi.support() {
                let a = idx.a;
                let b = idx.b.expect("split index");
                if idx.lambda == 0 {
                    let c = val.clone().mul_rat(&hz_rat.recip());
                    u.add_term(Exponents::new(0, -b, -a), c);
                } else {
                    let lambda = idx.lambda;
                    // P_{xi_{lambda,a,b}} = p^{lambda-1} A^{-a} S^{-b} ((p-1) A^{-lambda} - Y' P'(p^{-1/2}))
                    // with Y = p A Sch^o_{lambda-1} + (p-1) sum_m A^{lambda-m} Sch^o_m.
                    let a_pow = |e: i64| {
                        HeckeElement::monomial(kind, p, Exponents::new(0, 0, e), Scalar::one())
                    };
                    let mut y = schur_circ(lambda - 1, kind, p)
                        .mul(&a_pow(1))?
                        .rat_mul(&BigRational::from_integer(BigInt::from(p)));
                    for m in 0..=(lambda as i64 - 2) {
                        let term = schur_circ(m as u32, kind, p)
                            .mul(&a_pow(lambda as i64 - m))?
                            .rat_mul(&hz_rat);
                        y = y.add(&term)?;
                    }
                    let plam =
                        crate::matrix::p_pow(p, lambda as i64 - 1);
                    let front = HeckeElement::monomial(
                        kind,
                        p,
                        Exponents::new(0, -b, -a),
                        Scalar::from_rat(plam),
                    );
                    let u_term = front.mul(&a_pow(-(lambda as i64)))?.scalar_mul(val);
                    let v_term = front.mul(&y.involute())?.neg().scalar_mul(val);
                    u = u.add(&u_term)?;
                    v = v.add(&v_term)?;
                }
            }
        }
    }

    let cert = Certificate { u, v, g1: hz, g2: ideal_generator(kind, p), target };
    debug_assert!(verify_certificate(&cert));
    Ok(cert)
}

/// Decide membership in `(p+1, T)` inside `Z[1/p][T, S^{+-1}]`: all
/// coefficients must lie in `Z[1/p]`, and the `T`-free part must be divisible
/// by `p+1` there. Complete because `T`-multiples are unconstrained and
/// `Z[1/p]/(p+1)` detects exactly the prime-to-p numerator mod `p+1`.
pub fn decide_nonsplit_membership(x: &HeckeElement) -> Result<bool> {
    if x.kind != TorusKind::NonSplit {
        return Err(Error::ContextMismatch("the decision procedure is for the non-split ring".into()));
    }
    let p = x.p;
    let p1 = BigInt::from(p + 1);
    for (e, c) in x.terms() {
        if !c.in_z1p(p) {
            return Ok(false);
        }
        if e.t == 0 {
            // need (p+1) | prime-to-p numerator
            if c.rat.is_zero() {
                continue;
            }
            let n = prime_to_p_part(&c.rat, p);
            if !n.mod_floor(&p1).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The basis elements of the `L1` lattice up to the given stratum and
/// translation window; convenient test data.
pub fn l1_basis(cfg: &TorusConfig, lambda_max: u32, window: i64) -> Vec<SphericalFunction> {
    let mut out = Vec::new();
    let hz = Scalar::from_int(cfg.kind.hz_order(cfg.p) as i64);
    for lambda in 0..=lambda_max {
        for a in -window..=window {
            let bs: Vec<Option<i64>> = match cfg.kind {
                TorusKind::NonSplit => vec![None],
                TorusKind::Split => (-window..=window).map(Some).collect(),
            };
            for b in bs {
                let idx = CosetIndex { lambda, a, b };
                let mut xi = SphericalFunction::basis(*cfg, idx).expect("shape ok");
                if lambda == 0 {
                    xi = xi.scalar_mul(&hz);
                }
                out.push(xi);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingGen;

    #[test]
    fn cartan_certificates_verify() {
        for p in [3u64, 5, 7, 11] {
            for lambda in 1..=8u32 {
                let cert = cartan_certificate(lambda, p).unwrap();
                assert!(verify_certificate(&cert), "p={p} lambda={lambda}");
                assert_eq!(cert.target, cartan_polynomial(lambda, TorusKind::NonSplit, p));
            }
        }
    }

    #[test]
    fn cartan_certificate_base_cases() {
        let p = 5u64;
        let kind = TorusKind::NonSplit;
        let cert = cartan_certificate(1, p).unwrap();
        assert!(cert.u.is_zero());
        assert_eq!(cert.v, HeckeElement::one(kind, p));
        // lambda = 2: (u, v) = (-S, T)
        let cert = cartan_certificate(2, p).unwrap();
        let s = HeckeElement::generator(kind, p, RingGen::S).unwrap();
        let t = HeckeElement::generator(kind, p, RingGen::T).unwrap();
        assert_eq!(cert.u, s.neg());
        assert_eq!(cert.v, t);
        // lambda = 4: even-parity branch contributes the pure S^2 term to u
        let cert = cartan_certificate(4, p).unwrap();
        assert!(!cert.u.coeff(&Exponents::new(0, 2, 0)).is_zero());
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn tampering_breaks_verification() {
        let cert = cartan_certificate(2, 5).unwrap();
        let mut bad = cert.clone();
        bad.v = bad.v.add(&HeckeElement::one(TorusKind::NonSplit, 5)).unwrap();
        assert!(!verify_certificate(&bad));
    }

    #[test]
    fn universal_certificates_on_basis() {
        for p in [3u64, 5] {
            for cfg in [TorusConfig::nonsplit(p), TorusConfig::split(p)] {
                for xi in l1_basis(&cfg, 3, 1) {
                    let cert = universal_op_certificate(&xi).unwrap();
                    assert!(verify_certificate(&cert), "p={p} kind={:?}", cfg.kind);
                    assert_eq!(cert.target, universal_operator(&xi).unwrap());
                }
            }
        }
    }

    #[test]
    fn certificate_requires_l1() {
        let cfg = TorusConfig::nonsplit(5);
        let xi = SphericalFunction::base_point(cfg); // in L but not L1
        assert!(universal_op_certificate(&xi).is_err());
    }

    #[test]
    fn both_generators_attained() {
        // non-split: (p+1) xi_0 gives u = 1, v = 0; xi_{1,0} gives u = 0, v = S^{-1}
        let cfg = TorusConfig::nonsplit(7);
        let p1 = Scalar::from_int(cfg.p as i64 + 1);
        let xi = SphericalFunction::base_point(cfg).scalar_mul(&p1);
        let cert = universal_op_certificate(&xi).unwrap();
        assert_eq!(cert.u, HeckeElement::one(cfg.kind, cfg.p));
        assert!(cert.v.is_zero());

        let xi = SphericalFunction::basis(cfg, CosetIndex::nonsplit(1, 0)).unwrap();
        let cert = universal_op_certificate(&xi).unwrap();
        assert!(cert.u.is_zero());
        assert_eq!(cert.v, HeckeElement::one(cfg.kind, cfg.p).shift(0, -1, 0));

        // split: (p-1) xi_0 gives u = 1, v = 0; a combination kills u
        let cfg = TorusConfig::split(7);
        let m1 = Scalar::from_int(cfg.p as i64 - 1);
        let xi = SphericalFunction::base_point(cfg).scalar_mul(&m1);
        let cert = universal_op_certificate(&xi).unwrap();
        assert_eq!(cert.u, HeckeElement::one(cfg.kind, cfg.p));
        assert!(cert.v.is_zero());

        let mut xi = SphericalFunction::basis(cfg, CosetIndex::split(1, 0, 0)).unwrap();
        xi.add_term(CosetIndex::split(0, 1, 0), -m1.clone());
        let cert = universal_op_certificate(&xi).unwrap();
        assert!(cert.u.is_zero(), "u = {:?}", cert.u);
        assert!(!cert.v.is_zero());
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn nonsplit_membership_decisions() {
        let p = 5u64;
        let kind = TorusKind::NonSplit;
        let t = HeckeElement::generator(kind, p, RingGen::T).unwrap();
        assert!(decide_nonsplit_membership(&t.shift(0, -3, 0)).unwrap());
        let mut x = t.mul(&t).unwrap();
        x.add_term(Exponents::new(0, 1, 0), Scalar::from_int(p as i64 + 1));
        assert!(decide_nonsplit_membership(&x).unwrap());
        assert!(!decide_nonsplit_membership(&HeckeElement::one(kind, p)).unwrap());
        // sqrt(p) parts are outside the integral ring
        let y = t.scalar_mul(&Scalar::p_half_power(p, 1));
        assert!(!decide_nonsplit_membership(&y).unwrap());
        // universal operators of L1 data are members; the base point is not
        let cfg = TorusConfig::nonsplit(p);
        for xi in l1_basis(&cfg, 3, 1) {
            let op = universal_operator(&xi).unwrap();
            assert!(decide_nonsplit_membership(&op).unwrap());
        }
        let op = universal_operator(&SphericalFunction::base_point(cfg)).unwrap();
        assert!(!decide_nonsplit_membership(&op).unwrap());
    }
}
