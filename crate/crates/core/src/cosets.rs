//! Double-coset classification for `GL2(Qp)` relative to an unramified torus.
//!
//! Conventions. `s(lambda) = diag(p^lambda, 1)` and `n0 = [[1,1],[0,1]]`. The
//! non-split torus is the unramified quadratic extension embedded by
//! `a + b*sqrt(-D) -> [[a, b], [-bD, a]]`; the split torus is the diagonal.
//! Orbits of the twisted diagonal subgroup acting on `(GL2 x torus)` on the
//! left and the integral points on the right are labelled by
//! `(lambda, a)` (non-split: representative `(s(lambda), p^a)`) or
//! `(lambda, a, b)` (split: representative `(n0 s(lambda), diag(p^a,1) p^b)`).

use crate::error::{Error, Result};
use crate::matrix::{big, p_pow, GL2};
use crate::ring::{Exponents, HeckeElement, TorusKind};
use crate::scalar::{rat_vp, Scalar};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Torus selection: the prime, the kind, and (non-split only) the parameter D
/// with `-D` a quadratic nonresidue mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusConfig {
    pub kind: TorusKind,
    pub p: u64,
    /// Nonresidue parameter of the unramified quadratic extension; 1 for split.
    pub d: u64,
}

impl TorusConfig {
    /// Non-split configuration with the smallest admissible `D`.
    pub fn nonsplit(p: u64) -> Self {
        TorusConfig { kind: TorusKind::NonSplit, p, d: smallest_nonresidue_d(p) }
    }

    pub fn split(p: u64) -> Self {
        TorusConfig { kind: TorusKind::Split, p, d: 1 }
    }

    pub fn new(kind: TorusKind, p: u64) -> Self {
        match kind {
            TorusKind::NonSplit => Self::nonsplit(p),
            TorusKind::Split => Self::split(p),
        }
    }

    /// `#H_Z(Z/p^lambda)`: 1 for lambda = 0, else `(p -+ 1) p^{lambda-1}`.
    pub fn hz_order_mod(&self, lambda: u32) -> u64 {
        if lambda == 0 {
            1
        } else {
            self.kind.hz_order(self.p) * self.p.pow(lambda - 1)
        }
    }
}

/// Quadratic residue test modulo an odd prime.
pub fn is_quadratic_residue(x: i64, p: u64) -> bool {
    let xm = x.rem_euclid(p as i64) as u64;
    if xm == 0 {
        return false;
    }
    mod_pow(xm, (p - 1) / 2, p) == 1
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Smallest positive `D` coprime to `p` with `-D` a nonresidue mod `p`, so
/// that `Q_p(sqrt(-D))` is the unramified quadratic extension.
pub fn smallest_nonresidue_d(p: u64) -> u64 {
    (1..).find(|&d| d % p != 0 && !is_quadratic_residue(-(d as i64), p)).unwrap()
}

/// Orbit label. `b` is present exactly in the split case.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub struct CosetIndex {
    pub lambda: u32,
    pub a: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
}

impl CosetIndex {
    pub fn nonsplit(lambda: u32, a: i64) -> Self {
        CosetIndex { lambda, a, b: None }
    }

    pub fn split(lambda: u32, a: i64, b: i64) -> Self {
        CosetIndex { lambda, a, b: Some(b) }
    }

    pub fn base(kind: TorusKind) -> Self {
        match kind {
            TorusKind::NonSplit => Self::nonsplit(0, 0),
            TorusKind::Split => Self::split(0, 0, 0),
        }
    }

    pub fn matches(&self, kind: TorusKind) -> bool {
        (self.b.is_some()) == (kind == TorusKind::Split)
    }

    /// Group-level representative `(g, h)` of the orbit.
    pub fn representative(&self, cfg: &TorusConfig) -> (GL2, GL2) {
        let p = cfg.p;
        match cfg.kind {
            TorusKind::NonSplit => {
                let g = GL2::s_lambda(self.lambda as i64, p);
                let h = GL2::central_power(self.a, p);
                (g, h)
            }
            TorusKind::Split => {
                let b = self.b.expect("split index");
                let g = GL2::n0(p).mul(&GL2::s_lambda(self.lambda as i64, p));
                let h = GL2::diag_powers(self.a + b, b, p);
                (g, h)
            }
        }
    }
}

/// Exact Iwasawa data: `g = p^z diag(p^r, 1) [[1, n], [0, 1]] k` with `k` in
/// `GL2(Z_p)`.
#[derive(Clone, Debug)]
pub struct IwasawaData {
    pub z: i64,
    pub r: i64,
    pub n: BigRational,
    pub k: GL2,
}

impl IwasawaData {
    /// Valuation of the unipotent coordinate; `None` when it vanishes.
    pub fn n_valuation(&self) -> Option<i64> {
        if self.n.is_zero() {
            None
        } else {
            Some(rat_vp(&self.n, self.p()))
        }
    }

    fn p(&self) -> u64 {
        self.k.p
    }

    pub fn reassemble(&self) -> GL2 {
        let p = self.p();
        let central = GL2::central_power(self.z, p);
        let diag = GL2::s_lambda(self.r, p);
        let unip = GL2::new(big(1), self.n.clone(), big(0), big(1), p);
        central.mul(&diag).mul(&unip).mul(&self.k)
    }
}

/// Deterministic exact Iwasawa decomposition.
///
/// The (2,1) entry is cleared against the second-row entry of smaller
/// valuation (columns swapped first when needed), then the Borel part is
/// normalized so the diagonal consists of exact p-powers.
pub fn iwasawa_decompose(g: &GL2) -> Result<IwasawaData> {
    let p = g.p;
    let (u, k0) = g.upper_triangularize()?;
    let va = rat_vp(&u.m[0][0], p);
    let z = rat_vp(&u.m[1][1], p);
    let ua = &u.m[0][0] / p_pow(p, va);
    let uc = &u.m[1][1] / p_pow(p, z);
    let n = if u.m[0][1].is_zero() {
        BigRational::zero()
    } else {
        &u.m[0][1] / (p_pow(p, va) * &uc)
    };
    let unit_diag = GL2::new(ua, big(0), big(0), uc, p);
    let k = unit_diag.mul(&k0.inv()?);
    let data = IwasawaData { z, r: va - z, n, k };
    debug_assert!(data.k.is_unit());
    debug_assert_eq!(data.reassemble(), *g);
    Ok(data)
}

/// The `lambda` with `g` in `H_p s(lambda) G_p^o` (non-split) or
/// `H_p n0 s(lambda) G_p^o` (split).
pub fn classify_g(g: &GL2, cfg: &TorusConfig) -> Result<u32> {
    match cfg.kind {
        TorusKind::Split => {
            let iw = iwasawa_decompose(g)?;
            Ok(match iw.n_valuation() {
                Some(v) if v < 0 => (-v) as u32,
                _ => 0,
            })
        }
        TorusKind::NonSplit => {
            let p = cfg.p;
            let (u, _) = g.upper_triangularize()?;
            let r1 = rat_vp(&u.m[0][0], p);
            let r3 = rat_vp(&u.m[1][1], p);
            let lambda = if u.m[0][1].is_zero() {
                (r1 - r3).abs()
            } else {
                let r2 = rat_vp(&u.m[0][1], p);
                if r2 >= r1 {
                    (r1 - r3).abs()
                } else if r2 > r3 {
                    // r1 > r2 > r3: conjugating by a torus unit moves the
                    // off-diagonal entry into the compact factor.
                    r1 - r3
                } else {
                    // r2 <= r3, r2 < r1
                    r1 + r3 - 2 * r2
                }
            };
            debug_assert!(lambda >= 0);
            Ok(lambda as u32)
        }
    }
}

fn in_nonsplit_torus(h: &GL2, cfg: &TorusConfig) -> bool {
    let d = big(cfg.d as i64);
    h.m[0][0] == h.m[1][1] && h.m[1][0] == -(&h.m[0][1] * &d)
}

/// Valuation of a nonzero element of the unramified quadratic extension,
/// read off its matrix embedding.
fn torus_valuation_nonsplit(h: &GL2) -> Result<i64> {
    let alpha = &h.m[0][0];
    let beta = &h.m[0][1];
    let p = h.p;
    match (alpha.is_zero(), beta.is_zero()) {
        (true, true) => Err(Error::SingularMatrix),
        (false, true) => Ok(rat_vp(alpha, p)),
        (true, false) => Ok(rat_vp(beta, p)),
        (false, false) => Ok(rat_vp(alpha, p).min(rat_vp(beta, p))),
    }
}

/// Orbit label of the pair `(g, h)` with `h` in the embedded torus.
pub fn classify_pair(g: &GL2, h: &GL2, cfg: &TorusConfig) -> Result<CosetIndex> {
    match cfg.kind {
        TorusKind::NonSplit => {
            if !in_nonsplit_torus(h, cfg) {
                return Err(Error::NotInTorus);
            }
            let lambda = classify_g(g, cfg)?;
            let det_v = g.det_vp()?;
            let diff = det_v - lambda as i64;
            debug_assert_eq!(diff.rem_euclid(2), 0, "determinant parity fixes the orbit");
            let a = torus_valuation_nonsplit(h)? + diff / 2;
            Ok(CosetIndex::nonsplit(lambda, a))
        }
        TorusKind::Split => {
            if !(h.m[0][1].is_zero() && h.m[1][0].is_zero()) || h.det().is_zero() {
                return Err(Error::NotInTorus);
            }
            let iw = iwasawa_decompose(g)?;
            let lambda = match iw.n_valuation() {
                Some(v) if v < 0 => (-v) as u32,
                _ => 0,
            };
            let w1 = rat_vp(&h.m[0][0], cfg.p);
            let w2 = rat_vp(&h.m[1][1], cfg.p);
            let b = iw.z + w2;
            let a = (iw.r - lambda as i64) + w1 - w2;
            Ok(CosetIndex::split(lambda, a, b))
        }
    }
}

/// Representatives of `H_p^o / H_p^o[p^lambda]` for the non-split torus:
/// `[[a, -D], [1, a]]` for `a mod p^lambda` and `[[1, -bD], [b, 1]]` for
/// `b in p Z / p^lambda`. There are `(p+1) p^{lambda-1}` of them.
pub fn torus_coset_reps(lambda: u32, cfg: &TorusConfig) -> Result<Vec<GL2>> {
    if cfg.kind != TorusKind::NonSplit {
        return Err(Error::Domain(
            "torus averaging representatives exist for the non-split torus only".into(),
        ));
    }
    let p = cfg.p;
    if lambda == 0 {
        return Ok(vec![GL2::identity(p)]);
    }
    let d = cfg.d as i64;
    let q = (p as i64).pow(lambda);
    let mut reps = Vec::new();
    for a in 0..q {
        reps.push(GL2::from_ints(a, -d, 1, a, p));
    }
    let mut b = 0i64;
    while b < q {
        reps.push(GL2::from_ints(1, -b * d, b, 1, p));
        b += p as i64;
    }
    Ok(reps)
}

/// Left-coset representatives of `G_p^o s(lambda) G_p^o / G_p^o`:
/// `[[p^lambda, beta], [0, 1]]` for `beta mod p^lambda`,
/// `[[p^i, beta], [0, p^{lambda-i}]]` for `0 < i < lambda` and unit `beta mod p^i`,
/// and `[[1, 0], [0, p^lambda]]`. Count: `p^lambda + p^{lambda-1}`.
pub fn cartan_cosets(lambda: u32, p: u64) -> Vec<GL2> {
    if lambda == 0 {
        return vec![GL2::identity(p)];
    }
    let mut out = Vec::new();
    let q = (p as i64).pow(lambda);
    for beta in 0..q {
        out.push(GL2::new(p_pow(p, lambda as i64), big(beta), big(0), big(1), p));
    }
    for i in 1..lambda {
        let qi = (p as i64).pow(i);
        for beta in 0..qi {
            if beta % p as i64 == 0 {
                continue;
            }
            out.push(GL2::new(p_pow(p, i as i64), big(beta), big(0), p_pow(p, (lambda - i) as i64), p));
        }
    }
    out.push(GL2::new(big(1), big(0), big(0), p_pow(p, lambda as i64), p));
    out
}

/// Left-coset representatives of the set of p-integral matrices with
/// determinant of valuation `k` (the support of the classical `T(p^k)`):
/// `[[p^a, beta], [0, p^{k-a}]]` with `beta mod p^a`.
pub fn tpk_cosets(k: u32, p: u64) -> Vec<GL2> {
    let mut out = Vec::new();
    for a in 0..=k {
        let qa = (p as i64).pow(a);
        for beta in 0..qa.max(1) {
            out.push(GL2::new(p_pow(p, a as i64), big(beta), big(0), p_pow(p, (k - a) as i64), p));
        }
    }
    out
}

/// The polynomial `T(p^k)` in `Z[T, S]` from the Hecke recurrence
/// `T(p^k) = T T(p^{k-1}) - p S T(p^{k-2})`.
pub fn tpk_polynomial(k: u32, kind: TorusKind, p: u64) -> HeckeElement {
    let mut prev = HeckeElement::one(kind, p); // T(p^0)
    if k == 0 {
        return prev;
    }
    let mut cur = HeckeElement::monomial(kind, p, Exponents::new(1, 0, 0), Scalar::one());
    for _ in 2..=k {
        // next = T*cur - p*S*prev
        let t_cur = cur.shift(1, 0, 0);
        let ps_prev = prev.shift(0, 1, 0).rat_mul(&big(p as i64));
        let next = t_cur.sub(&ps_prev).expect("same context");
        prev = cur;
        cur = next;
    }
    cur
}

/// The element `C_lambda` with `ch(G_p^o s(lambda) G_p^o) = C_lambda`:
/// `C_lambda = T(p^lambda) - sum_{0<j<=i<lambda, i+j=lambda} S^j C_{i-j}`.
pub fn cartan_polynomial(lambda: u32, kind: TorusKind, p: u64) -> HeckeElement {
    let mut cache: Vec<HeckeElement> = vec![HeckeElement::one(kind, p)];
    for lam in 1..=lambda {
        let mut poly = tpk_polynomial(lam, kind, p);
        for j in 1..=(lam / 2) {
            let lower = cache[(lam - 2 * j) as usize].clone();
            poly = poly.sub(&lower.shift(0, j as i64, 0)).expect("same context");
        }
        cache.push(poly);
    }
    cache[lambda as usize].clone()
}

/// `(v_p(n_gamma), z_gamma)` statistics of `gamma s(lambda)` over the torus
/// representatives; the unipotent bucket is `None` when `n_gamma = 0`.
pub fn torus_partition_statistics(
    lambda: u32,
    cfg: &TorusConfig,
) -> Result<Vec<((Option<i64>, i64), usize)>> {
    use std::collections::BTreeMap;
    let s = GL2::s_lambda(lambda as i64, cfg.p);
    let mut buckets: BTreeMap<(Option<i64>, i64), usize> = BTreeMap::new();
    for gamma in torus_coset_reps(lambda, cfg)? {
        let iw = iwasawa_decompose(&gamma.mul(&s))?;
        *buckets.entry((iw.n_valuation(), iw.z)).or_insert(0) += 1;
    }
    Ok(buckets.into_iter().collect())
}

/// Memoized [`torus_partition_statistics`]: the statistics are a pure
/// function of `(p, lambda)` and feed every averaged zeta evaluation, so they
/// are built once per pair behind a read-only table.
pub fn torus_partition_statistics_cached(
    lambda: u32,
    cfg: &TorusConfig,
) -> Result<Vec<((Option<i64>, i64), usize)>> {
    use std::collections::BTreeMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<BTreeMap<(u64, u32), Vec<((Option<i64>, i64), usize)>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(stats) = cache.lock().unwrap().get(&(cfg.p, lambda)) {
        return Ok(stats.clone());
    }
    let stats = torus_partition_statistics(lambda, cfg)?;
    cache.lock().unwrap().insert((cfg.p, lambda), stats.clone());
    Ok(stats)
}

/// The partition counts predicted for `H_p^o / H_p^o[p^lambda]`:
/// `phi(p^lambda)` elements with `(v, z) = (-lambda, 0)`; for each
/// `1 <= i <= lambda-1`, `phi(p^{lambda-i})` with `(i-lambda, i)` and as many
/// with `(i-lambda, 0)`; one with `n = 0, z = lambda` and one with `n = 0, z = 0`.
pub fn expected_partition_statistics(lambda: u32, p: u64) -> Vec<((Option<i64>, i64), usize)> {
    use std::collections::BTreeMap;
    let mut buckets: BTreeMap<(Option<i64>, i64), usize> = BTreeMap::new();
    if lambda == 0 {
        buckets.insert((None, 0), 1);
        return buckets.into_iter().collect();
    }
    let phi = |e: u32| -> usize {
        if e == 0 {
            1
        } else {
            (p.pow(e) - p.pow(e - 1)) as usize
        }
    };
    *buckets.entry((Some(-(lambda as i64)), 0)).or_insert(0) += phi(lambda);
    for i in 1..lambda {
        *buckets.entry((Some(i as i64 - lambda as i64), i as i64)).or_insert(0) += phi(lambda - i);
        *buckets.entry((Some(i as i64 - lambda as i64), 0)).or_insert(0) += phi(lambda - i);
    }
    *buckets.entry((None, lambda as i64)).or_insert(0) += 1;
    *buckets.entry((None, 0)).or_insert(0) += 1;
    buckets.into_iter().collect()
}

/// Convenience: exact `Scalar` 1 for ring constructors.
impl HeckeElement {
    pub fn from_integer_poly(kind: TorusKind, p: u64, terms: &[(u32, i64, i64)]) -> HeckeElement {
        let mut out = HeckeElement::zero(kind, p);
        for &(t, s, c) in terms {
            out.add_term(Exponents::new(t, s, 0), Scalar::from_int(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_selection() {
        // -1 is a nonresidue mod 3 and mod 7, a residue mod 5 and mod 13.
        assert_eq!(smallest_nonresidue_d(3), 1);
        assert_eq!(smallest_nonresidue_d(7), 1);
        assert_ne!(smallest_nonresidue_d(5), 1);
        assert!(!is_quadratic_residue(-(smallest_nonresidue_d(5) as i64), 5));
        assert!(!is_quadratic_residue(-(smallest_nonresidue_d(13) as i64), 13));
    }

    #[test]
    fn iwasawa_identity_and_diagonal() {
        let p = 5;
        let id = GL2::identity(p);
        let iw = iwasawa_decompose(&id).unwrap();
        assert_eq!((iw.z, iw.r), (0, 0));
        assert!(iw.n.is_zero());

        let g = GL2::diag_powers(2, 0, p);
        let iw = iwasawa_decompose(&g).unwrap();
        assert_eq!((iw.z, iw.r), (0, 2));
        assert!(iw.n.is_zero());
    }

    #[test]
    fn iwasawa_antidiagonal_example() {
        // [[0,1],[-D,0]] s(lambda) reassembles through diag(1, p^lambda).
        let p = 3;
        let cfg = TorusConfig::nonsplit(p);
        for lambda in 1..5i64 {
            let w = GL2::from_ints(0, 1, -(cfg.d as i64), 0, p);
            let g = w.mul(&GL2::s_lambda(lambda, p));
            let iw = iwasawa_decompose(&g).unwrap();
            assert_eq!(iw.z, lambda);
            assert_eq!(iw.r, -lambda);
            assert!(iw.n.is_zero());
            assert!(iw.k.is_unit());
            assert_eq!(iw.reassemble(), g);
        }
    }

    #[test]
    fn classify_representatives() {
        for p in [3u64, 5, 7] {
            for cfg in [TorusConfig::nonsplit(p), TorusConfig::split(p)] {
                assert_eq!(classify_g(&GL2::identity(p), &cfg).unwrap(), 0);
                for lambda in 0..5u32 {
                    let g = match cfg.kind {
                        TorusKind::NonSplit => GL2::s_lambda(lambda as i64, p),
                        TorusKind::Split => GL2::n0(p).mul(&GL2::s_lambda(lambda as i64, p)),
                    };
                    assert_eq!(classify_g(&g, &cfg).unwrap(), lambda);
                }
            }
        }
    }

    #[test]
    fn classify_pair_round_trip_small() {
        for p in [3u64, 5] {
            for cfg in [TorusConfig::nonsplit(p), TorusConfig::split(p)] {
                for lambda in 0..4u32 {
                    for a in -2..3i64 {
                        let indices: Vec<CosetIndex> = match cfg.kind {
                            TorusKind::NonSplit => vec![CosetIndex::nonsplit(lambda, a)],
                            TorusKind::Split => (-2..3i64).map(|b| CosetIndex::split(lambda, a, b)).collect(),
                        };
                        for idx in indices {
                            let (g, h) = idx.representative(&cfg);
                            assert_eq!(classify_pair(&g, &h, &cfg).unwrap(), idx);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coset_counts() {
        for p in [3u64, 5, 7] {
            for lambda in 1..5u32 {
                let n = cartan_cosets(lambda, p).len() as u64;
                assert_eq!(n, p.pow(lambda) + p.pow(lambda - 1));
                let cfg = TorusConfig::nonsplit(p);
                let m = torus_coset_reps(lambda, &cfg).unwrap().len() as u64;
                assert_eq!(m, cfg.hz_order_mod(lambda));
            }
        }
        assert_eq!(cartan_cosets(1, 7).len(), 8);
        assert_eq!(torus_coset_reps(1, &TorusConfig::nonsplit(5)).unwrap().len(), 6);
        assert_eq!(torus_coset_reps(2, &TorusConfig::nonsplit(3)).unwrap().len(), 12);
    }

    #[test]
    fn cartan_cosets_pairwise_inequivalent() {
        for p in [3u64, 5] {
            for lambda in 1..4u32 {
                let cosets = cartan_cosets(lambda, p);
                let mut keys: Vec<_> =
                    cosets.iter().map(|g| g.right_coset_key().unwrap()).collect();
                keys.sort();
                keys.dedup();
                assert_eq!(keys.len(), cosets.len());
            }
        }
    }

    #[test]
    fn cartan_polynomials() {
        let p = 3;
        let k = TorusKind::NonSplit;
        let t = HeckeElement::from_integer_poly(k, p, &[(1, 0, 1)]);
        assert_eq!(cartan_polynomial(1, k, p), t);
        // C_2 = T^2 - (p+1) S
        let c2 = HeckeElement::from_integer_poly(k, p, &[(2, 0, 1), (0, 1, -(p as i64) - 1)]);
        assert_eq!(cartan_polynomial(2, k, p), c2);
        // C_3 = T^3 - (2p+1) S T
        let c3 = HeckeElement::from_integer_poly(k, p, &[(3, 0, 1), (1, 1, -2 * (p as i64) - 1)]);
        assert_eq!(cartan_polynomial(3, k, p), c3);
    }

    #[test]
    fn partition_statistics_match() {
        for p in [3u64, 5] {
            let cfg = TorusConfig::nonsplit(p);
            for lambda in 1..4u32 {
                assert_eq!(
                    torus_partition_statistics(lambda, &cfg).unwrap(),
                    expected_partition_statistics(lambda, p)
                );
            }
        }
    }

    #[test]
    fn tpk_coset_count() {
        // sum_{a<=k} p^a cosets
        assert_eq!(tpk_cosets(2, 3).len(), 1 + 3 + 9);
        assert_eq!(tpk_cosets(4, 5).len(), 781);
    }
}
