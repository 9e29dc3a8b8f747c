//! Exact 2x2 matrices over the rationals, viewed p-adically.
//!
//! "Integral" always means p-integral (entries in `Z_p`, i.e. reduced
//! denominators prime to `p`), and "unit determinant" means the determinant
//! has p-adic valuation zero. That is the correct notion of `GL2(Z_p)`
//! membership for matrices with rational entries.

use crate::error::{Error, Result};
use crate::scalar::{rat_p_integral, rat_vp};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// A 2x2 rational matrix carried with its ambient prime.
#[derive(Clone, PartialEq, Eq)]
pub struct GL2 {
    /// Row-major entries `[[a, b], [c, d]]`.
    pub m: [[BigRational; 2]; 2],
    pub p: u64,
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn p_pow(p: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    let mut x = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        x *= &base;
    }
    if e < 0 {
        x.recip()
    } else {
        x
    }
}

impl GL2 {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational, p: u64) -> Self {
        GL2 { m: [[a, b], [c, d]], p }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64, p: u64) -> Self {
        Self::new(big(a), big(b), big(c), big(d), p)
    }

    pub fn identity(p: u64) -> Self {
        Self::from_ints(1, 0, 0, 1, p)
    }

    /// `diag(p^a, p^b)`.
    pub fn diag_powers(a: i64, b: i64, p: u64) -> Self {
        Self::new(p_pow(p, a), big(0), big(0), p_pow(p, b), p)
    }

    /// `s(lambda) = diag(p^lambda, 1)`.
    pub fn s_lambda(lambda: i64, p: u64) -> Self {
        Self::diag_powers(lambda, 0, p)
    }

    /// The unipotent `n0 = [[1,1],[0,1]]`.
    pub fn n0(p: u64) -> Self {
        Self::from_ints(1, 1, 0, 1, p)
    }

    /// Central `p^e`.
    pub fn central_power(e: i64, p: u64) -> Self {
        Self::diag_powers(e, e, p)
    }

    pub fn det(&self) -> BigRational {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn mul(&self, other: &GL2) -> GL2 {
        assert_eq!(self.p, other.p);
        let a = &self.m;
        let b = &other.m;
        GL2 {
            m: [
                [&a[0][0] * &b[0][0] + &a[0][1] * &b[1][0], &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1]],
                [&a[1][0] * &b[0][0] + &a[1][1] * &b[1][0], &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1]],
            ],
            p: self.p,
        }
    }

    pub fn inv(&self) -> Result<GL2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let a = &self.m;
        Ok(GL2 {
            m: [
                [&a[1][1] / &det, -(&a[0][1] / &det)],
                [-(&a[1][0] / &det), &a[0][0] / &det],
            ],
            p: self.p,
        })
    }

    pub fn scale(&self, c: &BigRational) -> GL2 {
        GL2 {
            m: [
                [&self.m[0][0] * c, &self.m[0][1] * c],
                [&self.m[1][0] * c, &self.m[1][1] * c],
            ],
            p: self.p,
        }
    }

    /// Entries in `Z_p` (reduced denominators prime to `p`).
    pub fn is_p_integral(&self) -> bool {
        self.m.iter().flatten().all(|x| rat_p_integral(x, self.p))
    }

    /// Membership in `GL2(Z_p)`.
    pub fn is_unit(&self) -> bool {
        let det = self.det();
        !det.is_zero() && self.is_p_integral() && rat_vp(&det, self.p) == 0
    }

    /// Valuation of the determinant; errors on singular input.
    pub fn det_vp(&self) -> Result<i64> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(rat_vp(&det, self.p))
    }

    /// Parse `"a,b;c,d"` with rational entries.
    pub fn parse(s: &str, p: u64) -> Result<GL2> {
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 2 {
            return Err(Error::Domain(format!("expected two rows in `{s}`")));
        }
        let mut entries = Vec::new();
        for row in rows {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != 2 {
                return Err(Error::Domain(format!("expected two entries in row `{row}`")));
            }
            for c in cols {
                let v = crate::scalar::Scalar::rat_from_str(c)
                    .ok_or_else(|| Error::Domain(format!("bad rational `{c}`")))?;
                entries.push(v);
            }
        }
        let mut it = entries.into_iter();
        Ok(GL2::new(it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), p))
    }

    fn fmt_rat(x: &BigRational) -> String {
        if x.denom().is_one() {
            format!("{}", x.numer())
        } else {
            format!("{}/{}", x.numer(), x.denom())
        }
    }

    /// Render as `"a,b;c,d"`.
    pub fn render(&self) -> String {
        format!(
            "{},{};{},{}",
            Self::fmt_rat(&self.m[0][0]),
            Self::fmt_rat(&self.m[0][1]),
            Self::fmt_rat(&self.m[1][0]),
            Self::fmt_rat(&self.m[1][1])
        )
    }

    /// Canonical key for the right coset `g * GL2(Z_p)`: the column Hermite
    /// form `[[p^a, b], [0, p^c]]` with `b` reduced modulo `p^a * Z_p`
    /// (denominator-bounded representative in `[0, p^a)`).
    pub fn right_coset_key(&self) -> Result<(i64, BigRational, i64)> {
        let (u, _) = self.upper_triangularize()?;
        let a = rat_vp(&u.m[0][0], self.p);
        let c = rat_vp(&u.m[1][1], self.p);
        // Scaling column 2 by the unit part of the (2,2) entry makes that
        // entry an exact p-power; the upper-right entry becomes b/uc, which is
        // defined modulo p^a Z_p.
        let uc = &u.m[1][1] / p_pow(self.p, c);
        let b = &u.m[0][1] / &uc;
        let bred = reduce_mod_p_power(&b, a, self.p);
        Ok((a, bred, c))
    }

    /// Right-multiply by elements of `GL2(Z_p)` to reach upper-triangular
    /// form. Returns `(U, k0)` with `self * k0 = U` and `k0` a p-adic unit.
    ///
    /// Pivot rule: clear the (2,1) entry against the second-row entry of
    /// smaller valuation, swapping columns first when the (2,2) entry is the
    /// larger one. This makes the output deterministic.
    pub fn upper_triangularize(&self) -> Result<(GL2, GL2)> {
        if self.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let mut u = self.clone();
        let mut k0 = GL2::identity(self.p);
        let c21 = u.m[1][0].clone();
        let c22 = u.m[1][1].clone();
        if c21.is_zero() {
            return Ok((u, k0));
        }
        let swap_first = if c22.is_zero() {
            true
        } else {
            rat_vp(&c21, self.p) < rat_vp(&c22, self.p)
        };
        if swap_first {
            let w = GL2::from_ints(0, 1, 1, 0, self.p);
            u = u.mul(&w);
            k0 = k0.mul(&w);
        }
        if !u.m[1][0].is_zero() {
            // col1 += x * col2 with x = -(2,1)/(2,2); x is p-integral by the pivot rule.
            let x = -(&u.m[1][0] / &u.m[1][1]);
            debug_assert!(rat_p_integral(&x, self.p));
            let e = GL2::new(BigRational::one(), BigRational::zero(), x, BigRational::one(), self.p);
            u = u.mul(&e);
            k0 = k0.mul(&e);
        }
        debug_assert!(u.m[1][0].is_zero());
        Ok((u, k0))
    }
}

/// Reduce `b` modulo `p^a * Z_p`: returns the canonical representative whose
/// p-power expansion keeps only digits below `p^a`, normalized into `[0, p^a)`.
pub fn reduce_mod_p_power(b: &BigRational, a: i64, p: u64) -> BigRational {
    if b.is_zero() {
        return BigRational::zero();
    }
    let v = rat_vp(b, p);
    if v >= a {
        return BigRational::zero();
    }
    // b = n / p^k with n prime to p (k = -v when v < 0). Reduce n mod p^{a - v}.
    let k = (-v).max(0);
    let scaled = b * p_pow(p, k); // valuation v + k >= 0, p-integral up to prime-to-p denominator
    // scaled = n/d with d prime to p; reduce n * d^{-1} mod p^{a+k}.
    let modulus = BigInt::from(p).pow((a + k) as u32);
    let n = scaled.numer().mod_floor_big(&modulus);
    let d = scaled.denom().clone();
    let dinv = modinv(&d, &modulus).expect("denominator prime to p");
    let red = num_integer::Integer::mod_floor(&(n * dinv), &modulus);
    BigRational::new(red, BigInt::one()) * p_pow(p, -k)
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        num_integer::Integer::mod_floor(self, m)
    }
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = num_integer::Integer::extended_gcd(a, m);
    if e.gcd.is_one() {
        Some(num_integer::Integer::mod_floor(&e.x, m))
    } else {
        None
    }
}

impl fmt::Debug for GL2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]@p={}", self.render(), self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_detection_is_p_adic() {
        // Denominator 3 is fine at p = 5.
        let g = GL2::new(big(1) / big(3), big(0), big(0), big(1), 5);
        assert!(g.is_unit());
        let h = GL2::from_ints(5, 0, 0, 1, 5);
        assert!(!h.is_unit());
        assert!(h.is_p_integral());
    }

    #[test]
    fn triangularize_reassembles() {
        let g = GL2::from_ints(6, 7, 45, 2, 3);
        let (u, k0) = g.upper_triangularize().unwrap();
        assert!(u.m[1][0].is_zero());
        assert!(k0.is_unit());
        assert_eq!(g.mul(&k0), u);
    }

    #[test]
    fn coset_keys_separate_cartan_representatives() {
        let p = 3;
        let a = GL2::from_ints(9, 1, 0, 1, p);
        let b = GL2::from_ints(9, 4, 0, 1, p);
        let c = GL2::from_ints(9, 1 + 9, 0, 1, p);
        assert_ne!(a.right_coset_key().unwrap(), b.right_coset_key().unwrap());
        assert_eq!(a.right_coset_key().unwrap(), c.right_coset_key().unwrap());
    }

    #[test]
    fn reduce_mod_power() {
        // 1/3 mod 9 Z_3 at p=3: valuation -1, digits below 3^2 kept: 1/3 itself.
        let x = big(1) / big(3);
        assert_eq!(reduce_mod_p_power(&x, 2, 3), x);
        // Adding 9 lies in 3^2 Z_3 and must not change the representative.
        let y = big(10) / big(3) + big(9);
        let z = big(10) / big(3);
        assert_eq!(reduce_mod_p_power(&y, 2, 3), reduce_mod_p_power(&z, 2, 3));
    }
}
