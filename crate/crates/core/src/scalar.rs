//! Exact coefficients of the form `x + y*sqrt(p)` with `x`, `y` rational.
//!
//! Every closed formula in the library lands in this quadratic extension of
//! the rationals: integral powers of `p` stay in the rational part, and the
//! normalized Hecke operator `T` contributes one factor of `sqrt(p)` per
//! degree. Since `sqrt(p)` is irrational the representation `(x, y)` is
//! unique, so equality of reduced pairs decides equality of values.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// p-adic valuation of a nonzero integer.
pub fn int_vp(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0u64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if r.is_zero() {
            n = q;
            v += 1;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a nonzero rational.
pub fn rat_vp(x: &BigRational, p: u64) -> i64 {
    assert!(!x.is_zero(), "valuation of zero");
    int_vp(x.numer(), p) as i64 - int_vp(x.denom(), p) as i64
}

/// True iff `x` is p-adically integral (lies in `Z_p`): zero or `v_p(x) >= 0`.
pub fn rat_p_integral(x: &BigRational, p: u64) -> bool {
    x.is_zero() || rat_vp(x, p) >= 0
}

/// True iff `x` lies in `Z[1/p]`, i.e. its reduced denominator is a power of `p`.
pub fn rat_in_z1p(x: &BigRational, p: u64) -> bool {
    if x.is_zero() {
        return true;
    }
    let mut d = x.denom().abs();
    let p = BigInt::from(p);
    while !d.is_one() {
        let (q, r) = num_integer::Integer::div_rem(&d, &p);
        if !r.is_zero() {
            return false;
        }
        d = q;
    }
    true
}

/// The prime-to-p part of a nonzero rational in `Z[1/p]`, as a positive integer.
pub fn prime_to_p_part(x: &BigRational, p: u64) -> BigInt {
    assert!(rat_in_z1p(x, p), "not in Z[1/p]");
    let mut n = x.numer().abs();
    if n.is_zero() {
        return BigInt::zero();
    }
    let p = BigInt::from(p);
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if r.is_zero() {
            n = q;
        } else {
            return n;
        }
    }
}

/// Exact element `rat + sqrtp * sqrt(p)` of `Q(sqrt(p))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub rat: BigRational,
    pub sqrtp: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { rat: BigRational::zero(), sqrtp: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar { rat: BigRational::one(), sqrtp: BigRational::zero() }
    }

    pub fn from_rat(rat: BigRational) -> Self {
        Scalar { rat, sqrtp: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `a/b` as a scalar; panics if `b == 0`.
    pub fn from_frac(a: i64, b: i64) -> Self {
        Self::from_rat(BigRational::new(BigInt::from(a), BigInt::from(b)))
    }

    /// `y * sqrt(p)`.
    pub fn sqrtp_times(y: BigRational) -> Self {
        Scalar { rat: BigRational::zero(), sqrtp: y }
    }

    /// `p^e` for `e` of either sign.
    pub fn p_power(p: u64, e: i64) -> Self {
        let base = BigRational::from_integer(BigInt::from(p));
        let mut x = BigRational::one();
        for _ in 0..e.unsigned_abs() {
            x *= &base;
        }
        if e < 0 {
            x = x.recip();
        }
        Self::from_rat(x)
    }

    /// `p^{e/2}` for any integer `e`: even exponents are rational, odd ones
    /// carry a single `sqrt(p)`.
    pub fn p_half_power(p: u64, e: i64) -> Self {
        let floor = e.div_euclid(2);
        let rem = e.rem_euclid(2);
        let body = Self::p_power(p, floor);
        if rem == 0 {
            body
        } else {
            Scalar { rat: BigRational::zero(), sqrtp: body.rat }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sqrtp.is_zero()
    }

    /// True iff the value lies in `Z[1/p]`: no `sqrt(p)` part and a p-power
    /// denominator.
    pub fn in_z1p(&self, p: u64) -> bool {
        self.sqrtp.is_zero() && rat_in_z1p(&self.rat, p)
    }

    pub fn mul_rat(self, c: &BigRational) -> Scalar {
        let mut x = self;
        x *= c;
        x
    }

    /// Multiplication by `sqrt(p)^2 = p` is rational, so products stay in the ring.
    pub fn mul_scalar(&self, other: &Scalar, p: u64) -> Scalar {
        let p_rat = BigRational::from_integer(BigInt::from(p));
        Scalar {
            rat: &self.rat * &other.rat + &self.sqrtp * &other.sqrtp * &p_rat,
            sqrtp: &self.rat * &other.sqrtp + &self.sqrtp * &other.rat,
        }
    }

    /// Exact inverse; panics on zero. `(x + y√p)^{-1} = (x − y√p)/(x² − p y²)`.
    pub fn inv(&self, p: u64) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        let p_rat = BigRational::from_integer(BigInt::from(p));
        let norm = &self.rat * &self.rat - &self.sqrtp * &self.sqrtp * &p_rat;
        assert!(!norm.is_zero(), "norm vanishes; sqrt(p) is irrational so this cannot happen");
        Scalar { rat: &self.rat / &norm, sqrtp: -(&self.sqrtp / &norm) }
    }

    /// Numeric value with `sqrt(p)` the positive real root.
    pub fn to_complex(&self, p: u64) -> Complex64 {
        let r = self.rat.to_f64().expect("rational out of f64 range");
        let s = self.sqrtp.to_f64().expect("rational out of f64 range");
        Complex64::new(r + s * (p as f64).sqrt(), 0.0)
    }

    fn fmt_rat(x: &BigRational) -> String {
        if x.denom().is_one() {
            format!("{}", x.numer())
        } else {
            format!("{}/{}", x.numer(), x.denom())
        }
    }

    fn parse_rat(s: &str) -> Option<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
            Some((n, d)) => {
                let n = n.trim().parse::<BigInt>().ok()?;
                let d = d.trim().parse::<BigInt>().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
        }
    }

    /// Parse an exact rational string `"a"` or `"a/b"`.
    pub fn rat_from_str(s: &str) -> Option<BigRational> {
        Self::parse_rat(s)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrtp.is_zero() {
            write!(f, "{}", Self::fmt_rat(&self.rat))
        } else if self.rat.is_zero() {
            write!(f, "{}*sqrt(p)", Self::fmt_rat(&self.sqrtp))
        } else {
            write!(f, "{} + {}*sqrt(p)", Self::fmt_rat(&self.rat), Self::fmt_rat(&self.sqrtp))
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar { rat: self.rat + rhs.rat, sqrtp: self.sqrtp + rhs.sqrtp }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { rat: self.rat + &rhs.rat, sqrtp: self.sqrtp + &rhs.sqrtp }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rat += &rhs.rat;
        self.sqrtp += &rhs.sqrtp;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar { rat: self.rat - rhs.rat, sqrtp: self.sqrtp - rhs.sqrtp }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.rat -= &rhs.rat;
        self.sqrtp -= &rhs.sqrtp;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { rat: -self.rat, sqrtp: -self.sqrtp }
    }
}

impl Mul<BigRational> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: BigRational) -> Scalar {
        Scalar { rat: self.rat * &rhs, sqrtp: self.sqrtp * &rhs }
    }
}

impl MulAssign<&BigRational> for Scalar {
    fn mul_assign(&mut self, rhs: &BigRational) {
        self.rat *= rhs;
        self.sqrtp *= rhs;
    }
}

/// Serialized form: exact strings, never floats.
#[derive(Serialize, Deserialize)]
pub struct ScalarRepr {
    pub rat: String,
    pub sqrtp: String,
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr { rat: Self::fmt_rat(&self.rat), sqrtp: Self::fmt_rat(&self.sqrtp) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(d)?;
        let rat = Scalar::parse_rat(&repr.rat)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{}`", repr.rat)))?;
        let sqrtp = Scalar::parse_rat(&repr.sqrtp)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{}`", repr.sqrtp)))?;
        Ok(Scalar { rat, sqrtp })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn valuations() {
        assert_eq!(rat_vp(&r(12, 1), 3), 1);
        assert_eq!(rat_vp(&r(1, 9), 3), -2);
        assert_eq!(rat_vp(&r(50, 3), 5), 2);
        assert!(rat_in_z1p(&r(7, 25), 5));
        assert!(!rat_in_z1p(&r(1, 6), 5));
        assert!(rat_p_integral(&r(7, 3), 5));
        assert!(!rat_p_integral(&r(7, 5), 5));
        assert_eq!(prime_to_p_part(&r(4830, 1), 5), BigInt::from(966));
    }

    #[test]
    fn half_powers() {
        let p = 5;
        let x = Scalar::p_half_power(p, 3); // 5 * sqrt(5)
        assert_eq!(x.rat, BigRational::zero());
        assert_eq!(x.sqrtp, r(5, 1));
        let y = Scalar::p_half_power(p, -1); // sqrt(5)/5
        assert_eq!(y.sqrtp, r(1, 5));
        // p^{1/2} * p^{-1/2} = 1
        assert_eq!(Scalar::p_half_power(p, 1).mul_scalar(&Scalar::p_half_power(p, -1), p), Scalar::one());
    }

    #[test]
    fn field_ops() {
        let p = 7;
        let a = Scalar { rat: r(2, 3), sqrtp: r(-1, 7) };
        let b = a.inv(p);
        assert_eq!(a.mul_scalar(&b, p), Scalar::one());
    }

    #[test]
    fn serde_round_trip_is_bit_exact() {
        let x = Scalar { rat: r(-13920, 15625), sqrtp: r(3, 49) };
        let json = serde_json::to_string(&x).unwrap();
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(x, back);
        assert!(!json.contains('.'), "no floats in symbolic output: {json}");
    }
}
