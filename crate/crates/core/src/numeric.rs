//! Binary fixed-point numbers over big integers, with `π`, sine and cosine.
//!
//! A [`Fixed`] with `b` fractional bits holds `raw · 2^{-b}`. Every public
//! transcendental routine evaluates internally with [`GUARD_BITS`] extra
//! bits and truncates once at the end, so its result is within 2 units in
//! the last place (`2^{1-b}`) of the true value for arguments of modest
//! size (`|x| < 2^16`). Callers that chain operations budget for the
//! accumulated error explicitly; see [`crate::oracle::numeric_eval`].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;

pub const GUARD_BITS: u32 = 32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fixed {
    raw: BigInt,
    frac_bits: u32,
}

impl Fixed {
    pub fn zero(frac_bits: u32) -> Self {
        Fixed {
            raw: BigInt::zero(),
            frac_bits,
        }
    }

    pub fn from_int(n: i64, frac_bits: u32) -> Self {
        Fixed {
            raw: BigInt::from(n) << frac_bits,
            frac_bits,
        }
    }

    /// `floor(r · 2^b) · 2^{-b}`.
    pub fn from_rational(r: &Rational, frac_bits: u32) -> Self {
        let scaled: BigInt = r.numer() << frac_bits;
        Fixed {
            raw: scaled.div_floor(r.denom()),
            frac_bits,
        }
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn raw(&self) -> &BigInt {
        &self.raw
    }

    /// The exact dyadic rational this value holds.
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.raw.clone(), BigInt::one() << self.frac_bits)
    }

    /// Changes the number of fractional bits, truncating toward `-∞` when
    /// precision is dropped.
    pub fn rescale(&self, frac_bits: u32) -> Self {
        let raw = if frac_bits >= self.frac_bits {
            &self.raw << (frac_bits - self.frac_bits)
        } else {
            self.raw.clone() >> (self.frac_bits - frac_bits)
        };
        Fixed { raw, frac_bits }
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.raw.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Fixed {
            raw: self.raw.abs(),
            frac_bits: self.frac_bits,
        }
    }

    /// `|self| < 2^{-k}`.
    pub fn abs_below_pow2(&self, k: i64) -> bool {
        let shift = self.frac_bits as i64 - k;
        if shift < 0 {
            return self.raw.is_zero();
        }
        self.raw.abs() < (BigInt::one() << shift as u64)
    }

    /// `floor(log2 |self|)`, or `None` for zero.
    pub fn log2_abs(&self) -> Option<i64> {
        (!self.raw.is_zero()).then(|| self.raw.bits() as i64 - 1 - self.frac_bits as i64)
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        assert_eq!(self.frac_bits, other.frac_bits);
        Fixed {
            raw: (&self.raw * &other.raw) >> self.frac_bits,
            frac_bits: self.frac_bits,
        }
    }

    /// `floor((self + other) / 2)` at this precision.
    pub fn midpoint(&self, other: &Fixed) -> Fixed {
        assert_eq!(self.frac_bits, other.frac_bits);
        Fixed {
            raw: (&self.raw + &other.raw) >> 1u32,
            frac_bits: self.frac_bits,
        }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &Fixed) -> Option<Fixed> {
        assert_eq!(self.frac_bits, other.frac_bits);
        if other.raw.is_zero() {
            return None;
        }
        Some(Fixed {
            raw: (&self.raw << self.frac_bits).div_floor(&other.raw),
            frac_bits: self.frac_bits,
        })
    }

    pub fn mul_int(&self, k: i64) -> Fixed {
        Fixed {
            raw: &self.raw * k,
            frac_bits: self.frac_bits,
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Fixed {
        Fixed {
            raw: (&self.raw * r.numer()).div_floor(r.denom()),
            frac_bits: self.frac_bits,
        }
    }

    pub fn to_f64(&self) -> f64 {
        // Keep 64 significant bits before the float conversion.
        let excess = (self.raw.bits() as i64 - 64).max(0) as u32;
        let top = (&self.raw >> excess).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(excess as i32 - self.frac_bits as i32)
    }

    /// Decimal expansion truncated toward zero to `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled: BigInt = (self.raw.abs() * num_traits::pow(BigInt::from(10u32), digits)) >> self.frac_bits;
        let s = scaled.to_string();
        let s = format!("{s:0>width$}", width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if self.raw.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fixed({}, {} bits)", self.to_decimal(20), self.frac_bits)
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Digits that the binary precision actually supports.
        let digits = (self.frac_bits as f64 * std::f64::consts::LOG10_2) as usize;
        f.write_str(&self.to_decimal(digits))
    }
}

impl<'a> Add<&'a Fixed> for &'a Fixed {
    type Output = Fixed;
    fn add(self, rhs: &'a Fixed) -> Fixed {
        assert_eq!(self.frac_bits, rhs.frac_bits);
        Fixed {
            raw: &self.raw + &rhs.raw,
            frac_bits: self.frac_bits,
        }
    }
}

impl<'a> Sub<&'a Fixed> for &'a Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &'a Fixed) -> Fixed {
        assert_eq!(self.frac_bits, rhs.frac_bits);
        Fixed {
            raw: &self.raw - &rhs.raw,
            frac_bits: self.frac_bits,
        }
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed {
            raw: -self.raw,
            frac_bits: self.frac_bits,
        }
    }
}

/// `Σ_{j≥0} (-1)^j / ((2j+1)·k^{2j+1})`, raw at `bits` fractional bits.
fn atan_inv(k: u32, bits: u32) -> BigInt {
    let k2 = BigInt::from(k) * k;
    let mut power = (BigInt::one() << bits) / k;
    let mut sum = BigInt::zero();
    let mut j: u32 = 0;
    while !power.is_zero() {
        let term = &power / (2 * j + 1);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        j += 1;
    }
    sum
}

/// `π` to `bits` fractional bits via Machin's formula.
pub fn pi(bits: u32) -> Fixed {
    static CACHE: OnceLock<Mutex<HashMap<u32, Fixed>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&bits) {
        return p.clone();
    }
    let work = bits + GUARD_BITS;
    let raw = atan_inv(5, work) * 16 - atan_inv(239, work) * 4;
    let value = Fixed { raw, frac_bits: work }.rescale(bits);
    cache.lock().unwrap().insert(bits, value.clone());
    value
}

/// Taylor series for `(sin y, cos y)` with `|y| ≤ π`, all at `y`'s precision.
fn taylor_sin_cos(y: &Fixed) -> (Fixed, Fixed) {
    let bits = y.frac_bits;
    let y2 = y.mul(y);
    let mut sin = y.clone();
    let mut cos = Fixed::from_int(1, bits);
    let mut term = y.clone();
    let mut j: i64 = 1;
    loop {
        // term runs through y^j / j!
        term = term.mul(&y2);
        term.raw /= (2 * j) * (2 * j + 1);
        if term.is_zero() {
            break;
        }
        sin = if j % 2 == 1 { &sin - &term } else { &sin + &term };
        j += 1;
    }
    let mut term = Fixed::from_int(1, bits);
    let mut j: i64 = 1;
    loop {
        term = term.mul(&y2);
        term.raw /= (2 * j - 1) * (2 * j);
        if term.is_zero() {
            break;
        }
        cos = if j % 2 == 1 { &cos - &term } else { &cos + &term };
        j += 1;
    }
    (sin, cos)
}

/// `(sin πx, cos πx)` at `x`'s precision.
///
/// `x` is reduced modulo 2 exactly before the constant `π` enters, so large
/// arguments cost no accuracy.
pub fn sin_cos_pi(x: &Fixed) -> (Fixed, Fixed) {
    let bits = x.frac_bits;
    let work = bits + GUARD_BITS;
    let two: BigInt = BigInt::from(2) << bits;
    let mut r = x.raw.mod_floor(&two);
    if r > (&two >> 1u32) {
        r -= &two;
    }
    let reduced = Fixed {
        raw: r,
        frac_bits: bits,
    }
    .rescale(work);
    let y = reduced.mul(&pi(work));
    let (s, c) = taylor_sin_cos(&y);
    (s.rescale(bits), c.rescale(bits))
}

/// `(cos 2πr, sin 2πr)` for a rational number of turns `r`.
pub fn cos_sin_turns(r: &Rational, bits: u32) -> (Fixed, Fixed) {
    let work = bits + GUARD_BITS;
    // Reduce exactly before rounding to fixed point.
    let twice = r * &Rational::from(2);
    let (num, den) = (twice.numer(), twice.denom());
    let den2: BigInt = den * 2;
    let reduced = Rational::new(num.mod_floor(&den2), den.clone());
    let (s, c) = sin_cos_pi(&Fixed::from_rational(&reduced, work));
    (c.rescale(bits), s.rescale(bits))
}

/// A complex fixed-point value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexFixed {
    pub re: Fixed,
    pub im: Fixed,
}

impl ComplexFixed {
    pub fn zero(bits: u32) -> Self {
        ComplexFixed {
            re: Fixed::zero(bits),
            im: Fixed::zero(bits),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_DIGITS: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651";

    #[test]
    fn pi_digits() {
        let p = pi(360);
        assert_eq!(p.to_decimal(100), PI_DIGITS[..102]);
    }

    #[test]
    fn trig_matches_f64() {
        for i in -40..=40 {
            let r = Rational::new(i, 17);
            let (c, s) = cos_sin_turns(&r, 128);
            let angle = 2.0 * std::f64::consts::PI * i as f64 / 17.0;
            assert!((c.to_f64() - angle.cos()).abs() < 1e-14);
            assert!((s.to_f64() - angle.sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn pythagorean_identity_at_high_precision() {
        for i in 0..50 {
            let (c, s) = cos_sin_turns(&Rational::new(i, 97), 256);
            let one = &c.mul(&c) + &s.mul(&s);
            let err = &one - &Fixed::from_int(1, 256);
            assert!(err.abs_below_pow2(250), "{err:?}");
        }
    }

    #[test]
    fn precision_levels_agree() {
        // sin(2π·3/7) at 192 bits vs the same value at 400 bits.
        let r = Rational::new(3, 7);
        let (_, lo) = cos_sin_turns(&r, 192);
        let (_, hi) = cos_sin_turns(&r, 400);
        let diff = &lo - &hi.rescale(192);
        assert!(diff.abs_below_pow2(190));
    }

    #[test]
    fn exact_special_values() {
        let (c, s) = cos_sin_turns(&Rational::new(1, 4), 200);
        assert!(c.abs_below_pow2(198));
        assert!((&s - &Fixed::from_int(1, 200)).abs_below_pow2(198));
        let (s, c) = sin_cos_pi(&Fixed::from_rational(&Rational::new(1, 6), 200));
        assert!((&s - &Fixed::from_rational(&Rational::new(1, 2), 200)).abs_below_pow2(198));
        assert!((c.to_f64() - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn decimal_formatting() {
        let x = Fixed::from_rational(&Rational::new(-3, 8), 10);
        assert_eq!(x.to_decimal(3), "-0.375");
        assert_eq!(Fixed::from_int(2, 8).to_decimal(0), "2");
        assert_eq!(x.log2_abs(), Some(-2));
        assert!(x.abs_below_pow2(1));
        assert!(!x.abs_below_pow2(2));
    }
}
