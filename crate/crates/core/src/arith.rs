//! Exact rationals and the elementary number theory the rest of the crate
//! consumes: trial-division factorization, Euler's totient, modular inverses
//! and the CRT split of a root-of-unity exponent.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact fraction of unbounded integers, always in lowest terms with a
/// positive denominator, so structural equality is numeric equality.
///
/// Displays and serializes as `"num/den"` (the denominator is always
/// written, e.g. `"-2/1"`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Rational(self.0.recip()))
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Nearest `f64`; for display and coarse sanity checks only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Parses a decimal literal such as `0.35` or `-1.5e-2` exactly.
    pub fn from_decimal_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "decimal",
            input: s.to_string(),
        };
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
            None => (s, 0),
        };
        let (neg, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty()
            || !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit())
        {
            return Err(err());
        }
        let all: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| err())?;
        let all = all / 10;
        let scale = exp - frac_part.len() as i32;
        let ten = BigInt::from(10u32);
        let mut value = if scale >= 0 {
            Rational::from_integer(all * num_traits::pow(ten, scale as usize))
        } else {
            Rational::new(all, num_traits::pow(ten, (-scale) as usize))
        };
        if neg {
            value = -value;
        }
        Ok(value)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"num/den"` or a bare integer, no whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "rational",
            input: s.to_string(),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() || s.contains(char::is_whitespace) {
            return Err(err());
        }
        Ok(Rational::new(num, den))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl<'a> AddAssign<&'a Rational> for Rational {
    fn add_assign(&mut self, rhs: &'a Rational) {
        self.0 += &rhs.0;
    }
}

impl<'a> SubAssign<&'a Rational> for Rational {
    fn sub_assign(&mut self, rhs: &'a Rational) {
        self.0 -= &rhs.0;
    }
}

impl<'a> MulAssign<&'a Rational> for Rational {
    fn mul_assign(&mut self, rhs: &'a Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Prime factorization as `(prime, exponent)` pairs with strictly
/// increasing primes. The factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.0
    }

    /// The pairwise coprime prime powers `q_i = p_i^{e_i}`, in prime order.
    pub fn prime_powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, e)| p.pow(e))
    }

    pub fn value(&self) -> u64 {
        self.prime_powers().product()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Trial division with a 2/3 wheel; adequate for the `n < 10^6` range this
/// crate works in.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize: n must be positive");
    let mut n = n;
    let mut out = Vec::new();
    let mut take = |n: &mut u64, p: u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    take(&mut n, 2);
    take(&mut n, 3);
    let mut p = 5;
    let mut step = 2;
    while p * p <= n {
        take(&mut n, p);
        p += step;
        step = 6 - step;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Factorization(out)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .factors()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// The unique `x` in `[0, m)` with `a·x ≡ 1 (mod m)`.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64> {
    assert!(m >= 1, "mod_inverse: modulus must be positive");
    let m_i = m as i128;
    let a_red = (a as i128).rem_euclid(m_i);
    let egcd = a_red.extended_gcd(&m_i);
    if egcd.gcd != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    Ok(egcd.x.rem_euclid(m_i) as u64)
}

/// Splits the exponent `t` of `ω_n^t` into per-prime-power exponents:
/// returns `(q_i, s_i)` with `Σ s_i·(n/q_i) ≡ t (mod n)` and `0 ≤ s_i < q_i`,
/// so that `ω_n^t = ∏ ω_{q_i}^{s_i}`. Any integer `t` is accepted.
pub fn crt_components(n: u64, t: i64) -> Vec<(u64, u64)> {
    assert!(n >= 1, "crt_components: n must be positive");
    let t = (t as i128).rem_euclid(n as i128) as u64;
    let out: Vec<(u64, u64)> = factorize(n)
        .prime_powers()
        .map(|q| {
            let cofactor = n / q;
            let inv = mod_inverse(cofactor as i64, q).expect("prime-power cofactors are coprime");
            let s = ((t % q) as u128 * inv as u128 % q as u128) as u64;
            (q, s)
        })
        .collect();
    debug_assert_eq!(
        out.iter().map(|&(q, s)| s as u128 * (n / q) as u128).sum::<u128>() % n as u128,
        t as u128
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(12).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(49).factors(), &[(7, 2)]);
    }

    #[test]
    fn factorize_reconstructs_up_to_ten_thousand() {
        for n in 1..=10_000u64 {
            let f = factorize(n);
            assert_eq!(f.value(), n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.factors().iter().all(|&(p, e)| is_prime(p) && e > 0));
        }
    }

    #[test]
    fn phi_matches_coprime_count() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(12), 4);
        for n in 1..=10_000u64 {
            let brute = (1..=n).filter(|&i| i.gcd(&n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute, "n = {n}");
        }
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(3, 4), Ok(3));
        assert_eq!(mod_inverse(4, 9), Ok(7));
        assert_eq!(mod_inverse(2, 4), Err(Error::NotInvertible { a: 2, m: 4 }));
        assert_eq!(mod_inverse(-1, 7), Ok(6));
        assert_eq!(mod_inverse(5, 1), Ok(0));
    }

    #[test]
    fn mod_inverse_exhaustive() {
        for m in 1..=1000u64 {
            for a in 0..m {
                match mod_inverse(a as i64, m) {
                    Ok(x) => {
                        assert!(x < m);
                        assert_eq!(a * x % m, 1 % m);
                    }
                    Err(_) => assert_ne!(a.gcd(&m), 1),
                }
            }
        }
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_components(12, 3), vec![(4, 1), (3, 0)]);
        assert_eq!(crt_components(12, 1), vec![(4, 3), (3, 1)]);
        assert_eq!(crt_components(12, 0), vec![(4, 0), (3, 0)]);
        assert_eq!(crt_components(12, -11), crt_components(12, 1));
        assert!(crt_components(1, 5).is_empty());
    }

    #[test]
    fn crt_reconstructs_exponent() {
        for n in 1..=1000u64 {
            for t in 0..n {
                let parts = crt_components(n, t as i64);
                let sum: u64 = parts.iter().map(|&(q, s)| s * (n / q)).sum();
                assert_eq!(sum % n, t);
                assert!(parts.iter().all(|&(q, s)| s < q));
            }
        }
    }

    #[test]
    fn rational_display_and_parse() {
        let r = Rational::new(-4, 2);
        assert_eq!(r.to_string(), "-2/1");
        assert_eq!("6/-4".parse::<Rational>().unwrap(), Rational::new(-3, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1 /2".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(Rational::from_decimal_str("0.35").unwrap(), Rational::new(7, 20));
        assert_eq!(Rational::from_decimal_str("-1.5e-2").unwrap(), Rational::new(-3, 200));
        assert_eq!(Rational::from_decimal_str("2").unwrap(), Rational::from(2));
        assert_eq!(Rational::from_decimal_str(".5").unwrap(), Rational::new(1, 2));
        assert!(Rational::from_decimal_str("1.2.3").is_err());
        assert!(Rational::from_decimal_str("").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = Rational> {
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rational::new(n, d))
        }

        proptest! {
            #[test]
            fn field_axioms(a in rational(), b in rational(), c in rational()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&(&a - &b) + &b, a.clone());
                if let Some(inv) = b.recip() {
                    prop_assert_eq!(&(&a / &b) * &b, a.clone());
                    prop_assert!((&b * &inv).is_one());
                }
            }

            #[test]
            fn always_reduced(a in rational()) {
                prop_assert!(a.denom() > &BigInt::zero());
                prop_assert!(a.numer().gcd(a.denom()).is_one());
                prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
            }
        }
    }
}
