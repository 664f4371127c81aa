//! Exact classification of `sin(kπρ) / sin(mπρ)` for rational `ρ = p/q`.
//!
//! `sin(kπp/q) = Im(ω_{2q}^{kp})`, so every such sine is represented by the
//! imaginary part of a root-of-unity decomposition over `D_{2q}`. Because
//! `D_{2q}` is a basis, the ratio of two sines is rational exactly when the
//! two coordinate vectors are proportional.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Rational;
use crate::basis::{decompose_root, proportionality, CoordVector};
use crate::error::{Error, Result};
use crate::oracle::{re_im_power, PowerPoly};

/// A rotation number `p/q` in lowest terms with `0 < p/q < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rho {
    p: u64,
    q: u64,
}

impl Rho {
    /// Reduces `p/q` to lowest terms; rejects values outside `(0, 1)`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let invalid = || Error::InvalidRho(format!("{p}/{q}"));
        if q == 0 {
            return Err(invalid());
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        if p <= 0 || p >= q {
            return Err(invalid());
        }
        let g = p.gcd(&q);
        Ok(Rho {
            p: (p / g) as u64,
            q: (q / g) as u64,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The conductor `2q` in which all `sin(kπρ)` live.
    pub fn conductor(&self) -> u64 {
        2 * self.q
    }

    pub fn as_rational(&self) -> Rational {
        Rational::new(self.p as i64, self.q as i64)
    }

    /// Exponent `kp mod 2q` with `sin(kπρ) = Im(ω_{2q}^{kp})`.
    pub fn root_exponent(&self, k: i64) -> u64 {
        let m = self.conductor() as i128;
        ((k as i128 % m) * self.p as i128).rem_euclid(m) as u64
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Rho {
    type Err = Error;

    /// Parses `"p/q"` with no whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "rotation number (expected p/q)",
            input: s.to_string(),
        };
        let (p, q) = s.split_once('/').ok_or_else(err)?;
        Rho::new(p.parse().map_err(|_| err())?, q.parse().map_err(|_| err())?)
    }
}

impl Serialize for Rho {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rho {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Outcome of the exact sine-ratio test.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Classification {
    /// The numerator sine vanishes (and the denominator does not).
    Zero,
    /// `sin(kπρ) = λ·sin(mπρ)` exactly, `λ ≠ 0`.
    RationalRatio(Rational),
    Irrational,
    /// `sin(mπρ) = 0`; the ratio is undefined.
    DenominatorZero,
}

impl Classification {
    /// The tag used in JSON output.
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::Zero => "zero",
            Classification::RationalRatio(_) => "rational",
            Classification::Irrational => "irrational",
            Classification::DenominatorZero => "denominator_zero",
        }
    }

    pub fn lambda(&self) -> Option<&Rational> {
        match self {
            Classification::RationalRatio(l) => Some(l),
            _ => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::RationalRatio(l) => write!(f, "rational {l}"),
            other => f.write_str(other.tag()),
        }
    }
}

/// `i·sin(kπρ)` as a coordinate vector over `D_{2q}`.
pub fn sin_vector(rho: Rho, k: i64) -> CoordVector {
    decompose_root(rho.conductor(), rho.root_exponent(k) as i64).im
}

/// `i·sin(kπρ)` in the power basis of `Q(ω_{2q})`, without going through
/// the basis decomposition.
pub fn sin_power(rho: Rho, k: i64) -> PowerPoly {
    re_im_power(rho.conductor(), rho.root_exponent(k) as i64).1
}

/// Classifies `u / v` for two sine vectors over the same basis.
pub fn classify_vectors(u: &CoordVector, v: &CoordVector) -> Classification {
    if v.is_zero() {
        return Classification::DenominatorZero;
    }
    if u.is_zero() {
        return Classification::Zero;
    }
    match proportionality(u, v).expect("sine vectors share a conductor") {
        Some(lambda) => Classification::RationalRatio(lambda),
        None => Classification::Irrational,
    }
}

/// Same decision as [`classify_vectors`] in the power basis.
pub fn classify_powers(u: &PowerPoly, v: &PowerPoly) -> Classification {
    if v.is_zero() {
        return Classification::DenominatorZero;
    }
    if u.is_zero() {
        return Classification::Zero;
    }
    match u.proportionality(v).expect("sine values share a conductor") {
        Some(lambda) => Classification::RationalRatio(lambda),
        None => Classification::Irrational,
    }
}

/// Classifies `sin(kπρ) / sin(mπρ)` exactly through the `D_{2q}` basis.
pub fn classify_ratio(rho: Rho, k: i64, m: i64) -> Classification {
    let v = sin_vector(rho, m);
    if v.is_zero() {
        return Classification::DenominatorZero;
    }
    classify_vectors(&sin_vector(rho, k), &v)
}

/// The same classification computed in the power basis modulo `Φ_{2q}`.
pub fn classify_ratio_oracle(rho: Rho, k: i64, m: i64) -> Classification {
    classify_powers(&sin_power(rho, k), &sin_power(rho, m))
}

/// JSON record for one classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub rho: Rho,
    pub k: i64,
    pub m: i64,
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<Rational>,
}

impl RatioReport {
    pub fn new(rho: Rho, k: i64, m: i64, class: &Classification) -> Self {
        RatioReport {
            rho,
            k,
            m,
            class: class.tag().to_string(),
            lambda: class.lambda().cloned(),
        }
    }
}
