//! Verification of `n·tan(πρ) = tan(nπρ)` over rational `ρ`.
//!
//! With both tangents finite, multiplying through by `cos(πρ)·cos(nπρ)`
//! turns the equation into
//!
//! ```text
//! (n + 1)·sin((n - 1)πρ) = (n - 1)·sin((n + 1)πρ)
//! ```
//!
//! which is checked exactly as an equality of coordinate vectors over
//! `D_{2q}`. No division happens, so a vanishing sine needs no special case.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::arith::Rational;
use crate::basis::{BasisKey, CoordVector};
use crate::error::{Error, Result};
use crate::numeric::{sin_cos_pi, Fixed};
use crate::sine::{classify_ratio, sin_vector, Classification, Rho};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityVerdict {
    Holds,
    Fails,
    /// `ρ = 1/2`: `tan(πρ)` is undefined.
    PoleLhs,
    /// `nρ ≡ 1/2 (mod 1)`: `tan(nπρ)` is undefined, so the identity cannot hold.
    PoleRhs,
}

impl fmt::Display for IdentityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityVerdict::Holds => "holds",
            IdentityVerdict::Fails => "fails",
            IdentityVerdict::PoleLhs => "pole_lhs",
            IdentityVerdict::PoleRhs => "pole_rhs",
        })
    }
}

/// A verdict together with the two exact vectors that were compared:
/// `lhs = (n+1)·i·sin((n-1)πρ)` and `rhs = (n-1)·i·sin((n+1)πρ)`. Pole
/// verdicts carry no vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub verdict: IdentityVerdict,
    pub rho: Rho,
    pub n: i64,
    pub lhs: Option<CoordVector>,
    pub rhs: Option<CoordVector>,
}

impl<'de> Deserialize<'de> for IdentityCheck {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        type Entries = std::collections::BTreeMap<BasisKey, Rational>;
        #[derive(Deserialize)]
        struct Raw {
            verdict: IdentityVerdict,
            rho: Rho,
            n: i64,
            lhs: Option<Entries>,
            rhs: Option<Entries>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let conductor = raw.rho.conductor();
        let vector = |e: Option<Entries>| -> std::result::Result<_, D::Error> {
            e.map(|entries| {
                if entries.keys().any(|k| k.conductor() != conductor) {
                    return Err(serde::de::Error::custom("key does not match conductor"));
                }
                Ok(CoordVector::from_entries(conductor, entries))
            })
            .transpose()
        };
        Ok(IdentityCheck {
            rho: raw.rho,
            n: raw.n,
            verdict: raw.verdict,
            lhs: vector(raw.lhs)?,
            rhs: vector(raw.rhs)?,
        })
    }
}

fn check_degree(n: i64) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidDegree(n))
    } else {
        Ok(())
    }
}

/// `2nρ ≡ 1 (mod 2)`, i.e. `cos(nπρ) = 0`.
pub fn is_rhs_pole(rho: Rho, n: i64) -> bool {
    let q = rho.q() as i128;
    (2 * n as i128 * rho.p() as i128).rem_euclid(2 * q) == q
}

/// Decides `n·tan(πρ) = tan(nπρ)` exactly.
pub fn check_identity(rho: Rho, n: i64) -> Result<IdentityCheck> {
    check_degree(n)?;
    let pole = |verdict| IdentityCheck {
        rho,
        n,
        verdict,
        lhs: None,
        rhs: None,
    };
    if rho.q() == 2 {
        return Ok(pole(IdentityVerdict::PoleLhs));
    }
    if is_rhs_pole(rho, n) {
        return Ok(pole(IdentityVerdict::PoleRhs));
    }
    let lhs = sin_vector(rho, n - 1).scale(&Rational::from(n + 1));
    let rhs = sin_vector(rho, n + 1).scale(&Rational::from(n - 1));
    let verdict = if lhs == rhs {
        IdentityVerdict::Holds
    } else {
        IdentityVerdict::Fails
    };
    Ok(IdentityCheck {
        rho,
        n,
        verdict,
        lhs: Some(lhs),
        rhs: Some(rhs),
    })
}

/// The ratio form: classifies `sin((n-1)πρ)/sin((n+1)πρ)` and returns it
/// with the target `(n-1)/(n+1)`. The identity holds (away from poles)
/// iff the classification is `RationalRatio` of exactly the target.
pub fn ratio_form(rho: Rho, n: i64) -> Result<(Classification, Rational)> {
    check_degree(n)?;
    Ok((classify_ratio(rho, n - 1, n + 1), Rational::new(n - 1, n + 1)))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tallies {
    pub fails: u64,
    pub pole_rhs: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub p: u64,
    pub q: u64,
    pub n: i64,
}

/// Result of an exhaustive sweep. `violations` lists every grid point where
/// the identity holds; `total = fails + pole_rhs + violations.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub qmax: u64,
    pub nmax: u64,
    pub total: u64,
    pub tallies: Tallies,
    pub violations: Vec<Violation>,
}

impl SweepReport {
    fn merge(&mut self, other: SweepReport) {
        self.total += other.total;
        self.tallies.fails += other.tallies.fails;
        self.tallies.pole_rhs += other.tallies.pole_rhs;
        self.violations.extend(other.violations);
    }
}

fn sweep_denominator(q: u64, nmax: u64) -> SweepReport {
    let mut report = SweepReport {
        qmax: q,
        nmax,
        total: 0,
        tallies: Tallies::default(),
        violations: Vec::new(),
    };
    for p in (1..q).filter(|p| p.gcd(&q) == 1) {
        let rho = Rho::new(p as i64, q as i64).expect("0 < p < q, coprime");
        for n in 2..=nmax as i64 {
            report.total += 1;
            match check_identity(rho, n).expect("n >= 2").verdict {
                IdentityVerdict::Fails => report.tallies.fails += 1,
                IdentityVerdict::PoleRhs => report.tallies.pole_rhs += 1,
                IdentityVerdict::Holds => report.violations.push(Violation { p, q, n }),
                IdentityVerdict::PoleLhs => unreachable!("q >= 3 in a sweep"),
            }
        }
    }
    report
}

/// Checks every `ρ = p/q` with `3 ≤ q ≤ qmax`, `gcd(p, q) = 1`, against every
/// `2 ≤ n ≤ nmax`, on the current thread.
pub fn sweep(qmax: u64, nmax: u64) -> Result<SweepReport> {
    sweep_with_jobs(qmax, nmax, 1)
}

/// [`sweep`] fanned out over `jobs` worker threads, partitioned by `q`.
/// The report is identical for every `jobs` value.
pub fn sweep_with_jobs(qmax: u64, nmax: u64, jobs: usize) -> Result<SweepReport> {
    if qmax < 3 || nmax < 2 {
        return Err(Error::InvalidSweepBounds { qmax, nmax });
    }
    let parts: Vec<SweepReport> = if jobs <= 1 {
        (3..=qmax).map(|q| sweep_denominator(q, nmax)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| (3..=qmax).into_par_iter().map(|q| sweep_denominator(q, nmax)).collect())
    };
    let mut report = SweepReport {
        qmax,
        nmax,
        total: 0,
        tallies: Tallies::default(),
        violations: Vec::new(),
    };
    for part in parts {
        report.merge(part);
    }
    report.violations.sort_by_key(|v| (v.q, v.p, v.n));
    Ok(report)
}

/// A real root of `h(ρ) = (n-1)·sin((n+1)πρ) - (n+1)·sin((n-1)πρ)` with its
/// numeric witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRoot {
    pub n: i64,
    pub bits: u32,
    pub rho: Fixed,
    /// `|n·tan(πρ) - tan(nπρ)|`
    pub tan_residual: Fixed,
    /// `|sin((n-1)πρ)/sin((n+1)πρ) - (n-1)/(n+1)|`, when the denominator is
    /// nonzero at working precision.
    pub ratio_residual: Option<Fixed>,
}

struct RootFunction {
    n: i64,
    bits: u32,
}

impl RootFunction {
    fn sin_pi_multiple(&self, rho: &Fixed, k: i64) -> (Fixed, Fixed) {
        sin_cos_pi(&rho.mul_int(k))
    }

    fn h(&self, rho: &Fixed) -> Fixed {
        let (s_plus, _) = self.sin_pi_multiple(rho, self.n + 1);
        let (s_minus, _) = self.sin_pi_multiple(rho, self.n - 1);
        &s_plus.mul_int(self.n - 1) - &s_minus.mul_int(self.n + 1)
    }

    fn witness(&self, rho: Fixed) -> Result<RealRoot> {
        let (s1, c1) = self.sin_pi_multiple(&rho, 1);
        let (sn, cn) = self.sin_pi_multiple(&rho, self.n);
        if c1.abs_below_pow2(10) || cn.abs_below_pow2(10) {
            return Err(Error::NearPole(rho.to_decimal(20)));
        }
        let tan1 = s1.div(&c1).expect("cos(πρ) is away from zero");
        let tann = sn.div(&cn).expect("cos(nπρ) is away from zero");
        let tan_residual = (&tan1.mul_int(self.n) - &tann).abs();

        let (s_minus, _) = self.sin_pi_multiple(&rho, self.n - 1);
        let (s_plus, _) = self.sin_pi_multiple(&rho, self.n + 1);
        let target = Fixed::from_rational(&Rational::new(self.n - 1, self.n + 1), rho.frac_bits());
        let ratio_residual = s_minus.div(&s_plus).map(|r| (&r - &target).abs());
        Ok(RealRoot {
            n: self.n,
            bits: self.bits,
            rho,
            tan_residual,
            ratio_residual,
        })
    }
}

/// Bisection for a zero of `h` on `[a, b]`.
///
/// Returns `Ok(None)` when `h` has the same strict sign at both ends. The
/// bracket is halved until narrower than `2^{-precision_bits}`, working with
/// 64 extra bits. A returned root satisfies
/// `|n·tan(πρ*) - tan(nπρ*)| < 2^{-(precision_bits/2)}`; roots within
/// `2^{-10}` of a tangent pole are rejected with [`Error::NearPole`].
pub fn find_real_root(n: i64, a: &Rational, b: &Rational, precision_bits: u32) -> Result<Option<RealRoot>> {
    check_degree(n)?;
    if precision_bits < 64 {
        return Err(Error::InsufficientPrecision(precision_bits));
    }
    let (zero, one) = (Rational::zero(), Rational::one());
    if !(zero < *a && a < b && *b < one) {
        return Err(Error::InvalidInterval {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let work = precision_bits + 64;
    let f = RootFunction {
        n,
        bits: precision_bits,
    };
    let mut lo = Fixed::from_rational(a, work);
    let mut hi = Fixed::from_rational(b, work);
    let h_lo = f.h(&lo).signum();
    let h_hi = f.h(&hi).signum();
    if h_lo == 0 {
        return f.witness(lo).map(Some);
    }
    if h_hi == 0 {
        return f.witness(hi).map(Some);
    }
    if h_lo == h_hi {
        return Ok(None);
    }
    loop {
        let width = &hi - &lo;
        let mid = lo.midpoint(&hi);
        if width.abs_below_pow2(precision_bits as i64) {
            return f.witness(mid).map(Some);
        }
        match f.h(&mid).signum() {
            0 => return f.witness(mid).map(Some),
            s if s == h_lo => lo = mid,
            _ => hi = mid,
        }
    }
}
