//! Cross-check of the `D_n` decomposition against the power-basis oracle
//! and against direct numeric evaluation.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{crt_components, euler_phi, Rational};
use crate::basis::{build_basis, decompose_root, Decomposition};
use crate::error::Result;
use crate::numeric::cos_sin_turns;
use crate::oracle::{re_im_power, vector_power, NumericEvaluator};

/// Per-conductor audit outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorAudit {
    pub n: u64,
    pub phi: u64,
    pub basis_size: u64,
    /// Exponents `t` whose decomposition disagrees with the power oracle.
    pub oracle_mismatches: Vec<u64>,
    /// Exponents `t` whose numeric value misses `cos/sin(2πt/n)` by
    /// `2^{-(bits-20)}` or more.
    pub numeric_mismatches: Vec<u64>,
    /// Exponents `t` coprime to `n` with a coefficient outside `{-1, 0, 1}`.
    pub coprime_bound_violations: Vec<u64>,
    /// Exponents whose coefficients are not all `±2^z`, `z` the number of
    /// odd prime-power factors with a zero CRT exponent.
    pub structure_violations: Vec<u64>,
    /// `floor(log2)` of the largest numeric error seen, if any was nonzero.
    pub max_error_log2: Option<i64>,
}

impl ConductorAudit {
    pub fn passed(&self) -> bool {
        self.basis_size == self.phi
            && self.oracle_mismatches.is_empty()
            && self.numeric_mismatches.is_empty()
            && self.coprime_bound_violations.is_empty()
            && self.structure_violations.is_empty()
    }
}

/// Every coefficient of the decomposition lies in `{-1, 0, 1}`.
pub fn coefficients_are_units(d: &Decomposition) -> bool {
    d.re.iter().chain(d.im.iter()).all(|(_, c)| c.abs() == Rational::one())
}

/// The number of odd prime-power factors `q_i` of `n` with `s_i = 0`; every
/// nonzero coefficient of `decompose_root(n, t)` has absolute value `2^z`.
pub fn zero_odd_components(n: u64, t: i64) -> u32 {
    crt_components(n, t)
        .iter()
        .filter(|&&(q, s)| q % 2 == 1 && s == 0)
        .count() as u32
}

/// Audits every exponent `0 ≤ t < n` at `bits` of numeric precision.
pub fn audit_conductor(n: u64, bits: u32) -> Result<ConductorAudit> {
    let mut evaluator = NumericEvaluator::new(bits)?;
    let tolerance = bits as i64 - 20;
    let mut audit = ConductorAudit {
        n,
        phi: euler_phi(n),
        basis_size: build_basis(n).len() as u64,
        oracle_mismatches: Vec::new(),
        numeric_mismatches: Vec::new(),
        coprime_bound_violations: Vec::new(),
        structure_violations: Vec::new(),
        max_error_log2: None,
    };
    for t in 0..n {
        let d = decompose_root(n, t as i64);

        let (re_oracle, im_oracle) = re_im_power(n, t as i64);
        if vector_power(&d.re) != re_oracle || vector_power(&d.im) != im_oracle {
            audit.oracle_mismatches.push(t);
        }

        let (cos, sin) = cos_sin_turns(&Rational::new(t as i64, n as i64), bits);
        let re = evaluator.eval(&d.re);
        let im = evaluator.eval(&d.im);
        let errors = [&re.re - &cos, re.im, im.re, &im.im - &sin];
        if errors.iter().any(|e| !e.abs_below_pow2(tolerance)) {
            audit.numeric_mismatches.push(t);
        }
        let worst = errors.iter().filter_map(|e| e.log2_abs()).max();
        audit.max_error_log2 = audit.max_error_log2.max(worst);

        if t.gcd(&n) == 1 && !coefficients_are_units(&d) {
            audit.coprime_bound_violations.push(t);
        }
        let expected = Rational::from_integer(1i64 << zero_odd_components(n, t as i64));
        if !d.re.iter().chain(d.im.iter()).all(|(_, c)| c.abs() == expected) {
            audit.structure_violations.push(t);
        }
    }
    Ok(audit)
}
