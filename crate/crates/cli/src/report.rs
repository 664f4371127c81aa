//! Subcommand bodies and their text/JSON renderings.

use std::fmt::Write as _;

use cyclotan::audit::{audit_conductor, ConductorAudit};
use cyclotan::sine::RatioReport;
use cyclotan::{
    build_basis, check_identity, classify_ratio, decompose_root, euler_phi, find_real_root, sweep_with_jobs, BasisKey,
    CoordVector, Decomposition, IdentityCheck, IdentityVerdict, Rational, Result, Rho, SweepReport,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::Format;

/// Digits printed for a located root.
const ROOT_DIGITS: usize = 40;

pub struct Outcome {
    pub code: u8,
    json: String,
    text: String,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, text: String, ok: bool) -> Self {
        Outcome {
            code: if ok { 0 } else { 1 },
            json: serde_json::to_string(value).expect("report serializes"),
            text,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", self.json),
            Format::Text => self.text.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub n: u64,
    pub phi: u64,
    pub keys: Vec<BasisKey>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub nmax: u64,
    pub bits: u32,
    pub conductors: Vec<ConductorAudit>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub n: i64,
    pub a: Rational,
    pub b: Rational,
    pub bits: u32,
    pub root: Option<String>,
    pub tan_residual_log2: Option<i64>,
    pub ratio_residual_log2: Option<i64>,
}

fn vector_text(v: &CoordVector) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = v.iter().map(|(k, c)| format!("({c})·{k}")).collect();
    terms.join(" + ")
}

pub fn basis(n: u64) -> Result<Outcome> {
    let basis = build_basis(n);
    let report = BasisReport {
        n,
        phi: euler_phi(n),
        keys: basis.keys.clone(),
    };
    let mut text = format!("D_{n}: {} elements (phi = {})\n", report.keys.len(), report.phi);
    for key in &report.keys {
        let _ = writeln!(text, "  {key}");
    }
    Ok(Outcome::new(&report, text, true))
}

pub fn decompose(n: u64, t: i64) -> Result<Outcome> {
    let d: Decomposition = decompose_root(n, t);
    let text = format!(
        "Re(w_{n}^{t})   = {}\ni*Im(w_{n}^{t}) = {}\n",
        vector_text(&d.re),
        vector_text(&d.im)
    );
    Ok(Outcome::new(&d, text, true))
}

pub fn sin_ratio(rho: Rho, k: i64, m: i64) -> Result<Outcome> {
    let class = classify_ratio(rho, k, m);
    let report = RatioReport::new(rho, k, m, &class);
    let text = format!("sin({k}·π·{rho}) / sin({m}·π·{rho}): {class}\n");
    Ok(Outcome::new(&report, text, true))
}

pub fn check(rho: Rho, n: i64) -> Result<Outcome> {
    let check: IdentityCheck = check_identity(rho, n)?;
    let verdict = serde_json::to_value(check.verdict).expect("verdict serializes");
    let mut text = format!(
        "{n}·tan(π·{rho}) = tan({n}·π·{rho}): {}\n",
        verdict.as_str().unwrap_or_default()
    );
    if let (Some(lhs), Some(rhs)) = (&check.lhs, &check.rhs) {
        let _ = writeln!(text, "  lhs = {}", vector_text(lhs));
        let _ = writeln!(text, "  rhs = {}", vector_text(rhs));
    }
    let ok = check.verdict != IdentityVerdict::Holds;
    Ok(Outcome::new(&check, text, ok))
}

pub fn sweep(qmax: u64, nmax: u64, jobs: usize) -> Result<Outcome> {
    let report: SweepReport = sweep_with_jobs(qmax, nmax, jobs)?;
    let mut text = format!(
        "sweep q <= {qmax}, n <= {nmax}: {} checked, {} fail, {} pole_rhs, {} violations\n",
        report.total,
        report.tallies.fails,
        report.tallies.pole_rhs,
        report.violations.len()
    );
    for v in &report.violations {
        let _ = writeln!(text, "  holds: p={} q={} n={}", v.p, v.q, v.n);
    }
    let ok = report.violations.is_empty();
    Ok(Outcome::new(&report, text, ok))
}

pub fn verify_basis(nmax: u64, bits: u32, jobs: usize) -> Result<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let conductors = pool.install(|| {
        (1..=nmax)
            .into_par_iter()
            .map(|n| audit_conductor(n, bits))
            .collect::<Result<Vec<_>>>()
    })?;
    let passed = conductors.iter().all(ConductorAudit::passed);
    let mut text = format!("{:>5} {:>5} {:>6} {:>10}  result\n", "n", "phi", "|D_n|", "max err");
    for a in &conductors {
        let err = a.max_error_log2.map_or_else(|| "0".to_string(), |e| format!("2^{e}"));
        let _ = writeln!(
            text,
            "{:>5} {:>5} {:>6} {:>10}  {}",
            a.n,
            a.phi,
            a.basis_size,
            err,
            if a.passed() { "pass" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        text,
        "{}",
        if passed {
            "all conductors pass"
        } else {
            "verification failed"
        }
    );
    let report = VerifyReport {
        nmax,
        bits,
        conductors,
        passed,
    };
    Ok(Outcome::new(&report, text, passed))
}

pub fn find_root(n: i64, a: Rational, b: Rational, bits: u32) -> Result<Outcome> {
    let root = find_real_root(n, &a, &b, bits)?;
    let report = RootReport {
        n,
        a: a.clone(),
        b: b.clone(),
        bits,
        root: root.as_ref().map(|r| r.rho.to_decimal(ROOT_DIGITS)),
        tan_residual_log2: root.as_ref().and_then(|r| r.tan_residual.log2_abs()),
        ratio_residual_log2: root
            .as_ref()
            .and_then(|r| r.ratio_residual.as_ref())
            .and_then(|r| r.log2_abs()),
    };
    let text = match &report.root {
        Some(rho) => {
            let show = |e: Option<i64>| e.map_or_else(|| "0".to_string(), |e| format!("< 2^{}", e + 1));
            format!(
                "root of {n}·tan(πρ) = tan({n}πρ) on [{a}, {b}]:\n  ρ = {rho}\n  tan residual   {}\n  ratio residual {}\n",
                show(report.tan_residual_log2),
                show(report.ratio_residual_log2)
            )
        }
        None => format!("no sign change of the identity on [{a}, {b}] for n = {n}\n"),
    };
    Ok(Outcome::new(&report, text, true))
}
