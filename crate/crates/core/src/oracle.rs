//! Power-basis representation of `Q(ω_n)` modulo the cyclotomic polynomial
//! `Φ_n`, and high-precision numeric evaluation.
//!
//! Nothing here uses the decomposition routines of [`crate::basis`]: basis
//! keys are evaluated directly from their definition as products of
//! `(ω_q^e ± ω_q^{-e})/2`, which makes this module an independent check on
//! the basis decomposition.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{euler_phi, Rational};
use crate::basis::{build_basis, BasisKey, CoordVector, Part};
use crate::error::{Error, Result};
use crate::numeric::{cos_sin_turns, ComplexFixed, Fixed, GUARD_BITS};

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial(Vec<BigInt>);

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// `x^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        IntPolynomial(c)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPolynomial(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Exact quotient by a monic divisor; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let d = divisor.degree()?;
        assert!(divisor.0[d].is_one(), "div_exact: divisor must be monic");
        let mut rem = self.0.clone();
        if rem.len() <= d {
            return rem.iter().all(Zero::is_zero).then(|| IntPolynomial(Vec::new()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[i + d]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.0[..d].iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPolynomial::new(quot))
    }
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Φ_n = (x^n - 1) / ∏_{d | n, d < n} Φ_d`, by exact division.
pub fn cyclotomic_poly(n: u64) -> Arc<IntPolynomial> {
    assert!(n >= 1, "cyclotomic_poly: n must be positive");
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut poly = IntPolynomial::x_pow_minus_one(n as usize);
    for d in (1..n).filter(|d| n % d == 0) {
        poly = poly
            .div_exact(&cyclotomic_poly(d))
            .expect("Φ_d divides x^n - 1 for d | n");
    }
    let poly = Arc::new(poly);
    cyclotomic_cache().write().unwrap().insert(n, Arc::clone(&poly));
    poly
}

/// Per-conductor tables: `x^j mod Φ_n` for `0 ≤ j < n`, and memoized key
/// values.
struct ConductorTables {
    n: u64,
    phi: usize,
    powers: Vec<Vec<BigInt>>,
    keys: Mutex<HashMap<BasisKey, PowerPoly>>,
}

impl ConductorTables {
    fn build(n: u64) -> Self {
        let phi_poly = cyclotomic_poly(n);
        let phi = phi_poly.degree().unwrap();
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigInt::zero(); phi];
        if phi > 0 {
            cur[0] = BigInt::one();
        }
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and fold x^phi back in
            let top = cur.pop().unwrap_or_default();
            cur.insert(0, BigInt::zero());
            for (c, pc) in cur.iter_mut().zip(phi_poly.coeffs()) {
                *c -= &top * pc;
            }
        }
        ConductorTables {
            n,
            phi,
            powers,
            keys: Mutex::new(HashMap::new()),
        }
    }

    /// Reduces a sparse element of `Q[x]/(x^n - 1)` modulo `Φ_n`.
    fn reduce<'a>(&self, terms: impl IntoIterator<Item = (u64, &'a Rational)>) -> PowerPoly {
        let mut acc = vec![Rational::zero(); self.phi];
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in acc.iter_mut().zip(&self.powers[(e % self.n) as usize]) {
                if !p.is_zero() {
                    *slot += &(c * &Rational::from_integer(p.clone()));
                }
            }
        }
        PowerPoly { n: self.n, coeffs: acc }
    }
}

fn tables(n: u64) -> Arc<ConductorTables> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<ConductorTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let t = Arc::new(ConductorTables::build(n));
    cache.write().unwrap().insert(n, Arc::clone(&t));
    t
}

/// An element of `Q(ω_n)` as coefficients of `1, ω, …, ω^{φ(n)-1}`, fully
/// reduced modulo `Φ_n`. Serializes as a JSON array of `"num/den"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerPoly {
    n: u64,
    coeffs: Vec<Rational>,
}

impl PowerPoly {
    pub fn zero(n: u64) -> Self {
        PowerPoly {
            n,
            coeffs: vec![Rational::zero(); euler_phi(n) as usize],
        }
    }

    pub fn one(n: u64) -> Self {
        root_power(n, 0)
    }

    /// Panics unless `coeffs.len() == φ(n)`.
    pub fn from_coeffs(n: u64, coeffs: Vec<Rational>) -> Self {
        assert_eq!(
            coeffs.len() as u64,
            euler_phi(n),
            "power basis of Q(ω_{n}) has φ(n) entries"
        );
        PowerPoly { n, coeffs }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    fn check_same(&self, other: &PowerPoly) {
        assert_eq!(self.n, other.n, "power polynomials over different conductors");
    }

    pub fn add(&self, other: &PowerPoly) -> PowerPoly {
        self.check_same(other);
        PowerPoly {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &PowerPoly) -> PowerPoly {
        self.check_same(other);
        PowerPoly {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PowerPoly {
        PowerPoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Product in `Q(ω_n)`: schoolbook product, then `x^e ↦ x^{e mod n}`
    /// reduced through the power table.
    pub fn mul(&self, other: &PowerPoly) -> PowerPoly {
        self.check_same(other);
        let mut prod: BTreeMap<u64, Rational> = BTreeMap::new();
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                *prod.entry((i + j) as u64).or_default() += &(a * b);
            }
        }
        tables(self.n).reduce(prod.iter().map(|(&e, c)| (e, c)))
    }

    /// `λ` with `self = λ·v`, if one exists.
    pub fn proportionality(&self, v: &PowerPoly) -> Result<Option<Rational>> {
        if self.n != v.n {
            return Err(Error::ConductorMismatch(self.n, v.n));
        }
        let (i0, v0) = v
            .coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .ok_or(Error::ZeroDenominatorVector)?;
        let lambda = &self.coeffs[i0] / v0;
        let fits = self.coeffs.iter().zip(&v.coeffs).all(|(a, b)| *a == &lambda * b);
        Ok(fits.then_some(lambda))
    }
}

impl Serialize for PowerPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

/// `ω_n^t` reduced modulo `Φ_n`.
pub fn root_power(n: u64, t: i64) -> PowerPoly {
    let e = (t as i128).rem_euclid(n as i128) as u64;
    tables(n).reduce([(e, &Rational::one())])
}

/// `(Re(ω_n^t), i·Im(ω_n^t))` as `((ω^t + ω^{-t})/2, (ω^t - ω^{-t})/2)`.
pub fn re_im_power(n: u64, t: i64) -> (PowerPoly, PowerPoly) {
    let e = (t as i128).rem_euclid(n as i128) as u64;
    let conj = (n - e) % n;
    let half = Rational::new(1, 2);
    let neg_half = Rational::new(-1, 2);
    let tables = tables(n);
    let re = tables.reduce([(e, &half), (conj, &half)]);
    let im = tables.reduce([(e, &half), (conj, &neg_half)]);
    (re, im)
}

/// Value of a basis key in the power basis of its conductor `n`.
///
/// Each atom `(q, part, e)` is lifted through `ω_q = ω_n^{n/q}` to
/// `(x^a ± x^{-a})/2` with `a = e·n/q`; the product is formed in
/// `Q[x]/(x^n - 1)` and reduced modulo `Φ_n` once.
pub fn key_power(n: u64, key: &BasisKey) -> PowerPoly {
    assert_eq!(key.conductor(), n, "key {key} is not valid for conductor {n}");
    let tables = tables(n);
    if let Some(p) = tables.keys.lock().unwrap().get(key) {
        return p.clone();
    }
    let half = Rational::new(1, 2);
    let mut prod: BTreeMap<u64, Rational> = BTreeMap::from([(0, Rational::one())]);
    for atom in key.atoms() {
        let a = atom.exponent % atom.modulus * (n / atom.modulus) % n;
        let sign = match atom.part {
            Part::A => Rational::one(),
            Part::B => Rational::from(-1),
        };
        let factor = [(a, half.clone()), ((n - a) % n, &half * &sign)];
        let mut next: BTreeMap<u64, Rational> = BTreeMap::new();
        for (e, c) in &prod {
            for (fe, fc) in &factor {
                *next.entry((e + fe) % n).or_default() += &(c * fc);
            }
        }
        next.retain(|_, c| !c.is_zero());
        prod = next;
    }
    let value = tables.reduce(prod.iter().map(|(&e, c)| (e, c)));
    tables.keys.lock().unwrap().insert(key.clone(), value.clone());
    value
}

/// `Σ v[key]·key_power(key)`.
pub fn vector_power(v: &CoordVector) -> PowerPoly {
    let n = v.n();
    let phi = euler_phi(n) as usize;
    let mut coeffs = vec![Rational::zero(); phi];
    for (key, c) in v.iter() {
        let kp = key_power(n, key);
        for (slot, k) in coeffs.iter_mut().zip(kp.coeffs()) {
            if !k.is_zero() {
                *slot += &(c * k);
            }
        }
    }
    PowerPoly { n, coeffs }
}

/// The `φ(n) × φ(n)` matrix whose rows are the power-basis values of the
/// keys of `D_n`, in canonical key order.
pub fn basis_matrix(n: u64) -> Vec<Vec<Rational>> {
    build_basis(n)
        .keys
        .iter()
        .map(|k| key_power(n, k).coeffs.clone())
        .collect()
}

/// Rank over `Q` by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip().unwrap();
        let pivot_row: Vec<Rational> = rows[rank].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &(&f * p);
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Evaluates coordinate vectors numerically, caching `cos/sin(2πe/q)` per
/// atom. Internally works at `bits +` [`GUARD_BITS`].
pub struct NumericEvaluator {
    bits: u32,
    work: u32,
    trig: HashMap<(u64, u64), (Fixed, Fixed)>,
}

impl NumericEvaluator {
    pub fn new(bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::InsufficientPrecision(bits));
        }
        Ok(NumericEvaluator {
            bits,
            work: bits + GUARD_BITS,
            trig: HashMap::new(),
        })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn trig(&mut self, q: u64, e: u64) -> &(Fixed, Fixed) {
        let work = self.work;
        self.trig
            .entry((q, e))
            .or_insert_with(|| cos_sin_turns(&Rational::new(e as i64, q as i64), work))
    }

    /// Numeric value of a single key: a real or purely imaginary number.
    pub fn key_value(&mut self, key: &BasisKey) -> ComplexFixed {
        let mut mag = Fixed::from_int(1, self.work);
        for atom in key.atoms() {
            let (c, s) = self.trig(atom.modulus, atom.exponent).clone();
            mag = mag.mul(match atom.part {
                Part::A => &c,
                Part::B => &s,
            });
        }
        let zero = Fixed::zero(self.work);
        // multiply by i^parity
        match key.parity() % 4 {
            0 => ComplexFixed { re: mag, im: zero },
            1 => ComplexFixed { re: zero, im: mag },
            2 => ComplexFixed { re: -mag, im: zero },
            _ => ComplexFixed { re: zero, im: -mag },
        }
    }

    pub fn eval(&mut self, v: &CoordVector) -> ComplexFixed {
        let mut acc = ComplexFixed::zero(self.work);
        for (key, c) in v.iter() {
            let kv = self.key_value(key);
            acc.re = &acc.re + &kv.re.mul_rational(c);
            acc.im = &acc.im + &kv.im.mul_rational(c);
        }
        ComplexFixed {
            re: acc.re.rescale(self.bits),
            im: acc.im.rescale(self.bits),
        }
    }
}

/// Evaluates `v` at `precision_bits` of binary precision.
///
/// The result is within `2^{-(precision_bits - 20)}` of the exact value for
/// vectors with up to a few thousand terms and coefficients below `2^8`
/// (desk scale); the evaluation keeps [`GUARD_BITS`] extra bits throughout.
pub fn numeric_eval(v: &CoordVector, precision_bits: u32) -> Result<ComplexFixed> {
    Ok(NumericEvaluator::new(precision_bits)?.eval(v))
}
