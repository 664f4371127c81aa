//! The real/imaginary product basis `D_n` of `Q(ω_n)`.
//!
//! For each prime-power factor `q` of `n` there is a local basis of
//! `Q(ω_q)` made of real parts (`A` atoms, value `Re(ω_q^e)`) and
//! i-times-imaginary parts (`B` atoms, value `i·Im(ω_q^e)`):
//!
//! * odd `q = p^k`: `A_e`, `B_e` for `1 ≤ e ≤ φ(q)/2`;
//! * `q = 2^k`, `k ≥ 2`: `A_e` for `0 ≤ e < 2^{k-2}`, `B_e` for `0 < e ≤ 2^{k-2}`;
//! * `q ∈ {1, 2}`: the single atom `A_0`, i.e. the constant 1.
//!
//! `D_n` is the set of products choosing one atom per factor. A
//! [`BasisKey`] with an even number of `B` atoms is real, odd is purely
//! imaginary.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{crt_components, euler_phi, factorize, Factorization, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    /// `Re(ω_q^e)`
    A,
    /// `i·Im(ω_q^e)`
    B,
}

/// One local basis element of `Q(ω_q)` for a prime-power (or 1) modulus `q`.
///
/// Field order matters: the derived ordering is modulus, then `A` before
/// `B`, then exponent ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisAtom {
    pub modulus: u64,
    pub part: Part,
    pub exponent: u64,
}

impl BasisAtom {
    pub const fn new(modulus: u64, part: Part, exponent: u64) -> Self {
        BasisAtom {
            modulus,
            part,
            exponent,
        }
    }

    /// Whether this atom belongs to the local basis of its modulus.
    pub fn is_valid(&self) -> bool {
        let q = self.modulus;
        if q <= 2 {
            return self.part == Part::A && self.exponent == 0;
        }
        if q.is_power_of_two() {
            let quarter = q / 4;
            return match self.part {
                Part::A => self.exponent < quarter,
                Part::B => self.exponent > 0 && self.exponent <= quarter,
            };
        }
        let f = factorize(q);
        f.len() == 1 && (1..=euler_phi(q) / 2).contains(&self.exponent)
    }
}

impl fmt::Display for BasisAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = match self.part {
            Part::A => 'A',
            Part::B => 'B',
        };
        write!(f, "{part}{}.{}", self.modulus, self.exponent)
    }
}

impl FromStr for BasisAtom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "basis atom",
            input: s.to_string(),
        };
        let part = match s.as_bytes().first() {
            Some(b'A') => Part::A,
            Some(b'B') => Part::B,
            _ => return Err(err()),
        };
        let (q, e) = s[1..].split_once('.').ok_or_else(err)?;
        let atom = BasisAtom::new(q.parse().map_err(|_| err())?, part, e.parse().map_err(|_| err())?);
        if atom.is_valid() {
            Ok(atom)
        } else {
            Err(err())
        }
    }
}

/// An element of `D_n`: one atom per prime-power factor of `n`, in
/// increasing prime order. Serialized as e.g. `"A4.0*B3.1"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisKey(Vec<BasisAtom>);

impl BasisKey {
    pub fn new(atoms: Vec<BasisAtom>) -> Self {
        BasisKey(atoms)
    }

    pub fn atoms(&self) -> &[BasisAtom] {
        &self.0
    }

    /// Number of `B` atoms; the key's value is real iff this is even.
    pub fn parity(&self) -> usize {
        self.0.iter().filter(|a| a.part == Part::B).count()
    }

    /// The conductor `n` this key belongs to.
    pub fn conductor(&self) -> u64 {
        self.0.iter().map(|a| a.modulus).product()
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

impl FromStr for BasisKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let atoms = s.split('*').map(str::parse).collect::<Result<Vec<BasisAtom>>>()?;
        let key = BasisKey(atoms);
        let moduli: Vec<u64> = key.0.iter().map(|a| a.modulus).collect();
        if moduli != basis_moduli(key.conductor()) {
            return Err(Error::Parse {
                what: "basis key",
                input: s.to_string(),
            });
        }
        Ok(key)
    }
}

impl Serialize for BasisKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BasisKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// The moduli a key for conductor `n` ranges over: the prime powers of `n`,
/// or `[1]` for `n = 1`.
pub fn basis_moduli(n: u64) -> Vec<u64> {
    if n == 1 {
        vec![1]
    } else {
        factorize(n).prime_powers().collect()
    }
}

/// The local basis of `Q(ω_q)`, `A` atoms first.
pub fn local_atoms(q: u64) -> Vec<BasisAtom> {
    if q <= 2 {
        return vec![BasisAtom::new(q, Part::A, 0)];
    }
    let (a_range, b_range) = if q.is_power_of_two() {
        let quarter = q / 4;
        (0..quarter, 1..quarter + 1)
    } else {
        let half = euler_phi(q) / 2;
        (1..half + 1, 1..half + 1)
    };
    a_range
        .map(|e| BasisAtom::new(q, Part::A, e))
        .chain(b_range.map(|e| BasisAtom::new(q, Part::B, e)))
        .collect()
}

/// A sparse vector of exact coordinates over `D_n`. Zero coefficients are
/// never stored, so structural equality is mathematical equality.
///
/// Serializes as a JSON object `{key: "num/den"}`; the conductor is carried
/// by the enclosing record.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoordVector {
    n: u64,
    entries: BTreeMap<BasisKey, Rational>,
}

impl CoordVector {
    pub fn zero(n: u64) -> Self {
        CoordVector {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a vector from raw entries, dropping zeros.
    ///
    /// Panics if a key does not belong to `D_n`.
    pub fn from_entries(n: u64, entries: impl IntoIterator<Item = (BasisKey, Rational)>) -> Self {
        let mut v = CoordVector::zero(n);
        for (k, c) in entries {
            v.add_term(k, &c);
        }
        v
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn get(&self, key: &BasisKey) -> Option<&Rational> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKey, &Rational)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &BTreeMap<BasisKey, Rational> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, key: BasisKey, coeff: &Rational) {
        assert_eq!(key.conductor(), self.n, "key {key} is not in D_{}", self.n);
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return CoordVector::zero(self.n);
        }
        CoordVector {
            n: self.n,
            entries: self.entries.iter().map(|(k, c)| (k.clone(), c * factor)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn add(&self, other: &CoordVector) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ConductorMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }
}

impl Serialize for CoordVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

/// A complete description of `D_n` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisDescriptor {
    pub n: u64,
    pub factorization: Factorization,
    pub keys: Vec<BasisKey>,
}

impl BasisDescriptor {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, key: &BasisKey) -> bool {
        self.keys.binary_search(key).is_ok()
    }
}

fn basis_cache() -> &'static RwLock<HashMap<u64, Arc<BasisDescriptor>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<BasisDescriptor>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Builds `D_n` as the ordered cartesian product of the local bases.
/// Results are memoized per process.
pub fn build_basis(n: u64) -> Arc<BasisDescriptor> {
    assert!(n >= 1, "build_basis: n must be positive");
    if let Some(d) = basis_cache().read().unwrap().get(&n) {
        return Arc::clone(d);
    }
    let mut keys: Vec<Vec<BasisAtom>> = vec![Vec::new()];
    for q in basis_moduli(n) {
        let local = local_atoms(q);
        keys = keys
            .into_iter()
            .flat_map(|prefix| {
                local.iter().map(move |&atom| {
                    let mut k = prefix.clone();
                    k.push(atom);
                    k
                })
            })
            .collect();
    }
    let descriptor = Arc::new(BasisDescriptor {
        n,
        factorization: factorize(n),
        keys: keys.into_iter().map(BasisKey).collect(),
    });
    basis_cache().write().unwrap().insert(n, Arc::clone(&descriptor));
    descriptor
}

/// Coordinates of `Re(ω_q^s)` and `i·Im(ω_q^s)` over the local basis of `q`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LocalDecomposition {
    pub re: BTreeMap<BasisAtom, Rational>,
    pub im: BTreeMap<BasisAtom, Rational>,
}

impl LocalDecomposition {
    fn push(map: &mut BTreeMap<BasisAtom, Rational>, atom: BasisAtom, c: i64) {
        let slot = map.entry(atom).or_default();
        *slot += &Rational::from(c);
        if slot.is_zero() {
            map.remove(&atom);
        }
    }
}

/// Decomposes `ω_q^s` for an odd prime power `q = p^k`.
///
/// Exponents in `[1, H]` and `[q-H, q)` (with `H = φ(q)/2`) are direct or
/// conjugate atoms. The `p^{k-1} - 1` exponents strictly between them, and
/// `s = 0`, are rewritten through the vanishing sum
/// `Σ_{j<p} ω_q^{j·p^{k-1} + s₀} = 0`.
pub fn decompose_prime_power(q: u64, s: i64) -> LocalDecomposition {
    let f = factorize(q);
    assert!(
        f.len() == 1 && f.factors()[0].0 % 2 == 1,
        "decompose_prime_power: {q} is not an odd prime power"
    );
    let p = f.factors()[0].0;
    let stride = q / p;
    let half = stride * (p - 1) / 2;
    let s = (s as i128).rem_euclid(q as i128) as u64;

    // Exponent outside the gap -> (atom exponent, conjugated?).
    let direct = |t: u64| -> Option<(u64, bool)> {
        if (1..=half).contains(&t) {
            Some((t, false))
        } else if t >= q - half && t < q {
            Some((q - t, true))
        } else {
            None
        }
    };

    let mut out = LocalDecomposition::default();
    if s == 0 {
        // 1 = -Σ_{j=1}^{p-1} ω^{j·stride} = -2·Σ_{j=1}^{(p-1)/2} Re(ω^{j·stride})
        for j in 1..=(p - 1) / 2 {
            LocalDecomposition::push(&mut out.re, BasisAtom::new(q, Part::A, j * stride), -2);
        }
        return out;
    }
    if let Some((e, conj)) = direct(s) {
        LocalDecomposition::push(&mut out.re, BasisAtom::new(q, Part::A, e), 1);
        LocalDecomposition::push(&mut out.im, BasisAtom::new(q, Part::B, e), if conj { -1 } else { 1 });
        return out;
    }
    let (r, s0) = (s / stride, s % stride);
    debug_assert!(s0 != 0);
    for j in (0..p).filter(|&j| j != r) {
        let t = j * stride + s0;
        let (e, conj) = direct(t).expect("vanishing-sum partners lie outside the gap");
        LocalDecomposition::push(&mut out.re, BasisAtom::new(q, Part::A, e), -1);
        LocalDecomposition::push(&mut out.im, BasisAtom::new(q, Part::B, e), if conj { 1 } else { -1 });
    }
    out
}

/// Decomposes `ω_q^s` for `q = 2^k` by quadrant reduction. For `q ∈ {1, 2}`
/// the result is `±1` on the constant atom.
pub fn decompose_two_power(q: u64, s: i64) -> LocalDecomposition {
    assert!(q.is_power_of_two(), "decompose_two_power: {q} is not a power of two");
    let s = (s as i128).rem_euclid(q as i128) as u64;
    let mut out = LocalDecomposition::default();
    if q <= 2 {
        let sign = if s % 2 == 0 { 1 } else { -1 };
        LocalDecomposition::push(&mut out.re, BasisAtom::new(q, Part::A, 0), sign);
        return out;
    }
    let quarter = q / 4;
    let (s, conj) = if s > 2 * quarter { (q - s, true) } else { (s, false) };
    let (e, re_sign) = if s <= quarter { (s, 1) } else { (2 * quarter - s, -1) };
    if e < quarter {
        LocalDecomposition::push(&mut out.re, BasisAtom::new(q, Part::A, e), re_sign);
    }
    if e > 0 {
        LocalDecomposition::push(&mut out.im, BasisAtom::new(q, Part::B, e), if conj { -1 } else { 1 });
    }
    out
}

fn decompose_local(q: u64, s: u64) -> LocalDecomposition {
    if q.is_power_of_two() {
        decompose_two_power(q, s as i64)
    } else {
        decompose_prime_power(q, s as i64)
    }
}

/// Exact coordinates of `Re(ω_n^t)` and `i·Im(ω_n^t)` over `D_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub n: u64,
    /// Exponent reduced into `[0, n)`.
    pub t: u64,
    pub re: CoordVector,
    pub im: CoordVector,
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u64,
            t: u64,
            re: BTreeMap<BasisKey, Rational>,
            im: BTreeMap<BasisKey, Rational>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let vector = |entries: BTreeMap<BasisKey, Rational>| {
            if entries.keys().any(|k| k.conductor() != raw.n) {
                return Err(serde::de::Error::custom("key does not match conductor"));
            }
            Ok(CoordVector::from_entries(raw.n, entries))
        };
        Ok(Decomposition {
            n: raw.n,
            t: raw.t,
            re: vector(raw.re)?,
            im: vector(raw.im)?,
        })
    }
}

/// Decomposes `ω_n^t = ∏ ω_{q_i}^{s_i}` factor by factor and expands the
/// product of `(Re_i + i·Im_i)`; terms with an even number of `B` atoms
/// collect into `re`, odd into `im`.
pub fn decompose_root(n: u64, t: i64) -> Decomposition {
    assert!(n >= 1, "decompose_root: n must be positive");
    let t_red = (t as i128).rem_euclid(n as i128) as u64;
    let mut components = crt_components(n, t);
    if components.is_empty() {
        components.push((1, 0));
    }

    let mut terms: Vec<(Vec<BasisAtom>, Rational)> = vec![(Vec::new(), Rational::one())];
    for (q, s) in components {
        let local = decompose_local(q, s);
        let mut next = Vec::with_capacity(terms.len() * (local.re.len() + local.im.len()));
        for (prefix, c) in &terms {
            for (atom, lc) in local.re.iter().chain(&local.im) {
                let mut k = Vec::with_capacity(prefix.len() + 1);
                k.extend_from_slice(prefix);
                k.push(*atom);
                next.push((k, c * lc));
            }
        }
        terms = next;
    }

    let mut re = CoordVector::zero(n);
    let mut im = CoordVector::zero(n);
    for (atoms, c) in terms {
        let key = BasisKey(atoms);
        if key.parity() % 2 == 0 {
            re.add_term(key, &c);
        } else {
            im.add_term(key, &c);
        }
    }
    Decomposition { n, t: t_red, re, im }
}

/// Returns `λ` with `u = λ·v` if one exists.
///
/// `λ` is read off the first nonzero entry of `v` and then checked over the
/// union of both supports.
pub fn proportionality(u: &CoordVector, v: &CoordVector) -> Result<Option<Rational>> {
    if u.n != v.n {
        return Err(Error::ConductorMismatch(u.n, v.n));
    }
    let (k0, v0) = v.iter().next().ok_or(Error::ZeroDenominatorVector)?;
    let lambda = match u.get(k0) {
        Some(u0) => u0 / v0,
        None => return Ok(u.is_zero().then(Rational::zero)),
    };
    if u.len() != v.len() {
        return Ok(None);
    }
    let fits = v.iter().all(|(k, vc)| u.get(k).is_some_and(|uc| *uc == &lambda * vc));
    Ok(fits.then_some(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> BasisAtom {
        s.parse().unwrap()
    }

    fn key(s: &str) -> BasisKey {
        s.parse().unwrap()
    }

    fn local(entries: &[(&str, i64)]) -> BTreeMap<BasisAtom, Rational> {
        entries.iter().map(|&(a, c)| (atom(a), Rational::from(c))).collect()
    }

    fn vector(n: u64, entries: &[(&str, i64)]) -> CoordVector {
        CoordVector::from_entries(n, entries.iter().map(|&(k, c)| (key(k), Rational::from(c))))
    }

    #[test]
    fn basis_examples() {
        let b3 = build_basis(3);
        assert_eq!(b3.keys, vec![key("A3.1"), key("B3.1")]);
        assert_eq!(build_basis(2).keys, vec![key("A2.0")]);
        assert_eq!(build_basis(1).keys, vec![key("A1.0")]);
        let b12: Vec<String> = build_basis(12).keys.iter().map(|k| k.to_string()).collect();
        assert_eq!(b12, ["A4.0*A3.1", "A4.0*B3.1", "B4.1*A3.1", "B4.1*B3.1"]);
    }

    #[test]
    fn basis_size_is_phi() {
        for n in 1..=500 {
            let b = build_basis(n);
            assert_eq!(b.len() as u64, euler_phi(n), "n = {n}");
            assert!(b.keys.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn prime_power_examples() {
        let d = decompose_prime_power(5, 3);
        assert_eq!(d.re, local(&[("A5.2", 1)]));
        assert_eq!(d.im, local(&[("B5.2", -1)]));

        let d = decompose_prime_power(9, 4);
        assert_eq!(d.re, local(&[("A9.1", -1), ("A9.2", -1)]));
        assert_eq!(d.im, local(&[("B9.1", -1), ("B9.2", 1)]));

        let d = decompose_prime_power(3, 0);
        assert_eq!(d.re, local(&[("A3.1", -2)]));
        assert!(d.im.is_empty());
    }

    #[test]
    fn nine_four_numerically() {
        // cos(160°) = -cos(40°) - cos(80°), sin(160°) = -sin(40°) + sin(80°)
        let deg = |x: f64| x.to_radians();
        assert!((deg(160.0).cos() + deg(40.0).cos() + deg(80.0).cos()).abs() < 1e-12);
        assert!((deg(160.0).sin() + deg(40.0).sin() - deg(80.0).sin()).abs() < 1e-12);
    }

    #[test]
    fn two_power_examples() {
        let d = decompose_two_power(8, 3);
        assert_eq!(d.re, local(&[("A8.1", -1)]));
        assert_eq!(d.im, local(&[("B8.1", 1)]));

        let d = decompose_two_power(4, 1);
        assert!(d.re.is_empty());
        assert_eq!(d.im, local(&[("B4.1", 1)]));

        let d = decompose_two_power(2, 1);
        assert_eq!(d.re, local(&[("A2.0", -1)]));
        assert!(d.im.is_empty());
    }

    #[test]
    fn two_power_matches_floats() {
        for k in 2..=6u32 {
            let q = 1u64 << k;
            for s in 0..q {
                let d = decompose_two_power(q, s as i64);
                let angle = |e: u64| 2.0 * std::f64::consts::PI * e as f64 / q as f64;
                let re: f64 = d.re.iter().map(|(a, c)| c.to_f64() * angle(a.exponent).cos()).sum();
                let im: f64 = d.im.iter().map(|(a, c)| c.to_f64() * angle(a.exponent).sin()).sum();
                assert!((re - angle(s).cos()).abs() < 1e-12, "q={q} s={s}");
                assert!((im - angle(s).sin()).abs() < 1e-12, "q={q} s={s}");
            }
        }
    }

    #[test]
    fn decompose_root_examples() {
        let d = decompose_root(12, 1);
        assert_eq!(d.re, vector(12, &[("B4.1*B3.1", -1)]));
        assert_eq!(d.im, vector(12, &[("B4.1*A3.1", -1)]));

        let d = decompose_root(12, 3);
        assert!(d.re.is_zero());
        assert_eq!(d.im, vector(12, &[("B4.1*A3.1", -2)]));

        for n in [1, 2, 7, 12, 30] {
            assert!(decompose_root(n, 0).im.is_zero());
        }
        assert_eq!(decompose_root(1, 0).re, vector(1, &[("A1.0", 1)]));
    }

    #[test]
    fn conjugation_symmetry() {
        for n in 1..=150u64 {
            for t in 0..n as i64 {
                let a = decompose_root(n, t);
                let b = decompose_root(n, n as i64 - t);
                assert_eq!(a.re, b.re);
                assert_eq!(a.im, b.im.neg());
            }
        }
    }

    #[test]
    fn keys_are_valid_members_of_the_basis() {
        for n in 1..=120u64 {
            let basis = build_basis(n);
            for t in 0..n as i64 {
                let d = decompose_root(n, t);
                assert!(d.re.iter().all(|(k, _)| basis.contains(k) && k.parity() % 2 == 0));
                assert!(d.im.iter().all(|(k, _)| basis.contains(k) && k.parity() % 2 == 1));
            }
        }
    }

    #[test]
    fn proportionality_examples() {
        let u = vector(3, &[("A3.1", 1)]);
        let v = vector(3, &[("A3.1", -1)]);
        assert_eq!(proportionality(&u, &v), Ok(Some(Rational::from(-1))));

        let u = vector(3, &[("A3.1", -1)]);
        let v = vector(3, &[("A3.1", -2)]);
        assert_eq!(proportionality(&u, &v), Ok(Some(Rational::new(1, 2))));

        let u = vector(3, &[("A3.1", 1), ("B3.1", 1)]);
        let v = vector(3, &[("A3.1", 1), ("B3.1", -1)]);
        assert_eq!(proportionality(&u, &v), Ok(None));

        assert_eq!(proportionality(&CoordVector::zero(3), &v), Ok(Some(Rational::zero())));
        assert_eq!(
            proportionality(&u, &CoordVector::zero(3)),
            Err(Error::ZeroDenominatorVector)
        );
        assert_eq!(
            proportionality(&u, &vector(4, &[("A4.0", 1)])),
            Err(Error::ConductorMismatch(3, 4))
        );
        // disjoint supports
        let u = vector(3, &[("B3.1", 2)]);
        let v = vector(3, &[("A3.1", 1)]);
        assert_eq!(proportionality(&u, &v), Ok(None));
    }

    #[test]
    fn key_parsing_rejects_invalid() {
        assert!("A4.1".parse::<BasisKey>().is_err()); // A exponents for 4 stop at 0
        assert!("B4.0".parse::<BasisKey>().is_err());
        assert!("A3.2".parse::<BasisKey>().is_err());
        assert!("A3.1*A4.0".parse::<BasisKey>().is_err()); // wrong factor order
        assert!("A6.1".parse::<BasisKey>().is_err());
        assert!("C3.1".parse::<BasisKey>().is_err());
        assert_eq!(key("B4.1*A3.1").to_string(), "B4.1*A3.1");
    }

    #[test]
    fn serialization_shape() {
        let d = decompose_root(12, 3);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"n":12,"t":3,"re":{},"im":{"B4.1*A3.1":"-2/1"}}"#);
        let back: Decomposition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }
}
