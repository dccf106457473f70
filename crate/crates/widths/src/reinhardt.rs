//! Exact combinatorics of the minimum-deviation polygons.
//!
//! A sign vector `c in {-1,+1}^n` belongs to `P(n)` when
//! `sum_j c_j exp(i j pi / n) = 0`. Because `exp(i pi / n)` is a primitive
//! 2n-th root of unity with minimal polynomial `Phi_{2n}`, membership is
//! equivalent to `Phi_{2n}(z)` dividing `sum_j c_j z^j` over the integers,
//! which this module decides exactly. `P(n)` is nonempty precisely when
//! `n` is not a power of 2, and its members realize the equilateral
//! polygons of minimum deviation rate: the Reinhardt n-gons.
//!
//! The dihedral action `sigma(c) = (c_1, ..., c_{n-1}, -c_0)` and
//! `tau(c) = (c_{n-1}, ..., c_0)` identifies sign vectors with congruent
//! realizations; orbits are canonicalized to their lexicographic minimum
//! under the ordering `+1 < -1`. Each orbit corresponds to a cyclic run
//! vector `(n_1, ..., n_p)` with odd `p`, accepted iff
//! `1 - z^{n_1} + z^{n_1+n_2} - ... + z^{n_1+...+n_{p-1}}` is divisible by
//! `Phi_{2n}`.

use crate::geometry::{Angle, ConvexPolygon, PlanarVector};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

/// Exhaustive enumeration bound: a pruned scan of `{-1,+1}^n`.
pub const ENUMERATION_LIMIT: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReinhardtError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("sign vector must have length >= 2 with entries +1/-1")]
    BadLength,
    #[error("enumeration bound is n <= {ENUMERATION_LIMIT}, got {0}")]
    TooLarge(u32),
    #[error("sign vector is not in P(n)")]
    NotInP,
    #[error("no rotation aligns the first and last sign")]
    NoValidRotation,
}

/// Integer-coefficient polynomial, coefficients in ascending degree with a
/// nonzero leading coefficient (the zero polynomial is the empty list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs<I: Into<BigInt>>(coeffs: Vec<I>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// `z^m - 1`.
    fn power_minus_one(m: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); m + 1];
        coeffs[0] = -BigInt::one();
        coeffs[m] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Quotient of an exact division, or `None` when `divisor` does not
    /// divide `self` over the integers. `divisor` must be monic.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let d = divisor.degree().expect("divisor must be nonzero");
        assert!(
            divisor.coeffs[d].is_one(),
            "div_exact expects a monic divisor"
        );
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let n = self.degree().unwrap();
        if n < d {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let factor = std::mem::take(&mut rem[k + d]);
            if factor.is_zero() {
                continue;
            }
            for j in 0..d {
                rem[k + j] -= &factor * &divisor.coeffs[j];
            }
            quot[k] = factor;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPolynomial::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Whether `self` divides `poly` exactly.
    pub fn divides(&self, poly: &IntPolynomial) -> bool {
        poly.div_exact(self).is_some()
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        Ok(())
    }
}

/// The m-th cyclotomic polynomial `Phi_m`, computed exactly as
/// `(z^m - 1) / prod_{d | m, d < m} Phi_d`.
pub fn cyclotomic(m: u32) -> Result<IntPolynomial, ReinhardtError> {
    if m < 1 {
        return Err(ReinhardtError::BadParameter(
            "cyclotomic index must be >= 1".into(),
        ));
    }
    let mut memo: BTreeMap<u32, IntPolynomial> = BTreeMap::new();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let mut quotient = IntPolynomial::power_minus_one(d as usize);
        for (&e, phi) in memo.range(..d) {
            if d % e == 0 {
                quotient = quotient
                    .div_exact(phi)
                    .expect("cyclotomic factors divide z^d - 1");
            }
        }
        memo.insert(d, quotient);
    }
    Ok(memo.remove(&m).unwrap())
}

/// A verified member of `P(n)`: signs `c_0..c_{n-1}` in `{-1,+1}` with
/// `sum_j c_j exp(i j pi / n) = 0`, decided by exact cyclotomic
/// divisibility.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignVector {
    signs: Vec<i8>,
}

impl SignVector {
    pub fn new(signs: &[i8]) -> Result<Self, ReinhardtError> {
        if !is_in_p(signs)? {
            return Err(ReinhardtError::NotInP);
        }
        Ok(SignVector {
            signs: signs.to_vec(),
        })
    }

    pub fn n(&self) -> u32 {
        self.signs.len() as u32
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

fn check_signs(signs: &[i8]) -> Result<(), ReinhardtError> {
    if signs.len() < 2 || signs.iter().any(|&c| c != 1 && c != -1) {
        return Err(ReinhardtError::BadLength);
    }
    Ok(())
}

/// Whether `sum_j c_j exp(i j pi / n) = 0`, decided exactly: true iff
/// `Phi_{2n}` divides `sum_j c_j z^j` over the integers.
pub fn is_in_p(signs: &[i8]) -> Result<bool, ReinhardtError> {
    check_signs(signs)?;
    let n = signs.len() as u32;
    let poly = IntPolynomial::from_coeffs(signs.iter().map(|&c| c as i64).collect());
    Ok(cyclotomic(2 * n)?.divides(&poly))
}

/// All members of `P(n)` in lexicographic order under `+1 < -1`, by a
/// depth-first scan of `{-1,+1}^n` pruned with the triangle-inequality
/// bound `|partial sum| <= n - j`, each survivor confirmed exactly.
pub fn enumerate_p(n: u32) -> Result<Vec<SignVector>, ReinhardtError> {
    if n < 2 {
        return Err(ReinhardtError::BadParameter(
            "enumeration needs n >= 2".into(),
        ));
    }
    if n > ENUMERATION_LIMIT {
        return Err(ReinhardtError::TooLarge(n));
    }
    let roots: Vec<PlanarVector> = (0..n)
        .map(|j| PlanarVector::from_polar(1.0, Angle::new(j as f64 * PI / n as f64)))
        .collect();
    let mut found = Vec::new();
    let mut signs = vec![1i8; n as usize];
    // The float filter is conservative by 1e-6 on both sides; membership
    // itself is decided by the exact divisibility test.
    fn descend(
        roots: &[PlanarVector],
        signs: &mut Vec<i8>,
        depth: usize,
        partial: PlanarVector,
        found: &mut Vec<SignVector>,
    ) {
        let n = roots.len();
        let remaining = (n - depth) as f64;
        if partial.magnitude() > remaining + 1e-6 {
            return;
        }
        if depth == n {
            if partial.magnitude() <= 1e-6 {
                if let Ok(v) = SignVector::new(signs) {
                    found.push(v);
                }
            }
            return;
        }
        for sign in [1i8, -1] {
            signs[depth] = sign;
            let term = if sign == 1 {
                roots[depth]
            } else {
                -roots[depth]
            };
            descend(roots, signs, depth + 1, partial + term, found);
        }
        signs[depth] = 1;
    }
    descend(&roots, &mut signs, 0, PlanarVector::ZERO, &mut found);
    Ok(found)
}

/// The subset `Q(p)` of `P(n)` with p-fold rotational symmetry: writing
/// `j = k (n/p) + l`, its members satisfy `c_j = c_l (-1)^k` with the
/// block `(c_0, ..., c_{n/p-1})` free, so `|Q(p)| = 2^{n/p}`.
pub fn q_subset(n: u32, p: u32) -> Result<Vec<SignVector>, ReinhardtError> {
    if p % 2 == 0 || p <= 1 || n % p != 0 {
        return Err(ReinhardtError::BadParameter(format!(
            "q_subset needs an odd divisor p > 1 of n, got n = {n}, p = {p}"
        )));
    }
    if n > ENUMERATION_LIMIT {
        return Err(ReinhardtError::TooLarge(n));
    }
    let block = (n / p) as usize;
    let mut out = Vec::with_capacity(1usize << block);
    for bits in 0..(1u32 << block) {
        // Lexicographic under +1 < -1: bit 0 means +1 and is tried first.
        let free: Vec<i8> = (0..block)
            .map(|l| if bits >> l & 1 == 0 { 1 } else { -1 })
            .collect();
        let signs: Vec<i8> = (0..n as usize)
            .map(|j| {
                let (k, l) = (j / block, j % block);
                if k % 2 == 0 {
                    free[l]
                } else {
                    -free[l]
                }
            })
            .collect();
        out.push(SignVector::new(&signs).expect("Q(p) members satisfy the vanishing sum"));
    }
    out.sort_by(|a, b| lex_key(&a.signs).cmp(&lex_key(&b.signs)));
    Ok(out)
}

fn sigma(signs: &[i8]) -> Vec<i8> {
    let mut out: Vec<i8> = signs[1..].to_vec();
    out.push(-signs[0]);
    out
}

fn tau(signs: &[i8]) -> Vec<i8> {
    signs.iter().rev().copied().collect()
}

/// Key realizing the ordering convention `+1 < -1`.
fn lex_key(signs: &[i8]) -> Vec<u8> {
    signs.iter().map(|&c| if c == 1 { 0 } else { 1 }).collect()
}

/// The lexicographically smallest element (under `+1 < -1`) of the
/// dihedral orbit `{sigma^j v, sigma^j tau v : j = 0..2n-1}`. Two sign
/// vectors give congruent realizations exactly when their canonical forms
/// agree.
pub fn canonicalize(v: &SignVector) -> SignVector {
    let n = v.signs.len();
    let mut best: Option<Vec<i8>> = None;
    for start in [v.signs.clone(), tau(&v.signs)] {
        let mut current = start;
        for _ in 0..2 * n {
            if best.as_ref().is_none_or(|b| lex_key(&current) < lex_key(b)) {
                best = Some(current.clone());
            }
            current = sigma(&current);
        }
    }
    SignVector {
        signs: best.expect("orbit is nonempty"),
    }
}

/// Run-length encoding of a `P(n)` member as a cyclic integer vector,
/// stored in its lexicographically minimal rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicVector {
    runs: Vec<u32>,
}

impl CyclicVector {
    pub fn new(runs: Vec<u32>) -> Result<Self, ReinhardtError> {
        if runs.is_empty() || runs.iter().any(|&r| r == 0) {
            return Err(ReinhardtError::BadParameter(
                "runs must be positive".into(),
            ));
        }
        Ok(CyclicVector {
            runs: minimal_rotation(runs),
        })
    }

    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    /// `n = n_1 + ... + n_p`.
    pub fn total(&self) -> u32 {
        self.runs.iter().sum()
    }

    /// The number of runs `p`.
    pub fn segment_count(&self) -> usize {
        self.runs.len()
    }
}

fn minimal_rotation(runs: Vec<u32>) -> Vec<u32> {
    let p = runs.len();
    (0..p)
        .map(|s| {
            let mut rotated = Vec::with_capacity(p);
            rotated.extend_from_slice(&runs[s..]);
            rotated.extend_from_slice(&runs[..s]);
            rotated
        })
        .min()
        .unwrap()
}

/// Rotate with `sigma` until the first and last sign agree, then count the
/// runs of equal signs; `p` comes out odd for every `P(n)` member.
pub fn to_cyclic_vector(v: &SignVector) -> Result<CyclicVector, ReinhardtError> {
    let n = v.signs.len();
    let mut d = v.signs.clone();
    for _ in 0..2 * n {
        if d[0] == d[n - 1] {
            let mut runs = vec![1u32];
            for j in 1..n {
                if d[j] == d[j - 1] {
                    *runs.last_mut().unwrap() += 1;
                } else {
                    runs.push(1);
                }
            }
            return CyclicVector::new(runs);
        }
        d = sigma(&d);
    }
    Err(ReinhardtError::NoValidRotation)
}

/// Reinhardt's criterion: `(n_1, ..., n_p)` encodes a Reinhardt n-gon iff
/// `p` is odd and `Phi_{2n}` divides the alternating polynomial
/// `1 - z^{n_1} + z^{n_1+n_2} - ... + z^{n_1+...+n_{p-1}}`.
pub fn reinhardt_criterion(c: &CyclicVector) -> bool {
    let p = c.segment_count();
    if p % 2 == 0 {
        return false;
    }
    let n = c.total();
    let mut coeffs = vec![0i64; n as usize];
    let mut exponent = 0usize;
    for (k, &run) in c.runs().iter().enumerate() {
        coeffs[exponent] = if k % 2 == 0 { 1 } else { -1 };
        exponent += run as usize;
    }
    let alternating = IntPolynomial::from_coeffs(coeffs);
    cyclotomic(2 * n)
        .expect("n >= 1")
        .divides(&alternating)
}

/// The equilateral polygon realizing a sign vector: edges
/// `c_j * exp(i j pi / n) * edge_length` sorted by argument, vertices by
/// cumulative sum, recentered at the centroid.
pub fn realize(v: &SignVector, edge_length: f64) -> Result<ConvexPolygon, ReinhardtError> {
    if !(edge_length > 0.0 && edge_length.is_finite()) {
        return Err(ReinhardtError::BadParameter(format!(
            "edge length must be positive, got {edge_length}"
        )));
    }
    let n = v.signs.len();
    let mut edges: Vec<PlanarVector> = v
        .signs
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            let theta = j as f64 * PI / n as f64 + if c == 1 { 0.0 } else { -PI };
            PlanarVector::from_polar(edge_length, Angle::new(theta))
        })
        .collect();
    edges.sort_by(|a, b| a.argument().radians().total_cmp(&b.argument().radians()));
    let anchored = ConvexPolygon::from_edge_cycle(edges)
        .expect("sign-vector edges close into a convex cycle");
    let centroid = anchored.centroid();
    Ok(anchored
        .transform(1.0, Angle::new(0.0), -centroid)
        .expect("translation preserves validity"))
}

/// One representative per congruence class of `P(n)`, in lexicographic
/// order of the canonical forms.
pub fn canonical_classes(n: u32) -> Result<Vec<SignVector>, ReinhardtError> {
    let mut reps: Vec<SignVector> = enumerate_p(n)?.iter().map(canonicalize).collect();
    reps.sort_by(|a, b| lex_key(&a.signs).cmp(&lex_key(&b.signs)));
    reps.dedup();
    Ok(reps)
}

/// The cyclic vectors of all Reinhardt n-gon classes; empty exactly when
/// `n` is a power of 2.
pub fn enumerate_reinhardt(n: u32) -> Result<Vec<CyclicVector>, ReinhardtError> {
    canonical_classes(n)?
        .iter()
        .map(to_cyclic_vector)
        .collect()
}
