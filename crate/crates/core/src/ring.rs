//! Truncated graded rings.
//!
//! All characteristic classes in this crate are polynomials in a single
//! generator `c` of cohomological degree 2, read in `Z[c]/(c^{cap+1})`.
//! Truncation is silent: it is the quotient-ring semantics, not an error.
//! [`MultiPoly`] and [`RootBag`] carry formal Chern roots for the
//! splitting-principle cross-checks.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::RingError;

/// Retain `1, c, c^2`, i.e. cohomology through degree 4.
pub const DEFAULT_CAP: usize = 2;

/// An element of `Z[c]/(c^{cap+1})` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    // len == cap + 1
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    pub fn zero(cap: usize) -> Self {
        TruncSeries {
            coeffs: vec![BigInt::zero(); cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Builds a series from low-order coefficients. Missing coefficients are
    /// zero and anything past `cap` is dropped.
    pub fn from_coeffs<I, T>(cap: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(cap);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    /// `1 + a c`, the total Chern class of a line bundle with `c_1 = a c`.
    pub fn linear(cap: usize, a: impl Into<BigInt>) -> Self {
        let mut s = Self::one(cap);
        if cap >= 1 {
            s.coeffs[1] = a.into();
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `c^i`; zero above the cap.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_cap(&self, other: &Self) -> Result<(), RingError> {
        if self.cap() == other.cap() {
            Ok(())
        } else {
            Err(RingError::CapMismatch {
                left: self.cap(),
                right: other.cap(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_cap(other)?;
        Ok(TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.try_add(&other.neg())
    }

    /// Cauchy product; terms above the cap are discarded.
    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_cap(other)?;
        let cap = self.cap();
        let mut out = Self::zero(cap);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=cap - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// Multiplicative inverse of a series whose constant term is `1` or `-1`,
    /// solved one coefficient at a time.
    pub fn invert(&self) -> Result<Self, RingError> {
        let c0 = &self.coeffs[0];
        if c0 == &-BigInt::one() {
            return Ok(self.neg().invert()?.neg());
        }
        if !c0.is_one() {
            return Err(RingError::NotInvertible);
        }
        let cap = self.cap();
        let mut inv = Self::zero(cap);
        inv.coeffs[0] = BigInt::one();
        for i in 1..=cap {
            let mut acc = BigInt::zero();
            for j in 1..=i {
                acc += &self.coeffs[j] * &inv.coeffs[i - j];
            }
            inv.coeffs[i] = -acc;
        }
        Ok(inv)
    }

    /// Integer power; negative exponents go through [`Self::invert`].
    pub fn pow(&self, exp: i64) -> Result<Self, RingError> {
        let base = if exp < 0 {
            self.invert()?
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.cap());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The image under `c -> -c`: `a_0 - a_1 c + a_2 c^2 - ...`.
    pub fn alternate(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
                .collect(),
        }
    }

    /// Re-reads the series at a different cap, dropping or zero-padding.
    pub fn with_cap(&self, cap: usize) -> Self {
        Self::from_coeffs(cap, self.coeffs.iter().cloned())
    }

    pub fn reduce_mod2(&self) -> TruncSeriesMod2 {
        TruncSeriesMod2 {
            bits: self.coeffs.iter().map(|a| a.bit(0)).collect(),
        }
    }
}

// `bit(0)` on a negative BigInt reads two's complement, which has the same
// parity as the magnitude.
#[cfg(test)]
fn parity_is_sign_free() -> bool {
    BigInt::from(-3).bit(0) && !BigInt::from(-4).bit(0)
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (i, a) in terms {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        if first {
            if a.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if a.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        match i {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if i == 1 {
                    f.write_str("c")?;
                } else {
                    write!(f, "c^{i}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate())
    }
}

/// An element of `F_2[c]/(c^{cap+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeriesMod2 {
    bits: Vec<bool>,
}

impl TruncSeriesMod2 {
    pub fn zero(cap: usize) -> Self {
        TruncSeriesMod2 {
            bits: vec![false; cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.bits[0] = true;
        s
    }

    pub fn from_bits(cap: usize, bits: impl IntoIterator<Item = bool>) -> Self {
        let mut s = Self::zero(cap);
        for (slot, b) in s.bits.iter_mut().zip(bits) {
            *slot = b;
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.bits.len() - 1
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.bits.get(i).copied().unwrap_or(false)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_one(&self) -> bool {
        self.bits[0] && !self.bits[1..].iter().any(|&b| b)
    }

    fn check_cap(&self, other: &Self) -> Result<(), RingError> {
        if self.cap() == other.cap() {
            Ok(())
        } else {
            Err(RingError::CapMismatch {
                left: self.cap(),
                right: other.cap(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_cap(other)?;
        Ok(TruncSeriesMod2 {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_cap(other)?;
        let cap = self.cap();
        let mut out = Self::zero(cap);
        for i in (0..=cap).filter(|&i| self.bits[i]) {
            for j in (0..=cap - i).filter(|&j| other.bits[j]) {
                out.bits[i + j] ^= true;
            }
        }
        Ok(out)
    }

    /// Inverse of a series with constant term `1`.
    pub fn invert(&self) -> Result<Self, RingError> {
        if !self.bits[0] {
            return Err(RingError::NotInvertible);
        }
        let cap = self.cap();
        let mut inv = Self::one(cap);
        for i in 1..=cap {
            inv.bits[i] = (1..=i).fold(false, |acc, j| acc ^ (self.bits[j] & inv.bits[i - j]));
        }
        Ok(inv)
    }
}

impl fmt::Display for TruncSeriesMod2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = BigInt::one();
        write_terms(
            f,
            self.bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| (i, &one)),
        )?;
        f.write_str(" (mod 2)")
    }
}

/// A polynomial in formal degree-2 variables `x_0 .. x_{m-1}`, truncated by
/// total degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    cap: usize,
    // exponent vector -> nonzero coefficient
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, cap: usize) -> Self {
        MultiPoly {
            nvars,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, cap: usize, a: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars, cap);
        p.insert(vec![0; nvars], a.into());
        p
    }

    pub fn one(nvars: usize, cap: usize) -> Self {
        Self::constant(nvars, cap, 1)
    }

    /// `1 + sum_i form[i] x_i`, the Chern polynomial of one formal root.
    pub fn one_plus_linear(cap: usize, form: &[i64]) -> Self {
        let nvars = form.len();
        let mut p = Self::one(nvars, cap);
        for (i, &a) in form.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.insert(e, BigInt::from(a));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, a)| (e.as_slice(), a))
    }

    fn insert(&mut self, exps: Vec<u32>, a: BigInt) {
        let deg: u32 = exps.iter().sum();
        if deg as usize > self.cap || a.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_default();
        *slot += a;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    fn check_shape(&self, other: &Self) -> Result<(), RingError> {
        if self.nvars != other.nvars {
            return Err(RingError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.cap != other.cap {
            return Err(RingError::CapMismatch {
                left: self.cap,
                right: other.cap,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, a) in &other.terms {
            out.insert(e.clone(), a.clone());
        }
        Ok(out)
    }

    /// Graded-truncated product.
    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.nvars, self.cap);
        for (ea, a) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, b) in &other.terms {
                let db: u32 = eb.iter().sum();
                if (da + db) as usize > self.cap {
                    continue;
                }
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, a * b);
            }
        }
        Ok(out)
    }

    /// Renames `x_i` to `x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars, self.cap);
        for (e, a) in &self.terms {
            let mut moved = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                moved[perm[i]] = x;
            }
            out.insert(moved, a.clone());
        }
        out
    }

    /// Substitutes `x_i -> images[i] * c` and collects by powers of `c`.
    /// Every variable must have an image.
    pub fn eval(&self, images: &BTreeMap<usize, i64>) -> Result<TruncSeries, RingError> {
        let values = (0..self.nvars)
            .map(|i| {
                images
                    .get(&i)
                    .map(|&v| BigInt::from(v))
                    .ok_or(RingError::UnmappedVariable(i))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = TruncSeries::zero(self.cap);
        for (e, a) in &self.terms {
            let mut term = a.clone();
            let mut deg = 0usize;
            for (v, &x) in values.iter().zip(e) {
                term *= num_traits::pow(v.clone(), x as usize);
                deg += x as usize;
            }
            out.coeffs[deg] += term;
        }
        Ok(out)
    }
}

/// A multiset of formal Chern roots, each a linear form in shared variables.
///
/// The total Chern class of the bag is `prod (1 + root)`. Tensor products
/// pair up roots additively and direct sums concatenate bags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBag {
    nvars: usize,
    roots: Vec<Vec<i64>>,
}

impl RootBag {
    pub fn empty(nvars: usize) -> Self {
        RootBag {
            nvars,
            roots: Vec::new(),
        }
    }

    /// One root `x_i` for each `i` in `vars`.
    pub fn formal(nvars: usize, vars: core::ops::Range<usize>) -> Self {
        let mut bag = Self::empty(nvars);
        for i in vars {
            let mut form = vec![0; nvars];
            form[i] = 1;
            bag.roots.push(form);
        }
        bag
    }

    /// Adds one root. The zero form is the trivial complex line.
    pub fn push(&mut self, form: Vec<i64>) {
        assert_eq!(form.len(), self.nvars, "root form has wrong arity");
        self.roots.push(form);
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.roots.extend(other.roots.iter().cloned());
        out
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::empty(self.nvars);
        for a in &self.roots {
            for b in &other.roots {
                out.roots
                    .push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        out
    }

    pub fn dual(&self) -> Self {
        RootBag {
            nvars: self.nvars,
            roots: self
                .roots
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// `prod_roots (1 + root)` truncated at total degree `cap`.
    pub fn chern_polynomial(&self, cap: usize) -> MultiPoly {
        self.roots
            .iter()
            .fold(MultiPoly::one(self.nvars, cap), |acc, r| {
                acc.try_mul(&MultiPoly::one_plus_linear(cap, r))
                    .expect("factors share shape")
            })
    }
}
