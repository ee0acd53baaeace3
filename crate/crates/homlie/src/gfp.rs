//! Exact arithmetic over prime fields GF(p).
//!
//! Everything downstream (brackets, twists, p-maps, envelopes) reduces to
//! scalar, vector and matrix work over GF(p), plus vectors and matrices whose
//! entries are univariate polynomials in a formal parameter `k`. All values
//! are immutable and every operation is pure, so the types here can be shared
//! freely across threads.
//!
//! The field is always GF(p) with p prime; arithmetic is routed through
//! [`Scalar`] so that a later extension to GF(p^m) only has to replace that
//! type.

use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Largest prime accepted by the default desk-scale limits.
pub const DEFAULT_MAX_PRIME: u32 = 13;

/// Default cap on element enumeration counts for exhaustive routines.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfpError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coefficient index {index} out of range 0..={cap}")]
    IndexOutOfRange { index: usize, cap: usize },
    #[error("polynomial degree exceeds cap {cap}")]
    DegreeOverflow { cap: usize },
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn validate_prime(p: u32) -> Result<(), GfpError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GfpError::NotPrime(p))
    }
}

/// A residue in GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Scalar {
    value: u32,
    modulus: u32,
}

impl Scalar {
    /// Reduces `value` into `[0, p)`. Negative inputs are folded the
    /// mathematical way: `-1` becomes `p - 1`.
    pub fn new(value: i64, modulus: u32) -> Self {
        debug_assert!(is_prime(modulus), "modulus {modulus} must be prime");
        let p = modulus as i64;
        let v = ((value % p) + p) % p;
        Scalar {
            value: v as u32,
            modulus,
        }
    }

    pub fn zero(modulus: u32) -> Self {
        Scalar::new(0, modulus)
    }

    pub fn one(modulus: u32) -> Self {
        Scalar::new(1, modulus)
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli {} and {}",
            self.modulus, other.modulus
        );
    }

    pub fn add(&self, other: Scalar) -> Scalar {
        self.assert_same_field(&other);
        Scalar::new((self.value + other.value) as i64, self.modulus)
    }

    pub fn sub(&self, other: Scalar) -> Scalar {
        self.assert_same_field(&other);
        Scalar::new(self.value as i64 - other.value as i64, self.modulus)
    }

    pub fn mul(&self, other: Scalar) -> Scalar {
        self.assert_same_field(&other);
        Scalar::new((self.value as i64) * (other.value as i64), self.modulus)
    }

    pub fn neg(&self) -> Scalar {
        Scalar::new(-(self.value as i64), self.modulus)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = *self;
        let mut acc = Scalar::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero in GF({})", self.modulus);
        // Fermat: a^(p-2) is the inverse for prime p.
        self.pow(self.modulus - 2)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Coordinate vector over GF(p).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VecFp {
    p: u32,
    entries: Vec<u32>,
}

impl VecFp {
    pub fn zeros(p: u32, len: usize) -> Self {
        debug_assert!(is_prime(p));
        VecFp {
            p,
            entries: vec![0; len],
        }
    }

    pub fn from_entries(p: u32, entries: &[i64]) -> Self {
        VecFp {
            p,
            entries: entries.iter().map(|&e| Scalar::new(e, p).value()).collect(),
        }
    }

    /// Standard basis vector e_i.
    pub fn unit(p: u32, len: usize, i: usize) -> Self {
        let mut v = VecFp::zeros(p, len);
        v.set(i, Scalar::one(p));
        v
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        Scalar::new(self.entries[i] as i64, self.p)
    }

    pub fn set(&mut self, i: usize, s: Scalar) {
        assert_eq!(s.modulus(), self.p);
        self.entries[i] = s.value();
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &VecFp) -> VecFp {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        let mut out = VecFp::zeros(self.p, self.len());
        for i in 0..self.len() {
            out.set(i, self.get(i).add(other.get(i)));
        }
        out
    }

    pub fn sub(&self, other: &VecFp) -> VecFp {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        let mut out = VecFp::zeros(self.p, self.len());
        for i in 0..self.len() {
            out.set(i, self.get(i).sub(other.get(i)));
        }
        out
    }

    pub fn scale(&self, c: Scalar) -> VecFp {
        let mut out = VecFp::zeros(self.p, self.len());
        for i in 0..self.len() {
            out.set(i, self.get(i).mul(c));
        }
        out
    }

    pub fn neg(&self) -> VecFp {
        let mut out = VecFp::zeros(self.p, self.len());
        for i in 0..self.len() {
            out.set(i, self.get(i).neg());
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = Scalar> + '_ {
        self.entries.iter().map(|&e| Scalar::new(e as i64, self.p))
    }

    /// Indices of nonzero coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.entries[i] != 0).collect()
    }
}

impl fmt::Debug for VecFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Dense matrix over GF(p), row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MatFp {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatFp {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        debug_assert!(is_prime(p));
        MatFp {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = MatFp::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(p));
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = MatFp::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &e) in row.iter().enumerate() {
                m.set(i, j, Scalar::new(e, p));
            }
        }
        m
    }

    /// Builds the matrix whose j-th column is `cols[j]`.
    pub fn from_cols(p: u32, rows: usize, cols: &[VecFp]) -> Self {
        let mut m = MatFp::zeros(p, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in 0..rows {
                m.set(i, j, col.get(i));
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        Scalar::new(self.entries[i * self.cols + j] as i64, self.p)
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert_eq!(s.modulus(), self.p);
        self.entries[i * self.cols + j] = s.value();
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> VecFp {
        let mut v = VecFp::zeros(self.p, self.cols);
        for j in 0..self.cols {
            v.set(j, self.get(i, j));
        }
        v
    }

    pub fn col(&self, j: usize) -> VecFp {
        let mut v = VecFp::zeros(self.p, self.rows);
        for i in 0..self.rows {
            v.set(i, self.get(i, j));
        }
        v
    }

    pub fn add(&self, other: &MatFp) -> MatFp {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = MatFp::zeros(self.p, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).add(other.get(i, j)));
            }
        }
        out
    }

    pub fn sub(&self, other: &MatFp) -> MatFp {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = MatFp::zeros(self.p, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).sub(other.get(i, j)));
            }
        }
        out
    }

    pub fn scale(&self, c: Scalar) -> MatFp {
        let mut out = MatFp::zeros(self.p, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).mul(c));
            }
        }
        out
    }

    pub fn mul(&self, other: &MatFp) -> MatFp {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = MatFp::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero(self.p);
                for t in 0..self.cols {
                    acc = acc.add(self.get(i, t).mul(other.get(t, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &VecFp) -> VecFp {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        let mut out = VecFp::zeros(self.p, self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero(self.p);
            for j in 0..self.cols {
                acc = acc.add(self.get(i, j).mul(v.get(j)));
            }
            out.set(i, acc);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MatFp {
        assert!(self.is_square());
        let mut acc = MatFp::identity(self.p, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> MatFp {
        let mut out = MatFp::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Flattens row-major into a vector; used to linearize operator equations.
    pub fn vectorize(&self) -> VecFp {
        let mut v = VecFp::zeros(self.p, self.rows * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                v.set(i * self.cols + j, self.get(i, j));
            }
        }
        v
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (MatFp, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot_row) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pivot_row != row {
                for j in 0..m.cols {
                    let a = m.get(row, j);
                    let b = m.get(pivot_row, j);
                    m.set(row, j, b);
                    m.set(pivot_row, j, a);
                }
            }
            let inv = m.get(row, col).inv();
            for j in 0..m.cols {
                m.set(row, j, m.get(row, j).mul(inv));
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col);
                    for j in 0..m.cols {
                        let val = m.get(r, j).sub(factor.mul(m.get(row, j)));
                        m.set(r, j, val);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis from the reduced echelon form: one vector per
    /// free column, with 1 at the free coordinate.
    pub fn kernel_basis(&self) -> Vec<VecFp> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = VecFp::zeros(self.p, self.cols);
            v.set(free, Scalar::one(self.p));
            for (row, &pc) in pivots.iter().enumerate() {
                v.set(pc, r.get(row, free).neg());
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<MatFp> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = MatFp::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Scalar::one(self.p));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = MatFp::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Debug for MatFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Full solution set of an affine system A x = b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    pub solvable: bool,
    /// Canonical particular solution: free variables set to zero.
    pub particular: Option<VecFp>,
    /// Canonical kernel basis of A (independent, echelon-derived).
    pub kernel_basis: Vec<VecFp>,
}

impl SolutionSet {
    /// Materializes every solution (particular + kernel span). Desk scale only.
    pub fn enumerate(&self) -> Vec<VecFp> {
        let Some(part) = &self.particular else {
            return Vec::new();
        };
        let p = part.p();
        let mut out = Vec::new();
        for combo in all_vectors(p, self.kernel_basis.len()) {
            let mut x = part.clone();
            for (i, kv) in self.kernel_basis.iter().enumerate() {
                x = x.add(&kv.scale(combo.get(i)));
            }
            out.push(x);
        }
        out
    }
}

/// Solves A x = b over GF(p), returning the full solution set.
pub fn solve_affine(a: &MatFp, b: &VecFp) -> Result<SolutionSet, GfpError> {
    if a.rows() != b.len() {
        return Err(GfpError::DimensionMismatch(format!(
            "matrix has {} rows, right-hand side has {}",
            a.rows(),
            b.len()
        )));
    }
    let p = a.p();
    let n = a.cols();
    let mut aug = MatFp::zeros(p, a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, n, b.get(i));
    }
    let (r, pivots) = aug.rref();
    let kernel_basis = a.kernel_basis();
    if pivots.contains(&n) {
        return Ok(SolutionSet {
            solvable: false,
            particular: None,
            kernel_basis,
        });
    }
    let mut x = VecFp::zeros(p, n);
    for (row, &pc) in pivots.iter().enumerate() {
        x.set(pc, r.get(row, n));
    }
    Ok(SolutionSet {
        solvable: true,
        particular: Some(x),
        kernel_basis,
    })
}

/// Iterates every vector of GF(p)^n, coordinate 0 varying fastest.
pub fn all_vectors(p: u32, n: usize) -> AllVectors {
    AllVectors {
        p,
        n,
        current: vec![0; n],
        done: false,
    }
}

/// Number of vectors in GF(p)^n, saturating at u64::MAX.
pub fn element_count(p: u32, n: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(p as u64);
    }
    acc
}

pub struct AllVectors {
    p: u32,
    n: usize,
    current: Vec<u32>,
    done: bool,
}

impl Iterator for AllVectors {
    type Item = VecFp;

    fn next(&mut self) -> Option<VecFp> {
        if self.done {
            return None;
        }
        let out = VecFp::from_entries(
            self.p,
            &self.current.iter().map(|&c| c as i64).collect::<Vec<_>>(),
        );
        let mut i = 0;
        loop {
            if i == self.n {
                self.done = true;
                break;
            }
            self.current[i] += 1;
            if self.current[i] < self.p {
                break;
            }
            self.current[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Univariate polynomial in the formal parameter `k`, coefficients in GF(p),
/// stored ascending with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(p: u32) -> Self {
        Poly { p, coeffs: vec![] }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut poly = Poly::zero(c.modulus());
        if !c.is_zero() {
            poly.coeffs.push(c.value());
        }
        poly
    }

    /// c · k^d
    pub fn monomial(c: Scalar, d: usize) -> Self {
        let mut poly = Poly::zero(c.modulus());
        if !c.is_zero() {
            poly.coeffs = vec![0; d + 1];
            poly.coeffs[d] = c.value();
        }
        poly
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, d: usize) -> Scalar {
        if d < self.coeffs.len() {
            Scalar::new(self.coeffs[d] as i64, self.p)
        } else {
            Scalar::zero(self.p)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.p, other.p);
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Poly {
            p: self.p,
            coeffs: vec![0; len],
        };
        for d in 0..len {
            out.coeffs[d] = self.coeff(d).add(other.coeff(d)).value();
        }
        out.trim()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let mut out = Poly {
            p: self.p,
            coeffs: vec![0; self.coeffs.len() + other.coeffs.len() - 1],
        };
        for (i, _) in self.coeffs.iter().enumerate() {
            for (j, _) in other.coeffs.iter().enumerate() {
                let add = self.coeff(i).mul(other.coeff(j));
                out.coeffs[i + j] = Scalar::new(out.coeffs[i + j] as i64, self.p)
                    .add(add)
                    .value();
            }
        }
        out.trim()
    }

    pub fn scale(&self, c: Scalar) -> Poly {
        let mut out = self.clone();
        for e in out.coeffs.iter_mut() {
            *e = Scalar::new(*e as i64, self.p).mul(c).value();
        }
        out.trim()
    }

    pub fn eval(&self, k: Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.p);
        for d in (0..self.coeffs.len()).rev() {
            acc = acc.mul(k).add(self.coeff(d));
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "k")?,
                1 => write!(f, "{c}k")?,
                _ if c == 1 => write!(f, "k^{d}")?,
                _ => write!(f, "{c}k^{d}")?,
            }
        }
        Ok(())
    }
}

/// Coordinate vector with polynomial entries; houses the k-expansion used by
/// the additivity-correction terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVec {
    p: u32,
    coords: Vec<Poly>,
}

impl PolyVec {
    pub fn from_const(v: &VecFp) -> Self {
        PolyVec {
            p: v.p(),
            coords: v.iter().map(Poly::constant).collect(),
        }
    }

    pub fn zeros(p: u32, len: usize) -> Self {
        PolyVec {
            p,
            coords: vec![Poly::zero(p); len],
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, i: usize) -> &Poly {
        &self.coords[i]
    }

    pub fn add(&self, other: &PolyVec) -> PolyVec {
        assert_eq!(self.len(), other.len());
        PolyVec {
            p: self.p,
            coords: (0..self.len())
                .map(|i| self.coords[i].add(&other.coords[i]))
                .collect(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coords.iter().filter_map(|c| c.degree()).max()
    }

    /// The vector of k^i coefficients. `i` must lie in `0..=p-1`.
    pub fn coeff_vec(&self, i: usize) -> Result<VecFp, GfpError> {
        let cap = (self.p - 1) as usize;
        if i > cap {
            return Err(GfpError::IndexOutOfRange { index: i, cap });
        }
        let mut out = VecFp::zeros(self.p, self.len());
        for (j, c) in self.coords.iter().enumerate() {
            out.set(j, c.coeff(i));
        }
        Ok(out)
    }

    /// Evaluates every coordinate at a concrete k.
    pub fn eval(&self, k: Scalar) -> VecFp {
        let mut out = VecFp::zeros(self.p, self.len());
        for (j, c) in self.coords.iter().enumerate() {
            out.set(j, c.eval(k));
        }
        out
    }
}

/// Matrix with polynomial entries in `k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMat {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    /// The affine matrix `constant + k·linear`.
    pub fn affine(constant: &MatFp, linear: &MatFp) -> Self {
        assert_eq!((constant.rows(), constant.cols()), (linear.rows(), linear.cols()));
        let p = constant.p();
        let mut entries = Vec::with_capacity(constant.rows() * constant.cols());
        for i in 0..constant.rows() {
            for j in 0..constant.cols() {
                let e = Poly::constant(constant.get(i, j))
                    .add(&Poly::monomial(linear.get(i, j), 1));
                entries.push(e);
            }
        }
        PolyMat {
            p,
            rows: constant.rows(),
            cols: constant.cols(),
            entries,
        }
    }

    pub fn from_const(m: &MatFp) -> Self {
        PolyMat::affine(m, &MatFp::zeros(m.p(), m.rows(), m.cols()))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    /// Evaluates every entry at a concrete k.
    pub fn eval(&self, k: Scalar) -> MatFp {
        let mut out = MatFp::zeros(self.p, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.entry(i, j).eval(k));
            }
        }
        out
    }

    /// Exact matrix-vector product. Degrees beyond p-1 signal corrupted
    /// upstream data and surface as `DegreeOverflow`.
    pub fn apply(&self, v: &PolyVec) -> Result<PolyVec, GfpError> {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        let cap = (self.p - 1) as usize;
        let mut coords = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Poly::zero(self.p);
            for j in 0..self.cols {
                acc = acc.add(&self.entry(i, j).mul(v.coord(j)));
            }
            if acc.degree().unwrap_or(0) > cap {
                return Err(GfpError::DegreeOverflow { cap });
            }
            coords.push(acc);
        }
        Ok(PolyVec { p: self.p, coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(13));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert!(validate_prime(4).is_err());
    }

    #[test]
    fn scalar_field_ops() {
        let a = Scalar::new(5, 7);
        let b = Scalar::new(4, 7);
        assert_eq!(a.add(b).value(), 2);
        assert_eq!(a.mul(b).value(), 6);
        assert_eq!(a.sub(b).value(), 1);
        assert_eq!(Scalar::new(-1, 7).value(), 6);
        assert_eq!(b.inv().mul(b).value(), 1);
    }

    #[test]
    fn fermat_makes_p_semilinear_linear() {
        // k^p = k for every residue: p-semilinear maps coincide with linear
        // maps over the prime field itself.
        for p in [2u32, 3, 5] {
            for k in 0..p {
                let s = Scalar::new(k as i64, p);
                assert_eq!(s.pow(p), s, "k^p != k for k={k}, p={p}");
            }
        }
    }

    #[test]
    fn solve_identity_system() {
        let a = MatFp::identity(2, 2);
        let b = VecFp::from_entries(2, &[1, 0]);
        let sol = solve_affine(&a, &b).unwrap();
        assert!(sol.solvable);
        assert_eq!(sol.particular.unwrap(), VecFp::from_entries(2, &[1, 0]));
        assert!(sol.kernel_basis.is_empty());
    }

    #[test]
    fn solve_with_free_variable() {
        let a = MatFp::from_rows(2, &[vec![1, 1], vec![0, 0]]);
        let b = VecFp::from_entries(2, &[1, 0]);
        let sol = solve_affine(&a, &b).unwrap();
        assert!(sol.solvable);
        assert_eq!(sol.particular.unwrap(), VecFp::from_entries(2, &[1, 0]));
        assert_eq!(sol.kernel_basis, vec![VecFp::from_entries(2, &[1, 1])]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = MatFp::zeros(2, 1, 1);
        let b = VecFp::from_entries(2, &[1]);
        let sol = solve_affine(&a, &b).unwrap();
        assert!(!sol.solvable);
        assert!(sol.particular.is_none());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = MatFp::identity(2, 2);
        let b = VecFp::from_entries(2, &[1]);
        assert!(matches!(
            solve_affine(&a, &b),
            Err(GfpError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solution_set_size_is_p_to_kernel_dim() {
        // {particular + span(kernel)} has exactly p^(#kernel basis) members,
        // each satisfying the system.
        let a = MatFp::from_rows(3, &[vec![1, 2, 0], vec![2, 4, 0]]);
        let b = VecFp::from_entries(3, &[1, 2]);
        let sol = solve_affine(&a, &b).unwrap();
        let all = sol.enumerate();
        assert_eq!(all.len(), 3usize.pow(sol.kernel_basis.len() as u32));
        for x in &all {
            assert_eq!(a.mul_vec(x), b);
        }
        let mut dedup = all.clone();
        dedup.sort_by_key(|v| v.iter().map(|s| s.value()).collect::<Vec<_>>());
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn inverse_round_trip() {
        let m = MatFp::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatFp::identity(5, 2));
        let singular = MatFp::from_rows(5, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn poly_apply_scalar_matrix() {
        // M = k·I over GF(3) applied to (1,0) gives (k, 0).
        let id = MatFp::identity(3, 2);
        let m = PolyMat::affine(&MatFp::zeros(3, 2, 2), &id);
        let v = PolyVec::from_const(&VecFp::from_entries(3, &[1, 0]));
        let out = m.apply(&v).unwrap();
        assert_eq!(out.coeff_vec(1).unwrap(), VecFp::from_entries(3, &[1, 0]));
        assert_eq!(out.coeff_vec(0).unwrap(), VecFp::from_entries(3, &[0, 0]));
    }

    #[test]
    fn poly_apply_constant_matrix_is_ordinary_product() {
        let m = MatFp::from_rows(3, &[vec![1, 2], vec![0, 1]]);
        let v = VecFp::from_entries(3, &[2, 1]);
        let out = PolyMat::from_const(&m)
            .apply(&PolyVec::from_const(&v))
            .unwrap();
        assert_eq!(out.coeff_vec(0).unwrap(), m.mul_vec(&v));
        assert!(out.degree().is_none() || out.degree() == Some(0));
    }

    #[test]
    fn poly_coeff_out_of_range() {
        let v = PolyVec::from_const(&VecFp::from_entries(2, &[1]));
        assert!(matches!(
            v.coeff_vec(2),
            Err(GfpError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn poly_interpolation_consistency() {
        // Evaluating an exact polynomial product at each k equals the product
        // of evaluations.
        let a = MatFp::from_rows(5, &[vec![1, 2], vec![3, 0]]);
        let b = MatFp::from_rows(5, &[vec![0, 1], vec![4, 2]]);
        let m = PolyMat::affine(&a, &b);
        let v = VecFp::from_entries(5, &[2, 3]);
        let pv = PolyVec::from_const(&v);
        let out = m.apply(&pv).unwrap();
        for k in 0..5 {
            let ks = Scalar::new(k, 5);
            assert_eq!(out.eval(ks), m.eval(ks).mul_vec(&v));
        }
    }

    #[test]
    fn all_vectors_order_and_count() {
        let vs: Vec<_> = all_vectors(2, 2).collect();
        assert_eq!(vs.len(), 4);
        assert_eq!(vs[0], VecFp::from_entries(2, &[0, 0]));
        assert_eq!(vs[1], VecFp::from_entries(2, &[1, 0]));
        assert_eq!(vs[2], VecFp::from_entries(2, &[0, 1]));
        assert_eq!(vs[3], VecFp::from_entries(2, &[1, 1]));
    }

    #[test]
    fn kernel_basis_members_are_in_kernel() {
        let a = MatFp::from_rows(2, &[vec![1, 1, 0], vec![0, 0, 1]]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 1);
        for v in &basis {
            assert!(a.mul_vec(v).is_zero());
        }
    }
}
