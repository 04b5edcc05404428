//! Bit-packed linear algebra over GF(2).
//!
//! Everything above this module (relation modules, orthogonal complements,
//! kernels, canonical coset representatives) reduces to three types:
//!
//! - [`BitVec`]: a dense vector over GF(2), packed 64 bits per word;
//! - [`Gf2Matrix`]: a list of equal-length rows;
//! - [`Gf2Subspace`]: a row space held in reduced row-echelon form with
//!   strictly increasing pivots, so that subspace equality is bit equality
//!   of the bases.
//!
//! All values are immutable after construction in the sense that the
//! higher-level code only ever shares them read-only; operations are pure.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand_core::RngCore;

use crate::error::{Error, Result};

/// A dense GF(2) vector. Bit `i` is `(words[i/64] >> (i%64)) & 1`.
///
/// Coordinates beyond `len` are kept zero, so word-wise XOR and dot products
/// never see junk in the tail.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    /// Zero vector of the given length.
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Vector with a single coordinate set.
    ///
    /// # Panics
    /// Panics if `bit >= len`.
    #[must_use]
    pub fn unit(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    /// Builds a vector from the low `len` bits of `mask` (bit `i` of the
    /// mask becomes coordinate `i`).
    #[must_use]
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "from_mask supports at most 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            let keep = if len == 64 { !0u64 } else { (1u64 << len) - 1 };
            v.words[0] = mask & keep;
        }
        v
    }

    /// Packs the first (at most 64) coordinates into a mask.
    #[must_use]
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= 64, "to_mask supports at most 64 coordinates");
        if self.len == 0 {
            0
        } else {
            self.words[0]
        }
    }

    /// Parses a bitstring like `"0110"`, character `i` giving coordinate `i`.
    pub fn parse_bitstring(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => {
                    return Err(Error::MalformedValueSets(alloc::format!(
                        "bad character {c:?} in bitstring {s:?}"
                    )))
                }
            }
        }
        Ok(v)
    }

    /// Renders the vector as a bitstring, coordinate `i` at position `i`.
    #[must_use]
    pub fn to_bitstring(&self) -> alloc::string::String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    #[must_use]
    pub const fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub const fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// # Panics
    /// Panics if `i >= len`.
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// # Panics
    /// Panics if `i >= len`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        if value {
            self.words[i / 64] |= 1u64 << (i % 64);
        } else {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    /// In-place XOR (vector addition over GF(2)).
    ///
    /// # Panics
    /// Panics if lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Dot product: parity of the AND of the two vectors.
    ///
    /// # Panics
    /// Panics if lengths differ.
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot: length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Index of the lowest set coordinate, or `None` for the zero vector.
    #[must_use]
    pub fn leading(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Iterator over set coordinate indices in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    /// Concatenates two vectors.
    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The restriction to coordinates `range`.
    #[must_use]
    pub fn slice(&self, range: core::ops::Range<usize>) -> Self {
        let mut out = Self::zeros(range.len());
        for (k, i) in range.enumerate() {
            out.set(k, self.get(i));
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bitstring())
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitVec {
    /// Lexicographic order of the bitstrings (coordinate 0 compared first,
    /// `0` before `1`). This matches the deterministic orderings promised to
    /// callers, so do not replace it with the derived word order.
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.words.len().max(other.words.len());
        for k in 0..n {
            let a = self.words.get(k).copied().unwrap_or(0).reverse_bits();
            let b = other.words.get(k).copied().unwrap_or(0).reverse_bits();
            match a.cmp(&b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

// ============================================================================
// Pair coordinates
// ============================================================================

/// Number of unordered pairs `i < j` drawn from `0..n`.
#[must_use]
pub const fn pair_count(n: usize) -> usize {
    n * (n.saturating_sub(1)) / 2
}

/// Position of the pair `(i, j)`, `i < j`, in the lexicographic pair order
/// `(0,1), (0,2), ..., (0,n-1), (1,2), ...` fixed by the file formats.
///
/// # Panics
/// Panics unless `i < j < n`.
#[must_use]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    assert!(i < j && j < n, "pair_index: need i < j < n, got ({i},{j}) with n={n}");
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Iterator over pairs `(i, j)`, `i < j < n`, in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// The vector of length `pair_count(n)` whose `(i, j)` entry is `u_i & v_j`.
///
/// This is the upper-triangular outer product used by both the W-group law
/// and the q-polynomials.
#[must_use]
pub fn outer_upper(u: &BitVec, v: &BitVec) -> BitVec {
    let n = u.len();
    assert_eq!(n, v.len(), "outer_upper: length mismatch");
    let mut out = BitVec::zeros(pair_count(n));
    for i in u.ones() {
        for j in v.ones() {
            if i < j {
                out.set(pair_index(n, i, j), true);
            }
        }
    }
    out
}

// ============================================================================
// Matrices
// ============================================================================

/// A GF(2) matrix as a list of equal-length rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl Gf2Matrix {
    /// # Panics
    /// Panics if rows disagree on length.
    #[must_use]
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "matrix rows must share one length");
        }
        Self { rows, cols }
    }

    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: (0..rows).map(|_| BitVec::zeros(cols)).collect(),
            cols,
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
            cols: n,
        }
    }

    #[must_use]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub const fn n_cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    #[must_use]
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    /// Matrix-vector product `m · x` (x an n_cols vector, result n_rows).
    ///
    /// # Panics
    /// Panics if `x.len() != n_cols`.
    #[must_use]
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols, "mul_vec: dimension mismatch");
        let mut out = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            out.set(i, r.dot(x));
        }
        out
    }

    /// Row-vector product `x · m` (x an n_rows vector, result n_cols).
    ///
    /// # Panics
    /// Panics if `x.len() != n_rows`.
    #[must_use]
    pub fn vec_mul(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.rows.len(), "vec_mul: dimension mismatch");
        let mut out = BitVec::zeros(self.cols);
        for i in x.ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    /// Matrix product `self · other`.
    ///
    /// # Panics
    /// Panics on inner-dimension mismatch.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows.len(), "mul: dimension mismatch");
        let rows = self.rows.iter().map(|r| other.vec_mul(r)).collect();
        Self::from_rows(other.cols, rows)
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                out.set(j, i, true);
            }
        }
        out
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        rref(self).dim()
    }

    /// Inverse of a square matrix, or `Error::SingularMatrix`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.cols;
        if self.rows.len() != n {
            return Err(Error::SingularMatrix);
        }
        // Gauss-Jordan on [self | I].
        let mut a: Vec<BitVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVec::unit(n, i)))
            .collect();
        let mut pivot_row = 0;
        for col in 0..n {
            let Some(found) = (pivot_row..n).find(|&r| a[r].get(col)) else {
                return Err(Error::SingularMatrix);
            };
            a.swap(pivot_row, found);
            let p = a[pivot_row].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != pivot_row && row.get(col) {
                    row.xor_assign(&p);
                }
            }
            pivot_row += 1;
        }
        let rows = a.into_iter().map(|r| r.slice(n..2 * n)).collect();
        Ok(Self::from_rows(n, rows))
    }

    /// Fills an `n x n` matrix with uniform bits until invertible.
    /// Deterministic given the RNG state.
    pub fn random_invertible(n: usize, rng: &mut impl RngCore) -> Self {
        if n == 0 {
            return Self::identity(0);
        }
        loop {
            let rows: Vec<BitVec> = (0..n)
                .map(|_| {
                    let mut v = BitVec::zeros(n);
                    for i in 0..n {
                        v.set(i, rng.next_u32() & 1 == 1);
                    }
                    v
                })
                .collect();
            let m = Self::from_rows(n, rows);
            if m.rank() == n {
                return m;
            }
        }
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix({}x{}):", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {}", r.to_bitstring())?;
        }
        Ok(())
    }
}

// ============================================================================
// Subspaces in canonical form
// ============================================================================

/// A subspace of GF(2)^n held as a reduced row-echelon basis.
///
/// Invariants: rows are nonzero, pivots strictly increase, and every pivot
/// column is zero in the other rows. Two `Gf2Subspace` values are equal as
/// subspaces iff they are equal as data.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Subspace {
    ambient_dim: usize,
    basis: Vec<BitVec>,
}

/// Canonical row space of `m`.
#[must_use]
pub fn rref(m: &Gf2Matrix) -> Gf2Subspace {
    let mut s = Gf2Subspace::zero(m.n_cols());
    for r in m.rows() {
        s.insert(r.clone());
    }
    s
}

impl Gf2Subspace {
    /// The zero subspace of the given ambient dimension.
    #[must_use]
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// The full space.
    #[must_use]
    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| BitVec::unit(ambient_dim, i)).collect(),
        }
    }

    /// Canonical span of arbitrary vectors.
    #[must_use]
    pub fn span(ambient_dim: usize, vectors: &[BitVec]) -> Self {
        let mut s = Self::zero(ambient_dim);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    #[must_use]
    pub const fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[must_use]
    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    #[must_use]
    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.leading().unwrap()).collect()
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` lies in
    /// the subspace. Also the canonical coset representative of `v`.
    ///
    /// # Panics
    /// Panics if `v.len() != ambient_dim`.
    #[must_use]
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.ambient_dim, "reduce: length mismatch");
        let mut v = v.clone();
        for row in &self.basis {
            let p = row.leading().unwrap();
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Membership test.
    ///
    /// # Panics
    /// Panics if `v.len() != ambient_dim`.
    #[must_use]
    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    #[must_use]
    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Grows the span by `v`, keeping the basis in RREF. Returns `true` if
    /// the dimension grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "insert: length mismatch");
        let v = self.reduce(&v);
        let Some(p) = v.leading() else { return false };
        // Clear column p above, then place the row keeping pivots sorted.
        for row in &mut self.basis {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self
            .basis
            .iter()
            .position(|r| r.leading().unwrap() > p)
            .unwrap_or(self.basis.len());
        self.basis.insert(at, v);
        true
    }

    /// Orthogonal complement under the standard dot product.
    /// `dim(self) + dim(result) = ambient_dim`.
    #[must_use]
    pub fn orthogonal_complement(&self) -> Self {
        // Kernel of the basis matrix: one generator per free column.
        let n = self.ambient_dim;
        let pivots = self.pivots();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Self::zero(n);
        for j in 0..n {
            if is_pivot[j] {
                continue;
            }
            let mut v = BitVec::unit(n, j);
            for (row, &p) in self.basis.iter().zip(&pivots) {
                if row.get(j) {
                    v.set(p, true);
                }
            }
            out.insert(v);
        }
        out
    }

    /// Sum (join) of two subspaces of the same ambient space.
    #[must_use]
    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    /// Intersection, via `(A^perp + B^perp)^perp`.
    #[must_use]
    pub fn intersect(&self, other: &Self) -> Self {
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }

    /// All `2^dim` vectors of the subspace, in Gray-code-free plain order of
    /// basis combinations. Intended for small dimensions.
    ///
    /// # Panics
    /// Panics if `dim > 24`.
    #[must_use]
    pub fn enumerate(&self) -> Vec<BitVec> {
        let d = self.dim();
        assert!(d <= 24, "refusing to enumerate 2^{d} vectors");
        let mut out = Vec::with_capacity(1 << d);
        for mask in 0u32..(1u32 << d) {
            let mut v = BitVec::zeros(self.ambient_dim);
            for (k, row) in self.basis.iter().enumerate() {
                if (mask >> k) & 1 == 1 {
                    v.xor_assign(row);
                }
            }
            out.push(v);
        }
        out
    }

    /// Every subspace of GF(2)^n, one canonical basis each, enumerated by
    /// pivot sets and free entries. Ordered by (dim, basis).
    ///
    /// # Panics
    /// Panics if `ambient_dim > 6` (the count grows fast).
    #[must_use]
    pub fn enumerate_all(ambient_dim: usize) -> Vec<Self> {
        assert!(ambient_dim <= 6, "subspace enumeration is capped at dim 6");
        let n = ambient_dim;
        let mut out = Vec::new();
        for pivot_mask in 0u32..(1u32 << n) {
            let pivots: Vec<usize> = (0..n).filter(|&i| (pivot_mask >> i) & 1 == 1).collect();
            let k = pivots.len();
            // Free positions: (row r, col c) with c not a pivot and c > pivots[r].
            let mut free: Vec<(usize, usize)> = Vec::new();
            for (r, &p) in pivots.iter().enumerate() {
                for c in p + 1..n {
                    if (pivot_mask >> c) & 1 == 0 {
                        free.push((r, c));
                    }
                }
            }
            for bits in 0u64..(1u64 << free.len()) {
                let mut basis: Vec<BitVec> =
                    pivots.iter().map(|&p| BitVec::unit(n, p)).collect();
                for (t, &(r, c)) in free.iter().enumerate() {
                    if (bits >> t) & 1 == 1 {
                        basis[r].set(c, true);
                    }
                }
                out.push(Self {
                    ambient_dim: n,
                    basis: basis.clone(),
                });
                debug_assert_eq!(out.last().unwrap().dim(), k);
            }
        }
        out.sort_by(|a, b| (a.dim(), &a.basis).cmp(&(b.dim(), &b.basis)));
        out
    }
}

impl fmt::Debug for Gf2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Subspace(dim {} of {}; ", self.dim(), self.ambient_dim)?;
        for (k, r) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", r.to_bitstring())?;
        }
        write!(f, ")")
    }
}

/// Any solution `x` of `m · x = rhs`, or `None` if the system is
/// inconsistent.
///
/// # Panics
/// Panics if `rhs.len()` differs from the number of rows of `m`.
#[must_use]
pub fn solve(m: &Gf2Matrix, rhs: &BitVec) -> Option<BitVec> {
    assert_eq!(rhs.len(), m.n_rows(), "solve: rhs length mismatch");
    let cols = m.n_cols();
    // Eliminate on rows of [m | rhs].
    let mut s = Gf2Subspace::zero(cols + 1);
    for (i, r) in m.rows().iter().enumerate() {
        let mut aug = r.concat(&BitVec::zeros(1));
        if rhs.get(i) {
            aug.set(cols, true);
        }
        s.insert(aug);
    }
    // Inconsistent iff some basis row is (0,...,0 | 1).
    if s.basis().iter().any(|r| r.leading() == Some(cols)) {
        return None;
    }
    let mut x = BitVec::zeros(cols);
    for row in s.basis() {
        let p = row.leading().unwrap();
        if row.get(cols) {
            x.set(p, true);
        }
    }
    // Back-substitution is implicit: rows are RREF, so setting x at pivots
    // to the augmented column solves the system. Verify in debug builds.
    debug_assert_eq!(&m.mul_vec(&x), rhs);
    Some(x)
}

/// Completes `vectors` (assumed independent) to a basis of GF(2)^n by
/// greedily appending unit vectors in index order.
pub fn complete_to_basis(n: usize, vectors: &[BitVec]) -> Result<Gf2Matrix> {
    let mut span = Gf2Subspace::zero(n);
    let mut rows: Vec<BitVec> = Vec::with_capacity(n);
    for v in vectors {
        if !span.insert(v.clone()) {
            return Err(Error::Precondition(alloc::format!(
                "vectors are not linearly independent: {} is in the span of its predecessors",
                v.to_bitstring()
            )));
        }
        rows.push(v.clone());
    }
    for i in 0..n {
        if rows.len() == n {
            break;
        }
        let e = BitVec::unit(n, i);
        if span.insert(e.clone()) {
            rows.push(e);
        }
    }
    Ok(Gf2Matrix::from_rows(n, rows))
}
