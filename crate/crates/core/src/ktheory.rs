//! Degree-1 and degree-2 mod-2 k-theory of a PSG.
//!
//! `P1(B)` and `P2(B)` are the modules of homogeneous linear and quadratic
//! polynomials in the basis variables. The q-polynomial of a pair `(a, b)`
//! encodes the symbol `l(a)l(b)`:
//!
//! ```text
//! q_{a,b} = sum_k a_k b_k z_k^2 + sum_{k<l} (a_k b_l + a_l b_k) z_k z_l
//! ```
//!
//! The relation module `Q(B)` is the span of `q_{a,b}` over the defining
//! relations `b in D(1, -a)`, and `k_2(G) = P2(B)/Q(B)`. Everything downstream
//! (the subgroup `V(B) = Q(B)^perp`, hence `Gal(G)`) is driven by `Q(B)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf2::{outer_upper, pair_count, pair_index, BitVec, Gf2Matrix, Gf2Subspace};
use crate::psg::{Psg, PsgElement};

/// Homogeneous linear polynomial `sum c_i z_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Vector {
    n: usize,
    coeffs: BitVec,
}

impl P1Vector {
    #[must_use]
    pub fn new(coeffs: BitVec) -> Self {
        Self { n: coeffs.len(), coeffs }
    }

    #[must_use]
    pub const fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn coeffs(&self) -> &BitVec {
        &self.coeffs
    }

    /// The linear polynomial of an element: `l(a) = sum a_i z_i`.
    #[must_use]
    pub fn of_element(a: &PsgElement) -> Self {
        Self::new(a.coords().clone())
    }
}

/// Homogeneous quadratic polynomial, coefficients split into the `z_i^2`
/// block and the `z_i z_j` (`i < j`, lexicographic) block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct P2Vector {
    n: usize,
    sq: BitVec,
    mixed: BitVec,
}

impl P2Vector {
    /// # Panics
    /// Panics if the block lengths are inconsistent.
    #[must_use]
    pub fn new(n: usize, sq: BitVec, mixed: BitVec) -> Self {
        assert_eq!(sq.len(), n, "sq length");
        assert_eq!(mixed.len(), pair_count(n), "mixed length");
        Self { n, sq, mixed }
    }

    #[must_use]
    pub fn zero(n: usize) -> Self {
        Self::new(n, BitVec::zeros(n), BitVec::zeros(pair_count(n)))
    }

    /// `z_i^2`.
    #[must_use]
    pub fn monomial_square(n: usize, i: usize) -> Self {
        Self::new(n, BitVec::unit(n, i), BitVec::zeros(pair_count(n)))
    }

    /// `z_i z_j`, `i < j`.
    #[must_use]
    pub fn monomial_mixed(n: usize, i: usize, j: usize) -> Self {
        Self::new(
            n,
            BitVec::zeros(n),
            BitVec::unit(pair_count(n), pair_index(n, i, j)),
        )
    }

    #[must_use]
    pub const fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn sq(&self) -> &BitVec {
        &self.sq
    }

    #[must_use]
    pub fn mixed(&self) -> &BitVec {
        &self.mixed
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.sq.is_zero() && self.mixed.is_zero()
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        Self::new(self.n, self.sq.xor(&other.sq), self.mixed.xor(&other.mixed))
    }

    /// Flat coordinates, squares then mixed. This order is fixed by the
    /// file formats and by the pairing with the `(alpha, beta)` block.
    #[must_use]
    pub fn flatten(&self) -> BitVec {
        self.sq.concat(&self.mixed)
    }

    #[must_use]
    pub fn from_flat(n: usize, flat: &BitVec) -> Self {
        assert_eq!(flat.len(), n + pair_count(n), "flat length");
        Self::new(n, flat.slice(0..n), flat.slice(n..n + pair_count(n)))
    }
}

/// Ambient dimension of flattened `P2` coordinates: `n(n+1)/2`.
#[must_use]
pub const fn p2_dim(n: usize) -> usize {
    n + pair_count(n)
}

/// The q-polynomial of a pair of elements.
#[must_use]
pub fn q_poly(p: &Psg, a: &PsgElement, b: &PsgElement) -> P2Vector {
    let n = p.basis_size();
    let sq = {
        let mut s = BitVec::zeros(n);
        for i in a.coords().ones() {
            if b.coords().get(i) {
                s.set(i, true);
            }
        }
        s
    };
    let mixed = outer_upper(a.coords(), b.coords()).xor(&outer_upper(b.coords(), a.coords()));
    P2Vector::new(n, sq, mixed)
}

/// The relation module `Q(B)` and the dimension of `k_2(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationModule {
    q: Gf2Subspace,
    n: usize,
}

impl RelationModule {
    #[must_use]
    pub fn basis_of_q(&self) -> &Gf2Subspace {
        &self.q
    }

    #[must_use]
    pub fn q_dim(&self) -> usize {
        self.q.dim()
    }

    /// `dim k_2(G) = dim P2 - dim Q`.
    #[must_use]
    pub fn k2_dim(&self) -> usize {
        p2_dim(self.n) - self.q.dim()
    }

    #[must_use]
    pub fn contains(&self, q: &P2Vector) -> bool {
        self.q.contains(&q.flatten())
    }
}

/// All defining relation pairs `(a, b)` with `b in D(1, -a)`, in code order.
#[must_use]
pub fn relation_pairs(p: &Psg) -> Vec<(PsgElement, PsgElement)> {
    let minus_one = p.code(&p.minus_one());
    let mut out = Vec::new();
    for a in 0..p.order() {
        for b in p.value_set_bits(a ^ minus_one).ones() {
            out.push((p.element(a), p.element(b)));
        }
    }
    out
}

/// Spans `Q(B)` from the defining relations `{q_{a,b} : b in D(1, -a)}`.
#[must_use]
pub fn relation_module(p: &Psg) -> RelationModule {
    let n = p.basis_size();
    let mut q = Gf2Subspace::zero(p2_dim(n));
    for (a, b) in relation_pairs(p) {
        q.insert(q_poly(p, &a, &b).flatten());
    }
    RelationModule { q, n }
}

/// Whether `l(a)l(b) = 0` in `k_2(G)`, i.e. `q_{a,b} in Q(B)`.
#[must_use]
pub fn k2_product_is_zero(p: &Psg, rm: &RelationModule, a: &PsgElement, b: &PsgElement) -> bool {
    rm.contains(&q_poly(p, a, b))
}

/// One failing pair of the k-stability criterion.
#[derive(Clone, Debug)]
pub struct KStableViolation {
    pub a: PsgElement,
    pub b: PsgElement,
    /// `l(a)l(b) = 0` held, but `<a,b> = <1,ab>` did not (or vice versa).
    pub k2_zero: bool,
}

/// Report of the k-stability check; empty = k-stable.
#[derive(Clone, Debug, Default)]
pub struct KStableReport {
    pub violations: Vec<KStableViolation>,
}

impl KStableReport {
    #[must_use]
    pub fn is_stable(&self) -> bool {
        self.violations.is_empty()
    }
}

/// k-stability, in the operational form this library uses: for all `a, b`,
/// `l(a)l(b) = 0` in `k_2(G)` exactly when `<a, b> = <1, ab>`. This is the
/// form the structure theory consumes; it is reverse-engineered from how
/// k-stability is used rather than quoted from a self-contained definition,
/// and is documented as such.
#[must_use]
pub fn k_stable_check(p: &Psg) -> KStableReport {
    let rm = relation_module(p);
    let mut violations = Vec::new();
    for a in p.elements() {
        for b in p.elements() {
            let k2_zero = k2_product_is_zero(p, &rm, &a, &b);
            let iso = p.isometry2(&a, &b, &p.one(), &a.mul(&b));
            if k2_zero != iso {
                violations.push(KStableViolation { a: a.clone(), b, k2_zero });
            }
        }
    }
    KStableReport { violations }
}

// ============================================================================
// Base change
// ============================================================================

/// Linear map `P2(B) -> P2(C)` induced by a basis change; determined by
/// sending each q-polynomial of a pair of elements over `B` to the
/// q-polynomial of the same pair over `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Map {
    n: usize,
    /// Images of the monomial basis in flat order (squares then mixed).
    images: Vec<P2Vector>,
}

impl P2Map {
    #[must_use]
    pub fn identity(n: usize) -> Self {
        let images = (0..n)
            .map(|i| P2Vector::monomial_square(n, i))
            .chain(crate::gf2::pairs(n).map(|(i, j)| P2Vector::monomial_mixed(n, i, j)))
            .collect();
        Self { n, images }
    }

    #[must_use]
    pub fn apply(&self, q: &P2Vector) -> P2Vector {
        assert_eq!(q.n(), self.n, "P2Map: size mismatch");
        let mut out = P2Vector::zero(self.n);
        for pos in q.flatten().ones() {
            out = out.xor(&self.images[pos]);
        }
        out
    }

    /// `other . self` (apply `self` first).
    #[must_use]
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "P2Map: size mismatch");
        Self {
            n: self.n,
            images: self.images.iter().map(|im| other.apply(im)).collect(),
        }
    }

    /// Image of a whole subspace of flat `P2` coordinates.
    #[must_use]
    pub fn apply_subspace(&self, s: &Gf2Subspace) -> Gf2Subspace {
        let vs: Vec<BitVec> = s
            .basis()
            .iter()
            .map(|v| self.apply(&P2Vector::from_flat(self.n, v)).flatten())
            .collect();
        Gf2Subspace::span(p2_dim(self.n), &vs)
    }
}

/// Linear map `P1(B) -> P1(C)` induced by a basis change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Map {
    /// Coefficient rows transform by this matrix on the right.
    mat: Gf2Matrix,
}

impl P1Map {
    #[must_use]
    pub fn apply(&self, q: &P1Vector) -> P1Vector {
        P1Vector::new(self.mat.vec_mul(q.coeffs()))
    }

    #[must_use]
    pub fn then(&self, other: &Self) -> Self {
        Self { mat: self.mat.mul(&other.mat) }
    }
}

/// Induced maps for the change to a new basis whose rows are expressed in
/// the current coordinates. Errors if the matrix is singular.
///
/// Composition convention: if `m1` changes `B -> C` and `m2` changes
/// `C -> D` (rows of `m2` in `C`-coordinates), the direct change `B -> D`
/// has matrix `m2 * m1` and its induced map equals `m1.then(m2)`-style
/// composition, i.e. applying the `B -> C` map first.
pub fn base_change_m2(basis: &Gf2Matrix) -> Result<P2Map> {
    let n = basis.n_cols();
    if basis.n_rows() != n {
        return Err(Error::SingularMatrix);
    }
    let inv = basis.inverse()?;
    // New coordinates of the old basis vector e_i are row i of the inverse.
    let new_coords = |i: usize| inv.row(i).clone();
    let q_of = |u: &BitVec, w: &BitVec| -> P2Vector {
        let mut sq = BitVec::zeros(n);
        for k in u.ones() {
            if w.get(k) {
                sq.set(k, true);
            }
        }
        let mixed = outer_upper(u, w).xor(&outer_upper(w, u));
        P2Vector::new(n, sq, mixed)
    };
    let images = (0..n)
        .map(|i| {
            let u = new_coords(i);
            q_of(&u, &u)
        })
        .chain(crate::gf2::pairs(n).map(|(i, j)| q_of(&new_coords(i), &new_coords(j))))
        .collect();
    Ok(P2Map { n, images })
}

/// The degree-1 companion of [`base_change_m2`].
pub fn base_change_m1(basis: &Gf2Matrix) -> Result<P1Map> {
    if basis.n_rows() != basis.n_cols() {
        return Err(Error::SingularMatrix);
    }
    Ok(P1Map { mat: basis.inverse()? })
}
