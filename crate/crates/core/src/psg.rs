//! Finite pre-special groups presented by value sets.
//!
//! A pre-special group here is an exponent-2 group `G` of order `2^n` with a
//! distinguished element `-1` and, for every `x`, the value set
//! `V(x) = D(1, x)` of the binary form `<1, x>`. The quaternary isometry
//! relation is derived from the value sets:
//!
//! ```text
//! <a, b> = <c, d>   iff   ab = cd  and  ac in V(ab)
//! ```
//!
//! Elements are coordinate vectors over a fixed ordered basis (group law is
//! XOR); internally they are indexed by the integer whose bit `i` is
//! coordinate `i`, and value sets are bitsets over those codes.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitVec, Gf2Matrix, Gf2Subspace};

/// Largest supported basis size. Value-set storage is `4^n` bits.
pub const MAX_BASIS: usize = 12;

/// An element of a PSG as its coordinate vector over the group's basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsgElement {
    coords: BitVec,
}

impl PsgElement {
    #[must_use]
    pub fn new(coords: BitVec) -> Self {
        Self { coords }
    }

    /// The unit element of a group with basis size `n`.
    #[must_use]
    pub fn one(n: usize) -> Self {
        Self::new(BitVec::zeros(n))
    }

    #[must_use]
    pub fn coords(&self) -> &BitVec {
        &self.coords
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        self.coords.is_zero()
    }

    /// Group law (coordinatewise XOR).
    ///
    /// # Panics
    /// Panics if the elements come from groups of different basis sizes.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.coords.xor(&other.coords))
    }

    #[must_use]
    pub fn to_bitstring(&self) -> String {
        self.coords.to_bitstring()
    }

    pub fn parse_bitstring(s: &str) -> Result<Self> {
        Ok(Self::new(BitVec::parse_bitstring(s)?))
    }
}

impl fmt::Debug for PsgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.coords.to_bitstring())
    }
}

/// A character `G -> F_2` given by its coefficient vector:
/// `chi(x) = coeffs . x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    coeffs: BitVec,
}

impl Character {
    #[must_use]
    pub fn new(coeffs: BitVec) -> Self {
        Self { coeffs }
    }

    #[must_use]
    pub fn coeffs(&self) -> &BitVec {
        &self.coeffs
    }

    #[must_use]
    pub fn eval(&self, x: &PsgElement) -> bool {
        self.coeffs.dot(x.coords())
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi{}", self.coeffs.to_bitstring())
    }
}

// ============================================================================
// The group itself
// ============================================================================

/// A finite pre-special group candidate: basis size, `-1`, and one value set
/// per element. Construction checks structure only; the axioms are the job
/// of [`Psg::validate`].
#[derive(Clone)]
pub struct Psg {
    name: String,
    n: usize,
    minus_one: usize,
    /// `value_sets[x]` is the bitset of codes `y` with `y in V(x)`.
    value_sets: Vec<BitVec>,
}

impl Psg {
    /// Builds a PSG from explicit value sets, checking structural
    /// well-formedness: all `2^n` keys present exactly once, all members in
    /// range. Axiom violations are *not* errors; run [`Psg::validate`].
    pub fn from_value_sets(
        name: &str,
        n: usize,
        minus_one: &BitVec,
        sets: &[(BitVec, Vec<BitVec>)],
    ) -> Result<Self> {
        if n > MAX_BASIS {
            return Err(Error::Guardrail {
                what: "basis size",
                limit: MAX_BASIS as u64,
                actual: n as u64,
            });
        }
        if minus_one.len() != n {
            return Err(Error::MalformedValueSets(format!(
                "minus_one has length {}, expected {n}",
                minus_one.len()
            )));
        }
        let order = 1usize << n;
        let mut value_sets: Vec<Option<BitVec>> = vec![None; order];
        for (key, members) in sets {
            if key.len() != n {
                return Err(Error::MalformedValueSets(format!(
                    "key {} has length {}, expected {n}",
                    key.to_bitstring(),
                    key.len()
                )));
            }
            let code = key.to_mask() as usize;
            if value_sets[code].is_some() {
                return Err(Error::MalformedValueSets(format!(
                    "duplicate key {}",
                    key.to_bitstring()
                )));
            }
            let mut set = BitVec::zeros(order);
            for m in members {
                if m.len() != n {
                    return Err(Error::MalformedValueSets(format!(
                        "element {} in V({}) has length {}, expected {n}",
                        m.to_bitstring(),
                        key.to_bitstring(),
                        m.len()
                    )));
                }
                set.set(m.to_mask() as usize, true);
            }
            value_sets[code] = Some(set);
        }
        let missing: Vec<usize> = (0..order).filter(|&c| value_sets[c].is_none()).collect();
        if let Some(&c) = missing.first() {
            return Err(Error::MalformedValueSets(format!(
                "missing value set for element {} ({} missing in total)",
                BitVec::from_mask(n, c as u64).to_bitstring(),
                missing.len()
            )));
        }
        Ok(Self {
            name: name.to_string(),
            n,
            minus_one: minus_one.to_mask() as usize,
            value_sets: value_sets.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Internal builder from code-level value sets. `value_sets[x]` must be a
    /// bitset of length `2^n`.
    pub(crate) fn from_codes(name: String, n: usize, minus_one: usize, value_sets: Vec<BitVec>) -> Self {
        assert!(n <= MAX_BASIS);
        assert_eq!(value_sets.len(), 1 << n);
        Self { name, n, minus_one, value_sets }
    }

    #[must_use]
    pub fn name(&self) -> &str {
        &self.name
    }

    #[must_use]
    pub const fn basis_size(&self) -> usize {
        self.n
    }

    /// `|G| = 2^n`.
    #[must_use]
    pub const fn order(&self) -> usize {
        1 << self.n
    }

    #[must_use]
    pub fn minus_one(&self) -> PsgElement {
        self.element(self.minus_one)
    }

    #[must_use]
    pub fn one(&self) -> PsgElement {
        PsgElement::one(self.n)
    }

    /// Code (bit-packed coordinates) of an element.
    #[must_use]
    pub fn code(&self, x: &PsgElement) -> usize {
        assert_eq!(x.coords().len(), self.n, "element from a different group");
        x.coords().to_mask() as usize
    }

    #[must_use]
    pub fn element(&self, code: usize) -> PsgElement {
        assert!(code < self.order());
        PsgElement::new(BitVec::from_mask(self.n, code as u64))
    }

    pub fn elements(&self) -> impl Iterator<Item = PsgElement> + '_ {
        (0..self.order()).map(|c| self.element(c))
    }

    #[must_use]
    pub(crate) fn value_set_bits(&self, code: usize) -> &BitVec {
        &self.value_sets[code]
    }

    /// `y in V(x) = D(1, x)`.
    #[must_use]
    pub fn in_value_set(&self, x: &PsgElement, y: &PsgElement) -> bool {
        self.value_sets[self.code(x)].get(self.code(y))
    }

    /// The value set `V(x)` as a sorted element list.
    #[must_use]
    pub fn value_set(&self, x: &PsgElement) -> Vec<PsgElement> {
        self.value_sets[self.code(x)].ones().map(|c| self.element(c)).collect()
    }

    /// The derived binary isometry `<a, b> = <c, d>`.
    #[must_use]
    pub fn isometry2(&self, a: &PsgElement, b: &PsgElement, c: &PsgElement, d: &PsgElement) -> bool {
        let ab = self.code(a) ^ self.code(b);
        let cd = self.code(c) ^ self.code(d);
        ab == cd && self.value_sets[ab].get(self.code(a) ^ self.code(c))
    }

    /// Pythagorean / almost-reduced: `<a, a> = <1, 1>` only for `a = 1`,
    /// which for the derived relation reads `V(1) = {1}`.
    #[must_use]
    pub fn is_pythagorean(&self) -> bool {
        self.value_sets[0].count_ones() == 1
    }

    /// Formally real on the PSG side: at least one ordering.
    #[must_use]
    pub fn is_formally_real(&self) -> bool {
        !self.orderings().is_empty()
    }

    // ------------------------------------------------------------------
    // Validation
    // ------------------------------------------------------------------

    /// Checks the pre-special-group axioms on the derived relation and
    /// returns every violation with a witness. Empty report = valid PSG.
    ///
    /// SG3 (discriminant preservation) and SG5 (translation invariance)
    /// hold by construction of the derived relation; they are re-checked by
    /// exhaustion for `n <= 4` anyway so that the report never depends on
    /// that argument being right.
    #[must_use]
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let order = self.order();
        let one = 0usize;

        for x in 0..order {
            let v = &self.value_sets[x];
            if !v.get(one) {
                violations.push(Violation::OneNotInValueSet { x: self.element(x) });
            }
            if !v.get(x) {
                violations.push(Violation::ElementNotInOwnValueSet { x: self.element(x) });
            }
            for y in v.ones() {
                if !v.get(x ^ y) {
                    violations.push(Violation::ValueSetNotTranslationClosed {
                        x: self.element(x),
                        y: self.element(y),
                    });
                }
            }
        }

        // SG2 in derived form: V(-1) = G.
        if self.value_sets[self.minus_one].count_ones() != order {
            let missing = (0..order)
                .find(|&y| !self.value_sets[self.minus_one].get(y))
                .unwrap();
            violations.push(Violation::MinusOneValueSetNotFull {
                missing: self.element(missing),
            });
        }

        // SG0 transitivity: within a discriminant class u, <a,au> ~ <c,cu>
        // iff ac in V(u), so the relation is transitive iff each V(u) is
        // closed under products.
        for u in 0..order {
            let v = &self.value_sets[u];
            for y in v.ones() {
                for z in v.ones() {
                    if z > y {
                        break;
                    }
                    if !v.get(y ^ z) {
                        violations.push(Violation::ValueSetNotSubgroup {
                            u: self.element(u),
                            y: self.element(y),
                            z: self.element(z),
                        });
                    }
                }
            }
        }

        // SG4: w in V(u) implies -u in V(-w).
        for u in 0..order {
            for w in self.value_sets[u].ones() {
                let minus_u = u ^ self.minus_one;
                let minus_w = w ^ self.minus_one;
                if !self.value_sets[minus_w].get(minus_u) {
                    violations.push(Violation::Sg4Fails {
                        u: self.element(u),
                        w: self.element(w),
                    });
                }
            }
        }

        // SG3 + SG5 by exhaustion at small n.
        if self.n <= 4 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        let d = a ^ b ^ c;
                        let ea = self.element(a);
                        let eb = self.element(b);
                        let ec = self.element(c);
                        let ed = self.element(d);
                        if !self.isometry2(&ea, &eb, &ec, &ed) {
                            continue;
                        }
                        for g in 0..order {
                            let t = |x: usize| self.element(x ^ g);
                            if !self.isometry2(&t(a), &t(b), &t(c), &t(d)) {
                                violations.push(Violation::Sg5Fails {
                                    a: ea.clone(),
                                    b: eb.clone(),
                                    c: ec.clone(),
                                    g: self.element(g),
                                });
                            }
                        }
                    }
                }
            }
        }

        ValidationReport { violations }
    }

    #[must_use]
    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Three-dimensional isometry by the inductive definition, searching the
    /// middle entry.
    #[must_use]
    pub fn isometry3(&self, a: [&PsgElement; 3], b: [&PsgElement; 3]) -> bool {
        let ac: Vec<usize> = a.iter().map(|e| self.code(e)).collect();
        let bc: Vec<usize> = b.iter().map(|e| self.code(e)).collect();
        if ac[0] ^ ac[1] ^ ac[2] != bc[0] ^ bc[1] ^ bc[2] {
            return false;
        }
        // <a0, x> = <b0, y>, <a1, a2> = <x, z>, <b1, b2> = <y, z>.
        for x in 0..self.order() {
            let y = ac[0] ^ bc[0] ^ x;
            let in2 = |u: usize, first: usize, cand: usize| self.value_sets[u].get(first ^ cand);
            if in2(ac[1] ^ ac[2], ac[1], x)
                && in2(bc[1] ^ bc[2], bc[1], y)
                && in2(ac[0] ^ x, ac[0], bc[0])
            {
                return true;
            }
        }
        false
    }

    /// SG6, the special-group axiom: transitivity of 3-isometry, checked by
    /// exhaustion. Guarded at `n <= 4`.
    pub fn validate_special(&self) -> Result<ValidationReport> {
        if self.n > 4 {
            return Err(Error::Guardrail {
                what: "basis size for the 3-transitivity check",
                limit: 4,
                actual: self.n as u64,
            });
        }
        let mut violations = Vec::new();
        let order = self.order();
        let forms: Vec<[usize; 3]> = (0..order)
            .flat_map(|i| (0..order).flat_map(move |j| (0..order).map(move |k| [i, j, k])))
            .collect();
        let elem = |f: &[usize; 3]| [self.element(f[0]), self.element(f[1]), self.element(f[2])];
        let related: Vec<Vec<usize>> = forms
            .iter()
            .map(|f| {
                let ef = elem(f);
                forms
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| {
                        let eg = elem(g);
                        self.isometry3([&ef[0], &ef[1], &ef[2]], [&eg[0], &eg[1], &eg[2]])
                    })
                    .map(|(idx, _)| idx)
                    .collect()
            })
            .collect();
        'outer: for (t, row) in related.iter().enumerate() {
            for &u in row {
                for &v in &related[u] {
                    if !related[t].contains(&v) {
                        violations.push(Violation::Sg6Fails {
                            t: elem(&forms[t]).to_vec(),
                            u: elem(&forms[u]).to_vec(),
                            v: elem(&forms[v]).to_vec(),
                        });
                        break 'outer;
                    }
                }
            }
        }
        Ok(ValidationReport { violations })
    }

    // ------------------------------------------------------------------
    // Orderings and saturated subgroups
    // ------------------------------------------------------------------

    /// All orderings: characters `chi` with `chi(-1) = 1` whose kernel is
    /// saturated. Lexicographic by coefficient bitstring.
    #[must_use]
    pub fn orderings(&self) -> Vec<Character> {
        let order = self.order();
        let mut out: Vec<Character> = (0..order)
            .filter_map(|mask| {
                if (mask & self.minus_one).count_ones() & 1 != 1 {
                    return None;
                }
                // Kernel saturated: chi(a) = 0 and x in V(a) imply chi(x) = 0.
                let chi = |x: usize| (mask & x).count_ones() & 1 == 1;
                for a in 0..order {
                    if chi(a) {
                        continue;
                    }
                    for x in self.value_sets[a].ones() {
                        if chi(x) {
                            return None;
                        }
                    }
                }
                Some(Character::new(BitVec::from_mask(self.n, mask as u64)))
            })
            .collect();
        out.sort();
        out
    }

    /// All saturated subgroups (`a in S` implies `V(a)` contained in `S`),
    /// as subspaces of the coordinate space. Exhaustive over the subgroup
    /// lattice, guarded at `n <= 6`.
    pub fn saturated_subgroups(&self) -> Result<Vec<Gf2Subspace>> {
        if self.n > 6 {
            return Err(Error::Guardrail {
                what: "basis size for saturated-subgroup enumeration",
                limit: 6,
                actual: self.n as u64,
            });
        }
        let mut out = Vec::new();
        for sub in Gf2Subspace::enumerate_all(self.n) {
            let mut members = BitVec::zeros(self.order());
            for v in sub.enumerate() {
                members.set(v.to_mask() as usize, true);
            }
            let saturated = members.ones().all(|a| {
                self.value_sets[a].ones().all(|x| members.get(x))
            });
            if saturated {
                out.push(sub);
            }
        }
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Constructions
    // ------------------------------------------------------------------

    /// Direct product with coordinatewise value sets,
    /// `V((x, y)) = V(x) x V(y)`; `-1 = (-1, -1)`.
    ///
    /// # Panics
    /// Panics if the combined basis size exceeds [`MAX_BASIS`].
    #[must_use]
    pub fn product(&self, other: &Psg) -> Psg {
        let n = self.n + other.n;
        assert!(n <= MAX_BASIS, "product basis size {n} exceeds {MAX_BASIS}");
        let order = 1usize << n;
        let mut value_sets = Vec::with_capacity(order);
        for z in 0..order {
            let (x, y) = (z & ((1 << self.n) - 1), z >> self.n);
            let mut set = BitVec::zeros(order);
            for cx in self.value_sets[x].ones() {
                for cy in other.value_sets[y].ones() {
                    set.set(cx | (cy << self.n), true);
                }
            }
            value_sets.push(set);
        }
        Psg::from_codes(
            format!("PRODUCT({},{})", self.name, other.name),
            n,
            self.minus_one | (other.minus_one << self.n),
            value_sets,
        )
    }

    /// The same abstract group presented over a new basis. `basis` rows are
    /// the new basis vectors in the current coordinates; coordinates of an
    /// element transform by the inverse matrix.
    pub fn change_basis(&self, basis: &Gf2Matrix) -> Result<Psg> {
        if basis.n_rows() != self.n || basis.n_cols() != self.n {
            return Err(Error::Precondition(format!(
                "basis matrix must be {0}x{0}",
                self.n
            )));
        }
        let inv = basis.inverse()?;
        let recode = |x: usize| -> usize {
            inv.vec_mul(&BitVec::from_mask(self.n, x as u64)).to_mask() as usize
        };
        let order = self.order();
        let mut value_sets = vec![BitVec::zeros(order); order];
        for x in 0..order {
            let nx = recode(x);
            for y in self.value_sets[x].ones() {
                value_sets[nx].set(recode(y), true);
            }
        }
        Ok(Psg::from_codes(
            self.name.clone(),
            self.n,
            recode(self.minus_one),
            value_sets,
        ))
    }
}

impl fmt::Debug for Psg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Psg({}, n={}, -1={})", self.name, self.n, self.minus_one().to_bitstring())
    }
}

// ============================================================================
// Validation report
// ============================================================================

/// One violated condition with its witness elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `1 not in V(x)` (reflexivity of the derived relation fails at `x`).
    OneNotInValueSet { x: PsgElement },
    /// `x not in V(x)` (SG1 fails: `<a,b> = <b,a>` needs `ab in V(ab)`).
    ElementNotInOwnValueSet { x: PsgElement },
    /// `y in V(x)` but `xy not in V(x)`.
    ValueSetNotTranslationClosed { x: PsgElement, y: PsgElement },
    /// `V(-1) != G` (SG2 fails: `<a,-a> = <1,-1>` forces `V(-1) = G`).
    MinusOneValueSetNotFull { missing: PsgElement },
    /// `y, z in V(u)` but `yz not in V(u)` (SG0 transitivity fails).
    ValueSetNotSubgroup { u: PsgElement, y: PsgElement, z: PsgElement },
    /// `w in V(u)` but `-u not in V(-w)` (SG4 fails).
    Sg4Fails { u: PsgElement, w: PsgElement },
    /// Translation invariance fails (SG5); cannot occur for the derived
    /// relation, kept for the exhaustive re-check.
    Sg5Fails { a: PsgElement, b: PsgElement, c: PsgElement, g: PsgElement },
    /// 3-transitivity fails (SG6, special groups only).
    Sg6Fails { t: Vec<PsgElement>, u: Vec<PsgElement>, v: Vec<PsgElement> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OneNotInValueSet { x } => {
                write!(f, "1 is missing from V({})", x.to_bitstring())
            }
            Violation::ElementNotInOwnValueSet { x } => {
                write!(f, "{} is missing from its own value set (SG1)", x.to_bitstring())
            }
            Violation::ValueSetNotTranslationClosed { x, y } => write!(
                f,
                "V({x}) contains {y} but not their product",
                x = x.to_bitstring(),
                y = y.to_bitstring()
            ),
            Violation::MinusOneValueSetNotFull { missing } => write!(
                f,
                "V(-1) is not the whole group: {} is missing (SG2)",
                missing.to_bitstring()
            ),
            Violation::ValueSetNotSubgroup { u, y, z } => write!(
                f,
                "V({u}) is not closed: {y} * {z} escapes (SG0 transitivity)",
                u = u.to_bitstring(),
                y = y.to_bitstring(),
                z = z.to_bitstring()
            ),
            Violation::Sg4Fails { u, w } => write!(
                f,
                "SG4 fails at u={}, w={}",
                u.to_bitstring(),
                w.to_bitstring()
            ),
            Violation::Sg5Fails { a, b, c, g } => write!(
                f,
                "SG5 fails at a={}, b={}, c={}, g={}",
                a.to_bitstring(),
                b.to_bitstring(),
                c.to_bitstring(),
                g.to_bitstring()
            ),
            Violation::Sg6Fails { .. } => write!(f, "3-isometry is not transitive (SG6)"),
        }
    }
}

/// Outcome of axiom validation; empty = valid.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    #[must_use]
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

// ============================================================================
// Morphisms
// ============================================================================

/// A linear map between PSGs that preserves representation:
/// `b in V(a)` implies `f(b) in V(f(a))`. The matrix has `target` rows and
/// `source` columns; `apply` is `x -> matrix . x`.
#[derive(Clone, Debug)]
pub struct PsgMorphism {
    source: Psg,
    target: Psg,
    matrix: Gf2Matrix,
    preserves_minus_one: bool,
}

impl PsgMorphism {
    /// Builds and verifies a morphism. Errors with a witness if some value
    /// relation is not preserved.
    pub fn new(source: Psg, target: Psg, matrix: Gf2Matrix) -> Result<Self> {
        if matrix.n_rows() != target.basis_size() || matrix.n_cols() != source.basis_size() {
            return Err(Error::Precondition(format!(
                "morphism matrix must be {}x{}",
                target.basis_size(),
                source.basis_size()
            )));
        }
        let apply = |x: &PsgElement| PsgElement::new(matrix.mul_vec(x.coords()));
        for a in source.elements() {
            let fa = apply(&a);
            for b in source.value_set(&a) {
                let fb = apply(&b);
                if !target.in_value_set(&fa, &fb) {
                    return Err(Error::Precondition(format!(
                        "not representation-preserving: {} in V({}) but image escapes",
                        b.to_bitstring(),
                        a.to_bitstring()
                    )));
                }
            }
        }
        let preserves_minus_one = apply(&source.minus_one()) == target.minus_one();
        Ok(Self {
            source,
            target,
            matrix,
            preserves_minus_one,
        })
    }

    /// The identity morphism of `p`.
    pub fn identity(p: &Psg) -> Self {
        Self::new(p.clone(), p.clone(), Gf2Matrix::identity(p.basis_size()))
            .expect("identity is a morphism")
    }

    #[must_use]
    pub fn source(&self) -> &Psg {
        &self.source
    }

    #[must_use]
    pub fn target(&self) -> &Psg {
        &self.target
    }

    #[must_use]
    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    #[must_use]
    pub const fn preserves_minus_one(&self) -> bool {
        self.preserves_minus_one
    }

    #[must_use]
    pub fn apply(&self, x: &PsgElement) -> PsgElement {
        PsgElement::new(self.matrix.mul_vec(x.coords()))
    }

    #[must_use]
    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.basis_size()
    }

    /// `other . self` (apply `self` first).
    pub fn then(&self, other: &PsgMorphism) -> Result<PsgMorphism> {
        if other.source.basis_size() != self.target.basis_size() {
            return Err(Error::Precondition("morphisms do not compose".into()));
        }
        PsgMorphism::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }
}

// ============================================================================
// Catalog
// ============================================================================

/// Names resolvable by [`catalog`] (FAN takes `FAN(k)`, products nest).
pub const CATALOG_BASE_NAMES: [&str; 5] = ["TRIVIAL_SG", "Z2_REAL", "F3LIKE", "FAN2", "FAN(n)"];

fn fan(n: usize) -> Psg {
    // Basis (-1, a_2, ..., a_n): V(1) = {1}, V(-1) = G, V(x) = {1, x} else.
    let order = 1usize << n;
    let minus_one = 1usize;
    let value_sets = (0..order)
        .map(|x| {
            let mut set = BitVec::zeros(order);
            if x == 0 {
                set.set(0, true);
            } else if x == minus_one {
                for y in 0..order {
                    set.set(y, true);
                }
            } else {
                set.set(0, true);
                set.set(x, true);
            }
            set
        })
        .collect();
    Psg::from_codes(
        if n == 2 { "FAN2".into() } else { format!("FAN({n})") },
        n,
        minus_one,
        value_sets,
    )
}

/// Looks up a named PSG.
///
/// `TRIVIAL_SG` is the one-element group with `-1 = 1`; `Z2_REAL` models the
/// square-class group of the reals (`V(1) = {1}`); `F3LIKE` models that of a
/// field where `-1` is a sum of squares but not a square (`V(1) = G`); `FAN2`
/// and `FAN(k)` are fans (`V(x) = {1, x}` away from `1` and `-1`);
/// `PRODUCT(A,B)` is the direct product of two catalog entries.
pub fn catalog(name: &str) -> Result<Psg> {
    let name = name.trim();
    match name {
        "TRIVIAL_SG" => {
            let set = {
                let mut s = BitVec::zeros(1);
                s.set(0, true);
                s
            };
            return Ok(Psg::from_codes("TRIVIAL_SG".into(), 0, 0, vec![set]));
        }
        "Z2_REAL" => return Ok(fan_named(1, "Z2_REAL")),
        "F3LIKE" => {
            // n = 1, -1 a sum of squares: V(1) = V(-1) = G.
            let mut g = BitVec::zeros(2);
            g.set(0, true);
            g.set(1, true);
            return Ok(Psg::from_codes("F3LIKE".into(), 1, 1, vec![g.clone(), g]));
        }
        "FAN2" => return Ok(fan(2)),
        _ => {}
    }
    if let Some(inner) = name.strip_prefix("FAN(").and_then(|s| s.strip_suffix(')')) {
        let k: usize = inner
            .trim()
            .parse()
            .map_err(|_| Error::UnknownCatalog(name.to_string()))?;
        if k == 0 || k > MAX_BASIS {
            return Err(Error::Guardrail {
                what: "FAN basis size",
                limit: MAX_BASIS as u64,
                actual: k as u64,
            });
        }
        return Ok(fan(k));
    }
    if let Some(inner) = name.strip_prefix("PRODUCT(").and_then(|s| s.strip_suffix(')')) {
        // Split at the top-level comma.
        let mut depth = 0usize;
        let mut split = None;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    split = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let split = split.ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
        let left = catalog(&inner[..split])?;
        let right = catalog(&inner[split + 1..])?;
        if left.basis_size() + right.basis_size() > MAX_BASIS {
            return Err(Error::Guardrail {
                what: "product basis size",
                limit: MAX_BASIS as u64,
                actual: (left.basis_size() + right.basis_size()) as u64,
            });
        }
        return Ok(left.product(&right));
    }
    Err(Error::UnknownCatalog(name.to_string()))
}

fn fan_named(n: usize, name: &str) -> Psg {
    let mut p = fan(n);
    p.name = name.into();
    p
}
