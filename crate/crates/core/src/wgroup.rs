//! Exact arithmetic in the finite C-free group `W(B)` on `n` generators.
//!
//! An element is a coordinate triple `(alpha, beta, gamma)` standing for the
//! normal form `(t_i^alpha_i)(t_ij^beta_ij)(x_i^gamma_i)`, with the group law
//!
//! ```text
//! alpha(gh)_i  = alpha_i(g) + alpha_i(h) + gamma_i(g) gamma_i(h)
//! beta(gh)_ij  = beta_ij(g) + beta_ij(h) + gamma_i(h) gamma_j(g)
//! gamma(gh)_i  = gamma_i(g) + gamma_i(h)
//! ```
//!
//! exponents mod 2. `|W(n)| = 2^((n^2+3n)/2)`. The squares form the Frattini
//! subgroup `Phi = {gamma = 0}`, which is also the center; `W(n)` pairs
//! perfectly with the quadratic polynomial module on the `Phi` side and the
//! linear one on the `W/Phi` side.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf2::{outer_upper, pair_count, pair_index, BitVec};
use crate::ktheory::{P1Vector, P2Vector};

/// Element of `W(n)` as the exponent triple of its normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WElement {
    n: usize,
    alpha: BitVec,
    beta: BitVec,
    gamma: BitVec,
}

impl WElement {
    /// # Panics
    /// Panics if the component lengths are inconsistent with `n`.
    #[must_use]
    pub fn new(n: usize, alpha: BitVec, beta: BitVec, gamma: BitVec) -> Self {
        assert_eq!(alpha.len(), n, "alpha length");
        assert_eq!(beta.len(), pair_count(n), "beta length");
        assert_eq!(gamma.len(), n, "gamma length");
        Self { n, alpha, beta, gamma }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self::new(n, BitVec::zeros(n), BitVec::zeros(pair_count(n)), BitVec::zeros(n))
    }

    /// The generator `t_k = x_k^2`.
    #[must_use]
    pub fn t(n: usize, k: usize) -> Self {
        Self::new(n, BitVec::unit(n, k), BitVec::zeros(pair_count(n)), BitVec::zeros(n))
    }

    /// The generator `t_kl = [x_k, x_l]`, `k < l`.
    #[must_use]
    pub fn t_pair(n: usize, k: usize, l: usize) -> Self {
        Self::new(
            n,
            BitVec::zeros(n),
            BitVec::unit(pair_count(n), pair_index(n, k, l)),
            BitVec::zeros(n),
        )
    }

    /// The generator `x_k`.
    #[must_use]
    pub fn x(n: usize, k: usize) -> Self {
        Self::new(n, BitVec::zeros(n), BitVec::zeros(pair_count(n)), BitVec::unit(n, k))
    }

    #[must_use]
    pub const fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn alpha(&self) -> &BitVec {
        &self.alpha
    }

    #[must_use]
    pub fn beta(&self) -> &BitVec {
        &self.beta
    }

    #[must_use]
    pub fn gamma(&self) -> &BitVec {
        &self.gamma
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero() && self.gamma.is_zero()
    }

    /// `gamma = 0`, i.e. membership in the Frattini subgroup.
    #[must_use]
    pub fn in_phi(&self) -> bool {
        self.gamma.is_zero()
    }

    /// The `(alpha, beta)` block flattened as `alpha` then `beta`; the
    /// coordinates paired with `P2` and reduced against `V` downstream.
    #[must_use]
    pub fn phi_coords(&self) -> BitVec {
        self.alpha.concat(&self.beta)
    }
}

impl fmt::Debug for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "W(a={}, b={}, g={})",
            self.alpha.to_bitstring(),
            self.beta.to_bitstring(),
            self.gamma.to_bitstring()
        )
    }
}

/// Product in `W(n)`.
///
/// # Panics
/// Panics on size mismatch.
#[must_use]
pub fn w_mul(g: &WElement, h: &WElement) -> WElement {
    assert_eq!(g.n, h.n, "w_mul: size mismatch");
    let mut alpha = g.alpha.xor(&h.alpha);
    for i in g.gamma.ones() {
        if h.gamma.get(i) {
            alpha.set(i, !alpha.get(i));
        }
    }
    let mut beta = g.beta.xor(&h.beta);
    beta.xor_assign(&outer_upper(&h.gamma, &g.gamma));
    let gamma = g.gamma.xor(&h.gamma);
    WElement::new(g.n, alpha, beta, gamma)
}

/// Inverse: `(alpha + gamma, beta_ij + gamma_i gamma_j, gamma)`.
#[must_use]
pub fn w_inv(g: &WElement) -> WElement {
    WElement::new(
        g.n,
        g.alpha.xor(&g.gamma),
        g.beta.xor(&outer_upper(&g.gamma, &g.gamma)),
        g.gamma.clone(),
    )
}

/// Square: `(gamma, gamma_i gamma_j, 0)`. Depends only on `gamma`.
#[must_use]
pub fn w_square(g: &WElement) -> WElement {
    WElement::new(
        g.n,
        g.gamma.clone(),
        outer_upper(&g.gamma, &g.gamma),
        BitVec::zeros(g.n),
    )
}

/// Conjugate `h^g = g h g^-1`: only `beta` moves, by the symmetrized outer
/// product of the two `gamma`s.
#[must_use]
pub fn w_conj(h: &WElement, g: &WElement) -> WElement {
    assert_eq!(g.n, h.n, "w_conj: size mismatch");
    let mut beta = h.beta.clone();
    beta.xor_assign(&outer_upper(&g.gamma, &h.gamma));
    beta.xor_assign(&outer_upper(&h.gamma, &g.gamma));
    WElement::new(h.n, h.alpha.clone(), beta, h.gamma.clone())
}

/// Commutator `[g, h] = g h g^-1 h^-1`.
#[must_use]
pub fn w_comm(g: &WElement, h: &WElement) -> WElement {
    assert_eq!(g.n, h.n, "w_comm: size mismatch");
    let mut beta = outer_upper(&g.gamma, &h.gamma);
    beta.xor_assign(&outer_upper(&h.gamma, &g.gamma));
    WElement::new(g.n, BitVec::zeros(g.n), beta, BitVec::zeros(g.n))
}

/// `2^((n^2+3n)/2)` as an exponent. Guarded at `n <= 20`.
pub fn w_order_log2(n: usize) -> Result<u64> {
    if n > 20 {
        return Err(Error::Guardrail {
            what: "basis size for W-order formula",
            limit: 20,
            actual: n as u64,
        });
    }
    Ok(((n * n + 3 * n) / 2) as u64)
}

/// `|W(n)| = 2^((n^2+3n)/2)`; errs when the value leaves `u128`.
pub fn w_order_count(n: usize) -> Result<u128> {
    let e = w_order_log2(n)?;
    if e > 127 {
        return Err(Error::Guardrail {
            what: "log2 of |W(n)| for exact count",
            limit: 127,
            actual: e,
        });
    }
    Ok(1u128 << e)
}

// ============================================================================
// Packed enumeration
// ============================================================================

/// Total coordinate bits of `W(n)`: `alpha`, `beta`, `gamma` concatenated.
#[must_use]
pub const fn total_bits(n: usize) -> usize {
    2 * n + pair_count(n)
}

/// Packs `(alpha | beta | gamma)` into a `u64` key. Requires
/// `total_bits(n) <= 64`.
#[must_use]
pub fn pack(g: &WElement) -> u64 {
    let n = g.n;
    let pc = pair_count(n);
    assert!(total_bits(n) <= 64, "element does not fit in a u64 key");
    g.alpha.to_mask() | (g.beta.to_mask() << n) | (g.gamma.to_mask() << (n + pc))
}

/// Inverse of [`pack`].
#[must_use]
pub fn unpack(n: usize, key: u64) -> WElement {
    let pc = pair_count(n);
    WElement::new(
        n,
        BitVec::from_mask(n, key),
        BitVec::from_mask(pc, key >> n),
        BitVec::from_mask(n, key >> (n + pc)),
    )
}

/// All of `W(n)` in packed order. Guarded at `total_bits(n) <= 20`.
pub fn enumerate(n: usize) -> Result<Vec<WElement>> {
    let bits = total_bits(n);
    if bits > 20 {
        return Err(Error::Guardrail {
            what: "log2 of |W(n)| for enumeration",
            limit: 20,
            actual: bits as u64,
        });
    }
    Ok((0u64..(1u64 << bits)).map(|k| unpack(n, k)).collect())
}

// ============================================================================
// Named subgroups
// ============================================================================

/// One affine-linear condition `coeffs . (alpha|beta|gamma) = rhs` on the
/// packed coordinates of `W(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCondition {
    pub coeffs: BitVec,
    pub rhs: bool,
}

/// The subgroups of `W(n)` the structure theory names, plus affine-linear
/// custom specs. Arbitrary subsets are not representable on purpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    /// `M_i = {gamma_i = 0}`: maximal, quotient `Z2`.
    M(usize),
    /// `S_i = {alpha_i = gamma_i = 0}`: quotient `Z4`.
    S(usize),
    /// `D_ij = {beta_ij = gamma_i = gamma_j = 0}`, `i < j`: quotient `D4`.
    D(usize, usize),
    /// The Frattini subgroup `Phi = {gamma = 0}`.
    Phi,
    Custom(Vec<LinearCondition>),
}

impl SubgroupSpec {
    /// The defining conditions over the packed coordinate layout.
    ///
    /// Errors on out-of-range indices or `D(i, j)` without `i < j`.
    pub fn conditions(&self, n: usize) -> Result<Vec<LinearCondition>> {
        let pc = pair_count(n);
        let tb = total_bits(n);
        let gamma_at = |i: usize| n + pc + i;
        let alpha_at = |i: usize| i;
        let beta_at = |i: usize, j: usize| n + pair_index(n, i, j);
        let check = |i: usize| -> Result<()> {
            if i < n {
                Ok(())
            } else {
                Err(Error::Precondition(format!("index {i} out of range for n={n}")))
            }
        };
        let cond = |bits: &[usize]| {
            let mut c = BitVec::zeros(tb);
            for &b in bits {
                c.set(b, true);
            }
            LinearCondition { coeffs: c, rhs: false }
        };
        match self {
            SubgroupSpec::M(i) => {
                check(*i)?;
                Ok(vec![cond(&[gamma_at(*i)])])
            }
            SubgroupSpec::S(i) => {
                check(*i)?;
                Ok(vec![cond(&[alpha_at(*i)]), cond(&[gamma_at(*i)])])
            }
            SubgroupSpec::D(i, j) => {
                check(*i)?;
                check(*j)?;
                if i >= j {
                    return Err(Error::Precondition(format!("D({i},{j}) requires i < j")));
                }
                Ok(vec![
                    cond(&[beta_at(*i, *j)]),
                    cond(&[gamma_at(*i)]),
                    cond(&[gamma_at(*j)]),
                ])
            }
            SubgroupSpec::Phi => Ok((0..n).map(|i| cond(&[gamma_at(i)])).collect()),
            SubgroupSpec::Custom(cs) => {
                for c in cs {
                    if c.coeffs.len() != tb {
                        return Err(Error::Precondition(format!(
                            "custom condition length {} != {tb}",
                            c.coeffs.len()
                        )));
                    }
                }
                Ok(cs.clone())
            }
        }
    }

    /// Membership of `g` per the defining conditions.
    pub fn member(&self, g: &WElement) -> Result<bool> {
        let coords = g.phi_coords().concat(g.gamma());
        Ok(self
            .conditions(g.n())?
            .iter()
            .all(|c| c.coeffs.dot(&coords) == c.rhs))
    }
}

// ============================================================================
// Small-group identification
// ============================================================================

/// Isomorphism classes the invariant fingerprint can separate. Everything of
/// order <= 8 is covered; order-16 groups report as `Other`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallGroupClass {
    Trivial,
    Z2,
    Z4,
    Z2xZ2,
    Z8,
    Z4xZ2,
    Z2Cubed,
    D4,
    Q8,
    Other,
}

impl fmt::Display for SmallGroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SmallGroupClass::Trivial => "1",
            SmallGroupClass::Z2 => "Z2",
            SmallGroupClass::Z4 => "Z4",
            SmallGroupClass::Z2xZ2 => "Z2xZ2",
            SmallGroupClass::Z8 => "Z8",
            SmallGroupClass::Z4xZ2 => "Z4xZ2",
            SmallGroupClass::Z2Cubed => "Z2^3",
            SmallGroupClass::D4 => "D4",
            SmallGroupClass::Q8 => "Q8",
            SmallGroupClass::Other => "OTHER",
        };
        write!(f, "{s}")
    }
}

/// A group of order <= 16 given by its multiplication table, with the class
/// determined by (order, abelian?, exponent, involution count).
#[derive(Clone, Debug)]
pub struct SmallGroup {
    table: Vec<Vec<u8>>,
    identity: usize,
    class: SmallGroupClass,
}

impl SmallGroup {
    /// Builds from a multiplication table; verifies the table is a group.
    ///
    /// Errors if the table is not closed/associative or lacks an identity or
    /// inverses.
    pub fn from_table(table: Vec<Vec<u8>>) -> Result<Self> {
        let k = table.len();
        if k == 0 || k > 16 {
            return Err(Error::Guardrail {
                what: "small-group order",
                limit: 16,
                actual: k as u64,
            });
        }
        for row in &table {
            if row.len() != k || row.iter().any(|&e| e as usize >= k) {
                return Err(Error::Precondition("malformed multiplication table".into()));
            }
        }
        let mul = |a: usize, b: usize| table[a][b] as usize;
        let identity = (0..k)
            .find(|&e| (0..k).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::Precondition("table has no identity".into()))?;
        for a in 0..k {
            if !(0..k).any(|b| mul(a, b) == identity) {
                return Err(Error::Precondition("table lacks inverses".into()));
            }
            for b in 0..k {
                for c in 0..k {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::Precondition("table is not associative".into()));
                    }
                }
            }
        }
        let mut g = Self {
            table,
            identity,
            class: SmallGroupClass::Other,
        };
        g.class = g.identify();
        Ok(g)
    }

    #[must_use]
    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[must_use]
    pub const fn identity(&self) -> usize {
        self.identity
    }

    #[must_use]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b] as usize
    }

    #[must_use]
    pub const fn class(&self) -> SmallGroupClass {
        self.class
    }

    #[must_use]
    pub fn is_abelian(&self) -> bool {
        let k = self.order();
        (0..k).all(|a| (a..k).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order of the element `a`.
    #[must_use]
    pub fn element_order(&self, a: usize) -> usize {
        let mut acc = a;
        let mut ord = 1;
        while acc != self.identity {
            acc = self.mul(acc, a);
            ord += 1;
        }
        ord
    }

    #[must_use]
    pub fn exponent(&self) -> usize {
        (0..self.order())
            .map(|a| self.element_order(a))
            .fold(1, lcm)
    }

    /// Count of elements of order exactly 2.
    #[must_use]
    pub fn involution_count(&self) -> usize {
        (0..self.order()).filter(|&a| self.element_order(a) == 2).count()
    }

    fn identify(&self) -> SmallGroupClass {
        let order = self.order();
        let abelian = self.is_abelian();
        let exponent = self.exponent();
        let involutions = self.involution_count();
        match (order, abelian, exponent, involutions) {
            (1, _, _, _) => SmallGroupClass::Trivial,
            (2, _, _, _) => SmallGroupClass::Z2,
            (4, _, 4, _) => SmallGroupClass::Z4,
            (4, _, 2, _) => SmallGroupClass::Z2xZ2,
            (8, true, 8, _) => SmallGroupClass::Z8,
            (8, true, 4, _) => SmallGroupClass::Z4xZ2,
            (8, true, 2, _) => SmallGroupClass::Z2Cubed,
            (8, false, _, 5) => SmallGroupClass::D4,
            (8, false, _, 1) => SmallGroupClass::Q8,
            _ => SmallGroupClass::Other,
        }
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

// ============================================================================
// Quotients of an abstract finite group
// ============================================================================

/// Result of a quotient computation: subgroup and coset counts, the coset id
/// of every element, representatives (first element of each coset in index
/// order), and the identified quotient when its order is at most 16.
pub struct Quotient {
    pub subgroup_size: u64,
    pub n_cosets: u64,
    pub coset_of: Vec<u32>,
    pub reps: Vec<usize>,
    pub group: Option<SmallGroup>,
}

/// Quotient of a finite group presented by dense indices `0..size`.
///
/// Verifies that `in_sub` cuts out a subgroup (greedy generator closure) and
/// that it is normal (conjugation of subgroup generators by coset reps), then
/// sweeps left cosets. The subgroup/normality failures are reported as
/// `Error::Precondition`.
pub fn finite_quotient(
    size: usize,
    identity: usize,
    mul: &dyn Fn(usize, usize) -> usize,
    inv: &dyn Fn(usize) -> usize,
    in_sub: &dyn Fn(usize) -> bool,
) -> Result<Quotient> {
    if !in_sub(identity) {
        return Err(Error::Precondition("subgroup does not contain the identity".into()));
    }
    let members: Vec<usize> = (0..size).filter(|&g| in_sub(g)).collect();

    // Greedy generating set: closure must stay inside the member set and
    // eventually cover it, otherwise the set is not a subgroup.
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = vec![false; size];
    closed[identity] = true;
    let mut closure: Vec<usize> = vec![identity];
    for &candidate in &members {
        if closed[candidate] {
            continue;
        }
        gens.push(candidate);
        let mut frontier = closure.clone();
        while let Some(w) = frontier.pop() {
            for &g in &gens {
                for p in [mul(w, g), mul(g, w), inv(w)] {
                    if !in_sub(p) {
                        return Err(Error::Precondition(
                            "set is not closed under the group operation".into(),
                        ));
                    }
                    if !closed[p] {
                        closed[p] = true;
                        closure.push(p);
                        frontier.push(p);
                    }
                }
            }
        }
    }
    debug_assert_eq!(closure.len(), members.len());

    // Left-coset sweep.
    const UNASSIGNED: u32 = u32::MAX;
    let mut coset_of = vec![UNASSIGNED; size];
    let mut reps: Vec<usize> = Vec::new();
    for g in 0..size {
        if coset_of[g] != UNASSIGNED {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(g);
        for &s in &members {
            let e = mul(g, s);
            if coset_of[e] != UNASSIGNED {
                return Err(Error::Precondition("cosets are not disjoint".into()));
            }
            coset_of[e] = id;
        }
    }

    // Normality: conjugating subgroup generators by coset representatives
    // must stay in the subgroup (conjugation by subgroup elements does
    // trivially, and conjugation is multiplicative in the conjugator).
    for &r in &reps {
        for &s in &gens {
            if !in_sub(mul(mul(r, s), inv(r))) {
                return Err(Error::Precondition("subgroup is not normal".into()));
            }
        }
    }

    let n_cosets = reps.len() as u64;
    let group = if reps.len() <= 16 {
        let table: Vec<Vec<u8>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[mul(a, b)] as u8).collect())
            .collect();
        Some(SmallGroup::from_table(table)?)
    } else {
        None
    };
    Ok(Quotient {
        subgroup_size: members.len() as u64,
        n_cosets,
        coset_of,
        reps,
        group,
    })
}

/// Quotient of `W(n)` by the subgroup cut out by `spec`.
///
/// Full enumeration is used, guarded at `|W(n)| <= 2^20`; identification
/// errs if the quotient has more than 16 elements.
pub fn quotient(n: usize, spec: &SubgroupSpec) -> Result<SmallGroup> {
    let bits = total_bits(n);
    if bits > 20 {
        return Err(Error::Guardrail {
            what: "log2 of |W(n)| for quotient computation",
            limit: 20,
            actual: bits as u64,
        });
    }
    let conditions = spec.conditions(n)?;
    let size = 1usize << bits;
    let member = |key: usize| -> bool {
        let g = unpack(n, key as u64);
        let coords = g.phi_coords().concat(g.gamma());
        conditions.iter().all(|c| c.coeffs.dot(&coords) == c.rhs)
    };
    let q = finite_quotient(
        size,
        0,
        &|a, b| pack(&w_mul(&unpack(n, a as u64), &unpack(n, b as u64))) as usize,
        &|a| pack(&w_inv(&unpack(n, a as u64))) as usize,
        &member,
    )?;
    q.group.ok_or(Error::Guardrail {
        what: "quotient order for identification",
        limit: 16,
        actual: q.n_cosets,
    })
}

// ============================================================================
// Pairings with the polynomial modules
// ============================================================================

/// `<g, q> = sum a_i alpha_i + sum b_ij beta_ij` for `g` in `Phi`.
///
/// Errors if `g` is outside the Frattini subgroup.
pub fn pairing_phi(g: &WElement, q: &P2Vector) -> Result<bool> {
    if !g.in_phi() {
        return Err(Error::Precondition(
            "the quadratic pairing is only defined on Phi (gamma = 0)".into(),
        ));
    }
    assert_eq!(g.n(), q.n(), "pairing_phi: size mismatch");
    Ok(g.alpha.dot(q.sq()) ^ g.beta.dot(q.mixed()))
}

/// `<g, q> = sum c_i gamma_i`, the pairing on `W/Phi`.
#[must_use]
pub fn pairing_p1(g: &WElement, q: &P1Vector) -> bool {
    assert_eq!(g.n(), q.n(), "pairing_p1: size mismatch");
    g.gamma.dot(q.coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktheory::P2Vector;
    use proptest::prelude::*;

    fn arb_w(n: usize) -> impl Strategy<Value = WElement> {
        let bits = total_bits(n);
        (0u64..(1u64 << bits)).prop_map(move |k| unpack(n, k))
    }

    #[test]
    fn identity_laws() {
        let g = unpack(3, 0b101_110_011u64);
        let e = WElement::identity(3);
        assert_eq!(w_mul(&g, &e), g);
        assert_eq!(w_mul(&e, &g), g);
    }

    #[test]
    fn x_squared_is_t() {
        for n in 1..=4 {
            for k in 0..n {
                let x = WElement::x(n, k);
                assert_eq!(w_mul(&x, &x), WElement::t(n, k));
                assert_eq!(w_square(&x), WElement::t(n, k));
            }
        }
    }

    #[test]
    fn commutator_of_generators_is_t_pair() {
        let n = 4;
        for k in 0..n {
            for l in k + 1..n {
                let c = w_comm(&WElement::x(n, k), &WElement::x(n, l));
                assert_eq!(c, WElement::t_pair(n, k, l));
            }
        }
    }

    #[test]
    fn square_of_x1x2() {
        // n = 2: (x_1 x_2)^2 has alpha = 11, beta = 1, gamma = 0.
        let g = w_mul(&WElement::x(2, 0), &WElement::x(2, 1));
        let sq = w_square(&g);
        assert_eq!(sq.alpha().to_bitstring(), "11");
        assert_eq!(sq.beta().to_bitstring(), "1");
        assert!(sq.gamma().is_zero());
        assert_eq!(sq, w_mul(&g, &g));
    }

    #[test]
    fn order_counts() {
        assert_eq!(w_order_count(0).unwrap(), 1);
        assert_eq!(w_order_count(1).unwrap(), 4);
        assert_eq!(w_order_count(2).unwrap(), 32);
        assert_eq!(w_order_count(3).unwrap(), 512);
        assert!(w_order_count(21).is_err());
        // Formula vs. enumeration.
        for n in 0..=4 {
            assert_eq!(enumerate(n).unwrap().len() as u128, w_order_count(n).unwrap());
        }
    }

    #[test]
    fn subgroup_membership_basics() {
        let n = 3;
        for k in 0..n {
            assert!(SubgroupSpec::Phi.member(&WElement::t(n, k)).unwrap());
        }
        // x_i not in M_i, x_j in M_i for j != i.
        assert!(!SubgroupSpec::M(0).member(&WElement::x(n, 0)).unwrap());
        assert!(SubgroupSpec::M(0).member(&WElement::x(n, 1)).unwrap());
        assert!(SubgroupSpec::D(2, 1).conditions(n).is_err());
        assert!(SubgroupSpec::M(5).conditions(n).is_err());
    }

    #[test]
    fn quotients_of_w2() {
        assert_eq!(quotient(2, &SubgroupSpec::M(0)).unwrap().class(), SmallGroupClass::Z2);
        assert_eq!(quotient(2, &SubgroupSpec::M(1)).unwrap().class(), SmallGroupClass::Z2);
        assert_eq!(quotient(2, &SubgroupSpec::S(0)).unwrap().class(), SmallGroupClass::Z4);
        assert_eq!(quotient(2, &SubgroupSpec::S(1)).unwrap().class(), SmallGroupClass::Z4);
        assert_eq!(quotient(2, &SubgroupSpec::D(0, 1)).unwrap().class(), SmallGroupClass::D4);
    }

    #[test]
    fn non_subgroup_rejected() {
        // An affine condition with rhs = 1 excludes the identity.
        let tb = total_bits(2);
        let spec = SubgroupSpec::Custom(alloc::vec![LinearCondition {
            coeffs: BitVec::unit(tb, 0),
            rhs: true,
        }]);
        assert!(matches!(quotient(2, &spec), Err(Error::Precondition(_))));
    }

    #[test]
    fn pairing_dual_bases() {
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let q = P2Vector::monomial_square(n, j);
                assert_eq!(pairing_phi(&WElement::t(n, i), &q).unwrap(), i == j);
            }
        }
        let q = P2Vector::monomial_mixed(n, 1, 2);
        assert!(pairing_phi(&WElement::t_pair(n, 1, 2), &q).unwrap());
        assert!(!pairing_phi(&WElement::t_pair(n, 0, 1), &q).unwrap());
        assert!(pairing_phi(&WElement::x(n, 0), &q).is_err());
    }

    proptest! {
        #[test]
        fn group_laws_random(g in arb_w(4), h in arb_w(4), k in arb_w(4)) {
            prop_assert_eq!(w_mul(&w_mul(&g, &h), &k), w_mul(&g, &w_mul(&h, &k)));
            prop_assert!(w_mul(&g, &w_inv(&g)).is_identity());
            prop_assert!(w_mul(&w_inv(&g), &g).is_identity());
        }

        #[test]
        fn c_group_identities(g in arb_w(5), h in arb_w(5), z in arb_w(5), w in arb_w(5)) {
            // g^4 = 1, [g^2, h] = 1, [[z, w], h] = 1.
            let g2 = w_square(&g);
            prop_assert!(w_square(&g2).is_identity());
            prop_assert!(w_comm(&g2, &h).is_identity());
            prop_assert!(w_comm(&w_comm(&z, &w), &h).is_identity());
        }

        #[test]
        fn inverse_and_square_closed_forms(g in arb_w(5)) {
            // The closed forms satisfy their defining equations.
            prop_assert!(w_mul(&g, &w_inv(&g)).is_identity());
            prop_assert_eq!(w_square(&g), w_mul(&g, &g));
        }

        #[test]
        fn conjugation_matches_definition(g in arb_w(4), h in arb_w(4)) {
            let direct = w_mul(&w_mul(&g, &h), &w_inv(&g));
            prop_assert_eq!(w_conj(&h, &g), direct);
            let comm = w_mul(&w_mul(&g, &h), &w_mul(&w_inv(&g), &w_inv(&h)));
            prop_assert_eq!(w_comm(&g, &h), comm);
        }

        #[test]
        fn squares_land_in_phi_and_products_of_squares(
            g1 in arb_w(3), g2 in arb_w(3), g3 in arb_w(3),
        ) {
            let p = w_mul(&w_mul(&w_square(&g1), &w_square(&g2)), &w_square(&g3));
            prop_assert!(p.in_phi());
            prop_assert!(SubgroupSpec::Phi.member(&p).unwrap());
        }

        #[test]
        fn pack_roundtrip(g in arb_w(5)) {
            prop_assert_eq!(unpack(5, pack(&g)), g);
        }
    }
}
