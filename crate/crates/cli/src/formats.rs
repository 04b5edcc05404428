//! File schema for user-defined PSGs and the JSON report shapes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use sg_core::cohomology::{self, RelationPairOutcome};
use sg_core::galois::{self, GalGroup};
use sg_core::gf2::BitVec;
use sg_core::ktheory;
use sg_core::psg::catalog;
use sg_core::{Error, Psg};

/// On-disk PSG document. Bitstring convention: character `i` (0-based,
/// leftmost) is the exponent of basis element `i`; all `2^n` keys mandatory.
#[derive(Debug, Serialize, Deserialize)]
pub struct PsgFile {
    pub name: String,
    pub basis_size: usize,
    pub minus_one: String,
    pub value_sets: BTreeMap<String, Vec<String>>,
}

impl PsgFile {
    pub fn into_psg(self) -> Result<Psg, Error> {
        let minus_one = BitVec::parse_bitstring(&self.minus_one)?;
        let sets = self
            .value_sets
            .iter()
            .map(|(k, members)| {
                let key = BitVec::parse_bitstring(k)?;
                let members = members
                    .iter()
                    .map(|m| BitVec::parse_bitstring(m))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((key, members))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Psg::from_value_sets(&self.name, self.basis_size, &minus_one, &sets)
    }

}

// ============================================================================
// Reports
// ============================================================================

#[derive(Debug, Serialize, Deserialize)]
pub struct ValidationDto {
    pub name: String,
    pub basis_size: usize,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special: Option<bool>,
    pub violations: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InfoDto {
    pub name: String,
    pub basis_size: usize,
    pub group_order: u64,
    pub minus_one: String,
    pub valid: bool,
    pub k_stable: bool,
    pub k2_dim: usize,
    pub pythagorean: bool,
    pub formally_real: bool,
    pub ordering_count: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StandardDto {
    pub standard: bool,
    pub z4_witnesses: Vec<String>,
    pub d4_witnesses: Vec<String>,
    pub failures: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GaloisDto {
    pub name: String,
    pub order: u64,
    pub order_log2: u32,
    pub fingerprint: String,
    pub k2_dim: usize,
    pub maximal_count: u64,
    pub involution_cosets: Vec<String>,
    pub involution_class_counts: Vec<u32>,
    pub orderings: Vec<String>,
    pub formally_real: bool,
    pub pythagorean: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard: Option<StandardDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_change_trials_passed: Option<Vec<bool>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OrderingsDto {
    pub name: String,
    pub psg_orderings: Vec<String>,
    pub galois_orderings: Vec<String>,
    pub agree: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CohomologyDto {
    pub name: String,
    pub h0: u64,
    pub h1_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2_dim: Option<usize>,
    pub relation_pairs: Vec<RelationPairOutcome>,
    pub k2_map_well_defined: bool,
}

pub fn build_info(p: &Psg) -> InfoDto {
    let rm = ktheory::relation_module(p);
    InfoDto {
        name: p.name().to_string(),
        basis_size: p.basis_size(),
        group_order: p.order() as u64,
        minus_one: p.minus_one().to_bitstring(),
        valid: p.is_valid(),
        k_stable: ktheory::k_stable_check(p).is_stable(),
        k2_dim: rm.k2_dim(),
        pythagorean: p.is_pythagorean(),
        formally_real: p.is_formally_real(),
        ordering_count: p.orderings().len(),
    }
}

pub fn build_standard(p: &Psg) -> Result<StandardDto, Error> {
    let report = galois::is_standard(p)?;
    let mut z4 = Vec::new();
    let mut d4 = Vec::new();
    let mut failures = Vec::new();
    for case in &report.cases {
        let label = match &case.b {
            None => case.a.to_bitstring(),
            Some(b) => format!("{},{}", case.a.to_bitstring(), b.to_bitstring()),
        };
        if !case.consistent() {
            failures.push(label);
        } else if case.k2_zero {
            match &case.b {
                None => z4.push(label),
                Some(_) => d4.push(label),
            }
        }
    }
    Ok(StandardDto {
        standard: report.standard,
        z4_witnesses: z4,
        d4_witnesses: d4,
        failures,
    })
}

pub fn build_galois(
    p: &Psg,
    limit_log2: u32,
    standard: bool,
    bases: usize,
    seed: u64,
) -> Result<GaloisDto, Error> {
    let gal = GalGroup::new(p);
    let class_counts = gal.involution_class_counts(limit_log2)?;
    let standard_dto = if standard { Some(build_standard(p)?) } else { None };
    let trials = if bases > 0 {
        use rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Some(
            galois::base_change_invariance(p, bases, &mut rng)?
                .iter()
                .map(|t| t.passed())
                .collect(),
        )
    } else {
        None
    };
    Ok(GaloisDto {
        name: p.name().to_string(),
        order: gal.order()?,
        order_log2: gal.order_log2(),
        fingerprint: gal.fingerprint_string(),
        k2_dim: gal.relations().k2_dim(),
        maximal_count: gal.maximal_subgroup_count(),
        involution_cosets: gal
            .involution_cosets()
            .iter()
            .map(BitVec::to_bitstring)
            .collect(),
        involution_class_counts: class_counts.iter().map(|(_, c)| *c).collect(),
        orderings: gal
            .orderings()?
            .iter()
            .map(|c| c.coeffs().to_bitstring())
            .collect(),
        formally_real: gal.is_formally_real(),
        pythagorean: gal.is_pythagorean(limit_log2)?,
        standard: standard_dto,
        base_change_trials_passed: trials,
    })
}

pub fn build_orderings(p: &Psg) -> Result<OrderingsDto, Error> {
    let gal = GalGroup::new(p);
    let psg_side: Vec<String> = p.orderings().iter().map(|c| c.coeffs().to_bitstring()).collect();
    let gal_side: Vec<String> = gal
        .orderings()?
        .iter()
        .map(|c| c.coeffs().to_bitstring())
        .collect();
    let agree = psg_side == gal_side;
    Ok(OrderingsDto {
        name: p.name().to_string(),
        psg_orderings: psg_side,
        galois_orderings: gal_side,
        agree,
    })
}

pub fn build_cohomology(p: &Psg) -> Result<CohomologyDto, Error> {
    let gal = GalGroup::new(p);
    let milnor = cohomology::milnor_map_experiment(p)?;
    let h2 = if gal.order_log2() <= cohomology::MAX_H2_ORDER_LOG2 {
        Some(cohomology::h2_dim(&gal)?)
    } else {
        None
    };
    Ok(CohomologyDto {
        name: p.name().to_string(),
        h0: cohomology::h0(&gal).order,
        h1_dim: cohomology::h1(&gal).dim,
        h2_dim: h2,
        relation_pairs: milnor.relation_pairs,
        k2_map_well_defined: milnor.k2_map_well_defined,
    })
}

/// Known catalog names, for `catalog-list`.
pub fn catalog_entries() -> Vec<(&'static str, &'static str)> {
    vec![
        ("TRIVIAL_SG", "the one-element group with -1 = 1"),
        ("Z2_REAL", "square classes of the reals: V(1) = {1}"),
        ("F3LIKE", "-1 a sum of squares but not a square: V(1) = G"),
        ("FAN2", "the 4-element fan: V(x) = {1, x} away from 1, -1"),
        ("FAN(k)", "the 2^k-element fan, 1 <= k <= 12"),
        ("PRODUCT(A,B)", "direct product of two catalog entries (nests)"),
    ]
}

/// Resolves `--catalog NAME`, with the guard that unknown names fail
/// cleanly.
pub fn load_catalog(name: &str) -> Result<Psg, Error> {
    catalog(name)
}

/// Whether a user-supplied file name shadows a built-in catalog name.
pub fn shadows_catalog(name: &str) -> bool {
    catalog(name).is_ok()
}
