//! Whole-pipeline runs on presentations that are not catalog-native:
//! products pushed through random basis changes, then validated, measured,
//! and compared against the original on every invariant that must not move.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sg_core::cohomology;
use sg_core::galois::{self, GalGroup};
use sg_core::gf2::Gf2Matrix;
use sg_core::ktheory;
use sg_core::psg::catalog;

#[test]
fn rebased_products_keep_their_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for name in ["PRODUCT(FAN2,F3LIKE)", "PRODUCT(Z2_REAL,FAN2)", "FAN(3)"] {
        let p = catalog(name).unwrap();
        let n = p.basis_size();
        let mp = cohomology::milnor_map_experiment(&p).unwrap();
        let h2_p = cohomology::h2_dim(&GalGroup::new(&p)).ok();
        for _ in 0..2 {
            let basis = Gf2Matrix::random_invertible(n, &mut rng);
            let q = p.change_basis(&basis).unwrap();

            // Still a valid, k-stable PSG.
            assert!(q.validate().is_valid(), "{name}");
            assert!(ktheory::k_stable_check(&q).is_stable(), "{name}");

            // Derived isometry is transported: <a,b> = <c,d> iff the
            // recoded elements satisfy it.
            let inv = basis.inverse().unwrap();
            let recode = |x: &sg_core::PsgElement| {
                sg_core::PsgElement::new(inv.vec_mul(x.coords()))
            };
            for a in p.elements() {
                for b in p.elements() {
                    let c = p.one();
                    let d = a.mul(&b);
                    assert_eq!(
                        p.isometry2(&a, &b, &c, &d),
                        q.isometry2(&recode(&a), &recode(&b), &recode(&c), &recode(&d)),
                        "{name}"
                    );
                }
            }

            // Galois-side invariants are presentation-independent.
            let gal_p = GalGroup::new(&p);
            let gal_q = GalGroup::new(&q);
            assert_eq!(gal_p.order_log2(), gal_q.order_log2(), "{name}");
            assert_eq!(gal_p.fingerprint_string(), gal_q.fingerprint_string(), "{name}");
            assert_eq!(gal_p.is_formally_real(), gal_q.is_formally_real(), "{name}");
            assert_eq!(
                gal_p.is_pythagorean(20).unwrap(),
                gal_q.is_pythagorean(20).unwrap(),
                "{name}"
            );
            assert_eq!(
                gal_p.involution_cosets().len(),
                gal_q.involution_cosets().len(),
                "{name}"
            );
            assert_eq!(gal_q.orderings().unwrap(), q.orderings(), "{name}");
            assert_eq!(
                gal_p.orderings().unwrap().len(),
                gal_q.orderings().unwrap().len(),
                "{name}"
            );

            // Cohomology dimensions only see the abstract group.
            assert_eq!(
                cohomology::h1(&gal_p).dim,
                cohomology::h1(&gal_q).dim,
                "{name}"
            );
            if gal_p.order_log2() <= cohomology::MAX_H2_ORDER_LOG2 {
                assert_eq!(
                    h2_p.expect("within guardrail"),
                    cohomology::h2_dim(&gal_q).unwrap(),
                    "{name}"
                );
            }

            // The k2 -> H^2 experiment verdict is also invariant.
            let mq = cohomology::milnor_map_experiment(&q).unwrap();
            assert_eq!(mp.k2_map_well_defined, mq.k2_map_well_defined, "{name}");
            assert_eq!(mp.relation_pairs.len(), mq.relation_pairs.len(), "{name}");
        }
    }
}

#[test]
fn standardness_survives_rebasing() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    for name in ["FAN2", "PRODUCT(F3LIKE,Z2_REAL)"] {
        let p = catalog(name).unwrap();
        let basis = Gf2Matrix::random_invertible(p.basis_size(), &mut rng);
        let q = p.change_basis(&basis).unwrap();
        let rp = galois::is_standard(&p).unwrap();
        let rq = galois::is_standard(&q).unwrap();
        assert_eq!(rp.standard, rq.standard, "{name}");
        // Same number of vanishing-product cases on both sides.
        let count = |r: &galois::StandardReport| r.cases.iter().filter(|c| c.k2_zero).count();
        assert_eq!(count(&rp), count(&rq), "{name}");
    }
}

#[test]
fn milnor_experiment_over_all_small_catalog_entries() {
    // The degree-2 experiment runs clean over everything small enough,
    // and the verdict stays affirmative on this corpus.
    for name in [
        "TRIVIAL_SG",
        "Z2_REAL",
        "F3LIKE",
        "FAN2",
        "FAN(3)",
        "PRODUCT(FAN2,F3LIKE)",
        "PRODUCT(Z2_REAL,Z2_REAL)",
        "PRODUCT(F3LIKE,F3LIKE)",
    ] {
        let p = catalog(name).unwrap();
        let report = cohomology::milnor_map_experiment(&p).unwrap();
        assert!(report.k2_map_well_defined, "{name}");
    }
}
