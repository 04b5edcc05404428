//! Acceptance suite: one test per criterion, exact checks throughout.
//!
//! Each test prints a `criterion N: PASS` line on success (visible with
//! `cargo test --test acceptance -- --nocapture`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sg_core::cohomology;
use sg_core::galois::{self, GalGroup};
use sg_core::gf2::{BitVec, Gf2Subspace};
use sg_core::ktheory::{k2_product_is_zero, relation_module, P1Vector, P2Vector};
use sg_core::psg::{catalog, Psg};
use sg_core::wgroup::{
    self, finite_quotient, pairing_p1, pairing_phi, w_comm, w_inv, w_mul, w_square,
    SmallGroupClass, SubgroupSpec, WElement,
};

const CATALOG: [&str; 4] = ["TRIVIAL_SG", "Z2_REAL", "F3LIKE", "FAN2"];

fn entries() -> Vec<Psg> {
    CATALOG.iter().map(|n| catalog(n).unwrap()).collect()
}

#[test]
fn criterion_01_w_group_order() {
    let expected = [4u128, 32, 512, 16384];
    for (n, want) in (1..=4).zip(expected) {
        let formula = wgroup::w_order_count(n).unwrap();
        let enumerated = wgroup::enumerate(n).unwrap().len() as u128;
        assert_eq!(formula, want, "formula at n={n}");
        assert_eq!(enumerated, want, "enumeration at n={n}");
    }
    println!("criterion 1 (W-group order, n = 1..4): PASS");
}

#[test]
fn criterion_02_w_group_identities() {
    let n = 3;
    let all = wgroup::enumerate(n).unwrap();
    assert_eq!(all.len(), 512);
    // Generator identities, exhaustive over indices.
    for k in 0..n {
        let x = WElement::x(n, k);
        let t = WElement::t(n, k);
        assert!(w_mul(&t, &t).is_identity(), "t_k^2 = 1");
        assert_eq!(w_mul(&x, &x), t, "x_k^2 = t_k");
        for l in k + 1..n {
            assert_eq!(
                w_comm(&WElement::x(n, k), &WElement::x(n, l)),
                WElement::t_pair(n, k, l),
                "[x_k, x_l] = t_kl"
            );
        }
    }
    // Closed forms for inverse and square, exhaustive over all 512.
    for g in &all {
        assert!(w_mul(g, &w_inv(g)).is_identity());
        assert!(w_mul(&w_inv(g), g).is_identity());
        assert_eq!(w_square(g), w_mul(g, g));
        // The stated closed forms themselves.
        let inv = WElement::new(
            n,
            g.alpha().xor(g.gamma()),
            g.beta().xor(&sg_core::gf2::outer_upper(g.gamma(), g.gamma())),
            g.gamma().clone(),
        );
        assert_eq!(w_inv(g), inv);
        let sq = WElement::new(
            n,
            g.gamma().clone(),
            sg_core::gf2::outer_upper(g.gamma(), g.gamma()),
            BitVec::zeros(n),
        );
        assert_eq!(w_square(g), sq);
    }
    // Pair identities sampled at >= 10^4 pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pick = |rng: &mut ChaCha8Rng| {
        let k: u64 = rng.gen::<u64>() % (1 << wgroup::total_bits(n));
        wgroup::unpack(n, k)
    };
    for _ in 0..10_000 {
        let g = pick(&mut rng);
        let h = pick(&mut rng);
        let z = pick(&mut rng);
        // g^4 = 1 and [g^2, h] = 1 and [[z, w], h] = 1.
        assert!(w_square(&w_square(&g)).is_identity());
        assert!(w_comm(&w_square(&g), &h).is_identity());
        assert!(w_comm(&w_comm(&z, &g), &h).is_identity());
        // Conjugation closed form against the definition.
        let direct = w_mul(&w_mul(&g, &h), &w_inv(&g));
        assert_eq!(wgroup::w_conj(&h, &g), direct);
    }
    println!("criterion 2 (W-group identities at n = 3): PASS");
}

#[test]
fn criterion_03_quotient_identification() {
    for i in 0..2 {
        assert_eq!(
            wgroup::quotient(2, &SubgroupSpec::M(i)).unwrap().class(),
            SmallGroupClass::Z2
        );
        assert_eq!(
            wgroup::quotient(2, &SubgroupSpec::S(i)).unwrap().class(),
            SmallGroupClass::Z4
        );
    }
    assert_eq!(
        wgroup::quotient(2, &SubgroupSpec::D(0, 1)).unwrap().class(),
        SmallGroupClass::D4
    );

    // Explicit D4 relation witnesses r^4 = s^2 = (sr)^2 = 1 in W(2)/D_01.
    let n = 2;
    let spec = SubgroupSpec::D(0, 1);
    let size = 1usize << wgroup::total_bits(n);
    let q = finite_quotient(
        size,
        0,
        &|a, b| wgroup::pack(&w_mul(&wgroup::unpack(n, a as u64), &wgroup::unpack(n, b as u64))) as usize,
        &|a| wgroup::pack(&w_inv(&wgroup::unpack(n, a as u64))) as usize,
        &|k| spec.member(&wgroup::unpack(n, k as u64)).unwrap(),
    )
    .unwrap();
    let table = q.group.unwrap();
    // r: gamma = (1,1) (outside both M_0 and M_1); s: gamma = (1,0) with
    // beta_01 = 1 (in M_1 \ M_0 with the twisting bit set).
    let r_key = wgroup::pack(&w_mul(&WElement::x(n, 0), &WElement::x(n, 1)));
    let s_key = wgroup::pack(&WElement::new(
        n,
        BitVec::zeros(n),
        BitVec::unit(1, 0),
        BitVec::unit(n, 1),
    ));
    let r = q.coset_of[r_key as usize] as usize;
    let s = q.coset_of[s_key as usize] as usize;
    let e = table.identity();
    let r2 = table.mul(r, r);
    assert_ne!(r2, e, "r has order 4");
    assert_eq!(table.mul(r2, r2), e, "r^4 = 1");
    assert_eq!(table.mul(s, s), e, "s^2 = 1");
    let sr = table.mul(s, r);
    assert_eq!(table.mul(sr, sr), e, "(sr)^2 = 1");
    assert_eq!(table.class(), SmallGroupClass::D4);
    println!("criterion 3 (Z2/Z4/D4 quotients of W(2) with witnesses): PASS");
}

#[test]
fn criterion_04_perfect_pairings() {
    for n in 1..=3 {
        // Phi(B) -> Hom(P2, F2) is a bijection: distinct Phi elements give
        // distinct functionals on the monomials, and cardinalities match.
        let phi_bits = n + sg_core::gf2::pair_count(n);
        let monomials: Vec<P2Vector> = (0..n)
            .map(|i| P2Vector::monomial_square(n, i))
            .chain(sg_core::gf2::pairs(n).map(|(i, j)| P2Vector::monomial_mixed(n, i, j)))
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0u64..(1 << phi_bits) {
            let g = WElement::new(
                n,
                BitVec::from_mask(n, mask),
                BitVec::from_mask(phi_bits - n, mask >> n),
                BitVec::zeros(n),
            );
            let fingerprint: Vec<bool> = monomials
                .iter()
                .map(|q| pairing_phi(&g, q).unwrap())
                .collect();
            assert!(seen.insert(fingerprint), "pairing degenerate at n={n}");
        }
        assert_eq!(seen.len(), 1 << phi_bits, "Phi pairing bijective at n={n}");

        // W/Phi -> Hom(P1, F2): the functional depends only on the coset
        // and the assignment is bijective.
        let lin: Vec<P1Vector> = (0..n).map(|i| P1Vector::new(BitVec::unit(n, i))).collect();
        let mut cosets = std::collections::BTreeSet::new();
        for g in wgroup::enumerate(n).unwrap() {
            let fingerprint: Vec<bool> = lin.iter().map(|q| pairing_p1(&g, q)).collect();
            let expect: Vec<bool> = (0..n).map(|i| g.gamma().get(i)).collect();
            assert_eq!(fingerprint, expect, "P1 pairing reads gamma");
            cosets.insert(fingerprint);
        }
        assert_eq!(cosets.len(), 1 << n, "W/Phi pairing bijective at n={n}");
    }
    println!("criterion 4 (perfect pairings, n <= 3): PASS");
}

#[test]
fn criterion_05_catalog_galois_groups() {
    let expected = [
        ("TRIVIAL_SG", SmallGroupClass::Trivial),
        ("Z2_REAL", SmallGroupClass::Z2),
        ("F3LIKE", SmallGroupClass::Z4),
        ("FAN2", SmallGroupClass::D4),
    ];
    for (name, class) in expected {
        let p = catalog(name).unwrap();
        let gal = GalGroup::new(&p);
        // Symbolic construction.
        assert_eq!(gal.fingerprint(), class, "{name}: symbolic");
        // Coset-table oracle from the full W(n) enumeration.
        let n = p.basis_size();
        let size = 1usize << wgroup::total_bits(n);
        let q = finite_quotient(
            size,
            0,
            &|a, b| {
                wgroup::pack(&w_mul(&wgroup::unpack(n, a as u64), &wgroup::unpack(n, b as u64)))
                    as usize
            },
            &|a| wgroup::pack(&w_inv(&wgroup::unpack(n, a as u64))) as usize,
            &|k| {
                let w = wgroup::unpack(n, k as u64);
                w.gamma().is_zero() && gal.v().contains(&w.phi_coords())
            },
        )
        .unwrap();
        assert_eq!(q.n_cosets, 1 << gal.order_log2(), "{name}: order");
        assert_eq!(q.group.unwrap().class(), class, "{name}: oracle class");
    }
    println!("criterion 5 (catalog Galois groups, both routes): PASS");
}

#[test]
fn criterion_06_base_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for p in entries() {
        if p.basis_size() == 0 {
            continue; // no nontrivial bases
        }
        let trials = galois::base_change_invariance(&p, 3, &mut rng).unwrap();
        assert_eq!(trials.len(), 3);
        for (k, t) in trials.iter().enumerate() {
            assert!(t.order_matches, "{}: order, trial {k}", p.name());
            assert!(t.fingerprint_matches, "{}: fingerprint, trial {k}", p.name());
            assert!(t.mu_is_isomorphism, "{}: mu iso, trial {k}", p.name());
            assert!(t.cocycle_holds, "{}: cocycle, trial {k}", p.name());
        }
    }
    println!("criterion 6 (base independence + mu cocycle): PASS");
}

#[test]
fn criterion_07_orderings_correspondence() {
    let mut checked = 0;
    for a in CATALOG {
        let p = catalog(a).unwrap();
        assert_eq!(
            GalGroup::new(&p).orderings().unwrap(),
            p.orderings(),
            "{a}"
        );
        checked += 1;
        for b in CATALOG {
            let prod = catalog(a).unwrap().product(&catalog(b).unwrap());
            assert_eq!(
                GalGroup::new(&prod).orderings().unwrap(),
                prod.orderings(),
                "{a} x {b}"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 20);
    println!("criterion 7 (orderings via Galois = orderings via value sets): PASS");
}

#[test]
fn criterion_08_reality_criteria() {
    let expected = [
        ("Z2_REAL", true, true),
        ("F3LIKE", false, false),
        ("FAN2", true, true),
        ("TRIVIAL_SG", false, true),
    ];
    for (name, real, pyth) in expected {
        let p = catalog(name).unwrap();
        let gal = GalGroup::new(&p);
        assert_eq!(gal.is_formally_real(), real, "{name}: galois-side real");
        assert_eq!(p.is_formally_real(), real, "{name}: psg-side real");
        assert_eq!(gal.is_pythagorean(20).unwrap(), pyth, "{name}: galois-side pyth");
        assert_eq!(p.is_pythagorean(), pyth, "{name}: psg-side pyth");
    }
    println!("criterion 8 (formally-real and Pythagorean criteria): PASS");
}

#[test]
fn criterion_09_standardness() {
    for p in entries() {
        let report = galois::is_standard(&p).unwrap();
        assert!(report.standard, "{}", p.name());
        let rm = relation_module(&p);
        // Explicit witnesses for every vanishing k2 product.
        for ca in 1..p.order() {
            let a = p.element(ca);
            if k2_product_is_zero(&p, &rm, &a, &a) {
                let w = galois::z4_subgroup_for(&p, &a).unwrap();
                assert!(w.all_passed(), "{}: Z4 witness for {:?}", p.name(), a);
            }
            for cb in ca + 1..p.order() {
                let b = p.element(cb);
                if k2_product_is_zero(&p, &rm, &a, &b) {
                    let w = galois::d4_subgroup_for(&p, &a, &b).unwrap();
                    assert!(w.all_passed(), "{}: D4 witness for {:?},{:?}", p.name(), a, b);
                }
            }
        }
    }
    println!("criterion 9 (standardness with explicit witnesses): PASS");
}

#[test]
fn criterion_10_lattice_anti_isomorphism() {
    // All subgroups for the catalog entries (n <= 2).
    for p in entries() {
        for sub in Gf2Subspace::enumerate_all(p.basis_size()) {
            assert_eq!(
                sub.orthogonal_complement().orthogonal_complement(),
                sub,
                "{}",
                p.name()
            );
        }
    }
    // Product cases at n <= 4: 100 sampled subgroups each.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (a, b) in [("FAN2", "FAN2"), ("FAN2", "F3LIKE"), ("Z2_REAL", "F3LIKE")] {
        let p = catalog(a).unwrap().product(&catalog(b).unwrap());
        let n = p.basis_size();
        assert!(n <= 4);
        for _ in 0..100 {
            let k = rng.gen_range(0..=n);
            let vs: Vec<BitVec> = (0..k)
                .map(|_| BitVec::from_mask(n, rng.gen::<u64>() & ((1 << n) - 1)))
                .collect();
            let sub = Gf2Subspace::span(n, &vs);
            assert_eq!(sub.orthogonal_complement().orthogonal_complement(), sub);
        }
    }
    println!("criterion 10 (lattice anti-isomorphism, perp-perp identity): PASS");
}

#[test]
fn criterion_11_cohomology() {
    for p in entries() {
        let gal = GalGroup::new(&p);
        assert_eq!(cohomology::h0(&gal).order, 2, "{}", p.name());
        let h1 = cohomology::h1(&gal);
        assert_eq!(h1.dim, p.basis_size(), "{}", p.name());
        // Pointed: -1 maps to chi_{-1}, whose kernel is M_{-1}.
        assert_eq!(h1.distinguished.coeffs(), p.minus_one().coords());
        if !p.minus_one().is_one() {
            let m = gal.maximal_subgroup(&p.minus_one()).unwrap();
            for e in gal.enumerate(12).unwrap() {
                assert_eq!(
                    cohomology::h1_eval(&h1.distinguished, &e),
                    !m.contains(&e),
                    "{}: ker(chi_-1) = M_-1",
                    p.name()
                );
            }
        }
    }
    // H^2 of Z2 and Z4 via the bar complex.
    let z2 = GalGroup::new(&catalog("Z2_REAL").unwrap());
    assert_eq!(z2.fingerprint(), SmallGroupClass::Z2);
    assert_eq!(cohomology::h2_dim(&z2).unwrap(), 1);
    let z4 = GalGroup::new(&catalog("F3LIKE").unwrap());
    assert_eq!(z4.fingerprint(), SmallGroupClass::Z4);
    assert_eq!(cohomology::h2_dim(&z4).unwrap(), 1);
    println!("criterion 11 (H^0, H^1 pointed, H^2 of Z2 and Z4): PASS");
}

#[test]
fn criterion_12_oracle_agreement() {
    for name in [
        "TRIVIAL_SG",
        "Z2_REAL",
        "F3LIKE",
        "FAN2",
        "PRODUCT(FAN2,F3LIKE)",
        "PRODUCT(FAN2,FAN2)",
    ] {
        let p = catalog(name).unwrap();
        let gal = GalGroup::new(&p);
        assert!(gal.order_log2() <= 10, "{name} stays within the oracle bound");
        let elements = gal.enumerate(10).unwrap();

        // Involution cosets: symbolic (two routes) vs enumeration.
        let symbolic = gal.involution_cosets();
        assert_eq!(symbolic, gal.involution_cosets_via_pairs(), "{name}");
        let mut by_enum: Vec<BitVec> = elements
            .iter()
            .filter(|e| gal.is_involution(e) && !e.gamma().is_zero())
            .map(|e| e.gamma().clone())
            .collect();
        by_enum.sort();
        by_enum.dedup();
        assert_eq!(symbolic, by_enum, "{name}: involution cosets");

        // Maximal subgroups: the a -> M_a map is a bijection onto the
        // kernels of the nonzero characters, counted by enumeration.
        let mut kernels = std::collections::BTreeSet::new();
        for ca in 1..p.order() {
            let m = gal.maximal_subgroup(&p.element(ca)).unwrap();
            let kernel: Vec<bool> = elements.iter().map(|e| m.contains(e)).collect();
            // Index 2 exactly.
            assert_eq!(
                kernel.iter().filter(|b| **b).count() * 2,
                elements.len(),
                "{name}: M_a has index 2"
            );
            kernels.insert(kernel);
        }
        assert_eq!(
            kernels.len() as u64,
            gal.maximal_subgroup_count(),
            "{name}: maximal subgroup count"
        );

        // Generated-by-involutions: BFS closure vs the value-set criterion.
        assert_eq!(
            gal.is_pythagorean(10).unwrap(),
            p.is_pythagorean(),
            "{name}: pythagorean routes"
        );
    }
    println!("criterion 12 (symbolic queries agree with enumeration): PASS");
}
