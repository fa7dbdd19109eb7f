mod common;

use std::collections::BTreeSet;

use iwalog::growth::{
    class_rank, coinvariant_rank, enumerate_classes, free_rank_fit, ModulePresentation, StructuredFactor,
    TorsionFactor,
};
use iwalog::iwasawa::{IwasawaPoly, Var};
use iwalog::padic::ResidueRing;
use proptest::prelude::*;

use common::{class_orbits, coinvariant_rank_snf, order_exponent, seeded_poly, IntPoly};

fn untagged(f: &IntPoly) -> ModulePresentation {
    let ring = ResidueRing::shared(3, 40).unwrap();
    let terms: Vec<(usize, usize, i64)> = f.iter().map(|(&(i, j), &c)| (i, j, c)).collect();
    let poly = IwasawaPoly::from_x_i64(ring.clone(), &terms);
    ModulePresentation::new(ring, 0, vec![TorsionFactor::Untagged(poly)]).unwrap()
}

#[test]
fn class_enumeration_matches_orbit_union() {
    for p in [3u32, 5] {
        for n in 0..=2 {
            let orbits = class_orbits(p, n);
            let classes = enumerate_classes(p, n, false).unwrap();
            assert_eq!(classes.len(), orbits.len(), "p={p} n={n}");
            let m = (p as u64).pow(n);
            let mut hit = BTreeSet::new();
            for c in &classes {
                // representative exponents at level n
                let (a, b) = c.rep.exponents_at(n);
                let orbit = orbits
                    .iter()
                    .position(|o| o.contains(&(a % m.max(1), b % m.max(1))))
                    .expect("representative in some orbit");
                assert!(hit.insert(orbit), "two representatives in one orbit");
                assert_eq!(c.size as usize, orbits[orbit].len());
                assert_eq!(class_rank(&c.rep), c.size);
            }
        }
    }
}

#[test]
fn new_classes_have_exact_level() {
    for n in 1..=3 {
        for c in enumerate_classes(3, n, true).unwrap() {
            assert_eq!(c.rep.r.max(c.rep.s), n);
        }
    }
    let orbits = class_orbits(3, 2);
    let new_by_orbit = orbits
        .iter()
        .filter(|o| {
            let (a, b) = o[0];
            order_exponent(a, 3, 2).max(order_exponent(b, 3, 2)) == 2
        })
        .count();
    assert_eq!(enumerate_classes(3, 2, true).unwrap().len(), new_by_orbit);
}

#[test]
fn coinvariant_rank_matches_smith_form_on_seeded_polys() {
    for seed in 0..10u64 {
        let f = seeded_poly(seed);
        let m = untagged(&f);
        for n in 0..=2 {
            let ours = coinvariant_rank(&m, n, 30).unwrap();
            let oracle = coinvariant_rank_snf(&f, 3, n);
            assert_eq!(ours.rank as usize, oracle, "seed={seed} n={n} f={f:?}");
            assert!(!ours.upper_bound_only);
        }
    }
}

#[test]
fn tagged_and_untagged_agree() {
    let ring = ResidueRing::shared(3, 40).unwrap();
    let cases = [
        vec![StructuredFactor::Var(Var::X)],
        vec![StructuredFactor::Cyclo(Var::X, 1)],
        vec![StructuredFactor::Omega(Var::Y, 1), StructuredFactor::Var(Var::X)],
        vec![StructuredFactor::Cyclo(Var::Y, 2)],
    ];
    for tags in cases {
        let t = TorsionFactor::Tagged(tags.clone());
        let u = TorsionFactor::Untagged(t.to_poly(&ring).unwrap());
        let mt = ModulePresentation::new(ring.clone(), 0, vec![t]).unwrap();
        let mu = ModulePresentation::new(ring.clone(), 0, vec![u]).unwrap();
        for n in 0..=2 {
            assert_eq!(
                coinvariant_rank(&mt, n, 30).unwrap().rank,
                coinvariant_rank(&mu, n, 30).unwrap().rank,
                "{tags:?} n={n}"
            );
        }
    }
}

#[test]
fn tagged_examples_match_smith_form() {
    let x: IntPoly = [((1, 0), 1)].into();
    assert_eq!(coinvariant_rank_snf(&x, 3, 1), 3);
    let phi3: IntPoly = [((0, 0), 3), ((1, 0), 3), ((2, 0), 1)].into();
    assert_eq!(coinvariant_rank_snf(&phi3, 3, 1), 6);
}

#[test]
fn free_rank_fit_for_mixed_modules() {
    let ring = ResidueRing::shared(3, 40).unwrap();
    for r in 0..=2u32 {
        let m = ModulePresentation::new(
            ring.clone(),
            r,
            vec![
                TorsionFactor::Tagged(vec![StructuredFactor::Var(Var::Y)]),
                TorsionFactor::Tagged(vec![StructuredFactor::Cyclo(Var::X, 2)]),
            ],
        )
        .unwrap();
        let h = free_rank_fit(&m, 4, 30).unwrap();
        assert_eq!(h.fitted_free_rank, r as u128);
        // Y contributes p^n, Phi_9(1+X) contributes phi(9) p^n
        assert_eq!(h.constant, "7");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_sizes_sum_to_group_order(n in 0u32..=3, five in any::<bool>()) {
        let p = if five { 5 } else { 3 };
        let total: u128 = enumerate_classes(p, n, false).unwrap().iter().map(|c| c.size).sum();
        prop_assert_eq!(total, (p as u128).pow(2 * n));
    }

    #[test]
    fn random_polys_match_smith_form_at_level_one(
        coeffs in proptest::collection::vec(-4i64..=4, 6),
        special in 0u8..4,
    ) {
        let mut f = IntPoly::new();
        for ((i, j), c) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)].into_iter().zip(coeffs) {
            if c != 0 {
                let (di, dj) = match special { 0 => (1, 0), 1 => (0, 1), 2 => (1, 1), _ => (0, 0) };
                f.insert((i + di, j + dj), c);
            }
        }
        prop_assume!(!f.is_empty());
        let m = untagged(&f);
        prop_assert_eq!(coinvariant_rank(&m, 1, 30).unwrap().rank as usize, coinvariant_rank_snf(&f, 3, 1));
    }
}
