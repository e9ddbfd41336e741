mod common;

use std::collections::BTreeSet;

use common::{
    dumb_alpha, dumb_end, dumb_orbits, dumb_subgroups, group, random_coset_union, SMALL_GROUPS,
};
use equirank::equivariant::{enumerate_end, DEFAULT_CLOSURE_CAP};
use equirank::verify::{verify, Status};
use equirank::{Analysis, SubgroupLattice};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn subgroup_enumeration_is_complete() {
    for spec in SMALL_GROUPS {
        let g = group(spec);
        let l = SubgroupLattice::new(g.clone()).unwrap();
        let ours: BTreeSet<Vec<usize>> = l
            .subgroups()
            .iter()
            .map(|h| h.elements().to_vec())
            .collect();
        let dumb: BTreeSet<Vec<usize>> = dumb_subgroups(&g).into_iter().collect();
        assert_eq!(ours, dumb, "{spec}");
        assert_eq!(ours.len(), l.len(), "{spec}: duplicates");
    }
}

#[test]
fn regular_representation_rebuilds_the_table() {
    for spec in SMALL_GROUPS {
        let g = group(spec);
        let perms = g.left_regular_permutations();
        let rebuilt =
            equirank::FiniteGroup::from_permutation_generators(g.order(), &perms).unwrap();
        assert_eq!(
            rebuilt.canonical_table().unwrap(),
            g.canonical_table().unwrap(),
            "{spec}"
        );
    }
}

#[test]
fn inverse_of_product() {
    for spec in SMALL_GROUPS {
        let g = group(spec);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.inv(g.mul(a, b)), g.mul(g.inv(b), g.inv(a)));
            }
        }
    }
}

fn group_index() -> impl Strategy<Value = usize> {
    0..SMALL_GROUPS.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_counts_agree(gi in group_index(), parts in 1usize..4, seed in any::<u64>()) {
        let g = group(SMALL_GROUPS[gi]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_coset_union(&g, parts, &mut rng);
        let orbits = dumb_orbits(&x);
        prop_assert_eq!(x.burnside_orbit_count().unwrap(), orbits.len());
        prop_assert_eq!(x.orbits(), orbits);
        let a = Analysis::new(x.clone()).unwrap();
        for b in &a.boxes.boxes {
            let h = a.lattice.subgroup(b.representative).elements().to_vec();
            prop_assert_eq!(b.alpha(), dumb_alpha(&x, &h));
            prop_assert_eq!(a.alpha_moebius(b.representative).unwrap(), b.alpha());
            let normalizer = a.lattice.subgroup(a.lattice.normalizer(b.representative)).order();
            prop_assert_eq!(a.aut_orbits_in_box(b.representative).unwrap(), g.order() / normalizer);
            for o in &b.orbits {
                prop_assert_eq!(o.len() * h.len(), g.order());
            }
        }
        let total: usize = a.boxes.boxes.iter().map(|b| b.points.len()).sum();
        prop_assert_eq!(total, x.size());
    }

    #[test]
    fn enumeration_matches_dumb_oracle(gi in 0usize..5, parts in 1usize..4, seed in any::<u64>()) {
        let g = group(SMALL_GROUPS[gi]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_coset_union(&g, parts, &mut rng);
        prop_assume!(x.size() <= 7);
        let a = Analysis::new(x.clone()).unwrap();
        let ours: BTreeSet<Vec<usize>> = enumerate_end(&a, DEFAULT_CLOSURE_CAP)
            .unwrap()
            .iter()
            .map(|f| f.image().to_vec())
            .collect();
        let dumb: BTreeSet<Vec<usize>> = dumb_end(&x).into_iter().collect();
        prop_assert_eq!(ours, dumb);
    }

    #[test]
    fn full_suite_on_small_coset_unions(gi in group_index(), parts in 1usize..4, seed in any::<u64>()) {
        let g = group(SMALL_GROUPS[gi]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_coset_union(&g, parts, &mut rng);
        prop_assume!(x.size() <= 12);
        let a = Analysis::new(x).unwrap();
        let report = verify(&a, None, 200_000);
        for c in &report.checks {
            prop_assert!(!matches!(c.status, Status::Fail(_)), "{}: {:?}", c.name, c.status);
        }
    }

    #[test]
    fn kernels_grow_under_post_composition(gi in 0usize..5, parts in 1usize..4, seed in any::<u64>(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 2)) {
        let g = group(SMALL_GROUPS[gi]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_coset_union(&g, parts, &mut rng);
        let a = Analysis::new(x.clone()).unwrap();
        let end = enumerate_end(&a, DEFAULT_CLOSURE_CAP).unwrap();
        let sigma = picks[0].get(&end);
        let tau = picks[1].get(&end);
        let st = sigma.compose(tau).unwrap();
        prop_assert!(equirank::equivariant::is_equivariant(&x, st.image()));
        prop_assert!(tau.kernel_pairs().is_subset(&st.kernel_pairs()));
    }
}
