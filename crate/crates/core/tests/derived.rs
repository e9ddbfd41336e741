mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{coset, dumb_end, group};
use equirank::equivariant::{
    closure, enumerate_aut, enumerate_end, point_push, point_swap, EquivariantMap,
    DEFAULT_CLOSURE_CAP,
};
use equirank::notation::build_specs;
use equirank::rank::{
    aut_generators, collapse_type, collapse_type_census, collapse_types_all_witnesses,
    decompose_by_boxes, is_elementary_collapse, recompose, relative_rank,
};
use equirank::shift::ShiftSpace;
use equirank::verify::{verify, Status};
use equirank::wreath::wreath_order_checks;
use equirank::{Analysis, Error, FiniteGroup, GSet};

fn binary_shift(spec: &str) -> (ShiftSpace, Analysis) {
    let (_, x) = build_specs(spec, "shift:q=2").unwrap();
    let s = x.shift().unwrap().clone();
    (s, Analysis::new(x.into_gset()).unwrap())
}

fn images(maps: &[EquivariantMap]) -> BTreeSet<Vec<usize>> {
    maps.iter().map(|f| f.image().to_vec()).collect()
}

#[test]
fn z2_shift_matches_dumb_oracle() {
    let (s, a) = binary_shift("Z2");
    let dumb = dumb_end(s.gset());
    assert_eq!(dumb.len(), 16);
    assert_eq!(dumb.iter().filter(|f| common::is_bijection(f)).count(), 4);
    let end = enumerate_end(&a, DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(images(&end), dumb.into_iter().collect());
    assert_eq!(enumerate_aut(&a, DEFAULT_CLOSURE_CAP).unwrap().len(), 4);
}

#[test]
fn z2_shift_generation_and_irredundancy() {
    let (s, a) = binary_shift("Z2");
    let r = relative_rank(&a).unwrap();
    assert_eq!(r.relative_rank, 2);
    let push_01_00 = point_push(s.gset(), 1, 0).unwrap();
    let push_00_11 = point_push(s.gset(), 0, 3).unwrap();
    assert_eq!(
        r.generator_maps(),
        vec![push_01_00.clone(), push_00_11.clone()]
    );
    let aut = aut_generators(&a).unwrap();
    let full: Vec<_> = aut.iter().cloned().chain(r.generator_maps()).collect();
    assert_eq!(closure(s.gset(), &full, 100).unwrap().size(), 16);
    for v in [&push_01_00, &push_00_11] {
        let partial: Vec<_> = aut.iter().cloned().chain([v.clone()]).collect();
        assert!(closure(s.gset(), &partial, 100).unwrap().size() < 16);
    }
}

#[test]
fn z2_shift_collapses() {
    let (_, a) = binary_shift("Z2");
    let end = enumerate_end(&a, DEFAULT_CLOSURE_CAP).unwrap();
    let non_units: Vec<_> = end.iter().filter(|f| !f.is_bijective()).collect();
    assert_eq!(non_units.len(), 12);
    let mut types = BTreeSet::new();
    for f in non_units {
        if is_elementary_collapse(&a, f) {
            let t = collapse_type(&a, f).unwrap();
            assert_eq!(collapse_types_all_witnesses(&a, f), [t.clone()].into());
            types.insert(t);
        }
    }
    assert_eq!(types.len(), 2);
    assert_eq!(types, collapse_type_census(&a).unwrap());
}

#[test]
fn z2_shift_swap_of_constants() {
    let (s, _) = binary_shift("Z2");
    assert_eq!(point_swap(s.gset(), 0, 3).unwrap().image(), &[3, 1, 2, 0]);
}

#[test]
fn z3_shift_automorphisms() {
    let (s, a) = binary_shift("Z3");
    let dumb = dumb_end(s.gset());
    assert_eq!(dumb.iter().filter(|f| common::is_bijection(f)).count(), 36);
    assert_eq!(dumb.len(), 256);
    assert_eq!(enumerate_aut(&a, DEFAULT_CLOSURE_CAP).unwrap().len(), 36);
    let w = wreath_order_checks(&a, DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(w.predicted_aut, 36);
}

#[test]
fn pushing_two_free_orbits_to_a_constant_is_not_elementary() {
    let (s, a) = binary_shift("Z3");
    let to_zero = point_push(s.gset(), 1, 0).unwrap();
    let both = point_push(s.gset(), 3, 0)
        .unwrap()
        .compose(&to_zero)
        .unwrap();
    assert!(is_elementary_collapse(&a, &to_zero));
    assert!(!is_elementary_collapse(&a, &both));
    assert!(matches!(collapse_type(&a, &both), Err(Error::Domain(_))));
}

#[test]
fn z4_and_klein_shifts_pass_the_suite() {
    for (spec, end, rank) in [("Z4", 65_536, 5), ("Z2xZ2", 65_536, 9)] {
        let (s, a) = binary_shift(spec);
        assert_eq!(enumerate_end(&a, DEFAULT_CLOSURE_CAP).unwrap().len(), end);
        assert_eq!(relative_rank(&a).unwrap().relative_rank, rank);
        let report = verify(&a, Some(&s), DEFAULT_CLOSURE_CAP);
        for c in &report.checks {
            assert!(
                !matches!(c.status, Status::Fail(_)),
                "{spec}: {} {:?}",
                c.name,
                c.status
            );
        }
    }
}

#[test]
fn z4_shift_decomposition_is_exact() {
    let (_, a) = binary_shift("Z4");
    for f in enumerate_end(&a, DEFAULT_CLOSURE_CAP).unwrap() {
        let parts = decompose_by_boxes(&a, &f).unwrap();
        assert_eq!(recompose(&parts).unwrap().unwrap(), f);
    }
}

#[test]
fn trivial_group_end_is_full_transformation_monoid() {
    let g = group("Z1");
    for m in 1..=5 {
        let x = GSet::new(g.clone(), vec![(0..m).collect()]).unwrap();
        let a = Analysis::new(x).unwrap();
        assert_eq!(
            enumerate_end(&a, DEFAULT_CLOSURE_CAP).unwrap().len(),
            m.pow(m as u32)
        );
    }
}

#[test]
fn transitive_actions_have_end_equal_aut() {
    for spec in common::SMALL_GROUPS {
        let g = group(spec);
        let lattice = equirank::SubgroupLattice::new(g.clone()).unwrap();
        for h in lattice.subgroups() {
            let a = Analysis::new(GSet::coset_action(g.clone(), h).unwrap()).unwrap();
            let end = enumerate_end(&a, DEFAULT_CLOSURE_CAP).unwrap();
            assert!(end.iter().all(EquivariantMap::is_bijective), "{spec}");
            let r = relative_rank(&a).unwrap();
            assert_eq!(r.relative_rank, 0);
            assert!(r.generating_set.is_empty());
        }
    }
}

#[test]
fn s3_on_cosets_of_a_transposition() {
    let g = Arc::new(FiniteGroup::s3_letters());
    let a_elt = g.display_order()[1];
    let x = coset(&g, &[a_elt]);
    assert_eq!(x.size(), 3);
    assert!(x.is_transitive());
    assert_eq!(x.stabilizer(0), vec![0, a_elt]);
    let a = Analysis::new(x).unwrap();
    let w = wreath_order_checks(&a, DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(w.predicted_aut, 1);
    assert_eq!(w.enumerated_aut, Some(1));
}

#[test]
fn z6_fix_and_moebius() {
    let (s, a) = binary_shift("Z6");
    assert_eq!(s.gset().fix(&[0, 3]).len(), 8);
    let h = a.lattice.index_of_elements(&[0, 3]).unwrap();
    assert_eq!(a.lattice.moebius(h, a.lattice.whole()), Ok(-1));
    assert_eq!(a.alpha_moebius(h), Ok(2));
    for b in &a.boxes.boxes {
        assert_eq!(a.aut_orbits_in_box(b.representative), Ok(1));
    }
}

#[test]
fn z4_shift_orbit_count_and_restriction() {
    let (s, a) = binary_shift("Z4");
    assert_eq!(s.gset().burnside_orbit_count().unwrap(), 6);
    assert_eq!(a.boxes.boxes.len(), 3);
    let (constants, pts) = s.gset().restrict_to_invariant(&[0, 15]).unwrap();
    assert_eq!(pts, vec![0, 15]);
    assert_eq!(constants.fix(&[1]).len(), 2);
    assert!(matches!(
        s.gset().restrict_to_invariant(&[0, 1]),
        Err(Error::NotInvariant { .. })
    ));
}

#[test]
fn kernel_is_stable_under_automorphisms() {
    let (_, a) = binary_shift("Z3");
    let end = enumerate_end(&a, DEFAULT_CLOSURE_CAP).unwrap();
    let aut: Vec<_> = end.iter().filter(|f| f.is_bijective()).cloned().collect();
    for tau in &end {
        let k = tau.kernel_pairs();
        for sigma in &aut {
            assert_eq!(sigma.compose(tau).unwrap().kernel_pairs(), k);
            assert_eq!(tau.compose(sigma).unwrap().kernel_pairs().len(), k.len());
        }
    }
}

#[test]
fn z4_free_box_orders() {
    let g = group("Z4");
    let free = coset(&g, &[]);
    let three = GSet::disjoint_union(&GSet::disjoint_union(&free, &free).unwrap(), &free).unwrap();
    let a = Analysis::new(three).unwrap();
    let end = enumerate_end(&a, DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(end.len(), 1728);
    let w = wreath_order_checks(&a, DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(w.boxes[0].predicted_end, 1728);
    assert_eq!(w.predicted_aut, 4u128.pow(3) * 6);
}
