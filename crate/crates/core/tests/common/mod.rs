//! Independent brute-force oracles. Nothing here calls the library's
//! enumeration, lattice or box code; only groups and action tables are shared.

#![allow(dead_code)]

use std::sync::Arc;

use equirank::{FiniteGroup, GSet, SubgroupLattice};
use rand::Rng;

/// Every group of order at most 8 up to isomorphism, by spec string.
pub const SMALL_GROUPS: [&str; 14] = [
    "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8",
];

pub fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(
        equirank::notation::parse_group(spec)
            .unwrap()
            .build(10_000)
            .unwrap(),
    )
}

/// Every map `0..m → 0..m` commuting with the action, found by trying all `m^m` arrays.
pub fn dumb_end(x: &GSet) -> Vec<Vec<usize>> {
    let m = x.size();
    assert!(m <= 8, "dumb oracle is for at most 8 points");
    let mut out = Vec::new();
    let total = m.pow(m as u32);
    let mut f = vec![0usize; m];
    for code in 0..total {
        let mut c = code;
        for slot in f.iter_mut().rev() {
            *slot = c % m;
            c /= m;
        }
        let ok = x
            .group()
            .elements()
            .all(|g| (0..m).all(|p| f[x.act(g, p)] == x.act(g, f[p])));
        if ok {
            out.push(f.clone());
        }
    }
    out
}

pub fn is_bijection(f: &[usize]) -> bool {
    let mut seen = vec![false; f.len()];
    f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// Subgroups as sorted element lists, by testing every subset for closure.
pub fn dumb_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    assert!(n <= 12);
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if !s.contains(&g.identity()) {
            continue;
        }
        let closed = s
            .iter()
            .all(|&a| s.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1));
        if closed {
            out.push(s);
        }
    }
    out
}

/// Orbits by repeated application of all elements, no union-find.
pub fn dumb_orbits(x: &GSet) -> Vec<Vec<usize>> {
    let mut done = vec![false; x.size()];
    let mut out = Vec::new();
    for p in 0..x.size() {
        if done[p] {
            continue;
        }
        let mut o: Vec<usize> = x.group().elements().map(|g| x.act(g, p)).collect();
        o.sort_unstable();
        o.dedup();
        for &q in &o {
            done[q] = true;
        }
        out.push(o);
    }
    out
}

pub fn stabilizer(x: &GSet, p: usize) -> Vec<usize> {
    x.group().elements().filter(|&g| x.act(g, p) == p).collect()
}

/// Whether two subgroups (element lists) are conjugate in `g`.
pub fn conjugate(g: &FiniteGroup, h: &[usize], k: &[usize]) -> bool {
    g.elements().any(|c| {
        let mut conj: Vec<usize> = h.iter().map(|&x| g.mul(g.mul(c, x), g.inv(c))).collect();
        conj.sort_unstable();
        conj == k
    })
}

/// `α_[H]` by grouping orbits according to the conjugacy class of their stabilizers.
pub fn dumb_alpha(x: &GSet, h: &[usize]) -> usize {
    let g = x.group();
    dumb_orbits(x)
        .iter()
        .filter(|o| conjugate(g, h, &stabilizer(x, o[0])))
        .count()
}

/// Disjoint union of coset actions `G/H_k` for randomly chosen subgroups.
pub fn random_coset_union<R: Rng>(g: &Arc<FiniteGroup>, parts: usize, rng: &mut R) -> GSet {
    let lattice = SubgroupLattice::new(g.clone()).unwrap();
    let mut acc: Option<GSet> = None;
    for _ in 0..parts {
        let h = rng.gen_range(0..lattice.len());
        let c = GSet::coset_action(g.clone(), lattice.subgroup(h)).unwrap();
        acc = Some(match acc {
            None => c,
            Some(a) => GSet::disjoint_union(&a, &c).unwrap(),
        });
    }
    acc.unwrap()
}

pub fn coset(g: &Arc<FiniteGroup>, elements: &[usize]) -> GSet {
    let lattice = SubgroupLattice::new(g.clone()).unwrap();
    let h = lattice.index_of_elements(&g.span(elements)).unwrap();
    GSet::coset_action(g.clone(), lattice.subgroup(h)).unwrap()
}
