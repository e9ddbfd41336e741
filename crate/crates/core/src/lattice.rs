//! Subgroups of a finite group: enumeration, conjugacy classes, normalizers,
//! the order graph on classes, and the Möbius function of the lattice.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::bitset::IndexSet;
use crate::error::{check_budget, Error, Result};
use crate::group::FiniteGroup;

/// Largest number of subgroups the enumeration will produce.
pub const DEFAULT_SUBGROUP_BUDGET: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    set: IndexSet,
    generators: Vec<usize>,
}

impl Subgroup {
    fn from_set(set: IndexSet, generators: Vec<usize>) -> Self {
        Subgroup {
            elements: set.to_vec(),
            set,
            generators,
        }
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.set.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
}

/// Every subgroup of `group`, in canonical order: ascending by order, ties
/// broken by the sorted element list.
pub fn all_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    all_subgroups_within(group, DEFAULT_SUBGROUP_BUDGET)
}

/// Bottom-up enumeration: every subgroup is the join of the cyclic subgroups
/// of its elements, so closing the cyclic subgroups under joins with cyclic
/// subgroups reaches all of them.
pub fn all_subgroups_within(group: &FiniteGroup, budget: usize) -> Result<Vec<Subgroup>> {
    let mut cyclic: Vec<(usize, IndexSet)> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for g in group.elements() {
        let s = group.span_set(&[g]);
        if seen_cyclic.insert(s.clone()) {
            cyclic.push((g, s));
        }
    }
    let mut found: HashMap<IndexSet, Vec<usize>> = HashMap::new();
    let mut work: Vec<IndexSet> = Vec::new();
    for (g, s) in &cyclic {
        let gens = if *g == group.identity() {
            vec![]
        } else {
            vec![*g]
        };
        found.insert(s.clone(), gens);
        work.push(s.clone());
    }
    while let Some(s) = work.pop() {
        for (c, cset) in &cyclic {
            if cset.is_subset(&s) {
                continue;
            }
            let mut gens = found[&s].clone();
            gens.push(*c);
            let joined = group.span_set(&gens);
            if !found.contains_key(&joined) {
                found.insert(joined.clone(), gens);
                check_budget("subgroup lattice", found.len() as u128, budget as u128)?;
                work.push(joined);
            }
        }
    }
    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|(set, gens)| Subgroup::from_set(set, gens))
        .collect();
    subgroups.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    Ok(subgroups)
}

/// A conjugacy class `[H]` of subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Subgroup indices, ascending; the first is the representative.
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<IndexSet, usize>,
    /// `contains[h * n + k]` iff `H_h ≤ H_k`.
    contains: Vec<bool>,
    /// `conj[g * n + h]` is the index of `g H_h g⁻¹`.
    conj: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    normalizers: Vec<usize>,
    moebius: Vec<i64>,
}

impl SubgroupLattice {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        Self::within(group, DEFAULT_SUBGROUP_BUDGET)
    }

    pub fn within(group: Arc<FiniteGroup>, budget: usize) -> Result<Self> {
        let subgroups = all_subgroups_within(&group, budget)?;
        let n = subgroups.len();
        let index: HashMap<IndexSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.set.clone(), i))
            .collect();

        let mut contains = vec![false; n * n];
        for (h, sh) in subgroups.iter().enumerate() {
            for (k, sk) in subgroups.iter().enumerate().skip(h) {
                contains[h * n + k] = sh.is_subgroup_of(sk);
            }
        }

        let order = group.order();
        let mut conj = vec![0; order * n];
        for g in group.elements() {
            let ginv = group.inv(g);
            for (h, sh) in subgroups.iter().enumerate() {
                let image = IndexSet::from_indices(
                    order,
                    sh.elements
                        .iter()
                        .map(|&x| group.mul(g, group.mul(x, ginv))),
                );
                conj[g * n + h] = *index.get(&image).ok_or_else(|| {
                    Error::Internal("subgroup list is not closed under conjugation".into())
                })?;
            }
        }

        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for h in 0..n {
            if class_of[h] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = group.elements().map(|g| conj[g * n + h]).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(ConjugacyClass { members });
        }

        let mut normalizers = Vec::with_capacity(n);
        for h in 0..n {
            let set =
                IndexSet::from_indices(order, group.elements().filter(|&g| conj[g * n + h] == h));
            normalizers.push(*index.get(&set).ok_or_else(|| {
                Error::Internal("normalizer missing from the subgroup list".into())
            })?);
        }

        // μ(H,H) = 1, μ(H,L) = −Σ_{H ≤ K < L} μ(H,K); indices ascend with order,
        // so every proper intermediate K precedes L.
        let mut moebius = vec![0i64; n * n];
        for h in 0..n {
            moebius[h * n + h] = 1;
            for l in h + 1..n {
                if !contains[h * n + l] {
                    continue;
                }
                let sum: i64 = (h..l)
                    .filter(|&k| contains[h * n + k] && contains[k * n + l])
                    .map(|k| moebius[h * n + k])
                    .sum();
                moebius[h * n + l] = -sum;
            }
        }

        Ok(SubgroupLattice {
            group,
            subgroups,
            index,
            contains,
            conj,
            classes,
            class_of,
            normalizers,
            moebius,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, h: usize) -> &Subgroup {
        &self.subgroups[h]
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn index_of_elements(&self, elements: &[usize]) -> Option<usize> {
        let set = IndexSet::from_indices(self.group.order(), elements.iter().copied());
        self.index.get(&set).copied()
    }

    pub(crate) fn index_of_set(&self, set: &IndexSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// `H_h ≤ H_k`.
    pub fn leq(&self, h: usize, k: usize) -> bool {
        self.contains[h * self.len() + k]
    }

    /// All containment pairs `(h, k)` with `H_h ≤ H_k`.
    pub fn containment_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|h| (h..n).map(move |k| (h, k)))
            .filter(|&(h, k)| self.leq(h, k))
            .collect()
    }

    /// Index of `g H_h g⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.conj[g * self.len() + h]
    }

    /// Conjugacy classes ascending by order, ties by the representative's element list.
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, h: usize) -> usize {
        self.class_of[h]
    }

    /// Index of `N_G(H_h)`.
    pub fn normalizer(&self, h: usize) -> usize {
        self.normalizers[h]
    }

    pub fn is_normal(&self, h: usize) -> bool {
        self.normalizers[h] == self.whole()
    }

    /// `[H]_N = {n H n⁻¹ : n ∈ N}` as sorted subgroup indices.
    pub fn n_conjugacy_class(&self, h: usize, n: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.subgroups[n]
            .elements
            .iter()
            .map(|&g| self.conjugate(g, h))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Edges `(a, b)` of the order graph on classes: `[H_a] ≤ [H_b]` iff the
    /// representative of `a` lies in some conjugate of the representative of `b`.
    pub fn conj_order_graph(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (a, ca) in self.classes.iter().enumerate() {
            for (b, cb) in self.classes.iter().enumerate() {
                if cb.members.iter().any(|&k| self.leq(ca.representative(), k)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// `μ(H_h, H_k)`; fails unless `H_h ≤ H_k`.
    pub fn moebius(&self, h: usize, k: usize) -> Result<i64> {
        if !self.leq(h, k) {
            return Err(Error::Domain(format!(
                "Möbius value requested for non-comparable subgroups {h} and {k}"
            )));
        }
        Ok(self.moebius[h * self.len() + k])
    }
}
