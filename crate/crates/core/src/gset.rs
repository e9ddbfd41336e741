//! Finite G-sets with dense action tables.

use std::sync::Arc;

use crate::bitset::IndexSet;
use crate::error::{check_budget, Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::Subgroup;

/// Largest action table (`|G| · |X|` cells) accepted.
pub const DEFAULT_GSET_CELLS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    /// `action[g * size + x] = g·x`
    action: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl GSet {
    /// Builds a G-set from one row per group element, validating the axioms.
    pub fn new(group: Arc<FiniteGroup>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let size = rows.first().map_or(0, Vec::len);
        if rows.len() != group.order() || rows.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidAction(
                "need one row of equal length per group element".into(),
            ));
        }
        let action = rows.into_iter().flatten().collect();
        Self::from_flat(group, size, action, None)
    }

    pub(crate) fn from_flat(
        group: Arc<FiniteGroup>,
        size: usize,
        action: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        check_budget(
            "G-set action table",
            (group.order() as u128) * (size as u128),
            DEFAULT_GSET_CELLS as u128,
        )?;
        let gset = GSet {
            group,
            size,
            action,
            labels,
        };
        gset.validate()?;
        Ok(gset)
    }

    /// Identity row, bijective rows, and compatibility. Compatibility is
    /// checked for `g1` in a generating set and all `g2`, which implies it
    /// for every pair by induction on word length.
    fn validate(&self) -> Result<()> {
        let g = &self.group;
        let m = self.size;
        if self.action.iter().any(|&x| x >= m) {
            return Err(Error::InvalidAction("point index out of range".into()));
        }
        if (0..m).any(|x| self.act(g.identity(), x) != x) {
            return Err(Error::InvalidAction(
                "identity does not act trivially".into(),
            ));
        }
        for h in g.elements() {
            let mut seen = vec![false; m];
            for x in 0..m {
                let y = self.act(h, x);
                if seen[y] {
                    return Err(Error::InvalidAction(format!(
                        "row of element {h} is not a bijection"
                    )));
                }
                seen[y] = true;
            }
        }
        for s in g.generating_set() {
            for h in g.elements() {
                let sh = g.mul(s, h);
                for x in 0..m {
                    if self.act(sh, x) != self.act(s, self.act(h, x)) {
                        return Err(Error::InvalidAction(format!(
                            "compatibility fails for elements {s}, {h} at point {x}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `G` acting on its left cosets `G/H`; points are ordered by the
    /// smallest element of each coset.
    pub fn coset_action(group: Arc<FiniteGroup>, h: &Subgroup) -> Result<Self> {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in group.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &k in h.elements() {
                coset_of[group.mul(g, k)] = reps.len();
            }
            reps.push(g);
        }
        let m = reps.len();
        let mut action = vec![0; n * m];
        for g in group.elements() {
            for (p, &r) in reps.iter().enumerate() {
                action[g * m + p] = coset_of[group.mul(g, r)];
            }
        }
        let labels = reps
            .iter()
            .map(|&r| format!("{}H", group.label(r)))
            .collect();
        Self::from_flat(group, m, action, Some(labels))
    }

    pub fn disjoint_union(a: &GSet, b: &GSet) -> Result<Self> {
        if a.group != b.group {
            return Err(Error::Domain(
                "disjoint union of G-sets over different groups".into(),
            ));
        }
        let m = a.size + b.size;
        let mut action = Vec::with_capacity(a.group.order() * m);
        for g in a.group.elements() {
            action.extend((0..a.size).map(|x| a.act(g, x)));
            action.extend((0..b.size).map(|x| a.size + b.act(g, x)));
        }
        let labels = (0..a.size)
            .map(|x| a.label(x))
            .chain((0..b.size).map(|x| b.label(x)))
            .collect();
        Self::from_flat(a.group.clone(), m, action, Some(labels))
    }

    /// The sub-G-set on `points`, renumbered in ascending order. Returns the
    /// restricted set and the sorted original point list.
    pub fn restrict_to_invariant(&self, points: &[usize]) -> Result<(GSet, Vec<usize>)> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut new_index = vec![usize::MAX; self.size];
        for (i, &p) in sorted.iter().enumerate() {
            if p >= self.size {
                return Err(Error::Domain(format!("point {p} out of range")));
            }
            new_index[p] = i;
        }
        let k = sorted.len();
        let mut action = Vec::with_capacity(self.group.order() * k);
        for g in self.group.elements() {
            for &p in &sorted {
                let q = self.act(g, p);
                if new_index[q] == usize::MAX {
                    return Err(Error::NotInvariant { point: p });
                }
                action.push(new_index[q]);
            }
        }
        let labels = sorted.iter().map(|&p| self.label(p)).collect();
        let restricted = Self::from_flat(self.group.clone(), k, action, Some(labels))?;
        Ok((restricted, sorted))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::Domain("wrong number of point labels".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// `Gx`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Elements of `G_x`, sorted.
    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&g| self.act(g, x) == x)
            .collect()
    }

    pub(crate) fn stabilizer_set(&self, x: usize) -> IndexSet {
        IndexSet::from_indices(
            self.group.order(),
            self.group.elements().filter(|&g| self.act(g, x) == x),
        )
    }

    /// The orbit partition, each orbit sorted, orbits ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.size);
        for g in self.group.generating_set() {
            for x in 0..self.size {
                uf.union(x, self.act(g, x));
            }
        }
        let mut slot = vec![usize::MAX; self.size];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.size {
            let r = uf.find(x);
            if slot[r] == usize::MAX {
                slot[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[slot[r]].push(x);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Points fixed by every element of `elements`.
    pub fn fix(&self, elements: &[usize]) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| elements.iter().all(|&k| self.act(k, x) == x))
            .collect()
    }

    /// `(1/|G|) Σ_g |X^g|`; the division must be exact.
    pub fn burnside_orbit_count(&self) -> Result<usize> {
        let total: usize = self
            .group
            .elements()
            .map(|g| (0..self.size).filter(|&x| self.act(g, x) == x).count())
            .sum();
        let n = self.group.order();
        if !total.is_multiple_of(n) {
            return Err(Error::Internal(format!(
                "fixed-point total {total} is not divisible by |G| = {n}"
            )));
        }
        Ok(total / n)
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}
