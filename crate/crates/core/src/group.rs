//! Finite groups as dense multiplication tables.
//!
//! Elements are the indices `0..n`. Labels and the display order only affect
//! how elements are printed and how shift-space configurations are encoded;
//! every computation speaks indices.

use std::collections::{HashMap, VecDeque};

use crate::bitset::IndexSet;
use crate::error::{check_budget, Error, Result};
use crate::perm;

/// Largest group any constructor will build unless told otherwise.
pub const DEFAULT_GROUP_BUDGET: usize = 10_080;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
    display_order: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table `mul[a][b] = a·b` and builds the group.
    ///
    /// Checks closure, associativity, a two-sided identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        let mul: Vec<usize> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            mul,
            identity,
            inv,
            labels: None,
            display_order: (0..n).collect(),
        })
    }

    /// Trusted constructor for tables produced by this module.
    fn from_trusted(mul: Vec<usize>, n: usize, labels: Option<Vec<String>>) -> Self {
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e * n + g] == g))
            .expect("constructor produced a table without identity");
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n).find(|&h| mul[g * n + h] == identity).unwrap();
        }
        FiniteGroup {
            order: n,
            mul,
            identity,
            inv,
            labels,
            display_order: (0..n).collect(),
        }
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::cyclic_within(n, DEFAULT_GROUP_BUDGET)
    }

    /// `Z_n` with `a·b = (a + b) mod n`.
    pub fn cyclic_within(n: usize, budget: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        check_budget("group", n as u128, budget as u128)?;
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Ok(Self::from_trusted(mul, n, None))
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        Self::symmetric_within(n, DEFAULT_GROUP_BUDGET)
    }

    /// `Sym(n)` with elements in lexicographic one-line order and cycle-notation labels.
    pub fn symmetric_within(n: usize, budget: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let mut size: u128 = 1;
        for k in 2..=n as u128 {
            size = size.saturating_mul(k);
            check_budget("group", size, budget as u128)?;
        }
        Ok(Self::from_permutations(perm::lexicographic(n)))
    }

    /// `Sym(3)` relabeled `e, a, b, c, f, g` with the display order used in
    /// the classical hand-computed tables: `a = (0 1)`, `b = (1 2)`,
    /// `c = (0 2)`, `f = (0 1 2)`, `g = (0 2 1)`.
    pub fn s3_letters() -> Self {
        let g = Self::symmetric(3).expect("Sym(3) is within any budget");
        // lexicographic indices: 0 (), 1 (1 2), 2 (0 1), 3 (0 1 2), 4 (0 2 1), 5 (0 2)
        g.with_display(
            vec![0, 2, 1, 5, 3, 4],
            ["e", "a", "b", "c", "f", "g"].map(String::from).to_vec(),
        )
        .expect("valid relabeling")
    }

    pub fn dihedral(n: usize) -> Result<Self> {
        Self::dihedral_within(n, DEFAULT_GROUP_BUDGET)
    }

    /// Dihedral group of order `2n`; element `k + n·f` is `r^k s^f`.
    pub fn dihedral_within(n: usize, budget: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let order = 2 * n;
        check_budget("group", order as u128, budget as u128)?;
        let mut mul = vec![0; order * order];
        for x in 0..order {
            let (a, f1) = (x % n, x / n);
            for y in 0..order {
                let (b, f2) = (y % n, y / n);
                // r^a s^f1 r^b s^f2 = r^(a ± b) s^(f1 + f2)
                let k = if f1 == 0 {
                    (a + b) % n
                } else {
                    (a + n - b) % n
                };
                mul[x * order + y] = k + n * ((f1 + f2) % 2);
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (k, f) = (x % n, x / n);
                match (k, f) {
                    (0, 0) => "e".to_string(),
                    (k, 0) => format!("r{k}"),
                    (0, _) => "s".to_string(),
                    (k, _) => format!("r{k}s"),
                }
            })
            .collect();
        Ok(Self::from_trusted(mul, order, Some(labels)))
    }

    /// Quaternion group `Q_8`; element `2k + s` is `(−1)^s · u_k` with `u = 1, i, j, k`.
    pub fn quaternion() -> Self {
        // unit products u_a u_b = sign · u_c
        const PROD: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let mut mul = vec![0; 64];
        for x in 0..8 {
            for y in 0..8 {
                let (c, s) = PROD[x / 2][y / 2];
                mul[x * 8 + y] = 2 * c + (s + x % 2 + y % 2) % 2;
            }
        }
        let names = ["1", "i", "j", "k"];
        let labels = (0..8)
            .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
            .collect();
        Self::from_trusted(mul, 8, Some(labels))
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        Self::direct_product_within(a, b, DEFAULT_GROUP_BUDGET)
    }

    /// Componentwise product; element `(x, y)` has index `x·|b| + y`.
    pub fn direct_product_within(a: &FiniteGroup, b: &FiniteGroup, budget: usize) -> Result<Self> {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        check_budget("group", n as u128, budget as u128)?;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / nb, x % nb);
                let (y1, y2) = (y / nb, y % nb);
                mul[x * n + y] = a.mul(x1, y1) * nb + b.mul(x2, y2);
            }
        }
        let labels = (0..n)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        Ok(Self::from_trusted(mul, n, Some(labels)))
    }

    pub fn from_permutation_generators(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutation_generators_within(degree, gens, DEFAULT_GROUP_BUDGET)
    }

    /// The permutation group generated by `gens`, elements sorted in
    /// lexicographic one-line order.
    pub fn from_permutation_generators_within(
        degree: usize,
        gens: &[Vec<usize>],
        budget: usize,
    ) -> Result<Self> {
        for g in gens {
            if g.len() != degree || !perm::is_permutation(g) {
                return Err(Error::InvalidPermutation(format!(
                    "{g:?} is not a bijection on 0..{degree}"
                )));
            }
        }
        let id = perm::identity(degree);
        let mut seen: std::collections::HashSet<Vec<usize>> = [id.clone()].into();
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = perm::compose(g, &p);
                if seen.insert(q.clone()) {
                    check_budget("group", seen.len() as u128, budget as u128)?;
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<Vec<usize>> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::from_permutations(elements))
    }

    /// Builds a group from a complete, sorted list of permutations closed under composition.
    fn from_permutations(elements: Vec<Vec<usize>>) -> Self {
        let n = elements.len();
        let index: HashMap<&[usize], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let mut mul = vec![0; n * n];
        for (i, p) in elements.iter().enumerate() {
            for (j, q) in elements.iter().enumerate() {
                mul[i * n + j] = index[perm::compose(p, q).as_slice()];
            }
        }
        let labels = elements.iter().map(|p| perm::cycle_notation(p)).collect();
        Self::from_trusted(mul, n, Some(labels))
    }

    /// Replaces the display order (a permutation of the element indices) and labels.
    pub fn with_display(mut self, order: Vec<usize>, labels_in_order: Vec<String>) -> Result<Self> {
        if order.len() != self.order || !perm::is_permutation(&order) {
            return Err(Error::InvalidGroup(
                "display order is not a permutation of the elements".into(),
            ));
        }
        if labels_in_order.len() != self.order {
            return Err(Error::InvalidGroup("wrong number of labels".into()));
        }
        let mut labels = vec![String::new(); self.order];
        for (pos, &g) in order.iter().enumerate() {
            labels[g] = labels_in_order[pos].clone();
        }
        self.labels = Some(labels);
        self.display_order = order;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// `g⁻¹ h g`.
    pub fn conjugate_element(&self, g: usize, h: usize) -> usize {
        self.mul(self.inv(g), self.mul(h, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    /// Elements in display order (`display_order()[k]` is printed k-th).
    pub fn display_order(&self) -> &[usize] {
        &self.display_order
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        self.span_set(gens).to_vec()
    }

    pub(crate) fn span_set(&self, gens: &[usize]) -> IndexSet {
        let mut set = IndexSet::new(self.order);
        set.insert(self.identity);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// A small generating set, built greedily in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.span_set(&gens);
        for g in self.elements() {
            if !span.contains(g) {
                gens.push(g);
                span = self.span_set(&gens);
            }
        }
        gens
    }

    /// Left regular representation: element `g` as the permutation `h ↦ g·h`.
    pub fn left_regular_permutations(&self) -> Vec<Vec<usize>> {
        self.elements()
            .map(|g| self.elements().map(|h| self.mul(g, h)).collect())
            .collect()
    }

    /// Lexicographically least relabeled multiplication table over all
    /// relabelings sending the identity to 0. Brute force, so only groups of
    /// order at most 8 are accepted.
    pub fn canonical_table(&self) -> Result<Vec<usize>> {
        const LIMIT: usize = 8;
        check_budget("canonical form group", self.order as u128, LIMIT as u128)?;
        let n = self.order;
        let others: Vec<usize> = self.elements().filter(|&g| g != self.identity).collect();
        let mut best: Option<Vec<usize>> = None;
        for p in perm::lexicographic(n - 1) {
            // new label of element: identity -> 0, others[k] -> p[k] + 1
            let mut relabel = vec![0; n];
            for (k, &g) in others.iter().enumerate() {
                relabel[g] = p[k] + 1;
            }
            let mut table = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[relabel[a] * n + relabel[b]] = relabel[self.mul(a, b)];
                }
            }
            if best.as_ref().is_none_or(|b| table < *b) {
                best = Some(table);
            }
        }
        Ok(best.expect("at least one relabeling"))
    }
}
