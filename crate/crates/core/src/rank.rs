//! Relative rank of `End_G(X)` modulo `Aut_G(X)`: the sets `U(H_i)`, the
//! explicit generating set `V`, elementary collapses and their types.

use std::collections::BTreeSet;

use crate::boxes::Analysis;
use crate::equivariant::{point_push, point_swap, EquivariantMap};
use crate::error::{Error, Result};
use crate::gset::UnionFind;

/// `(i, [K]_{N_i})`: box position and an `N_i`-class of subgroups given by
/// sorted subgroup indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CollapseType {
    pub class_index: usize,
    pub target_class: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    /// Box position `i`.
    pub position: usize,
    /// `H_i`.
    pub representative: usize,
    /// `N_i = N_G(H_i)`.
    pub normalizer: usize,
    pub alpha: usize,
    /// `U(H_i)`, each class as sorted subgroup indices, ordered by first member.
    pub u_set: Vec<Vec<usize>>,
}

/// One element of `V` with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub map: EquivariantMap,
    /// `push x_i -> y_{i,j}` or `push x_i -> x_i'`, 1-based.
    pub tag: String,
    pub source: usize,
    pub target: usize,
    pub collapse_type: CollapseType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub classes: Vec<ClassReport>,
    /// Box positions with `α_i = 1`.
    pub kappa: Vec<usize>,
    /// `Σ |U(H_i)| − |κ|`.
    pub relative_rank: usize,
    pub generating_set: Vec<Generator>,
    /// κ read off from the shift-space shortcut, when the caller supplies it.
    pub kappa_shortcut: Option<Vec<usize>>,
}

impl RankReport {
    pub fn u_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.u_set.len()).collect()
    }

    pub fn generator_maps(&self) -> Vec<EquivariantMap> {
        self.generating_set.iter().map(|g| g.map.clone()).collect()
    }
}

/// `U(H_i) = {[K]_{N_i} : K ∈ Stab_G(X), H_i ≤ K}`.
pub fn u_set(analysis: &Analysis, position: usize) -> Result<Vec<Vec<usize>>> {
    let b = analysis
        .boxes
        .boxes
        .get(position)
        .ok_or_else(|| Error::Domain(format!("no box at position {position}")))?;
    let lattice = &analysis.lattice;
    let h = b.representative;
    let n = lattice.normalizer(h);
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    for k in analysis.boxes.stabilizer_subgroups() {
        if lattice.leq(h, k) {
            classes.insert(lattice.n_conjugacy_class(k, n));
        }
    }
    Ok(classes.into_iter().collect())
}

/// Smallest point with stabilizer exactly `h`.
fn min_point_with_stabilizer(analysis: &Analysis, h: usize) -> Option<usize> {
    (0..analysis.size()).find(|&x| analysis.stabilizer_of(x) == h)
}

fn require_point(analysis: &Analysis, h: usize) -> Result<usize> {
    min_point_with_stabilizer(analysis, h)
        .ok_or_else(|| Error::Internal(format!("no point has stabilizer {h}")))
}

/// The canonical `x_i` of a box.
pub fn box_base_point(analysis: &Analysis, position: usize) -> Result<usize> {
    require_point(analysis, analysis.boxes.boxes[position].representative)
}

pub fn class_reports(analysis: &Analysis) -> Result<Vec<ClassReport>> {
    let lattice = &analysis.lattice;
    analysis
        .boxes
        .boxes
        .iter()
        .enumerate()
        .map(|(i, b)| {
            Ok(ClassReport {
                position: i,
                representative: b.representative,
                normalizer: lattice.normalizer(b.representative),
                alpha: b.alpha(),
                u_set: u_set(analysis, i)?,
            })
        })
        .collect()
}

/// The set `V`: for each box, one push from `x_i` into each `N_i`-class of
/// `U(H_i)` other than `[H_i]`, plus `[x_i ↦ x_i']` when the box holds two or
/// more orbits. Witnesses are the smallest admissible points.
pub fn generating_set_v(analysis: &Analysis) -> Result<Vec<Generator>> {
    let mut v = Vec::new();
    for (i, b) in analysis.boxes.boxes.iter().enumerate() {
        let h = b.representative;
        let x = require_point(analysis, h)?;
        for class in u_set(analysis, i)? {
            if class == [h] {
                continue;
            }
            let k = class[0];
            let y = require_point(analysis, k)?;
            v.push(Generator {
                map: point_push(&analysis.gset, x, y)?,
                tag: format!("push x_{} -> y_{{{},{}}}", i + 1, i + 1, k),
                source: x,
                target: y,
                collapse_type: CollapseType {
                    class_index: i,
                    target_class: class,
                },
            });
        }
        if b.alpha() >= 2 {
            let ox = analysis.orbit_of(x);
            let x2 = (0..analysis.size())
                .find(|&z| analysis.stabilizer_of(z) == h && analysis.orbit_of(z) != ox)
                .ok_or_else(|| Error::Internal(format!("box {i} has no second orbit")))?;
            v.push(Generator {
                map: point_push(&analysis.gset, x, x2)?,
                tag: format!("push x_{} -> x_{}'", i + 1, i + 1),
                source: x,
                target: x2,
                collapse_type: CollapseType {
                    class_index: i,
                    target_class: vec![h],
                },
            });
        }
    }
    Ok(v)
}

/// Full report; the size of `V` must equal `Σ |U(H_i)| − |κ|`.
pub fn relative_rank(analysis: &Analysis) -> Result<RankReport> {
    let classes = class_reports(analysis)?;
    let kappa = analysis.kappa();
    let total: usize = classes.iter().map(|c| c.u_set.len()).sum();
    let relative_rank = total - kappa.len();
    let generating_set = generating_set_v(analysis)?;
    if generating_set.len() != relative_rank {
        return Err(Error::Internal(format!(
            "|V| = {} but the rank formula gives {relative_rank}",
            generating_set.len()
        )));
    }
    Ok(RankReport {
        classes,
        kappa,
        relative_rank,
        generating_set,
        kappa_shortcut: None,
    })
}

/// Generators of `Aut_G(X)`: per box, swaps of the first orbit with every
/// other orbit, plus the translations `g·x_i ↦ g·k·x_i`, `k ∈ N_G(H_i)`.
pub fn aut_generators(analysis: &Analysis) -> Result<Vec<EquivariantMap>> {
    let gset = &analysis.gset;
    let mut gens: BTreeSet<EquivariantMap> = BTreeSet::new();
    let id = EquivariantMap::identity(gset.size());
    for (i, b) in analysis.boxes.boxes.iter().enumerate() {
        let h = b.representative;
        let x = box_base_point(analysis, i)?;
        for orbit in b.orbits.iter().skip(1) {
            let z = orbit
                .iter()
                .copied()
                .find(|&z| analysis.stabilizer_of(z) == h)
                .ok_or_else(|| Error::Internal(format!("orbit without an H_{i} point")))?;
            gens.insert(point_swap(gset, x, z)?);
        }
        for &k in analysis
            .lattice
            .subgroup(analysis.lattice.normalizer(h))
            .elements()
        {
            gens.insert(point_swap(gset, x, gset.act(k, x))?);
        }
    }
    gens.remove(&id);
    Ok(gens.into_iter().collect())
}

/// `τ_1, …, τ_r`: `τ` on one box, identity elsewhere.
pub fn decompose_by_boxes(
    analysis: &Analysis,
    tau: &EquivariantMap,
) -> Result<Vec<EquivariantMap>> {
    if tau.len() != analysis.size() {
        return Err(Error::Domain("map size does not match the G-set".into()));
    }
    Ok(analysis
        .boxes
        .boxes
        .iter()
        .map(|b| {
            let mut image: Vec<usize> = (0..tau.len()).collect();
            for &x in &b.points {
                image[x] = tau.apply(x);
            }
            EquivariantMap::from_image_unchecked(image)
        })
        .collect())
}

/// `τ_1 ∘ τ_2 ∘ ⋯ ∘ τ_r`.
pub fn recompose(parts: &[EquivariantMap]) -> Result<Option<EquivariantMap>> {
    let mut it = parts.iter();
    let Some(first) = it.next() else {
        return Ok(None);
    };
    let mut acc = first.clone();
    for p in it {
        acc = acc.compose(p)?;
    }
    Ok(Some(acc))
}

/// Whether the equivalence generated by `(g·x, g·y)` is exactly `ker τ`.
fn generates_kernel(analysis: &Analysis, tau: &EquivariantMap, x: usize, y: usize) -> bool {
    let gset = &analysis.gset;
    let m = gset.size();
    let mut uf = UnionFind::new(m);
    for g in gset.group().elements() {
        uf.union(gset.act(g, x), gset.act(g, y));
    }
    let labels = tau.kernel_labels();
    let mut root_label = vec![usize::MAX; m];
    let mut label_root = vec![usize::MAX; m];
    for a in 0..m {
        let r = uf.find(a);
        let l = labels[a];
        if root_label[r] == usize::MAX && label_root[l] == usize::MAX {
            root_label[r] = l;
            label_root[l] = r;
        } else if root_label[r] != l || label_root[l] != r {
            return false;
        }
    }
    true
}

/// Smallest point lying in a nontrivial kernel class.
fn first_collapsed_point(tau: &EquivariantMap) -> Option<usize> {
    let mut count = vec![0usize; tau.len()];
    for &y in tau.image() {
        count[y] += 1;
    }
    (0..tau.len()).find(|&a| count[tau.apply(a)] > 1)
}

/// Pairs `(a, b)` with `a` the smallest collapsed point whose generated
/// equivalence is the kernel. Every witness is a G-translate of one of these,
/// possibly with the roles swapped.
pub fn collapse_witnesses(analysis: &Analysis, tau: &EquivariantMap) -> Vec<(usize, usize)> {
    let Some(a) = first_collapsed_point(tau) else {
        return Vec::new();
    };
    (0..tau.len())
        .filter(|&b| b != a && tau.apply(b) == tau.apply(a))
        .filter(|&b| generates_kernel(analysis, tau, a, b))
        .map(|b| (a, b))
        .collect()
}

/// An elementary collapse: the kernel is generated by the pairs `(g·x, g·y)`.
pub fn is_elementary_collapse(analysis: &Analysis, tau: &EquivariantMap) -> bool {
    !collapse_witnesses(analysis, tau).is_empty()
}

/// The type read off from the witness `(x, y)` after moving `x` so that
/// `G_x = H_i`; `None` when the two target classes disagree or `x, y` share an orbit.
pub fn type_from_witness(
    analysis: &Analysis,
    tau: &EquivariantMap,
    x: usize,
    y: usize,
) -> Option<CollapseType> {
    if analysis.orbit_of(x) == analysis.orbit_of(y) {
        return None;
    }
    let lattice = &analysis.lattice;
    let gset = &analysis.gset;
    let i = analysis.box_of(x);
    let h = analysis.boxes.boxes[i].representative;
    let sx = analysis.stabilizer_of(x);
    let g = gset
        .group()
        .elements()
        .find(|&g| lattice.conjugate(g, sx) == h)?;
    let (x, y) = (gset.act(g, x), gset.act(g, y));
    let n = lattice.normalizer(h);
    let via_image = lattice.n_conjugacy_class(analysis.stabilizer_of(tau.apply(x)), n);
    let via_partner = lattice.n_conjugacy_class(analysis.stabilizer_of(y), n);
    (via_image == via_partner).then_some(CollapseType {
        class_index: i,
        target_class: via_image,
    })
}

fn types_over(
    analysis: &Analysis,
    tau: &EquivariantMap,
    witnesses: &[(usize, usize)],
) -> BTreeSet<CollapseType> {
    witnesses
        .iter()
        .flat_map(|&(x, y)| {
            [
                type_from_witness(analysis, tau, x, y),
                type_from_witness(analysis, tau, y, x),
            ]
        })
        .flatten()
        .collect()
}

fn single_type(types: BTreeSet<CollapseType>) -> Result<CollapseType> {
    let mut it = types.into_iter();
    match (it.next(), it.next()) {
        (Some(t), None) => Ok(t),
        (None, _) => Err(Error::Domain(
            "map is not an elementary collapse with a type".into(),
        )),
        (Some(a), Some(b)) => Err(Error::StructureViolation(format!(
            "collapse has two types {a:?} and {b:?}"
        ))),
    }
}

/// The unique type of an elementary collapse.
pub fn collapse_type(analysis: &Analysis, tau: &EquivariantMap) -> Result<CollapseType> {
    single_type(types_over(
        analysis,
        tau,
        &collapse_witnesses(analysis, tau),
    ))
}

/// Every type obtainable from any witness pair `(x, y)` with `Gx ≠ Gy`,
/// searched over all ordered pairs of points.
pub fn collapse_types_all_witnesses(
    analysis: &Analysis,
    tau: &EquivariantMap,
) -> BTreeSet<CollapseType> {
    let m = tau.len();
    let mut witnesses = Vec::new();
    for x in 0..m {
        for y in 0..m {
            if analysis.orbit_of(x) != analysis.orbit_of(y)
                && tau.apply(x) == tau.apply(y)
                && generates_kernel(analysis, tau, x, y)
            {
                witnesses.push((x, y));
            }
        }
    }
    types_over(analysis, tau, &witnesses)
}

/// All realizable collapse types, found by classifying every push
/// `[x ↦ y]` with `G_x = H_i`, `G_x ≤ G_y` and `Gx ≠ Gy`.
pub fn collapse_type_census(analysis: &Analysis) -> Result<BTreeSet<CollapseType>> {
    let mut types = BTreeSet::new();
    for b in &analysis.boxes.boxes {
        let h = b.representative;
        for x in (0..analysis.size()).filter(|&x| analysis.stabilizer_of(x) == h) {
            for y in 0..analysis.size() {
                if analysis.orbit_of(x) != analysis.orbit_of(y) && analysis.stabilizer_leq(x, y) {
                    let push = point_push(&analysis.gset, x, y)?;
                    types.insert(collapse_type(analysis, &push)?);
                }
            }
        }
    }
    Ok(types)
}
