//! Equivariant self-maps of a G-set, brute-force enumeration of the
//! endomorphism monoid and its unit group, and monoid closure.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::boxes::Analysis;
use crate::error::{check_budget, Error, Result};
use crate::gset::GSet;
use crate::perm;

/// Default cap on enumerations and closures.
pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

/// A self-map of a G-set stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivariantMap {
    image: Vec<usize>,
}

impl EquivariantMap {
    pub fn identity(size: usize) -> Self {
        EquivariantMap {
            image: (0..size).collect(),
        }
    }

    /// Checks the array against the action before accepting it.
    pub fn new(gset: &GSet, image: Vec<usize>) -> Result<Self> {
        if !is_equivariant(gset, &image) {
            return Err(Error::Domain("map is not G-equivariant".into()));
        }
        Ok(EquivariantMap { image })
    }

    pub(crate) fn from_image_unchecked(image: Vec<usize>) -> Self {
        EquivariantMap { image }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn into_image(self) -> Vec<usize> {
        self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &EquivariantMap) -> Result<EquivariantMap> {
        if self.len() != other.len() {
            return Err(Error::Domain(format!(
                "cannot compose maps on {} and {} points",
                self.len(),
                other.len()
            )));
        }
        Ok(EquivariantMap {
            image: perm::compose(&self.image, &other.image),
        })
    }

    pub fn is_bijective(&self) -> bool {
        perm::is_permutation(&self.image)
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<EquivariantMap> {
        self.is_bijective().then(|| EquivariantMap {
            image: perm::inverse(&self.image),
        })
    }

    /// Size of the image.
    pub fn rank(&self) -> usize {
        self.image.iter().collect::<HashSet<_>>().len()
    }

    /// Non-diagonal pairs `(a, b)` with `f(a) = f(b)`, both orders.
    pub fn kernel_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut pairs = BTreeSet::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if a != b && self.image[a] == self.image[b] {
                    pairs.insert((a, b));
                }
            }
        }
        pairs
    }

    /// Kernel classes as a labelling: points share a label iff they share an image.
    pub(crate) fn kernel_labels(&self) -> &[usize] {
        &self.image
    }
}

pub fn is_equivariant(gset: &GSet, image: &[usize]) -> bool {
    image.len() == gset.size()
        && image.iter().all(|&y| y < gset.size())
        && gset
            .group()
            .elements()
            .all(|g| (0..gset.size()).all(|x| image[gset.act(g, x)] == gset.act(g, image[x])))
}

/// `[x ↦ y]`: sends `g·x` to `g·y` and fixes every other point.
/// Needs `G_x ≤ G_y`.
pub fn point_push(gset: &GSet, x: usize, y: usize) -> Result<EquivariantMap> {
    let stab_x = gset.stabilizer_set(x);
    if !stab_x.is_subset(&gset.stabilizer_set(y)) {
        return Err(Error::StabilizerContainment { x, y });
    }
    let mut image: Vec<usize> = (0..gset.size()).collect();
    for g in gset.group().elements() {
        image[gset.act(g, x)] = gset.act(g, y);
    }
    Ok(EquivariantMap { image })
}

/// `[x ↔ y]`: swaps the orbits `Gx` and `Gy` pointwise (`g·x ↔ g·y`).
/// When `y` lies in the orbit of `x` it is the orbit translation `[x ↦ y]`.
/// Needs `G_x = G_y`.
pub fn point_swap(gset: &GSet, x: usize, y: usize) -> Result<EquivariantMap> {
    if gset.stabilizer_set(x) != gset.stabilizer_set(y) {
        return Err(Error::StabilizerEquality { x, y });
    }
    let orbit_x = gset.orbit(x);
    if orbit_x.binary_search(&y).is_ok() {
        return point_push(gset, x, y);
    }
    let mut image: Vec<usize> = (0..gset.size()).collect();
    for g in gset.group().elements() {
        image[gset.act(g, x)] = gset.act(g, y);
        image[gset.act(g, y)] = gset.act(g, x);
    }
    Ok(EquivariantMap { image })
}

/// Per-orbit data for enumeration: representative, its candidate targets,
/// and a transversal `(point, g)` with `g·rep = point`.
struct OrbitChoices {
    transversal: Vec<(usize, usize)>,
    targets: Vec<usize>,
}

fn orbit_choices(analysis: &Analysis, automorphisms: bool) -> Vec<OrbitChoices> {
    let gset = &analysis.gset;
    analysis
        .boxes
        .orbits
        .iter()
        .map(|orbit| {
            let rep = orbit[0];
            let mut transversal = Vec::with_capacity(orbit.len());
            let mut seen = vec![false; gset.size()];
            for g in gset.group().elements() {
                let p = gset.act(g, rep);
                if !seen[p] {
                    seen[p] = true;
                    transversal.push((p, g));
                }
            }
            let targets = (0..gset.size())
                .filter(|&y| {
                    if automorphisms {
                        analysis.stabilizer_of(rep) == analysis.stabilizer_of(y)
                    } else {
                        analysis.stabilizer_leq(rep, y)
                    }
                })
                .collect();
            OrbitChoices {
                transversal,
                targets,
            }
        })
        .collect()
}

/// `Π_x |{y : G_x ≤ G_y}|` over orbit representatives: the order of `End_G(X)`.
pub fn end_order(analysis: &Analysis) -> u128 {
    orbit_choices(analysis, false)
        .iter()
        .map(|c| c.targets.len() as u128)
        .fold(1u128, |acc, k| acc.saturating_mul(k))
}

fn enumerate_with(
    analysis: &Analysis,
    automorphisms: bool,
    cap: usize,
) -> Result<Vec<EquivariantMap>> {
    let choices = orbit_choices(analysis, automorphisms);
    let total = choices
        .iter()
        .map(|c| c.targets.len() as u128)
        .fold(1u128, |acc, k| acc.saturating_mul(k));
    check_budget("endomorphism enumeration", total, cap as u128)?;
    let gset = &analysis.gset;
    let mut out = Vec::new();
    let mut digits = vec![0usize; choices.len()];
    let mut image = vec![0usize; gset.size()];
    'outer: loop {
        for (c, &d) in choices.iter().zip(&digits) {
            let y = c.targets[d];
            for &(p, g) in &c.transversal {
                image[p] = gset.act(g, y);
            }
        }
        if !automorphisms || perm::is_permutation(&image) {
            out.push(EquivariantMap::from_image_unchecked(image.clone()));
        }
        for k in (0..digits.len()).rev() {
            digits[k] += 1;
            if digits[k] < choices[k].targets.len() {
                continue 'outer;
            }
            digits[k] = 0;
        }
        break;
    }
    out.sort();
    Ok(out)
}

/// Every equivariant self-map, by choosing an image with a larger-or-equal
/// stabilizer for one representative per orbit and propagating.
pub fn enumerate_end(analysis: &Analysis, cap: usize) -> Result<Vec<EquivariantMap>> {
    enumerate_with(analysis, false, cap)
}

/// Every equivariant bijection.
pub fn enumerate_aut(analysis: &Analysis, cap: usize) -> Result<Vec<EquivariantMap>> {
    enumerate_with(analysis, true, cap)
}

/// A finite monoid given by generators, with all its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidClosure {
    /// Elements in ascending order of image array.
    pub elements: Vec<EquivariantMap>,
    pub generators: Vec<EquivariantMap>,
}

impl MonoidClosure {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, f: &EquivariantMap) -> bool {
        self.elements.binary_search(f).is_ok()
    }
}

/// Closure of equivariant generators under composition, identity included.
pub fn closure(gset: &GSet, generators: &[EquivariantMap], cap: usize) -> Result<MonoidClosure> {
    if let Some(bad) = generators
        .iter()
        .position(|f| !is_equivariant(gset, f.image()))
    {
        return Err(Error::Domain(format!(
            "generator {bad} is not G-equivariant"
        )));
    }
    transformation_closure(gset.size(), generators, cap)
}

/// Breadth-first closure of arbitrary transformations of `0..degree`.
/// Exceeding `cap` is an error; partial closures are never returned.
pub fn transformation_closure(
    degree: usize,
    generators: &[EquivariantMap],
    cap: usize,
) -> Result<MonoidClosure> {
    if let Some(bad) = generators.iter().find(|f| f.len() != degree) {
        return Err(Error::Domain(format!(
            "generator acts on {} points, expected {degree}",
            bad.len()
        )));
    }
    let id = EquivariantMap::identity(degree);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.image.clone()]);
    let mut elements = vec![id.image.clone()];
    let mut queue = VecDeque::from([id.image]);
    while let Some(f) = queue.pop_front() {
        for s in generators {
            let h = perm::compose(&s.image, &f);
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return Err(Error::ClosureCapExceeded {
                        cap,
                        reached: seen.len(),
                    });
                }
                seen.insert(h.clone());
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    let mut elements: Vec<EquivariantMap> = elements
        .into_iter()
        .map(EquivariantMap::from_image_unchecked)
        .collect();
    elements.sort();
    Ok(MonoidClosure {
        elements,
        generators: generators.to_vec(),
    })
}

/// Closure of `{(0 1), (0 1 … n−1)}` on `n` points.
pub fn sym_generators_closure(n: usize) -> Result<MonoidClosure> {
    check_budget("symmetric generator check degree", n as u128, 6)?;
    transformation_closure(n, &sym_generators(n), DEFAULT_CLOSURE_CAP)
}

fn sym_generators(n: usize) -> Vec<EquivariantMap> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(EquivariantMap { image: t });
        gens.push(EquivariantMap {
            image: (0..n).map(|i| (i + 1) % n).collect(),
        });
    }
    gens
}

/// `0 ↦ 0, 1 ↦ 0`, identity elsewhere: a map of rank `n − 1`.
pub fn defect_one_map(n: usize) -> Option<EquivariantMap> {
    (n >= 2).then(|| {
        let mut image: Vec<usize> = (0..n).collect();
        image[1] = 0;
        EquivariantMap { image }
    })
}

/// Closure of the symmetric generators, optionally with the defect-one map.
pub fn trans_generators_closure(n: usize, with_defect_map: bool) -> Result<MonoidClosure> {
    check_budget("full transformation check degree", n as u128, 5)?;
    let mut gens = sym_generators(n);
    if with_defect_map {
        gens.extend(defect_one_map(n));
    }
    transformation_closure(n, &gens, DEFAULT_CLOSURE_CAP)
}

/// `true` iff the two standard generators reach all `n!` permutations.
pub fn sym_generators_check(n: usize) -> Result<bool> {
    Ok(sym_generators_closure(n)?.size() as u128 == factorial(n))
}

/// `true` iff the standard generators plus one rank-`(n−1)` map reach all `n^n` maps.
pub fn trans_generators_check(n: usize) -> Result<bool> {
    Ok(trans_generators_closure(n, true)?.size() as u128 == (n as u128).pow(n as u32))
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
