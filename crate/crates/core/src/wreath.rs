//! Wreath coordinates of endomorphisms restricted to a single box, and the
//! order formulas for `Aut_G(X)` and `End_G(B)`.

use crate::boxes::Analysis;
use crate::equivariant::{enumerate_aut, enumerate_end, factorial, EquivariantMap};
use crate::error::{Error, Result};
use crate::gset::GSet;

/// `τ` on a box written as `(σ_τ, f_τ)`: `τ(g·x_λ) = g·σ_τ(λ)·x_{f_τ(λ)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathFactors {
    /// Orbit map on the box's orbit list.
    pub orbit_map: Vec<usize>,
    /// Per orbit, the smallest element of the coset `σH` in `N_G(H)/H`.
    pub coset_map: Vec<usize>,
}

/// Base points `x_λ` of a box: the smallest point of each orbit fixed by exactly `H`.
pub fn base_points(analysis: &Analysis, position: usize) -> Result<Vec<usize>> {
    let b = analysis
        .boxes
        .boxes
        .get(position)
        .ok_or_else(|| Error::Domain(format!("no box at position {position}")))?;
    b.orbits
        .iter()
        .map(|o| {
            o.iter()
                .copied()
                .find(|&z| analysis.stabilizer_of(z) == b.representative)
                .ok_or_else(|| Error::Internal("orbit without a base point".into()))
        })
        .collect()
}

/// Smallest element of `gH`.
fn coset_min(analysis: &Analysis, h: usize, g: usize) -> usize {
    let group = analysis.group();
    analysis
        .lattice
        .subgroup(h)
        .elements()
        .iter()
        .map(|&k| group.mul(g, k))
        .min()
        .unwrap_or(g)
}

pub fn wreath_factorize(
    analysis: &Analysis,
    tau: &EquivariantMap,
    position: usize,
) -> Result<WreathFactors> {
    let base = base_points(analysis, position)?;
    let b = &analysis.boxes.boxes[position];
    if b.points
        .iter()
        .any(|&x| analysis.box_of(tau.apply(x)) != position)
    {
        return Err(Error::Domain(format!(
            "map does not preserve box {position}"
        )));
    }
    let gset = &analysis.gset;
    let local = |x: usize| b.orbits.iter().position(|o| o.binary_search(&x).is_ok());
    let mut orbit_map = Vec::with_capacity(base.len());
    let mut coset_map = Vec::with_capacity(base.len());
    for &x in &base {
        let t = tau.apply(x);
        let f = local(t).ok_or_else(|| Error::Internal("image outside the box orbits".into()))?;
        let s = gset
            .group()
            .elements()
            .find(|&g| gset.act(g, base[f]) == t)
            .ok_or_else(|| Error::Internal("image not reachable from its base point".into()))?;
        orbit_map.push(f);
        coset_map.push(s);
    }
    Ok(WreathFactors {
        orbit_map,
        coset_map,
    })
}

/// Factors of `π ∘ τ` from those of `π` and `τ`:
/// `f = f_π ∘ f_τ`, `σ(λ) = σ_τ(λ)·σ_π(f_τ(λ))` reduced mod `H`.
pub fn compose_factors(
    analysis: &Analysis,
    position: usize,
    pi: &WreathFactors,
    tau: &WreathFactors,
) -> WreathFactors {
    let h = analysis.boxes.boxes[position].representative;
    let group = analysis.group();
    let orbit_map = tau.orbit_map.iter().map(|&l| pi.orbit_map[l]).collect();
    let coset_map = (0..tau.orbit_map.len())
        .map(|l| {
            let g = group.mul(tau.coset_map[l], pi.coset_map[tau.orbit_map[l]]);
            coset_min(analysis, h, g)
        })
        .collect();
    WreathFactors {
        orbit_map,
        coset_map,
    }
}

/// Rebuilds the map on the box from its factors, identity elsewhere.
pub fn apply_factors(
    analysis: &Analysis,
    position: usize,
    factors: &WreathFactors,
) -> Result<EquivariantMap> {
    let base = base_points(analysis, position)?;
    let gset = &analysis.gset;
    let group = gset.group();
    let mut image: Vec<usize> = (0..gset.size()).collect();
    for (l, &x) in base.iter().enumerate() {
        let y = gset.act(factors.coset_map[l], base[factors.orbit_map[l]]);
        for g in group.elements() {
            image[gset.act(g, x)] = gset.act(g, y);
        }
    }
    EquivariantMap::new(gset, image)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxOrders {
    pub position: usize,
    /// `|N_i / H_i|`.
    pub quotient: usize,
    pub alpha: usize,
    /// `|N/H|^α · α!`
    pub predicted_aut: u128,
    /// `|N/H|^α · α^α`
    pub predicted_end: u128,
    pub enumerated_aut: Option<u128>,
    pub enumerated_end: Option<u128>,
    /// `|Aut_G(Gx)|` of one orbit, enumerated, against `|N/H|`.
    pub enumerated_orbit_aut: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathOrderReport {
    pub boxes: Vec<BoxOrders>,
    /// `Π_i |N_i/H_i|^{α_i} · α_i!`
    pub predicted_aut: u128,
    pub enumerated_aut: Option<u128>,
}

fn enumerate_if_feasible(gset: &GSet, cap: usize, aut: bool) -> Result<Option<u128>> {
    let a = Analysis::new(gset.clone())?;
    let r = if aut {
        enumerate_aut(&a, cap)
    } else {
        enumerate_end(&a, cap)
    };
    match r {
        Ok(v) => Ok(Some(v.len() as u128)),
        Err(Error::SizeLimit { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn mismatch(what: &str, predicted: u128, found: u128) -> Error {
    Error::StructureViolation(format!("{what}: predicted {predicted}, enumerated {found}"))
}

/// Predicted orders from the wreath structure, compared against enumeration
/// whenever it fits in `cap` maps.
pub fn wreath_order_checks(analysis: &Analysis, cap: usize) -> Result<WreathOrderReport> {
    let lattice = &analysis.lattice;
    let mut boxes = Vec::new();
    let mut predicted_aut: u128 = 1;
    for (i, b) in analysis.boxes.boxes.iter().enumerate() {
        let h = b.representative;
        let quotient =
            lattice.subgroup(lattice.normalizer(h)).order() / lattice.subgroup(h).order();
        let q = quotient as u128;
        let alpha = b.alpha();
        let qa = q.saturating_pow(alpha as u32);
        let p_aut = qa.saturating_mul(factorial(alpha));
        let p_end = qa.saturating_mul((alpha as u128).saturating_pow(alpha as u32));
        predicted_aut = predicted_aut.saturating_mul(p_aut);

        let (box_set, _) = analysis.gset.restrict_to_invariant(&b.points)?;
        let (orbit_set, _) = analysis.gset.restrict_to_invariant(&b.orbits[0])?;
        let e_aut = enumerate_if_feasible(&box_set, cap, true)?;
        let e_end = enumerate_if_feasible(&box_set, cap, false)?;
        let e_orbit = enumerate_if_feasible(&orbit_set, cap, true)?;
        for (what, p, e) in [
            ("box automorphisms", p_aut, e_aut),
            ("box endomorphisms", p_end, e_end),
            ("orbit automorphisms", q, e_orbit),
        ] {
            if let Some(e) = e {
                if e != p {
                    return Err(mismatch(what, p, e));
                }
            }
        }
        boxes.push(BoxOrders {
            position: i,
            quotient,
            alpha,
            predicted_aut: p_aut,
            predicted_end: p_end,
            enumerated_aut: e_aut,
            enumerated_end: e_end,
            enumerated_orbit_aut: e_orbit,
        });
    }
    let enumerated_aut = match enumerate_aut(analysis, cap) {
        Ok(v) => Some(v.len() as u128),
        Err(Error::SizeLimit { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(e) = enumerated_aut {
        if e != predicted_aut {
            return Err(mismatch("automorphism group", predicted_aut, e));
        }
    }
    Ok(WreathOrderReport {
        boxes,
        predicted_aut,
        enumerated_aut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::{point_swap, DEFAULT_CLOSURE_CAP};
    use crate::group::FiniteGroup;
    use crate::lattice::SubgroupLattice;
    use std::sync::Arc;

    /// Z_4 acting freely on two copies of itself.
    fn z4_free_box() -> Analysis {
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let l = SubgroupLattice::new(g.clone()).unwrap();
        let free = GSet::coset_action(g, l.subgroup(l.trivial())).unwrap();
        Analysis::new(GSet::disjoint_union(&free, &free).unwrap()).unwrap()
    }

    #[test]
    fn identity_factors() {
        let a = z4_free_box();
        let f = wreath_factorize(&a, &EquivariantMap::identity(8), 0).unwrap();
        assert_eq!(f.orbit_map, vec![0, 1]);
        assert_eq!(f.coset_map, vec![0, 0]);
    }

    #[test]
    fn swap_factors_to_a_transposition() {
        let a = z4_free_box();
        let s = point_swap(&a.gset, 0, 4).unwrap();
        let f = wreath_factorize(&a, &s, 0).unwrap();
        assert_eq!(f.orbit_map, vec![1, 0]);
        assert_eq!(f.coset_map, vec![0, 0]);
        assert_eq!(apply_factors(&a, 0, &f).unwrap(), s);
    }

    #[test]
    fn orders_on_free_box() {
        let a = z4_free_box();
        let r = wreath_order_checks(&a, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(r.predicted_aut, 32);
        assert_eq!(r.boxes[0].predicted_end, 64);
        assert_eq!(r.boxes[0].enumerated_end, Some(64));
        assert_eq!(r.enumerated_aut, Some(32));
    }

    #[test]
    fn leaving_the_box_is_rejected() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let a =
            Analysis::new(GSet::new(g, vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]).unwrap()).unwrap();
        let push = crate::equivariant::point_push(&a.gset, 1, 0).unwrap();
        let free = a.box_of(1);
        assert!(matches!(
            wreath_factorize(&a, &push, free),
            Err(Error::Domain(_))
        ));
    }
}
