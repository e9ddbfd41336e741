//! Box decomposition of a finite G-set.
//!
//! The box of a conjugacy class `[H]` is the set of points whose stabilizer
//! lies in `[H]`. Boxes partition `X`, each box is a union of G-orbits of
//! equal size `[G : H]`, and the box splits further into sub-boxes `B_K`,
//! `K ∈ [H]`, of points with stabilizer exactly `K`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::gset::GSet;
use crate::lattice::SubgroupLattice;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubBox {
    pub subgroup: usize,
    pub points: Vec<usize>,
}

/// One nonempty box `B_[H_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassBox {
    /// Index into [`SubgroupLattice::classes`].
    pub class: usize,
    /// Canonical representative `H_i` (a subgroup index).
    pub representative: usize,
    pub points: Vec<usize>,
    /// G-orbits inside the box, ordered by smallest point.
    pub orbits: Vec<Vec<usize>>,
    /// Nonempty sub-boxes `B_K`, ordered by subgroup index.
    pub sub_boxes: Vec<SubBox>,
}

impl ClassBox {
    /// `α_i`: number of G-orbits in the box.
    pub fn alpha(&self) -> usize {
        self.orbits.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxDecomposition {
    /// Nonempty boxes in canonical class order; position `i` is the box of `H_i`.
    pub boxes: Vec<ClassBox>,
    /// Subgroup index of each point's stabilizer.
    pub stabilizer_of: Vec<usize>,
    pub orbit_of: Vec<usize>,
    pub box_of: Vec<usize>,
    /// All G-orbits, ordered by smallest point; `orbit_of` indexes this list.
    pub orbits: Vec<Vec<usize>>,
}

impl BoxDecomposition {
    pub fn new(gset: &GSet, lattice: &SubgroupLattice) -> Result<Self> {
        if **gset.group() != **lattice.group() {
            return Err(Error::Domain(
                "lattice was built for a different group".into(),
            ));
        }
        let m = gset.size();
        let mut stabilizer_of = Vec::with_capacity(m);
        for x in 0..m {
            let set = gset.stabilizer_set(x);
            stabilizer_of.push(lattice.index_of_set(&set).ok_or_else(|| {
                Error::Internal(format!("stabilizer of point {x} is not in the lattice"))
            })?);
        }
        let orbits = gset.orbits();
        let mut orbit_of = vec![0; m];
        for (o, orbit) in orbits.iter().enumerate() {
            for &x in orbit {
                orbit_of[x] = o;
            }
        }
        let classes = lattice.classes();
        let mut slot = vec![usize::MAX; classes.len()];
        let mut present: Vec<usize> = stabilizer_of.iter().map(|&h| lattice.class_of(h)).collect();
        present.sort_unstable();
        present.dedup();
        let mut boxes: Vec<ClassBox> = present
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                slot[c] = i;
                ClassBox {
                    class: c,
                    representative: classes[c].representative(),
                    points: Vec::new(),
                    orbits: Vec::new(),
                    sub_boxes: Vec::new(),
                }
            })
            .collect();
        let mut box_of = vec![0; m];
        for x in 0..m {
            let i = slot[lattice.class_of(stabilizer_of[x])];
            box_of[x] = i;
            boxes[i].points.push(x);
        }
        for orbit in &orbits {
            boxes[box_of[orbit[0]]].orbits.push(orbit.clone());
        }
        for b in &mut boxes {
            for &k in &classes[b.class].members {
                let points: Vec<usize> = b
                    .points
                    .iter()
                    .copied()
                    .filter(|&x| stabilizer_of[x] == k)
                    .collect();
                if !points.is_empty() {
                    b.sub_boxes.push(SubBox {
                        subgroup: k,
                        points,
                    });
                }
            }
        }
        Ok(BoxDecomposition {
            boxes,
            stabilizer_of,
            orbit_of,
            box_of,
            orbits,
        })
    }

    /// Position of the box for lattice class `class`, if nonempty.
    pub fn position_of_class(&self, class: usize) -> Option<usize> {
        self.boxes.iter().position(|b| b.class == class)
    }

    pub fn alphas(&self) -> Vec<usize> {
        self.boxes.iter().map(ClassBox::alpha).collect()
    }

    /// Subgroups occurring as point stabilizers, ascending.
    pub fn stabilizer_subgroups(&self) -> Vec<usize> {
        let mut v = self.stabilizer_of.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// A G-set together with its subgroup lattice and box decomposition.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub gset: GSet,
    pub lattice: Arc<SubgroupLattice>,
    pub boxes: BoxDecomposition,
}

impl Analysis {
    pub fn new(gset: GSet) -> Result<Self> {
        let lattice = Arc::new(SubgroupLattice::new(gset.group().clone())?);
        Self::with_lattice(gset, lattice)
    }

    pub fn with_lattice(gset: GSet, lattice: Arc<SubgroupLattice>) -> Result<Self> {
        let boxes = BoxDecomposition::new(&gset, &lattice)?;
        Ok(Analysis {
            gset,
            lattice,
            boxes,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.gset.group()
    }

    pub fn size(&self) -> usize {
        self.gset.size()
    }

    /// Subgroup index of `G_x`.
    pub fn stabilizer_of(&self, x: usize) -> usize {
        self.boxes.stabilizer_of[x]
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.boxes.orbit_of[x]
    }

    pub fn box_of(&self, x: usize) -> usize {
        self.boxes.box_of[x]
    }

    /// `G_x ≤ G_y`.
    pub fn stabilizer_leq(&self, x: usize, y: usize) -> bool {
        self.lattice
            .leq(self.stabilizer_of(x), self.stabilizer_of(y))
    }

    /// The box position holding points with stabilizer `h`, if any.
    fn box_of_subgroup(&self, h: usize) -> Option<usize> {
        self.boxes.position_of_class(self.lattice.class_of(h))
    }

    fn require_stabilizer(&self, h: usize) -> Result<usize> {
        let i = self
            .box_of_subgroup(h)
            .ok_or_else(|| Error::Domain(format!("subgroup {h} is not a point stabilizer")))?;
        Ok(i)
    }

    /// `α_[H]` through the Möbius function of the subgroup lattice:
    /// `([G:N_G(H)] / [G:H]) · Σ_{H ≤ K ≤ G} μ(H,K) |Fix(K)|`.
    pub fn alpha_moebius(&self, h: usize) -> Result<usize> {
        self.require_stabilizer(h)?;
        let lattice = &self.lattice;
        let mut sum: i128 = 0;
        for k in h..lattice.len() {
            if !lattice.leq(h, k) {
                continue;
            }
            let mu = lattice.moebius(h, k)? as i128;
            if mu != 0 {
                let fix = self.gset.fix(lattice.subgroup(k).elements()).len() as i128;
                sum += mu * fix;
            }
        }
        // [G:N]/[G:H] = |H| / |N|
        let num = sum * lattice.subgroup(h).order() as i128;
        let den = lattice.subgroup(lattice.normalizer(h)).order() as i128;
        if num % den != 0 || num < 0 {
            return Err(Error::Internal(format!(
                "Möbius orbit count {num}/{den} is not a non-negative integer"
            )));
        }
        Ok((num / den) as usize)
    }

    /// Number of `Aut_G(X)`-orbits in the box of `H`: `[G : N_G(H)]`,
    /// checked against the number of nonempty sub-boxes.
    pub fn aut_orbits_in_box(&self, h: usize) -> Result<usize> {
        let i = self.require_stabilizer(h)?;
        let n = self.group().order() / self.lattice.subgroup(self.lattice.normalizer(h)).order();
        let nonempty = self.boxes.boxes[i].sub_boxes.len();
        if n != nonempty {
            return Err(Error::StructureViolation(format!(
                "[G:N_G(H)] = {n} but the box has {nonempty} nonempty sub-boxes"
            )));
        }
        Ok(n)
    }

    /// `κ_G(X)`: positions of boxes holding exactly one G-orbit.
    pub fn kappa(&self) -> Vec<usize> {
        self.boxes
            .boxes
            .iter()
            .enumerate()
            .filter(|(_, b)| b.alpha() == 1)
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coset_analysis(group: FiniteGroup, sub: &[usize]) -> Analysis {
        let g = Arc::new(group);
        let l = Arc::new(SubgroupLattice::new(g.clone()).unwrap());
        let h = l.index_of_elements(sub).unwrap();
        let x = GSet::coset_action(g, l.subgroup(h)).unwrap();
        Analysis::with_lattice(x, l).unwrap()
    }

    #[test]
    fn transitive_action_has_one_box() {
        let a = coset_analysis(FiniteGroup::symmetric(3).unwrap(), &[0, 2]);
        assert_eq!(a.boxes.boxes.len(), 1);
        let b = &a.boxes.boxes[0];
        assert_eq!(b.alpha(), 1);
        // the three conjugates of a transposition subgroup each stabilize one coset
        assert_eq!(b.sub_boxes.len(), 3);
        assert_eq!(a.aut_orbits_in_box(b.representative), Ok(3));
        assert_eq!(a.alpha_moebius(b.representative), Ok(1));
        assert_eq!(a.kappa(), vec![0]);
    }

    #[test]
    fn non_stabilizer_is_rejected() {
        let a = coset_analysis(FiniteGroup::cyclic(4).unwrap(), &[0, 2]);
        let triv = a.lattice.trivial();
        assert!(matches!(a.alpha_moebius(triv), Err(Error::Domain(_))));
        assert!(matches!(a.aut_orbits_in_box(triv), Err(Error::Domain(_))));
    }

    #[test]
    fn whole_group_alpha_is_fixed_point_count() {
        let a = coset_analysis(FiniteGroup::cyclic(3).unwrap(), &[0, 1, 2]);
        assert_eq!(a.alpha_moebius(a.lattice.whole()), Ok(1));
    }
}
