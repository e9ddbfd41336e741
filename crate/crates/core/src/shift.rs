//! Configuration spaces `A^G` under the shift action and cellular automata
//! over a finite group.
//!
//! A configuration is stored as its integer encoding: base `q`, with the value
//! at the first element of the group's display order most significant. Point
//! `n` of the G-set is the configuration encoded by `n`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::boxes::Analysis;
use crate::equivariant::{is_equivariant, EquivariantMap};
use crate::error::{check_budget, Error, Result};
use crate::group::FiniteGroup;
use crate::gset::{GSet, DEFAULT_GSET_CELLS};

#[derive(Debug, Clone)]
pub struct ShiftSpace {
    group: Arc<FiniteGroup>,
    q: usize,
    gset: GSet,
}

impl ShiftSpace {
    pub fn build(group: Arc<FiniteGroup>, q: usize) -> Result<Self> {
        Self::build_within(group, q, DEFAULT_GSET_CELLS)
    }

    /// `(g·x)(h) = x(g⁻¹h)`; `budget` bounds `|G| · q^|G|`.
    pub fn build_within(group: Arc<FiniteGroup>, q: usize, budget: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!(
                "alphabet size must be at least 2, got {q}"
            )));
        }
        let n = group.order();
        let points = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        check_budget(
            "shift space action table",
            points.saturating_mul(n as u128),
            budget as u128,
        )?;
        let points = points as usize;
        let mut space = ShiftSpace {
            group: group.clone(),
            q,
            gset: GSet::new(group.clone(), vec![vec![0]; n])?,
        };
        let mut action = vec![0; n * points];
        for code in 0..points {
            let x = space.decode(code)?;
            for g in group.elements() {
                let gi = group.inv(g);
                let y: Vec<usize> = group.elements().map(|h| x[group.mul(gi, h)]).collect();
                action[g * points + code] = space.encode(&y)?;
            }
        }
        let labels = (0..points).map(|c| space.digits(c)).collect();
        space.gset = GSet::from_flat(group, points, action, Some(labels))?;
        Ok(space)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn alphabet_size(&self) -> usize {
        self.q
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    pub fn into_gset(self) -> GSet {
        self.gset
    }

    pub fn size(&self) -> usize {
        self.gset.size()
    }

    /// `config[g]` is the value at group element `g`.
    pub fn encode(&self, config: &[usize]) -> Result<usize> {
        if config.len() != self.group.order() {
            return Err(Error::Domain(format!(
                "configuration has {} entries, expected {}",
                config.len(),
                self.group.order()
            )));
        }
        let mut n = 0usize;
        for &g in self.group.display_order() {
            let d = config[g];
            if d >= self.q {
                return Err(Error::Domain(format!(
                    "symbol {d} outside alphabet of size {}",
                    self.q
                )));
            }
            n = n * self.q + d;
        }
        Ok(n)
    }

    pub fn decode(&self, code: usize) -> Result<Vec<usize>> {
        let order = self.group.order();
        let total = (self.q as u128).pow(order as u32);
        if code as u128 >= total {
            return Err(Error::Domain(format!(
                "code {code} out of range 0..{total}"
            )));
        }
        let mut config = vec![0; order];
        let mut n = code;
        for &g in self.group.display_order().iter().rev() {
            config[g] = n % self.q;
            n /= self.q;
        }
        Ok(config)
    }

    /// Digits in display order, e.g. `"011010"`.
    fn digits(&self, code: usize) -> String {
        let config = self.decode(code).expect("code in range");
        self.group
            .display_order()
            .iter()
            .map(|&g| std::char::from_digit(config[g] as u32, 36).unwrap_or('?'))
            .collect()
    }

    fn value_at(&self, code: usize, g: usize) -> usize {
        self.decode(code).expect("code in range")[g]
    }
}

/// `μ : A^S → A`, patterns encoded like configurations restricted to `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule {
    /// `S`, sorted by display position.
    memory_set: Vec<usize>,
    table: Vec<usize>,
}

impl LocalRule {
    pub fn new(space: &ShiftSpace, memory_set: &[usize], table: Vec<usize>) -> Result<Self> {
        let group = space.group();
        if memory_set.iter().any(|&s| s >= group.order()) {
            return Err(Error::Domain("memory set element outside the group".into()));
        }
        let mut s = memory_set.to_vec();
        s.sort_unstable();
        s.dedup();
        let position = display_positions(group);
        s.sort_by_key(|&g| position[g]);
        let expected = (space.q as u128).pow(s.len() as u32);
        if table.len() as u128 != expected {
            return Err(Error::Domain(format!(
                "rule table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= space.q) {
            return Err(Error::Domain(format!(
                "rule output {bad} outside the alphabet"
            )));
        }
        Ok(LocalRule {
            memory_set: s,
            table,
        })
    }

    pub fn memory_set(&self) -> &[usize] {
        &self.memory_set
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

fn display_positions(group: &FiniteGroup) -> Vec<usize> {
    let mut position = vec![0; group.order()];
    for (k, &g) in group.display_order().iter().enumerate() {
        position[g] = k;
    }
    position
}

/// `τ(x)(g) = μ(s ↦ x(g s))`.
pub fn ca_from_rule(space: &ShiftSpace, rule: &LocalRule) -> Result<EquivariantMap> {
    let group = space.group();
    let mut image = Vec::with_capacity(space.size());
    for code in 0..space.size() {
        let x = space.decode(code)?;
        let y: Vec<usize> = group
            .elements()
            .map(|g| {
                let pattern = rule
                    .memory_set
                    .iter()
                    .fold(0, |acc, &s| acc * space.q + x[group.mul(g, s)]);
                rule.table[pattern]
            })
            .collect();
        image.push(space.encode(&y)?);
    }
    EquivariantMap::new(space.gset(), image)
}

/// The local rule with memory set `G`: `μ(x) = τ(x)(e)`.
pub fn rule_from_map(space: &ShiftSpace, tau: &EquivariantMap) -> Result<LocalRule> {
    if !is_equivariant(space.gset(), tau.image()) {
        return Err(Error::Domain("map is not G-equivariant".into()));
    }
    let e = space.group().identity();
    let table = (0..space.size())
        .map(|code| space.value_at(tau.apply(code), e))
        .collect();
    let all: Vec<usize> = space.group().elements().collect();
    LocalRule::new(space, &all, table)
}

/// Whether `τ(x)(e)` is a function of `x|_S`.
pub fn is_memory_set(
    space: &ShiftSpace,
    tau: &EquivariantMap,
    memory_set: &[usize],
) -> Result<bool> {
    let e = space.group().identity();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for code in 0..space.size() {
        let x = space.decode(code)?;
        let key: Vec<usize> = memory_set.iter().map(|&s| x[s]).collect();
        let v = space.value_at(tau.apply(code), e);
        if *seen.entry(key).or_insert(v) != v {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `S_0 = {s : τ(x)(e) depends on x(s)}`, in display order.
pub fn minimal_memory_set(space: &ShiftSpace, tau: &EquivariantMap) -> Result<Vec<usize>> {
    if !is_equivariant(space.gset(), tau.image()) {
        return Err(Error::Domain("map is not G-equivariant".into()));
    }
    let group = space.group();
    let e = group.identity();
    let mut s0 = Vec::new();
    for &s in group.display_order() {
        let depends = (0..space.size()).any(|code| {
            let mut x = space.decode(code).expect("code in range");
            let v = space.value_at(tau.apply(code), e);
            (0..space.q).any(|a| {
                x[s] = a;
                let other = space.encode(&x).expect("valid symbol");
                space.value_at(tau.apply(other), e) != v
            })
        });
        if depends {
            s0.push(s);
        }
    }
    Ok(s0)
}

/// The inverse of a bijective cellular automaton, again as a local rule.
pub fn inverse_rule(space: &ShiftSpace, tau: &EquivariantMap) -> Result<Option<LocalRule>> {
    tau.inverse()
        .map(|inv| rule_from_map(space, &inv))
        .transpose()
}

/// Box positions with a single orbit as predicted for full shifts: the
/// index-2 classes when `q = 2`, none otherwise.
pub fn kappa_shortcut(space: &ShiftSpace, analysis: &Analysis) -> Vec<usize> {
    if space.q != 2 {
        return Vec::new();
    }
    let n = space.group().order();
    analysis
        .boxes
        .boxes
        .iter()
        .enumerate()
        .filter(|(_, b)| analysis.lattice.subgroup(b.representative).order() * 2 == n)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift(g: FiniteGroup, q: usize) -> ShiftSpace {
        ShiftSpace::build(Arc::new(g), q).unwrap()
    }

    #[test]
    fn encoding() {
        let z6 = shift(FiniteGroup::cyclic(6).unwrap(), 2);
        assert_eq!(z6.encode(&[0; 6]).unwrap(), 0);
        assert_eq!(z6.encode(&[0, 1, 1, 0, 1, 0]).unwrap(), 26);
        assert_eq!(z6.decode(26).unwrap(), vec![0, 1, 1, 0, 1, 0]);
        assert!(z6.decode(64).is_err());
        assert!(z6.encode(&[0, 2, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn z4_orbit_of_one() {
        let z4 = shift(FiniteGroup::cyclic(4).unwrap(), 2);
        assert_eq!(z4.encode(&[0, 0, 0, 1]).unwrap(), 1);
        assert_eq!(z4.gset().orbit(1), vec![1, 2, 4, 8]);
    }

    #[test]
    fn shift_action_examples() {
        let z6 = shift(FiniteGroup::cyclic(6).unwrap(), 2);
        assert_eq!(z6.gset().act(1, 6), 3);
        let s3 = shift(FiniteGroup::s3_letters(), 2);
        let order = s3.group().display_order().to_vec();
        let a = order[1];
        // (0,0,0,1,1,0) in the order e, a, b, c, f, g
        let x = 0b000110;
        assert_eq!(s3.gset().act(a, x), 0b001001);
    }

    #[test]
    fn identity_rule_and_constant_rule() {
        let z4 = shift(FiniteGroup::cyclic(4).unwrap(), 2);
        let id = LocalRule::new(&z4, &[0], vec![0, 1]).unwrap();
        let t = ca_from_rule(&z4, &id).unwrap();
        assert_eq!(t, EquivariantMap::identity(16));
        assert_eq!(minimal_memory_set(&z4, &t).unwrap(), vec![0]);
        let zero = LocalRule::new(&z4, &[], vec![0]).unwrap();
        let c = ca_from_rule(&z4, &zero).unwrap();
        assert!(c.image().iter().all(|&y| y == 0));
        assert!(minimal_memory_set(&z4, &c).unwrap().is_empty());
    }

    #[test]
    fn xor_rule() {
        let z4 = shift(FiniteGroup::cyclic(4).unwrap(), 2);
        let xor = LocalRule::new(&z4, &[0, 1], vec![0, 1, 1, 0]).unwrap();
        let t = ca_from_rule(&z4, &xor).unwrap();
        assert!(!t.is_bijective());
        for code in 0..16 {
            let x = z4.decode(code).unwrap();
            let y = z4.decode(t.apply(code)).unwrap();
            assert_eq!(y[0], x[0] ^ x[1]);
        }
        assert_eq!(minimal_memory_set(&z4, &t).unwrap(), vec![0, 1]);
        assert!(is_memory_set(&z4, &t, &[0, 1]).unwrap());
        assert!(!is_memory_set(&z4, &t, &[0]).unwrap());
        let back = rule_from_map(&z4, &t).unwrap();
        assert_eq!(ca_from_rule(&z4, &back).unwrap(), t);
    }

    #[test]
    fn non_equivariant_map_has_no_rule() {
        let z2 = shift(FiniteGroup::cyclic(2).unwrap(), 2);
        let bad = EquivariantMap::identity(4);
        assert!(rule_from_map(&z2, &bad).is_ok());
        let f = crate::equivariant::EquivariantMap::from_image_unchecked(vec![0, 1, 3, 3]);
        assert!(rule_from_map(&z2, &f).is_err());
    }

    #[test]
    fn budget_guard() {
        let big = Arc::new(FiniteGroup::cyclic(40).unwrap());
        assert!(matches!(
            ShiftSpace::build(big, 2),
            Err(Error::SizeLimit { .. })
        ));
        assert!(ShiftSpace::build(Arc::new(FiniteGroup::cyclic(2).unwrap()), 1).is_err());
    }
}
