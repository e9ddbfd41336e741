//! Text specifications for groups, G-sets and local rules.
//!
//! Groups: `Z<n>`, `S<n>`, `D<n>` (order `2n`), `Q8`, `perm:<degree>:<gen>;<gen>…`
//! with generators in cycle notation such as `(0 1)(2 3)`, and products of
//! any of these joined by `x`, e.g. `Z2xZ2`.
//!
//! G-sets: `shift:q=<n>`, `cosets:<elements>` (cosets of the subgroup the
//! listed elements generate; elements by index or label, comma separated,
//! braces optional) and `union:<spec>+<spec>+…`.
//!
//! Parsing never allocates tables; sizes are checked again when building.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_GROUP_BUDGET};
use crate::gset::{GSet, DEFAULT_GSET_CELLS};
use crate::lattice::SubgroupLattice;
use crate::perm;
use crate::shift::ShiftSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
    Quaternion,
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Product(Vec<GroupSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GSetSpec {
    Shift { q: usize },
    Cosets(Vec<String>),
    Union(Vec<GSetSpec>),
}

fn parse_number(text: &str, offset: usize) -> Result<usize> {
    text.trim()
        .parse::<usize>()
        .map_err(|_| Error::parse(text, offset, "expected a non-negative integer"))
}

pub fn parse_group(spec: &str) -> Result<GroupSpec> {
    if spec.trim().is_empty() {
        return Err(Error::parse(spec, 0, "empty group specification"));
    }
    let mut factors = Vec::new();
    let mut offset = 0;
    for part in spec.split('x') {
        factors.push(parse_factor(part, offset)?);
        offset += part.len() + 1;
    }
    Ok(if factors.len() == 1 {
        factors.pop().expect("one factor")
    } else {
        GroupSpec::Product(factors)
    })
}

fn parse_factor(part: &str, offset: usize) -> Result<GroupSpec> {
    if part.is_empty() {
        return Err(Error::parse(part, offset, "missing group factor"));
    }
    if let Some(rest) = part.strip_prefix("perm:") {
        return parse_perm(rest, offset + 5);
    }
    if part == "Q8" {
        return Ok(GroupSpec::Quaternion);
    }
    let (head, digits) = part.split_at(1);
    let n = parse_number(digits, offset + 1)?;
    let spec = match head {
        "Z" => GroupSpec::Cyclic(n),
        "S" => GroupSpec::Symmetric(n),
        "D" => GroupSpec::Dihedral(n),
        _ => {
            return Err(Error::parse(
                part,
                offset,
                "unknown group; expected Z<n>, S<n>, D<n>, Q8 or perm:<degree>:<cycles>",
            ))
        }
    };
    if n == 0 {
        return Err(Error::parse(part, offset, "order must be positive"));
    }
    Ok(spec)
}

fn parse_perm(rest: &str, offset: usize) -> Result<GroupSpec> {
    let (deg, gens) = rest
        .split_once(':')
        .ok_or_else(|| Error::parse(rest, offset, "expected perm:<degree>:<cycles;...>"))?;
    let degree = parse_number(deg, offset)?;
    let mut generators = Vec::new();
    let mut pos = offset + deg.len() + 1;
    for g in gens.split(';') {
        let cycles = parse_cycles(g, pos)?;
        let p =
            perm::from_cycles(degree, &cycles).map_err(|e| Error::parse(g, pos, e.to_string()))?;
        generators.push(p);
        pos += g.len() + 1;
    }
    Ok(GroupSpec::Perm { degree, generators })
}

/// `(0 1)(2 3)`; points may also be comma separated. `()` is the identity.
pub fn parse_cycles(text: &str, offset: usize) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim_start();
    let mut pos = offset + (text.len() - rest.len());
    if rest.is_empty() {
        return Err(Error::parse(text, offset, "empty generator"));
    }
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::parse(rest, pos, "expected '('"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::parse(rest, pos, "unclosed cycle"))?;
        let body = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in body.split([' ', ',']).filter(|t| !t.is_empty()) {
            cycle.push(parse_number(tok, pos + 1)?);
        }
        cycles.push(cycle);
        let after = &rest[close + 1..];
        let trimmed = after.trim_start();
        pos += close + 1 + (after.len() - trimmed.len());
        rest = trimmed;
    }
    Ok(cycles)
}

impl GroupSpec {
    /// Order when it is known without building the group.
    pub fn predicted_order(&self) -> Option<u128> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n as u128),
            GroupSpec::Symmetric(n) => (1..=*n as u128).try_fold(1u128, |a, k| a.checked_mul(k)),
            GroupSpec::Dihedral(n) => Some(2 * *n as u128),
            GroupSpec::Quaternion => Some(8),
            GroupSpec::Perm { .. } => None,
            GroupSpec::Product(fs) => fs.iter().try_fold(1u128, |a, f| {
                f.predicted_order().and_then(|o| a.checked_mul(o))
            }),
        }
    }

    /// `S3` uses the letter display order `e, a, b, c, f, g`.
    pub fn build(&self, budget: usize) -> Result<FiniteGroup> {
        if let Some(order) = self.predicted_order() {
            if order > budget as u128 {
                return Err(Error::SizeLimit {
                    what: "group",
                    size: order,
                    budget: budget as u128,
                });
            }
        } else if matches!(self, GroupSpec::Product(_) | GroupSpec::Symmetric(_)) {
            return Err(Error::SizeLimit {
                what: "group",
                size: u128::MAX,
                budget: budget as u128,
            });
        }
        match self {
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic_within(*n, budget),
            GroupSpec::Symmetric(3) => Ok(FiniteGroup::s3_letters()),
            GroupSpec::Symmetric(n) => FiniteGroup::symmetric_within(*n, budget),
            GroupSpec::Dihedral(n) => FiniteGroup::dihedral_within(*n, budget),
            GroupSpec::Quaternion => Ok(FiniteGroup::quaternion()),
            GroupSpec::Perm { degree, generators } => {
                FiniteGroup::from_permutation_generators_within(*degree, generators, budget)
            }
            GroupSpec::Product(fs) => {
                let mut it = fs.iter();
                let mut acc = it.next().expect("nonempty product").build(budget)?;
                for f in it {
                    acc = FiniteGroup::direct_product_within(&acc, &f.build(budget)?, budget)?;
                }
                Ok(acc)
            }
        }
    }
}

pub fn parse_gset(spec: &str) -> Result<GSetSpec> {
    parse_gset_at(spec, 0)
}

fn parse_gset_at(spec: &str, offset: usize) -> Result<GSetSpec> {
    if let Some(rest) = spec.strip_prefix("union:") {
        let mut parts = Vec::new();
        let mut pos = offset + 6;
        for p in rest.split('+') {
            parts.push(parse_gset_at(p, pos)?);
            pos += p.len() + 1;
        }
        if parts.len() < 2 {
            return Err(Error::parse(
                spec,
                offset,
                "a union needs at least two parts",
            ));
        }
        return Ok(GSetSpec::Union(parts));
    }
    if let Some(rest) = spec.strip_prefix("shift:") {
        return Ok(GSetSpec::Shift {
            q: parse_alphabet(rest, offset + 6)?,
        });
    }
    if let Some(rest) = spec.strip_prefix("cosets:") {
        return Ok(GSetSpec::Cosets(parse_element_list(rest)));
    }
    Err(Error::parse(
        spec,
        offset,
        "unknown G-set; expected shift:q=<n>, cosets:<elements> or union:<a>+<b>",
    ))
}

/// `q=<n>` with `n ≥ 2`.
pub fn parse_alphabet(text: &str, offset: usize) -> Result<usize> {
    let digits = text
        .strip_prefix("q=")
        .ok_or_else(|| Error::parse(text, offset, "expected q=<alphabet size>"))?;
    let q = parse_number(digits, offset + 2)?;
    if q < 2 {
        return Err(Error::parse(
            text,
            offset,
            "alphabet size must be at least 2",
        ));
    }
    Ok(q)
}

fn parse_element_list(text: &str) -> Vec<String> {
    text.trim_start_matches('{')
        .trim_end_matches('}')
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(String::from)
        .collect()
}

/// Looks an element up by label first, then by index.
pub fn resolve_element(group: &FiniteGroup, token: &str) -> Result<usize> {
    if let Some(g) = group.elements().find(|&g| group.label(g) == token) {
        return Ok(g);
    }
    match token.parse::<usize>() {
        Ok(g) if g < group.order() => Ok(g),
        _ => Err(Error::parse(token, 0, "not an element of the group")),
    }
}

/// A built G-set, keeping the shift structure when there is one.
#[derive(Debug, Clone)]
pub enum BuiltGSet {
    Shift(ShiftSpace),
    Plain(GSet),
}

impl BuiltGSet {
    pub fn gset(&self) -> &GSet {
        match self {
            BuiltGSet::Shift(s) => s.gset(),
            BuiltGSet::Plain(g) => g,
        }
    }

    pub fn shift(&self) -> Option<&ShiftSpace> {
        match self {
            BuiltGSet::Shift(s) => Some(s),
            BuiltGSet::Plain(_) => None,
        }
    }

    pub fn into_gset(self) -> GSet {
        match self {
            BuiltGSet::Shift(s) => s.into_gset(),
            BuiltGSet::Plain(g) => g,
        }
    }
}

impl GSetSpec {
    /// `budget` bounds the action table in cells (`|G| · |X|`).
    pub fn build(&self, group: &Arc<FiniteGroup>, budget: usize) -> Result<BuiltGSet> {
        match self {
            GSetSpec::Shift { q } => Ok(BuiltGSet::Shift(ShiftSpace::build_within(
                group.clone(),
                *q,
                budget,
            )?)),
            GSetSpec::Cosets(tokens) => {
                let gens = tokens
                    .iter()
                    .map(|t| resolve_element(group, t))
                    .collect::<Result<Vec<_>>>()?;
                let lattice = SubgroupLattice::new(group.clone())?;
                let h = lattice
                    .index_of_elements(&group.span(&gens))
                    .ok_or_else(|| Error::Internal("generated subgroup not in lattice".into()))?;
                Ok(BuiltGSet::Plain(GSet::coset_action(
                    group.clone(),
                    lattice.subgroup(h),
                )?))
            }
            GSetSpec::Union(parts) => {
                let mut it = parts.iter();
                let mut acc = it
                    .next()
                    .expect("union has parts")
                    .build(group, budget)?
                    .into_gset();
                for p in it {
                    acc = GSet::disjoint_union(&acc, &p.build(group, budget)?.into_gset())?;
                }
                Ok(BuiltGSet::Plain(acc))
            }
        }
    }
}

/// Group and G-set from their specifications with default budgets.
pub fn build_specs(group: &str, gset: &str) -> Result<(Arc<FiniteGroup>, BuiltGSet)> {
    let gs = parse_group(group)?;
    let xs = parse_gset(gset)?;
    let g = Arc::new(gs.build(DEFAULT_GROUP_BUDGET)?);
    let x = xs.build(&g, DEFAULT_GSET_CELLS)?;
    Ok((g, x))
}

/// `<memory set>:<table>`, e.g. `0,1:0110`. The memory set lists elements by
/// label or index; the table lists outputs for patterns `0, 1, …` as digits
/// or comma-separated numbers.
pub fn parse_rule(text: &str, group: &FiniteGroup) -> Result<(Vec<usize>, Vec<usize>)> {
    let (s, t) = text
        .rsplit_once(':')
        .ok_or_else(|| Error::parse(text, 0, "expected <memory set>:<rule table>"))?;
    let memory = parse_element_list(s)
        .iter()
        .map(|tok| resolve_element(group, tok))
        .collect::<Result<Vec<_>>>()?;
    let at = s.len() + 1;
    let table = if t.contains(',') {
        t.split(',')
            .map(|d| parse_number(d, at))
            .collect::<Result<Vec<_>>>()?
    } else {
        t.chars()
            .enumerate()
            .map(|(k, c)| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::parse(&c.to_string(), at + k, "expected a digit"))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok((memory, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs() {
        assert_eq!(parse_group("Z4").unwrap(), GroupSpec::Cyclic(4));
        assert_eq!(
            parse_group("Z2xZ2").unwrap(),
            GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)])
        );
        let p = parse_group("perm:4:(0 1)(2 3)").unwrap();
        assert_eq!(p.build(100).unwrap().order(), 2);
        let s3 = parse_group("perm:3:(0 1);(0 1 2)").unwrap();
        assert_eq!(s3.build(100).unwrap().order(), 6);
        assert_eq!(parse_group("D4").unwrap().build(100).unwrap().order(), 8);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_group("Z2xW3") {
            Err(Error::Parse {
                token, position, ..
            }) => {
                assert_eq!(token, "W3");
                assert_eq!(position, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_group("perm:3:(0 1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_group("perm:3:(0 5)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_group("Z0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_gset("shift:q=1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_gset("orbit:3"), Err(Error::Parse { .. })));
    }

    #[test]
    fn budget_checked_before_allocation() {
        let g = parse_group("Z1000000").unwrap();
        assert!(matches!(
            g.build(DEFAULT_GROUP_BUDGET),
            Err(Error::SizeLimit { .. })
        ));
        let big = parse_group("S30").unwrap();
        assert!(matches!(
            big.build(DEFAULT_GROUP_BUDGET),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn gset_specs() {
        let (g, x) = build_specs("S3", "cosets:a").unwrap();
        assert_eq!(x.gset().size(), 3);
        assert!(x.gset().is_transitive());
        assert_eq!(g.label(g.display_order()[1]), "a");
        let (_, u) = build_specs("Z4", "union:cosets:{0}+cosets:2+shift:q=2").unwrap();
        assert_eq!(u.gset().size(), 4 + 2 + 16);
        let (_, s) = build_specs("Z2", "shift:q=3").unwrap();
        assert_eq!(s.shift().unwrap().size(), 9);
    }

    #[test]
    fn rules() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(
            parse_rule("0,1:0110", &g).unwrap(),
            (vec![0, 1], vec![0, 1, 1, 0])
        );
        assert_eq!(parse_rule("{}:1", &g).unwrap(), (vec![], vec![1]));
        assert!(parse_rule("0,9:01", &g).is_err());
    }
}
