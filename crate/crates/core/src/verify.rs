//! Named property checks over one G-set, shared by the command-line
//! `verify` and `rank --verify` paths.

use std::collections::BTreeSet;

use crate::boxes::Analysis;
use crate::equivariant::{closure, end_order, enumerate_aut, enumerate_end, EquivariantMap};
use crate::error::{Error, Result};
use crate::rank::{
    aut_generators, collapse_type, collapse_type_census, decompose_by_boxes,
    is_elementary_collapse, recompose, relative_rank,
};
use crate::shift::{ca_from_rule, kappa_shortcut, rule_from_map, ShiftSpace};
use crate::wreath::wreath_order_checks;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.status, Status::Fail(_)))
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, Status::Fail(_)))
            .collect()
    }

    fn push(&mut self, name: &'static str, status: Status) {
        self.checks.push(Check { name, status });
    }

    fn expect(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let status = if ok {
            Status::Pass
        } else {
            Status::Fail(detail())
        };
        self.push(name, status);
    }

    /// Records a computation's error as a failure, or a budget overrun as a skip.
    fn record_result(&mut self, name: &'static str, r: Result<Status>) {
        let status = match r {
            Ok(s) => s,
            Err(e @ (Error::SizeLimit { .. } | Error::ClosureCapExceeded { .. })) => {
                Status::Skipped(e.to_string())
            }
            Err(e) => Status::Fail(e.to_string()),
        };
        self.push(name, status);
    }
}

/// Largest `|End|` for which every element is decomposed and recomposed.
pub const DECOMPOSITION_LIMIT: usize = 10_000;
/// Largest `|End|` for which the non-unit ideal property is checked on all pairs.
pub const IDEAL_LIMIT: usize = 512;
/// Largest `|End|` for which every elementary collapse is classified.
pub const CENSUS_LIMIT: usize = 5_000;

fn counts(ok: bool, detail: String) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail(detail)
    }
}

/// Runs every property that fits into `cap` (enumeration and closure size).
pub fn verify(analysis: &Analysis, shift: Option<&ShiftSpace>, cap: usize) -> VerifyReport {
    let mut report = VerifyReport::default();
    let gset = &analysis.gset;
    let group = analysis.group();
    let lattice = &analysis.lattice;

    let orbits = analysis.boxes.orbits.len();
    report.record_result(
        "burnside-orbit-count",
        gset.burnside_orbit_count().map(|b| {
            counts(
                b == orbits,
                format!("Burnside gives {b}, direct count {orbits}"),
            )
        }),
    );

    let sizes_ok = analysis.boxes.boxes.iter().all(|b| {
        let h = lattice.subgroup(b.representative).order();
        b.orbits.iter().all(|o| o.len() * h == group.order())
    }) && analysis
        .boxes
        .boxes
        .iter()
        .map(|b| b.points.len())
        .sum::<usize>()
        == gset.size();
    report.expect("boxes-partition-uniformly", sizes_ok, || {
        "box sizes or orbit sizes disagree with orbit-stabilizer".into()
    });

    let conj_ok = (0..gset.size()).all(|x| {
        group.elements().all(|g| {
            analysis.stabilizer_of(gset.act(g, x))
                == lattice.conjugate(g, analysis.stabilizer_of(x))
        })
    });
    report.expect("stabilizers-conjugate-along-orbits", conj_ok, || {
        "G_{g·x} differs from g G_x g⁻¹".into()
    });

    report.record_result(
        "moebius-alpha",
        analysis
            .boxes
            .boxes
            .iter()
            .map(|b| Ok((b.alpha(), analysis.alpha_moebius(b.representative)?)))
            .collect::<Result<Vec<_>>>()
            .map(|pairs| {
                let bad: Vec<_> = pairs.iter().filter(|(a, m)| a != m).collect();
                counts(
                    bad.is_empty(),
                    format!("(direct, Möbius) mismatches: {bad:?}"),
                )
            }),
    );

    report.record_result(
        "aut-orbits-per-box",
        analysis
            .boxes
            .boxes
            .iter()
            .try_for_each(|b| analysis.aut_orbits_in_box(b.representative).map(|_| ()))
            .map(|_| Status::Pass),
    );

    report.record_result(
        "wreath-orders",
        wreath_order_checks(analysis, cap).map(|_| Status::Pass),
    );

    let rank = relative_rank(analysis);
    report.record_result(
        "rank-formula",
        rank.as_ref().map(|_| Status::Pass).map_err(Clone::clone),
    );
    let Ok(rank) = rank else {
        return report;
    };
    report.record_result(
        "collapse-type-census",
        collapse_type_census(analysis).map(|t| {
            counts(
                t.len() == rank.relative_rank,
                format!("{} types but relative rank {}", t.len(), rank.relative_rank),
            )
        }),
    );
    let v_types: BTreeSet<_> = rank
        .generating_set
        .iter()
        .map(|g| collapse_type(analysis, &g.map))
        .collect::<Result<_>>()
        .unwrap_or_default();
    report.expect(
        "generators-have-distinct-types",
        v_types.len() == rank.generating_set.len()
            && rank
                .generating_set
                .iter()
                .all(|g| collapse_type(analysis, &g.map).as_ref() == Ok(&g.collapse_type)),
        || "generating set elements do not realize distinct recorded types".into(),
    );

    if let Some(space) = shift {
        let short = kappa_shortcut(space, analysis);
        report.expect("kappa-shortcut", short == rank.kappa, || {
            format!("shortcut {short:?}, direct {:?}", rank.kappa)
        });
    }

    let predicted_end = end_order(analysis);
    let end = match enumerate_end(analysis, cap) {
        Ok(e) => e,
        Err(e) => {
            for name in [
                "end-enumeration",
                "aut-generators",
                "generation",
                "irredundancy",
                "decomposition",
                "collapse-classification",
                "non-units-ideal",
                "curtis-hedlund",
            ] {
                report.push(name, Status::Skipped(e.to_string()));
            }
            return report;
        }
    };
    let all_equivariant = end
        .iter()
        .all(|f| crate::equivariant::is_equivariant(gset, f.image()));
    report.expect(
        "end-enumeration",
        all_equivariant && end.len() as u128 == predicted_end,
        || {
            format!(
                "enumerated {} maps, product formula {predicted_end}",
                end.len()
            )
        },
    );

    let aut_gens = aut_generators(analysis);
    report.record_result(
        "aut-generators",
        aut_gens.clone().and_then(|gens| {
            let aut = enumerate_aut(analysis, cap)?;
            let c = closure(gset, &gens, cap)?;
            Ok(counts(
                c.elements == aut,
                format!("closure has {} elements, |Aut| = {}", c.size(), aut.len()),
            ))
        }),
    );
    let v = rank.generator_maps();
    report.record_result(
        "generation",
        aut_gens.clone().and_then(|gens| {
            let mut all = gens;
            all.extend(v.iter().cloned());
            let c = closure(gset, &all, cap)?;
            Ok(counts(
                c.elements == end,
                format!("closure has {} elements, |End| = {}", c.size(), end.len()),
            ))
        }),
    );
    report.record_result(
        "irredundancy",
        aut_gens.and_then(|gens| {
            for skip in 0..v.len() {
                let mut all = gens.clone();
                all.extend(
                    v.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != skip)
                        .map(|(_, f)| f.clone()),
                );
                let c = closure(gset, &all, cap)?;
                if c.size() >= end.len() {
                    return Ok(Status::Fail(format!(
                        "generator {} is redundant",
                        rank.generating_set[skip].tag
                    )));
                }
            }
            Ok(Status::Pass)
        }),
    );

    if end.len() <= DECOMPOSITION_LIMIT {
        report.record_result(
            "decomposition",
            end.iter()
                .try_fold(true, |ok, f| {
                    let parts = decompose_by_boxes(analysis, f)?;
                    let same = match recompose(&parts)? {
                        Some(r) => r == *f,
                        None => f.is_empty(),
                    };
                    Ok(ok && same)
                })
                .map(|ok| counts(ok, "a map does not recompose from its box parts".into())),
        );
    } else {
        report.push(
            "decomposition",
            Status::Skipped(format!("|End| = {} too large", end.len())),
        );
    }

    if end.len() <= CENSUS_LIMIT {
        report.record_result(
            "collapse-classification",
            end.iter()
                .filter(|f| is_elementary_collapse(analysis, f))
                .try_for_each(|f| collapse_type(analysis, f).map(|_| ()))
                .map(|_| Status::Pass),
        );
    } else {
        report.push(
            "collapse-classification",
            Status::Skipped(format!("|End| = {} too large", end.len())),
        );
    }

    if end.len() <= IDEAL_LIMIT {
        let ok = end.iter().filter(|f| !f.is_bijective()).all(|n| {
            end.iter().all(|f| {
                !n.compose(f).map(|c| c.is_bijective()).unwrap_or(true)
                    && !f.compose(n).map(|c| c.is_bijective()).unwrap_or(true)
            })
        });
        report.expect("non-units-ideal", ok, || {
            "a product with a non-unit is bijective".into()
        });
    } else {
        report.push(
            "non-units-ideal",
            Status::Skipped(format!("|End| = {} too large", end.len())),
        );
    }

    match shift {
        Some(space) => report.record_result(
            "curtis-hedlund",
            end.iter()
                .try_fold(true, |ok, f: &EquivariantMap| {
                    let rule = rule_from_map(space, f)?;
                    Ok(ok && ca_from_rule(space, &rule)? == *f)
                })
                .map(|ok| counts(ok, "a rule does not reproduce its map".into())),
        ),
        None => report.push(
            "curtis-hedlund",
            Status::Skipped("not a shift space".into()),
        ),
    }
    report
}
