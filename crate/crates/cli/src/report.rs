//! JSON documents for each subcommand. Keys are sorted by `serde_json`'s
//! default map, so identical inputs give identical bytes.

use std::sync::Arc;

use equirank::equivariant::{end_order, enumerate_aut, enumerate_end, is_equivariant};
use equirank::rank::{collapse_type_census, relative_rank, CollapseType};
use equirank::shift::{
    ca_from_rule, inverse_rule, kappa_shortcut, minimal_memory_set, LocalRule, ShiftSpace,
};
use equirank::verify::{Status, VerifyReport};
use equirank::{Analysis, Error, FiniteGroup, SubgroupLattice};
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

fn big(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn labels(g: &FiniteGroup, elements: &[usize]) -> Vec<String> {
    let mut shown: Vec<usize> = g
        .display_order()
        .iter()
        .copied()
        .filter(|e| elements.contains(e))
        .collect();
    shown.dedup();
    shown.into_iter().map(|e| g.label(e)).collect()
}

fn subgroup(l: &SubgroupLattice, h: usize) -> Value {
    let s = l.subgroup(h);
    json!({
        "index": h,
        "elements": s.elements(),
        "labels": labels(l.group(), s.elements()),
    })
}

fn group_doc(spec: &str, g: &FiniteGroup) -> Value {
    let elements: Vec<Value> = g
        .display_order()
        .iter()
        .map(|&e| json!({"index": e, "label": g.label(e), "order": g.element_order(e)}))
        .collect();
    json!({"spec": spec, "order": g.order(), "abelian": g.is_abelian(), "elements": elements})
}

pub fn lattice(spec: &str, g: Arc<FiniteGroup>) -> Result<Value, Error> {
    let l = SubgroupLattice::new(g.clone())?;
    let subgroups: Vec<Value> = (0..l.len())
        .map(|h| {
            let mut v = subgroup(&l, h);
            let m = v.as_object_mut().expect("object");
            m.insert("order".into(), json!(l.subgroup(h).order()));
            m.insert("normal".into(), json!(l.is_normal(h)));
            m.insert("normalizer".into(), json!(l.normalizer(h)));
            m.insert("class".into(), json!(l.class_of(h)));
            v
        })
        .collect();
    let classes: Vec<Value> = l
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| json!({"index": i, "members": c.members, "representative": c.representative()}))
        .collect();
    let mut moebius = Vec::new();
    for (h, k) in l.containment_pairs() {
        moebius.push(json!({"h": h, "k": k, "mu": l.moebius(h, k)?}));
    }
    Ok(json!({
        "schema": SCHEMA,
        "command": "lattice",
        "group": group_doc(spec, &g),
        "subgroups": subgroups,
        "classes": classes,
        "class_order_graph": l.conj_order_graph(),
        "moebius": moebius,
    }))
}

pub fn boxes(a: &Analysis) -> Result<Value, Error> {
    let l = &a.lattice;
    let kappa = a.kappa();
    let mut boxes = Vec::new();
    for (i, b) in a.boxes.boxes.iter().enumerate() {
        let h = b.representative;
        let subs: Vec<Value> = b
            .sub_boxes
            .iter()
            .map(|s| json!({"subgroup": subgroup(l, s.subgroup), "points": s.points}))
            .collect();
        boxes.push(json!({
            "position": i,
            "class": b.class,
            "representative": subgroup(l, h),
            "normalizer": subgroup(l, l.normalizer(h)),
            "points": b.points,
            "orbits": b.orbits,
            "alpha": b.alpha(),
            "alpha_moebius": a.alpha_moebius(h)?,
            "kappa": kappa.contains(&i),
            "aut_orbits": a.aut_orbits_in_box(h)?,
            "sub_boxes": subs,
        }));
    }
    Ok(json!({
        "schema": SCHEMA,
        "command": "boxes",
        "points": a.size(),
        "orbits": a.boxes.orbits.len(),
        "burnside_orbits": a.gset.burnside_orbit_count()?,
        "kappa": kappa,
        "boxes": boxes,
    }))
}

pub fn enumerate(a: &Analysis, aut_only: bool, maps: bool, cap: usize) -> Result<Value, Error> {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!("enumerate"));
    doc.insert("end_order_formula".into(), big(end_order(a)));
    let aut = enumerate_aut(a, cap)?;
    doc.insert("aut_order".into(), json!(aut.len()));
    if maps {
        doc.insert(
            "aut".into(),
            json!(aut.iter().map(|f| f.image()).collect::<Vec<_>>()),
        );
    }
    if !aut_only {
        let end = enumerate_end(a, cap)?;
        doc.insert("end_order".into(), json!(end.len()));
        if maps {
            doc.insert(
                "end".into(),
                json!(end.iter().map(|f| f.image()).collect::<Vec<_>>()),
            );
        }
    }
    Ok(Value::Object(doc))
}

fn collapse_type(l: &SubgroupLattice, t: &CollapseType) -> Value {
    json!({
        "class_index": t.class_index,
        "target_class": t.target_class.iter().map(|&k| subgroup(l, k)).collect::<Vec<_>>(),
    })
}

pub fn rank(
    a: &Analysis,
    shift: Option<&ShiftSpace>,
    verify: bool,
    cap: usize,
) -> Result<(Value, bool), Error> {
    let l = &a.lattice;
    let mut r = relative_rank(a)?;
    r.kappa_shortcut = shift.map(|s| kappa_shortcut(s, a));
    let classes: Vec<Value> = r
        .classes
        .iter()
        .map(|c| {
            json!({
                "position": c.position,
                "representative": subgroup(l, c.representative),
                "normalizer": subgroup(l, c.normalizer),
                "alpha": c.alpha,
                "u_set": c.u_set.iter().map(|cl| cl.iter().map(|&k| subgroup(l, k)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let generators: Vec<Value> = r
        .generating_set
        .iter()
        .map(|g| {
            json!({
                "tag": g.tag,
                "source": g.source,
                "target": g.target,
                "type": collapse_type(l, &g.collapse_type),
                "image": g.map.image(),
            })
        })
        .collect();
    let census = collapse_type_census(a)?;
    let mut doc = json!({
        "schema": SCHEMA,
        "command": "rank",
        "classes": classes,
        "u_sizes": r.u_sizes(),
        "kappa": r.kappa,
        "kappa_size": r.kappa.len(),
        "kappa_shortcut": r.kappa_shortcut,
        "relative_rank": r.relative_rank,
        "collapse_types": census.len(),
        "generating_set": generators,
    });
    let mut passed = census.len() == r.relative_rank;
    if verify {
        let (v, ok) = self::verify(a, shift, cap);
        doc.as_object_mut()
            .expect("object")
            .insert("verify".into(), v["checks"].clone());
        passed &= ok;
    }
    Ok((doc, passed))
}

fn checks(report: &VerifyReport) -> Value {
    json!(report
        .checks
        .iter()
        .map(|c| {
            let (status, detail) = match &c.status {
                Status::Pass => ("pass", None),
                Status::Fail(d) => ("fail", Some(d.clone())),
                Status::Skipped(d) => ("skipped", Some(d.clone())),
            };
            json!({"name": c.name, "status": status, "detail": detail})
        })
        .collect::<Vec<_>>())
}

pub fn verify(a: &Analysis, shift: Option<&ShiftSpace>, cap: usize) -> (Value, bool) {
    let report = equirank::verify::verify(a, shift, cap);
    let passed = report.all_passed();
    (
        json!({"schema": SCHEMA, "command": "verify", "passed": passed, "checks": checks(&report)}),
        passed,
    )
}

fn rule_doc(space: &ShiftSpace, rule: &LocalRule) -> Value {
    json!({
        "memory_set": labels(space.group(), rule.memory_set()),
        "table": rule.table(),
    })
}

pub fn ca(space: &ShiftSpace, memory: &[usize], table: Vec<usize>) -> Result<Value, Error> {
    let rule = LocalRule::new(space, memory, table)?;
    let tau = ca_from_rule(space, &rule)?;
    let inverse = inverse_rule(space, &tau)?;
    let minimal = minimal_memory_set(space, &tau)?;
    Ok(json!({
        "schema": SCHEMA,
        "command": "ca",
        "alphabet_size": space.alphabet_size(),
        "rule": rule_doc(space, &rule),
        "equivariant": is_equivariant(space.gset(), tau.image()),
        "bijective": tau.is_bijective(),
        "rank": tau.rank(),
        "image": tau.image(),
        "minimal_memory_set": labels(space.group(), &minimal),
        "inverse_rule": inverse.map(|r| rule_doc(space, &r)),
    }))
}

/// Indented `key: value` rendering of a JSON document.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .filter_map(scalar)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        Value::Array(_) | Value::Object(_) => None,
        Value::String(s) => Some(s.clone()),
        other => Some(other.to_string()),
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                match scalar(val) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(val, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
