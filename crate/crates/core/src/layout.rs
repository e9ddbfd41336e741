//! Plain-text box tables.
//!
//! Boxes are listed from the largest stabilizer class down to the smallest.
//! Each box is a grid with one column per orbit: the column starts at the
//! orbit's smallest point `x` and lists `g⁻¹·x` for `g` in display order,
//! skipping repeats, so a cyclic column doubles downwards. Sub-boxes follow as one row each.

use std::fmt::Write;

use crate::boxes::Analysis;

fn subgroup_label(analysis: &Analysis, h: usize) -> String {
    let group = analysis.group();
    let members = analysis.lattice.subgroup(h).elements();
    let shown: Vec<String> = group
        .display_order()
        .iter()
        .filter(|g| members.contains(g))
        .map(|&g| group.label(g))
        .collect();
    format!("{{{}}}", shown.join(","))
}

fn orbit_column(analysis: &Analysis, start: usize) -> Vec<usize> {
    let mut col = Vec::new();
    for &g in analysis.group().display_order() {
        let y = analysis.gset.act(analysis.group().inv(g), start);
        if !col.contains(&y) {
            col.push(y);
        }
    }
    col
}

pub fn render_boxes(analysis: &Analysis) -> String {
    let mut out = String::new();
    let kappa = analysis.kappa();
    for (i, b) in analysis.boxes.boxes.iter().enumerate().rev() {
        let _ = writeln!(
            out,
            "B_[H{}]  H{} = {}  |box| = {}  orbits = {}  alpha = {}{}",
            i,
            i,
            subgroup_label(analysis, b.representative),
            b.points.len(),
            b.alpha(),
            b.alpha(),
            if kappa.contains(&i) { "  (kappa)" } else { "" }
        );
        let columns: Vec<Vec<usize>> = b
            .orbits
            .iter()
            .map(|o| orbit_column(analysis, o[0]))
            .collect();
        let width = b
            .points
            .iter()
            .map(|p| p.to_string().len())
            .max()
            .unwrap_or(1);
        let rows = columns.first().map_or(0, Vec::len);
        for r in 0..rows {
            let cells: Vec<String> = columns
                .iter()
                .map(|c| format!("{:>width$}", c[r]))
                .collect();
            let _ = writeln!(out, "  | {} |", cells.join(" "));
        }
        for sb in &b.sub_boxes {
            let pts: Vec<String> = sb.points.iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "  B'_{}: {}",
                subgroup_label(analysis, sb.subgroup),
                pts.join(" ")
            );
        }
        out.push('\n');
    }
    out
}
