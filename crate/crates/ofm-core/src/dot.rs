//! Deterministic DOT export of order diagrams: Hasse diagrams of posets,
//! inclusion diagrams of topologies, and the filter order of a space.

use crate::bits::BitSet;
use crate::filter::FilterSpace;
use crate::order::FinitePoset;
use crate::topology::FiniteSpace;

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn set_label(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

/// Cover pairs of a family of sets under inclusion.
fn inclusion_covers(sets: &[BitSet]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i != j && a.is_subset(b) {
                let between = sets.iter().enumerate().any(|(k, c)| {
                    k != i && k != j && a.is_subset(c) && c.is_subset(b) && c != a && c != b
                });
                if !between {
                    covers.push((i, j));
                }
            }
        }
    }
    covers.sort();
    covers
}

/// Hasse diagram of a poset, edges pointing upward.
pub fn hasse_dot(p: &FinitePoset) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for i in 0..p.len() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", esc(p.name(i))));
    }
    let mut covers = p.covers();
    covers.sort();
    for (i, j) in covers {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}

/// Inclusion diagram of the opens of a space.
pub fn topology_dot(s: &FiniteSpace) -> String {
    let mut out = String::from("digraph topology {\n  rankdir=BT;\n");
    for (i, o) in s.opens().iter().enumerate() {
        out.push_str(&format!(
            "  o{i} [label=\"{}\"];\n",
            esc(&set_label(&s.open_names(o)))
        ));
    }
    for (i, j) in inclusion_covers(s.opens()) {
        out.push_str(&format!("  o{i} -> o{j};\n"));
    }
    out.push_str("}\n");
    out
}

/// The filter order of a space; each filter is labeled by its least member.
pub fn filters_dot(fs: &FilterSpace) -> String {
    let space = fs.base();
    let mut out = String::from("digraph filters {\n  rankdir=BT;\n");
    let member_sets: Vec<BitSet> = fs.filters().iter().map(|f| f.members().clone()).collect();
    for (i, f) in fs.filters().iter().enumerate() {
        let min = f.min_open(space);
        out.push_str(&format!(
            "  f{i} [label=\"[{}]\"];\n",
            esc(&set_label(&space.open_names(&min)))
        ));
    }
    for (i, j) in inclusion_covers(&member_sets) {
        out.push_str(&format!("  f{i} -> f{j};\n"));
    }
    out.push_str("}\n");
    out
}
