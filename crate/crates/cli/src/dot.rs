use std::fmt::Write;

use dmt::{GradientVectorField, SimplexId, SimplicialComplex};

fn critical(field: Option<&GradientVectorField>, id: SimplexId) -> bool {
    field.is_some_and(|v| v.is_critical(id))
}

fn color(red: bool) -> &'static str {
    if red {
        ", color=red, fontcolor=red"
    } else {
        ""
    }
}

/// Vertices as nodes and edges as lines; a vertex paired with an edge gets
/// an arrow pointing into that edge.
pub fn graph(k: &SimplicialComplex, field: Option<&GradientVectorField>) -> String {
    let mut out = String::from("digraph complex {\n  node [shape=circle];\n");
    for id in k.ids_of_dim(0) {
        writeln!(
            out,
            "  \"{}\" [label=\"{}\"{}];",
            k.name(id),
            k.name(id),
            color(critical(field, id))
        )
        .expect("write to string");
    }
    for id in k.ids_of_dim(1) {
        let (a, b) = match k.faces(id) {
            [a, b] => (*a, *b),
            _ => unreachable!("an edge has two vertices"),
        };
        let lower = field.and_then(|v| v.lower_partner(id));
        let (tail, head, dir) = match lower {
            Some(l) if l == b => (b, a, "forward"),
            Some(_) => (a, b, "forward"),
            None => (a, b, "none"),
        };
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\", dir={dir}{}];",
            k.name(tail),
            k.name(head),
            k.name(id),
            color(critical(field, id))
        )
        .expect("write to string");
    }
    out.push_str("}\n");
    out
}

/// Every simplex as a node, faces joined by plain lines, gradient pairs as
/// arrows from the lower to the upper simplex.
pub fn hasse(k: &SimplicialComplex, field: Option<&GradientVectorField>) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for id in k.ids() {
        writeln!(
            out,
            "  \"{}\" [label=\"{}\"{}];",
            k.name(id),
            k.name(id),
            color(critical(field, id))
        )
        .expect("write to string");
    }
    for upper in k.ids() {
        for &lower in k.faces(upper) {
            let paired = field.is_some_and(|v| v.upper_partner(lower) == Some(upper));
            let style = if paired {
                "dir=forward, penwidth=2"
            } else {
                "dir=none, color=gray"
            };
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [{style}];",
                k.name(lower),
                k.name(upper)
            )
            .expect("write to string");
        }
    }
    out.push_str("}\n");
    out
}
