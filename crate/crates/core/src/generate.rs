//! Enumerating, realizing and sampling gradient vector fields.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::complex::{SimplexId, SimplicialComplex};
use crate::connectivity::{ConnectivityError, GraphView};
use crate::morse::{validate_gvf, FieldReport, GradientVectorField, MorseFunction};

/// Largest edge count [`enumerate_gvfs`] accepts.
pub const MAX_ENUMERATION_EDGES: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("graph has {edges} edges; enumeration is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("not a gradient vector field: {0}")]
    InvalidField(FieldReport),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
}

/// Every gradient vector field on a graph with at most
/// [`MAX_ENUMERATION_EDGES`] edges.
///
/// Fields on a graph correspond to spanning forests with one root per
/// component: each forest edge is paired with its endpoint farther from the
/// root. The first field is always the empty one.
pub fn enumerate_gvfs(graph: GraphView<'_>) -> Result<Vec<GradientVectorField>, GenerateError> {
    let mut out = Vec::new();
    for_each_gvf(graph, |v| out.push(v))?;
    Ok(out)
}

/// Streams the fields of [`enumerate_gvfs`] without collecting them.
pub fn for_each_gvf(
    graph: GraphView<'_>,
    mut visit: impl FnMut(GradientVectorField),
) -> Result<(), GenerateError> {
    let edges: Vec<SimplexId> = graph.edges().collect();
    if edges.len() > MAX_ENUMERATION_EDGES {
        return Err(GenerateError::TooLarge {
            edges: edges.len(),
            limit: MAX_ENUMERATION_EDGES,
        });
    }
    let n = graph.complex().len();
    let mut label: Vec<usize> = (0..n).collect();
    let mut chosen = Vec::new();
    forests(graph, &edges, 0, &mut label, &mut chosen, &mut |forest| {
        orient_forest(graph, forest, &mut visit)
    });
    Ok(())
}

fn forests(
    graph: GraphView<'_>,
    edges: &[SimplexId],
    at: usize,
    label: &mut Vec<usize>,
    chosen: &mut Vec<SimplexId>,
    emit: &mut impl FnMut(&[SimplexId]),
) {
    if at == edges.len() {
        emit(chosen);
        return;
    }
    forests(graph, edges, at + 1, label, chosen, emit);
    let e = edges[at];
    let (a, b) = graph.endpoints(e);
    let (la, lb) = (label[a.index()], label[b.index()]);
    if la == lb {
        return;
    }
    let saved = label.clone();
    for l in label.iter_mut() {
        if *l == lb {
            *l = la;
        }
    }
    chosen.push(e);
    forests(graph, edges, at + 1, label, chosen, emit);
    chosen.pop();
    *label = saved;
}

fn orient_forest(
    graph: GraphView<'_>,
    forest: &[SimplexId],
    visit: &mut impl FnMut(GradientVectorField),
) {
    let complex = graph.complex();
    let in_forest = {
        let mut m = vec![false; complex.len()];
        for e in forest {
            m[e.index()] = true;
        }
        m
    };
    let components = {
        let mut seen = vec![false; complex.len()];
        let mut comps: Vec<Vec<SimplexId>> = Vec::new();
        for v in graph.vertices() {
            if seen[v.index()] {
                continue;
            }
            seen[v.index()] = true;
            let mut comp = vec![v];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                for &e in graph.incident(x) {
                    let y = graph.other_end(e, x);
                    if in_forest[e.index()] && !seen[y.index()] {
                        seen[y.index()] = true;
                        comp.push(y);
                    }
                }
                i += 1;
            }
            comps.push(comp);
        }
        comps
    };
    let mut choice = vec![0usize; components.len()];
    loop {
        let mut pairs = Vec::with_capacity(forest.len());
        for (comp, &c) in components.iter().zip(&choice) {
            let root = comp[c];
            let mut stack = vec![root];
            let mut seen = vec![root];
            while let Some(x) = stack.pop() {
                for &e in graph.incident(x) {
                    let y = graph.other_end(e, x);
                    if in_forest[e.index()] && !seen.contains(&y) {
                        seen.push(y);
                        pairs.push((y, e));
                        stack.push(y);
                    }
                }
            }
        }
        visit(GradientVectorField::from_matching(complex, pairs));
        let mut i = 0;
        loop {
            if i == choice.len() {
                return;
            }
            choice[i] += 1;
            if choice[i] < components[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// An integer discrete Morse function whose gradient field is `field`.
///
/// Simplices are numbered in reverse topological order of the modified
/// Hasse diagram, always taking the smallest available id, so the result is
/// deterministic and uses the values `0..n`.
pub fn realize_dmf(
    complex: &SimplicialComplex,
    field: &GradientVectorField,
) -> Result<MorseFunction<i64>, GenerateError> {
    let report = validate_gvf(complex, field.pairs());
    if !report.is_ok() || field.complex_len() != complex.len() {
        return Err(GenerateError::InvalidField(report));
    }
    let n = complex.len();
    let mut pending = vec![0usize; n];
    let mut preds: Vec<Vec<SimplexId>> = vec![Vec::new(); n];
    for id in complex.ids() {
        for s in field.successors(complex, id) {
            pending[id.index()] += 1;
            preds[s.index()].push(id);
        }
    }
    let mut ready: BinaryHeap<Reverse<SimplexId>> = complex
        .ids()
        .filter(|id| pending[id.index()] == 0)
        .map(Reverse)
        .collect();
    let mut values = vec![0i64; n];
    let mut next = 0i64;
    while let Some(Reverse(id)) = ready.pop() {
        values[id.index()] = next;
        next += 1;
        for &p in &preds[id.index()] {
            pending[p.index()] -= 1;
            if pending[p.index()] == 0 {
                ready.push(Reverse(p));
            }
        }
    }
    Ok(MorseFunction::from_values(complex, values).expect("one value per simplex"))
}

/// A gradient vector field drawn from a seeded generator.
///
/// On graphs the field is uniform over all fields, sampled as a uniform
/// rooted spanning forest with Wilson's algorithm. On higher-dimensional
/// complexes it is a random acyclic matching built greedily.
pub fn random_gvf(complex: &SimplicialComplex, seed: u64) -> GradientVectorField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match complex.dim() {
        Some(d) if d >= 2 => random_matching(complex, &mut rng),
        _ => wilson(complex, &mut rng),
    }
}

/// [`realize_dmf`] applied to [`random_gvf`].
pub fn random_dmf(complex: &SimplicialComplex, seed: u64) -> MorseFunction<i64> {
    realize_dmf(complex, &random_gvf(complex, seed)).expect("sampled fields are acyclic")
}

fn wilson(complex: &SimplicialComplex, rng: &mut ChaCha8Rng) -> GradientVectorField {
    let graph = GraphView::new_unchecked(complex);
    let n = complex.len();
    let mut in_tree = vec![false; n];
    // (edge, neighbour) taken on the last visit; None means the walk stopped
    let mut next: Vec<Option<(SimplexId, SimplexId)>> = vec![None; n];
    for start in graph.vertices() {
        let mut u = start;
        while !in_tree[u.index()] {
            let inc = graph.incident(u);
            let k = rng.random_range(0..=inc.len());
            if k == inc.len() {
                next[u.index()] = None;
                break;
            }
            let e = inc[k];
            let w = graph.other_end(e, u);
            next[u.index()] = Some((e, w));
            u = w;
        }
        let mut u = start;
        while !in_tree[u.index()] {
            in_tree[u.index()] = true;
            match next[u.index()] {
                Some((_, w)) => u = w,
                None => break,
            }
        }
    }
    let pairs = graph
        .vertices()
        .filter_map(|v| next[v.index()].map(|(e, _)| (v, e)))
        .collect();
    GradientVectorField::from_matching(complex, pairs)
}

fn random_matching(complex: &SimplicialComplex, rng: &mut ChaCha8Rng) -> GradientVectorField {
    let mut incidences: Vec<(SimplexId, SimplexId)> = complex
        .ids()
        .flat_map(|u| complex.faces(u).iter().map(move |&l| (l, u)))
        .collect();
    incidences.shuffle(rng);
    let mut used = vec![false; complex.len()];
    let mut pairs = Vec::new();
    for (l, u) in incidences {
        if used[l.index()] || used[u.index()] || rng.random_bool(1.0 / 3.0) {
            continue;
        }
        pairs.push((l, u));
        if validate_gvf(complex, &pairs).is_ok() {
            used[l.index()] = true;
            used[u.index()] = true;
        } else {
            pairs.pop();
        }
    }
    GradientVectorField::from_matching(complex, pairs)
}
