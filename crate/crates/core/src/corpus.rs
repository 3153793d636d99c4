//! Builtin graphs, addressable by name.

use std::collections::BTreeMap;

use crate::complex::{SimplexId, SimplicialComplex};
use crate::generate::realize_dmf;
use crate::morse::GradientVectorField;
use crate::IntMorseFunction;

#[derive(Clone, Debug)]
pub struct GraphCorpusEntry {
    pub name: String,
    pub graph: SimplicialComplex,
    /// Named functions shipped with the graph.
    pub functions: Vec<(String, IntMorseFunction)>,
}

impl GraphCorpusEntry {
    fn plain(name: impl Into<String>, graph: SimplicialComplex) -> Self {
        Self {
            name: name.into(),
            graph,
            functions: Vec::new(),
        }
    }

    pub fn function(&self, name: &str) -> Option<&IntMorseFunction> {
        self.functions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
    }
}

fn letter(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

fn from_edges(
    vertices: usize,
    edges: &[(usize, usize)],
    name: impl Fn(usize) -> String,
) -> SimplicialComplex {
    let isolated = (0..vertices)
        .filter(|v| !edges.iter().any(|(a, b)| a == v || b == v))
        .map(|v| vec![name(v)]);
    let edges = edges.iter().map(|&(a, b)| vec![name(a), name(b)]);
    SimplicialComplex::build(edges.chain(isolated)).expect("valid corpus graph")
}

pub fn path_graph(n: usize) -> SimplicialComplex {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    from_edges(n, &edges, letter)
}

pub fn cycle_graph(n: usize) -> SimplicialComplex {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_edges(n, &edges, letter)
}

fn theta() -> SimplicialComplex {
    SimplicialComplex::build([
        ["s", "a"],
        ["a", "t"],
        ["s", "b"],
        ["b", "t"],
        ["s", "c"],
        ["c", "t"],
    ])
    .unwrap()
}

fn k4() -> SimplicialComplex {
    let edges: Vec<_> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .collect();
    from_edges(4, &edges, letter)
}

fn p3_c3() -> SimplicialComplex {
    SimplicialComplex::build([["a", "b"], ["b", "c"], ["x", "y"], ["y", "z"], ["x", "z"]]).unwrap()
}

/// Edge lists of one labelled representative of every unlabelled tree on
/// `n` vertices, in order of canonical encoding.
pub fn trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Vec::new()],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let mut found: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let edges = prufer_decode(n, &seq);
        found.entry(canonical_tree(n, &edges)).or_insert(edges);
        let mut i = 0;
        loop {
            if i == seq.len() {
                return found.into_values().collect();
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.sort();
    edges
}

/// Isomorphism-invariant encoding: the smallest rooted encoding over the
/// tree's centers.
fn canonical_tree(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &w in &adj[leaf] {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    fn encode(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| encode(adj, w, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    layer
        .iter()
        .map(|&c| encode(&adj, c, usize::MAX))
        .min()
        .unwrap()
}

/// A hexagon `v01..v06` with a pendant path of three vertices hanging off
/// each of `v02`, `v04` and `v05`.
pub fn fig4_graph() -> SimplicialComplex {
    SimplicialComplex::build(FIG4_EDGES.iter().map(|e| e.iter().copied())).unwrap()
}

const FIG4_EDGES: [[&str; 2]; 15] = [
    ["v01", "v02"],
    ["v02", "v03"],
    ["v03", "v04"],
    ["v04", "v05"],
    ["v05", "v06"],
    ["v01", "v06"],
    ["v07", "v08"],
    ["v08", "v09"],
    ["v02", "v09"],
    ["v10", "v11"],
    ["v11", "v12"],
    ["v04", "v12"],
    ["v13", "v14"],
    ["v14", "v15"],
    ["v05", "v13"],
];

/// Arrows `(vertex, edge)` of the two fields drawn on the graph.
pub const FIG4_F1_PAIRS: [(&str, &str); 12] = [
    ("v06", "v01-v06"),
    ("v01", "v01-v02"),
    ("v02", "v02-v03"),
    ("v03", "v03-v04"),
    ("v08", "v08-v09"),
    ("v09", "v02-v09"),
    ("v10", "v10-v11"),
    ("v11", "v11-v12"),
    ("v04", "v04-v12"),
    ("v14", "v14-v15"),
    ("v13", "v13-v14"),
    ("v05", "v05-v13"),
];

pub const FIG4_F2_PAIRS: [(&str, &str); 11] = [
    ("v06", "v01-v06"),
    ("v02", "v01-v02"),
    ("v03", "v02-v03"),
    ("v04", "v04-v05"),
    ("v05", "v05-v06"),
    ("v08", "v08-v09"),
    ("v09", "v02-v09"),
    ("v11", "v11-v12"),
    ("v12", "v04-v12"),
    ("v14", "v13-v14"),
    ("v13", "v05-v13"),
];

fn field_from_names(k: &SimplicialComplex, pairs: &[(&str, &str)]) -> GradientVectorField {
    let ids: Vec<(SimplexId, SimplexId)> = pairs
        .iter()
        .map(|(l, u)| (k.find_name(l).unwrap(), k.find_name(u).unwrap()))
        .collect();
    GradientVectorField::new(k, ids).expect("figure fields are acyclic")
}

fn fig4() -> GraphCorpusEntry {
    let graph = fig4_graph();
    let functions = [("f1", &FIG4_F1_PAIRS[..]), ("f2", &FIG4_F2_PAIRS[..])]
        .into_iter()
        .map(|(name, pairs)| {
            let v = field_from_names(&graph, pairs);
            (name.to_string(), realize_dmf(&graph, &v).unwrap())
        })
        .collect();
    GraphCorpusEntry {
        name: "fig4".into(),
        graph,
        functions,
    }
}

/// Every builtin graph, in a fixed order.
pub fn corpus() -> Vec<GraphCorpusEntry> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push(GraphCorpusEntry::plain(format!("P{n}"), path_graph(n)));
    }
    for n in 3..=8 {
        out.push(GraphCorpusEntry::plain(format!("C{n}"), cycle_graph(n)));
    }
    for n in 1..=7 {
        for (i, edges) in trees(n).iter().enumerate() {
            out.push(GraphCorpusEntry::plain(
                format!("tree{n}_{:02}", i + 1),
                from_edges(n, edges, letter),
            ));
        }
    }
    out.push(GraphCorpusEntry::plain("theta", theta()));
    out.push(GraphCorpusEntry::plain("K4", k4()));
    out.push(GraphCorpusEntry::plain("P3uC3", p3_c3()));
    out.push(fig4());
    out
}

pub fn corpus_entry(name: &str) -> Option<GraphCorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}
