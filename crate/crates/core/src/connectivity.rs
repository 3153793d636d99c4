//! Connectedness between critical simplices of two Morse functions on a
//! graph.
//!
//! For critical simplices `α` of `f1` and `β` of `f2`, both of dimension `q`:
//!
//! * `q = 0`: `α → β` when a V-path of type (0,1) in the field of `f2` runs
//!   from `α` to `β`;
//! * `q = 1`: `α → β` when a V-path of type (0,1) in the field of `f1` runs
//!   from `α` to `β`.
//!
//! `β → α` uses the roles swapped, and a pair is strongly connected when
//! both directions hold. A simplex critical for both functions reaches
//! itself through the trivial path.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::complex::{SimplexId, SimplicialComplex};
use crate::morse::{
    critical_simplices, gradient_field, GradientPath, GradientVectorField, MorseError,
    MorseFunction, PathTree,
};
use crate::value::MorseValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("complex has dimension {0}; connectedness is only defined on graphs (dimension <= 1)")]
    NotAGraph(usize),
    #[error("connectedness is defined for dimensions 0 and 1, not {0}")]
    UnsupportedDimension(usize),
    #[error("`{simplex}` has dimension {dim}, expected {expected}")]
    DimensionMismatch {
        simplex: String,
        dim: usize,
        expected: usize,
    },
    #[error("`{simplex}` is not critical for f{function}")]
    NotCritical { simplex: String, function: u8 },
    #[error(transparent)]
    Morse(#[from] MorseError),
}

/// A complex of dimension at most one, viewed as a simple graph.
#[derive(Clone, Copy, Debug)]
pub struct GraphView<'a> {
    complex: &'a SimplicialComplex,
}

/// Succeeds iff `complex` has dimension at most one.
pub fn assert_graph(complex: &SimplicialComplex) -> Result<GraphView<'_>, ConnectivityError> {
    match complex.dim() {
        Some(d) if d > 1 => Err(ConnectivityError::NotAGraph(d)),
        _ => Ok(GraphView { complex }),
    }
}

impl<'a> GraphView<'a> {
    pub(crate) fn new_unchecked(complex: &'a SimplicialComplex) -> Self {
        Self { complex }
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = SimplexId> + ExactSizeIterator + 'a {
        self.complex.ids_of_dim(0)
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = SimplexId> + ExactSizeIterator + 'a {
        self.complex.ids_of_dim(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.complex.count(0)
    }

    pub fn edge_count(&self) -> usize {
        self.complex.count(1)
    }

    pub fn endpoints(&self, edge: SimplexId) -> (SimplexId, SimplexId) {
        let f = self.complex.faces(edge);
        (f[0], f[1])
    }

    /// The endpoint of `edge` other than `vertex`.
    pub fn other_end(&self, edge: SimplexId, vertex: SimplexId) -> SimplexId {
        let (a, b) = self.endpoints(edge);
        if a == vertex {
            b
        } else {
            a
        }
    }

    /// Edges incident to `vertex`.
    pub fn incident(&self, vertex: SimplexId) -> &'a [SimplexId] {
        self.complex.cofaces(vertex)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<SimplexId>> {
        let mut seen = vec![false; self.complex.len()];
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen[v.index()] {
                continue;
            }
            seen[v.index()] = true;
            let mut comp = vec![v];
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for &e in self.incident(x) {
                    let y = self.other_end(e, x);
                    if !seen[y.index()] {
                        seen[y.index()] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.vertex_count() == self.edge_count() + self.components().len()
    }

    /// Connected and 2-regular.
    pub fn is_cycle_graph(&self) -> bool {
        self.vertex_count() >= 3
            && self.components().len() == 1
            && self.vertices().all(|v| self.incident(v).len() == 2)
    }

    /// End of the gradient flow from `vertex`: follow the paired edge to its
    /// other endpoint until reaching a vertex that is not paired upward.
    pub fn flow_sink(&self, field: &GradientVectorField, mut vertex: SimplexId) -> SimplexId {
        while let Some(edge) = field.upper_partner(vertex) {
            vertex = self.other_end(edge, vertex);
        }
        vertex
    }
}

/// Every V-path of type (0,1) from each vertex and edge of a graph under one
/// field, precomputed for repeated connectivity queries.
#[derive(Clone, Debug)]
pub struct FieldPaths {
    field: GradientVectorField,
    trees: Vec<PathTree>,
    // reach[s] has bit t set when some path runs from s to t
    reach: Vec<Vec<u64>>,
    critical: [Vec<SimplexId>; 2],
}

impl FieldPaths {
    pub fn new(graph: GraphView<'_>, field: GradientVectorField) -> Self {
        let n = graph.complex.len();
        let words = n.div_ceil(64);
        let trees: Vec<PathTree> = graph
            .complex
            .ids()
            .map(|id| PathTree::grow(graph.complex, &field, id, 0).expect("graph simplex"))
            .collect();
        let reach = trees
            .iter()
            .map(|t| {
                let mut bits = vec![0u64; words];
                for r in t.reached() {
                    bits[r.index() / 64] |= 1 << (r.index() % 64);
                }
                bits
            })
            .collect();
        let critical = [0, 1].map(|q| {
            field
                .critical()
                .filter(|id| graph.complex.dim_of(*id) == q)
                .collect()
        });
        Self {
            field,
            trees,
            reach,
            critical,
        }
    }

    pub fn field(&self) -> &GradientVectorField {
        &self.field
    }

    pub fn tree(&self, start: SimplexId) -> &PathTree {
        &self.trees[start.index()]
    }

    pub fn reaches(&self, start: SimplexId, end: SimplexId) -> bool {
        self.reach[start.index()][end.index() / 64] >> (end.index() % 64) & 1 == 1
    }

    /// Critical simplices of dimension `q` (0 or 1).
    pub fn critical(&self, q: usize) -> &[SimplexId] {
        &self.critical[q]
    }
}

/// Which directions of connectedness hold for a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// `α → β` only.
    Forward,
    /// `β → α` only.
    Backward,
    /// Both.
    Strong,
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
            Direction::Strong => "strong",
        }
    }
}

/// A pair `(α, β)` connected in at least one direction, with every witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    /// Critical for `f1`.
    pub alpha: SimplexId,
    /// Critical for `f2`.
    pub beta: SimplexId,
    /// Paths certifying `α → β`.
    pub forward: Vec<GradientPath>,
    /// Paths certifying `β → α`.
    pub backward: Vec<GradientPath>,
}

impl Connection {
    pub fn direction(&self) -> Direction {
        match (self.forward.is_empty(), self.backward.is_empty()) {
            (false, false) => Direction::Strong,
            (false, true) => Direction::Forward,
            _ => Direction::Backward,
        }
    }

    pub fn is_strong(&self) -> bool {
        self.direction() == Direction::Strong
    }
}

/// All connections in one dimension between the critical simplices of two
/// functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionReport {
    pub q: usize,
    /// Pairs connected in at least one direction, sorted by `(α, β)`.
    pub connections: Vec<Connection>,
    /// Critical `q`-simplices of `f1` and `f2`.
    pub critical1: Vec<SimplexId>,
    pub critical2: Vec<SimplexId>,
}

impl ConnectionReport {
    /// `A_q`: the number of strongly connected pairs.
    pub fn a_q(&self) -> usize {
        self.connections.iter().filter(|c| c.is_strong()).count()
    }

    pub fn strong_pairs(&self) -> impl Iterator<Item = (SimplexId, SimplexId)> + '_ {
        self.connections
            .iter()
            .filter(|c| c.is_strong())
            .map(|c| (c.alpha, c.beta))
    }

    pub fn get(&self, alpha: SimplexId, beta: SimplexId) -> Option<&Connection> {
        self.connections
            .iter()
            .find(|c| c.alpha == alpha && c.beta == beta)
    }

    /// Builds the report from precomputed path trees of both fields.
    pub fn between(
        paths1: &FieldPaths,
        paths2: &FieldPaths,
        q: usize,
    ) -> Result<Self, ConnectivityError> {
        if q > 1 {
            return Err(ConnectivityError::UnsupportedDimension(q));
        }
        // q = 0 walks in the field of the target, q = 1 in the field of the source
        let (fwd, bwd) = if q == 0 {
            (paths2, paths1)
        } else {
            (paths1, paths2)
        };
        let mut connections = Vec::new();
        for &alpha in paths1.critical(q) {
            for &beta in paths2.critical(q) {
                if !fwd.reaches(alpha, beta) && !bwd.reaches(beta, alpha) {
                    continue;
                }
                connections.push(Connection {
                    alpha,
                    beta,
                    forward: fwd.tree(alpha).paths_to(beta),
                    backward: bwd.tree(beta).paths_to(alpha),
                });
            }
        }
        Ok(Self {
            q,
            connections,
            critical1: paths1.critical(q).to_vec(),
            critical2: paths2.critical(q).to_vec(),
        })
    }

    /// `A_q` without materializing witnesses.
    pub fn count_strong(paths1: &FieldPaths, paths2: &FieldPaths, q: usize) -> usize {
        let (fwd, bwd) = if q == 0 {
            (paths2, paths1)
        } else {
            (paths1, paths2)
        };
        paths1
            .critical(q)
            .iter()
            .map(|&a| {
                paths2
                    .critical(q)
                    .iter()
                    .filter(|&&b| fwd.reaches(a, b) && bwd.reaches(b, a))
                    .count()
            })
            .sum()
    }
}

fn fields<T: MorseValue>(
    graph: GraphView<'_>,
    f1: &MorseFunction<T>,
    f2: &MorseFunction<T>,
) -> Result<(GradientVectorField, GradientVectorField), ConnectivityError> {
    Ok((
        gradient_field(graph.complex, f1)?,
        gradient_field(graph.complex, f2)?,
    ))
}

/// Outcome of a single [`connected`] query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connectedness {
    pub connected: bool,
    pub witness: Option<GradientPath>,
}

/// Whether `alpha` (critical for `f1`) is connected to `beta` (critical for
/// `f2`) in dimension `q`.
pub fn connected<T: MorseValue>(
    graph: GraphView<'_>,
    f1: &MorseFunction<T>,
    alpha: SimplexId,
    f2: &MorseFunction<T>,
    beta: SimplexId,
    q: usize,
) -> Result<Connectedness, ConnectivityError> {
    let (v1, v2) = fields(graph, f1, f2)?;
    check_pair(graph, &v1, alpha, &v2, beta, q)?;
    let walk = if q == 0 { &v2 } else { &v1 };
    let witness = PathTree::grow(graph.complex, walk, alpha, 0)?
        .paths_to(beta)
        .into_iter()
        .next();
    Ok(Connectedness {
        connected: witness.is_some(),
        witness,
    })
}

/// Connected in both directions.
pub fn strongly_connected<T: MorseValue>(
    graph: GraphView<'_>,
    f1: &MorseFunction<T>,
    alpha: SimplexId,
    f2: &MorseFunction<T>,
    beta: SimplexId,
    q: usize,
) -> Result<bool, ConnectivityError> {
    Ok(connected(graph, f1, alpha, f2, beta, q)?.connected
        && connected(graph, f2, beta, f1, alpha, q)?.connected)
}

fn check_pair(
    graph: GraphView<'_>,
    v1: &GradientVectorField,
    alpha: SimplexId,
    v2: &GradientVectorField,
    beta: SimplexId,
    q: usize,
) -> Result<(), ConnectivityError> {
    if q > 1 {
        return Err(ConnectivityError::UnsupportedDimension(q));
    }
    for (id, field, function) in [(alpha, v1, 1u8), (beta, v2, 2u8)] {
        let dim = graph.complex.dim_of(id);
        if dim != q {
            return Err(ConnectivityError::DimensionMismatch {
                simplex: graph.complex.name(id),
                dim,
                expected: q,
            });
        }
        if !field.is_critical(id) {
            return Err(ConnectivityError::NotCritical {
                simplex: graph.complex.name(id),
                function,
            });
        }
    }
    Ok(())
}

/// Every connection between critical `q`-simplices of `f1` and `f2`.
pub fn connection_matrix<T: MorseValue>(
    graph: GraphView<'_>,
    f1: &MorseFunction<T>,
    f2: &MorseFunction<T>,
    q: usize,
) -> Result<ConnectionReport, ConnectivityError> {
    let (v1, v2) = fields(graph, f1, f2)?;
    let p1 = FieldPaths::new(graph, v1);
    let p2 = FieldPaths::new(graph, v2);
    ConnectionReport::between(&p1, &p2, q)
}

/// `A_0`, `A_1` and the Euler characteristic of the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub a0: usize,
    pub a1: usize,
    pub chi: i64,
}

impl EulerReport {
    /// `A_0 - A_1 = χ`.
    pub fn ok(&self) -> bool {
        self.a0 as i64 - self.a1 as i64 == self.chi
    }

    pub fn summary(&self) -> String {
        format!(
            "A0={} A1={} chi={} ok={}",
            self.a0,
            self.a1,
            self.chi,
            self.ok()
        )
    }
}

pub fn verify_euler_theorem<T: MorseValue>(
    graph: GraphView<'_>,
    f1: &MorseFunction<T>,
    f2: &MorseFunction<T>,
) -> Result<EulerReport, ConnectivityError> {
    let (v1, v2) = fields(graph, f1, f2)?;
    let p1 = FieldPaths::new(graph, v1);
    let p2 = FieldPaths::new(graph, v2);
    Ok(euler_between(graph, &p1, &p2))
}

pub fn euler_between(graph: GraphView<'_>, p1: &FieldPaths, p2: &FieldPaths) -> EulerReport {
    EulerReport {
        a0: ConnectionReport::count_strong(p1, p2, 0),
        a1: ConnectionReport::count_strong(p1, p2, 1),
        chi: graph.complex.euler_characteristic(),
    }
}

/// `C_q = β_q` in every dimension.
pub fn is_optimal<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> Result<bool, MorseError> {
    let crit = critical_simplices(complex, f)?;
    let betti = complex.betti_numbers();
    Ok((0..betti.len()).all(|q| crit.count(q) == betti[q]))
}

/// One tree of the rooted forest: a component of the graph with its
/// critical edges removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    /// The unique critical vertex of the tree.
    pub root: SimplexId,
    /// Sorted.
    pub vertices: Vec<SimplexId>,
    /// Sorted; each is the paired edge of exactly one non-root vertex.
    pub edges: Vec<SimplexId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedForest {
    /// Ordered by root.
    pub trees: Vec<RootedTree>,
}

impl RootedForest {
    pub fn tree_of(&self, root: SimplexId) -> Option<&RootedTree> {
        self.trees.iter().find(|t| t.root == root)
    }
}

/// Trees of gradient flow, one per critical vertex.
pub fn rooted_forest<T: MorseValue>(
    graph: GraphView<'_>,
    f: &MorseFunction<T>,
) -> Result<RootedForest, ConnectivityError> {
    let field = gradient_field(graph.complex, f)?;
    Ok(forest_of_field(graph, &field))
}

pub fn forest_of_field(graph: GraphView<'_>, field: &GradientVectorField) -> RootedForest {
    let mut by_root: HashMap<SimplexId, RootedTree> = HashMap::new();
    for v in graph.vertices() {
        let root = graph.flow_sink(field, v);
        let tree = by_root.entry(root).or_insert_with(|| RootedTree {
            root,
            vertices: Vec::new(),
            edges: Vec::new(),
        });
        tree.vertices.push(v);
        if let Some(e) = field.upper_partner(v) {
            tree.edges.push(e);
        }
    }
    let mut trees: Vec<RootedTree> = by_root.into_values().collect();
    for t in &mut trees {
        t.vertices.sort();
        t.edges.sort();
    }
    trees.sort_by_key(|t| t.root);
    RootedForest { trees }
}

/// The tree of a critical edge rooted in a critical vertex: the flow lines
/// from the faces of the edge into the root, together with the branches of
/// the root's tree that do not start at a face of any critical edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeOfEdge {
    pub edge: SimplexId,
    pub root: SimplexId,
    /// Flow lines from faces of `edge` that end at `root`.
    pub edge_paths: Vec<GradientPath>,
    /// Maximal flow lines into `root` starting at a vertex that is not a
    /// face of a critical edge.
    pub branches: Vec<GradientPath>,
}

impl TreeOfEdge {
    /// True when no face of the edge flows into the root.
    pub fn is_empty(&self) -> bool {
        self.edge_paths.is_empty()
    }

    fn members(&self, dim: usize, complex: &SimplicialComplex) -> Vec<SimplexId> {
        let set: BTreeSet<SimplexId> = self
            .edge_paths
            .iter()
            .chain(&self.branches)
            .flat_map(|p| p.simplices().iter().copied())
            .filter(|id| complex.dim_of(*id) == dim)
            .collect();
        set.into_iter().collect()
    }

    pub fn vertices(&self, complex: &SimplicialComplex) -> Vec<SimplexId> {
        self.members(0, complex)
    }

    pub fn edges(&self, complex: &SimplicialComplex) -> Vec<SimplexId> {
        self.members(1, complex)
    }
}

pub fn tree_of_edge<T: MorseValue>(
    graph: GraphView<'_>,
    f: &MorseFunction<T>,
    edge: SimplexId,
    root: SimplexId,
) -> Result<TreeOfEdge, ConnectivityError> {
    let field = gradient_field(graph.complex, f)?;
    let complex = graph.complex;
    for (id, q) in [(edge, 1), (root, 0)] {
        let dim = complex.dim_of(id);
        if dim != q {
            return Err(ConnectivityError::DimensionMismatch {
                simplex: complex.name(id),
                dim,
                expected: q,
            });
        }
        if !field.is_critical(id) {
            return Err(ConnectivityError::NotCritical {
                simplex: complex.name(id),
                function: 1,
            });
        }
    }
    let flow_line = |from: SimplexId| -> GradientPath {
        PathTree::grow(complex, &field, from, 0)
            .expect("vertex")
            .paths_to(root)
            .pop()
            .expect("flow reaches its sink")
    };
    let (a, b) = graph.endpoints(edge);
    let edge_paths: Vec<GradientPath> = [a, b]
        .into_iter()
        .filter(|u| graph.flow_sink(&field, *u) == root)
        .map(flow_line)
        .collect();
    if edge_paths.is_empty() {
        return Ok(TreeOfEdge {
            edge,
            root,
            edge_paths,
            branches: Vec::new(),
        });
    }

    let mut critical_face = vec![false; complex.len()];
    let mut has_inflow = vec![false; complex.len()];
    for e in graph.edges() {
        let (x, y) = graph.endpoints(e);
        if field.is_critical(e) {
            critical_face[x.index()] = true;
            critical_face[y.index()] = true;
        } else {
            let source = field.lower_partner(e).expect("paired edge");
            has_inflow[graph.other_end(e, source).index()] = true;
        }
    }
    let branches = graph
        .vertices()
        .filter(|v| {
            !has_inflow[v.index()]
                && !critical_face[v.index()]
                && graph.flow_sink(&field, *v) == root
        })
        .map(flow_line)
        .collect();
    Ok(TreeOfEdge {
        edge,
        root,
        edge_paths,
        branches,
    })
}
