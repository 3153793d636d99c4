//! Finite abstract simplicial complexes and their mod-2 homology.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::f2::{self, BitVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("simplex has no vertices")]
    EmptySimplex,
    #[error("vertex `{0}` repeated within a simplex")]
    DuplicateVertex(String),
    #[error("invalid vertex token `{0}` (expected [A-Za-z0-9_]+)")]
    InvalidToken(String),
    #[error("simplex `{0}` is not in the complex")]
    UnknownSimplex(String),
}

/// A simplex given by its strictly increasing vertex tokens.
///
/// Simplices order first by dimension, then lexicographically by vertex
/// list, which agrees with ordering by canonical name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    vertices: Vec<String>,
}

impl Simplex {
    pub fn new<I, V>(vertices: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = V>,
        V: Into<String>,
    {
        let mut vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        if let Some(bad) = vertices.iter().find(|v| !is_valid_token(v)) {
            return Err(ComplexError::InvalidToken(bad.clone()));
        }
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertex(w[0].clone()));
        }
        Ok(Self { vertices })
    }

    /// Parses a canonical name such as `a-b-c`.
    pub fn parse(name: &str) -> Result<Self, ComplexError> {
        Self::new(name.split('-'))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Sorted vertex tokens joined by `-`.
    pub fn name(&self) -> String {
        self.vertices.join("-")
    }

    /// Codimension-one faces, in vertex-removal order.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.vertices.len() > 1 {
            self.vertices.len()
        } else {
            0
        };
        (0..n).map(move |skip| Simplex {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, v)| v.clone())
                .collect(),
        })
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices
            .iter()
            .all(|v| other.vertices.binary_search(v).is_ok())
    }

    fn nonempty_subsets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.vertices.len();
        (1u64..(1 << n)).map(move |mask| Simplex {
            vertices: (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.vertices[i].clone())
                .collect(),
        })
    }
}

fn is_valid_token(token: &str) -> bool {
    !token.is_empty()
        && token
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices
            .len()
            .cmp(&other.vertices.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Index of a simplex within one [`SimplicialComplex`].
///
/// Ids follow the complex's canonical order (dimension, then name), so
/// comparing ids compares simplices.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId(pub(crate) usize);

impl SimplexId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A finite simplicial complex, closed under taking faces.
///
/// Immutable once built; face and coface adjacency is precomputed.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    lookup: HashMap<Simplex, SimplexId>,
    dim_start: Vec<usize>,
    faces: Vec<Vec<SimplexId>>,
    cofaces: Vec<Vec<SimplexId>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Face closure of the given vertex tuples.
    pub fn build<I, T, V>(maximal: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = V>,
        V: Into<String>,
    {
        let simplices = maximal
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_simplices(simplices))
    }

    /// Face closure of the given simplices.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut closed = BTreeSet::new();
        for s in simplices {
            if closed.contains(&s) {
                continue;
            }
            closed.extend(s.nonempty_subsets());
        }
        Self::from_closed(closed)
    }

    fn from_closed(closed: BTreeSet<Simplex>) -> Self {
        let simplices: Vec<Simplex> = closed.into_iter().collect();
        let lookup: HashMap<Simplex, SimplexId> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), SimplexId(i)))
            .collect();
        let top = simplices.last().map_or(0, |s| s.dim() + 1);
        let dim_start: Vec<usize> = (0..=top)
            .map(|q| simplices.partition_point(|s| s.dim() < q))
            .collect();
        let faces: Vec<Vec<SimplexId>> = simplices
            .iter()
            .map(|s| {
                let mut fs: Vec<SimplexId> = s.facets().map(|f| lookup[&f]).collect();
                fs.sort();
                fs
            })
            .collect();
        let mut cofaces = vec![Vec::new(); simplices.len()];
        for (i, fs) in faces.iter().enumerate() {
            for f in fs {
                cofaces[f.0].push(SimplexId(i));
            }
        }
        Self {
            simplices,
            lookup,
            dim_start,
            faces,
            cofaces,
        }
    }

    pub fn empty() -> Self {
        Self::from_closed(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest simplex dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(Simplex::dim)
    }

    pub fn simplex(&self, id: SimplexId) -> &Simplex {
        &self.simplices[id.0]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn name(&self, id: SimplexId) -> String {
        self.simplices[id.0].name()
    }

    pub fn dim_of(&self, id: SimplexId) -> usize {
        self.simplices[id.0].dim()
    }

    pub fn id(&self, s: &Simplex) -> Option<SimplexId> {
        self.lookup.get(s).copied()
    }

    pub fn find(&self, s: &Simplex) -> Result<SimplexId, ComplexError> {
        self.id(s)
            .ok_or_else(|| ComplexError::UnknownSimplex(s.name()))
    }

    /// Looks a simplex up by canonical name.
    pub fn find_name(&self, name: &str) -> Result<SimplexId, ComplexError> {
        let s = Simplex::parse(name).map_err(|_| ComplexError::UnknownSimplex(name.to_string()))?;
        self.find(&s)
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = SimplexId> + ExactSizeIterator {
        (0..self.simplices.len()).map(SimplexId)
    }

    pub fn ids_of_dim(
        &self,
        q: usize,
    ) -> impl DoubleEndedIterator<Item = SimplexId> + ExactSizeIterator {
        let (lo, hi) = self.dim_range(q);
        (lo..hi).map(SimplexId)
    }

    /// Number of `q`-simplices.
    pub fn count(&self, q: usize) -> usize {
        let (lo, hi) = self.dim_range(q);
        hi - lo
    }

    fn dim_range(&self, q: usize) -> (usize, usize) {
        if q + 1 < self.dim_start.len() {
            (self.dim_start[q], self.dim_start[q + 1])
        } else {
            (self.simplices.len(), self.simplices.len())
        }
    }

    /// Codimension-one faces of `id`.
    pub fn faces(&self, id: SimplexId) -> &[SimplexId] {
        &self.faces[id.0]
    }

    /// Codimension-one cofaces of `id`.
    pub fn cofaces(&self, id: SimplexId) -> &[SimplexId] {
        &self.cofaces[id.0]
    }

    pub fn faces_of(&self, s: &Simplex) -> Result<Vec<&Simplex>, ComplexError> {
        let id = self.find(s)?;
        Ok(self.faces(id).iter().map(|f| self.simplex(*f)).collect())
    }

    pub fn cofaces_of(&self, s: &Simplex) -> Result<Vec<&Simplex>, ComplexError> {
        let id = self.find(s)?;
        Ok(self.cofaces(id).iter().map(|f| self.simplex(*f)).collect())
    }

    /// Simplices with no proper coface.
    pub fn maximal_simplices(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.ids().filter(|id| self.cofaces[id.0].is_empty())
    }

    /// Mod-2 boundary of a simplex. Vertices have empty boundary.
    pub fn boundary(&self, s: &Simplex) -> Result<Chain, ComplexError> {
        let id = self.find(s)?;
        Ok(self.boundary_of(id))
    }

    pub fn boundary_of(&self, id: SimplexId) -> Chain {
        Chain {
            dim: self.dim_of(id).checked_sub(1),
            support: self.faces(id).iter().copied().collect(),
        }
    }

    /// Mod-2 boundary of a chain.
    pub fn boundary_of_chain(&self, chain: &Chain) -> Chain {
        let mut out = Chain::zero(chain.dim.and_then(|d| d.checked_sub(1)));
        for &s in &chain.support {
            for &f in self.faces(s) {
                out.toggle(f);
            }
        }
        out
    }

    /// Face closure of a subset of this complex's simplices, as a new complex.
    pub fn subcomplex<I: IntoIterator<Item = SimplexId>>(&self, ids: I) -> SimplicialComplex {
        let mut keep = vec![false; self.len()];
        let mut stack: Vec<SimplexId> = ids.into_iter().collect();
        while let Some(id) = stack.pop() {
            if !keep[id.0] {
                keep[id.0] = true;
                stack.extend_from_slice(self.faces(id));
            }
        }
        let closed = self
            .ids()
            .filter(|id| keep[id.0])
            .map(|id| self.simplex(id).clone())
            .collect();
        Self::from_closed(closed)
    }

    /// Betti numbers over the two-element field, indexed `0..=dim`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let Some(top) = self.dim() else {
            return Vec::new();
        };
        // ranks[q] = rank of the boundary map out of dimension q
        let ranks: Vec<usize> = (0..=top + 1).map(|q| self.boundary_rank(q)).collect();
        (0..=top)
            .map(|q| self.count(q) - ranks[q] - ranks[q + 1])
            .collect()
    }

    fn boundary_rank(&self, q: usize) -> usize {
        if q == 0 || self.count(q) == 0 {
            return 0;
        }
        let (lo, hi) = self.dim_range(q - 1);
        let rows = self
            .ids_of_dim(q)
            .map(|id| {
                let mut row = BitVector::zeros(hi - lo);
                for f in self.faces(id) {
                    row.set(f.0 - lo);
                }
                row
            })
            .collect();
        f2::rank(rows)
    }

    /// Alternating count of simplices by dimension.
    pub fn euler_characteristic(&self) -> i64 {
        let top = self.dim().map_or(0, |d| d + 1);
        (0..top)
            .map(|q| {
                let n = self.count(q) as i64;
                if q % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }
}

/// A mod-2 chain: a set of equal-dimensional simplices of one complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    dim: Option<usize>,
    support: BTreeSet<SimplexId>,
}

impl Chain {
    /// The zero chain in dimension `dim` (`None` stands for dimension -1).
    pub fn zero(dim: Option<usize>) -> Self {
        Self {
            dim,
            support: BTreeSet::new(),
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn support(&self) -> &BTreeSet<SimplexId> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Adds one simplex with coefficient 1.
    pub fn toggle(&mut self, id: SimplexId) {
        if !self.support.remove(&id) {
            self.support.insert(id);
        }
    }

    pub fn names(&self, complex: &SimplicialComplex) -> Vec<String> {
        self.support.iter().map(|id| complex.name(*id)).collect()
    }
}

impl std::ops::Add<&Chain> for Chain {
    type Output = Chain;

    fn add(mut self, rhs: &Chain) -> Chain {
        for &id in &rhs.support {
            self.toggle(id);
        }
        self
    }
}
