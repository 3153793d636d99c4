use crate::complex::{SimplexId, SimplicialComplex};

use super::{GradientVectorField, MorseError};

/// A gradient V-path through `p`- and `(p+1)`-simplices.
///
/// Consecutive entries alternate between the two dimensions. Each
/// `p`-simplex that is followed by a `(p+1)`-simplex is paired with it in
/// the field, and each `(p+1)`-simplex is followed by one of its facets other
/// than its own partner. A single simplex is the trivial path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradientPath {
    p: usize,
    simplices: Vec<SimplexId>,
}

impl GradientPath {
    pub fn trivial(p: usize, id: SimplexId) -> Self {
        Self {
            p,
            simplices: vec![id],
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn simplices(&self) -> &[SimplexId] {
        &self.simplices
    }

    pub fn start(&self) -> SimplexId {
        self.simplices[0]
    }

    pub fn end(&self) -> SimplexId {
        *self.simplices.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.simplices.len() == 1
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.simplices.contains(&id)
    }

    /// Simplex names joined by `;`.
    pub fn display(&self, complex: &SimplicialComplex) -> String {
        self.simplices
            .iter()
            .map(|id| complex.name(*id))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Checks every gradient-path constraint against `field`.
    pub fn is_valid(&self, complex: &SimplicialComplex, field: &GradientVectorField) -> bool {
        let p = self.p;
        let dims_ok = self.simplices.iter().all(|s| {
            let d = complex.dim_of(*s);
            d == p || d == p + 1
        });
        if !dims_ok {
            return false;
        }
        self.simplices.windows(2).enumerate().all(|(i, w)| {
            let (a, b) = (w[0], w[1]);
            let (da, db) = (complex.dim_of(a), complex.dim_of(b));
            if da == p && db == p + 1 {
                field.upper_partner(a) == Some(b)
            } else if da == p + 1 && db == p {
                // b is a facet of a, different from the simplex a was entered from
                let prev = if i > 0 {
                    Some(self.simplices[i - 1])
                } else {
                    None
                };
                complex.faces(a).binary_search(&b).is_ok()
                    && Some(b) != field.lower_partner(a)
                    && Some(b) != prev
            } else {
                false
            }
        })
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    simplex: SimplexId,
    parent: Option<u32>,
}

/// Every V-path leaving one start simplex, stored as a prefix tree.
///
/// The tree is finite because the field is acyclic.
#[derive(Clone, Debug)]
pub struct PathTree {
    p: usize,
    nodes: Vec<Node>,
}

impl PathTree {
    pub fn grow(
        complex: &SimplicialComplex,
        field: &GradientVectorField,
        start: SimplexId,
        p: usize,
    ) -> Result<Self, MorseError> {
        check_endpoint(complex, start, p)?;
        let mut nodes = vec![Node {
            simplex: start,
            parent: None,
        }];
        let mut stack = vec![0u32];
        while let Some(at) = stack.pop() {
            let here = nodes[at as usize].simplex;
            if complex.dim_of(here) == p {
                if let Some(up) = field.upper_partner(here) {
                    nodes.push(Node {
                        simplex: up,
                        parent: Some(at),
                    });
                    stack.push(nodes.len() as u32 - 1);
                }
            } else {
                let partner = field.lower_partner(here);
                for &face in complex.faces(here) {
                    if Some(face) != partner {
                        nodes.push(Node {
                            simplex: face,
                            parent: Some(at),
                        });
                        stack.push(nodes.len() as u32 - 1);
                    }
                }
            }
        }
        Ok(Self { p, nodes })
    }

    pub fn start(&self) -> SimplexId {
        self.nodes[0].simplex
    }

    /// Number of distinct paths ending at `end`.
    pub fn count_to(&self, end: SimplexId) -> usize {
        self.nodes.iter().filter(|n| n.simplex == end).count()
    }

    pub fn reaches(&self, end: SimplexId) -> bool {
        self.nodes.iter().any(|n| n.simplex == end)
    }

    /// All paths from the start to `end`, in discovery order.
    pub fn paths_to(&self, end: SimplexId) -> Vec<GradientPath> {
        let mut out = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if n.simplex == end {
                out.push(self.path_at(i));
            }
        }
        out
    }

    /// End simplex of every path in the tree, one entry per path.
    pub fn reached(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.nodes.iter().map(|n| n.simplex)
    }

    fn path_at(&self, mut i: usize) -> GradientPath {
        let mut simplices = vec![self.nodes[i].simplex];
        while let Some(parent) = self.nodes[i].parent {
            i = parent as usize;
            simplices.push(self.nodes[i].simplex);
        }
        simplices.reverse();
        GradientPath {
            p: self.p,
            simplices,
        }
    }
}

fn check_endpoint(complex: &SimplicialComplex, id: SimplexId, p: usize) -> Result<(), MorseError> {
    let d = complex.dim_of(id);
    if d == p || d == p + 1 {
        Ok(())
    } else {
        Err(MorseError::EndpointDimension {
            simplex: complex.name(id),
            dim: d,
            p,
        })
    }
}

/// All V-paths of type `(p, p+1)` from `start` to `end`.
///
/// Either endpoint may be a `p`- or a `(p+1)`-simplex. When `start == end`
/// the result is the trivial path.
pub fn v_paths(
    complex: &SimplicialComplex,
    field: &GradientVectorField,
    start: SimplexId,
    end: SimplexId,
    p: usize,
) -> Result<Vec<GradientPath>, MorseError> {
    check_endpoint(complex, end, p)?;
    Ok(PathTree::grow(complex, field, start, p)?.paths_to(end))
}
