use std::fmt;

use crate::complex::{SimplexId, SimplicialComplex};

/// One way a candidate pair list fails to be a gradient vector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldViolation {
    /// An id does not belong to the complex.
    OutOfRange(SimplexId),
    /// `lower` is not a codimension-one face of `upper`.
    NotAFacet { lower: SimplexId, upper: SimplexId },
    /// The simplex occurs in more than one pair.
    Reused { simplex: SimplexId, times: usize },
    /// A closed V-path, listed from its first simplex around to the last
    /// one before returning.
    Cycle(Vec<SimplexId>),
}

/// Outcome of [`validate_gvf`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldReport {
    pub violations: Vec<FieldViolation>,
}

impl FieldReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, complex: &SimplicialComplex) -> Vec<String> {
        let name = |id: SimplexId| {
            if id.index() < complex.len() {
                complex.name(id)
            } else {
                format!("#{}", id.index())
            }
        };
        self.violations
            .iter()
            .map(|v| match v {
                FieldViolation::OutOfRange(id) => format!("unknown simplex {}", name(*id)),
                FieldViolation::NotAFacet { lower, upper } => {
                    format!("{} is not a facet of {}", name(*lower), name(*upper))
                }
                FieldViolation::Reused { simplex, times } => {
                    format!("{} appears in {times} pairs", name(*simplex))
                }
                FieldViolation::Cycle(c) => format!(
                    "closed V-path {}",
                    c.iter().map(|id| name(*id)).collect::<Vec<_>>().join(";")
                ),
            })
            .collect()
    }
}

impl fmt::Display for FieldReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} gradient field violation(s)", self.violations.len())
    }
}

/// Checks that `pairs` is an acyclic matching of facet pairs of `complex`.
pub fn validate_gvf(complex: &SimplicialComplex, pairs: &[(SimplexId, SimplexId)]) -> FieldReport {
    let mut violations = Vec::new();
    let n = complex.len();
    let mut uses = vec![0usize; n];
    for &(lower, upper) in pairs {
        let mut in_range = true;
        for id in [lower, upper] {
            if id.index() >= n {
                violations.push(FieldViolation::OutOfRange(id));
                in_range = false;
            }
        }
        if !in_range {
            continue;
        }
        if complex.faces(upper).binary_search(&lower).is_err() {
            violations.push(FieldViolation::NotAFacet { lower, upper });
        }
        uses[lower.index()] += 1;
        uses[upper.index()] += 1;
    }
    for (i, &times) in uses.iter().enumerate() {
        if times > 1 {
            violations.push(FieldViolation::Reused {
                simplex: SimplexId(i),
                times,
            });
        }
    }
    if violations.is_empty() {
        let field = GradientVectorField::from_matching(complex, pairs.to_vec());
        if let Some(cycle) = field.find_cycle(complex) {
            violations.push(FieldViolation::Cycle(cycle));
        }
    }
    FieldReport { violations }
}

/// An acyclic matching on the Hasse diagram: pairs `(lower, upper)` with
/// `lower` a facet of `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradientVectorField {
    pairs: Vec<(SimplexId, SimplexId)>,
    up: Vec<Option<SimplexId>>,
    down: Vec<Option<SimplexId>>,
}

impl GradientVectorField {
    /// Validates `pairs` and builds the field.
    pub fn new(
        complex: &SimplicialComplex,
        pairs: Vec<(SimplexId, SimplexId)>,
    ) -> Result<Self, FieldReport> {
        let report = validate_gvf(complex, &pairs);
        if report.is_ok() {
            Ok(Self::from_matching(complex, pairs))
        } else {
            Err(report)
        }
    }

    /// The field with no pairs; every simplex is critical.
    pub fn empty(complex: &SimplicialComplex) -> Self {
        Self::from_matching(complex, Vec::new())
    }

    /// Caller guarantees a matching of facet pairs; acyclicity is not checked.
    pub(crate) fn from_matching(
        complex: &SimplicialComplex,
        mut pairs: Vec<(SimplexId, SimplexId)>,
    ) -> Self {
        pairs.sort();
        let mut up = vec![None; complex.len()];
        let mut down = vec![None; complex.len()];
        for &(lower, upper) in &pairs {
            up[lower.index()] = Some(upper);
            down[upper.index()] = Some(lower);
        }
        Self { pairs, up, down }
    }

    /// Pairs sorted by lower simplex.
    pub fn pairs(&self) -> &[(SimplexId, SimplexId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The coface `id` is paired with, if `id` is the lower member of a pair.
    pub fn upper_partner(&self, id: SimplexId) -> Option<SimplexId> {
        self.up[id.index()]
    }

    /// The face `id` is paired with, if `id` is the upper member of a pair.
    pub fn lower_partner(&self, id: SimplexId) -> Option<SimplexId> {
        self.down[id.index()]
    }

    pub fn is_critical(&self, id: SimplexId) -> bool {
        self.up[id.index()].is_none() && self.down[id.index()].is_none()
    }

    pub fn critical(&self) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.up.len())
            .map(SimplexId)
            .filter(|id| self.is_critical(*id))
    }

    /// Number of simplices of the complex the field was built on.
    pub fn complex_len(&self) -> usize {
        self.up.len()
    }

    pub fn named_pairs(&self, complex: &SimplicialComplex) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|(l, u)| (complex.name(*l), complex.name(*u)))
            .collect()
    }

    /// Successors in the modified Hasse diagram: matched edges point up,
    /// every other facet edge points down.
    pub(crate) fn successors<'a>(
        &'a self,
        complex: &'a SimplicialComplex,
        id: SimplexId,
    ) -> impl Iterator<Item = SimplexId> + 'a {
        let partner = self.down[id.index()];
        self.up[id.index()].into_iter().chain(
            complex
                .faces(id)
                .iter()
                .copied()
                .filter(move |f| Some(*f) != partner),
        )
    }

    fn find_cycle(&self, complex: &SimplicialComplex) -> Option<Vec<SimplexId>> {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let n = complex.len();
        let mut color = vec![WHITE; n];
        for root in complex.ids() {
            if color[root.index()] != WHITE {
                continue;
            }
            // stack of (node, successors)
            let mut stack: Vec<(SimplexId, Vec<SimplexId>)> = Vec::new();
            color[root.index()] = GREY;
            stack.push((root, self.successors(complex, root).collect()));
            while let Some((node, succ)) = stack.last_mut() {
                let node = *node;
                match succ.pop() {
                    Some(next) => match color[next.index()] {
                        WHITE => {
                            color[next.index()] = GREY;
                            let s = self.successors(complex, next).collect();
                            stack.push((next, s));
                        }
                        GREY => {
                            let start = stack.iter().position(|(x, _)| *x == next).unwrap();
                            return Some(stack[start..].iter().map(|(x, _)| *x).collect());
                        }
                        _ => {}
                    },
                    None => {
                        color[node.index()] = BLACK;
                        stack.pop();
                    }
                }
            }
        }
        None
    }
}
