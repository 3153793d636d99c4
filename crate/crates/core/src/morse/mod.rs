//! Discrete Morse functions, their critical simplices and gradient fields.

mod field;
mod path;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::FromPrimitive;
use thiserror::Error;

use crate::complex::{Simplex, SimplexId, SimplicialComplex};
use crate::value::MorseValue;

pub use field::{validate_gvf, FieldReport, FieldViolation, GradientVectorField};
pub use path::{v_paths, GradientPath, PathTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorseError {
    #[error("function assigns {got} values but the complex has {expected} simplices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("no value for simplices: {}", .0.join(", "))]
    Incomplete(Vec<String>),
    #[error("value given twice for `{0}`")]
    DuplicateValue(String),
    #[error("simplex `{0}` is not in the complex")]
    UnknownSimplex(String),
    #[error("not a discrete Morse function: {}", .0.describe_short())]
    Invalid(ValidationReport),
    #[error("invalid gradient vector field: {0}")]
    InvalidField(FieldReport),
    #[error("`{simplex}` has dimension {dim}; V-paths of type ({p},{}) need dimension {p} or {}", p + 1, p + 1)]
    EndpointDimension {
        simplex: String,
        dim: usize,
        p: usize,
    },
}

/// Exact values on every simplex of one complex, indexed by [`SimplexId`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorseFunction<T> {
    values: Vec<T>,
}

impl<T: MorseValue> MorseFunction<T> {
    /// Values in the complex's id order.
    pub fn from_values(complex: &SimplicialComplex, values: Vec<T>) -> Result<Self, MorseError> {
        if values.len() != complex.len() {
            return Err(MorseError::LengthMismatch {
                expected: complex.len(),
                got: values.len(),
            });
        }
        Ok(Self { values })
    }

    /// One value per simplex, each simplex exactly once.
    pub fn from_assignments<I>(
        complex: &SimplicialComplex,
        assignments: I,
    ) -> Result<Self, MorseError>
    where
        I: IntoIterator<Item = (Simplex, T)>,
    {
        let mut slots: Vec<Option<T>> = vec![None; complex.len()];
        for (s, v) in assignments {
            let id = complex
                .id(&s)
                .ok_or_else(|| MorseError::UnknownSimplex(s.name()))?;
            if slots[id.index()].replace(v).is_some() {
                return Err(MorseError::DuplicateValue(s.name()));
            }
        }
        let missing: Vec<String> = complex
            .ids()
            .filter(|id| slots[id.index()].is_none())
            .map(|id| complex.name(id))
            .collect();
        if !missing.is_empty() {
            return Err(MorseError::Incomplete(missing));
        }
        Ok(Self {
            values: slots.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Convenience for literal tables keyed by canonical name.
    pub fn from_named<'a, I>(complex: &SimplicialComplex, table: I) -> Result<Self, MorseError>
    where
        I: IntoIterator<Item = (&'a str, T)>,
    {
        let assignments = table
            .into_iter()
            .map(|(name, v)| {
                Simplex::parse(name)
                    .map(|s| (s, v))
                    .map_err(|_| MorseError::UnknownSimplex(name.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_assignments(complex, assignments)
    }

    pub fn value(&self, id: SimplexId) -> &T {
        &self.values[id.index()]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map<U: MorseValue>(&self, f: impl Fn(&T) -> U) -> MorseFunction<U> {
        MorseFunction {
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Restriction to a subcomplex built from `complex`.
    pub fn restrict(&self, complex: &SimplicialComplex, sub: &SimplicialComplex) -> Self {
        Self {
            values: sub
                .simplices()
                .iter()
                .map(|s| self.values[complex.id(s).expect("not a subcomplex").index()].clone())
                .collect(),
        }
    }

    fn check_len(&self, complex: &SimplicialComplex) -> Result<(), MorseError> {
        if self.values.len() == complex.len() {
            Ok(())
        } else {
            Err(MorseError::LengthMismatch {
                expected: complex.len(),
                got: self.values.len(),
            })
        }
    }
}

/// A single failed condition of a discrete Morse function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// More than one coface has value at most the simplex's value.
    LowCofaces { simplex: SimplexId, count: usize },
    /// More than one facet has value at least the simplex's value.
    HighFaces { simplex: SimplexId, count: usize },
    /// Several simplices share one value.
    Tie(Vec<SimplexId>),
}

/// Outcome of [`validate_dmf`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// Both Morse conditions hold and all values are distinct.
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Both Morse conditions hold; ties are allowed.
    pub fn satisfies_axioms(&self) -> bool {
        self.violations
            .iter()
            .all(|v| matches!(v, Violation::Tie(_)))
    }

    pub fn describe(&self, complex: &SimplicialComplex) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| match v {
                Violation::LowCofaces { simplex, count } => format!(
                    "{}: {count} cofaces with value <= its own",
                    complex.name(*simplex)
                ),
                Violation::HighFaces { simplex, count } => format!(
                    "{}: {count} faces with value >= its own",
                    complex.name(*simplex)
                ),
                Violation::Tie(ids) => format!(
                    "tie: {} share one value",
                    ids.iter()
                        .map(|id| complex.name(*id))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            })
            .collect()
    }

    fn describe_short(&self) -> String {
        format!("{} violation(s)", self.violations.len())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe_short())
    }
}

/// Checks both discrete Morse conditions on every simplex, plus injectivity.
pub fn validate_dmf<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> Result<ValidationReport, MorseError> {
    f.check_len(complex)?;
    let mut violations = Vec::new();
    for id in complex.ids() {
        let v = f.value(id);
        let low = complex
            .cofaces(id)
            .iter()
            .filter(|t| f.value(**t) <= v)
            .count();
        if low > 1 {
            violations.push(Violation::LowCofaces {
                simplex: id,
                count: low,
            });
        }
        let high = complex
            .faces(id)
            .iter()
            .filter(|s| f.value(**s) >= v)
            .count();
        if high > 1 {
            violations.push(Violation::HighFaces {
                simplex: id,
                count: high,
            });
        }
    }
    let mut by_value: BTreeMap<&T, Vec<SimplexId>> = BTreeMap::new();
    for id in complex.ids() {
        by_value.entry(f.value(id)).or_default().push(id);
    }
    violations.extend(
        by_value
            .into_values()
            .filter(|ids| ids.len() > 1)
            .map(Violation::Tie),
    );
    Ok(ValidationReport { violations })
}

fn ensure_valid<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> Result<(), MorseError> {
    let report = validate_dmf(complex, f)?;
    if report.is_ok() {
        Ok(())
    } else {
        Err(MorseError::Invalid(report))
    }
}

/// Critical/non-critical tag for every simplex, with per-dimension counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSet {
    critical: Vec<bool>,
    dims: Vec<usize>,
    counts: Vec<usize>,
}

impl CriticalSet {
    pub fn is_critical(&self, id: SimplexId) -> bool {
        self.critical[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.critical
            .iter()
            .enumerate()
            .filter(|(_, c)| **c)
            .map(|(i, _)| SimplexId(i))
    }

    pub fn of_dim(&self, q: usize) -> impl Iterator<Item = SimplexId> + '_ {
        self.iter().filter(move |id| self.dims[id.index()] == q)
    }

    /// `C_q` for `q = 0..=dim`.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, q: usize) -> usize {
        self.counts.get(q).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn critical_unchecked<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> CriticalSet {
    let top = complex.dim().map_or(0, |d| d + 1);
    let mut counts = vec![0; top];
    let mut dims = Vec::with_capacity(complex.len());
    let critical = complex
        .ids()
        .map(|id| {
            let v = f.value(id);
            let d = complex.dim_of(id);
            dims.push(d);
            let c = complex.cofaces(id).iter().all(|t| f.value(*t) > v)
                && complex.faces(id).iter().all(|s| f.value(*s) < v);
            if c {
                counts[d] += 1;
            }
            c
        })
        .collect();
    CriticalSet {
        critical,
        dims,
        counts,
    }
}

/// Simplices with no exceptional face or coface.
pub fn critical_simplices<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> Result<CriticalSet, MorseError> {
    ensure_valid(complex, f)?;
    Ok(critical_unchecked(complex, f))
}

/// Pairs `(α, β)` with `α` a facet of `β` and `f(α) >= f(β)`.
pub fn gradient_field<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> Result<GradientVectorField, MorseError> {
    ensure_valid(complex, f)?;
    Ok(gradient_unchecked(complex, f))
}

fn gradient_unchecked<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> GradientVectorField {
    let pairs = complex
        .ids()
        .flat_map(|upper| {
            complex
                .faces(upper)
                .iter()
                .filter(move |lower| f.value(**lower) >= f.value(upper))
                .map(move |lower| (*lower, upper))
        })
        .collect();
    GradientVectorField::from_matching(complex, pairs)
}

/// All simplices with value at most `c`, together with their faces.
pub fn sublevel_complex<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
    c: &T,
) -> Result<SimplicialComplex, MorseError> {
    ensure_valid(complex, f)?;
    Ok(complex.subcomplex(complex.ids().filter(|id| f.value(*id) <= c)))
}

/// Breaks ties of a function satisfying the Morse conditions without
/// changing its gradient field.
///
/// Within a group of equal values, lower-dimensional simplices move up
/// further (so a tied gradient pair keeps `f(α) > f(β)`), then by canonical
/// name. Every shift is smaller than the gap to the next distinct value.
pub fn perturb_to_injective<I>(
    complex: &SimplicialComplex,
    f: &MorseFunction<Ratio<I>>,
) -> Result<MorseFunction<Ratio<I>>, MorseError>
where
    I: Integer + Clone + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync,
    Ratio<I>: MorseValue,
{
    let report = validate_dmf(complex, f)?;
    if !report.satisfies_axioms() {
        return Err(MorseError::Invalid(report));
    }
    let mut distinct: Vec<&Ratio<I>> = f.values().iter().collect();
    distinct.sort();
    distinct.dedup();
    let gap = distinct
        .windows(2)
        .map(|w| w[1].clone() - w[0].clone())
        .min()
        .unwrap_or_else(|| Ratio::from_integer(I::one()));
    let largest_group = report
        .violations
        .iter()
        .filter_map(|v| match v {
            Violation::Tie(ids) => Some(ids.len()),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let step = gap / Ratio::from_integer(I::from_usize(largest_group + 1).expect("group size"));
    let mut values = f.values().to_vec();
    for v in &report.violations {
        let Violation::Tie(ids) = v else { continue };
        let mut ids = ids.clone();
        // higher dimension first gets the smallest shift; ids already break name ties
        ids.sort_by_key(|id| (std::cmp::Reverse(complex.dim_of(*id)), *id));
        for (rank, id) in ids.into_iter().enumerate() {
            let shift = step.clone() * Ratio::from_integer(I::from_usize(rank).expect("rank"));
            values[id.index()] = values[id.index()].clone() + shift;
        }
    }
    let perturbed = MorseFunction { values };
    debug_assert_eq!(
        gradient_unchecked(complex, &perturbed),
        gradient_unchecked(complex, f)
    );
    Ok(perturbed)
}
