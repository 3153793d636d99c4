//! Sub-level filtrations and persistence pairs over the two-element field.
//!
//! The boundary matrix is reduced column by column in filtration order. A
//! column whose lowest entry collides with an earlier column is added to
//! it, so each death is paired with the youngest class still alive in its
//! boundary.

use std::collections::BTreeMap;

use crate::complex::{SimplexId, SimplicialComplex};
use crate::f2::BitVector;
use crate::morse::{critical_simplices, validate_dmf, MorseError, MorseFunction};
use crate::value::MorseValue;

/// Total order of the simplices in which the sub-level complexes are
/// exactly the prefixes cut at each value.
#[derive(Clone, Debug)]
pub struct FiltrationOrder<T> {
    order: Vec<SimplexId>,
    position: Vec<usize>,
    entry: Vec<T>,
}

impl<T: MorseValue> FiltrationOrder<T> {
    pub fn sequence(&self) -> &[SimplexId] {
        &self.order
    }

    /// Position of `id` in the sequence.
    pub fn position(&self, id: SimplexId) -> usize {
        self.position[id.index()]
    }

    /// Smallest value among `id` and all simplices having it as a face.
    pub fn entry_value(&self, id: SimplexId) -> &T {
        &self.entry[id.index()]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Length of the prefix forming the sub-level complex at `c`.
    pub fn prefix_len(&self, c: &T) -> usize {
        self.order
            .partition_point(|id| self.entry[id.index()] <= *c)
    }
}

/// Orders simplices by entry value, then dimension, then name.
pub fn filtration_order<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> Result<FiltrationOrder<T>, MorseError> {
    ensure_valid(complex, f)?;
    Ok(filtration_unchecked(complex, f))
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

fn filtration_unchecked<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> FiltrationOrder<T> {
    let mut entry: Vec<T> = f.values().to_vec();
    // cofaces have larger ids, so a reverse sweep sees them first
    for id in complex.ids().rev() {
        for &co in complex.cofaces(id) {
            if entry[co.index()] < entry[id.index()] {
                entry[id.index()] = entry[co.index()].clone();
            }
        }
    }
    let mut order: Vec<SimplexId> = complex.ids().collect();
    // ids already encode (dimension, name)
    order.sort_by(|a, b| entry[a.index()].cmp(&entry[b.index()]).then(a.cmp(b)));
    let mut position = vec![0; order.len()];
    for (i, id) in order.iter().enumerate() {
        position[id.index()] = i;
    }
    FiltrationOrder {
        order,
        position,
        entry,
    }
}

/// A homology class born at `birth` and dying at `death` (`None`: never).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistencePair<T> {
    pub dim: usize,
    pub birth: SimplexId,
    pub death: Option<SimplexId>,
    pub birth_value: T,
    pub death_value: Option<T>,
}

impl<T: MorseValue> PersistencePair<T> {
    pub fn is_essential(&self) -> bool {
        self.death.is_none()
    }

    /// `death_value - birth_value`, `None` for essential classes.
    pub fn persistence(&self) -> Option<T> {
        self.death_value
            .as_ref()
            .map(|d| d.clone() - self.birth_value.clone())
    }
}

/// Result of reducing the boundary matrix of a filtration.
#[derive(Clone, Debug)]
pub struct PersistenceDiagram<T> {
    /// Pairs between critical simplices, plus essential classes; sorted by
    /// dimension, then birth position.
    pub pairs: Vec<PersistencePair<T>>,
    /// Reduction pairs whose members enter at the same value, as
    /// `(lower, upper)`, sorted.
    pub zero_persistence: Vec<(SimplexId, SimplexId)>,
    pub filtration: FiltrationOrder<T>,
}

impl<T: MorseValue> PersistenceDiagram<T> {
    /// Pairs of dimension `q` (`P_q`), essential classes included.
    pub fn of_dim(&self, q: usize) -> impl Iterator<Item = &PersistencePair<T>> {
        self.pairs.iter().filter(move |p| p.dim == q)
    }

    /// `#P_q`.
    pub fn count(&self, q: usize) -> usize {
        self.of_dim(q).count()
    }

    /// `#P̂_q`: pairs of dimension `q` with a finite death.
    pub fn finite_count(&self, q: usize) -> usize {
        self.of_dim(q).filter(|p| !p.is_essential()).count()
    }

    /// Betti numbers of the first `len` simplices of the filtration, read off
    /// from every reduction pair (zero-persistence ones included).
    pub fn prefix_betti(&self, complex: &SimplicialComplex, len: usize) -> Vec<usize> {
        let sub_dim = self.filtration.order[..len]
            .iter()
            .map(|id| complex.dim_of(*id))
            .max();
        let Some(top) = sub_dim else {
            return Vec::new();
        };
        let mut betti = vec![0; top + 1];
        let pos = |id: SimplexId| self.filtration.position(id);
        let alive = |birth: SimplexId, death: Option<SimplexId>| {
            pos(birth) < len && death.is_none_or(|d| pos(d) >= len)
        };
        for p in &self.pairs {
            if alive(p.birth, p.death) {
                betti[p.dim] += 1;
            }
        }
        for &(lower, upper) in &self.zero_persistence {
            if alive(lower, Some(upper)) {
                betti[complex.dim_of(lower)] += 1;
            }
        }
        betti
    }
}

/// Persistence pairs of the sub-level filtration of `f`.
pub fn persistence_pairs<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> Result<PersistenceDiagram<T>, MorseError> {
    ensure_valid(complex, f)?;
    let filtration = filtration_unchecked(complex, f);
    let n = filtration.len();
    let mut pivot_owner: Vec<Option<usize>> = vec![None; n];
    let mut reduced: Vec<Option<BitVector>> = vec![None; n];
    let mut death_of = vec![None; n];
    for (j, &id) in filtration.order.iter().enumerate() {
        let mut column = BitVector::zeros(n);
        for &face in complex.faces(id) {
            column.set(filtration.position(face));
        }
        while let Some(low) = column.highest() {
            match pivot_owner[low] {
                Some(k) => column.xor_assign(reduced[k].as_ref().expect("pivot column")),
                None => {
                    pivot_owner[low] = Some(j);
                    death_of[low] = Some(j);
                    reduced[j] = Some(column);
                    break;
                }
            }
        }
    }

    let mut pairs = Vec::new();
    let mut zero_persistence = Vec::new();
    let negative: Vec<bool> = (0..n).map(|j| reduced[j].is_some()).collect();
    for (i, &birth) in filtration.order.iter().enumerate() {
        if negative[i] {
            continue;
        }
        let dim = complex.dim_of(birth);
        match death_of[i] {
            Some(j) => {
                let death = filtration.order[j];
                if filtration.entry_value(birth) == filtration.entry_value(death) {
                    zero_persistence.push((birth, death));
                } else {
                    pairs.push(PersistencePair {
                        dim,
                        birth,
                        death: Some(death),
                        birth_value: f.value(birth).clone(),
                        death_value: Some(f.value(death).clone()),
                    });
                }
            }
            None => pairs.push(PersistencePair {
                dim,
                birth,
                death: None,
                birth_value: f.value(birth).clone(),
                death_value: None,
            }),
        }
    }
    pairs.sort_by_key(|p| (p.dim, filtration.position(p.birth)));
    zero_persistence.sort();
    Ok(PersistenceDiagram {
        pairs,
        zero_persistence,
        filtration,
    })
}

/// Role of a critical simplex in the persistence pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CriticalKind {
    /// Birth simplex of a finite pair.
    BirthPaired,
    /// Death simplex of a finite pair.
    Death,
    /// Birth of a class that never dies.
    Essential,
}

impl CriticalKind {
    pub fn label(self) -> &'static str {
        match self {
            CriticalKind::BirthPaired => "BIRTH_PAIRED",
            CriticalKind::Death => "DEATH",
            CriticalKind::Essential => "ESSENTIAL",
        }
    }
}

/// Classifies every critical simplex by the persistence pair it belongs to.
///
/// A critical simplex that ends up in no persistence pair (only possible if
/// the pairing theory failed) is absent from the map.
pub fn classify_critical<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> Result<BTreeMap<SimplexId, CriticalKind>, MorseError> {
    let diagram = persistence_pairs(complex, f)?;
    Ok(classify_from(&diagram))
}

pub(crate) fn classify_from<T: MorseValue>(
    diagram: &PersistenceDiagram<T>,
) -> BTreeMap<SimplexId, CriticalKind> {
    let mut out = BTreeMap::new();
    for p in &diagram.pairs {
        match p.death {
            Some(d) => {
                out.insert(p.birth, CriticalKind::BirthPaired);
                out.insert(d, CriticalKind::Death);
            }
            None => {
                out.insert(p.birth, CriticalKind::Essential);
            }
        }
    }
    out
}

/// Per-dimension counts behind the Morse equalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseEqualities {
    /// `C_q`
    pub critical: Vec<usize>,
    /// `β_q`, by direct rank computation.
    pub betti: Vec<usize>,
    /// `#P_q`
    pub pairs: Vec<usize>,
    /// `#P̂_q`
    pub finite_pairs: Vec<usize>,
    /// Failed identities, as readable strings.
    pub failures: Vec<String>,
}

impl MorseEqualities {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates the Morse inequalities and their persistence refinements:
///
/// * `C_q = β_q + #P̂_{q-1} + #P̂_q`
/// * `β_q = #P_q - #P̂_q`
/// * `Σ_{j≤i} (-1)^{i-j} C_j = Σ_{j≤i} (-1)^{i-j} β_j + #P̂_i` for every `i`
/// * the full alternating sums agree
/// * `C_q ≥ β_q` and the alternating inequalities
pub fn morse_equalities<T: MorseValue>(
    complex: &SimplicialComplex,
    f: &MorseFunction<T>,
) -> Result<MorseEqualities, MorseError> {
    let crit = critical_simplices(complex, f)?;
    let diagram = persistence_pairs(complex, f)?;
    let betti = complex.betti_numbers();
    let top = betti.len();
    let critical: Vec<usize> = (0..top).map(|q| crit.count(q)).collect();
    let pairs: Vec<usize> = (0..top).map(|q| diagram.count(q)).collect();
    let finite_pairs: Vec<usize> = (0..top).map(|q| diagram.finite_count(q)).collect();
    let hat = |q: isize| -> i64 {
        if q < 0 || q as usize >= top {
            0
        } else {
            finite_pairs[q as usize] as i64
        }
    };

    let mut failures = Vec::new();
    for q in 0..top {
        let rhs = betti[q] as i64 + hat(q as isize - 1) + hat(q as isize);
        if critical[q] as i64 != rhs {
            failures.push(format!(
                "C_{q} = {} but β_{q} + #P̂_{} + #P̂_{q} = {rhs}",
                critical[q],
                q as isize - 1
            ));
        }
        if betti[q] as i64 != pairs[q] as i64 - finite_pairs[q] as i64 {
            failures.push(format!(
                "β_{q} = {} but #P_{q} - #P̂_{q} = {}",
                betti[q],
                pairs[q] as i64 - finite_pairs[q] as i64
            ));
        }
        if critical[q] < betti[q] {
            failures.push(format!("C_{q} = {} < β_{q} = {}", critical[q], betti[q]));
        }
        let alt = |xs: &[usize]| -> i64 {
            (0..=q)
                .map(|j| {
                    let sign = if (q - j) % 2 == 0 { 1 } else { -1 };
                    sign * xs[j] as i64
                })
                .sum()
        };
        let (c_alt, b_alt) = (alt(&critical), alt(&betti));
        if c_alt != b_alt + hat(q as isize) {
            failures.push(format!(
                "alternating sum to {q}: {c_alt} != {b_alt} + #P̂_{q}"
            ));
        }
        if c_alt < b_alt {
            failures.push(format!(
                "alternating inequality fails at {q}: {c_alt} < {b_alt}"
            ));
        }
        if q + 1 == top && c_alt != b_alt {
            failures.push(format!("Euler characteristic: {c_alt} != {b_alt}"));
        }
    }
    Ok(MorseEqualities {
        critical,
        betti,
        pairs,
        finite_pairs,
        failures,
    })
}
