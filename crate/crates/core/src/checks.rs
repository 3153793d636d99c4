//! Theorem suites over every pair of gradient fields on a small graph.

use std::fmt;
use std::str::FromStr;

use crate::connectivity::{euler_between, ConnectionReport, FieldPaths, GraphView};
use crate::generate::{realize_dmf, GenerateError};
use crate::morse::{gradient_field, GradientVectorField};
use crate::persistence::morse_equalities;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// `A_0 - A_1 = χ` for every ordered pair.
    Euler,
    /// The Euler check plus per-field round trips and Morse equalities, and
    /// the structural results for trees, cycles and optimal pairs.
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euler" => Ok(Suite::Euler),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown check `{s}` (expected euler or all)")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub fields: usize,
    pub pair_checks: usize,
    pub field_checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fields={} pair_checks={} field_checks={} failures={} ok={}",
            self.fields,
            self.pair_checks,
            self.field_checks,
            self.failures.len(),
            self.ok()
        )
    }
}

/// Runs `suite` over all ordered pairs of `fields`.
pub fn run_suite(
    graph: GraphView<'_>,
    fields: &[GradientVectorField],
    suite: Suite,
) -> Result<SuiteReport, GenerateError> {
    let complex = graph.complex();
    let betti = complex.betti_numbers();
    let beta = |q: usize| betti.get(q).copied().unwrap_or(0);
    let mut report = SuiteReport {
        fields: fields.len(),
        ..SuiteReport::default()
    };
    let mut optimal = vec![false; fields.len()];

    if suite == Suite::All {
        for (i, v) in fields.iter().enumerate() {
            report.field_checks += 1;
            let f = realize_dmf(complex, v)?;
            match gradient_field(complex, &f) {
                Ok(w) if &w == v => {}
                _ => report.failures.push(format!(
                    "field {i}: realized function has a different field"
                )),
            }
            match morse_equalities(complex, &f) {
                Ok(eq) if eq.ok() => {}
                Ok(eq) => report
                    .failures
                    .extend(eq.failures.into_iter().map(|m| format!("field {i}: {m}"))),
                Err(e) => report.failures.push(format!("field {i}: {e}")),
            }
            let crit: Vec<usize> = (0..2)
                .map(|q| v.critical().filter(|id| complex.dim_of(*id) == q).count())
                .collect();
            optimal[i] = crit[0] == beta(0) && crit[1] == beta(1);
        }
    }

    let paths: Vec<FieldPaths> = fields
        .iter()
        .map(|v| FieldPaths::new(graph, v.clone()))
        .collect();
    let is_tree_like = graph.is_forest();
    let is_cycle = graph.is_cycle_graph();
    for (i, p1) in paths.iter().enumerate() {
        for (j, p2) in paths.iter().enumerate() {
            report.pair_checks += 1;
            let e = euler_between(graph, p1, p2);
            if !e.ok() {
                report
                    .failures
                    .push(format!("fields {i},{j}: {}", e.summary()));
            }
            if suite == Suite::Euler {
                continue;
            }
            if optimal[i] && optimal[j] && e.a0 != beta(0) {
                report.failures.push(format!(
                    "fields {i},{j}: optimal pair with A0={} but β0={}",
                    e.a0,
                    beta(0)
                ));
            }
            if is_tree_like || is_cycle {
                for q in 0..2 {
                    let r = ConnectionReport::between(p1, p2, q).expect("q is 0 or 1");
                    structural_checks(&r, is_tree_like, &mut report.failures, (i, j));
                }
                if is_cycle && e.a0 != e.a1 {
                    report.failures.push(format!(
                        "fields {i},{j}: cycle with A0={} A1={}",
                        e.a0, e.a1
                    ));
                }
            }
        }
    }
    Ok(report)
}

fn structural_checks(
    r: &ConnectionReport,
    unique_partners: bool,
    failures: &mut Vec<String>,
    (i, j): (usize, usize),
) {
    for c in &r.connections {
        if c.forward.len() > 1 || c.backward.len() > 1 {
            failures.push(format!(
                "fields {i},{j}: several witness paths in dimension {}",
                r.q
            ));
        }
    }
    if unique_partners {
        let strong: Vec<_> = r.strong_pairs().collect();
        for (k, (a, b)) in strong.iter().enumerate() {
            if strong[k + 1..].iter().any(|(x, y)| x == a || y == b) {
                failures.push(format!(
                    "fields {i},{j}: strong partner not unique in dimension {}",
                    r.q
                ));
            }
        }
    }
}
