//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p dmt --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{test_dmfs, two_dimensional, Oracle};
use dmt::connectivity::{
    assert_graph, connection_matrix, euler_between, verify_euler_theorem, ConnectionReport,
    FieldPaths,
};
use dmt::corpus::{corpus, corpus_entry};
use dmt::generate::{enumerate_gvfs, random_dmf, random_gvf, realize_dmf};
use dmt::morse::{critical_simplices, gradient_field, sublevel_complex};
use dmt::persistence::{classify_critical, persistence_pairs, CriticalKind};
use dmt::SimplicialComplex;

const EXAMPLE_TIME_LIMIT: Duration = Duration::from_secs(1);
const EXHAUSTIVE_TIME_LIMIT: Duration = Duration::from_secs(60);
const EXHAUSTIVE_EDGES: usize = 8;
const RANDOM_PAIRS: u64 = 1000;
const RANDOM_DMFS: u64 = 1000;

/// Criteria whose failure is documented and reproduced by the
/// `euler_counterexamples` suite.
const KNOWN_FAILURES: [usize; 1] = [2];

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

fn exhaustive_graphs() -> Vec<(String, SimplicialComplex)> {
    corpus()
        .into_iter()
        .filter(|e| e.graph.count(1) <= EXHAUSTIVE_EDGES)
        .map(|e| (e.name, e.graph))
        .collect()
}

fn fig4_strong_pairs() -> Outcome {
    let start = Instant::now();
    let fig = corpus_entry("fig4").ok_or("fig4 missing")?;
    let k = &fig.graph;
    let g = assert_graph(k).map_err(|e| e.to_string())?;
    let f1 = fig.function("f1").ok_or("f1 missing")?;
    let f2 = fig.function("f2").ok_or("f2 missing")?;
    let named = |r: &ConnectionReport| -> BTreeSet<(String, String)> {
        r.strong_pairs()
            .map(|(a, b)| (k.name(a), k.name(b)))
            .collect()
    };
    let pairs = |xs: &[(&str, &str)]| -> BTreeSet<(String, String)> {
        xs.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    };
    // v₁¹=v07 v₁²=v12 v₁³=v15, v₂¹=v07 v₂²=v01 v₂⁴=v15
    let expected0 = pairs(&[("v07", "v07"), ("v12", "v01"), ("v15", "v15")]);
    // e₁¹=v07-v08 e₁³=v05-v06, e₂¹=v07-v08 e₂²=v03-v04 e₂⁴=v14-v15
    let expected1 = pairs(&[
        ("v07-v08", "v07-v08"),
        ("v05-v06", "v03-v04"),
        ("v05-v06", "v14-v15"),
    ]);
    let r0 = connection_matrix(g, f1, f2, 0).map_err(|e| e.to_string())?;
    let r1 = connection_matrix(g, f1, f2, 1).map_err(|e| e.to_string())?;
    let report = verify_euler_theorem(g, f1, f2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    // the same sets from the brute-force path search
    let o = Oracle::new(k);
    let v1 = o.ids_to_indices(k, gradient_field(k, f1).unwrap().pairs());
    let v2 = o.ids_to_indices(k, gradient_field(k, f2).unwrap().pairs());
    let oracle_named = |q: usize| -> BTreeSet<(String, String)> {
        o.strong_pairs(&v1, &v2, q)
            .into_iter()
            .map(|(a, b)| (o.names[a].clone(), o.names[b].clone()))
            .collect()
    };

    if named(&r0) != expected0 || oracle_named(0) != expected0 {
        return Err(format!("q=0 strong pairs {:?}", named(&r0)));
    }
    if named(&r1) != expected1 || oracle_named(1) != expected1 {
        return Err(format!("q=1 strong pairs {:?}", named(&r1)));
    }
    if (report.a0, report.a1, report.chi) != (3, 3, 0) || !report.ok() {
        return Err(report.summary());
    }
    if elapsed >= EXAMPLE_TIME_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} in {elapsed:?}", report.summary()))
}

fn euler_theorem() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for (name, k) in exhaustive_graphs() {
        let g = assert_graph(&k).unwrap();
        let paths: Vec<FieldPaths> = enumerate_gvfs(g)
            .unwrap()
            .into_iter()
            .map(|v| FieldPaths::new(g, v))
            .collect();
        let mut bad = 0usize;
        for p1 in &paths {
            for p2 in &paths {
                checked += 1;
                if !euler_between(g, p1, p2).ok() {
                    bad += 1;
                }
            }
        }
        if bad > 0 {
            failures.push(format!("{name}: {bad}/{}", paths.len() * paths.len()));
        }
    }
    let exhaustive_time = start.elapsed();
    for entry in corpus()
        .into_iter()
        .filter(|e| e.graph.count(1) > EXHAUSTIVE_EDGES)
    {
        let g = assert_graph(&entry.graph).unwrap();
        let mut bad = 0;
        for s in 0..RANDOM_PAIRS {
            let p1 = FieldPaths::new(g, random_gvf(&entry.graph, 2 * s));
            let p2 = FieldPaths::new(g, random_gvf(&entry.graph, 2 * s + 1));
            checked += 1;
            if !euler_between(g, &p1, &p2).ok() {
                bad += 1;
            }
        }
        if bad > 0 {
            failures.push(format!("{} (random): {bad}/{RANDOM_PAIRS}", entry.name));
        }
    }
    if exhaustive_time >= EXHAUSTIVE_TIME_LIMIT {
        failures.push(format!("exhaustive part took {exhaustive_time:?}"));
    }
    if failures.is_empty() {
        Ok(format!(
            "{checked} ordered pairs, exhaustive part {exhaustive_time:?}"
        ))
    } else {
        Err(format!(
            "A0-A1 != chi on {} ({checked} pairs, exhaustive part {exhaustive_time:?})",
            failures.join(", ")
        ))
    }
}

fn morse_equalities() -> Outcome {
    let mut complexes: Vec<(String, SimplicialComplex)> = exhaustive_graphs();
    complexes.push(("fig4".into(), corpus_entry("fig4").unwrap().graph));
    complexes.extend(two_dimensional());
    let oracles: Vec<(Oracle, Vec<usize>)> = complexes
        .iter()
        .map(|(_, k)| {
            let o = Oracle::new(k);
            let b = o.all_betti();
            (o, b)
        })
        .collect();
    let mut two_dim = 0;
    for seed in 0..RANDOM_DMFS {
        let i = seed as usize % complexes.len();
        let (name, k) = &complexes[i];
        let (o, betti) = &oracles[i];
        let f = random_dmf(k, seed);
        let crit = o.critical(f.values());
        let top = betti.len();
        let c: Vec<i64> = (0..top)
            .map(|q| (0..o.len()).filter(|&s| crit[s] && o.dim(s) == q).count() as i64)
            .collect();
        let b: Vec<i64> = betti.iter().map(|&x| x as i64).collect();
        let diagram = persistence_pairs(k, &f).map_err(|e| e.to_string())?;
        let hat = |q: isize| -> i64 {
            if q < 0 {
                0
            } else {
                diagram.finite_count(q as usize) as i64
            }
        };
        for q in 0..top {
            if c[q] != b[q] + hat(q as isize - 1) + hat(q as isize) {
                return Err(format!("{name} seed {seed}: C_{q} equality fails"));
            }
            let alt = |xs: &[i64]| -> i64 {
                (0..=q)
                    .map(|j| if (q - j) % 2 == 0 { xs[j] } else { -xs[j] })
                    .sum()
            };
            if alt(&c) != alt(&b) + hat(q as isize) {
                return Err(format!(
                    "{name} seed {seed}: alternating equality at {q} fails"
                ));
            }
        }
        let alt_all = |xs: &[i64]| -> i64 {
            xs.iter()
                .enumerate()
                .map(|(j, x)| if j % 2 == 0 { *x } else { -x })
                .sum()
        };
        if alt_all(&c) != alt_all(&b) {
            return Err(format!("{name} seed {seed}: full alternating sum differs"));
        }
        if top > 2 {
            two_dim += 1;
        }
    }
    Ok(format!(
        "{RANDOM_DMFS} functions, {two_dim} on 2-dimensional complexes"
    ))
}

fn prefix_betti() -> Outcome {
    let mut prefixes = 0usize;
    for (name, k, f) in test_dmfs() {
        let o = Oracle::new(&k);
        let d = persistence_pairs(&k, &f).map_err(|e| e.to_string())?;
        let seq: Vec<usize> = d
            .filtration
            .sequence()
            .iter()
            .map(|id| o.index(&k.name(*id)))
            .collect();
        for len in 1..=seq.len() {
            let cells = &seq[..len];
            let top = cells.iter().map(|&c| o.dim(c)).max().unwrap();
            if cells
                .iter()
                .any(|&c| o.facets[c].iter().any(|a| !cells.contains(a)))
            {
                return Err(format!("{name}: prefix {len} is not a subcomplex"));
            }
            let expected = o.betti(cells, top);
            let got = d.prefix_betti(&k, len);
            if got != expected {
                return Err(format!(
                    "{name}: prefix {len} has {got:?}, rank oracle {expected:?}"
                ));
            }
            prefixes += 1;
        }
    }
    Ok(format!("{prefixes} prefixes"))
}

fn pair_structure() -> Outcome {
    let mut functions = 0;
    for (name, k, f) in test_dmfs() {
        let o = Oracle::new(&k);
        let crit = o.critical(f.values());
        let betti = o.all_betti();
        let d = persistence_pairs(&k, &f).map_err(|e| e.to_string())?;
        let is_crit = |id| crit[o.index(&k.name(id))];
        for p in &d.pairs {
            if !is_crit(p.birth) || k.dim_of(p.birth) != p.dim {
                return Err(format!(
                    "{name}: birth {} not a critical {}-simplex",
                    k.name(p.birth),
                    p.dim
                ));
            }
            if let Some(death) = p.death {
                if !is_crit(death) || k.dim_of(death) != p.dim + 1 {
                    return Err(format!(
                        "{name}: death {} not a critical {}-simplex",
                        k.name(death),
                        p.dim + 1
                    ));
                }
            }
        }
        let kinds = classify_critical(&k, &f).map_err(|e| e.to_string())?;
        let mut members: Vec<_> = d
            .pairs
            .iter()
            .flat_map(|p| std::iter::once(p.birth).chain(p.death))
            .collect();
        members.sort();
        let distinct = members.windows(2).all(|w| w[0] != w[1]);
        let tagged: BTreeSet<_> = kinds.keys().map(|id| o.index(&k.name(*id))).collect();
        let critical_set: BTreeSet<_> = (0..o.len()).filter(|&s| crit[s]).collect();
        if !distinct || tagged != critical_set || members.len() != critical_set.len() {
            return Err(format!(
                "{name}: critical set is not partitioned by the pairs"
            ));
        }
        for (q, &b) in betti.iter().enumerate() {
            let essential = kinds
                .iter()
                .filter(|(id, kind)| **kind == CriticalKind::Essential && k.dim_of(**id) == q)
                .count();
            if essential != b {
                return Err(format!(
                    "{name}: {essential} essential {q}-simplices, β_{q} = {b}"
                ));
            }
        }
        functions += 1;
    }
    Ok(format!("{functions} functions"))
}

fn sublevel_stability() -> Outcome {
    let mut levels = 0;
    for (name, k, f) in test_dmfs() {
        let full = critical_simplices(&k, &f).map_err(|e| e.to_string())?;
        let o = Oracle::new(&k);
        let values: BTreeSet<i64> = f.values().iter().copied().collect();
        for c in values {
            let sub = sublevel_complex(&k, &f, &c).map_err(|e| e.to_string())?;
            // closure of {σ : f(σ) ≤ c}
            let mut expected: BTreeSet<String> = BTreeSet::new();
            for s in 0..o.len() {
                if f.values()[s] <= c {
                    for t in 0..o.len() {
                        if o.verts[t].is_subset(&o.verts[s]) {
                            expected.insert(o.names[t].clone());
                        }
                    }
                }
            }
            let got: BTreeSet<String> = sub.ids().map(|id| sub.name(id)).collect();
            if got != expected {
                return Err(format!("{name}: sub-level complex at {c} differs"));
            }
            let g = f.restrict(&k, &sub);
            let local = critical_simplices(&sub, &g).map_err(|e| e.to_string())?;
            for id in sub.ids() {
                let outer = k.find_name(&sub.name(id)).unwrap();
                if local.is_critical(id) != full.is_critical(outer) {
                    return Err(format!("{name}: {} changes tag at level {c}", sub.name(id)));
                }
            }
            levels += 1;
        }
    }
    Ok(format!("{levels} sub-level complexes"))
}

fn forest_uniqueness() -> Outcome {
    let mut pairs = 0usize;
    for entry in corpus().into_iter().filter(|e| e.name.starts_with("tree")) {
        let g = assert_graph(&entry.graph).unwrap();
        let paths: Vec<FieldPaths> = enumerate_gvfs(g)
            .unwrap()
            .into_iter()
            .map(|v| FieldPaths::new(g, v))
            .collect();
        for p1 in &paths {
            for p2 in &paths {
                pairs += 1;
                for q in 0..2 {
                    let r = ConnectionReport::between(p1, p2, q).unwrap();
                    if r.connections
                        .iter()
                        .any(|c| c.forward.len() > 1 || c.backward.len() > 1)
                    {
                        return Err(format!("{}: several witness paths", entry.name));
                    }
                    let strong: Vec<_> = r.strong_pairs().collect();
                    let alphas: BTreeSet<_> = strong.iter().map(|p| p.0).collect();
                    let betas: BTreeSet<_> = strong.iter().map(|p| p.1).collect();
                    if alphas.len() != strong.len() || betas.len() != strong.len() {
                        return Err(format!(
                            "{}: strong partner not unique in dimension {q}",
                            entry.name
                        ));
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} field pairs on 25 trees"))
}

fn cycle_graphs() -> Outcome {
    let mut pairs = 0usize;
    for n in 3..=8 {
        let name = format!("C{n}");
        let k = corpus_entry(&name).unwrap().graph;
        let g = assert_graph(&k).unwrap();
        let paths: Vec<FieldPaths> = enumerate_gvfs(g)
            .unwrap()
            .into_iter()
            .map(|v| FieldPaths::new(g, v))
            .collect();
        for p1 in &paths {
            for p2 in &paths {
                pairs += 1;
                let mut a = [0usize; 2];
                for (q, count) in a.iter_mut().enumerate() {
                    let (fwd, bwd) = if q == 0 { (p2, p1) } else { (p1, p2) };
                    for &x in p1.critical(q) {
                        for &y in p2.critical(q) {
                            let there = fwd.tree(x).count_to(y);
                            let back = bwd.tree(y).count_to(x);
                            if there > 1 || back > 1 {
                                return Err(format!("{name}: several witness paths"));
                            }
                            if there == 1 && back == 1 {
                                *count += 1;
                            }
                        }
                    }
                }
                if a[0] != a[1] {
                    return Err(format!("{name}: A0={} A1={}", a[0], a[1]));
                }
            }
        }
    }
    Ok(format!("{pairs} field pairs on C3..C8"))
}

fn optimal_pairs() -> Outcome {
    let mut checked = 0;
    for (name, k) in exhaustive_graphs() {
        let g = assert_graph(&k).unwrap();
        let betti = Oracle::new(&k).all_betti();
        let beta1 = betti.get(1).copied().unwrap_or(0);
        let connected = betti[0] == 1;
        let optimal: Vec<_> = enumerate_gvfs(g)
            .unwrap()
            .into_iter()
            .filter(|v| {
                (0..betti.len())
                    .all(|q| v.critical().filter(|id| k.dim_of(*id) == q).count() == betti[q])
            })
            .collect();
        let essential = |v: &dmt::GradientVectorField, q: usize| {
            let f = realize_dmf(&k, v).unwrap();
            classify_critical(&k, &f)
                .unwrap()
                .into_iter()
                .filter(|(id, kind)| *kind == CriticalKind::Essential && k.dim_of(*id) == q)
                .map(|(id, _)| id)
                .collect::<Vec<_>>()
        };
        let paths: Vec<FieldPaths> = optimal
            .iter()
            .map(|v| FieldPaths::new(g, v.clone()))
            .collect();
        for (i, p1) in paths.iter().enumerate() {
            for (j, p2) in paths.iter().enumerate() {
                checked += 1;
                let r0 = ConnectionReport::between(p1, p2, 0).unwrap();
                if r0.a_q() != betti[0] {
                    return Err(format!("{name}: A0={} but β0={}", r0.a_q(), betti[0]));
                }
                let strong = |r: &ConnectionReport, a: &[_], b: &[_]| {
                    a.len() == 1 && b.len() == 1 && r.strong_pairs().any(|p| p == (a[0], b[0]))
                };
                if connected && !strong(&r0, &essential(&optimal[i], 0), &essential(&optimal[j], 0))
                {
                    return Err(format!("{name}: essential vertices not strongly connected"));
                }
                if beta1 == 1 {
                    let r1 = ConnectionReport::between(p1, p2, 1).unwrap();
                    if !strong(&r1, &essential(&optimal[i], 1), &essential(&optimal[j], 1)) {
                        return Err(format!("{name}: essential edges not strongly connected"));
                    }
                }
            }
        }
    }
    Ok(format!("{checked} optimal pairs"))
}

fn cross_module() -> Outcome {
    let mut functions = 0;
    for (name, k, f) in test_dmfs() {
        let o = Oracle::new(&k);
        let d = persistence_pairs(&k, &f).map_err(|e| e.to_string())?;
        let zero = o.ids_to_indices(&k, &d.zero_persistence);
        let field = o.ids_to_indices(&k, gradient_field(&k, &f).unwrap().pairs());
        if zero != field || field != o.gradient_pairs(f.values()) {
            return Err(format!(
                "{name}: zero-persistence pairs differ from the gradient field"
            ));
        }
        functions += 1;
    }
    let mut fields = 0;
    for (name, k) in exhaustive_graphs() {
        for v in enumerate_gvfs(assert_graph(&k).unwrap()).unwrap() {
            let f = realize_dmf(&k, &v).map_err(|e| e.to_string())?;
            if gradient_field(&k, &f).map_err(|e| e.to_string())? != v {
                return Err(format!("{name}: round trip changes a field"));
            }
            fields += 1;
        }
    }
    Ok(format!("{functions} functions, {fields} round trips"))
}

fn enumeration_counts() -> Outcome {
    let mut counts = Vec::new();
    for (name, expected) in [("P2", 3), ("C3", 16)] {
        let k = corpus_entry(name).unwrap().graph;
        let o = Oracle::new(&k);
        let brute = o.acyclic_matchings();
        let ours: BTreeSet<Vec<(usize, usize)>> = enumerate_gvfs(assert_graph(&k).unwrap())
            .unwrap()
            .iter()
            .map(|v| o.ids_to_indices(&k, v.pairs()).into_iter().collect())
            .collect();
        if brute.len() != expected || ours != brute {
            return Err(format!(
                "{name}: {} fields, brute force {}",
                ours.len(),
                brute.len()
            ));
        }
        counts.push(format!("{name}={}", ours.len()));
    }
    Ok(counts.join(" "))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        (1, "fig4 strong pairs", fig4_strong_pairs),
        (2, "A0 - A1 = chi over all field pairs", euler_theorem),
        (
            3,
            "Morse equalities on 1000 random functions",
            morse_equalities,
        ),
        (4, "prefix Betti numbers match rank oracle", prefix_betti),
        (
            5,
            "persistence pairs partition critical simplices",
            pair_structure,
        ),
        (
            6,
            "criticality stable on sub-level complexes",
            sublevel_stability,
        ),
        (
            7,
            "unique partners and witnesses on trees",
            forest_uniqueness,
        ),
        (8, "unique witnesses and A0 = A1 on cycles", cycle_graphs),
        (
            9,
            "optimal pairs: A0 = beta0, essential simplices connected",
            optimal_pairs,
        ),
        (
            10,
            "zero-persistence pairs and realize round trip",
            cross_module,
        ),
        (
            11,
            "enumeration counts match brute force",
            enumeration_counts,
        ),
    ];
    let mut failed = Vec::new();
    for (n, title, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS [{n:2}] {title}: {detail}"),
            Err(detail) => {
                println!("FAIL [{n:2}] {title}: {detail}");
                failed.push(n);
            }
        }
    }
    assert_eq!(failed, KNOWN_FAILURES, "unexpected acceptance outcome");
}
