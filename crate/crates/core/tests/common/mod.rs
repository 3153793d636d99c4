//! Independent reference implementations used by the integration suites.
//!
//! Everything here works from simplex vertex sets and plain values, without
//! the library's face tables, reduction code or path search.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dmt::connectivity::assert_graph;
use dmt::corpus::corpus;
use dmt::generate::{enumerate_gvfs, random_dmf};
use dmt::{IntMorseFunction, SimplexId, SimplicialComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A complex seen only through names and vertex sets.
pub struct Oracle {
    pub names: Vec<String>,
    pub verts: Vec<BTreeSet<String>>,
    pub facets: Vec<Vec<usize>>,
    pub cofacets: Vec<Vec<usize>>,
}

impl Oracle {
    pub fn new(k: &SimplicialComplex) -> Self {
        let names: Vec<String> = k.ids().map(|id| k.name(id)).collect();
        let verts: Vec<BTreeSet<String>> = k
            .ids()
            .map(|id| k.simplex(id).vertices().iter().cloned().collect())
            .collect();
        let n = names.len();
        let mut facets = vec![Vec::new(); n];
        let mut cofacets = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if verts[i].len() + 1 == verts[j].len() && verts[i].is_subset(&verts[j]) {
                    facets[j].push(i);
                    cofacets[i].push(j);
                }
            }
        }
        Self {
            names,
            verts,
            facets,
            cofacets,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.verts[i].len() - 1
    }

    pub fn index(&self, name: &str) -> usize {
        self.names.iter().position(|n| n == name).unwrap()
    }

    /// F₂ Betti numbers of the closed set `cells`, up to dimension `top`.
    pub fn betti(&self, cells: &[usize], top: usize) -> Vec<usize> {
        let by_dim = |q: usize| -> Vec<usize> {
            cells
                .iter()
                .copied()
                .filter(|&c| self.dim(c) == q)
                .collect()
        };
        let rank_of = |q: usize| -> usize {
            // boundary from dimension q to q-1
            if q == 0 {
                return 0;
            }
            let rows = by_dim(q - 1);
            let cols = by_dim(q);
            let matrix: Vec<Vec<bool>> = cols
                .iter()
                .map(|&c| rows.iter().map(|r| self.facets[c].contains(r)).collect())
                .collect();
            f2_rank(matrix)
        };
        (0..=top)
            .map(|q| by_dim(q).len() - rank_of(q) - rank_of(q + 1))
            .collect()
    }

    pub fn all_betti(&self) -> Vec<usize> {
        let top = (0..self.len()).map(|i| self.dim(i)).max().unwrap_or(0);
        self.betti(&(0..self.len()).collect::<Vec<_>>(), top)
    }

    /// Critical simplices straight from the definition.
    pub fn critical(&self, f: &[i64]) -> Vec<bool> {
        (0..self.len())
            .map(|s| {
                self.facets[s].iter().all(|&a| f[a] < f[s])
                    && self.cofacets[s].iter().all(|&t| f[t] > f[s])
            })
            .collect()
    }

    /// Gradient pairs `(α, β)`: `α` a facet of `β` with `f(α) ≥ f(β)`.
    pub fn gradient_pairs(&self, f: &[i64]) -> BTreeSet<(usize, usize)> {
        (0..self.len())
            .flat_map(|b| self.facets[b].iter().map(move |&a| (a, b)))
            .filter(|&(a, b)| f[a] >= f[b])
            .collect()
    }

    /// Every acyclic matching on the Hasse diagram, by subset enumeration.
    pub fn acyclic_matchings(&self) -> BTreeSet<Vec<(usize, usize)>> {
        let edges: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|b| self.facets[b].iter().map(move |&a| (a, b)))
            .collect();
        assert!(edges.len() <= 20, "subset enumeration is exponential");
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << edges.len()) {
            let chosen: Vec<(usize, usize)> = (0..edges.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| edges[i])
                .collect();
            let mut used = vec![0; self.len()];
            for &(a, b) in &chosen {
                used[a] += 1;
                used[b] += 1;
            }
            if used.iter().any(|&u| u > 1) || !self.acyclic(&chosen) {
                continue;
            }
            let mut sorted = chosen;
            sorted.sort();
            out.insert(sorted);
        }
        out
    }

    /// Kahn's algorithm on the Hasse diagram with matched edges reversed.
    pub fn acyclic(&self, matching: &[(usize, usize)]) -> bool {
        let n = self.len();
        let matched: BTreeSet<(usize, usize)> = matching.iter().copied().collect();
        let mut out_edges = vec![Vec::new(); n];
        for b in 0..n {
            for &a in &self.facets[b] {
                if matched.contains(&(a, b)) {
                    out_edges[a].push(b);
                } else {
                    out_edges[b].push(a);
                }
            }
        }
        let mut indeg = vec![0; n];
        for outs in &out_edges {
            for &t in outs {
                indeg[t] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(x) = queue.pop() {
            seen += 1;
            for &t in &out_edges[x] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push(t);
                }
            }
        }
        seen == n
    }

    /// Every V-path of type (p, p+1) from `start` to `end`, by recursion on
    /// the pair list.
    pub fn v_paths(
        &self,
        pairs: &BTreeSet<(usize, usize)>,
        start: usize,
        end: usize,
        p: usize,
    ) -> Vec<Vec<usize>> {
        let up: BTreeMap<usize, usize> = pairs.iter().copied().collect();
        let down: BTreeMap<usize, usize> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        let mut out = Vec::new();
        let mut path = vec![start];
        self.extend(&up, &down, &mut path, end, p, &mut out);
        out
    }

    fn extend(
        &self,
        up: &BTreeMap<usize, usize>,
        down: &BTreeMap<usize, usize>,
        path: &mut Vec<usize>,
        end: usize,
        p: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let here = *path.last().unwrap();
        if here == end {
            out.push(path.clone());
        }
        let next: Vec<usize> = if self.dim(here) == p {
            up.get(&here).copied().into_iter().collect()
        } else {
            self.facets[here]
                .iter()
                .copied()
                .filter(|a| down.get(&here) != Some(a))
                .collect()
        };
        for n in next {
            assert!(!path.contains(&n), "closed V-path in an acyclic field");
            path.push(n);
            self.extend(up, down, path, end, p, out);
            path.pop();
        }
    }

    /// Strongly connected pairs in dimension `q` between the critical
    /// simplices of two fields on a graph.
    pub fn strong_pairs(
        &self,
        v1: &BTreeSet<(usize, usize)>,
        v2: &BTreeSet<(usize, usize)>,
        q: usize,
    ) -> BTreeSet<(usize, usize)> {
        let critical = |v: &BTreeSet<(usize, usize)>| -> Vec<usize> {
            (0..self.len())
                .filter(|&s| self.dim(s) == q && !v.iter().any(|&(a, b)| a == s || b == s))
                .collect()
        };
        let (fwd, bwd) = if q == 0 { (v2, v1) } else { (v1, v2) };
        let mut out = BTreeSet::new();
        for &a in &critical(v1) {
            for &b in &critical(v2) {
                if !self.v_paths(fwd, a, b, 0).is_empty() && !self.v_paths(bwd, b, a, 0).is_empty()
                {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    pub fn ids_to_indices(
        &self,
        k: &SimplicialComplex,
        pairs: &[(SimplexId, SimplexId)],
    ) -> BTreeSet<(usize, usize)> {
        pairs
            .iter()
            .map(|&(a, b)| (self.index(&k.name(a)), self.index(&k.name(b))))
            .collect()
    }
}

/// Gaussian elimination over F₂ on a list of rows.
pub fn f2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] {
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot_row) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn complex(maximal: &[&str]) -> SimplicialComplex {
    SimplicialComplex::build(maximal.iter().map(|s| s.split('-'))).unwrap()
}

/// Cone over a path: triangles o-a-b, o-b-c, o-c-d, o-d-e.
pub fn triangle_fan() -> SimplicialComplex {
    complex(&["a-b-o", "b-c-o", "c-d-o", "d-e-o"])
}

pub fn tetrahedron_boundary() -> SimplicialComplex {
    complex(&["a-b-c", "a-b-d", "a-c-d", "b-c-d"])
}

/// Seven-vertex torus.
pub fn torus() -> SimplicialComplex {
    let tris: Vec<String> = (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .map(|t| {
            t.iter()
                .map(|v| format!("t{v}"))
                .collect::<Vec<_>>()
                .join("-")
        })
        .collect();
    complex(&tris.iter().map(String::as_str).collect::<Vec<_>>())
}

/// Six-vertex projective plane.
pub fn projective_plane() -> SimplicialComplex {
    complex(&[
        "p1-p2-p4", "p1-p2-p6", "p1-p3-p5", "p1-p3-p6", "p1-p4-p5", "p2-p3-p4", "p2-p3-p5",
        "p2-p5-p6", "p3-p4-p6", "p4-p5-p6",
    ])
}

pub fn two_dimensional() -> Vec<(String, SimplicialComplex)> {
    vec![
        ("fan".into(), triangle_fan()),
        ("tetra".into(), tetrahedron_boundary()),
        ("torus".into(), torus()),
        ("rp2".into(), projective_plane()),
        ("triangle".into(), complex(&["a-b-c"])),
    ]
}

/// A function with the gradient field of `f` but values from a random
/// linear extension with random gaps, so test functions are not all
/// consecutive integers.
pub fn reshuffle(k: &SimplicialComplex, f: &IntMorseFunction, seed: u64) -> IntMorseFunction {
    let o = Oracle::new(k);
    let vals = f.values();
    let pairs = o.gradient_pairs(vals);
    let n = o.len();
    // edge x -> y means f(x) must exceed f(y)
    let mut succ = vec![Vec::new(); n];
    for b in 0..n {
        for &a in &o.facets[b] {
            if pairs.contains(&(a, b)) {
                succ[a].push(b);
            } else {
                succ[b].push(a);
            }
        }
    }
    let mut pending: Vec<usize> = succ.iter().map(Vec::len).collect();
    let mut preds = vec![Vec::new(); n];
    for (x, ys) in succ.iter().enumerate() {
        for &y in ys {
            preds[y].push(x);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ready: Vec<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
    let mut out = vec![0i64; n];
    let mut next = rng.random_range(-50..50);
    while !ready.is_empty() {
        let pick = rng.random_range(0..ready.len());
        let x = ready.swap_remove(pick);
        out[x] = next;
        next += rng.random_range(1..4);
        for &p in &preds[x] {
            pending[p] -= 1;
            if pending[p] == 0 {
                ready.push(p);
            }
        }
    }
    let by_name: Vec<(String, i64)> = (0..n).map(|i| (o.names[i].clone(), out[i])).collect();
    IntMorseFunction::from_named(k, by_name.iter().map(|(s, v)| (s.as_str(), *v))).unwrap()
}

/// The shared pool of test functions: sampled fields on every corpus graph,
/// the two figure functions, and random functions on 2-dimensional
/// complexes, each realized both canonically and with shuffled values.
pub fn test_dmfs() -> Vec<(String, SimplicialComplex, IntMorseFunction)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    for entry in corpus() {
        let g = assert_graph(&entry.graph).unwrap();
        let k = entry.graph.clone();
        if g.edge_count() <= 8 {
            let mut fields = enumerate_gvfs(g).unwrap();
            fields.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            for v in fields.into_iter().take(6) {
                let f = dmt::generate::realize_dmf(&k, &v).unwrap();
                out.push((entry.name.clone(), k.clone(), reshuffle(&k, &f, seed)));
                out.push((entry.name.clone(), k.clone(), f));
                seed += 1;
            }
        } else {
            for _ in 0..6 {
                out.push((entry.name.clone(), k.clone(), random_dmf(&k, seed)));
                seed += 1;
            }
        }
        for (name, f) in &entry.functions {
            out.push((format!("{}:{name}", entry.name), k.clone(), f.clone()));
        }
    }
    for (name, k) in two_dimensional() {
        for _ in 0..20 {
            let f = random_dmf(&k, seed);
            out.push((name.clone(), k.clone(), reshuffle(&k, &f, seed)));
            out.push((name.clone(), k.clone(), f));
            seed += 1;
        }
    }
    out
}
