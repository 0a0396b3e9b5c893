// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Exhaustive enumeration of maximal 1-plane drawings of small order.
//!
//! Independent of the analysis modules except for the final
//! `is_maximal` filter, which is itself cross-checked by
//! [`brute_maximality`].

mod battery;
mod brute;
mod canon;
mod embed;
mod graphs;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{parse_drawing, serialize_drawing, Drawing, Raw, Side};
use crate::maximality::{is_maximal, saturate_traced, Policy};

pub use battery::{check_properties, PropertyFailure, PROPERTIES};
pub use brute::brute_maximality;
pub use canon::{canonical_code, canonical_drawing};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("order {0} is outside the supported range 4..=6 (7 needs the long-run flag)")]
    OutOfRange(usize),
    #[error("checkpoint {path}: {detail}")]
    Checkpoint { path: PathBuf, detail: String },
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Search-space cuts. Both hold for every maximal drawing, so switching
/// them off changes the running time only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pruning {
    /// Crossing pairs must span a `K4` of the underlying graph.
    pub k4_crossings: bool,
    /// Minimum degree at least two.
    pub min_degree_two: bool,
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning {
            k4_crossings: true,
            min_degree_two: true,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnumOptions {
    pub pruning: Pruning,
    /// Permit order 7.
    pub long_run: bool,
    /// Worker threads; `None` lets the pool decide. Results do not depend
    /// on it.
    pub jobs: Option<usize>,
    /// Resume from and record progress in this file.
    pub checkpoint: Option<PathBuf>,
}

/// One maximal drawing in canonical form.
#[derive(Clone, Debug)]
pub struct MaximalDrawing {
    pub code: Vec<u32>,
    pub drawing: Drawing,
    /// Index of the underlying graph's isomorphism class.
    pub graph_class: usize,
}

impl MaximalDrawing {
    pub fn edges(&self) -> usize {
        self.drawing.m()
    }

    pub fn crossings(&self) -> usize {
        self.drawing.crossing_count()
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub n: usize,
    /// Sorted by code.
    pub drawings: Vec<MaximalDrawing>,
    /// Underlying graph classes searched.
    pub graphs_searched: usize,
}

impl Enumeration {
    pub fn min_edges(&self) -> Option<usize> {
        self.drawings.iter().map(MaximalDrawing::edges).min()
    }

    /// Distinct underlying graphs among the maximal drawings.
    pub fn graph_classes(&self) -> usize {
        self.drawings
            .iter()
            .map(|m| m.graph_class)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Distinct underlying graphs with exactly `e` edges.
    pub fn graph_classes_with(&self, e: usize) -> usize {
        self.drawings
            .iter()
            .filter(|m| m.edges() == e)
            .map(|m| m.graph_class)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// `(edges, drawings, graphs)` per edge count.
    pub fn by_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for m in &self.drawings {
            *counts.entry(m.edges()).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|(e, k)| (e, k, self.graph_classes_with(e)))
            .collect()
    }

    /// `<dir>/n<n>-<k>.1pl` per drawing plus `<dir>/index.tsv`.
    pub fn export(&self, dir: &Path) -> Result<(), OracleError> {
        std::fs::create_dir_all(dir)?;
        let mut index = String::from("file\tn\te\tcrossings\n");
        for (k, m) in self.drawings.iter().enumerate() {
            let name = format!("n{}-{k:04}.1pl", self.n);
            std::fs::write(dir.join(&name), serialize_drawing(&m.drawing))?;
            writeln!(index, "{name}\t{}\t{}\t{}", self.n, m.edges(), m.crossings()).unwrap();
        }
        std::fs::write(dir.join("index.tsv"), index)?;
        Ok(())
    }
}

fn edge_cap(n: usize) -> usize {
    if n >= 5 {
        4 * n - 8
    } else {
        n * (n - 1) / 2
    }
}

/// Crossing matchings: disjoint sets of pairs of non-adjacent edges, one
/// per orbit of the graph's automorphism group. Grown a pair at a time;
/// every orbit of size `k + 1` extends some representative of size `k`.
fn matchings(edges: &[(usize, usize)], mask: u32, n: usize, k4: bool) -> Vec<Vec<[usize; 2]>> {
    let has = |a: usize, b: usize| mask & graphs::pair_bit(n, a, b) != 0;
    let mut cand = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let ((a, b), (c, d)) = (edges[i], edges[j]);
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if k4 && !(has(a, c) && has(a, d) && has(b, c) && has(b, d)) {
                continue;
            }
            cand.push([i, j]);
        }
    }
    let index: BTreeMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let edge_maps: Vec<Vec<usize>> = graphs::automorphisms(n, mask)
        .into_iter()
        .map(|p| {
            edges
                .iter()
                .map(|&(a, b)| index[&(p[a].min(p[b]), p[a].max(p[b]))])
                .collect()
        })
        .collect();
    let canon = |m: &[[usize; 2]]| -> Vec<[usize; 2]> {
        edge_maps
            .iter()
            .map(|map| {
                let mut img: Vec<[usize; 2]> = m
                    .iter()
                    .map(|&[e, f]| [map[e].min(map[f]), map[e].max(map[f])])
                    .collect();
                img.sort_unstable();
                img
            })
            .min()
            .unwrap_or_else(|| m.to_vec())
    };
    let mut out = vec![Vec::new()];
    let mut level: BTreeSet<Vec<[usize; 2]>> = BTreeSet::from([Vec::new()]);
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for m in &level {
            let used: BTreeSet<usize> = m.iter().flatten().copied().collect();
            for p in &cand {
                if used.contains(&p[0]) || used.contains(&p[1]) {
                    continue;
                }
                let mut grown = m.clone();
                grown.push(*p);
                next.insert(canon(&grown));
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Canonical maximal drawings with the given underlying graph, as
/// `(code, serialized)` sorted by code.
fn search_graph(n: usize, mask: u32, pruning: &Pruning) -> Vec<(Vec<u32>, String)> {
    let edges: Vec<(usize, usize)> = graphs::pairs(n)
        .into_iter()
        .filter(|&(a, b)| mask & graphs::pair_bit(n, a, b) != 0)
        .collect();
    let mut found: BTreeMap<Vec<u32>, String> = BTreeMap::new();
    for m in matchings(&edges, mask, n, pruning.k4_crossings) {
        // A planar planarization has at most 3(n + c) − 6 arcs.
        if edges.len() + 2 * m.len() + 6 > 3 * (n + m.len()) {
            continue;
        }
        let p = embed::Planarization::new(n, &edges, &m);
        p.for_each_embedding(&mut |d| {
            if is_maximal(&d) {
                found.entry(canonical_code(&d)).or_insert_with(|| {
                    serialize_drawing(&canonical_drawing(&d).1)
                });
            }
        });
    }
    found.into_iter().collect()
}

#[derive(Serialize, Deserialize, Default)]
struct Checkpoint {
    n: usize,
    pruning: Option<Pruning>,
    /// Graph class index -> its canonical maximal drawings.
    done: BTreeMap<usize, Vec<(Vec<u32>, String)>>,
}

fn load_checkpoint(path: &Path, n: usize, pruning: &Pruning) -> Result<Checkpoint, OracleError> {
    let bad = |detail: String| OracleError::Checkpoint {
        path: path.to_path_buf(),
        detail,
    };
    if !path.exists() {
        return Ok(Checkpoint {
            n,
            pruning: Some(pruning.clone()),
            done: BTreeMap::new(),
        });
    }
    let text = std::fs::read_to_string(path)?;
    let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if cp.n != n || cp.pruning.as_ref() != Some(pruning) {
        return Err(bad("belongs to a different run".into()));
    }
    Ok(cp)
}

fn save_checkpoint(path: &Path, cp: &Checkpoint) -> Result<(), OracleError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string(cp).expect("checkpoint serializes"))?;
    std::fs::rename(tmp, path)?;
    Ok(())
}

/// All maximal 1-plane drawings of order `n` up to isomorphism of the
/// planarized embedding (reflections identified).
pub fn enumerate_maximal(n: usize, opts: &EnumOptions) -> Result<Enumeration, OracleError> {
    let top = if opts.long_run { 7 } else { 6 };
    if !(4..=top).contains(&n) {
        return Err(OracleError::OutOfRange(n));
    }
    let classes: Vec<u32> = graphs::connected_classes(n, n - 1, edge_cap(n))
        .into_iter()
        .filter(|&m| !opts.pruning.min_degree_two || graphs::degrees(n, m).iter().all(|&d| d >= 2))
        .collect();
    let mut cp = match &opts.checkpoint {
        Some(path) => load_checkpoint(path, n, &opts.pruning)?,
        None => Checkpoint::default(),
    };
    let todo: Vec<usize> = (0..classes.len()).filter(|i| !cp.done.contains_key(i)).collect();
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = opts.jobs {
            b = b.num_threads(j.max(1));
        }
        b.build().map_err(|e| OracleError::Pool(e.to_string()))?
    };
    // Batches keep the checkpoint fresh; workers share nothing.
    let batch = if opts.checkpoint.is_some() { 8 } else { todo.len().max(1) };
    for chunk in todo.chunks(batch) {
        let results: Vec<(usize, Vec<(Vec<u32>, String)>)> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&i| (i, search_graph(n, classes[i], &opts.pruning)))
                .collect()
        });
        cp.done.extend(results);
        if let Some(path) = &opts.checkpoint {
            cp.n = n;
            cp.pruning = Some(opts.pruning.clone());
            save_checkpoint(path, &cp)?;
        }
    }
    let mut drawings: Vec<MaximalDrawing> = Vec::new();
    for (&class, found) in &cp.done {
        for (code, text) in found {
            let drawing = parse_drawing(text).map_err(|e| OracleError::Checkpoint {
                path: opts.checkpoint.clone().unwrap_or_default(),
                detail: e.to_string(),
            })?;
            drawings.push(MaximalDrawing {
                code: code.clone(),
                drawing,
                graph_class: class,
            });
        }
    }
    drawings.sort_by(|a, b| a.code.cmp(&b.code));
    Ok(Enumeration {
        n,
        drawings,
        graphs_searched: classes.len(),
    })
}

/// Least size of a maximal 1-plane graph of order `n`.
pub fn m_of_n(n: usize, opts: &EnumOptions) -> Result<usize, OracleError> {
    let e = enumerate_maximal(n, opts)?;
    Ok(e.min_edges().expect("maximal drawings exist at every order"))
}

/// A uniformly random labelled tree (Prüfer code) with a random rotation
/// at every vertex. Any rotation system of a tree is spherical.
pub fn random_tree(n: usize, seed: u64) -> Drawing {
    assert!(n >= 2, "a tree drawing needs two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut deg = vec![1; n];
    for &c in &code {
        deg[c] += 1;
    }
    let mut raw = Raw::default();
    for v in 0..n {
        raw.add_vertex(format!("t{v}"));
    }
    let join = |raw: &mut Raw, a: usize, b: usize| {
        let e = raw.add_edge(format!("t{a}-{b}"), a, b);
        raw.vrot[a].push((e, Side::Whole));
        raw.vrot[b].push((e, Side::Whole));
    };
    for &c in &code {
        let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
        join(&mut raw, leaf, c);
        deg[leaf] -= 1;
        deg[c] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    join(&mut raw, last[0], last[1]);
    for r in raw.vrot.iter_mut() {
        use rand::seq::SliceRandom;
        r.shuffle(&mut rng);
    }
    raw.build().expect("tree drawings are valid")
}

/// Random tree of order `n` saturated under `rand:<seed>`, with the
/// drawings passed on the way.
pub fn seeded_saturation(n: usize, seed: u64) -> (Drawing, Vec<Drawing>) {
    saturate_traced(&random_tree(n, seed), &Policy::Random(seed))
}

/// Order cycling through `4..=max_n` by seed.
pub fn corpus_order(seed: u64, max_n: usize) -> usize {
    4 + (seed as usize) % (max_n - 3)
}
