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

//! Structural facts every maximal 1-plane drawing of order at least four
//! satisfies, checked directly on a drawing.

use std::collections::BTreeSet;
use std::fmt;

use crate::drawing::{Drawing, Node};
use crate::maximality::is_maximal;
use crate::structure::{clean_degree_bound, find_hermits, induced_degree, skeleton};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyFailure {
    pub property: &'static str,
    pub detail: String,
}

impl fmt::Display for PropertyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.property, self.detail)
    }
}

/// Property names, in check order.
pub const PROPERTIES: [&str; 10] = [
    "maximal",
    "face-pairs-adjacent",
    "crossing-spans-k4",
    "face-at-most-four-vertices",
    "clean-subgraph-2-connected",
    "two-clean-edges-in-induced",
    "skeleton-maximal-min-degree-3",
    "hermit-neighbours",
    "hermit-face",
    "hermit-nests",
];

/// Induced subsets tried for the clean-edge count: all of them up to this
/// order, otherwise `V`, every `V - x` and every closed neighbourhood.
const EXHAUSTIVE_SUBSETS: usize = 10;

/// Every failed property; empty when all hold. A non-maximal input fails
/// `maximal` and nothing else is checked.
pub fn check_properties(d: &Drawing) -> Vec<PropertyFailure> {
    let mut out = Vec::new();
    let mut fail = |property: &'static str, detail: String| out.push(PropertyFailure { property, detail });
    if d.n() < 4 || !is_maximal(d) {
        let why = if d.n() < 4 { "order below four" } else { "an edge can still be added" };
        fail("maximal", why.to_string());
        return out;
    }
    let vid = |v: usize| d.vertex_id(v).to_string();

    for (f, face) in d.faces().faces.iter().enumerate() {
        let vs: BTreeSet<usize> = face.vertices.iter().copied().collect();
        if vs.len() < 2 {
            fail("face-pairs-adjacent", format!("face {f} has {} vertices", vs.len()));
        }
        let vs: Vec<usize> = vs.into_iter().collect();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                if !d.adjacent(a, b) {
                    fail("face-pairs-adjacent", format!("face {f}: {} {} not adjacent", vid(a), vid(b)));
                }
            }
        }
        if vs.len() > 4 {
            fail("face-at-most-four-vertices", format!("face {f} has {} vertices", vs.len()));
        }
    }

    for c in d.crossings() {
        let [e, g] = c.edges;
        let mut q: Vec<usize> = d.edge(e).ends.to_vec();
        q.extend(d.edge(g).ends);
        for i in 0..4 {
            for j in i + 1..4 {
                if !d.adjacent(q[i], q[j]) {
                    fail("crossing-spans-k4", format!("crossing {}: {} {} not adjacent", c.id, vid(q[i]), vid(q[j])));
                }
            }
        }
    }

    if let Some(detail) = clean_two_connected(d) {
        fail("clean-subgraph-2-connected", detail);
    }

    for set in induced_sets(d) {
        for &w in &set {
            if induced_degree(d, &set, w) >= 3 {
                let clean = clean_degree_bound(d, &set, w).expect("w in set");
                if clean < 2 {
                    let names: Vec<String> = set.iter().map(|&v| vid(v)).collect();
                    fail(
                        "two-clean-edges-in-induced",
                        format!("{} has {clean} clean edges in G[{}]", vid(w), names.join(",")),
                    );
                }
            }
        }
    }

    let sk = match skeleton(d) {
        Ok(s) => s,
        Err(e) => {
            fail("skeleton-maximal-min-degree-3", e.to_string());
            return out;
        }
    };
    if !is_maximal(&sk.skeleton) {
        fail("skeleton-maximal-min-degree-3", "skeleton not maximal".into());
    }
    if let Some(v) = (0..sk.skeleton.n()).find(|&v| sk.skeleton.degree(v) < 3) {
        fail(
            "skeleton-maximal-min-degree-3",
            format!("skeleton vertex {} has degree {}", sk.skeleton.vertex_id(v), sk.skeleton.degree(v)),
        );
    }

    for h in find_hermits(d) {
        let [u, v] = h.neighbors;
        let clean = |a: usize, b: usize| d.edge_between(a, b).is_some_and(|e| d.is_clean(e));
        if !d.adjacent(u, v) || !clean(h.vertex, u) || !clean(h.vertex, v) {
            fail("hermit-neighbours", format!("hermit {}", vid(h.vertex)));
            continue;
        }
        match face_after_removal(d, h.vertex, u, v) {
            Some(vs) if vs == BTreeSet::from([vid(u), vid(v)]) => {}
            other => fail("hermit-face", format!("hermit {}: face vertices {other:?}", vid(h.vertex))),
        }
    }

    let mut used = BTreeSet::new();
    for (h, a) in sk.hermits.iter().zip(&sk.assignment) {
        match a {
            Some(i) if used.insert(*i) => {}
            Some(_) => fail("hermit-nests", format!("hermit {} shares a nest", vid(h.vertex))),
            None => fail("hermit-nests", format!("hermit {} is in no nest of the skeleton", vid(h.vertex))),
        }
    }
    out
}

/// `None` when the clean edges form a spanning 2-connected graph.
fn clean_two_connected(d: &Drawing) -> Option<String> {
    let n = d.n();
    let mut adj = vec![Vec::new(); n];
    for (e, edge) in d.edges().iter().enumerate() {
        if d.is_clean(e) {
            let [a, b] = edge.ends;
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let connected_without = |skip: Option<usize>| {
        let Some(root) = (0..n).find(|&v| Some(v) != skip) else {
            return true;
        };
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] && Some(w) != skip {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count + usize::from(skip.is_some()) == n
    };
    if !connected_without(None) {
        return Some("clean edges do not connect all vertices".into());
    }
    (0..n)
        .find(|&v| !connected_without(Some(v)))
        .map(|v| format!("{} is a cut vertex of the clean subgraph", d.vertex_id(v)))
}

fn induced_sets(d: &Drawing) -> Vec<Vec<usize>> {
    let n = d.n();
    if n <= EXHAUSTIVE_SUBSETS {
        return (1u32..1 << n)
            .map(|mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
            .collect();
    }
    let mut out: Vec<Vec<usize>> = vec![(0..n).collect()];
    for x in 0..n {
        out.push((0..n).filter(|&v| v != x).collect());
        let mut nb: Vec<usize> = d.neighbors(x).chain([x]).collect();
        nb.sort();
        out.push(nb);
    }
    out
}

/// Vertex ids on the face that hermit `h` leaves behind once `h` and `uv`
/// are deleted.
fn face_after_removal(d: &Drawing, h: usize, u: usize, v: usize) -> Option<BTreeSet<String>> {
    let uv = d.edge_between(u, v)?;
    let mut dead_v = vec![false; d.n()];
    dead_v[h] = true;
    let mut dead_e = vec![false; d.m()];
    dead_e[uv] = true;
    for &(_, e) in d.incidences(h) {
        dead_e[e] = true;
    }
    let g = d.remove(&dead_v, &dead_e).ok()?;
    // First surviving dart after `u -> h` in the rotation at `u`.
    let start = d.dart_from(Node::Vertex(u), d.edge_between(h, u)?)?;
    let mut x = d.rot_next(start);
    while dead_e[d.dart_edge(x)] {
        x = d.rot_next(x);
        if x == start {
            return None;
        }
    }
    let gu = g.vertex_index(d.vertex_id(u))?;
    let ge = g.edge_index(&d.edge(d.dart_edge(x)).id)?;
    let gx = g.dart_from(Node::Vertex(gu), ge)?;
    let face = &g.faces().faces[g.faces().dart_face[gx]];
    Some(face.vertices.iter().map(|&w| g.vertex_id(w).to_string()).collect())
}
