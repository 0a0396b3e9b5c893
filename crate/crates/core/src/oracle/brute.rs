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

//! Maximality from first principles.
//!
//! The drawing is copied into a bare half-edge map. For each absent pair
//! `uv` every way of drawing it is tried and the result is tested with
//! Euler's formula: inside a face (any corner at `u`, any corner at `v`), or
//! across one clean non-incident edge through a new degree-4 node (both
//! alternating rotations there). Nothing is shared with the fast path.

use crate::drawing::{Drawing, Node};

#[derive(Clone)]
struct Map {
    rot: Vec<Vec<usize>>,
    tail: Vec<usize>,
    twin: Vec<usize>,
}

impl Map {
    fn of(d: &Drawing) -> Map {
        let darts = d.dart_count();
        let mut tail = vec![0; darts];
        let mut twin = vec![0; darts];
        for x in 0..darts {
            tail[x] = d.node_index(d.tail(x));
            twin[x] = (0..darts)
                .find(|&y| y != x && d.segment(y) == d.segment(x))
                .unwrap();
        }
        let rot = (0..d.node_count()).map(|i| d.rotation(d.node(i)).to_vec()).collect();
        Map { rot, tail, twin }
    }

    fn half_edge(&mut self, at: usize) -> usize {
        self.tail.push(at);
        self.twin.push(usize::MAX);
        self.tail.len() - 1
    }

    fn join(&mut self, a: usize, b: usize) {
        self.twin[a] = b;
        self.twin[b] = a;
    }

    fn spherical(&self) -> bool {
        let h = self.tail.len();
        let mut next_at = vec![0; h];
        for r in &self.rot {
            for (i, &x) in r.iter().enumerate() {
                next_at[x] = r[(i + 1) % r.len()];
            }
        }
        let mut seen = vec![false; h];
        let mut faces = 0;
        for s in 0..h {
            if seen[s] {
                continue;
            }
            faces += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = next_at[self.twin[x]];
            }
        }
        self.rot.len() + faces == h / 2 + 2
    }
}

fn clean_route(m: &Map, u: usize, v: usize) -> bool {
    for i in 0..m.rot[u].len() {
        for j in 0..m.rot[v].len() {
            let mut t = m.clone();
            let a = t.half_edge(u);
            let b = t.half_edge(v);
            t.join(a, b);
            t.rot[u].insert(i + 1, a);
            t.rot[v].insert(j + 1, b);
            if t.spherical() {
                return true;
            }
        }
    }
    false
}

/// `x0` runs along the crossed edge; its twin is cut at the new node.
fn crossing_route(m: &Map, x0: usize, u: usize, v: usize) -> bool {
    let y0 = m.twin[x0];
    for swap in [false, true] {
        for i in 0..m.rot[u].len() {
            for j in 0..m.rot[v].len() {
                let mut t = m.clone();
                let c = t.rot.len();
                t.rot.push(Vec::new());
                let cx = t.half_edge(c);
                let cy = t.half_edge(c);
                t.join(x0, cx);
                t.join(y0, cy);
                let uc = t.half_edge(u);
                let cu = t.half_edge(c);
                let vc = t.half_edge(v);
                let cv = t.half_edge(c);
                t.join(uc, cu);
                t.join(vc, cv);
                t.rot[c] = if swap { vec![cx, cv, cy, cu] } else { vec![cx, cu, cy, cv] };
                t.rot[u].insert(i + 1, uc);
                t.rot[v].insert(j + 1, vc);
                if t.spherical() {
                    return true;
                }
            }
        }
    }
    false
}

/// No edge can be added keeping the drawing simple and 1-plane.
pub fn brute_maximality(d: &Drawing) -> bool {
    let m = Map::of(d);
    for u in 0..d.n() {
        for v in u + 1..d.n() {
            if d.adjacent(u, v) {
                continue;
            }
            if clean_route(&m, u, v) {
                return false;
            }
            for e in 0..d.m() {
                let edge = d.edge(e);
                if !d.is_clean(e) || edge.has_end(u) || edge.has_end(v) {
                    continue;
                }
                let x0 = (0..d.dart_count())
                    .find(|&x| d.tail(x) == Node::Vertex(edge.ends[0]) && d.dart_edge(x) == e)
                    .unwrap();
                if crossing_route(&m, x0, u, v) {
                    return false;
                }
            }
        }
    }
    true
}
