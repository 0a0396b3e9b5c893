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

//! Every spherical rotation system of a planarization.
//!
//! Arcs are placed one at a time so the placed part stays connected. An arc
//! to a new node may sit in any corner of its placed end; an arc between
//! placed nodes needs a corner at each end on one common face. Each rotation
//! system of the whole comes out exactly once, since its restriction to the
//! placed arcs fixes every earlier choice. A crossing is checked for
//! alternation when its fourth arc lands.

use crate::drawing::{Drawing, Raw, Side};

#[derive(Copy, Clone, Debug)]
struct Arc {
    ends: [usize; 2],
    edge: usize,
    side: Side,
}

/// The planarization of an abstract graph with a crossing matching.
pub struct Planarization {
    n: usize,
    edges: Vec<(usize, usize)>,
    crossings: Vec<[usize; 2]>,
    arcs: Vec<Arc>,
    nodes: usize,
}

impl Planarization {
    /// `crossings` pairs edge indices; pairs must be disjoint and
    /// non-adjacent.
    pub fn new(n: usize, edges: &[(usize, usize)], crossings: &[[usize; 2]]) -> Planarization {
        let mut crossed = vec![None; edges.len()];
        for (c, pair) in crossings.iter().enumerate() {
            for &e in pair {
                crossed[e] = Some(n + c);
            }
        }
        let mut arcs = Vec::new();
        for (e, &(u, v)) in edges.iter().enumerate() {
            match crossed[e] {
                None => arcs.push(Arc {
                    ends: [u, v],
                    edge: e,
                    side: Side::Whole,
                }),
                Some(x) => {
                    arcs.push(Arc {
                        ends: [u, x],
                        edge: e,
                        side: Side::Half0,
                    });
                    arcs.push(Arc {
                        ends: [x, v],
                        edge: e,
                        side: Side::Half1,
                    });
                }
            }
        }
        Planarization {
            n,
            edges: edges.to_vec(),
            crossings: crossings.to_vec(),
            arcs,
            nodes: n + crossings.len(),
        }
    }

    /// Placement order: an arc closing on placed nodes goes first; else the
    /// arc whose new end has the most arcs back into the placed part.
    fn order(&self) -> Vec<usize> {
        let mut placed_node = vec![false; self.nodes];
        let mut used = vec![false; self.arcs.len()];
        placed_node[0] = true;
        let mut out = Vec::new();
        while out.len() < self.arcs.len() {
            let closing = (0..self.arcs.len())
                .find(|&a| !used[a] && self.arcs[a].ends.iter().all(|&x| placed_node[x]));
            let pick = closing.or_else(|| {
                (0..self.arcs.len())
                    .filter(|&a| {
                        !used[a] && self.arcs[a].ends.iter().filter(|&&x| placed_node[x]).count() == 1
                    })
                    .max_by_key(|&a| {
                        let fresh = self.arcs[a].ends.into_iter().find(|&x| !placed_node[x]).unwrap();
                        let back = (0..self.arcs.len())
                            .filter(|&b| {
                                !used[b]
                                    && self.arcs[b].ends.contains(&fresh)
                                    && self.arcs[b].ends.iter().any(|&y| placed_node[y])
                            })
                            .count();
                        (back, std::cmp::Reverse(a))
                    })
            });
            let Some(a) = pick else {
                break; // disconnected
            };
            used[a] = true;
            for x in self.arcs[a].ends {
                placed_node[x] = true;
            }
            out.push(a);
        }
        out
    }

    fn tail(&self, dart: usize) -> usize {
        self.arcs[dart / 2].ends[dart & 1]
    }

    /// Call `visit` on each spherical, alternating rotation system, built
    /// as a drawing. Returns `false` if the planarization is disconnected.
    pub fn for_each_embedding(&self, visit: &mut dyn FnMut(Drawing)) -> bool {
        let order = self.order();
        if order.len() < self.arcs.len() {
            return false;
        }
        let mut rot = vec![Vec::new(); self.nodes];
        let mut placed = vec![false; self.nodes];
        placed[0] = true;
        self.place(&order, 0, &mut rot, &mut placed, visit);
        true
    }

    fn faces(&self, rot: &[Vec<usize>]) -> Vec<usize> {
        let mut pos = vec![usize::MAX; 2 * self.arcs.len()];
        for r in rot {
            for (i, &d) in r.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut face = vec![usize::MAX; 2 * self.arcs.len()];
        let mut count = 0;
        for start in 0..face.len() {
            if pos[start] == usize::MAX || face[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            while face[d] == usize::MAX {
                face[d] = count;
                let back = d ^ 1;
                let r = &rot[self.tail(back)];
                d = r[(pos[back] + 1) % r.len()];
            }
            count += 1;
        }
        face
    }

    fn place(
        &self,
        order: &[usize],
        k: usize,
        rot: &mut Vec<Vec<usize>>,
        placed: &mut Vec<bool>,
        visit: &mut dyn FnMut(Drawing),
    ) {
        let Some(&arc) = order.get(k) else {
            if let Some(d) = self.build(rot) {
                visit(d);
            }
            return;
        };
        let [p, q] = self.arcs[arc].ends;
        let (dp, dq) = (2 * arc, 2 * arc + 1);
        if !placed[p] || !placed[q] {
            // A tree arc from the placed end `old` to a fresh node.
            let (old, d_old, new, d_new) = if placed[p] { (p, dp, q, dq) } else { (q, dq, p, dp) };
            placed[new] = true;
            for i in 0..rot[old].len().max(1) {
                let at = (i + 1).min(rot[old].len());
                rot[old].insert(at, d_old);
                rot[new].push(d_new);
                if self.crossing_ok(rot, old) {
                    self.place(order, k + 1, rot, placed, visit);
                }
                rot[new].pop();
                rot[old].remove(at);
            }
            placed[new] = false;
            return;
        }
        let face = self.faces(rot);
        let corner_face = |r: &Vec<usize>, i: usize| face[r[(i + 1) % r.len()]];
        for i in 0..rot[p].len() {
            let fp = corner_face(&rot[p], i);
            for j in 0..rot[q].len() {
                if corner_face(&rot[q], j) != fp {
                    continue;
                }
                rot[p].insert(i + 1, dp);
                rot[q].insert(j + 1, dq);
                if self.crossing_ok(rot, p) && self.crossing_ok(rot, q) {
                    self.place(order, k + 1, rot, placed, visit);
                }
                rot[q].remove(j + 1);
                rot[p].remove(i + 1);
            }
        }
    }

    /// A full crossing rotation must alternate between its two edges.
    fn crossing_ok(&self, rot: &[Vec<usize>], node: usize) -> bool {
        if node < self.n || rot[node].len() < 4 {
            return true;
        }
        let e = |i: usize| self.arcs[rot[node][i] / 2].edge;
        e(0) == e(2) && e(1) == e(3)
    }

    fn build(&self, rot: &[Vec<usize>]) -> Option<Drawing> {
        let mut raw = Raw::default();
        for v in 0..self.n {
            raw.add_vertex(format!("v{v}"));
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            raw.add_edge(format!("e{e}"), u, v);
        }
        for (c, &[a, b]) in self.crossings.iter().enumerate() {
            raw.add_crossing(format!("x{c}"), a, b);
        }
        for (node, r) in rot.iter().enumerate() {
            let toks: Vec<(usize, Side)> = r
                .iter()
                .map(|&d| (self.arcs[d / 2].edge, self.arcs[d / 2].side))
                .collect();
            if node < self.n {
                raw.vrot[node] = toks;
            } else {
                raw.xrot[node - self.n] = toks;
            }
        }
        raw.build().ok()
    }
}
