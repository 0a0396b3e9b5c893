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

//! Connectivity of abstract induced subgraphs. Crossings play no part here.

use std::collections::BTreeSet;

use crate::drawing::Drawing;

/// `G[S]` for a vertex set `S` of a drawing, as plain adjacency.
pub(crate) struct Sub {
    /// Local index -> drawing vertex.
    pub verts: Vec<usize>,
    /// Local adjacency: (local neighbour, drawing edge).
    pub adj: Vec<Vec<(usize, usize)>>,
    pub edges: Vec<usize>,
}

impl Sub {
    pub fn new(d: &Drawing, inside: &[bool]) -> Sub {
        let verts: Vec<usize> = (0..d.n()).filter(|&v| inside[v]).collect();
        let mut local = vec![usize::MAX; d.n()];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); verts.len()];
        let mut edges = Vec::new();
        for (e, edge) in d.edges().iter().enumerate() {
            let [a, b] = edge.ends;
            if inside[a] && inside[b] {
                adj[local[a]].push((local[b], e));
                adj[local[b]].push((local[a], e));
                edges.push(e);
            }
        }
        Sub { verts, adj, edges }
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    /// Articulation points of the graph minus vertex `skip_v` and edge
    /// `skip_e`, plus whether what remains is connected (lowpoint DFS).
    fn articulations(&self, skip_v: Option<usize>, skip_e: Option<usize>) -> (bool, Vec<usize>) {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut cut = vec![false; n];
        let Some(root) = (0..n).find(|&v| Some(v) != skip_v) else {
            return (true, Vec::new());
        };
        let mut t = 0;
        // Iterative DFS: (vertex, parent edge, next neighbour position).
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = t;
        low[root] = t;
        t += 1;
        let mut root_children = 0;
        while let Some(top) = stack.last_mut() {
            let (v, pe) = (top.0, top.1);
            if top.2 < self.adj[v].len() {
                let (w, e) = self.adj[v][top.2];
                top.2 += 1;
                if Some(w) == skip_v || Some(e) == skip_e || e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = t;
                    low[w] = t;
                    t += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        cut[p] = true;
                    }
                }
            }
        }
        cut[root] = root_children > 1;
        let alive = n - usize::from(skip_v.is_some());
        let reached = disc.iter().filter(|&&x| x != usize::MAX).count();
        (reached == alive, (0..n).filter(|&v| cut[v]).collect())
    }

    /// At least three vertices, connected, no cut vertex.
    pub fn two_connected_without(&self, skip_e: Option<usize>) -> bool {
        if self.n() < 3 {
            return false;
        }
        let (conn, cuts) = self.articulations(None, skip_e);
        conn && cuts.is_empty()
    }

    pub fn two_connected(&self) -> bool {
        self.two_connected_without(None)
    }

    /// Edges whose removal keeps the graph 2-connected.
    pub fn removable(&self) -> BTreeSet<usize> {
        self.edges
            .iter()
            .copied()
            .filter(|&e| self.two_connected_without(Some(e)))
            .collect()
    }

    fn connected_without(&self, s: usize, t: usize) -> bool {
        let Some(root) = (0..self.n()).find(|&v| v != s && v != t) else {
            return true;
        };
        let mut seen = vec![false; self.n()];
        seen[s] = true;
        seen[t] = true;
        seen[root] = true;
        let mut stack = vec![root];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count + 2 == self.n()
    }

    /// All 2-vertex cut-sets, as sorted drawing-vertex pairs.
    pub fn cut_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        if self.n() < 4 {
            return out;
        }
        for s in 0..self.n() {
            let (conn, cuts) = self.articulations(Some(s), None);
            if !conn {
                // s alone separates; t may still swallow a whole side.
                for t in (0..self.n()).filter(|&t| t != s) {
                    if !self.connected_without(s, t) {
                        out.insert(ordered(self.verts[s], self.verts[t]));
                    }
                }
                continue;
            }
            for t in cuts {
                out.insert(ordered(self.verts[s], self.verts[t]));
            }
        }
        out
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}
