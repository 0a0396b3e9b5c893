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

use super::build::{Outer, Raw};
use super::{fresh_id, Dart, Drawing, DrawingError, Node, Side};

/// A new edge to splice into a drawing.
///
/// Corners are named by the dart that leaves them: the new segment end is
/// placed in the rotation immediately before `at_u` (resp. `at_v`), i.e. in
/// the corner of the face that lies right of that dart. `None` is only
/// allowed for a vertex without edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splice {
    pub u: usize,
    pub v: usize,
    pub at_u: Option<Dart>,
    pub at_v: Option<Dart>,
    /// Dart of a clean edge to cross; it must lie on the face of `at_u`,
    /// and its reverse on the face of `at_v`.
    pub through: Option<Dart>,
    pub edge_id: String,
    pub crossing_id: Option<String>,
}

impl Drawing {
    pub fn delete_edge(&self, e: usize) -> Result<Drawing, DrawingError> {
        if e >= self.m() {
            return Err(DrawingError::UnknownId(format!("#{e}")));
        }
        let mut dead_e = vec![false; self.m()];
        dead_e[e] = true;
        self.remove(&vec![false; self.n()], &dead_e)
    }

    pub fn delete_edge_id(&self, id: &str) -> Result<Drawing, DrawingError> {
        let e = self
            .edge_index(id)
            .ok_or_else(|| DrawingError::UnknownId(id.to_string()))?;
        self.delete_edge(e)
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Drawing, DrawingError> {
        if v >= self.n() {
            return Err(DrawingError::UnknownId(format!("#{v}")));
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&w| w != v).collect();
        self.induced_subdrawing(&keep)
    }

    pub fn delete_vertex_id(&self, id: &str) -> Result<Drawing, DrawingError> {
        let v = self
            .vertex_index(id)
            .ok_or_else(|| DrawingError::UnknownId(id.to_string()))?;
        self.delete_vertex(v)
    }

    /// Sub-drawing of the subgraph induced by `keep`.
    pub fn induced_subdrawing(&self, keep: &[usize]) -> Result<Drawing, DrawingError> {
        if keep.is_empty() {
            return Err(DrawingError::EmptyVertexSet);
        }
        let mut dead_v = vec![true; self.n()];
        for &v in keep {
            if v >= self.n() {
                return Err(DrawingError::UnknownId(format!("#{v}")));
            }
            dead_v[v] = false;
        }
        let dead_e: Vec<bool> = self
            .edges()
            .iter()
            .map(|e| dead_v[e.ends[0]] || dead_v[e.ends[1]])
            .collect();
        self.remove(&dead_v, &dead_e)
    }

    /// Remove the marked vertices and edges. Marked vertices must only be
    /// incident with marked edges.
    pub fn remove(&self, dead_v: &[bool], dead_e: &[bool]) -> Result<Drawing, DrawingError> {
        let mut vmap = vec![usize::MAX; self.n()];
        let mut raw = Raw::default();
        for v in 0..self.n() {
            if !dead_v[v] {
                vmap[v] = raw.add_vertex(self.vertex_id(v));
            }
        }
        let mut emap = vec![usize::MAX; self.m()];
        for (e, edge) in self.edges().iter().enumerate() {
            if dead_e[e] {
                continue;
            }
            let [u, v] = edge.ends;
            if dead_v[u] || dead_v[v] {
                return Err(DrawingError::UnknownId(edge.id.clone()));
            }
            emap[e] = raw.add_edge(edge.id.clone(), vmap[u], vmap[v]);
        }
        let mut alive_x = vec![false; self.crossing_count()];
        for (c, x) in self.crossings().iter().enumerate() {
            let [a, b] = x.edges;
            if !dead_e[a] && !dead_e[b] {
                alive_x[c] = true;
                raw.add_crossing(x.id.clone(), emap[a], emap[b]);
            }
        }
        let side_of = |e: usize, s: Side| -> Side {
            match self.edge(e).crossing {
                Some(c) if alive_x[c] => s,
                _ => Side::Whole,
            }
        };
        for v in 0..self.n() {
            if dead_v[v] {
                continue;
            }
            let rot = self
                .rotation(Node::Vertex(v))
                .iter()
                .map(|&d| self.segment(d))
                .filter(|s| !dead_e[s.edge])
                .map(|s| (emap[s.edge], side_of(s.edge, s.side)))
                .collect();
            raw.vrot[vmap[v]] = rot;
        }
        let mut xi = 0;
        for c in 0..self.crossing_count() {
            if alive_x[c] {
                raw.xrot[xi] = self
                    .rotation(Node::Crossing(c))
                    .iter()
                    .map(|&d| {
                        let s = self.segment(d);
                        (emap[s.edge], s.side)
                    })
                    .collect();
                xi += 1;
            }
        }
        raw.outer = match self.outer_face() {
            None => Outer::None,
            Some(f) => {
                let walk = &self.faces().faces[f].walk;
                walk.iter()
                    .find(|&&d| !dead_e[self.dart_edge(d)])
                    .map(|&d| self.anchor_of(d))
                    .unwrap_or(Outer::Face(0))
            }
        };
        raw.build()
    }

    /// Splice a new edge, optionally crossing one clean edge.
    pub fn splice(&self, s: &Splice) -> Result<Drawing, DrawingError> {
        let mut raw = self.to_raw();
        let e = raw.add_edge(s.edge_id.clone(), s.u, s.v);
        let place = |raw: &mut Raw, v: usize, at: Option<Dart>, tok: (usize, Side)| {
            let rot = &mut raw.vrot[v];
            match at {
                Some(d) => {
                    let pos = self.rotation_pos(d);
                    rot.insert(pos, tok);
                }
                None => rot.push(tok),
            }
        };
        match s.through {
            None => {
                place(&mut raw, s.u, s.at_u, (e, Side::Whole));
                place(&mut raw, s.v, s.at_v, (e, Side::Whole));
            }
            Some(t) => {
                let f = self.dart_edge(t);
                let cid = s
                    .crossing_id
                    .clone()
                    .unwrap_or_else(|| self.fresh_node_id("x"));
                let c = raw.add_crossing(cid, f, e);
                let [x, y] = self.edge(f).ends;
                for tok in &mut raw.vrot[x] {
                    if tok.0 == f {
                        tok.1 = Side::Half0;
                    }
                }
                for tok in &mut raw.vrot[y] {
                    if tok.0 == f {
                        tok.1 = Side::Half1;
                    }
                }
                // The face of `t` is on its right; `u` lives there.
                let forward = t & 1 == 0;
                let (ahead, behind) = if forward {
                    (Side::Half1, Side::Half0)
                } else {
                    (Side::Half0, Side::Half1)
                };
                raw.xrot[c] = vec![(f, ahead), (e, Side::Half1), (f, behind), (e, Side::Half0)];
                place(&mut raw, s.u, s.at_u, (e, Side::Half0));
                place(&mut raw, s.v, s.at_v, (e, Side::Half1));
            }
        }
        raw.build()
    }

    /// Add a new vertex joined to `u` only, in the corner before `at`.
    pub fn add_pendant(
        &self,
        u: usize,
        at: Option<Dart>,
        vertex_id: &str,
        edge_id: &str,
    ) -> Result<Drawing, DrawingError> {
        let mut raw = self.to_raw();
        let w = raw.add_vertex(vertex_id);
        let e = raw.add_edge(edge_id, u, w);
        match at {
            Some(d) => raw.vrot[u].insert(self.rotation_pos(d), (e, Side::Whole)),
            None => raw.vrot[u].push((e, Side::Whole)),
        }
        raw.vrot[w].push((e, Side::Whole));
        raw.build()
    }

    /// An edge id for `uv` not yet used.
    pub fn fresh_edge_id(&self, u: usize, v: usize) -> String {
        let base = format!("{}-{}", self.vertex_id(u), self.vertex_id(v));
        fresh_id(&base, &|id| self.edge_index(id).is_some())
    }

    /// A node id (vertex or crossing namespace) not yet used.
    pub fn fresh_node_id(&self, prefix: &str) -> String {
        (0..)
            .map(|k| format!("{prefix}{k}"))
            .find(|id| self.vertex_index(id).is_none() && self.crossing_index(id).is_none())
            .unwrap()
    }

    /// Same drawing with every id passed through `map`.
    pub fn relabel(&self, map: impl Fn(&str) -> String) -> Result<Drawing, DrawingError> {
        let mut raw = self.to_raw();
        for id in raw.vertices.iter_mut() {
            *id = map(id);
        }
        for (id, _, _) in raw.edges.iter_mut() {
            *id = map(id);
        }
        for (id, _) in raw.crossings.iter_mut() {
            *id = map(id);
        }
        if let Outer::Anchor { edge, .. } = &mut raw.outer {
            *edge = map(edge);
        }
        raw.build()
    }

    /// Glue `other` into `self` by identifying vertex `tail(from)` of
    /// `other` with vertex `tail(at)` of `self`.
    ///
    /// The whole rotation of `other` at the glued vertex, read from `from`,
    /// is placed before `at`; the face of `at` and the face of `from` merge.
    /// Ids of `other` must not clash with ids of `self`, except that the
    /// glued vertex keeps the id it has in `self`.
    pub fn amalgamate(&self, at: Dart, other: &Drawing, from: Dart) -> Result<Drawing, DrawingError> {
        let (Node::Vertex(v), Node::Vertex(w)) = (self.tail(at), other.tail(from)) else {
            return Err(DrawingError::UnknownId("glue point must be a vertex".into()));
        };
        let mut raw = self.to_raw();
        let o = other.to_raw();
        let mut vmap = vec![usize::MAX; other.n()];
        for x in 0..other.n() {
            vmap[x] = if x == w { v } else { raw.add_vertex(o.vertices[x].clone()) };
        }
        let base_e = raw.edges.len();
        for (id, a, b) in &o.edges {
            raw.add_edge(id.clone(), vmap[*a], vmap[*b]);
        }
        for (c, (id, [a, b])) in o.crossings.iter().enumerate() {
            let k = raw.add_crossing(id.clone(), base_e + a, base_e + b);
            raw.xrot[k] = o.xrot[c].iter().map(|&(e, s)| (base_e + e, s)).collect();
        }
        for x in 0..other.n() {
            let mut rot: Vec<(usize, Side)> = o.vrot[x].iter().map(|&(e, s)| (base_e + e, s)).collect();
            if x == w {
                rot.rotate_left(other.rotation_pos(from));
                let pos = self.rotation_pos(at);
                raw.vrot[v].splice(pos..pos, rot);
            } else {
                raw.vrot[vmap[x]] = rot;
            }
        }
        raw.build()
    }
}
