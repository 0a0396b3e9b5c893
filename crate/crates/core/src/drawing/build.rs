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

use std::collections::{HashMap, HashSet};

use super::faces::{self, FaceSet};
use super::{Crossing, Drawing, DrawingError, Edge, Node, Segment, Side};

/// Unvalidated drawing data with arbitrary index order.
///
/// Vertex and crossing rotations are lists of `(edge, side)` tokens. This is
/// the construction surface used by the parser, the edit operations and the
/// enumerator; [`Raw::build`] validates and canonicalizes it.
#[derive(Clone, Debug, Default)]
pub struct Raw {
    pub vertices: Vec<String>,
    /// `(id, u, v)` with vertex indices into `vertices`.
    pub edges: Vec<(String, usize, usize)>,
    /// `(id, [edge, edge])` with edge indices into `edges`.
    pub crossings: Vec<(String, [usize; 2])>,
    pub vrot: Vec<Vec<(usize, Side)>>,
    pub xrot: Vec<Vec<(usize, Side)>>,
    pub outer: Outer,
}

/// How the outer face survives a rebuild.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Outer {
    #[default]
    None,
    /// Face index in the canonical order of the built drawing.
    Face(usize),
    /// The face lying right of edge `edge` traversed forwards (from its
    /// first endpoint) or backwards, on the given half.
    Anchor {
        edge: String,
        forward: bool,
        half: Side,
    },
}

impl Raw {
    pub fn add_vertex(&mut self, id: impl Into<String>) -> usize {
        self.vertices.push(id.into());
        self.vrot.push(Vec::new());
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, id: impl Into<String>, u: usize, v: usize) -> usize {
        self.edges.push((id.into(), u, v));
        self.edges.len() - 1
    }

    pub fn add_crossing(&mut self, id: impl Into<String>, a: usize, b: usize) -> usize {
        self.crossings.push((id.into(), [a, b]));
        self.xrot.push(Vec::new());
        self.crossings.len() - 1
    }

    /// Validate every invariant and produce the canonical drawing.
    pub fn build(&self) -> Result<Drawing, DrawingError> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(DrawingError::Empty);
        }
        let mut names = HashSet::new();
        for id in self
            .vertices
            .iter()
            .chain(self.crossings.iter().map(|c| &c.0))
        {
            if !names.insert(id.as_str()) {
                return Err(DrawingError::DuplicateId(id.clone()));
            }
        }
        let mut enames = HashSet::new();
        for (id, _, _) in &self.edges {
            if !enames.insert(id.as_str()) {
                return Err(DrawingError::DuplicateId(id.clone()));
            }
        }
        if self.vrot.len() != n {
            return Err(DrawingError::MissingRotation(
                self.vertices[self.vrot.len().min(n - 1)].clone(),
            ));
        }
        if self.xrot.len() != self.crossings.len() {
            return Err(DrawingError::MissingRotation(
                self.crossings[self.xrot.len().min(self.crossings.len() - 1)]
                    .0
                    .clone(),
            ));
        }

        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        for (e, (id, u, v)) in self.edges.iter().enumerate() {
            if u == v {
                return Err(DrawingError::SelfLoop(id.clone()));
            }
            let key = ((*u).min(*v), (*u).max(*v));
            if let Some(&f) = pairs.get(&key) {
                return Err(DrawingError::DuplicateEdge(
                    id.clone(),
                    self.edges[f].0.clone(),
                ));
            }
            pairs.insert(key, e);
        }

        let mut crossed_at: Vec<Option<usize>> = vec![None; self.edges.len()];
        for (c, (id, [a, b])) in self.crossings.iter().enumerate() {
            if a == b {
                return Err(DrawingError::CrossedTwice(self.edges[*a].0.clone()));
            }
            for &e in &[*a, *b] {
                if crossed_at[e].is_some() {
                    return Err(DrawingError::CrossedTwice(self.edges[e].0.clone()));
                }
                crossed_at[e] = Some(c);
            }
            let (_, a0, a1) = &self.edges[*a];
            let (_, b0, b1) = &self.edges[*b];
            if a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1 {
                return Err(DrawingError::AdjacentCrossing(id.clone()));
            }
        }

        // Rotations must list exactly the incident segment ends.
        let mut expect: Vec<Vec<(usize, Side)>> = vec![Vec::new(); n];
        for (e, (_, u, v)) in self.edges.iter().enumerate() {
            if crossed_at[e].is_some() {
                expect[*u].push((e, Side::Half0));
                expect[*v].push((e, Side::Half1));
            } else {
                expect[*u].push((e, Side::Whole));
                expect[*v].push((e, Side::Whole));
            }
        }
        for v in 0..n {
            let mut got = self.vrot[v].clone();
            got.sort();
            expect[v].sort();
            if got != expect[v] {
                return Err(DrawingError::Rotation {
                    node: self.vertices[v].clone(),
                    detail: self.mismatch(&got, &expect[v]),
                });
            }
        }
        for (c, (id, [a, b])) in self.crossings.iter().enumerate() {
            let rot = &self.xrot[c];
            let mut got = rot.clone();
            got.sort();
            let mut want = vec![
                (*a, Side::Half0),
                (*a, Side::Half1),
                (*b, Side::Half0),
                (*b, Side::Half1),
            ];
            want.sort();
            if got != want {
                return Err(DrawingError::Rotation {
                    node: id.clone(),
                    detail: self.mismatch(&got, &want),
                });
            }
            if rot[0].0 != rot[2].0 || rot[1].0 != rot[3].0 {
                return Err(DrawingError::Alternation(id.clone()));
            }
        }

        // Connectivity of the underlying graph.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = n;
        for (_, u, v) in &self.edges {
            let (a, b) = (find(&mut parent, *u), find(&mut parent, *v));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        if comps != 1 {
            return Err(DrawingError::Disconnected);
        }

        self.assemble(&crossed_at)
    }

    fn mismatch(&self, got: &[(usize, Side)], want: &[(usize, Side)]) -> String {
        let tok = |&(e, s): &(usize, Side)| -> String {
            let id = &self.edges[e].0;
            match s {
                Side::Whole => id.clone(),
                Side::Half0 => format!("{id}.0"),
                Side::Half1 => format!("{id}.1"),
            }
        };
        let extra: Vec<String> = got
            .iter()
            .filter(|t| !want.contains(t))
            .map(tok)
            .collect();
        let missing: Vec<String> = want
            .iter()
            .filter(|t| !got.contains(t))
            .map(tok)
            .collect();
        if extra.is_empty() && missing.is_empty() {
            return "repeated token".to_string();
        }
        let mut parts = Vec::new();
        if !extra.is_empty() {
            parts.push(format!("unexpected {}", extra.join(" ")));
        }
        if !missing.is_empty() {
            parts.push(format!("missing {}", missing.join(" ")));
        }
        parts.join("; ")
    }

    fn assemble(&self, crossed_at: &[Option<usize>]) -> Result<Drawing, DrawingError> {
        let n = self.vertices.len();
        let k = self.crossings.len();
        let m = self.edges.len();

        let mut vperm: Vec<usize> = (0..n).collect();
        vperm.sort_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]));
        let mut vnew = vec![0; n];
        for (i, &v) in vperm.iter().enumerate() {
            vnew[v] = i;
        }
        let mut eperm: Vec<usize> = (0..m).collect();
        eperm.sort_by(|&a, &b| self.edges[a].0.cmp(&self.edges[b].0));
        let mut enew = vec![0; m];
        for (i, &e) in eperm.iter().enumerate() {
            enew[e] = i;
        }
        let mut xperm: Vec<usize> = (0..k).collect();
        xperm.sort_by(|&a, &b| self.crossings[a].0.cmp(&self.crossings[b].0));
        let mut xnew = vec![0; k];
        for (i, &c) in xperm.iter().enumerate() {
            xnew[c] = i;
        }

        let vertices: Vec<String> = vperm.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges: Vec<Edge> = eperm
            .iter()
            .map(|&e| {
                let (id, u, v) = &self.edges[e];
                Edge {
                    id: id.clone(),
                    ends: [vnew[*u], vnew[*v]],
                    crossing: crossed_at[e].map(|c| xnew[c]),
                }
            })
            .collect();
        let crossings: Vec<Crossing> = xperm
            .iter()
            .map(|&c| {
                let (id, [a, b]) = &self.crossings[c];
                let (a, b) = (enew[*a], enew[*b]);
                Crossing {
                    id: id.clone(),
                    edges: [a.min(b), a.max(b)],
                }
            })
            .collect();

        let mut segments = Vec::with_capacity(m + 2 * k);
        let mut first_segment = Vec::with_capacity(m);
        for (e, edge) in edges.iter().enumerate() {
            first_segment.push(segments.len());
            let [u, v] = edge.ends;
            match edge.crossing {
                None => segments.push(Segment {
                    edge: e,
                    side: Side::Whole,
                    ends: [Node::Vertex(u), Node::Vertex(v)],
                }),
                Some(c) => {
                    segments.push(Segment {
                        edge: e,
                        side: Side::Half0,
                        ends: [Node::Vertex(u), Node::Crossing(c)],
                    });
                    segments.push(Segment {
                        edge: e,
                        side: Side::Half1,
                        ends: [Node::Crossing(c), Node::Vertex(v)],
                    });
                }
            }
        }

        let dart_at = |node: Node, tok: (usize, Side)| -> usize {
            let e = enew[tok.0];
            let s = first_segment[e] + usize::from(tok.1 == Side::Half1);
            if segments[s].ends[0] == node {
                2 * s
            } else {
                2 * s + 1
            }
        };
        let token_of = |d: usize| -> (&str, Side) {
            let seg = &segments[d / 2];
            (edges[seg.edge].id.as_str(), seg.side)
        };
        let canon = |mut rot: Vec<usize>| -> Vec<usize> {
            if let Some(start) = (0..rot.len()).min_by(|&a, &b| token_of(rot[a]).cmp(&token_of(rot[b]))) {
                rot.rotate_left(start);
            }
            rot
        };
        let mut rotations = Vec::with_capacity(n + k);
        for &v in &vperm {
            let node = Node::Vertex(vnew[v]);
            rotations.push(canon(self.vrot[v].iter().map(|&t| dart_at(node, t)).collect()));
        }
        for &c in &xperm {
            let node = Node::Crossing(xnew[c]);
            rotations.push(canon(self.xrot[c].iter().map(|&t| dart_at(node, t)).collect()));
        }
        let mut rot_pos = vec![0; 2 * segments.len()];
        for rot in &rotations {
            for (i, &d) in rot.iter().enumerate() {
                rot_pos[d] = i;
            }
        }
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, edge) in edges.iter().enumerate() {
            let [u, v] = edge.ends;
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }

        let mut d = Drawing {
            vertices,
            edges,
            crossings,
            segments,
            first_segment,
            rotations,
            rot_pos,
            adjacency,
            faces: FaceSet::default(),
        };
        d.faces = faces::traverse(&d);
        let (nodes, arcs, f) = d.planarization_size();
        if nodes + f != arcs + 2 {
            return Err(DrawingError::NonSpherical {
                nodes,
                arcs,
                faces: f,
            });
        }
        d.faces.outer = match &self.outer {
            Outer::None => None,
            Outer::Face(f) => {
                if *f >= d.faces.faces.len() {
                    return Err(DrawingError::OuterOutOfRange(*f));
                }
                Some(*f)
            }
            Outer::Anchor {
                edge,
                forward,
                half,
            } => d.resolve_anchor(edge, *forward, *half),
        };
        Ok(d)
    }
}

impl Drawing {
    /// Anchor naming the face right of some dart; see [`Outer::Anchor`].
    pub(crate) fn anchor_of(&self, d: usize) -> Outer {
        let seg = self.segment(d);
        let dir0 = d & 1 == 0;
        Outer::Anchor {
            edge: self.edges[seg.edge].id.clone(),
            forward: dir0,
            half: seg.side,
        }
    }

    fn resolve_anchor(&self, edge: &str, forward: bool, half: Side) -> Option<usize> {
        if self.segments.is_empty() {
            return (self.faces.faces.len() == 1).then_some(0);
        }
        let e = self.edge_index(edge)?;
        let s = match (self.edges[e].crossing, half) {
            (None, _) => self.first_segment[e],
            (Some(_), Side::Half1) => self.first_segment[e] + 1,
            (Some(_), _) => self.first_segment[e],
        };
        let d = 2 * s + usize::from(!forward);
        Some(self.faces.dart_face[d])
    }

    /// Back to editable form, keeping ids and the outer marker.
    pub fn to_raw(&self) -> Raw {
        let tok = |d: usize| {
            let s = self.segment(d);
            (s.edge, s.side)
        };
        let n = self.n();
        Raw {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| (e.id.clone(), e.ends[0], e.ends[1]))
                .collect(),
            crossings: self
                .crossings
                .iter()
                .map(|c| (c.id.clone(), c.edges))
                .collect(),
            vrot: self.rotations[..n]
                .iter()
                .map(|r| r.iter().map(|&d| tok(d)).collect())
                .collect(),
            xrot: self.rotations[n..]
                .iter()
                .map(|r| r.iter().map(|&d| tok(d)).collect())
                .collect(),
            outer: match self.faces.outer {
                None => Outer::None,
                Some(f) if self.faces.faces[f].walk.is_empty() => Outer::Face(f),
                Some(f) => self.anchor_of(self.faces.faces[f].walk[0]),
            },
        }
    }
}
