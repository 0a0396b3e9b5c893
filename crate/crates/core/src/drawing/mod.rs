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

//! 1-plane drawings as planarized rotation systems.
//!
//! A [`Drawing`] is built once, validated, and then never mutated. Vertices,
//! edges and crossings are stored sorted by id, so index order is id order.
//! Every rotation is cyclic and starts at its lexicographically smallest
//! token.
//!
//! Orientation convention: a dart `d` runs from `tail(d)` to `head(d)`, and
//! the face containing `d` lies to its right. The next dart on that face is
//! the rotation successor of `rev(d)` at `head(d)`.

mod build;
mod edit;
mod faces;
mod parse;

pub use build::Raw;
pub use edit::Splice;
pub use faces::{Face, FaceSet};
pub use parse::{parse_drawing, serialize_drawing};

use thiserror::Error;

/// Which piece of an edge a segment is.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// An uncrossed edge.
    Whole,
    /// Half of a crossed edge at its first-listed endpoint.
    Half0,
    /// Half at the second-listed endpoint.
    Half1,
}

/// A node of the planarization.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Vertex(usize),
    Crossing(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Endpoints in file order; `ends[0]` owns `Half0`.
    pub ends: [usize; 2],
    pub crossing: Option<usize>,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    pub fn has_end(&self, v: usize) -> bool {
        self.ends[0] == v || self.ends[1] == v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: String,
    /// The two crossing edges, sorted by index.
    pub edges: [usize; 2],
}

/// An arc of the planarization.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub edge: usize,
    pub side: Side,
    pub ends: [Node; 2],
}

/// Half of a segment with a direction. Segment `s` owns darts `2s`
/// (running `ends[0] -> ends[1]`) and `2s + 1`.
pub type Dart = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: {source}")]
    At {
        line: usize,
        column: usize,
        source: Box<DrawingError>,
    },
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{0}` is a self-loop")]
    SelfLoop(String),
    #[error("duplicate edge: `{0}` joins the same endpoints as `{1}`")]
    DuplicateEdge(String, String),
    #[error("edge `{0}` is crossed more than once")]
    CrossedTwice(String),
    #[error("crossing `{0}` joins two edges with a common endpoint")]
    AdjacentCrossing(String),
    #[error("rotation at `{node}` inconsistent with incidence: {detail}")]
    Rotation { node: String, detail: String },
    #[error("crossing alternation violated at `{0}`")]
    Alternation(String),
    #[error("node `{0}` has no rotation")]
    MissingRotation(String),
    #[error("drawing is disconnected")]
    Disconnected,
    #[error(
        "non-spherical rotation system: {nodes} nodes - {arcs} arcs + {faces} faces != 2"
    )]
    NonSpherical {
        nodes: usize,
        arcs: usize,
        faces: usize,
    },
    #[error("outer face {0} out of range")]
    OuterOutOfRange(usize),
    #[error("drawing has no vertices")]
    Empty,
    #[error("empty vertex set")]
    EmptyVertexSet,
}

/// A validated 1-plane drawing.
#[derive(Clone, Debug)]
pub struct Drawing {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    crossings: Vec<Crossing>,
    segments: Vec<Segment>,
    /// Whole or half-0 segment of each edge; half-1 is the next one.
    first_segment: Vec<usize>,
    /// Leaving darts per node (vertices first, then crossings).
    rotations: Vec<Vec<Dart>>,
    rot_pos: Vec<usize>,
    /// `(neighbour, edge)` pairs sorted by neighbour.
    adjacency: Vec<Vec<(usize, usize)>>,
    faces: FaceSet,
}

impl PartialEq for Drawing {
    fn eq(&self, other: &Self) -> bool {
        serialize_drawing(self) == serialize_drawing(other)
    }
}

impl Eq for Drawing {}

impl Drawing {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|s| s.as_str().cmp(id))
            .ok()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|x| x.id.as_str().cmp(id)).ok()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> &Crossing {
        &self.crossings[c]
    }

    pub fn crossing_index(&self, id: &str) -> Option<usize> {
        self.crossings
            .binary_search_by(|x| x.id.as_str().cmp(id))
            .ok()
    }

    pub fn is_clean(&self, e: usize) -> bool {
        self.edges[e].crossing.is_none()
    }

    /// The edge crossing `e`, if any.
    pub fn partner(&self, e: usize) -> Option<usize> {
        self.edges[e].crossing.map(|c| {
            let [a, b] = self.crossings[c].edges;
            if a == e {
                b
            } else {
                a
            }
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    /// `(neighbour, edge)` pairs at `v`, sorted by neighbour.
    pub fn incidences(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let row = &self.adjacency[u];
        row.binary_search_by(|&(w, _)| w.cmp(&v)).ok().map(|i| row[i].1)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn node_count(&self) -> usize {
        self.vertices.len() + self.crossings.len()
    }

    pub fn node_index(&self, node: Node) -> usize {
        match node {
            Node::Vertex(v) => v,
            Node::Crossing(c) => self.vertices.len() + c,
        }
    }

    pub fn node(&self, idx: usize) -> Node {
        if idx < self.vertices.len() {
            Node::Vertex(idx)
        } else {
            Node::Crossing(idx - self.vertices.len())
        }
    }

    pub fn node_id(&self, node: Node) -> &str {
        match node {
            Node::Vertex(v) => &self.vertices[v],
            Node::Crossing(c) => &self.crossings[c].id,
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment(&self, d: Dart) -> &Segment {
        &self.segments[d / 2]
    }

    /// Segments of edge `e`: one if clean, two (half-0, half-1) if crossed.
    pub fn edge_segments(&self, e: usize) -> std::ops::Range<usize> {
        let s = self.first_segment[e];
        if self.edges[e].crossing.is_some() {
            s..s + 2
        } else {
            s..s + 1
        }
    }

    pub fn dart_count(&self) -> usize {
        2 * self.segments.len()
    }

    pub fn tail(&self, d: Dart) -> Node {
        self.segments[d / 2].ends[d & 1]
    }

    pub fn head(&self, d: Dart) -> Node {
        self.segments[d / 2].ends[1 - (d & 1)]
    }

    pub fn rev(d: Dart) -> Dart {
        d ^ 1
    }

    pub fn dart_edge(&self, d: Dart) -> usize {
        self.segments[d / 2].edge
    }

    /// Leaving darts at a node, in rotation order.
    pub fn rotation(&self, node: Node) -> &[Dart] {
        &self.rotations[self.node_index(node)]
    }

    /// Position of `d` in the rotation at its tail.
    pub fn rotation_pos(&self, d: Dart) -> usize {
        self.rot_pos[d]
    }

    /// Rotation successor of `d` at its tail.
    pub fn rot_next(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.node_index(self.tail(d))];
        rot[(self.rot_pos[d] + 1) % rot.len()]
    }

    /// Rotation predecessor of `d` at its tail.
    pub fn rot_prev(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.node_index(self.tail(d))];
        rot[(self.rot_pos[d] + rot.len() - 1) % rot.len()]
    }

    /// Next dart along the face on the right of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.rot_next(Self::rev(d))
    }

    /// The dart leaving `node` along the segment of edge `e` there.
    pub fn dart_from(&self, node: Node, e: usize) -> Option<Dart> {
        self.rotation(node)
            .iter()
            .copied()
            .find(|&d| self.dart_edge(d) == e)
    }

    /// Rotation token of the segment end at the tail of `d`.
    pub fn token(&self, d: Dart) -> String {
        let seg = self.segment(d);
        let id = &self.edges[seg.edge].id;
        match seg.side {
            Side::Whole => id.clone(),
            Side::Half0 => format!("{id}.0"),
            Side::Half1 => format!("{id}.1"),
        }
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn outer_face(&self) -> Option<usize> {
        self.faces.outer
    }

    /// Copy with a different outer marker.
    pub fn with_outer(&self, outer: Option<usize>) -> Result<Drawing, DrawingError> {
        if let Some(f) = outer {
            if f >= self.faces.faces.len() {
                return Err(DrawingError::OuterOutOfRange(f));
            }
        }
        let mut d = self.clone();
        d.faces.outer = outer;
        Ok(d)
    }

    /// Edges split into (clean, crossing), each sorted.
    pub fn classify_edges(&self) -> (Vec<usize>, Vec<usize>) {
        (0..self.m()).partition(|&e| self.is_clean(e))
    }

    /// Planarization size `(nodes, arcs, faces)`.
    pub fn planarization_size(&self) -> (usize, usize, usize) {
        (self.node_count(), self.segments.len(), self.faces.faces.len())
    }
}

/// Edge partition by crossing status.
pub fn classify_edges(d: &Drawing) -> (Vec<usize>, Vec<usize>) {
    d.classify_edges()
}

/// Faces of `d`; computed at construction, so this is a copy.
pub fn compute_faces(d: &Drawing) -> FaceSet {
    d.faces.clone()
}

/// Sorted-id check used for fresh names.
pub(crate) fn fresh_id(prefix: &str, taken: &dyn Fn(&str) -> bool) -> String {
    if !prefix.is_empty() && !taken(prefix) {
        return prefix.to_string();
    }
    (0..)
        .map(|k| format!("{prefix}{k}"))
        .find(|s| !taken(s))
        .unwrap()
}

pub(crate) fn valid_id(s: &str) -> bool {
    !s.is_empty()
        && s
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}
