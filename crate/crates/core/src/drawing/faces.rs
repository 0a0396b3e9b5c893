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

use super::{Dart, Drawing, Node};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Boundary walk. Drawings are connected, so there is exactly one.
    pub walk: Vec<Dart>,
    /// Distinct graph vertices on the boundary, sorted.
    pub vertices: Vec<usize>,
    /// No boundary segment belongs to a crossed edge.
    pub is_true: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    /// Face on the right of each dart.
    pub dart_face: Vec<usize>,
    pub outer: Option<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// Faces are numbered by their first dart in node order, then rotation
/// order; this is the numbering used by `outer` lines.
pub(crate) fn traverse(d: &Drawing) -> FaceSet {
    let nd = d.dart_count();
    let mut dart_face = vec![usize::MAX; nd];
    let mut faces = Vec::new();
    if nd == 0 {
        faces.push(Face {
            id: 0,
            walk: Vec::new(),
            vertices: (0..d.n()).collect(),
            is_true: true,
        });
        return FaceSet {
            faces,
            dart_face,
            outer: None,
        };
    }
    for x in 0..d.node_count() {
        for &start in d.rotation(d.node(x)) {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut cur = start;
            loop {
                dart_face[cur] = id;
                walk.push(cur);
                cur = d.face_next(cur);
                if cur == start {
                    break;
                }
            }
            let mut vertices: Vec<usize> = walk
                .iter()
                .filter_map(|&e| match d.tail(e) {
                    Node::Vertex(v) => Some(v),
                    Node::Crossing(_) => None,
                })
                .collect();
            vertices.sort_unstable();
            vertices.dedup();
            let is_true = walk.iter().all(|&e| d.is_clean(d.dart_edge(e)));
            faces.push(Face {
                id,
                walk,
                vertices,
                is_true,
            });
        }
    }
    FaceSet {
        faces,
        dart_face,
        outer: None,
    }
}
