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

//! Canonical form of a planarized embedding up to homeomorphism of the
//! sphere, reflections included.
//!
//! A start dart and a turning sense fix a traversal: nodes are numbered as
//! they are reached, each node's rotation is read from the dart it was
//! entered by. The least code over all starts and both senses is the form.

use crate::drawing::{Dart, Drawing, Node, Raw, Side};

struct Traversal {
    code: Vec<u32>,
    /// Nodes in numbering order, each with its entry dart.
    order: Vec<(usize, Dart)>,
}

fn traverse(d: &Drawing, start: Dart, mirror: bool) -> Traversal {
    let step = |x: Dart| if mirror { d.rot_prev(x) } else { d.rot_next(x) };
    let mut label = vec![u32::MAX; d.node_count()];
    let mut order = vec![(d.node_index(d.tail(start)), start)];
    label[order[0].0] = 0;
    let mut code = Vec::with_capacity(2 * d.dart_count() + 2 * d.node_count());
    let mut k = 0;
    while k < order.len() {
        let (node, entry) = order[k];
        let deg = d.rotation(d.node(node)).len();
        code.push(u32::from(matches!(d.node(node), Node::Crossing(_))));
        code.push(deg as u32);
        let mut x = entry;
        for _ in 0..deg {
            let h = d.node_index(d.head(x));
            if label[h] == u32::MAX {
                label[h] = order.len() as u32;
                order.push((h, Drawing::rev(x)));
            }
            code.push(label[h]);
            x = step(x);
        }
        k += 1;
    }
    Traversal { code, order }
}

fn best(d: &Drawing) -> (Traversal, bool) {
    let mut best: Option<(Traversal, bool)> = None;
    for start in 0..d.dart_count() {
        if !matches!(d.tail(start), Node::Vertex(_)) {
            continue;
        }
        for mirror in [false, true] {
            let t = traverse(d, start, mirror);
            if best.as_ref().is_none_or(|(b, _)| t.code < b.code) {
                best = Some((t, mirror));
            }
        }
    }
    best.expect("drawing has a vertex with an edge")
}

/// The canonical code; equal codes mean isomorphic embeddings.
pub fn canonical_code(d: &Drawing) -> Vec<u32> {
    if d.m() == 0 {
        return vec![0, 0, d.n() as u32];
    }
    best(d).0.code
}

/// The embedding rebuilt in canonical numbering: vertices `v0..`, edges
/// `e<a>-<b>`, crossings `x0..`, rotations read in canonical sense. The
/// outer face is dropped. Isomorphic drawings give equal results.
pub fn canonical_drawing(d: &Drawing) -> (Vec<u32>, Drawing) {
    if d.m() == 0 {
        return (canonical_code(d), d.relabel(|_| "v0".to_string()).expect("single vertex"));
    }
    let (t, mirror) = best(d);
    let mut vnum = vec![usize::MAX; d.n()];
    let mut xnum = vec![usize::MAX; d.crossing_count()];
    let mut raw = Raw::default();
    for &(node, _) in &t.order {
        match d.node(node) {
            Node::Vertex(v) => vnum[v] = raw.add_vertex(format!("v{}", raw.vertices.len())),
            Node::Crossing(_) => {}
        }
    }
    // Edges in order of their canonical endpoint pairs.
    let mut ends: Vec<(usize, usize, usize)> = d
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let (a, b) = (vnum[edge.ends[0]], vnum[edge.ends[1]]);
            (a.min(b), a.max(b), e)
        })
        .collect();
    ends.sort();
    let mut enew = vec![0; d.m()];
    for &(a, b, e) in &ends {
        enew[e] = raw.add_edge(format!("e{a}-{b}"), a, b);
    }
    let mut next_x = 0;
    for &(node, _) in &t.order {
        if let Node::Crossing(c) = d.node(node) {
            let [e, f] = d.crossing(c).edges;
            xnum[c] = raw.add_crossing(format!("x{next_x}"), enew[e], enew[f]);
            next_x += 1;
        }
    }
    let token = |x: Dart| {
        let seg = d.segment(x);
        let e = seg.edge;
        let side = match seg.side {
            Side::Whole => Side::Whole,
            _ => {
                let v = match seg.ends {
                    [Node::Vertex(v), _] | [_, Node::Vertex(v)] => v,
                    _ => unreachable!("a half-edge has a vertex end"),
                };
                // Half0 sits at the lower canonical endpoint.
                if vnum[v] == ends.iter().find(|t| t.2 == e).unwrap().0 {
                    Side::Half0
                } else {
                    Side::Half1
                }
            }
        };
        (enew[e], side)
    };
    for &(node, entry) in &t.order {
        let deg = d.rotation(d.node(node)).len();
        let mut x = entry;
        let mut toks = Vec::with_capacity(deg);
        for _ in 0..deg {
            toks.push(token(x));
            x = if mirror { d.rot_prev(x) } else { d.rot_next(x) };
        }
        match d.node(node) {
            Node::Vertex(v) => raw.vrot[vnum[v]] = toks,
            Node::Crossing(c) => raw.xrot[xnum[c]] = toks,
        }
    }
    let out = raw.build().expect("canonical rebuild of a valid drawing");
    (t.code, out)
}
