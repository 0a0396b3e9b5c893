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

//! Hermits, skeletons, nests, K4-subgraphs and exceptional edges.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::drawing::{Drawing, DrawingError, Node};
use crate::maximality::is_maximal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("input not maximal: {0}")]
    NotMaximal(String),
    #[error("input violates maximality or exceptionality premise: {0}")]
    Premise(String),
    #[error("vertex `{0}` not in the vertex set")]
    NotInSet(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// A degree-2 vertex with its two neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermit {
    pub vertex: usize,
    pub neighbors: [usize; 2],
}

/// A region bounded by the half-edges from two crossings to two vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nest {
    /// Supporting vertices, `u < v`.
    pub u: usize,
    pub v: usize,
    /// Supporting crossings, sorted.
    pub alphas: [usize; 2],
    /// The edge `uv` runs through the region.
    pub contains_edge_uv: bool,
    /// Faces making up the region.
    pub region: Vec<usize>,
}

/// Nest identity that survives re-indexing: ids of `u, v, α1, α2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NestKey(pub String, pub String, pub String, pub String);

impl Nest {
    pub fn key(&self, d: &Drawing) -> NestKey {
        NestKey(
            d.vertex_id(self.u).to_string(),
            d.vertex_id(self.v).to_string(),
            d.crossing(self.alphas[0]).id.clone(),
            d.crossing(self.alphas[1]).id.clone(),
        )
    }

    pub fn describe(&self, d: &Drawing) -> String {
        format!(
            "nest {{{},{}}} {{{},{}}} uv={}",
            d.vertex_id(self.u),
            d.vertex_id(self.v),
            d.crossing(self.alphas[0]).id,
            d.crossing(self.alphas[1]).id,
            self.contains_edge_uv
        )
    }
}

pub fn find_hermits(d: &Drawing) -> Vec<Hermit> {
    (0..d.n())
        .filter(|&v| d.degree(v) == 2)
        .map(|v| {
            let mut it = d.neighbors(v);
            Hermit {
                vertex: v,
                neighbors: [it.next().unwrap(), it.next().unwrap()],
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SkeletonResult {
    pub skeleton: Drawing,
    /// Hermits of the input, indexed in the input.
    pub hermits: Vec<Hermit>,
    /// For each hermit, the index into `find_nests(skeleton)` of the nest
    /// hosting it, when there is one.
    pub assignment: Vec<Option<usize>>,
    pub nests: Vec<Nest>,
}

/// Face of `skel` that contains the point where hermit `h` of `d` was.
fn hermit_face(d: &Drawing, skel: &Drawing, h: &Hermit) -> Option<usize> {
    let u = h.neighbors[0];
    let hu = d.edge_between(h.vertex, u)?;
    let start = d.dart_from(Node::Vertex(u), hu)?;
    // Walk the rotation at u to the next surviving edge.
    let mut x = d.rot_next(start);
    while x != start {
        let e = d.dart_edge(x);
        let other = d.edge(e).other(u);
        if d.degree(other) != 2 {
            let su = skel.vertex_index(d.vertex_id(u))?;
            let se = skel.edge_index(&d.edge(e).id)?;
            let sd = skel.dart_from(Node::Vertex(su), se)?;
            return Some(skel.faces().dart_face[sd]);
        }
        x = d.rot_next(x);
    }
    None
}

/// Remove every hermit in one pass.
///
/// When the input is maximal, the skeleton must be maximal with minimum
/// degree three and the hermits must sit in distinct nests of it; any
/// failure is reported rather than repaired.
pub fn skeleton(d: &Drawing) -> Result<SkeletonResult, StructureError> {
    let hermits = find_hermits(d);
    let keep: Vec<usize> = (0..d.n()).filter(|&v| d.degree(v) != 2).collect();
    let skel = if keep.len() == d.n() {
        d.clone()
    } else {
        d.induced_subdrawing(&keep)?
    };
    let nests = find_nests(&skel);
    let mut assignment = Vec::with_capacity(hermits.len());
    for h in &hermits {
        let face = hermit_face(d, &skel, h);
        let (a, b) = (
            skel.vertex_index(d.vertex_id(h.neighbors[0])),
            skel.vertex_index(d.vertex_id(h.neighbors[1])),
        );
        let hit = match (face, a, b) {
            (Some(f), Some(a), Some(b)) => nests.iter().position(|n| {
                n.region.contains(&f) && (n.u, n.v) == (a.min(b), a.max(b))
            }),
            _ => None,
        };
        assignment.push(hit);
    }
    if is_maximal(d) {
        if !is_maximal(&skel) {
            return Err(StructureError::NotMaximal("skeleton is not maximal".into()));
        }
        if let Some(v) = (0..skel.n()).find(|&v| skel.degree(v) < 3) {
            return Err(StructureError::NotMaximal(format!(
                "skeleton vertex `{}` has degree {}",
                skel.vertex_id(v),
                skel.degree(v)
            )));
        }
        let mut used = BTreeSet::new();
        for (h, a) in hermits.iter().zip(&assignment) {
            match a {
                None => {
                    return Err(StructureError::NotMaximal(format!(
                        "hermit `{}` is not inside a nest of the skeleton",
                        d.vertex_id(h.vertex)
                    )))
                }
                Some(i) if !used.insert(*i) => {
                    return Err(StructureError::NotMaximal(format!(
                        "two hermits share a nest with `{}`",
                        d.vertex_id(h.vertex)
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(SkeletonResult {
        skeleton: skel,
        hermits,
        assignment,
        nests,
    })
}

/// All nests, found face-locally:
/// a quadrilateral face `u α1 v α2`, or a clean edge `uv` flanked by two
/// triangles `u v α1` and `v u α2`.
pub fn find_nests(d: &Drawing) -> Vec<Nest> {
    let faces = &d.faces().faces;
    let mut out: Vec<Nest> = Vec::new();
    let mut push = |nest: Nest| {
        if !out
            .iter()
            .any(|o| (o.u, o.v, o.alphas) == (nest.u, nest.v, nest.alphas))
        {
            out.push(nest);
        }
    };
    for face in faces {
        if face.walk.len() != 4 {
            continue;
        }
        let t: Vec<Node> = face.walk.iter().map(|&x| d.tail(x)).collect();
        if let (Node::Vertex(a), Node::Crossing(p), Node::Vertex(b), Node::Crossing(q)) =
            (t[0], t[1], t[2], t[3])
        {
            if a != b && p != q {
                push(Nest {
                    u: a.min(b),
                    v: a.max(b),
                    alphas: [p.min(q), p.max(q)],
                    contains_edge_uv: false,
                    region: vec![face.id],
                });
            }
        }
        if let (Node::Crossing(p), Node::Vertex(a), Node::Crossing(q), Node::Vertex(b)) =
            (t[0], t[1], t[2], t[3])
        {
            if a != b && p != q {
                push(Nest {
                    u: a.min(b),
                    v: a.max(b),
                    alphas: [p.min(q), p.max(q)],
                    contains_edge_uv: false,
                    region: vec![face.id],
                });
            }
        }
    }
    let triangle_apex = |dart: usize| -> Option<usize> {
        let f = &faces[d.faces().dart_face[dart]];
        if f.walk.len() != 3 {
            return None;
        }
        f.walk.iter().find_map(|&x| match d.tail(x) {
            Node::Crossing(c) => Some(c),
            Node::Vertex(_) => None,
        })
    };
    for e in 0..d.m() {
        if !d.is_clean(e) {
            continue;
        }
        let s = d.edge_segments(e).start;
        let (l, r) = (2 * s, 2 * s + 1);
        if let (Some(p), Some(q)) = (triangle_apex(l), triangle_apex(r)) {
            let fl = d.faces().dart_face[l];
            let fr = d.faces().dart_face[r];
            if p != q && fl != fr {
                let [a, b] = d.edge(e).ends;
                let mut region = vec![fl, fr];
                region.sort_unstable();
                push(Nest {
                    u: a.min(b),
                    v: a.max(b),
                    alphas: [p.min(q), p.max(q)],
                    contains_edge_uv: true,
                    region,
                });
            }
        }
    }
    out.sort_by_key(|a| (a.u, a.v, a.alphas));
    out
}

/// All 4-cliques `a < b < c < d` of the underlying graph.
pub fn find_k4_subgraphs(d: &Drawing) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..d.n() {
        let na: Vec<usize> = d.neighbors(a).filter(|&x| x > a).collect();
        for (i, &b) in na.iter().enumerate() {
            let nab: Vec<usize> = na[i + 1..]
                .iter()
                .copied()
                .filter(|&c| d.adjacent(b, c))
                .collect();
            for (j, &c) in nab.iter().enumerate() {
                for &x in &nab[j + 1..] {
                    if d.adjacent(c, x) {
                        out.push([a, b, c, x]);
                    }
                }
            }
        }
    }
    out
}

/// `uv` lies in some K4.
pub fn edge_in_k4(d: &Drawing, u: usize, v: usize) -> bool {
    let common: Vec<usize> = d.neighbors(u).filter(|&w| d.adjacent(v, w)).collect();
    common
        .iter()
        .enumerate()
        .any(|(i, &a)| common[i + 1..].iter().any(|&b| d.adjacent(a, b)))
}

/// Edges in no K4-subgraph.
pub fn exceptional_edges(d: &Drawing) -> Vec<usize> {
    (0..d.m())
        .filter(|&e| {
            let [u, v] = d.edge(e).ends;
            !edge_in_k4(d, u, v)
        })
        .collect()
}

/// Two blocks meeting at `f`, left after removing exceptional edge `ab`.
#[derive(Clone, Debug)]
pub struct Split {
    /// Side containing `a` (the first endpoint of `ab`).
    pub h1: Drawing,
    /// Side containing `b`.
    pub h2: Drawing,
    /// The shared cut vertex, as an index of the input.
    pub f: usize,
    pub a: usize,
    pub b: usize,
    /// Nests of `h1` or `h2` that do not survive in the input.
    pub nests_lost: Vec<NestKey>,
}

/// Split a hermit-free drawing at an exceptional edge.
///
/// Only the shape is checked (clean `ab`, one shared vertex `f` beside it,
/// two parts); the usual input is maximal but that is not required.
pub fn split_at_exceptional(d: &Drawing, ab: usize) -> Result<Split, StructureError> {
    let premise = |m: String| Err(StructureError::Premise(m));
    if ab >= d.m() {
        return premise("no such edge".into());
    }
    let [a, b] = d.edge(ab).ends;
    if edge_in_k4(d, a, b) {
        return premise(format!("edge `{}` is not exceptional", d.edge(ab).id));
    }
    if d.n() < 4 || !find_hermits(d).is_empty() {
        return premise("expected a hermit-free drawing with at least 4 vertices".into());
    }
    if !d.is_clean(ab) {
        return premise(format!("exceptional edge `{}` is crossed", d.edge(ab).id));
    }
    let s = d.edge_segments(ab).start;
    let faces = &d.faces().faces;
    let f1 = &faces[d.faces().dart_face[2 * s]];
    let f2 = &faces[d.faces().dart_face[2 * s + 1]];
    let shared: Vec<usize> = f1
        .vertices
        .iter()
        .copied()
        .filter(|&x| x != a && x != b && f2.has_vertex(x))
        .collect();
    let [f] = shared[..] else {
        return premise(format!(
            "faces beside `{}` share {} further vertices",
            d.edge(ab).id,
            shared.len()
        ));
    };
    // Components of d - ab - f.
    let mut comp = vec![usize::MAX; d.n()];
    comp[f] = usize::MAX - 1;
    let mut count = 0;
    for s in 0..d.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &(y, e) in d.incidences(x) {
                if e != ab && comp[y] == usize::MAX {
                    comp[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    if count != 2 || comp[a] == comp[b] {
        return premise(format!("removing `{}` and `{}` leaves {count} parts", d.edge(ab).id, d.vertex_id(f)));
    }
    let side = |c: usize| -> Vec<usize> { (0..d.n()).filter(|&x| x == f || comp[x] == c).collect() };
    let h1 = d.induced_subdrawing(&side(comp[a]))?;
    let h2 = d.induced_subdrawing(&side(comp[b]))?;
    for x in [a, b] {
        if !edge_in_k4(d, x, f) {
            return premise(format!(
                "`{}{}` is exceptional too",
                d.vertex_id(x),
                d.vertex_id(f)
            ));
        }
    }
    let mine: BTreeSet<NestKey> = find_nests(d).iter().map(|n| n.key(d)).collect();
    let theirs: BTreeSet<NestKey> = find_nests(&h1)
        .iter()
        .map(|n| n.key(&h1))
        .chain(find_nests(&h2).iter().map(|n| n.key(&h2)))
        .collect();
    if !mine.is_subset(&theirs) {
        return premise("a nest of the drawing is not a nest of either part".into());
    }
    Ok(Split {
        h1,
        h2,
        f,
        a,
        b,
        nests_lost: theirs.difference(&mine).cloned().collect(),
    })
}

/// `v` is adjacent to every other vertex.
pub fn dominating_check(d: &Drawing, v: usize) -> bool {
    d.degree(v) + 1 == d.n()
}

/// Edges at `w` that are clean in the sub-drawing induced by `set`.
/// Needs only crossing records, so `set` may induce a disconnected graph.
pub fn clean_degree_bound(d: &Drawing, set: &[usize], w: usize) -> Result<usize, StructureError> {
    let mut inside = vec![false; d.n()];
    for &x in set {
        inside[x] = true;
    }
    if w >= d.n() || !inside[w] {
        return Err(StructureError::NotInSet(
            d.vertex_ids().get(w).cloned().unwrap_or_default(),
        ));
    }
    Ok(d.incidences(w)
        .iter()
        .filter(|&&(x, e)| {
            inside[x]
                && match d.partner(e) {
                    None => true,
                    Some(p) => {
                        let [s, t] = d.edge(p).ends;
                        !(inside[s] && inside[t])
                    }
                }
        })
        .count())
}

/// Degree of `w` in the subgraph induced by `set`.
pub fn induced_degree(d: &Drawing, set: &[usize], w: usize) -> usize {
    d.neighbors(w).filter(|x| set.contains(x)).count()
}
