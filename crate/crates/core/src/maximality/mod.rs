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

//! Maximality: can another edge be drawn with at most one crossing?
//!
//! A new edge `uv` either runs inside one face that has both `u` and `v` on
//! its boundary, or it crosses exactly one clean edge `xy` with
//! `{x, y} ∩ {u, v} = ∅`, leaving `u` into the face on one side of `xy` and
//! reaching `v` in the face on the other side. Nothing else keeps the
//! drawing 1-plane: an already crossed edge cannot take a second crossing.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::drawing::{Dart, Drawing, DrawingError, Node, Splice};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    /// Inside face `face`.
    Clean { face: usize, at_u: Dart, at_v: Dart },
    /// Across clean edge `edge`; `through` is the dart of `edge` on the
    /// face of `at_u`, its reverse is on the face of `at_v`.
    Crossing {
        edge: usize,
        through: Dart,
        face_u: usize,
        face_v: usize,
        at_u: Dart,
        at_v: Dart,
    },
}

/// A side-precise certificate that `uv` can be added.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InsertionWitness {
    pub u: usize,
    pub v: usize,
    pub route: Route,
    /// Id the new crossing would get.
    pub crossing_id: Option<String>,
}

impl InsertionWitness {
    pub fn is_clean(&self) -> bool {
        matches!(self.route, Route::Clean { .. })
    }

    pub fn crossed_edge(&self) -> Option<usize> {
        match self.route {
            Route::Clean { .. } => None,
            Route::Crossing { edge, .. } => Some(edge),
        }
    }

    /// Ordering used for the lexicographic saturation policy.
    fn key(&self) -> (usize, usize, u8, usize, Route) {
        match self.route {
            Route::Clean { .. } => (self.u, self.v, 0, 0, self.route),
            Route::Crossing { edge, .. } => (self.u, self.v, 1, edge, self.route),
        }
    }

    pub fn describe(&self, d: &Drawing) -> String {
        let (u, v) = (d.vertex_id(self.u), d.vertex_id(self.v));
        match self.route {
            Route::Clean { face, .. } => format!("{u} {v} clean face={face}"),
            Route::Crossing {
                edge,
                face_u,
                face_v,
                ..
            } => format!(
                "{u} {v} crossing edge={} faces={face_u},{face_v}",
                d.edge(edge).id
            ),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InsertError {
    #[error("stale witness: {0}")]
    Stale(&'static str),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

fn first_corner(d: &Drawing, face: usize, v: usize) -> Dart {
    *d.faces().faces[face]
        .walk
        .iter()
        .find(|&&x| d.tail(x) == Node::Vertex(v))
        .expect("vertex on face")
}

/// All witnesses, keyed by pair; keeps the least witness per pair.
fn scan(d: &Drawing, stop_at_first: bool) -> BTreeMap<(usize, usize), InsertionWitness> {
    let mut best: BTreeMap<(usize, usize), InsertionWitness> = BTreeMap::new();
    let offer = |w: InsertionWitness, best: &mut BTreeMap<_, InsertionWitness>| {
        let slot = best.entry((w.u, w.v)).or_insert_with(|| w.clone());
        if w.key() < slot.key() {
            *slot = w;
        }
    };
    let faces = &d.faces().faces;
    for (f, face) in faces.iter().enumerate() {
        let vs = &face.vertices;
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !d.adjacent(u, v) {
                    let w = InsertionWitness {
                        u,
                        v,
                        route: Route::Clean {
                            face: f,
                            at_u: first_corner(d, f, u),
                            at_v: first_corner(d, f, v),
                        },
                        crossing_id: None,
                    };
                    offer(w, &mut best);
                    if stop_at_first {
                        return best;
                    }
                }
            }
        }
    }
    let fresh = d.fresh_node_id("x");
    for e in 0..d.m() {
        if !d.is_clean(e) {
            continue;
        }
        let [x, y] = d.edge(e).ends;
        let s = d.edge_segments(e).start;
        for through in [2 * s, 2 * s + 1] {
            let fu = d.faces().dart_face[through];
            let fv = d.faces().dart_face[through ^ 1];
            for &u in &faces[fu].vertices {
                if u == x || u == y {
                    continue;
                }
                for &v in &faces[fv].vertices {
                    // Each ordered side pair is seen once; keep u < v so the
                    // orientation with u on `through`'s side is canonical.
                    if v <= u || v == x || v == y || d.adjacent(u, v) {
                        continue;
                    }
                    let w = InsertionWitness {
                        u,
                        v,
                        route: Route::Crossing {
                            edge: e,
                            through,
                            face_u: fu,
                            face_v: fv,
                            at_u: first_corner(d, fu, u),
                            at_v: first_corner(d, fv, v),
                        },
                        crossing_id: Some(fresh.clone()),
                    };
                    offer(w, &mut best);
                    if stop_at_first {
                        return best;
                    }
                }
            }
        }
    }
    best
}

/// All insertable non-adjacent pairs, one witness each, sorted by pair.
pub fn insertable_pairs(d: &Drawing) -> Vec<InsertionWitness> {
    scan(d, false).into_values().collect()
}

/// No edge can be added keeping the drawing simple and 1-plane.
pub fn is_maximal(d: &Drawing) -> bool {
    scan(d, true).is_empty()
}

/// Draw the witnessed edge.
pub fn insert_edge(d: &Drawing, w: &InsertionWitness) -> Result<Drawing, InsertError> {
    let (u, v) = (w.u, w.v);
    if u >= d.n() || v >= d.n() || u == v {
        return Err(InsertError::Stale("endpoints"));
    }
    if d.adjacent(u, v) {
        return Err(InsertError::Stale("endpoints already adjacent"));
    }
    let nd = d.dart_count();
    let face_of = |x: Dart| d.faces().dart_face[x];
    let corner_ok = |x: Dart, vert: usize, f: usize| {
        x < nd && d.tail(x) == Node::Vertex(vert) && face_of(x) == f
    };
    let splice = match w.route {
        Route::Clean { face, at_u, at_v } => {
            if !corner_ok(at_u, u, face) || !corner_ok(at_v, v, face) {
                return Err(InsertError::Stale("corner not on face"));
            }
            Splice {
                u,
                v,
                at_u: Some(at_u),
                at_v: Some(at_v),
                through: None,
                edge_id: d.fresh_edge_id(u, v),
                crossing_id: None,
            }
        }
        Route::Crossing {
            edge,
            through,
            face_u,
            face_v,
            at_u,
            at_v,
        } => {
            if edge >= d.m() || !d.is_clean(edge) || d.edge(edge).has_end(u) || d.edge(edge).has_end(v)
            {
                return Err(InsertError::Stale("crossed edge"));
            }
            if through >= nd
                || d.dart_edge(through) != edge
                || face_of(through) != face_u
                || face_of(through ^ 1) != face_v
            {
                return Err(InsertError::Stale("crossed edge sides"));
            }
            if !corner_ok(at_u, u, face_u) || !corner_ok(at_v, v, face_v) {
                return Err(InsertError::Stale("corner not on face"));
            }
            let cid = match &w.crossing_id {
                Some(c) if d.vertex_index(c).is_none() && d.crossing_index(c).is_none() => {
                    c.clone()
                }
                Some(_) => return Err(InsertError::Stale("crossing id taken")),
                None => d.fresh_node_id("x"),
            };
            Splice {
                u,
                v,
                at_u: Some(at_u),
                at_v: Some(at_v),
                through: Some(through),
                edge_id: d.fresh_edge_id(u, v),
                crossing_id: Some(cid),
            }
        }
    };
    Ok(d.splice(&splice)?)
}

/// Choice among witnesses during saturation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Lexicographically least `(u, v, kind, crossed edge)`.
    Lex,
    /// Uniform choice from a seeded stream.
    Random(u64),
}

impl std::str::FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "lex" {
            return Ok(Policy::Lex);
        }
        if let Some(seed) = s.strip_prefix("rand:") {
            return seed
                .parse()
                .map(Policy::Random)
                .map_err(|_| format!("bad seed in `{s}`"));
        }
        Err(format!("unknown policy `{s}` (expected lex or rand:<seed>)"))
    }
}

/// Add edges until maximal.
pub fn saturate(d: &Drawing, policy: &Policy) -> Drawing {
    saturate_traced(d, policy).0
}

/// Like [`saturate`], also returning every intermediate drawing.
pub fn saturate_traced(d: &Drawing, policy: &Policy) -> (Drawing, Vec<Drawing>) {
    let mut rng = match policy {
        Policy::Lex => None,
        Policy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
    };
    let mut cur = d.clone();
    let mut trail = Vec::new();
    loop {
        let ws = insertable_pairs(&cur);
        let pick = match (&mut rng, ws.is_empty()) {
            (_, true) => break,
            (None, false) => &ws[0],
            (Some(r), false) => ws.choose(r).unwrap(),
        };
        let next = insert_edge(&cur, pick).expect("fresh witness inserts");
        trail.push(std::mem::replace(&mut cur, next));
    }
    (cur, trail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::parse_drawing;

    const K4: &str = "v a\nv b\nv c\nv d\ne ab a b\ne ac a c\ne ad a d\ne bc b c\ne bd b d\ne cd c d\n\
rot a ab ac ad\nrot b ab bd bc\nrot c ac bc cd\nrot d ad cd bd\n";

    #[test]
    fn complete_is_maximal() {
        let d = parse_drawing(K4).unwrap();
        assert!(is_maximal(&d));
        assert!(insertable_pairs(&d).is_empty());
    }

    #[test]
    fn path_saturates() {
        let d = parse_drawing("v a\nv b\nv c\ne ab a b\ne bc b c\nrot a ab\nrot b ab bc\nrot c bc\n")
            .unwrap();
        let ws = insertable_pairs(&d);
        assert_eq!(ws.len(), 1);
        assert!(ws[0].is_clean());
        let s = saturate(&d, &Policy::Lex);
        assert_eq!(s.m(), 3);
    }

    #[test]
    fn stale_witness_rejected() {
        let d = parse_drawing("v a\nv b\nv c\ne ab a b\ne bc b c\nrot a ab\nrot b ab bc\nrot c bc\n")
            .unwrap();
        let w = insertable_pairs(&d).remove(0);
        let d2 = insert_edge(&d, &w).unwrap();
        assert!(insert_edge(&d2, &w).is_err());
    }

    #[test]
    fn policy_parse() {
        assert_eq!("lex".parse::<Policy>(), Ok(Policy::Lex));
        assert_eq!("rand:7".parse::<Policy>(), Ok(Policy::Random(7)));
        assert!("rand:x".parse::<Policy>().is_err());
    }
}
