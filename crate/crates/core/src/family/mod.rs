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

//! The sparse maximal family `H_n`, grown three vertices at a time.
//!
//! An Ω-structure `⟨(u, w0, w1), (α0, α1)⟩` is a degree-3 vertex `w1` with
//! clean edges to `u` and `w0` and a third edge crossing `uw0` at `α1`,
//! sitting in three faces: triangles `u·w1·α1` and `w0·w1·α1`, and a
//! quadrilateral `u·w1·w0·α0`. The operation φ adds `w2`, `a`, `b` and seven
//! edges inside that region and leaves a new Ω-structure
//! `⟨(u, w1, w2), (α1, α2)⟩` behind.

use thiserror::Error;

use crate::drawing::{parse_drawing, Dart, Drawing, DrawingError, Node, Splice};
use crate::maximality::is_maximal;

pub const H5: &str = include_str!("../../fixtures/h5.1pl");
pub const H6: &str = include_str!("../../fixtures/h6.1pl");
pub const H7: &str = include_str!("../../fixtures/h7.1pl");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("no base fixture for n = {0} (expected 5, 6 or 7)")]
    NoBase(usize),
    #[error("H_n needs n >= 5, got {0}")]
    TooSmall(usize),
    #[error("not an Ω-structure of this drawing")]
    NotOmega,
    #[error("no Ω-structure to grow from")]
    NoOmega,
    #[error("φ produced a non-maximal drawing")]
    LostMaximality,
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaStructure {
    pub u: usize,
    pub w0: usize,
    pub w1: usize,
    /// `α0` (on the quadrilateral) and `α1` (on `uw0`).
    pub alphas: [usize; 2],
    /// Faces `[quad, triangle at u, triangle at w0]`.
    pub faces: [usize; 3],
}

impl OmegaStructure {
    pub fn describe(&self, d: &Drawing) -> String {
        format!(
            "<({}, {}, {}), ({}, {})>",
            d.vertex_id(self.u),
            d.vertex_id(self.w0),
            d.vertex_id(self.w1),
            d.crossing(self.alphas[0]).id,
            d.crossing(self.alphas[1]).id
        )
    }

    /// Same structure with the roles of `u` and `w0` exchanged.
    pub fn mirrored(&self) -> OmegaStructure {
        OmegaStructure {
            u: self.w0,
            w0: self.u,
            faces: [self.faces[0], self.faces[2], self.faces[1]],
            ..self.clone()
        }
    }
}

pub fn base_fixture(n: usize) -> Result<Drawing, FamilyError> {
    let text = match n {
        5 => H5,
        6 => H6,
        7 => H7,
        _ => return Err(FamilyError::NoBase(n)),
    };
    Ok(parse_drawing(text)?)
}

fn tails(d: &Drawing, f: usize) -> Vec<Node> {
    d.faces().faces[f].walk.iter().map(|&x| d.tail(x)).collect()
}

fn cyc_eq(a: &[Node], b: &[Node]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
}

/// Check the Ω pattern with `u` and `w0` in this exact orientation:
/// the quadrilateral reads `u, w1, w0, α0` along its walk.
fn check(d: &Drawing, u: usize, w0: usize, w1: usize) -> Option<OmegaStructure> {
    if d.degree(w1) != 3 || u == w0 {
        return None;
    }
    let e_u = d.edge_between(u, w1)?;
    let e_w = d.edge_between(w0, w1)?;
    let e_uw = d.edge_between(u, w0)?;
    if !d.is_clean(e_u) || !d.is_clean(e_w) {
        return None;
    }
    let c1 = d.edge(e_uw).crossing?;
    let third = d.incidences(w1).iter().map(|&(_, e)| e).find(|&e| e != e_u && e != e_w)?;
    if d.partner(third) != Some(e_uw) {
        return None;
    }
    let (vu, vw, vw1, x1) = (
        Node::Vertex(u),
        Node::Vertex(w0),
        Node::Vertex(w1),
        Node::Crossing(c1),
    );
    let quad = d.faces().dart_face[d.dart_from(vu, e_u)?];
    let qt = tails(d, quad);
    let Some(&Node::Crossing(c0)) = qt.iter().find(|t| matches!(t, Node::Crossing(_))) else {
        return None;
    };
    if c0 == c1 || !cyc_eq(&qt, &[vu, vw1, vw, Node::Crossing(c0)]) {
        return None;
    }
    let tu = d.faces().dart_face[d.dart_from(vw1, e_u)?];
    let tw = d.faces().dart_face[d.dart_from(vw, e_w)?];
    if !cyc_eq(&tails(d, tu), &[vw1, vu, x1]) || !cyc_eq(&tails(d, tw), &[vw, vw1, x1]) {
        return None;
    }
    // The region is bounded: none of its faces may be the outer one.
    if d.outer_face().is_some_and(|o| [quad, tu, tw].contains(&o)) {
        return None;
    }
    Some(OmegaStructure {
        u,
        w0,
        w1,
        alphas: [c0, c1],
        faces: [quad, tu, tw],
    })
}

/// Accept a structure in either orientation.
fn validate(d: &Drawing, s: &OmegaStructure) -> Option<OmegaStructure> {
    if s.u >= d.n() || s.w0 >= d.n() || s.w1 >= d.n() {
        return None;
    }
    if let Some(c) = check(d, s.u, s.w0, s.w1) {
        return Some(c);
    }
    check(d, s.w0, s.u, s.w1).map(|c| c.mirrored())
}

/// Every Ω-structure, once each, in the orientation where the quadrilateral
/// reads `u, w1, w0, α0`. Structures touching the outer face are skipped.
pub fn find_omega(d: &Drawing) -> Vec<OmegaStructure> {
    let mut out = Vec::new();
    for w1 in 0..d.n() {
        if d.degree(w1) != 3 {
            continue;
        }
        let nb: Vec<usize> = d.neighbors(w1).collect();
        for &u in &nb {
            for &w0 in &nb {
                if let Some(s) = check(d, u, w0, w1) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// A leaving dart of `v` on face `f`.
fn corner_in(d: &Drawing, v: usize, f: usize) -> Option<Dart> {
    d.faces().faces[f]
        .walk
        .iter()
        .copied()
        .find(|&x| d.tail(x) == Node::Vertex(v))
}

fn idx(d: &Drawing, id: &str) -> usize {
    d.vertex_index(id).expect("vertex survives rebuild")
}

/// The dart of edge `a`–`b` leaving `a`.
fn dart(d: &Drawing, a: &str, b: &str) -> Option<Dart> {
    let (x, y) = (idx(d, a), idx(d, b));
    d.dart_from(Node::Vertex(x), d.edge_between(x, y)?)
}

/// Join `v` (by id) to the pendant `p` inside the only face at `p`.
fn close_pendant(d: &Drawing, p: &str, v: &str) -> Result<Drawing, FamilyError> {
    let (pi, vi) = (idx(d, p), idx(d, v));
    let at_p = d.rotation(Node::Vertex(pi))[0];
    let f = d.faces().dart_face[at_p];
    let at_v = corner_in(d, vi, f).ok_or(FamilyError::NotOmega)?;
    Ok(d.splice(&Splice {
        u: pi,
        v: vi,
        at_u: Some(at_p),
        at_v: Some(at_v),
        through: None,
        edge_id: d.fresh_edge_id(pi, vi),
        crossing_id: None,
    })?)
}

/// Apply φ at `s`, returning the grown drawing and the new structure
/// `⟨(u, w1, w2), (α1, α2)⟩`.
pub fn phi(d: &Drawing, s: &OmegaStructure) -> Result<(Drawing, OmegaStructure), FamilyError> {
    let s = validate(d, s).ok_or(FamilyError::NotOmega)?;
    let was_maximal = is_maximal(d);
    let id = |x: usize| d.vertex_id(x).to_string();
    let (u, w0, w1) = (id(s.u), id(s.w0), id(s.w1));
    let a1 = d.crossing(s.alphas[1]).id.clone();
    let a0 = d.crossing(s.alphas[0]).id.clone();

    // w2 in the triangle at u, joined to u and w1.
    let w2 = d.fresh_node_id("v");
    let at = corner_in(d, s.u, s.faces[1]).ok_or(FamilyError::NotOmega)?;
    let g = d.add_pendant(s.u, Some(at), &w2, &format!("{u}-{w2}"))?;
    let g = close_pendant(&g, &w2, &w1)?;

    // w2w0 across uw1, from the triangle u·w2·w1 into the quadrilateral.
    let a2 = g.fresh_node_id("x");
    let (du, dw) = (dart(&g, &u, &w1).unwrap(), dart(&g, &w1, &u).unwrap());
    let w2i = idx(&g, &w2);
    let on = |x: Dart| g.faces().faces[g.faces().dart_face[x]].has_vertex(w2i);
    let through = if on(du) { du } else { dw };
    let fu = g.faces().dart_face[through];
    let fv = g.faces().dart_face[through ^ 1];
    let w0i = idx(&g, &w0);
    let g = g.splice(&Splice {
        u: w2i,
        v: w0i,
        at_u: corner_in(&g, w2i, fu),
        at_v: corner_in(&g, w0i, fv),
        through: Some(through),
        edge_id: g.fresh_edge_id(w2i, w0i),
        crossing_id: Some(a2.clone()),
    })?;

    // a in the part of the old quadrilateral holding u and w0.
    let (ui, w0i) = (idx(&g, &u), idx(&g, &w0));
    let x2 = g.crossing_index(&a2).unwrap();
    let part = g
        .faces()
        .faces
        .iter()
        .find(|f| {
            f.vertices == [ui.min(w0i), ui.max(w0i)]
                && f.walk.iter().any(|&x| g.tail(x) == Node::Crossing(x2))
        })
        .map(|f| f.id)
        .ok_or(FamilyError::NotOmega)?;
    let a = g.fresh_node_id("v");
    let g = g.add_pendant(ui, corner_in(&g, ui, part), &a, &format!("{u}-{a}"))?;
    let g = close_pendant(&g, &a, &w0)?;

    // b in the triangle at w0.
    let w0i = idx(&g, &w0);
    let tri = [dart(&g, &w0, &w1).unwrap(), dart(&g, &w1, &w0).unwrap()]
        .into_iter()
        .map(|x| g.faces().dart_face[x])
        .find(|&f| g.faces().faces[f].walk.len() == 3)
        .ok_or(FamilyError::NotOmega)?;
    let b = g.fresh_node_id("v");
    let g = g.add_pendant(w0i, corner_in(&g, w0i, tri), &b, &format!("{w0}-{b}"))?;
    let g = close_pendant(&g, &b, &w1)?;

    if was_maximal && !is_maximal(&g) {
        return Err(FamilyError::LostMaximality);
    }
    let next = OmegaStructure {
        u: idx(&g, &u),
        w0: idx(&g, &w1),
        w1: idx(&g, &w2),
        alphas: [
            g.crossing_index(&a1).unwrap(),
            g.crossing_index(&a2).unwrap(),
        ],
        faces: [0; 3],
    };
    let next = validate(&g, &next).ok_or(FamilyError::NotOmega)?;
    debug_assert!(g.crossing_index(&a0).is_some());
    Ok((g, next))
}

/// One φ step of a construction trace.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub n: usize,
    pub m: usize,
    pub structure: String,
}

/// `H_n`: the base of `n`'s residue class, grown by φ at the structure the
/// previous φ created.
pub fn build_hn(n: usize) -> Result<Drawing, FamilyError> {
    build_hn_traced(n).map(|(d, _)| d)
}

pub fn build_hn_traced(n: usize) -> Result<(Drawing, Vec<TraceStep>), FamilyError> {
    if n < 5 {
        return Err(FamilyError::TooSmall(n));
    }
    let mut d = base_fixture(5 + (n - 5) % 3)?;
    let mut s = find_omega(&d).into_iter().next().ok_or(FamilyError::NoOmega)?;
    let mut trace = Vec::new();
    while d.n() < n {
        trace.push(TraceStep {
            n: d.n(),
            m: d.m(),
            structure: s.describe(&d),
        });
        let (g, t) = phi(&d, &s)?;
        d = g;
        s = t;
    }
    Ok((d, trace))
}

/// `⌈7n/3⌉ − 3`.
pub fn size_formula(n: usize) -> usize {
    (7 * n).div_ceil(3) - 3
}
