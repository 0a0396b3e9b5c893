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

//! The line-based `1pl` format.
//!
//! ```text
//! v <id>
//! e <eid> <u> <v>
//! x <cid> <eid1> <eid2>
//! rot <node-id> <tok> ...      # tok = eid | eid.0 | eid.1
//! outer <face-index>
//! ```
//!
//! Statements may come in any order; `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write;

use super::build::{Outer, Raw};
use super::{valid_id, Drawing, DrawingError, Node, Side};

struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok {
                    text: &body[s..i],
                    col: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok {
            text: &body[s..],
            col: s + 1,
        });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DrawingError {
    DrawingError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn at(line: usize, column: usize, e: DrawingError) -> DrawingError {
    DrawingError::At {
        line,
        column,
        source: Box::new(e),
    }
}

/// Parse a drawing, validating every invariant.
pub fn parse_drawing(text: &str) -> Result<Drawing, DrawingError> {
    let mut raw = Raw::default();
    let mut vpos: HashMap<String, usize> = HashMap::new();
    let mut epos: HashMap<String, usize> = HashMap::new();
    let mut xpos: HashMap<String, usize> = HashMap::new();
    // Where each id was defined, and where each rotation was given.
    let mut where_v = Vec::new();
    let mut where_e = Vec::new();
    let mut where_x = Vec::new();
    let mut pending_e: Vec<(usize, [(String, usize); 2])> = Vec::new();
    let mut pending_x: Vec<(usize, [(String, usize); 2])> = Vec::new();
    let mut pending_rot: Vec<(usize, String, usize, Vec<(String, usize)>)> = Vec::new();
    let mut outer: Option<(usize, usize, usize)> = None;

    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        let need = |k: usize| -> Result<(), DrawingError> {
            if toks.len() != k {
                let col = toks.get(k).map_or(line.len() + 1, |t| t.col);
                return Err(syntax(
                    ln,
                    col,
                    format!("`{}` takes {} argument(s)", head.text, k - 1),
                ));
            }
            Ok(())
        };
        let check_id = |t: &Tok| -> Result<String, DrawingError> {
            if valid_id(t.text) {
                Ok(t.text.to_string())
            } else {
                Err(syntax(ln, t.col, format!("invalid id `{}`", t.text)))
            }
        };
        match head.text {
            "v" => {
                need(2)?;
                let id = check_id(&toks[1])?;
                if vpos.contains_key(&id) || xpos.contains_key(&id) {
                    return Err(at(ln, toks[1].col, DrawingError::DuplicateId(id)));
                }
                vpos.insert(id.clone(), raw.add_vertex(id));
                where_v.push((ln, 0));
            }
            "e" => {
                need(4)?;
                let id = check_id(&toks[1])?;
                if epos.contains_key(&id) {
                    return Err(at(ln, toks[1].col, DrawingError::DuplicateId(id)));
                }
                let u = (check_id(&toks[2])?, toks[2].col);
                let v = (check_id(&toks[3])?, toks[3].col);
                epos.insert(id.clone(), raw.add_edge(id, 0, 0));
                where_e.push(ln);
                pending_e.push((ln, [u, v]));
            }
            "x" => {
                need(4)?;
                let id = check_id(&toks[1])?;
                if vpos.contains_key(&id) || xpos.contains_key(&id) {
                    return Err(at(ln, toks[1].col, DrawingError::DuplicateId(id)));
                }
                let a = (check_id(&toks[2])?, toks[2].col);
                let b = (check_id(&toks[3])?, toks[3].col);
                xpos.insert(id.clone(), raw.add_crossing(id, 0, 0));
                where_x.push((ln, 0));
                pending_x.push((ln, [a, b]));
            }
            "rot" => {
                if toks.len() < 2 {
                    return Err(syntax(ln, line.len() + 1, "`rot` needs a node id"));
                }
                let id = check_id(&toks[1])?;
                let list = toks[2..]
                    .iter()
                    .map(|t| (t.text.to_string(), t.col))
                    .collect();
                pending_rot.push((ln, id, toks[1].col, list));
            }
            "outer" => {
                need(2)?;
                if outer.is_some() {
                    return Err(syntax(ln, head.col, "second `outer` line"));
                }
                let k = toks[1]
                    .text
                    .parse::<usize>()
                    .map_err(|_| syntax(ln, toks[1].col, "face index expected"))?;
                outer = Some((k, ln, toks[1].col));
            }
            other => {
                return Err(syntax(ln, head.col, format!("unknown statement `{other}`")));
            }
        }
    }

    for (i, (ln, [u, v])) in pending_e.iter().enumerate() {
        let look = |(id, col): &(String, usize)| {
            vpos.get(id)
                .copied()
                .ok_or_else(|| at(*ln, *col, DrawingError::UnknownId(id.clone())))
        };
        raw.edges[i].1 = look(u)?;
        raw.edges[i].2 = look(v)?;
    }
    for (i, (ln, [a, b])) in pending_x.iter().enumerate() {
        let look = |(id, col): &(String, usize)| {
            epos.get(id)
                .copied()
                .ok_or_else(|| at(*ln, *col, DrawingError::UnknownId(id.clone())))
        };
        raw.crossings[i].1 = [look(a)?, look(b)?];
    }

    let mut crossed = vec![false; raw.edges.len()];
    for (_, [a, b]) in &raw.crossings {
        crossed[*a] = true;
        crossed[*b] = true;
    }
    let mut seen_v = vec![false; raw.vertices.len()];
    let mut seen_x = vec![false; raw.crossings.len()];
    for (ln, id, col, list) in &pending_rot {
        let (ln, col) = (*ln, *col);
        let mut rot = Vec::with_capacity(list.len());
        for (t, tc) in list {
            let (eid, side) = match t.split_once('.') {
                None => (t.as_str(), Side::Whole),
                Some((e, "0")) => (e, Side::Half0),
                Some((e, "1")) => (e, Side::Half1),
                Some(_) => return Err(syntax(ln, *tc, format!("bad token `{t}`"))),
            };
            let e = *epos
                .get(eid)
                .ok_or_else(|| at(ln, *tc, DrawingError::UnknownId(eid.to_string())))?;
            if crossed[e] == (side == Side::Whole) {
                let msg = if crossed[e] {
                    format!("edge `{eid}` is crossed; use `{eid}.0` or `{eid}.1`")
                } else {
                    format!("edge `{eid}` is not crossed; use `{eid}`")
                };
                return Err(syntax(ln, *tc, msg));
            }
            rot.push((e, side));
        }
        if let Some(&v) = vpos.get(id) {
            if std::mem::replace(&mut seen_v[v], true) {
                return Err(syntax(ln, col, format!("second rotation for `{id}`")));
            }
            where_v[v].1 = ln;
            raw.vrot[v] = rot;
        } else if let Some(&c) = xpos.get(id) {
            if std::mem::replace(&mut seen_x[c], true) {
                return Err(syntax(ln, col, format!("second rotation for `{id}`")));
            }
            where_x[c].1 = ln;
            raw.xrot[c] = rot;
        } else {
            return Err(at(ln, col, DrawingError::UnknownId(id.clone())));
        }
    }
    if let Some(v) = seen_v.iter().position(|s| !s) {
        return Err(at(
            where_v[v].0,
            1,
            DrawingError::MissingRotation(raw.vertices[v].clone()),
        ));
    }
    if let Some(c) = seen_x.iter().position(|s| !s) {
        return Err(at(
            where_x[c].0,
            1,
            DrawingError::MissingRotation(raw.crossings[c].0.clone()),
        ));
    }
    if let Some((k, _, _)) = outer {
        raw.outer = Outer::Face(k);
    }

    raw.build().map_err(|e| {
        // Point at the most specific line we know about.
        let line = match &e {
            DrawingError::SelfLoop(id)
            | DrawingError::DuplicateEdge(id, _)
            | DrawingError::CrossedTwice(id) => epos.get(id).map(|&i| where_e[i]),
            DrawingError::AdjacentCrossing(id) => xpos.get(id).map(|&i| where_x[i].0),
            DrawingError::Alternation(id) => xpos.get(id).map(|&i| where_x[i].1),
            DrawingError::Rotation { node, .. } => vpos
                .get(node)
                .map(|&i| where_v[i].1)
                .or_else(|| xpos.get(node).map(|&i| where_x[i].1)),
            DrawingError::OuterOutOfRange(_) => outer.map(|(_, l, _)| l),
            _ => None,
        };
        match line {
            Some(l) => {
                let col = match &e {
                    DrawingError::OuterOutOfRange(_) => outer.map_or(1, |(_, _, c)| c),
                    _ => 1,
                };
                at(l, col, e)
            }
            None => e,
        }
    })
}

/// Canonical text: sorted ids, rotations from their smallest token.
pub fn serialize_drawing(d: &Drawing) -> String {
    let mut out = String::new();
    for id in d.vertex_ids() {
        let _ = writeln!(out, "v {id}");
    }
    for e in d.edges() {
        let _ = writeln!(
            out,
            "e {} {} {}",
            e.id,
            d.vertex_id(e.ends[0]),
            d.vertex_id(e.ends[1])
        );
    }
    for x in d.crossings() {
        let _ = writeln!(
            out,
            "x {} {} {}",
            x.id,
            d.edge(x.edges[0]).id,
            d.edge(x.edges[1]).id
        );
    }
    for i in 0..d.node_count() {
        let node = d.node(i);
        out.push_str("rot ");
        out.push_str(d.node_id(node));
        for &t in d.rotation(node) {
            out.push(' ');
            out.push_str(&d.token(t));
        }
        out.push('\n');
    }
    if let Some(f) = d.outer_face() {
        let _ = writeln!(out, "outer {f}");
    }
    debug_assert!(matches!(d.node(0), Node::Vertex(_)));
    out
}
