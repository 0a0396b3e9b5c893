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

//! Certificates for `e ≥ ⌈7n/3⌉ − 3`.
//!
//! The decomposition: strip the hermits, split the skeleton at an edge lying
//! in no K4 into two parts sharing one vertex, hand every hermit back to
//! the part holding its nest, and recurse. Leaves are K4-covered skeletons
//! where `3e ≥ 7n + nest − 9` must hold outright, or bare K4s.
//!
//! All arithmetic is kept in thirds. A node's `margin3 = 3e − 7n + 9`; the
//! bound holds at the node iff `margin3 ≥ 0`. A split node has
//! `margin3 = margin3(left) + margin3(right) + 1`, so a K4 part (margin −1)
//! is absorbed as long as the other part is not a K4 as well.

use std::fmt::Write;

use thiserror::Error;

use super::{trace_sequence, SequenceOptions};
use crate::drawing::Drawing;
use crate::maximality::is_maximal;
use crate::structure::{exceptional_edges, find_nests, skeleton, split_at_exceptional, StructureError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("drawing is not maximal")]
    NotMaximal,
    #[error("bound needs n >= 5, got {0}")]
    TooSmall(usize),
    #[error("bound violated: {0}")]
    Violated(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// K4-covered skeleton with at least five vertices.
    Leaf {
        nest: usize,
        /// `3ê − 7n̂ − nest + 9`.
        slack3: i64,
        /// Steps of the extension sequence of the skeleton, when it could
        /// be built.
        sequence_steps: Option<usize>,
        sequence_violations: Vec<String>,
    },
    /// A bare K4.
    K4,
    Split {
        /// The edge in no K4, and the shared vertex.
        edge: String,
        cut_vertex: String,
        /// Nests of the parts that the whole does not have.
        nests_lost: usize,
        parts: Box<[BoundNode; 2]>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundNode {
    pub n: usize,
    pub e: usize,
    pub hermits: usize,
    pub margin3: i64,
    pub kind: NodeKind,
}

impl BoundNode {
    fn skeleton_size(&self) -> Option<(i64, i64)> {
        let h = self.hermits as i64;
        let (n, e) = (self.n as i64 - h, self.e as i64 - 2 * h);
        (n >= 0 && e >= 0).then_some((n, e))
    }

    fn recheck(&self, path: &str, errs: &mut Vec<String>) {
        let mut bad = |m: String| errs.push(format!("{path}: {m}"));
        let (n, e) = (self.n as i64, self.e as i64);
        if self.margin3 != 3 * e - 7 * n + 9 {
            bad(format!("margin3 {} != 3e − 7n + 9", self.margin3));
        }
        let Some((sn, se)) = self.skeleton_size() else {
            bad("more hermits than vertices".into());
            return;
        };
        match &self.kind {
            NodeKind::Leaf { nest, slack3, .. } => {
                let nest = *nest as i64;
                if sn < 5 {
                    bad(format!("leaf skeleton has {sn} vertices"));
                }
                if *slack3 != 3 * se - 7 * sn - nest + 9 {
                    bad(format!("slack3 {slack3} != 3ê − 7n̂ − nest + 9"));
                }
                if *slack3 < 0 {
                    bad(format!("negative leaf slack {slack3}"));
                }
                if self.hermits as i64 > nest {
                    bad(format!("{} hermits but {nest} nests", self.hermits));
                }
            }
            NodeKind::K4 => {
                if (sn, se, self.hermits) != (4, 6, 0) {
                    bad(format!("K4 leaf with n̂ = {sn}, ê = {se}, h = {}", self.hermits));
                }
            }
            NodeKind::Split { parts, .. } => {
                let [l, r] = &**parts;
                if self.n + 1 != l.n + r.n {
                    bad(format!("n = {} but parts have {} + {}", self.n, l.n, r.n));
                }
                if self.e != l.e + r.e + 1 {
                    bad(format!("e = {} but parts have {} + {}", self.e, l.e, r.e));
                }
                if self.margin3 != l.margin3 + r.margin3 + 1 {
                    bad("margin3 is not the parts' sum plus one".into());
                }
                if l.margin3 < 0 && r.margin3 < 0 {
                    bad("both parts fall short".into());
                }
                l.recheck(&format!("{path}.0"), errs);
                r.recheck(&format!("{path}.1"), errs);
            }
        }
        if !matches!(self.kind, NodeKind::K4) && self.margin3 < 0 {
            errs.push(format!("{path}: margin3 {} < 0", self.margin3));
        }
    }

    fn render(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let _ = write!(
            out,
            "{pad}node n={} e={} hermits={} margin3={}",
            self.n, self.e, self.hermits, self.margin3
        );
        match &self.kind {
            NodeKind::Leaf {
                nest,
                slack3,
                sequence_steps,
                sequence_violations,
            } => {
                let _ = write!(out, " leaf nest={nest} slack3={slack3}");
                if let Some(s) = sequence_steps {
                    let _ = write!(out, " steps={s} violations={}", sequence_violations.len());
                }
                out.push('\n');
                for v in sequence_violations {
                    let _ = writeln!(out, "{pad}  ! {v}");
                }
            }
            NodeKind::K4 => out.push_str(" k4\n"),
            NodeKind::Split {
                edge,
                cut_vertex,
                nests_lost,
                parts,
            } => {
                let _ = writeln!(out, " split edge={edge} at={cut_vertex} nests_lost={nests_lost}");
                parts[0].render(depth + 1, out);
                parts[1].render(depth + 1, out);
            }
        }
    }

    /// Leaves in depth-first order.
    pub fn leaves(&self) -> Vec<&BoundNode> {
        match &self.kind {
            NodeKind::Split { parts, .. } => parts.iter().flat_map(|p| p.leaves()).collect(),
            _ => vec![self],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub n: usize,
    pub e: usize,
    /// `⌈7n/3⌉ − 3`.
    pub bound: usize,
    /// `e − bound`.
    pub slack: i64,
    pub verdict: bool,
    pub root: BoundNode,
}

impl BoundCertificate {
    /// Re-validate every number from the fields alone.
    pub fn recheck(&self) -> Result<(), Vec<String>> {
        let mut errs = Vec::new();
        if (self.root.n, self.root.e) != (self.n, self.e) {
            errs.push("root size differs from the certificate".into());
        }
        if self.bound != (7 * self.n).div_ceil(3) - 3 {
            errs.push(format!("bound {} != ⌈7n/3⌉ − 3", self.bound));
        }
        if self.slack != self.e as i64 - self.bound as i64 {
            errs.push("slack != e − bound".into());
        }
        if self.verdict != (self.slack >= 0) {
            errs.push("verdict disagrees with slack".into());
        }
        // margin3 ≥ 0 means 3e ≥ 7n − 9, which is e ≥ ⌈7n/3⌉ − 3.
        if (self.root.margin3 >= 0) != (self.slack >= 0) {
            errs.push("root margin disagrees with slack".into());
        }
        self.root.recheck("root", &mut errs);
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "n={} e={} bound={} slack={} verdict={}\n",
            self.n, self.e, self.bound, self.slack, self.verdict
        );
        self.root.render(0, &mut out);
        out
    }
}

/// Decompose `d` and certify `e(d) ≥ ⌈7n/3⌉ − 3`.
pub fn verify_bound(d: &Drawing) -> Result<BoundCertificate, BoundError> {
    if d.n() < 5 {
        return Err(BoundError::TooSmall(d.n()));
    }
    if !is_maximal(d) {
        return Err(BoundError::NotMaximal);
    }
    let root = node(d)?;
    let bound = (7 * d.n()).div_ceil(3) - 3;
    let slack = d.m() as i64 - bound as i64;
    let cert = BoundCertificate {
        n: d.n(),
        e: d.m(),
        bound,
        slack,
        verdict: slack >= 0 && root.margin3 >= 0,
        root,
    };
    if let Err(errs) = cert.recheck() {
        return Err(BoundError::Violated(errs.join("; ")));
    }
    Ok(cert)
}

fn node(x: &Drawing) -> Result<BoundNode, BoundError> {
    let sk = skeleton(x)?;
    let s = &sk.skeleton;
    let h = sk.hermits.len();
    let margin3 = 3 * x.m() as i64 - 7 * x.n() as i64 + 9;
    let here = |kind| BoundNode {
        n: x.n(),
        e: x.m(),
        hermits: h,
        margin3,
        kind,
    };
    let describe = || format!("part with n={} e={} hermits={h}", x.n(), x.m());
    if let Some(i) = sk.assignment.iter().position(Option::is_none) {
        return Err(BoundError::Violated(format!(
            "hermit `{}` sits in no nest ({})",
            x.vertex_id(sk.hermits[i].vertex),
            describe()
        )));
    }
    let exc = exceptional_edges(s);
    let Some(&ab) = exc.first() else {
        if s.n() == 4 && s.m() == 6 && h == 0 {
            return Ok(here(NodeKind::K4));
        }
        if s.n() < 5 {
            return Err(BoundError::Violated(format!("skeleton too small: {}", describe())));
        }
        let nest = sk.nests.len();
        let slack3 = 3 * s.m() as i64 - 7 * s.n() as i64 - nest as i64 + 9;
        if slack3 < 0 || h > nest {
            return Err(BoundError::Violated(format!(
                "leaf slack3 {slack3}, {h} hermits, {nest} nests ({})",
                describe()
            )));
        }
        let (sequence_steps, sequence_violations) = match trace_sequence(s, &SequenceOptions::default()) {
            Ok(seq) => (
                Some(seq.len()),
                seq.violations.iter().map(|v| v.to_string()).collect(),
            ),
            Err(_) => (None, Vec::new()),
        };
        return Ok(here(NodeKind::Leaf {
            nest,
            slack3,
            sequence_steps,
            sequence_violations,
        }));
    };
    let split = split_at_exceptional(s, ab)?;
    // Hand each hermit back to the part holding its nest.
    let keys = |g: &Drawing| -> Vec<_> { find_nests(g).iter().map(|n| n.key(g)).collect() };
    let (keys1, keys2) = (keys(&split.h1), keys(&split.h2));
    let mut sides: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (side, part) in [&split.h1, &split.h2].into_iter().enumerate() {
        for v in part.vertex_ids() {
            sides[side].push(x.vertex_index(v).expect("part vertex in whole"));
        }
    }
    for (hm, a) in sk.hermits.iter().zip(&sk.assignment) {
        let key = sk.nests[a.unwrap()].key(s);
        let side = if keys1.contains(&key) {
            0
        } else if keys2.contains(&key) {
            1
        } else {
            return Err(BoundError::Violated(format!(
                "nest of hermit `{}` survives in neither part",
                x.vertex_id(hm.vertex)
            )));
        };
        sides[side].push(hm.vertex);
    }
    let mut parts = Vec::with_capacity(2);
    for side in &mut sides {
        side.sort_unstable();
        parts.push(node(&x.induced_subdrawing(side).map_err(StructureError::from)?)?);
    }
    let [p1, p2]: [BoundNode; 2] = parts.try_into().unwrap();
    Ok(here(NodeKind::Split {
        edge: s.edge(ab).id.clone(),
        cut_vertex: s.vertex_id(split.f).to_string(),
        nests_lost: split.nests_lost.len(),
        parts: Box::new([p1, p2]),
    }))
}
