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

//! K4-extension sequences.
//!
//! Starting from a K4, grow an induced subgraph `G_i` one K4 at a time until
//! it is all of `G`. A K4 `F` meeting the current vertex set in 3, 2 or 1
//! vertices is a strong, weak or micro link. Strong links are preferred,
//! then weak; a micro link is only taken through an edge `ux` leaving the
//! current set next to an edge `uw` staying inside it in the rotation at
//! `u` (the SWM* rule).
//!
//! Every step is audited: 2-connectivity, removability of the new edges,
//! new 2-cuts, the per-step edge-count inequalities and the rest. Failures
//! are collected as [`Violation`]s rather than panicking, since any one of
//! them would contradict a statement the bound depends on.

mod bound;
mod graph;

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::drawing::{Drawing, DrawingError, Node};
use crate::maximality::{is_maximal, Policy};
use crate::structure::{find_k4_subgraphs, find_nests, NestKey, StructureError};

pub use bound::{verify_bound, BoundCertificate, BoundError, BoundNode, NodeKind};
use graph::Sub;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinkKind {
    Strong,
    Weak,
    Micro,
}

impl LinkKind {
    pub fn name(self) -> &'static str {
        match self {
            LinkKind::Strong => "strong",
            LinkKind::Weak => "weak",
            LinkKind::Micro => "micro",
        }
    }

    fn from_shared(k: usize) -> Option<LinkKind> {
        match k {
            3 => Some(LinkKind::Strong),
            2 => Some(LinkKind::Weak),
            1 => Some(LinkKind::Micro),
            _ => None,
        }
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a micro link was reached: `ux` leaves the current set beside `uw`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct MicroChoice {
    pub u: usize,
    pub x: usize,
    pub w: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K4Link {
    /// Sorted vertex indices of the K4.
    pub f: [usize; 4],
    pub kind: LinkKind,
    /// `V(F)` ∩ current, sorted.
    pub shared: Vec<usize>,
    /// Edges the extension brings in besides those of `F`.
    pub extra_edges: Vec<usize>,
    pub via: Option<MicroChoice>,
}

impl K4Link {
    /// A micro link whose extension adds exactly one edge outside `F`.
    pub fn is_simple(&self) -> bool {
        self.kind == LinkKind::Micro && self.extra_edges.len() == 1
    }

    /// The extra edge of a simple micro link.
    pub fn extra_edge(&self) -> Option<usize> {
        self.is_simple().then(|| self.extra_edges[0])
    }

    pub fn describe(&self, d: &Drawing) -> String {
        let ids: Vec<&str> = self.f.iter().map(|&v| d.vertex_id(v)).collect();
        let mut s = format!("{} {{{}}}", self.kind, ids.join(","));
        if self.kind == LinkKind::Micro {
            s.push_str(if self.is_simple() { " simple" } else { " non-simple" });
            if let Some(e) = self.extra_edge() {
                s.push_str(&format!(" extra={}", d.edge(e).id));
            }
        }
        s
    }
}

#[derive(Debug, Error, Clone)]
pub enum ExtensionError {
    #[error("drawing is not maximal")]
    NotMaximal,
    #[error("edge `{0}` lies in no K4")]
    EdgeOutsideK4(String),
    #[error("{{{0}}} does not induce K4")]
    NotK4(String),
    #[error("link meets the current set in {0} vertices (expected 1..=3)")]
    Intersection(usize),
    #[error("current vertex set is not a proper subset with at least 4 vertices")]
    NotProper,
    #[error("vertex index {0} out of range")]
    NoSuchVertex(usize),
    #[error("need at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("drawing is not 2-connected")]
    NotTwoConnected,
    #[error("{0} is not in the drawing")]
    Absent(String),
    #[error("no K4 link leaves the current set")]
    Stuck,
    #[error("{} violation(s); first: {}", .0.violations.len(), .0.violations[0])]
    Violations(Box<ExtensionSequence>),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

fn mask(d: &Drawing, set: &[usize]) -> Result<Vec<bool>, ExtensionError> {
    let mut m = vec![false; d.n()];
    for &v in set {
        *m.get_mut(v).ok_or(ExtensionError::NoSuchVertex(v))? = true;
    }
    Ok(m)
}

fn is_k4(d: &Drawing, f: &[usize; 4]) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| f[i] != f[j] && d.adjacent(f[i], f[j])))
}

fn ids(d: &Drawing, vs: &[usize]) -> String {
    vs.iter().map(|&v| d.vertex_id(v)).collect::<Vec<_>>().join(",")
}

fn classify(d: &Drawing, inside: &[bool], f: [usize; 4], via: Option<MicroChoice>) -> K4Link {
    let shared: Vec<usize> = f.iter().copied().filter(|&v| inside[v]).collect();
    let kind = LinkKind::from_shared(shared.len()).expect("intersection checked");
    let in_f = |v: usize| f.contains(&v);
    let extra_edges = d
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            let [a, b] = e.ends;
            let reach = |v: usize| inside[v] || in_f(v);
            reach(a) && reach(b) && !(inside[a] && inside[b]) && !(in_f(a) && in_f(b))
        })
        .map(|(i, _)| i)
        .collect();
    K4Link {
        f,
        kind,
        shared,
        extra_edges,
        via,
    }
}

/// Classify `f` as a link from `current`.
pub fn classify_link(d: &Drawing, current: &[usize], f: [usize; 4]) -> Result<K4Link, ExtensionError> {
    let inside = mask(d, current)?;
    let mut f = f;
    f.sort_unstable();
    if f.iter().any(|&v| v >= d.n()) || !is_k4(d, &f) {
        return Err(ExtensionError::NotK4(
            f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
        ));
    }
    let k = f.iter().filter(|&&v| inside[v]).count();
    if !(1..=3).contains(&k) {
        return Err(ExtensionError::Intersection(k));
    }
    Ok(classify(d, &inside, f, None))
}

/// All K4s, after checking that they cover every edge.
fn k4_cover(d: &Drawing) -> Result<Vec<[usize; 4]>, ExtensionError> {
    let k4s = find_k4_subgraphs(d);
    let mut covered = vec![false; d.m()];
    for f in &k4s {
        for i in 0..4 {
            for j in i + 1..4 {
                covered[d.edge_between(f[i], f[j]).unwrap()] = true;
            }
        }
    }
    match covered.iter().position(|c| !c) {
        Some(e) => Err(ExtensionError::EdgeOutsideK4(d.edge(e).id.clone())),
        None => Ok(k4s),
    }
}

fn shared(f: &[usize; 4], inside: &[bool]) -> usize {
    f.iter().filter(|&&v| inside[v]).count()
}

/// Candidates under the SWM* rule, sorted by vertex set.
fn candidates(d: &Drawing, k4s: &[[usize; 4]], inside: &[bool]) -> Vec<K4Link> {
    for k in [3, 2] {
        let out: Vec<K4Link> = k4s
            .iter()
            .filter(|f| shared(f, inside) == k)
            .map(|&f| classify(d, inside, f, None))
            .collect();
        if !out.is_empty() {
            return out;
        }
    }
    let mut out: Vec<K4Link> = Vec::new();
    let mut offer = |f: [usize; 4], via: MicroChoice| {
        if shared(&f, inside) == 1 && !out.iter().any(|l| l.f == f) {
            out.push(classify(d, inside, f, Some(via)));
        }
    };
    for u in (0..d.n()).filter(|&u| inside[u]) {
        let rot = d.rotation(Node::Vertex(u));
        let far = |x: usize| d.edge(d.dart_edge(x)).other(u);
        for j in 0..rot.len() {
            let (a, b) = (rot[j], rot[(j + 1) % rot.len()]);
            for (p, q) in [(a, b), (b, a)] {
                let (x, w) = (far(p), far(q));
                if inside[x] || !inside[w] {
                    continue;
                }
                let via = MicroChoice { u, x, w };
                let ux = d.dart_edge(p);
                match d.partner(ux) {
                    Some(st) => {
                        let [s, t] = d.edge(st).ends;
                        let mut f = [u, x, s, t];
                        f.sort_unstable();
                        if is_k4(d, &f) {
                            offer(f, via);
                        }
                    }
                    None => {
                        for f in k4s.iter().filter(|f| f.contains(&u) && f.contains(&x)) {
                            offer(*f, via);
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|a| a.f);
    out
}

/// Links from `current` admissible under the SWM* rule: all strong links if
/// any, else all weak ones, else the micro links reachable by rule M*.
pub fn swm_star_links(d: &Drawing, current: &[usize]) -> Result<Vec<K4Link>, ExtensionError> {
    let inside = mask(d, current)?;
    let size = inside.iter().filter(|&&b| b).count();
    if size < 4 || size == d.n() {
        return Err(ExtensionError::NotProper);
    }
    if !is_maximal(d) {
        return Err(ExtensionError::NotMaximal);
    }
    let k4s = k4_cover(d)?;
    Ok(candidates(d, &k4s, &inside))
}

/// Step record of an extension sequence.
#[derive(Clone, Debug)]
pub struct Step {
    /// `i` in `G_{i-1} → G_i`, from 1.
    pub index: usize,
    pub link: K4Link,
    pub added: Vec<usize>,
    pub delta_e: usize,
    /// Nests of `G_i` that are not nests of `G_{i-1}`.
    pub nest_star: Vec<NestKey>,
    /// Nests of `G_{i-1}` that are gone in `G_i`.
    pub nests_lost: Vec<NestKey>,
    /// How many candidates the rule offered.
    pub candidates: usize,
    /// `3Δe − 7Δn − |Nest*|`; the step inequality says this is `≥ 0`.
    pub slack3: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Step index (0 for the seed).
    pub step: usize,
    pub rule: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: [{}] {}", self.step, self.rule, self.detail)
    }
}

/// `(n, e, nest)` of one `G_j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub n: usize,
    pub e: usize,
    pub nest: usize,
}

#[derive(Clone, Debug)]
pub struct ExtensionSequence {
    pub base: [usize; 4],
    pub steps: Vec<Step>,
    pub stages: Vec<Stage>,
    pub vertex_od: Vec<usize>,
    pub edge_od: Vec<usize>,
    pub violations: Vec<Violation>,
    pub paper_proof_mode: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Vertex(usize),
    Edge(usize),
}

impl ExtensionSequence {
    /// `N`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// First index at which `item` is present.
    pub fn od(&self, item: Item) -> Result<usize, ExtensionError> {
        match item {
            Item::Vertex(v) => self.vertex_od.get(v).copied(),
            Item::Edge(e) => self.edge_od.get(e).copied(),
        }
        .ok_or_else(|| ExtensionError::Absent(format!("{item:?}")))
    }

    /// `V(G_j)` for every `j`.
    pub fn vertex_sets(&self) -> Vec<Vec<usize>> {
        (0..=self.len())
            .map(|j| (0..self.vertex_od.len()).filter(|&v| self.vertex_od[v] <= j).collect())
            .collect()
    }

    pub fn violations_for(&self, rule: &str) -> impl Iterator<Item = &Violation> {
        let rule = rule.to_string();
        self.violations.iter().filter(move |v| v.rule == rule)
    }
}

pub fn od(seq: &ExtensionSequence, item: Item) -> Result<usize, ExtensionError> {
    seq.od(item)
}

#[derive(Clone, Debug)]
pub struct SequenceOptions {
    /// Base K4; the lexicographically least one when absent.
    pub seed: Option<[usize; 4]>,
    pub policy: Policy,
    /// Seed and weak-link preferences used by the bound's proof, plus the
    /// prefix inequality it derives from them.
    pub paper_proof_mode: bool,
}

impl Default for SequenceOptions {
    fn default() -> Self {
        SequenceOptions {
            seed: None,
            policy: Policy::Lex,
            paper_proof_mode: false,
        }
    }
}

/// `2-connected` test on the underlying graph.
pub fn is_two_connected(d: &Drawing) -> bool {
    Sub::new(d, &vec![true; d.n()]).two_connected()
}

/// `d − e` is still 2-connected.
pub fn is_removable(d: &Drawing, e: usize) -> Result<bool, ExtensionError> {
    if e >= d.m() {
        return Err(ExtensionError::Absent(format!("edge {e}")));
    }
    let g = Sub::new(d, &vec![true; d.n()]);
    if !g.two_connected() {
        return Err(ExtensionError::NotTwoConnected);
    }
    Ok(g.two_connected_without(Some(e)))
}

/// Two different K4s share three vertices.
fn k4s_sharing_three(k4s: &[[usize; 4]]) -> Vec<[usize; 4]> {
    k4s.iter()
        .copied()
        .filter(|f| {
            k4s.iter()
                .any(|g| g != f && f.iter().filter(|v| g.contains(v)).count() == 3)
        })
        .collect()
}

fn edge_in_k4_within(k4s: &[[usize; 4]], inside: &[bool], a: usize, b: usize) -> bool {
    k4s.iter()
        .any(|f| f.contains(&a) && f.contains(&b) && f.iter().all(|&v| inside[v]))
}

/// Build the sequence and fail on any violation.
pub fn build_sequence(d: &Drawing, opts: &SequenceOptions) -> Result<ExtensionSequence, ExtensionError> {
    let seq = trace_sequence(d, opts)?;
    if seq.violations.is_empty() {
        Ok(seq)
    } else {
        Err(ExtensionError::Violations(Box::new(seq)))
    }
}

/// Build the sequence, recording violations instead of failing on them.
/// Only broken preconditions are errors.
pub fn trace_sequence(d: &Drawing, opts: &SequenceOptions) -> Result<ExtensionSequence, ExtensionError> {
    if d.n() < 4 {
        return Err(ExtensionError::TooSmall(d.n()));
    }
    if !is_maximal(d) {
        return Err(ExtensionError::NotMaximal);
    }
    let k4s = k4_cover(d)?;
    let mut violations = Vec::new();
    let sharing = k4s_sharing_three(&k4s);
    let base = match opts.seed {
        Some(mut f) => {
            f.sort_unstable();
            if f.iter().any(|&v| v >= d.n()) || !is_k4(d, &f) {
                return Err(ExtensionError::NotK4(ids(d, &f)));
            }
            f
        }
        None if opts.paper_proof_mode && !sharing.is_empty() => sharing[0],
        None => k4s[0],
    };
    let mut rng = match opts.policy {
        Policy::Lex => None,
        Policy::Random(s) => Some(ChaCha8Rng::seed_from_u64(s)),
    };

    let mut inside = vec![false; d.n()];
    let mut vertex_od = vec![0; d.n()];
    for &v in &base {
        inside[v] = true;
    }
    let mut steps: Vec<Step> = Vec::new();
    while inside.iter().any(|b| !b) {
        let offered = candidates(d, &k4s, &inside);
        if offered.is_empty() {
            return Err(ExtensionError::Stuck);
        }
        let mut pool: Vec<&K4Link> = offered.iter().collect();
        let index = steps.len() + 1;
        if opts.paper_proof_mode && pool[0].kind == LinkKind::Weak {
            let g_edges: Vec<usize> = (0..d.m())
                .filter(|&e| {
                    let [a, b] = d.edge(e).ends;
                    inside[a] && inside[b]
                })
                .collect();
            let loose = g_edges.iter().any(|&e| {
                let [a, b] = d.edge(e).ends;
                !edge_in_k4_within(&k4s, &inside, a, b)
            });
            if loose {
                let good: Vec<&K4Link> = pool
                    .iter()
                    .copied()
                    .filter(|l| !edge_in_k4_within(&k4s, &inside, l.shared[0], l.shared[1]))
                    .collect();
                if good.is_empty() {
                    violations.push(Violation {
                        step: index,
                        rule: "weak-choice-condition",
                        detail: "no weak link through an edge outside every K4 of the current graph".into(),
                    });
                } else {
                    pool = good;
                }
            }
        }
        let link = match &mut rng {
            None => pool[0].clone(),
            Some(r) => (*pool.choose(r).unwrap()).clone(),
        };
        let added: Vec<usize> = link.f.iter().copied().filter(|&v| !inside[v]).collect();
        for &v in &added {
            inside[v] = true;
            vertex_od[v] = index;
        }
        steps.push(Step {
            index,
            link,
            added,
            delta_e: 0,
            nest_star: Vec::new(),
            nests_lost: Vec::new(),
            candidates: offered.len(),
            slack3: 0,
        });
    }
    let edge_od: Vec<usize> = d
        .edges()
        .iter()
        .map(|e| vertex_od[e.ends[0]].max(vertex_od[e.ends[1]]))
        .collect();
    let mut seq = ExtensionSequence {
        base,
        steps,
        stages: Vec::new(),
        vertex_od,
        edge_od,
        violations,
        paper_proof_mode: opts.paper_proof_mode,
    };
    audit(d, &k4s, &sharing, &mut seq)?;
    Ok(seq)
}

struct Level {
    inside: Vec<bool>,
    sub: Sub,
    removable: BTreeSet<usize>,
    cuts: BTreeSet<(usize, usize)>,
    nests: BTreeSet<NestKey>,
}

fn level(d: &Drawing, inside: Vec<bool>) -> Result<Level, ExtensionError> {
    let sub = Sub::new(d, &inside);
    let nests = if sub.n() == d.n() {
        find_nests(d).iter().map(|n| n.key(d)).collect()
    } else {
        let g = d.induced_subdrawing(&sub.verts)?;
        find_nests(&g).iter().map(|n| n.key(&g)).collect()
    };
    Ok(Level {
        removable: sub.removable(),
        cuts: sub.cut_pairs(),
        nests,
        inside,
        sub,
    })
}

fn audit(
    d: &Drawing,
    k4s: &[[usize; 4]],
    sharing: &[[usize; 4]],
    seq: &mut ExtensionSequence,
) -> Result<(), ExtensionError> {
    let n_steps = seq.len();
    let levels: Vec<Level> = (0..=n_steps)
        .map(|j| level(d, seq.vertex_od.iter().map(|&o| o <= j).collect()))
        .collect::<Result<_, _>>()?;
    let mut out: Vec<Violation> = Vec::new();
    let mut flag = |step: usize, rule: &'static str, detail: String| {
        out.push(Violation { step, rule, detail });
    };
    let eid = |e: usize| d.edge(e).id.clone();

    seq.stages = levels
        .iter()
        .map(|l| Stage {
            n: l.sub.n(),
            e: l.sub.edges.len(),
            nest: l.nests.len(),
        })
        .collect();

    if seq.paper_proof_mode && !sharing.is_empty() {
        let first_strong = seq.steps.first().is_some_and(|s| s.link.kind == LinkKind::Strong);
        if !first_strong {
            flag(0, "seed-condition", "two K4s share three vertices but the first link is not strong".into());
        }
    }
    if !levels[0].sub.two_connected() {
        flag(0, "two-connected", "G_0 is not 2-connected".into());
    }

    for i in 1..=n_steps {
        let (prev, cur) = (&levels[i - 1], &levels[i]);
        let link = seq.steps[i - 1].link.clone();
        let in_f = |v: usize| link.f.contains(&v);

        // Priority, re-derived from all K4s.
        let best = k4s
            .iter()
            .map(|f| shared(f, &prev.inside))
            .filter(|&k| k <= 3)
            .max()
            .unwrap_or(0);
        let ok = match link.kind {
            LinkKind::Strong => true,
            LinkKind::Weak => best <= 2,
            LinkKind::Micro => best <= 1,
        };
        if !ok {
            flag(i, "priority", format!("{} taken while a link sharing {best} vertices exists", link.kind));
        }

        if link.kind == LinkKind::Micro && link.extra_edges.is_empty() {
            flag(i, "micro-extra-edge", "micro step brings no edge outside its K4".into());
        }
        if link.is_simple() {
            let next = seq.steps.get(i).map(|s| s.link.kind);
            if !matches!(next, Some(LinkKind::Strong | LinkKind::Weak)) {
                flag(
                    i,
                    "simple-micro-successor",
                    format!(
                        "simple micro step followed by {}",
                        next.map_or("nothing".to_string(), |k| k.to_string())
                    ),
                );
            }
        }
        if !cur.sub.two_connected() {
            flag(i, "two-connected", format!("G_{i} is not 2-connected"));
        }

        let new_edges: Vec<usize> = cur
            .sub
            .edges
            .iter()
            .copied()
            .filter(|&e| {
                let [a, b] = d.edge(e).ends;
                !(prev.inside[a] && prev.inside[b])
            })
            .collect();
        for &e in &new_edges {
            let [a, b] = d.edge(e).ends;
            let removable = cur.removable.contains(&e);
            if in_f(a) && in_f(b) {
                if !removable {
                    flag(i, "link-edges-removable", format!("edge `{}` of the link is not removable", eid(e)));
                }
            } else if removable == (link.extra_edge() == Some(e)) {
                flag(
                    i,
                    "extra-edge-removability",
                    format!(
                        "edge `{}` is {}removable",
                        eid(e),
                        if removable { "" } else { "non-" }
                    ),
                );
            }
        }
        for &e in prev.removable.difference(&cur.removable) {
            flag(i, "removable-persists", format!("edge `{}` stops being removable", eid(e)));
        }
        for &(s, t) in cur.cuts.difference(&prev.cuts) {
            let old = usize::from(prev.inside[s]) + usize::from(prev.inside[t]);
            let ok = link.kind != LinkKind::Strong
                && (old == 2 || (link.kind == LinkKind::Micro && old == 1));
            if !ok {
                flag(
                    i,
                    "new-cut-pair",
                    format!("{{{}}} becomes a cut-set in a {} step", ids(d, &[s, t]), link.kind),
                );
            }
        }
        for &e in cur.sub.edges.iter().filter(|e| !cur.removable.contains(e)) {
            let o = seq.edge_od[e];
            let ok = o > 0 && seq.steps[o - 1].link.extra_edge() == Some(e);
            if !ok {
                flag(
                    i,
                    "non-removable-origin",
                    format!("non-removable `{}` is not the extra edge of a simple micro step", eid(e)),
                );
            }
        }
    }

    // A crossing pair fixes the order of removability.
    for c in d.crossings() {
        let [p, q] = c.edges;
        for (xx, e) in [(p, q), (q, p)] {
            for x in d.edge(xx).ends {
                let i = seq.vertex_od[x];
                let lo = seq.edge_od[e];
                for &f in &levels[i].sub.edges {
                    let of = seq.edge_od[f];
                    if lo < of && of < i && !levels[i].removable.contains(&f) {
                        flag(
                            i,
                            "crossing-order-removable",
                            format!(
                                "`{}` not removable though `{}` crosses `{}` earlier",
                                eid(f),
                                eid(xx),
                                eid(e)
                            ),
                        );
                    }
                }
            }
        }
    }

    // Configurations that cannot precede a strong step.
    for i in 0..n_steps {
        let step = &seq.steps[i];
        if step.link.kind != LinkKind::Strong {
            continue;
        }
        let x = step.added[0];
        let lv = &levels[i];
        let mut hit = BTreeSet::new();
        for &(c, g) in d.incidences(x) {
            let Some(f) = d.partner(g) else { continue };
            let [a, b] = d.edge(f).ends;
            if !lv.inside[c] || !lv.inside[a] || !lv.inside[b] || lv.removable.contains(&f) {
                continue;
            }
            hit.insert(f);
            let pair = |s: usize, t: usize| lv.cuts.contains(&(s.min(t), s.max(t)));
            if d.adjacent(a, c) && d.adjacent(b, c) && pair(a, c) && pair(b, c) {
                flag(
                    i + 1,
                    "strong-cut-triangle",
                    format!("triangle {{{}}} with both cuts before a strong step", ids(d, &[a, b, c])),
                );
            }
        }
        if hit.len() >= 2 {
            let es: Vec<String> = hit.iter().map(|&e| eid(e)).collect();
            flag(
                i + 1,
                "strong-crossed-non-removable-pair",
                format!("non-removable {} all crossed from the new vertex", es.join(", ")),
            );
        }
    }

    // Edge-count inequalities, in thirds.
    for i in 1..=n_steps {
        let (prev, cur) = (&levels[i - 1], &levels[i]);
        let de = cur.sub.edges.len() - prev.sub.edges.len();
        let dn = cur.sub.n() - prev.sub.n();
        let star: Vec<NestKey> = cur.nests.difference(&prev.nests).cloned().collect();
        let lost: Vec<NestKey> = prev.nests.difference(&cur.nests).cloned().collect();
        let ns = star.len() as i64;
        let de3 = 3 * de as i64;
        let step = &mut seq.steps[i - 1];
        step.delta_e = de;
        step.slack3 = de3 - 7 * dn as i64 - ns;
        match step.link.kind {
            LinkKind::Strong => {
                if de3 < 7 + ns {
                    flag(i, "strong-inequality", format!("Δe = {de}, |Nest*| = {ns}"));
                }
            }
            LinkKind::Weak => {
                if de3 < 14 + ns || ((de3 == 14 + ns) != (de == 5 && ns == 1)) {
                    flag(i, "weak-inequality", format!("Δe = {de}, |Nest*| = {ns}"));
                }
            }
            LinkKind::Micro => {
                if ns != 0 || de < 7 || ((de == 7) != step.link.is_simple()) {
                    flag(
                        i,
                        "micro-inequality",
                        format!("Δe = {de}, |Nest*| = {ns}, simple = {}", step.link.is_simple()),
                    );
                }
            }
        }
        step.nest_star = star;
        step.nests_lost = lost;
    }

    if seq.paper_proof_mode {
        let mut strict_from = None;
        for (j, s) in seq.stages.iter().enumerate() {
            let lhs = 3 * s.e as i64;
            let rhs = 7 * s.n as i64 + s.nest as i64;
            if lhs < rhs - 10 {
                flag(j, "prefix-bound", format!("3e = {lhs} < 7n + nest − 10 = {}", rhs - 10));
            }
            if strict_from.is_some() && lhs < rhs - 9 {
                flag(j, "prefix-bound", format!("3e = {lhs} < 7n + nest − 9 after a strict stage"));
            }
            if j > 0 && lhs > rhs - 10 && strict_from.is_none() {
                strict_from = Some(j);
            }
        }
    }
    seq.violations.extend(out);
    Ok(())
}
