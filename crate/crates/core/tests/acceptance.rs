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

//! One line per acceptance criterion. Run with
//! `cargo test -p oneplane --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{fixture, MAXIMAL_FIXTURES};
use oneplane::drawing::{serialize_drawing, Drawing};
use oneplane::extension::{build_sequence, verify_bound, LinkKind, NodeKind, SequenceOptions};
use oneplane::family::{build_hn, size_formula};
use oneplane::maximality::{insert_edge, insertable_pairs, is_maximal};
use oneplane::oracle::{
    brute_maximality, canonical_code, check_properties, corpus_order, enumerate_maximal,
    seeded_saturation, EnumOptions, Enumeration,
};
use oneplane::structure::{edge_in_k4, find_k4_subgraphs};

// Pinned limits.
const FAMILY: std::ops::RangeInclusive<usize> = 5..=50;
const FAMILY_TIME: Duration = Duration::from_secs(5);
const BATTERY_FAMILY: std::ops::RangeInclusive<usize> = 5..=30;
const EXPECTED_M: [(usize, usize); 3] = [(4, 6), (5, 9), (6, 11)];
const GRAPHS_AT_FIVE: usize = 2;
const ENUM_TIME: [(usize, Duration); 2] = [(5, Duration::from_secs(60)), (6, Duration::from_secs(3600))];
const SATURATIONS: u64 = 1000;
const SATURATION_MAX_N: usize = 9;

type Outcome = Result<String, String>;

struct Corpus {
    enums: Vec<Enumeration>,
    saturations: Vec<(Drawing, Vec<Drawing>)>,
}

impl Corpus {
    fn enumerated(&self, lo: usize) -> impl Iterator<Item = &Drawing> {
        self.enums
            .iter()
            .filter(move |e| e.n >= lo)
            .flat_map(|e| e.drawings.iter().map(|m| &m.drawing))
    }

    fn maximal(&self) -> Vec<Drawing> {
        let mut all: Vec<Drawing> = MAXIMAL_FIXTURES.iter().map(|f| fixture(f)).collect();
        all.extend(BATTERY_FAMILY.map(|n| build_hn(n).unwrap()));
        all.extend(self.enumerated(4).cloned());
        all.extend(self.saturations.iter().map(|s| s.0.clone()));
        all
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn family() -> Outcome {
    let t = Instant::now();
    for n in FAMILY {
        let d = build_hn(n).map_err(|e| format!("H_{n}: {e}"))?;
        ensure(d.n() == n, || format!("H_{n} has order {}", d.n()))?;
        let want = (7 * n).div_ceil(3) - 3;
        ensure(size_formula(n) == want, || format!("formula at {n}"))?;
        ensure(d.m() == want, || format!("H_{n} has {} edges, want {want}", d.m()))?;
        ensure(is_maximal(&d), || format!("H_{n} is not maximal"))?;
    }
    let took = t.elapsed();
    ensure(took < FAMILY_TIME, || format!("took {took:?}"))?;
    Ok(format!("H_5..H_50 exact and maximal in {took:.2?}"))
}

fn minima(corpus: &Corpus, times: &[(usize, Duration)]) -> Outcome {
    for e in &corpus.enums {
        let want = EXPECTED_M.iter().find(|p| p.0 == e.n).unwrap().1;
        ensure(e.min_edges() == Some(want), || format!("m({}) = {:?}, want {want}", e.n, e.min_edges()))?;
    }
    for &(n, limit) in &ENUM_TIME {
        let took = times.iter().find(|t| t.0 == n).unwrap().1;
        ensure(took < limit, || format!("n={n} took {took:?}"))?;
    }
    let five = corpus.enums.iter().find(|e| e.n == 5).unwrap();
    ensure(five.graph_classes() == GRAPHS_AT_FIVE, || {
        format!("{} graph classes at n=5", five.graph_classes())
    })?;
    Ok(format!(
        "m(4,5,6) = 6, 9, 11; n=5 graph classes {} ({} at the minimum)",
        five.graph_classes(),
        five.graph_classes_with(9)
    ))
}

fn certificate(d: &Drawing, what: &str) -> Result<i64, String> {
    let c = verify_bound(d).map_err(|e| format!("{what}: {e}"))?;
    c.recheck().map_err(|e| format!("{what}: {e:?}"))?;
    ensure(c.verdict, || format!("{what}: verdict false"))?;
    for leaf in c.root.leaves() {
        if let NodeKind::Leaf { slack3, .. } = leaf.kind {
            ensure(slack3 >= 0, || format!("{what}: leaf slack {slack3}"))?;
        }
    }
    Ok(c.slack)
}

fn bounds(corpus: &Corpus) -> Outcome {
    let mut count = 0;
    for name in MAXIMAL_FIXTURES {
        let d = fixture(name);
        if d.n() >= 5 {
            certificate(&d, name)?;
            count += 1;
        }
    }
    for d in corpus.enumerated(5) {
        certificate(d, &format!("enumerated n={}", d.n()))?;
        count += 1;
    }
    for n in FAMILY {
        let slack = certificate(&build_hn(n).unwrap(), &format!("H_{n}"))?;
        ensure(n % 3 != 0 || slack == 0, || format!("H_{n} slack {slack}"))?;
        count += 1;
    }
    Ok(format!("{count} certificates, H_n tight at 3 | n"))
}

fn battery(corpus: &Corpus) -> Outcome {
    let all = corpus.maximal();
    for d in &all {
        let fails = check_properties(d);
        ensure(fails.is_empty(), || {
            format!("n={}: {}", d.n(), fails.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; "))
        })?;
    }
    Ok(format!("{} drawings green", all.len()))
}

/// No vertex of `G[set]` is a cut vertex, checked by deletion.
fn two_connected(d: &Drawing, set: &[usize]) -> bool {
    let reach = |skip: Option<usize>| {
        let alive: Vec<usize> = set.iter().copied().filter(|&v| Some(v) != skip).collect();
        let mut seen = vec![alive[0]];
        let mut i = 0;
        while i < seen.len() {
            let v = seen[i];
            i += 1;
            for w in d.neighbors(v) {
                if alive.contains(&w) && !seen.contains(&w) {
                    seen.push(w);
                }
            }
        }
        seen.len() == alive.len()
    };
    set.len() >= 3 && reach(None) && set.iter().all(|&v| reach(Some(v)))
}

fn induced_edges(d: &Drawing, set: &[usize]) -> usize {
    d.edges().iter().filter(|e| e.ends.iter().all(|v| set.contains(v))).count()
}

fn sequences(corpus: &Corpus) -> Outcome {
    let (mut count, mut steps) = (0, [0usize; 3]);
    for d in corpus.maximal() {
        let covered = d.edges().iter().all(|e| edge_in_k4(&d, e.ends[0], e.ends[1]));
        if !covered || d.n() < 5 {
            continue;
        }
        count += 1;
        let k4s = find_k4_subgraphs(&d);
        for paper_proof_mode in [false, true] {
            let opts = SequenceOptions {
                paper_proof_mode,
                ..Default::default()
            };
            let seq = build_sequence(&d, &opts).map_err(|e| match e {
                oneplane::extension::ExtensionError::Violations(s) => {
                    s.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
                }
                e => e.to_string(),
            })?;
            let sets = seq.vertex_sets();
            ensure(sets.last().unwrap().len() == d.n(), || "sequence stops short".into())?;
            for (i, step) in seq.steps.iter().enumerate() {
                let (before, after) = (&sets[i], &sets[i + 1]);
                ensure(two_connected(&d, after), || format!("G_{} not 2-connected", i + 1))?;
                // SWM*: no K4 hanging off G_{i} more tightly than the chosen one.
                let best = k4s
                    .iter()
                    .map(|f| f.iter().filter(|v| before.contains(v)).count())
                    .filter(|&k| k < 4)
                    .max()
                    .unwrap();
                let want = match best {
                    3 => LinkKind::Strong,
                    2 => LinkKind::Weak,
                    _ => LinkKind::Micro,
                };
                ensure(step.link.kind == want, || format!("step {} is {} with {want} available", i + 1, step.link.kind))?;
                let de = induced_edges(&d, after) - induced_edges(&d, before);
                ensure(de == step.delta_e, || format!("step {} Δe", i + 1))?;
                let ns = step.nest_star.len();
                let ok = match step.link.kind {
                    LinkKind::Strong => 3 * de >= 7 + ns,
                    LinkKind::Weak => 3 * de >= 14 + ns,
                    LinkKind::Micro => de >= 7 && ns == 0,
                };
                ensure(ok, || format!("step {} {}: Δe={de} |Nest*|={ns}", i + 1, step.link.kind))?;
                if !paper_proof_mode {
                    steps[step.link.kind as usize] += 1;
                }
            }
        }
    }
    Ok(format!(
        "{count} K4-covered drawings, both modes; steps strong/weak/micro = {}/{}/{}",
        steps[0], steps[1], steps[2]
    ))
}

fn agreement(corpus: &Corpus) -> Outcome {
    let (mut checked, mut round_trips) = (0, 0);
    let mut check = |d: &Drawing| {
        checked += 1;
        ensure(brute_maximality(d) == is_maximal(d), || format!("disagreement at n={}", d.n()))
    };
    for e in corpus.enums.iter().filter(|e| e.n <= 5) {
        for m in &e.drawings {
            check(&m.drawing)?;
            for k in 0..m.drawing.m() {
                check(&m.drawing.delete_edge(k).unwrap())?;
            }
        }
    }
    for (last, trail) in &corpus.saturations {
        check(last)?;
        for d in trail {
            check(d)?;
            let ws = insertable_pairs(d);
            for w in [ws.first(), ws.last()].into_iter().flatten() {
                let g = insert_edge(d, w).map_err(|e| e.to_string())?;
                let back = g.delete_edge(g.edge_between(w.u, w.v).unwrap()).unwrap();
                ensure(canonical_code(&back) == canonical_code(d), || "round trip changed the drawing".into())?;
                ensure(
                    serialize_drawing(&back.with_outer(None).unwrap()) == serialize_drawing(&d.with_outer(None).unwrap()),
                    || "round trip changed the serialization".into(),
                )?;
                round_trips += 1;
            }
        }
    }
    Ok(format!("{checked} drawings agree, {round_trips} insert/delete round trips"))
}

fn main() -> ExitCode {
    let mut times = Vec::new();
    let enums = (4..=6)
        .map(|n| {
            let t = Instant::now();
            let e = enumerate_maximal(n, &EnumOptions::default()).expect("enumeration");
            times.push((n, t.elapsed()));
            e
        })
        .collect();
    let saturations = (0..SATURATIONS)
        .map(|seed| seeded_saturation(corpus_order(seed, SATURATION_MAX_N), seed))
        .collect();
    let corpus = Corpus { enums, saturations };

    let results = [
        family(),
        minima(&corpus, &times),
        bounds(&corpus),
        battery(&corpus),
        sequences(&corpus),
        agreement(&corpus),
    ];
    let mut failed = false;
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("criterion {}: PASS  {msg}", i + 1),
            Err(msg) => {
                failed = true;
                println!("criterion {}: FAIL  {msg}", i + 1);
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
