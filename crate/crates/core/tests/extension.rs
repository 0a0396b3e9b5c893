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

mod common;

use common::{eid, fixture, vid, K4_PLANAR};
use oneplane::drawing::{parse_drawing, Drawing};
use oneplane::extension::{
    build_sequence, classify_link, is_removable, od, swm_star_links, trace_sequence, verify_bound,
    BoundError, ExtensionError, Item, LinkKind, NodeKind, SequenceOptions,
};
use oneplane::family::build_hn;
use oneplane::structure::skeleton;

fn set(d: &Drawing, ids: &[&str]) -> Vec<usize> {
    let mut v: Vec<usize> = ids.iter().map(|i| vid(d, i)).collect();
    v.sort();
    v
}

fn quad(d: &Drawing, ids: &[&str]) -> [usize; 4] {
    set(d, ids).try_into().unwrap()
}

#[test]
fn link_kinds() {
    let d = fixture("h5");
    let f = quad(&d, &["p", "u", "w0", "w1"]);
    let strong = classify_link(&d, &set(&d, &["p", "q", "u", "w0"]), f).unwrap();
    assert_eq!(strong.kind, LinkKind::Strong);
    let three = classify_link(&d, &set(&d, &["p", "u", "q"]), quad(&d, &["p", "q", "u", "w0"]));
    assert_eq!(three.unwrap().kind, LinkKind::Strong);
    let weak = classify_link(&d, &set(&d, &["p", "u"]), f).unwrap();
    assert_eq!(weak.kind, LinkKind::Weak);

    // Second copy of H_5 hanging off p, reached from the first copy.
    let g = fixture("h5_pair");
    let first = set(&g, &["p", "q", "u", "w0", "w1"]);
    let micro = classify_link(&g, &first, quad(&g, &["p", "q2", "u2", "w02"])).unwrap();
    assert_eq!(micro.kind, LinkKind::Micro);
    assert!(micro.is_simple());
    assert_eq!(micro.extra_edge(), Some(eid(&g, "u-u2")));

    assert!(matches!(
        classify_link(&d, &set(&d, &["q"]), f),
        Err(ExtensionError::Intersection(0))
    ));
    assert!(matches!(
        classify_link(&d, &first[..2], quad(&d, &["p", "q", "w0", "w1"])),
        Err(ExtensionError::NotK4(_))
    ));
}

#[test]
fn h5_base_offers_one_strong_link() {
    let d = fixture("h5");
    let links = swm_star_links(&d, &set(&d, &["p", "q", "u", "w0"])).unwrap();
    assert_eq!(links.len(), 1);
    assert_eq!(links[0].kind, LinkKind::Strong);
    // w1-p crosses u-w0, so p completes the link.
    assert_eq!(links[0].f, quad(&d, &["w1", "u", "w0", "p"]));
    let all: Vec<usize> = (0..d.n()).collect();
    assert!(matches!(swm_star_links(&d, &all), Err(ExtensionError::NotProper)));
}

#[test]
fn h5_sequence() {
    let d = fixture("h5");
    let s = build_sequence(&d, &SequenceOptions::default()).unwrap();
    assert_eq!(s.len(), 1);
    let st = &s.steps[0];
    assert_eq!(st.link.kind, LinkKind::Strong);
    assert_eq!(st.delta_e, 3);
    // 3 ≥ 7/3 + |Nest*|/3, in thirds.
    assert!(9 >= 7 + st.nest_star.len() as i64);
    assert_eq!(st.slack3, 9 - 7 - st.nest_star.len() as i64);
}

#[test]
fn complete_k4_has_empty_sequence() {
    let d = parse_drawing(K4_PLANAR).unwrap();
    let s = build_sequence(
        &d,
        &SequenceOptions {
            seed: Some([0, 1, 2, 3]),
            ..Default::default()
        },
    )
    .unwrap();
    assert!(s.is_empty());
}

#[test]
fn h8_size_accounting() {
    let h8 = build_hn(8).unwrap();
    assert!(matches!(
        build_sequence(&h8, &SequenceOptions::default()),
        Err(ExtensionError::EdgeOutsideK4(_))
    ));
    let sk = skeleton(&h8).unwrap();
    let s = build_sequence(&sk.skeleton, &SequenceOptions::default()).unwrap();
    let sum: usize = s.steps.iter().map(|st| st.delta_e).sum();
    // Each hermit brings two edges of its own.
    assert_eq!(sum + 2 * sk.hermits.len(), h8.m() - 6);
    assert_eq!(h8.m() - 6, 10);
}

#[test]
fn removability() {
    let k4 = parse_drawing(K4_PLANAR).unwrap();
    for e in 0..k4.m() {
        assert!(is_removable(&k4, e).unwrap());
    }
    // The lone edge joining the two copies carries the 2-connectivity.
    let g = fixture("h5_pair");
    assert!(!is_removable(&g, eid(&g, "u-u2")).unwrap());
    // Edges a strong step brings in are removable afterwards.
    let d = fixture("h5");
    for e in ["w1-p", "w1-u", "w0-w1"] {
        assert!(is_removable(&d, eid(&d, e)).unwrap(), "{e}");
    }
}

#[test]
fn od_rules() {
    for n in [5, 7, 10, 13] {
        let d = skeleton(&build_hn(n).unwrap()).unwrap().skeleton;
        let s = build_sequence(&d, &SequenceOptions::default()).unwrap();
        for &v in &s.base {
            assert_eq!(od(&s, Item::Vertex(v)).unwrap(), 0);
        }
        for (e, edge) in d.edges().iter().enumerate() {
            let [a, b] = edge.ends;
            let want = od(&s, Item::Vertex(a)).unwrap().max(od(&s, Item::Vertex(b)).unwrap());
            assert_eq!(od(&s, Item::Edge(e)).unwrap(), want);
        }
        if let Some(last) = s.steps.last() {
            for &v in &last.added {
                assert_eq!(od(&s, Item::Vertex(v)).unwrap(), s.len());
            }
        }
    }
}

#[test]
fn paper_proof_mode_on_family() {
    for n in 5..=20 {
        let d = skeleton(&build_hn(n).unwrap()).unwrap().skeleton;
        let opts = SequenceOptions {
            paper_proof_mode: true,
            ..Default::default()
        };
        let s = trace_sequence(&d, &opts).unwrap();
        assert!(s.violations.is_empty(), "n={n}: {:?}", s.violations);
    }
}

#[test]
fn bound_on_family() {
    for n in 5..=50 {
        let d = build_hn(n).unwrap();
        let c = verify_bound(&d).unwrap();
        assert!(c.verdict, "n={n}");
        assert_eq!(c.slack, 0, "n={n}");
        // Real slack e − (7n/3 − 3), in thirds: 0 when 3 | n, else ≤ 2.
        let thirds = 3 * c.e as i64 - (7 * n as i64 - 9);
        assert!((0..=2).contains(&thirds));
        if n % 3 == 0 {
            assert_eq!(thirds, 0);
        }
        for leaf in c.root.leaves() {
            if let NodeKind::Leaf { slack3, .. } = leaf.kind {
                assert!(slack3 >= 0);
            }
        }
    }
}

#[test]
fn bound_table_and_preconditions() {
    for (n, floor) in [(5, 9), (6, 11), (7, 14), (9, 18), (12, 25)] {
        let c = verify_bound(&build_hn(n).unwrap()).unwrap();
        assert_eq!(c.bound, floor, "n={n}");
    }
    let k4 = parse_drawing(K4_PLANAR).unwrap();
    assert!(matches!(verify_bound(&k4), Err(BoundError::TooSmall(4))));
    assert!(matches!(verify_bound(&fixture("c5")), Err(BoundError::NotMaximal)));
}

#[test]
fn bound_splits_at_exceptional_edges() {
    let d = fixture("h5_pair");
    let c = verify_bound(&d).unwrap();
    assert!(c.verdict);
    assert!(matches!(c.root.kind, NodeKind::Split { .. }));
    assert_eq!(c.root.leaves().len(), 2);
    assert!(c.recheck().is_ok());
    let text = c.render();
    assert!(text.starts_with("n=9 e=19 bound=18 slack=1 verdict=true\n"), "{text}");
}
