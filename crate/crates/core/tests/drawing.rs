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
use oneplane::drawing::{compute_faces, parse_drawing, serialize_drawing, DrawingError, Node};

#[test]
fn k4_planar_counts() {
    let d = parse_drawing(K4_PLANAR).unwrap();
    assert_eq!(d.planarization_size(), (4, 6, 4));
    assert!(d.faces().faces.iter().all(|f| f.vertices.len() == 3));
}

#[test]
fn k4_crossing_counts() {
    let d = fixture("k4_crossing");
    assert_eq!(d.planarization_size(), (5, 8, 5));
    // Four triangles at the crossing, plus the clean 4-cycle a.b.c.d which
    // is the one true face.
    let true_faces: Vec<_> = d
        .faces()
        .faces
        .iter()
        .filter(|f| f.walk.iter().all(|&x| d.is_clean(d.dart_edge(x))))
        .collect();
    assert_eq!(true_faces.len(), 1);
    assert_eq!(true_faces[0].walk.len(), 4);
}

#[test]
fn h5_sizes_and_split() {
    let d = fixture("h5");
    assert_eq!((d.n(), d.m(), d.crossing_count()), (5, 9, 2));
    let (clean, crossing) = d.classify_edges();
    assert_eq!((clean.len(), crossing.len()), (5, 4));
    // Independent count: an edge is crossing iff a crossing record names it.
    let named: Vec<usize> = d.crossings().iter().flat_map(|c| c.edges).collect();
    for e in 0..d.m() {
        assert_eq!(named.contains(&e), crossing.contains(&e));
    }
}

#[test]
fn h5_true_faces_match_independent_walk() {
    let d = fixture("h5");
    let clean: Vec<bool> = (0..d.m()).map(|e| d.is_clean(e)).collect();
    // Walk faces with a hand-rolled successor and compare the true/false split.
    let mut seen = vec![false; d.dart_count()];
    let mut mine = Vec::new();
    for s in 0..d.dart_count() {
        if seen[s] {
            continue;
        }
        let mut x = s;
        let mut all_clean = true;
        while !seen[x] {
            seen[x] = true;
            all_clean &= clean[d.dart_edge(x)];
            let back = x ^ 1;
            let r = d.rotation(d.tail(back));
            let p = r.iter().position(|&y| y == back).unwrap();
            x = r[(p + 1) % r.len()];
        }
        mine.push(all_clean);
    }
    let theirs: Vec<bool> = d
        .faces()
        .faces
        .iter()
        .map(|f| f.walk.iter().all(|&x| clean[d.dart_edge(x)]))
        .collect();
    mine.sort();
    let mut theirs_sorted = theirs.clone();
    theirs_sorted.sort();
    assert_eq!(mine, theirs_sorted);
    assert_eq!(theirs.iter().filter(|&&t| t).count(), 0, "H_5 has no true face");
}

#[test]
fn alternation_violation_rejected() {
    let text = "v a\nv b\nv c\nv d\ne ac a c\ne bd b d\ne ab a b\ne bc b c\ne cd c d\ne da d a\nx x ac bd\n\
rot a ab ac.0 da\nrot b ab bc bd.0\nrot c ac.1 bc cd\nrot d bd.1 cd da\nrot x ac.0 ac.1 bd.0 bd.1\n";
    let err = parse_drawing(text).unwrap_err();
    assert!(err.to_string().contains("crossing alternation violated"), "{err}");
}

#[test]
fn parse_errors_have_positions() {
    let err = parse_drawing("v a\nv b\ne ab a zz\n").unwrap_err();
    let msg = err.to_string();
    assert!(msg.starts_with("line 3, column"), "{msg}");
}

#[test]
fn structural_errors() {
    let loopy = "v a\ne aa a a\nrot a aa aa\n";
    assert!(matches!(parse_drawing(loopy), Err(DrawingError::At { .. }) | Err(DrawingError::SelfLoop(_))));
    let disconnected = "v a\nv b\n";
    assert!(parse_drawing(disconnected).is_err());
    // A rotation that puts K4 on the torus.
    let torus = "v a\nv b\nv c\nv d\ne ab a b\ne ac a c\ne ad a d\ne bc b c\ne bd b d\ne cd c d\n\
rot a ab ac ad\nrot b ab bc bd\nrot c ac bc cd\nrot d ad bd cd\n";
    let err = parse_drawing(torus).unwrap_err();
    assert!(err.to_string().contains("non-spherical"), "{err}");
}

#[test]
fn round_trip_is_canonical() {
    for name in ["h5", "h6", "h7", "k5", "h5_pair", "k4_pair", "nest_outer"] {
        let d = fixture(name);
        let text = serialize_drawing(&d);
        let again = parse_drawing(&text).unwrap();
        assert_eq!(serialize_drawing(&again), text, "{name}");
    }
}

#[test]
fn outer_line_survives() {
    let d = fixture("h5");
    assert_eq!(d.outer_face(), Some(0));
    assert!(serialize_drawing(&d).lines().any(|l| l == "outer 0"));
    let none = d.with_outer(None).unwrap();
    assert!(!serialize_drawing(&none).contains("outer"));
}

#[test]
fn rotation_offsets_do_not_matter() {
    let a = parse_drawing(K4_PLANAR).unwrap();
    let shifted = K4_PLANAR
        .replace("rot a ab ac ad", "rot a ac ad ab")
        .replace("rot d ad cd bd", "rot d bd ad cd");
    let b = parse_drawing(&shifted).unwrap();
    assert_eq!(serialize_drawing(&a), serialize_drawing(&b));
}

#[test]
fn delete_crossed_edge_cleans_partner() {
    let d = fixture("k4_crossing");
    let g = d.delete_edge_id("ac").unwrap();
    assert_eq!(g.crossing_count(), 0);
    assert!(g.is_clean(eid(&g, "bd")));
}

#[test]
fn deleting_the_hermit_leaves_a_two_vertex_face() {
    let d = fixture("hermit_gadget");
    let (h, u, p) = (vid(&d, "h"), vid(&d, "u"), vid(&d, "p"));
    assert_eq!(d.degree(h), 2);
    for e in [d.edge_between(h, u).unwrap(), d.edge_between(h, p).unwrap(), d.edge_between(u, p).unwrap()] {
        assert!(d.is_clean(e));
    }
    let g = d.delete_vertex_id("h").unwrap();
    let g = g.delete_edge(g.edge_between(vid(&g, "u"), vid(&g, "p")).unwrap()).unwrap();
    let two: Vec<_> = g
        .faces()
        .faces
        .iter()
        .filter(|f| {
            let mut vs = f.vertices.clone();
            vs.sort();
            vs.dedup();
            vs == {
                let mut w = vec![vid(&g, "u"), vid(&g, "p")];
                w.sort();
                w
            }
        })
        .collect();
    assert_eq!(two.len(), 1);
    assert_eq!(two[0].walk.len(), 4, "bounded by four half-edges");
}

#[test]
fn delete_vertex_leaves_no_dangling_segments() {
    let d = fixture("k5");
    let t = d.delete_vertex_id("t").unwrap();
    assert_eq!((t.n(), t.m(), t.crossing_count()), (4, 6, 1));
    let k = t.delete_vertex_id("a").unwrap();
    assert_eq!((k.n(), k.m(), k.crossing_count()), (3, 3, 0));
    for x in 0..k.dart_count() {
        assert!(matches!(k.tail(x), Node::Vertex(_)));
    }
}

#[test]
fn induced_subdrawings() {
    let d = fixture("h5");
    let all: Vec<usize> = (0..d.n()).collect();
    assert_eq!(serialize_drawing(&d.induced_subdrawing(&all).unwrap()), serialize_drawing(&d));
    // a0 is the crossing of u-q and w0-p; those four vertices induce a K4.
    let s: Vec<usize> = ["p", "q", "u", "w0"].iter().map(|v| vid(&d, v)).collect();
    let k = d.induced_subdrawing(&s).unwrap();
    assert_eq!((k.n(), k.m(), k.crossing_count()), (4, 6, 1));
    let one = d.induced_subdrawing(&[vid(&d, "u")]).unwrap();
    assert_eq!((one.n(), one.m()), (1, 0));
    assert!(d.induced_subdrawing(&[]).is_err());
}

#[test]
fn faces_recompute_identically() {
    let d = fixture("h7");
    assert_eq!(compute_faces(&d).faces, d.faces().faces);
}
