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

use common::{fixture, K4_PLANAR};
use oneplane::drawing::{parse_drawing, serialize_drawing};
use oneplane::family::{
    base_fixture, build_hn, build_hn_traced, find_omega, phi, size_formula, FamilyError,
};
use oneplane::maximality::is_maximal;
use oneplane::oracle::canonical_code;

#[test]
fn bases() {
    let h5 = base_fixture(5).unwrap();
    assert_eq!((h5.n(), h5.m(), h5.crossing_count()), (5, 9, 2));
    let h6 = base_fixture(6).unwrap();
    assert_eq!((h6.n(), h6.m()), (6, 11));
    let skel: Vec<usize> = (0..h6.n()).filter(|&v| h6.degree(v) != 2).collect();
    assert_eq!(skel.len(), 5, "H_5 plus one hermit");
    assert_eq!(
        canonical_code(&h6.induced_subdrawing(&skel).unwrap()),
        canonical_code(&h5)
    );
    let h7 = base_fixture(7).unwrap();
    assert_eq!((h7.n(), h7.m()), (7, 14));
    for d in [&h5, &h6, &h7] {
        assert!(is_maximal(d));
    }
    assert!(matches!(base_fixture(8), Err(FamilyError::NoBase(8))));
    // The bundled bases are the committed fixtures.
    assert_eq!(serialize_drawing(&h5), serialize_drawing(&fixture("h5")));
}

#[test]
fn omega_structures() {
    let h5 = base_fixture(5).unwrap();
    let s = find_omega(&h5);
    assert_eq!(s.len(), 1);
    assert_eq!(s[0].describe(&h5), "<(u, w0, w1), (a0, a1)>");
    assert!(find_omega(&parse_drawing(K4_PLANAR).unwrap()).is_empty());

    let (h8, next) = phi(&h5, &s[0]).unwrap();
    let found = find_omega(&h8);
    assert!(!found.is_empty());
    assert!(found.contains(&next) || found.contains(&next.mirrored()));
    // The new structure uses a vertex φ added.
    let fresh: Vec<usize> = (0..h8.n()).filter(|&v| h5.vertex_index(h8.vertex_id(v)).is_none()).collect();
    assert!([next.u, next.w0, next.w1].iter().any(|v| fresh.contains(v)));
}

#[test]
fn phi_sizes() {
    let h5 = base_fixture(5).unwrap();
    let (h8, s8) = phi(&h5, &find_omega(&h5)[0]).unwrap();
    assert_eq!((h8.n(), h8.m()), (8, 16));
    let (h11, _) = phi(&h8, &s8).unwrap();
    assert_eq!((h11.n(), h11.m()), (11, 23));
    assert!(is_maximal(&h11));
    let k4 = parse_drawing(K4_PLANAR).unwrap();
    assert!(find_omega(&k4).is_empty());
    let fake = find_omega(&h5)[0].clone();
    assert!(phi(&k4, &fake).is_err());
}

#[test]
fn family_members() {
    assert_eq!(serialize_drawing(&build_hn(5).unwrap()), serialize_drawing(&base_fixture(5).unwrap()));
    let (h10, trace) = build_hn_traced(10).unwrap();
    assert_eq!(trace.len(), 1, "H_7 plus one φ");
    assert_eq!(h10.m(), 21);
    assert_eq!(build_hn(23).unwrap().m(), 51);
    assert!(matches!(build_hn(4), Err(FamilyError::TooSmall(4))));
}

#[test]
fn whole_range() {
    for n in 5..=50 {
        let d = build_hn(n).unwrap();
        assert_eq!(d.n(), n);
        assert_eq!(d.m(), size_formula(n));
        assert_eq!(d.m(), (7 * n).div_ceil(3) - 3);
        assert!(is_maximal(&d), "n={n}");
        assert_eq!(find_omega(&d).len(), 1, "n={n}");
    }
}
