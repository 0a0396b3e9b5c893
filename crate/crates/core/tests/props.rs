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

//! Invariants over random trees and their random saturations.

use oneplane::drawing::{serialize_drawing, Drawing};
use oneplane::maximality::{insert_edge, insertable_pairs, is_maximal, saturate_traced, Policy};
use oneplane::oracle::{brute_maximality, canonical_code, random_tree};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A drawing somewhere along a random saturation, plus the final one.
fn sample(n: usize, seed: u64, pick: usize) -> (Drawing, Drawing) {
    let (last, trail) = saturate_traced(&random_tree(n, seed), &Policy::Random(seed ^ 0x9e37));
    let mid = if trail.is_empty() {
        last.clone()
    } else {
        trail[pick % trail.len()].clone()
    };
    (mid, last)
}

fn planarization_ok(d: &Drawing) -> Result<(), TestCaseError> {
    let (nodes, arcs, faces) = d.planarization_size();
    prop_assert_eq!(nodes + faces, arcs + 2);
    prop_assert_eq!(faces, d.faces().len());
    let walked: usize = d.faces().faces.iter().map(|f| f.len()).sum();
    prop_assert_eq!(walked, 2 * d.segments().len());
    let (clean, crossed) = d.classify_edges();
    prop_assert_eq!(crossed.len(), 2 * d.crossing_count());
    prop_assert_eq!(clean.len() + crossed.len(), d.m());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn euler_and_face_walks(n in 4usize..=9, seed: u64, pick: usize) {
        let (mid, last) = sample(n, seed, pick);
        planarization_ok(&mid)?;
        planarization_ok(&last)?;
    }

    #[test]
    fn saturation_ends_maximal(n in 4usize..=9, seed: u64, pick: usize) {
        let (mid, last) = sample(n, seed, pick);
        prop_assert!(is_maximal(&last));
        prop_assert!(brute_maximality(&last));
        prop_assert_eq!(brute_maximality(&mid), is_maximal(&mid));
    }

    #[test]
    fn insert_then_delete(n in 4usize..=9, seed: u64, pick: usize, k: usize) {
        let (mid, _) = sample(n, seed, pick);
        let ws = insertable_pairs(&mid);
        prop_assume!(!ws.is_empty());
        let w = &ws[k % ws.len()];
        let g = insert_edge(&mid, w).unwrap();
        prop_assert_eq!(g.m(), mid.m() + 1);
        let back = g.delete_edge(g.edge_between(w.u, w.v).unwrap()).unwrap();
        prop_assert_eq!(canonical_code(&back), canonical_code(&mid));
        prop_assert_eq!(
            serialize_drawing(&back.with_outer(None).unwrap()),
            serialize_drawing(&mid.with_outer(None).unwrap())
        );
    }

    #[test]
    fn rotation_offsets_do_not_matter(n in 4usize..=9, seed: u64, pick: usize, shift: u64) {
        let (mid, _) = sample(n, seed, pick);
        let mut raw = mid.to_raw();
        let mut rng = ChaCha8Rng::seed_from_u64(shift);
        for r in raw.vrot.iter_mut().chain(raw.xrot.iter_mut()) {
            if !r.is_empty() {
                let by = (shift as usize) % r.len();
                r.rotate_left(by);
            }
        }
        let rebuilt = raw.build().unwrap();
        prop_assert_eq!(serialize_drawing(&rebuilt), serialize_drawing(&mid));
        let mut order: Vec<usize> = (0..mid.n()).collect();
        order.shuffle(&mut rng);
        let renamed = mid.relabel(|id| {
            match mid.vertex_index(id) {
                Some(v) => format!("q{}", order[v]),
                None => format!("{id}'"),
            }
        }).unwrap();
        prop_assert_eq!(canonical_code(&renamed), canonical_code(&mid));
    }
}
