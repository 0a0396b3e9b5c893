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
use oneplane::drawing::parse_drawing;
use oneplane::maximality::is_maximal;
use oneplane::oracle::{
    brute_maximality, canonical_code, canonical_drawing, check_properties, enumerate_maximal,
    m_of_n, random_tree, EnumOptions, OracleError, Pruning,
};

fn codes(n: usize, opts: &EnumOptions) -> Vec<Vec<u32>> {
    enumerate_maximal(n, opts).unwrap().drawings.into_iter().map(|m| m.code).collect()
}

#[test]
fn small_minima() {
    let o = EnumOptions::default();
    assert_eq!(m_of_n(4, &o).unwrap(), 6);
    assert_eq!(m_of_n(5, &o).unwrap(), 9);
    assert_eq!(m_of_n(6, &o).unwrap(), 11);
}

#[test]
fn order_five() {
    let e = enumerate_maximal(5, &EnumOptions::default()).unwrap();
    assert_eq!(e.graph_classes(), 2);
    assert_eq!(e.drawings.len(), 2);
    let sizes: Vec<(usize, usize)> = e.drawings.iter().map(|m| (m.edges(), m.crossings())).collect();
    assert!(sizes.contains(&(9, 2)) && sizes.contains(&(10, 1)), "{sizes:?}");
    assert_eq!(canonical_code(&fixture("h5")), e.drawings.iter().find(|m| m.edges() == 9).unwrap().code);
    assert_eq!(canonical_code(&fixture("k5")), e.drawings.iter().find(|m| m.edges() == 10).unwrap().code);
}

#[test]
fn lower_bound_holds_exhaustively() {
    for n in [5, 6] {
        for m in enumerate_maximal(n, &EnumOptions::default()).unwrap().drawings {
            assert!(m.edges() >= (7 * n).div_ceil(3) - 3);
        }
    }
}

#[test]
fn range_is_guarded() {
    let o = EnumOptions::default();
    assert!(matches!(enumerate_maximal(3, &o), Err(OracleError::OutOfRange(3))));
    assert!(matches!(enumerate_maximal(7, &o), Err(OracleError::OutOfRange(7))));
    let long = EnumOptions {
        long_run: true,
        ..Default::default()
    };
    assert!(matches!(enumerate_maximal(8, &long), Err(OracleError::OutOfRange(8))));
}

#[test]
fn worker_count_does_not_matter() {
    let one = EnumOptions {
        jobs: Some(1),
        ..Default::default()
    };
    let four = EnumOptions {
        jobs: Some(4),
        ..Default::default()
    };
    assert_eq!(codes(6, &one), codes(6, &four));
}

#[test]
fn pruning_changes_nothing() {
    let off = EnumOptions {
        pruning: Pruning {
            k4_crossings: false,
            min_degree_two: false,
        },
        ..Default::default()
    };
    for n in [4, 5, 6] {
        assert_eq!(codes(n, &off), codes(n, &EnumOptions::default()), "n={n}");
    }
}

#[test]
fn checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp.json");
    let opts = EnumOptions {
        checkpoint: Some(path.clone()),
        ..Default::default()
    };
    let first = codes(6, &opts);
    assert!(path.exists());
    // A second run finds everything done and reads it back.
    assert_eq!(codes(6, &opts), first);
    assert_eq!(first, codes(6, &EnumOptions::default()));
    // The file belongs to order 6 with default pruning.
    assert!(matches!(
        enumerate_maximal(5, &opts),
        Err(OracleError::Checkpoint { .. })
    ));
}

#[test]
fn export_layout() {
    let dir = tempfile::tempdir().unwrap();
    let e = enumerate_maximal(5, &EnumOptions::default()).unwrap();
    e.export(dir.path()).unwrap();
    let index = std::fs::read_to_string(dir.path().join("index.tsv")).unwrap();
    let rows: Vec<&str> = index.lines().collect();
    assert_eq!(rows[0], "file\tn\te\tcrossings");
    assert_eq!(rows.len(), 3);
    for row in &rows[1..] {
        let cols: Vec<&str> = row.split('\t').collect();
        let d = parse_drawing(&std::fs::read_to_string(dir.path().join(cols[0])).unwrap()).unwrap();
        assert_eq!(cols[1..], [d.n().to_string(), d.m().to_string(), d.crossing_count().to_string()]);
        assert!(is_maximal(&d));
    }
}

#[test]
fn brute_agrees_on_small_enumerations() {
    for n in [4, 5] {
        for m in enumerate_maximal(n, &EnumOptions::default()).unwrap().drawings {
            assert!(brute_maximality(&m.drawing));
            assert!(is_maximal(&m.drawing));
            // Any edge removed can be drawn back.
            for e in 0..m.drawing.m() {
                let g = m.drawing.delete_edge(e).unwrap();
                assert_eq!(brute_maximality(&g), is_maximal(&g));
                assert!(!is_maximal(&g));
            }
        }
    }
}

#[test]
fn brute_on_named_drawings() {
    assert!(!brute_maximality(&fixture("k4_pair")));
    assert!(brute_maximality(&parse_drawing(K4_PLANAR).unwrap()));
    assert!(brute_maximality(&fixture("k4_crossing")));
}

#[test]
fn battery_on_enumerations() {
    for n in 4..=6 {
        for m in enumerate_maximal(n, &EnumOptions::default()).unwrap().drawings {
            let fails = check_properties(&m.drawing);
            assert!(fails.is_empty(), "{fails:?}");
        }
    }
}

#[test]
fn canonical_forms_ignore_names_and_reflection() {
    let d = fixture("h7");
    let renamed = d.relabel(|id| format!("z{id}")).unwrap();
    assert_eq!(canonical_code(&d), canonical_code(&renamed));
    let mut raw = d.to_raw();
    for r in raw.vrot.iter_mut().chain(raw.xrot.iter_mut()) {
        r.reverse();
    }
    let mirror = raw.build().unwrap();
    assert_eq!(canonical_code(&d), canonical_code(&mirror));
    assert_eq!(canonical_drawing(&d).1, canonical_drawing(&mirror).1);
    assert_ne!(canonical_code(&d), canonical_code(&fixture("h6")));
}

#[test]
fn random_trees_are_seeded() {
    let a = random_tree(9, 5);
    assert_eq!((a.n(), a.m()), (9, 8));
    assert_eq!(a, random_tree(9, 5));
}
