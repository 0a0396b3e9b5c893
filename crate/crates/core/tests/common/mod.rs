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

#![allow(dead_code)]

use oneplane::drawing::{parse_drawing, Drawing};

pub fn fixture(name: &str) -> Drawing {
    let path = format!("{}/fixtures/{name}.1pl", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_drawing(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub const MAXIMAL_FIXTURES: [&str; 9] = [
    "h5",
    "h6",
    "h7",
    "hermit_gadget",
    "nest_outer",
    "k4_planar",
    "k4_crossing",
    "k5",
    "h5_pair",
];

pub const K4_PLANAR: &str = "v a\nv b\nv c\nv d\ne ab a b\ne ac a c\ne ad a d\ne bc b c\ne bd b d\ne cd c d\n\
rot a ab ac ad\nrot b ab bd bc\nrot c ac bc cd\nrot d ad cd bd\n";

pub fn vid(d: &Drawing, id: &str) -> usize {
    d.vertex_index(id).unwrap_or_else(|| panic!("no vertex {id}"))
}

pub fn eid(d: &Drawing, id: &str) -> usize {
    d.edge_index(id).unwrap_or_else(|| panic!("no edge {id}"))
}
