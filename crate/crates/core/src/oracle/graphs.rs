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

//! Simple graphs on at most seven vertices, up to isomorphism.
//!
//! A graph is a bitmask over vertex pairs. Classes are grown one edge at a
//! time from the empty graph; each class is stored by its least relabelled
//! mask, minimised over the permutations that respect the degree order.

use std::collections::BTreeSet;

pub const MAX_ORDER: usize = 7;

/// Bit of pair `{i, j}`, `i != j`.
pub fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    // Row-major over the upper triangle.
    let before = a * n - a * (a + 1) / 2;
    1 << (before + b - a - 1)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

pub fn degrees(n: usize, mask: u32) -> Vec<usize> {
    let mut deg = vec![0; n];
    for (a, b) in pairs(n) {
        if mask & pair_bit(n, a, b) != 0 {
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    deg
}

pub fn is_connected(n: usize, mask: u32) -> bool {
    let mut seen = 1u32;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if w != v && seen & (1 << w) == 0 && mask & pair_bit(n, v, w) != 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen.count_ones() as usize == n
}

fn relabel(n: usize, mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0;
    for (a, b) in pairs(n) {
        if mask & pair_bit(n, a, b) != 0 {
            out |= pair_bit(n, perm[a], perm[b]);
        }
    }
    out
}

/// Degree classes of `order` (vertices sorted by decreasing degree).
fn degree_blocks(n: usize, mask: u32) -> (Vec<usize>, Vec<std::ops::Range<usize>>) {
    let deg = degrees(n, mask);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && deg[order[j]] == deg[order[i]] {
            j += 1;
        }
        blocks.push(i..j);
        i = j;
    }
    (order, blocks)
}

/// All automorphisms, as vertex maps.
pub fn automorphisms(n: usize, mask: u32) -> Vec<Vec<usize>> {
    let (mut order, blocks) = degree_blocks(n, mask);
    let base = order.clone();
    let mut out = Vec::new();
    permute_blocks(&blocks, 0, &mut order, &mut |ord| {
        // Send base[i] to ord[i]; degrees match by construction.
        let mut perm = vec![0; n];
        for (i, &v) in base.iter().enumerate() {
            perm[v] = ord[i];
        }
        if relabel(n, mask, &perm) == mask {
            out.push(perm);
        }
    });
    out
}

/// Least mask over degree-respecting relabellings: new labels go to
/// vertices in decreasing degree order, ties are tried both ways.
pub fn canonical(n: usize, mask: u32) -> u32 {
    let (mut order, blocks) = degree_blocks(n, mask);
    let mut best = u32::MAX;
    let mut perm = vec![0; n];
    permute_blocks(&blocks, 0, &mut order, &mut |ord| {
        for (label, &v) in ord.iter().enumerate() {
            perm[v] = label;
        }
        best = best.min(relabel(n, mask, &perm));
    });
    best
}

fn permute_blocks(
    blocks: &[std::ops::Range<usize>],
    k: usize,
    order: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let Some(r) = blocks.get(k) else {
        visit(order);
        return;
    };
    heap_permute(r.start, r.end - r.start, order, &mut |ord| {
        let mut o = ord.to_vec();
        permute_blocks(blocks, k + 1, &mut o, visit);
    });
}

/// Heap's algorithm over `order[start..start + len]`.
fn heap_permute(start: usize, len: usize, order: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    if len <= 1 {
        visit(order);
        return;
    }
    for i in 0..len {
        heap_permute(start, len - 1, order, visit);
        let j = if len.is_multiple_of(2) { i } else { 0 };
        if i + 1 < len {
            order.swap(start + j, start + len - 1);
        }
    }
}

/// Connected classes on `n` vertices with `lo ..= hi` edges, by
/// increasing edge count then mask.
pub fn connected_classes(n: usize, lo: usize, hi: usize) -> Vec<u32> {
    assert!((1..=MAX_ORDER).contains(&n));
    let all = pairs(n);
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    let mut out = Vec::new();
    for e in 0..=hi.min(all.len()) {
        if e >= lo {
            let mut keep: Vec<u32> = level.iter().copied().filter(|&m| is_connected(n, m)).collect();
            keep.sort();
            out.extend(keep);
        }
        let mut next = BTreeSet::new();
        for &m in &level {
            for &(a, b) in &all {
                let bit = pair_bit(n, a, b);
                if m & bit == 0 {
                    next.insert(canonical(n, m | bit));
                }
            }
        }
        level = next;
    }
    out
}
