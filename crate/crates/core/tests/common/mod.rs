//! Shared oracles for the integration suites: brute-force distances,
//! a naive regularity check, permutation-search isomorphism, and random
//! strongly connected digraph generation. Everything here is independent of
//! the library's internal algorithms.
#![allow(dead_code)]

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::prelude::*;
use wdr_core::{Digraph, TwoWayLabel};

/// Minimum length over all simple directed paths, by exhaustive search.
pub fn brute_force_distance(g: &Digraph, x: usize, y: usize) -> Option<u32> {
    fn dfs(
        g: &Digraph,
        cur: usize,
        target: usize,
        visited: &mut [bool],
        depth: u32,
        best: &mut Option<u32>,
    ) {
        if cur == target {
            if best.is_none_or(|b| depth < b) {
                *best = Some(depth);
            }
            return;
        }
        if best.is_some_and(|b| depth >= b) {
            return;
        }
        for w in g.out_neighbors(cur) {
            if !visited[w] {
                visited[w] = true;
                dfs(g, w, target, visited, depth + 1, best);
                visited[w] = false;
            }
        }
    }
    let mut visited = vec![false; g.order()];
    visited[x] = true;
    let mut best = None;
    dfs(g, x, y, &mut visited, 0, &mut best);
    best
}

pub type NaiveTensor = BTreeMap<(TwoWayLabel, TwoWayLabel, TwoWayLabel), u32>;

/// Naive regularity decision: collect the full count vector of every ordered
/// pair into a map keyed by its label and demand agreement.
pub fn naive_wdr_check(g: &Digraph) -> Option<NaiveTensor> {
    let dm = g.distance_matrix().ok()?;
    let n = g.order();
    let mut by_label: BTreeMap<TwoWayLabel, BTreeMap<(TwoWayLabel, TwoWayLabel), u32>> =
        BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let h = dm.label(x, y);
            let mut counts: BTreeMap<(TwoWayLabel, TwoWayLabel), u32> = BTreeMap::new();
            for z in 0..n {
                *counts.entry((dm.label(x, z), dm.label(z, y))).or_insert(0) += 1;
            }
            match by_label.get(&h) {
                None => {
                    by_label.insert(h, counts);
                }
                Some(existing) => {
                    if *existing != counts {
                        return None;
                    }
                }
            }
        }
    }
    let mut flat = BTreeMap::new();
    for (h, counts) in by_label {
        for ((i, j), c) in counts {
            flat.insert((h, i, j), c);
        }
    }
    Some(flat)
}

/// Exhaustive permutation search for an arc-preserving bijection.
pub fn brute_force_isomorphic(g1: &Digraph, g2: &Digraph) -> bool {
    if g1.order() != g2.order() || g1.arc_count() != g2.arc_count() {
        return false;
    }
    let n = g1.order();
    (0..n).permutations(n).any(|perm| {
        (0..n).all(|u| (0..n).all(|v| g1.has_arc(u, v) == g2.has_arc(perm[u], perm[v])))
    })
}

pub fn relabel(g: &Digraph, perm: &[usize]) -> Digraph {
    Digraph::from_arc_list(g.order(), g.arcs().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// A random strongly connected digraph on `n` vertices: a Hamiltonian cycle
/// on a shuffled vertex order plus a random sprinkle of extra arcs.
pub fn random_strongly_connected(rng: &mut impl Rng, n: usize) -> Digraph {
    let order = random_permutation(rng, n);
    let mut arcs: Vec<(usize, usize)> = (0..n)
        .map(|i| (order[i], order[(i + 1) % n]))
        .collect();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(0.25) {
                arcs.push((u, v));
            }
        }
    }
    let g = Digraph::from_arc_list(n, arcs).unwrap();
    assert!(g.is_strongly_connected());
    g
}
