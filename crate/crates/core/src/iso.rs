//! Digraph isomorphism at small order via canonical labeling, and
//! identification of the six classified families.
//!
//! The canonical form is the lexicographically least adjacency bit string
//! over the orderings explored by iterated partition refinement followed by
//! backtracking over the first non-singleton cell. The per-vertex refinement
//! invariant is the multiset of two-way distances to all other vertices,
//! which subsumes in- and out-degrees.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cayley::{build_family, FamilyId, FamilyVariant};
use crate::digraph::{Digraph, UNREACHABLE};

/// Default cap on the order accepted by the canonical-form search; large
/// enough for family VI up to q = 9.
pub const DEFAULT_ORDER_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("digraph order {0} exceeds the canonical-form order limit {1}")]
    OrderLimit(usize, usize),
}

/// A total invariant: equal forms exactly when the digraphs are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    order: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }
}

struct Searcher<'a> {
    g: &'a Digraph,
    n: usize,
    codes: Vec<u32>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Digraph) -> Self {
        let n = g.order();
        let table = g.distance_table();
        let clamp = |d: u32| if d == UNREACHABLE { n as u32 } else { d };
        let mut codes = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                codes[x * n + y] =
                    clamp(table.get(x, y)) * (n as u32 + 1) + clamp(table.get(y, x));
            }
        }
        Searcher {
            g,
            n,
            codes,
            best: None,
        }
    }

    fn run(mut self) -> (Vec<u64>, Vec<usize>) {
        let mut cell_of = vec![0usize; self.n];
        let cells = self.initial_partition(&mut cell_of);
        self.search(cells, cell_of);
        self.best.expect("search visits at least one ordering")
    }

    fn initial_partition(&self, cell_of: &mut [usize]) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            let mut key: Vec<u32> = (0..self.n)
                .filter(|&w| w != v)
                .map(|w| self.codes[v * self.n + w])
                .collect();
            key.sort_unstable();
            groups.entry(key).or_default().push(v);
        }
        let cells: Vec<Vec<usize>> = groups.into_values().collect();
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        cells
    }

    fn refine(&self, cells: &mut Vec<Vec<usize>>, cell_of: &mut [usize]) {
        loop {
            let before = cells.len();
            let sigs: Vec<Vec<(u32, u32)>> = (0..self.n)
                .map(|v| {
                    let mut sig: Vec<(u32, u32)> = (0..self.n)
                        .filter(|&w| w != v)
                        .map(|w| (cell_of[w] as u32, self.codes[v * self.n + w]))
                        .collect();
                    sig.sort_unstable();
                    sig
                })
                .collect();
            let mut next = Vec::with_capacity(before);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: BTreeMap<&Vec<(u32, u32)>, Vec<usize>> = BTreeMap::new();
                for &v in cell {
                    groups.entry(&sigs[v]).or_default().push(v);
                }
                next.extend(groups.into_values());
            }
            let stable = next.len() == before;
            *cells = next;
            for (ci, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = ci;
                }
            }
            if stable {
                return;
            }
        }
    }

    fn search(&mut self, mut cells: Vec<Vec<usize>>, mut cell_of: Vec<usize>) {
        self.refine(&mut cells, &mut cell_of);
        match cells.iter().position(|c| c.len() > 1) {
            None => {
                let ordering: Vec<usize> = cells.iter().map(|c| c[0]).collect();
                let bits = self.pack(&ordering);
                match &mut self.best {
                    None => self.best = Some((bits, ordering)),
                    Some((b, o)) => {
                        if bits < *b {
                            *b = bits;
                            *o = ordering;
                        }
                    }
                }
            }
            Some(target) => {
                let members = cells[target].clone();
                // Branch once per twin class: swapping two vertices with
                // identical adjacency outside the pair is an automorphism, so
                // their branches yield the same candidate strings. This keeps
                // coclique fibres from doubling the tree at every level.
                let mut branch_reps: Vec<usize> = Vec::new();
                'member: for &v in &members {
                    for &r in &branch_reps {
                        if self.twins(r, v) {
                            continue 'member;
                        }
                    }
                    branch_reps.push(v);
                }
                for &v in &branch_reps {
                    let mut child = cells.clone();
                    let rest: Vec<usize> =
                        members.iter().copied().filter(|&w| w != v).collect();
                    child[target] = vec![v];
                    child.insert(target + 1, rest);
                    let mut child_cell_of = cell_of.clone();
                    for (ci, cell) in child.iter().enumerate() {
                        for &w in cell {
                            child_cell_of[w] = ci;
                        }
                    }
                    self.search(child, child_cell_of);
                }
            }
        }
    }

    /// Whether exchanging `u` and `v` while fixing every other vertex is an
    /// automorphism.
    fn twins(&self, u: usize, v: usize) -> bool {
        if self.g.has_arc(u, v) != self.g.has_arc(v, u) {
            return false;
        }
        (0..self.n).filter(|&w| w != u && w != v).all(|w| {
            self.g.has_arc(u, w) == self.g.has_arc(v, w)
                && self.g.has_arc(w, u) == self.g.has_arc(w, v)
        })
    }

    /// Adjacency bits of the relabelled digraph, most significant bit first,
    /// so that word-wise comparison is bit-string lexicographic comparison.
    fn pack(&self, ordering: &[usize]) -> Vec<u64> {
        let n = self.n;
        let mut bits = vec![0u64; (n * n).div_ceil(64)];
        for (i, &u) in ordering.iter().enumerate() {
            for (j, &v) in ordering.iter().enumerate() {
                if self.g.has_arc(u, v) {
                    let idx = i * n + j;
                    bits[idx / 64] |= 1 << (63 - (idx % 64));
                }
            }
        }
        bits
    }
}

/// Deterministic and invariant under any relabeling of `g`.
pub fn canonical_form(g: &Digraph, limit: usize) -> Result<CanonicalForm, IsoError> {
    Ok(canonical_ordering(g, limit)?.0)
}

/// The canonical form together with the ordering that realizes it:
/// `ordering[i]` is the original vertex placed at canonical position `i`.
pub fn canonical_ordering(
    g: &Digraph,
    limit: usize,
) -> Result<(CanonicalForm, Vec<usize>), IsoError> {
    let n = g.order();
    if n > limit {
        return Err(IsoError::OrderLimit(n, limit));
    }
    let (bits, ordering) = Searcher::new(g).run();
    Ok((CanonicalForm { order: n, bits }, ordering))
}

pub fn are_isomorphic(g1: &Digraph, g2: &Digraph, limit: usize) -> Result<bool, IsoError> {
    Ok(isomorphism(g1, g2, limit)?.is_some())
}

/// An arc-preserving bijection from `g1` to `g2` when one exists.
pub fn isomorphism(
    g1: &Digraph,
    g2: &Digraph,
    limit: usize,
) -> Result<Option<Vec<usize>>, IsoError> {
    if g1.order() != g2.order() || g1.arc_count() != g2.arc_count() {
        let worst = g1.order().max(g2.order());
        if worst > limit {
            return Err(IsoError::OrderLimit(worst, limit));
        }
        return Ok(None);
    }
    let (f1, ord1) = canonical_ordering(g1, limit)?;
    let (f2, ord2) = canonical_ordering(g2, limit)?;
    if f1 != f2 {
        return Ok(None);
    }
    let n = g1.order();
    let mut pos1 = vec![0usize; n];
    for (i, &v) in ord1.iter().enumerate() {
        pos1[v] = i;
    }
    let mapping: Vec<usize> = (0..n).map(|v| ord2[pos1[v]]).collect();
    debug_assert!(
        (0..n).all(|u| (0..n).all(|v| g1.has_arc(u, v) == g2.has_arc(mapping[u], mapping[v]))),
        "equal canonical forms yield an arc-preserving bijection"
    );
    Ok(Some(mapping))
}

/// Matches `g` against the six families by solving each variant's order
/// equation for the parameter and testing isomorphism, in variant order.
/// Returns `None` when no family fits or the order exceeds `limit`.
pub fn identify_family(g: &Digraph, limit: usize) -> Option<FamilyId> {
    let n = g.order();
    let own = canonical_form(g, limit).ok()?;
    for variant in FamilyVariant::ALL {
        let param = match variant {
            FamilyVariant::I => Some(n),
            FamilyVariant::II => n.is_multiple_of(2).then_some(n / 2),
            FamilyVariant::III => n.is_multiple_of(2).then_some(n / 2 + 1),
            FamilyVariant::IV | FamilyVariant::V => n.is_multiple_of(4).then_some(n / 4 + 1),
            FamilyVariant::VI => n.is_multiple_of(8).then_some(n / 8 + 1),
        };
        let Some(param) = param else { continue };
        if param < variant.min_parameter() {
            continue;
        }
        let id = FamilyId::new(variant, param);
        let candidate = build_family(id).expect("parameter validated against minimum");
        debug_assert_eq!(candidate.order(), n);
        if candidate.arc_count() != g.arc_count() {
            continue;
        }
        if canonical_form(&candidate, limit).expect("candidate has the same order") == own {
            return Some(id);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::CayleySpec;

    fn cay(n: usize, gens: &[usize]) -> Digraph {
        CayleySpec::cyclic(n, gens.iter().copied())
            .unwrap()
            .digraph()
            .unwrap()
    }

    fn relabel(g: &Digraph, perm: &[usize]) -> Digraph {
        Digraph::from_arc_list(g.order(), g.arcs().map(|(u, v)| (perm[u], perm[v]))).unwrap()
    }

    #[test]
    fn relabelings_share_a_form() {
        let g = Digraph::from_arc_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let h = relabel(&g, &[2, 0, 1]);
        assert_eq!(
            canonical_form(&g, DEFAULT_ORDER_LIMIT).unwrap(),
            canonical_form(&h, DEFAULT_ORDER_LIMIT).unwrap()
        );
    }

    #[test]
    fn different_orders_differ() {
        let c3 = cay(3, &[1]);
        let c4 = cay(4, &[1]);
        assert_ne!(
            canonical_form(&c3, DEFAULT_ORDER_LIMIT).unwrap(),
            canonical_form(&c4, DEFAULT_ORDER_LIMIT).unwrap()
        );
        assert!(!are_isomorphic(&c3, &c4, DEFAULT_ORDER_LIMIT).unwrap());
    }

    #[test]
    fn negated_connection_set_is_isomorphic() {
        // x -> -x maps steps {1, 2} onto steps {3, 2}.
        let g1 = cay(4, &[1, 2]);
        let g2 = cay(4, &[2, 3]);
        assert!(are_isomorphic(&g1, &g2, DEFAULT_ORDER_LIMIT).unwrap());
        let mapping = isomorphism(&g1, &g2, DEFAULT_ORDER_LIMIT).unwrap().unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(g1.has_arc(u, v), g2.has_arc(mapping[u], mapping[v]));
            }
        }
    }

    #[test]
    fn order_limit_is_enforced() {
        let g = cay(8, &[1]);
        assert_eq!(
            canonical_form(&g, 4),
            Err(IsoError::OrderLimit(8, 4))
        );
    }

    #[test]
    fn identifies_small_families() {
        assert_eq!(
            identify_family(&cay(5, &[1]), DEFAULT_ORDER_LIMIT),
            Some(FamilyId::new(FamilyVariant::I, 5))
        );
        assert_eq!(
            identify_family(&cay(4, &[1, 2]), DEFAULT_ORDER_LIMIT),
            Some(FamilyId::new(FamilyVariant::III, 3))
        );
        assert_eq!(identify_family(&cay(5, &[1, 2]), DEFAULT_ORDER_LIMIT), None);
    }

    #[test]
    fn variants_of_equal_order_are_distinct() {
        // Wherever two variants produce the same order and arc count, the
        // digraphs must still be non-isomorphic for first-hit matching to be
        // sound.
        let mut by_shape: std::collections::BTreeMap<(usize, usize), Vec<(FamilyId, Digraph)>> =
            std::collections::BTreeMap::new();
        for variant in FamilyVariant::ALL {
            for param in variant.min_parameter()..=7 {
                let id = FamilyId::new(variant, param);
                let g = build_family(id).unwrap();
                by_shape
                    .entry((g.order(), g.arc_count()))
                    .or_default()
                    .push((id, g));
            }
        }
        for group in by_shape.values() {
            for a in 0..group.len() {
                for b in a + 1..group.len() {
                    assert!(
                        !are_isomorphic(&group[a].1, &group[b].1, DEFAULT_ORDER_LIMIT).unwrap(),
                        "{} and {} coincide",
                        group[a].0,
                        group[b].0
                    );
                }
            }
        }
    }
}
