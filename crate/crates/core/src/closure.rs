//! Closed label subsets, the vertex classes they induce, quotient digraphs,
//! and the subdigraphs spanned by arc types.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::digraph::{Digraph, DigraphError, TwoWayLabel};
use crate::scheme::SchemeTensor;

/// A set of labels closed under the rule: for all members `i`, `j`, every
/// label in the product of the converse of `i` with `j` is a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSubset {
    labels: BTreeSet<TwoWayLabel>,
}

impl ClosedSubset {
    pub fn labels(&self) -> &BTreeSet<TwoWayLabel> {
        &self.labels
    }

    pub fn contains(&self, label: TwoWayLabel) -> bool {
        self.labels.contains(&label)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Least closed subset containing the seed, grown with a worklist: each
/// newly admitted label is multiplied (converse on the left) against every
/// current member, in both orders. Terminates after at most rank rounds.
///
/// Seed labels must belong to the tensor.
pub fn closure(t: &SchemeTensor, seed: &BTreeSet<TwoWayLabel>) -> ClosedSubset {
    let r = t.rank();
    let mut in_set = vec![false; r];
    let mut members: Vec<usize> = Vec::new();
    let mut pending: VecDeque<usize> = VecDeque::new();

    pending.push_back(
        t.index_of(TwoWayLabel::IDENTITY)
            .expect("identity label always present"),
    );
    for &label in seed {
        pending.push_back(t.index_of(label).expect("seed label present in tensor"));
    }

    let product_into = |a: usize, b: usize, out: &mut VecDeque<usize>, in_set: &[bool]| {
        let ac = t.converse_index(a);
        for (h, &present) in in_set.iter().enumerate() {
            if !present && t.value(h, ac, b) != 0 {
                out.push_back(h);
            }
        }
    };

    while let Some(a) = pending.pop_front() {
        if in_set[a] {
            continue;
        }
        in_set[a] = true;
        members.push(a);
        for &b in &members {
            product_into(a, b, &mut pending, &in_set);
            product_into(b, a, &mut pending, &in_set);
        }
    }

    let labels: BTreeSet<TwoWayLabel> = members.iter().map(|&i| t.labels()[i]).collect();
    debug_assert!(
        labels.iter().all(|l| labels.contains(&l.converse())),
        "closed subsets are conversion-closed"
    );
    ClosedSubset { labels }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("label classes of the subset do not partition the vertex set")]
    NotAPartition,
    #[error("class blocks have unequal sizes {0} and {1}")]
    UnequalBlockSizes(usize, usize),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

/// The vertex classes `F(x)` of a closed subset, ordered by minimum member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    pub blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl ClassPartition {
    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// Groups vertices into the classes `F(x) = { y : label(x, y) in F }` and
/// verifies they form an equivalence with equal block sizes. Failure means
/// the subset was not closed or the digraph not weakly distance-regular.
pub fn class_partition(g: &Digraph, f: &ClosedSubset) -> Result<ClassPartition, PartitionError> {
    let dm = g.distance_matrix()?;
    let n = g.order();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| f.contains(dm.label(x, y))).collect())
        .collect();

    let mut blocks = Vec::new();
    let mut block_of = vec![usize::MAX; n];
    for x in 0..n {
        let row = &rows[x];
        if row.first() != Some(&x) && block_of[x] == usize::MAX {
            return Err(PartitionError::NotAPartition);
        }
        for &y in row {
            if rows[y] != *row {
                return Err(PartitionError::NotAPartition);
            }
        }
        if row.first() == Some(&x) {
            let id = blocks.len();
            for &y in row {
                if block_of[y] != usize::MAX {
                    return Err(PartitionError::NotAPartition);
                }
                block_of[y] = id;
            }
            blocks.push(row.clone());
        }
    }
    if block_of.contains(&usize::MAX) {
        return Err(PartitionError::NotAPartition);
    }
    let size = blocks[0].len();
    for block in &blocks {
        if block.len() != size {
            return Err(PartitionError::UnequalBlockSizes(size, block.len()));
        }
    }
    Ok(ClassPartition { blocks, block_of })
}

/// The quotient digraph on the blocks: an arc between distinct blocks
/// whenever some original arc crosses them. Arcs inside a block are dropped
/// so the quotient stays simple.
pub fn quotient(g: &Digraph, part: &ClassPartition) -> Digraph {
    let b = part.block_count();
    let mut arcs = BTreeSet::new();
    for (u, v) in g.arcs() {
        let (bu, bv) = (part.block_of(u), part.block_of(v));
        if bu != bv {
            arcs.insert((bu, bv));
        }
    }
    Digraph::from_arc_list(b, arcs).expect("block count is positive and arcs are loop-free")
}

/// A subdigraph re-indexed to dense vertices, with the map back to the
/// original vertex numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSubdigraph {
    pub digraph: Digraph,
    /// `vertices[new] = old`.
    pub vertices: Vec<usize>,
}

/// The subdigraph on the class of `x` under the closure of the arc types
/// `(1, q-1)`, `q` in `i_set`, whose arcs are exactly the pairs carrying one
/// of those types. For an empty `i_set` this is the single vertex `x`.
pub fn delta_subdigraph(
    g: &Digraph,
    t: &SchemeTensor,
    i_set: &BTreeSet<usize>,
    x: usize,
) -> Result<DeltaSubdigraph, PartitionError> {
    if i_set.is_empty() {
        return Ok(DeltaSubdigraph {
            digraph: Digraph::from_arc_list(1, []).expect("single vertex"),
            vertices: vec![x],
        });
    }
    let dm = g.distance_matrix()?;
    let seed: BTreeSet<TwoWayLabel> = i_set
        .iter()
        .map(|&q| TwoWayLabel::of_arc_type(q))
        .collect();
    let f = closure(t, &seed);
    let vertices: Vec<usize> = (0..g.order())
        .filter(|&y| f.contains(dm.label(x, y)))
        .collect();
    let arc_types: BTreeSet<TwoWayLabel> = seed;
    let mut arcs = Vec::new();
    for (a, &old_a) in vertices.iter().enumerate() {
        for (b, &old_b) in vertices.iter().enumerate() {
            if a != b && arc_types.contains(&dm.label(old_a, old_b)) {
                arcs.push((a, b));
            }
        }
    }
    let digraph = Digraph::from_arc_list(vertices.len(), arcs).expect("dense re-indexing");
    Ok(DeltaSubdigraph { digraph, vertices })
}
