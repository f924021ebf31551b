//! The attached scheme of a digraph: the partition of ordered vertex pairs by
//! two-way distance, the intersection-number tensor, and the predicates
//! derived from it (weak distance-regularity, commutativity, thickness,
//! thinness, relation products).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::digraph::{Digraph, DigraphError, TwoWayLabel};

/// Ordered vertex pairs grouped by two-way distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationPartition {
    pub classes: BTreeMap<TwoWayLabel, Vec<(usize, usize)>>,
}

/// Grouping of all `n^2` ordered pairs by two-way distance, pairs in
/// row-major order within each class.
pub fn relation_partition(g: &Digraph) -> Result<RelationPartition, DigraphError> {
    let dm = g.distance_matrix()?;
    let n = g.order();
    let mut classes: BTreeMap<TwoWayLabel, Vec<(usize, usize)>> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            classes.entry(dm.label(x, y)).or_default().push((x, y));
        }
    }
    Ok(RelationPartition { classes })
}

/// Counterexample to weak distance-regularity: two pairs with the same
/// two-way distance `h` but different numbers of intermediates `z` with
/// prescribed labels `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdrFailure {
    pub h: TwoWayLabel,
    pub i: TwoWayLabel,
    pub j: TwoWayLabel,
    pub first_pair: (usize, usize),
    pub first_count: u32,
    pub second_pair: (usize, usize),
    pub second_count: u32,
}

impl fmt::Display for WdrFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairs {:?} and {:?} both have two-way distance {} but {} and {} intermediates for (i, j) = ({}, {})",
            self.first_pair, self.second_pair, self.h, self.first_count, self.second_count,
            self.i, self.j
        )
    }
}

/// Violated structural identity of an intersection-number tensor.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeIdentityError {
    #[error("row sum over j of p[{h}][{i}][j] is {got}, expected valency {expected}")]
    RowSum {
        h: TwoWayLabel,
        i: TwoWayLabel,
        expected: u32,
        got: u64,
    },
    #[error("p[(0,0)][{i}][{j}] = {got}, expected {expected}")]
    IdentityRelation {
        i: TwoWayLabel,
        j: TwoWayLabel,
        expected: u32,
        got: u32,
    },
    #[error("p[{h}*][{j}*][{i}*] = {converse} but p[{h}][{i}][{j}] = {direct}")]
    TransposeSymmetry {
        h: TwoWayLabel,
        i: TwoWayLabel,
        j: TwoWayLabel,
        direct: u32,
        converse: u32,
    },
}

/// The full intersection-number table `p[h][i][j]` of a weakly
/// distance-regular digraph, with labels in sorted order and valencies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeTensor {
    order: usize,
    labels: Vec<TwoWayLabel>,
    converse: Vec<usize>,
    valencies: Vec<u32>,
    values: Vec<u32>,
}

impl SchemeTensor {
    /// Number of vertices of the underlying digraph.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of relations (labels) of the scheme.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Labels in sorted lexicographic order.
    pub fn labels(&self) -> &[TwoWayLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: TwoWayLabel) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Index of the converse label `(b, a)` of label `i`.
    pub fn converse_index(&self, i: usize) -> usize {
        self.converse[i]
    }

    pub fn valency(&self, i: usize) -> u32 {
        self.valencies[i]
    }

    pub fn valency_of(&self, label: TwoWayLabel) -> Option<u32> {
        self.index_of(label).map(|i| self.valencies[i])
    }

    pub fn value(&self, h: usize, i: usize, j: usize) -> u32 {
        let r = self.labels.len();
        self.values[(h * r + i) * r + j]
    }

    /// `p[h][i][j]` addressed by label, zero when any label is absent.
    pub fn value_of(&self, h: TwoWayLabel, i: TwoWayLabel, j: TwoWayLabel) -> u32 {
        match (self.index_of(h), self.index_of(i), self.index_of(j)) {
            (Some(h), Some(i), Some(j)) => self.value(h, i, j),
            _ => 0,
        }
    }

    /// Largest intersection number in the table.
    pub fn max_value(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Checks the defining identities: row sums equal valencies, the
    /// identity-relation slice is `k[i]` exactly at `j = i*`, and the table
    /// is invariant under reversing all three labels.
    pub fn validate(&self) -> Result<(), SchemeIdentityError> {
        let r = self.labels.len();
        let id = self
            .index_of(TwoWayLabel::IDENTITY)
            .expect("identity label is always present");
        for h in 0..r {
            for i in 0..r {
                let sum: u64 = (0..r).map(|j| self.value(h, i, j) as u64).sum();
                if sum != self.valencies[i] as u64 {
                    return Err(SchemeIdentityError::RowSum {
                        h: self.labels[h],
                        i: self.labels[i],
                        expected: self.valencies[i],
                        got: sum,
                    });
                }
                for j in 0..r {
                    let direct = self.value(h, i, j);
                    if h == id {
                        let expected = if j == self.converse[i] {
                            self.valencies[i]
                        } else {
                            0
                        };
                        if direct != expected {
                            return Err(SchemeIdentityError::IdentityRelation {
                                i: self.labels[i],
                                j: self.labels[j],
                                expected,
                                got: direct,
                            });
                        }
                    }
                    let conv = self.value(self.converse[h], self.converse[j], self.converse[i]);
                    if direct != conv {
                        return Err(SchemeIdentityError::TransposeSymmetry {
                            h: self.labels[h],
                            i: self.labels[i],
                            j: self.labels[j],
                            direct,
                            converse: conv,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Text dump: valency lines first, then one line per nonzero entry,
    /// all in sorted label order.
    pub fn dump(&self) -> String {
        let r = self.labels.len();
        let mut out = String::new();
        for i in 0..r {
            out.push_str(&format!("k[{}] = {}\n", self.labels[i], self.valencies[i]));
        }
        for h in 0..r {
            for i in 0..r {
                for j in 0..r {
                    let v = self.value(h, i, j);
                    if v != 0 {
                        out.push_str(&format!(
                            "p[{}][{}][{}] = {}\n",
                            self.labels[h], self.labels[i], self.labels[j], v
                        ));
                    }
                }
            }
        }
        out
    }
}

/// Result of the weak distance-regularity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WdrOutcome {
    Regular(SchemeTensor),
    Irregular(WdrFailure),
}

impl WdrOutcome {
    pub fn is_regular(&self) -> bool {
        matches!(self, WdrOutcome::Regular(_))
    }

    pub fn tensor(&self) -> Option<&SchemeTensor> {
        match self {
            WdrOutcome::Regular(t) => Some(t),
            WdrOutcome::Irregular(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&WdrFailure> {
        match self {
            WdrOutcome::Regular(_) => None,
            WdrOutcome::Irregular(w) => Some(w),
        }
    }
}

/// Decides weak distance-regularity in one pass over all ordered pairs.
///
/// For each pair `(x, y)` the vector of intermediate counts, indexed by
/// `(i, j)`, is compared against the vector of the first pair seen with the
/// same two-way distance; the first mismatch aborts the scan and becomes the
/// failure witness. Valency constancy is covered by the diagonal pairs.
pub fn check_weakly_distance_regular(g: &Digraph) -> Result<WdrOutcome, DigraphError> {
    let dm = g.distance_matrix()?;
    let n = g.order();

    let labels: Vec<TwoWayLabel> = {
        let mut set = BTreeSet::new();
        for x in 0..n {
            for y in 0..n {
                set.insert(dm.label(x, y));
            }
        }
        set.into_iter().collect()
    };
    let r = labels.len();
    let index_of = |label: TwoWayLabel| labels.binary_search(&label).expect("label present");

    // Per-pair label indices, precomputed once for the O(n^3) core loop.
    let mut idx = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            idx[x * n + y] = index_of(dm.label(x, y));
        }
    }

    // First pair seen with a given two-way distance, with its count vector.
    type Representative = ((usize, usize), Vec<u32>);
    let mut reps: Vec<Option<Representative>> = vec![None; r];
    let mut counts = vec![0u32; r * r];
    let mut touched: Vec<usize> = Vec::with_capacity(r * r);

    for x in 0..n {
        for y in 0..n {
            let h = idx[x * n + y];
            for &cell in &touched {
                counts[cell] = 0;
            }
            touched.clear();
            for z in 0..n {
                let cell = idx[x * n + z] * r + idx[z * n + y];
                if counts[cell] == 0 {
                    touched.push(cell);
                }
                counts[cell] += 1;
            }
            match &reps[h] {
                None => reps[h] = Some(((x, y), counts.clone())),
                Some((first_pair, first_counts)) => {
                    if first_counts != &counts {
                        let cell = (0..r * r)
                            .find(|&c| first_counts[c] != counts[c])
                            .expect("some cell differs");
                        return Ok(WdrOutcome::Irregular(WdrFailure {
                            h: labels[h],
                            i: labels[cell / r],
                            j: labels[cell % r],
                            first_pair: *first_pair,
                            first_count: first_counts[cell],
                            second_pair: (x, y),
                            second_count: counts[cell],
                        }));
                    }
                }
            }
        }
    }

    let converse: Vec<usize> = labels.iter().map(|l| index_of(l.converse())).collect();
    let identity = index_of(TwoWayLabel::IDENTITY);
    let identity_counts = &reps[identity].as_ref().expect("diagonal pairs exist").1;
    let valencies: Vec<u32> = (0..r).map(|i| identity_counts[i * r + converse[i]]).collect();

    let mut values = vec![0u32; r * r * r];
    for h in 0..r {
        let (_, c) = reps[h].as_ref().expect("every label has a pair");
        values[h * r * r..(h + 1) * r * r].copy_from_slice(c);
    }

    let tensor = SchemeTensor {
        order: n,
        labels,
        converse,
        valencies,
        values,
    };
    tensor
        .validate()
        .expect("counted tensor satisfies the scheme identities");
    Ok(WdrOutcome::Regular(tensor))
}

/// True when the tensor is symmetric in its lower indices.
pub fn is_commutative(t: &SchemeTensor) -> bool {
    let r = t.rank();
    (0..r).all(|h| (0..r).all(|i| (i..r).all(|j| t.value(h, i, j) == t.value(h, j, i))))
}

/// True when the attached scheme is regular: `p[h][i][i]` and `p[h][i][i*]`
/// are 0 or the full valency `k[i]`, for every pair of labels.
pub fn is_thick(t: &SchemeTensor) -> bool {
    let r = t.rank();
    (0..r).all(|i| {
        let k = t.valency(i);
        let ic = t.converse_index(i);
        (0..r).all(|h| {
            let a = t.value(h, i, i);
            let b = t.value(h, i, ic);
            (a == 0 || a == k) && (b == 0 || b == k)
        })
    })
}

pub fn max_intersection_number(t: &SchemeTensor) -> u32 {
    t.max_value()
}

/// Maximum intersection number exactly 1.
pub fn is_thin(t: &SchemeTensor) -> bool {
    t.max_value() == 1
}

/// Maximum intersection number exactly 2.
pub fn is_quasi_thin(t: &SchemeTensor) -> bool {
    t.max_value() == 2
}

/// The relation product `EF`: labels `h` whose summed coefficient over
/// `i in E`, `j in F` is nonzero.
pub fn relation_product(
    t: &SchemeTensor,
    e: &BTreeSet<TwoWayLabel>,
    f: &BTreeSet<TwoWayLabel>,
) -> BTreeSet<TwoWayLabel> {
    let ei: Vec<usize> = e
        .iter()
        .map(|&l| t.index_of(l).expect("product label present in tensor"))
        .collect();
    let fi: Vec<usize> = f
        .iter()
        .map(|&l| t.index_of(l).expect("product label present in tensor"))
        .collect();
    let mut out = BTreeSet::new();
    for h in 0..t.rank() {
        let sum: u64 = ei
            .iter()
            .flat_map(|&i| fi.iter().map(move |&j| t.value(h, i, j) as u64))
            .sum();
        if sum != 0 {
            out.insert(t.labels()[h]);
        }
    }
    out
}
