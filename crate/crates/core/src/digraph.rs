//! Simple digraphs with dense adjacency and cached all-pairs distance data.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Marker for vertex pairs with no directed path in raw distance tables.
/// Never escapes the crate: the public [`Digraph::distance_matrix`] rejects
/// digraphs that are not strongly connected.
pub(crate) const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("digraph must have at least one vertex")]
    EmptyOrder,
    #[error("loop at vertex {0} is not allowed in a simple digraph")]
    Loop(usize),
    #[error("arc ({0}, {1}) out of range for order {2}")]
    ArcOutOfRange(usize, usize, usize),
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
}

/// The ordered pair of directed distances `(d(x, y), d(y, x))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoWayLabel {
    pub forward: u32,
    pub backward: u32,
}

impl TwoWayLabel {
    /// Label of the diagonal pairs `(x, x)`.
    pub const IDENTITY: TwoWayLabel = TwoWayLabel {
        forward: 0,
        backward: 0,
    };

    pub fn new(forward: u32, backward: u32) -> Self {
        TwoWayLabel { forward, backward }
    }

    /// Label of the reversed pair: `(a, b)` becomes `(b, a)`.
    pub fn converse(self) -> Self {
        TwoWayLabel {
            forward: self.backward,
            backward: self.forward,
        }
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    /// For an arc-type label `(1, q-1)` returns `q`; `None` for any other shape.
    pub fn arc_type(self) -> Option<usize> {
        (self.forward == 1).then(|| self.backward as usize + 1)
    }

    /// The arc-type label `(1, q-1)`.
    pub fn of_arc_type(q: usize) -> Self {
        debug_assert!(q >= 2, "arc types start at q = 2");
        TwoWayLabel::new(1, (q - 1) as u32)
    }
}

impl fmt::Display for TwoWayLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.forward, self.backward)
    }
}

/// All-pairs shortest directed path lengths of a strongly connected digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    entries: Vec<u32>,
    complete: bool,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Shortest directed path length from `x` to `y`.
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.entries[x * self.order + y]
    }

    /// Two-way distance `(d(x, y), d(y, x))`.
    pub fn label(&self, x: usize, y: usize) -> TwoWayLabel {
        TwoWayLabel::new(self.get(x, y), self.get(y, x))
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.complete
    }
}

/// A finite simple digraph on vertices `0..order`.
///
/// Values are immutable after construction; the distance matrix is computed
/// on first use and cached, so shared references stay cheap to query.
#[derive(Debug, Clone)]
pub struct Digraph {
    order: usize,
    adj: Vec<bool>,
    arc_count: usize,
    distances: OnceLock<DistanceMatrix>,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.adj == other.adj
    }
}

impl Eq for Digraph {}

impl Digraph {
    /// Builds the simple digraph with exactly the given arcs. Duplicate arcs
    /// are collapsed; loops and out-of-range endpoints are rejected.
    pub fn from_arc_list(
        order: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Digraph, DigraphError> {
        if order == 0 {
            return Err(DigraphError::EmptyOrder);
        }
        let mut adj = vec![false; order * order];
        let mut arc_count = 0;
        for (u, v) in arcs {
            if u >= order || v >= order {
                return Err(DigraphError::ArcOutOfRange(u, v, order));
            }
            if u == v {
                return Err(DigraphError::Loop(u));
            }
            if !adj[u * order + v] {
                adj[u * order + v] = true;
                arc_count += 1;
            }
        }
        Ok(Digraph {
            order,
            adj,
            arc_count,
            distances: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.order + v]
    }

    /// All arcs in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order;
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(move |(i, _)| (i / n, i % n))
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.order;
        self.adj[u * n..(u + 1) * n]
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(v, _)| v)
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.order;
        (0..n).filter(move |&u| self.adj[u * n + v])
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_neighbors(u).count()
    }

    /// Forward and reverse reachability sweeps from vertex 0.
    pub fn is_strongly_connected(&self) -> bool {
        self.sweep_covers(false) && self.sweep_covers(true)
    }

    fn sweep_covers(&self, reverse: bool) -> bool {
        let n = self.order;
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for (y, visited) in seen.iter_mut().enumerate() {
                let arc = if reverse {
                    self.adj[y * n + x]
                } else {
                    self.adj[x * n + y]
                };
                if arc && !*visited {
                    *visited = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// Raw distance table with [`UNREACHABLE`] sentinels, cached.
    pub(crate) fn distance_table(&self) -> &DistanceMatrix {
        self.distances.get_or_init(|| {
            let n = self.order;
            let mut entries = vec![UNREACHABLE; n * n];
            let mut complete = true;
            let mut queue = VecDeque::new();
            for src in 0..n {
                let row = &mut entries[src * n..(src + 1) * n];
                row[src] = 0;
                queue.clear();
                queue.push_back(src);
                while let Some(x) = queue.pop_front() {
                    let dx = row[x];
                    for y in self.out_neighbors(x) {
                        if row[y] == UNREACHABLE {
                            row[y] = dx + 1;
                            queue.push_back(y);
                        }
                    }
                }
                if row.contains(&UNREACHABLE) {
                    complete = false;
                }
            }
            DistanceMatrix {
                order: n,
                entries,
                complete,
            }
        })
    }

    /// Exact shortest directed path lengths, breadth-first from each source.
    /// Fails when some ordered pair is unreachable.
    pub fn distance_matrix(&self) -> Result<&DistanceMatrix, DigraphError> {
        let table = self.distance_table();
        if table.is_complete() {
            Ok(table)
        } else {
            Err(DigraphError::NotStronglyConnected)
        }
    }
}

/// The `n x n` matrix of two-way distances, row-major.
pub fn two_way_matrix(g: &Digraph) -> Result<Vec<TwoWayLabel>, DigraphError> {
    let dm = g.distance_matrix()?;
    let n = g.order();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            out.push(dm.label(x, y));
        }
    }
    Ok(out)
}

/// The set of all two-way distances appearing in `g`, including `(0,0)`.
pub fn label_set(g: &Digraph) -> Result<BTreeSet<TwoWayLabel>, DigraphError> {
    let dm = g.distance_matrix()?;
    let n = g.order();
    let mut set = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            set.insert(dm.label(x, y));
        }
    }
    Ok(set)
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

    #[test]
    fn builds_directed_three_cycle() {
        let g = Digraph::from_arc_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.arc_count(), 3);
        assert!(g.has_arc(0, 1));
        assert!(!g.has_arc(1, 0));
    }

    #[test]
    fn builds_z4_with_steps_one_two() {
        let arcs = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (0, 2),
            (1, 3),
            (2, 0),
            (3, 1),
        ];
        let g = Digraph::from_arc_list(4, arcs).unwrap();
        assert_eq!(g, cay(4, &[1, 2]));
    }

    #[test]
    fn rejects_loops_and_empty_order() {
        assert_eq!(
            Digraph::from_arc_list(2, [(0, 0)]),
            Err(DigraphError::Loop(0))
        );
        assert_eq!(
            Digraph::from_arc_list(0, []),
            Err(DigraphError::EmptyOrder)
        );
        assert_eq!(
            Digraph::from_arc_list(2, [(0, 2)]),
            Err(DigraphError::ArcOutOfRange(0, 2, 2))
        );
    }

    #[test]
    fn collapses_duplicate_arcs() {
        let g = Digraph::from_arc_list(3, [(0, 1), (0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.arc_count(), 3);
    }

    #[test]
    fn strong_connectivity() {
        let cycle = Digraph::from_arc_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(cycle.is_strongly_connected());

        let path = Digraph::from_arc_list(2, [(0, 1)]).unwrap();
        assert!(!path.is_strongly_connected());

        assert!(cay(6, &[2, 3]).is_strongly_connected());

        let single = Digraph::from_arc_list(1, []).unwrap();
        assert!(single.is_strongly_connected());
    }

    #[test]
    fn distances_on_small_examples() {
        let cycle3 = Digraph::from_arc_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(cycle3.distance_matrix().unwrap().get(0, 2), 2);

        let g = cay(4, &[1, 2]);
        let dm = g.distance_matrix().unwrap();
        assert_eq!(dm.get(3, 0), 1);
        assert_eq!(dm.get(0, 3), 2);

        let cycle5 = cay(5, &[1]);
        assert_eq!(cycle5.distance_matrix().unwrap().get(0, 4), 4);
    }

    #[test]
    fn distance_matrix_requires_strong_connectivity() {
        let path = Digraph::from_arc_list(2, [(0, 1)]).unwrap();
        assert_eq!(
            path.distance_matrix().err(),
            Some(DigraphError::NotStronglyConnected)
        );
    }

    #[test]
    fn two_way_matrix_of_directed_three_cycle() {
        let cycle3 = Digraph::from_arc_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let m = two_way_matrix(&cycle3).unwrap();
        let l = |a, b| TwoWayLabel::new(a, b);
        assert_eq!(
            m,
            vec![
                l(0, 0), l(1, 2), l(2, 1),
                l(2, 1), l(0, 0), l(1, 2),
                l(1, 2), l(2, 1), l(0, 0),
            ]
        );
    }

    #[test]
    fn two_way_labels_on_small_examples() {
        let cycle3 = Digraph::from_arc_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let dm = cycle3.distance_matrix().unwrap();
        assert_eq!(dm.label(0, 1), TwoWayLabel::new(1, 2));
        assert_eq!(dm.label(0, 0), TwoWayLabel::IDENTITY);

        let g = cay(4, &[1, 2]);
        let dm = g.distance_matrix().unwrap();
        assert_eq!(dm.label(0, 1), TwoWayLabel::new(1, 2));
        assert_eq!(dm.label(0, 2), TwoWayLabel::new(1, 1));

        let cycle5 = cay(5, &[1]);
        let dm = cycle5.distance_matrix().unwrap();
        assert_eq!(dm.label(0, 1), TwoWayLabel::new(1, 4));
    }

    #[test]
    fn label_sets_on_small_examples() {
        let l = |a, b| TwoWayLabel::new(a, b);

        let cycle3 = Digraph::from_arc_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let labels = label_set(&cycle3).unwrap();
        assert_eq!(
            labels.into_iter().collect::<Vec<_>>(),
            vec![l(0, 0), l(1, 2), l(2, 1)]
        );

        let labels = label_set(&cay(4, &[1, 2])).unwrap();
        assert_eq!(
            labels.into_iter().collect::<Vec<_>>(),
            vec![l(0, 0), l(1, 1), l(1, 2), l(2, 1)]
        );

        let labels = label_set(&cay(5, &[1])).unwrap();
        assert_eq!(
            labels.into_iter().collect::<Vec<_>>(),
            vec![l(0, 0), l(1, 4), l(2, 3), l(3, 2), l(4, 1)]
        );
    }

    #[test]
    fn arc_type_round_trip() {
        let label = TwoWayLabel::of_arc_type(5);
        assert_eq!(label, TwoWayLabel::new(1, 4));
        assert_eq!(label.arc_type(), Some(5));
        assert_eq!(TwoWayLabel::new(2, 1).arc_type(), None);
        assert_eq!(label.converse(), TwoWayLabel::new(4, 1));
    }
}
