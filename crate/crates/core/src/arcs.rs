//! Arc types, the set T, purity of arc types, and the two configurations
//! built from a nonzero intersection number plus a pure shorter type.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::digraph::{Digraph, DigraphError, DistanceMatrix, TwoWayLabel};
use crate::scheme::SchemeTensor;

/// The set of integers `q >= 2` such that some arc has type `(1, q-1)`,
/// i.e. the label `(1, q-1)` occurs.
pub fn t_set(g: &Digraph) -> Result<BTreeSet<usize>, DigraphError> {
    let dm = g.distance_matrix()?;
    let n = g.order();
    let mut out = BTreeSet::new();
    for (u, v) in g.arcs() {
        out.insert(dm.get(v, u) as usize + 1);
    }
    debug_assert!(n < 2 || !out.is_empty());
    Ok(out)
}

/// Enumerates every directed cycle on exactly `len` distinct vertices whose
/// arc sequence includes `arc`, as vertex lists starting at the arc tail.
pub fn circuits_through_arc(
    g: &Digraph,
    arc: (usize, usize),
    len: usize,
) -> Result<Vec<Vec<usize>>, DigraphError> {
    let dm = g.distance_matrix()?;
    let mut out = Vec::new();
    let _ = visit_circuits(g, dm, arc, len, &mut |circuit| {
        out.push(circuit.to_vec());
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Depth-first extension from the arc head back to its tail, pruning any
/// partial path whose endpoint is too far from the tail to close in the
/// remaining number of steps.
fn visit_circuits(
    g: &Digraph,
    dm: &DistanceMatrix,
    (u, v): (usize, usize),
    len: usize,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if len < 2 || !g.has_arc(u, v) || u == v {
        return ControlFlow::Continue(());
    }
    let mut on_path = vec![false; g.order()];
    on_path[u] = true;
    on_path[v] = true;
    let mut path = vec![u, v];
    extend(g, dm, u, len, &mut path, &mut on_path, visit)
}

fn extend(
    g: &Digraph,
    dm: &DistanceMatrix,
    start: usize,
    len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let last = *path.last().expect("path is never empty");
    if path.len() == len {
        if g.has_arc(last, start) {
            visit(path)?;
        }
        return ControlFlow::Continue(());
    }
    let budget = (len - path.len()) as u32;
    for w in g.out_neighbors(last) {
        if !on_path[w] && dm.get(w, start) <= budget {
            on_path[w] = true;
            path.push(w);
            let flow = extend(g, dm, start, len, path, on_path, visit);
            path.pop();
            on_path[w] = false;
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// A circuit certifying that some arc of type `(1, q-1)` is mixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedWitness {
    /// `q` pairwise-distinct vertices; consecutive arcs (cyclically) exist.
    pub circuit: Vec<usize>,
    /// An arc of the circuit whose type differs from `(1, q-1)`.
    pub offending_arc: (usize, usize),
    pub offending_type: TwoWayLabel,
}

/// Whether `(1, q-1)` is pure: every circuit of length `q` through an arc of
/// that type consists of arcs of that type only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityVerdict {
    pub q: usize,
    pub pure: bool,
    pub witness: Option<MixedWitness>,
}

/// Tests every arc of type `(1, q-1)`; safe for arbitrary strongly connected
/// digraphs. Vacuously pure when no arc has that type.
pub fn is_pure(g: &Digraph, q: usize) -> Result<PurityVerdict, DigraphError> {
    purity(g, q, false)
}

/// Tests one representative arc of type `(1, q-1)`. On weakly
/// distance-regular digraphs this decides purity of the whole type; the
/// tensor parameter is the caller's evidence of that precondition.
pub fn is_pure_representative(
    g: &Digraph,
    _tensor: &SchemeTensor,
    q: usize,
) -> Result<PurityVerdict, DigraphError> {
    purity(g, q, true)
}

fn purity(g: &Digraph, q: usize, single_arc: bool) -> Result<PurityVerdict, DigraphError> {
    let dm = g.distance_matrix()?;
    let back = (q - 1) as u32;
    let mut witness = None;
    for (u, v) in g.arcs() {
        if dm.get(v, u) != back {
            continue;
        }
        let _ = visit_circuits(g, dm, (u, v), q, &mut |circuit| {
            for k in 0..circuit.len() {
                let a = circuit[k];
                let b = circuit[(k + 1) % circuit.len()];
                if dm.get(b, a) != back {
                    witness = Some(MixedWitness {
                        circuit: circuit.to_vec(),
                        offending_arc: (a, b),
                        offending_type: dm.label(a, b),
                    });
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if witness.is_some() || single_arc {
            break;
        }
    }
    Ok(PurityVerdict {
        q,
        pure: witness.is_none(),
        witness,
    })
}

/// The coefficient `p[(1,q-2)][(1,q-1)][(1,q-1)]`, zero when a label is absent.
pub fn configuration_c_coefficient(t: &SchemeTensor, q: usize) -> u32 {
    if q < 3 {
        return 0;
    }
    let long = TwoWayLabel::of_arc_type(q);
    let short = TwoWayLabel::of_arc_type(q - 1);
    t.value_of(short, long, long)
}

/// The coefficient `p[(1,q-1)][(1,q-2)][(q-2,1)]`, zero when a label is absent.
pub fn configuration_d_coefficient(t: &SchemeTensor, q: usize) -> u32 {
    if q < 3 {
        return 0;
    }
    let long = TwoWayLabel::of_arc_type(q);
    let short = TwoWayLabel::of_arc_type(q - 1);
    t.value_of(long, short, short.converse())
}

/// The first configuration at `q`: nonzero coefficient and `(1, q-2)` pure.
pub fn has_configuration_c(
    g: &Digraph,
    t: &SchemeTensor,
    q: usize,
) -> Result<bool, DigraphError> {
    Ok(configuration_c_coefficient(t, q) != 0 && is_pure(g, q - 1)?.pure)
}

/// The second configuration at `q`: nonzero coefficient and `(1, q-2)` pure.
pub fn has_configuration_d(
    g: &Digraph,
    t: &SchemeTensor,
    q: usize,
) -> Result<bool, DigraphError> {
    Ok(configuration_d_coefficient(t, q) != 0 && is_pure(g, q - 1)?.pure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_family, CayleySpec, FamilyId, FamilyVariant};
    use crate::scheme::{check_weakly_distance_regular, WdrOutcome};

    fn cay(n: usize, gens: &[usize]) -> Digraph {
        CayleySpec::cyclic(n, gens.iter().copied())
            .unwrap()
            .digraph()
            .unwrap()
    }

    fn tensor(g: &Digraph) -> crate::scheme::SchemeTensor {
        match check_weakly_distance_regular(g).unwrap() {
            WdrOutcome::Regular(t) => t,
            WdrOutcome::Irregular(w) => panic!("expected regular digraph, got {w}"),
        }
    }

    #[test]
    fn t_set_examples() {
        assert_eq!(t_set(&cay(5, &[1])).unwrap(), BTreeSet::from([5]));
        assert_eq!(t_set(&cay(4, &[1, 2])).unwrap(), BTreeSet::from([2, 3]));
        let family_v = build_family(FamilyId::new(FamilyVariant::V, 5)).unwrap();
        assert!(t_set(&family_v).unwrap().contains(&5));
    }

    #[test]
    fn circuit_enumeration_examples() {
        let cycle3 = Digraph::from_arc_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            circuits_through_arc(&cycle3, (0, 1), 3).unwrap(),
            vec![vec![0, 1, 2]]
        );

        let g = cay(4, &[1, 2]);
        assert_eq!(
            circuits_through_arc(&g, (0, 1), 3).unwrap(),
            vec![vec![0, 1, 2], vec![0, 1, 3]]
        );
        assert_eq!(
            circuits_through_arc(&g, (0, 2), 2).unwrap(),
            vec![vec![0, 2]]
        );
        assert!(circuits_through_arc(&g, (0, 1), 2).unwrap().is_empty());
    }

    #[test]
    fn purity_examples() {
        assert!(is_pure(&cay(5, &[1]), 5).unwrap().pure);

        let g = cay(4, &[1, 2]);
        let verdict = is_pure(&g, 3).unwrap();
        assert!(!verdict.pure);
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.circuit.len(), 3);
        assert_eq!(witness.offending_type, TwoWayLabel::new(1, 1));

        assert!(is_pure(&g, 2).unwrap().pure);
    }

    #[test]
    fn mixed_witness_is_recountable() {
        let g = cay(4, &[1, 2]);
        let witness = is_pure(&g, 3).unwrap().witness.unwrap();
        let dm = g.distance_matrix().unwrap();
        let mut vertices = witness.circuit.clone();
        vertices.sort_unstable();
        vertices.dedup();
        assert_eq!(vertices.len(), 3, "circuit vertices are distinct");
        let mut saw_offender = false;
        for k in 0..witness.circuit.len() {
            let a = witness.circuit[k];
            let b = witness.circuit[(k + 1) % witness.circuit.len()];
            assert!(g.has_arc(a, b), "consecutive circuit arcs exist");
            if (a, b) == witness.offending_arc {
                saw_offender = true;
                assert_ne!(dm.label(a, b), TwoWayLabel::new(1, 2));
            }
        }
        assert!(saw_offender);
    }

    #[test]
    fn representative_mode_agrees_on_regular_examples() {
        for (g, qs) in [
            (cay(4, &[1, 2]), vec![2usize, 3]),
            (cay(6, &[1, 2]), vec![3, 4]),
            (cay(5, &[1]), vec![5]),
        ] {
            let t = tensor(&g);
            for q in qs {
                assert_eq!(
                    is_pure(&g, q).unwrap().pure,
                    is_pure_representative(&g, &t, q).unwrap().pure,
                    "q = {q}"
                );
            }
        }
    }

    #[test]
    fn configuration_examples() {
        let g = cay(4, &[1, 2]);
        let t = tensor(&g);
        assert_eq!(configuration_c_coefficient(&t, 3), 1);
        assert!(has_configuration_c(&g, &t, 3).unwrap());
        assert!(!has_configuration_d(&g, &t, 3).unwrap());

        // Directed 5-cycle: the label (1, 3) is absent, so neither
        // configuration can exist at q = 5.
        let cycle = cay(5, &[1]);
        let t = tensor(&cycle);
        assert_eq!(configuration_c_coefficient(&t, 5), 0);
        assert!(!has_configuration_c(&cycle, &t, 5).unwrap());
        assert!(!has_configuration_d(&cycle, &t, 5).unwrap());
    }

    #[test]
    fn second_configuration_without_the_first() {
        // Census-found witness: in Cay(Z_6, {1,2,3,5}) the digon type (1,1)
        // is pure with p[(1,2)][(1,1)][(1,1)] = 3, while the coefficient for
        // the first configuration vanishes.
        let g = cay(6, &[1, 2, 3, 5]);
        let t = tensor(&g);
        assert_eq!(configuration_d_coefficient(&t, 3), 3);
        assert!(has_configuration_d(&g, &t, 3).unwrap());
        assert_eq!(configuration_c_coefficient(&t, 3), 0);
        assert!(!has_configuration_c(&g, &t, 3).unwrap());
        assert!(!is_pure(&g, 3).unwrap().pure, "(1,2) must be mixed");
    }

    #[test]
    fn mixed_characterization_on_z6() {
        // Cay(Z_6, {1,2}): (1,2) is pure and no configuration exists at q = 3;
        // (1,3) is mixed and the first configuration exists at q = 4.
        let g = cay(6, &[1, 2]);
        let t = tensor(&g);
        assert!(is_pure(&g, 3).unwrap().pure);
        assert!(!has_configuration_c(&g, &t, 3).unwrap());
        assert!(!has_configuration_d(&g, &t, 3).unwrap());
        assert!(!is_pure(&g, 4).unwrap().pure);
        assert!(has_configuration_c(&g, &t, 4).unwrap());
    }
}
