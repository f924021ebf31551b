//! End-to-end verification of the classification on a concrete digraph: for
//! some nonempty subset I of {q-1, q} within T, the subdigraph spanned by the
//! remaining arc types is thick weakly distance-regular and the quotient over
//! their closure is isomorphic to one of the six families.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::analysis::render_set;
use crate::arcs::t_set;
use crate::cayley::FamilyId;
use crate::closure::{
    class_partition, closure, delta_subdigraph, quotient, DeltaSubdigraph, PartitionError,
};
use crate::digraph::{Digraph, TwoWayLabel};
use crate::iso::identify_family;
use crate::scheme::{check_weakly_distance_regular, is_commutative, is_thick, WdrOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("digraph is not weakly distance-regular")]
    NotWeaklyDistanceRegular,
    #[error("attached scheme is not commutative")]
    NotCommutative,
    #[error("digraph is not thick")]
    NotThick,
    #[error("digraph has no arcs, so no arc types to classify")]
    NoArcTypes,
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// Outcome for one candidate subset I, carrying the constructed subdigraph
/// and quotient so callers can emit them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremAttempt {
    pub i_set: BTreeSet<usize>,
    pub delta: DeltaSubdigraph,
    pub delta_strongly_connected: bool,
    pub delta_wdr: bool,
    pub delta_thick: bool,
    pub quotient: Digraph,
    /// Vertex classes underlying the quotient, in block order.
    pub blocks: Vec<Vec<usize>>,
    pub family: Option<FamilyId>,
    pub pass: bool,
}

impl TheoremAttempt {
    pub fn delta_order(&self) -> usize {
        self.delta.digraph.order()
    }

    pub fn quotient_order(&self) -> usize {
        self.quotient.order()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub t: BTreeSet<usize>,
    pub q_max: usize,
    pub attempts: Vec<TheoremAttempt>,
    pub pass: bool,
}

impl TheoremVerdict {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "t_set = {}", render_set(&self.t));
        let _ = writeln!(out, "q_max = {}", self.q_max);
        for a in &self.attempts {
            let key = render_set(&a.i_set);
            let _ = writeln!(out, "candidate{key}.delta_order = {}", a.delta_order());
            let _ = writeln!(
                out,
                "candidate{key}.delta_thick_wdr = {}",
                a.delta_strongly_connected && a.delta_wdr && a.delta_thick
            );
            let _ = writeln!(out, "candidate{key}.quotient_order = {}", a.quotient_order());
            let _ = writeln!(
                out,
                "candidate{key}.family = {}",
                a.family.map_or_else(|| "none".to_string(), |f| f.to_string())
            );
            let _ = writeln!(out, "candidate{key}.pass = {}", a.pass);
        }
        let _ = writeln!(out, "theorem = {}", if self.pass { "pass" } else { "fail" });
        out
    }
}

/// Runs the classification check. The digraph must be commutative thick
/// weakly distance-regular; anything else is a precondition failure,
/// reported distinctly from a theorem failure.
pub fn verify_theorem(g: &Digraph, iso_limit: usize) -> Result<TheoremVerdict, TheoremError> {
    if !g.is_strongly_connected() {
        return Err(TheoremError::NotStronglyConnected);
    }
    let tensor = match check_weakly_distance_regular(g).expect("strongly connected") {
        WdrOutcome::Regular(t) => t,
        WdrOutcome::Irregular(_) => return Err(TheoremError::NotWeaklyDistanceRegular),
    };
    if !is_commutative(&tensor) {
        return Err(TheoremError::NotCommutative);
    }
    if !is_thick(&tensor) {
        return Err(TheoremError::NotThick);
    }

    let t = t_set(g).expect("strongly connected");
    let q = *t.iter().next_back().ok_or(TheoremError::NoArcTypes)?;

    let mut candidates: Vec<BTreeSet<usize>> = Vec::new();
    if t.contains(&(q - 1)) {
        candidates.push(BTreeSet::from([q - 1]));
    }
    candidates.push(BTreeSet::from([q]));
    if t.contains(&(q - 1)) {
        candidates.push(BTreeSet::from([q - 1, q]));
    }

    let mut attempts = Vec::new();
    for i_set in candidates {
        let rest: BTreeSet<usize> = t.difference(&i_set).copied().collect();
        let delta = delta_subdigraph(g, &tensor, &rest, 0)?;
        let delta_sc = delta.digraph.is_strongly_connected();
        let (delta_wdr, delta_thick) = if delta_sc {
            match check_weakly_distance_regular(&delta.digraph).expect("strongly connected") {
                WdrOutcome::Regular(dt) => (true, is_thick(&dt)),
                WdrOutcome::Irregular(_) => (false, false),
            }
        } else {
            (false, false)
        };

        let seed: BTreeSet<TwoWayLabel> =
            rest.iter().map(|&s| TwoWayLabel::of_arc_type(s)).collect();
        let f = closure(&tensor, &seed);
        let part = class_partition(g, &f)?;
        let q_digraph = quotient(g, &part);
        let family = identify_family(&q_digraph, iso_limit);

        let pass = delta_sc && delta_wdr && delta_thick && family.is_some();
        attempts.push(TheoremAttempt {
            i_set,
            delta,
            delta_strongly_connected: delta_sc,
            delta_wdr,
            delta_thick,
            quotient: q_digraph,
            blocks: part.blocks,
            family,
            pass,
        });
    }

    let pass = attempts.iter().any(|a| a.pass);
    Ok(TheoremVerdict {
        t,
        q_max: q,
        attempts,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_family, CayleySpec, FamilyId, FamilyVariant};
    use crate::iso::DEFAULT_ORDER_LIMIT;

    fn cay(n: usize, gens: &[usize]) -> Digraph {
        CayleySpec::cyclic(n, gens.iter().copied())
            .unwrap()
            .digraph()
            .unwrap()
    }

    #[test]
    fn family_v_at_q5_passes_with_trivial_closure() {
        let g = build_family(FamilyId::new(FamilyVariant::V, 5)).unwrap();
        let verdict = verify_theorem(&g, DEFAULT_ORDER_LIMIT).unwrap();
        assert!(verdict.pass);
        let full = verdict
            .attempts
            .iter()
            .find(|a| a.i_set == verdict.t)
            .expect("T is contained in {q-1, q} here");
        assert!(full.pass);
        assert_eq!(full.quotient_order(), g.order());
        assert_eq!(full.family, Some(FamilyId::new(FamilyVariant::V, 5)));
    }

    #[test]
    fn family_ii_at_p5_passes_and_is_identified() {
        let g = build_family(FamilyId::new(FamilyVariant::II, 5)).unwrap();
        let verdict = verify_theorem(&g, DEFAULT_ORDER_LIMIT).unwrap();
        assert!(verdict.pass);
        assert!(verdict
            .attempts
            .iter()
            .any(|a| a.family == Some(FamilyId::new(FamilyVariant::II, 5))));
    }

    #[test]
    fn irregular_input_is_a_precondition_failure() {
        assert_eq!(
            verify_theorem(&cay(5, &[1, 2]), DEFAULT_ORDER_LIMIT),
            Err(TheoremError::NotWeaklyDistanceRegular)
        );
    }

    #[test]
    fn non_thick_input_is_a_precondition_failure() {
        assert_eq!(
            verify_theorem(&cay(5, &[1, 4]), DEFAULT_ORDER_LIMIT),
            Err(TheoremError::NotThick)
        );
    }

    #[test]
    fn single_vertex_has_nothing_to_classify() {
        let g = Digraph::from_arc_list(1, []).unwrap();
        assert_eq!(
            verify_theorem(&g, DEFAULT_ORDER_LIMIT),
            Err(TheoremError::NoArcTypes)
        );
    }

    #[test]
    fn two_step_circulant_passes_through_a_proper_quotient() {
        // Cay(Z_6, {2, 3}) has T = {2, 3}; removing the digon type leaves a
        // digon subdigraph and a directed-triangle quotient.
        let g = cay(6, &[2, 3]);
        let verdict = verify_theorem(&g, DEFAULT_ORDER_LIMIT).unwrap();
        assert!(verdict.pass);
        let attempt = verdict
            .attempts
            .iter()
            .find(|a| a.i_set == BTreeSet::from([3]))
            .unwrap();
        assert!(attempt.pass);
        assert_eq!(attempt.delta_order(), 2);
        assert_eq!(attempt.quotient_order(), 3);
        assert_eq!(attempt.blocks, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(attempt.family, Some(FamilyId::new(FamilyVariant::I, 3)));
    }
}
