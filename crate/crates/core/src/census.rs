//! Exhaustive small-order census of Cayley digraphs with theorem property
//! checks on every commutative thick weakly distance-regular instance.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::analysis::{analyze_with, AnalysisReport, PurityMode};
use crate::arcs::configuration_c_coefficient;
use crate::cayley::CayleySpec;
use crate::digraph::TwoWayLabel;
use crate::iso::{canonical_form, CanonicalForm};
use crate::scheme::{relation_product, SchemeTensor, WdrOutcome};
use crate::theorem::{verify_theorem, TheoremVerdict};

/// Which groups the census enumerates connection sets over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFamily {
    /// Cyclic groups `Z_n`, `2 <= n <= max_order`.
    Cyclic,
    /// Products `Z_m x Z_2` with `2m <= max_order`.
    CyclicTimesZ2,
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub max_order: usize,
    pub max_valency: usize,
    pub groups: GroupFamily,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub iso_limit: usize,
}

/// A property of commutative thick weakly distance-regular digraphs that
/// failed on a census instance. Any violation is a fatal finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyViolation {
    /// A configuration exists at `q` without `(1, q-1)` being mixed, or the
    /// type is mixed with no configuration.
    MixedArcCharacterization {
        q: usize,
        has_c: bool,
        has_d: bool,
        pure: bool,
    },
    /// `p[(1,q-1)][(1,s-1)][(1,t-1)]` is nonzero with `s != t` but
    /// `q` is neither `s` nor `t`.
    ArcTypeTriple {
        q: usize,
        s: usize,
        t: usize,
        value: u32,
    },
    /// Two distinct types in T satisfy none of the four relationship
    /// disjuncts.
    ArcTypeRelationship { q: usize, p: usize },
    /// The classification check itself failed.
    ClassificationFailure { q_max: usize },
}

impl fmt::Display for PropertyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyViolation::MixedArcCharacterization { q, has_c, has_d, pure } => write!(
                f,
                "mixed-arc characterization fails at q = {q}: config_c = {has_c}, config_d = {has_d}, pure = {pure}"
            ),
            PropertyViolation::ArcTypeTriple { q, s, t, value } => write!(
                f,
                "arc-type triple constraint fails: p[(1,{})][(1,{})][(1,{})] = {value} but {q} is not in {{{s}, {t}}}",
                q - 1,
                s - 1,
                t - 1
            ),
            PropertyViolation::ArcTypeRelationship { q, p } => write!(
                f,
                "arc-type relationship fails for q = {q}, p = {p}: no disjunct holds"
            ),
            PropertyViolation::ClassificationFailure { q_max } => {
                write!(f, "classification fails at q_max = {q_max}")
            }
        }
    }
}

/// One non-isomorphic strongly connected census instance.
#[derive(Debug, Clone)]
pub struct CensusEntry {
    pub spec: CayleySpec,
    pub report: AnalysisReport,
    /// Present exactly when the instance is commutative thick weakly
    /// distance-regular.
    pub verdict: Option<TheoremVerdict>,
    pub violations: Vec<PropertyViolation>,
}

/// Enumerates all connection sets of size up to `max_valency` over each
/// group in range, skips non-strongly-connected candidates, deduplicates up
/// to isomorphism, and analyzes the survivors. Candidates are evaluated in
/// parallel and merged back in enumeration order, so output is deterministic
/// regardless of the worker count.
pub fn census(cfg: &CensusConfig) -> Vec<CensusEntry> {
    let specs = enumerate_specs(cfg);
    let evaluated: Vec<Option<(CanonicalForm, CensusEntry)>> = match cfg.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
            .install(|| evaluate_all(&specs, cfg)),
        None => evaluate_all(&specs, cfg),
    };

    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut out = Vec::new();
    for item in evaluated.into_iter().flatten() {
        let (form, entry) = item;
        if seen.insert(form) {
            out.push(entry);
        }
    }
    out
}

fn evaluate_all(
    specs: &[CayleySpec],
    cfg: &CensusConfig,
) -> Vec<Option<(CanonicalForm, CensusEntry)>> {
    specs
        .par_iter()
        .map(|spec| evaluate(spec.clone(), cfg))
        .collect()
}

fn enumerate_specs(cfg: &CensusConfig) -> Vec<CayleySpec> {
    let mut specs = Vec::new();
    match cfg.groups {
        GroupFamily::Cyclic => {
            for n in 2..=cfg.max_order {
                let elements: Vec<(usize, usize)> = (1..n).map(|a| (a, 0)).collect();
                for set in subsets_up_to(&elements, cfg.max_valency) {
                    specs.push(CayleySpec::new(n, 1, set).expect("valid non-identity elements"));
                }
            }
        }
        GroupFamily::CyclicTimesZ2 => {
            for m in 1..=cfg.max_order / 2 {
                let elements: Vec<(usize, usize)> = (0..m)
                    .flat_map(|a| (0..2).map(move |b| (a, b)))
                    .filter(|&e| e != (0, 0))
                    .collect();
                for set in subsets_up_to(&elements, cfg.max_valency) {
                    specs.push(CayleySpec::new(m, 2, set).expect("valid non-identity elements"));
                }
            }
        }
    }
    specs
}

/// Nonempty subsets of at most `max_size` elements, in lexicographic order
/// of index sequences.
fn subsets_up_to(elements: &[(usize, usize)], max_size: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        elements: &[(usize, usize)],
        start: usize,
        max_size: usize,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        if current.len() == max_size {
            return;
        }
        for i in start..elements.len() {
            current.push(elements[i]);
            rec(elements, i + 1, max_size, current, out);
            current.pop();
        }
    }
    rec(elements, 0, max_size, &mut current, &mut out);
    out
}

fn evaluate(spec: CayleySpec, cfg: &CensusConfig) -> Option<(CanonicalForm, CensusEntry)> {
    let g = spec.digraph().ok()?;
    let form = canonical_form(&g, cfg.iso_limit).expect("census orders stay under the limit");
    let report = analyze_with(&g, PurityMode::Representative);

    let mut verdict = None;
    let mut violations = Vec::new();
    if report.is_commutative_thick_wdr() {
        let tensor = report
            .wdr
            .as_ref()
            .and_then(WdrOutcome::tensor)
            .expect("commutative thick implies a tensor");
        violations.extend(instance_property_violations(&report, tensor));
        let v = verify_theorem(&g, cfg.iso_limit).expect("preconditions verified");
        if !v.pass {
            violations.push(PropertyViolation::ClassificationFailure { q_max: v.q_max });
        }
        verdict = Some(v);
    }

    Some((
        form,
        CensusEntry {
            spec,
            report,
            verdict,
            violations,
        },
    ))
}

/// The three instance-level properties every commutative thick weakly
/// distance-regular digraph must satisfy. The report supplies the purity
/// verdicts, so callers choose the purity mode by how they analyzed.
pub fn instance_property_violations(
    report: &AnalysisReport,
    tensor: &SchemeTensor,
) -> Vec<PropertyViolation> {
    let mut out = Vec::new();
    let t = report.t_set.as_ref().expect("analyzed");

    // A configuration at q exists if and only if (1, q-1) is mixed.
    for &q in t {
        let has_c = report.config_c[&q];
        let has_d = report.config_d[&q];
        let pure = report.purity[&q].pure;
        if (has_c || has_d) == pure {
            out.push(PropertyViolation::MixedArcCharacterization { q, has_c, has_d, pure });
        }
    }

    // A nonzero p[(1,q-1)][(1,s-1)][(1,t-1)] with s != t forces q in {s, t}.
    for &q in t {
        for &s in t {
            for &tt in t {
                if s == tt {
                    continue;
                }
                let value = tensor.value_of(
                    TwoWayLabel::of_arc_type(q),
                    TwoWayLabel::of_arc_type(s),
                    TwoWayLabel::of_arc_type(tt),
                );
                if value != 0 && q != s && q != tt {
                    out.push(PropertyViolation::ArcTypeTriple { q, s, t: tt, value });
                }
            }
        }
    }

    // For distinct q, p in T one of the four relationship disjuncts holds.
    let types: Vec<usize> = t.iter().copied().collect();
    for (a, &q) in types.iter().enumerate() {
        for &p in &types[a + 1..] {
            if !relationship_holds(report, tensor, q, p)
                && !relationship_holds(report, tensor, p, q)
            {
                out.push(PropertyViolation::ArcTypeRelationship { q: p, p: q });
            }
        }
    }
    out
}

/// One direction of the relationship disjunction: a configuration at `q`
/// with `p = q - 1`, or the square of `(1, q-1)` meeting the product of
/// `(1, p-1)` with its converse.
fn relationship_holds(
    report: &AnalysisReport,
    tensor: &SchemeTensor,
    q: usize,
    p: usize,
) -> bool {
    let pure_shorter = report.purity.get(&(q - 1)).is_some_and(|v| v.pure);
    let config_c_at_q = configuration_c_coefficient(tensor, q) != 0 && pure_shorter;
    if config_c_at_q && p == q - 1 {
        return true;
    }
    let lq = TwoWayLabel::of_arc_type(q);
    let lp = TwoWayLabel::of_arc_type(p);
    let square = relation_product(
        tensor,
        &BTreeSet::from([lq]),
        &BTreeSet::from([lq]),
    );
    let back_and_forth = relation_product(
        tensor,
        &BTreeSet::from([lp]),
        &BTreeSet::from([lp.converse()]),
    );
    square.intersection(&back_and_forth).next().is_some()
}

impl CensusEntry {
    /// One-line summary used by the command-line census output.
    pub fn summary(&self) -> String {
        let wdr = self
            .report
            .wdr
            .as_ref()
            .is_some_and(WdrOutcome::is_regular);
        let mut line = format!(
            "{} order={} wdr={}",
            self.spec,
            self.report.order,
            wdr,
        );
        if wdr {
            line.push_str(&format!(
                " commutative={} thick={} max_p={}",
                self.report.commutative.unwrap(),
                self.report.thick.unwrap(),
                self.report.max_intersection_number.unwrap()
            ));
        }
        match &self.verdict {
            Some(v) => line.push_str(&format!(" theorem={}", if v.pass { "pass" } else { "fail" })),
            None => line.push_str(" theorem=n/a"),
        }
        if !self.violations.is_empty() {
            line.push_str(&format!(" violations={}", self.violations.len()));
        }
        line
    }
}
