//! Full per-digraph analysis report, rendered deterministically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::arcs::{
    configuration_c_coefficient, configuration_d_coefficient, is_pure, is_pure_representative,
    t_set, PurityVerdict,
};
use crate::digraph::{Digraph, TwoWayLabel};
use crate::scheme::{
    check_weakly_distance_regular, is_commutative, is_quasi_thin, is_thick, is_thin,
    max_intersection_number, WdrOutcome,
};

/// How purity of each arc type is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PurityMode {
    /// Test every arc of the type. Correct on arbitrary inputs.
    Exhaustive,
    /// Test one representative arc per type, justified by weak
    /// distance-regularity. Falls back to exhaustive when the digraph is not
    /// weakly distance-regular.
    Representative,
}

/// Everything the analysis pipeline knows about one digraph. Fields that
/// need the intersection tensor are `None` when the digraph is not strongly
/// connected or not weakly distance-regular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub order: usize,
    pub arc_count: usize,
    pub strongly_connected: bool,
    /// All two-way distances occurring, sorted.
    pub labels: Option<Vec<TwoWayLabel>>,
    pub t_set: Option<BTreeSet<usize>>,
    pub purity: BTreeMap<usize, PurityVerdict>,
    pub wdr: Option<WdrOutcome>,
    pub commutative: Option<bool>,
    pub thick: Option<bool>,
    pub thin: Option<bool>,
    pub quasi_thin: Option<bool>,
    pub max_intersection_number: Option<u32>,
    pub config_c: BTreeMap<usize, bool>,
    pub config_d: BTreeMap<usize, bool>,
}

impl AnalysisReport {
    pub fn is_commutative_thick_wdr(&self) -> bool {
        self.commutative == Some(true) && self.thick == Some(true)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "order = {}", self.order);
        let _ = writeln!(out, "arcs = {}", self.arc_count);
        let _ = writeln!(out, "strongly_connected = {}", self.strongly_connected);
        if let Some(labels) = &self.labels {
            let _ = writeln!(out, "labels = {}", render_labels(labels));
        }
        if let Some(t) = &self.t_set {
            let _ = writeln!(out, "t_set = {}", render_set(t));
        }
        for (q, verdict) in &self.purity {
            let _ = writeln!(
                out,
                "purity[{q}] = {}",
                if verdict.pure { "pure" } else { "mixed" }
            );
            if let Some(w) = &verdict.witness {
                let circuit: Vec<String> = w.circuit.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(
                    out,
                    "purity_witness[{q}] = ({}) with arc ({}, {}) of type {}",
                    circuit.join(", "),
                    w.offending_arc.0,
                    w.offending_arc.1,
                    w.offending_type
                );
            }
        }
        match &self.wdr {
            None => {}
            Some(WdrOutcome::Regular(tensor)) => {
                let _ = writeln!(out, "wdr = true");
                let _ = writeln!(out, "commutative = {}", self.commutative.unwrap());
                let _ = writeln!(out, "thick = {}", self.thick.unwrap());
                let _ = writeln!(out, "thin = {}", self.thin.unwrap());
                let _ = writeln!(out, "quasi_thin = {}", self.quasi_thin.unwrap());
                let _ = writeln!(
                    out,
                    "max_intersection_number = {}",
                    self.max_intersection_number.unwrap()
                );
                for (q, v) in &self.config_c {
                    let _ = writeln!(out, "config_c[{q}] = {v}");
                }
                for (q, v) in &self.config_d {
                    let _ = writeln!(out, "config_d[{q}] = {v}");
                }
                out.push_str(&tensor.dump());
            }
            Some(WdrOutcome::Irregular(w)) => {
                let _ = writeln!(out, "wdr = false");
                let _ = writeln!(out, "wdr_witness_h = {}", w.h);
                let _ = writeln!(out, "wdr_witness_i = {}", w.i);
                let _ = writeln!(out, "wdr_witness_j = {}", w.j);
                let _ = writeln!(
                    out,
                    "wdr_witness_pair_a = ({}, {})",
                    w.first_pair.0, w.first_pair.1
                );
                let _ = writeln!(out, "wdr_witness_count_a = {}", w.first_count);
                let _ = writeln!(
                    out,
                    "wdr_witness_pair_b = ({}, {})",
                    w.second_pair.0, w.second_pair.1
                );
                let _ = writeln!(out, "wdr_witness_count_b = {}", w.second_count);
            }
        }
        out
    }

    /// Flat `key = value` lines with dotted nesting.
    pub fn render_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "order = {}", self.order);
        let _ = writeln!(out, "arcs = {}", self.arc_count);
        let _ = writeln!(out, "strongly_connected = {}", self.strongly_connected);
        if let Some(labels) = &self.labels {
            let _ = writeln!(out, "labels = {}", render_labels(labels));
        }
        if let Some(t) = &self.t_set {
            let items: Vec<String> = t.iter().map(|q| q.to_string()).collect();
            let _ = writeln!(out, "t_set = {}", items.join(" "));
        }
        for (q, verdict) in &self.purity {
            let _ = writeln!(
                out,
                "purity.{q} = {}",
                if verdict.pure { "pure" } else { "mixed" }
            );
        }
        match &self.wdr {
            None => {}
            Some(WdrOutcome::Regular(tensor)) => {
                let _ = writeln!(out, "wdr = true");
                let _ = writeln!(out, "scheme.commutative = {}", self.commutative.unwrap());
                let _ = writeln!(out, "scheme.thick = {}", self.thick.unwrap());
                let _ = writeln!(out, "scheme.thin = {}", self.thin.unwrap());
                let _ = writeln!(out, "scheme.quasi_thin = {}", self.quasi_thin.unwrap());
                let _ = writeln!(
                    out,
                    "scheme.max_intersection_number = {}",
                    self.max_intersection_number.unwrap()
                );
                for (q, v) in &self.config_c {
                    let _ = writeln!(out, "config_c.{q} = {v}");
                }
                for (q, v) in &self.config_d {
                    let _ = writeln!(out, "config_d.{q} = {v}");
                }
                for i in 0..tensor.rank() {
                    let _ = writeln!(
                        out,
                        "scheme.k.{} = {}",
                        tensor.labels()[i],
                        tensor.valency(i)
                    );
                }
                for h in 0..tensor.rank() {
                    for i in 0..tensor.rank() {
                        for j in 0..tensor.rank() {
                            let v = tensor.value(h, i, j);
                            if v != 0 {
                                let _ = writeln!(
                                    out,
                                    "scheme.p.{}.{}.{} = {}",
                                    tensor.labels()[h],
                                    tensor.labels()[i],
                                    tensor.labels()[j],
                                    v
                                );
                            }
                        }
                    }
                }
            }
            Some(WdrOutcome::Irregular(w)) => {
                let _ = writeln!(out, "wdr = false");
                let _ = writeln!(out, "wdr_witness.h = {}", w.h);
                let _ = writeln!(out, "wdr_witness.i = {}", w.i);
                let _ = writeln!(out, "wdr_witness.j = {}", w.j);
                let _ = writeln!(
                    out,
                    "wdr_witness.pair_a = ({}, {})",
                    w.first_pair.0, w.first_pair.1
                );
                let _ = writeln!(out, "wdr_witness.count_a = {}", w.first_count);
                let _ = writeln!(
                    out,
                    "wdr_witness.pair_b = ({}, {})",
                    w.second_pair.0, w.second_pair.1
                );
                let _ = writeln!(out, "wdr_witness.count_b = {}", w.second_count);
            }
        }
        out
    }
}

pub(crate) fn render_set(set: &BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn render_labels(labels: &[TwoWayLabel]) -> String {
    let items: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    items.join(" ")
}

/// Analyzes with exhaustive purity checking.
pub fn analyze(g: &Digraph) -> AnalysisReport {
    analyze_with(g, PurityMode::Exhaustive)
}

/// Full analysis: connectivity, T, purity per type, the regularity check,
/// and the tensor predicates. Halts after the connectivity field when the
/// digraph is not strongly connected.
pub fn analyze_with(g: &Digraph, mode: PurityMode) -> AnalysisReport {
    let mut report = AnalysisReport {
        order: g.order(),
        arc_count: g.arc_count(),
        strongly_connected: g.is_strongly_connected(),
        labels: None,
        t_set: None,
        purity: BTreeMap::new(),
        wdr: None,
        commutative: None,
        thick: None,
        thin: None,
        quasi_thin: None,
        max_intersection_number: None,
        config_c: BTreeMap::new(),
        config_d: BTreeMap::new(),
    };
    if !report.strongly_connected {
        return report;
    }
    report.labels = Some(
        crate::digraph::label_set(g)
            .expect("strongly connected")
            .into_iter()
            .collect(),
    );
    let t = t_set(g).expect("strongly connected");
    let wdr = check_weakly_distance_regular(g).expect("strongly connected");

    for &q in &t {
        let verdict = match (&wdr, mode) {
            (WdrOutcome::Regular(tensor), PurityMode::Representative) => {
                is_pure_representative(g, tensor, q)
            }
            _ => is_pure(g, q),
        }
        .expect("strongly connected");
        report.purity.insert(q, verdict);
    }

    if let WdrOutcome::Regular(tensor) = &wdr {
        report.commutative = Some(is_commutative(tensor));
        report.thick = Some(is_thick(tensor));
        report.thin = Some(is_thin(tensor));
        report.quasi_thin = Some(is_quasi_thin(tensor));
        report.max_intersection_number = Some(max_intersection_number(tensor));
        for &q in &t {
            let pure_shorter = report.purity.get(&(q - 1)).is_some_and(|v| v.pure);
            report
                .config_c
                .insert(q, configuration_c_coefficient(tensor, q) != 0 && pure_shorter);
            report
                .config_d
                .insert(q, configuration_d_coefficient(tensor, q) != 0 && pure_shorter);
        }
    }
    report.t_set = Some(t);
    report.wdr = Some(wdr);
    report
}
