//! Rendering of computation results: verdicts and quivers as documents,
//! deterministic human-readable text, and plain edge lists.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use eirep_core::ordinary::OrdinaryQuiver;
use eirep_core::{CatRep, FiniteCategory, Outcome, RuleStatus, Verdict};

use crate::doc::{
    ModuleDoc, OutcomeDoc, QuiverArrowDoc, QuiverDoc, QuiverVertexDoc, StatusDoc, TraceEntryDoc,
    VerdictDoc, MODULE_SCHEMA, QUIVER_SCHEMA, VERDICT_SCHEMA,
};
use crate::realize::dims_by_name;

pub fn outcome_doc(o: Outcome) -> OutcomeDoc {
    match o {
        Outcome::Finite => OutcomeDoc::Finite,
        Outcome::Infinite => OutcomeDoc::Infinite,
        Outcome::Unknown => OutcomeDoc::Unknown,
    }
}

fn status_doc(s: RuleStatus) -> StatusDoc {
    match s {
        RuleStatus::Pass => StatusDoc::Pass,
        RuleStatus::Fail => StatusDoc::Fail,
        RuleStatus::NotApplicable => StatusDoc::NotApplicable,
        RuleStatus::Unknown => StatusDoc::Unknown,
    }
}

pub fn verdict_doc(input: Option<&str>, v: &Verdict) -> VerdictDoc {
    VerdictDoc {
        schema: VERDICT_SCHEMA.into(),
        input: input.map(Into::into),
        outcome: outcome_doc(v.outcome),
        characteristic: v.char_p,
        field: v.field_used.clone(),
        notes: v.notes.clone(),
        trace: v
            .trace
            .iter()
            .map(|e| TraceEntryDoc {
                rule: e.rule.into(),
                status: status_doc(e.status),
                objects: e.objects.clone(),
                witness: e.detail.clone(),
                citation: e.citation.into(),
            })
            .collect(),
    }
}

pub fn verdict_text(d: &VerdictDoc) -> String {
    let mut s = String::new();
    if let Some(input) = &d.input {
        let _ = writeln!(s, "input: {input}");
    }
    let _ = writeln!(s, "outcome: {} representation type", d.outcome);
    let _ = writeln!(s, "characteristic: {}", d.characteristic);
    if !d.field.is_empty() {
        let _ = writeln!(s, "fields used: {}", d.field);
    }
    let _ = writeln!(s, "trace:");
    for e in &d.trace {
        let at = if e.objects.is_empty() {
            String::new()
        } else {
            format!(" at {}", e.objects.join(", "))
        };
        let _ = writeln!(s, "  {} [{}{}] {}", e.rule, e.status, at, e.witness);
        let _ = writeln!(s, "      {}", e.citation);
    }
    for n in &d.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn quiver_doc(cat: &FiniteCategory, q: &OrdinaryQuiver, input: Option<&str>) -> QuiverDoc {
    let vertices = q
        .vertices
        .iter()
        .map(|v| QuiverVertexDoc {
            object: cat.object_name(v.object).to_string(),
            simple: v.simple_index,
            dim: v.dim,
            label: v.label.clone(),
        })
        .collect();
    let mut arrows: Vec<QuiverArrowDoc> = q
        .arrows
        .iter()
        .map(|&(src, tgt, mult)| QuiverArrowDoc { src, tgt, mult })
        .collect();
    arrows.sort_by_key(|a| (a.src, a.tgt));
    QuiverDoc {
        schema: QUIVER_SCHEMA.into(),
        input: input.map(Into::into),
        characteristic: q.field.p(),
        field: format!("F_{}", q.field.q()),
        vertices,
        arrows,
    }
}

pub fn quiver_text(d: &QuiverDoc) -> String {
    let mut s = String::new();
    if let Some(input) = &d.input {
        let _ = writeln!(s, "input: {input}");
    }
    let _ = writeln!(s, "field: {} (characteristic {})", d.field, d.characteristic);
    let _ = writeln!(s, "vertices: {}", d.vertices.len());
    for (i, v) in d.vertices.iter().enumerate() {
        let _ = writeln!(s, "  {i}: {} (object {}, simple {}, dim {})", v.label, v.object, v.simple, v.dim);
    }
    let _ = writeln!(s, "arrows: {}", d.arrows.iter().map(|a| a.mult).sum::<usize>());
    for a in &d.arrows {
        let times = if a.mult == 1 { String::new() } else { format!("  x{}", a.mult) };
        let _ = writeln!(s, "  {} -> {}{times}", a.src, a.tgt);
    }
    s
}

/// The underlying multigraph as a plain edge list: one `src tgt` line per
/// arrow, multiplicities expanded, vertices numbered as in the listing.
pub fn graph_edges(d: &QuiverDoc) -> String {
    let mut s = String::new();
    for a in &d.arrows {
        for _ in 0..a.mult {
            let _ = writeln!(s, "{} {}", a.src, a.tgt);
        }
    }
    s
}

/// An induced module rendered back into document form, reusable as input
/// for the parent category.
pub fn module_doc(rep: &CatRep) -> ModuleDoc {
    let cat = rep.cat();
    let mut matrices = BTreeMap::new();
    for m in 0..cat.n_morphisms() {
        if m == cat.identity(cat.src(m)) {
            continue;
        }
        let mat = rep.mat(m);
        if mat.rows() == 0 || mat.cols() == 0 {
            continue;
        }
        let rows: Vec<Vec<u64>> = (0..mat.rows())
            .map(|r| (0..mat.cols()).map(|c| mat.at(r, c)).collect())
            .collect();
        matrices.insert(cat.mor_name(m).to_string(), rows);
    }
    ModuleDoc {
        schema: MODULE_SCHEMA.into(),
        characteristic: rep.field().p(),
        dims: dims_by_name(rep),
        matrices,
    }
}

pub fn module_text(rep: &CatRep) -> String {
    let cat = rep.cat();
    let mut s = String::new();
    let _ = writeln!(s, "field: F_{}", rep.field().q());
    let _ = writeln!(s, "dimensions:");
    for x in 0..cat.n_objects() {
        let _ = writeln!(s, "  {}: {}", cat.object_name(x), rep.dim_at(x));
    }
    let _ = writeln!(s, "matrices:");
    for m in 0..cat.n_morphisms() {
        if m == cat.identity(cat.src(m)) {
            continue;
        }
        let mat = rep.mat(m);
        let rows: Vec<String> = (0..mat.rows())
            .map(|r| {
                let row: Vec<String> =
                    (0..mat.cols()).map(|c| mat.at(r, c).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        let _ = writeln!(s, "  {}: [{}]", cat.mor_name(m), rows.join(", "));
    }
    s
}
