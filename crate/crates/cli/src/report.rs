//! Serializers for the command outputs: delimited tables and the
//! schema-versioned `key = value` report documents. All output is built from
//! sorted, index-ordered data, so a fixed scenario and seed give identical
//! bytes on every run.

use std::fmt::Write as _;

use conemorse_core::geodesic::{Geodesic, GeodesicKind};
use conemorse_core::homology::PersistencePairs;
use conemorse_core::path::LimitClass;
use conemorse_core::series::FormalSeries;

use crate::pipeline::{FlowBatch, MorsePipelineOutput};
use crate::scenario::Scenario;

pub const FLOW_SCHEMA: &str = "conemorse/flow-report/v1";
pub const MORSE_SCHEMA: &str = "conemorse/morse-report/v1";

pub fn kind_label(kind: GeodesicKind) -> String {
    match kind {
        GeodesicKind::Classical { sheet } => format!("classical:{sheet}"),
        GeodesicKind::Broken => "broken".to_string(),
    }
}

pub fn class_label(class: LimitClass) -> String {
    match class {
        LimitClass::Classical { sheet } => format!("classical:{sheet}"),
        LimitClass::Broken => "broken".to_string(),
        LimitClass::Unresolved => "unresolved".to_string(),
    }
}

fn series_label(series: &FormalSeries) -> String {
    series.to_compact()
}

/// One header row, one row per geodesic.
pub fn geodesics_tsv(enumeration: &[Geodesic]) -> String {
    let mut out = String::from("kind\tsheet\tdevelopment_angle\tlength\tenergy\ttie\n");
    for g in enumeration {
        let (sheet, angle) = match (g.kind, g.development_angle) {
            (GeodesicKind::Classical { sheet }, Some(delta)) => {
                (sheet.to_string(), delta.to_string())
            }
            _ => ("-".to_string(), "-".to_string()),
        };
        let kind = match g.kind {
            GeodesicKind::Classical { .. } => "classical",
            GeodesicKind::Broken => "broken",
        };
        writeln!(
            out,
            "{kind}\t{sheet}\t{angle}\t{}\t{}\t{}",
            g.length, g.energy, g.tie
        )
        .expect("string writes are infallible");
    }
    out
}

/// One row per flowed sample.
pub fn flow_tsv(batch: &FlowBatch) -> String {
    let mut out = String::from("sample\tstart_energy\tfinal_energy\titerations\tconverged\tlimit\n");
    for row in &batch.rows {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            row.index,
            row.start_energy,
            row.final_energy,
            row.iterations,
            row.converged,
            class_label(row.class)
        )
        .expect("string writes are infallible");
    }
    out
}

/// Key = value summary of a flow batch: basin histogram and counts.
pub fn flow_text(scenario: &Scenario, enumeration: &[Geodesic], batch: &FlowBatch) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "schema = {FLOW_SCHEMA}");
    let _ = writeln!(out, "samples = {}", batch.rows.len());
    let _ = writeln!(out, "segments = {}", scenario.segments);
    let _ = writeln!(out, "seed = {}", scenario.seed);
    let _ = writeln!(out, "flow_tol = {}", scenario.flow_tol);
    let _ = writeln!(out, "max_sweeps = {}", scenario.max_sweeps);
    let minimum = batch
        .rows
        .iter()
        .map(|r| r.final_energy)
        .fold(f64::INFINITY, f64::min);
    let _ = writeln!(out, "minimum_energy = {minimum}");
    for (g, hits) in enumeration.iter().zip(&batch.histogram) {
        let _ = writeln!(out, "basin.{} = {hits}", kind_label(g.kind));
    }
    let _ = writeln!(out, "unresolved = {}", batch.unresolved);
    let _ = writeln!(out, "unconverged = {}", batch.unconverged);
    out
}

/// Birth/death table; essential classes report `inf`.
pub fn persistence_tsv(pairs: &PersistencePairs) -> String {
    let mut out = String::from("birth\tdeath\n");
    for pair in pairs.pairs() {
        let death = match pair.death {
            Some(d) => d.to_string(),
            None => "inf".to_string(),
        };
        writeln!(out, "{}\t{death}", pair.birth).expect("string writes are infallible");
    }
    out
}

/// The full machine-readable Morse document.
pub fn morse_text(scenario: &Scenario, out: &MorsePipelineOutput) -> String {
    let mut doc = String::new();
    let w = &mut doc;
    let _ = writeln!(w, "schema = {MORSE_SCHEMA}");
    let _ = writeln!(w, "alpha = {}", scenario.alpha);
    let _ = writeln!(w, "p = {} {}", scenario.p_r, scenario.p_theta);
    let _ = writeln!(w, "q = {} {}", scenario.q_r, scenario.q_theta);
    let _ = writeln!(w, "segments = {}", scenario.segments);
    let _ = writeln!(w, "samples = {}", scenario.samples);
    let _ = writeln!(w, "seed = {}", scenario.seed);
    let _ = writeln!(w, "eps_cap = {}", scenario.eps_cap);
    let _ = writeln!(w, "scale = {}", out.scale);
    let _ = writeln!(w, "vertices = {}", out.vertex_count);
    let _ = writeln!(w, "edges = {}", out.edge_count);
    let _ = writeln!(w, "triangles = {}", out.triangle_count);
    let _ = writeln!(w, "unresolved = {}", out.flow.unresolved);
    let _ = writeln!(w, "unconverged = {}", out.flow.unconverged);
    let _ = writeln!(w, "geodesics = {}", out.enumeration.len());
    let _ = writeln!(w, "levels = {}", out.report.levels.len());
    for (i, row) in out.report.levels.iter().enumerate() {
        let _ = writeln!(w, "level.{i}.energy = {}", row.energy);
        let _ = writeln!(w, "level.{i}.eps = {}", row.eps);
        let _ = writeln!(w, "level.{i}.index = {}", series_label(&row.index));
        let members: Vec<String> = row.members.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(w, "level.{i}.members = {}", members.join(","));
        let _ = writeln!(w, "level.{i}.eps_independent = {}", row.eps_independent);
        let _ = writeln!(w, "level.{i}.deaths_near = {}", out.level_deaths[i].1);
    }
    for (i, row) in out.report.geodesics.iter().enumerate() {
        let g = &out.enumeration[row.which];
        let _ = writeln!(w, "geodesic.{i}.kind = {}", kind_label(g.kind));
        let _ = writeln!(w, "geodesic.{i}.energy = {}", row.energy);
        let _ = writeln!(w, "geodesic.{i}.tie = {}", row.tie);
        match &row.index {
            Some(series) => {
                let _ = writeln!(w, "geodesic.{i}.index = {}", series_label(series));
            }
            None => {
                let _ = writeln!(w, "geodesic.{i}.index = skipped:tied-level");
            }
        }
        match row.multiplicity {
            Some(m) => {
                let _ = writeln!(w, "geodesic.{i}.multiplicity = {m}");
            }
            None => {
                let _ = writeln!(w, "geodesic.{i}.multiplicity = skipped:tied-level");
            }
        }
    }
    let _ = writeln!(w, "total_index = {}", series_label(&out.report.total_index));
    let _ = writeln!(w, "space_series = {}", series_label(&out.report.space_series));
    let _ = writeln!(
        w,
        "essential_components = {}",
        out.report.essential_components
    );
    match &out.report.quotient {
        Some(q) => {
            let _ = writeln!(w, "quotient = {}", series_label(q));
        }
        None => {
            let _ = writeln!(w, "quotient = none");
        }
    }
    let _ = writeln!(w, "violations = {}", out.report.violations.len());
    for (i, v) in out.report.violations.iter().enumerate() {
        let _ = writeln!(w, "violation.{i} = {v}");
    }
    let _ = writeln!(w, "holds = {}", out.report.holds());
    doc
}

/// Short human summary printed to standard output after a morse run.
pub fn morse_summary(out: &MorsePipelineOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} geodesics on {} critical levels; complex: {} vertices, {} edges, {} triangles",
        out.enumeration.len(),
        out.report.levels.len(),
        out.vertex_count,
        out.edge_count,
        out.triangle_count
    );
    for (i, row) in out.report.levels.iter().enumerate() {
        let _ = writeln!(
            s,
            "level {i}: energy {} index {} deaths_near {}",
            row.energy,
            series_label(&row.index),
            out.level_deaths[i].1
        );
    }
    let _ = writeln!(
        s,
        "total index {} | space {} | quotient {}",
        series_label(&out.report.total_index),
        series_label(&out.report.space_series),
        out.report
            .quotient
            .as_ref()
            .map_or("none".to_string(), series_label)
    );
    let _ = writeln!(
        s,
        "relation {}",
        if out.report.holds() { "holds" } else { "violated" }
    );
    for v in &out.report.violations {
        let _ = writeln!(s, "violation: {v}");
    }
    s
}
