//! The full audit of one map: validation, curvature, pairing, bounds and
//! chains, plus a census of faces, vertex types and classes.

use curvlab_core::chains::find_chains;
use curvlab_core::classification::classify;
use curvlab_core::curvature::{curvature_of, total_curvature};
use curvlab_core::discharging::{audit_discharge, Discharge};
use curvlab_core::rational::{exact, int};
use curvlab_core::refinement::all_refinements;
use curvlab_core::report::{AuditReport, Check, Section};
use curvlab_core::validate::validate_pcc;
use curvlab_core::PlanarMap;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub face_sizes: BTreeMap<usize, usize>,
    pub vtypes: BTreeMap<String, usize>,
    pub curvatures: BTreeMap<String, usize>,
    pub classes: BTreeMap<String, usize>,
}

pub fn census(m: &PlanarMap) -> Census {
    let mut face_sizes = BTreeMap::new();
    for f in 0..m.num_faces() {
        *face_sizes.entry(m.face_size(f)).or_insert(0) += 1;
    }
    let (mut vtypes, mut curvatures, mut classes) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
    for v in 0..m.num_vertices() {
        let fv = m.vtype(v);
        *vtypes.entry(fv.to_string()).or_insert(0) += 1;
        *curvatures.entry(exact(&curvature_of(&fv.0))).or_insert(0) += 1;
        let class = classify(m, v).map(|c| c.to_string()).unwrap_or_else(|_| "unclassified".into());
        *classes.entry(class).or_insert(0) += 1;
    }
    Census {
        vertices: m.num_vertices(),
        edges: m.num_edges(),
        faces: m.num_faces(),
        face_sizes,
        vtypes,
        curvatures,
        classes,
    }
}

fn chains_section(m: &PlanarMap) -> Section {
    let mut s = Section::new("chains");
    let chains = find_chains(m);
    let mut bad = Vec::new();
    let mut closed = 0;
    for (i, c) in chains.iter().enumerate() {
        if !c.closed {
            continue;
        }
        closed += 1;
        let laws = c.count_laws(m);
        if !laws.holds {
            bad.push(format!(
                "chain {i}: L = {}, edges {}, vertices {} (m = {})",
                laws.length, laws.edges, laws.vertices, laws.m
            ));
        }
    }
    s.push(
        Check::new(
            "chain-count-laws",
            "Lemma 17.3",
            bad.is_empty(),
            format!("{} chains, {closed} closed", chains.len()),
        )
        .with_witnesses(bad),
    );
    s
}

/// Every check that applies to `m`. Discharging checks are skipped when the
/// map fails the basic conditions, since the pairing needs PCC input.
pub fn full_audit(m: &PlanarMap) -> AuditReport {
    let mut sections = validate_pcc(m).sections;
    let mut curv = Section::new("curvature");
    let total = total_curvature(m);
    curv.push(Check::new("total-curvature", "Eq.(3)", total == int(2), format!("sum K = {}", exact(&total))));
    let basic_ok = sections.first().is_some_and(|s| s.passed());
    if !basic_ok {
        sections.push(curv);
        return AuditReport::from_sections(sections);
    }
    match Discharge::new(m) {
        Err(e) => {
            let mut p = Section::new("pairing");
            p.push(Check::new("build-pairing", "Sec.4-5", false, e.to_string()));
            sections.push(curv);
            sections.push(p);
        }
        Ok(d) => {
            let mut rep = audit_discharge(m, &d);
            for s in &mut rep.sections {
                if s.name == "curvature" {
                    s.checks.insert(0, curv.checks[0].clone());
                }
                if s.name == "bounds" {
                    s.push(refinement_check(m, &d));
                }
            }
            sections.extend(rep.sections);
        }
    }
    sections.push(chains_section(m));
    AuditReport::from_sections(sections)
}

fn refinement_check(m: &PlanarMap, d: &Discharge) -> Check {
    let mut bad = Vec::new();
    let mut n = 0;
    for r in all_refinements(m, d) {
        n += 1;
        match r {
            Ok(x) if x.identity_holds() => {}
            Ok(x) => bad.push(format!("face {}: sum {} != c {}", x.face, exact(&x.sum()), exact(&x.c_face))),
            Err(e) => bad.push(e.to_string()),
        }
    }
    Check::new("edge-refinement", "Lemma 10.2/12.2", bad.is_empty(), format!("{n} faces decomposed")).with_witnesses(bad)
}
