//! PCC validation and the structural lemmas every PCC map must satisfy.

use crate::admissibility::is_admissible;
use crate::curvature::curvature_of;
use crate::map::{FaceId, PlanarMap};
use crate::rational::{exact, zero};
use crate::report::{AuditReport, Check, Section};
use std::collections::{BTreeMap, BTreeSet};

fn conditions(m: &PlanarMap) -> Section {
    let mut s = Section::new("validation");
    let low: Vec<String> = (0..m.num_vertices())
        .filter(|&v| m.degree(v) < 3)
        .map(|v| format!("v{v} has degree {}", m.degree(v)))
        .collect();
    s.push(Check::new("min-degree", "Def.1.1", low.is_empty(), format!("{} vertices of degree < 3", low.len())).with_witnesses(low));

    let flat: Vec<String> = (0..m.num_vertices())
        .filter_map(|v| {
            let k = curvature_of(&m.cyclic_vtype(v));
            (k <= zero()).then(|| format!("v{v} {} K = {}", m.vtype(v), exact(&k)))
        })
        .collect();
    s.push(
        Check::new("positive-curvature", "Def.1.1", flat.is_empty(), format!("{} vertices with K <= 0", flat.len()))
            .with_witnesses(flat),
    );

    let prism = m.is_prism();
    let anti = m.is_antiprism();
    let what = if prism { "map is a prism" } else if anti { "map is an antiprism" } else { "neither prism nor antiprism" };
    s.push(Check::new("not-prism-or-antiprism", "Def.1.1(iii)", !prism && !anti, what));

    let big: Vec<String> = (0..m.num_faces())
        .filter(|&f| m.face_size(f) > 41)
        .map(|f| format!("face {f} has size {}", m.face_size(f)))
        .collect();
    s.push(
        Check::new("max-face-41", "Thm.13.1", big.is_empty(), format!("largest face {}", m.max_face_size()))
            .with_witnesses(big),
    );
    s
}

fn structural(m: &PlanarMap) -> Section {
    let mut s = Section::new("structure");

    let inadmissible: Vec<String> = (0..m.num_vertices())
        .filter(|&v| !matches!(is_admissible(&m.vtype(v)), Ok(true)))
        .map(|v| format!("v{v} {}", m.vtype(v)))
        .collect();
    s.push(
        Check::new("admissible-vertices", "Table 1", inadmissible.is_empty(), format!("{} inadmissible", inadmissible.len()))
            .with_witnesses(inadmissible),
    );

    let mut bad = Vec::new();
    for f in 0..m.num_faces() {
        let vs = m.fverts(f);
        let set: BTreeSet<_> = vs.iter().collect();
        if set.len() != vs.len() && !(7..=11).contains(&vs.len()) {
            bad.push(format!("face {f} of size {} repeats a vertex", vs.len()));
        }
    }
    s.push(Check::new("repeated-vertex-sizes", "Lemma 2.2", bad.is_empty(), "faces repeating a vertex have 7..=11 sides").with_witnesses(bad));

    let large_at = |v| -> BTreeSet<FaceId> { m.vfaces(v).into_iter().filter(|&f| m.face_size(f) >= 20).collect() };
    let mut bad = Vec::new();
    for e in 0..m.num_edges() {
        let (a, b) = m.everts(e);
        let (la, lb) = (large_at(a), large_at(b));
        if la.is_empty() || lb.is_empty() {
            continue;
        }
        let all: BTreeSet<FaceId> = la.union(&lb).copied().collect();
        let (f1, f2) = m.efaces(e);
        let ok = all.len() == 1 && {
            let f = *all.iter().next().unwrap();
            f == f1 || f == f2
        };
        if !ok {
            bad.push(format!("edge v{a}-v{b}: large faces {all:?}"));
        }
    }
    s.push(Check::new("large-faces-apart", "Lemma 2.4", bad.is_empty(), "adjacent vertices on large faces share one").with_witnesses(bad));

    let mut bad = Vec::new();
    for k in 0..m.num_faces() {
        if m.face_size(k) > 6 {
            continue;
        }
        let mut shared: BTreeMap<usize, FaceId> = BTreeMap::new();
        for &d in m.face_darts(k) {
            let f = m.across(d);
            if m.face_size(f) >= 20 {
                shared.insert(m.edge_of(d), f);
            }
        }
        if shared.len() > 1 {
            bad.push(format!("face {k} of size {} shares edges {:?} with large faces", m.face_size(k), shared));
        }
    }
    s.push(Check::new("small-face-one-large-edge", "Lemma 2.5", bad.is_empty(), "small faces touch large faces along at most one edge").with_witnesses(bad));
    s
}

/// Checks the PCC conditions and the structural lemmas.
pub fn validate_pcc(m: &PlanarMap) -> AuditReport {
    AuditReport::from_sections(vec![conditions(m), structural(m)])
}

/// Only the PCC conditions, without the structural audits.
pub fn is_pcc(m: &PlanarMap) -> bool {
    conditions(m).passed()
}
