//! Edge-level decomposition of `c(f)` for faces with `14 ≤ |f| ≤ 41`,
//! `|f| ≠ 19`: each vertex's share of `f` is moved onto the `(3,N)` edges
//! of `f`, plus a bucket `ℓ∂∂` for far-away special vertices when
//! `|f| ∈ {40,41}`.

use crate::discharging::Discharge;
use crate::map::{EdgeId, FaceId, PlanarMap, SideVector, VertexId};
use crate::pairing::{Part, Target};
use crate::rational::{exact, zero, Exact, Rational};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RefinementError {
    #[error("face {face} has size {size}; refinement needs 14..=41 without 19")]
    WrongFaceSize { face: FaceId, size: usize },
    #[error("face {0} receives no mass")]
    ZeroMass(FaceId),
    #[error("vertex {vertex}: localized shares sum to {got}, expected {want}")]
    RowMismatch { vertex: VertexId, got: String, want: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Slot {
    Edge(EdgeId),
    Bucket,
}

#[derive(Debug, Clone)]
pub struct EdgeDecomposition {
    pub face: FaceId,
    pub size: usize,
    pub shares: BTreeMap<(VertexId, Slot), Rational>,
    pub slot_c: BTreeMap<Slot, Rational>,
    pub c_face: Rational,
}

impl EdgeDecomposition {
    pub fn sum(&self) -> Rational {
        self.slot_c.values().fold(zero(), |a, b| a + b)
    }

    pub fn identity_holds(&self) -> bool {
        self.sum() == self.c_face
    }

    pub fn min_edge(&self) -> Option<Rational> {
        self.slot_c.iter().filter(|(s, _)| matches!(s, Slot::Edge(_))).map(|(_, c)| c.clone()).min()
    }

    pub fn view(&self, m: &PlanarMap) -> DecompositionView {
        DecompositionView {
            face: self.face,
            size: self.size,
            c_face: (&self.c_face).into(),
            sum: (&self.sum()).into(),
            identity_holds: self.identity_holds(),
            slots: self
                .slot_c
                .iter()
                .map(|(s, c)| SlotView {
                    slot: match s {
                        Slot::Edge(e) => {
                            let (a, b) = m.everts(*e);
                            format!("edge {e} (v{a}-v{b})")
                        }
                        Slot::Bucket => "l-dd bucket".into(),
                    },
                    c: c.into(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SlotView {
    pub slot: String,
    pub c: Exact,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionView {
    pub face: FaceId,
    pub size: usize,
    pub c_face: Exact,
    pub sum: Exact,
    pub identity_holds: bool,
    pub slots: Vec<SlotView>,
}

pub fn is_eligible_size(n: usize) -> bool {
    (14..=41).contains(&n) && n != 19
}

/// The f-edge of the triangle through which `v` is special to `f`.
fn special_edge(m: &PlanarMap, v: VertexId, f: FaceId) -> Option<EdgeId> {
    m.darts_at(v).iter().find_map(|&d| {
        let t = m.face_of(d);
        if m.face_size(t) != 3 {
            return None;
        }
        let far = m.succ(d);
        (m.across(far) == f).then(|| m.edge_of(far))
    })
}

pub fn edge_refinement(m: &PlanarMap, d: &Discharge, f: FaceId) -> Result<EdgeDecomposition, RefinementError> {
    let n = m.face_size(f);
    if !is_eligible_size(n) {
        return Err(RefinementError::WrongFaceSize { face: f, size: n });
    }
    let t = Target::Face(f);
    let column = d.pairing.column(t);
    if column.is_empty() {
        return Err(RefinementError::ZeroMass(f));
    }
    let big = matches!(n, 40 | 41);
    let three_n = SideVector::new(3, n);
    let on_face: BTreeSet<VertexId> = m.fverts(f).into_iter().collect();
    let mut shares: BTreeMap<(VertexId, Slot), Rational> = BTreeMap::new();
    for (v, w) in &column {
        let mut slots: Vec<(Slot, Rational)> = Vec::new();
        let fv = m.vtype(*v);
        if on_face.contains(v) && fv.contains(3) {
            let local: Vec<EdgeId> = m
                .face_darts(f)
                .iter()
                .filter(|&&dd| m.origin(dd) == *v || m.head(dd) == *v)
                .map(|&dd| m.edge_of(dd))
                .filter(|&e| m.etype(e) == three_n)
                .collect();
            if fv.is(&[3, 3, n]) || fv.is(&[3, 3, 3, n]) {
                for e in local {
                    slots.push((Slot::Edge(e), w / Rational::from_integer(2.into())));
                }
            } else if local.len() == 1 {
                slots.push((Slot::Edge(local[0]), w.clone()));
            }
        } else {
            let is_special = d
                .pairing
                .provenance(*v, t)
                .iter()
                .any(|e| e.share.part == Part::Pi2);
            if is_special {
                let via_triangle = fv.is(&[3, 6, 7]) || fv.is(&[3, 7, 7]) || !big;
                match (via_triangle, special_edge(m, *v, f)) {
                    (true, Some(e)) => slots.push((Slot::Edge(e), w.clone())),
                    _ if big => slots.push((Slot::Bucket, w.clone())),
                    _ => {}
                }
            }
        }
        let got = slots.iter().fold(zero(), |a, (_, x)| a + x);
        if got != *w {
            return Err(RefinementError::RowMismatch { vertex: *v, got: exact(&got), want: exact(w) });
        }
        for (s, x) in slots {
            *shares.entry((*v, s)).or_insert_with(zero) += x;
        }
    }
    let mut slot_c: BTreeMap<Slot, Rational> = BTreeMap::new();
    for e in m.fedges(f) {
        if m.etype(e) == three_n {
            slot_c.insert(Slot::Edge(e), zero());
        }
    }
    if big {
        slot_c.insert(Slot::Bucket, zero());
    }
    for ((v, s), x) in &shares {
        *slot_c.entry(*s).or_insert_with(zero) += &d.excess[*v] * x;
    }
    Ok(EdgeDecomposition { face: f, size: n, shares, slot_c, c_face: d.contribution(t).c.clone() })
}

/// Decompositions of every eligible face with mass.
pub fn all_refinements(m: &PlanarMap, d: &Discharge) -> Vec<Result<EdgeDecomposition, RefinementError>> {
    (0..m.num_faces())
        .filter(|&f| is_eligible_size(m.face_size(f)))
        .map(|f| edge_refinement(m, d, f))
        .filter(|r| !matches!(r, Err(RefinementError::ZeroMass(_))))
        .collect()
}
