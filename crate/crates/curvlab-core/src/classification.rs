//! Vertex types and the map-dependent predicates the pairing needs:
//! α/β vertices, TS neighbourhoods and red triangles.

use crate::admissibility::is_admissible;
use crate::map::{EdgeId, FaceId, FaceVector, MapError, PlanarMap, VertexId};
use crate::rational::{q, Rational};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("vertex {vertex} has inadmissible face vector {fv}")]
    InadmissibleVertex { vertex: VertexId, fv: FaceVector },
    #[error("vertex {0} is not a TS-vertex")]
    NotTSVertex(VertexId),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Rule families for potentially-special vertices, named by the face
/// vector pattern they cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SpecialFamily {
    /// `(3,3,a)`, `a ∈ {11,12}`
    R33a,
    /// `(3,4,a)`, `5 ≤ a ≤ 41`
    R34a,
    /// `(3,6,7)`, `(3,7,a)` for `7 ≤ a ≤ 10`, `(3,a,b)` for `8 ≤ a ≤ b ≤ 10`
    R3ab,
    R456,
    /// `(3,3,3,a)`, `5 ≤ a ≤ 12`
    R333a,
    /// `(3,3,4,a)`, `a ∈ {5,6,7}`
    R334a,
    R3445,
    R33335,
}

impl SpecialFamily {
    pub const ALL: [SpecialFamily; 8] = [
        SpecialFamily::R33a,
        SpecialFamily::R34a,
        SpecialFamily::R3ab,
        SpecialFamily::R456,
        SpecialFamily::R333a,
        SpecialFamily::R334a,
        SpecialFamily::R3445,
        SpecialFamily::R33335,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialFamily::R33a => "rule-(3,3,a)",
            SpecialFamily::R34a => "rule-(3,4,a)",
            SpecialFamily::R3ab => "rule-(3,a,b)",
            SpecialFamily::R456 => "rule-(4,5,6)",
            SpecialFamily::R333a => "rule-(3,3,3,a)",
            SpecialFamily::R334a => "rule-(3,3,4,a)",
            SpecialFamily::R3445 => "rule-(3,4,4,5)",
            SpecialFamily::R33335 => "rule-(3,3,3,3,5)",
        }
    }
}

/// How a semi-regular vertex splits its unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SemiShare {
    /// Case (i): ½ to the `n`-face, ½ to `F∂∂`.
    HalfAndDD { n: usize },
    /// Cases (ii)/(iii): ½ to each incidence with an `n`-face.
    /// `same_face` tells them apart once the map is consulted.
    HalfHalf { n: usize, same_face: Option<bool> },
    /// Case (iv): `r` to the `m`-face, `1 - r` to the `n`-face.
    Split {
        m: usize,
        n: usize,
        #[serde(serialize_with = "ser_rat")]
        r: Rational,
    },
    /// `(3,11,13)` before the α/β marking is known.
    AlphaBetaPending,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational::exact(r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum VertexClass {
    DFace,
    DDFace,
    Big,
    Regular { n: usize },
    SemiRegular(SemiShare),
    TS,
    PotentiallySpecial { family: SpecialFamily },
}

impl VertexClass {
    pub fn tag(&self) -> &'static str {
        match self {
            VertexClass::DFace => "d-face",
            VertexClass::DDFace => "dd-face",
            VertexClass::Big => "big",
            VertexClass::Regular { .. } => "regular",
            VertexClass::SemiRegular(_) => "semi-regular",
            VertexClass::TS => "TS",
            VertexClass::PotentiallySpecial { .. } => "potentially-special",
        }
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::Regular { n } => write!(f, "regular [{n}]"),
            VertexClass::PotentiallySpecial { family } => write!(f, "potentially-special {}", family.name()),
            other => f.write_str(other.tag()),
        }
    }
}

/// Type of an admissible face vector, ignoring the map. `(3,11,13)` comes
/// back as [`SemiShare::AlphaBetaPending`] and the multiplicity-two
/// semi-regular cases with `same_face: None`.
pub fn classify_vtype(fv: &FaceVector) -> Option<VertexClass> {
    use SpecialFamily::*;
    use VertexClass::*;
    if !matches!(is_admissible(fv), Ok(true)) {
        return None;
    }
    let s = fv.0.as_slice();
    if s.iter().any(|&x| x >= 42) {
        return Some(Big);
    }
    if s.iter().all(|&x| x == 3 || x == 4) {
        return Some(TS);
    }
    let reg = |n: usize| Some(Regular { n });
    let ps = |family: SpecialFamily| Some(PotentiallySpecial { family });
    let semi = |s: SemiShare| Some(SemiRegular(s));
    let half = |m: usize, n: usize| semi(SemiShare::Split { m, n, r: q(1, 2) });
    let pair = |n: usize| semi(SemiShare::HalfHalf { n, same_face: None });
    match *s {
        [5, 6, 7] | [3, 3, 5, 7] => Some(DFace),
        [3, 3, a] => match a {
            5..=10 | 19 => Some(DDFace),
            11 | 12 => ps(R33a),
            _ => reg(a),
        },
        [3, 4, _] => ps(R34a),
        [3, 5, a] => match a {
            5..=10 | 12 | 13 => Some(DDFace),
            11 => semi(SemiShare::HalfAndDD { n: 11 }),
            14..=19 => half(5, a),
            20..=39 => semi(SemiShare::HalfAndDD { n: a }),
            _ => reg(a),
        },
        [3, 6, a] => match a {
            7 => ps(R3ab),
            11 => reg(11),
            14..=18 | 20..=41 => reg(a),
            _ => Some(DDFace),
        },
        [3, b @ 7..=10, a] => match a {
            _ if a <= 10 => ps(R3ab),
            11 => reg(11),
            12 | 13 | 19 => Some(DDFace),
            _ => {
                debug_assert!(b <= 10);
                reg(a)
            }
        },
        [3, 11, 11] => pair(11),
        [3, 11, 12] => reg(11),
        [3, 11, 13] => semi(SemiShare::AlphaBetaPending),
        [3, 3, 3, a] => match a {
            5..=12 => ps(R333a),
            19 => Some(DDFace),
            _ => reg(a),
        },
        [3, 3, 4, a] => match a {
            5..=7 => ps(R334a),
            8..=10 => Some(DDFace),
            _ => reg(11),
        },
        [3, 3, 5, _] => Some(DDFace),
        [3, 4, 4, 5] => ps(R3445),
        [3, 3, 3, 3, 5] => ps(R33335),
        [4, 4, a] => match a {
            5 | 7 | 11 | 13 | 19 => reg(a),
            _ => Some(DDFace),
        },
        [4, 5, a] => match a {
            5 => pair(5),
            6 => ps(R456),
            7 | 11 => half(5, a),
            19 => semi(SemiShare::Split { m: 5, n: 19, r: q(3, 4) }),
            _ => reg(5),
        },
        [4, 6, a] => match a {
            7 => reg(7),
            11 => reg(11),
            _ => Some(DDFace),
        },
        [4, 7, 7] => pair(7),
        [4, 7, _] => reg(7),
        [5, 5, _] | [5, 6, 6] => Some(DDFace),
        _ => None,
    }
}

/// Blue edges: `(11,13)` edges between two `(3,11,13)` vertices whose
/// triangles both face an 11-gon.
pub fn blue_edges(m: &PlanarMap) -> BTreeSet<EdgeId> {
    let mut out = BTreeSet::new();
    for e in 0..m.num_edges() {
        if m.etype(e) != crate::map::SideVector(11, 13) {
            continue;
        }
        let (a, b) = m.everts(e);
        if [a, b].iter().all(|&v| m.vtype(v).is(&[3, 11, 13]) && triangle_opp_size(m, v) == Some(11)) {
            out.insert(e);
        }
    }
    out
}

/// Size of `opp(v, τ)` for the unique triangle `τ` at `v`.
fn triangle_opp_size(m: &PlanarMap, v: VertexId) -> Option<usize> {
    let d = m.darts_at(v).iter().copied().find(|&d| m.face_size(m.face_of(d)) == 3)?;
    m.opp_at(d).ok().map(|f| m.face_size(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlphaBeta {
    Alpha,
    Beta,
}

/// α/β marking of every `(3,11,13)` vertex, indexed by vertex id.
pub fn mark_alpha_beta(m: &PlanarMap) -> Vec<Option<AlphaBeta>> {
    let mut marks: Vec<Option<AlphaBeta>> = (0..m.num_vertices())
        .map(|v| m.vtype(v).is(&[3, 11, 13]).then_some(AlphaBeta::Alpha))
        .collect();
    for e in blue_edges(m) {
        let (a, b) = m.everts(e);
        marks[a] = Some(AlphaBeta::Beta);
        marks[b] = Some(AlphaBeta::Beta);
    }
    marks
}

/// Map-aware classification.
pub fn classify(m: &PlanarMap, v: VertexId) -> Result<VertexClass, ClassError> {
    m.check_vertex(v)?;
    let marks = if m.vtype(v).is(&[3, 11, 13]) { Some(mark_alpha_beta(m)) } else { None };
    classify_with(m, v, marks.as_deref())
}

/// Like [`classify`] but reuses a precomputed α/β marking.
pub fn classify_with(
    m: &PlanarMap,
    v: VertexId,
    marks: Option<&[Option<AlphaBeta>]>,
) -> Result<VertexClass, ClassError> {
    let fv = m.vtype(v);
    let class = classify_vtype(&fv).ok_or(ClassError::InadmissibleVertex { vertex: v, fv: fv.clone() })?;
    Ok(match class {
        VertexClass::SemiRegular(SemiShare::AlphaBetaPending) => {
            let mark = match marks {
                Some(ms) => ms[v],
                None => mark_alpha_beta(m)[v],
            };
            let r = match mark {
                Some(AlphaBeta::Beta) => q(3, 7),
                _ => q(1, 7),
            };
            VertexClass::SemiRegular(SemiShare::Split { m: 11, n: 13, r })
        }
        VertexClass::SemiRegular(SemiShare::HalfHalf { n, .. }) => {
            let faces: BTreeSet<FaceId> =
                m.vfaces(v).into_iter().filter(|&f| m.face_size(f) == n).collect();
            VertexClass::SemiRegular(SemiShare::HalfHalf { n, same_face: Some(faces.len() == 1) })
        }
        other => other,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TSData {
    pub ets: BTreeSet<EdgeId>,
    pub fts: BTreeSet<FaceId>,
    pub nts: usize,
}

pub fn ts_data(m: &PlanarMap, v: VertexId) -> Result<TSData, ClassError> {
    m.check_vertex(v)?;
    if !m.cyclic_vtype(v).iter().all(|&s| s == 3 || s == 4) {
        return Err(ClassError::NotTSVertex(v));
    }
    let mut ets = BTreeSet::new();
    for &d in m.darts_at(v) {
        for &fd in m.face_darts(m.face_of(d)) {
            let (a, b) = (m.origin(fd), m.head(fd));
            if a != v && b != v {
                ets.insert(m.edge_of(fd));
            }
        }
    }
    let mut fts = BTreeSet::new();
    for &e in &ets {
        let (f1, f2) = m.efaces(e);
        for f in [f1, f2] {
            if matches!(m.face_size(f), 11 | 40 | 41) {
                fts.insert(f);
            }
        }
    }
    let nts = fts.len();
    Ok(TSData { ets, fts, nts })
}

/// Triangles all of whose corners are `(3,3,5,7)`.
pub fn red_triangles(m: &PlanarMap) -> BTreeSet<FaceId> {
    (0..m.num_faces())
        .filter(|&f| {
            m.face_size(f) == 3 && m.fverts(f).iter().all(|&v| m.vtype(v).is(&[3, 3, 5, 7]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(s: &[usize]) -> VertexClass {
        classify_vtype(&FaceVector::of(s)).unwrap()
    }

    #[test]
    fn quoted_rows() {
        assert_eq!(class(&[3, 3, 5, 7]), VertexClass::DFace);
        assert_eq!(class(&[4, 4, 30]), VertexClass::DDFace);
        assert_eq!(class(&[3, 4, 4, 4]), VertexClass::TS);
        assert_eq!(class(&[3, 8, 23]), VertexClass::Regular { n: 23 });
        assert_eq!(class(&[4, 5, 12]), VertexClass::Regular { n: 5 });
        assert_eq!(class(&[3, 3, 42]), VertexClass::Big);
        assert_eq!(
            class(&[4, 5, 19]),
            VertexClass::SemiRegular(SemiShare::Split { m: 5, n: 19, r: q(3, 4) })
        );
        assert_eq!(class(&[3, 9, 9]), VertexClass::PotentiallySpecial { family: SpecialFamily::R3ab });
        assert!(classify_vtype(&FaceVector::of(&[3, 7, 42])).is_none());
    }
}
