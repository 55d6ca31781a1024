//! The pairing `π = π₁ + π₂`: each vertex splits a unit of mass over
//! discharge faces and the two auxiliary targets `F∂` and `F∂∂`.

use crate::classification::{classify_with, mark_alpha_beta, ClassError, SemiShare, VertexClass};
use crate::map::{FaceId, PlanarMap, VertexId};
use crate::rational::{exact, one, q, zero, Rational};
use crate::rules::{RuleError, RuleRegistry};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Face sizes that never receive mass.
pub const NON_DISCHARGE_SIZES: [usize; 7] = [3, 4, 6, 8, 9, 10, 12];

pub fn is_discharge_size(n: usize) -> bool {
    !NON_DISCHARGE_SIZES.contains(&n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Target {
    Face(FaceId),
    FPartial,
    FDoublePartial,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Face(id) => write!(f, "face {id}"),
            Target::FPartial => f.write_str("F∂"),
            Target::FDoublePartial => f.write_str("F∂∂"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Part {
    Pi1,
    Pi2,
}

/// One contribution of a vertex's row, tagged with the rule that made it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Share {
    pub target: Target,
    pub amount: Rational,
    pub part: Part,
    pub rule: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub vertex: VertexId,
    pub share: Share,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("unclassifiable vertex: {0}")]
    UnclassifiableVertex(#[from] ClassError),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("vertex {vertex} is {class} but no rule handles it")]
    NoRule { vertex: VertexId, class: String },
    #[error("vertex {vertex} is matched by several rules: {rules:?}")]
    RuleConflict { vertex: VertexId, rules: Vec<&'static str> },
}

#[derive(Debug, Clone)]
pub struct Pairing {
    pub classes: Vec<VertexClass>,
    pub entries: Vec<Entry>,
    rows: Vec<BTreeMap<Target, Rational>>,
}

impl Pairing {
    /// `π(v, t)`.
    pub fn get(&self, v: VertexId, t: Target) -> Rational {
        self.rows[v].get(&t).cloned().unwrap_or_else(zero)
    }

    /// Accumulated row of `v`.
    pub fn row(&self, v: VertexId) -> &BTreeMap<Target, Rational> {
        &self.rows[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.rows.len()
    }

    pub fn row_sum(&self, v: VertexId) -> Rational {
        self.rows[v].values().fold(zero(), |a, b| a + b)
    }

    /// All vertices with a nonzero entry at `t`, with their weights.
    pub fn column(&self, t: Target) -> Vec<(VertexId, Rational)> {
        (0..self.rows.len())
            .filter_map(|v| self.rows[v].get(&t).map(|w| (v, w.clone())))
            .filter(|(_, w)| *w != zero())
            .collect()
    }

    /// Vertices with a π₂ share on an actual face.
    pub fn special_vertices(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .entries
            .iter()
            .filter(|e| e.share.part == Part::Pi2 && matches!(e.share.target, Target::Face(_)))
            .map(|e| e.vertex)
            .collect();
        out.dedup();
        out
    }

    /// Entries of `v` that point at `t`.
    pub fn provenance(&self, v: VertexId, t: Target) -> Vec<&Entry> {
        self.entries.iter().filter(|e| e.vertex == v && e.share.target == t).collect()
    }
}

/// Shares of the table part for vertices not handled by a special rule.
fn table_shares(m: &PlanarMap, v: VertexId, class: &VertexClass) -> Option<Vec<Share>> {
    let faces = m.vfaces(v);
    let sized = |n: usize| -> Vec<FaceId> { faces.iter().copied().filter(|&f| m.face_size(f) == n).collect() };
    // a share to size n is spread evenly over the incidences with n-faces
    let spread = |n: usize, amount: Rational, rule: &'static str| -> Vec<Share> {
        let fs = sized(n);
        let k = fs.len() as i64;
        fs.into_iter()
            .map(|f| Share { target: Target::Face(f), amount: amount.clone() / q(k, 1), part: Part::Pi1, rule })
            .collect()
    };
    let whole = |t: Target, rule: &'static str| vec![Share { target: t, amount: one(), part: Part::Pi1, rule }];
    Some(match class {
        VertexClass::DFace => whole(Target::FPartial, "table-d-face"),
        VertexClass::DDFace => whole(Target::FDoublePartial, "table-dd-face"),
        VertexClass::Big => whole(Target::FDoublePartial, "table-big"),
        VertexClass::Regular { n } => spread(*n, one(), "table-regular"),
        VertexClass::SemiRegular(s) => match s {
            SemiShare::HalfAndDD { n } => {
                let mut out = spread(*n, q(1, 2), "table-semi-regular");
                out.push(Share { target: Target::FDoublePartial, amount: q(1, 2), part: Part::Pi1, rule: "table-semi-regular" });
                out
            }
            SemiShare::HalfHalf { n, .. } => spread(*n, one(), "table-semi-regular"),
            SemiShare::Split { m: a, n: b, r } => {
                let mut out = spread(*a, r.clone(), "table-semi-regular");
                out.extend(spread(*b, one() - r, "table-semi-regular"));
                out
            }
            SemiShare::AlphaBetaPending => return None,
        },
        VertexClass::TS | VertexClass::PotentiallySpecial { .. } => return None,
    })
}

/// Builds the pairing with the standard rule set.
pub fn build_pairing(m: &PlanarMap) -> Result<Pairing, PairingError> {
    build_pairing_with(m, &RuleRegistry::standard())
}

pub fn build_pairing_with(m: &PlanarMap, registry: &RuleRegistry) -> Result<Pairing, PairingError> {
    let marks = mark_alpha_beta(m);
    let mut classes = Vec::with_capacity(m.num_vertices());
    let mut entries = Vec::new();
    let mut rows = vec![BTreeMap::new(); m.num_vertices()];
    for v in 0..m.num_vertices() {
        let class = classify_with(m, v, Some(&marks))?;
        let shares = match table_shares(m, v, &class) {
            Some(s) => s,
            None => {
                let rules = registry.matching(&class);
                match rules.as_slice() {
                    [] => return Err(PairingError::NoRule { vertex: v, class: class.to_string() }),
                    [rule] => rule.apply(m, v)?,
                    many => {
                        return Err(PairingError::RuleConflict {
                            vertex: v,
                            rules: many.iter().map(|r| r.name()).collect(),
                        })
                    }
                }
            }
        };
        for s in shares {
            if s.amount == zero() {
                continue;
            }
            *rows[v].entry(s.target).or_insert_with(zero) += &s.amount;
            entries.push(Entry { vertex: v, share: s });
        }
        classes.push(class);
    }
    Ok(Pairing { classes, entries, rows })
}

/// Serializable view of one entry.
#[derive(Debug, Clone, Serialize)]
pub struct EntryView {
    pub vertex: VertexId,
    pub target: String,
    pub amount: String,
    pub part: Part,
    pub rule: &'static str,
}

impl From<&Entry> for EntryView {
    fn from(e: &Entry) -> Self {
        EntryView {
            vertex: e.vertex,
            target: e.share.target.to_string(),
            amount: exact(&e.share.amount),
            part: e.share.part,
            rule: e.share.rule,
        }
    }
}
