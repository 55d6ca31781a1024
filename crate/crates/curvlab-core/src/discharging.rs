//! Per-target contributions `c(t) = Σ_v c_v π(v,t)` and the global audit.
//!
//! `c_v` is the excess `K(v) - 2/209`. Summing `c(t)` over all targets gives
//! `Σ_v c_v = 2(209 - V)/209`, so a graph with more than 208 vertices would
//! need some target to fall below its bound.

use crate::curvature::{critical, curvature_of};
use crate::map::PlanarMap;
use crate::pairing::{build_pairing, is_discharge_size, Pairing, PairingError, Target};
use crate::rational::{exact, int, one, q, zero, Exact, Rational};
use crate::report::{AuditReport, Check, Section};
use num_traits::Signed;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceContribution {
    pub mass: Rational,
    pub c: Rational,
    pub c_plus: Rational,
    pub c_minus: Rational,
}

pub fn excesses(m: &PlanarMap) -> Vec<Rational> {
    (0..m.num_vertices()).map(|v| curvature_of(&m.cyclic_vtype(v)) - critical()).collect()
}

pub fn face_contribution(m: &PlanarMap, p: &Pairing, t: Target) -> FaceContribution {
    contribution_with(&excesses(m), p, t)
}

fn contribution_with(cv: &[Rational], p: &Pairing, t: Target) -> FaceContribution {
    let mut out = FaceContribution { mass: zero(), c: zero(), c_plus: zero(), c_minus: zero() };
    for (v, w) in p.column(t) {
        let term = &cv[v] * &w;
        out.mass += &w;
        if term.is_negative() {
            out.c_minus += &term;
        } else {
            out.c_plus += &term;
        }
        out.c += term;
    }
    out
}

/// Lower bound on `c(t)` for targets with nonzero mass, by size class.
pub fn prop_bound(m: &PlanarMap, t: Target) -> Option<(Rational, &'static str)> {
    match t {
        Target::FPartial => Some((q(-2, 209), "Prop.3.4(ix)")),
        Target::FDoublePartial => Some((q(6, 10000), "Prop.3.4(viii)")),
        Target::Face(f) => match m.face_size(f) {
            5 => Some((q(2, 1000), "Prop.3.4(i)")),
            7 => Some((q(95, 10000), "Prop.3.4(ii)")),
            11 => Some((q(3, 10000), "Prop.3.4(iii)")),
            13 => Some((q(3, 100000), "Prop.3.4(iv)")),
            19 => Some((q(65, 10000), "Prop.3.4(vi)")),
            40 | 41 => Some((q(11, 1000), "Prop.3.4(vii)")),
            n if (14..=39).contains(&n) => Some((q(2, 10000), "Prop.3.4(v)")),
            _ => None,
        },
    }
}

/// `c(F∂) = -2Z/(210·209)` where `Z` counts ∂-vertices.
pub fn fpartial_closed_form(z: usize) -> Rational {
    q(-2 * z as i64, 210 * 209)
}

#[derive(Debug, Clone, Serialize)]
pub struct TargetRow {
    pub target: String,
    pub size: Option<usize>,
    pub mass: Exact,
    pub c: Exact,
    pub c_plus: Exact,
    pub c_minus: Exact,
    pub bound: Option<Exact>,
    pub citation: Option<&'static str>,
    pub meets_bound: bool,
}

#[derive(Debug, Clone)]
pub struct Discharge {
    pub pairing: Pairing,
    pub excess: Vec<Rational>,
    pub targets: Vec<(Target, FaceContribution)>,
}

impl Discharge {
    pub fn new(m: &PlanarMap) -> Result<Self, PairingError> {
        let pairing = build_pairing(m)?;
        let excess = excesses(m);
        let mut targets: Vec<Target> = (0..m.num_faces()).map(Target::Face).collect();
        targets.push(Target::FPartial);
        targets.push(Target::FDoublePartial);
        let targets = targets.into_iter().map(|t| (t, contribution_with(&excess, &pairing, t))).collect();
        Ok(Discharge { pairing, excess, targets })
    }

    pub fn contribution(&self, t: Target) -> &FaceContribution {
        &self.targets.iter().find(|(x, _)| *x == t).expect("target exists").1
    }

    pub fn total(&self) -> Rational {
        self.targets.iter().fold(zero(), |a, (_, c)| a + &c.c)
    }

    pub fn rows(&self, m: &PlanarMap) -> Vec<TargetRow> {
        self.targets
            .iter()
            .map(|(t, c)| {
                let bound = prop_bound(m, *t);
                let meets = c.mass == zero() || bound.as_ref().map_or(true, |(b, _)| c.c >= *b);
                TargetRow {
                    target: t.to_string(),
                    size: match t {
                        Target::Face(f) => Some(m.face_size(*f)),
                        _ => None,
                    },
                    mass: (&c.mass).into(),
                    c: (&c.c).into(),
                    c_plus: (&c.c_plus).into(),
                    c_minus: (&c.c_minus).into(),
                    bound: bound.as_ref().map(|(b, _)| b.into()),
                    citation: bound.map(|(_, s)| s),
                    meets_bound: meets,
                }
            })
            .collect()
    }
}

/// Row sums, the global identity, every bound and the `F∂` count.
pub fn global_audit(m: &PlanarMap) -> AuditReport {
    let d = match Discharge::new(m) {
        Ok(d) => d,
        Err(e) => {
            let mut s = Section::new("pairing");
            s.push(Check::new("build-pairing", "Sec.4-5", false, e.to_string()));
            return AuditReport::from_sections(vec![s]);
        }
    };
    audit_discharge(m, &d)
}

pub fn audit_discharge(m: &PlanarMap, d: &Discharge) -> AuditReport {
    let p = &d.pairing;
    let mut pairing = Section::new("pairing");
    let bad_rows: Vec<String> = (0..m.num_vertices())
        .filter(|&v| p.row_sum(v) != one())
        .map(|v| format!("v{v} {} sums to {}", m.vtype(v), exact(&p.row_sum(v))))
        .collect();
    pairing.push(
        Check::new("row-sums", "Eq.(2)", bad_rows.is_empty(), format!("{} vertices checked", m.num_vertices()))
            .with_witnesses(bad_rows),
    );
    let negative: Vec<String> = p
        .entries
        .iter()
        .filter(|e| e.share.amount.is_negative())
        .map(|e| format!("v{} -> {}", e.vertex, e.share.target))
        .collect();
    pairing.push(Check::new("non-negative", "Eq.(2)", negative.is_empty(), "all entries >= 0").with_witnesses(negative));
    let stray: Vec<String> = p
        .entries
        .iter()
        .filter_map(|e| match e.share.target {
            Target::Face(f) if !is_discharge_size(m.face_size(f)) => {
                Some(format!("v{} -> face {f} of size {} via {}", e.vertex, m.face_size(f), e.share.rule))
            }
            _ => None,
        })
        .collect();
    pairing.push(Check::new("discharge-faces-only", "Sec.3", stray.is_empty(), "mass only on discharge faces").with_witnesses(stray));

    let mut identity = Section::new("curvature");
    let total = d.total();
    let v = m.num_vertices() as i64;
    let expected = int(2) * q(209 - v, 209);
    identity.push(Check::new(
        "global-identity",
        "Eq.(4)",
        total == expected,
        format!("sum c = {}, 2(209-V)/209 = {}", exact(&total), exact(&expected)),
    ));

    let mut bounds = Section::new("bounds");
    let mut failed = Vec::new();
    let mut checked = 0;
    for row in d.rows(m) {
        if row.bound.is_some() && row.mass.exact != "0" {
            checked += 1;
        }
        if !row.meets_bound {
            failed.push(format!(
                "{} (size {:?}): c = {} < {} [{}]",
                row.target,
                row.size,
                row.c,
                row.bound.as_ref().map(|b| b.exact.clone()).unwrap_or_default(),
                row.citation.unwrap_or("")
            ));
        }
    }
    bounds.push(
        Check::new("prop-3.4", "Prop.3.4", failed.is_empty(), format!("{checked} targets with mass checked"))
            .with_witnesses(failed),
    );
    let z = p.column(Target::FPartial).len();
    let cp = &d.contribution(Target::FPartial).c;
    let closed = fpartial_closed_form(z);
    bounds.push(Check::new(
        "f-partial",
        "Eq.(5)",
        *cp == closed && z <= 210,
        format!("Z = {z}, c(F∂) = {} (closed form {})", exact(cp), exact(&closed)),
    ));
    AuditReport::from_sections(vec![pairing, identity, bounds])
}
