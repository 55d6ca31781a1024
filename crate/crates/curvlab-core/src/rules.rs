//! Special rules: the geometric part of the pairing for TS-vertices and
//! potentially-special vertices.
//!
//! Each rule implements [`SpecialRule`] and is looked up by name in a
//! [`RuleRegistry`]. A rule returns the vertex's complete row (its table
//! share and its special share), so the row sum can be checked locally.

use crate::classification::{ts_data, SpecialFamily, VertexClass};
use crate::map::{DartId, FaceId, PlanarMap, VertexId};
use crate::pairing::{Part, Share, Target};
use crate::rational::{one, q, Rational};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("vertex {vertex}: conflicting special targets under {rule}: {detail}")]
    RuleConflict { vertex: VertexId, rule: &'static str, detail: String },
    #[error("vertex {vertex}: {rule} expects {expected}")]
    Shape { vertex: VertexId, rule: &'static str, expected: &'static str },
}

pub trait SpecialRule: Send + Sync {
    fn name(&self) -> &'static str;
    fn matches(&self, class: &VertexClass) -> bool;
    fn apply(&self, m: &PlanarMap, v: VertexId) -> Result<Vec<Share>, RuleError>;
}

pub struct RuleRegistry {
    rules: Vec<Box<dyn SpecialRule>>,
}

impl RuleRegistry {
    pub fn empty() -> Self {
        RuleRegistry { rules: Vec::new() }
    }

    /// All nine rules.
    pub fn standard() -> Self {
        let mut r = RuleRegistry::empty();
        r.register(Box::new(TsRule));
        r.register(Box::new(Rule33a));
        r.register(Box::new(Rule34a));
        r.register(Box::new(Rule3ab));
        r.register(Box::new(Rule456));
        r.register(Box::new(Rule333a));
        r.register(Box::new(Rule334a));
        r.register(Box::new(Rule3445));
        r.register(Box::new(Rule33335));
        r
    }

    pub fn register(&mut self, rule: Box<dyn SpecialRule>) {
        self.rules.retain(|r| r.name() != rule.name());
        self.rules.push(rule);
    }

    pub fn get(&self, name: &str) -> Option<&dyn SpecialRule> {
        self.rules.iter().find(|r| r.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.rules.iter().map(|r| r.name()).collect()
    }

    /// Every rule claiming this class. More than one is a conflict.
    pub fn matching(&self, class: &VertexClass) -> Vec<&dyn SpecialRule> {
        self.rules.iter().filter(|r| r.matches(class)).map(|b| b.as_ref()).collect()
    }
}

impl Default for RuleRegistry {
    fn default() -> Self {
        RuleRegistry::standard()
    }
}

// ---- local geometry at a vertex -------------------------------------------

/// Corners of `v`: `darts[i]` enters face `faces[i]`; dart `i` separates
/// faces `i` and `i+1`.
struct Star<'a> {
    m: &'a PlanarMap,
    darts: Vec<DartId>,
    sizes: Vec<usize>,
}

impl<'a> Star<'a> {
    fn new(m: &'a PlanarMap, v: VertexId) -> Self {
        let darts = m.darts_at(v).to_vec();
        let sizes = darts.iter().map(|&d| m.face_size(m.face_of(d))).collect();
        Star { m, darts, sizes }
    }

    fn k(&self) -> usize {
        self.darts.len()
    }

    fn at(&self, i: isize) -> usize {
        i.rem_euclid(self.k() as isize) as usize
    }

    fn face(&self, i: isize) -> FaceId {
        self.m.face_of(self.darts[self.at(i)])
    }

    fn dart(&self, i: isize) -> DartId {
        self.darts[self.at(i)]
    }

    /// First corner with a face of size `n`.
    fn index_of(&self, n: usize) -> Option<isize> {
        self.sizes.iter().position(|&s| s == n).map(|i| i as isize)
    }

    fn indices_of(&self, n: usize) -> Vec<isize> {
        (0..self.k()).filter(|&i| self.sizes[i] == n).map(|i| i as isize).collect()
    }

    fn opp(&self, i: isize) -> FaceId {
        self.m.opp_at(self.dart(i)).expect("corner is a triangle")
    }

    /// Walks the square at corner `i` starting from its edge shared with the
    /// neighbouring corner `toward` (`i-1` or `i+1`). Returns the faces
    /// across `v1v2` and `v2v3`, and the far end `v1` of the shared edge.
    fn square_walk(&self, i: isize, toward: isize) -> (FaceId, FaceId, VertexId) {
        let m = self.m;
        let d = self.dart(i);
        let (s1, s2) = (m.succ(d), m.succ(m.succ(d)));
        if self.at(toward) == self.at(i + 1) {
            // shared edge is d itself
            (m.across(s1), m.across(s2), m.head(d))
        } else {
            let v1 = m.head(m.rot_inv(d));
            (m.across(s2), m.across(s1), v1)
        }
    }

    /// Endpoint of the edge between corners `i` and `i+1`.
    fn nbr_between(&self, i: isize) -> VertexId {
        self.m.head(self.dart(i))
    }
}

fn eleven_set(m: &PlanarMap, faces: &[FaceId]) -> Vec<FaceId> {
    let set: BTreeSet<FaceId> = faces.iter().copied().filter(|&f| m.face_size(f) == 11).collect();
    set.into_iter().collect()
}

fn pi1(target: Target, amount: Rational, rule: &'static str) -> Share {
    Share { target, amount, part: Part::Pi1, rule }
}

fn pi2(target: Target, amount: Rational, rule: &'static str) -> Share {
    Share { target, amount, part: Part::Pi2, rule }
}

fn conflict(v: VertexId, rule: &'static str, detail: String) -> RuleError {
    RuleError::RuleConflict { vertex: v, rule, detail }
}

fn ps(class: &VertexClass, fam: SpecialFamily) -> bool {
    matches!(class, VertexClass::PotentiallySpecial { family } if *family == fam)
}

/// One special target among `cands` (deduplicated), `amount` to it, or the
/// same amount to `F∂∂` when there is none.
fn single_or_dd(
    v: VertexId,
    rule: &'static str,
    cands: &[FaceId],
    amount: Rational,
) -> Result<Share, RuleError> {
    let set: BTreeSet<FaceId> = cands.iter().copied().collect();
    match set.len() {
        0 => Ok(pi2(Target::FDoublePartial, amount, rule)),
        1 => Ok(pi2(Target::Face(*set.iter().next().unwrap()), amount, rule)),
        _ => Err(conflict(v, rule, format!("distinct candidate faces {set:?}"))),
    }
}

/// `a_v` logic of the `(3,4,6)` and `(3,3,4,6)` rules.
fn half_each(v: VertexId, rule: &'static str, m: &PlanarMap, fs: &[FaceId]) -> Result<Vec<Share>, RuleError> {
    let a = eleven_set(m, fs);
    if a.len() >= 3 {
        return Err(conflict(v, rule, "a_v = 3".into()));
    }
    let mut out: Vec<Share> = a.iter().map(|&f| pi2(Target::Face(f), q(1, 2), rule)).collect();
    let rest = one() - q(a.len() as i64, 2);
    out.push(pi2(Target::FDoublePartial, rest, rule));
    Ok(out)
}

// ---- the rules -------------------------------------------------------------

pub struct TsRule;

impl SpecialRule for TsRule {
    fn name(&self) -> &'static str {
        "rule-TS"
    }

    fn matches(&self, class: &VertexClass) -> bool {
        *class == VertexClass::TS
    }

    fn apply(&self, m: &PlanarMap, v: VertexId) -> Result<Vec<Share>, RuleError> {
        let data = ts_data(m, v).map_err(|_| RuleError::Shape { vertex: v, rule: self.name(), expected: "a TS-vertex" })?;
        if data.nts > 3 {
            return Err(conflict(v, self.name(), format!("n_TS = {}", data.nts)));
        }
        let mut out: Vec<Share> = data.fts.iter().map(|&f| pi2(Target::Face(f), q(1, 3), self.name())).collect();
        out.push(pi2(Target::FDoublePartial, q(3 - data.nts as i64, 3), self.name()));
        Ok(out)
    }
}

pub struct Rule33a;

impl SpecialRule for Rule33a {
    fn name(&self) -> &'static str {
        SpecialFamily::R33a.name()
    }

    fn matches(&self, class: &VertexClass) -> bool {
        ps(class, SpecialFamily::R33a)
    }

    fn apply(&self, m: &PlanarMap, v: VertexId) -> Result<Vec<Share>, RuleError> {
        let st = Star::new(m, v);
        let a = *st.sizes.iter().max().unwrap();
        let opps: Vec<FaceId> = st.indices_of(3).into_iter().map(|i| st.opp(i)).collect();
        let amount = if a == 11 { q(1, 2) } else { one() };
        let mut out = vec![single_or_dd(v, self.name(), &eleven_set(m, &opps), amount)?];
        if a == 11 {
            let f = st.face(st.index_of(11).unwrap());
            out.push(pi1(Target::Face(f), q(1, 2), self.name()));
        }
        Ok(out)
    }
}

pub struct Rule34a;

impl SpecialRule for Rule34a {
    fn name(&self) -> &'static str {
        SpecialFamily::R34a.name()
    }

    fn matches(&self, class: &VertexClass) -> bool {
        ps(class, SpecialFamily::R34a)
    }

    fn apply(&self, m: &PlanarMap, v: VertexId) -> Result<Vec<Share>, RuleError> {
        let st = Star::new(m, v);
        let it = st.index_of(3).unwrap();
        let ik = st.index_of(4).unwrap();
        let a = *st.sizes.iter().max().unwrap();
        let fa = st.face(st.indices_of(a)[0]);
        let f1 = st.opp(it);
        let (f2, f3, _) = st.square_walk(ik, it);
        let mut out = if a == 6 {
            half_each(v, self.name(), m, &[f1, f2, f3])?
        } else {
            let amount = if matches!(a, 8 | 9 | 10 | 12) { one() } else { q(1, 2) };
            vec![single_or_dd(v, self.name(), &eleven_set(m, &[f1, f2]), amount)?]
        };
        if !matches!(a, 6 | 8 | 9 | 10 | 12) {
            out.push(pi1(Target::Face(fa), q(1, 2), self.name()));
        }
        Ok(out)
    }
}

pub struct Rule3ab;

impl SpecialRule for Rule3ab {
    fn name(&self) -> &'static str {
        SpecialFamily::R3ab.name()
    }

    fn matches(&self, class: &VertexClass) -> bool {
        ps(class, SpecialFamily::R3ab)
    }

    fn apply(&self, m: &PlanarMap, v: VertexId) -> Result<Vec<Share>, RuleError> {
        let st = Star::new(m, v);
        let mut s = st.sizes.clone();
        s.sort_unstable();
        let (a, b) = (s[1], s[2]);
        let f = st.opp(st.index_of(3).unwrap());
        let n = m.face_size(f);
        let half = matches!((a, b), (7, 8) | (7, 9));
        let amount = if half { q(1, 2) } else { one() };
        let special = if (a, b) == (6, 7) {
            matches!(n, 40 | 41)
        } else {
            (14..=41).contains(&n) && n != 19
        };
        let target = if special { Target::Face(f) } else { Target::FDoublePartial };
        let mut out = vec![pi2(target, amount, self.name())];
        if half {
            out.push(pi1(Target::Face(st.face(st.index_of(7).unwrap())), q(1, 2), self.name()));
        }
        Ok(out)
    }
}

pub struct Rule456;

impl SpecialRule for Rule456 {
    fn name(&self) -> &'static str {
        SpecialFamily::R456.name()
    }

    fn matches(&self, class: &VertexClass) -> bool {
        ps(class, SpecialFamily::R456)
    }

    fn apply(&self, m: &PlanarMap, v: VertexId) -> Result<Vec<Share>, RuleError> {
        let st = Star::new(m, v);
        let ik = st.index_of(4).unwrap();
        let i6 = st.index_of(6).unwrap();
        let (f1, _, _) = st.square_walk(ik, i6);
        let target = if m.face_size(f1) == 11 { Target::Face(f1) } else { Target::FDoublePartial };
        Ok(vec![
            pi2(target, q(1, 2), self.name()),
            pi1(Target::Face(st.face(st.index_of(5).unwrap())), q(1, 2), self.name()),
        ])
    }
}

pub struct Rule333a;

impl SpecialRule for Rule333a {
    fn name(&self) -> &'static str {
        SpecialFamily::R333a.name()
    }

    fn matches(&self, class: &VertexClass) -> bool {
        ps(class, SpecialFamily::R333a)
    }

    fn apply(&self, m: &PlanarMap, v: VertexId) -> Result<Vec<Share>, RuleError> {
        let st = Star::new(m, v);
        let a = *st.sizes.iter().max().unwrap();
        let i_f = st.index_of(a).unwrap();
        let opps = [st.opp(i_f + 1), st.opp(i_f + 2), st.opp(i_f + 3)];
        let f2 = opps[1];
        let n2 = m.face_size(f2);
        let rule = self.name();
        let mut out = Vec::new();
        match a {
            5 => {
                let target = if matches!(n2, 11 | 40 | 41) { Target::Face(f2) } else { Target::FDoublePartial };
                out.push(pi2(target, one(), rule));
            }
            11 | 12 => {
                let r = if a == 11 { q(1, 3) } else { q(1, 2) };
                let set = eleven_set(m, &opps);
                match set.len() {
                    0 => out.push(pi2(Target::FDoublePartial, r.clone() * q(2, 1), rule)),
                    1 => {
                        out.push(pi2(Target::Face(set[0]), r.clone(), rule));
                        out.push(pi2(Target::FDoublePartial, r.clone(), rule));
                    }
                    2 => {
                        for &f in &set {
                            out.push(pi2(Target::Face(f), r.clone(), rule));
                        }
                    }
                    _ => return Err(conflict(v, rule, "three distinct 11-faces".into())),
                }
                if a == 11 {
                    out.push(pi1(Target::Face(st.face(i_f)), q(1, 3), rule));
                }
            }
            _ => {
                let target = if n2 == 11 { Target::Face(f2) } else { Target::FDoublePartial };
                out.push(pi2(target, one(), rule));
            }
        }
        Ok(out)
    }
}

pub struct Rule334a;

impl SpecialRule for Rule334a {
    fn name(&self) -> &'static str {
        SpecialFamily::R334a.name()
    }

    fn matches(&self, class: &VertexClass) -> bool {
        ps(class, SpecialFamily::R334a)
    }

    fn apply(&self, m: &PlanarMap, v: VertexId) -> Result<Vec<Share>, RuleError> {
        let st = Star::new(m, v);
        let a = *st.sizes.iter().max().unwrap();
        let i_f = st.index_of(a).unwrap();
        let ik = st.index_of(4).unwrap();
        let rule = self.name();
        // ⟨3,3,4,a⟩ has the square next to the a-face; ⟨3,4,3,a⟩ does not
        let adjacent = st.at(ik + 1) == st.at(i_f) || st.at(ik - 1) == st.at(i_f);
        let r = match a {
            5 => q(1, 2),
            7 => q(3, 4),
            _ => one(),
        };
        let mut out = Vec::new();
        if adjacent {
            let it2 = if st.at(ik + 1) == st.at(i_f) { ik - 1 } else { ik + 1 };
            let f1 = st.opp(it2);
            let (f2, f3, _) = st.square_walk(ik, it2);
            if a == 6 {
                out.extend(half_each(v, rule, m, &[f1, f2, f3])?);
            } else {
                out.push(single_or_dd(v, rule, &eleven_set(m, &[f1, f2]), r.clone())?);
            }
        } else {
            out.push(pi2(Target::FDoublePartial, r.clone(), rule));
        }
        if a != 6 {
            out.push(pi1(Target::Face(st.face(i_f)), one() - r, rule));
        }
        Ok(out)
    }
}

fn in_4_5_tail(m: &PlanarMap, w: VertexId) -> bool {
    let fv = m.vtype(w);
    matches!(fv.0.as_slice(), [4, 5, a] if (14..=19).contains(a))
}

pub struct Rule3445;

impl SpecialRule for Rule3445 {
    fn name(&self) -> &'static str {
        SpecialFamily::R3445.name()
    }

    fn matches(&self, class: &VertexClass) -> bool {
        ps(class, SpecialFamily::R3445)
    }

    fn apply(&self, m: &PlanarMap, v: VertexId) -> Result<Vec<Share>, RuleError> {
        let st = Star::new(m, v);
        let it = st.index_of(3).unwrap();
        let i_f = st.index_of(5).unwrap();
        let rule = self.name();
        let f = st.face(i_f);
        // ⟨4,3,4,5⟩: the triangle sits opposite the pentagon
        if st.at(it + 2) == st.at(i_f) {
            let f1 = st.opp(it);
            let w1 = st.nbr_between(i_f);
            let w2 = st.nbr_between(i_f - 1);
            if m.face_size(f1) == 11 && !in_4_5_tail(m, w1) && !in_4_5_tail(m, w2) {
                return Ok(vec![pi2(Target::Face(f1), one(), rule)]);
            }
        }
        Ok(vec![pi1(Target::Face(f), one(), rule)])
    }
}

pub struct Rule33335;

impl SpecialRule for Rule33335 {
    fn name(&self) -> &'static str {
        SpecialFamily::R33335.name()
    }

    fn matches(&self, class: &VertexClass) -> bool {
        ps(class, SpecialFamily::R33335)
    }

    fn apply(&self, m: &PlanarMap, v: VertexId) -> Result<Vec<Share>, RuleError> {
        let st = Star::new(m, v);
        let i_f = st.index_of(5).unwrap();
        let w1 = st.nbr_between(i_f);
        let w4 = st.nbr_between(i_f - 1);
        let f2 = st.opp(i_f + 2);
        let f3 = st.opp(i_f + 3);
        let in_a = |w: VertexId| {
            let fv = m.vtype(w);
            fv.is(&[3, 4, 5]) || fv.is(&[3, 3, 4, 5]) || fv.is(&[3, 4, 4, 5])
        };
        let mut cands = Vec::new();
        if in_a(w1) && m.face_size(f2) == 11 {
            cands.push(f2);
        }
        if in_a(w4) && m.face_size(f3) == 11 {
            cands.push(f3);
        }
        for f in [f2, f3] {
            if matches!(m.face_size(f), 40 | 41) {
                cands.push(f);
            }
        }
        Ok(vec![single_or_dd(v, self.name(), &cands, one())?])
    }
}
