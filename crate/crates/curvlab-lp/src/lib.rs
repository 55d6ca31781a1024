//! Exact linear-programming checks of the discharging weights.
//!
//! The case inequalities of every face-size class are shipped as scenario
//! files (see [`scenario`]). Each is linear in a few adjustable shares, so
//! one can evaluate them at the published weights, perturb a weight and see
//! which cases break, or search the weight box for the point that
//! maximizes the smallest slack.

pub mod scenario;
pub mod simplex;

use curvlab_core::rational::{zero, Exact, Rational};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use scenario::{load_scenarios, parse_scenarios, shipped, Constraint, ScenarioError, ScenarioSet, WeightDecl};

/// Per-class lower bounds on `c(f)` that the case analyses conclude with.
pub const CONCLUSIONS: [(u32, &str); 7] =
    [(6, "0.002"), (7, "0.0095"), (8, "0.0003"), (9, "0.00003"), (10, "0.0002"), (11, "0.0065"), (12, "0.011")];

pub fn conclusion(section: u32) -> Option<Rational> {
    CONCLUSIONS.iter().find(|(s, _)| *s == section).and_then(|(_, q)| curvlab_core::rational::parse(q))
}

fn ser_exact<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Exact::from(r).serialize(s)
}

fn ser_exact_opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    r.as_ref().map(Exact::from).serialize(s)
}

fn ser_named<S: Serializer>(w: &[(String, Rational)], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<(&str, Exact)> = w.iter().map(|(n, r)| (n.as_str(), Exact::from(r))).collect();
    v.serialize(s)
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error("no weights in the box satisfy every case; best margin {best}, violated subset: {iis:?}")]
    Infeasible { best: Exact, weights: Vec<(String, Exact)>, iis: Vec<String> },
    #[error("the linear program is unbounded")]
    Unbounded,
    #[error("weight {0:?} is not declared")]
    UnknownWeight(String),
}

/// The weight box, one `(lo, hi)` per declared weight.
pub fn boxes(set: &ScenarioSet) -> Vec<(Rational, Rational)> {
    set.weights.iter().map(|w| (w.lo.clone(), w.hi.clone())).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Solution {
    #[serde(serialize_with = "ser_named")]
    pub weights: Vec<(String, Rational)>,
    /// Smallest `value - bound` over the constraints; `None` for an empty set.
    #[serde(serialize_with = "ser_exact_opt")]
    pub margin: Option<Rational>,
    /// Constraints whose slack equals the margin.
    pub binding: Vec<String>,
    /// Dual multipliers of the scenario constraints, nonzero ones only.
    #[serde(serialize_with = "ser_named")]
    pub dual: Vec<(String, Rational)>,
    /// The simplex optimum passed its exact primal/dual check.
    pub certified: bool,
}

struct Lp {
    c: Vec<Rational>,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    t0: Rational,
}

/// `max t` over `w` in the box with `value_j(w) - bound_j ≥ t` for every
/// selected constraint, shifted so the origin is feasible: `w = lo + x`,
/// `t = t0 + s`, with `t0` the smallest slack at `w = lo`.
fn build(set: &ScenarioSet, bx: &[(Rational, Rational)], rows: &[usize]) -> Lp {
    let n = set.weights.len();
    let lin: Vec<(Vec<Rational>, Rational)> = rows
        .iter()
        .map(|&j| {
            let c = &set.constraints[j];
            let (a, b) = c.linear(n);
            let k = a.iter().zip(bx).fold(b - &c.bound, |s, (ai, (lo, _))| s + ai * lo);
            (a, k)
        })
        .collect();
    let t0 = lin.iter().map(|(_, k)| k.clone()).min().unwrap_or_else(zero);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (aj, k) in &lin {
        let mut row: Vec<Rational> = aj.iter().map(|v| -v.clone()).collect();
        row.push(Rational::from_integer(1.into()));
        a.push(row);
        b.push(k - &t0);
    }
    for (i, (lo, hi)) in bx.iter().enumerate() {
        let mut row = vec![zero(); n + 1];
        row[i] = Rational::from_integer(1.into());
        a.push(row);
        b.push(hi - lo);
    }
    let mut c = vec![zero(); n + 1];
    c[n] = Rational::from_integer(1.into());
    Lp { c, a, b, t0 }
}

fn optimum(set: &ScenarioSet, bx: &[(Rational, Rational)], rows: &[usize]) -> Result<(simplex::Optimum, bool, Rational), LpError> {
    let lp = build(set, bx, rows);
    match simplex::maximize(&lp.c, &lp.a, &lp.b) {
        simplex::Outcome::Unbounded => Err(LpError::Unbounded),
        simplex::Outcome::Optimal(o) => {
            let ok = simplex::certify(&lp.c, &lp.a, &lp.b, &o);
            let margin = &lp.t0 + &o.value;
            Ok((o, ok, margin))
        }
    }
}

/// Maximizes the smallest slack over the weight box `bx`. A nonpositive
/// optimum means the cases cannot all hold strictly; the error carries an
/// irreducible subset of constraints that already fail together.
pub fn solve_in(set: &ScenarioSet, bx: &[(Rational, Rational)]) -> Result<Solution, LpError> {
    let n = set.weights.len();
    let names = |x: &[Rational]| -> Vec<(String, Rational)> {
        set.weights.iter().zip(x).map(|(w, v)| (w.name.clone(), v.clone())).collect()
    };
    if set.constraints.is_empty() {
        let w: Vec<Rational> = set.weights.iter().map(|w| w.default.clone()).collect();
        return Ok(Solution { weights: names(&w), margin: None, binding: vec![], dual: vec![], certified: true });
    }
    let rows: Vec<usize> = (0..set.constraints.len()).collect();
    let (o, certified, margin) = optimum(set, bx, &rows)?;
    let w: Vec<Rational> = bx.iter().zip(&o.x[..n]).map(|((lo, _), x)| lo + x).collect();
    let slack = |j: usize| set.constraints[j].value(&w) - &set.constraints[j].bound;
    if !margin.is_positive() {
        return Err(LpError::Infeasible {
            best: Exact::from(&margin),
            weights: names(&w).iter().map(|(n, v)| (n.clone(), Exact::from(v))).collect(),
            iis: irreducible(set, bx).into_iter().map(|j| set.constraints[j].label()).collect(),
        });
    }
    Ok(Solution {
        binding: rows.iter().filter(|&&j| slack(j) == margin).map(|&j| set.constraints[j].label()).collect(),
        dual: rows
            .iter()
            .filter(|&&j| !o.dual[j].is_zero())
            .map(|&j| (set.constraints[j].label(), o.dual[j].clone()))
            .collect(),
        weights: names(&w),
        margin: Some(margin),
        certified,
    })
}

pub fn solve(set: &ScenarioSet) -> Result<Solution, LpError> {
    solve_in(set, &boxes(set))
}

/// Deletion filter: drops constraints one at a time while the rest still
/// cannot hold strictly together.
fn irreducible(set: &ScenarioSet, bx: &[(Rational, Rational)]) -> Vec<usize> {
    let fails = |rows: &[usize]| match optimum(set, bx, rows) {
        Ok((_, _, m)) => !m.is_positive(),
        Err(_) => false,
    };
    let mut keep: Vec<usize> = (0..set.constraints.len()).collect();
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        if !trial.is_empty() && fails(&trial) {
            keep = trial;
        } else {
            i += 1;
        }
    }
    keep
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseCheck {
    pub section: u32,
    pub case: String,
    pub cite: String,
    #[serde(serialize_with = "ser_exact")]
    pub value: Rational,
    #[serde(serialize_with = "ser_exact")]
    pub bound: Rational,
    pub quoted: String,
    #[serde(serialize_with = "ser_exact")]
    pub slack: Rational,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionCheck {
    pub section: u32,
    /// Smallest case value: the section's lower bound on `c(f)`.
    #[serde(serialize_with = "ser_exact")]
    pub min_value: Rational,
    pub min_case: String,
    #[serde(serialize_with = "ser_exact_opt")]
    pub conclusion: Option<Rational>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    #[serde(serialize_with = "ser_named")]
    pub weights: Vec<(String, Rational)>,
    pub cases: Vec<CaseCheck>,
    pub sections: Vec<SectionCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass) && self.sections.iter().all(|s| s.pass)
    }

    pub fn section(&self, s: u32) -> Option<&SectionCheck> {
        self.sections.iter().find(|x| x.section == s)
    }

    pub fn case(&self, section: u32, case: &str) -> Option<&CaseCheck> {
        self.cases.iter().find(|c| c.section == section && c.case == case)
    }
}

pub fn evaluate(set: &ScenarioSet, w: &[Rational]) -> VerifyReport {
    let cases: Vec<CaseCheck> = set
        .constraints
        .iter()
        .map(|c| {
            let value = c.value(w);
            let slack = &value - &c.bound;
            CaseCheck {
                section: c.section,
                case: c.case.clone(),
                cite: c.cite.clone(),
                pass: slack.is_positive(),
                value,
                bound: c.bound.clone(),
                quoted: c.quoted.clone(),
                slack,
            }
        })
        .collect();
    let sections = set
        .sections()
        .into_iter()
        .map(|s| {
            let min = cases.iter().filter(|c| c.section == s).min_by(|a, b| a.value.cmp(&b.value)).expect("nonempty");
            let conclusion = conclusion(s);
            SectionCheck {
                section: s,
                min_value: min.value.clone(),
                min_case: min.case.clone(),
                pass: conclusion.as_ref().is_none_or(|q| min.value > *q),
                conclusion,
            }
        })
        .collect();
    VerifyReport {
        weights: set.weights.iter().zip(w).map(|(d, v)| (d.name.clone(), v.clone())).collect(),
        cases,
        sections,
    }
}

/// Every case at the declared default weights.
pub fn verify_paper_weights(set: &ScenarioSet) -> VerifyReport {
    evaluate(set, &set.defaults())
}

/// `q ≤ v < 10q`: the order of magnitude a quoted decimal names.
pub fn in_class(v: &Rational, q: &Rational) -> bool {
    v >= q && *v < q * Rational::from_integer(10.into())
}

#[derive(Debug, Clone, Serialize)]
pub struct PerturbReport {
    pub weight: String,
    #[serde(serialize_with = "ser_exact")]
    pub value: Rational,
    pub report: VerifyReport,
    /// Cases that hold at the defaults and fail after the change.
    pub flipped: Vec<String>,
}

pub fn perturb(set: &ScenarioSet, name: &str, value: Rational) -> Result<PerturbReport, LpError> {
    let k = set.weight_index(name).ok_or_else(|| LpError::UnknownWeight(name.into()))?;
    let base = verify_paper_weights(set);
    let mut w = set.defaults();
    w[k] = value.clone();
    let report = evaluate(set, &w);
    let flipped = base
        .cases
        .iter()
        .zip(&report.cases)
        .filter(|(a, b)| a.pass && !b.pass)
        .map(|(_, b)| format!("{} {}", b.section, b.case))
        .collect();
    Ok(PerturbReport { weight: name.into(), value, report, flipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use curvlab_core::rational::{int, q};

    #[test]
    fn empty_set_is_feasible() {
        let s = parse_scenarios("", "t", &[]).unwrap();
        let sol = solve(&s).unwrap();
        assert!(sol.margin.is_none() && sol.certified);
    }

    #[test]
    fn single_constraint_optimum_at_the_top() {
        let s = parse_scenarios("weight w = 0 in [0,1]\n1 only: weight(w) > 1/2", "t", &[]).unwrap();
        let sol = solve(&s).unwrap();
        assert_eq!(sol.weights[0].1, int(1));
        assert_eq!(sol.margin, Some(q(1, 2)));
        assert!(sol.certified);
    }

    #[test]
    fn opposing_constraints_meet_in_the_middle() {
        let text = "weight w = 0\n1 up: weight(w) > 1/4\n1 down: comp(w) > 1/4";
        let sol = solve(&parse_scenarios(text, "t", &[]).unwrap()).unwrap();
        assert_eq!(sol.weights[0].1, q(1, 2));
        assert_eq!(sol.margin, Some(q(1, 4)));
        assert_eq!(sol.binding.len(), 2);
    }

    #[test]
    fn infeasible_reports_irreducible_subset() {
        let text = "weight w = 0\n1 up: weight(w) > 3/4\n1 slack: 1 > 0\n1 down: comp(w) > 1/2";
        let err = solve(&parse_scenarios(text, "t", &[]).unwrap()).unwrap_err();
        match err {
            LpError::Infeasible { iis, .. } => assert_eq!(iis, vec!["1 up", "1 down"]),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn fixed_weight_box() {
        let s = parse_scenarios("weight w = 0\n1 up: weight(w) > 1/4", "t", &[]).unwrap();
        let sol = solve_in(&s, &[(q(1, 3), q(1, 3))]).unwrap();
        assert_eq!(sol.margin, Some(q(1, 12)));
    }

    #[test]
    fn classes() {
        assert!(in_class(&q(123, 1_000_000), &q(3, 100_000)));
        assert!(!in_class(&q(3, 10_000), &q(3, 100_000)));
    }
}
