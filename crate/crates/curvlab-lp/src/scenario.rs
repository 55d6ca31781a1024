//! Scenario files: the per-class case inequalities as linear constraints in
//! the adjustable weights.
//!
//! ```text
//! weight alpha = 1/7 in [0,1]   # note
//! 8 final A>=4: 2*excess(3,11,11) + 4*excess(3,11,13)*weight(alpha) > 0.0003  # citation
//! ```
//!
//! A term is a product of factors: rational or decimal numbers, at most one
//! `excess(a,b,..)` and at most one `weight(name)` or `comp(name)` (which
//! stands for `1 - name`). Everything after `#` is kept as the citation.

use curvlab_core::admissibility::is_admissible;
use curvlab_core::rational::{exact, one, parse, zero, Rational};
use curvlab_core::FaceVector;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

pub const SHIPPED_WEIGHTS: &str = include_str!("../data/scenarios/weights.txt");

/// Shipped scenario files, one per face-size class.
pub const SHIPPED: [(&str, &str); 7] = [
    ("s06.txt", include_str!("../data/scenarios/s06.txt")),
    ("s07.txt", include_str!("../data/scenarios/s07.txt")),
    ("s08.txt", include_str!("../data/scenarios/s08.txt")),
    ("s09.txt", include_str!("../data/scenarios/s09.txt")),
    ("s10.txt", include_str!("../data/scenarios/s10.txt")),
    ("s11.txt", include_str!("../data/scenarios/s11.txt")),
    ("s12.txt", include_str!("../data/scenarios/s12.txt")),
];

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{source_name}:{line}: {message}")]
    Parse { source_name: String, line: usize, message: String },
    #[error("{source_name}:{line}: unknown weight {name:?}")]
    UnknownWeight { source_name: String, line: usize, name: String },
    #[error("{source_name}:{line}: {text} is not an admissible face vector")]
    UnknownFaceVector { source_name: String, line: usize, text: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightDecl {
    pub name: String,
    pub default: Rational,
    pub lo: Rational,
    pub hi: Rational,
    pub note: String,
}

/// How a term depends on the weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dep {
    Const,
    Weight(usize),
    Comp(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Rational,
    pub fv: Option<FaceVector>,
    pub dep: Dep,
}

impl Term {
    /// `coeff * excess(fv)`, the part that multiplies the weight factor.
    pub fn base(&self) -> Rational {
        match &self.fv {
            Some(fv) => &self.coeff * fv.excess(),
            None => self.coeff.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub source: String,
    pub line: usize,
    pub section: u32,
    pub case: String,
    pub terms: Vec<Term>,
    pub bound: Rational,
    /// The bound as written.
    pub quoted: String,
    pub cite: String,
}

impl Constraint {
    /// `(a, b)` with `value(w) = a·w + b`.
    pub fn linear(&self, n: usize) -> (Vec<Rational>, Rational) {
        let mut a = vec![zero(); n];
        let mut b = zero();
        for t in &self.terms {
            let base = t.base();
            match t.dep {
                Dep::Const => b += base,
                Dep::Weight(i) => a[i] += base,
                Dep::Comp(i) => {
                    b += &base;
                    a[i] -= base;
                }
            }
        }
        (a, b)
    }

    pub fn value(&self, w: &[Rational]) -> Rational {
        let (a, b) = self.linear(w.len());
        a.iter().zip(w).fold(b, |acc, (x, y)| acc + x * y)
    }

    pub fn label(&self) -> String {
        format!("{} {}", self.section, self.case)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioSet {
    pub weights: Vec<WeightDecl>,
    pub constraints: Vec<Constraint>,
}

impl ScenarioSet {
    pub fn weight_index(&self, name: &str) -> Option<usize> {
        self.weights.iter().position(|w| w.name == name)
    }

    pub fn defaults(&self) -> Vec<Rational> {
        self.weights.iter().map(|w| w.default.clone()).collect()
    }

    pub fn sections(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.constraints.iter().map(|c| c.section).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Applies `weight` lines or bare `name = value` lines as new defaults.
    pub fn override_weights(&mut self, text: &str, source_name: &str) -> Result<(), ScenarioError> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |message: String| ScenarioError::Parse { source_name: source_name.into(), line, message };
            let decl = body.strip_prefix("weight ").unwrap_or(body);
            let (name, rest) = decl.split_once('=').ok_or_else(|| err("expected name = value".into()))?;
            let name = name.trim();
            let value_text = rest.split(" in ").next().unwrap_or(rest);
            let value = parse(value_text).ok_or_else(|| err(format!("bad value {:?}", value_text.trim())))?;
            let k = self.weight_index(name).ok_or_else(|| ScenarioError::UnknownWeight {
                source_name: source_name.into(),
                line,
                name: name.into(),
            })?;
            let w = &mut self.weights[k];
            if value < w.lo || value > w.hi {
                return Err(err(format!("{name} = {} is outside its range", exact(&value))));
            }
            w.default = value;
        }
        Ok(())
    }
}

struct Parser<'a> {
    source_name: &'a str,
    line: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> ScenarioError {
        ScenarioError::Parse { source_name: self.source_name.into(), line: self.line, message: message.into() }
    }

    fn weight_decl(&self, body: &str, note: &str) -> Result<WeightDecl, ScenarioError> {
        let (name, rest) = body.split_once('=').ok_or_else(|| self.err("expected `weight name = v in [lo,hi]`"))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(self.err(format!("bad weight name {name:?}")));
        }
        let (value, range) = match rest.split_once(" in ") {
            Some((v, r)) => (v, Some(r.trim())),
            None => (rest, None),
        };
        let default = parse(value).ok_or_else(|| self.err(format!("bad value {:?}", value.trim())))?;
        let (lo, hi) = match range {
            None => (zero(), one()),
            Some(r) => {
                let inner = r
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| self.err("range must look like [lo,hi]"))?;
                let (a, b) = inner.split_once(',').ok_or_else(|| self.err("range must look like [lo,hi]"))?;
                let lo = parse(a).ok_or_else(|| self.err(format!("bad bound {a:?}")))?;
                let hi = parse(b).ok_or_else(|| self.err(format!("bad bound {b:?}")))?;
                (lo, hi)
            }
        };
        if lo > hi || default < lo || default > hi {
            return Err(self.err(format!("weight {name}: default must lie in a nonempty range")));
        }
        Ok(WeightDecl { name: name.into(), default, lo, hi, note: note.into() })
    }

    fn term(&self, text: &str, weights: &[WeightDecl]) -> Result<Term, ScenarioError> {
        let mut coeff = one();
        let mut fv = None;
        let mut dep = Dep::Const;
        for factor in split_top(text, &['*']) {
            let f = factor.text.trim();
            if let Some(args) = call(f, "excess") {
                if fv.is_some() {
                    return Err(self.err(format!("{text:?} has two excess factors")));
                }
                let sizes: Option<Vec<usize>> = args.split(',').map(|s| s.trim().parse().ok()).collect();
                let sizes = sizes.filter(|s| !s.is_empty()).ok_or_else(|| self.err(format!("bad face vector {f:?}")))?;
                let v = FaceVector::new(sizes);
                if !matches!(is_admissible(&v), Ok(true)) {
                    return Err(ScenarioError::UnknownFaceVector {
                        source_name: self.source_name.into(),
                        line: self.line,
                        text: f.into(),
                    });
                }
                fv = Some(v);
            } else if let Some((name, comp)) = call(f, "weight").map(|n| (n, false)).or(call(f, "comp").map(|n| (n, true))) {
                if dep != Dep::Const {
                    return Err(self.err(format!("{text:?} is not linear in the weights")));
                }
                let k = weights.iter().position(|w| w.name == name.trim()).ok_or_else(|| {
                    ScenarioError::UnknownWeight {
                        source_name: self.source_name.into(),
                        line: self.line,
                        name: name.trim().into(),
                    }
                })?;
                dep = if comp { Dep::Comp(k) } else { Dep::Weight(k) };
            } else {
                coeff *= parse(f).ok_or_else(|| self.err(format!("cannot read factor {f:?}")))?;
            }
        }
        Ok(Term { coeff, fv, dep })
    }

    fn constraint(&self, body: &str, cite: &str, weights: &[WeightDecl]) -> Result<Constraint, ScenarioError> {
        let (head, rest) = body.split_once(':').ok_or_else(|| self.err("expected `section case: terms > bound`"))?;
        let (sec, case) = head.trim().split_once(' ').unwrap_or((head.trim(), ""));
        let section: u32 = sec.parse().map_err(|_| self.err(format!("bad section {sec:?}")))?;
        let (lhs, bound_text) = rest.rsplit_once('>').ok_or_else(|| self.err("missing `> bound`"))?;
        let bound = parse(bound_text).ok_or_else(|| self.err(format!("bad bound {:?}", bound_text.trim())))?;
        let mut terms = Vec::new();
        for part in split_top(lhs, &['+', '-']) {
            if part.text.trim().is_empty() {
                return Err(self.err("empty term"));
            }
            let mut t = self.term(&part.text, weights)?;
            if part.negated {
                t.coeff = -t.coeff;
            }
            terms.push(t);
        }
        Ok(Constraint {
            source: self.source_name.into(),
            line: self.line,
            section,
            case: case.trim().into(),
            terms,
            bound,
            quoted: bound_text.trim().into(),
            cite: cite.into(),
        })
    }
}

struct Piece {
    text: String,
    negated: bool,
}

/// Splits at top-level separators. A `+` or `-` right after `*`, `/` or at
/// the start is a sign, not a separator.
fn split_top(s: &str, seps: &[char]) -> Vec<Piece> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negated = false;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && seps.contains(&c) {
            let prev = cur.trim_end().chars().last();
            let is_sign = c != '*' && matches!(prev, None | Some('*') | Some('/'));
            if is_sign && cur.trim().is_empty() {
                if c == '-' {
                    negated = !negated;
                }
                continue;
            }
            if !is_sign {
                out.push(Piece { text: std::mem::take(&mut cur), negated });
                negated = c == '-';
                continue;
            }
        }
        cur.push(c);
    }
    out.push(Piece { text: cur, negated });
    out
}

fn call<'a>(f: &'a str, name: &str) -> Option<&'a str> {
    f.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

/// Parses one file. Weight references resolve against `base` and the
/// file's own declarations, which take precedence.
pub fn parse_scenarios(text: &str, source_name: &str, base: &[WeightDecl]) -> Result<ScenarioSet, ScenarioError> {
    let mut set = ScenarioSet { weights: base.to_vec(), constraints: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let p = Parser { source_name, line: i + 1 };
        let (body, cite) = raw.split_once('#').unwrap_or((raw, ""));
        let (body, cite) = (body.trim(), cite.trim());
        if body.is_empty() {
            continue;
        }
        if let Some(decl) = body.strip_prefix("weight ") {
            let w = p.weight_decl(decl, cite)?;
            match set.weight_index(&w.name) {
                Some(k) => set.weights[k] = w,
                None => set.weights.push(w),
            }
        } else {
            let c = p.constraint(body, cite, &set.weights)?;
            set.constraints.push(c);
        }
    }
    Ok(set)
}

fn merge(into: &mut ScenarioSet, more: ScenarioSet) {
    into.weights = more.weights;
    into.constraints.extend(more.constraints);
}

/// The shipped weights and every shipped scenario file.
pub fn shipped() -> ScenarioSet {
    let mut set = parse_scenarios(SHIPPED_WEIGHTS, "weights.txt", &[]).expect("shipped weights parse");
    for (name, text) in SHIPPED {
        let more = parse_scenarios(text, name, &set.weights).expect("shipped scenarios parse");
        merge(&mut set, more);
    }
    set
}

/// Loads a scenario file, or every `*.txt` file of a directory in name
/// order. Undeclared weights fall back to the shipped declarations.
pub fn load_scenarios(path: &Path) -> Result<ScenarioSet, ScenarioError> {
    let io = |source| ScenarioError::Io { path: path.display().to_string(), source };
    let base = parse_scenarios(SHIPPED_WEIGHTS, "weights.txt", &[]).expect("shipped weights parse").weights;
    let mut files = BTreeMap::new();
    if path.is_dir() {
        for entry in std::fs::read_dir(path).map_err(io)? {
            let p = entry.map_err(io)?.path();
            if p.extension().is_some_and(|e| e == "txt") {
                files.insert(p.display().to_string(), p);
            }
        }
    } else {
        files.insert(path.display().to_string(), path.to_path_buf());
    }
    let mut set = ScenarioSet { weights: base, constraints: Vec::new() };
    for (name, p) in files {
        let text = std::fs::read_to_string(&p)
            .map_err(|source| ScenarioError::Io { path: p.display().to_string(), source })?;
        let more = parse_scenarios(&text, &name, &set.weights)?;
        merge(&mut set, more);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use curvlab_core::rational::q;

    #[test]
    fn empty_text_is_empty_set() {
        let s = parse_scenarios("# nothing\n\n", "t", &[]).unwrap();
        assert!(s.constraints.is_empty() && s.weights.is_empty());
    }

    #[test]
    fn terms_and_signs() {
        let s = parse_scenarios("weight w = 1/2\n1 x: 2*weight(w) - 1/4 + -1*comp(w) > 0\n", "t", &[]).unwrap();
        let c = &s.constraints[0];
        assert_eq!(c.terms.len(), 3);
        // 2w - 1/4 - (1 - w) = 3w - 5/4
        let (a, b) = c.linear(1);
        assert_eq!((a[0].clone(), b), (q(3, 1), q(-5, 4)));
    }

    #[test]
    fn excess_terms_are_exact() {
        let s = parse_scenarios("9 A: 4*excess(3,11,13) > -1", "t", &[]).unwrap();
        let v = s.constraints[0].value(&[]);
        assert_eq!(v, q(4, 1) * FaceVector::of(&[3, 11, 13]).excess());
    }

    #[test]
    fn errors_are_typed() {
        assert!(matches!(
            parse_scenarios("1 a: weight(nope) > 0", "t", &[]),
            Err(ScenarioError::UnknownWeight { .. })
        ));
        assert!(matches!(
            parse_scenarios("1 a: excess(6,6,6) > 0", "t", &[]),
            Err(ScenarioError::UnknownFaceVector { .. })
        ));
        assert!(matches!(parse_scenarios("1 a: 2 >", "t", &[]), Err(ScenarioError::Parse { .. })));
        assert!(matches!(
            parse_scenarios("weight w = 1/2\n1 a: weight(w)*comp(w) > 0", "t", &[]),
            Err(ScenarioError::Parse { .. })
        ));
    }

    #[test]
    fn shipped_parses() {
        let s = shipped();
        assert_eq!(s.sections(), vec![6, 7, 8, 9, 10, 11, 12]);
        assert_eq!(s.weights.len(), 5);
    }
}
