//! Exact certification of the decimal constants quoted in the per-class
//! face analyses.
//!
//! Each row claims `excess(fv)·w > bound` for a family of face vectors; the
//! check runs over every admissible instantiation and every listed weight.
//! Named constants (`c1`, `c2`, ...) must lie strictly below every row that
//! carries their label.

use crate::admissibility::is_admissible;
use crate::classification::{classify_vtype, VertexClass};
use crate::map::FaceVector;
use crate::rational::{parse, zero, Exact, Rational};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

pub const SHIPPED: &str = include_str!("../data/constants.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Slot {
    Fixed(usize),
    Var(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Pattern {
    Sizes(Vec<Slot>),
    Ts,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub line: usize,
    pub section: u32,
    pub label: Option<String>,
    pub text: String,
    pattern: Pattern,
    domain: BTreeMap<char, Vec<usize>>,
    pub weights: Vec<Rational>,
    pub bound: Rational,
    pub quoted: String,
}

#[derive(Debug, Clone)]
pub struct Constant {
    pub line: usize,
    pub section: u32,
    pub label: String,
    pub value: Rational,
    pub quoted: String,
    pub typo: bool,
}

#[derive(Debug, Clone, Default)]
pub struct ConstantTable {
    pub rows: Vec<Row>,
    pub constants: Vec<Constant>,
}

fn err(line: usize, message: impl Into<String>) -> CertifyError {
    CertifyError::Parse { line, message: message.into() }
}

fn parse_pattern(line: usize, s: &str) -> Result<Pattern, CertifyError> {
    if s == "TS" {
        return Ok(Pattern::Ts);
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .or_else(|| s.strip_prefix('{').and_then(|x| x.strip_suffix('}')))
        .ok_or_else(|| err(line, format!("bad face vector {s:?}")))?;
    let slots = inner
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(n) => Ok(Slot::Fixed(n)),
                Err(_) if t.len() == 1 && t.chars().all(|c| c.is_ascii_alphabetic()) => {
                    Ok(Slot::Var(t.chars().next().unwrap()))
                }
                Err(_) => Err(err(line, format!("bad entry {t:?}"))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Pattern::Sizes(slots))
}

fn parse_values(line: usize, s: &str) -> Result<Vec<usize>, CertifyError> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| err(line, format!("bad value {x:?}")));
        match item.split_once("..") {
            Some((a, b)) => out.extend(num(a)?..=num(b)?),
            None => out.push(num(item)?),
        }
    }
    Ok(out)
}

fn parse_domain(line: usize, s: &str) -> Result<BTreeMap<char, Vec<usize>>, CertifyError> {
    let mut dom: BTreeMap<char, Vec<usize>> = BTreeMap::new();
    let mut excluded: Vec<(char, usize)> = Vec::new();
    for clause in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        if let Some((v, x)) = clause.split_once("!=") {
            let v = v.trim().chars().next().ok_or_else(|| err(line, "missing variable"))?;
            excluded.push((v, parse_values(line, x)?[0]));
        } else if let Some((v, xs)) = clause.split_once('=') {
            let v = v.trim().chars().next().ok_or_else(|| err(line, "missing variable"))?;
            dom.insert(v, parse_values(line, xs)?);
        } else {
            return Err(err(line, format!("bad clause {clause:?}")));
        }
    }
    for (v, x) in excluded {
        dom.get_mut(&v).ok_or_else(|| err(line, format!("{v} excluded before it has a range")))?.retain(|&y| y != x);
    }
    Ok(dom)
}

/// Reads the line-oriented constants table.
pub fn parse_constants(text: &str) -> Result<ConstantTable, CertifyError> {
    let mut t = ConstantTable::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        let f: Vec<&str> = s.split('|').map(str::trim).collect();
        let section = f.get(1).and_then(|x| x.parse::<u32>().ok()).ok_or_else(|| err(line, "missing section"))?;
        match f[0] {
            "row" if f.len() == 7 => {
                let weights = f[5]
                    .split(',')
                    .map(|w| parse(w).ok_or_else(|| err(line, format!("bad weight {w:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                t.rows.push(Row {
                    line,
                    section,
                    label: (f[2] != "-").then(|| f[2].to_string()),
                    text: if f[4].is_empty() { f[3].to_string() } else { format!("{} with {}", f[3], f[4]) },
                    pattern: parse_pattern(line, f[3])?,
                    domain: parse_domain(line, f[4])?,
                    weights,
                    bound: parse(f[6]).ok_or_else(|| err(line, format!("bad bound {:?}", f[6])))?,
                    quoted: f[6].to_string(),
                });
            }
            "const" if f.len() == 4 || f.len() == 5 => {
                t.constants.push(Constant {
                    line,
                    section,
                    label: f[2].to_string(),
                    value: parse(f[3]).ok_or_else(|| err(line, format!("bad value {:?}", f[3])))?,
                    quoted: f[3].to_string(),
                    typo: match f.get(4) {
                        None => false,
                        Some(&"typo") => true,
                        Some(x) => return Err(err(line, format!("unknown marker {x:?}"))),
                    },
                });
            }
            other => return Err(err(line, format!("unexpected record {other:?} with {} fields", f.len()))),
        }
    }
    Ok(t)
}

pub fn shipped() -> ConstantTable {
    parse_constants(SHIPPED).expect("shipped constants table parses")
}

fn all_ts() -> Vec<FaceVector> {
    let mut out = Vec::new();
    for deg in 3..=5 {
        let mut stack = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == deg {
                let fv = FaceVector::new(cur);
                if matches!(classify_vtype(&fv), Some(VertexClass::TS)) {
                    out.push(fv);
                }
                continue;
            }
            let lo = cur.last().copied().unwrap_or(3);
            for x in lo..=4 {
                let mut n = cur.clone();
                n.push(x);
                stack.push(n);
            }
        }
    }
    out.sort();
    out
}

impl Row {
    /// Admissible face vectors covered by the row, and how many
    /// instantiations were dropped as inadmissible.
    pub fn instances(&self) -> (Vec<FaceVector>, usize) {
        let slots = match &self.pattern {
            Pattern::Ts => return (all_ts(), 0),
            Pattern::Sizes(s) => s,
        };
        let vars: Vec<char> = self.domain.keys().copied().collect();
        let mut out: Vec<FaceVector> = Vec::new();
        let mut dropped = 0;
        let mut idx = vec![0usize; vars.len()];
        loop {
            let val = |c: char| self.domain[&c][idx[vars.iter().position(|&x| x == c).unwrap()]];
            let sizes: Vec<usize> = slots
                .iter()
                .map(|s| match s {
                    Slot::Fixed(n) => *n,
                    Slot::Var(c) => val(*c),
                })
                .collect();
            let fv = FaceVector::new(sizes);
            if matches!(is_admissible(&fv), Ok(true)) {
                if !out.contains(&fv) {
                    out.push(fv);
                }
            } else {
                dropped += 1;
            }
            let mut k = 0;
            loop {
                if k == vars.len() {
                    out.sort();
                    return (out, dropped);
                }
                idx[k] += 1;
                if idx[k] < self.domain[&vars[k]].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    /// Smallest `excess·w` over the row and its witness.
    pub fn minimum(&self) -> Option<(Rational, FaceVector, Rational)> {
        let (fvs, _) = self.instances();
        let mut best: Option<(Rational, FaceVector, Rational)> = None;
        for fv in fvs {
            let e = fv.excess();
            for w in &self.weights {
                let x = &e * w;
                if best.as_ref().map_or(true, |(b, _, _)| x < *b) {
                    best = Some((x, fv.clone(), w.clone()));
                }
            }
        }
        best
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowCertificate {
    pub section: u32,
    pub label: Option<String>,
    pub row: String,
    pub instances: usize,
    pub worst: String,
    pub weight: Exact,
    pub value: Exact,
    pub quoted: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantCertificate {
    pub section: u32,
    pub label: String,
    pub quoted: String,
    pub rows: usize,
    pub tightest: Option<Exact>,
    pub passed: bool,
    pub typo: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certification {
    pub rows: Vec<RowCertificate>,
    pub constants: Vec<ConstantCertificate>,
}

impl Certification {
    /// True iff every row holds and every constant not marked as a typo
    /// holds.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed) && self.constants.iter().all(|c| c.passed || c.typo)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("Sec.{} {}: {} = {} not > {}", r.section, r.row, r.worst, r.value, r.quoted))
            .collect();
        out.extend(
            self.constants
                .iter()
                .filter(|c| !c.passed && !c.typo)
                .map(|c| format!("Sec.{} {} = {} is not below its rows", c.section, c.label, c.quoted)),
        );
        out
    }
}

pub fn certify(t: &ConstantTable) -> Certification {
    let mut rows = Vec::new();
    let mut tight: BTreeMap<(u32, String), (usize, Rational)> = BTreeMap::new();
    for r in &t.rows {
        let (fvs, _) = r.instances();
        let cert = match r.minimum() {
            Some((x, fv, w)) => {
                if let Some(l) = &r.label {
                    let e = tight.entry((r.section, l.clone())).or_insert((0, x.clone()));
                    e.0 += 1;
                    if x < e.1 {
                        e.1 = x.clone();
                    }
                }
                RowCertificate {
                    section: r.section,
                    label: r.label.clone(),
                    row: r.text.clone(),
                    instances: fvs.len(),
                    worst: fv.to_string(),
                    weight: (&w).into(),
                    passed: x > r.bound,
                    value: (&x).into(),
                    quoted: r.quoted.clone(),
                }
            }
            None => RowCertificate {
                section: r.section,
                label: r.label.clone(),
                row: r.text.clone(),
                instances: 0,
                worst: "-".into(),
                weight: (&zero()).into(),
                value: (&zero()).into(),
                quoted: r.quoted.clone(),
                passed: false,
            },
        };
        rows.push(cert);
    }
    let constants = t
        .constants
        .iter()
        .map(|c| {
            let hit = tight.get(&(c.section, c.label.clone()));
            ConstantCertificate {
                section: c.section,
                label: c.label.clone(),
                quoted: c.quoted.clone(),
                rows: hit.map_or(0, |h| h.0),
                tightest: hit.map(|h| (&h.1).into()),
                passed: hit.map_or(false, |h| h.1 > c.value),
                typo: c.typo,
            }
        })
        .collect();
    Certification { rows, constants }
}

impl std::fmt::Display for Certification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "{} Sec.{:<2} {:<34} worst {} x {} = {} > {}",
                if r.passed { "ok  " } else { "FAIL" },
                r.section,
                r.row,
                r.worst,
                r.weight.exact,
                r.value.decimal,
                r.quoted
            )?;
        }
        for c in &self.constants {
            let status = match (c.passed, c.typo) {
                (true, _) => "ok  ",
                (false, true) => "typo",
                (false, false) => "FAIL",
            };
            let tightest = c.tightest.as_ref().map_or("-".to_string(), |t| t.decimal.clone());
            writeln!(f, "{status} Sec.{:<2} {} = {} (tightest row {tightest}, {} rows)", c.section, c.label, c.quoted, c.rows)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn shipped_table_parses() {
        let t = shipped();
        assert!(t.rows.len() > 90);
        assert!(t.constants.len() > 30);
    }

    #[test]
    fn rows_expand_over_their_domain() {
        let t = parse_constants("row | 10 | - | (3,8,N) | N=14..25; N!=19 | 1 | -0.0078\n").unwrap();
        let (fvs, dropped) = t.rows[0].instances();
        // (3,8,24) and (3,8,25) are not admissible
        assert_eq!(fvs.len(), 9);
        assert_eq!(dropped, 2);
    }

    #[test]
    fn ts_rows_cover_only_triangles_and_squares() {
        let ts = all_ts();
        assert!(ts.iter().all(|fv| fv.0.iter().all(|&x| x == 3 || x == 4)));
        assert!(ts.contains(&FaceVector::of(&[3, 4, 4, 4])));
    }

    #[test]
    fn hand_checked_row() {
        // (4,5,19): K = 1/380, excess·3/4 = -0.0052033...
        let t = parse_constants("row | 6 | c1 | (4,5,19) | | 3/4 | -0.00521\n").unwrap();
        let (x, _, _) = t.rows[0].minimum().unwrap();
        assert_eq!(x, (q(1, 380) - q(2, 209)) * q(3, 4));
        assert!(certify(&t).passed());
    }

    #[test]
    fn failing_row_is_reported() {
        let t = parse_constants("row | 6 | - | (4,5,19) | | 3/4 | 0\n").unwrap();
        let c = certify(&t);
        assert!(!c.passed());
        assert_eq!(c.failures().len(), 1);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(parse_constants("row | x | - | (3,3) | | 1 | 0\n").is_err());
        assert!(parse_constants("row | 6 | - | [3,3] | | 1 | 0\n").is_err());
        assert!(parse_constants("const | 6 | c1 | 0 | maybe\n").is_err());
    }
}
