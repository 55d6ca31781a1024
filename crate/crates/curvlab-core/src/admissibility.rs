//! Admissible face vectors: multisets of 3 to 5 sizes with `K > 0`.
//!
//! The table is regenerated by brute force. Each family fixes all entries
//! but the largest, which ranges over an interval (possibly unbounded).

use crate::curvature::curvature_of;
use crate::map::FaceVector;
use crate::rational::{int, one, zero, Rational};
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdmissibilityError {
    #[error("face size {0} is below 3")]
    EntryBelowThree(usize),
}

/// One row of the admissible table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AdmissibleFamily {
    /// `(3,a,b)` with `lo ≤ a ≤ hi`, `a ≤ b`, `b` free.
    TwoParam { lo: usize, hi: usize },
    /// `prefix` followed by a free slot `a` with `lo ≤ a ≤ hi`.
    Range { prefix: Vec<usize>, lo: usize, hi: Option<usize> },
    Fixed { sizes: Vec<usize> },
}

// Prefixes whose two members the table lists individually.
const SPLIT_PREFIXES: &[&[usize]] = &[&[5, 6]];

const PREFIX_CAP: usize = 60;

impl AdmissibleFamily {
    pub fn contains(&self, fv: &FaceVector) -> bool {
        let s = &fv.0;
        match self {
            AdmissibleFamily::TwoParam { lo, hi } => {
                s.len() == 3 && s[0] == 3 && (*lo..=*hi).contains(&s[1])
            }
            AdmissibleFamily::Range { prefix, lo, hi } => {
                s.len() == prefix.len() + 1
                    && s[..prefix.len()] == prefix[..]
                    && s[prefix.len()] >= *lo
                    && hi.map_or(true, |h| s[prefix.len()] <= h)
            }
            AdmissibleFamily::Fixed { sizes } => s == sizes,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, AdmissibleFamily::TwoParam { .. } | AdmissibleFamily::Range { hi: None, .. })
    }

    /// Infimum of `K` over an unbounded family's free slot. Positive or zero,
    /// and never attained, so every member has `K > 0`.
    pub fn limit(&self) -> Option<Rational> {
        match self {
            AdmissibleFamily::Range { prefix, hi: None, .. } => Some(prefix_limit(prefix)),
            AdmissibleFamily::TwoParam { hi, .. } => Some(prefix_limit(&[3, *hi])),
            _ => None,
        }
    }

    /// Every member of a bounded family; for unbounded ones, members with
    /// free entries up to `cap`.
    pub fn members(&self, cap: usize) -> Vec<FaceVector> {
        match self {
            AdmissibleFamily::TwoParam { lo, hi } => (*lo..=*hi)
                .flat_map(|a| (a..=cap.max(a)).map(move |b| FaceVector::of(&[3, a, b])))
                .collect(),
            AdmissibleFamily::Range { prefix, lo, hi } => (*lo..=hi.unwrap_or(cap))
                .map(|a| {
                    let mut s = prefix.clone();
                    s.push(a);
                    FaceVector::new(s)
                })
                .collect(),
            AdmissibleFamily::Fixed { sizes } => vec![FaceVector::of(sizes)],
        }
    }
}

impl fmt::Display for AdmissibleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibleFamily::TwoParam { lo, hi } => write!(f, "(3,a,b)  {lo}<=a<={hi}, a<=b"),
            AdmissibleFamily::Range { prefix, lo, hi } => {
                let p: Vec<String> = prefix.iter().map(|x| x.to_string()).collect();
                match hi {
                    Some(h) => write!(f, "({},a)  {lo}<=a<={h}", p.join(",")),
                    None => write!(f, "({},a)  {lo}<=a", p.join(",")),
                }
            }
            AdmissibleFamily::Fixed { sizes } => write!(f, "{}", FaceVector::of(sizes)),
        }
    }
}

fn prefix_limit(prefix: &[usize]) -> Rational {
    let mut l = one() - Rational::new((prefix.len() as i64 + 1).into(), 2.into());
    for &p in prefix {
        l += Rational::new(1.into(), (p as i64).into());
    }
    l
}

pub fn is_admissible(fv: &FaceVector) -> Result<bool, AdmissibilityError> {
    if let Some(&s) = fv.0.iter().find(|&&s| s < 3) {
        return Err(AdmissibilityError::EntryBelowThree(s));
    }
    let d = fv.degree();
    Ok((3..=5).contains(&d) && curvature_of(&fv.0) > zero())
}

/// Sorted prefixes of length `deg - 1` that still admit a completion with
/// `K > 0`. The float bound only prunes, with slack, so nothing admissible
/// is lost.
fn sorted_prefixes(deg: usize, min: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == deg - 1 {
        out.push(cur.clone());
        return;
    }
    let base: f64 = 1.0 - deg as f64 / 2.0 + cur.iter().map(|&c| 1.0 / c as f64).sum::<f64>();
    for x in min..=cap {
        let best = base + (deg - cur.len()) as f64 / x as f64;
        if best < -1e-9 {
            break;
        }
        cur.push(x);
        sorted_prefixes(deg, x, cap, cur, out);
        cur.pop();
    }
}

/// Regenerates the table of admissible face vectors.
pub fn enumerate_admissible() -> Vec<AdmissibleFamily> {
    let mut rows = Vec::new();
    let mut two_param = Vec::new();
    for deg in 3..=5 {
        let mut prefixes = Vec::new();
        sorted_prefixes(deg, 3, PREFIX_CAP, &mut Vec::new(), &mut prefixes);
        for prefix in prefixes {
            let lo = *prefix.last().unwrap();
            let l = prefix_limit(&prefix);
            let hi = if !l.is_negative() {
                None
            } else {
                // largest a with 1/a > -l
                let inv = int(1) / (-l);
                let c = inv.ceil().to_integer().to_usize().unwrap_or(0);
                Some(c - 1)
            };
            if hi.is_some_and(|h| h < lo) {
                continue;
            }
            if deg == 3 && prefix[0] == 3 && hi.is_none() {
                two_param.push(prefix[1]);
                continue;
            }
            if SPLIT_PREFIXES.contains(&prefix.as_slice()) {
                for a in lo..=hi.expect("split prefixes are bounded") {
                    let mut sizes = prefix.clone();
                    sizes.push(a);
                    rows.push(AdmissibleFamily::Fixed { sizes });
                }
                continue;
            }
            rows.push(AdmissibleFamily::Range { prefix, lo, hi });
        }
    }
    if let (Some(&lo), Some(&hi)) = (two_param.iter().min(), two_param.iter().max()) {
        debug_assert_eq!(two_param.len(), hi - lo + 1);
        rows.push(AdmissibleFamily::TwoParam { lo, hi });
    }
    rows.sort();
    rows
}

/// Table 1 as printed, for comparison against the regenerated rows.
pub fn transcribed_table() -> Vec<AdmissibleFamily> {
    use AdmissibleFamily::*;
    let r = |p: &[usize], lo: usize, hi: Option<usize>| Range { prefix: p.to_vec(), lo, hi };
    let mut rows = vec![
        TwoParam { lo: 3, hi: 6 },
        r(&[3, 7], 7, Some(41)),
        r(&[3, 8], 8, Some(23)),
        r(&[3, 9], 9, Some(17)),
        r(&[3, 10], 10, Some(14)),
        r(&[3, 11], 11, Some(13)),
        r(&[3, 3, 3], 3, None),
        r(&[3, 3, 4], 4, Some(11)),
        r(&[3, 3, 5], 5, Some(7)),
        r(&[3, 4, 4], 4, Some(5)),
        r(&[3, 3, 3, 3], 3, Some(5)),
        r(&[4, 4], 4, None),
        r(&[4, 5], 5, Some(19)),
        r(&[4, 6], 6, Some(11)),
        r(&[4, 7], 7, Some(9)),
        r(&[5, 5], 5, Some(9)),
        Fixed { sizes: vec![5, 6, 6] },
        Fixed { sizes: vec![5, 6, 7] },
    ];
    rows.sort();
    rows
}

/// Which family an admissible vector belongs to.
pub fn family_of(fv: &FaceVector) -> Option<AdmissibleFamily> {
    enumerate_admissible().into_iter().find(|f| f.contains(fv))
}

/// `K` at one past a finite bound, which must be `≤ 0`.
pub fn past_bound(f: &AdmissibleFamily) -> Option<Rational> {
    match f {
        AdmissibleFamily::Range { prefix, hi: Some(h), .. } => {
            let mut s = prefix.clone();
            s.push(h + 1);
            Some(curvature_of(&s))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regenerated_equals_transcription() {
        let rows = enumerate_admissible();
        assert_eq!(rows.len(), 18);
        assert_eq!(rows, transcribed_table());
    }

    #[test]
    fn quoted_bounds() {
        let yes = |s: &[usize]| is_admissible(&FaceVector::of(s)).unwrap();
        assert!(yes(&[3, 7, 41]) && !yes(&[3, 7, 42]));
        assert!(yes(&[3, 8, 23]) && !yes(&[3, 8, 24]));
        assert!(!yes(&[3, 3, 3, 3, 3, 3]));
        assert!(is_admissible(&FaceVector::of(&[2, 5, 5])).is_err());
    }
}
