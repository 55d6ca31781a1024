//! Exact rationals and their text forms.
//!
//! Everything numeric in the crate goes through [`Rational`], a reduced
//! big-integer fraction. Decimal thresholds are parsed exactly, so `0.00003`
//! becomes `3/100000` and never touches floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

pub type Rational = BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `-0.00521`, `3/4`, `7` or `-2/209` exactly.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().all(|c| c.is_ascii_digit()) || !fp.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp);
    let n: BigInt = digits.parse().ok()?;
    let d = num_traits::pow(BigInt::from(10), fp.len());
    let r = Rational::new(n, d);
    Some(if neg { -r } else { r })
}

/// Canonical `num/den` form; integers render without a denominator.
pub fn exact(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` significant figures after leading zeros,
/// truncated toward zero. Only for human eyes.
pub fn decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let (ip, mut rem) = a.numer().div_rem(a.denom());
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&ip.to_string());
    if rem.is_zero() {
        return out;
    }
    out.push('.');
    let ten = BigInt::from(10);
    let mut significant = if ip.is_zero() { 0 } else { ip.to_string().len() };
    let mut emitted = 0;
    while !rem.is_zero() && (significant < digits || significant == 0) && emitted < 60 {
        rem *= &ten;
        let (dgt, r2) = rem.div_rem(a.denom());
        rem = r2;
        let dv = dgt.to_u8().unwrap_or(0);
        out.push((b'0' + dv) as char);
        emitted += 1;
        if significant > 0 || dv != 0 {
            significant += 1;
        }
    }
    out
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serializable pair of exact and approximate renderings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exact {
    pub exact: String,
    pub decimal: String,
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Exact { exact: exact(r), decimal: decimal(r, 6) }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.exact, self.decimal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(parse("0.00003"), Some(q(3, 100000)));
        assert_eq!(parse("-0.00521"), Some(q(-521, 100000)));
        assert_eq!(parse("-2/209"), Some(q(-2, 209)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse(".5"), Some(q(1, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("abc"), None);
    }

    #[test]
    fn renderings() {
        assert_eq!(exact(&q(34, 4389)), "34/4389");
        assert_eq!(exact(&int(2)), "2");
        assert_eq!(decimal(&q(1, 3), 4), "0.3333");
        assert_eq!(decimal(&q(-26, 4389), 3), "-0.00592");
    }
}
