//! Dense primal simplex over exact rationals with Bland's rule.
//!
//! Solves `max c·x` subject to `A x ≤ b`, `x ≥ 0`, for `b ≥ 0`, so the
//! origin is a feasible start and no phase one is needed. Problems here
//! have a handful of variables and at most a few hundred rows.

use curvlab_core::rational::{zero, Rational};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub x: Vec<Rational>,
    pub value: Rational,
    /// Multipliers of the rows of `A`: `y ≥ 0`, `Aᵀy ≥ c`, `b·y = value`.
    pub dual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Optimal(Optimum),
    Unbounded,
}

/// Panics if some `b[i] < 0` or the shapes disagree.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Outcome {
    let (m, n) = (a.len(), c.len());
    assert_eq!(b.len(), m);
    assert!(b.iter().all(|v| !v.is_negative()), "right-hand sides must be nonnegative");
    let cols = n + m;
    // Row i: [A_i | e_i | b_i]
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            assert_eq!(a[i].len(), n);
            let mut row = a[i].clone();
            row.extend((0..m).map(|j| if i == j { Rational::from_integer(1.into()) } else { zero() }));
            row.push(b[i].clone());
            row
        })
        .collect();
    // Reduced costs; the last entry is minus the objective value.
    let mut d: Vec<Rational> = c.iter().cloned().chain(std::iter::repeat(zero()).take(m + 1)).collect();
    let mut basis: Vec<usize> = (n..cols).collect();

    loop {
        let Some(enter) = (0..cols).find(|&j| d[j].is_positive()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[cols] / &row[enter];
            let better = match &leave {
                None => true,
                Some((k, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else { return Outcome::Unbounded };
        let p = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &p;
        }
        let pivot = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v -= &f * pv;
            }
        }
        let f = d[enter].clone();
        for (v, pv) in d.iter_mut().zip(&pivot) {
            *v -= &f * pv;
        }
        basis[r] = enter;
    }

    let mut x = vec![zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][cols].clone();
        }
    }
    let dual = (0..m).map(|i| -d[n + i].clone()).collect();
    Outcome::Optimal(Optimum { x, value: -d[cols].clone(), dual })
}

/// Checks primal feasibility, dual feasibility and equal objectives exactly.
pub fn certify(c: &[Rational], a: &[Vec<Rational>], b: &[Rational], opt: &Optimum) -> bool {
    let dot = |u: &[Rational], v: &[Rational]| u.iter().zip(v).fold(zero(), |s, (p, q)| s + p * q);
    let primal = opt.x.iter().all(|v| !v.is_negative()) && a.iter().zip(b).all(|(row, bi)| dot(row, &opt.x) <= *bi);
    let dual_ok = opt.dual.iter().all(|v| !v.is_negative())
        && (0..c.len()).all(|j| {
            let s = a.iter().zip(&opt.dual).fold(zero(), |s, (row, y)| s + &row[j] * y);
            s >= c[j]
        });
    primal && dual_ok && dot(c, &opt.x) == opt.value && dot(b, &opt.dual) == opt.value
}

#[cfg(test)]
mod tests {
    use super::*;
    use curvlab_core::rational::{int, q};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → (2, 6), 36
        let a = vec![v(&[1, 0]), v(&[0, 2]), v(&[3, 2])];
        let (b, c) = (v(&[4, 12, 18]), v(&[3, 5]));
        let Outcome::Optimal(o) = maximize(&c, &a, &b) else { panic!("bounded") };
        assert_eq!(o.x, v(&[2, 6]));
        assert_eq!(o.value, int(36));
        assert!(certify(&c, &a, &b, &o));
    }

    #[test]
    fn fractional_optimum() {
        // max x + y, 3x + y ≤ 2, x + 3y ≤ 2 → (1/2, 1/2)
        let a = vec![v(&[3, 1]), v(&[1, 3])];
        let (b, c) = (v(&[2, 2]), v(&[1, 1]));
        let Outcome::Optimal(o) = maximize(&c, &a, &b) else { panic!("bounded") };
        assert_eq!(o.x, vec![q(1, 2), q(1, 2)]);
        assert!(certify(&c, &a, &b, &o));
    }

    #[test]
    fn unbounded_detected() {
        let a = vec![v(&[1, -1])];
        assert_eq!(maximize(&v(&[1, 0]), &a, &v(&[1])), Outcome::Unbounded);
    }

    #[test]
    fn degenerate_cycle_example_terminates() {
        // Beale's example, which cycles under the largest-coefficient rule.
        let a = vec![
            vec![q(1, 4), int(-60), q(-1, 25), int(9)],
            vec![q(1, 2), int(-90), q(-1, 50), int(3)],
            vec![int(0), int(0), int(1), int(0)],
        ];
        let b = v(&[0, 0, 1]);
        let c = vec![q(3, 4), int(-150), q(1, 50), int(-6)];
        let Outcome::Optimal(o) = maximize(&c, &a, &b) else { panic!("bounded") };
        assert_eq!(o.value, q(1, 20));
        assert!(certify(&c, &a, &b, &o));
    }
}
