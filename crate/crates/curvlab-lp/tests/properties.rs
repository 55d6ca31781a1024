use curvlab_core::rational::{int, one, zero, Rational};
use curvlab_lp::scenario::Dep;
use curvlab_lp::shipped;
use curvlab_lp::simplex::{certify, maximize, Outcome};
use proptest::prelude::*;

/// Best objective over all vertices of `{x >= 0, A x <= b}` in the plane.
fn brute_2d(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Rational {
    let mut lines: Vec<(Rational, Rational, Rational)> =
        a.iter().zip(b).map(|(r, b)| (r[0].clone(), r[1].clone(), b.clone())).collect();
    lines.push((one(), zero(), zero()));
    lines.push((zero(), one(), zero()));
    let feasible = |x: &Rational, y: &Rational| {
        *x >= zero() && *y >= zero() && a.iter().zip(b).all(|(r, b)| &r[0] * x + &r[1] * y <= *b)
    };
    let mut best: Option<Rational> = None;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (p, q) = (&lines[i], &lines[j]);
            let det = &p.0 * &q.1 - &p.1 * &q.0;
            if det == zero() {
                continue;
            }
            let x = (&p.2 * &q.1 - &p.1 * &q.2) / &det;
            let y = (&p.0 * &q.2 - &p.2 * &q.0) / &det;
            if feasible(&x, &y) {
                let v = &c[0] * &x + &c[1] * &y;
                if best.as_ref().is_none_or(|b| v > *b) {
                    best = Some(v);
                }
            }
        }
    }
    best.expect("origin is feasible")
}

fn small() -> impl Strategy<Value = Rational> {
    (-5i64..=9).prop_map(int)
}

proptest! {
    #[test]
    fn simplex_matches_vertex_enumeration(
        c in prop::collection::vec(small(), 2),
        rows in prop::collection::vec((small(), small(), 0i64..=20), 1..=4),
    ) {
        // box rows keep every instance bounded
        let mut a: Vec<Vec<Rational>> = rows.iter().map(|(x, y, _)| vec![x.clone(), y.clone()]).collect();
        let mut b: Vec<Rational> = rows.iter().map(|r| int(r.2)).collect();
        a.push(vec![one(), zero()]);
        a.push(vec![zero(), one()]);
        b.extend([int(10), int(10)]);
        match maximize(&c, &a, &b) {
            Outcome::Optimal(opt) => {
                prop_assert!(certify(&c, &a, &b, &opt));
                prop_assert_eq!(opt.value, brute_2d(&c, &a, &b));
            }
            Outcome::Unbounded => prop_assert!(false, "boxed LP reported unbounded"),
        }
    }

    #[test]
    fn constraint_value_matches_term_sum(
        raw in prop::collection::vec(0u32..=1000, 5),
    ) {
        let set = shipped();
        let w: Vec<Rational> = set
            .weights
            .iter()
            .zip(raw.iter().cycle())
            .map(|(d, &r)| &d.lo + (&d.hi - &d.lo) * Rational::new(r.into(), 1000.into()))
            .collect();
        for c in &set.constraints {
            let mut want = zero();
            for t in &c.terms {
                let base = match &t.fv {
                    Some(fv) => &t.coeff * fv.excess(),
                    None => t.coeff.clone(),
                };
                want += match t.dep {
                    Dep::Const => base,
                    Dep::Weight(i) => base * &w[i],
                    Dep::Comp(i) => base * (one() - &w[i]),
                };
            }
            prop_assert_eq!(c.value(&w), want, "{}", c.label());
        }
    }
}
