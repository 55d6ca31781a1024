use curvlab_core::certify;
use curvlab_core::rational::{one, parse, q, Rational};
use curvlab_lp::scenario::Dep;
use curvlab_lp::{in_class, perturb, shipped, solve, solve_in, verify_paper_weights, LpError};

fn r(s: &str) -> Rational {
    parse(s).unwrap()
}

#[test]
fn every_case_holds_at_the_published_weights() {
    let rep = verify_paper_weights(&shipped());
    for c in &rep.cases {
        assert!(c.pass, "{} {} fails: {}", c.section, c.case, c.value);
    }
    assert!(rep.passed());
}

#[test]
fn section_minima_match_the_quoted_conclusions() {
    let rep = verify_paper_weights(&shipped());
    let min = |s| rep.section(s).unwrap().min_value.clone();
    assert!(min(6) > r("0.002"));
    assert!(min(12) > r("0.011"));
    assert!(in_class(&min(8), &r("0.0003")));
    assert!(in_class(&min(9), &r("0.00003")));
    assert_eq!(rep.section(9).unwrap().min_case, "A+B=10,B>=2");
    assert!(in_class(&rep.case(9, "A+B=12").unwrap().value, &r("0.00003")));
}

#[test]
fn thirteen_face_final_case_is_exact() {
    // 4·e·6/7 + 8·e·4/7 + excess(4,4,13) with e = excess(3,11,13)
    let rep = verify_paper_weights(&shipped());
    let e = q(1, 858) - q(2, 209);
    let c2 = q(1, 13) - q(2, 209);
    let want = q(4, 1) * &e * q(6, 7) + q(8, 1) * &e * q(4, 7) + c2;
    assert_eq!(rep.case(9, "A+B=12").unwrap().value, want);
}

#[test]
fn alpha_half_breaks_the_eleven_face_not_the_thirteen_face() {
    let p = perturb(&shipped(), "alpha", q(1, 2)).unwrap();
    assert_eq!(p.flipped, vec!["8 final A>=4".to_string()]);
    // the 13-face only gains when it receives less of a negative vertex
    let before = verify_paper_weights(&shipped());
    let a = &before.case(9, "A+B=12").unwrap().value;
    assert!(p.report.case(9, "A+B=12").unwrap().value > *a);
}

#[test]
fn alpha_zero_breaks_the_thirteen_face() {
    let p = perturb(&shipped(), "alpha", q(0, 1)).unwrap();
    assert!(p.flipped.contains(&"9 A+B=12".to_string()));
}

#[test]
fn optimum_is_certified_and_dominates_the_published_point() {
    let set = shipped();
    let sol = solve(&set).unwrap();
    assert!(sol.certified);
    let rep = verify_paper_weights(&set);
    let at_published = rep.cases.iter().map(|c| c.slack.clone()).min().unwrap();
    assert!(sol.margin.unwrap() >= at_published);
}

#[test]
fn forcing_alpha_to_half_stays_feasible_only_by_moving_other_weights() {
    let set = shipped();
    let k = set.weight_index("alpha").unwrap();
    let mut bx = curvlab_lp::boxes(&set);
    bx[k] = (q(1, 2), q(1, 2));
    match solve_in(&set, &bx) {
        Ok(sol) => assert!(sol.margin.unwrap() > q(0, 1)),
        Err(LpError::Infeasible { iis, .. }) => assert!(iis.iter().any(|c| c.starts_with("8 "))),
        Err(e) => panic!("{e}"),
    }
}

/// Every weighted coefficient traces to a certified table row of the same
/// section carrying that share, and every constant term names a face vector
/// some row of the section covers.
#[test]
fn coefficients_trace_to_certified_rows() {
    let set = shipped();
    let table = certify::shipped();
    let w = set.defaults();
    for c in &set.constraints {
        for t in &c.terms {
            let Some(fv) = &t.fv else { continue };
            let share = match t.dep {
                Dep::Weight(i) => Some(w[i].clone()),
                Dep::Comp(i) => Some(one() - &w[i]),
                Dep::Const => None,
            };
            let found = table.rows.iter().filter(|row| row.section == c.section).any(|row| {
                row.instances().0.contains(fv) && share.as_ref().is_none_or(|s| row.weights.contains(s))
            });
            assert!(found, "{} {}: {} with share {:?} has no certified row", c.section, c.case, fv, share);
        }
    }
}
