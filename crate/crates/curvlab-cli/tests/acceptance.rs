//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the test harness so the lines always reach the output. The
//! process fails if a criterion fails that is not listed in [`KNOWN`], or if
//! a listed one starts passing (the list must stay accurate).

use curvlab_core::admissibility::{enumerate_admissible, transcribed_table};
use curvlab_core::certify;
use curvlab_core::chains::{chain_surgery, find_chains};
use curvlab_core::curvature::{curvature_of, total_curvature};
use curvlab_core::discharging::{audit_discharge, Discharge};
use curvlab_core::pairing::Target;
use curvlab_core::rational::{exact, int, one, parse, q, Rational};
use curvlab_core::refinement::all_refinements;
use curvlab_core::validate::validate_pcc;
use curvlab_core::{FaceVector, PlanarMap};
use curvlab_gen::{corpus, g_family, graph208_chain, transcription};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Criteria that fail for a documented reason.
const KNOWN: &[(u32, &str)] = &[(
    10,
    "at alpha = 1/2 the 13-face receives less of a negative vertex, so its A+B=12 case gains; the case that breaks is the 11-face final A>=4",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn face_census(m: &PlanarMap) -> BTreeMap<usize, usize> {
    let mut c = BTreeMap::new();
    for f in 0..m.num_faces() {
        *c.entry(m.face_size(f)).or_insert(0) += 1;
    }
    c
}

fn curvature_census(m: &PlanarMap) -> BTreeMap<String, usize> {
    let mut c = BTreeMap::new();
    for v in 0..m.num_vertices() {
        *c.entry(exact(&curvature_of(&m.cyclic_vtype(v)))).or_insert(0) += 1;
    }
    c
}

fn vtype_census(m: &PlanarMap) -> BTreeMap<String, usize> {
    let mut c = BTreeMap::new();
    for v in 0..m.num_vertices() {
        *c.entry(m.vtype(v).to_string()).or_insert(0) += 1;
    }
    c
}

fn counts<const N: usize, K: Ord + Clone>(xs: [(K, usize); N]) -> BTreeMap<K, usize> {
    xs.into_iter().collect()
}

fn strs<const N: usize>(xs: [(&str, usize); N]) -> BTreeMap<String, usize> {
    xs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn timed(limit: Duration, mut o: Outcome, t: Instant) -> Outcome {
    let e = t.elapsed();
    if e > limit {
        o.pass = false;
    }
    o.detail = format!("{} [{:.0?}, limit {:?}]", o.detail, e, limit);
    o
}

fn c1_table() -> Outcome {
    let t = Instant::now();
    let got = enumerate_admissible();
    let ok = got == transcribed_table() && got.len() == 18;
    timed(Duration::from_secs(1), outcome(ok, format!("{} families regenerated, transcription equal: {ok}", got.len())), t)
}

fn c2_graph208() -> Outcome {
    let t = Instant::now();
    let m = graph208_chain();
    let counts_ok = (m.num_vertices(), m.num_edges(), m.num_faces()) == (208, 390, 184);
    let faces_ok = face_census(&m) == counts([(3, 130), (5, 26), (7, 26), (39, 2)]);
    let curv_ok = curvature_census(&m) == strs([("1/546", 52), ("1/105", 130), ("1/39", 26)]);
    let total_ok = total_curvature(&m) == int(2);
    let ok = counts_ok && faces_ok && curv_ok && total_ok;
    timed(
        Duration::from_secs(1),
        outcome(
            ok,
            format!(
                "V={} E={} F={}, faces {:?}, curvatures {:?}, total {}",
                m.num_vertices(),
                m.num_edges(),
                m.num_faces(),
                face_census(&m),
                curvature_census(&m),
                exact(&total_curvature(&m))
            ),
        ),
        t,
    )
}

fn c3_identity() -> Outcome {
    let t = Instant::now();
    let m = graph208_chain();
    let d = Discharge::new(&m).expect("pairing builds");
    let big: Vec<Rational> = (0..m.num_faces())
        .filter(|&f| m.face_size(f) == 39)
        .map(|f| d.contribution(Target::Face(f)).c.clone())
        .collect();
    let fp = d.contribution(Target::FPartial).c.clone();
    let total = d.total();
    let ok = big.len() == 2 && big.iter().all(|c| *c == q(34, 4389)) && fp == q(-26, 4389) && total == q(2, 209);
    let big_s: Vec<String> = big.iter().map(exact).collect();
    timed(
        Duration::from_secs(1),
        outcome(ok, format!("39-faces {:?}, F∂ {}, sum {}", big_s, exact(&fp), exact(&total))),
        t,
    )
}

struct CorpusRun {
    maps: Vec<(String, PlanarMap)>,
    discharges: Vec<Option<Discharge>>,
    elapsed: Duration,
}

fn run_corpus() -> CorpusRun {
    let t = Instant::now();
    let maps = corpus();
    let discharges = maps.iter().map(|(_, m)| Discharge::new(m).ok()).collect();
    CorpusRun { maps, discharges, elapsed: t.elapsed() }
}

fn c4_bounds(r: &CorpusRun) -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for ((name, m), d) in r.maps.iter().zip(&r.discharges) {
        let Some(d) = d else {
            bad.push(format!("{name}: pairing failed"));
            continue;
        };
        for row in d.rows(m) {
            if row.bound.is_some() && row.mass.exact != "0" {
                checked += 1;
            }
            if !row.meets_bound {
                bad.push(format!("{name} {}", row.target));
            }
        }
    }
    let e = r.elapsed + t.elapsed();
    let ok = bad.is_empty() && checked > 0 && e < Duration::from_secs(10);
    outcome(
        ok,
        format!("{} maps, {checked} bounded targets, {} violations {:?} [{:.0?}, limit 10s]", r.maps.len(), bad.len(), bad, e),
    )
}

fn c5_row_sums(r: &CorpusRun) -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for ((name, m), d) in r.maps.iter().zip(&r.discharges) {
        let Some(d) = d else {
            bad.push(name.clone());
            continue;
        };
        for v in 0..m.num_vertices() {
            n += 1;
            if d.pairing.row_sum(v) != one() {
                bad.push(format!("{name} v{v}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{n} vertices, {} bad rows {:?}", bad.len(), bad))
}

fn c6_refinements(r: &CorpusRun) -> Outcome {
    let mut n = 0;
    let mut bad = Vec::new();
    for ((name, m), d) in r.maps.iter().zip(&r.discharges) {
        let Some(d) = d else { continue };
        for x in all_refinements(m, d) {
            n += 1;
            match x {
                Ok(x) if x.identity_holds() => {}
                Ok(x) => bad.push(format!("{name} face {}", x.face)),
                Err(e) => bad.push(format!("{name}: {e}")),
            }
        }
    }
    outcome(bad.is_empty() && n > 0, format!("{n} eligible faces decomposed, {} mismatches {:?}", bad.len(), bad))
}

fn c7_constants() -> Outcome {
    let c = certify::certify(&certify::shipped());
    let ex = |s: &[usize]| FaceVector::of(s).excess();
    let alpha_row = ex(&[3, 11, 13]) * q(1, 7) > parse("-0.00121").unwrap();
    let split_row = ex(&[4, 5, 19]) * q(3, 4) > parse("-0.00521").unwrap();
    let rep = curvlab_lp::verify_paper_weights(&curvlab_lp::shipped());
    let final9 = rep.case(9, "A+B=12").map(|c| c.value > parse("0.00003").unwrap()).unwrap_or(false);
    let typos = c.constants.iter().filter(|k| k.typo).count();
    let ok = c.passed() && alpha_row && split_row && final9;
    outcome(
        ok,
        format!(
            "{} rows, {} constants certified ({} typo entries reported, not counted); failures {:?}",
            c.rows.len(),
            c.constants.len() - typos,
            typos,
            c.failures()
        ),
    )
}

fn c8_chains() -> Outcome {
    let m = graph208_chain();
    let chains = find_chains(&m);
    let closed: Vec<_> = chains.iter().filter(|c| c.closed).collect();
    if closed.len() != 1 {
        return outcome(false, format!("{} closed chains", closed.len()));
    }
    let laws = closed[0].count_laws(&m);
    let (g, info) = match chain_surgery(&m, closed[0]) {
        Ok(x) => x,
        Err(e) => return outcome(false, format!("surgery failed: {e}")),
    };
    let pcc = validate_pcc(&g).passed();
    let n1 = info.n1.max(info.n2);
    let ok = laws.holds
        && laws.length % 4 == 0
        && pcc
        && g.num_vertices() == 2 * n1 + 6 * laws.m
        && g.num_vertices() == 208;
    outcome(
        ok,
        format!(
            "L={} m={} edges={} vertices={}; surgery: n1={} n2={} -> {} vertices (2*n1+6m={}), PCC {}",
            laws.length,
            laws.m,
            laws.edges,
            laws.vertices,
            info.n1,
            info.n2,
            g.num_vertices(),
            2 * n1 + 6 * laws.m,
            pcc
        ),
    )
}

fn c9_family(r: &CorpusRun) -> Outcome {
    let mut bad = Vec::new();
    for n in 8..=41 {
        match g_family(n) {
            Ok(m) => {
                let has = (0..m.num_faces()).any(|f| m.face_size(f) == n);
                if !has || !validate_pcc(&m).passed() {
                    bad.push(n);
                }
            }
            Err(_) => bad.push(n),
        }
    }
    let max = r.maps.iter().map(|(_, m)| m.max_face_size()).max().unwrap_or(0);
    outcome(bad.is_empty() && max <= 41, format!("N=8..41, failing {:?}; corpus max face {max}", bad))
}

fn c10_lp() -> Outcome {
    let t = Instant::now();
    let set = curvlab_lp::shipped();
    let rep = curvlab_lp::verify_paper_weights(&set);
    let min9 = rep.section(9).map(|s| s.min_value.clone()).unwrap_or_else(|| int(0));
    let class = curvlab_lp::in_class(&min9, &parse("0.00003").unwrap());
    let p = curvlab_lp::perturb(&set, "alpha", q(1, 2)).expect("alpha declared");
    let flips9 = p.flipped.iter().any(|c| c == "9 A+B=12");
    let ok = rep.passed() && class && flips9;
    timed(
        Duration::from_secs(1),
        outcome(
            ok,
            format!(
                "published weights feasible: {}; section 9 min {} (3/100000 class: {class}); alpha=1/2 breaks {:?}, 9 A+B=12 flipped: {flips9}",
                rep.passed(),
                exact(&min9),
                p.flipped
            ),
        ),
        t,
    )
}

fn c11_fig19() -> Outcome {
    let Some(m) = transcription("fig19") else { return outcome(false, "fig19 not shipped") };
    let counts_ok = (m.num_vertices(), m.num_edges(), m.num_faces()) == (208, 336, 130);
    let vt = vtype_census(&m);
    let vt_ok = vt == strs([("(3,11,13)", 96), ("(3,3,4,11)", 40), ("(3,11,11)", 64), ("(3,3,3,13)", 8)]);
    let curv_ok = curvature_census(&m) == strs([("1/858", 96), ("1/132", 40), ("1/66", 64), ("1/13", 8)]);
    let valid = validate_pcc(&m).passed();
    let audits = match Discharge::new(&m) {
        Ok(d) => {
            let rep = audit_discharge(&m, &d);
            let refine = all_refinements(&m, &d).iter().all(|x| x.as_ref().is_ok_and(|x| x.identity_holds()));
            rep.passed() && d.total() == q(2, 209) && refine
        }
        Err(_) => false,
    };
    let ok = counts_ok && vt_ok && curv_ok && valid && audits && total_curvature(&m) == int(2);
    outcome(
        ok,
        format!(
            "V={} E={} F={}, vtypes {:?}, validate {valid}, audits {audits}",
            m.num_vertices(),
            m.num_edges(),
            m.num_faces(),
            vt
        ),
    )
}

fn main() {
    let corpus = run_corpus();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "admissible table regeneration", c1_table()),
        (2, "208-vertex chain graph", c2_graph208()),
        (3, "discharging identity", c3_identity()),
        (4, "per-class bounds on the corpus", c4_bounds(&corpus)),
        (5, "pairing row sums", c5_row_sums(&corpus)),
        (6, "edge refinements", c6_refinements(&corpus)),
        (7, "constants certification", c7_constants()),
        (8, "chain laws and surgery", c8_chains()),
        (9, "G_N coverage", c9_family(&corpus)),
        (10, "LP verification", c10_lp()),
        (11, "Fig. 19 transcription", c11_fig19()),
    ];
    let mut unexpected = Vec::new();
    for (k, name, o) in &results {
        let known = KNOWN.iter().find(|(n, _)| n == k);
        println!("criterion {k:>2} {:<4} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        match (o.pass, known) {
            (false, Some((_, why))) => println!("             known deviation: {why}"),
            (false, None) => unexpected.push(format!("criterion {k} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {k} passes but is listed as a known deviation")),
            (true, None) => {}
        }
    }
    let passed = results.iter().filter(|(_, _, o)| o.pass).count();
    println!("acceptance: {passed}/{} criteria pass, {} known deviation(s)", results.len(), KNOWN.len());
    if !unexpected.is_empty() {
        for u in &unexpected {
            eprintln!("{u}");
        }
        std::process::exit(1);
    }
}
