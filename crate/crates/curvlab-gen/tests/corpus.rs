use curvlab_core::chains::{chain_surgery, find_chains};
use curvlab_core::curvature::total_curvature;
use curvlab_core::discharging::{global_audit, Discharge};
use curvlab_core::io::{parse_rotmap, write_rotmap};
use curvlab_core::iso::isomorphic;
use curvlab_core::rational::{int, one, q};
use curvlab_core::validate::{is_pcc, validate_pcc};
use curvlab_core::{build_map, PlanarMap};
use curvlab_gen::{corpus, g_family, graph208_chain, icosahedron, prism, Registry};
use proptest::prelude::*;
use std::sync::OnceLock;

fn maps() -> &'static [(String, PlanarMap)] {
    static C: OnceLock<Vec<(String, PlanarMap)>> = OnceLock::new();
    C.get_or_init(corpus)
}

/// Same map with vertex `v` renamed `perm[v]`.
fn relabel(m: &PlanarMap, perm: &[usize]) -> PlanarMap {
    let mut lists = vec![Vec::new(); perm.len()];
    for (v, nbrs) in m.rotation_lists().iter().enumerate() {
        lists[perm[v]] = nbrs.iter().map(|&w| perm[w]).collect();
    }
    build_map(&lists).unwrap()
}

fn sorted_vtypes(m: &PlanarMap) -> Vec<String> {
    let mut v: Vec<String> = (0..m.num_vertices()).map(|v| m.vtype(v).to_string()).collect();
    v.sort();
    v
}

#[test]
fn every_corpus_map_is_pcc_and_audits_clean() {
    assert!(!maps().is_empty());
    for (name, m) in maps() {
        assert!(is_pcc(m), "{name}");
        assert_eq!(total_curvature(m), int(2), "{name}");
        let rep = global_audit(m);
        assert!(rep.passed(), "{name}: {:?}", rep.failures());
    }
}

#[test]
fn prisms_are_not_pcc() {
    for n in [5, 9, 12] {
        assert!(!validate_pcc(&prism(n).unwrap()).passed());
    }
}

#[test]
fn icosahedron_has_no_chains() {
    assert!(find_chains(&icosahedron()).is_empty());
}

#[test]
fn family_members_have_open_chains_only() {
    let m = g_family(25).unwrap();
    let chains = find_chains(&m);
    assert!(!chains.is_empty());
    assert!(chains.iter().all(|c| !c.closed));
}

#[test]
fn surgery_output_has_the_same_shape_again() {
    let m = graph208_chain();
    let c = find_chains(&m).into_iter().find(|c| c.closed).unwrap();
    let (once, _) = chain_surgery(&m, &c).unwrap();
    let c2 = find_chains(&once).into_iter().find(|c| c.closed).expect("surgery keeps a closed chain");
    let (twice, _) = chain_surgery(&once, &c2).unwrap();
    assert!(isomorphic(&once, &twice));
}

#[test]
fn registry_names_resolve() {
    let r = Registry::standard();
    for name in r.names() {
        assert!(r.get(name).is_some());
    }
    assert!(r.generate("no-such-family", None).is_err());
}

fn corpus_index() -> impl Strategy<Value = usize> {
    0..maps().len()
}

fn indexed_perm() -> impl Strategy<Value = (usize, Vec<usize>)> {
    corpus_index().prop_flat_map(|i| {
        let n = maps()[i].1.num_vertices();
        (Just(i), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabelling_changes_nothing((i, perm) in indexed_perm()) {
        let m = &maps()[i].1;
        let r = relabel(m, &perm);
        prop_assert!(isomorphic(m, &r));
        prop_assert_eq!(validate_pcc(m).passed(), validate_pcc(&r).passed());
        prop_assert_eq!(sorted_vtypes(m), sorted_vtypes(&r));
        let (a, b) = (Discharge::new(m).unwrap(), Discharge::new(&r).unwrap());
        prop_assert_eq!(a.total(), b.total());
        prop_assert_eq!(b.total(), int(2) - q(2 * m.num_vertices() as i64, 209));
    }

    #[test]
    fn rows_sum_to_one((i, perm) in indexed_perm()) {
        let r = relabel(&maps()[i].1, &perm);
        let d = Discharge::new(&r).unwrap();
        for v in 0..r.num_vertices() {
            prop_assert_eq!(d.pairing.row_sum(v), one());
        }
    }

    #[test]
    fn rotmap_text_round_trips(i in corpus_index()) {
        let m = &maps()[i].1;
        let back = parse_rotmap(&write_rotmap(m, None)).unwrap();
        prop_assert_eq!(back.rotation_lists(), m.rotation_lists());
    }
}

#[test]
fn pairing_needs_the_special_rules() {
    use curvlab_core::pairing::{build_pairing_with, PairingError};
    use curvlab_core::rules::RuleRegistry;
    assert!(!RuleRegistry::standard().names().is_empty());
    // the chain graph has only table vertices
    assert!(build_pairing_with(&graph208_chain(), &RuleRegistry::empty()).is_ok());
    let missing = maps()
        .iter()
        .filter(|(_, m)| matches!(build_pairing_with(m, &RuleRegistry::empty()), Err(PairingError::NoRule { .. })))
        .count();
    assert!(missing > 0);
}
