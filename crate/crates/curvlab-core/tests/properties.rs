use curvlab_core::admissibility::{enumerate_admissible, family_of, is_admissible, past_bound};
use curvlab_core::classification::classify_vtype;
use curvlab_core::curvature::{critical, curvature_of, total_curvature};
use curvlab_core::discharging::fpartial_closed_form;
use curvlab_core::io::{parse_rotmap, write_rotmap};
use curvlab_core::iso::isomorphic;
use curvlab_core::rational::{exact, int, parse, q, zero};
use curvlab_core::{build_map, FaceVector, PlanarMap};
use num_rational::Ratio;
use proptest::prelude::*;

/// K4 drawn with vertex 3 in the middle of triangle 0,1,2.
fn tetrahedron() -> PlanarMap {
    build_map(&[vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]]).unwrap()
}

/// Curvature in i128 fractions, computed without the library.
fn k_oracle(sizes: &[usize]) -> Ratio<i128> {
    let mut k = Ratio::from_integer(1) - Ratio::new(sizes.len() as i128, 2);
    for &s in sizes {
        k += Ratio::new(1, s as i128);
    }
    k
}

fn same(a: &curvlab_core::Rational, b: Ratio<i128>) -> bool {
    exact(a) == if *b.denom() == 1 { b.numer().to_string() } else { format!("{}/{}", b.numer(), b.denom()) }
}

#[test]
fn tetrahedron_darts_are_consistent() {
    let m = tetrahedron();
    assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (4, 6, 4));
    for d in 0..m.num_darts() {
        assert_eq!(m.twin(m.twin(d)), d);
        assert_ne!(m.twin(d), d);
        assert_eq!(m.origin(m.twin(d)), m.head(d));
        assert_eq!(m.rot_inv(m.rot(d)), d);
        assert_eq!(m.origin(m.rot(d)), m.origin(d));
        assert_eq!(m.succ(d), m.rot(m.twin(d)));
        assert_eq!(m.pred(m.succ(d)), d);
    }
    for f in 0..m.num_faces() {
        assert_eq!(m.face_size(f), 3);
        for &d in m.face_darts(f) {
            assert_eq!(m.face_of(d), f);
        }
    }
    assert_eq!(total_curvature(&m), int(2));
    assert!(m.vtype(0).is(&[3, 3, 3]));
}

#[test]
fn inconsistent_rotation_is_rejected() {
    // 3's neighbours listed clockwise: the surface is no longer a sphere
    assert!(build_map(&[vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 2, 1]]).is_err());
    assert!(build_map(&[vec![1], vec![]]).is_err());
}

#[test]
fn rotmap_round_trip() {
    let m = tetrahedron();
    let text = write_rotmap(&m, Some("k4"));
    let back = parse_rotmap(&text).unwrap();
    assert_eq!(back.rotation_lists(), m.rotation_lists());
    assert!(isomorphic(&m, &back));
}

#[test]
fn critical_value_and_named_curvatures() {
    assert_eq!(critical(), q(2, 209));
    assert_eq!(curvature_of(&[3, 7, 39]), q(1, 546));
    assert_eq!(curvature_of(&[3, 3, 5, 7]), q(1, 105));
    assert_eq!(curvature_of(&[3, 3, 3, 39]), q(1, 39));
    assert_eq!(curvature_of(&[3, 11, 13]), q(1, 858));
    assert_eq!(curvature_of(&[3, 3, 4, 11]), q(1, 132));
}

#[test]
fn fpartial_closed_form_on_the_chain_graph() {
    assert_eq!(fpartial_closed_form(130), q(-26, 4389));
    assert_eq!(fpartial_closed_form(0), zero());
}

#[test]
fn every_bounded_family_stops_at_its_bound() {
    for f in enumerate_admissible() {
        if let Some(k) = past_bound(&f) {
            assert!(k <= zero(), "{f:?} admits one more size");
        }
    }
}

#[test]
fn parse_accepts_decimals_and_fractions() {
    assert_eq!(parse("0.00003"), Some(q(3, 100000)));
    assert_eq!(parse("-34/4389"), Some(q(-34, 4389)));
    assert_eq!(parse("x"), None);
}

fn face_vector() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(3usize..=60, 3..=5)
}

proptest! {
    #[test]
    fn curvature_matches_the_oracle(sizes in prop::collection::vec(3usize..=200, 1..=7)) {
        prop_assert!(same(&curvature_of(&sizes), k_oracle(&sizes)));
    }

    #[test]
    fn admissible_iff_the_table_has_a_family(sizes in face_vector()) {
        let fv = FaceVector::new(sizes.clone());
        let adm = is_admissible(&fv).unwrap();
        prop_assert_eq!(adm, k_oracle(&sizes) > Ratio::from_integer(0));
        prop_assert_eq!(adm, family_of(&fv).is_some());
    }

    #[test]
    fn classification_partitions_the_admissible_vectors(sizes in face_vector()) {
        let fv = FaceVector::new(sizes);
        let adm = is_admissible(&fv).unwrap();
        prop_assert_eq!(classify_vtype(&fv).is_some(), adm);
    }

    #[test]
    fn face_vector_is_order_free(mut sizes in face_vector()) {
        let a = FaceVector::new(sizes.clone());
        sizes.reverse();
        prop_assert_eq!(a.clone(), FaceVector::new(sizes));
        prop_assert_eq!(a.excess(), a.curvature() - critical());
    }
}
