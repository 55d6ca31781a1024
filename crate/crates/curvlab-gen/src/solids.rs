//! Prisms, antiprisms and the Platonic solids.

use crate::GenError;
use curvlab_core::{from_faces, PlanarMap};

fn check_n(n: usize) -> Result<(), GenError> {
    if n < 3 {
        Err(GenError::NTooSmall(n))
    } else {
        Ok(())
    }
}

/// Two `n`-gons joined by a ring of squares; all vertices `(4,4,n)`.
pub fn prism(n: usize) -> Result<PlanarMap, GenError> {
    check_n(n)?;
    let mut faces = vec![(0..n).collect::<Vec<_>>(), (n..2 * n).rev().collect()];
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push(vec![i, n + i, n + j, j]);
    }
    Ok(from_faces(2 * n, &faces)?)
}

/// Two `n`-gons joined by a band of triangles; all vertices `(3,3,3,n)`.
pub fn antiprism(n: usize) -> Result<PlanarMap, GenError> {
    check_n(n)?;
    let mut faces = vec![(0..n).collect::<Vec<_>>(), (n..2 * n).rev().collect()];
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push(vec![i, n + i, j]);
        faces.push(vec![j, n + i, n + j]);
    }
    Ok(from_faces(2 * n, &faces)?)
}

pub fn tetrahedron() -> PlanarMap {
    from_faces(4, &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]]).expect("tetrahedron")
}

pub fn cube() -> PlanarMap {
    prism(4).expect("cube")
}

pub fn octahedron() -> PlanarMap {
    antiprism(3).expect("octahedron")
}

pub fn icosahedron() -> PlanarMap {
    let (top, bottom) = (0, 11);
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![top, u(i), u(i + 1)]);
        faces.push(vec![u(i), l(i), u(i + 1)]);
        faces.push(vec![u(i + 1), l(i), l(i + 1)]);
        faces.push(vec![bottom, l(i + 1), l(i)]);
    }
    from_faces(12, &faces).expect("icosahedron")
}

/// Dual map: one vertex per face, one face per vertex.
pub fn dual(m: &PlanarMap) -> PlanarMap {
    let faces: Vec<Vec<usize>> = (0..m.num_vertices())
        .map(|v| m.darts_at(v).iter().rev().map(|&d| m.face_of(d)).collect())
        .collect();
    from_faces(m.num_faces(), &faces).expect("dual of a simple 3-connected map")
}

pub fn dodecahedron() -> PlanarMap {
    dual(&icosahedron())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (m, v, e, f) in [
            (tetrahedron(), 4, 6, 4),
            (cube(), 8, 12, 6),
            (octahedron(), 6, 12, 8),
            (dodecahedron(), 20, 30, 12),
            (icosahedron(), 12, 30, 20),
            (prism(3).unwrap(), 6, 9, 5),
            (antiprism(7).unwrap(), 14, 28, 16),
        ] {
            assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (v, e, f));
        }
    }

    #[test]
    fn small_orders_rejected() {
        assert!(matches!(prism(2), Err(GenError::NTooSmall(2))));
        assert!(matches!(antiprism(1), Err(GenError::NTooSmall(1))));
    }
}
