//! Combinatorial curvature `K(v) = 1 - deg(v)/2 + Σ 1/|σ|` and its excess
//! over the critical value `2/209`.

use crate::map::{FaceVector, MapError, PlanarMap, VertexId};
use crate::rational::{int, q, zero, Rational};

/// The threshold `2/209`; a vertex with `K(v)` below it is "bad".
pub fn critical() -> Rational {
    q(2, 209)
}

/// Curvature of an abstract face vector (multiplicities count).
pub fn curvature_of(sizes: &[usize]) -> Rational {
    let mut k = int(1) - q(sizes.len() as i64, 2);
    for &s in sizes {
        k += q(1, s as i64);
    }
    k
}

pub fn excess_of(sizes: &[usize]) -> Rational {
    curvature_of(sizes) - critical()
}

pub fn curvature(m: &PlanarMap, v: VertexId) -> Result<Rational, MapError> {
    m.check_vertex(v)?;
    Ok(curvature_of(&m.cyclic_vtype(v)))
}

pub fn excess(m: &PlanarMap, v: VertexId) -> Result<Rational, MapError> {
    Ok(curvature(m, v)? - critical())
}

pub fn total_curvature(m: &PlanarMap) -> Rational {
    (0..m.num_vertices()).fold(zero(), |acc, v| acc + curvature_of(&m.cyclic_vtype(v)))
}

impl FaceVector {
    pub fn curvature(&self) -> Rational {
        curvature_of(&self.0)
    }

    pub fn excess(&self) -> Rational {
        excess_of(&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoted_values() {
        assert_eq!(curvature_of(&[3, 3, 3]), q(1, 2));
        assert_eq!(curvature_of(&[3, 7, 41]), q(1, 1722));
        assert_eq!(curvature_of(&[5, 6, 7]), q(1, 105));
        assert_eq!(curvature_of(&[3, 11, 13]), q(1, 858));
        assert_eq!(curvature_of(&[4, 5, 19]), q(1, 380));
        assert!(excess_of(&[3, 3, 3]) > zero());
    }

    #[test]
    fn quoted_table_rows() {
        assert!(excess_of(&[3, 11, 13]) * q(1, 7) > q(-121, 100000));
        assert!(excess_of(&[4, 5, 19]) * q(3, 4) > q(-521, 100000));
        assert!(excess_of(&[3, 7, 41]) > q(-9, 1000));
    }
}
