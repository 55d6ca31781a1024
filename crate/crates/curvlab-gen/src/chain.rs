//! Red-triangle chains: the closed ring behind the 208-vertex graph and the
//! open strips closed by caps that give one face of every size `8..=41`.
//!
//! A diamond is the pair of red triangles `[J_k, t_k, s_k]`, `[s_k, t_k,
//! J_{k+1}]`. Consecutive diamonds meet at the joint `J`. Between joints
//! the pattern alternates: on even `k` a pentagon and a three-triangle fan
//! above the chain and a heptagon below, on odd `k` the reverse. The fans'
//! apexes `XT`/`XB` and their outer corners lie on the two large faces.

use crate::patch::{Label, Patch};
use crate::GenError;
use curvlab_core::PlanarMap;
use serde::Serialize;

fn l(kind: &'static str, k: i64) -> Label {
    (kind, k)
}

/// Faces of the closed ring of `d` diamonds (`d` even), without the two
/// outer faces.
fn ring_faces(d: i64) -> (Patch, Vec<Label>, Vec<Label>) {
    let m = |k: i64| k.rem_euclid(d);
    let v = |kind: &'static str, k: i64| l(kind, m(k));
    let mut p = Patch::new();
    let (mut top, mut bot) = (Vec::new(), Vec::new());
    for k in 0..d {
        p.push(vec![v("J", k), v("t", k), v("s", k)]);
        p.push(vec![v("s", k), v("t", k), v("J", k + 1)]);
        if k % 2 == 0 {
            p.push(vec![v("J", k), v("s", k), v("r", k), v("r", k - 1), v("s", k - 1)]);
            p.push(vec![v("r", k - 1), v("r", k), v("XT", k)]);
            p.push(vec![v("a", k), v("r", k - 1), v("XT", k)]);
            p.push(vec![v("r", k), v("b", k), v("XT", k)]);
            top.extend([v("a", k), v("XT", k), v("b", k)]);
            p.push(vec![v("J", k), v("t", k - 1), v("q", k - 1), v("d", k - 1), v("c", k + 1), v("q", k), v("t", k)]);
        } else {
            p.push(vec![
                v("J", k),
                v("s", k),
                v("r", k),
                v("a", k + 1),
                v("b", k - 1),
                v("r", k - 1),
                v("s", k - 1),
            ]);
            p.push(vec![v("J", k), v("t", k - 1), v("q", k - 1), v("q", k), v("t", k)]);
            p.push(vec![v("q", k), v("q", k - 1), v("XB", k)]);
            p.push(vec![v("q", k - 1), v("c", k), v("XB", k)]);
            p.push(vec![v("d", k), v("q", k), v("XB", k)]);
            bot.extend([v("d", k), v("XB", k), v("c", k)]);
        }
    }
    let bottom: Vec<Label> = bot.chunks(3).rev().flatten().copied().collect();
    (p, top, bottom)
}

/// The closed chain of `d` diamonds (`d` even, `d ≥ 4`). With `d = 26`
/// this is the 208-vertex graph with two faces of size 39.
pub fn ring(d: usize) -> Result<PlanarMap, GenError> {
    if d < 4 || d % 2 == 1 {
        return Err(GenError::BadParameter(format!("ring needs an even number of diamonds >= 4, got {d}")));
    }
    let (mut p, top, bottom) = ring_faces(d as i64);
    p.push(top);
    p.push(bottom);
    Ok(p.build()?)
}

pub fn graph208_chain() -> PlanarMap {
    ring(26).expect("the 26-diamond ring builds")
}

/// Open strip of `n` diamonds, without caps or outer face.
fn strip(n: i64) -> Patch {
    let v = l;
    let fans = |k: i64| (1..n).contains(&k);
    let mut p = Patch::new();
    for k in 0..n {
        p.push(vec![v("J", k), v("t", k), v("s", k)]);
        p.push(vec![v("s", k), v("t", k), v("J", k + 1)]);
    }
    for k in 1..n {
        if k % 2 == 0 {
            p.push(vec![v("J", k), v("s", k), v("r", k), v("r", k - 1), v("s", k - 1)]);
            p.push(vec![v("r", k - 1), v("r", k), v("XT", k)]);
            p.push(vec![v("a", k), v("r", k - 1), v("XT", k)]);
            p.push(vec![v("r", k), v("b", k), v("XT", k)]);
            if fans(k - 1) && fans(k + 1) {
                p.push(vec![v("J", k), v("t", k - 1), v("q", k - 1), v("d", k - 1), v("c", k + 1), v("q", k), v("t", k)]);
            }
        } else {
            if fans(k - 1) && fans(k + 1) {
                p.push(vec![
                    v("J", k),
                    v("s", k),
                    v("r", k),
                    v("a", k + 1),
                    v("b", k - 1),
                    v("r", k - 1),
                    v("s", k - 1),
                ]);
            }
            p.push(vec![v("J", k), v("t", k - 1), v("q", k - 1), v("q", k), v("t", k)]);
            p.push(vec![v("q", k), v("q", k - 1), v("XB", k)]);
            p.push(vec![v("q", k - 1), v("c", k), v("XB", k)]);
            p.push(vec![v("d", k), v("q", k), v("XB", k)]);
        }
    }
    p
}

/// Caps closing the left end of a strip. `A` adds a pentagon, a heptagon
/// and a triangle; `B` adds two pentagons, a heptagon and two triangles
/// and lengthens the outer face by two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cap {
    A,
    B,
}

const CAP_A: &[&[Label]] = &[
    &[("c", 1), ("q", 0), ("t", 0), ("J", 0), ("new", 0)],
    &[("J", 0), ("s", 0), ("J", 1), ("s", 1), ("r", 1), ("a", 2), ("new", 1)],
    &[("new", 0), ("J", 0), ("new", 1)],
];

const CAP_B: &[&[Label]] = &[
    &[("c", 1), ("q", 0), ("t", 0), ("J", 0), ("new", 0)],
    &[("s", 0), ("J", 1), ("s", 1), ("r", 1), ("a", 2), ("new", 1), ("new", 2)],
    &[("J", 0), ("s", 0), ("new", 2), ("new", 3), ("new", 4)],
    &[("new", 0), ("J", 0), ("new", 4)],
    &[("new", 3), ("new", 2), ("new", 1)],
];

impl Cap {
    fn faces(self) -> &'static [&'static [Label]] {
        match self {
            Cap::A => CAP_A,
            Cap::B => CAP_B,
        }
    }
}

/// The strip's end-to-end symmetry, used to place a left cap on the right.
fn mirror(v: Label, n: i64) -> Label {
    let (kind, k) = v;
    if kind == "new" {
        return ("newR", k);
    }
    let (a, b) = (n - k, n - 1 - k);
    if n % 2 == 1 {
        match kind {
            "J" => ("J", a),
            "s" => ("t", b),
            "t" => ("s", b),
            "r" => ("q", b),
            "q" => ("r", b),
            "XT" => ("XB", a),
            "XB" => ("XT", a),
            "a" => ("d", a),
            "d" => ("a", a),
            "b" => ("c", a),
            "c" => ("b", a),
            _ => unreachable!("cap labels are fixed"),
        }
    } else {
        match kind {
            "J" => ("J", a),
            "s" | "t" | "r" | "q" => (kind, b),
            "XT" | "XB" => (kind, a),
            "a" => ("b", a),
            "b" => ("a", a),
            "c" => ("d", a),
            "d" => ("c", a),
            _ => unreachable!("cap labels are fixed"),
        }
    }
}

/// Diamond count and caps of an open chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MotifSpec {
    pub diamonds: usize,
    pub caps: (Cap, Cap),
}

impl MotifSpec {
    /// Size of the outer face: `3n + 1`, plus 2 for every `B` cap.
    pub fn outer_size(&self) -> usize {
        let b = [self.caps.0, self.caps.1].iter().filter(|&&c| c == Cap::B).count();
        3 * self.diamonds + 1 + 2 * b
    }

    /// The motif plan with outer face `size`, for `size ≥ 14`.
    pub fn for_size(size: usize) -> Option<MotifSpec> {
        if size < 14 {
            return None;
        }
        let (b, caps) = match size % 3 {
            1 => (0, (Cap::A, Cap::A)),
            0 => (1, (Cap::A, Cap::B)),
            _ => (2, (Cap::B, Cap::B)),
        };
        Some(MotifSpec { diamonds: (size - 1 - 2 * b) / 3, caps })
    }
}

pub fn open_chain(spec: MotifSpec) -> Result<PlanarMap, GenError> {
    let n = spec.diamonds as i64;
    if n < 3 {
        return Err(GenError::BadParameter(format!("open chains need at least 3 diamonds, got {n}")));
    }
    let mut p = strip(n);
    for f in spec.caps.0.faces() {
        p.push(f.to_vec());
    }
    for f in spec.caps.1.faces() {
        let mut g: Vec<Label> = f.iter().map(|&v| mirror(v, n)).collect();
        if n % 2 == 0 {
            g.reverse();
        }
        p.push(g);
    }
    p.close()?;
    Ok(p.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use curvlab_core::curvature::total_curvature;
    use curvlab_core::rational::int;

    #[test]
    fn ring_counts() {
        let m = graph208_chain();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (208, 390, 184));
        assert_eq!(total_curvature(&m), int(2));
    }

    #[test]
    fn odd_rings_rejected() {
        assert!(ring(7).is_err());
    }

    #[test]
    fn outer_sizes() {
        for n in 14..=41 {
            let s = MotifSpec::for_size(n).unwrap();
            assert_eq!(s.outer_size(), n);
            let m = open_chain(s).unwrap();
            assert_eq!(m.max_face_size(), n);
        }
    }
}
