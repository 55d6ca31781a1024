//! Isomorphism of sphere maps up to relabelling and reflection.
//!
//! A map is encoded by a breadth-first walk from a starting dart in a chosen
//! rotation direction; the minimum code over all starts is a canonical form.

use crate::map::{DartId, PlanarMap};

fn code_from(m: &PlanarMap, start: DartId, forward: bool) -> Vec<usize> {
    let n = m.num_vertices();
    let mut label = vec![usize::MAX; n];
    let mut entry = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let v0 = m.origin(start);
    label[v0] = 0;
    entry[v0] = start;
    order.push(v0);
    let mut code = Vec::with_capacity(m.num_darts() + n);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let first = entry[v];
        let mut d = first;
        loop {
            let w = m.head(d);
            if label[w] == usize::MAX {
                label[w] = order.len();
                entry[w] = m.twin(d);
                order.push(w);
            }
            code.push(label[w]);
            d = if forward { m.rot(d) } else { m.rot_inv(d) };
            if d == first {
                break;
            }
        }
        code.push(usize::MAX);
        i += 1;
    }
    code
}

/// Canonical code: equal iff the maps are isomorphic, allowing reflection.
pub fn canonical_code(m: &PlanarMap) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for d in 0..m.num_darts() {
        for forward in [true, false] {
            let c = code_from(m, d, forward);
            if best.as_ref().map_or(true, |b| c < *b) {
                best = Some(c);
            }
        }
    }
    best.unwrap_or_default()
}

pub fn isomorphic(a: &PlanarMap, b: &PlanarMap) -> bool {
    a.num_vertices() == b.num_vertices()
        && a.num_darts() == b.num_darts()
        && a.num_faces() == b.num_faces()
        && canonical_code(a) == canonical_code(b)
}
