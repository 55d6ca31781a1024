//! Chains of red triangles and the surgery that mirrors one side of a
//! closed chain onto the other.
//!
//! Consecutive red triangles alternately share their `⟨3,5,3,7⟩` corner
//! (a vertex joint) and their `(3,3)` side (an edge joint).

use crate::classification::red_triangles;
use crate::map::{from_faces, EdgeId, FaceId, MapError, PlanarMap, SideVector, VertexId};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Joint {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// Why a chain stops instead of closing up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrokenChain {
    pub face: FaceId,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub triangles: Vec<FaceId>,
    /// `joints[i]` links `triangles[i]` and `triangles[i+1]` (cyclically
    /// when closed).
    pub joints: Vec<Joint>,
    pub closed: bool,
    pub ends: Vec<BrokenChain>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn vertices(&self, m: &PlanarMap) -> BTreeSet<VertexId> {
        self.triangles.iter().flat_map(|&t| m.fverts(t)).collect()
    }

    pub fn edges(&self, m: &PlanarMap) -> BTreeSet<EdgeId> {
        self.triangles.iter().flat_map(|&t| m.fedges(t)).collect()
    }

    /// Checks `L = 4m` with `10m` edges and `6m` vertices.
    pub fn count_laws(&self, m: &PlanarMap) -> ChainLaws {
        let l = self.len();
        let k = l / 4;
        let (e, v) = (self.edges(m).len(), self.vertices(m).len());
        ChainLaws {
            length: l,
            m: k,
            edges: e,
            vertices: v,
            holds: l % 4 == 0 && e == 10 * k && v == 6 * k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLaws {
    pub length: usize,
    pub m: usize,
    pub edges: usize,
    pub vertices: usize,
    pub holds: bool,
}

fn is_3537(cyc: &[usize]) -> bool {
    cyc.len() == 4 && cyc[0] == 3 && cyc[2] == 3 && ((cyc[1] == 5 && cyc[3] == 7) || (cyc[1] == 7 && cyc[3] == 5))
        || cyc.len() == 4 && cyc[1] == 3 && cyc[3] == 3 && ((cyc[0] == 5 && cyc[2] == 7) || (cyc[0] == 7 && cyc[2] == 5))
}

struct Links {
    vertex: HashMap<FaceId, (VertexId, Option<FaceId>)>,
    edge: HashMap<FaceId, (EdgeId, Option<FaceId>)>,
    issues: HashMap<FaceId, String>,
}

fn links(m: &PlanarMap, red: &BTreeSet<FaceId>) -> Links {
    let mut l = Links { vertex: HashMap::new(), edge: HashMap::new(), issues: HashMap::new() };
    for &t in red {
        let corners: Vec<VertexId> = m.fverts(t).into_iter().filter(|&v| is_3537(&m.cyclic_vtype(v))).collect();
        let sides: Vec<EdgeId> = m.fedges(t).into_iter().filter(|&e| m.etype(e) == SideVector(3, 3)).collect();
        if corners.len() != 1 || sides.len() != 1 {
            l.issues.insert(t, format!("{} <3,5,3,7> corners and {} (3,3) sides", corners.len(), sides.len()));
            continue;
        }
        let v = corners[0];
        let other = m.vfaces(v).into_iter().find(|&f| f != t && m.face_size(f) == 3);
        l.vertex.insert(t, (v, other.filter(|f| red.contains(f))));
        let e = sides[0];
        let (a, b) = m.efaces(e);
        let across = if a == t { b } else { a };
        l.edge.insert(t, (e, Some(across).filter(|f| red.contains(f))));
    }
    l
}

/// Partitions the red triangles into maximal chains.
pub fn find_chains(m: &PlanarMap) -> Vec<Chain> {
    let red = red_triangles(m);
    let l = links(m, &red);
    let step = |t: FaceId, by_vertex: bool| -> Option<(Joint, FaceId)> {
        if by_vertex {
            l.vertex.get(&t).and_then(|&(v, n)| n.map(|n| (Joint::Vertex(v), n)))
        } else {
            l.edge.get(&t).and_then(|&(e, n)| n.map(|n| (Joint::Edge(e), n)))
        }
    };
    let mut seen: BTreeSet<FaceId> = BTreeSet::new();
    let mut out = Vec::new();
    for &t0 in &red {
        if seen.contains(&t0) {
            continue;
        }
        // walk backwards to an end (or around the cycle), leaving by vertex first
        let mut start = t0;
        let mut first_by_vertex = true;
        let mut by_vertex = false;
        let mut cur = t0;
        let mut steps = 0;
        let mut closed = false;
        loop {
            match step(cur, by_vertex) {
                Some((_, n)) => {
                    cur = n;
                    by_vertex = !by_vertex;
                    steps += 1;
                    if cur == t0 && !by_vertex {
                        closed = true;
                        break;
                    }
                    if steps > 2 * red.len() + 2 {
                        closed = true;
                        break;
                    }
                }
                None => {
                    // leave the end through the joint we arrived by
                    start = cur;
                    first_by_vertex = !by_vertex;
                    break;
                }
            }
        }
        if closed {
            start = t0;
            first_by_vertex = true;
        }
        let mut tri = vec![start];
        let mut joints = Vec::new();
        let mut ends = Vec::new();
        let mut by_vertex = first_by_vertex;
        let mut cur = start;
        seen.insert(start);
        loop {
            match step(cur, by_vertex) {
                Some((j, n)) => {
                    joints.push(j);
                    if n == start {
                        break;
                    }
                    if !seen.insert(n) {
                        ends.push(BrokenChain { face: n, reason: "revisited triangle".into() });
                        break;
                    }
                    tri.push(n);
                    cur = n;
                    by_vertex = !by_vertex;
                }
                None => {
                    let reason = l.issues.get(&cur).cloned().unwrap_or_else(|| {
                        format!("no red successor across its {}", if by_vertex { "vertex joint" } else { "edge joint" })
                    });
                    ends.push(BrokenChain { face: cur, reason });
                    break;
                }
            }
        }
        if !closed {
            let reason = l.issues.get(&start).cloned().unwrap_or_else(|| {
                format!("no red successor across its {}", if first_by_vertex { "edge joint" } else { "vertex joint" })
            });
            ends.insert(0, BrokenChain { face: start, reason });
        }
        out.push(Chain { triangles: tri, joints, closed, ends });
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("chain is open")]
    OpenChain,
    #[error("boundaries of the two sides do not match: {0}")]
    AsymmetricBoundary(String),
    #[error("glued map is invalid: {0}")]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Serialize)]
pub struct SurgeryInfo {
    pub n1: usize,
    pub n2: usize,
    pub m: usize,
    pub vertices: usize,
    /// Whether the gluing map reverses orientation, so the copied cycles
    /// were reversed.
    pub mirrored: bool,
    /// Shift along the chain, in triangles, of the gluing map.
    pub shift: usize,
}

/// Faces on each side of the chain, found by flood fill across non-chain
/// edges.
pub fn chain_sides(m: &PlanarMap, c: &Chain) -> Vec<BTreeSet<FaceId>> {
    let chain_faces: BTreeSet<FaceId> = c.triangles.iter().copied().collect();
    let chain_edges = c.edges(m);
    let mut side = vec![usize::MAX; m.num_faces()];
    let mut sides = Vec::new();
    for f0 in 0..m.num_faces() {
        if chain_faces.contains(&f0) || side[f0] != usize::MAX {
            continue;
        }
        let id = sides.len();
        let mut set = BTreeSet::new();
        let mut stack = vec![f0];
        side[f0] = id;
        while let Some(f) = stack.pop() {
            set.insert(f);
            for &d in m.face_darts(f) {
                if chain_edges.contains(&m.edge_of(d)) {
                    continue;
                }
                let g = m.across(d);
                if side[g] == usize::MAX && !chain_faces.contains(&g) {
                    side[g] = id;
                    stack.push(g);
                }
            }
        }
        sides.push(set);
    }
    sides
}

/// A symmetry of the chain's triangle complex that swaps its two sides.
struct Gluing {
    phi: BTreeMap<VertexId, VertexId>,
    reverses: bool,
    shift: usize,
}

fn norm_cycle(mut cyc: Vec<VertexId>) -> Vec<VertexId> {
    if let Some(i) = (0..cyc.len()).min_by_key(|&i| cyc[i]) {
        cyc.rotate_left(i);
    }
    cyc
}

fn size_multiset(m: &PlanarMap, v: VertexId, side: &BTreeSet<FaceId>) -> Vec<usize> {
    let mut s: Vec<usize> = m.vfaces(v).into_iter().filter(|f| side.contains(f)).map(|f| m.face_size(f)).collect();
    s.sort_unstable();
    s
}

/// Finds a gluing `φ` with `φ(keep boundary) = other boundary` such that the
/// faces of `keep` at each chain vertex `x` have the sizes of the faces of
/// `other` at `φ(x)`. Orientation-reversing maps are tried first, then by
/// increasing shift.
fn find_gluing(m: &PlanarMap, c: &Chain, keep: &BTreeSet<FaceId>, other: &BTreeSet<FaceId>) -> Option<Gluing> {
    let l = c.len();
    let tri: Vec<Vec<VertexId>> = c.triangles.iter().map(|&t| m.fverts(t)).collect();
    let cverts = c.vertices(m);
    let mut index: BTreeMap<VertexId, BTreeSet<usize>> = BTreeMap::new();
    for (i, t) in tri.iter().enumerate() {
        for &v in t {
            index.entry(v).or_default().insert(i);
        }
    }
    let touches = |v: VertexId, s: &BTreeSet<FaceId>| m.vfaces(v).iter().any(|f| s.contains(f));
    let side_key = |v: VertexId| (touches(v, keep), touches(v, other));
    let kind = |j: &Joint| matches!(j, Joint::Vertex(_));
    for reverses in [true, false] {
        for shift in 0..l {
            for flip in [true, false] {
                let sigma = |i: usize| if flip { (shift + l - i) % l } else { (i + shift) % l };
                // joint types must be preserved
                let joints_ok = (0..l).all(|i| {
                    let j = if flip { (sigma(i) + l - 1) % l } else { sigma(i) };
                    kind(&c.joints[i]) == kind(&c.joints[j])
                });
                if !joints_ok {
                    continue;
                }
                let mut phi = BTreeMap::new();
                let mut ok = true;
                for &x in &cverts {
                    let img: BTreeSet<usize> = index[&x].iter().map(|&i| sigma(i)).collect();
                    let (k, o) = side_key(x);
                    let want = (o, k);
                    let cands: Vec<VertexId> =
                        cverts.iter().copied().filter(|&y| index[&y] == img && side_key(y) == want).collect();
                    if cands.len() != 1 {
                        ok = false;
                        break;
                    }
                    phi.insert(x, cands[0]);
                }
                if !ok {
                    continue;
                }
                let oriented = (0..l).all(|i| {
                    let mut img: Vec<VertexId> = tri[i].iter().map(|v| phi[v]).collect();
                    if reverses {
                        img.reverse();
                    }
                    norm_cycle(img) == norm_cycle(tri[sigma(i)].clone())
                });
                let matched = cverts.iter().all(|&x| size_multiset(m, x, keep) == size_multiset(m, phi[&x], other));
                if oriented && matched {
                    return Some(Gluing { phi, reverses, shift });
                }
            }
        }
    }
    None
}

/// Replaces the smaller side of a closed chain by a copy of the larger one,
/// glued along the chain by a side-swapping symmetry that preserves the
/// boundary incidence structure.
pub fn chain_surgery(m: &PlanarMap, c: &Chain) -> Result<(PlanarMap, SurgeryInfo), SurgeryError> {
    if !c.closed {
        return Err(SurgeryError::OpenChain);
    }
    let sides = chain_sides(m, c);
    if sides.len() != 2 {
        return Err(SurgeryError::AsymmetricBoundary(format!("{} regions instead of 2", sides.len())));
    }
    let cverts = c.vertices(m);
    let interior = |s: &BTreeSet<FaceId>| -> BTreeSet<VertexId> {
        s.iter().flat_map(|&f| m.fverts(f)).filter(|v| !cverts.contains(v)).collect()
    };
    let (i0, i1) = (interior(&sides[0]), interior(&sides[1]));
    let (keep, other, keep_int, n2) =
        if i0.len() >= i1.len() { (&sides[0], &sides[1], &i0, i1.len()) } else { (&sides[1], &sides[0], &i1, i0.len()) };
    let g = find_gluing(m, c, keep, other)
        .ok_or_else(|| SurgeryError::AsymmetricBoundary("no side-swapping symmetry of the chain matches the boundary".into()))?;

    // dense ids: chain vertices and kept interior first, then the copies
    let mut id: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &v in cverts.iter().chain(keep_int.iter()) {
        let k = id.len();
        id.insert(v, k);
    }
    let mut copy: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &v in keep_int {
        copy.insert(v, id.len() + copy.len());
    }
    let total = id.len() + copy.len();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for &t in &c.triangles {
        faces.push(m.fverts(t).iter().map(|v| id[v]).collect());
    }
    for &f in keep {
        let cyc = m.fverts(f);
        faces.push(cyc.iter().map(|v| id[v]).collect());
        let mut img: Vec<usize> =
            cyc.iter().map(|v| if cverts.contains(v) { id[&g.phi[v]] } else { copy[v] }).collect();
        if g.reverses {
            img.reverse();
        }
        faces.push(img);
    }
    let out = from_faces(total, &faces).map_err(|e| match e {
        MapError::BadFaces(s) => SurgeryError::AsymmetricBoundary(s),
        other => SurgeryError::Map(other),
    })?;
    let info = SurgeryInfo {
        n1: keep_int.len(),
        n2,
        m: c.len() / 4,
        vertices: total,
        mirrored: g.reverses,
        shift: g.shift,
    };
    Ok((out, info))
}
