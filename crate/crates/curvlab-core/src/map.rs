//! Sphere maps stored as rotation systems.
//!
//! A map is a set of darts (directed half-edges). `twin` flips a dart,
//! `rot` steps counterclockwise around the dart's origin, and the face
//! successor is `rot ∘ twin`. Vertices, edges and faces are dense ids.
//! Faces are numbered in the order their dart orbits are discovered.

use std::collections::{HashMap, HashSet};
use std::fmt;
use thiserror::Error;

pub type VertexId = usize;
pub type DartId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("vertex {vertex} lists unknown neighbour {neighbor}")]
    UnknownVertex { vertex: VertexId, neighbor: VertexId },
    #[error("vertex {0} lists itself as a neighbour")]
    LoopEdge(VertexId),
    #[error("vertex {vertex} lists neighbour {neighbor} more than once")]
    MultiEdge { vertex: VertexId, neighbor: VertexId },
    #[error("vertex {vertex} lists {neighbor} but {neighbor} does not list {vertex}")]
    NonSymmetricAdjacency { vertex: VertexId, neighbor: VertexId },
    #[error("map is not connected ({components} components)")]
    NotConnected { components: usize },
    #[error("V - E + F = {chi}, not 2")]
    NotSphere { chi: i64 },
    #[error("unknown {kind} id {id}")]
    UnknownId { kind: &'static str, id: usize },
    #[error("face {0} is not a triangle")]
    NotATriangle(FaceId),
    #[error("vertex {vertex} is not on face {face}")]
    NotIncident { vertex: VertexId, face: FaceId },
    #[error("face list is not a closed oriented surface: {0}")]
    BadFaces(String),
}

/// Sorted multiset of face sizes around a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceVector(pub Vec<usize>);

impl FaceVector {
    pub fn new(mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable();
        FaceVector(sizes)
    }

    pub fn of(sizes: &[usize]) -> Self {
        FaceVector::new(sizes.to_vec())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn count(&self, n: usize) -> usize {
        self.0.iter().filter(|&&x| x == n).count()
    }

    pub fn contains(&self, n: usize) -> bool {
        self.0.contains(&n)
    }

    pub fn is(&self, sizes: &[usize]) -> bool {
        self.0 == sizes
    }

    pub fn max(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }
}

impl fmt::Display for FaceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sorted pair of face sizes on the two sides of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SideVector(pub usize, pub usize);

impl SideVector {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            SideVector(a, b)
        } else {
            SideVector(b, a)
        }
    }
}

impl fmt::Display for SideVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Debug, Clone)]
pub struct PlanarMap {
    rot_lists: Vec<Vec<VertexId>>,
    origin: Vec<VertexId>,
    twin: Vec<DartId>,
    rot: Vec<DartId>,
    rot_inv: Vec<DartId>,
    out: Vec<Vec<DartId>>,
    face_of: Vec<FaceId>,
    faces: Vec<Vec<DartId>>,
    edge_of: Vec<EdgeId>,
    edges: Vec<DartId>,
    dart_index: HashMap<(VertexId, VertexId), DartId>,
}

/// Builds a validated sphere map from counterclockwise neighbour lists.
pub fn build_map(rotation_lists: &[Vec<VertexId>]) -> Result<PlanarMap, MapError> {
    let n = rotation_lists.len();
    let mut origin = Vec::new();
    let mut out = vec![Vec::new(); n];
    let mut dart_index = HashMap::new();
    for (v, nbrs) in rotation_lists.iter().enumerate() {
        for &w in nbrs {
            if w >= n {
                return Err(MapError::UnknownVertex { vertex: v, neighbor: w });
            }
            if w == v {
                return Err(MapError::LoopEdge(v));
            }
            let d = origin.len();
            if dart_index.insert((v, w), d).is_some() {
                return Err(MapError::MultiEdge { vertex: v, neighbor: w });
            }
            origin.push(v);
            out[v].push(d);
        }
    }
    let nd = origin.len();
    let mut twin = vec![0; nd];
    for (v, nbrs) in rotation_lists.iter().enumerate() {
        for &w in nbrs {
            match dart_index.get(&(w, v)) {
                Some(&t) => twin[dart_index[&(v, w)]] = t,
                None => return Err(MapError::NonSymmetricAdjacency { vertex: v, neighbor: w }),
            }
        }
    }
    let mut rot = vec![0; nd];
    let mut rot_inv = vec![0; nd];
    for ds in &out {
        for (i, &d) in ds.iter().enumerate() {
            let nx = ds[(i + 1) % ds.len()];
            rot[d] = nx;
            rot_inv[nx] = d;
        }
    }

    // connectivity over the vertex graph
    let mut seen = vec![false; n];
    let mut components = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in &rotation_lists[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    if components > 1 {
        return Err(MapError::NotConnected { components });
    }

    let mut face_of = vec![usize::MAX; nd];
    let mut faces = Vec::new();
    for d0 in 0..nd {
        if face_of[d0] != usize::MAX {
            continue;
        }
        let fid = faces.len();
        let mut cyc = Vec::new();
        let mut d = d0;
        loop {
            face_of[d] = fid;
            cyc.push(d);
            d = rot[twin[d]];
            if d == d0 {
                break;
            }
        }
        faces.push(cyc);
    }

    let mut edge_of = vec![usize::MAX; nd];
    let mut edges = Vec::new();
    for d in 0..nd {
        if edge_of[d] == usize::MAX {
            edge_of[d] = edges.len();
            edge_of[twin[d]] = edges.len();
            edges.push(d);
        }
    }

    let chi = n as i64 - edges.len() as i64 + faces.len() as i64;
    if chi != 2 {
        return Err(MapError::NotSphere { chi });
    }
    Ok(PlanarMap {
        rot_lists: rotation_lists.to_vec(),
        origin,
        twin,
        rot,
        rot_inv,
        out,
        face_of,
        faces,
        edge_of,
        edges,
        dart_index,
    })
}

/// Builds a map from consistently oriented face cycles over vertices
/// `0..n`. Each directed edge must occur in exactly one cycle.
pub fn from_faces(n: usize, faces: &[Vec<VertexId>]) -> Result<PlanarMap, MapError> {
    let mut next_around: HashMap<(VertexId, VertexId), VertexId> = HashMap::new();
    let mut directed = HashSet::new();
    for f in faces {
        let k = f.len();
        if k < 3 {
            return Err(MapError::BadFaces(format!("face of length {k}")));
        }
        for i in 0..k {
            let (u, v, w) = (f[(i + k - 1) % k], f[i], f[(i + 1) % k]);
            if u >= n || v >= n || w >= n {
                return Err(MapError::BadFaces(format!("vertex beyond {n}")));
            }
            if !directed.insert((v, w)) {
                return Err(MapError::BadFaces(format!("directed edge {v}->{w} repeated")));
            }
            next_around.insert((v, w), u);
        }
    }
    let mut rot_lists = vec![Vec::new(); n];
    let mut by_vertex: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &(v, w) in &directed {
        by_vertex[v].push(w);
    }
    for v in 0..n {
        let Some(&start) = by_vertex[v].iter().min() else { continue };
        let mut cyc = vec![start];
        let mut cur = start;
        loop {
            let nx = *next_around
                .get(&(v, cur))
                .ok_or_else(|| MapError::BadFaces(format!("open fan at vertex {v}")))?;
            if nx == start {
                break;
            }
            cyc.push(nx);
            cur = nx;
            if cyc.len() > by_vertex[v].len() {
                return Err(MapError::BadFaces(format!("non-manifold vertex {v}")));
            }
        }
        if cyc.len() != by_vertex[v].len() {
            return Err(MapError::BadFaces(format!("non-manifold vertex {v}")));
        }
        rot_lists[v] = cyc;
    }
    build_map(&rot_lists)
}

impl PlanarMap {
    pub fn num_vertices(&self) -> usize {
        self.out.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_darts(&self) -> usize {
        self.origin.len()
    }

    pub fn rotation_lists(&self) -> &[Vec<VertexId>] {
        &self.rot_lists
    }

    pub fn origin(&self, d: DartId) -> VertexId {
        self.origin[d]
    }

    pub fn head(&self, d: DartId) -> VertexId {
        self.origin[self.twin[d]]
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.twin[d]
    }

    pub fn rot(&self, d: DartId) -> DartId {
        self.rot[d]
    }

    pub fn rot_inv(&self, d: DartId) -> DartId {
        self.rot_inv[d]
    }

    /// Next dart along the face of `d`.
    pub fn succ(&self, d: DartId) -> DartId {
        self.rot[self.twin[d]]
    }

    /// Previous dart along the face of `d`.
    pub fn pred(&self, d: DartId) -> DartId {
        self.twin[self.rot_inv[d]]
    }

    pub fn face_of(&self, d: DartId) -> FaceId {
        self.face_of[d]
    }

    pub fn edge_of(&self, d: DartId) -> EdgeId {
        self.edge_of[d]
    }

    pub fn edge_dart(&self, e: EdgeId) -> DartId {
        self.edges[e]
    }

    pub fn dart(&self, u: VertexId, v: VertexId) -> Option<DartId> {
        self.dart_index.get(&(u, v)).copied()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.dart(u, v).map(|d| self.edge_of[d])
    }

    /// Outgoing darts of `v` in counterclockwise order.
    pub fn darts_at(&self, v: VertexId) -> &[DartId] {
        &self.out[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.out[v].iter().map(|&d| self.head(d)).collect()
    }

    pub fn face_darts(&self, f: FaceId) -> &[DartId] {
        &self.faces[f]
    }

    pub fn face_size(&self, f: FaceId) -> usize {
        self.faces[f].len()
    }

    pub fn max_face_size(&self) -> usize {
        self.faces.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), MapError> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(MapError::UnknownId { kind: "vertex", id: v })
        }
    }

    pub fn check_face(&self, f: FaceId) -> Result<(), MapError> {
        if f < self.num_faces() {
            Ok(())
        } else {
            Err(MapError::UnknownId { kind: "face", id: f })
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<(), MapError> {
        if e < self.num_edges() {
            Ok(())
        } else {
            Err(MapError::UnknownId { kind: "edge", id: e })
        }
    }

    /// Faces around `v` in rotation order, with multiplicity. The face at
    /// position `i` is the one entered by the `i`-th outgoing dart.
    pub fn vfaces(&self, v: VertexId) -> Vec<FaceId> {
        self.out[v].iter().map(|&d| self.face_of[d]).collect()
    }

    /// Face sizes around `v` in rotation order.
    pub fn cyclic_vtype(&self, v: VertexId) -> Vec<usize> {
        self.out[v].iter().map(|&d| self.faces[self.face_of[d]].len()).collect()
    }

    pub fn vtype(&self, v: VertexId) -> FaceVector {
        FaceVector::new(self.cyclic_vtype(v))
    }

    /// The two faces on either side of `e`.
    pub fn efaces(&self, e: EdgeId) -> (FaceId, FaceId) {
        let d = self.edges[e];
        (self.face_of[d], self.face_of[self.twin[d]])
    }

    pub fn everts(&self, e: EdgeId) -> (VertexId, VertexId) {
        let d = self.edges[e];
        (self.origin[d], self.head(d))
    }

    pub fn etype(&self, e: EdgeId) -> SideVector {
        let (a, b) = self.efaces(e);
        SideVector::new(self.face_size(a), self.face_size(b))
    }

    /// Vertices along `f` in face order, with multiplicity.
    pub fn fverts(&self, f: FaceId) -> Vec<VertexId> {
        self.faces[f].iter().map(|&d| self.origin[d]).collect()
    }

    /// Edges along `f` in face order, with multiplicity.
    pub fn fedges(&self, f: FaceId) -> Vec<EdgeId> {
        self.faces[f].iter().map(|&d| self.edge_of[d]).collect()
    }

    /// The face across the side of triangle `face_of(d)` opposite `origin(d)`.
    pub fn opp_at(&self, d: DartId) -> Result<FaceId, MapError> {
        let t = self.face_of[d];
        if self.face_size(t) != 3 {
            return Err(MapError::NotATriangle(t));
        }
        Ok(self.face_of[self.twin[self.succ(d)]])
    }

    pub fn opp(&self, v: VertexId, t: FaceId) -> Result<FaceId, MapError> {
        self.check_vertex(v)?;
        self.check_face(t)?;
        if self.face_size(t) != 3 {
            return Err(MapError::NotATriangle(t));
        }
        let d = self.faces[t]
            .iter()
            .copied()
            .find(|&d| self.origin[d] == v)
            .ok_or(MapError::NotIncident { vertex: v, face: t })?;
        self.opp_at(d)
    }

    /// Face on the other side of the edge carried by `d`.
    pub fn across(&self, d: DartId) -> FaceId {
        self.face_of[self.twin[d]]
    }

    fn all_vtypes(&self, pred: impl Fn(&FaceVector) -> Option<usize>) -> Option<usize> {
        let mut common = None;
        for v in 0..self.num_vertices() {
            let n = pred(&self.vtype(v))?;
            match common {
                None => common = Some(n),
                Some(c) if c != n => return None,
                _ => {}
            }
        }
        common
    }

    /// Prism of order `N`: every vertex is `(4,4,N)` and `V = 2N`.
    pub fn is_prism(&self) -> bool {
        let order = self.all_vtypes(|fv| match fv.0.as_slice() {
            [4, 4, n] => Some(*n),
            [3, 4, 4] => Some(3),
            _ => None,
        });
        matches!(order, Some(n) if self.num_vertices() == 2 * n)
    }

    /// Antiprism of order `N`: every vertex is `(3,3,3,N)` and `V = 2N`.
    pub fn is_antiprism(&self) -> bool {
        let order = self.all_vtypes(|fv| match fv.0.as_slice() {
            [3, 3, 3, n] => Some(*n),
            _ => None,
        });
        matches!(order, Some(n) if self.num_vertices() == 2 * n)
    }

    /// Cyclic list of side vectors around `f`.
    pub fn face_side_profile(&self, f: FaceId) -> Vec<SideVector> {
        self.fedges(f).into_iter().map(|e| self.etype(e)).collect()
    }
}
