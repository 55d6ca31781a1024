//! Faces over symbolic vertex labels, interned to dense ids on build.

use curvlab_core::{from_faces, MapError, PlanarMap};
use std::collections::{BTreeSet, HashMap};

/// A vertex label: a kind tag and an index, e.g. `("J", 3)`.
pub type Label = (&'static str, i64);

#[derive(Debug, Clone, Default)]
pub struct Patch {
    pub faces: Vec<Vec<Label>>,
}

impl Patch {
    pub fn new() -> Self {
        Patch::default()
    }

    pub fn push(&mut self, f: Vec<Label>) {
        self.faces.push(f);
    }

    /// Directed boundary edges: those whose reverse is not in any face.
    fn boundary_next(&self) -> HashMap<Label, Label> {
        let mut darts = BTreeSet::new();
        for f in &self.faces {
            for i in 0..f.len() {
                darts.insert((f[i], f[(i + 1) % f.len()]));
            }
        }
        darts.iter().filter(|(a, b)| !darts.contains(&(*b, *a))).map(|&(a, b)| (b, a)).collect()
    }

    /// Adds the outer face along the boundary, which must be one cycle.
    pub fn close(&mut self) -> Result<(), MapError> {
        let next = self.boundary_next();
        let Some(&start) = next.keys().min() else {
            return Err(MapError::BadFaces("patch has no boundary".into()));
        };
        let mut cyc = vec![start];
        loop {
            let n = *next
                .get(cyc.last().unwrap())
                .ok_or_else(|| MapError::BadFaces("boundary is not closed".into()))?;
            if n == start {
                break;
            }
            cyc.push(n);
            if cyc.len() > next.len() {
                return Err(MapError::BadFaces("boundary revisits a vertex".into()));
            }
        }
        if cyc.len() != next.len() {
            return Err(MapError::BadFaces(format!(
                "boundary splits into several cycles ({} of {} edges in the first)",
                cyc.len(),
                next.len()
            )));
        }
        self.faces.push(cyc);
        Ok(())
    }

    /// Interns labels in order of first appearance and builds the map.
    pub fn build(&self) -> Result<PlanarMap, MapError> {
        let mut id: HashMap<Label, usize> = HashMap::new();
        let faces: Vec<Vec<usize>> = self
            .faces
            .iter()
            .map(|f| {
                f.iter()
                    .map(|l| {
                        let k = id.len();
                        *id.entry(*l).or_insert(k)
                    })
                    .collect()
            })
            .collect();
        from_faces(id.len(), &faces)
    }
}
