//! Generators for the graph families studied with curvlab: prisms,
//! antiprisms, Platonic solids, the 208-vertex chain graph and the family
//! `G_N` with a face of every size `8 ≤ N ≤ 41`.
//!
//! Generators are looked up by name in a [`Registry`] of trait objects.

pub mod chain;
pub mod patch;
pub mod solids;

use curvlab_core::io::{parse_rotmap, write_dot, write_rotmap, ParseError};
use curvlab_core::{MapError, PlanarMap};
use std::path::Path;
use thiserror::Error;

pub use chain::{graph208_chain, open_chain, ring, Cap, MotifSpec};
pub use solids::{antiprism, cube, dodecahedron, icosahedron, octahedron, prism, tetrahedron};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("order {0} is too small, need at least 3")]
    NTooSmall(usize),
    #[error("face size {0} is outside 8..=41")]
    SizeOutOfRange(usize),
    #[error("{0}")]
    BadParameter(String),
    #[error("generator {0:?} needs a size argument")]
    MissingSize(&'static str),
    #[error("unknown generator {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Closures for `8 ≤ N ≤ 13`, found by exhaustive search over small patches.
const SMALL: [(usize, &str); 6] = [
    (8, include_str!("../data/g8.rotmap")),
    (9, include_str!("../data/g9.rotmap")),
    (10, include_str!("../data/g10.rotmap")),
    (11, include_str!("../data/g11.rotmap")),
    (12, include_str!("../data/g12.rotmap")),
    (13, include_str!("../data/g13.rotmap")),
];

/// Hand transcriptions of drawn examples, shipped as data.
pub const TRANSCRIPTIONS: [(&str, &str); 3] = [
    ("fig19", include_str!("../data/transcriptions/fig19.rotmap")),
    ("fig5_10", include_str!("../data/transcriptions/fig5_10.rotmap")),
    ("fig5_11", include_str!("../data/transcriptions/fig5_11.rotmap")),
];

pub fn transcription(name: &str) -> Option<PlanarMap> {
    TRANSCRIPTIONS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_rotmap(text).expect("shipped transcription parses"))
}

/// How `g_family(n)` is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyPlan {
    Closure(usize),
    Chain(MotifSpec),
}

pub fn family_plan(n: usize) -> Result<FamilyPlan, GenError> {
    match n {
        8..=13 => Ok(FamilyPlan::Closure(n)),
        14..=41 => Ok(FamilyPlan::Chain(MotifSpec::for_size(n).expect("n >= 14"))),
        _ => Err(GenError::SizeOutOfRange(n)),
    }
}

/// A PCC graph with a face of size exactly `n`.
pub fn g_family(n: usize) -> Result<PlanarMap, GenError> {
    match family_plan(n)? {
        FamilyPlan::Closure(k) => {
            let text = SMALL.iter().find(|(s, _)| *s == k).expect("closure shipped").1;
            parse_rotmap(text).map_err(|source| GenError::Parse { path: format!("g{k}.rotmap"), source })
        }
        FamilyPlan::Chain(spec) => open_chain(spec),
    }
}

pub trait Generator: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn takes_size(&self) -> bool {
        false
    }
    fn generate(&self, size: Option<usize>) -> Result<PlanarMap, GenError>;
}

struct Sized_ {
    name: &'static str,
    summary: &'static str,
    f: fn(usize) -> Result<PlanarMap, GenError>,
}

impl Generator for Sized_ {
    fn name(&self) -> &'static str {
        self.name
    }
    fn summary(&self) -> &'static str {
        self.summary
    }
    fn takes_size(&self) -> bool {
        true
    }
    fn generate(&self, size: Option<usize>) -> Result<PlanarMap, GenError> {
        (self.f)(size.ok_or(GenError::MissingSize(self.name))?)
    }
}

struct Fixed {
    name: &'static str,
    summary: &'static str,
    f: fn() -> PlanarMap,
}

impl Generator for Fixed {
    fn name(&self) -> &'static str {
        self.name
    }
    fn summary(&self) -> &'static str {
        self.summary
    }
    fn generate(&self, _: Option<usize>) -> Result<PlanarMap, GenError> {
        Ok((self.f)())
    }
}

struct Transcribed(&'static str);

impl Generator for Transcribed {
    fn name(&self) -> &'static str {
        self.0
    }
    fn summary(&self) -> &'static str {
        "shipped hand transcription"
    }
    fn generate(&self, _: Option<usize>) -> Result<PlanarMap, GenError> {
        transcription(self.0).ok_or_else(|| GenError::Unknown(self.0.to_string()))
    }
}

#[derive(Default)]
pub struct Registry {
    gens: Vec<Box<dyn Generator>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry::default()
    }

    pub fn standard() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(Sized_ { name: "prism", summary: "prism of order N", f: prism }));
        r.register(Box::new(Sized_ { name: "antiprism", summary: "antiprism of order N", f: antiprism }));
        r.register(Box::new(Sized_ { name: "gN", summary: "PCC graph with a face of size N, 8 <= N <= 41", f: g_family }));
        r.register(Box::new(Sized_ { name: "ring", summary: "closed red-triangle chain of N diamonds", f: ring }));
        r.register(Box::new(Fixed { name: "g208", summary: "208-vertex graph around a closed chain", f: graph208_chain }));
        r.register(Box::new(Fixed { name: "tetrahedron", summary: "tetrahedron", f: tetrahedron }));
        r.register(Box::new(Fixed { name: "cube", summary: "cube", f: cube }));
        r.register(Box::new(Fixed { name: "octahedron", summary: "octahedron", f: octahedron }));
        r.register(Box::new(Fixed { name: "dodecahedron", summary: "dodecahedron", f: dodecahedron }));
        r.register(Box::new(Fixed { name: "icosahedron", summary: "icosahedron", f: icosahedron }));
        for (name, _) in TRANSCRIPTIONS {
            r.register(Box::new(Transcribed(name)));
        }
        r
    }

    pub fn register(&mut self, g: Box<dyn Generator>) {
        self.gens.retain(|x| x.name() != g.name());
        self.gens.push(g);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Generator> {
        self.gens.iter().find(|g| g.name() == name).map(|g| g.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.gens.iter().map(|g| g.name()).collect()
    }

    pub fn generate(&self, name: &str, size: Option<usize>) -> Result<PlanarMap, GenError> {
        self.get(name).ok_or_else(|| GenError::Unknown(name.to_string()))?.generate(size)
    }
}

/// Every map the audits are run over: generator outputs and transcriptions.
pub fn corpus() -> Vec<(String, PlanarMap)> {
    let mut out = vec![("g208".to_string(), graph208_chain())];
    for n in 8..=41 {
        out.push((format!("g{n}"), g_family(n).expect("family member builds")));
    }
    for (name, _) in TRANSCRIPTIONS {
        out.push((name.to_string(), transcription(name).expect("listed")));
    }
    out
}

pub fn import_rotmap(path: &Path) -> Result<PlanarMap, GenError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| GenError::Io { path: path.display().to_string(), source })?;
    parse_rotmap(&text).map_err(|source| GenError::Parse { path: path.display().to_string(), source })
}

pub fn export_rotmap(m: &PlanarMap, path: &Path, comment: Option<&str>) -> Result<(), GenError> {
    std::fs::write(path, write_rotmap(m, comment))
        .map_err(|source| GenError::Io { path: path.display().to_string(), source })
}

pub fn export_dot(m: &PlanarMap, path: &Path, name: &str) -> Result<(), GenError> {
    std::fs::write(path, write_dot(m, name)).map_err(|source| GenError::Io { path: path.display().to_string(), source })
}
