//! Exact verification toolkit for planar graphs of positive combinatorial
//! curvature: sphere maps as rotation systems, curvature, the discharging
//! pairing and its audits, red-triangle chains and the chain surgery.

pub mod admissibility;
pub mod certify;
pub mod chains;
pub mod classification;
pub mod curvature;
pub mod discharging;
pub mod io;
pub mod iso;
pub mod map;
pub mod pairing;
pub mod rational;
pub mod refinement;
pub mod report;
pub mod rules;
pub mod validate;

pub use map::{build_map, from_faces, FaceVector, MapError, PlanarMap, SideVector};
pub use rational::Rational;
