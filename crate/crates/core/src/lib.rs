//! Exact concave cocirculations on convex triangular grids and the
//! honeycombs dual to them.

pub mod axis;
pub mod constructions;
mod dsu;
pub mod deformation;
pub mod duality;
pub mod error;
pub mod extremality;
pub mod honeycomb;
pub mod integralizer;
pub mod io;
pub mod lattice;
pub mod legal_path;
pub mod rational;

pub use axis::{Axis, Sign};
pub use error::{Error, Result};
pub use honeycomb::{DualPoint, Edge, HLine, Honeycomb, XiSystem};
pub use lattice::{Cocirculation, ConvexGrid, GridEdge, GridPoint, Tiling, Triangle};
pub use rational::Rational;
