//! Implicit elastodynamics with barrier-based frictional contact on
//! tetrahedral meshes with high-order Lagrange bases and curved geometry.
//!
//! Contact and friction act on a piecewise-linear collision surface coupled
//! to the volumetric degrees of freedom through a precomputed linear transfer
//! operator, so per-iteration surface trajectories stay linear and standard
//! continuous collision detection applies regardless of basis or geometry
//! order.

pub mod basis;

pub use basis::{QuadratureRule, RefPoint};
