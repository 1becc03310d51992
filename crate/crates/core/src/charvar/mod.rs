//! Knot presets (Riley polynomial, longitude, A-polynomial per component) and
//! the solver for fibers of trace functions over the character variety.

mod fiber;
mod preset;

pub use fiber::{d_gamma, pick_x, solve_fiber, CharacterPoint, FiberSolution, FiberSystem};
pub use preset::{ClosedTorsion, KnotPreset, PresetComponent, SlopeJacobian};
