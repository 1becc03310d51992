//! Shared fixtures for the pipeline benchmarks.

use adjtor_core::charvar::{pick_x, KnotPreset};
use adjtor_core::num_complex::Complex;

/// The trace value used throughout the benchmarks.
pub const Z: (f64, f64) = (1.5, 0.5);

pub fn preset(name: &str) -> KnotPreset {
    KnotPreset::builtin(name).expect("built-in preset")
}

pub fn z() -> Complex<f64> {
    Complex::new(Z.0, Z.1)
}

pub fn x() -> Complex<f64> {
    pick_x(z()).expect("z is away from ±2")
}
