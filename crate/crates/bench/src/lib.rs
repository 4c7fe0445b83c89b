//! Benchmark inputs shared by the criterion suites.

use rpm_core::{Model, Shape};

/// Model sizes small enough for a quick run of every kernel route.
pub const KERNEL_CASES: &[(Model, usize)] = &[(Model::A, 10), (Model::B, 8), (Model::C, 6)];

/// Square windows of the f lattice, by half-width.
pub const LATTICE_HALF_WIDTHS: &[i64] = &[4, 8, 12];

/// Generator of the octet orbit at L = 6.
pub fn octet_generator() -> rpm_core::HeightPath {
    rpm_core::build_shape(Shape::W { h0: 0, s: 0 }, 6).expect("W(0,0) exists at L = 6")
}
