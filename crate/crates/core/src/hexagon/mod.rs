//! Pascal's hexagon relation `a a' + b b' = c c'` on the triangular lattice:
//! closed-form values, reconstruction from boundary data, and the polynomial
//! solution families.

pub mod lattice;
pub mod poly;
pub mod symmetry;

pub use lattice::{
    f_closed, f_product, f_reconstruct, hexagon_around, hexagon_holds, in_zero_sector,
    scaled_negative, special_line_value, HexLattice, Seed, Window,
};
pub use poly::{g_first_column, poly_f, poly_g, LatticePolynomial, Poly, PolyFamily, PolyTable};
pub use symmetry::{symmetry_suite, SymmetryCheck, SymmetryReport};
