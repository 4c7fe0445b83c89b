//! Exact stationary states, orbit sums and lattice identities for the
//! raise-and-peel interface models A, B and C.

pub mod asm;
pub mod dynamics;
pub mod error;
pub mod hexagon;
pub mod io;
pub mod linalg;
pub mod orbits;
pub mod paths;
pub mod simulate;
pub mod stationary;
pub mod verify;

pub use asm::{asm_identity_suite, asm_number, AsmKind};
pub use dynamics::{
    drop_tile, intensity_matrix, intensity_matrix_capped, DropEvent, DropKind, IntensityMatrix,
    ModelSpec,
};
pub use error::{Error, Result};
pub use linalg::KernelMethod;
pub use orbits::{
    covering, eligible_contacts, maximal_generators, orbit_closure, orbit_sum, Orbit,
};
pub use paths::{
    build_shape, contacts, enumerate_family, in_level_set, interior_min, min_contact_level, mirror,
    reduce, Contact, Family, HeightPath, Model, Shape, Side,
};
pub use simulate::{distance, simulate_chain, simulate_chain_with, SimOptions, SimResult};
pub use stationary::{
    closed_form_s_a, detailed_stats, diagonal_formula, stationary_state, stationary_state_with,
    DetailedStats, StateRecord, StationaryOptions, StationaryState, Summary,
};
pub use verify::{
    verify_conjecture, verify_eq_x, verify_hexagon_on_states, Limits, StateCache,
    VerificationReport, Verifier,
};
