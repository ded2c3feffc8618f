//! Spreading of `[Z_k, Z_1(s)]` in the transverse-field Ising chain.
//!
//! The commutator norm `C_k(s) = || [Z_k, Z_1(s)] ||` is evaluated from the
//! first row of the exponential of a `2N x 2N` tridiagonal walk matrix, with a
//! dense Hilbert-space oracle, a Bessel closed form at `J' = 1` and leading-edge
//! asymptotics as independent references.

pub mod analysis;
pub mod asymptotics;
pub mod bessel;
pub mod critical;
pub mod error;
pub mod model;
pub mod oracle;
pub mod pauli;
pub mod walk;

#[cfg(test)]
mod invariants;

pub use error::{Error, Result};
pub use model::{validate_params, ChainParams, CorrelationSeries, Method, TimeGrid};
pub use pauli::{Pauli, PauliString};
pub use analysis::{
    crossing_time, crossing_times, front_velocity, lightcone, measure_saturation, reflection_safe_horizon,
    FrontEstimate, LightconeGrid,
};
pub use asymptotics::{
    dispersion, lr_leading_exact, lr_leading_exponential, lr_leading_largek, saturation_value, v_group,
    v_group_max, v_group_max_numeric, v_lieb_robinson, LogValue,
};
pub use bessel::{bessel_j, bessel_sum_check};
pub use critical::{ballot_count, lr_critical, signed_walk_sum};
pub use oracle::{
    build_hamiltonian, commutator_isotropy_check, frobenius_norm, heisenberg_evolve, lr_direct, operator_norm,
    pauli_string_matrix, DenseOperator, DirectOracle,
};
pub use walk::highprec::lr_walk_highprec;
pub use walk::{
    build_adjacency, exp_first_row, lr_walk, relevant_strings, walk_coefficients, Propagator, RelevantStrings,
    WalkAdjacency, WalkEngine,
};
