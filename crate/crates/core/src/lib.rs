//! Quantum interferometric power (QIP) of two-qubit system+ancilla states,
//! single-qubit dephasing and amplitude-damping channels with structured
//! reservoirs, and non-Markovianity quantified as integrated backflow of
//! the monitored quantity, alongside the comparison measures (trace
//! distance, mutual information, divisibility).
//!
//! Basis convention: two-qubit states are ordered |00>, |01>, |10>, |11>,
//! first label = system `a` (exposed to noise), second label = ancilla `b`
//! (the measuring side). All operations are pure functions; concurrent use
//! on independent data is safe.

// `!(x > 0.0)` is how parameter checks reject NaN along with the sign.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Index loops here mirror the matrix algebra they implement.
#![allow(clippy::needless_range_loop)]

pub mod channels;
pub mod error;
pub mod numerics;
pub mod qip;
pub mod states;
pub mod textio;
pub mod witnesses;

pub use error::{Error, Result};
