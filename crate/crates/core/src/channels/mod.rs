//! The two dynamical maps: Ohmic dephasing and Lorentzian amplitude
//! damping, as time-parametrized channels on the system qubit with
//! divisibility-breakdown detection and Choi-matrix export.

mod maps;
mod spectral;
mod trajectory;
mod volterra;

pub use maps::{
    apply_amplitude_damping_joint, apply_amplitude_damping_system, apply_dephasing_joint,
    apply_dephasing_system, apply_joint, apply_system, choi_matrix, MapDescriptor,
};
pub use spectral::{
    dephasing_factor, lorentzian_jt, memory_kernel, ohmic_rate, LorentzianSpectralDensity,
    OhmicSpectralDensity,
};
pub use trajectory::{ChannelKind, ChannelTrajectory};
pub use volterra::solve_volterra_jt;
