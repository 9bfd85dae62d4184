//! Incoherent transport: diffusion approximation, the radial Bethe-Salpeter
//! equation, coherence length and a Monte Carlo walker for the linear
//! Boltzmann equation.
//!
//! Rates γ are in units of 1/ς (γ = 2 Im k); a time rate is vγ.

mod bethe;
mod diffusion;
mod kernel;
mod walker;

pub use bethe::{bethe_salpeter_radial, kernel_mass, BetheSalpeter, BsParams, BsSource};
pub use diffusion::{
    band_depth, diffusion_modes, effective_radius, extrapolation_factor, DiffusionMode, DiffusionSpectrum,
    RadiusForm, StationaryProfile,
};
pub use kernel::{coherence_integrals, coherence_length, half_space_moments, kernel_moments, KernelMoments};
pub use walker::{fit_escape_rate, fit_msd_slope, mc_boltzmann, persistent_walk_msd, HistogramSpec, McConfig, McResult};
