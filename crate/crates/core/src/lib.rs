//! Foldy-Lax multiple scattering of a scalar wave by random point scatterers.
//!
//! Lengths are measured in units of the mean interscatterer distance ς and
//! wavenumbers in 1/ς. The modules follow the computational pipeline:
//!
//! - [`specfun`]: complex Bessel/Hankel functions, gamma, Lambert W, zeros
//! - [`green`]: free Green functions and density of states in dimension d
//! - [`scatter`]: point-scatterer amplitudes, cross sections, effective wavenumber
//! - [`pointfield`]: uniform random configurations in a d-ball
//! - [`mscore`]: the multiple-scattering matrix, its LU factorization and wave fields
//! - [`resonance`]: resonance density maps, zero counting, effective-medium poles
//! - [`transport`]: Bethe-Salpeter, diffusion modes and a Boltzmann Monte Carlo
//! - [`harness`]: run configuration, ensembles, statistics and file export

pub mod error;
pub mod green;
pub mod harness;
pub mod mscore;
pub mod pointfield;
pub mod quad;
pub mod resonance;
pub mod scatter;
pub mod specfun;
pub mod transport;

pub use error::{Error, Result};
pub use num_complex::Complex64;
