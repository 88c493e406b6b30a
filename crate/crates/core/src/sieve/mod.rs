//! The divisor sum `eta_s`, prime density scans and the Mellin test function.

pub mod cutoff;
pub mod density;
pub mod eta;
pub mod primes;
pub mod psi;

pub use cutoff::{cutoff_closed_form, mellin_cutoff, mellin_cutoff_with, MellinCutoffReport};
pub use density::{
    eta_delta, eta_lower_density, eta_scan, good_prime_density, overlap_density, DensityReport, PrimeWindow,
};
pub use eta::{eta, eta_prime_abs};
pub use primes::{is_prime, primes_in_window, primes_up_to};
pub use psi::{psi_inverse_mellin, psi_tilde, PsiSpec};
