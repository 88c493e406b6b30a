//! Special functions with complex parameters.

pub mod bessel;
pub mod gamma;
pub mod mellin_norm;
pub mod stirling;
pub mod whittaker;
pub mod zeta;

pub use bessel::{bessel_k, k_bessel, k_star};
pub use gamma::{gamma, gamma_real, ln_gamma, recip_gamma};
pub use mellin_norm::{mellin_norm_pole_order, whittaker_mellin_norm};
pub use stirling::{stirling_pair, StirlingPair};
pub use whittaker::{whittaker_direct, whittaker_stade, Continuation, WhittakerEval};
pub use zeta::{xi, zeta, zeta_real};
