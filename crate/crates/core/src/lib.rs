//! Numerical and exact-arithmetic tools for automorphic objects on GL(n).
//!
//! The crate is organised by subject:
//!
//! * [`matrix`]: Iwasawa coordinates, minors, wedge norms, `I_nu`, Langlands parameters, height.
//! * [`coset`]: minor signatures of parabolic cosets in `SL(n, Z)` and representative enumeration.
//! * [`special`]: complex gamma and zeta, K-Bessel, Whittaker functions, Mellin norms.
//! * [`theta`]: the maximal parabolic Eisenstein series through its theta integral.
//! * [`lfun`]: Rankin-Selberg L-functions from Satake data.
//! * [`sieve`]: the `eta` divisor sum, prime density scans and the Mellin test function.
//!
//! All computations are pure functions of their inputs.

pub mod error;
pub mod matrix;
pub mod coset;
pub mod quad;
pub mod special;
pub mod theta;
pub mod lfun;
pub mod sieve;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

pub use lfun::CuspFormData;
pub use sieve::PsiSpec;
pub use coset::{CosetKey, LatticeEnumSpec, ParabolicKind};
pub use matrix::{IwasawaCoords, MinorIndex, SpectralParams};
pub use quad::QuadratureSpec;
pub use special::WhittakerEval;
