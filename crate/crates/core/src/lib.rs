//! Numerical toolkit for the irrational rotation algebra `C(T) ⋊_θ Z` and
//! its dense subalgebra of exponentially weighted elements.
//!
//! * [`torus`]: trigonometric polynomials on the circle, sup-norm enclosures,
//!   reciprocals.
//! * [`algebra`]: twisted convolution, involution, weighted and ℓ¹ norms, the
//!   conditional expectation `P(F) = F(0)`.
//! * [`spectra`]: finite sections of the regular representation, operator
//!   norm and spectrum estimates, Gelfand radii, Neumann inversion and the
//!   non-spectrality witness `u_1 − λ`.
//! * [`averaging`]: conjugation by unimodular characters and the averaging
//!   approximation of `P`.
//! * [`banach_module`]: the module `C(T)` with the weighted shift action.

pub mod algebra;
pub mod averaging;
pub mod banach_module;
pub mod error;
pub mod json;
pub mod sample;
pub mod spectra;
pub mod torus;

pub use algebra::{AlgebraElement, AlgebraParams, Convergent, RotationParameter, Weight};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use torus::{Interval, TorusFunction};
