//! Exact arithmetic over cyclotomic fields, built around a real/imaginary
//! product basis of `Q(ω_n)` in which every root of unity decomposes with
//! small integer coefficients.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: rationals, factorization, totients, CRT exponents.
//! * [`basis`]: the product basis `D_n` and decomposition of `Re(ω_n^t)` and
//!   `i·Im(ω_n^t)` into exact coordinate vectors.
//! * [`oracle`]: an independent power-basis representation modulo `Φ_n` used
//!   to validate [`basis`].
//! * [`numeric`]: fixed-point high-precision evaluation with explicit error
//!   bounds.
//! * [`sine`]: exact classification of `sin(kπρ)/sin(mπρ)`.
//! * [`tan`]: verification of `n·tan(πρ) = tan(nπρ)` over rational `ρ`.
//! * [`audit`]: the combined basis cross-check used by `verify-basis`.

pub mod arith;
pub mod audit;
pub mod basis;
mod error;
pub mod numeric;
pub mod oracle;
pub mod sine;
pub mod tan;

pub use arith::{crt_components, euler_phi, factorize, mod_inverse, Factorization, Rational};
pub use basis::{
    build_basis, decompose_prime_power, decompose_root, decompose_two_power, proportionality, BasisAtom,
    BasisDescriptor, BasisKey, CoordVector, Decomposition, LocalDecomposition, Part,
};
pub use error::{Error, Result};
pub use oracle::{
    cyclotomic_poly, key_power, numeric_eval, re_im_power, root_power, vector_power, IntPolynomial, PowerPoly,
};
pub use sine::{classify_ratio, classify_ratio_oracle, sin_vector, Classification, Rho};
pub use tan::{
    check_identity, find_real_root, ratio_form, sweep, sweep_with_jobs, IdentityCheck, IdentityVerdict, RealRoot,
    SweepReport,
};
