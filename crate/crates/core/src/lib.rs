//! Numerical library for the Wright-function family and the anisotropic
//! (hyperplanar) Green's functions of the time-fractional diffusion equation
//! `d_t^beta c = D laplacian(c)`, `0 < beta <= 1`.
//!
//! The crate evaluates
//!
//! * the Wright function `W(lambda, mu; z) = sum_k z^k / (k! Gamma(lambda k + mu))`
//!   and its M-Wright specialization `M_nu(z) = W(-nu, 1-nu; -z)` by series with
//!   closed-form fast paths ([`wright`]),
//! * the same functions by real-line kernel integrals over `[0, inf)`
//!   ([`wright_quad`]),
//! * the 1D and k-dimensional hyperplanar Green's functions in explicit Wright
//!   form, directional-derivative form, and Laplace-domain form ([`green`]),
//! * numerical Caputo derivatives / Riemann-Liouville integrals used to verify
//!   that the Green's functions solve the fractional PDE ([`fractional`]),
//! * a forward numerical Laplace transform and Talbot-contour inversion used to
//!   verify the transform pairs independently of the series path ([`laplace`]).
//!
//! All numerics are generic over the scalar type through the [`Real`] trait
//! (`f64` in ordinary use, `f32` compiles too); concrete `f64` aliases for the
//! main types are exported at the crate root.

pub mod checks;
pub mod dd;
mod error;
pub mod fractional;
pub mod green;
pub mod laplace;
pub mod quad;
mod scalar;
pub mod special;
pub mod wright;
pub mod wright_quad;

pub use error::{Error, Result};
pub use fractional::{caputo_derivative, factorization_residual_1d, pde_residual_1d, rl_integral, FactorSign, ResidualProfile, TimeGrid};
pub use green::{
    green_1d, green_hat_kd, green_hat_kd_complex, green_kd, green_kd_derivative_form,
    green_kd_derivative_form_sided, normalization_1d, orthant_integral_hat, BranchSide, GreenSpec,
    OrthantIntegral, UnitVector,
};
pub use laplace::{caputo_transform_check, laplace_forward, talbot_inverse, verify_pair, LaplacePair, PairCheck, TalbotConfig};
pub use quad::{integrate_semi_infinite, QuadResult, QuadratureConfig};
pub use scalar::Real;
pub use wright::{bessel_j_relation_check, m_wright, wright, wright_antiderivative, wright_derivative, EvalMethod, EvalResult, WrightParams};
pub use wright_quad::{integral_wright, integral_wright_raw, m_wright_integral, theorem2_kernel};

/// Default scalar for the concrete aliases below.
pub type Scalar = f64;

pub type WrightParams64 = WrightParams<f64>;
pub type EvalResult64 = EvalResult<f64>;
pub type QuadratureConfig64 = QuadratureConfig<f64>;
pub type QuadResult64 = QuadResult<f64>;
pub type GreenSpec64 = GreenSpec<f64>;
pub type UnitVector64 = UnitVector<f64>;
pub type TimeGrid64 = TimeGrid<f64>;
pub type TalbotConfig64 = TalbotConfig<f64>;

pub(crate) use scalar::cst;
