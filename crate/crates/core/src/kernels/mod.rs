//! Resolvent kernel, kernel functions, expansion polynomials and the geodesic integral.

pub mod jintegral;
pub mod kernel;
pub mod poly_u;
pub mod quadrature;

pub use jintegral::{j_integral_closed, j_integral_quadrature, j_integral_quadrature_on, regularized_terminating_sum};
pub use kernel::{apply_dk, cross_ratio_r, f_kernel, hyp_lemma_residual, resolvent_q0, KernelPoint};
pub use poly_u::{expansion_coeff_a, expansion_coeff_b, PolynomialInU};
