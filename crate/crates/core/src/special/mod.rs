//! Gamma-type functions and the Gauss hypergeometric engine.

pub mod gamma;
pub mod hypergeometric;
pub mod identities;

pub use gamma::{binomial, digamma, factorial, gamma, log_gamma, pochhammer, pochhammer_exact};
pub use hypergeometric::{
    hyp2f1, hyp2f1_near_one, hyp2f1_series, hyp2f1_terminating_exact, integer_excess, regime, HypParams, Regime,
};
pub use identities::{
    contiguous_relation_residual, contiguous_relation_residual_exact, gamma_ratio_product, linear_transform_residual,
    quadratic_transform_residual,
};
