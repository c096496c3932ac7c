//! Local higher Selberg zeta log-derivatives, the polynomial families and residue coefficients.

pub mod logderiv;
pub mod polys;
pub mod residues;
pub mod term;

pub use logderiv::{local_logderiv, local_logderiv_binomial, local_logderiv_sum, LocalZetaQuery, PartialSum};
pub use polys::{coeff_c, poly_p, poly_p_coefficients, poly_p_gamma_form, poly_p_l};
pub use residues::{
    model_residue_psi_l, pole_location, residue_coeff_psi_l, residue_coeff_xi, residue_coeff_xi_by_composition,
    ResidueQuery, Sign,
};
pub use term::{power_index, term_i, term_i_hypergeometric};
