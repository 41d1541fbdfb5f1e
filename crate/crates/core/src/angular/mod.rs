//! Pauli and angular-momentum algebra for spin-1/2 coupled to orbital motion.

pub mod block;
pub mod clebsch;
pub mod maxwell;
pub mod pauli;
pub mod spinor;

pub use block::{
    lambda_block, l_squared_block, numerator_block, numerator_eigenvalue, sigma_dot_er_block,
    sigma_dot_l_block, sigma_dot_l_plus_one_block, AngularBlock, BlockLabel, ChannelEigen,
};
pub use clebsch::{clebsch_gordan_half, coupled_vector, sigma_dot_l_product};
pub use maxwell::{maxwell_pauli_residual, residual_norm, sample_points, FieldConfig, FieldSample};
pub use pauli::{levi_civita, pauli_product, pauli_product_rule, sigma, Mat2};
pub use spinor::{required_grid_order, sigma_dot_er_quadrature, sigma_dot_er_quadrature_at, QuadratureBlock};
