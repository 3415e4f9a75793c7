//! Hodge-theoretic invariants of Hilbert schemes of points on a surface.

mod betti;
mod chi_y;
mod deformation;
mod hilb;
mod hochschild;
mod nested;
mod types;

pub use betti::{betti_series, frolicher_check};
pub use chi_y::{chi_y_exp, chi_y_from_hodge, chi_y_product};
pub use deformation::{
    deformation_closed_forms, deformation_dims, sn_invariant_tangent, structure_sheaf_sym,
    tangent_dims_via_hodge,
};
pub use hilb::{
    diamond_dims, diamond_polynomial, hilb_hodge, hilb_series, hilb_via_partitions,
    super_sym_series, sym_power_twisted_hodge, BigradedDims,
};
pub use hochschild::{hh_dims, hh_dims_from_series, hh_rhs_series};
pub use nested::{nested_hodge, nested_series, nested_via_strata};
pub use types::{EngineError, GradedDims, HodgePolynomial};
