//! Coefficient-space computations for the weighted Bergman spaces `A²_ξ` on
//! the unit disc and the discrete series representations of `SU(1,1)`.
//!
//! Functions are finite Taylor-coefficient vectors ([`CoeffVector`]); norms,
//! operators and kernels act on those coefficients exactly, and
//! [`quadrature`] integrates over the disc as an independent check.

pub mod coeff;
pub mod error;
pub mod operators;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod shift;
pub mod su11;
pub mod uncertainty;
pub mod verify;
pub mod weight;

pub use coeff::CoeffVector;
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use operators::{
    classify_symmetric, commutator_matrix, from_rep, is_scalar_matrix, is_scalar_op, symmetric_tridiagonal, to_rep,
    zhu_scan, FirstOrderOp, RepDecomposition, SelfAdjointParams, SymmetricForm, TriDiag, Verdict, ZhuReport,
};
pub use quadrature::{kernel_eval, reproduce, KernelPoint, QuadratureGrid};
pub use series::{derivative_check, derived_op, group_act, group_act_poly, xnorm_sq, Numerator, RepContext};
pub use shift::{
    domain_identification_check, frame_constants, kernel_shift_residual, shift_apply, shift_invert, FrameConstants,
    ShiftOp,
};
pub use su11::{bracket, derived_basis_constants, BasisCoords, GroupElement, LieElement};
pub use uncertainty::{consistency_check, lie_up, soltani_up, UncertaintyReport};
pub use weight::{
    basis_to_taylor, basis_vector, bergman_norm_sq, inner_product, monomial_norm_sq, pochhammer, smooth_seminorm_sq,
    sobolev_norm_sq, taylor_to_basis, TruncationPolicy, WeightParam,
};
