//! Exact arithmetic in cyclotomic fields and linear algebra over them.
//!
//! The ambient field for a computation is `ℚ(ζ_M)` where `M` is a multiple
//! of 4 (so the imaginary unit exists) and of every group-generator order in
//! play.  Field elements are kept in canonical power-basis form at all times
//! (see [`num::CycNum`]), matrices carry a single ambient conductor
//! ([`matrix::CycMatrix`]), and homogeneous systems over the maximal real
//! subfield are solved exactly ([`linalg::kernel_over_real_subfield`]).

mod matrix;
mod num;
mod poly;

pub mod linalg;

pub use linalg::{
    determinant, kernel, kernel_over_real_subfield, rank, rref, RationalKernelBasis,
};
pub use matrix::CycMatrix;
pub use num::{cyc_reduce, CycNum};
pub use poly::{cyclotomic_polynomial, divisors, euler_phi};
