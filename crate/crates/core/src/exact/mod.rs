//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers or rationals;
//! nothing in the crate touches floating point.

mod int_mat;
mod lp;
mod rational;

pub use int_mat::{hermite_normal_form, kernel_lattice, smith_invariants, IntMat};
pub use lp::{lp_feasible, Constraint, Feasibility, LinearSystem};
pub use rational::{
    determinant, dot, int_vec, is_zero_vec, nullspace, primitive, rank, rat_vec, rref, solve_unique,
    RatVec,
};
pub(crate) use rational::leading_sign;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
