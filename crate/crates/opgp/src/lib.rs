//! Gaussian process priors with realizations in the solution set of linear
//! systems of (partial) differential equations and boundary conditions.
//!
//! The construction is symbolic-numeric: operator matrices over polynomial
//! rings and Weyl algebras are manipulated with exact rational arithmetic,
//! parametrizations of solution sets are computed via module Gröbner bases,
//! and the resulting operators are pushed through a squared-exponential
//! kernel in closed form. Conditioning on data happens numerically, but the
//! posterior mean is kept symbolic so that the differential-equation and
//! boundary constraints can be certified exactly.
//!
//! Module map:
//! * [`algebra`] — exact arithmetic in `ℚ[x…]` and the Weyl algebra
//!   `ℚ[x…]⟨∂…⟩`, operator matrices, expression parsing.
//! * [`groebner`] — module Gröbner bases, normal forms, syzygy modules and
//!   left/right nullspaces.
//! * [`parametrize`] — parametrization of solution sets, boundary-ideal
//!   parametrization and intersection of parametrizations.
//! * [`kernel`] — closed-form calculus for polynomial-times-Gaussian
//!   expressions; pushes operator matrices through the base kernel.
//! * [`gp`] — Gram assembly, fitting, symbolic posterior means, grid export.
//! * [`scenario`] — declarative pipeline files driving the above end to end.
//! * [`quiver`] — deterministic SVG rendering of exported vector fields.

pub mod algebra;
pub mod groebner;
pub mod parametrize;
pub mod kernel;
pub mod gp;
pub mod scenario;
pub mod quiver;

pub use algebra::{parse_operator, Monomial, OperatorMatrix, OrePoly, RingKind, RingSpec};
pub use groebner::{
    buchberger, normal_form, reduce_matrix, right_nullspace, row_module_equal, syzygy_module,
    GroebnerBasis, ModuleOrder,
};
pub use parametrize::{
    boundary_param, intersect, parametrize, verify_parametrization, IntersectionResult,
    ParametrizationResult,
};

/// Exact rational scalar used for all symbolic coefficients.
pub type Rational = num_rational::BigRational;
