//! Exact computation of sumset-growth invariants over integer lattices and
//! number rings.
//!
//! The crate computes the growth quantities `H(f)`, `H(T)`, `H°(T)` attached
//! to integer polynomials and lattice endomorphisms, exact sumsets `A + T·A`
//! and `A + λ·A`, generalized arithmetic progressions with properness
//! certificates, dense-subset decompositions of boxes, and near-extremal
//! convex product bodies whose integer realizations approach the growth
//! bound. All set and algebra computations are exact: arbitrary-precision
//! integers and rationals, with certified interval enclosures wherever a
//! quantity is irrational.
//!
//! Start with the `examples/` directory for runnable walkthroughs of each
//! capability, or the `sumgrowth` binary for the file-driven CLI.

pub mod body;
pub mod decompose;
pub mod error;
pub mod factor;
pub mod gap;
pub mod heights;
pub mod interval;
pub mod matrix;
pub mod points;
pub mod poly;
pub mod report;
pub mod roots;
pub mod sumset;

pub use error::{Error, Result};
pub use factor::{factor_over_integers, is_irreducible, Factorization};
pub use heights::{
    h_circ_of_operator, h_of_operator, height_irreducible, height_poly,
    minimizing_invariant_subspace, InvariantSubspaceResult,
};
pub use interval::RealInterval;
pub use matrix::{LatticeOperator, RationalMatrix, RationalVector};
pub use points::PointSet;
pub use poly::IntPolynomial;
pub use roots::{complex_roots_certified, ComplexEnclosure};
pub use sumset::{
    brute_force_min, naive_sumset_card, ratio_report, ring_sumset, t_sumset, NumberRingContext,
    RatioReport,
};
