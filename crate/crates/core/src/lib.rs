//! Exact, finite-scale verification toolkit for graded category instances.
//!
//! The crate provides four layers, each checkable against brute force at
//! small ("desk") sizes:
//!
//! * [`finset`]: finite sets and maps with canonical labels, plus their
//!   limits, colimits, and image factorizations.
//! * [`cat`]: seven concrete categories of finite structures (sets, pointed
//!   sets, posets, boolean algebras, GF(p) vector spaces, monoid actions,
//!   relational structures), each with a grade function, morphism
//!   classification, factorization, and subobject/quotient enumeration.
//! * [`chains`]: truncated codirected chains, cones, the least-monic-leg
//!   search, the independence-index algorithm over GF(p), and the two
//!   built-in chains whose legs are never monic.
//! * [`functor`] and [`adjoint`]: finitary set functors presented by flat
//!   equations (evaluated by congruence closure), preservation analysis and
//!   the product-preservation trichotomy, least factoring subobjects,
//!   canonical subobject diagrams, and split intersection squares.
//!
//! [`suites`] bundles the named verification suites used by the `gradcat`
//! command-line tool, and [`report`] holds the machine-readable result types.

pub mod adjoint;
pub mod cat;
pub mod chains;
pub mod finset;
pub mod functor;
pub mod gf;
pub mod label;
pub mod report;
pub mod suites;

pub use cat::{CatId, CatMorphism, CatObject, GradeValue};
pub use finset::{FinMap, FinSet, Factorization};
pub use functor::{FunctorPresentation, PresentedFunctor, SetFunctor};
pub use label::Label;
