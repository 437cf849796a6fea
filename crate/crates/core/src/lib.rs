//! Exact computational algebra for finite group cohomology and its
//! arithmetic applications.
//!
//! The crate computes, over explicit multiplication tables:
//!
//! - second group cohomology H²(G, A) with trivial action on finite abelian
//!   coefficients, together with restriction, inflation and coefficient
//!   pushforward maps ([`cohomology`]);
//! - explicit central extensions built from 2-cocycles, splitting tests,
//!   classification of total groups up to isomorphism, and a commutator
//!   rigidity criterion ([`extension`]);
//! - monomial representations induced from faithful characters of central
//!   cyclic subgroups, with exact cyclotomic-integer matrices ([`represent`]);
//! - class groups of imaginary quadratic orders via binary quadratic forms,
//!   S-class-group quotients, irregular primes via the Kummer criterion,
//!   and small cokernel diagrams of finite abelian groups ([`arith`]);
//! - machine-readable certificates that chain the pieces above into
//!   hypothesis checks for strong-approximation and integral-Hasse
//!   counterexample constructions ([`certify`]).
//!
//! Everything is exact: dense multiplication tables, integer Smith normal
//! forms, cyclotomic integers in the power basis. No floating point.
//!
//! With the default `parallel` feature the independent sweeps (cohomology
//! class sweeps, extension classification, Bernoulli index scans) run on
//! rayon; results are bit-identical to the sequential fallback.

pub mod arith;
pub mod certify;
pub mod cohomology;
pub mod cyclotomic;
pub mod extension;
pub mod finab;
pub mod group;
pub mod par;
pub mod represent;
pub mod snf;

pub use finab::FinAb;
pub use group::{FiniteGroup, GroupHom, Subgroup};
