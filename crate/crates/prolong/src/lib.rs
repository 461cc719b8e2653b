//! Exact computations with linear spaces of homogeneous forms.
//!
//! The central operation is the prolongation of a space of degree-d forms:
//! the forms of degree d+r whose order-r partial derivatives all land back
//! in the original space. Everything is done over the rationals with exact
//! arithmetic, so results are canonical and reproducible: equal inputs give
//! byte-identical printed output.
//!
//! The crate is organized around a few cooperating pieces:
//!
//! * [`poly`]: sparse multivariate polynomials over [`num_rational::BigRational`],
//!   with a small text grammar for parsing and printing.
//! * [`polarize`]: multilinear polarizations of forms, computed combinatorially.
//! * [`linalg`]: sparse fraction-free-in-spirit Gaussian elimination, nullspaces,
//!   and subspace intersection. All bases are reduced row echelon form, so every
//!   subspace has one canonical basis.
//! * [`space`]: [`space::FormSpace`], the canonical representation of a linear
//!   space of forms, plus graded pieces of the ideal it generates.
//! * [`engine`]: three interchangeable prolongation strategies and the
//!   derivative-based ideal membership test.
//! * [`mono`] and [`blowup`]: prolongations of monomial spaces, the blow-up
//!   graph whose cliques enumerate them, and support-block decompositions.
//! * [`map`], [`sample`], [`secant`]: monomial parametrizations, seeded exact
//!   sampling of their images, secant-point vanishing checks, and interpolation
//!   of vanishing ideals.
//! * [`tree`], [`fourier`], [`phylo`], [`frames`]: the binary symmetric model on
//!   a trivalent tree in Fourier coordinates, its quadric invariants, and the
//!   frame construction that produces members of higher prolongations.

pub mod blowup;
pub mod circuits;
pub mod engine;
pub mod error;
pub mod fourier;
pub mod frames;
pub mod io;
pub mod linalg;
pub mod map;
pub mod models;
mod modkernel;
pub mod mono;
pub mod monomial;
pub mod parse;
pub mod phylo;
pub mod polarize;
pub mod poly;
pub mod sample;
pub mod secant;
pub mod space;
pub mod tree;
pub mod varset;

pub use error::{Error, Result};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use space::FormSpace;
pub use varset::VarSet;

/// Exact rational scalar used throughout.
pub type Q = num_rational::BigRational;

/// Integer type backing [`Q`].
pub type Z = num_bigint::BigInt;
