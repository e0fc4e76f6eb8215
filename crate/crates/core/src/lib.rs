//! Hodge cycle detection and subvariety reconstruction for smooth projective
//! hypersurfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`], [`bigfloat`], [`linalg`]: coefficient domains and the exact and
//!   floating elimination routines shared by everything else.
//! * [`polyring`]: homogeneous polynomials in grevlex order.
//! * [`jacring`]: graded pieces of the Jacobian ring `S/jac(f)`.
//! * [`lattice`], [`numfield`]: integer lattices, LLL, algebraic numbers and
//!   number-field arithmetic.
//! * [`periods`], [`reconstruct`], [`apolarity`], [`hodgeclass`], [`verify`]:
//!   the pipelines built on top.

pub mod apolarity;
pub mod bigfloat;
pub mod error;
pub mod field;
pub mod hodgeclass;
pub mod jacring;
pub mod lattice;
pub mod linalg;
pub mod modp;
pub mod numfield;
pub mod periods;
pub mod polyring;
pub mod reconstruct;
pub mod verify;

mod par;

pub use error::{Error, Result};
pub use field::{ExactField, Field, Rationals};
pub use jacring::Hypersurface;
pub use polyring::{GradedPoly, Monomial};
