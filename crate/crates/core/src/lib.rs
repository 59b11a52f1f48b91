//! Exact invariants of isolated hypersurface singularities.
//!
//! Given a polynomial germ `f` with an isolated critical point at the origin,
//! this crate computes, entirely in exact rational arithmetic:
//!
//! - the Jacobian (Milnor) algebra `A_f = Q[[z]]/J_f` via local standard bases,
//!   with Milnor number, Tjurina number, normal forms and multiplication
//!   operators ([`quotient`], [`mora`]);
//! - an independent Macaulay-matrix dimension oracle ([`macaulay`]);
//! - Jordan chains, the canonical weight filtration and the Lefschetz-type
//!   primitive decomposition of any nilpotent operator ([`nilstruct`]);
//! - the Grothendieck residue pairing through the socle functional, and the
//!   higher bilinear forms `res(f^j .,.)` ([`respair`]);
//! - the singularity spectrum for Newton-nondegenerate plane curves,
//!   quasi-homogeneous germs, and sums of germs in disjoint variables
//!   ([`newton`], [`spectrum`]);
//! - the spectral normal forms `S`, `Q`, `J` over formal `(2 pi i)^k` scalars,
//!   the splitting of the multiplication operator into its grade-one and
//!   higher-grade parts, and the binding of spectral chains ([`twist`],
//!   [`hodge`]);
//! - a full pipeline producing a machine-checkable report ([`pipeline`],
//!   [`report`]).

// index-based loops are the clearest style for the dense linear algebra here
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fixtures;
pub mod hodge;
pub mod macaulay;
pub mod matrix;
pub mod monomial;
pub mod mora;
pub mod newton;
pub mod nilstruct;
pub mod pipeline;
pub mod poly;
pub mod quotient;
pub mod rat;
pub mod report;
pub mod respair;
pub mod spectrum;
pub mod twist;
pub mod verify;

pub use error::Error;
pub use matrix::QMatrix;
pub use monomial::{LocalOrder, Monomial};
pub use poly::MultiPoly;
pub use quotient::{milnor_tjurina, OperatorMatrix, QuotientAlgebra, StandardBasis};
pub use rat::Rat;
