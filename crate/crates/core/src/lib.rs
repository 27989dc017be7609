//! Exact arithmetic and module analysis for principal series representations
//! of `GL2` over the finite rings `O/m^2`, where `O` is the valuation ring of
//! a p-adic field with residue field of order `q = p^f`.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf`] — arithmetic in `F_p` and `F_q` (polynomial basis, table-backed);
//! - [`nmonoid`] — the exponent monoid of digit tuples, its partial order,
//!   both subtractions, carry sets and admissibility;
//! - [`ring2`] — the length-two quotient `O/m^2` in Teichmueller digits, in
//!   both the equal-characteristic and the Witt (unramified) variant;
//! - [`gl2`] — 2x2 matrix groups over [`ring2`], coset factorisation and the
//!   standard generating set;
//! - [`weights`] — Serre-weight bookkeeping, type posets, the constituent
//!   recursion and the level graph;
//! - [`psrep`] — the induced representations `V_{n,r}` for `n <= 2`, their
//!   bases and the generic group action;
//! - [`linalg`] — subspaces, module handles, spin closure, hom spaces,
//!   socle/radical filtrations and an irreducibility test.
//!
//! Everything is exact; no floating point appears anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod gf;
pub mod gl2;
pub mod linalg;
pub mod nmonoid;
pub mod psrep;
pub mod ring2;
pub mod weights;

pub use gf::{FieldSpec, Fq};
pub use gl2::{GenTag, Generator, GeneratorSet, Mat2};
pub use linalg::{ModuleHandle, Subspace};
pub use nmonoid::{CarrySet, NClass, NMonoid};
pub use psrep::{CosetLabel, FLabel, RepSpace, RepVector};
pub use ring2::{R2Elem, RingSpec, Variant};
pub use weights::{BorelCharacter, RamType, SerreWeight, ThetaElem, UnramTheta};
