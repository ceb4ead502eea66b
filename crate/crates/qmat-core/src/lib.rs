//! Exact symbolic computation in the reflection equation algebra (REA) and
//! the FRT bialgebra attached to quantum GL(N).
//!
//! The crate is `no_std` (allocation only) and fully exact: every scalar is a
//! rational function of the deformation parameter `q` with arbitrary-precision
//! rational coefficients. There is no floating point and no tolerance anywhere;
//! all verification routines decide identities by canonical-form equality.
//!
//! Layout:
//!
//! * [`scalars`]  - rationals, Laurent polynomials in `q`, reduced rational functions
//! * [`ncpoly`]   - noncommutative polynomials over generator words, parsing and printing
//! * [`pbw`]      - straightening rules and memoized PBW normal forms for both algebras
//! * [`qcomb`]    - index-set combinatorics: weights, lengths, exceedance, cliques
//! * [`hecke`]    - Hecke algebra of type A in the natural basis, antisymmetrizers
//! * [`rmatrix`]  - R-matrix tensor operators, braid representation, exact rank
//! * [`twist`]    - the degree-two twist between the two algebras and the trace map
//! * [`minors`]   - quantum minors of both kinds and their row expansions
//! * [`central`]  - central elements, power traces, Cayley-Hamilton and Newton checks

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod central;
pub mod hecke;
pub mod minors;
pub mod ncpoly;
pub mod pbw;
pub mod qcomb;
pub mod rmatrix;
pub mod scalars;
pub mod twist;
