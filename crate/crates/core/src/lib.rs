//! Exact symbolic computation in the relative singularity category of a
//! nodal curve singularity.
//!
//! The engine presents the nodal quiver algebra (three vertices `-`, `*`,
//! `+`, arrows `a, b, g, d` with the monomial relations `da = 0`, `bg = 0`),
//! builds bounded complexes of projectives over it, and works in the Verdier
//! quotient of the homotopy category by the subcategory generated by `P_*`.
//! It normalizes string complexes into canonical indecomposables, computes
//! Hom-space dimensions, Grothendieck-group classes, Auslander-Reiten data,
//! and the stabilization onto the stable category of maximal Cohen-Macaulay
//! modules over `k[[u,v]]/(uv)` — with an independent graded linear-algebra
//! oracle over the homotopy category as ground truth.
//!
//! Everything is exact: coefficients live in a prime field (default modulus
//! 32003) or in arbitrary-precision rationals.

pub mod arquiver;
pub mod cli;
pub mod delta;
pub mod field;
pub mod komplex;
pub mod linalg;
pub mod pathalg;
pub mod strings;

pub use field::{F32003, Rat, Scalar};
