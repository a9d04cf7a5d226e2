//! Exact cohomology of finite groups with finite abelian coefficients, and a
//! decision engine that certifies the local-global principle for m-atic
//! twists of abelian varieties through a fixed list of sufficient criteria.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line front end live in the `twistcert` crate.
//!
//! Layout:
//! - [`groups`]: finite groups by multiplication table, subgroups, quotients.
//! - [`gmodules`]: finite abelian G-modules, `μ_m` with a cyclotomic character.
//! - [`linalg`]: matrices over `Z/e`, Smith normal form, subquotients.
//! - [`cohomology`]: bar-resolution `H^0`, `H^1`, `H^2` and the maps between them.
//! - [`oracle`]: brute-force enumeration used to cross-check [`cohomology`].
//! - [`albert`]: admissible twist orders and the coprimality certificate.
//! - [`lgp`]: instances, criteria and verdicts.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod albert;
pub mod arith;
pub mod catalog;
pub mod cohomology;
pub mod gmodules;
pub mod groups;
pub mod lgp;
pub mod linalg;
pub mod oracle;

pub use cohomology::{CohClass, Cochain, CohomologyError, CohomologyGroup, CohomologyMap};
pub use gmodules::{CyclotomicCharacter, GModule, ModuleElement, ModuleError};
pub use groups::{FiniteGroup, GroupError, GroupHom, GroupSpec, Subgroup};
pub use lgp::{Criterion, Instance, Verdict, VerdictStatus};
