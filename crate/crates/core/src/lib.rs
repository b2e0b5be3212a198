//! Permutation-group census engine.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`perm`]: permutations in image form, cycle notation, composition.
//! * [`group`]: deterministic stabilizer chains, order, membership and
//!   exhaustive element iteration.
//! * [`blocks`]: block systems, primitivity, block actions and derived series.
//! * [`field`]: arithmetic in small fields GF(p^e).
//! * [`catalog`]: constructors for cyclic, affine, symmetric, wreath,
//!   projective linear and related groups, plus the `.grp` text format.
//! * [`census`]: counting n-cycles, their conjugacy classes and the cyclic
//!   transitive subgroups, and the bound/equality report built on them.
//! * [`density`]: prime sieving and irreducibility of integer polynomials
//!   modulo primes.
//!
//! Points are 0-based inside the crate and 1-based in every text format.
//! Composition is left to right: `point^(p*q) = (point^p)^q`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod blocks;
pub mod catalog;
pub mod census;
pub mod density;
pub mod field;
pub mod group;
pub mod perm;
pub mod rational;

pub use blocks::{BlockAction, BlockError, BlockSystem, MinimalBlock};
pub use catalog::{CatalogError, GroupSpec};
pub use census::{CensusError, CensusReport, StructureCertificate, StructureVerdict};
pub use density::{DensityReport, IntPoly, PolyModP, Reduction};
pub use field::{FieldError, FqElem, FqField};
pub use group::{GroupError, PermGroup};
pub use perm::{ParseError, PermError, Permutation};
pub use rational::Ratio;
