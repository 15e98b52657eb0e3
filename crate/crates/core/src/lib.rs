//! Group trisections: commutative cubes of epimorphisms
//! `S_g → H_g → Z_k → G` and the computational group theory needed to
//! check them.
//!
//! Words and free-group homomorphisms live in [`word`], folded subgroup
//! graphs in [`stallings`], finitely presented groups and verdict
//! certificates in [`presentation`], the surface group and handlebody maps
//! in [`surface`], and the cube itself in [`trisection`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod presentation;
pub mod stallings;
pub mod surface;
pub mod trisection;
pub mod word;

pub use presentation::{Budget, Certificate, Presentation, Verdict};
pub use stallings::SubgroupGraph;
pub use surface::{HandlebodyMap, SurfaceGroup};
pub use trisection::GroupTrisection;
pub use word::{Alphabet, GeneratorMapping, Word};
