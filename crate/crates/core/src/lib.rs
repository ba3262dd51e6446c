//! Relatively stable module categories and relatively derived categories,
//! computed exactly over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: dense exact linear algebra over GF(p)
//! * [`modrep`]: group algebras, their modules, hom spaces and splitting tests
//! * [`triple`]: a faithful functor `F` with left and right adjoints `L`, `R`,
//!   realized for `W ⊗ ?` on modules and for the forgetful functor from
//!   complexes to graded spaces
//! * [`relexact`]: the `F`-split exact structure, Heller translates, stable
//!   homs, transfer and the Higman test
//! * [`complexes`]: bounded cochain complexes, cones, homotopies, truncations
//! * [`resolve`]: `F`-projective and `F`-injective resolutions, derived homs,
//!   relative Ext by two routes, representability by modules
//! * [`virtproj`]: vanishing tables along iterates of an endofunctor
//! * [`workspace`] and [`cli`]: the JSON workspace format and the command line

pub mod cli;
pub mod complexes;
pub mod error;
pub mod field;
pub mod modrep;
pub mod relexact;
pub mod resolve;
pub mod triple;
pub mod virtproj;
pub mod workspace;

pub use error::{Error, Result};
pub use field::Matrix;
