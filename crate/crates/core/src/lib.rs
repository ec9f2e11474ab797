//! Relative homological algebra over `Z` and `Z/n`.
//!
//! Modules are finitely presented, complexes are bounded, and every question
//! (lifting, splitting, homotopy, exactness) is decided by an exact linear
//! solve built on the Smith normal form.

pub mod chaincx;
pub mod derived;
pub mod error;
pub mod fpmod;
pub mod linalg;
pub mod model;
pub mod projclass;
pub mod random;
pub mod shape;
pub mod system;

pub use error::{Error, Result};
pub use fpmod::{FpModule, ModMorphism};
pub use linalg::{Matrix, Ring};
pub use shape::AbGroupShape;
