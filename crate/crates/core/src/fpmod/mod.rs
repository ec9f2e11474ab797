//! The category of finitely presented modules over the base ring.

mod hom;
mod module;
mod morphism;
mod ops;
mod subquotient;

pub use hom::{hom_group, HomGroup};
pub use module::{FpModule, Simplification};
pub use morphism::ModMorphism;
pub use ops::{
    cokernel, direct_sum, direct_sum_over, image, is_exact_at_middle, kernel, middle_homology, tensor,
    tensor_map, DirectSum, Image,
};
pub use subquotient::Subquotient;
