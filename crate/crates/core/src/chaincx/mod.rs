//! Bounded chain complexes, chain maps and homotopies.

mod classes;
mod complex;
mod constructions;
mod homology;
mod homotopy;
mod map;

pub use classes::{
    is_acyclic_fibration_on, is_cofibration, is_fibration, is_fibration_on, is_weak_equivalence,
    is_weak_equivalence_on,
};
pub use complex::ChainComplex;
pub(crate) use complex::union_span;
pub use constructions::{
    cofibre, cylinder_object, direct_sum_complexes, disk, fibre, path_object, sphere, sphere_to_disk, standard_triangle,
    ComplexSum, Cylinder, PathObject, Triangle,
};
pub use homology::{homology, homology_group, hom_complex, hom_map, induced_on_homology, p_homology, HomComplex};
pub(crate) use homology::induced_between;
pub(crate) use homotopy::ChainMapSystem;
pub use homotopy::{chain_map_space, find_chain_homotopy, homotopy_classes, HomotopyClasses};
pub use map::{ChainHomotopy, ChainMap};

#[cfg(test)]
mod tests;
