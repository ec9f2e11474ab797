use num_bigint::BigInt;

use super::{kernel, FpModule};
use crate::error::{Error, Result};
use crate::linalg::{cokernel_divisors, Matrix};

/// A module map given on generators, with a witness `W` such that
/// `matrix * source.relations = target.relations * W`.
///
/// `==` compares the generator matrices literally and ignores the witness;
/// use [`ModMorphism::equals`] for equality modulo relations.
#[derive(Clone, Debug)]
pub struct ModMorphism {
    source: FpModule,
    target: FpModule,
    matrix: Matrix,
    witness: Matrix,
}

impl PartialEq for ModMorphism {
    fn eq(&self, other: &ModMorphism) -> bool {
        self.source == other.source && self.target == other.target && self.matrix == other.matrix
    }
}

impl Eq for ModMorphism {}

impl std::hash::Hash for ModMorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.source.hash(state);
        self.target.hash(state);
        self.matrix.hash(state);
    }
}

impl ModMorphism {
    pub fn new(source: &FpModule, target: &FpModule, matrix: Matrix) -> Result<ModMorphism> {
        if source.ring() != target.ring() || matrix.ring() != source.ring() {
            return Err(Error::RingMismatch);
        }
        if matrix.shape() != (target.gens(), source.gens()) {
            return Err(Error::DimensionMismatch(format!(
                "generator matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens(),
                source.gens()
            )));
        }
        let image_of_relations = &matrix * source.relations();
        let witness = target
            .relation_witness(&image_of_relations)
            .ok_or(Error::IllDefined)?;
        Ok(ModMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
            witness,
        })
    }

    pub fn identity(m: &FpModule) -> ModMorphism {
        let ring = m.ring();
        ModMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(ring, m.gens()),
            witness: Matrix::identity(ring, m.relations().cols()),
        }
    }

    pub fn zero(source: &FpModule, target: &FpModule) -> ModMorphism {
        let ring = source.ring();
        ModMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(ring, target.gens(), source.gens()),
            witness: Matrix::zeros(ring, target.relations().cols(), source.relations().cols()),
        }
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn witness(&self) -> &Matrix {
        &self.witness
    }

    /// `self ∘ first`. Panics when `first.target != self.source`.
    pub fn compose(&self, first: &ModMorphism) -> ModMorphism {
        assert_eq!(first.target, self.source, "compose: target/source mismatch");
        ModMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
            witness: &self.witness * &first.witness,
        }
    }

    fn assert_parallel(&self, other: &ModMorphism) {
        assert!(
            self.source == other.source && self.target == other.target,
            "morphisms are not parallel"
        );
    }

    pub fn add(&self, other: &ModMorphism) -> ModMorphism {
        self.assert_parallel(other);
        ModMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix + &other.matrix,
            witness: &self.witness + &other.witness,
        }
    }

    pub fn sub(&self, other: &ModMorphism) -> ModMorphism {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModMorphism {
        ModMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: -&self.matrix,
            witness: -&self.witness,
        }
    }

    pub fn scale(&self, c: &BigInt) -> ModMorphism {
        ModMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(c),
            witness: self.witness.scale(c),
        }
    }

    /// Zero as a module map, i.e. every generator lands in the target relations.
    pub fn is_zero(&self) -> bool {
        self.target.contains_columns(&self.matrix)
    }

    /// Equality modulo the target relations.
    pub fn equals(&self, other: &ModMorphism) -> bool {
        self.assert_parallel(other);
        self.target.contains_columns(&(&self.matrix - &other.matrix))
    }

    pub fn is_surjective(&self) -> bool {
        let stacked = Matrix::hstack(&[self.target.relations(), &self.matrix]);
        cokernel_divisors(&stacked).is_trivial()
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    /// Same map with the source and target presentations replaced by the
    /// given equal-generator modules; checks well-definedness again.
    pub fn reinterpret(&self, source: &FpModule, target: &FpModule) -> Result<ModMorphism> {
        ModMorphism::new(source, target, self.matrix.clone())
    }
}
