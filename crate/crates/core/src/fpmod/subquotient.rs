use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::FpModule;
use crate::linalg::{kernel_basis, smith, solve_with, Matrix, SmithForm};
use crate::shape::AbGroupShape;

/// `span(G) / (span(G) ∩ span(Rel))` inside a free module of vectors, with a
/// diagonal presentation, one representative vector per cyclic summand and a
/// coordinate map.
///
/// Hom groups, homology groups, Ext groups and homotopy classes are all
/// computed as instances of this.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    module: FpModule,
    reps: Matrix,
    span: SmithForm,
    spanning_generators: usize,
    change: Matrix,
    orders: Vec<BigInt>,
}

impl Subquotient {
    pub fn new(generators: &Matrix, relations: &Matrix) -> Subquotient {
        let ambient = generators.rows();
        assert_eq!(relations.rows(), ambient, "generators and relations live in different ambients");
        let k = generators.cols();
        let both = Matrix::hstack(&[generators, relations]);
        let ker = kernel_basis(&both);
        let coefficient_relations = ker.block(0, k, 0, ker.cols());
        let presented = FpModule::from_relations(coefficient_relations);
        let simple = presented.simplify();
        let reps = generators * simple.backward.matrix();
        let change = simple.forward.matrix().clone();
        let orders = simple.module.generator_orders().expect("simplified modules are diagonal");
        Subquotient {
            ambient,
            module: simple.module,
            reps,
            span: smith(&both),
            spanning_generators: k,
            change,
            orders,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn shape(&self) -> AbGroupShape {
        self.module.shape()
    }

    /// Representative vectors (ambient × number of summands).
    pub fn representatives(&self) -> &Matrix {
        &self.reps
    }

    pub fn representative(&self, i: usize) -> Matrix {
        self.reps.column(i)
    }

    pub fn len(&self) -> usize {
        self.reps.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Order of each summand generator, `0` when it generates a free summand.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Coordinates of each column of `v` with respect to the representatives,
    /// reduced modulo the summand orders; `None` when a column is outside
    /// `span(G) + span(Rel)`.
    pub fn coordinates(&self, v: &Matrix) -> Option<Matrix> {
        assert_eq!(v.rows(), self.ambient, "vector has wrong length");
        let ring = v.ring();
        let z = solve_with(&self.span, v)?;
        let z = z.block(0, self.spanning_generators, 0, z.cols());
        let c = &self.change * &z;
        Some(Matrix::from_fn(ring, c.rows(), c.cols(), |i, j| {
            let d = &self.orders[i];
            if d.is_zero() {
                c.get(i, j).clone()
            } else {
                c.get(i, j).mod_floor(d)
            }
        }))
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether `v` represents the zero class.
    pub fn is_zero_class(&self, v: &Matrix) -> bool {
        self.coordinates(v).map_or(false, |c| c.is_zero())
    }
}
