use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use once_cell::sync::OnceCell;

use super::ModMorphism;
use crate::linalg::{cokernel_divisors, smith, solve_with, Matrix, Ring, SmithForm};
use crate::shape::AbGroupShape;

/// A finitely presented module: the cokernel of its relation matrix, whose
/// rows index generators and columns index relations.
#[derive(Clone)]
pub struct FpModule {
    relations: Matrix,
    smith: OnceCell<Arc<SmithForm>>,
}

impl PartialEq for FpModule {
    fn eq(&self, other: &Self) -> bool {
        self.relations == other.relations
    }
}

impl Eq for FpModule {}

impl Hash for FpModule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.relations.hash(state);
    }
}

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpModule({} gens over {}, rel {})", self.gens(), self.ring(), self.relations)
    }
}

impl FpModule {
    pub fn from_relations(relations: Matrix) -> FpModule {
        FpModule {
            relations,
            smith: OnceCell::new(),
        }
    }

    pub fn zero(ring: &Ring) -> FpModule {
        FpModule::free(ring, 0)
    }

    pub fn free(ring: &Ring, rank: usize) -> FpModule {
        FpModule::from_relations(Matrix::zeros(ring, rank, 0))
    }

    /// `R/(d)` on one generator. Over `Z/n`, `d ≡ 0` gives the free module.
    pub fn cyclic(ring: &Ring, d: impl Into<BigInt>) -> FpModule {
        let d = ring.reduce(&d.into());
        if d.is_zero() {
            return FpModule::free(ring, 1);
        }
        FpModule::from_relations(Matrix::from_vec(ring, 1, 1, vec![d]))
    }

    /// `⊕ R/(d_i)` with one relation column per nonzero `d_i`.
    pub fn diagonal(ring: &Ring, orders: &[BigInt]) -> FpModule {
        let torsion: Vec<usize> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !ring.reduce(d).is_zero())
            .map(|(i, _)| i)
            .collect();
        let mut rel = Matrix::zeros(ring, orders.len(), torsion.len());
        for (c, &i) in torsion.iter().enumerate() {
            rel.set(i, c, orders[i].clone());
        }
        FpModule::from_relations(rel)
    }

    pub fn ring(&self) -> &Ring {
        self.relations.ring()
    }

    pub fn gens(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn relation_smith(&self) -> &SmithForm {
        self.smith.get_or_init(|| Arc::new(smith(&self.relations)))
    }

    pub fn shape(&self) -> AbGroupShape {
        let s = self.relation_smith();
        let mut d = s.divisors.clone();
        d.resize(self.gens(), BigInt::zero());
        AbGroupShape::from_diagonal(self.ring(), &d)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens() == 0 || self.shape().is_trivial()
    }

    /// Whether every column of `cols` (vectors in generator coordinates)
    /// represents zero in the module.
    pub fn contains_columns(&self, cols: &Matrix) -> bool {
        assert_eq!(cols.rows(), self.gens(), "vector length must equal generator count");
        if cols.is_zero() {
            return true;
        }
        if self.relations.cols() == 0 {
            return false;
        }
        solve_with(self.relation_smith(), cols).is_some()
    }

    /// Express `cols` as `relations * W`.
    pub(crate) fn relation_witness(&self, cols: &Matrix) -> Option<Matrix> {
        if self.relations.cols() == 0 {
            return cols
                .is_zero()
                .then(|| Matrix::zeros(self.ring(), 0, cols.cols()));
        }
        solve_with(self.relation_smith(), cols)
    }

    /// Whether the presentation is of the form `⊕ R/(d_i)` with each column
    /// holding a single nonzero entry on its own row.
    pub fn is_diagonal(&self) -> bool {
        let r = &self.relations;
        let mut used = vec![false; r.rows()];
        for j in 0..r.cols() {
            let nz: Vec<usize> = (0..r.rows()).filter(|&i| !r.get(i, j).is_zero()).collect();
            match nz.as_slice() {
                [] => {}
                [i] if !used[*i] => used[*i] = true,
                _ => return false,
            }
        }
        true
    }

    /// Order of each generator in a diagonal presentation (`0` when free).
    pub fn generator_orders(&self) -> Option<Vec<BigInt>> {
        if !self.is_diagonal() {
            return None;
        }
        let r = &self.relations;
        let mut orders = vec![BigInt::zero(); r.rows()];
        for j in 0..r.cols() {
            if let Some(i) = (0..r.rows()).find(|&i| !r.get(i, j).is_zero()) {
                orders[i] = r.ring().ideal_size(r.get(i, j));
            }
        }
        Some(orders)
    }

    /// Rewrites the module as `⊕ R/(d_i)` with no unit relations, returning
    /// mutually inverse isomorphisms.
    pub fn simplify(&self) -> Simplification {
        let ring = self.ring().clone();
        let s = self.relation_smith();
        let g = self.gens();
        let kept: Vec<usize> = (0..g)
            .filter(|&i| match s.divisors.get(i) {
                Some(d) => !ring.is_unit(d),
                None => true,
            })
            .collect();
        let orders: Vec<BigInt> = kept
            .iter()
            .map(|&i| s.divisors.get(i).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        let module = FpModule::diagonal(&ring, &orders);
        let forward = s.u.select_rows(&kept);
        let backward = s.u_inv.select_columns(&kept);
        let forward = ModMorphism::new(self, &module, forward).expect("change of basis is well defined");
        let backward =
            ModMorphism::new(&module, self, backward).expect("inverse change of basis is well defined");
        Simplification {
            module,
            forward,
            backward,
        }
    }

    /// Reduces a coordinate column modulo the generator orders of a diagonal
    /// presentation; leaves other presentations untouched.
    pub fn normalize_vector(&self, v: &Matrix) -> Matrix {
        match self.generator_orders() {
            Some(orders) => Matrix::from_fn(v.ring(), v.rows(), v.cols(), |i, j| {
                let d = &orders[i];
                if d.is_zero() {
                    v.get(i, j).clone()
                } else {
                    num_integer::Integer::mod_floor(v.get(i, j), d)
                }
            }),
            None => v.clone(),
        }
    }

    /// Cokernel shape of an arbitrary relation matrix, as a module on its rows.
    pub fn shape_of_relations(relations: &Matrix) -> AbGroupShape {
        cokernel_divisors(relations)
    }
}

/// Result of [`FpModule::simplify`]: `backward ∘ forward = id` and vice versa.
#[derive(Clone, Debug)]
pub struct Simplification {
    pub module: FpModule,
    pub forward: ModMorphism,
    pub backward: ModMorphism,
}
