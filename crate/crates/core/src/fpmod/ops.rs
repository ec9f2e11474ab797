use super::{FpModule, ModMorphism, Subquotient};
use crate::linalg::{kernel_basis, Matrix, Ring};
use crate::shape::AbGroupShape;

/// Kernel of `f` in a diagonal presentation, with its inclusion into `f.source()`.
pub fn kernel(f: &ModMorphism) -> (FpModule, ModMorphism) {
    let a = f.source();
    let b = f.target();
    let both = Matrix::hstack(&[f.matrix(), b.relations()]);
    let k = kernel_basis(&both);
    let elements = k.block(0, a.gens(), 0, k.cols());
    let sq = Subquotient::new(&elements, a.relations());
    let module = sq.module().clone();
    let incl = ModMorphism::new(&module, a, a.normalize_vector(sq.representatives()))
        .expect("kernel representatives define an inclusion");
    debug_assert!(f.compose(&incl).is_zero());
    (module, incl)
}

/// Cokernel presented by `[target.relations | f.matrix]` on the target generators.
pub fn cokernel(f: &ModMorphism) -> (FpModule, ModMorphism) {
    let b = f.target();
    let rel = Matrix::hstack(&[b.relations(), f.matrix()]);
    let module = FpModule::from_relations(rel);
    let proj = ModMorphism::new(b, &module, Matrix::identity(b.ring(), b.gens()))
        .expect("identity on generators respects the coarser relations");
    (module, proj)
}

/// Image of `f` as the kernel of the cokernel projection, with the induced
/// surjection `source -> image` and the inclusion `image -> target`.
pub fn image(f: &ModMorphism) -> Image {
    let (_, proj) = cokernel(f);
    let (module, inclusion) = kernel(&proj);
    let b = f.target();
    // lift f's generator images along the inclusion
    let both = Matrix::hstack(&[inclusion.matrix(), b.relations()]);
    let x = crate::linalg::solve(&both, f.matrix()).expect("f lands in its image");
    let coeffs = x.block(0, module.gens(), 0, x.cols());
    let surjection = ModMorphism::new(f.source(), &module, module.normalize_vector(&coeffs))
        .expect("factorization through the image is well defined");
    Image {
        module,
        surjection,
        inclusion,
    }
}

#[derive(Clone, Debug)]
pub struct Image {
    pub module: FpModule,
    pub surjection: ModMorphism,
    pub inclusion: ModMorphism,
}

/// Biproduct with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FpModule,
    pub injections: Vec<ModMorphism>,
    pub projections: Vec<ModMorphism>,
}

impl DirectSum {
    /// Block-diagonal map `⊕ f_i` between two direct sums of matching arity.
    pub fn map_between(from: &DirectSum, to: &DirectSum, blocks: &[&ModMorphism]) -> ModMorphism {
        let ring = from.module.ring();
        let mats: Vec<&Matrix> = blocks.iter().map(|m| m.matrix()).collect();
        ModMorphism::new(&from.module, &to.module, Matrix::block_diagonal(ring, &mats))
            .expect("block-diagonal maps are well defined")
    }

    /// The map out of the sum restricting to `maps[i]` on summand `i`.
    pub fn copair(&self, target: &FpModule, maps: &[&ModMorphism]) -> ModMorphism {
        assert_eq!(maps.len(), self.injections.len());
        let mats: Vec<&Matrix> = maps.iter().map(|m| m.matrix()).collect();
        let m = if mats.is_empty() {
            Matrix::zeros(target.ring(), target.gens(), 0)
        } else {
            Matrix::hstack(&mats)
        };
        ModMorphism::new(&self.module, target, m).expect("copairing is well defined")
    }

    /// The map into the sum with components `maps[i]`.
    pub fn pair(&self, source: &FpModule, maps: &[&ModMorphism]) -> ModMorphism {
        assert_eq!(maps.len(), self.projections.len());
        let mats: Vec<&Matrix> = maps.iter().map(|m| m.matrix()).collect();
        let m = if mats.is_empty() {
            Matrix::zeros(source.ring(), 0, source.gens())
        } else {
            Matrix::vstack(&mats)
        };
        ModMorphism::new(source, &self.module, m).expect("pairing is well defined")
    }
}

pub fn direct_sum(parts: &[&FpModule]) -> DirectSum {
    let ring = parts.first().map(|m| m.ring().clone()).expect("direct sum needs a ring");
    direct_sum_over(&ring, parts)
}

/// Like [`direct_sum`] but also defined for an empty list.
pub fn direct_sum_over(ring: &Ring, parts: &[&FpModule]) -> DirectSum {
    for p in parts {
        assert_eq!(p.ring(), ring, "direct_sum: ring mismatch");
    }
    let rels: Vec<&Matrix> = parts.iter().map(|m| m.relations()).collect();
    let module = FpModule::from_relations(Matrix::block_diagonal(ring, &rels));
    let total = module.gens();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut at = 0;
    for p in parts {
        let g = p.gens();
        let mut inj = Matrix::zeros(ring, total, g);
        let mut proj = Matrix::zeros(ring, g, total);
        for i in 0..g {
            inj.set(at + i, i, 1.into());
            proj.set(i, at + i, 1.into());
        }
        injections.push(ModMorphism::new(p, &module, inj).expect("injection"));
        projections.push(ModMorphism::new(&module, p, proj).expect("projection"));
        at += g;
    }
    DirectSum {
        module,
        injections,
        projections,
    }
}

fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let ring = a.ring();
    Matrix::from_fn(ring, a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a.get(i / b.rows(), j / b.cols()) * b.get(i % b.rows(), j % b.cols())
    })
}

/// `A ⊗ B` on generators `a_i ⊗ b_j` (index `i * g_B + j`).
pub fn tensor(a: &FpModule, b: &FpModule) -> FpModule {
    assert_eq!(a.ring(), b.ring(), "tensor: ring mismatch");
    let ring = a.ring();
    let left = kronecker(a.relations(), &Matrix::identity(ring, b.gens()));
    let right = kronecker(&Matrix::identity(ring, a.gens()), b.relations());
    FpModule::from_relations(Matrix::hstack(&[&left, &right]))
}

/// `f ⊗ id_C : A ⊗ C -> B ⊗ C`.
pub fn tensor_map(f: &ModMorphism, c: &FpModule) -> ModMorphism {
    let ring = c.ring();
    let m = kronecker(f.matrix(), &Matrix::identity(ring, c.gens()));
    ModMorphism::new(&tensor(f.source(), c), &tensor(f.target(), c), m).expect("tensor of maps is well defined")
}

/// `ker(g) / im(f)` for composable `A -f-> B -g-> C` with `g ∘ f = 0`, as a
/// subquotient of `B`'s generator coordinates.
pub fn middle_homology(f: &ModMorphism, g: &ModMorphism) -> Subquotient {
    assert_eq!(f.target(), g.source(), "middle_homology: maps are not composable");
    let b = g.source();
    let c = g.target();
    let both = Matrix::hstack(&[g.matrix(), c.relations()]);
    let k = kernel_basis(&both);
    let cycles = k.block(0, b.gens(), 0, k.cols());
    let boundaries = Matrix::hstack(&[f.matrix(), b.relations()]);
    Subquotient::new(&cycles, &boundaries)
}

/// Exactness of `A -f-> B -g-> C` at `B`.
pub fn is_exact_at_middle(f: &ModMorphism, g: &ModMorphism) -> bool {
    middle_homology(f, g).shape() == AbGroupShape::trivial()
}
