use super::{FpModule, ModMorphism, Subquotient};
use crate::linalg::Matrix;
use crate::shape::AbGroupShape;
use crate::system::MorphismSystem;

/// `Hom(A, B)` as a module, with one generating morphism per cyclic summand.
#[derive(Clone, Debug)]
pub struct HomGroup {
    source: FpModule,
    target: FpModule,
    group: Subquotient,
    generators: Vec<ModMorphism>,
}

impl HomGroup {
    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn shape(&self) -> AbGroupShape {
        self.group.shape()
    }

    /// The group itself as a diagonal module on [`HomGroup::generators`].
    pub fn module(&self) -> &FpModule {
        self.group.module()
    }

    pub fn generators(&self) -> &[ModMorphism] {
        &self.generators
    }

    /// Coordinates of `f` with respect to the generators.
    pub fn coordinates(&self, f: &ModMorphism) -> Matrix {
        assert!(f.source() == &self.source && f.target() == &self.target, "map outside this Hom group");
        self.group
            .coordinates(&f.matrix().vectorize())
            .expect("well-defined maps lie in the Hom group")
    }

    /// Matrix of `φ ↦ post ∘ φ` from this group to `Hom(A, post.target)`.
    pub fn postcompose_matrix(&self, post: &ModMorphism, into: &HomGroup) -> Matrix {
        let cols: Vec<Matrix> = self
            .generators
            .iter()
            .map(|g| into.coordinates(&post.compose(g)))
            .collect();
        Matrix::from_columns(post.target().ring(), into.generators.len(), &cols)
    }

    /// Matrix of `φ ↦ φ ∘ pre` from this group to `Hom(pre.source, B)`.
    pub fn precompose_matrix(&self, pre: &ModMorphism, into: &HomGroup) -> Matrix {
        let cols: Vec<Matrix> = self
            .generators
            .iter()
            .map(|g| into.coordinates(&g.compose(pre)))
            .collect();
        Matrix::from_columns(pre.source().ring(), into.generators.len(), &cols)
    }

    /// Combination `Σ c_i g_i` of the generators.
    pub fn combination(&self, coefficients: &Matrix) -> ModMorphism {
        assert_eq!(coefficients.rows(), self.generators.len());
        let mut acc = ModMorphism::zero(&self.source, &self.target);
        for (i, g) in self.generators.iter().enumerate() {
            acc = acc.add(&g.scale(coefficients.get(i, 0)));
        }
        acc
    }
}

/// `Hom(A, B)` with its isomorphism type and a generating set of morphisms.
pub fn hom_group(a: &FpModule, b: &FpModule) -> HomGroup {
    assert_eq!(a.ring(), b.ring(), "hom_group: ring mismatch");
    let mut sys = MorphismSystem::new(a.ring());
    sys.add_unknown(a, b);
    let gens = sys.solution_vectors();
    let rels = sys.zero_map_vectors();
    let group = Subquotient::new(&gens, &rels);
    let generators = (0..group.len())
        .map(|i| {
            let m = Matrix::unvectorize(group.representatives(), i, 0, b.gens(), a.gens());
            let m = b.normalize_vector(&m);
            ModMorphism::new(a, b, m).expect("representatives are well defined")
        })
        .collect();
    HomGroup {
        source: a.clone(),
        target: b.clone(),
        group,
        generators,
    }
}
