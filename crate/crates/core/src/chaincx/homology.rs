use std::collections::BTreeMap;

use super::{ChainComplex, ChainMap};
use crate::fpmod::{hom_group, middle_homology, FpModule, HomGroup, ModMorphism, Subquotient};
use crate::linalg::Matrix;
use crate::shape::AbGroupShape;

/// `H_n X = ker d_n / im d_{n+1}` with cycle representatives.
pub fn homology_group(x: &ChainComplex, n: i64) -> Subquotient {
    middle_homology(&x.differential(n + 1), &x.differential(n))
}

pub fn homology(x: &ChainComplex, n: i64) -> AbGroupShape {
    homology_group(x, n).shape()
}

/// `H_n f` as a module map between the diagonal homology presentations.
pub fn induced_on_homology(f: &ChainMap, n: i64) -> ModMorphism {
    let hs = homology_group(f.source(), n);
    let ht = homology_group(f.target(), n);
    induced_between(&hs, &ht, &f.component(n))
}

pub(crate) fn induced_between(hs: &Subquotient, ht: &Subquotient, fn_: &ModMorphism) -> ModMorphism {
    let ring = fn_.source().ring();
    let cols: Vec<Matrix> = (0..hs.len())
        .map(|i| {
            let image = fn_.matrix() * &hs.representative(i);
            ht.coordinates(&image).expect("chain maps send cycles to cycles")
        })
        .collect();
    let m = Matrix::from_columns(ring, ht.len(), &cols);
    ModMorphism::new(hs.module(), ht.module(), m).expect("induced map on homology is well defined")
}

/// `Hom(P, X)` as a complex, together with the Hom group in each degree.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: ChainComplex,
    pub groups: BTreeMap<i64, HomGroup>,
}

pub fn hom_complex(p: &FpModule, x: &ChainComplex) -> HomComplex {
    let ring = x.ring();
    let Some((lo, hi)) = x.support() else {
        return HomComplex {
            complex: ChainComplex::zero(ring),
            groups: BTreeMap::new(),
        };
    };
    let groups: BTreeMap<i64, HomGroup> = (lo..=hi).map(|n| (n, hom_group(p, &x.module(n)))).collect();
    let modules: Vec<FpModule> = (lo..=hi).map(|n| groups[&n].module().clone()).collect();
    let diffs: Vec<Matrix> = ((lo + 1)..=hi)
        .map(|n| groups[&n].postcompose_matrix(&x.differential(n), &groups[&(n - 1)]))
        .collect();
    let complex = ChainComplex::new(ring, lo, modules, diffs).expect("Hom(P, -) preserves complexes");
    HomComplex { complex, groups }
}

/// `Hom(P, f)` between the two Hom complexes.
pub fn hom_map(p: &FpModule, f: &ChainMap) -> (HomComplex, HomComplex, ChainMap) {
    let hs = hom_complex(p, f.source());
    let ht = hom_complex(p, f.target());
    let mut comps = BTreeMap::new();
    if let Some((lo, hi)) = f.span() {
        for n in lo..=hi {
            if let (Some(a), Some(b)) = (hs.groups.get(&n), ht.groups.get(&n)) {
                comps.insert(n, a.postcompose_matrix(&f.component(n), b));
            }
        }
    }
    let map = ChainMap::new(&hs.complex, &ht.complex, comps).expect("Hom(P, -) preserves chain maps");
    (hs, ht, map)
}

/// P-homology: `H_n Hom(P, X)`.
pub fn p_homology(p: &FpModule, x: &ChainComplex, n: i64) -> AbGroupShape {
    homology(&hom_complex(p, x).complex, n)
}
