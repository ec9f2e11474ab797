use std::collections::BTreeMap;

use super::complex::union_span;
use super::{ChainComplex, ChainHomotopy, ChainMap};
use crate::fpmod::{hom_group, ModMorphism, Subquotient};
use crate::linalg::Matrix;
use crate::shape::AbGroupShape;
use crate::system::{MorphismSystem, Term, UnknownId};

/// The linear system whose solutions are chain maps `M -> N`.
pub(crate) struct ChainMapSystem {
    pub system: MorphismSystem,
    pub unknowns: BTreeMap<i64, UnknownId>,
    source: ChainComplex,
    target: ChainComplex,
}

impl ChainMapSystem {
    pub fn new(m: &ChainComplex, nc: &ChainComplex) -> ChainMapSystem {
        let mut system = MorphismSystem::new(m.ring());
        let mut unknowns = BTreeMap::new();
        let span = union_span(m.support(), nc.support());
        if let Some((lo, hi)) = span {
            for n in lo..=hi {
                if m.gens(n) > 0 && nc.gens(n) > 0 {
                    unknowns.insert(n, system.add_unknown(&m.module(n), &nc.module(n)));
                }
            }
            let mut diffs = Vec::new();
            for n in lo..=hi + 1 {
                diffs.push((n, nc.differential(n), m.differential(n)));
            }
            for (n, dn, dm) in &diffs {
                let mut terms = Vec::new();
                if let Some(&u) = unknowns.get(n) {
                    terms.push(Term::new(u).then(dn.matrix()));
                }
                if let Some(&u) = unknowns.get(&(n - 1)) {
                    terms.push(Term::new(u).after(dm.matrix()).negated());
                }
                if !terms.is_empty() {
                    system.add_equation(&m.module(*n), &nc.module(n - 1), &terms, None);
                }
            }
        }
        ChainMapSystem {
            system,
            unknowns,
            source: m.clone(),
            target: nc.clone(),
        }
    }

    pub fn chain_map(&self, maps: &[ModMorphism]) -> ChainMap {
        let comps = self.unknowns.keys().copied().zip(maps.iter().cloned()).collect();
        ChainMap::from_morphisms(&self.source, &self.target, comps).expect("solutions are chain maps")
    }

    pub fn vector(&self, f: &ChainMap) -> Matrix {
        let comps: Vec<ModMorphism> = self.unknowns.keys().map(|&n| f.component(n)).collect();
        let refs: Vec<&ModMorphism> = comps.iter().collect();
        self.system.vector_of(&refs)
    }

    fn vector_from(&self, comps: &BTreeMap<i64, ModMorphism>) -> Matrix {
        let all: Vec<ModMorphism> = self
            .unknowns
            .keys()
            .map(|n| {
                comps
                    .get(n)
                    .cloned()
                    .unwrap_or_else(|| ModMorphism::zero(&self.source.module(*n), &self.target.module(*n)))
            })
            .collect();
        let refs: Vec<&ModMorphism> = all.iter().collect();
        self.system.vector_of(&refs)
    }

    /// Vectors of `dφ + φd` for generators `φ` of each `Hom(M_n, N_{n+1})`.
    pub fn null_homotopic_vectors(&self) -> Matrix {
        let (m, nc) = (&self.source, &self.target);
        let mut cols = Vec::new();
        if let Some((lo, hi)) = m.support() {
            for n in lo..=hi {
                if nc.gens(n + 1) == 0 {
                    continue;
                }
                let h = hom_group(&m.module(n), &nc.module(n + 1));
                for phi in h.generators() {
                    let mut comps = BTreeMap::new();
                    comps.insert(n, nc.differential(n + 1).compose(phi));
                    comps.insert(n + 1, phi.compose(&m.differential(n + 1)));
                    cols.push(self.vector_from(&comps));
                }
            }
        }
        Matrix::from_columns(m.ring(), self.system.unknown_entries(), &cols)
    }
}

/// Generators of the group of chain maps `M -> N`.
pub fn chain_map_space(m: &ChainComplex, nc: &ChainComplex) -> Vec<ChainMap> {
    let cms = ChainMapSystem::new(m, nc);
    cms.system
        .solution_space()
        .into_iter()
        .map(|a| cms.chain_map(&a.into_maps()))
        .collect()
}

/// A homotopy `f ≃ g`, or `None` when the maps are not homotopic.
pub fn find_chain_homotopy(f: &ChainMap, g: &ChainMap) -> Option<ChainHomotopy> {
    let (m, nc) = (f.source(), f.target());
    assert!(m == g.source() && nc == g.target(), "maps are not parallel");
    let mut sys = MorphismSystem::new(m.ring());
    let mut ids = BTreeMap::new();
    let span = union_span(m.support(), nc.support());
    let Some((lo, hi)) = span else {
        return ChainHomotopy::new(f, g, BTreeMap::new()).ok();
    };
    for n in (lo - 1)..=hi {
        if m.gens(n) > 0 && nc.gens(n + 1) > 0 {
            ids.insert(n, sys.add_unknown(&m.module(n), &nc.module(n + 1)));
        }
    }
    let diffs: Vec<(i64, ModMorphism, ModMorphism, Matrix)> = (lo..=hi)
        .filter(|&n| m.gens(n) > 0 && nc.gens(n) > 0)
        .map(|n| {
            let rhs = f.component(n).sub(&g.component(n)).matrix().clone();
            (n, nc.differential(n + 1), m.differential(n), rhs)
        })
        .collect();
    for (n, dn, dm, rhs) in &diffs {
        let mut terms = Vec::new();
        if let Some(&u) = ids.get(n) {
            terms.push(Term::new(u).then(dn.matrix()));
        }
        if let Some(&u) = ids.get(&(n - 1)) {
            terms.push(Term::new(u).after(dm.matrix()));
        }
        if terms.is_empty() {
            if !nc.module(*n).contains_columns(rhs) {
                return None;
            }
            continue;
        }
        sys.add_equation(&m.module(*n), &nc.module(*n), &terms, Some(rhs));
    }
    let sol = sys.solve()?;
    let comps = ids.iter().map(|(&n, &u)| (n, sol.get(u).clone())).collect();
    Some(ChainHomotopy::new(f, g, comps).expect("solver returns a homotopy"))
}

/// `[M, N]`: chain maps modulo chain homotopy.
pub struct HomotopyClasses {
    system: ChainMapSystem,
    group: Subquotient,
}

impl HomotopyClasses {
    pub fn shape(&self) -> AbGroupShape {
        self.group.shape()
    }

    pub fn group(&self) -> &Subquotient {
        &self.group
    }

    /// A chain map representing the `i`-th summand generator.
    pub fn representative(&self, i: usize) -> ChainMap {
        let v = self.group.representative(i);
        let mut maps = Vec::new();
        let mut at = 0;
        let m = &self.system.source;
        let nc = &self.system.target;
        for &n in self.system.unknowns.keys() {
            let (r, c) = (nc.gens(n), m.gens(n));
            let mat = Matrix::unvectorize(&v, 0, at, r, c);
            maps.push(ModMorphism::new(&m.module(n), &nc.module(n), mat).expect("representative is well defined"));
            at += r * c;
        }
        self.system.chain_map(&maps)
    }

    /// Coordinates of the class of `f`.
    pub fn coordinates(&self, f: &ChainMap) -> Matrix {
        self.group
            .coordinates(&self.system.vector(f))
            .expect("every chain map has a class")
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> bool {
        self.coordinates(f).is_zero()
    }
}

pub fn homotopy_classes(m: &ChainComplex, nc: &ChainComplex) -> HomotopyClasses {
    let system = ChainMapSystem::new(m, nc);
    let gens = system.system.solution_vectors();
    let zeros = system.system.zero_map_vectors();
    let nulls = system.null_homotopic_vectors();
    let rels = Matrix::hstack(&[&zeros, &nulls]);
    let group = Subquotient::new(&gens, &rels);
    HomotopyClasses { system, group }
}
