use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::complex::union_span;
use super::ChainComplex;
use crate::error::{Error, Result};
use crate::fpmod::ModMorphism;
use crate::linalg::Matrix;

/// A degree-zero chain map; components are stored on the union of supports.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: BTreeMap<i64, ModMorphism>,
}

impl ChainMap {
    /// Components given as generator matrices by degree; missing degrees are zero.
    pub fn new(source: &ChainComplex, target: &ChainComplex, components: BTreeMap<i64, Matrix>) -> Result<ChainMap> {
        let mut comps = BTreeMap::new();
        for (n, m) in components {
            comps.insert(n, ModMorphism::new(&source.module(n), &target.module(n), m)?);
        }
        ChainMap::from_morphisms(source, target, comps)
    }

    pub fn from_fn(
        source: &ChainComplex,
        target: &ChainComplex,
        mut f: impl FnMut(i64) -> Matrix,
    ) -> Result<ChainMap> {
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = union_span(source.support(), target.support()) {
            for n in lo..=hi {
                comps.insert(n, f(n));
            }
        }
        ChainMap::new(source, target, comps)
    }

    pub fn from_morphisms(
        source: &ChainComplex,
        target: &ChainComplex,
        components: BTreeMap<i64, ModMorphism>,
    ) -> Result<ChainMap> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch);
        }
        let mut comps = BTreeMap::new();
        for (n, m) in components {
            if m.source() != &source.module(n) || m.target() != &target.module(n) {
                return Err(Error::DimensionMismatch(format!("component {n} has wrong endpoints")));
            }
            if source.gens(n) > 0 && target.gens(n) > 0 {
                comps.insert(n, m);
            }
        }
        let map = ChainMap {
            source: source.clone(),
            target: target.clone(),
            components: comps,
        };
        map.check()?;
        Ok(map)
    }

    fn check(&self) -> Result<()> {
        let Some((lo, hi)) = self.span() else {
            return Ok(());
        };
        for n in lo..=hi + 1 {
            let left = self.target.differential(n).compose(&self.component(n));
            let right = self.component(n - 1).compose(&self.source.differential(n));
            if !left.equals(&right) {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }

    pub fn identity(x: &ChainComplex) -> ChainMap {
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = x.support() {
            for n in lo..=hi {
                comps.insert(n, ModMorphism::identity(&x.module(n)));
            }
        }
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            components: comps,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// Union of the source and target supports.
    pub fn span(&self) -> Option<(i64, i64)> {
        union_span(self.source.support(), self.target.support())
    }

    pub fn component(&self, n: i64) -> ModMorphism {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ModMorphism::zero(&self.source.module(n), &self.target.module(n)))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        assert_eq!(first.target, self.source, "compose: complexes do not match");
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = union_span(first.span(), self.span()) {
            for n in lo..=hi {
                comps.insert(n, self.component(n).compose(&first.component(n)));
            }
        }
        ChainMap::from_parts(&first.source, &self.target, comps)
    }

    pub(crate) fn from_parts(
        source: &ChainComplex,
        target: &ChainComplex,
        components: BTreeMap<i64, ModMorphism>,
    ) -> ChainMap {
        let components = components
            .into_iter()
            .filter(|(n, _)| source.gens(*n) > 0 && target.gens(*n) > 0)
            .collect();
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            components,
        }
    }

    fn zip(&self, other: &ChainMap, f: impl Fn(&ModMorphism, &ModMorphism) -> ModMorphism) -> ChainMap {
        assert!(self.source == other.source && self.target == other.target, "chain maps are not parallel");
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = self.span() {
            for n in lo..=hi {
                comps.insert(n, f(&self.component(n), &other.component(n)));
            }
        }
        ChainMap::from_parts(&self.source, &self.target, comps)
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> ChainMap {
        let comps = self.components.iter().map(|(n, m)| (*n, m.scale(c))).collect();
        ChainMap::from_parts(&self.source, &self.target, comps)
    }

    /// Componentwise equality modulo relations.
    pub fn equals(&self, other: &ChainMap) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        match self.span() {
            None => true,
            Some((lo, hi)) => (lo..=hi).all(|n| self.component(n).equals(&other.component(n))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(ModMorphism::is_zero)
    }
}

/// `h_n : M_n -> N_{n+1}` with `f - g = d h + h d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    f: ChainMap,
    g: ChainMap,
    components: BTreeMap<i64, ModMorphism>,
}

impl ChainHomotopy {
    pub fn new(f: &ChainMap, g: &ChainMap, components: BTreeMap<i64, ModMorphism>) -> Result<ChainHomotopy> {
        assert!(f.source == g.source && f.target == g.target, "homotopy between non-parallel maps");
        for (n, h) in &components {
            if h.source() != &f.source.module(*n) || h.target() != &f.target.module(n + 1) {
                return Err(Error::DimensionMismatch(format!("homotopy component {n} has wrong endpoints")));
            }
        }
        let components = components
            .into_iter()
            .filter(|(_, h)| h.source().gens() > 0 && h.target().gens() > 0)
            .collect();
        let h = ChainHomotopy {
            f: f.clone(),
            g: g.clone(),
            components,
        };
        if let Some(n) = h.failing_degree() {
            return Err(Error::NotAChainMap { degree: n });
        }
        Ok(h)
    }

    pub fn f(&self) -> &ChainMap {
        &self.f
    }

    pub fn g(&self) -> &ChainMap {
        &self.g
    }

    pub fn component(&self, n: i64) -> ModMorphism {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ModMorphism::zero(&self.f.source.module(n), &self.f.target.module(n + 1)))
    }

    /// `d h_n + h_{n-1} d` at degree `n`.
    pub fn boundary(&self, n: i64) -> ModMorphism {
        let dh = self.f.target.differential(n + 1).compose(&self.component(n));
        let hd = self.component(n - 1).compose(&self.f.source.differential(n));
        dh.add(&hd)
    }

    fn failing_degree(&self) -> Option<i64> {
        let (lo, hi) = self.f.span()?;
        (lo..=hi).find(|&n| {
            let diff = self.f.component(n).sub(&self.g.component(n));
            !diff.equals(&self.boundary(n))
        })
    }

    /// Homotopy from `g` to `f`.
    pub fn reversed(&self) -> ChainHomotopy {
        let comps = self.components.iter().map(|(n, h)| (*n, h.neg())).collect();
        ChainHomotopy {
            f: self.g.clone(),
            g: self.f.clone(),
            components: comps,
        }
    }

    /// Concatenation with a homotopy from `self.g` to `other.g`.
    pub fn then(&self, other: &ChainHomotopy) -> ChainHomotopy {
        assert!(self.g.equals(&other.f), "homotopies do not chain");
        let keys: std::collections::BTreeSet<i64> =
            self.components.keys().chain(other.components.keys()).copied().collect();
        let comps = keys
            .into_iter()
            .map(|n| (n, self.component(n).add(&other.component(n))))
            .collect();
        ChainHomotopy {
            f: self.f.clone(),
            g: other.g.clone(),
            components: comps,
        }
    }

    pub fn components(&self) -> &BTreeMap<i64, ModMorphism> {
        &self.components
    }
}
