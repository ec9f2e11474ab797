use crate::error::{Error, Result};
use crate::fpmod::{FpModule, ModMorphism};
use crate::linalg::{Matrix, Ring};

/// Union of two supports, `None` if both are empty.
pub(crate) fn union_span(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some((l1, h1)), Some((l2, h2))) => Some((l1.min(l2), h1.max(h2))),
    }
}

/// A bounded chain complex with `d_n : X_n -> X_{n-1}`.
///
/// Modules without generators at either end are trimmed, so two complexes
/// with the same nonzero data compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainComplex {
    ring: Ring,
    lo: i64,
    modules: Vec<FpModule>,
    /// `differentials[k]` is `d_{lo+k+1}`.
    differentials: Vec<ModMorphism>,
}

impl ChainComplex {
    pub fn zero(ring: &Ring) -> ChainComplex {
        ChainComplex {
            ring: ring.clone(),
            lo: 0,
            modules: Vec::new(),
            differentials: Vec::new(),
        }
    }

    /// Builds `X_lo, X_{lo+1}, ...` with `differentials[k] = d_{lo+k+1}` given as
    /// generator matrices. Fails if a matrix is ill defined or `d∘d ≠ 0`.
    pub fn new(ring: &Ring, lo: i64, modules: Vec<FpModule>, differentials: Vec<Matrix>) -> Result<ChainComplex> {
        if modules.is_empty() {
            return Ok(ChainComplex::zero(ring));
        }
        if differentials.len() + 1 != modules.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                differentials.len()
            )));
        }
        let mut maps = Vec::with_capacity(differentials.len());
        for (k, m) in differentials.into_iter().enumerate() {
            maps.push(ModMorphism::new(&modules[k + 1], &modules[k], m)?);
        }
        ChainComplex::from_morphisms(ring, lo, modules, maps)
    }

    pub fn from_morphisms(
        ring: &Ring,
        lo: i64,
        modules: Vec<FpModule>,
        differentials: Vec<ModMorphism>,
    ) -> Result<ChainComplex> {
        for m in &modules {
            if m.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        if !modules.is_empty() && differentials.len() + 1 != modules.len() {
            return Err(Error::DimensionMismatch("differential count".into()));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.source() != &modules[k + 1] || d.target() != &modules[k] {
                return Err(Error::DimensionMismatch(format!(
                    "differential at degree {} has wrong endpoints",
                    lo + k as i64 + 1
                )));
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k - 1].compose(&differentials[k]).is_zero() {
                return Err(Error::NotAComplex { degree: lo + k as i64 + 1 });
            }
        }
        let mut c = ChainComplex {
            ring: ring.clone(),
            lo,
            modules,
            differentials,
        };
        c.trim();
        Ok(c)
    }

    fn trim(&mut self) {
        while self.modules.last().is_some_and(|m| m.gens() == 0) {
            self.modules.pop();
            self.differentials.pop();
        }
        while self.modules.first().is_some_and(|m| m.gens() == 0) {
            self.modules.remove(0);
            if !self.differentials.is_empty() {
                self.differentials.remove(0);
            }
            self.lo += 1;
        }
        if self.modules.is_empty() {
            self.lo = 0;
            self.differentials.clear();
        }
    }

    /// Builds a complex on degrees `lo..=hi` from closures; `d(n)` gives the
    /// generator matrix of `d_n` for `lo < n <= hi`.
    pub fn from_fn(
        ring: &Ring,
        lo: i64,
        hi: i64,
        mut module: impl FnMut(i64) -> FpModule,
        mut d: impl FnMut(i64) -> Matrix,
    ) -> Result<ChainComplex> {
        if hi < lo {
            return Ok(ChainComplex::zero(ring));
        }
        let modules: Vec<FpModule> = (lo..=hi).map(&mut module).collect();
        let diffs: Vec<Matrix> = ((lo + 1)..=hi).map(&mut d).collect();
        ChainComplex::new(ring, lo, modules, diffs)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.modules.is_empty()
    }

    /// `(lo, hi)` of the nonzero range, `None` for the zero complex.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.modules.is_empty()).then(|| (self.lo, self.lo + self.modules.len() as i64 - 1))
    }

    pub fn module(&self, n: i64) -> FpModule {
        match self.index(n) {
            Some(k) => self.modules[k].clone(),
            None => FpModule::zero(&self.ring),
        }
    }

    pub fn module_ref(&self, n: i64) -> Option<&FpModule> {
        self.index(n).map(|k| &self.modules[k])
    }

    fn index(&self, n: i64) -> Option<usize> {
        if n < self.lo {
            return None;
        }
        let k = (n - self.lo) as usize;
        (k < self.modules.len()).then_some(k)
    }

    /// `d_n : X_n -> X_{n-1}`, the zero map outside the support.
    pub fn differential(&self, n: i64) -> ModMorphism {
        match (self.index(n), self.index(n - 1)) {
            (Some(k), Some(_)) => self.differentials[k - 1].clone(),
            _ => ModMorphism::zero(&self.module(n), &self.module(n - 1)),
        }
    }

    pub fn gens(&self, n: i64) -> usize {
        self.module_ref(n).map_or(0, FpModule::gens)
    }
}
