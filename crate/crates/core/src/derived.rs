//! Relative resolutions and Ext groups.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::Mutex;

use crate::chaincx::{induced_between, sphere, ChainComplex, ChainMap};
use crate::error::Result;
use crate::fpmod::{hom_group, kernel, middle_homology, FpModule, HomGroup, ModMorphism, Subquotient};
use crate::projclass::{categorical_class, pure_class, ProjectiveClass};
use crate::shape::AbGroupShape;
use crate::system::{MorphismSystem, Term};

/// `... -> P_1 -> P_0 -> A` with each `P_k` P-projective.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub class: ProjectiveClass,
    pub target: FpModule,
    /// `P_k` in degree `k` for `0 <= k <= length`.
    pub complex: ChainComplex,
    pub augmentation: ModMorphism,
    pub length: usize,
    /// Whether the last kernel vanished, so the resolution is complete.
    pub exact: bool,
}

impl Resolution {
    pub fn module(&self, k: usize) -> FpModule {
        if k > self.length {
            return FpModule::zero(self.class.ring());
        }
        self.complex.module(k as i64)
    }

    /// `d_k : P_k -> P_{k-1}`, with `d_0` the augmentation.
    pub fn differential(&self, k: usize) -> ModMorphism {
        if k == 0 {
            return self.augmentation.clone();
        }
        self.complex.differential(k as i64)
    }

    /// The augmentation as a chain map to `A` in degree 0.
    pub fn augmentation_map(&self) -> ChainMap {
        let mut comps = BTreeMap::new();
        comps.insert(0, self.augmentation.matrix().clone());
        ChainMap::new(&self.complex, &sphere(&self.target, 0), comps).expect("augmentation kills boundaries")
    }

    /// Checks that every term is P-projective and the augmented complex is
    /// P-exact at every joint.
    pub fn verify(&self) -> bool {
        let projective = (0..=self.length).all(|k| self.class.is_p_projective(&self.module(k)));
        let mut exact = self.class.is_p_epi(&self.augmentation);
        for k in 0..self.length {
            exact &= self
                .class
                .is_p_exact(&self.differential(k + 1), &self.differential(k))
                .unwrap_or(false);
        }
        if self.exact {
            exact &= self
                .class
                .is_p_exact(&self.differential(self.length + 1), &self.differential(self.length))
                .unwrap_or(false);
        }
        projective && exact
    }

    fn truncated(&self, length: usize) -> Resolution {
        if length >= self.length {
            return self.clone();
        }
        let ms: Vec<FpModule> = (0..=length).map(|k| self.module(k)).collect();
        let ds: Vec<ModMorphism> = (1..=length).map(|k| self.differential(k)).collect();
        let complex = ChainComplex::from_morphisms(self.class.ring(), 0, ms, ds).expect("prefix of a complex");
        Resolution {
            class: self.class.clone(),
            target: self.target.clone(),
            complex,
            augmentation: self.augmentation.clone(),
            length,
            exact: false,
        }
    }
}

type CacheKey = (ProjectiveClass, FpModule, bool);

static CACHE: Lazy<Mutex<HashMap<CacheKey, Arc<Resolution>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// A P-resolution of length at most `length`, stopping early once exact.
pub fn p_resolution(class: &ProjectiveClass, a: &FpModule, length: usize) -> Result<Resolution> {
    p_resolution_ordered(class, a, length, false)
}

/// [`p_resolution`] with the envelope generators optionally reversed.
pub fn p_resolution_ordered(
    class: &ProjectiveClass,
    a: &FpModule,
    length: usize,
    reversed: bool,
) -> Result<Resolution> {
    class.check_torsion(a)?;
    let key = (class.clone(), a.clone(), reversed);
    if let Some(r) = CACHE.lock().get(&key).cloned() {
        if r.exact || r.length >= length {
            return Ok(r.truncated(length));
        }
    }
    let res = build_resolution(class, a, length, reversed);
    CACHE.lock().insert(key, Arc::new(res.clone()));
    Ok(res)
}

fn build_resolution(class: &ProjectiveClass, a: &FpModule, length: usize, reversed: bool) -> Resolution {
    let ring = class.ring();
    let mut modules: Vec<FpModule> = Vec::new();
    let mut diffs: Vec<ModMorphism> = Vec::new();
    let mut augmentation = None;
    // the module still to be covered, with its inclusion into the previous term
    let mut cover = a.clone();
    let mut inclusion: Option<ModMorphism> = None;
    let mut exact = false;
    for k in 0..=length {
        if cover.is_trivial() {
            exact = true;
            break;
        }
        let (p, eps) = if class.is_p_projective(&cover) {
            (cover.clone(), ModMorphism::identity(&cover))
        } else {
            let env = class.p_envelope_ordered(&cover, reversed);
            (env.module, env.map)
        };
        match &inclusion {
            None => augmentation = Some(eps.clone()),
            Some(incl) => diffs.push(incl.compose(&eps)),
        }
        modules.push(p);
        if eps.is_isomorphism() {
            exact = true;
            break;
        }
        if k == length {
            break;
        }
        let (kmod, kincl) = kernel(&eps);
        cover = kmod;
        inclusion = Some(kincl);
    }
    let augmentation = augmentation.unwrap_or_else(|| ModMorphism::zero(&FpModule::zero(ring), a));
    let len = modules.len().saturating_sub(1);
    let complex = ChainComplex::from_morphisms(ring, 0, modules, diffs).expect("resolutions are complexes");
    Resolution {
        class: class.clone(),
        target: a.clone(),
        complex,
        augmentation,
        length: len,
        exact,
    }
}

/// `Ext^n_P(A, B)` with cocycle representatives.
#[derive(Clone, Debug)]
pub struct ExtResult {
    pub class: ProjectiveClass,
    pub a: FpModule,
    pub b: FpModule,
    pub n: usize,
    pub shape: AbGroupShape,
    /// The resolution reached exactness or the length needed for degree `n`.
    pub window_certified: bool,
    pub resolution: Resolution,
    /// `Hom(P_n, B)`, in which the cocycles live.
    pub cochains: HomGroup,
    pub group: Subquotient,
}

/// `δ : Hom(P_k, B) -> Hom(P_{k+1}, B)` with its source group.
fn coboundary(res: &Resolution, b: &FpModule, k: usize) -> (HomGroup, ModMorphism) {
    let from = hom_group(&res.module(k), b);
    let to = hom_group(&res.module(k + 1), b);
    let d = res.differential(k + 1);
    let m = from.precompose_matrix(&d, &to);
    let map = ModMorphism::new(from.module(), to.module(), m).expect("precomposition is additive");
    (from, map)
}

pub fn ext(class: &ProjectiveClass, a: &FpModule, b: &FpModule, n: usize) -> Result<ExtResult> {
    ext_ordered(class, a, b, n, false)
}

/// [`ext`] computed from a resolution with reversed envelope generators.
pub fn ext_ordered(
    class: &ProjectiveClass,
    a: &FpModule,
    b: &FpModule,
    n: usize,
    reversed: bool,
) -> Result<ExtResult> {
    class.check_torsion(b)?;
    let res = p_resolution_ordered(class, a, n + 1, reversed)?;
    let (cochains, out) = coboundary(&res, b, n);
    let incoming = if n == 0 {
        ModMorphism::zero(&FpModule::zero(class.ring()), cochains.module())
    } else {
        coboundary(&res, b, n - 1).1
    };
    let group = middle_homology(&incoming, &out);
    Ok(ExtResult {
        class: class.clone(),
        a: a.clone(),
        b: b.clone(),
        n,
        shape: group.shape(),
        window_certified: res.exact || res.length > n,
        resolution: res,
        cochains,
        group,
    })
}

/// `Ext^n(A, g) : Ext^n(A, B) -> Ext^n(A, B')` for `g : B -> B'`.
pub fn ext_induced(
    class: &ProjectiveClass,
    a: &FpModule,
    g: &ModMorphism,
    n: usize,
) -> Result<(ExtResult, ExtResult, ModMorphism)> {
    let es = ext(class, a, g.source(), n)?;
    let et = ext(class, a, g.target(), n)?;
    let post = es.cochains.postcompose_matrix(g, &et.cochains);
    let post = ModMorphism::new(es.cochains.module(), et.cochains.module(), post).expect("postcomposition is additive");
    let map = induced_between(&es.group, &et.group, &post);
    Ok((es, et, map))
}

/// The pure and categorical Ext groups with the natural map between them.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub pure: ExtResult,
    pub categorical: ExtResult,
    /// `PExt^n(A, B) -> Ext^n(A, B)` on the summand generators.
    pub map: ModMorphism,
}

pub fn ext_comparison(a: &FpModule, b: &FpModule, n: usize, torsion_bound: u64) -> Result<Comparison> {
    let ring = a.ring();
    let pure = ext(&pure_class(ring, torsion_bound), a, b, n)?;
    let categorical = ext(&categorical_class(ring), a, b, n)?;
    let chi = compare_resolutions(&categorical.resolution, &pure.resolution, n);
    let pre = pure.cochains.precompose_matrix(&chi, &categorical.cochains);
    let pre = ModMorphism::new(pure.cochains.module(), categorical.cochains.module(), pre)
        .expect("precomposition is additive");
    let map = induced_between(&pure.group, &categorical.group, &pre);
    Ok(Comparison {
        pure,
        categorical,
        map,
    })
}

/// Degree `n` component of a chain map `from -> to` over `id_A`.
fn compare_resolutions(from: &Resolution, to: &Resolution, n: usize) -> ModMorphism {
    let ring = from.class.ring();
    let mut sys = MorphismSystem::new(ring);
    let top = n + 1;
    let ids: Vec<_> = (0..=top).map(|k| sys.add_unknown(&from.module(k), &to.module(k))).collect();
    let eps_from = from.augmentation.matrix().clone();
    let eps_to = to.augmentation.clone();
    sys.add_equation(
        &from.module(0),
        &from.target,
        &[Term::new(ids[0]).then(eps_to.matrix())],
        Some(&eps_from),
    );
    let ds: Vec<(ModMorphism, ModMorphism)> = (1..=top).map(|k| (to.differential(k), from.differential(k))).collect();
    for k in 1..=top {
        let (dt, df) = &ds[k - 1];
        sys.add_equation(
            &from.module(k),
            &to.module(k - 1),
            &[
                Term::new(ids[k]).then(dt.matrix()),
                Term::new(ids[k - 1]).after(df.matrix()).negated(),
            ],
            None,
        );
    }
    let sol = sys.solve().expect("categorical projectives are pure projective");
    sol.get(ids[n]).clone()
}
