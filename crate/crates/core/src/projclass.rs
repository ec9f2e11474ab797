//! Projective classes determined by a finite set of test objects.
//!
//! A map is a P-epi when every P-element of its target lifts, for every test
//! object P; P-projectives are the retracts of sums of test objects.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fpmod::{direct_sum_over, hom_group, is_exact_at_middle, FpModule, HomGroup, ModMorphism};
use crate::linalg::{Matrix, Ring};
use crate::system::{MorphismSystem, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Categorical,
    /// Over `Z` the test set is only complete for modules whose torsion
    /// divisors are at most `torsion_bound`.
    Pure { torsion_bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveClass {
    kind: ClassKind,
    ring: Ring,
    test_set: Vec<FpModule>,
}

impl fmt::Display for ProjectiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} class over {}", self.name(), self.ring)
    }
}

/// Projectives are summands of free modules; determined by `{R}`.
pub fn categorical_class(ring: &Ring) -> ProjectiveClass {
    ProjectiveClass {
        kind: ClassKind::Categorical,
        ring: ring.clone(),
        test_set: vec![FpModule::free(ring, 1)],
    }
}

/// Projectives are summands of sums of finitely presented modules. Over
/// `Z/n` the cyclic modules `Z/d` with `d | n` represent every finitely
/// presented module; over `Z` the cyclic groups up to `torsion_bound` stand in.
pub fn pure_class(ring: &Ring, torsion_bound: u64) -> ProjectiveClass {
    assert!(torsion_bound >= 1, "torsion bound must be positive");
    let test_set = match ring {
        Ring::IntegersMod(n) => {
            let n_small = n.to_u64().expect("modulus fits in u64 for divisor enumeration");
            let mut divisors: Vec<u64> = (2..=n_small).filter(|d| n_small % d == 0).collect();
            divisors.reverse();
            divisors.into_iter().map(|d| FpModule::cyclic(ring, d)).collect()
        }
        Ring::Integers => std::iter::once(FpModule::free(ring, 1))
            .chain((2..=torsion_bound).map(|k| FpModule::cyclic(ring, k)))
            .collect(),
    };
    ProjectiveClass {
        kind: ClassKind::Pure { torsion_bound },
        ring: ring.clone(),
        test_set,
    }
}

/// Looks a class up by its CLI name (`categorical` or `pure`).
pub fn class_by_name(name: &str, ring: &Ring, torsion_bound: u64) -> Option<ProjectiveClass> {
    match name {
        "categorical" => Some(categorical_class(ring)),
        "pure" => Some(pure_class(ring, torsion_bound)),
        _ => None,
    }
}

/// A P-epi `P -> B` out of a sum of test objects.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub module: FpModule,
    pub map: ModMorphism,
    /// Index into the test set of each summand, in order.
    pub summands: Vec<usize>,
}

impl ProjectiveClass {
    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ClassKind::Categorical => "categorical",
            ClassKind::Pure { .. } => "pure",
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn test_set(&self) -> &[FpModule] {
        &self.test_set
    }

    /// Over `Z` with the pure class, rejects modules with a prime-power torsion
    /// summand beyond the bound, for which the finite test set is incomplete.
    pub fn check_torsion(&self, m: &FpModule) -> Result<()> {
        if let (ClassKind::Pure { torsion_bound }, Ring::Integers) = (self.kind, &self.ring) {
            let bound = BigInt::from(torsion_bound);
            if let Some(d) = m.shape().elementary_divisors().into_iter().find(|d| *d > bound) {
                return Err(Error::TorsionBoundExceeded {
                    divisor: d.clone(),
                    bound: torsion_bound,
                });
            }
        }
        Ok(())
    }

    fn assert_ring(&self, m: &FpModule) {
        assert_eq!(m.ring(), &self.ring, "module and class live over different rings");
    }

    /// `Hom(P, f)` for every test object P, as a module map between the Hom
    /// groups.
    pub fn induced_on_elements(&self, f: &ModMorphism) -> Vec<(HomGroup, HomGroup, ModMorphism)> {
        self.test_set
            .iter()
            .map(|p| induced_on_elements(p, f))
            .collect()
    }

    pub fn is_p_epi(&self, f: &ModMorphism) -> bool {
        self.assert_ring(f.source());
        self.test_set
            .iter()
            .all(|p| induced_on_elements(p, f).2.is_surjective())
    }

    pub fn p_envelope(&self, b: &FpModule) -> Envelope {
        self.p_envelope_ordered(b, false)
    }

    /// [`ProjectiveClass::p_envelope`] with each test object's Hom generators
    /// optionally taken in reverse order.
    pub fn p_envelope_ordered(&self, b: &FpModule, reversed: bool) -> Envelope {
        self.assert_ring(b);
        let mut parts: Vec<FpModule> = Vec::new();
        let mut comps: Vec<ModMorphism> = Vec::new();
        let mut summands = Vec::new();
        for (idx, q) in self.test_set.iter().enumerate() {
            let h = hom_group(q, b);
            let mut gens: Vec<ModMorphism> = h.generators().to_vec();
            if reversed {
                gens.reverse();
            }
            for g in gens {
                parts.push(q.clone());
                comps.push(g);
                summands.push(idx);
            }
        }
        let refs: Vec<&FpModule> = parts.iter().collect();
        let sum = direct_sum_over(&self.ring, &refs);
        let comp_refs: Vec<&ModMorphism> = comps.iter().collect();
        let map = sum.copair(b, &comp_refs);
        Envelope {
            module: sum.module,
            map,
            summands,
        }
    }

    /// A section `s` of the envelope with `ε ∘ s = id`, when one exists.
    pub fn envelope_section(&self, m: &FpModule) -> Option<(Envelope, ModMorphism)> {
        let env = self.p_envelope(m);
        let s = section_of(&env.map)?;
        Some((env, s))
    }

    pub fn is_p_projective(&self, m: &FpModule) -> bool {
        if m.gens() == 0 {
            return true;
        }
        self.envelope_section(m).is_some()
    }

    /// Exactness of `Hom(P, A) -> Hom(P, B) -> Hom(P, C)` at the middle for
    /// every test object.
    pub fn is_p_exact(&self, f: &ModMorphism, g: &ModMorphism) -> Result<bool> {
        check_composable_zero(f, g)?;
        Ok(self.test_set.iter().all(|p| {
            let (_, _, hf) = induced_on_elements(p, f);
            let (_, _, hg) = induced_on_elements(p, g);
            is_exact_at_middle(&hf, &hg)
        }))
    }

    /// P-exactness of the whole sequence `0 -> A -> B -> C -> 0`:
    /// `Hom(P, -)` must produce a short exact sequence for every test object.
    pub fn is_p_exact_short(&self, f: &ModMorphism, g: &ModMorphism) -> Result<bool> {
        check_composable_zero(f, g)?;
        Ok(self.test_set.iter().all(|p| {
            let (_, _, hf) = induced_on_elements(p, f);
            let (_, _, hg) = induced_on_elements(p, g);
            hf.is_injective() && is_exact_at_middle(&hf, &hg) && hg.is_surjective()
        }))
    }
}

fn check_composable_zero(f: &ModMorphism, g: &ModMorphism) -> Result<()> {
    if f.target() != g.source() || !g.compose(f).is_zero() {
        return Err(Error::NotComposableOrNonzeroComposite);
    }
    Ok(())
}

/// `Hom(P, f) : Hom(P, A) -> Hom(P, B)` with both groups.
pub fn induced_on_elements(p: &FpModule, f: &ModMorphism) -> (HomGroup, HomGroup, ModMorphism) {
    let ha = hom_group(p, f.source());
    let hb = hom_group(p, f.target());
    let m = ha.postcompose_matrix(f, &hb);
    let map = ModMorphism::new(ha.module(), hb.module(), m).expect("postcomposition is additive");
    (ha, hb, map)
}

/// A right inverse `s` with `f ∘ s = id_target`, if one exists.
pub fn section_of(f: &ModMorphism) -> Option<ModMorphism> {
    let target = f.target();
    let mut sys = MorphismSystem::new(target.ring());
    let s = sys.add_unknown(target, f.source());
    let id = Matrix::identity(target.ring(), target.gens());
    sys.add_equation(target, target, &[Term::new(s).then(f.matrix())], Some(&id));
    sys.solve().map(|a| a.get(s).clone())
}

/// A left inverse `r` with `r ∘ f = id_source`, if one exists.
pub fn retraction_of(f: &ModMorphism) -> Option<ModMorphism> {
    let source = f.source();
    let mut sys = MorphismSystem::new(source.ring());
    let r = sys.add_unknown(f.target(), source);
    let id = Matrix::identity(source.ring(), source.gens());
    sys.add_equation(source, source, &[Term::new(r).after(f.matrix())], Some(&id));
    sys.solve().map(|a| a.get(r).clone())
}
