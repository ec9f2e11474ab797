use super::{hom_map, induced_on_homology, ChainMap};
use crate::fpmod::cokernel;
use crate::projclass::{retraction_of, ProjectiveClass};

fn degrees(f: &ChainMap, window: Option<(i64, i64)>) -> Vec<i64> {
    match window.or_else(|| f.span()) {
        Some((lo, hi)) => (lo..=hi).collect(),
        None => Vec::new(),
    }
}

/// Whether `f` induces isomorphisms on the homology of every `Hom(P, -)`.
pub fn is_weak_equivalence(class: &ProjectiveClass, f: &ChainMap) -> bool {
    is_weak_equivalence_on(class, f, None)
}

/// [`is_weak_equivalence`] restricted to the degrees of `window`.
pub fn is_weak_equivalence_on(class: &ProjectiveClass, f: &ChainMap, window: Option<(i64, i64)>) -> bool {
    let ns = degrees(f, window);
    class.test_set().iter().all(|p| {
        let (_, _, hf) = hom_map(p, f);
        ns.iter().all(|&n| induced_on_homology(&hf, n).is_isomorphism())
    })
}

/// Whether `f` is a P-epi in every degree.
pub fn is_fibration(class: &ProjectiveClass, f: &ChainMap) -> bool {
    is_fibration_on(class, f, None)
}

pub fn is_fibration_on(class: &ProjectiveClass, f: &ChainMap, window: Option<(i64, i64)>) -> bool {
    degrees(f, window).into_iter().all(|n| class.is_p_epi(&f.component(n)))
}

pub fn is_acyclic_fibration_on(class: &ProjectiveClass, f: &ChainMap, window: Option<(i64, i64)>) -> bool {
    is_fibration_on(class, f, window) && is_weak_equivalence_on(class, f, window)
}

/// Degreewise split monic with P-projective cokernels.
pub fn is_cofibration(class: &ProjectiveClass, f: &ChainMap) -> bool {
    degrees(f, None).into_iter().all(|n| {
        let fnc = f.component(n);
        retraction_of(&fnc).is_some() && class.is_p_projective(&cokernel(&fnc).0)
    })
}
