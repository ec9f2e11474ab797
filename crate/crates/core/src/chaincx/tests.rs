use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::*;
use crate::fpmod::{FpModule, ModMorphism};
use crate::linalg::{Matrix, Ring};
use crate::projclass::{categorical_class, pure_class};

fn z() -> Ring {
    Ring::Integers
}

fn divs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `Z --×k--> Z` in degrees 1, 0.
fn times(k: i64) -> ChainComplex {
    let r = z();
    ChainComplex::new(&r, 0, vec![FpModule::free(&r, 1); 2], vec![Matrix::from_rows(&r, &[[k]])]).unwrap()
}

/// `0 -> Z/2 -> Z/4 -> Z/2 -> 0` in degrees 2, 1, 0.
fn short_sequence() -> ChainComplex {
    let r = z();
    let m = vec![FpModule::cyclic(&r, 2), FpModule::cyclic(&r, 4), FpModule::cyclic(&r, 2)];
    ChainComplex::new(&r, 0, m, vec![Matrix::from_rows(&r, &[[1]]), Matrix::from_rows(&r, &[[2]])]).unwrap()
}

#[test]
fn homology_of_times_six() {
    let x = times(6);
    assert_eq!(homology(&x, 0).divisors(), divs(&[6]).as_slice());
    assert!(homology(&x, 1).is_trivial());
}

#[test]
fn sphere_and_disk_homology() {
    let a = FpModule::cyclic(&z(), 6);
    let s = sphere(&a, 3);
    assert_eq!(homology(&s, 3), a.shape());
    assert!(homology(&s, 2).is_trivial());
    let d = disk(&a, 3);
    for n in 0..5 {
        assert!(homology(&d, n).is_trivial());
    }
    assert!(disk(&FpModule::zero(&z()), 2).is_zero());
    let m = sphere_to_disk(&a, 3);
    assert_eq!(m.component(2).matrix(), &Matrix::identity(&z(), 1));
}

#[test]
fn maps_from_sphere_biject_with_cycles() {
    // maps Σ^0 Z -> X correspond to elements of Z_0 X = Z
    let x = times(6);
    let maps = chain_map_space(&sphere(&FpModule::free(&z(), 1), 0), &x);
    assert_eq!(maps.len(), 1);
    // Z_1 of Z --×6--> Z is 0, so no nonzero maps from Σ^1 Z
    let maps1 = chain_map_space(&sphere(&FpModule::free(&z(), 1), 1), &x);
    assert!(maps1.iter().all(ChainMap::is_zero));
}

#[test]
fn suspension_and_loop() {
    let a = FpModule::cyclic(&z(), 3);
    assert_eq!(sphere(&a, 2).suspend(), sphere(&a, 3));
    let x = short_sequence();
    assert_eq!(x.suspend().desuspend(), x);
    let sx = x.suspend();
    assert_eq!(sx.differential(2).matrix(), &(-x.differential(1).matrix()));
}

#[test]
fn cone_of_identity_is_contractible() {
    let s = sphere(&FpModule::free(&z(), 1), 0);
    let t = standard_triangle(&ChainMap::identity(&s));
    assert_eq!(t.cone, disk(&FpModule::free(&z(), 1), 1));
    let c = &t.cone;
    assert!(find_chain_homotopy(&ChainMap::identity(c), &ChainMap::zero(c, c)).is_some());
}

#[test]
fn cone_of_zero_and_of_two() {
    let r = z();
    let s = sphere(&FpModule::free(&r, 1), 0);
    let t = standard_triangle(&ChainMap::zero(&s, &s));
    let sum = direct_sum_complexes(&r, &[&s, &s.suspend()]);
    assert_eq!(t.cone, sum.complex);

    let mut comps = BTreeMap::new();
    comps.insert(0, Matrix::from_rows(&r, &[[2]]));
    let two = ChainMap::new(&s, &s, comps).unwrap();
    let cone = standard_triangle(&two).cone;
    assert_eq!(homology(&cone, 0).divisors(), divs(&[2]).as_slice());
    assert!(homology(&cone, 1).is_trivial());
}

#[test]
fn path_object_of_sphere() {
    let r = z();
    let s = sphere(&FpModule::free(&r, 1), 0);
    let p = path_object(&s);
    assert_eq!(p.complex.support(), Some((-1, 0)));
    assert_eq!(p.complex.gens(0), 2);
    assert_eq!(p.complex.differential(0).matrix(), &Matrix::from_rows(&r, &[[1, -1]]));
    assert_eq!(homology(&p.complex, 0).divisors(), divs(&[0]).as_slice());
    assert!(homology(&p.complex, -1).is_trivial());
    let diag = p.product.pair(&s, &[&ChainMap::identity(&s), &ChainMap::identity(&s)]);
    assert!(p.beta.compose(&p.alpha).equals(&diag));
    assert!(path_object(&ChainComplex::zero(&r)).complex.is_zero());
}

#[test]
fn cylinder_axioms() {
    let x = short_sequence();
    let c = cylinder_object(&x);
    let codiag = c.coproduct.copair(&x, &[&ChainMap::identity(&x), &ChainMap::identity(&x)]);
    assert!(c.fold.compose(&c.inclusion).equals(&codiag));
    assert!(c.fold.compose(&c.end).equals(&ChainMap::identity(&x)));
    assert!(cylinder_object(&ChainComplex::zero(&z())).complex.is_zero());
}

#[test]
fn cofibre_of_cylinder_inclusion_is_suspension() {
    let x = short_sequence();
    let c = cylinder_object(&x);
    let (cof, q) = cofibre(&c.inclusion);
    assert_eq!(cof, x.suspend());
    assert!(q.compose(&c.inclusion).is_zero());
}

#[test]
fn homotopy_examples() {
    let r = z();
    let d = disk(&FpModule::free(&r, 1), 1);
    let h = find_chain_homotopy(&ChainMap::identity(&d), &ChainMap::zero(&d, &d)).unwrap();
    assert_eq!(h.component(0).matrix(), &Matrix::identity(&r, 1));
    let s = sphere(&FpModule::free(&r, 1), 0);
    assert!(find_chain_homotopy(&ChainMap::identity(&s), &ChainMap::zero(&s, &s)).is_none());
    let f = ChainMap::identity(&s);
    assert!(find_chain_homotopy(&f, &f).unwrap().components().values().all(ModMorphism::is_zero));
}

#[test]
fn left_and_right_homotopies_match_chain_homotopies() {
    let r = z();
    let d = disk(&FpModule::free(&r, 1), 1);
    let f = ChainMap::identity(&d);
    let g = ChainMap::zero(&d, &d);
    let h = find_chain_homotopy(&f, &g).unwrap();

    let p = path_object(&d);
    let k = p.right_homotopy(&h);
    assert!(p.alpha_inverse.compose(&k).equals(&f));
    let back = p.chain_homotopy_of(&k, &f, &g).unwrap();
    assert_eq!(back.components(), h.components());

    let c = cylinder_object(&d);
    let big_h = c.left_homotopy(&h);
    let ends = c.coproduct.copair(&d, &[&f, &g]);
    assert!(big_h.compose(&c.inclusion).equals(&ends));
    assert!(c.chain_homotopy_of(&big_h, &f, &g).is_some());
}

#[test]
fn weak_equivalence_separates_classes() {
    let r = z();
    let x = short_sequence();
    let zero = ChainComplex::zero(&r);
    let f = ChainMap::zero(&x, &zero);
    assert!(is_weak_equivalence(&categorical_class(&r), &f));
    assert!(!is_weak_equivalence(&pure_class(&r, 2), &f));
    let hom = hom_complex(&FpModule::cyclic(&r, 2), &x);
    assert_eq!(homology(&hom.complex, 0).divisors(), divs(&[2]).as_slice());
}

#[test]
fn fibration_examples() {
    let r = z();
    let a = sphere(&FpModule::cyclic(&r, 4), 0);
    let b = sphere(&FpModule::cyclic(&r, 2), 0);
    let mut comps = BTreeMap::new();
    comps.insert(0, Matrix::from_rows(&r, &[[1]]));
    let q = ChainMap::new(&a, &b, comps).unwrap();
    assert!(is_fibration(&categorical_class(&r), &q));
    assert!(!is_fibration(&pure_class(&r, 2), &q));
}

#[test]
fn cofibrations_from_zero() {
    let r = z();
    let zero = ChainComplex::zero(&r);
    let free = times(6);
    assert!(is_cofibration(&categorical_class(&r), &ChainMap::zero(&zero, &free)));
    let tors = short_sequence();
    assert!(!is_cofibration(&categorical_class(&r), &ChainMap::zero(&zero, &tors)));
    assert!(is_cofibration(&pure_class(&r, 4), &ChainMap::zero(&zero, &tors)));
}

#[test]
fn homotopy_classes_of_spheres() {
    // [Σ^0 Z, Σ^0 Z/2] = Z/2 and [D^1 Z, anything] = 0
    let r = z();
    let s = sphere(&FpModule::free(&r, 1), 0);
    let t = sphere(&FpModule::cyclic(&r, 2), 0);
    assert_eq!(homotopy_classes(&s, &t).shape().divisors(), divs(&[2]).as_slice());
    let d = disk(&FpModule::free(&r, 1), 1);
    assert!(homotopy_classes(&d, &t).shape().is_trivial());
    assert!(homotopy_classes(&d, &d).shape().is_trivial());
}

#[test]
fn fibre_is_the_degreewise_kernel() {
    let z = Ring::Integers;
    let x = disk(&FpModule::free(&z, 1), 1);
    let (k, incl) = fibre(&ChainMap::identity(&x));
    assert!(k.is_zero());
    assert!(incl.is_zero());

    let four = FpModule::cyclic(&z, 4);
    let two = FpModule::cyclic(&z, 2);
    let q = ChainMap::from_fn(&disk(&four, 1), &disk(&two, 1), |_| Matrix::from_rows(&z, &[[1]])).unwrap();
    let (k, incl) = fibre(&q);
    assert_eq!(k.support(), Some((0, 1)));
    assert!(homology(&k, 0).is_trivial());
    assert_eq!(k.module(1).shape(), two.shape());
    assert!(q.compose(&incl).is_zero());
}
