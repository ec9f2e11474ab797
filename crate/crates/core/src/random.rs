//! Seeded generators of small modules, complexes and maps.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use std::collections::BTreeMap;

use crate::chaincx::{chain_map_space, cofibre, fibre, ChainComplex, ChainMap};
use crate::fpmod::{hom_group, kernel, FpModule, ModMorphism};
use crate::linalg::{Matrix, Ring};
use crate::model::LiftingProblem;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Orders usable for cyclic summands: `0` (free) and cyclic orders up to
/// `torsion_bound` over `Z`, divisors of `n` over `Z/n`.
fn orders(ring: &Ring, torsion_bound: u64) -> Vec<u64> {
    match ring {
        Ring::Integers => std::iter::once(0).chain(2..=torsion_bound.max(2)).collect(),
        Ring::IntegersMod(n) => {
            let n = n.to_u64().expect("small modulus");
            (2..=n).filter(|d| n % d == 0).collect()
        }
    }
}

/// A random invertible matrix, a product of elementary operations.
fn unimodular(rng: &mut TestRng, ring: &Ring, n: usize) -> Matrix {
    let mut u = Matrix::identity(ring, n);
    if n < 2 {
        return u;
    }
    for _ in 0..n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        let mut e = Matrix::identity(ring, n);
        e.set(i, j, c);
        u = &e * &u;
    }
    u
}

/// A module on at most `max_gens` generators whose prime-power torsion
/// summands stay within `torsion_bound`, presented by a scrambled set of relations.
pub fn module(rng: &mut TestRng, ring: &Ring, max_gens: usize, torsion_bound: u64) -> FpModule {
    let k = rng.gen_range(0..=max_gens);
    let choices = orders(ring, torsion_bound);
    let ords: Vec<BigInt> = (0..k).map(|_| BigInt::from(*choices.choose(rng).unwrap())).collect();
    let diag = FpModule::diagonal(ring, &ords);
    if k < 2 || rng.gen_bool(0.5) {
        return diag;
    }
    let u = unimodular(rng, ring, k);
    FpModule::from_relations(&u * diag.relations())
}

/// A nonzero module when possible.
pub fn nonzero_module(rng: &mut TestRng, ring: &Ring, max_gens: usize, torsion_bound: u64) -> FpModule {
    for _ in 0..16 {
        let m = module(rng, ring, max_gens.max(1), torsion_bound);
        if !m.is_trivial() {
            return m;
        }
    }
    FpModule::free(ring, 1)
}

/// A random element of `Hom(a, b)` as a combination of its generators.
pub fn morphism(rng: &mut TestRng, a: &FpModule, b: &FpModule) -> ModMorphism {
    let h = hom_group(a, b);
    let mut f = ModMorphism::zero(a, b);
    for g in h.generators() {
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        f = f.add(&g.scale(&c));
    }
    f
}

/// A complex on degrees `lo..=hi` with each differential a random map into
/// the kernel of the one below.
pub fn complex(rng: &mut TestRng, ring: &Ring, lo: i64, hi: i64, max_gens: usize, torsion_bound: u64) -> ChainComplex {
    let mut modules = Vec::new();
    let mut diffs: Vec<ModMorphism> = Vec::new();
    for n in lo..=hi {
        let m = module(rng, ring, max_gens, torsion_bound);
        if n > lo {
            let below: &FpModule = &modules[modules.len() - 1];
            let d = match diffs.last() {
                None => morphism(rng, &m, below),
                Some(prev) => {
                    let (k, incl) = kernel(prev);
                    incl.compose(&morphism(rng, &m, &k))
                }
            };
            diffs.push(d);
        }
        modules.push(m);
    }
    ChainComplex::from_morphisms(ring, lo, modules, diffs).expect("differentials land in kernels")
}

/// A random chain map `x -> y`.
pub fn chain_map(rng: &mut TestRng, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    let mut f = ChainMap::zero(x, y);
    for g in chain_map_space(x, y) {
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        f = f.add(&g.scale(&c));
    }
    f
}

/// `f + d h + h d` for a random family `h_n : X_n -> Y_{n+1}`.
pub fn homotopic_map(rng: &mut TestRng, f: &ChainMap) -> ChainMap {
    let (x, y) = (f.source(), f.target());
    let Some((lo, hi)) = f.span() else {
        return f.clone();
    };
    let h: BTreeMap<i64, ModMorphism> =
        ((lo - 1)..=hi).map(|n| (n, morphism(rng, &x.module(n), &y.module(n + 1)))).collect();
    let comps = (lo..=hi)
        .map(|n| {
            let b = y.differential(n + 1).compose(&h[&n]).add(&h[&(n - 1)].compose(&x.differential(n)));
            (n, f.component(n).add(&b))
        })
        .collect();
    ChainMap::from_morphisms(x, y, comps).expect("homotopic maps are chain maps")
}

/// A random commuting square from `i` to `p`: the evident square through a
/// random `s : B -> X`, with the top moved by a map into `ker p` and the
/// bottom by a map out of `coker i`.
pub fn commuting_square(rng: &mut TestRng, i: &ChainMap, p: &ChainMap) -> LiftingProblem {
    let s = chain_map(rng, i.target(), p.source());
    let (k, kappa) = fibre(p);
    let (c, pi) = cofibre(i);
    let k1 = chain_map(rng, i.source(), &k);
    let z1 = chain_map(rng, &c, p.target());
    let top = s.compose(i).add(&kappa.compose(&k1));
    let bottom = p.compose(&s).add(&z1.compose(&pi));
    LiftingProblem::new(i, p, &top, &bottom).expect("square commutes")
}

/// A random ring among `Z`, `Z/4`, `Z/6`, `Z/8` and `Z/9`.
pub fn ring(rng: &mut TestRng) -> Ring {
    match rng.gen_range(0..5) {
        0 => Ring::Integers,
        1 => Ring::modulo(4),
        2 => Ring::modulo(6),
        3 => Ring::modulo(8),
        _ => Ring::modulo(9),
    }
}
