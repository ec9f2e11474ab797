#![allow(dead_code)]

use homalg::random::TestRng;
use homalg::{FpModule, Matrix, Ring};
use num_bigint::BigInt;
use rand::Rng;

/// A random product of elementary matrices.
pub fn unimodular(rng: &mut TestRng, ring: &Ring, n: usize) -> Matrix {
    let mut u = Matrix::identity(ring, n);
    if n < 2 {
        return u;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let mut e = Matrix::identity(ring, n);
        e.set(i, j, BigInt::from(rng.gen_range(-2i64..=2)));
        u = &e * &u;
    }
    u
}

/// The same module on scrambled generators and relations.
pub fn scramble(rng: &mut TestRng, m: &FpModule) -> FpModule {
    let u = unimodular(rng, m.ring(), m.gens());
    let v = unimodular(rng, m.ring(), m.relations().cols());
    FpModule::from_relations(&(&u * m.relations()) * &v)
}

pub fn small_ring(rng: &mut TestRng) -> Ring {
    if rng.gen_bool(0.5) {
        Ring::Integers
    } else {
        Ring::modulo(4)
    }
}
