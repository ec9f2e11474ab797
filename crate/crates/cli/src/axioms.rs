//! The randomized model-structure suite behind `check-axioms`.

use homalg::chaincx::{
    find_chain_homotopy, is_cofibration, is_fibration, is_weak_equivalence, path_object, standard_triangle,
    ChainComplex, ChainMap,
};
use homalg::model::{
    check_rlp_characterization, factor_acyclic_cof_then_fib, factor_cof_then_acyclic_fib, solve_lift,
    LiftingProblem,
};
use homalg::projclass::ProjectiveClass;
use homalg::random::{self, rng, TestRng};
use homalg::Error;
use rayon::prelude::*;

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn lifts(g: &mut TestRng, i: &ChainMap, p: &ChainMap) -> bool {
    let prob = random::commuting_square(g, i, p);
    match solve_lift(&prob) {
        Some(h) => h.compose(&prob.i).equals(&prob.top) && prob.p.compose(&h).equals(&prob.bottom),
        None => false,
    }
}

fn case(class: &ProjectiveClass, seed: u64, stage_bound: usize) -> Result<(), String> {
    let mut g = rng(seed);
    let ring = class.ring();
    let x = random::complex(&mut g, ring, 0, 1, 2, 4);
    let y = random::complex(&mut g, ring, 0, 1, 2, 4);
    let f = random::chain_map(&mut g, &x, &y);

    check_rlp_characterization(class, &f).map_err(|e| e.to_string())?;

    let j = factor_acyclic_cof_then_fib(class, &f);
    ensure(j.right.compose(&j.left).equals(&f), "acyclic cofibration/fibration factorization does not compose to f")?;
    ensure(is_cofibration(class, &j.left) && is_weak_equivalence(class, &j.left), "left map is not an acyclic cofibration")?;
    ensure(is_fibration(class, &j.right), "right map is not a fibration")?;
    ensure(lifts(&mut g, &j.left, &j.right), "acyclic cofibration fails to lift against a fibration")?;

    match factor_cof_then_acyclic_fib(class, &f, None, stage_bound) {
        Ok(fi) => {
            ensure(fi.right.compose(&fi.left).equals(&f), "cofibration/acyclic fibration factorization does not compose to f")?;
            ensure(is_cofibration(class, &fi.left), "left map is not a cofibration")?;
            ensure(is_fibration(class, &fi.right) && is_weak_equivalence(class, &fi.right), "right map is not an acyclic fibration")?;
            ensure(lifts(&mut g, &fi.left, &fi.right), "cofibration fails to lift against an acyclic fibration")?;
        }
        Err(Error::StageBoundExceeded { .. }) => {
            let top = y.support().map_or(0, |(_, hi)| hi);
            let fi = factor_cof_then_acyclic_fib(class, &f, Some(top + 2), stage_bound).map_err(|e| e.to_string())?;
            ensure(fi.right.compose(&fi.left).equals(&f), "windowed factorization does not compose to f")?;
            ensure(fi.certificate.holds(), "windowed factorization certificate fails")?;
        }
        Err(e) => return Err(e.to_string()),
    }

    let f2 = random::homotopic_map(&mut g, &f);
    ensure(find_chain_homotopy(&f, &f2).is_some(), "homotopic maps are not found homotopic")?;
    let po = path_object(&y);
    let zero = ChainComplex::zero(ring);
    let prob = LiftingProblem::new(
        &ChainMap::zero(&zero, &x),
        &po.beta,
        &ChainMap::zero(&zero, &po.complex),
        &po.product.pair(&x, &[&f, &f2]),
    )
    .map_err(|e| e.to_string())?;
    ensure(solve_lift(&prob).is_some(), "no right homotopy through the path object")?;

    let cone = standard_triangle(&ChainMap::identity(&x)).cone;
    ensure(
        find_chain_homotopy(&ChainMap::identity(&cone), &ChainMap::zero(&cone, &cone)).is_some(),
        "cone of the identity is not contractible",
    )?;
    ensure(x.suspend().desuspend() == x, "loop of the suspension is not the identity")?;
    Ok(())
}

/// Runs `cases` seeded cases; the result lists the failures in case order.
pub fn run_suite(class: &ProjectiveClass, seed: u64, cases: usize, stage_bound: usize) -> Vec<(usize, String)> {
    let outcomes: Vec<Result<(), String>> = (0..cases)
        .into_par_iter()
        .map(|i| case(class, seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64), stage_bound))
        .collect();
    outcomes
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| r.err().map(|e| (i, e)))
        .collect()
}
