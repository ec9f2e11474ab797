//! Lifting problems, the two factorizations and cofibrant replacement.

use std::collections::BTreeMap;

use crate::chaincx::{
    direct_sum_complexes, disk, is_cofibration, is_fibration, is_fibration_on, is_weak_equivalence,
    is_weak_equivalence_on, sphere, sphere_to_disk, union_span, ChainComplex, ChainMap, ChainMapSystem,
};
use crate::error::{Error, Result};
use crate::fpmod::{direct_sum_over, hom_group, FpModule, ModMorphism, Subquotient};
use crate::linalg::Matrix;
use crate::projclass::ProjectiveClass;
use crate::system::{MorphismSystem, Term};

/// A commuting square `p ∘ top = bottom ∘ i`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub i: ChainMap,
    pub p: ChainMap,
    pub top: ChainMap,
    pub bottom: ChainMap,
}

impl LiftingProblem {
    pub fn new(i: &ChainMap, p: &ChainMap, top: &ChainMap, bottom: &ChainMap) -> Result<LiftingProblem> {
        let fits = top.source() == i.source()
            && top.target() == p.source()
            && bottom.source() == i.target()
            && bottom.target() == p.target();
        if !fits {
            return Err(Error::DimensionMismatch("square maps do not fit together".into()));
        }
        if !p.compose(top).equals(&bottom.compose(i)) {
            return Err(Error::InvalidArgument("square does not commute".into()));
        }
        Ok(LiftingProblem {
            i: i.clone(),
            p: p.clone(),
            top: top.clone(),
            bottom: bottom.clone(),
        })
    }
}

/// A chain map `h : B -> X` with `h ∘ i = top` and `p ∘ h = bottom`.
pub fn solve_lift(prob: &LiftingProblem) -> Option<ChainMap> {
    let a = prob.i.source();
    let b = prob.i.target();
    let x = prob.p.source();
    let y = prob.p.target();
    let mut cms = ChainMapSystem::new(b, x);
    let degrees: Vec<i64> = cms.unknowns.keys().copied().collect();
    let i_comps: BTreeMap<i64, ModMorphism> = degrees.iter().map(|&n| (n, prob.i.component(n))).collect();
    let p_comps: BTreeMap<i64, ModMorphism> = degrees.iter().map(|&n| (n, prob.p.component(n))).collect();
    let tops: BTreeMap<i64, Matrix> = degrees.iter().map(|&n| (n, prob.top.component(n).matrix().clone())).collect();
    let bottoms: BTreeMap<i64, Matrix> =
        degrees.iter().map(|&n| (n, prob.bottom.component(n).matrix().clone())).collect();
    for &n in &degrees {
        let u = cms.unknowns[&n];
        cms.system.add_equation(
            &a.module(n),
            &x.module(n),
            &[Term::new(u).after(i_comps[&n].matrix())],
            Some(&tops[&n]),
        );
        cms.system.add_equation(
            &b.module(n),
            &y.module(n),
            &[Term::new(u).then(p_comps[&n].matrix())],
            Some(&bottoms[&n]),
        );
    }
    // degrees with no unknown still need top = 0 and bottom = 0
    if let Some((lo, hi)) = union_span(union_span(a.support(), b.support()), union_span(x.support(), y.support())) {
        for n in lo..=hi {
            if cms.unknowns.contains_key(&n) {
                continue;
            }
            if !prob.top.component(n).is_zero() || !prob.bottom.component(n).is_zero() {
                return None;
            }
        }
    }
    let sol = cms.system.solve()?;
    Some(cms.chain_map(&sol.into_maps()))
}

/// Which generating set a lifting check was made against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratingMap {
    /// `0 -> D^n P`
    J,
    /// `Σ^{n-1} P -> D^n P`
    I,
}

/// A generating square that failed to lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailedSquare {
    pub kind: GeneratingMap,
    pub test_object: usize,
    pub degree: i64,
}

/// Outcome of comparing lifting properties with the direct P-element checks.
#[derive(Clone, Debug)]
pub struct RlpReport {
    /// Degrees `n` of the generating maps that were checked.
    pub window: Option<(i64, i64)>,
    pub rlp_j: bool,
    pub rlp_i: bool,
    pub p_surjective: bool,
    pub p_quasi_isomorphism: bool,
    pub failures: Vec<FailedSquare>,
}

impl RlpReport {
    pub fn is_fibration(&self) -> bool {
        self.rlp_j
    }

    pub fn is_acyclic_fibration(&self) -> bool {
        self.rlp_i
    }
}

/// Generators of the group of squares from `Σ^{n-1}P -> D^nP` into `p`:
/// pairs `(x, y)` of a P-cycle `x` of `X_{n-1}` and a P-element `y` of `Y_n`
/// with `p x = d y`. The second matrix spans the squares that lift.
struct SquareGroup {
    x_gens: usize,
    y_gens: usize,
    p_gens: usize,
    generators: Matrix,
    liftable: Matrix,
}

impl SquareGroup {
    fn new(p_obj: &FpModule, p: &ChainMap, n: i64) -> SquareGroup {
        let x = p.source();
        let y = p.target();
        let ring = p_obj.ring();
        let mut sys = MorphismSystem::new(ring);
        let ux = (x.gens(n - 1) > 0).then(|| sys.add_unknown(p_obj, &x.module(n - 1)));
        let uy = (y.gens(n) > 0).then(|| sys.add_unknown(p_obj, &y.module(n)));
        let dx = x.differential(n - 1);
        let dy = y.differential(n);
        let pn1 = p.component(n - 1);
        if let Some(u) = ux {
            sys.add_equation(p_obj, &x.module(n - 2), &[Term::new(u).then(dx.matrix())], None);
        }
        let mut terms = Vec::new();
        if let Some(u) = ux {
            terms.push(Term::new(u).then(pn1.matrix()));
        }
        if let Some(u) = uy {
            terms.push(Term::new(u).then(dy.matrix()).negated());
        }
        if !terms.is_empty() {
            sys.add_equation(p_obj, &y.module(n - 1), &terms, None);
        }
        let generators = sys.solution_vectors();
        let zeros = sys.zero_map_vectors();
        let mut lifts = Vec::new();
        if x.gens(n) > 0 {
            let h = hom_group(p_obj, &x.module(n));
            let dn = x.differential(n);
            let pn = p.component(n);
            for g in h.generators() {
                let mut maps = Vec::new();
                if ux.is_some() {
                    maps.push(dn.compose(g));
                }
                if uy.is_some() {
                    maps.push(pn.compose(g));
                }
                let refs: Vec<&ModMorphism> = maps.iter().collect();
                lifts.push(sys.vector_of(&refs));
            }
        }
        let lifts = Matrix::from_columns(ring, sys.unknown_entries(), &lifts);
        SquareGroup {
            x_gens: if ux.is_some() { x.gens(n - 1) } else { 0 },
            y_gens: if uy.is_some() { y.gens(n) } else { 0 },
            p_gens: p_obj.gens(),
            generators,
            liftable: Matrix::hstack(&[&zeros, &lifts]),
        }
    }

    /// The square encoded by a vector, as matrices `x` and `y`.
    fn square(&self, v: &Matrix, col: usize, p: &ChainMap, n: i64) -> (Matrix, Matrix) {
        let ring = v.ring();
        let xn = p.source().gens(n - 1);
        let yn = p.target().gens(n);
        let x = if self.x_gens > 0 {
            Matrix::unvectorize(v, col, 0, self.x_gens, self.p_gens)
        } else {
            Matrix::zeros(ring, xn, self.p_gens)
        };
        let y = if self.y_gens > 0 {
            Matrix::unvectorize(v, col, self.x_gens * self.p_gens, self.y_gens, self.p_gens)
        } else {
            Matrix::zeros(ring, yn, self.p_gens)
        };
        (x, y)
    }

    fn failing(&self) -> Subquotient {
        Subquotient::new(&self.generators, &self.liftable)
    }
}

fn square_maps(p_obj: &FpModule, p: &ChainMap, n: i64, x: &Matrix, y: &Matrix) -> LiftingProblem {
    let i = sphere_to_disk(p_obj, n);
    let mut tc = BTreeMap::new();
    tc.insert(n - 1, x.clone());
    let top = ChainMap::new(i.source(), p.source(), tc).expect("x is a P-cycle");
    let mut bc = BTreeMap::new();
    bc.insert(n, y.clone());
    bc.insert(n - 1, p.target().differential(n).matrix() * y);
    let bottom = ChainMap::new(i.target(), p.target(), bc).expect("disk maps are P-elements");
    LiftingProblem::new(&i, p, &top, &bottom).expect("generating squares commute")
}

fn disk_map(p_obj: &FpModule, y: &ChainComplex, n: i64, g: &Matrix) -> ChainMap {
    let d = disk(p_obj, n);
    let mut comps = BTreeMap::new();
    comps.insert(n, g.clone());
    comps.insert(n - 1, y.differential(n).matrix() * g);
    ChainMap::new(&d, y, comps).expect("P-elements give maps out of disks")
}

fn characterization_range(p: &ChainMap) -> Option<(i64, i64)> {
    p.span().map(|(lo, hi)| (lo, hi + 1))
}

/// Decides the lifting properties of `p` against the generating maps for
/// every test object and compares them with P-surjectivity and P-homology.
pub fn check_rlp_characterization(class: &ProjectiveClass, p: &ChainMap) -> Result<RlpReport> {
    let window = characterization_range(p);
    let mut failures = Vec::new();
    if let Some((lo, hi)) = window {
        for (t, p_obj) in class.test_set().iter().enumerate() {
            for n in lo..=hi {
                let zero = ChainComplex::zero(p.source().ring());
                let d = disk(p_obj, n);
                let j = ChainMap::zero(&zero, &d);
                let top = ChainMap::zero(&zero, p.source());
                let mut j_ok = true;
                if p.target().gens(n) > 0 {
                    for g in hom_group(p_obj, &p.target().module(n)).generators() {
                        let bottom = disk_map(p_obj, p.target(), n, g.matrix());
                        let prob = LiftingProblem::new(&j, p, &top, &bottom).expect("maps out of 0 commute");
                        if solve_lift(&prob).is_none() {
                            j_ok = false;
                            break;
                        }
                    }
                }
                if !j_ok {
                    failures.push(FailedSquare {
                        kind: GeneratingMap::J,
                        test_object: t,
                        degree: n,
                    });
                }
                let sq = SquareGroup::new(p_obj, p, n);
                let mut i_ok = true;
                for c in 0..sq.generators.cols() {
                    let (x, y) = sq.square(&sq.generators, c, p, n);
                    if solve_lift(&square_maps(p_obj, p, n, &x, &y)).is_none() {
                        i_ok = false;
                        break;
                    }
                }
                if !i_ok {
                    failures.push(FailedSquare {
                        kind: GeneratingMap::I,
                        test_object: t,
                        degree: n,
                    });
                }
            }
        }
    }
    let rlp_j = failures.iter().all(|f| f.kind != GeneratingMap::J);
    let rlp_i = failures.iter().all(|f| f.kind != GeneratingMap::I);
    let p_surjective = is_fibration_on(class, p, window);
    let p_quasi_isomorphism = is_weak_equivalence_on(class, p, window);
    if rlp_j != p_surjective {
        return Err(Error::CharacterizationMismatch(format!(
            "lifting against 0 -> D^n P gives {rlp_j}, P-surjectivity gives {p_surjective}"
        )));
    }
    if rlp_i != (p_surjective && p_quasi_isomorphism) {
        return Err(Error::CharacterizationMismatch(format!(
            "lifting against S^(n-1) P -> D^n P gives {rlp_i}, P-surjective {p_surjective}, P-quasi-iso {p_quasi_isomorphism}"
        )));
    }
    Ok(RlpReport {
        window,
        rlp_j,
        rlp_i,
        p_surjective,
        p_quasi_isomorphism,
        failures,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorizationKind {
    CofThenAcyclicFib,
    AcyclicCofThenFib,
}

/// What was verified about a factorization after it was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Degrees on which the right map was checked; `None` means everywhere.
    pub window: Option<(i64, i64)>,
    pub left_ok: bool,
    pub right_ok: bool,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.left_ok && self.right_ok
    }
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub f: ChainMap,
    pub mid: ChainComplex,
    pub left: ChainMap,
    pub right: ChainMap,
    pub kind: FactorizationKind,
    /// Number of cell-attaching stages.
    pub stages: usize,
    pub certificate: Certificate,
}

/// `X -> X ⊕ C -> Y` with `C` a sum of disks, one per Hom generator of each
/// `Hom(P, Y_n)`.
pub fn factor_acyclic_cof_then_fib(class: &ProjectiveClass, f: &ChainMap) -> Factorization {
    let x = f.source();
    let y = f.target();
    let ring = x.ring();
    let mut disks = Vec::new();
    let mut evals = Vec::new();
    if let Some((lo, hi)) = y.support() {
        for n in lo..=hi {
            for p_obj in class.test_set() {
                for g in hom_group(p_obj, &y.module(n)).generators() {
                    disks.push(disk(p_obj, n));
                    evals.push(disk_map(p_obj, y, n, g.matrix()));
                }
            }
        }
    }
    let mut parts: Vec<&ChainComplex> = vec![x];
    parts.extend(disks.iter());
    let sum = direct_sum_complexes(ring, &parts);
    let left = sum.injections[0].clone();
    let mut maps: Vec<&ChainMap> = vec![f];
    maps.extend(evals.iter());
    let right = sum.copair(y, &maps);
    let certificate = Certificate {
        window: None,
        left_ok: is_cofibration(class, &left) && is_weak_equivalence(class, &left),
        right_ok: is_fibration(class, &right),
    };
    Factorization {
        f: f.clone(),
        mid: sum.complex,
        left,
        right,
        kind: FactorizationKind::AcyclicCofThenFib,
        stages: 1,
        certificate,
    }
}

/// A generator attached in `degree` with boundary in the previous degree.
#[derive(Clone, Debug)]
struct Cell {
    degree: i64,
    module: FpModule,
    /// Columns in the generators of the middle object one degree down, at the
    /// time of attachment.
    boundary: Matrix,
    /// Image under the right map, in the generators of `Y_degree`.
    image: Matrix,
}

struct CellComplex<'a> {
    f: &'a ChainMap,
    cells: Vec<Cell>,
}

impl CellComplex<'_> {
    fn build(&self) -> (ChainComplex, ChainMap, ChainMap) {
        let x = self.f.source();
        let y = self.f.target();
        let ring = x.ring();
        let cell_span = self
            .cells
            .iter()
            .fold(None, |acc, c| union_span(acc, Some((c.degree, c.degree))));
        let Some((lo, hi)) = union_span(x.support(), cell_span) else {
            let z = ChainComplex::zero(ring);
            return (z.clone(), ChainMap::zero(x, &z), ChainMap::zero(&z, y));
        };
        let in_degree = |n: i64| self.cells.iter().filter(move |c| c.degree == n);
        let gens = |n: i64| x.gens(n) + in_degree(n).map(|c| c.module.gens()).sum::<usize>();
        let mid = ChainComplex::from_fn(
            ring,
            lo,
            hi,
            |n| {
                let mut parts = vec![x.module(n)];
                parts.extend(in_degree(n).map(|c| c.module.clone()));
                let refs: Vec<&FpModule> = parts.iter().collect();
                direct_sum_over(ring, &refs).module
            },
            |n| {
                let mut d = Matrix::zeros(ring, gens(n - 1), gens(n));
                d.set_block(0, 0, x.differential(n).matrix());
                let mut col = x.gens(n);
                for c in in_degree(n) {
                    d.set_block(0, col, &c.boundary);
                    col += c.module.gens();
                }
                d
            },
        )
        .expect("cells are attached along cycles");
        let left = ChainMap::from_fn(x, &mid, |n| {
            let mut m = Matrix::zeros(ring, mid.gens(n), x.gens(n));
            m.set_block(0, 0, &Matrix::identity(ring, x.gens(n)));
            m
        })
        .expect("inclusion of the base");
        let right = ChainMap::from_fn(&mid, y, |n| {
            let mut parts = vec![self.f.component(n).matrix().clone()];
            parts.extend(in_degree(n).map(|c| c.image.clone()));
            Matrix::from_columns(ring, y.gens(n), &parts)
        })
        .expect("cells map compatibly");
        (mid, left, right)
    }
}

/// Test objects by increasing torsion order, free ones last. A square whose
/// cycle factors through a smaller test object is then killed by that
/// object's cell before a larger cell would add a spurious cycle.
fn attach_order(class: &ProjectiveClass) -> Vec<&FpModule> {
    let mut objs: Vec<&FpModule> = class.test_set().iter().collect();
    objs.sort_by_key(|m| match m.shape().order() {
        Some(o) => (0, o),
        None => (1, num_bigint::BigInt::from(0)),
    });
    objs
}

/// `X -> Q -> Y` by attaching cells along failing generating squares until
/// every square lifts. With `window_hi` the squares are only considered up
/// to that degree and the result is certified there.
pub fn factor_cof_then_acyclic_fib(
    class: &ProjectiveClass,
    f: &ChainMap,
    window_hi: Option<i64>,
    stage_bound: usize,
) -> Result<Factorization> {
    let lo = f.span().map(|(lo, _)| lo);
    let mut cc = CellComplex { f, cells: Vec::new() };
    let (mut mid, mut left, mut right) = cc.build();
    let mut stages = 0;
    loop {
        let (Some(lo), Some((_, top))) = (lo, union_span(mid.support(), f.target().support())) else {
            break;
        };
        let hi = match window_hi {
            Some(w) => w.min(top + 1),
            None => top + 1,
        };
        let mut attached = false;
        for p_obj in attach_order(class) {
            let mut new_cells = Vec::new();
            for n in lo..=hi {
                let sq = SquareGroup::new(p_obj, &right, n);
                let failing = sq.failing();
                for i in 0..failing.len() {
                    let (x, y) = sq.square(failing.representatives(), i, &right, n);
                    new_cells.push(Cell {
                        degree: n,
                        module: p_obj.clone(),
                        boundary: x,
                        image: y,
                    });
                }
            }
            if new_cells.is_empty() {
                continue;
            }
            if !attached {
                attached = true;
                stages += 1;
                if stages > stage_bound {
                    return Err(Error::StageBoundExceeded { bound: stage_bound });
                }
            }
            cc.cells.extend(new_cells);
            (mid, left, right) = cc.build();
        }
        if !attached {
            break;
        }
    }
    let window = match (window_hi, lo) {
        (Some(w), Some(lo)) if mid.support().map_or(true, |(_, top)| w < top + 1) => Some((lo, w)),
        _ => None,
    };
    let right_ok = match window {
        None => check_rlp_characterization(class, &right)?.is_acyclic_fibration(),
        Some((lo, w)) => is_fibration_on(class, &right, Some((lo, w))) && is_weak_equivalence_on(class, &right, Some((lo, w - 1))),
    };
    let certificate = Certificate {
        window,
        left_ok: is_cofibration(class, &left),
        right_ok,
    };
    Ok(Factorization {
        f: f.clone(),
        mid,
        left,
        right,
        kind: FactorizationKind::CofThenAcyclicFib,
        stages,
        certificate,
    })
}

/// A cofibrant replacement `q : Q -> X`; cofibrant `X` is returned as is.
pub fn cofibrant_replacement(
    class: &ProjectiveClass,
    x: &ChainComplex,
    window_hi: Option<i64>,
    stage_bound: usize,
) -> Result<Factorization> {
    let zero = ChainComplex::zero(x.ring());
    let f = ChainMap::zero(&zero, x);
    if is_cofibration(class, &f) {
        let id = ChainMap::identity(x);
        return Ok(Factorization {
            f,
            mid: x.clone(),
            left: ChainMap::zero(&zero, x),
            right: id,
            kind: FactorizationKind::CofThenAcyclicFib,
            stages: 0,
            certificate: Certificate {
                window: None,
                left_ok: true,
                right_ok: true,
            },
        });
    }
    factor_cof_then_acyclic_fib(class, &f, window_hi, stage_bound)
}

/// Maps between spheres used by the tests and the CLI.
pub fn sphere_map(a: &FpModule, b: &FpModule, n: i64, m: &Matrix) -> Result<ChainMap> {
    let mut comps = BTreeMap::new();
    comps.insert(n, m.clone());
    ChainMap::new(&sphere(a, n), &sphere(b, n), comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::homology;
    use crate::linalg::Ring;
    use crate::projclass::{categorical_class, pure_class};
    use num_bigint::BigInt;

    fn z() -> Ring {
        Ring::Integers
    }

    fn free(r: &Ring) -> FpModule {
        FpModule::free(r, 1)
    }

    /// `D^1 Z -> S^1 Z`, the identity in degree 1.
    fn disk_onto_sphere() -> ChainMap {
        let r = z();
        let mut comps = BTreeMap::new();
        comps.insert(1, Matrix::identity(&r, 1));
        ChainMap::new(&disk(&free(&r), 1), &sphere(&free(&r), 1), comps).unwrap()
    }

    #[test]
    fn lifts_against_zero_to_disk() {
        let r = z();
        let p = disk_onto_sphere();
        let zero = ChainComplex::zero(&r);
        for n in -1..=3 {
            let d = disk(&free(&r), n);
            let i = ChainMap::zero(&zero, &d);
            for bottom in crate::chaincx::chain_map_space(&d, p.target()) {
                let prob = LiftingProblem::new(&i, &p, &ChainMap::zero(&zero, p.source()), &bottom).unwrap();
                let h = solve_lift(&prob).expect("surjections lift against 0 -> D^n");
                assert!(p.compose(&h).equals(&bottom));
            }
        }
    }

    #[test]
    fn no_lift_without_quasi_isomorphism() {
        let r = z();
        let p = disk_onto_sphere();
        let i = sphere_to_disk(&free(&r), 1);
        let top = ChainMap::zero(i.source(), p.source());
        let mut comps = BTreeMap::new();
        comps.insert(1, Matrix::identity(&r, 1));
        let bottom = ChainMap::new(i.target(), p.target(), comps).unwrap();
        let prob = LiftingProblem::new(&i, &p, &top, &bottom).unwrap();
        assert!(solve_lift(&prob).is_none());
    }

    #[test]
    fn split_inclusion_lifts() {
        let r = z();
        let a = sphere(&free(&r), 0);
        let sum = direct_sum_complexes(&r, &[&a, &a]);
        let i = sum.injections[0].clone();
        let top = ChainMap::identity(&a);
        let p = ChainMap::zero(&a, &ChainComplex::zero(&r));
        let bottom = ChainMap::zero(&sum.complex, p.target());
        let prob = LiftingProblem::new(&i, &p, &top, &bottom).unwrap();
        let h = solve_lift(&prob).unwrap();
        assert!(h.compose(&i).equals(&top));
    }

    #[test]
    fn characterization_examples() {
        let r = z();
        let q = sphere_map(&FpModule::cyclic(&r, 4), &FpModule::cyclic(&r, 2), 0, &Matrix::identity(&r, 1)).unwrap();
        let rep = check_rlp_characterization(&categorical_class(&r), &q).unwrap();
        assert!(rep.is_fibration());
        assert!(!rep.is_acyclic_fibration());
        let rep = check_rlp_characterization(&pure_class(&r, 4), &q).unwrap();
        assert!(!rep.is_fibration());

        let x = sphere(&FpModule::cyclic(&r, 3), 1);
        let id = ChainMap::identity(&x);
        let rep = check_rlp_characterization(&pure_class(&r, 4), &id).unwrap();
        assert!(rep.rlp_i && rep.rlp_j && rep.failures.is_empty());

        let zero = ChainComplex::zero(&r);
        let rep = check_rlp_characterization(&categorical_class(&r), &ChainMap::zero(&zero, &x)).unwrap();
        assert!(!rep.rlp_i);
    }

    #[test]
    fn acyclic_cofibration_factorizations() {
        let r = z();
        let zero = ChainComplex::zero(&r);
        let s = sphere(&free(&r), 0);
        let fact = factor_acyclic_cof_then_fib(&categorical_class(&r), &ChainMap::zero(&zero, &s));
        assert_eq!(fact.mid, disk(&free(&r), 0));
        assert!(fact.certificate.holds());

        let r4 = Ring::modulo(4);
        let zero4 = ChainComplex::zero(&r4);
        let s2 = sphere(&FpModule::cyclic(&r4, 2), 0);
        let fact = factor_acyclic_cof_then_fib(&pure_class(&r4, 4), &ChainMap::zero(&zero4, &s2));
        let expect = direct_sum_complexes(
            &r4,
            &[&disk(&FpModule::free(&r4, 1), 0), &disk(&FpModule::cyclic(&r4, 2), 0)],
        );
        assert_eq!(fact.mid, expect.complex);
        assert!(fact.certificate.holds());
        assert!(fact.right.compose(&fact.left).equals(&fact.f));

        let id = ChainMap::identity(&s);
        let fact = factor_acyclic_cof_then_fib(&categorical_class(&r), &id);
        assert!(fact.right.compose(&fact.left).equals(&id));
        assert!(fact.certificate.holds());
    }

    #[test]
    fn free_resolution_of_z6() {
        let r = z();
        let zero = ChainComplex::zero(&r);
        let s = sphere(&FpModule::cyclic(&r, 6), 0);
        let fact = factor_cof_then_acyclic_fib(&categorical_class(&r), &ChainMap::zero(&zero, &s), None, 8).unwrap();
        assert_eq!(fact.mid.support(), Some((0, 1)));
        assert_eq!(fact.mid.gens(0), 1);
        assert_eq!(fact.mid.gens(1), 1);
        assert_eq!(fact.mid.differential(1).matrix().get(0, 0).magnitude(), &6u32.into());
        assert_eq!(homology(&fact.mid, 0).divisors(), &[BigInt::from(6)]);
        assert!(fact.certificate.holds());
        assert_eq!(fact.certificate.window, None);
    }

    #[test]
    fn identity_on_cofibrant_attaches_nothing() {
        let r = z();
        let x = ChainComplex::new(&r, 0, vec![free(&r), free(&r)], vec![Matrix::from_rows(&r, &[[6]])]).unwrap();
        let id = ChainMap::identity(&x);
        let fact = factor_cof_then_acyclic_fib(&categorical_class(&r), &id, None, 8).unwrap();
        assert_eq!(fact.stages, 0);
        assert!(fact.left.equals(&id));
    }

    #[test]
    fn periodic_resolution_is_truncated() {
        let r4 = Ring::modulo(4);
        let zero = ChainComplex::zero(&r4);
        let s = sphere(&FpModule::cyclic(&r4, 2), 0);
        let f = ChainMap::zero(&zero, &s);
        let class = categorical_class(&r4);
        let fact = factor_cof_then_acyclic_fib(&class, &f, Some(4), 6).unwrap();
        assert_eq!(fact.mid.support(), Some((0, 4)));
        for n in 1..=4 {
            assert_eq!(fact.mid.differential(n).matrix(), &Matrix::from_rows(&r4, &[[2]]));
        }
        assert_eq!(fact.certificate.window, Some((0, 4)));
        assert!(fact.certificate.holds());
        assert!(matches!(
            factor_cof_then_acyclic_fib(&class, &f, None, 6),
            Err(Error::StageBoundExceeded { bound: 6 })
        ));
    }

    #[test]
    fn cofibrant_replacement_fast_path() {
        let r4 = Ring::modulo(4);
        let s = sphere(&FpModule::cyclic(&r4, 2), 0);
        let rep = cofibrant_replacement(&pure_class(&r4, 4), &s, None, 8).unwrap();
        assert_eq!(rep.mid, s);
        assert!(rep.right.equals(&ChainMap::identity(&s)));

        let r = z();
        let a = FpModule::diagonal(&r, &[BigInt::from(2), BigInt::from(4)]);
        let rep = cofibrant_replacement(&categorical_class(&r), &sphere(&a, 0), None, 8).unwrap();
        assert_eq!(rep.mid.support(), Some((0, 1)));
        assert!(rep.certificate.holds());
    }
}
