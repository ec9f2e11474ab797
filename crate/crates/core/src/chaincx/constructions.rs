use std::collections::BTreeMap;

use super::complex::union_span;
use super::{find_chain_homotopy, ChainComplex, ChainHomotopy, ChainMap};
use crate::fpmod::{cokernel, direct_sum_over, kernel, FpModule, ModMorphism};
use crate::system::{MorphismSystem, Term};
use crate::linalg::{Matrix, Ring};

/// Block matrix with the given row and column block sizes; unspecified blocks are zero.
pub(crate) fn block_matrix(ring: &Ring, rows: &[usize], cols: &[usize], blocks: &[(usize, usize, Matrix)]) -> Matrix {
    let r_off: Vec<usize> = rows.iter().scan(0, |a, &r| { let o = *a; *a += r; Some(o) }).collect();
    let c_off: Vec<usize> = cols.iter().scan(0, |a, &c| { let o = *a; *a += c; Some(o) }).collect();
    let mut m = Matrix::zeros(ring, rows.iter().sum(), cols.iter().sum());
    for (bi, bj, b) in blocks {
        assert_eq!(b.shape(), (rows[*bi], cols[*bj]), "block ({bi},{bj}) has wrong shape");
        m.set_block(r_off[*bi], c_off[*bj], b);
    }
    m
}

fn identity(ring: &Ring, n: usize) -> Matrix {
    Matrix::identity(ring, n)
}

/// `Σ^n A`: `A` concentrated in degree `n`.
pub fn sphere(a: &FpModule, n: i64) -> ChainComplex {
    ChainComplex::new(a.ring(), n, vec![a.clone()], vec![]).expect("a single module is a complex")
}

/// `D^n A`: `A` in degrees `n` and `n-1` joined by the identity.
pub fn disk(a: &FpModule, n: i64) -> ChainComplex {
    let ring = a.ring();
    ChainComplex::new(ring, n - 1, vec![a.clone(), a.clone()], vec![identity(ring, a.gens())])
        .expect("identity squared to the next zero is zero")
}

/// The natural map `Σ^{n-1} A -> D^n A`, the identity in degree `n-1`.
pub fn sphere_to_disk(a: &FpModule, n: i64) -> ChainMap {
    let s = sphere(a, n - 1);
    let d = disk(a, n);
    let mut comps = BTreeMap::new();
    comps.insert(n - 1, identity(a.ring(), a.gens()));
    ChainMap::new(&s, &d, comps).expect("sphere includes into disk")
}

impl ChainComplex {
    /// `(ΣX)_n = X_{n-1}` with `d = -d_X`.
    pub fn suspend(&self) -> ChainComplex {
        self.shifted(1)
    }

    /// `(ΩX)_n = X_{n+1}` with `d = -d_X`; inverse to [`ChainComplex::suspend`].
    pub fn desuspend(&self) -> ChainComplex {
        self.shifted(-1)
    }

    fn shifted(&self, by: i64) -> ChainComplex {
        let Some((lo, hi)) = self.support() else {
            return self.clone();
        };
        let modules: Vec<FpModule> = (lo..=hi).map(|n| self.module(n)).collect();
        let diffs: Vec<ModMorphism> = ((lo + 1)..=hi).map(|n| self.differential(n).neg()).collect();
        ChainComplex::from_morphisms(self.ring(), lo + by, modules, diffs).expect("shift preserves d∘d = 0")
    }
}

impl ChainMap {
    /// `(Σf)_n = f_{n-1}` between the suspensions.
    pub fn suspend(&self) -> ChainMap {
        self.shifted(1)
    }

    /// `(Ωf)_n = f_{n+1}` between the desuspensions.
    pub fn desuspend(&self) -> ChainMap {
        self.shifted(-1)
    }

    fn shifted(&self, by: i64) -> ChainMap {
        let s = self.source().shifted(by);
        let t = self.target().shifted(by);
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = self.span() {
            for n in lo..=hi {
                comps.insert(n + by, self.component(n).matrix().clone());
            }
        }
        ChainMap::new(&s, &t, comps).expect("shifting preserves chain maps")
    }
}

/// Biproduct of complexes with its structure maps.
#[derive(Clone, Debug)]
pub struct ComplexSum {
    pub complex: ChainComplex,
    pub injections: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

pub fn direct_sum_complexes(ring: &Ring, parts: &[&ChainComplex]) -> ComplexSum {
    let span = parts.iter().fold(None, |acc, c| union_span(acc, c.support()));
    let Some((lo, hi)) = span else {
        let z = ChainComplex::zero(ring);
        return ComplexSum {
            injections: parts.iter().map(|c| ChainMap::zero(c, &z)).collect(),
            projections: parts.iter().map(|c| ChainMap::zero(&z, c)).collect(),
            complex: z,
        };
    };
    let modules: Vec<FpModule> = (lo..=hi)
        .map(|n| {
            let ms: Vec<FpModule> = parts.iter().map(|c| c.module(n)).collect();
            let refs: Vec<&FpModule> = ms.iter().collect();
            direct_sum_over(ring, &refs).module
        })
        .collect();
    let diffs: Vec<Matrix> = ((lo + 1)..=hi)
        .map(|n| {
            let ds: Vec<ModMorphism> = parts.iter().map(|c| c.differential(n)).collect();
            let refs: Vec<&Matrix> = ds.iter().map(|d| d.matrix()).collect();
            Matrix::block_diagonal(ring, &refs)
        })
        .collect();
    let complex = ChainComplex::new(ring, lo, modules, diffs).expect("sum of complexes");
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        let inj = ChainMap::from_fn(part, &complex, |n| {
            let sizes: Vec<usize> = parts.iter().map(|c| c.gens(n)).collect();
            let blocks = [(k, 0, identity(ring, sizes[k]))];
            block_matrix(ring, &sizes, &[sizes[k]], &blocks)
        })
        .expect("injection is a chain map");
        let proj = ChainMap::from_fn(&complex, part, |n| {
            let sizes: Vec<usize> = parts.iter().map(|c| c.gens(n)).collect();
            let blocks = [(0, k, identity(ring, sizes[k]))];
            block_matrix(ring, &[sizes[k]], &sizes, &blocks)
        })
        .expect("projection is a chain map");
        injections.push(inj);
        projections.push(proj);
    }
    ComplexSum {
        complex,
        injections,
        projections,
    }
}

impl ComplexSum {
    /// The map into the sum with the given components.
    pub fn pair(&self, source: &ChainComplex, maps: &[&ChainMap]) -> ChainMap {
        let ring = source.ring();
        ChainMap::from_fn(source, &self.complex, |n| {
            let parts: Vec<Matrix> = maps.iter().map(|m| m.component(n).matrix().clone()).collect();
            if parts.is_empty() {
                return Matrix::zeros(ring, 0, source.gens(n));
            }
            let refs: Vec<&Matrix> = parts.iter().collect();
            Matrix::vstack(&refs)
        })
        .expect("pairing chain maps is a chain map")
    }

    /// The map out of the sum with the given restrictions.
    pub fn copair(&self, target: &ChainComplex, maps: &[&ChainMap]) -> ChainMap {
        let ring = target.ring();
        ChainMap::from_fn(&self.complex, target, |n| {
            let parts: Vec<Matrix> = maps.iter().map(|m| m.component(n).matrix().clone()).collect();
            Matrix::from_columns(ring, target.gens(n), &parts)
        })
        .expect("copairing chain maps is a chain map")
    }
}

/// `L -> M -> N -> ΣL` with `N_n = M_n ⊕ L_{n-1}`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub cone: ChainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

pub fn standard_triangle(f: &ChainMap) -> Triangle {
    let l = f.source();
    let m = f.target();
    let ring = l.ring();
    let shifted = l.support().map(|(a, b)| (a + 1, b + 1));
    let span = union_span(m.support(), shifted);
    let sizes = |n: i64| [m.gens(n), l.gens(n - 1)];
    let cone = match span {
        None => ChainComplex::zero(ring),
        Some((lo, hi)) => ChainComplex::from_fn(
            ring,
            lo,
            hi,
            |n| {
                let a = m.module(n);
                let b = l.module(n - 1);
                direct_sum_over(ring, &[&a, &b]).module
            },
            |n| {
                let blocks = [
                    (0, 0, m.differential(n).matrix().clone()),
                    (0, 1, f.component(n - 1).matrix().clone()),
                    (1, 1, -l.differential(n - 1).matrix()),
                ];
                block_matrix(ring, &sizes(n - 1), &sizes(n), &blocks)
            },
        )
        .expect("mapping cone squares to zero"),
    };
    let inclusion = ChainMap::from_fn(m, &cone, |n| {
        block_matrix(ring, &sizes(n), &[m.gens(n)], &[(0, 0, identity(ring, m.gens(n)))])
    })
    .expect("inclusion into the cone");
    let sl = l.suspend();
    let projection = ChainMap::from_fn(&cone, &sl, |n| {
        block_matrix(ring, &[l.gens(n - 1)], &sizes(n), &[(0, 1, identity(ring, l.gens(n - 1)))])
    })
    .expect("projection from the cone");
    Triangle {
        cone,
        inclusion,
        projection,
    }
}

/// Good path object `N -> N^I -> N × N` with `(N^I)_n = N_n ⊕ N_{n+1} ⊕ N_n`.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub complex: ChainComplex,
    pub product: ComplexSum,
    /// `n ↦ (n, 0, n)`.
    pub alpha: ChainMap,
    /// `(n, n̄, n') ↦ (n, n')`.
    pub beta: ChainMap,
    /// Homotopy inverse of `alpha`: `(n, n̄, n') ↦ n`.
    pub alpha_inverse: ChainMap,
    /// Witness that `alpha ∘ alpha_inverse ≃ id`.
    pub homotopy: ChainHomotopy,
    /// Degreewise sections of `beta`: `(a, b) ↦ (a, 0, b)`.
    pub beta_sections: BTreeMap<i64, ModMorphism>,
}

pub fn path_object(nc: &ChainComplex) -> PathObject {
    let ring = nc.ring();
    let sizes = |n: i64| [nc.gens(n), nc.gens(n + 1), nc.gens(n)];
    let complex = match nc.support() {
        None => ChainComplex::zero(ring),
        Some((lo, hi)) => ChainComplex::from_fn(
            ring,
            lo - 1,
            hi,
            |n| {
                let (a, b) = (nc.module(n), nc.module(n + 1));
                direct_sum_over(ring, &[&a, &b, &a]).module
            },
            |n| {
                let d = nc.differential(n).matrix().clone();
                let blocks = [
                    (0, 0, d.clone()),
                    (1, 0, identity(ring, nc.gens(n))),
                    (1, 1, -nc.differential(n + 1).matrix()),
                    (1, 2, -&identity(ring, nc.gens(n))),
                    (2, 2, d),
                ];
                block_matrix(ring, &sizes(n - 1), &sizes(n), &blocks)
            },
        )
        .expect("path object squares to zero"),
    };
    let product = direct_sum_complexes(ring, &[nc, nc]);
    let alpha = ChainMap::from_fn(nc, &complex, |n| {
        let g = nc.gens(n);
        block_matrix(ring, &sizes(n), &[g], &[(0, 0, identity(ring, g)), (2, 0, identity(ring, g))])
    })
    .expect("alpha is a chain map");
    let beta = ChainMap::from_fn(&complex, &product.complex, |n| {
        let g = nc.gens(n);
        let blocks = [(0, 0, identity(ring, g)), (1, 2, identity(ring, g))];
        block_matrix(ring, &[g, g], &sizes(n), &blocks)
    })
    .expect("beta is a chain map");
    let alpha_inverse = ChainMap::from_fn(&complex, nc, |n| {
        let g = nc.gens(n);
        block_matrix(ring, &[g], &sizes(n), &[(0, 0, identity(ring, g))])
    })
    .expect("projection to the first factor is a chain map");
    let homotopy = find_chain_homotopy(&alpha.compose(&alpha_inverse), &ChainMap::identity(&complex))
        .expect("alpha is a homotopy equivalence");
    let mut beta_sections = BTreeMap::new();
    if let Some((lo, hi)) = complex.support() {
        for n in lo..=hi {
            let g = nc.gens(n);
            let m = block_matrix(ring, &sizes(n), &[g, g], &[(0, 0, identity(ring, g)), (2, 1, identity(ring, g))]);
            let s = ModMorphism::new(&product.complex.module(n), &complex.module(n), m).expect("section");
            beta_sections.insert(n, s);
        }
    }
    PathObject {
        complex,
        product,
        alpha,
        beta,
        alpha_inverse,
        homotopy,
        beta_sections,
    }
}

impl PathObject {
    /// The right homotopy `m ↦ (f m, h m, g m)` built from a chain homotopy.
    pub fn right_homotopy(&self, h: &ChainHomotopy) -> ChainMap {
        let m = h.f().source();
        ChainMap::from_fn(m, &self.complex, |n| {
            let parts = [
                h.f().component(n).matrix().clone(),
                h.component(n).matrix().clone(),
                h.g().component(n).matrix().clone(),
            ];
            let refs: Vec<&Matrix> = parts.iter().collect();
            Matrix::vstack(&refs)
        })
        .expect("a chain homotopy gives a right homotopy")
    }

    /// The middle component of a right homotopy `K : M -> N^I`.
    pub fn chain_homotopy_of(&self, k: &ChainMap, f: &ChainMap, g: &ChainMap) -> Option<ChainHomotopy> {
        let nc = f.target();
        let m = f.source();
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = union_span(m.support(), nc.support().map(|(a, b)| (a - 1, b))) {
            for n in lo..=hi {
                let kn = k.component(n);
                let a = nc.gens(n);
                let b = nc.gens(n + 1);
                let mid = kn.matrix().block(a, a + b, 0, m.gens(n));
                comps.insert(n, ModMorphism::new(&m.module(n), &nc.module(n + 1), mid).ok()?);
            }
        }
        ChainHomotopy::new(f, g, comps).ok()
    }
}

/// Good cylinder `M ⊕ M -> M × I -> M` with `(M×I)_n = M_n ⊕ M_{n-1} ⊕ M_n`
/// and `d(m, m̄, m') = (dm + m̄, -dm̄, dm' - m̄)`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub complex: ChainComplex,
    pub coproduct: ComplexSum,
    /// End inclusions `(a, b) ↦ (a, 0, b)`.
    pub inclusion: ChainMap,
    /// Fold `(m, m̄, m') ↦ m + m'`.
    pub fold: ChainMap,
    /// `m ↦ (m, 0, 0)`, a homotopy inverse of the fold.
    pub end: ChainMap,
    /// Witness that `end ∘ fold ≃ id`.
    pub homotopy: ChainHomotopy,
}

pub fn cylinder_object(mc: &ChainComplex) -> Cylinder {
    let ring = mc.ring();
    let sizes = |n: i64| [mc.gens(n), mc.gens(n - 1), mc.gens(n)];
    let complex = match mc.support() {
        None => ChainComplex::zero(ring),
        Some((lo, hi)) => ChainComplex::from_fn(
            ring,
            lo,
            hi + 1,
            |n| {
                let (a, b) = (mc.module(n), mc.module(n - 1));
                direct_sum_over(ring, &[&a, &b, &a]).module
            },
            |n| {
                let d = mc.differential(n).matrix().clone();
                let g1 = mc.gens(n - 1);
                let blocks = [
                    (0, 0, d.clone()),
                    (0, 1, identity(ring, g1)),
                    (1, 1, -mc.differential(n - 1).matrix()),
                    (2, 1, -&identity(ring, g1)),
                    (2, 2, d),
                ];
                block_matrix(ring, &sizes(n - 1), &sizes(n), &blocks)
            },
        )
        .expect("cylinder squares to zero"),
    };
    let coproduct = direct_sum_complexes(ring, &[mc, mc]);
    let inclusion = ChainMap::from_fn(&coproduct.complex, &complex, |n| {
        let g = mc.gens(n);
        block_matrix(ring, &sizes(n), &[g, g], &[(0, 0, identity(ring, g)), (2, 1, identity(ring, g))])
    })
    .expect("end inclusions form a chain map");
    let fold = ChainMap::from_fn(&complex, mc, |n| {
        let g = mc.gens(n);
        block_matrix(ring, &[g], &sizes(n), &[(0, 0, identity(ring, g)), (0, 2, identity(ring, g))])
    })
    .expect("fold is a chain map");
    let end = ChainMap::from_fn(mc, &complex, |n| {
        let g = mc.gens(n);
        block_matrix(ring, &sizes(n), &[g], &[(0, 0, identity(ring, g))])
    })
    .expect("end inclusion is a chain map");
    let homotopy = find_chain_homotopy(&end.compose(&fold), &ChainMap::identity(&complex))
        .expect("fold is a homotopy equivalence");
    Cylinder {
        complex,
        coproduct,
        inclusion,
        fold,
        end,
        homotopy,
    }
}

impl Cylinder {
    /// The left homotopy `(m, m̄, m') ↦ f m + h m̄ + g m'` built from `f - g = dh + hd`.
    pub fn left_homotopy(&self, h: &ChainHomotopy) -> ChainMap {
        let nc = h.f().target();
        let ring = nc.ring();
        ChainMap::from_fn(&self.complex, nc, |n| {
            let parts = [
                h.f().component(n).matrix().clone(),
                h.component(n - 1).matrix().clone(),
                h.g().component(n).matrix().clone(),
            ];
            Matrix::from_columns(ring, nc.gens(n), &parts)
        })
        .expect("a chain homotopy gives a left homotopy")
    }

    /// Reads the chain homotopy off the middle component of a left homotopy.
    pub fn chain_homotopy_of(&self, big_h: &ChainMap, f: &ChainMap, g: &ChainMap) -> Option<ChainHomotopy> {
        let m = f.source();
        let nc = f.target();
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = self.complex.support() {
            for n in lo..=hi {
                let c = big_h.component(n);
                let a = m.gens(n);
                let b = m.gens(n - 1);
                let mid = c.matrix().block(0, nc.gens(n), a, a + b);
                comps.insert(n - 1, ModMorphism::new(&m.module(n - 1), &nc.module(n), mid).ok()?);
            }
        }
        ChainHomotopy::new(f, g, comps).ok()
    }
}

/// Degreewise cokernel of `f`, with the quotient map from the target.
pub fn cofibre(f: &ChainMap) -> (ChainComplex, ChainMap) {
    let y = f.target();
    let ring = y.ring();
    let Some((lo, hi)) = y.support() else {
        let z = ChainComplex::zero(ring);
        return (z.clone(), ChainMap::zero(y, &z));
    };
    // generators killed outright by a unit relation are dropped
    let kept: Vec<Vec<usize>> = (lo..=hi)
        .map(|n| {
            let rel = cokernel(&f.component(n)).0.relations().clone();
            (0..rel.rows()).filter(|&i| !killed(&rel, i)).collect()
        })
        .collect();
    let at = |n: i64| &kept[(n - lo) as usize];
    let modules: Vec<FpModule> = (lo..=hi)
        .map(|n| {
            let rel = cokernel(&f.component(n)).0.relations().select_rows(at(n));
            let cols: Vec<usize> = (0..rel.cols()).filter(|&j| !rel.column(j).is_zero()).collect();
            FpModule::from_relations(rel.select_columns(&cols))
        })
        .collect();
    let diffs: Vec<Matrix> = ((lo + 1)..=hi)
        .map(|n| y.differential(n).matrix().select_rows(at(n - 1)).select_columns(at(n)))
        .collect();
    let c = ChainComplex::new(ring, lo, modules, diffs).expect("cokernel of a chain map is a complex");
    let q = ChainMap::from_fn(y, &c, |n| {
        if n < lo || n > hi {
            return Matrix::zeros(ring, c.gens(n), y.gens(n));
        }
        identity(ring, y.gens(n)).select_rows(at(n))
    })
    .expect("quotient is a chain map");
    (c, q)
}

/// Degreewise kernel of `f`, with its inclusion into the source.
pub fn fibre(f: &ChainMap) -> (ChainComplex, ChainMap) {
    let x = f.source();
    let ring = x.ring();
    let Some((lo, hi)) = x.support() else {
        let z = ChainComplex::zero(ring);
        return (z.clone(), ChainMap::zero(&z, x));
    };
    let kernels: Vec<(FpModule, ModMorphism)> = (lo..=hi).map(|n| kernel(&f.component(n))).collect();
    let at = |n: i64| &kernels[(n - lo) as usize];
    let diffs: Vec<Matrix> = ((lo + 1)..=hi)
        .map(|n| {
            let (src, incl) = at(n);
            let (tgt, incl_below) = at(n - 1);
            let target = x.module(n - 1);
            let mut sys = MorphismSystem::new(ring);
            let u = sys.add_unknown(src, tgt);
            let rhs = x.differential(n).matrix() * incl.matrix();
            sys.add_equation(src, &target, &[Term::new(u).then(incl_below.matrix())], Some(&rhs));
            sys.solve().expect("d maps kernels into kernels").get(u).matrix().clone()
        })
        .collect();
    let modules = kernels.iter().map(|(k, _)| k.clone()).collect();
    let k = ChainComplex::new(ring, lo, modules, diffs).expect("kernel of a chain map is a complex");
    let incl = ChainMap::from_fn(&k, x, |n| {
        if n < lo || n > hi {
            return Matrix::zeros(ring, x.gens(n), k.gens(n));
        }
        at(n).1.matrix().clone()
    })
    .expect("inclusion is a chain map");
    (k, incl)
}

/// Whether some relation column is a unit multiple of the `i`-th basis vector.
fn killed(rel: &Matrix, i: usize) -> bool {
    let ring = rel.ring();
    (0..rel.cols()).any(|j| {
        ring.is_unit(rel.get(i, j)) && (0..rel.rows()).all(|k| k == i || num_traits::Zero::is_zero(rel.get(k, j)))
    })
}
