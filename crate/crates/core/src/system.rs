//! Linear systems whose unknowns are module maps.
//!
//! Every lifting, splitting and homotopy question in the crate reduces to
//! finding maps `U_k : S_k -> T_k` subject to equations of the form
//! `Σ L_t U_t R_t ≡ C` modulo the relations of the equation's target. The
//! system linearizes all of this, including well-definedness of each unknown,
//! into one matrix over the base ring.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::fpmod::{FpModule, ModMorphism};
use crate::linalg::{kernel_basis, solve, Matrix, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnknownId(usize);

#[derive(Clone, Debug)]
struct Unknown {
    source: FpModule,
    target: FpModule,
    offset: usize,
}

impl Unknown {
    fn len(&self) -> usize {
        self.source.gens() * self.target.gens()
    }

    /// Column of entry `(i, j)` in column-major order.
    fn column(&self, i: usize, j: usize) -> usize {
        self.offset + j * self.target.gens() + i
    }
}

/// One summand `pre * U * post` of an equation; a missing factor is the identity.
#[derive(Clone, Debug)]
pub struct Term<'a> {
    unknown: UnknownId,
    pre: Option<&'a Matrix>,
    post: Option<&'a Matrix>,
    negate: bool,
}

impl<'a> Term<'a> {
    pub fn new(unknown: UnknownId) -> Term<'a> {
        Term {
            unknown,
            pre: None,
            post: None,
            negate: false,
        }
    }

    /// Postcompose the unknown with `m` (a generator matrix).
    pub fn then(mut self, m: &'a Matrix) -> Term<'a> {
        self.pre = Some(m);
        self
    }

    /// Precompose the unknown with `m`.
    pub fn after(mut self, m: &'a Matrix) -> Term<'a> {
        self.post = Some(m);
        self
    }

    pub fn negated(mut self) -> Term<'a> {
        self.negate = !self.negate;
        self
    }
}

#[derive(Clone, Debug)]
pub struct MorphismSystem {
    ring: Ring,
    unknowns: Vec<Unknown>,
    columns: usize,
    rows: Vec<BTreeMap<usize, BigInt>>,
    rhs: Vec<BigInt>,
}

/// Values for every unknown of a system.
#[derive(Clone, Debug)]
pub struct Assignment {
    maps: Vec<ModMorphism>,
}

impl Assignment {
    pub fn get(&self, id: UnknownId) -> &ModMorphism {
        &self.maps[id.0]
    }

    pub fn into_maps(self) -> Vec<ModMorphism> {
        self.maps
    }
}

impl MorphismSystem {
    pub fn new(ring: &Ring) -> MorphismSystem {
        MorphismSystem {
            ring: ring.clone(),
            unknowns: Vec::new(),
            columns: 0,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn unknown_count(&self) -> usize {
        self.unknowns.len()
    }

    /// Total number of entries over all unknowns; the length of the vectors
    /// returned by [`MorphismSystem::solution_vectors`].
    pub fn unknown_entries(&self) -> usize {
        self.unknowns.iter().map(Unknown::len).sum()
    }

    fn fresh_columns(&mut self, n: usize) -> usize {
        let start = self.columns;
        self.columns += n;
        start
    }

    /// Adds an unknown map `source -> target` together with its
    /// well-definedness constraint `U * R_source = R_target * W`.
    pub fn add_unknown(&mut self, source: &FpModule, target: &FpModule) -> UnknownId {
        assert_eq!(source.ring(), &self.ring);
        assert_eq!(target.ring(), &self.ring);
        let offset = self.fresh_columns(source.gens() * target.gens());
        let id = UnknownId(self.unknowns.len());
        self.unknowns.push(Unknown {
            source: source.clone(),
            target: target.clone(),
            offset,
        });
        if source.relations().cols() > 0 {
            let u = self.unknowns[id.0].clone();
            let rs = source.relations().clone();
            let terms = [Term::new(id).after(&rs)];
            // U * R_source ≡ 0 modulo target relations, as a map R^{rs} -> target
            let free = FpModule::free(&self.ring, rs.cols());
            self.add_equation(&free, &u.target, &terms, None);
        }
        id
    }

    /// Adds `Σ terms ≡ rhs` as maps `source -> target`, i.e. equality modulo the
    /// relations of `target`. A missing `rhs` means zero.
    pub fn add_equation(
        &mut self,
        source: &FpModule,
        target: &FpModule,
        terms: &[Term<'_>],
        rhs: Option<&Matrix>,
    ) {
        let (tg, sg) = (target.gens(), source.gens());
        let base = self.rows.len();
        self.rows.extend(std::iter::repeat_with(BTreeMap::new).take(tg * sg));
        self.rhs.extend(std::iter::repeat(BigInt::zero()).take(tg * sg));
        let row = |a: usize, b: usize| base + b * tg + a;

        for term in terms {
            let u = self.unknowns[term.unknown.0].clone();
            let (ut, us) = (u.target.gens(), u.source.gens());
            if let Some(pre) = term.pre {
                assert_eq!(pre.shape(), (tg, ut), "pre factor has wrong shape");
            } else {
                assert_eq!(ut, tg, "unknown target does not match equation target");
            }
            if let Some(post) = term.post {
                assert_eq!(post.shape(), (us, sg), "post factor has wrong shape");
            } else {
                assert_eq!(us, sg, "unknown source does not match equation source");
            }
            let sign = if term.negate { BigInt::from(-1) } else { BigInt::from(1) };
            for a in 0..tg {
                let lefts: Vec<(usize, BigInt)> = match term.pre {
                    Some(pre) => (0..ut)
                        .filter(|&i| !pre.get(a, i).is_zero())
                        .map(|i| (i, pre.get(a, i).clone()))
                        .collect(),
                    None => vec![(a, BigInt::from(1))],
                };
                for b in 0..sg {
                    let rights: Vec<(usize, BigInt)> = match term.post {
                        Some(post) => (0..us)
                            .filter(|&j| !post.get(j, b).is_zero())
                            .map(|j| (j, post.get(j, b).clone()))
                            .collect(),
                        None => vec![(b, BigInt::from(1))],
                    };
                    let r = row(a, b);
                    for (i, li) in &lefts {
                        for (j, rj) in &rights {
                            let col = u.column(*i, *j);
                            let e = self.rows[r].entry(col).or_insert_with(BigInt::zero);
                            *e += &sign * li * rj;
                        }
                    }
                }
            }
        }

        // slack: - R_target * Z with Z of shape (target relations) x (source gens)
        let rt = target.relations();
        let slack = self.fresh_columns(rt.cols() * sg);
        for a in 0..tg {
            for k in 0..rt.cols() {
                let c = rt.get(a, k);
                if c.is_zero() {
                    continue;
                }
                for b in 0..sg {
                    let col = slack + b * rt.cols() + k;
                    *self.rows[row(a, b)].entry(col).or_insert_with(BigInt::zero) -= c;
                }
            }
        }

        if let Some(rhs) = rhs {
            assert_eq!(rhs.shape(), (tg, sg), "right-hand side has wrong shape");
            for a in 0..tg {
                for b in 0..sg {
                    self.rhs[row(a, b)] = rhs.get(a, b).clone();
                }
            }
        }
    }

    fn dense(&self) -> (Matrix, Matrix) {
        let mut m = Matrix::zeros(&self.ring, self.rows.len(), self.columns);
        for (r, entries) in self.rows.iter().enumerate() {
            for (c, v) in entries {
                m.set(r, *c, v.clone());
            }
        }
        let b = Matrix::column_vector(&self.ring, self.rhs.clone());
        (m, b)
    }

    fn assignment_from(&self, x: &Matrix, col: usize) -> Assignment {
        let maps = self
            .unknowns
            .iter()
            .map(|u| {
                let m = Matrix::unvectorize(x, col, u.offset, u.target.gens(), u.source.gens());
                ModMorphism::new(&u.source, &u.target, m).expect("constraint enforces well-definedness")
            })
            .collect();
        Assignment { maps }
    }

    /// Some solution, or `None` when the system is inconsistent.
    pub fn solve(&self) -> Option<Assignment> {
        if self.unknowns.is_empty() {
            return self.rhs.iter().all(Zero::is_zero).then(|| Assignment { maps: vec![] });
        }
        let (m, b) = self.dense();
        let x = solve(&m, &b)?;
        Some(self.assignment_from(&x, 0))
    }

    /// Generators of the solution group of the homogeneous system, as columns
    /// of concatenated column-major unknown entries.
    pub fn solution_vectors(&self) -> Matrix {
        assert!(self.rhs.iter().all(Zero::is_zero), "system is not homogeneous");
        let n = self.unknown_entries();
        if self.columns == 0 {
            return Matrix::zeros(&self.ring, n, 0);
        }
        let (m, _) = self.dense();
        let k = kernel_basis(&m);
        let rows: Vec<usize> = self
            .unknowns
            .iter()
            .flat_map(|u| u.offset..u.offset + u.len())
            .collect();
        let mut v = k.select_rows(&rows);
        // drop zero columns and sort lexicographically for deterministic output
        let mut cols: Vec<Matrix> = (0..v.cols())
            .map(|j| v.column(j))
            .filter(|c| !c.is_zero())
            .collect();
        cols.sort_by(|a, b| a.entries().cmp(b.entries()));
        cols.dedup();
        v = if cols.is_empty() {
            Matrix::zeros(&self.ring, n, 0)
        } else {
            let refs: Vec<&Matrix> = cols.iter().collect();
            Matrix::hstack(&refs)
        };
        v
    }

    /// Generators of the homogeneous solution group as assignments.
    pub fn solution_space(&self) -> Vec<Assignment> {
        let v = self.solution_vectors();
        let mut offsets = Vec::new();
        let mut at = 0;
        for u in &self.unknowns {
            offsets.push(at);
            at += u.len();
        }
        (0..v.cols())
            .map(|c| {
                let maps = self
                    .unknowns
                    .iter()
                    .zip(&offsets)
                    .map(|(u, &off)| {
                        let m = Matrix::unvectorize(&v, c, off, u.target.gens(), u.source.gens());
                        ModMorphism::new(&u.source, &u.target, m).expect("well-defined by construction")
                    })
                    .collect();
                Assignment { maps }
            })
            .collect()
    }

    /// Concatenated vector of the given maps, laid out like
    /// [`MorphismSystem::solution_vectors`].
    pub fn vector_of(&self, maps: &[&ModMorphism]) -> Matrix {
        assert_eq!(maps.len(), self.unknowns.len());
        let parts: Vec<Matrix> = maps.iter().map(|m| m.matrix().vectorize()).collect();
        if parts.is_empty() {
            return Matrix::zeros(&self.ring, 0, 1);
        }
        let refs: Vec<&Matrix> = parts.iter().collect();
        Matrix::vstack(&refs)
    }

    /// Vectors of all maps that are zero modulo target relations, one per
    /// (relation column, source generator) pair of each unknown.
    pub fn zero_map_vectors(&self) -> Matrix {
        let n = self.unknown_entries();
        let mut cols = Vec::new();
        let mut at = 0;
        for u in &self.unknowns {
            let rt = u.target.relations();
            let tg = u.target.gens();
            for k in 0..rt.cols() {
                for j in 0..u.source.gens() {
                    let mut v = Matrix::zeros(&self.ring, n, 1);
                    for i in 0..tg {
                        v.set(at + j * tg + i, 0, rt.get(i, k).clone());
                    }
                    cols.push(v);
                }
            }
            at += u.len();
        }
        if cols.is_empty() {
            return Matrix::zeros(&self.ring, n, 0);
        }
        let refs: Vec<&Matrix> = cols.iter().collect();
        Matrix::hstack(&refs)
    }
}
