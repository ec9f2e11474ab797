use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Matrix, Ring};
use crate::shape::AbGroupShape;

/// `U * A * V = D` with `U`, `V` invertible and `D` diagonal with a divisor chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    /// `U^{-1}`, tracked alongside `U` so change-of-basis maps need no extra solve.
    pub u_inv: Matrix,
    /// Diagonal of `D` (length `min(rows, cols)`), canonical generators of each ideal.
    pub divisors: Vec<BigInt>,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }
}

#[derive(Clone, Copy)]
struct Track {
    u: bool,
    v: bool,
}

struct Reducer {
    ring: Ring,
    a: Matrix,
    u: Option<Matrix>,
    u_inv: Option<Matrix>,
    v: Option<Matrix>,
}

impl Reducer {
    fn new(a: &Matrix, track: Track) -> Reducer {
        let ring = a.ring().clone();
        Reducer {
            u: track.u.then(|| Matrix::identity(&ring, a.rows())),
            u_inv: track.u.then(|| Matrix::identity(&ring, a.rows())),
            v: track.v.then(|| Matrix::identity(&ring, a.cols())),
            a: a.clone(),
            ring,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    /// `row[dst] += c * row[src]`; the inverse picks up `col[src] -= c * col[dst]`.
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, c);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &-c);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, c);
        }
    }

    fn scale_row(&mut self, i: usize, unit: &BigInt) {
        if unit.is_one() {
            return;
        }
        self.a.scale_row(i, unit);
        if let Some(u) = &mut self.u {
            u.scale_row(i, unit);
        }
        if let Some(ui) = &mut self.u_inv {
            let inv = self.ring.unit_inverse(unit);
            ui.scale_col(i, &inv);
        }
    }

    /// Smallest nonzero ideal generator in the trailing block, ties broken by
    /// lowest row then lowest column.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let s = self.ring.ideal_size(self.a.get(i, j));
                if s.is_zero() {
                    continue;
                }
                if best.as_ref().map_or(true, |(b, _, _)| s < *b) {
                    best = Some((s, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Quotient `q` with `a - q*p` strictly smaller than the normalized pivot `p`.
    fn quotient(&self, a: &BigInt, p: &BigInt) -> BigInt {
        a.div_floor(p)
    }

    fn run(mut self) -> Reducer {
        let (m, n) = self.a.shape();
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let unit = self.ring.normalizing_unit(self.a.get(t, t));
            self.scale_row(t, &unit);
            let p = self.a.get(t, t).clone();

            let mut clean = true;
            for i in (t + 1)..m {
                let a = self.a.get(i, t).clone();
                if a.is_zero() {
                    continue;
                }
                let q = self.quotient(&a, &p);
                self.add_row(i, t, &-q);
                if !self.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..n {
                let a = self.a.get(t, j).clone();
                if a.is_zero() {
                    continue;
                }
                let q = self.quotient(&a, &p);
                self.add_col(j, t, &-q);
                if !self.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the whole trailing block for the divisor chain.
            let offender = ((t + 1)..m).find(|&i| {
                ((t + 1)..n).any(|j| !self.ring.divides(&p, self.a.get(i, j)))
            });
            if let Some(i) = offender {
                self.add_row(t, i, &BigInt::one());
                continue;
            }
            t += 1;
        }
        self
    }
}

fn diagonal_of(a: &Matrix) -> Vec<BigInt> {
    (0..a.rows().min(a.cols())).map(|i| a.get(i, i).clone()).collect()
}

/// Smith normal form with both transforms.
pub fn smith(a: &Matrix) -> SmithForm {
    let r = Reducer::new(a, Track { u: true, v: true }).run();
    let divisors = diagonal_of(&r.a);
    SmithForm {
        u: r.u.unwrap(),
        u_inv: r.u_inv.unwrap(),
        v: r.v.unwrap(),
        d: r.a,
        divisors,
    }
}

/// Diagonal entries only; cheaper than [`smith`] when no transform is needed.
pub fn smith_divisors(a: &Matrix) -> Vec<BigInt> {
    let r = Reducer::new(a, Track { u: false, v: false }).run();
    diagonal_of(&r.a)
}

/// Some `X` with `A * X = B`, or `None` when the system has no solution.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    solve_with(&smith(a), b)
}

/// [`solve`] against a precomputed Smith form of `A`.
pub fn solve_with(s: &SmithForm, b: &Matrix) -> Option<Matrix> {
    let ring = b.ring().clone();
    assert_eq!(s.u.ring(), &ring, "solve: ring mismatch");
    assert_eq!(s.u.cols(), b.rows(), "solve: A and B must have the same number of rows");
    let c = &s.u * b;
    let n = s.v.rows();
    let mut y = Matrix::zeros(&ring, n, b.cols());
    for i in 0..c.rows() {
        let d = s.divisors.get(i).cloned().unwrap_or_else(BigInt::zero);
        for k in 0..b.cols() {
            let ci = c.get(i, k);
            if ci.is_zero() {
                continue;
            }
            if d.is_zero() || !ring.divides(&d, ci) {
                return None;
            }
            y.set(i, k, ci / &d);
        }
    }
    Some(&s.v * &y)
}

/// Columns generating `{x : A x = 0}`.
pub fn kernel_basis(a: &Matrix) -> Matrix {
    let ring = a.ring().clone();
    let r = Reducer::new(a, Track { u: false, v: true }).run();
    let v = r.v.unwrap();
    let divs = diagonal_of(&r.a);
    let mut cols = Vec::new();
    for j in 0..a.cols() {
        let d = divs.get(j).cloned().unwrap_or_else(BigInt::zero);
        let ann = ring.annihilator_generator(&d);
        if ann.is_zero() {
            continue;
        }
        cols.push(v.column(j).scale(&ann));
    }
    if cols.is_empty() {
        return Matrix::zeros(&ring, a.cols(), 0);
    }
    let refs: Vec<&Matrix> = cols.iter().collect();
    Matrix::hstack(&refs)
}

/// Isomorphism type of the cokernel of `A`, i.e. of `R^{rows} / im(A)`.
pub fn cokernel_divisors(a: &Matrix) -> AbGroupShape {
    let mut d = smith_divisors(a);
    d.resize(a.rows(), BigInt::zero());
    AbGroupShape::from_diagonal(a.ring(), &d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::Integers
    }

    #[test]
    fn smith_of_diag_2_3() {
        let a = Matrix::from_rows(&z(), &[[2, 0], [0, 3]]);
        let s = smith(&a);
        assert_eq!(s.d, Matrix::from_rows(&z(), &[[1, 0], [0, 6]]));
        assert_eq!(&(&s.u * &a) * &s.v, s.d);
        assert!((&s.u * &s.u_inv).is_identity());
    }

    #[test]
    fn smith_of_zero_and_identity() {
        let a = Matrix::zeros(&z(), 2, 3);
        let s = smith(&a);
        assert!(s.d.is_zero());
        assert_eq!(s.divisors, vec![BigInt::zero(); 2]);
        let i = Matrix::identity(&z(), 3);
        assert_eq!(smith(&i).d, i);
    }

    #[test]
    fn solve_examples() {
        let a = Matrix::from_rows(&z(), &[[2]]);
        assert_eq!(solve(&a, &Matrix::from_rows(&z(), &[[4]])), Some(Matrix::from_rows(&z(), &[[2]])));
        assert_eq!(solve(&a, &Matrix::from_rows(&z(), &[[3]])), None);
        let r5 = Ring::modulo(5);
        let a = Matrix::from_rows(&r5, &[[2]]);
        // 2*4 = 8 = 3 mod 5, and 4 is the only residue that works
        assert_eq!(solve(&a, &Matrix::from_rows(&r5, &[[3]])), Some(Matrix::from_rows(&r5, &[[4]])));
    }

    #[test]
    fn kernel_examples() {
        let r4 = Ring::modulo(4);
        let k = kernel_basis(&Matrix::from_rows(&r4, &[[2]]));
        assert_eq!(k, Matrix::from_rows(&r4, &[[2]]));
        let k = kernel_basis(&Matrix::identity(&z(), 3));
        assert_eq!(k.cols(), 0);
        let k = kernel_basis(&Matrix::zeros(&z(), 1, 1));
        assert_eq!(k, Matrix::from_rows(&z(), &[[1]]));
    }

    #[test]
    fn cokernel_examples() {
        let s = cokernel_divisors(&Matrix::from_rows(&z(), &[[2, 0], [0, 3]]));
        assert_eq!(s.divisors(), &[BigInt::from(6)]);
        let s = cokernel_divisors(&Matrix::zeros(&z(), 2, 0));
        assert_eq!(s.divisors(), &[BigInt::zero(), BigInt::zero()]);
        assert!(cokernel_divisors(&Matrix::from_rows(&z(), &[[1]])).is_trivial());
    }

    #[test]
    fn residue_ring_divisors_are_divisors_of_n() {
        let r = Ring::modulo(12);
        let a = Matrix::from_rows(&r, &[[8, 3], [4, 9]]);
        let s = smith(&a);
        assert_eq!(&(&s.u * &a) * &s.v, s.d);
        for d in &s.divisors {
            assert!(d.is_zero() || (BigInt::from(12) % d).is_zero());
        }
    }
    /// Cofactor expansion, fine for the small matrices used here.
    fn det(m: &Matrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = m.select_rows(&rows).select_columns(&cols);
            let term = m.get(0, j) * det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        m.ring().reduce_owned(total)
    }

    #[test]
    fn smith_transforms_are_unimodular() {
        let a = Matrix::from_rows(&z(), &[[2, 0], [0, 3]]);
        let s = smith(&a);
        for m in [&s.u, &s.v] {
            let d = det(m);
            assert!(d == BigInt::one() || d == -BigInt::one());
        }
        let r = Ring::modulo(12);
        let s = smith(&Matrix::from_rows(&r, &[[8, 3], [4, 9]]));
        assert!(r.is_unit(&det(&s.u)) && r.is_unit(&det(&s.v)));
    }

    #[test]
    fn solve_over_z5_matches_brute_force() {
        let r5 = Ring::modulo(5);
        let a = Matrix::from_rows(&r5, &[[2]]);
        let hits: Vec<i64> = (0..5).filter(|x| 2 * x % 5 == 3).collect();
        assert_eq!(hits, vec![4]);
        let x = solve(&a, &Matrix::from_rows(&r5, &[[3]])).unwrap();
        assert_eq!(x.get(0, 0), &BigInt::from(hits[0]));
    }

    #[test]
    fn kernel_over_z4_matches_enumeration() {
        let r4 = Ring::modulo(4);
        let k = kernel_basis(&Matrix::from_rows(&r4, &[[2]]));
        let kernel: Vec<i64> = (0..4).filter(|x| 2 * x % 4 == 0).collect();
        let spanned: std::collections::BTreeSet<i64> =
            (0..4).map(|c| (c * k.get(0, 0).to_string().parse::<i64>().unwrap()) % 4).collect();
        assert_eq!(spanned.into_iter().collect::<Vec<_>>(), kernel);
    }

    #[test]
    fn cokernel_of_diag_2_3_matches_enumeration() {
        // Z^2 / (2Z + 3Z) has representatives (a mod 2, b mod 3); coordinate (1,1) has order 6
        let reps: Vec<(i64, i64)> = (0..2).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        let order_of_11 = (1..=reps.len() as i64).find(|k| k % 2 == 0 && k % 3 == 0).unwrap();
        assert_eq!(order_of_11 as usize, reps.len());
        let s = cokernel_divisors(&Matrix::from_rows(&z(), &[[2, 0], [0, 3]]));
        assert_eq!(s.order(), Some(BigInt::from(reps.len())));
        assert_eq!(s.divisors(), &[BigInt::from(6)]);
    }
}
