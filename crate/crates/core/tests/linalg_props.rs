use homalg::linalg::{cokernel_divisors, smith, solve, Matrix, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Integers),
        Just(Ring::modulo(2)),
        Just(Ring::modulo(4)),
        Just(Ring::modulo(5)),
        Just(Ring::modulo(6)),
    ]
}

fn matrix_strategy(ring: Ring, max_dim: usize) -> impl Strategy<Value = Matrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        let ring = ring.clone();
        prop::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| Matrix::from_vec(&ring, r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

fn det(m: &Matrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m.get(0, j) * det(&m.select_rows(&rows).select_columns(&cols));
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    m.ring().reduce_owned(total)
}

fn unimodular(ring: &Ring, n: usize, ops: &[(usize, usize, i64)]) -> Matrix {
    let mut u = Matrix::identity(ring, n);
    if n < 2 {
        return u;
    }
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(ring, n);
        e.set(i, j, BigInt::from(c));
        u = &e * &u;
    }
    u
}

/// All vectors with entries in `range`, of length `len`.
fn box_vectors(range: std::ops::RangeInclusive<i64>, len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                range.clone().map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_normal_form_is_correct(a in ring_strategy().prop_flat_map(|r| matrix_strategy(r, 3))) {
        let s = smith(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        prop_assert!(a.ring().is_unit(&det(&s.u)));
        prop_assert!(a.ring().is_unit(&det(&s.v)));
        prop_assert!((&s.u * &s.u_inv).is_identity());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in s.divisors.windows(2) {
            prop_assert!(a.ring().divides(&w[0], &w[1]));
        }
        if a.ring().is_integers() {
            prop_assert!(s.divisors.iter().all(|d| *d >= BigInt::zero()));
        }
    }

    #[test]
    fn solve_agrees_with_exhaustive_search_mod_n(
        n in prop_oneof![Just(2u64), Just(4), Just(5), Just(6)],
        rows in 1usize..=3,
        cols in 1usize..=3,
        entries in prop::collection::vec(-3i64..=3, 9),
        rhs in prop::collection::vec(-3i64..=3, 3),
    ) {
        let ring = Ring::modulo(n);
        let a = Matrix::from_vec(&ring, rows, cols, entries[..rows * cols].iter().map(|&x| BigInt::from(x)).collect());
        let b = Matrix::from_vec(&ring, rows, 1, rhs[..rows].iter().map(|&x| BigInt::from(x)).collect());
        let found = box_vectors(0..=(n as i64 - 1), cols).into_iter().any(|x| {
            let xm = Matrix::from_vec(&ring, cols, 1, x.into_iter().map(BigInt::from).collect());
            &a * &xm == b
        });
        let solved = solve(&a, &b);
        prop_assert_eq!(found, solved.is_some());
        if let Some(x) = &solved {
            prop_assert_eq!(&a * x, b.clone());
        }
    }

    #[test]
    fn solve_agrees_with_box_search_over_z(
        rows in 1usize..=3,
        cols in 1usize..=3,
        entries in prop::collection::vec(-3i64..=3, 9),
        x0 in prop::collection::vec(-2i64..=2, 3),
        rhs in prop::collection::vec(-3i64..=3, 3),
        planted in any::<bool>(),
    ) {
        let ring = Ring::Integers;
        let a = Matrix::from_vec(&ring, rows, cols, entries[..rows * cols].iter().map(|&x| BigInt::from(x)).collect());
        let b = if planted {
            &a * &Matrix::from_vec(&ring, cols, 1, x0[..cols].iter().map(|&x| BigInt::from(x)).collect())
        } else {
            Matrix::from_vec(&ring, rows, 1, rhs[..rows].iter().map(|&x| BigInt::from(x)).collect())
        };
        let found = box_vectors(-4..=4, cols).into_iter().any(|x| {
            let xm = Matrix::from_vec(&ring, cols, 1, x.into_iter().map(BigInt::from).collect());
            &a * &xm == b
        });
        let solved = solve(&a, &b);
        if found {
            prop_assert!(solved.is_some());
        }
        if let Some(x) = &solved {
            prop_assert_eq!(&a * x, b.clone());
        }
        if a.cols() == a.rows() && det(&a).abs().is_one() {
            prop_assert!(solved.is_some());
        }
    }

    #[test]
    fn cokernel_divisors_are_invariant(
        a in ring_strategy().prop_flat_map(|r| matrix_strategy(r, 3)),
        ops_u in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..5),
        ops_v in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..5),
    ) {
        let u = unimodular(a.ring(), a.rows(), &ops_u);
        let v = unimodular(a.ring(), a.cols(), &ops_v);
        let b = &(&u * &a) * &v;
        prop_assert_eq!(cokernel_divisors(&a), cokernel_divisors(&b));
    }

    #[test]
    fn cokernel_order_is_determinant(entries in prop::collection::vec(-3i64..=3, 4)) {
        let ring = Ring::Integers;
        let a = Matrix::from_vec(&ring, 2, 2, entries.into_iter().map(BigInt::from).collect());
        let d = det(&a).abs();
        let shape = cokernel_divisors(&a);
        if d.is_zero() {
            prop_assert!(shape.free_rank() > 0);
        } else {
            prop_assert_eq!(shape.order(), Some(d.clone()));
            prop_assert!(shape.divisors().iter().all(|x| d.is_multiple_of(x)));
        }
    }
}
