use nova_core::algebra::{lr_matrices, star};
use nova_core::solver::fast_novikov;
use nova_core::tensor::tensor3_combine;
use nova_core::{Algebra, Contraction, Field, Matrix, Tensor2, Vector};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(5)),
        Just(Field::Prime(7)),
        Just(Field::Rational),
    ]
}

fn ints(len: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-4i64..=4, len)
}

fn algebra(f: Field, n: usize, xs: &[i64]) -> Algebra {
    Algebra::from_fn(f, n, |i, j| Vector::from_ints(f, &xs[(i * n + j) * n..(i * n + j + 1) * n]))
}

fn tensor(f: Field, n: usize, xs: &[i64]) -> Tensor2 {
    let rows: Vec<&[i64]> = xs.chunks(n).collect();
    Tensor2::from_ints(f, &rows)
}

fn matrix(f: Field, rows: usize, cols: usize, xs: &[i64]) -> Matrix {
    Matrix::from_rows_sized(f, rows, cols, xs.chunks(cols).map(|r| r.iter().map(|&x| f.int(x)).collect()).collect())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_vectors_are_annihilated(f in field(), rows in 1usize..5, cols in 1usize..6, xs in ints(30)) {
        let m = matrix(f, rows, cols, &xs[..rows * cols]);
        let basis = m.kernel_basis();
        prop_assert_eq!(basis.len() + m.rank(), cols);
        for v in basis {
            prop_assert!(m.apply(&v).is_zero());
        }
    }

    #[test]
    fn flip_is_an_involution(f in field(), n in 1usize..4, xs in ints(9)) {
        let r = tensor(f, n, &xs[..n * n]);
        prop_assert_eq!(r.flip().flip(), r.clone());
        let t = r.flip();
        prop_assert_eq!(t.get(0, n - 1), r.get(n - 1, 0));
    }

    #[test]
    fn combine_is_additive_in_each_slot(f in field(), xs in ints(8), r1 in ints(4), r2 in ints(4), s in ints(4)) {
        let a = algebra(f, 2, &xs);
        let (r1, r2, s) = (tensor(f, 2, &r1), tensor(f, 2, &r2), tensor(f, 2, &s));
        for kind in Contraction::ALL {
            let whole = tensor3_combine(&a, &(&r1 + &r2), &s, kind).unwrap();
            let parts = &tensor3_combine(&a, &r1, &s, kind).unwrap() + &tensor3_combine(&a, &r2, &s, kind).unwrap();
            prop_assert_eq!(whole, parts, "{}", kind);
            let whole = tensor3_combine(&a, &s, &(&r1 + &r2), kind).unwrap();
            let parts = &tensor3_combine(&a, &s, &r1, kind).unwrap() + &tensor3_combine(&a, &s, &r2, kind).unwrap();
            prop_assert_eq!(whole, parts, "{}", kind);
        }
    }

    #[test]
    fn multiplication_operators_are_linear(f in field(), xs in ints(27), u in ints(3), v in ints(3)) {
        let alg = algebra(f, 3, &xs);
        let (u, v) = (Vector::from_ints(f, &u), Vector::from_ints(f, &v));
        let (lu, lv, lw) = (lr_matrices(&alg, &u), lr_matrices(&alg, &v), lr_matrices(&alg, &(&u + &v)));
        prop_assert_eq!(lw.left, lu.left.add(&lv.left));
        prop_assert_eq!(lw.right, lu.right.add(&lv.right));
        prop_assert_eq!(lw.star_left, lu.star_left.add(&lv.star_left));
    }

    #[test]
    fn star_table_is_symmetric(f in field(), n in 1usize..4, xs in ints(27)) {
        let s = star(&algebra(f, n, &xs[..n * n * n]));
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(s.basis_product(i, j), s.basis_product(j, i));
            }
        }
    }

    #[test]
    fn fast_novikov_agrees_with_the_exact_residual(p in prop_oneof![Just(2u32), Just(3), Just(5)], digits in proptest::collection::vec(0u32..5, 8)) {
        let f = Field::Prime(p);
        let c: Vec<u32> = digits.iter().map(|d| d % p).collect();
        let xs: Vec<i64> = c.iter().map(|&d| d as i64).collect();
        prop_assert_eq!(fast_novikov(&c, 2, p as u64), algebra(f, 2, &xs).is_novikov());
    }
}

#[test]
fn truncated_polynomial_family_is_novikov() {
    for f in [Field::Rational, Field::Prime(5), Field::Prime(7)] {
        for n in 1..=4 {
            assert!(nova_core::solver::trunc_poly(f, n).is_novikov(), "{f} n={n}");
        }
    }
}
