mod common;

use common::*;
use hochlie::generators::{nakayama, parse_edge_list, rad_square_zero, trunc_poly, witt_lie};
use hochlie::hh1::{hh1, hh1_generic};
use hochlie::lie::LieSC;
use hochlie::linalg::{quotient_basis, vector, Field, FieldElem, Matrix, Subspace};
use hochlie::quiver::parse_presentation;
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Prime(7)),
        Just(Field::Prime(2))
    ]
}

fn matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| {
        Matrix::new(
            field,
            rows,
            cols,
            v.into_iter().map(|x| field.from_i64(x)).collect(),
        )
        .unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| matrix(f, r, c))
}

fn square_matrix() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1usize..6).prop_flat_map(|(f, n)| matrix(f, n, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in any_matrix()) {
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn rank_plus_nullity(m in any_matrix()) {
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.dim(), m.cols());
        for v in kernel.basis() {
            prop_assert!(vector::is_zero(&m.mul_vec(v)));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn cayley_hamilton(m in square_matrix()) {
        let coeffs = m.char_poly().unwrap();
        prop_assert_eq!(coeffs.len(), m.rows() + 1);
        prop_assert!(coeffs.last().unwrap().is_one());
        let field = m.field();
        let n = m.rows();
        let mut acc = Matrix::zeros(field, n, n);
        let mut power = Matrix::identity(field, n);
        for c in &coeffs {
            acc = &acc - &power.scale(&-c);
            power = &power * &m;
        }
        prop_assert!(acc.is_zero());
        // constant term is (-1)^n det
        let det = m.determinant().unwrap();
        let sign = if n % 2 == 0 { field.one() } else { -field.one() };
        prop_assert_eq!(&coeffs[0], &(&sign * &det));
    }

    #[test]
    fn determinant_is_multiplicative(
        (a, b) in (field_strategy(), 1usize..5).prop_flat_map(|(f, n)| (matrix(f, n, n), matrix(f, n, n)))
    ) {
        let lhs = (&a * &b).determinant().unwrap();
        let rhs = &a.determinant().unwrap() * &b.determinant().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_identities(
        (field, amb, sub) in (field_strategy(), 1usize..6).prop_flat_map(|(f, n)| {
            (Just(f), proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), 1..5),
             proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 0..4))
        })
    ) {
        let n = amb[0].len();
        let to_vec = |v: &[i64]| v.iter().map(|&x| field.from_i64(x)).collect::<Vec<FieldElem>>();
        let ambient = Subspace::span(field, n, amb.iter().map(|v| to_vec(v)));
        // sub vectors are combinations of the ambient generators
        let sub = Subspace::span(field, n, sub.iter().map(|c| {
            let mut w = vector::zeros(field, n);
            for (k, g) in amb.iter().enumerate() {
                vector::axpy(&mut w, &field.from_i64(c[k % c.len()]), &to_vec(g));
            }
            w
        }));
        let q = quotient_basis(&ambient, &sub).unwrap();
        prop_assert_eq!(q.dim(), ambient.dim() - sub.dim());
        for v in sub.basis() {
            prop_assert!(vector::is_zero(&q.project(v)));
        }
        for i in 0..q.dim() {
            let e = vector::unit(field, q.dim(), i);
            prop_assert_eq!(q.project(&q.lift(&e)), e);
        }
        for v in ambient.basis() {
            let back = vector::sub(v, &q.lift(&q.project(v)));
            prop_assert!(sub.contains(&back));
        }
    }

    #[test]
    fn nakayama_round_trip(e in 1usize..5, l in 2usize..6, prime in prop::bool::ANY) {
        let field = if prime { Field::Prime(5) } else { Field::Rational };
        let text = nakayama(field, e, l).unwrap();
        let p = parse_presentation(&text).unwrap();
        prop_assert_eq!(p.to_text(), text);
        let alg = p.build().unwrap();
        prop_assert_eq!(alg.dim(), e * l);
        prop_assert_eq!(alg.loewy_length(), l);
    }

    #[test]
    fn lie_constructor_agrees_with_identities(entries in proptest::collection::vec(-1i64..=1, 27)) {
        let field = Field::Prime(3);
        let n = 3;
        let gamma: Vec<Vec<Vec<FieldElem>>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| field.from_i64(entries[(i * n + j) * n + k])).collect()).collect())
            .collect();
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| vector::is_zero(&vector::add(&gamma[i][j], &gamma[j][i]))));
        let bracket = |x: &[FieldElem], y: &[FieldElem]| {
            let mut out = vector::zeros(field, n);
            for i in 0..n {
                for j in 0..n {
                    vector::axpy(&mut out, &(&x[i] * &y[j]), &gamma[i][j]);
                }
            }
            out
        };
        let b = |i: usize| vector::unit(field, n, i);
        let jacobi = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| {
            let s = vector::add(
                &vector::add(&bracket(&b(i), &bracket(&b(j), &b(k))), &bracket(&b(j), &bracket(&b(k), &b(i)))),
                &bracket(&b(k), &bracket(&b(i), &b(j))),
            );
            vector::is_zero(&s)
        })));
        prop_assert_eq!(LieSC::new(field, n, gamma.clone()).is_ok(), antisymmetric && jacobi);
    }

    #[test]
    fn radical_square_zero_digraphs(mask in 1u32..(1 << 12)) {
        // edges among 4 vertices, no loops
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|s| (0..4).map(move |t| (s, t))).filter(|(s, t)| s != t).collect();
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| *e).collect();
        let alg = build(&rad_square_zero(Field::Rational, &edges).unwrap());
        let h = hh1(&alg).unwrap();
        prop_assert_eq!(h.dim(), brute_hh1_dim(&alg));
        prop_assert!(is_abelian(h.lie()));
        if alg.is_connected() {
            prop_assert_eq!(h.dim() + alg.num_vertices(), edges.len() + 1);
        }
    }
}

#[test]
fn witt_algebras_satisfy_jacobi() {
    for p in [3u64, 5, 7, 11] {
        let w = witt_lie(p).unwrap();
        assert_eq!(w.dim(), p as usize);
        assert!(satisfies_jacobi(&w), "p = {p}");
        let g: Vec<Vec<FieldElem>> = (0..p as usize).map(|i| w.basis_vector(i)).collect();
        assert!(witt_table_holds(&w, &g, p as i64), "p = {p}");
    }
}

#[test]
fn one_vertex_nakayama_is_truncated_polynomial() {
    for n in 2..7 {
        let a = build(&nakayama(Field::Rational, 1, n).unwrap());
        let b = build(&trunc_poly(Field::Rational, n).unwrap());
        assert_eq!(a.dim(), b.dim());
        for u in 0..a.dim() {
            for v in 0..a.dim() {
                assert_eq!(a.product(u, v), b.product(u, v));
            }
        }
        assert_eq!(
            hh1(&a).unwrap().lie().structure_constants(),
            hh1(&b).unwrap().lie().structure_constants()
        );
    }
}

#[test]
fn generic_solver_matches_on_relations() {
    let text = "field Q\nvertices 4\narrow a 0 1\narrow b 1 3\narrow c 0 2\narrow d 2 3\ntruncate 3\nrel 1 a*b -1 c*d\n";
    let alg = build(text);
    assert_eq!(hh1(&alg).unwrap().dim(), hh1_generic(&alg).unwrap().dim());
    assert_eq!(hh1(&alg).unwrap().dim(), brute_hh1_dim(&alg));
}

#[test]
fn edge_list_generator() {
    let edges = parse_edge_list("0-1,1-2,2-0").unwrap();
    let alg = build(&rad_square_zero(Field::Prime(3), &edges).unwrap());
    assert_eq!(hh1(&alg).unwrap().dim(), 1);
}
