//! Test-side oracles. They use only basis products and brackets from the
//! library, and redo the linear algebra and Lie-theoretic bookkeeping here.

#![allow(dead_code)]

use hochlie::lie::LieSC;
use hochlie::linalg::{vector, Field, FieldElem, SparseSystem, Subspace};
use hochlie::quiver::{parse_presentation, FdAlgebra};

pub fn build(text: &str) -> FdAlgebra {
    parse_presentation(text).unwrap().build().unwrap()
}

fn dense_product(alg: &FdAlgebra, u: usize, v: usize) -> Vec<FieldElem> {
    let mut out = vector::zeros(alg.field(), alg.dim());
    for (k, x) in alg.product(u, v) {
        out[*k] = x.clone();
    }
    out
}

/// `dim Der(A) - dim Inn(A)` from the Leibniz rule on every pair of basis
/// elements, with the unknown `F` stored row-major (`F[r][c]` at `r * n + c`).
pub fn brute_hh1_dim(alg: &FdAlgebra) -> usize {
    let n = alg.dim();
    let field = alg.field();
    let table: Vec<Vec<Vec<FieldElem>>> = (0..n)
        .map(|u| (0..n).map(|v| dense_product(alg, u, v)).collect())
        .collect();
    let mut system = SparseSystem::new(field, n * n);
    for u in 0..n {
        for v in 0..n {
            // F(uv) - F(u) v - u F(v) = 0, coordinate r
            for r in 0..n {
                let mut terms = Vec::new();
                for (k, x) in table[u][v].iter().enumerate() {
                    if !x.is_zero() {
                        terms.push((r * n + k, x.clone()));
                    }
                }
                for k in 0..n {
                    let kv = &table[k][v][r];
                    if !kv.is_zero() {
                        terms.push((k * n + u, -kv.clone()));
                    }
                    let uk = &table[u][k][r];
                    if !uk.is_zero() {
                        terms.push((k * n + v, -uk.clone()));
                    }
                }
                if !terms.is_empty() {
                    system.add_equation(terms);
                }
            }
        }
    }
    let der = system.kernel().dim();
    let inner = Subspace::span(
        field,
        n * n,
        (0..n).map(|c| {
            let mut m = vector::zeros(field, n * n);
            for r in 0..n {
                for k in 0..n {
                    // [c, b_k] in coordinate r
                    m[r * n + k] = &table[c][k][r] - &table[k][c][r];
                }
            }
            m
        }),
    );
    der - inner.dim()
}

pub fn span_of_brackets(lie: &LieSC, a: &Subspace, b: &Subspace) -> Subspace {
    let mut vs = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            vs.push(lie.bracket(x, y));
        }
    }
    Subspace::span(lie.field(), lie.dim(), vs)
}

/// Least `n >= 1` with `L^(n) = 0`; `None` if not solvable.
pub fn derived_length(lie: &LieSC) -> Option<usize> {
    let mut current = Subspace::full(lie.field(), lie.dim());
    if current.is_zero() {
        return Some(1);
    }
    for n in 1..=lie.dim() + 1 {
        let next = span_of_brackets(lie, &current, &current);
        if next.is_zero() {
            return Some(n);
        }
        if next.dim() == current.dim() {
            return None;
        }
        current = next;
    }
    None
}

pub fn is_solvable(lie: &LieSC) -> bool {
    derived_length(lie).is_some()
}

/// Nilpotency class of `M = [L, L]`: least `m` with `M^m = 0`, where
/// `M^1 = [M, M]`; an abelian `M` counts as class 1.
pub fn nilpotency_class_of_derived(lie: &LieSC) -> Option<usize> {
    let full = Subspace::full(lie.field(), lie.dim());
    let m = span_of_brackets(lie, &full, &full);
    let mut term = span_of_brackets(lie, &m, &m);
    if term.is_zero() {
        return Some(1);
    }
    for c in 2..=lie.dim() + 1 {
        let next = span_of_brackets(lie, &m, &term);
        if next.is_zero() {
            return Some(c);
        }
        if next.dim() == term.dim() {
            return None;
        }
        term = next;
    }
    None
}

pub fn is_abelian(lie: &LieSC) -> bool {
    (0..lie.dim()).all(|i| {
        (0..lie.dim())
            .all(|j| vector::is_zero(&lie.bracket(&lie.basis_vector(i), &lie.basis_vector(j))))
    })
}

pub fn satisfies_jacobi(lie: &LieSC) -> bool {
    let n = lie.dim();
    let b = |i: usize| lie.basis_vector(i);
    for i in 0..n {
        for j in 0..n {
            let ij = lie.bracket(&b(i), &b(j));
            let ji = lie.bracket(&b(j), &b(i));
            if vector::add(&ij, &ji).iter().any(|x| !x.is_zero()) {
                return false;
            }
            for k in 0..n {
                let s1 = lie.bracket(&b(i), &lie.bracket(&b(j), &b(k)));
                let s2 = lie.bracket(&b(j), &lie.bracket(&b(k), &b(i)));
                let s3 = lie.bracket(&b(k), &lie.bracket(&b(i), &b(j)));
                if !vector::is_zero(&vector::add(&vector::add(&s1, &s2), &s3)) {
                    return false;
                }
            }
        }
    }
    true
}

/// `ad x` as a dense row-major matrix.
fn ad(lie: &LieSC, x: &[FieldElem]) -> Vec<Vec<FieldElem>> {
    let n = lie.dim();
    let cols: Vec<Vec<FieldElem>> = (0..n)
        .map(|j| lie.bracket(x, &lie.basis_vector(j)))
        .collect();
    (0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect()
}

pub fn killing(lie: &LieSC, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
    let (a, b) = (ad(lie, x), ad(lie, y));
    let n = lie.dim();
    let mut t = lie.field().zero();
    for i in 0..n {
        for k in 0..n {
            t = &t + &(&a[i][k] * &b[k][i]);
        }
    }
    t
}

pub fn killing_is_invariant(lie: &LieSC) -> bool {
    let n = lie.dim();
    let b = |i: usize| lie.basis_vector(i);
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                killing(lie, &lie.bracket(&b(i), &b(j)), &b(k))
                    == killing(lie, &b(i), &lie.bracket(&b(j), &b(k)))
            })
        })
    })
}

pub fn sl2_relations(lie: &LieSC, e: &[FieldElem], h: &[FieldElem], f: &[FieldElem]) -> bool {
    let two = lie.field().from_i64(2);
    let independent =
        Subspace::span(lie.field(), lie.dim(), [e.to_vec(), h.to_vec(), f.to_vec()]).dim() == 3;
    independent
        && lie.bracket(h, e) == vector::scale(&two, e)
        && lie.bracket(h, f) == vector::scale(&-two, f)
        && lie.bracket(e, f) == h
}

/// `[g_i, g_j] = (j - i) g_{i+j}` for all `-1 <= i, j <= p - 2`, with `g[t + 1]`
/// of degree `t`, and the `g` a basis.
pub fn witt_table_holds(lie: &LieSC, g: &[Vec<FieldElem>], p: i64) -> bool {
    let field = lie.field();
    if g.len() != p as usize
        || Subspace::span(field, lie.dim(), g.iter().cloned()).dim() != p as usize
    {
        return false;
    }
    for i in -1..=p - 2 {
        for j in -1..=p - 2 {
            let lhs = lie.bracket(&g[(i + 1) as usize], &g[(j + 1) as usize]);
            let rhs = if (-1..=p - 2).contains(&(i + j)) {
                vector::scale(&field.from_i64(j - i), &g[(i + j + 1) as usize])
            } else {
                vector::zeros(field, lie.dim())
            };
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn q() -> Field {
    Field::Rational
}
