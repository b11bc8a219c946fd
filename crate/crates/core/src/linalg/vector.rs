//! Dense vectors are plain `Vec<FieldElem>`; these helpers keep the call sites short.

use super::{Field, FieldElem};

pub fn zeros(field: Field, n: usize) -> Vec<FieldElem> {
    vec![field.zero(); n]
}

pub fn unit(field: Field, n: usize, i: usize) -> Vec<FieldElem> {
    let mut v = zeros(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero(v: &[FieldElem]) -> bool {
    v.iter().all(FieldElem::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [FieldElem], a: &FieldElem, x: &[FieldElem]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

pub fn scale(a: &FieldElem, x: &[FieldElem]) -> Vec<FieldElem> {
    x.iter().map(|xi| a * xi).collect()
}

pub fn add(x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn dot(x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
    let field = x.first().map(FieldElem::field).unwrap_or(Field::Rational);
    let mut acc = field.zero();
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

/// Linear combination `sum_i coeffs[i] * vectors[i]`.
pub fn combination(
    field: Field,
    n: usize,
    coeffs: &[FieldElem],
    vectors: &[Vec<FieldElem>],
) -> Vec<FieldElem> {
    let mut out = zeros(field, n);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut out, c, v);
    }
    out
}

/// Index of the first nonzero entry.
pub fn leading(v: &[FieldElem]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}
