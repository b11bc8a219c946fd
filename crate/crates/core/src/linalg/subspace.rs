use super::vector;
use super::{Field, FieldElem, Matrix};
use crate::error::{Error, Result};

/// Subspace of `F^n`, stored as a basis in reduced row-echelon form.
///
/// The RREF basis is canonical, so two subspaces are equal exactly when their
/// stored bases are equal; `PartialEq` relies on this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: (0..ambient)
                .map(|i| vector::unit(field, ambient, i))
                .collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(field: Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<FieldElem>>,
    {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<FieldElem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(
            v.len(),
            self.ambient,
            "vector length does not match ambient dimension"
        );
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !c.is_zero() {
                vector::axpy(&mut r, &-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        vector::is_zero(&self.reduce(v))
    }

    /// Coordinates with respect to the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<FieldElem>) -> bool {
        let mut r = self.reduce(&v);
        let Some(lead) = vector::leading(&r) else {
            return false;
        };
        let inv = r[lead].inv().unwrap();
        r = vector::scale(&inv, &r);
        for row in &mut self.basis {
            let c = row[lead].clone();
            if !c.is_zero() {
                vector::axpy(row, &-c, &r);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.basis.insert(pos, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        let mut columns: Vec<Vec<FieldElem>> = self.basis.clone();
        columns.extend(
            other
                .basis
                .iter()
                .map(|v| vector::scale(&-self.field.one(), v)),
        );
        let m =
            Matrix::from_columns(self.field, self.ambient, &columns).expect("consistent shapes");
        let k = self.dim();
        let vectors = m
            .kernel()
            .basis()
            .iter()
            .map(|c| vector::combination(self.field, self.ambient, &c[..k], &self.basis))
            .collect::<Vec<_>>();
        Subspace::span(self.field, self.ambient, vectors)
    }

    /// Image under `m`, where `m` acts on column vectors of length `ambient`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::span(
            self.field,
            m.rows(),
            self.basis.iter().map(|v| m.mul_vec(v)),
        )
    }

    /// Basis vectors as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.basis.clone()).expect("consistent shapes")
    }
}

/// A complement `C` of `sub` inside `ambient` together with the projection
/// `ambient -> C` whose kernel is `sub`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    /// Complement basis vectors, in ambient coordinates.
    pub complement: Vec<Vec<FieldElem>>,
    /// `dim(C) x n` matrix sending a vector of the ambient subspace to its
    /// complement coordinates.
    pub projection: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn project(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        self.projection.mul_vec(v)
    }

    pub fn lift(&self, coords: &[FieldElem]) -> Vec<FieldElem> {
        let field = self.projection.field();
        vector::combination(field, self.projection.cols(), coords, &self.complement)
    }
}

/// Canonical complement of `sub` in `ambient`: the ambient basis vectors (in
/// stored order) are taken greedily whenever they are independent of `sub` and
/// of the vectors already chosen.
pub fn quotient_basis(ambient: &Subspace, sub: &Subspace) -> Result<Quotient> {
    if !sub.is_subspace_of(ambient) {
        return Err(Error::SubspaceNotContained);
    }
    let field = ambient.field();
    let n = ambient.ambient();
    let mut current = sub.clone();
    let mut complement = Vec::new();
    for b in ambient.basis() {
        if current.insert(b.clone()) {
            complement.push(b.clone());
        }
    }

    // Write combined = [sub basis; complement] as rows B. With [B | I] reduced to
    // [R | T] we have R = T B, and a vector v of the row space has coordinates
    // T^T (v restricted to the pivots of R).
    let combined: Vec<Vec<FieldElem>> = sub.basis().iter().chain(&complement).cloned().collect();
    let r = combined.len();
    let mut aug_rows = Vec::with_capacity(r);
    for (i, row) in combined.iter().enumerate() {
        let mut a = row.clone();
        a.extend(vector::unit(field, r, i));
        aug_rows.push(a);
    }
    let aug = Matrix::from_rows(field, n + r, aug_rows)?;
    let (red, pivots) = aug.rref();
    debug_assert!(pivots.iter().all(|&p| p < n));
    let s = sub.dim();
    let mut projection = Matrix::zeros(field, complement.len(), n);
    for (j, &col) in pivots.iter().enumerate() {
        for k in s..r {
            projection.set(k - s, col, red.get(j, n + k).clone());
        }
    }
    Ok(Quotient {
        complement,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn v(xs: &[i64]) -> Vec<FieldElem> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn quotient_trivial_cases() {
        let amb = Subspace::full(q(), 3);
        let all = quotient_basis(&amb, &amb).unwrap();
        assert_eq!(all.dim(), 0);
        assert_eq!(all.projection.rows(), 0);

        let zero = Subspace::zero(q(), 3);
        let id = quotient_basis(&amb, &zero).unwrap();
        assert_eq!(id.complement, amb.basis().to_vec());
        assert_eq!(id.projection, Matrix::identity(q(), 3));
    }

    #[test]
    fn quotient_drops_first_coordinate() {
        let amb = Subspace::full(q(), 3);
        let sub = Subspace::span(q(), 3, [v(&[1, 0, 0])]);
        let quo = quotient_basis(&amb, &sub).unwrap();
        assert_eq!(quo.complement, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        // projection o inclusion = identity on the complement
        for (i, c) in quo.complement.iter().enumerate() {
            assert_eq!(quo.project(c), vector::unit(q(), 2, i));
        }
        assert_eq!(quo.project(&v(&[5, 2, 3])), v(&[2, 3]));
    }

    #[test]
    fn quotient_requires_containment() {
        let amb = Subspace::span(q(), 2, [v(&[1, 0])]);
        let sub = Subspace::span(q(), 2, [v(&[0, 1])]);
        assert_eq!(quotient_basis(&amb, &sub), Err(Error::SubspaceNotContained));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(q(), 3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(q(), 3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), Subspace::span(q(), 3, [v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(q(), 3));
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::span(q(), 3, [v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let w = v(&[2, 5, 3]);
        let c = s.coordinates(&w).unwrap();
        assert_eq!(vector::combination(q(), 3, &c, s.basis()), w);
        assert!(s.coordinates(&v(&[1, 0, 0])).is_none());
    }
}
