//! Lie algebras given by structure constants, and the decision procedures run
//! on `HH^1`.
//!
//! Length conventions: the derived series is `L^(0) = L`, `L^(n+1) = [L^(n), L^(n)]`
//! and the derived length is the least `n >= 1` with `L^(n) = 0`. The lower
//! central series is indexed from `L^1 = [L, L]`, `L^(m+1) = [L, L^m]`, and the
//! nilpotency class is the least `m >= 1` with `L^m = 0`. So an abelian algebra
//! (including the zero algebra) has derived length 1 and nilpotency class 1.

mod recognize;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{quotient_basis, vector, Field, FieldElem, Matrix, Quotient, Subspace};

pub use recognize::{Recognition, SimplicityProbe, Sl2Basis, WittBasis, DEFAULT_TRIALS};

/// Lie algebra with basis `x_0..x_{d-1}` and `[x_i, x_j] = sum_k gamma[i][j][k] x_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSC {
    field: Field,
    dim: usize,
    gamma: Vec<Vec<Vec<FieldElem>>>,
    pub label: Option<String>,
}

impl LieSC {
    /// Validates antisymmetry and the Jacobi identity on every basis triple.
    pub fn new(field: Field, dim: usize, gamma: Vec<Vec<Vec<FieldElem>>>) -> Result<LieSC> {
        let shape_ok = gamma.len() == dim
            && gamma
                .iter()
                .all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !shape_ok {
            return Err(Error::InvalidLieAlgebra(
                "structure tensor has the wrong shape".into(),
            ));
        }
        if gamma.iter().flatten().flatten().any(|c| c.field() != field) {
            return Err(Error::InvalidLieAlgebra(
                "structure constant over the wrong field".into(),
            ));
        }
        let l = LieSC {
            field,
            dim,
            gamma,
            label: None,
        };
        for i in 0..dim {
            for j in 0..dim {
                let neg: Vec<FieldElem> = l.gamma[j][i].iter().map(|c| -c).collect();
                if l.gamma[i][j] != neg {
                    return Err(Error::InvalidLieAlgebra(format!(
                        "[x{i}, x{j}] is not antisymmetric"
                    )));
                }
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let (xi, xj, xk) = (l.basis_vector(i), l.basis_vector(j), l.basis_vector(k));
                    let a = l.bracket(&xi, &l.bracket(&xj, &xk));
                    let b = l.bracket(&xj, &l.bracket(&xk, &xi));
                    let c = l.bracket(&xk, &l.bracket(&xi, &xj));
                    if !vector::is_zero(&vector::add(&vector::add(&a, &b), &c)) {
                        return Err(Error::InvalidLieAlgebra(format!(
                            "Jacobi identity fails on (x{i}, x{j}, x{k})"
                        )));
                    }
                }
            }
        }
        Ok(l)
    }

    /// Builds the tensor from a bracket on basis vectors.
    pub fn from_bracket(
        field: Field,
        dim: usize,
        mut bracket: impl FnMut(usize, usize) -> Vec<FieldElem>,
    ) -> Result<LieSC> {
        let gamma = (0..dim)
            .map(|i| (0..dim).map(|j| bracket(i, j)).collect())
            .collect();
        LieSC::new(field, dim, gamma)
    }

    /// Convenience constructor from integer structure constants.
    pub fn from_i64(field: Field, dim: usize, entries: &[(usize, usize, &[i64])]) -> Result<LieSC> {
        let mut gamma = vec![vec![vector::zeros(field, dim); dim]; dim];
        for (i, j, v) in entries {
            if v.len() != dim {
                return Err(Error::InvalidLieAlgebra(
                    "bracket vector has the wrong length".into(),
                ));
            }
            let v: Vec<FieldElem> = v.iter().map(|&c| field.from_i64(c)).collect();
            gamma[*j][*i] = v.iter().map(|c| -c).collect();
            gamma[*i][*j] = v;
        }
        LieSC::new(field, dim, gamma)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> LieSC {
        self.label = Some(label.into());
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<FieldElem>>] {
        &self.gamma
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FieldElem> {
        vector::unit(self.field, self.dim, i)
    }

    pub fn bracket(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
        let mut out = vector::zeros(self.field, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vector::axpy(&mut out, &(xi * yj), &self.gamma[i][j]);
            }
        }
        out
    }

    /// Matrix of `ad x`; column `j` is `[x, x_j]`.
    pub fn ad(&self, x: &[FieldElem]) -> Matrix {
        let cols: Vec<_> = (0..self.dim)
            .map(|j| self.bracket(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    pub fn is_abelian(&self) -> bool {
        self.gamma.iter().flatten().flatten().all(|c| c.is_zero())
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    /// `[L, L]`.
    pub fn derived(&self) -> Subspace {
        self.subalgebra_bracket(&self.full(), &self.full())
    }

    pub fn is_perfect(&self) -> bool {
        self.derived().dim() == self.dim
    }

    /// Span of `[u, v]` over basis vectors of `u` and `v`.
    pub fn subalgebra_bracket(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.field, self.dim);
        for x in u.basis() {
            for y in v.basis() {
                out.insert(self.bracket(x, y));
            }
        }
        out
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        self.subalgebra_bracket(&self.full(), s).is_subspace_of(s)
    }

    /// Smallest ideal containing `v`.
    pub fn ideal_generated_by(&self, v: &[FieldElem]) -> Subspace {
        let mut ideal = Subspace::zero(self.field, self.dim);
        let mut work = Vec::new();
        if ideal.insert(v.to_vec()) {
            work.push(v.to_vec());
        }
        while let Some(w) = work.pop() {
            for i in 0..self.dim {
                let b = self.bracket(&self.basis_vector(i), &w);
                if ideal.insert(b.clone()) {
                    work.push(b);
                }
            }
        }
        ideal
    }

    pub fn series_report(&self) -> SeriesReport {
        let zero = Subspace::zero(self.field, self.dim);
        let mut derived = vec![self.full()];
        loop {
            let last = derived.last().unwrap();
            let next = self.subalgebra_bracket(last, last);
            let stable = next == *last;
            derived.push(next);
            if stable || derived.last().unwrap().is_zero() {
                break;
            }
        }
        let solvable = derived.last().unwrap().is_zero();
        let derived_length = solvable.then(|| {
            (1..derived.len())
                .find(|&n| derived[n].is_zero())
                .expect("terminates at zero")
        });

        let lower_central = self.lower_central(&self.full());
        let m = derived[1].clone();
        let lower_central_of_derived = self.lower_central(&m);
        let nilpotent_derived = lower_central_of_derived.last().is_none_or(|s| *s == zero);
        let nilpotency_class_of_derived = nilpotent_derived.then(|| {
            lower_central_of_derived
                .iter()
                .position(|s| s.is_zero())
                .map_or(1, |i| i + 1)
        });
        SeriesReport {
            derived_series: derived,
            lower_central_series: lower_central,
            lower_central_of_derived,
            solvable,
            nilpotent_derived,
            derived_length,
            nilpotency_class_of_derived,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central(&self.full())
            .last()
            .is_none_or(Subspace::is_zero)
    }

    /// `M^1 = [M, M]`, `M^(k+1) = [M, M^k]` until zero or stable.
    fn lower_central(&self, m: &Subspace) -> Vec<Subspace> {
        let mut series = vec![self.subalgebra_bracket(m, m)];
        loop {
            let last = series.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self.subalgebra_bracket(m, last);
            if next == *last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// `kappa(x_i, x_j) = tr(ad x_i ad x_j)`.
    pub fn killing_form(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.dim)
            .map(|i| self.ad(&self.basis_vector(i)))
            .collect();
        let mut k = Matrix::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let t = (&ads[i] * &ads[j]).trace().expect("square");
                k.set(i, j, t.clone());
                k.set(j, i, t);
            }
        }
        k
    }

    /// Solvable radical in characteristic zero, as the Killing-orthogonal of `[L, L]`.
    pub fn radical_char0(&self) -> Result<Subspace> {
        if self.field.characteristic() != 0 {
            return Err(Error::UnsupportedCharacteristic(
                self.field.characteristic(),
            ));
        }
        let kappa = self.killing_form();
        let rows: Vec<Vec<FieldElem>> = self
            .derived()
            .basis()
            .iter()
            .map(|y| kappa.mul_vec(y))
            .collect();
        if rows.is_empty() {
            return Ok(self.full());
        }
        Ok(Matrix::from_rows(self.field, self.dim, rows)?.kernel())
    }

    /// `L / I` with the projection; `I` must be an ideal.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieSC, Quotient)> {
        if !self.is_ideal(ideal) {
            return Err(Error::InvalidArgument("subspace is not an ideal".into()));
        }
        let q = quotient_basis(&self.full(), ideal)?;
        let reps = q.complement.clone();
        let l = LieSC::from_bracket(self.field, q.dim(), |i, j| {
            q.project(&self.bracket(&reps[i], &reps[j]))
        })?;
        Ok((l, q))
    }

    /// Lie algebra structure on a subalgebra, in the coordinates of its echelon basis.
    pub fn restrict(&self, s: &Subspace) -> Result<LieSC> {
        let basis = s.basis().to_vec();
        LieSC::from_bracket(self.field, basis.len(), |i, j| {
            s.coordinates(&self.bracket(&basis[i], &basis[j]))
                .unwrap_or_else(|| vector::zeros(self.field, basis.len()))
        })
        .and_then(|l| {
            let closed = basis
                .iter()
                .all(|x| basis.iter().all(|y| s.contains(&self.bracket(x, y))));
            if closed {
                Ok(l)
            } else {
                Err(Error::InvalidArgument(
                    "subspace is not a subalgebra".into(),
                ))
            }
        })
    }

    /// Direct sum `self x other`.
    pub fn direct_sum(&self, other: &LieSC) -> Result<LieSC> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let (d1, d2) = (self.dim, other.dim);
        LieSC::from_bracket(self.field, d1 + d2, |i, j| {
            let mut out = vector::zeros(self.field, d1 + d2);
            if i < d1 && j < d1 {
                out[..d1].clone_from_slice(&self.gamma[i][j]);
            } else if i >= d1 && j >= d1 {
                out[d1..].clone_from_slice(&other.gamma[i - d1][j - d1]);
            }
            out
        })
    }

    /// `sl_2` in the basis `(e, h, f)`.
    pub fn sl2(field: Field) -> Result<LieSC> {
        LieSC::from_i64(
            field,
            3,
            &[(1, 0, &[2, 0, 0]), (1, 2, &[0, 0, -2]), (0, 2, &[0, 1, 0])],
        )
    }

    /// The abelian Lie algebra of dimension `dim`.
    pub fn abelian(field: Field, dim: usize) -> LieSC {
        LieSC::new(field, dim, vec![vec![vector::zeros(field, dim); dim]; dim]).expect("abelian")
    }

    /// Heisenberg algebra `[x, y] = z`.
    pub fn heisenberg(field: Field) -> LieSC {
        LieSC::from_i64(field, 3, &[(0, 1, &[0, 0, 1])]).expect("heisenberg")
    }
}

/// Derived and lower central series, with the lengths described in
/// the module docs. The series stop once they reach zero or stabilize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    /// `L^(0) = L, L^(1), ...`
    pub derived_series: Vec<Subspace>,
    /// `L^1 = [L, L], L^2, ...`
    pub lower_central_series: Vec<Subspace>,
    /// `M^1 = [M, M], M^2, ...` for `M = [L, L]`.
    pub lower_central_of_derived: Vec<Subspace>,
    pub solvable: bool,
    pub nilpotent_derived: bool,
    pub derived_length: Option<usize>,
    pub nilpotency_class_of_derived: Option<usize>,
}

/// Serializable summary of a [`SeriesReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesSummary {
    pub derived_dims: Vec<usize>,
    pub solvable: bool,
    pub nilpotent_derived: bool,
    pub derived_length: Option<usize>,
    pub nilpotency_class_of_derived: Option<usize>,
}

impl SeriesReport {
    pub fn summary(&self) -> SeriesSummary {
        SeriesSummary {
            derived_dims: self.derived_series.iter().map(Subspace::dim).collect(),
            solvable: self.solvable,
            nilpotent_derived: self.nilpotent_derived,
            derived_length: self.derived_length,
            nilpotency_class_of_derived: self.nilpotency_class_of_derived,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn two_dim() -> LieSC {
        LieSC::from_i64(Q, 2, &[(0, 1, &[0, 1])]).unwrap()
    }

    #[test]
    fn rejects_bad_tensors() {
        let mut gamma = vec![vec![vector::zeros(Q, 2); 2]; 2];
        gamma[0][1] = vec![Q.zero(), Q.one()];
        assert!(LieSC::new(Q, 2, gamma).is_err());
        // [x0,x1] = x0, [x0,x2] = x2, [x1,x2] = x1 is antisymmetric but not Jacobi
        let bad = LieSC::from_i64(
            Q,
            3,
            &[(0, 1, &[1, 0, 0]), (0, 2, &[0, 0, 1]), (1, 2, &[0, 1, 0])],
        );
        assert!(matches!(bad, Err(Error::InvalidLieAlgebra(_))));
    }

    #[test]
    fn brackets_of_subspaces() {
        let sl2 = LieSC::sl2(Q).unwrap();
        assert_eq!(
            sl2.subalgebra_bracket(&sl2.full(), &Subspace::zero(Q, 3))
                .dim(),
            0
        );
        assert_eq!(sl2.derived().dim(), 3);
        assert_eq!(LieSC::abelian(Q, 4).derived().dim(), 0);
    }

    #[test]
    fn series_examples() {
        let ab = LieSC::abelian(Q, 2).series_report();
        assert!(ab.solvable);
        assert_eq!(ab.derived_length, Some(1));
        assert_eq!(ab.nilpotency_class_of_derived, Some(1));

        let r = two_dim().series_report();
        assert!(r.solvable);
        assert_eq!(r.derived_length, Some(2));
        assert_eq!(r.nilpotency_class_of_derived, Some(1));

        let s = LieSC::sl2(Q).unwrap().series_report();
        assert!(!s.solvable);
        assert_eq!(s.derived_length, None);
        assert!(!s.nilpotent_derived);

        let z = LieSC::abelian(Q, 0).series_report();
        assert_eq!(z.derived_length, Some(1));
    }

    #[test]
    fn killing_forms() {
        assert!(LieSC::abelian(Q, 3).killing_form().is_zero());
        assert!(LieSC::heisenberg(Q).killing_form().is_zero());
        let k = LieSC::sl2(Q).unwrap().killing_form();
        assert_eq!(
            k,
            Matrix::from_i64(Q, &[&[0, 0, 4], &[0, 8, 0], &[4, 0, 0]])
        );
    }

    #[test]
    fn radicals() {
        let r = two_dim().radical_char0().unwrap();
        assert_eq!(r.dim(), 2);
        assert!(LieSC::sl2(Q).unwrap().radical_char0().unwrap().is_zero());
        let l = LieSC::sl2(Q)
            .unwrap()
            .direct_sum(&LieSC::abelian(Q, 1))
            .unwrap();
        let r = l.radical_char0().unwrap();
        assert_eq!(r, Subspace::span(Q, 4, [l.basis_vector(3)]));
        assert_eq!(
            LieSC::sl2(Field::Prime(5)).unwrap().radical_char0(),
            Err(Error::UnsupportedCharacteristic(5))
        );
    }

    #[test]
    fn radical_quotient_is_semisimple() {
        let l = LieSC::sl2(Q).unwrap().direct_sum(&two_dim()).unwrap();
        let (q, _) = l.quotient(&l.radical_char0().unwrap()).unwrap();
        assert_eq!(q.dim(), 3);
        assert!(q.radical_char0().unwrap().is_zero());
    }

    #[test]
    fn ideals() {
        let h = LieSC::heisenberg(Q);
        assert!(h.ideal_generated_by(&vector::zeros(Q, 3)).is_zero());
        assert_eq!(h.ideal_generated_by(&h.basis_vector(2)).dim(), 1);
        assert_eq!(h.ideal_generated_by(&h.basis_vector(0)).dim(), 2);
        let sl2 = LieSC::sl2(Q).unwrap();
        for i in 0..3 {
            assert_eq!(sl2.ideal_generated_by(&sl2.basis_vector(i)).dim(), 3);
        }
    }
}
