//! Derivations, inner derivations and `HH^1(A) = Der(A)/IDer(A)` as a Lie algebra.
//!
//! Two realizations are provided. [`hh1`] works with derivations vanishing on the
//! vertex idempotents, determined by their values on arrows; every class has
//! such a representative. [`hh1_generic`] solves the full Leibniz system over all
//! `dim^2` matrix entries and serves as an independent check, and as the solver
//! for algebras without a quiver presentation (corners).

mod maps;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::LieSC;
use crate::linalg::{
    quotient_basis, vector, Field, FieldElem, Matrix, Quotient, SparseSystem, Subspace,
};
use crate::quiver::FdAlgebra;

pub use maps::{
    d_filtration, hh1_filtration_image, is_lie_homomorphism, p_power_map, schur_map,
    truncation_map, SchurMap, TruncationMap,
};

/// A derivation of an algebra as a `dim x dim` matrix; column `u` is `F(b_u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationMatrix {
    matrix: Matrix,
    e_normalized: bool,
}

impl DerivationMatrix {
    /// Checks the Leibniz rule on every pair of basis elements.
    pub fn new(alg: &FdAlgebra, matrix: Matrix) -> Result<DerivationMatrix> {
        if matrix.rows() != alg.dim() || matrix.cols() != alg.dim() {
            return Err(Error::NotADerivation(format!(
                "expected a {0}x{0} matrix, found {1}x{2}",
                alg.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if let Some((u, v)) = leibniz_failure(alg, &matrix) {
            return Err(Error::NotADerivation(format!(
                "Leibniz rule fails on ({}, {})",
                alg.labels()[u].name,
                alg.labels()[v].name
            )));
        }
        Ok(DerivationMatrix::trusted(alg, matrix))
    }

    fn trusted(alg: &FdAlgebra, matrix: Matrix) -> DerivationMatrix {
        let e_normalized = alg
            .idempotents()
            .iter()
            .all(|&e| (0..alg.dim()).all(|r| matrix.get(r, e).is_zero()));
        DerivationMatrix {
            matrix,
            e_normalized,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// Whether the derivation vanishes on every vertex idempotent.
    pub fn is_e_normalized(&self) -> bool {
        self.e_normalized
    }

    pub fn apply(&self, x: &[FieldElem]) -> Vec<FieldElem> {
        self.matrix.mul_vec(x)
    }
}

/// First basis pair on which `F(b_u b_v) = F(b_u) b_v + b_u F(b_v)` fails.
fn leibniz_failure(alg: &FdAlgebra, f: &Matrix) -> Option<(usize, usize)> {
    let dim = alg.dim();
    let field = alg.field();
    let columns: Vec<Vec<FieldElem>> = (0..dim).map(|u| f.column(u)).collect();
    for u in 0..dim {
        for v in 0..dim {
            let mut lhs = vector::zeros(field, dim);
            for (w, c) in alg.product(u, v) {
                vector::axpy(&mut lhs, c, &columns[*w]);
            }
            let mut rhs = vector::zeros(field, dim);
            for (w, c) in columns[u].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, d) in alg.product(w, v) {
                    rhs[*k] = &rhs[*k] + &(c * d);
                }
            }
            for (w, c) in columns[v].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, d) in alg.product(u, w) {
                    rhs[*k] = &rhs[*k] + &(c * d);
                }
            }
            if lhs != rhs {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn is_derivation(alg: &FdAlgebra, f: &Matrix) -> bool {
    f.rows() == alg.dim() && f.cols() == alg.dim() && leibniz_failure(alg, f).is_none()
}

/// How derivations are turned into coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationCoords {
    /// Values on the listed arrow basis elements, concatenated. Only meaningful
    /// for derivations vanishing on the vertex idempotents.
    Arrows(Vec<usize>),
    /// All matrix entries, row-major.
    Full,
}

/// `HH^1(A)` with a basis of representative derivations and Lie structure
/// constants for the bracket of classes.
#[derive(Debug, Clone)]
pub struct HH1Algebra {
    algebra: FdAlgebra,
    coords: DerivationCoords,
    /// Derivations (vanishing on `E` in arrow mode), in `coords`.
    pub der: Subspace,
    /// Inner derivations in the same coordinates.
    pub ider: Subspace,
    quotient: Quotient,
    representatives: Vec<DerivationMatrix>,
    lie: LieSC,
}

impl HH1Algebra {
    fn assemble(
        algebra: &FdAlgebra,
        coords: DerivationCoords,
        der: Subspace,
        ider: Subspace,
    ) -> Result<HH1Algebra> {
        let quotient = quotient_basis(&der, &ider)?;
        let representatives: Vec<DerivationMatrix> = quotient
            .complement
            .iter()
            .map(|v| {
                let m = materialize(algebra, &coords, v);
                DerivationMatrix::new(algebra, m)
            })
            .collect::<Result<_>>()?;
        let mut h = HH1Algebra {
            algebra: algebra.clone(),
            coords,
            der,
            ider,
            quotient,
            representatives,
            lie: LieSC::abelian(algebra.field(), 0),
        };
        let reps: Vec<Matrix> = h.representatives.iter().map(|r| r.matrix.clone()).collect();
        let lie = LieSC::from_bracket(algebra.field(), h.dim(), |i, j| {
            h.class_of_trusted(&reps[i].commutator(&reps[j]))
        })?;
        h.lie = lie;
        Ok(h)
    }

    pub fn algebra(&self) -> &FdAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn coords(&self) -> &DerivationCoords {
        &self.coords
    }

    pub fn lie(&self) -> &LieSC {
        &self.lie
    }

    pub fn representatives(&self) -> &[DerivationMatrix] {
        &self.representatives
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// Coordinates of a derivation matrix, normalizing first in arrow mode.
    fn coordinates(&self, f: &Matrix) -> Vec<FieldElem> {
        match &self.coords {
            DerivationCoords::Arrows(arrows) => {
                let g = normalize_matrix(&self.algebra, f);
                arrows.iter().flat_map(|&a| g.column(a)).collect()
            }
            DerivationCoords::Full => f.entries().to_vec(),
        }
    }

    /// Derivation matrix with the given coordinates in the realization's ambient space.
    pub fn derivation_from_coords(&self, v: &[FieldElem]) -> Matrix {
        materialize(&self.algebra, &self.coords, v)
    }

    /// Coordinates of a derivation in the realization's ambient space.
    pub fn coords_of(&self, f: &Matrix) -> Vec<FieldElem> {
        self.coordinates(f)
    }

    fn class_of_trusted(&self, f: &Matrix) -> Vec<FieldElem> {
        self.quotient.project(&self.coordinates(f))
    }

    /// Class of a derivation in the basis of `HH^1`.
    pub fn class_of(&self, f: &Matrix) -> Result<Vec<FieldElem>> {
        DerivationMatrix::new(&self.algebra, f.clone())?;
        let c = self.coordinates(f);
        if !self.der.contains(&c) {
            return Err(Error::NotADerivation(
                "derivation outside the solved space".into(),
            ));
        }
        Ok(self.quotient.project(&c))
    }

    /// Representative of the class with the given coordinates.
    pub fn representative(&self, class: &[FieldElem]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.algebra.dim(), self.algebra.dim());
        for (c, r) in class.iter().zip(&self.representatives) {
            if !c.is_zero() {
                m = &m + &r.matrix.scale(c);
            }
        }
        m
    }

    /// Spot check that brackets of classes do not depend on representatives:
    /// perturbs pairs of representatives by random inner derivations and
    /// compares the classes of their commutators with the structure constants.
    pub fn bracket_is_well_defined(&self, seed: u64, trials: usize) -> bool {
        let d = self.dim();
        if d == 0 {
            return true;
        }
        let field = self.field();
        let n = self.algebra.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..trials {
            let (i, j) = (t % d, (t / d) % d);
            let c1: Vec<_> = (0..n).map(|_| field.random(&mut rng, 5)).collect();
            let c2: Vec<_> = (0..n).map(|_| field.random(&mut rng, 5)).collect();
            let f = &self.representatives[i].matrix + &self.algebra.ad(&c1);
            let g = &self.representatives[j].matrix + &self.algebra.ad(&c2);
            if self.class_of_trusted(&f.commutator(&g)) != self.lie.structure_constants()[i][j] {
                return false;
            }
        }
        true
    }
}

fn materialize(alg: &FdAlgebra, coords: &DerivationCoords, v: &[FieldElem]) -> Matrix {
    match coords {
        DerivationCoords::Arrows(arrows) => {
            let n = alg.dim();
            let values: Vec<Vec<FieldElem>> = (0..arrows.len())
                .map(|a| v[a * n..(a + 1) * n].to_vec())
                .collect();
            extend_from_arrows(alg, &values)
        }
        DerivationCoords::Full => {
            Matrix::new(alg.field(), alg.dim(), alg.dim(), v.to_vec()).expect("square")
        }
    }
}

/// Leibniz extension of arrow values to a full matrix, with `F(e_i) = 0`.
fn extend_from_arrows(alg: &FdAlgebra, values: &[Vec<FieldElem>]) -> Matrix {
    let qd = alg.quiver_data().expect("quiver data");
    let n = alg.dim();
    let field = alg.field();
    let arrow_elems: Vec<Vec<FieldElem>> = qd
        .arrows
        .iter()
        .map(|a| alg.basis_vector(a.basis))
        .collect();
    let columns: Vec<Vec<FieldElem>> = (0..n)
        .map(|u| match qd.paths.get(u) {
            Some(word) if !word.is_empty() => {
                leibniz_expand(alg, &arrow_elems, word, |a| values[a].clone())
            }
            _ => vector::zeros(field, n),
        })
        .collect();
    Matrix::from_columns(field, n, &columns).expect("square")
}

/// `sum_k w_1..w_{k-1} F(w_k) w_{k+1}..w_l` evaluated in the algebra.
fn leibniz_expand(
    alg: &FdAlgebra,
    arrow_elems: &[Vec<FieldElem>],
    word: &[usize],
    mut value: impl FnMut(usize) -> Vec<FieldElem>,
) -> Vec<FieldElem> {
    let mut out = vector::zeros(alg.field(), alg.dim());
    for k in 0..word.len() {
        let mut term = value(word[k]);
        for &a in word[..k].iter().rev() {
            term = alg.mul(&arrow_elems[a], &term);
        }
        for &a in &word[k + 1..] {
            term = alg.mul(&term, &arrow_elems[a]);
        }
        out = vector::add(&out, &term);
    }
    out
}

/// Derivations vanishing on the vertex idempotents, in arrow coordinates: the
/// value on arrow `a` occupies entries `a * dim .. (a + 1) * dim`.
///
/// The value on `a` ranges over the basis paths parallel to `a`. The Leibniz
/// extension of every relation and of every path of length `N` must vanish.
pub fn derivations_e(alg: &FdAlgebra) -> Result<Subspace> {
    let qd = alg.quiver_data().ok_or(Error::NotQuiverPresented)?;
    let n = alg.dim();
    let field = alg.field();
    let mut vars: Vec<(usize, usize)> = Vec::new();
    for (ai, a) in qd.arrows.iter().enumerate() {
        for (u, l) in alg.labels().iter().enumerate() {
            if l.source == a.source && l.target == a.target {
                vars.push((ai, u));
            }
        }
    }
    let arrow_elems: Vec<Vec<FieldElem>> = qd
        .arrows
        .iter()
        .map(|a| alg.basis_vector(a.basis))
        .collect();
    let mut constraints: Vec<Vec<(FieldElem, Vec<usize>)>> = qd.relations.clone();
    for w in qd.words_of_length(qd.truncation) {
        constraints.push(vec![(field.one(), w)]);
    }

    let mut sys = SparseSystem::new(field, vars.len());
    for rel in &constraints {
        // column j: expansion of the relation with F(a) = b_u on (a, u) = vars[j]
        let mut cols = Vec::with_capacity(vars.len());
        for &(ai, u) in &vars {
            let mut col = vector::zeros(field, n);
            for (c, word) in rel {
                if !word.contains(&ai) {
                    continue;
                }
                let e = leibniz_expand(alg, &arrow_elems, word, |a| {
                    if a == ai {
                        alg.basis_vector(u)
                    } else {
                        vector::zeros(field, n)
                    }
                });
                vector::axpy(&mut col, c, &e);
            }
            cols.push(col);
        }
        for r in 0..n {
            sys.add_equation(cols.iter().enumerate().map(|(j, col)| (j, col[r].clone())));
        }
    }
    let solutions = sys.kernel();
    let ambient = qd.arrows.len() * n;
    Ok(Subspace::span(
        field,
        ambient,
        solutions.basis().iter().map(|s| {
            let mut v = vector::zeros(field, ambient);
            for (j, &(ai, u)) in vars.iter().enumerate() {
                v[ai * n + u] = s[j].clone();
            }
            v
        }),
    ))
}

/// Inner derivations `[c, -]` with `c` centralizing the idempotents, in arrow coordinates.
pub fn inner_derivations_e(alg: &FdAlgebra) -> Result<Subspace> {
    let qd = alg.quiver_data().ok_or(Error::NotQuiverPresented)?;
    let n = alg.dim();
    let ambient = qd.arrows.len() * n;
    Ok(Subspace::span(
        alg.field(),
        ambient,
        alg.vertex_centralizer().basis().iter().map(|c| {
            qd.arrows
                .iter()
                .flat_map(|a| alg.commutator(c, &alg.basis_vector(a.basis)))
                .collect::<Vec<_>>()
        }),
    ))
}

fn normalize_matrix(alg: &FdAlgebra, f: &Matrix) -> Matrix {
    let field = alg.field();
    let mut c = vector::zeros(field, alg.dim());
    for &e in alg.idempotents() {
        let fe = f.column(e);
        c = vector::add(&c, &alg.mul(&fe, &alg.basis_vector(e)));
    }
    if vector::is_zero(&c) {
        return f.clone();
    }
    f - &alg.ad(&c)
}

/// `F - [c, -]` with `c = sum_j F(e_j) e_j`; the result vanishes on every vertex
/// idempotent and has the same class as `F`.
pub fn normalize_derivation(alg: &FdAlgebra, f: &Matrix) -> Result<DerivationMatrix> {
    DerivationMatrix::new(alg, f.clone())?;
    Ok(DerivationMatrix::trusted(alg, normalize_matrix(alg, f)))
}

/// `HH^1(A)` from a quiver presentation.
pub fn hh1(alg: &FdAlgebra) -> Result<HH1Algebra> {
    let der = derivations_e(alg)?;
    let ider = inner_derivations_e(alg)?;
    let arrows = alg
        .quiver_data()
        .unwrap()
        .arrows
        .iter()
        .map(|a| a.basis)
        .collect();
    HH1Algebra::assemble(alg, DerivationCoords::Arrows(arrows), der, ider)
}

/// All derivations, from the Leibniz system on the `dim^2` matrix entries, in
/// row-major coordinates.
pub fn all_derivations(alg: &FdAlgebra) -> Subspace {
    let n = alg.dim();
    let field = alg.field();
    let var = |r: usize, c: usize| r * n + c;
    let mut sys = SparseSystem::new(field, n * n);
    for u in 0..n {
        for v in 0..n {
            // coefficient of b_k in F(b_u b_v) - F(b_u) b_v - b_u F(b_v)
            let mut rows: Vec<Vec<(usize, FieldElem)>> = vec![Vec::new(); n];
            for (w, c) in alg.product(u, v) {
                for (k, row) in rows.iter_mut().enumerate() {
                    row.push((var(k, *w), c.clone()));
                }
            }
            for w in 0..n {
                for (k, c) in alg.product(w, v) {
                    rows[*k].push((var(w, u), -c));
                }
                for (k, c) in alg.product(u, w) {
                    rows[*k].push((var(w, v), -c));
                }
            }
            for row in rows {
                sys.add_equation(row);
            }
        }
    }
    sys.kernel()
}

/// `HH^1(A)` by brute force over all matrix entries; works for any algebra.
pub fn hh1_generic(alg: &FdAlgebra) -> Result<HH1Algebra> {
    let der = all_derivations(alg);
    let ider = Subspace::span(
        alg.field(),
        alg.dim() * alg.dim(),
        (0..alg.dim()).map(|u| alg.ad(&alg.basis_vector(u)).entries().to_vec()),
    );
    HH1Algebra::assemble(alg, DerivationCoords::Full, der, ider)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_presentation;

    fn build(text: &str) -> FdAlgebra {
        parse_presentation(text).unwrap().build().unwrap()
    }

    const KRONECKER: &str = "field Q\nvertices 2\narrow a 0 1\narrow b 0 1\ntruncate 2\n";

    fn trunc(n: usize, field: &str) -> FdAlgebra {
        build(&format!(
            "field {field}\nvertices 1\narrow x 0 0\ntruncate {n}\n"
        ))
    }

    #[test]
    fn kronecker_derivations() {
        let a = build(KRONECKER);
        assert_eq!(derivations_e(&a).unwrap().dim(), 4);
        assert_eq!(inner_derivations_e(&a).unwrap().dim(), 1);
        let h = hh1(&a).unwrap();
        assert_eq!(h.dim(), 3);
        assert_eq!(hh1_generic(&a).unwrap().dim(), 3);
        assert!(h
            .representatives()
            .iter()
            .all(DerivationMatrix::is_e_normalized));
    }

    #[test]
    fn truncated_polynomial_derivations() {
        assert_eq!(derivations_e(&trunc(4, "Q")).unwrap().dim(), 3);
        assert_eq!(derivations_e(&trunc(5, "F 5")).unwrap().dim(), 5);
        assert_eq!(hh1_generic(&trunc(5, "F 5")).unwrap().dim(), 5);
        let h = hh1(&trunc(4, "Q")).unwrap();
        assert_eq!(h.dim(), 3);
        assert!(!h.lie().is_abelian());
        assert!(h.lie().series_report().solvable);
    }

    #[test]
    fn radical_square_zero_cycle() {
        let a = build("field Q\nvertices 3\narrow a 0 1\narrow b 1 2\narrow c 2 0\ntruncate 2\n");
        assert_eq!(hh1(&a).unwrap().dim(), 1);
        assert_eq!(hh1_generic(&a).unwrap().dim(), 1);
    }

    #[test]
    fn semisimple_has_no_outer_derivations() {
        let a = build("field Q\nvertices 3\ntruncate 2\n");
        assert_eq!(hh1(&a).unwrap().dim(), 0);
        assert_eq!(hh1_generic(&a).unwrap().dim(), 0);
    }

    #[test]
    fn commutative_algebras_have_no_inner_derivations() {
        assert!(inner_derivations_e(&trunc(5, "Q")).unwrap().is_zero());
    }

    #[test]
    fn normalization() {
        let a = build("field Q\nvertices 2\narrow a 0 1\narrow b 1 0\ntruncate 4\n");
        for u in 0..a.dim() {
            let inner = a.ad(&a.basis_vector(u));
            let g = normalize_derivation(&a, &inner).unwrap();
            assert!(g.is_e_normalized());
            let h = hh1(&a).unwrap();
            assert!(vector::is_zero(&h.class_of(g.matrix()).unwrap()));
        }
        let generic = hh1_generic(&a).unwrap();
        let h = hh1(&a).unwrap();
        let der_e = derivations_e(&a).unwrap();
        for r in generic.representatives() {
            let g = normalize_derivation(&a, r.matrix()).unwrap();
            assert!(g.is_e_normalized());
            let arrows: Vec<FieldElem> = a
                .quiver_data()
                .unwrap()
                .arrows
                .iter()
                .flat_map(|x| g.matrix().column(x.basis))
                .collect();
            assert!(der_e.contains(&arrows));
            h.class_of(r.matrix()).unwrap();
        }
    }

    #[test]
    fn rejects_non_derivations() {
        let a = trunc(3, "Q");
        let mut m = Matrix::zeros(Field::Rational, 3, 3);
        m.set(0, 0, Field::Rational.one());
        assert!(matches!(
            normalize_derivation(&a, &m),
            Err(Error::NotADerivation(_))
        ));
    }

    #[test]
    fn bracket_well_defined() {
        let a = build("field Q\nvertices 2\narrow a 0 1\narrow b 1 0\ntruncate 5\n");
        assert!(hh1(&a).unwrap().bracket_is_well_defined(1, 16));
        assert!(hh1_generic(&a).unwrap().bracket_is_well_defined(1, 16));
    }
}
