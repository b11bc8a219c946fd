use super::{hh1, hh1_generic, normalize_matrix, DerivationCoords, HH1Algebra};
use crate::error::{Error, Result};
use crate::lie::LieSC;
use crate::linalg::{vector, FieldElem, Matrix, Subspace};
use crate::quiver::Corner;

/// Derivations of `h`'s realization with `F(J) <= J^m`, in its coordinates.
///
/// In arrow coordinates this is the condition on arrow values, since `J` is
/// generated by the arrows as an `E`-bimodule.
pub fn d_filtration(h: &HH1Algebra, m: usize) -> Result<Subspace> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "filtration degree must be at least 1".into(),
        ));
    }
    let alg = h.algebra();
    let field = alg.field();
    let n = alg.dim();
    let jm = alg.radical_power(m);
    let constraint = match h.coords() {
        DerivationCoords::Arrows(arrows) => Subspace::span(
            field,
            arrows.len() * n,
            (0..arrows.len()).flat_map(|a| {
                jm.basis().iter().map(move |v| {
                    let mut w = vector::zeros(field, arrows.len() * n);
                    w[a * n..(a + 1) * n].clone_from_slice(v);
                    w
                })
            }),
        ),
        DerivationCoords::Full => {
            // column u unrestricted for u outside J, in J^m for u in J
            let radical: Vec<usize> = (0..n).filter(|&u| alg.labels()[u].length > 0).collect();
            let mut vectors = Vec::new();
            for u in 0..n {
                let targets: Vec<Vec<FieldElem>> = if radical.contains(&u) {
                    jm.basis().to_vec()
                } else {
                    (0..n).map(|r| vector::unit(field, n, r)).collect()
                };
                for t in targets {
                    let mut w = vector::zeros(field, n * n);
                    for (r, x) in t.into_iter().enumerate() {
                        w[r * n + u] = x;
                    }
                    vectors.push(w);
                }
            }
            Subspace::span(field, n * n, vectors)
        }
    };
    Ok(h.der.intersect(&constraint))
}

/// Classes having a representative in `D_m`: the image of `D_m` in `HH^1`.
pub fn hh1_filtration_image(h: &HH1Algebra, m: usize) -> Result<Subspace> {
    let dm = d_filtration(h, m)?;
    Ok(Subspace::span(
        h.field(),
        h.dim(),
        dm.basis().iter().map(|v| h.quotient().project(v)),
    ))
}

/// Whether `phi` (columns = images of source basis vectors) preserves brackets.
pub fn is_lie_homomorphism(source: &LieSC, target: &LieSC, phi: &Matrix) -> bool {
    if phi.rows() != target.dim() || phi.cols() != source.dim() {
        return false;
    }
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let lhs = phi.mul_vec(&source.structure_constants()[i][j]);
            let rhs = target.bracket(&phi.column(i), &phi.column(j));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// The map `HH^1(A) -> HH^1(A/J^2)` induced by the quotient.
#[derive(Debug, Clone)]
pub struct TruncationMap {
    pub target: HH1Algebra,
    /// `dim HH^1(A/J^2) x dim HH^1(A)`.
    pub phi: Matrix,
    pub kernel: Subspace,
    /// Image of `D_2` in `HH^1(A)`.
    pub d2_image: Subspace,
}

impl TruncationMap {
    pub fn kernel_is_d2_image(&self) -> bool {
        self.kernel == self.d2_image
    }
}

/// Requires that the Ext-quiver has no loops, so every derivation preserves
/// `J` and descends to `A/J^2`.
pub fn truncation_map(h: &HH1Algebra) -> Result<TruncationMap> {
    let alg = h.algebra();
    let ext = alg.ext1_matrix();
    if let Some(v) = (0..ext.len()).find(|&i| ext[i][i] != 0) {
        return Err(Error::HasLoops(v));
    }
    let trunc = alg.truncate(2)?;
    let b = &trunc.algebra;
    let target = hh1(b)?;
    let field = alg.field();
    let inclusion = Matrix::from_columns(
        field,
        alg.dim(),
        &trunc
            .kept
            .iter()
            .map(|&u| vector::unit(field, alg.dim(), u))
            .collect::<Vec<_>>(),
    )?;
    let columns: Vec<Vec<FieldElem>> = h
        .representatives()
        .iter()
        .map(|r| {
            let fb = &(&trunc.map * r.matrix()) * &inclusion;
            target.class_of(&fb)
        })
        .collect::<Result<_>>()?;
    let phi = Matrix::from_columns(field, target.dim(), &columns)?;
    if !is_lie_homomorphism(h.lie(), target.lie(), &phi) {
        return Err(Error::InvalidAlgebra(
            "truncation map does not preserve brackets".into(),
        ));
    }
    let kernel = if h.dim() == 0 {
        Subspace::zero(field, 0)
    } else {
        phi.kernel()
    };
    let d2_image = hh1_filtration_image(h, 2)?;
    Ok(TruncationMap {
        target,
        phi,
        kernel,
        d2_image,
    })
}

/// The restriction map `HH^1(A) -> HH^1(eAe)` for `e` a sum of vertex idempotents.
#[derive(Debug, Clone)]
pub struct SchurMap {
    pub corner: Corner,
    /// `HH^1` of the corner, from the generic solver.
    pub target: HH1Algebra,
    /// `dim HH^1(eAe) x dim HH^1(A)`.
    pub matrix: Matrix,
}

/// Restricts each representative to the corner, after adjusting it to vanish on
/// `e` by subtracting `[[F(e), e], -]`.
pub fn schur_map(h: &HH1Algebra, vertices: &[usize]) -> Result<SchurMap> {
    let alg = h.algebra();
    let corner = alg.corner(vertices)?;
    let target = hh1_generic(&corner.algebra)?;
    let field = alg.field();
    let n = alg.dim();
    let mut e = vector::zeros(field, n);
    for &v in &corner.vertices {
        e[alg.idempotents()[v]] = field.one();
    }
    let ad_e_comm = |f: &Matrix| -> Matrix {
        let fe = f.mul_vec(&e);
        let c = alg.commutator(&fe, &e);
        if vector::is_zero(&c) {
            f.clone()
        } else {
            f - &alg.ad(&c)
        }
    };
    let mut columns = Vec::new();
    for r in h.representatives() {
        let f = ad_e_comm(r.matrix());
        let restricted: Vec<Vec<FieldElem>> = corner
            .inclusion
            .iter()
            .map(|&u| {
                let image = f.column(u);
                for (w, x) in image.iter().enumerate() {
                    if !x.is_zero() && !corner.inclusion.contains(&w) {
                        return Err(Error::InvalidAlgebra(
                            "restriction leaves the corner".into(),
                        ));
                    }
                }
                Ok(corner.inclusion.iter().map(|&w| image[w].clone()).collect())
            })
            .collect::<Result<_>>()?;
        let m = Matrix::from_columns(field, corner.inclusion.len(), &restricted)?;
        columns.push(target.class_of(&m)?);
    }
    let matrix = Matrix::from_columns(field, target.dim(), &columns)?;
    if !is_lie_homomorphism(h.lie(), target.lie(), &matrix) {
        return Err(Error::InvalidAlgebra(
            "corner map does not preserve brackets".into(),
        ));
    }
    Ok(SchurMap {
        corner,
        target,
        matrix,
    })
}

/// Class of the `p`-th power of a representative, in characteristic `p`.
pub fn p_power_map(h: &HH1Algebra, class: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let p = h.field().characteristic();
    if p == 0 {
        return Err(Error::NotPrimeField);
    }
    if class.len() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "class has {} coordinates, HH^1 has dimension {}",
            class.len(),
            h.dim()
        )));
    }
    let f = h.representative(class);
    let fp = f.pow(p)?;
    let fp = normalize_matrix(h.algebra(), &fp);
    h.class_of(&fp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hh1::hh1;
    use crate::linalg::Field;
    use crate::quiver::{parse_presentation, FdAlgebra};

    fn build(text: &str) -> FdAlgebra {
        parse_presentation(text).unwrap().build().unwrap()
    }

    fn trunc(n: usize, field: &str) -> FdAlgebra {
        build(&format!(
            "field {field}\nvertices 1\narrow x 0 0\ntruncate {n}\n"
        ))
    }

    fn nakayama(e: usize, l: usize, field: &str) -> FdAlgebra {
        let mut text = format!("field {field}\nvertices {e}\n");
        for i in 0..e {
            text.push_str(&format!("arrow a{i} {i} {}\n", (i + 1) % e));
        }
        text.push_str(&format!("truncate {l}\n"));
        build(&text)
    }

    const KRONECKER: &str = "field Q\nvertices 2\narrow a 0 1\narrow b 0 1\ntruncate 2\n";

    #[test]
    fn filtration_examples() {
        let h = hh1(&trunc(4, "Q")).unwrap();
        assert_eq!(d_filtration(&h, 2).unwrap().dim(), 2);
        assert_eq!(hh1_filtration_image(&h, 2).unwrap().dim(), 2);
        assert!(d_filtration(&h, 4).unwrap().is_zero());
        let k = hh1(&build(KRONECKER)).unwrap();
        assert!(d_filtration(&k, 2).unwrap().is_zero());
        assert_eq!(hh1_filtration_image(&k, 1).unwrap().dim(), k.dim());
    }

    #[test]
    fn truncation_map_examples() {
        let k = hh1(&build(KRONECKER)).unwrap();
        let t = truncation_map(&k).unwrap();
        assert_eq!(t.phi, Matrix::identity(Field::Rational, 3));
        assert!(t.kernel.is_zero());

        let n = hh1(&nakayama(3, 5, "Q")).unwrap();
        let t = truncation_map(&n).unwrap();
        assert!(t.kernel_is_d2_image());

        assert_eq!(
            truncation_map(&hh1(&trunc(4, "Q")).unwrap()).unwrap_err(),
            Error::HasLoops(0)
        );
    }

    #[test]
    fn schur_examples() {
        let k = hh1(&build(KRONECKER)).unwrap();
        let s = schur_map(&k, &[0]).unwrap();
        assert_eq!(s.target.dim(), 0);
        let full = schur_map(&k, &[0, 1]).unwrap();
        assert_eq!(full.matrix.rows(), 3);
        assert_eq!(full.matrix.rank(), 3);
        assert_eq!(schur_map(&k, &[]).unwrap_err(), Error::EmptySubset);

        let local = hh1(&trunc(4, "Q")).unwrap();
        let s = schur_map(&local, &[0]).unwrap();
        assert_eq!(s.matrix.rank(), 3);
    }

    #[test]
    fn p_power_examples() {
        let f5 = Field::Prime(5);
        let h = hh1(&trunc(5, "F 5")).unwrap();
        assert_eq!(h.dim(), 5);
        assert!(vector::is_zero(
            &p_power_map(&h, &vector::zeros(f5, 5)).unwrap()
        ));
        // arrow coordinates: the value on x is a vector over the basis 1, x, ..., x^4
        let class_of_monomial = |i: usize| {
            let mut m = Matrix::zeros(f5, 5, 5);
            // x^k -> k x^(k-1+i)
            for k in 1..5 {
                if k - 1 + i < 5 {
                    m.set(k - 1 + i, k, f5.from_i64(k as i64));
                }
            }
            h.class_of(&m).unwrap()
        };
        let f0 = class_of_monomial(1);
        assert_eq!(p_power_map(&h, &f0).unwrap(), f0);
        let fm1 = class_of_monomial(0);
        assert!(vector::is_zero(&p_power_map(&h, &fm1).unwrap()));
        let q = hh1(&trunc(3, "Q")).unwrap();
        assert_eq!(
            p_power_map(&q, &[Field::Rational.one(), Field::Rational.zero()]),
            Err(Error::NotPrimeField)
        );
    }
}
