use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::FdAlgebra;
use crate::linalg::{vector, FieldElem, Matrix, Subspace};

/// Number of random functionals tried before falling back to a grid sweep.
const RANDOM_TRIALS: usize = 64;
/// Largest grid swept when certifying that no symmetrizing form exists.
const MAX_GRID_POINTS: usize = 50_000;

/// Outcome of the search for a symmetrizing form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryDecision {
    /// A trace functional `lambda` (coordinates on the dual basis) whose pairing
    /// `(a, b) -> lambda(ab)` is nondegenerate.
    Yes { form: Vec<FieldElem> },
    /// Certified: every trace functional is degenerate.
    No,
    /// Nothing found, and the space of trace functionals is too large to sweep.
    Inconclusive,
}

impl SymmetryDecision {
    pub fn is_yes(&self) -> bool {
        matches!(self, SymmetryDecision::Yes { .. })
    }
}

impl FdAlgebra {
    /// Functionals vanishing on `[A, A]`.
    pub fn trace_functionals(&self) -> Subspace {
        let dim = self.dim();
        let comm = self.commutator_space();
        if comm.is_zero() {
            return Subspace::full(self.field(), dim);
        }
        comm.to_matrix().kernel()
    }

    /// Gram matrix `lambda(b_u b_v)`.
    pub fn pairing_matrix(&self, form: &[FieldElem]) -> Matrix {
        let dim = self.dim();
        let field = self.field();
        let mut g = Matrix::zeros(field, dim, dim);
        for u in 0..dim {
            for v in 0..dim {
                let mut s = field.zero();
                for (w, c) in self.product(u, v) {
                    s = &s + &(c * &form[*w]);
                }
                g.set(u, v, s);
            }
        }
        g
    }

    /// Whether `form` is a symmetrizing form: it vanishes on commutators and its
    /// pairing is nondegenerate.
    pub fn is_symmetrizing_form(&self, form: &[FieldElem]) -> bool {
        let g = self.pairing_matrix(form);
        g == g.transpose() && self.trace_functionals().contains(form) && g.rank() == self.dim()
    }

    /// Searches for a symmetrizing form: basis functionals of the trace space,
    /// their pairwise sums, then seeded random combinations. A negative answer is
    /// certified by sweeping a grid of side `> dim A` (or all of `F_p`), since the
    /// determinant of the pairing is a polynomial of degree `dim A` in the
    /// coordinates of the functional.
    pub fn is_symmetric(&self, seed: u64) -> SymmetryDecision {
        let field = self.field();
        let dim = self.dim();
        let space = self.trace_functionals();
        let basis = space.basis().to_vec();
        let k = basis.len();
        if k == 0 {
            return SymmetryDecision::No;
        }
        let nondegenerate = |form: &Vec<FieldElem>| self.pairing_matrix(form).rank() == dim;
        let found = |form: Vec<FieldElem>| SymmetryDecision::Yes { form };

        for b in &basis {
            if nondegenerate(b) {
                return found(b.clone());
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let s = vector::add(&basis[i], &basis[j]);
                if nondegenerate(&s) {
                    return found(s);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bound = (dim as i64 + 1).max(8);
        for _ in 0..RANDOM_TRIALS {
            let coeffs: Vec<FieldElem> = (0..k).map(|_| field.random(&mut rng, bound)).collect();
            let form = vector::combination(field, dim, &coeffs, &basis);
            if nondegenerate(&form) {
                return found(form);
            }
        }

        let side = match field.characteristic() {
            0 => dim + 1,
            p => (p as usize).min(dim + 1),
        };
        let points = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(side));
        match points {
            Some(n) if n <= MAX_GRID_POINTS => {}
            _ => return SymmetryDecision::Inconclusive,
        }
        let values: Vec<FieldElem> = (0..side).map(|v| field.from_i64(v as i64)).collect();
        let mut idx = vec![0usize; k];
        loop {
            let coeffs: Vec<FieldElem> = idx.iter().map(|&i| values[i].clone()).collect();
            let form = vector::combination(field, dim, &coeffs, &basis);
            if nondegenerate(&form) {
                return found(form);
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    return SymmetryDecision::No;
                }
                idx[pos] += 1;
                if idx[pos] < side {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::quiver::parse_presentation;

    use super::*;

    fn decide(text: &str) -> SymmetryDecision {
        parse_presentation(text)
            .unwrap()
            .build()
            .unwrap()
            .is_symmetric(0)
    }

    #[test]
    fn truncated_polynomials_are_symmetric() {
        for n in 2..6 {
            let text = format!("field Q\nvertices 1\narrow x 0 0\ntruncate {n}\n");
            let a = parse_presentation(&text).unwrap().build().unwrap();
            match a.is_symmetric(0) {
                SymmetryDecision::Yes { form } => assert!(a.is_symmetrizing_form(&form)),
                other => panic!("expected a form, got {other:?}"),
            }
        }
    }

    #[test]
    fn kronecker_is_not_symmetric() {
        let d = decide("field Q\nvertices 2\narrow a 0 1\narrow b 0 1\ntruncate 2\n");
        assert_eq!(d, SymmetryDecision::No);
    }

    #[test]
    fn self_injective_nakayama() {
        // longest paths are cycles exactly when the Loewy length is 1 mod the cycle length
        let sym = decide("field F 5\nvertices 2\narrow a 0 1\narrow b 1 0\ntruncate 3\n");
        assert!(sym.is_yes());
        let not_sym = decide("field Q\nvertices 2\narrow a 0 1\narrow b 1 0\ntruncate 4\n");
        assert_eq!(not_sym, SymmetryDecision::No);
    }

    #[test]
    fn two_loops_commuting() {
        let d = decide(
            "field Q\nvertices 1\narrow x 0 0\narrow y 0 0\ntruncate 4\nrel 1 x*y -1 y*x\nrel 1 x*x\nrel 1 y*y\n",
        );
        assert!(d.is_yes());
    }

    #[test]
    fn small_prime_grid_is_exhaustive() {
        let d = decide("field F 2\nvertices 2\narrow a 0 1\ntruncate 2\n");
        assert_eq!(d, SymmetryDecision::No);
    }
}
