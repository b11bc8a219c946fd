use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::LieSC;
use crate::error::{Error, Result};
use crate::linalg::{vector, FieldElem, Subspace};

/// Default number of random probes for the Monte Carlo procedures.
pub const DEFAULT_TRIALS: usize = 64;

/// Bound on random integer coefficients over `Q`.
const RANDOM_BOUND: i64 = 10;

/// Outcome of [`LieSC::is_simple_probe`]. `No` is certified; `ProbablyYes` means
/// every probe generated the whole algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityProbe {
    No {
        reason: String,
        /// A proper nonzero ideal, when one was found.
        witness: Option<Subspace>,
    },
    ProbablyYes,
}

impl SimplicityProbe {
    pub fn is_probably_simple(&self) -> bool {
        matches!(self, SimplicityProbe::ProbablyYes)
    }
}

/// Three-valued recognizer outcome. `Yes` carries a basis satisfying the defining
/// relations exactly; `No` is certified; `Inconclusive` means the search failed
/// (for instance when eigenvalues lie outside the ground field).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition<T> {
    Yes(T),
    No(String),
    Inconclusive,
}

impl<T> Recognition<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Recognition::Yes(_))
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            Recognition::Yes(_) => "yes",
            Recognition::No(_) => "no",
            Recognition::Inconclusive => "inconclusive",
        }
    }
}

/// `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Basis {
    pub e: Vec<FieldElem>,
    pub h: Vec<FieldElem>,
    pub f: Vec<FieldElem>,
}

/// `g[t + 1]` is the element of degree `t` for `t = -1..=p-2`, with
/// `[g_i, g_j] = (j - i) g_{i+j}` (zero when `i + j` is out of range).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WittBasis {
    pub g: Vec<Vec<FieldElem>>,
}

impl LieSC {
    fn random_vector(&self, rng: &mut ChaCha8Rng) -> Vec<FieldElem> {
        (0..self.dim())
            .map(|_| self.field().random(rng, RANDOM_BOUND))
            .collect()
    }

    /// Candidate probe vectors: basis vectors, pairwise sums, then `trials`
    /// seeded random vectors.
    fn probes(&self, seed: u64, trials: usize) -> impl Iterator<Item = Vec<FieldElem>> + '_ {
        let d = self.dim();
        let basis = (0..d).map(move |i| self.basis_vector(i));
        let sums = (0..d).flat_map(move |i| {
            (i + 1..d).map(move |j| vector::add(&self.basis_vector(i), &self.basis_vector(j)))
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random = (0..trials).map(move |_| self.random_vector(&mut rng));
        basis.chain(sums).chain(random)
    }

    /// One-sided simplicity test: checks perfectness, then looks for a probe
    /// vector generating a proper nonzero ideal.
    pub fn is_simple_probe(&self, seed: u64, trials: usize) -> SimplicityProbe {
        if self.dim() == 0 {
            return SimplicityProbe::No {
                reason: "zero algebra".into(),
                witness: None,
            };
        }
        let derived = self.derived();
        if derived.dim() != self.dim() {
            let witness = (!derived.is_zero()).then_some(derived);
            return SimplicityProbe::No {
                reason: "not perfect".into(),
                witness,
            };
        }
        for v in self.probes(seed, trials) {
            if vector::is_zero(&v) {
                continue;
            }
            let ideal = self.ideal_generated_by(&v);
            if ideal.dim() < self.dim() {
                return SimplicityProbe::No {
                    reason: "found a proper ideal".into(),
                    witness: Some(ideal),
                };
            }
        }
        SimplicityProbe::ProbablyYes
    }

    /// Checks the `sl_2` relations for a candidate triple.
    pub fn satisfies_sl2(&self, b: &Sl2Basis) -> bool {
        let f = self.field();
        let two = f.from_i64(2);
        let independent =
            Subspace::span(f, self.dim(), [b.e.clone(), b.h.clone(), b.f.clone()]).dim() == 3;
        independent
            && self.bracket(&b.h, &b.e) == vector::scale(&two, &b.e)
            && self.bracket(&b.h, &b.f) == vector::scale(&-&two, &b.f)
            && self.bracket(&b.e, &b.f) == b.h
    }

    /// Searches for an `sl_2`-triple. `No` when the dimension is not 3, the
    /// characteristic is 2, or the algebra is not perfect.
    pub fn recognize_sl2(&self, seed: u64) -> Recognition<Sl2Basis> {
        let field = self.field();
        if self.dim() != 3 {
            return Recognition::No(format!("dimension {} is not 3", self.dim()));
        }
        if field.characteristic() == 2 {
            return Recognition::No("characteristic 2".into());
        }
        if !self.is_perfect() {
            return Recognition::No("not perfect".into());
        }
        for h in self.probes(seed, DEFAULT_TRIALS) {
            if let Some(b) = self.sl2_from_semisimple(&h) {
                return Recognition::Yes(b);
            }
        }
        Recognition::Inconclusive
    }

    fn sl2_from_semisimple(&self, h: &[FieldElem]) -> Option<Sl2Basis> {
        let field = self.field();
        let eig = self.ad(h).eigenvalues_in_field().ok()?;
        if eig.len() != 3 {
            return None;
        }
        let nonzero: Vec<_> = eig.iter().filter(|e| !e.value.is_zero()).collect();
        if nonzero.len() != 2 || !(&nonzero[0].value + &nonzero[1].value).is_zero() {
            return None;
        }
        let lambda = &nonzero[0].value;
        let h = vector::scale(&(&field.from_i64(2) / lambda), h);
        let e = nonzero[0].space.basis()[0].clone();
        let f = nonzero[1].space.basis()[0].clone();
        let ef = self.bracket(&e, &f);
        let k = h.iter().position(|x| !x.is_zero())?;
        let mu = &ef[k] / &h[k];
        if mu.is_zero() || vector::scale(&mu, &h) != ef {
            return None;
        }
        let f = vector::scale(&mu.inv()?, &f);
        let b = Sl2Basis { e, h, f };
        self.satisfies_sl2(&b).then_some(b)
    }

    /// Checks the Witt table `[g_i, g_j] = (j - i) g_{i+j}`.
    pub fn satisfies_witt(&self, b: &WittBasis) -> bool {
        let field = self.field();
        let p = field.characteristic() as i64;
        if p == 0 || b.g.len() as i64 != p {
            return false;
        }
        if Subspace::span(field, self.dim(), b.g.iter().cloned()).dim() != b.g.len() {
            return false;
        }
        let g = |t: i64| &b.g[(t + 1) as usize];
        for i in -1..=p - 2 {
            for j in -1..=p - 2 {
                let expected = if (-1..=p - 2).contains(&(i + j)) {
                    vector::scale(&field.from_i64(j - i), g(i + j))
                } else {
                    vector::zeros(field, self.dim())
                };
                if self.bracket(g(i), g(j)) != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Searches for a Witt basis over `F_p`. `No` when the dimension is not `p`
    /// or the algebra is not perfect.
    pub fn recognize_witt(&self, seed: u64) -> Result<Recognition<WittBasis>> {
        let field = self.field();
        let p = field.characteristic();
        if p == 0 {
            return Err(Error::WrongCharacteristic);
        }
        if self.dim() as u64 != p {
            return Ok(Recognition::No(format!(
                "dimension {} is not {p}",
                self.dim()
            )));
        }
        if !self.is_perfect() {
            return Ok(Recognition::No("not perfect".into()));
        }
        for h in self.probes(seed, DEFAULT_TRIALS) {
            let Ok(eig) = self.ad(&h).eigenvalues_in_field() else {
                continue;
            };
            if eig.len() as u64 != p {
                continue;
            }
            for c in 1..p {
                let c = field.from_i64(c as i64);
                if let Some(b) = self.witt_from_toral(&vector::scale(&c, &h)) {
                    return Ok(Recognition::Yes(b));
                }
            }
        }
        Ok(Recognition::Inconclusive)
    }

    /// Grades by the eigenvalues of `ad h`, anchors degree `-1`, and rebuilds the
    /// basis downward from the top degree.
    fn witt_from_toral(&self, h: &[FieldElem]) -> Option<WittBasis> {
        let field = self.field();
        let p = field.characteristic() as i64;
        let ad = self.ad(h);
        let eigvec = |t: i64| -> Option<Vec<FieldElem>> {
            let shifted =
                &ad - &crate::linalg::Matrix::identity(field, self.dim()).scale(&field.from_i64(t));
            let k = shifted.kernel();
            (k.dim() == 1).then(|| k.basis()[0].clone())
        };
        let g_minus = eigvec(-1)?;
        let chain = |top: Vec<FieldElem>| -> Option<Vec<Vec<FieldElem>>> {
            let mut g = vec![vector::zeros(field, self.dim()); p as usize];
            g[p as usize - 1] = top;
            for t in (0..=p - 2).rev() {
                let inv = field.from_i64(t + 1).inv()?;
                g[t as usize] = vector::scale(&inv, &self.bracket(&g_minus, &g[(t + 1) as usize]));
            }
            Some(g)
        };
        let top = eigvec(p - 2)?;
        let g = chain(top.clone())?;
        // recomputed degree -1 element is kappa * g_minus
        let k = g_minus.iter().position(|x| !x.is_zero())?;
        let kappa = &g[0][k] / &g_minus[k];
        if kappa.is_zero() || vector::scale(&kappa, &g_minus) != g[0] {
            return None;
        }
        let mut g = chain(vector::scale(&kappa.inv()?, &top))?;
        g[0] = g_minus;
        let b = WittBasis { g };
        self.satisfies_witt(&b).then_some(b)
    }
}
