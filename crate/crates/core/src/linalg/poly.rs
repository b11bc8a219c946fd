//! Root finding for polynomials given as ascending coefficient lists.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, FieldElem};

pub fn eval(coeffs: &[FieldElem], x: &FieldElem) -> FieldElem {
    let mut acc = x.field().zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Above this characteristic roots are found by splitting `gcd(f, x^p - x)`
/// instead of testing every residue.
const EXHAUSTIVE_LIMIT: u64 = 1 << 12;

/// Distinct roots lying in `field`, in canonical order.
///
/// Over small `F_p` every residue is tested; over large ones the split part of
/// the polynomial is factored by Cantor-Zassenhaus with a fixed seed. Over the rationals the candidates come
/// from the rational root theorem applied to the integer-scaled polynomial.
pub fn roots_in_field(field: Field, coeffs: &[FieldElem]) -> Vec<FieldElem> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(FieldElem::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Vec::new();
    }
    let mut roots = match field {
        Field::Prime(p) if p <= EXHAUSTIVE_LIMIT => field
            .elements()
            .unwrap()
            .into_iter()
            .filter(|x| eval(&coeffs, x).is_zero())
            .collect(),
        Field::Prime(p) => {
            let residues: Vec<u64> = coeffs.iter().map(|c| c.residue().unwrap()).collect();
            modular::roots(&residues, p)
                .into_iter()
                .map(|r| field.from_i64(r as i64))
                .collect()
        }
        Field::Rational => rational_roots(&coeffs),
    };
    roots.sort_by(|a, b| a.canonical_cmp(b));
    roots.dedup();
    roots
}

fn rational_roots(coeffs: &[FieldElem]) -> Vec<FieldElem> {
    let rats: Vec<&BigRational> = coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = rats
        .iter()
        .map(|q| (*q * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();

    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(Field::Rational.zero());
        let shift = ints.iter().position(|c| !c.is_zero()).unwrap();
        ints.drain(..shift);
    }
    if ints.len() <= 1 {
        return roots;
    }
    let constant = divisors(&ints[0].abs());
    let leading = divisors(&ints.last().unwrap().abs());
    let poly: Vec<FieldElem> = ints
        .iter()
        .map(|c| Field::Rational.from_bigint(c))
        .collect();
    for d in &constant {
        for e in &leading {
            for sign in [-1, 1] {
                let candidate =
                    FieldElem::Rational(BigRational::new(d * BigInt::from(sign), e.clone()));
                if eval(&poly, &candidate).is_zero() {
                    roots.push(candidate);
                }
            }
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Dense polynomials over `F_p` as ascending `u64` residues.
mod modular {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn inv(a: u64, p: u64) -> u64 {
        let (mut base, mut exp, mut acc) = (a % p, p - 2, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            exp >>= 1;
        }
        acc
    }

    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// `(quotient, remainder)` of `a` by nonzero `b`.
    fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead_inv = inv(b[db], p);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = mul(*r.last().unwrap(), lead_inv, p);
            q[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mul(c, bi, p)) % p;
            }
            r = trim(r);
        }
        (q, r)
    }

    fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul(x, y, p)) % p;
            }
        }
        divmod(&out, f, p).1
    }

    fn powmod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = divmod(&[1], f, p).1;
        let mut b = divmod(base, f, p).1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(&acc, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            exp >>= 1;
        }
        acc
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        trim((0..n).map(|i| (get(a, i) + p - get(b, i)) % p).collect())
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = divmod(&a, &b, p).1;
            a = b;
            b = r;
        }
        if let Some(&lead) = a.last() {
            let li = inv(lead, p);
            a.iter_mut().for_each(|c| *c = mul(*c, li, p));
        }
        a
    }

    /// Distinct roots of `f` in `F_p`, `p` an odd prime.
    pub(super) fn roots(f: &[u64], p: u64) -> Vec<u64> {
        let f = trim(f.to_vec());
        if f.len() <= 1 {
            return Vec::new();
        }
        // product of the distinct linear factors
        let xp = powmod(&[0, 1], p, &f, p);
        let g = gcd(&f, &sub(&xp, &[0, 1], p), p);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut out = Vec::new();
        let mut pending = vec![g];
        while let Some(g) = pending.pop() {
            match g.len() {
                0 | 1 => {}
                2 => out.push(mul(p - g[0], inv(g[1], p), p)),
                _ => loop {
                    let a = rng.gen_range(0..p);
                    let h = powmod(&[a, 1], (p - 1) / 2, &g, p);
                    let d = gcd(&g, &sub(&h, &[1], p), p);
                    if d.len() > 1 && d.len() < g.len() {
                        pending.push(divmod(&g, &d, p).0);
                        pending.push(d);
                        break;
                    }
                },
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: Field, c: &[i64]) -> Vec<FieldElem> {
        c.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn rational_roots_of_scaled_polynomial() {
        // (2x - 1)(x + 3) x = 2x^3 + 5x^2 - 3x
        let q = Field::Rational;
        let roots = roots_in_field(q, &poly(q, &[0, -3, 5, 2]));
        let half = FieldElem::Rational(BigRational::new(1.into(), 2.into()));
        assert_eq!(roots, vec![q.from_i64(-3), q.zero(), half]);
    }

    #[test]
    fn no_rational_roots() {
        let q = Field::Rational;
        assert!(roots_in_field(q, &poly(q, &[1, 0, 1])).is_empty());
        assert!(roots_in_field(q, &poly(q, &[-2, 0, 1])).is_empty());
    }

    #[test]
    fn prime_field_roots() {
        let f5 = Field::prime(5).unwrap();
        // x^5 - x vanishes everywhere on F_5
        let roots = roots_in_field(f5, &poly(f5, &[0, -1, 0, 0, 0, 1]));
        assert_eq!(roots.len(), 5);
    }

    #[test]
    fn large_prime_field_roots() {
        let p = 2_147_483_647;
        let f = Field::prime(p).unwrap();
        // (x - 3)(x + 5)(x - 2^20)(x^2 + 1), and x^2 + 1 is irreducible since p = 3 mod 4
        let mut coeffs = poly(f, &[1]);
        for factor in [
            poly(f, &[-3, 1]),
            poly(f, &[5, 1]),
            poly(f, &[-(1 << 20), 1]),
            poly(f, &[1, 0, 1]),
        ] {
            let mut next = vec![f.zero(); coeffs.len() + factor.len() - 1];
            for (i, a) in coeffs.iter().enumerate() {
                for (j, b) in factor.iter().enumerate() {
                    next[i + j] = &next[i + j] + &(a * b);
                }
            }
            coeffs = next;
        }
        let roots = roots_in_field(f, &coeffs);
        let mut expected = vec![f.from_i64(3), f.from_i64(-5), f.from_i64(1 << 20)];
        expected.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(roots, expected);
        // repeated roots are reported once
        assert_eq!(
            roots_in_field(f, &poly(f, &[4, -4, 1])),
            vec![f.from_i64(2)]
        );
    }

    #[test]
    fn divisor_list() {
        let d: Vec<i64> = divisors(&BigInt::from(12))
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
