use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground field descriptor: the rationals or a prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Prime field of order `p`. The modulus must be prime and below 2^32 so that
    /// residue products fit in a `u64`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 {
            return Err(Error::BadField(format!("modulus {p} is too large")));
        }
        if !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElem::Modular {
                residue: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                FieldElem::Modular {
                    residue: r.to_u64().expect("residue fits in u64"),
                    modulus: *p,
                }
            }
        }
    }

    /// `num / den` reduced into this field. Fails when `den` vanishes in the field.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElem> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.from_bigint(num) / &d)
    }

    /// All elements of a prime field in residue order; `None` over the rationals.
    pub fn elements(&self) -> Option<Vec<FieldElem>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(
                (0..*p)
                    .map(|r| FieldElem::Modular {
                        residue: r,
                        modulus: *p,
                    })
                    .collect(),
            ),
        }
    }

    /// Random element: a uniform residue over `F_p`, a uniform integer in
    /// `[-bound, bound]` over the rationals.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElem {
        match self {
            Field::Rational => self.from_i64(rng.gen_range(-bound..=bound)),
            Field::Prime(p) => FieldElem::Modular {
                residue: rng.gen_range(0..*p),
                modulus: *p,
            },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Exact scalar. Rationals are kept in lowest terms with positive denominator
/// (guaranteed by `BigRational`); residues are kept in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Modular { residue: u64, modulus: u64 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rational,
            FieldElem::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Modular { residue, .. } => *residue == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Rational(q) => FieldElem::Rational(q.recip()),
            FieldElem::Modular { residue, modulus } => FieldElem::Modular {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut exp: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// The rational value, if this is a rational element.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rational(q) => Some(q),
            FieldElem::Modular { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElem::Rational(_) => None,
            FieldElem::Modular { residue, .. } => Some(*residue),
        }
    }

    fn check_same(&self, other: &FieldElem) -> Result<()> {
        let (a, b) = (self.field(), other.field());
        if a != b {
            return Err(Error::FieldMismatch(a, b));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check_same(other)?;
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul_unchecked(&inv))
    }

    fn add_unchecked(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (
                FieldElem::Modular {
                    residue: a,
                    modulus,
                },
                FieldElem::Modular { residue: b, .. },
            ) => FieldElem::Modular {
                residue: (a + b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }

    fn mul_unchecked(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (
                FieldElem::Modular {
                    residue: a,
                    modulus,
                },
                FieldElem::Modular { residue: b, .. },
            ) => FieldElem::Modular {
                residue: (a * b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }

    /// Canonical order: numeric over the rationals, residue order over `F_p`.
    pub fn canonical_cmp(&self, other: &FieldElem) -> Ordering {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => a.cmp(b),
            (FieldElem::Modular { residue: a, .. }, FieldElem::Modular { residue: b, .. }) => {
                a.cmp(b)
            }
            _ => panic!("{}", Error::FieldMismatch(self.field(), other.field())),
        }
    }

    /// Integer numerator/denominator view used when writing coefficients out.
    pub fn to_ratio_string(&self) -> String {
        match self {
            FieldElem::Rational(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Modular { residue, .. } => residue.to_string(),
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, FieldElem::Rational(q) if q.is_negative())
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratio_string())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(_) => write!(f, "{self}"),
            FieldElem::Modular { modulus, .. } => write!(f, "{self}%{modulus}"),
        }
    }
}

// Operators panic on mixed fields; the `checked_*` methods return the error instead.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(q) => FieldElem::Rational(-q),
            FieldElem::Modular { residue, modulus } => FieldElem::Modular {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// Serialized as its exact string form, e.g. `"-3/2"` or `"4"`.
impl Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_ratio_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_construction() {
        assert!(Field::prime(7).is_ok());
        assert!(matches!(Field::prime(6), Err(Error::BadField(_))));
        assert!(matches!(Field::prime(1), Err(Error::BadField(_))));
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let x = q.ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        let r = x.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn modular_inverse_and_negatives() {
        let f = Field::prime(5).unwrap();
        let two = f.from_i64(2);
        assert_eq!(two.inv().unwrap(), f.from_i64(3));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(-&two, f.from_i64(3));
        assert!(f.zero().inv().is_none());
        assert!(f.ratio(&BigInt::from(1), &BigInt::from(10)).is_err());
    }

    #[test]
    fn mixed_fields_are_an_error() {
        let a = Field::Rational.one();
        let b = Field::prime(3).unwrap().one();
        assert_eq!(
            a.checked_add(&b),
            Err(Error::FieldMismatch(Field::Rational, Field::Prime(3)))
        );
    }

    #[test]
    fn fermat_power() {
        let f = Field::prime(7).unwrap();
        for x in f.elements().unwrap() {
            assert_eq!(x.pow(7), x);
        }
    }
}
