use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Largest admissible prime modulus. Products of two residues below this
/// bound fit in a `u64` without overflow.
pub const MAX_PRIME: u32 = (1 << 31) - 1;

/// The ground field: the rationals, or integers modulo a prime below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Constructs a prime-field tag, checking primality and the 2^31 bound.
    pub fn prime(p: u32) -> Result<Field, ExactError> {
        if p > MAX_PRIME {
            return Err(ExactError::PrimeTooLarge(p));
        }
        if !is_prime_u32(p) {
            return Err(ExactError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod { p, value: 0 },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, x: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(x))),
            Field::Prime(p) => {
                let p64 = i64::from(p);
                let v = ((x % p64) + p64) % p64;
                Scalar::Mod { p, value: v as u32 }
            }
        }
    }

    /// Every nonzero element of the field, in canonical order. Only available
    /// for prime fields.
    pub fn nonzero_elements(self) -> Vec<Scalar> {
        match self {
            Field::Rational => panic!("nonzero_elements requires a finite field"),
            Field::Prime(p) => (1..p).map(|v| Scalar::Mod { p, value: v }).collect(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    let n64 = u64::from(n);
    while d * d <= n64 {
        if n64 % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element: a reduced rational with positive denominator, or
/// a residue in `[0, p)` for a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { p: u32, value: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Field {
        let f = self.field();
        assert_eq!(f, other.field(), "mixed-field arithmetic is rejected");
        f
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.same_field(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { p, value: a }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                p: *p,
                value: ((u64::from(*a) + u64::from(*b)) % u64::from(*p)) as u32,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.same_field(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { p, value: a }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                p: *p,
                value: ((u64::from(*a) * u64::from(*b)) % u64::from(*p)) as u32,
            },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { p, value } => Scalar::Mod {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { p, value } => Scalar::Mod {
                p: *p,
                value: pow_mod(u64::from(*value), u64::from(*p) - 2, u64::from(*p)) as u32,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        Some(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let field = self.field();
        if e == 0 {
            return field.one();
        }
        let base = if e < 0 {
            self.inv().expect("zero has no negative power")
        } else {
            self.clone()
        };
        let mut acc = field.one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Canonical residue for prime-field elements.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Mod { value, .. } => Some(*value),
        }
    }

    /// Parses a scalar in the given field: `"a/b"` or `"a"` over the
    /// rationals, a canonical residue over a prime field.
    pub fn parse(field: Field, text: &str) -> Result<Scalar, ExactError> {
        let text = text.trim();
        match field {
            Field::Rational => {
                let mk_err = || ExactError::BadScalar {
                    text: text.to_owned(),
                    field,
                };
                if let Some((num, den)) = text.split_once('/') {
                    let n = BigInt::from_str(num.trim()).map_err(|_| mk_err())?;
                    let d = BigInt::from_str(den.trim()).map_err(|_| mk_err())?;
                    if d.is_zero() {
                        return Err(mk_err());
                    }
                    Ok(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    let n = BigInt::from_str(text).map_err(|_| mk_err())?;
                    Ok(Scalar::Rat(BigRational::from_integer(n)))
                }
            }
            Field::Prime(_) => {
                let v = i64::from_str(text).map_err(|_| ExactError::BadScalar {
                    text: text.to_owned(),
                    field,
                })?;
                Ok(field.from_i64(v))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> Ordering {
        self.same_field(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => a.cmp(b),
            _ => unreachable!(),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
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

impl Scalar {
    /// True for negative rationals; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }
}
