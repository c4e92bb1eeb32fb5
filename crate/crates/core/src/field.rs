//! Exact scalars: arbitrary-precision rationals and residues modulo a
//! word-sized prime.
//!
//! Every element carries the field it lives in, so arithmetic between
//! elements of different fields is a programming error and panics, the same
//! way mismatched shapes panic in most array libraries. Inputs coming from
//! files are validated before any arithmetic happens.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The scalar field: either Q or GF(p) for a prime `p` that fits a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    modulus: Option<u64>,
}

impl FieldSpec {
    pub const fn rationals() -> Self {
        FieldSpec { modulus: None }
    }

    /// GF(p). Primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { modulus: Some(p) })
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_rationals(&self) -> bool {
        self.modulus.is_none()
    }

    pub fn zero(&self) -> FieldElem {
        match self.modulus {
            None => FieldElem::Rational(BigRational::zero()),
            Some(p) => FieldElem::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        match self.modulus {
            None => FieldElem::Rational(BigRational::from_integer(BigInt::from(v))),
            Some(p) => FieldElem::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Residue `v mod p`; for Q this is just the integer `v`.
    pub fn from_u64(&self, v: u64) -> FieldElem {
        match self.modulus {
            None => FieldElem::Rational(BigRational::from_integer(BigInt::from(v))),
            Some(p) => FieldElem::Residue {
                value: v % p,
                modulus: p,
            },
        }
    }

    /// Parses the canonical textual form. Rationals are `n` or `n/d` with
    /// `d > 1` and `gcd(n, d) = 1`; residues are decimal `0..p`.
    pub fn parse(&self, s: &str) -> Result<FieldElem> {
        let bad = |reason: &str| Error::Scalar {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        match self.modulus {
            Some(p) => {
                if !is_canonical_natural(s) {
                    return Err(bad("expected a decimal residue"));
                }
                let v: u64 = s.parse().map_err(|_| bad("residue out of range"))?;
                if v >= p {
                    return Err(bad("residue not reduced modulo p"));
                }
                Ok(FieldElem::Residue { value: v, modulus: p })
            }
            None => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (s, None),
                };
                let digits = num.strip_prefix('-').unwrap_or(num);
                if !is_canonical_natural(digits) || num == "-0" {
                    return Err(bad("malformed numerator"));
                }
                let n: BigInt = num.parse().map_err(|_| bad("malformed numerator"))?;
                let d: BigInt = match den {
                    None => BigInt::one(),
                    Some(d) => {
                        if !is_canonical_natural(d) {
                            return Err(bad("malformed denominator"));
                        }
                        let d: BigInt = d.parse().map_err(|_| bad("malformed denominator"))?;
                        if d.is_zero() {
                            return Err(bad("zero denominator"));
                        }
                        if d.is_one() {
                            return Err(bad("denominator 1 must be omitted"));
                        }
                        if n.is_zero() {
                            return Err(bad("zero must be written as 0"));
                        }
                        if !n.gcd(&d).is_one() {
                            return Err(bad("non-canonical rational (not reduced)"));
                        }
                        d
                    }
                };
                Ok(FieldElem::Rational(BigRational::new_raw(n, d)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "Q"),
            Some(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_canonical_natural(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// One exact scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldElem {
    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElem::Rational(_) => FieldSpec::rationals(),
            FieldElem::Residue { modulus, .. } => FieldSpec {
                modulus: Some(*modulus),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Rational(q) => FieldElem::Rational(q.recip()),
            FieldElem::Residue { value, modulus } => FieldElem::Residue {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// The residue as an integer, for GF(p) elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElem::Residue { value, .. } => Some(*value),
            FieldElem::Rational(_) => None,
        }
    }

    /// Rational value as a small integer pair, when it fits. Test helper.
    pub fn as_ratio_i64(&self) -> Option<(i64, i64)> {
        match self {
            FieldElem::Rational(q) => Some((q.numer().to_i64()?, q.denom().to_i64()?)),
            FieldElem::Residue { .. } => None,
        }
    }
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

#[track_caller]
fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "arithmetic between GF({a}) and GF({b})");
    a
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add<&FieldElem> for &FieldElem {
    type Output = FieldElem;

    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Residue { value: a, modulus: p }, FieldElem::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                let s = a + b;
                FieldElem::Residue {
                    value: if s >= p { s - p } else { s },
                    modulus: p,
                }
            }
            _ => panic!("arithmetic between Q and GF(p)"),
        }
    }
}

impl Sub<&FieldElem> for &FieldElem {
    type Output = FieldElem;

    fn sub(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a - b),
            (FieldElem::Residue { value: a, modulus: p }, FieldElem::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                FieldElem::Residue {
                    value: if a >= b { a - b } else { a + p - b },
                    modulus: p,
                }
            }
            _ => panic!("arithmetic between Q and GF(p)"),
        }
    }
}

impl Mul<&FieldElem> for &FieldElem {
    type Output = FieldElem;

    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Residue { value: a, modulus: p }, FieldElem::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                FieldElem::Residue {
                    value: mod_mul(*a, *b, p),
                    modulus: p,
                }
            }
            _ => panic!("arithmetic between Q and GF(p)"),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Residue { value, modulus } => FieldElem::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
        impl $tr<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}
