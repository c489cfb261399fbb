//! Exact scalar fields: arbitrary-precision rationals and prime fields.
//!
//! All generic code in this crate is written against [`Field`]. The prime
//! modulus of `F_p` is only known at run time, so field constants are built
//! from a descriptor ([`Field::Desc`]) rather than from `num_traits::Zero`.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(FieldKind, FieldKind),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("{0} has no image in F_{1} (denominator divisible by p)")]
    NotRepresentable(String, u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Serializable tag naming a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    Prime { p: u64 },
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Run-time description of the field (`()` for Q, the modulus for F_p).
    type Desc: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(desc: &Self::Desc) -> Self;
    fn one(desc: &Self::Desc) -> Self;
    fn from_i64(n: i64, desc: &Self::Desc) -> Self;
    /// Image of a rational number; fails in F_p when p divides the denominator.
    fn from_rational(q: &BigRational, desc: &Self::Desc) -> Result<Self, FieldError>;
    fn desc(&self) -> Self::Desc;
    fn kind(desc: &Self::Desc) -> FieldKind;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Result<Self, FieldError>;

    fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.clone() * other.inv()?)
    }

    /// Parse `"n"` or `"n/d"`; the text is interpreted in the given field.
    fn parse(text: &str, desc: &Self::Desc) -> Result<Self, FieldError> {
        let q = parse_rational(text)?;
        Self::from_rational(&q, desc)
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational, FieldError> {
    let t = text.trim();
    let q = BigRational::from_str(t).map_err(|_| FieldError::Parse(text.to_string()))?;
    Ok(q)
}

/// Canonical text form of a rational: `"n"` or `"n/d"` with `d > 0`.
pub fn rational_text(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Field for BigRational {
    type Desc = ();

    fn zero(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(n: i64, _: &()) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(q: &BigRational, _: &()) -> Result<Self, FieldError> {
        Ok(q.clone())
    }
    fn desc(&self) {}
    fn kind(_: &()) -> FieldKind {
        FieldKind::Rational
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if Zero::is_zero(self) {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// Descriptor of a prime field; the modulus passed a primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, residue: i64) -> Fp {
        let r = (residue as i128).rem_euclid(self.p as i128) as u64;
        Fp {
            value: r,
            modulus: self.p,
        }
    }

    /// Elements in increasing residue order.
    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |v| Fp {
            value: v,
            modulus: self.p,
        })
    }
}

/// Element of `F_p`. Arithmetic between different moduli panics; use the
/// checked [`Scalar`] wrapper where the field of the operands is untrusted.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn residue(&self) -> u64 {
        self.value
    }
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    fn check(&self, other: &Fp) {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic between F_{} and F_{}",
            self.modulus, other.modulus
        );
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Fp {
            value: s as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp {
            value: mulmod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Field for Fp {
    type Desc = PrimeField;

    fn zero(desc: &PrimeField) -> Self {
        Fp {
            value: 0,
            modulus: desc.p,
        }
    }
    fn one(desc: &PrimeField) -> Self {
        Fp {
            value: 1 % desc.p,
            modulus: desc.p,
        }
    }
    fn from_i64(n: i64, desc: &PrimeField) -> Self {
        let r = (n as i128).rem_euclid(desc.p as i128) as u64;
        Fp {
            value: r,
            modulus: desc.p,
        }
    }
    fn from_rational(q: &BigRational, desc: &PrimeField) -> Result<Self, FieldError> {
        let p = BigInt::from(desc.p);
        let num = q.numer().mod_floor(&p).to_u64().expect("residue fits");
        let den = q.denom().mod_floor(&p).to_u64().expect("residue fits");
        let den = Fp {
            value: den,
            modulus: desc.p,
        };
        let inv = den
            .inv()
            .map_err(|_| FieldError::NotRepresentable(rational_text(q), desc.p))?;
        Ok(Fp {
            value: num,
            modulus: desc.p,
        } * inv)
    }
    fn desc(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }
    fn kind(desc: &PrimeField) -> FieldKind {
        FieldKind::Prime { p: desc.p }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // Fermat: a^(p-2)
        Ok(Fp {
            value: powmod(self.value, self.modulus - 2, self.modulus),
            modulus: self.modulus,
        })
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A scalar whose field is only known at run time. All binary operations
/// are checked: mixing Q with F_p, or two different primes, is an error.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Fp),
}

impl Scalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Prime(x) => FieldKind::Prime { p: x.modulus },
        }
    }

    pub fn parse(text: &str, kind: FieldKind) -> Result<Scalar, FieldError> {
        match kind {
            FieldKind::Rational => Ok(Scalar::Rational(parse_rational(text)?)),
            FieldKind::Prime { p } => Ok(Scalar::Prime(Fp::parse(text, &PrimeField::new(p)?)?)),
        }
    }

    fn pair<'a>(&'a self, other: &'a Scalar) -> Result<ScalarPair<'a>, FieldError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(ScalarPair::Q(a, b)),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => Ok(ScalarPair::P(*a, *b)),
            _ => Err(FieldError::Mismatch(self.kind(), other.kind())),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match self.pair(other)? {
            ScalarPair::Q(a, b) => Scalar::Rational(a + b),
            ScalarPair::P(a, b) => Scalar::Prime(a + b),
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match self.pair(other)? {
            ScalarPair::Q(a, b) => Scalar::Rational(a * b),
            ScalarPair::P(a, b) => Scalar::Prime(a * b),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime(a) => Scalar::Prime(-*a),
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(Field::inv(a)?),
            Scalar::Prime(a) => Scalar::Prime(a.inv()?),
        })
    }

    /// Equality that refuses to compare elements of different fields.
    pub fn try_eq(&self, other: &Scalar) -> Result<bool, FieldError> {
        Ok(match self.pair(other)? {
            ScalarPair::Q(a, b) => a == b,
            ScalarPair::P(a, b) => a == b,
        })
    }
}

enum ScalarPair<'a> {
    Q(&'a BigRational, &'a BigRational),
    P(Fp, Fp),
}

impl Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", rational_text(q)),
            Scalar::Prime(x) => write!(f, "{}", x.value),
        }
    }
}
