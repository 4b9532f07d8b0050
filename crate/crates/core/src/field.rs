//! Exact scalar fields: arbitrary-precision rationals and small prime fields.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::echelon;

/// An exact field. All arithmetic is exact; there is no floating point anywhere.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// 0 for the rationals, p for GF(p).
    fn characteristic() -> u64;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Brings `rows` (each of length `ncols`) to reduced row echelon form in place and
    /// returns the pivot columns. Zero rows end up at the bottom.
    fn reduce_rows(rows: &mut [Vec<Self>], ncols: usize) -> Vec<usize> {
        echelon::gauss_jordan(rows, ncols)
    }

    /// Rank of the row list; may be cheaper than a full reduction.
    fn rank_of_rows(rows: &[Vec<Self>], ncols: usize) -> usize {
        let mut work = rows.to_vec();
        Self::reduce_rows(&mut work, ncols).len()
    }
}

/// A field with finitely many elements, listed in a fixed order.
pub trait FiniteField: Field {
    fn order() -> u64;
    fn elements() -> Vec<Self>;
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// Exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn from_integer(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    /// Parses `"a"` or `"a/b"`, accepting any representation of the value
    /// (non-reduced fractions, `+` signs, leading zeros).
    pub fn parse_lenient(s: &str) -> Result<Self, ParseRationalError> {
        let (num, den) = split_fraction(s)?;
        let num: BigInt = parse_int(num, s, true)?;
        let den: BigInt = match den {
            Some(d) => parse_int(d, s, true)?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational::from_big(num, den))
    }
}

/// Error produced when parsing a rational entry.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("bad rational syntax {0:?}")]
    Syntax(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("non-canonical rational {given:?} (canonical form is {canonical:?})")]
    NonCanonical { given: String, canonical: String },
}

fn split_fraction(s: &str) -> Result<(&str, Option<&str>), ParseRationalError> {
    let mut parts = s.splitn(2, '/');
    let num = parts.next().unwrap_or("");
    let den = parts.next();
    if let Some(d) = den {
        if d.contains('/') {
            return Err(ParseRationalError::Syntax(s.to_string()));
        }
    }
    Ok((num, den))
}

fn parse_int(part: &str, whole: &str, allow_plus: bool) -> Result<BigInt, ParseRationalError> {
    let digits = part
        .strip_prefix('-')
        .or_else(|| {
            if allow_plus {
                part.strip_prefix('+')
            } else {
                None
            }
        })
        .unwrap_or(part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Syntax(whole.to_string()));
    }
    part.parse::<BigInt>()
        .map_err(|_| ParseRationalError::Syntax(whole.to_string()))
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Strict parse: only the canonical string of a value is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = Rational::parse_lenient(s)?;
        let canonical = value.to_string();
        if canonical != s {
            return Err(ParseRationalError::NonCanonical {
                given: s.to_string(),
                canonical,
            });
        }
        Ok(value)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident) => {
        impl $trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                $ty($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Rational, Add, add);
forward_binop!(Rational, Sub, sub);
forward_binop!(Rational, Mul, mul);
forward_binop!(Rational, Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn characteristic() -> u64 {
        0
    }

    fn reduce_rows(rows: &mut [Vec<Self>], ncols: usize) -> Vec<usize> {
        echelon::bareiss_rref(rows, ncols)
    }

    fn rank_of_rows(rows: &[Vec<Self>], ncols: usize) -> usize {
        echelon::bareiss_rank(rows, ncols)
    }
}

/// Clears denominators of a rational row, returning the primitive-free integer row
/// `lcm(denominators) * row`.
pub(crate) fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// Residue modulo the prime `P`, always stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;

const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u64> Fp<P> {
    const CHECK: () = assert!(
        is_prime(P) && P < (1 << 31),
        "modulus must be a prime below 2^31"
    );

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }

    /// Image of a rational under reduction mod `P`; `None` if `P` divides the denominator.
    pub fn from_rational(r: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = r.numer().mod_floor(&p).to_u64().unwrap_or(0);
        let den = r.denom().mod_floor(&p).to_u64().unwrap_or(0);
        let den = Fp::<P>(den).inv()?;
        Some(Fp::<P>(num) * den)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in GF(p)")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn one() -> Self {
        Fp::new(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn characteristic() -> u64 {
        P
    }
}

impl<const P: u64> FiniteField for Fp<P> {
    fn order() -> u64 {
        P
    }
    fn elements() -> Vec<Self> {
        (0..P as i64).map(Fp::new).collect()
    }
}
