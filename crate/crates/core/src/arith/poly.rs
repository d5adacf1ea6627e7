//! Exact integer-coefficient polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Polynomial with arbitrary-precision integer coefficients, constant term first.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient is non-zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The polynomial `t`.
    pub fn identity() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let m = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c % &m;
                let r = if r.is_negative() { r + &m } else { r };
                r.to_u64().expect("residue fits in u64")
            })
            .collect()
    }
}

/// `f(x) mod p` by Horner's rule with every step reduced mod `p`.
pub fn poly_eval_mod(f: &IntPolynomial, x: i64, p: u64) -> u64 {
    eval_reduced(&f.reduce_mod(p), x.rem_euclid(p as i64) as u64, p)
}

/// Horner evaluation of already-reduced coefficients; `x < p`, `p < 2^32`.
pub(crate) fn eval_reduced(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Whether `f` and `g` are linearly dependent over the rationals.
pub fn poly_pair_dependent(f: &IntPolynomial, g: &IntPolynomial) -> bool {
    if f.is_zero() || g.is_zero() {
        return true;
    }
    if f.degree() != g.degree() {
        return false;
    }
    // rank <= 1 iff every 2x2 minor of the coefficient matrix vanishes
    let (fc, gc) = (f.coeffs(), g.coeffs());
    let lead = fc.len() - 1;
    (0..fc.len()).all(|i| &fc[i] * &gc[lead] == &fc[lead] * &gc[i])
}

/// Dickson polynomial `D_n` with `x^n + x^-n = D_n(x + 1/x)`.
pub fn dickson_poly(n: u32) -> IntPolynomial {
    let y = IntPolynomial::identity();
    let mut prev = IntPolynomial::constant(2);
    if n == 0 {
        return prev;
    }
    let mut cur = y.clone();
    for _ in 1..n {
        let next = y.mul(&cur).sub(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

impl fmt::Display for IntPolynomial {
    /// Comma-separated decimal coefficients, constant term first; zero is the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(Self::zero());
        }
        s.split(',')
            .map(|tok| {
                if tok.is_empty() || tok.trim() != tok {
                    return Err(Error::Parse(format!("bad coefficient {tok:?} in {s:?}")));
                }
                tok.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

impl From<Vec<i64>> for IntPolynomial {
    fn from(v: Vec<i64>) -> Self {
        Self::from_i64s(&v)
    }
}
