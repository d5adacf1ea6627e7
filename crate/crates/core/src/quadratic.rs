//! Imaginary quadratic fields and the Frobenius-field identity.
//!
//! For `π` a root of `X^2 - a X + p`, the quantity `(π^n + π̄^n)^2 / (π π̄)^n` equals
//! `V_n(a, p)^2 / p^n` and also `P_n(a^2 / p)` where `P_n(X) = D_n(X - 2) + 2`
//! and `D_n` is the Dickson polynomial. Both sides are computed exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use serde::Serialize;

use crate::arith::{dickson_poly, gcd, lucas_v, squarefree_kernel, IntPolynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImaginaryQuadraticField {
    /// Squarefree negative integer with `K = Q(√d)`.
    pub d: i64,
    /// Field discriminant.
    pub disc: i64,
    pub class_number: u64,
    /// Number of roots of unity in the ring of integers.
    pub unit_count: u32,
}

pub fn field_discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

pub fn field_of(d: i64) -> Result<ImaginaryQuadraticField> {
    if d >= 0 {
        return Err(Error::Domain(format!("{d} is not negative")));
    }
    if squarefree_kernel(d)? != d {
        return Err(Error::Domain(format!("{d} is not squarefree")));
    }
    let disc = field_discriminant(d);
    let unit_count = match disc {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    Ok(ImaginaryQuadraticField {
        d,
        disc,
        class_number: class_number(disc)?,
        unit_count,
    })
}

/// Reduced primitive positive definite forms `(a, b, c)` of discriminant `disc`.
pub fn reduced_forms(disc: i64) -> Result<Vec<(i64, i64, i64)>> {
    if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(Error::Domain(format!(
            "{disc} is not a negative discriminant (must be < 0 and ≡ 0, 1 mod 4)"
        )));
    }
    let n = -disc;
    let mut forms = Vec::new();
    let mut a = 1i64;
    // a <= c and |b| <= a give 3 a^2 <= |D|
    while 3 * a * a <= n {
        for b in (1 - a)..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if gcd(gcd(a as u64, b.unsigned_abs()), c as u64) == 1 {
                forms.push((a, b, c));
            }
        }
        a += 1;
    }
    Ok(forms)
}

/// Class number of the order of discriminant `disc`, by counting reduced forms.
pub fn class_number(disc: i64) -> Result<u64> {
    Ok(reduced_forms(disc)?.len() as u64)
}

/// `P(X) = D_hw(X - 2) + 2`, so that `(a^hw + b^hw)^2 / (ab)^hw = P((a + b)^2 / (ab))`.
pub fn lemma_poly(hw: u32) -> Result<IntPolynomial> {
    if hw == 0 {
        return Err(Error::Domain("hw must be at least 1".into()));
    }
    let shift = IntPolynomial::from_i64s(&[-2, 1]);
    Ok(dickson_poly(hw)
        .compose(&shift)
        .add(&IntPolynomial::constant(2)))
}

/// Squarefree part of `a_p^2 - 4p`, i.e. the `d` with `Q(√(a_p^2 - 4p)) = Q(√d)`.
pub fn frobenius_field(a_p: i64, p: u64) -> Result<i64> {
    if a_p == 0 {
        return Err(Error::SupersingularExcluded);
    }
    let n = a_p * a_p - 4 * p as i64;
    if n >= 0 {
        return Err(Error::NotImaginary(n));
    }
    squarefree_kernel(n)
}

/// Checks `p^hw · P(a_p^2 / p) = V_hw(a_p, p)^2` in exact rational arithmetic.
pub fn lucas_lemma_check(a_p: i64, p: u64, hw: u32) -> Result<bool> {
    let poly = lemma_poly(hw)?;
    let p_big = BigInt::from(p);
    let x = BigRational::new(BigInt::from(a_p * a_p), p_big.clone());
    let lhs = BigRational::from_integer(Pow::pow(&p_big, hw)) * poly.eval_rational(&x);
    let v = lucas_v(hw, &BigInt::from(a_p), &p_big);
    Ok(lhs == BigRational::from_integer(&v * &v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_prime, legendre_symbol, primes_up_to};
    use crate::elliptic::{family_validate, trace_table};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fields() {
        let f = field_of(-1).unwrap();
        assert_eq!((f.disc, f.class_number, f.unit_count), (-4, 1, 4));
        let f = field_of(-3).unwrap();
        assert_eq!((f.disc, f.class_number, f.unit_count), (-3, 1, 6));
        let f = field_of(-23).unwrap();
        assert_eq!((f.disc, f.class_number, f.unit_count), (-23, 3, 2));
        let f = field_of(-5).unwrap();
        assert_eq!((f.disc, f.class_number, f.unit_count), (-20, 2, 2));
        assert!(field_of(2).is_err());
        assert!(field_of(-4).is_err());
        assert!(field_of(0).is_err());
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(reduced_forms(-4).unwrap(), vec![(1, 0, 1)]);
        assert_eq!(class_number(-23).unwrap(), 3);
        assert_eq!(reduced_forms(-23).unwrap(), vec![(1, 1, 6), (2, -1, 3), (2, 1, 3)]);
        assert_eq!(class_number(-47).unwrap(), 5);
        for d in [-3, -4, -7, -8, -11, -19, -43, -67, -163] {
            assert_eq!(class_number(d).unwrap(), 1, "D = {d}");
        }
        // non-fundamental: D = -12 has the single primitive form (1, 0, 3)
        assert_eq!(class_number(-12).unwrap(), 1);
        assert!(class_number(-5).is_err());
        assert!(class_number(5).is_err());
    }

    #[test]
    fn reduced_forms_have_right_discriminant() {
        for n in 3..2000i64 {
            let d = -n;
            if !matches!(d.rem_euclid(4), 0 | 1) {
                continue;
            }
            for (a, b, c) in reduced_forms(d).unwrap() {
                assert_eq!(b * b - 4 * a * c, d);
                assert!(b.abs() <= a && a <= c);
            }
        }
    }

    #[test]
    fn lemma_poly_examples() {
        assert_eq!(lemma_poly(1).unwrap(), IntPolynomial::from_i64s(&[0, 1]));
        assert_eq!(lemma_poly(2).unwrap(), IntPolynomial::from_i64s(&[4, -4, 1]));
        assert_eq!(lemma_poly(3).unwrap(), IntPolynomial::from_i64s(&[0, 9, -6, 1]));
        for hw in 1..=12 {
            let p = lemma_poly(hw).unwrap();
            assert_eq!(p.degree(), hw as isize);
            assert_eq!(p.leading_coefficient(), Some(&BigInt::from(1)));
        }
        assert!(lemma_poly(0).is_err());
    }

    #[test]
    fn lemma_poly_symbolic_substitution() {
        // (a^n + b^n)^2 / (ab)^n = P((a + b)^2 / (ab)) on rational points
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        for (a, b) in [(r(1, 1), r(2, 1)), (r(1, 1), r(1, 1)), (r(-3, 2), r(5, 7))] {
            for hw in 1..=10u32 {
                let ab = &a * &b;
                let lhs = Pow::pow(a.clone(), hw) + Pow::pow(b.clone(), hw);
                let lhs = &lhs * &lhs / Pow::pow(ab.clone(), hw);
                let x = (&a + &b) * (&a + &b) / &ab;
                assert_eq!(lemma_poly(hw).unwrap().eval_rational(&x), lhs);
            }
        }
    }

    #[test]
    fn frobenius_field_examples() {
        assert_eq!(frobenius_field(2, 5).unwrap(), -1);
        assert_eq!(frobenius_field(-3, 5).unwrap(), -11);
        assert_eq!(frobenius_field(0, 7), Err(Error::SupersingularExcluded));
        assert_eq!(frobenius_field(5, 5), Err(Error::NotImaginary(5)));
    }

    #[test]
    fn lucas_lemma_examples() {
        assert!(lucas_lemma_check(2, 5, 2).unwrap());
        assert!(lucas_lemma_check(1, 7, 1).unwrap());
        assert!(lucas_lemma_check(3, 11, 3).unwrap());
    }

    #[test]
    fn lucas_lemma_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let primes: Vec<u64> = primes_up_to(1000);
        for _ in 0..100 {
            let p = primes[rng.gen_range(0..primes.len())];
            let bound = (2.0 * (p as f64).sqrt()).floor() as i64;
            let mut a = rng.gen_range(-bound..=bound);
            if a * a >= 4 * p as i64 {
                a = a.signum() * (a.abs() - 1);
            }
            let hw = rng.gen_range(1..=12);
            assert!(lucas_lemma_check(a, p, hw).unwrap(), "a={a} p={p} hw={hw}");
        }
    }

    #[test]
    fn frobenius_fields_split_p() {
        let f = family_validate(
            IntPolynomial::from_i64s(&[0, 1]),
            IntPolynomial::from_i64s(&[1]),
        )
        .unwrap();
        for p in primes_up_to(500).into_iter().filter(|&p| p >= 5) {
            assert!(is_prime(p));
            for (_, a) in trace_table(&f, p).unwrap().good() {
                if a == 0 {
                    continue;
                }
                let d = frobenius_field(a as i64, p).unwrap();
                let n = a as i64 * a as i64 - 4 * p as i64;
                let m2 = n / d;
                assert_eq!(n % d, 0);
                let m = (m2 as f64).sqrt().round() as i64;
                assert_eq!(m * m, m2);
                let disc = field_discriminant(d);
                if disc % p as i64 != 0 {
                    assert_eq!(legendre_symbol(disc, p).unwrap(), 1, "p={p} a={a} D={disc}");
                }
            }
        }
    }
}
