//! Integer, prime and polynomial primitives shared by the other modules.

mod poly;
mod sieve;

pub use poly::{dickson_poly, poly_eval_mod, poly_pair_dependent, IntPolynomial};
pub(crate) use poly::eval_reduced;
pub use sieve::{mobius_table, primes_up_to, MobiusTable, SpfSieve};

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as u64)
}

/// Table of inverses `1..p` modulo a prime `p`; entry 0 is 0.
pub fn inverse_table(p: u64) -> Vec<u64> {
    let p = p as usize;
    let mut inv = vec![0u64; p];
    if p > 1 {
        inv[1] = 1;
    }
    for k in 2..p {
        // inv[k] = -(p / k) * inv[p % k]
        inv[k] = ((p - p / k) as u64 * inv[p % k]) % p as u64;
    }
    inv
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(a | p)` for an odd prime `p`, via quadratic reciprocity.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    Ok(jacobi(a.rem_euclid(p as i64) as u64, p))
}

/// Jacobi symbol `(a | n)` for odd `n`.
pub(crate) fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        (a, n) = (n, a);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// The squarefree `d` with `n = d * m^2`, `sign(d) = sign(n)`.
pub fn squarefree_kernel(n: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("squarefree kernel of 0".into()));
    }
    let mut rest = n.unsigned_abs();
    let mut kernel = 1u64;
    let mut q = 2u64;
    while q * q <= rest {
        let mut e = 0;
        while rest % q == 0 {
            rest /= q;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    kernel *= rest;
    Ok(n.signum() * kernel as i64)
}

/// Lucas sequence `V_n(P, Q) = α^n + β^n` for the roots of `X^2 - P X + Q`.
pub fn lucas_v(n: u32, p: &BigInt, q: &BigInt) -> BigInt {
    let mut prev = BigInt::from(2);
    if n == 0 {
        return prev;
    }
    let mut cur = p.clone();
    for _ in 1..n {
        let next = p * &cur - q * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(2, 7).unwrap(), 1);
        assert_eq!(legendre_symbol(3, 7).unwrap(), -1);
        assert_eq!(legendre_symbol(14, 7).unwrap(), 0);
        assert_eq!(legendre_symbol(-1, 5).unwrap(), 1);
        assert_eq!(legendre_symbol(-1, 7).unwrap(), -1);
        assert!(legendre_symbol(1, 2).is_err());
        assert!(legendre_symbol(1, 9).is_err());
    }

    #[test]
    fn legendre_matches_euler_criterion() {
        for p in primes_up_to(100).into_iter().skip(1) {
            for a in -150i64..150 {
                let e = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let expected = match e {
                    0 => 0,
                    1 => 1,
                    x => {
                        assert_eq!(x, p - 1);
                        -1
                    }
                };
                assert_eq!(legendre_symbol(a, p).unwrap(), expected, "({a}|{p})");
            }
        }
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let primes = primes_up_to(100_000);
        let count = (0..=100_000u64).filter(|&n| is_prime(n)).count();
        assert_eq!(count, primes.len());
        assert!(primes.iter().all(|&q| is_prime(q)));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 101, 10007] {
            let table = inverse_table(p);
            for k in 1..p {
                assert_eq!(mul_mod(k, table[k as usize], p), 1);
                assert_eq!(inv_mod(k, p), Some(table[k as usize]));
            }
        }
        assert_eq!(inv_mod(4, 8), None);
    }

    #[test]
    fn squarefree_kernel_examples() {
        assert_eq!(squarefree_kernel(-16).unwrap(), -1);
        assert_eq!(squarefree_kernel(12).unwrap(), 3);
        assert_eq!(squarefree_kernel(-7).unwrap(), -7);
        assert_eq!(squarefree_kernel(1).unwrap(), 1);
        assert!(squarefree_kernel(0).is_err());
    }

    #[test]
    fn squarefree_kernel_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let n: i64 = rng.gen_range(-1_000_000..1_000_000);
            if n == 0 {
                continue;
            }
            let d = squarefree_kernel(n).unwrap();
            assert_eq!(d.signum(), n.signum());
            assert_eq!(n % d, 0);
            let m2 = n / d;
            let m = (m2 as f64).sqrt().round() as i64;
            assert_eq!(m * m, m2, "n = {n}, d = {d}");
            let abs = d.abs();
            assert!((2..).take_while(|q| q * q <= abs).all(|q| abs % (q * q) != 0));
        }
    }

    #[test]
    fn lucas_examples() {
        let b = BigInt::from;
        assert_eq!(lucas_v(0, &b(7), &b(-3)), b(2));
        assert_eq!(lucas_v(3, &b(1), &b(1)), b(-2));
        assert_eq!(lucas_v(2, &b(2), &b(5)), b(-6));
        assert_eq!(lucas_v(1, &b(9), &b(4)), b(9));
    }

    #[test]
    fn lucas_matches_floating_roots() {
        // roots of X^2 - P X + Q as complex numbers; V_n = α^n + β^n
        for p in -10i64..=10 {
            for q in -10i64..=10 {
                let disc = (p * p - 4 * q) as f64;
                let (re, im) = if disc >= 0.0 {
                    (0.0, 0.0)
                } else {
                    (p as f64 / 2.0, (-disc).sqrt() / 2.0)
                };
                for n in 0..=15u32 {
                    let expected = if disc >= 0.0 {
                        let s = disc.sqrt();
                        ((p as f64 + s) / 2.0).powi(n as i32) + ((p as f64 - s) / 2.0).powi(n as i32)
                    } else {
                        // 2 Re((re + i im)^n)
                        let r = (re * re + im * im).sqrt();
                        let theta = im.atan2(re);
                        2.0 * r.powi(n as i32) * (n as f64 * theta).cos()
                    };
                    let v = lucas_v(n, &BigInt::from(p), &BigInt::from(q));
                    let v: f64 = v.to_string().parse().unwrap();
                    let tol = 1e-6 * expected.abs().max(1.0);
                    assert!((v - expected).abs() <= tol, "V_{n}({p},{q}) = {v}, float {expected}");
                }
            }
        }
    }
}
