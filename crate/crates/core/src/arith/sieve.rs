//! Linear sieves: smallest prime factor, Möbius function, prime lists.

use crate::error::{Error, Result};

/// Smallest-prime-factor table for `0..=n` built by a linear sieve.
///
/// `spf[k]` is the least prime dividing `k` for `k >= 2`, and `0` for `k < 2`.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfSieve {
    pub fn new(n: usize) -> Self {
        assert!(n < u32::MAX as usize, "sieve bound must fit in u32");
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        for k in 2..=n {
            if spf[k] == 0 {
                spf[k] = k as u32;
                primes.push(k as u32);
            }
            let sk = spf[k];
            for &q in &primes {
                let m = q as usize * k;
                if q > sk || m > n {
                    break;
                }
                spf[m] = q;
            }
        }
        Self { spf, primes }
    }

    pub fn bound(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn smallest_factor(&self, k: usize) -> u32 {
        self.spf[k]
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Distinct prime divisors of `k`, ascending.
    pub fn distinct_prime_factors(&self, mut k: usize) -> Vec<u32> {
        let mut out = Vec::new();
        while k > 1 {
            let q = self.spf[k];
            out.push(q);
            while k % q as usize == 0 {
                k /= q as usize;
            }
        }
        out
    }

    /// Möbius function read off the factorization.
    pub fn mobius(&self, mut k: usize) -> i8 {
        let mut mu = 1i8;
        while k > 1 {
            let q = self.spf[k] as usize;
            k /= q;
            if k % q == 0 {
                return 0;
            }
            mu = -mu;
        }
        mu
    }
}

/// Table of μ(k) for `1 <= k <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    // values[0] is a placeholder so that values[k] = μ(k).
    values: Vec<i8>,
}

impl MobiusTable {
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    /// μ(k). Panics if `k` is zero or beyond the table.
    pub fn get(&self, k: usize) -> i8 {
        assert!(k >= 1, "μ is defined on positive integers");
        self.values[k]
    }

    /// The values μ(1), ..., μ(n).
    pub fn values(&self) -> &[i8] {
        &self.values[1..]
    }
}

pub fn mobius_table(n: usize) -> Result<MobiusTable> {
    if n == 0 {
        return Err(Error::Domain("mobius_table requires n >= 1".into()));
    }
    let sieve = SpfSieve::new(n);
    let mut values = vec![0i8; n + 1];
    values[1] = 1;
    for k in 2..=n {
        let q = sieve.smallest_factor(k) as usize;
        let rest = k / q;
        values[k] = if rest % q == 0 { 0 } else { -values[rest] };
    }
    Ok(MobiusTable { values })
}

/// All primes `<= n`, ascending (sieve of Eratosthenes over odd numbers).
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = usize::try_from(n).expect("prime bound exceeds address space");
    // composite[i] describes the odd number 2i + 1
    let half = (n - 1) / 2 + 1;
    let mut composite = vec![false; half];
    let mut primes = vec![2u64];
    let mut i = 1;
    while i < half {
        if !composite[i] {
            let q = 2 * i + 1;
            primes.push(q as u64);
            let mut j = q * q / 2;
            while j < half {
                composite[j] = true;
                j += q;
            }
        }
        i += 1;
    }
    primes
}
