//! Farey fractions of order `T` and their distribution in residue classes mod `p`.
//!
//! A Farey fraction of order `T` is a coprime pair `(α, β)` with `1 <= α, β <= T`.
//! For a prime `p`, the residue histogram counts pairs with `p ∤ β` by the class
//! of `α β^{-1} mod p`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, inverse_table, is_prime, mobius_table, pow_mod, SpfSieve};
use crate::error::{Error, Result};

/// `6 / π^2 = 1 / ζ(2)`, the density of coprime pairs.
pub const COPRIME_DENSITY: f64 = 6.0 / (PI * PI);

/// Largest order accepted by the brute-force oracle.
pub const ORACLE_MAX_ORDER: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoprimePair {
    pub alpha: u64,
    pub beta: u64,
}

impl CoprimePair {
    /// Checked constructor; `None` unless both entries are positive and coprime.
    pub fn new(alpha: u64, beta: u64) -> Option<Self> {
        (alpha >= 1 && beta >= 1 && gcd(alpha, beta) == 1).then_some(Self { alpha, beta })
    }

    /// The residue `α β^{-1} mod p`, or `None` when `p | β`.
    pub fn residue_mod(&self, p: u64) -> Option<u64> {
        if self.beta % p == 0 {
            return None;
        }
        let inv = crate::arith::inv_mod(self.beta % p, p)?;
        Some(crate::arith::mul_mod(self.alpha % p, inv, p))
    }
}

/// `counts[v]` = number of Farey fractions of order `t_order` with `p ∤ β` congruent to `v` mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueHistogram {
    pub p: u64,
    pub t_order: u64,
    pub counts: Vec<u64>,
}

impl ResidueHistogram {
    /// `(6/π^2) T^2 / p`.
    pub fn main_term(&self) -> f64 {
        main_term(self.t_order, self.p)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `v,count` rows followed by a `# T=.. p=.. main_term=..` footer.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("v,count\n");
        for (v, c) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{v},{c}");
        }
        let _ = writeln!(
            out,
            "# T={} p={} main_term={}",
            self.t_order,
            self.p,
            self.main_term()
        );
        out
    }
}

pub fn main_term(t: u64, p: u64) -> f64 {
    COPRIME_DENSITY * (t as f64) * (t as f64) / p as f64
}

fn check_order(t: u64) -> Result<()> {
    if t == 0 {
        return Err(Error::Domain("Farey order T must be at least 1".into()));
    }
    Ok(())
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    Ok(())
}

/// `#F(T) = Σ_{d <= T} μ(d) ⌊T/d⌋^2`.
pub fn count_coprime_pairs(t: u64) -> Result<u64> {
    check_order(t)?;
    let mu = mobius_table(t as usize)?;
    let total: i128 = (1..=t)
        .map(|d| {
            let q = (t / d) as i128;
            mu.get(d as usize) as i128 * q * q
        })
        .sum();
    Ok(total as u64)
}

/// Iterator over Farey fractions of a given order in `(β, α)` lexicographic order.
#[derive(Debug, Clone)]
pub struct CoprimePairs {
    t: u64,
    beta: u64,
    alpha: u64,
    sieve: SpfSieve,
    // blocked[α] is set when gcd(α, beta) > 1
    blocked: Vec<bool>,
}

impl CoprimePairs {
    fn load_beta(&mut self) {
        self.blocked.iter_mut().for_each(|b| *b = false);
        for q in self.sieve.distinct_prime_factors(self.beta as usize) {
            for m in (q as usize..=self.t as usize).step_by(q as usize) {
                self.blocked[m] = true;
            }
        }
    }
}

impl Iterator for CoprimePairs {
    type Item = CoprimePair;

    fn next(&mut self) -> Option<CoprimePair> {
        while self.beta <= self.t {
            while self.alpha <= self.t {
                let alpha = self.alpha;
                self.alpha += 1;
                if !self.blocked[alpha as usize] {
                    return Some(CoprimePair { alpha, beta: self.beta });
                }
            }
            self.beta += 1;
            self.alpha = 1;
            if self.beta <= self.t {
                self.load_beta();
            }
        }
        None
    }
}

pub fn enumerate_coprime_pairs(t: u64) -> Result<CoprimePairs> {
    check_order(t)?;
    let mut it = CoprimePairs {
        t,
        beta: 1,
        alpha: 1,
        sieve: SpfSieve::new(t as usize),
        blocked: vec![false; t as usize + 1],
    };
    it.load_beta();
    Ok(it)
}

/// Residue histogram by a single pass over denominators.
///
/// For each `β` with `p ∤ β`, the numerators coprime to `β` are found by striking out
/// multiples of the prime factors of `β`, and the class `α β^{-1}` advances by
/// `β^{-1}` as `α` increments. Denominators are split across the current rayon pool.
pub fn residue_histogram(t: u64, p: u64) -> Result<ResidueHistogram> {
    check_order(t)?;
    check_prime(p)?;
    let sieve = SpfSieve::new(t as usize);
    let inv = inverse_table(p);
    let n = t as usize;
    let pu = p as usize;

    let counts = (1..=n)
        .into_par_iter()
        .filter(|beta| beta % pu != 0)
        .fold(
            || (vec![0u64; pu], vec![false; n + 1]),
            |(mut counts, mut blocked), beta| {
                let factors = sieve.distinct_prime_factors(beta);
                for &q in &factors {
                    for m in (q as usize..=n).step_by(q as usize) {
                        blocked[m] = true;
                    }
                }
                let step = inv[beta % pu] as usize;
                let mut v = step;
                for is_blocked in &blocked[1..] {
                    if !is_blocked {
                        counts[v] += 1;
                    }
                    v += step;
                    if v >= pu {
                        v -= pu;
                    }
                }
                for &q in &factors {
                    for m in (q as usize..=n).step_by(q as usize) {
                        blocked[m] = false;
                    }
                }
                (counts, blocked)
            },
        )
        .map(|(counts, _)| counts)
        .reduce(
            || vec![0u64; pu],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    Ok(ResidueHistogram { p, t_order: t, counts })
}

/// Brute-force histogram: double loop, per-pair gcd, inverses by Fermat.
pub fn residue_histogram_oracle(t: u64, p: u64) -> Result<ResidueHistogram> {
    check_order(t)?;
    check_prime(p)?;
    if t > ORACLE_MAX_ORDER {
        return Err(Error::TooLarge {
            what: "T",
            value: t,
            limit: ORACLE_MAX_ORDER,
        });
    }
    let mut counts = vec![0u64; p as usize];
    for beta in 1..=t {
        if beta % p == 0 {
            continue;
        }
        let inv = pow_mod(beta, p - 2, p);
        for alpha in 1..=t {
            if gcd(alpha, beta) == 1 {
                counts[((alpha % p) * inv % p) as usize] += 1;
            }
        }
    }
    Ok(ResidueHistogram { p, t_order: t, counts })
}

/// `#{α in [1, w] : α ≡ c (mod p)}` for `c` in `[0, p)`.
fn count_in_class(w: u64, c: u64, p: u64) -> u64 {
    if c == 0 {
        w / p
    } else if c <= w {
        (w - c) / p + 1
    } else {
        0
    }
}

/// `M_{W,p,d}(v)`: pairs `1 <= α, β <= W` with `d | α`, `d | β`, `p ∤ β` and `α ≡ v β (mod p)`.
pub fn m_count(w: u64, p: u64, d: u64, v: u64) -> Result<u64> {
    check_prime(p)?;
    if d == 0 {
        return Err(Error::Domain("divisor d must be positive".into()));
    }
    if v >= p {
        return Err(Error::Domain(format!("residue {v} not in [0, {p})")));
    }
    if d % p == 0 {
        return Ok(0);
    }
    let wd = w / d;
    Ok((1..=wd)
        .filter(|b| b % p != 0)
        .map(|b| count_in_class(wd, (v * (b % p)) % p, p))
        .sum())
}

/// `M_{W,p,1}(v)` for every `v` in `[0, p)` at once.
///
/// With `W = q p + r`, every class `c ≠ 0` holds `q + [c <= r]` integers of `[1, W]`,
/// so for `v ≠ 0`: `M(v) = q^2 (p-1) + 2 q r + #{b <= r : (v b mod p) <= r}`.
pub fn m_counts_unit(w: u64, p: u64) -> Result<Vec<u64>> {
    check_prime(p)?;
    let (q, r) = (w / p, w % p);
    let mut out = vec![0u64; p as usize];
    out[0] = q * (q * (p - 1) + r);
    for (v, slot) in out.iter_mut().enumerate().skip(1) {
        let v = v as u64;
        let mut hits = 0u64;
        let mut vb = 0u64;
        for _ in 1..=r {
            vb += v;
            if vb >= p {
                vb -= p;
            }
            if vb != 0 && vb <= r {
                hits += 1;
            }
        }
        *slot = q * q * (p - 1) + 2 * q * r + hits;
    }
    Ok(out)
}

/// `Σ |counts[i] - main_term|`.
pub fn l1_deviation(counts: &[u64], main_term: f64) -> f64 {
    counts.iter().map(|&c| (c as f64 - main_term).abs()).sum()
}

/// `Σ_{v=1}^{p-1} |R_{T,p}(v) - (6/π^2) T^2/p|`; the class `v = 0` is left out.
pub fn l1_discrepancy(t: u64, p: u64) -> Result<f64> {
    let hist = residue_histogram(t, p)?;
    Ok(l1_deviation(&hist.counts[1..], hist.main_term()))
}

/// Desk-scale limits for [`l2_m_deviation`].
pub const L2_MAX_WIDTH: u64 = 100_000;
pub const L2_MAX_PRIME: u64 = 10_000;

/// `Σ_{v=1}^{p-1} (M_{W,p,1}(v) - W^2/p)^2`.
pub fn l2_m_deviation(w: u64, p: u64) -> Result<f64> {
    if w == 0 {
        return Err(Error::Domain("width W must be at least 1".into()));
    }
    if w > L2_MAX_WIDTH {
        return Err(Error::TooLarge { what: "W", value: w, limit: L2_MAX_WIDTH });
    }
    if p > L2_MAX_PRIME {
        return Err(Error::TooLarge { what: "p", value: p, limit: L2_MAX_PRIME });
    }
    let m = m_counts_unit(w, p)?;
    let mean = (w as f64) * (w as f64) / p as f64;
    Ok(m[1..].iter().map(|&c| (c as f64 - mean).powi(2)).sum())
}
