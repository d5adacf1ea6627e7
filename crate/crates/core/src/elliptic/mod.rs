//! One-parameter families `E(t): Y^2 = X^3 + A(t) X + B(t)` and their traces of Frobenius.

mod cache;

pub use cache::{cache_file_name, parse_trace_cache, read_trace_cache, write_trace_cache};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    eval_reduced, inv_mod, is_prime, jacobi, mul_mod, poly_eval_mod, poly_pair_dependent,
    primes_up_to, IntPolynomial,
};
use crate::error::{Error, Result};
use crate::farey::CoprimePair;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// 64-bit FNV-1a.
pub fn fnv1a_64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

/// A validated family with non-vanishing discriminant and non-constant `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFamily {
    a_poly: IntPolynomial,
    b_poly: IntPolynomial,
    delta_poly: IntPolynomial,
}

impl CurveFamily {
    pub fn a_poly(&self) -> &IntPolynomial {
        &self.a_poly
    }

    pub fn b_poly(&self) -> &IntPolynomial {
        &self.b_poly
    }

    /// `Δ(t) = -16 (4 A^3 + 27 B^2)`.
    pub fn delta_poly(&self) -> &IntPolynomial {
        &self.delta_poly
    }

    /// Canonical serialization `A=<coeffs>;B=<coeffs>`.
    pub fn serialize(&self) -> String {
        format!("A={};B={}", self.a_poly, self.b_poly)
    }

    /// FNV-1a-64 of [`CurveFamily::serialize`].
    pub fn id(&self) -> u64 {
        fnv1a_64(self.serialize().as_bytes())
    }

    /// Parses `A=<coeffs>;B=<coeffs>` and validates the result.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("family {s:?} is not of the form A=..;B=..")))?;
        let a = a
            .strip_prefix("A=")
            .ok_or_else(|| Error::Parse(format!("family {s:?} must start with A=")))?;
        let b = b
            .strip_prefix("B=")
            .ok_or_else(|| Error::Parse(format!("family {s:?} is missing B=")))?;
        family_validate(a.parse()?, b.parse()?)
    }
}

pub fn family_validate(a_poly: IntPolynomial, b_poly: IntPolynomial) -> Result<CurveFamily> {
    let a_cubed4 = a_poly.pow(3).scale(&BigInt::from(4));
    let b_sq27 = b_poly.pow(2).scale(&BigInt::from(27));
    let disc_core = a_cubed4.add(&b_sq27);
    if disc_core.is_zero() {
        return Err(Error::DeltaIdenticallyZero);
    }
    // j = const * A^3 / (4A^3 + 27B^2) is constant iff the two are proportional
    if poly_pair_dependent(&a_poly.pow(3), &disc_core) {
        return Err(Error::ConstantJInvariant);
    }
    let delta_poly = disc_core.scale(&BigInt::from(-16));
    Ok(CurveFamily { a_poly, b_poly, delta_poly })
}

/// Short Weierstrass curve `y^2 = x^3 + a4 x + a6` over `F_p`, non-singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpecializedCurve {
    pub a4: u64,
    pub a6: u64,
    pub p: u64,
}

impl SpecializedCurve {
    /// `None` when the curve is singular mod `p`.
    pub fn new(a4: i64, a6: i64, p: u64) -> Option<Self> {
        let a4 = a4.rem_euclid(p as i64) as u64;
        let a6 = a6.rem_euclid(p as i64) as u64;
        let cube = mul_mod(mul_mod(a4, a4, p), a4, p);
        let disc = (mul_mod(4, cube, p) + mul_mod(27, mul_mod(a6, a6, p), p)) % p;
        (disc != 0).then_some(Self { a4, a6, p })
    }
}

/// Result of reducing a family member modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    Good(SpecializedCurve),
    Bad,
}

fn check_curve_prime(p: u64) -> Result<()> {
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p >= 1 << 31 {
        return Err(Error::TooLarge { what: "p", value: p, limit: (1 << 31) - 1 });
    }
    Ok(())
}

/// Reduce `E(v)` mod `p`; bad reduction iff `Δ(v) ≡ 0 (mod p)`.
pub fn specialize_mod_p(family: &CurveFamily, v: u64, p: u64) -> Result<Reduction> {
    check_curve_prime(p)?;
    let v = (v % p) as i64;
    if poly_eval_mod(family.delta_poly(), v, p) == 0 {
        return Ok(Reduction::Bad);
    }
    let curve = SpecializedCurve {
        a4: poly_eval_mod(family.a_poly(), v, p),
        a6: poly_eval_mod(family.b_poly(), v, p),
        p,
    };
    Ok(Reduction::Good(curve))
}

/// `a_p = -Σ_x ((x^3 + a4 x + a6) | p)`, i.e. `p + 1 - #E(F_p)`.
pub fn trace_of_frobenius(curve: &SpecializedCurve) -> i32 {
    let p = curve.p;
    let sum: i64 = (0..p)
        .map(|x| {
            let rhs = (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(curve.a4, x, p) + curve.a6) % p;
            jacobi(rhs, p) as i64
        })
        .sum();
    -sum as i32
}

/// Quadratic character of `F_p` as a lookup table, plus the cubes `x^3 mod p`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    p: u64,
    chi: Vec<i8>,
    cubes: Vec<u32>,
}

impl CharacterTable {
    pub fn new(p: u64) -> Self {
        let pu = p as usize;
        let mut chi = vec![-1i8; pu];
        chi[0] = 0;
        for x in 1..=(p / 2) {
            chi[mul_mod(x, x, p) as usize] = 1;
        }
        let cubes = (0..p).map(|x| mul_mod(mul_mod(x, x, p), x, p) as u32).collect();
        Self { p, chi, cubes }
    }

    pub fn chi(&self, x: u64) -> i8 {
        self.chi[(x % self.p) as usize]
    }

    /// Same value as [`trace_of_frobenius`], with table lookups instead of symbols.
    pub fn trace(&self, a4: u64, a6: u64) -> i32 {
        let p = self.p as u32;
        let (a4, a6) = (a4 as u32, a6 as u32);
        let mut lin = 0u32; // a4 * x mod p
        let mut sum = 0i32;
        for &cube in &self.cubes {
            let mut s = cube + lin;
            if s >= p {
                s -= p;
            }
            s += a6;
            if s >= p {
                s -= p;
            }
            sum += self.chi[s as usize] as i32;
            lin += a4;
            if lin >= p {
                lin -= p;
            }
        }
        -sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TraceEntry {
    Good(i32),
    Bad,
}

impl TraceEntry {
    pub fn trace(self) -> Option<i32> {
        match self {
            TraceEntry::Good(a) => Some(a),
            TraceEntry::Bad => None,
        }
    }
}

/// `a_p(v)` for every residue `v` of a fixed prime, or the bad-reduction marker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceTable {
    pub p: u64,
    pub family_id: u64,
    pub entries: Vec<TraceEntry>,
}

impl TraceTable {
    pub fn good_count(&self) -> usize {
        self.entries.iter().filter(|e| e.trace().is_some()).count()
    }

    pub fn bad_count(&self) -> usize {
        self.entries.len() - self.good_count()
    }

    /// Good residues with their traces.
    pub fn good(&self) -> impl Iterator<Item = (u64, i32)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(v, e)| e.trace().map(|a| (v as u64, a)))
    }
}

/// Whether `a^2 <= 4p`.
pub fn within_hasse(a: i64, p: u64) -> bool {
    (a * a) as i128 <= 4 * p as i128
}

/// Traces at every `v` in `[0, p)` sharing one character table.
pub fn trace_table(family: &CurveFamily, p: u64) -> Result<TraceTable> {
    check_curve_prime(p)?;
    let table = CharacterTable::new(p);
    let a = family.a_poly().reduce_mod(p);
    let b = family.b_poly().reduce_mod(p);
    let delta = family.delta_poly().reduce_mod(p);
    let entries = (0..p)
        .into_par_iter()
        .map(|v| {
            if eval_reduced(&delta, v, p) == 0 {
                TraceEntry::Bad
            } else {
                TraceEntry::Good(table.trace(eval_reduced(&a, v, p), eval_reduced(&b, v, p)))
            }
        })
        .collect();
    Ok(TraceTable { p, family_id: family.id(), entries })
}

/// Primes `5 <= p <= x` at which `E(τ)` counts towards `Π(a, x)`.
///
/// A prime is admissible when `p ∤ β` and `Δ(α β^{-1}) ≢ 0 (mod p)`; `pred` decides
/// whether the trace qualifies. Every trace is computed from scratch.
pub(crate) fn qualifying_primes<F>(
    family: &CurveFamily,
    tau: CoprimePair,
    primes: &[u64],
    mut pred: F,
) -> Result<Vec<u64>>
where
    F: FnMut(i32, u64) -> bool,
{
    let mut hits = Vec::new();
    for &p in primes {
        if p < 5 || tau.beta % p == 0 {
            continue;
        }
        let inv = inv_mod(tau.beta % p, p).expect("p does not divide beta");
        let v = mul_mod(tau.alpha % p, inv, p);
        if let Reduction::Good(curve) = specialize_mod_p(family, v, p)? {
            if pred(trace_of_frobenius(&curve), p) {
                hits.push(p);
            }
        }
    }
    Ok(hits)
}

/// `Π_{E(τ)}(a, x)` with good reduction tested by `p ∤ Δ(v)` and primes dividing `β` skipped.
pub fn pi_a(family: &CurveFamily, tau: CoprimePair, a: i64, x: u64) -> Result<u64> {
    let primes = primes_up_to(x);
    Ok(qualifying_primes(family, tau, &primes, |t, _| t as i64 == a)?.len() as u64)
}
