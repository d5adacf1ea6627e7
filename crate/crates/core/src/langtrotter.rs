//! Lang-Trotter counters averaged over Farey specializations of a curve family.
//!
//! The average `Σ_{τ ∈ F(T)} Π_{E(τ)}(·, x)` is computed two ways:
//!
//! * directly, by computing `a_p(τ)` for every fraction `τ` and every prime `p <= x`;
//! * swapped, as `Σ_p Σ_v R_{T,p}(v)` over residues `v` whose trace qualifies, using one
//!   residue histogram and one trace table per prime.
//!
//! `Π` here counts primes `5 <= p <= x` with `p ∤ β` and `p ∤ Δ(α β^{-1})`. Under that
//! definition the two totals agree exactly, and the report refuses to build otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, primes_up_to};
use crate::elliptic::{qualifying_primes, trace_table, within_hasse, CurveFamily, TraceTable};
use crate::error::{Error, Result};
use crate::farey::{count_coprime_pairs, enumerate_coprime_pairs, residue_histogram};
use crate::quadratic::{field_of, frobenius_field};

/// What a prime must satisfy to be counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Mode {
    /// `a_p = a`.
    Trace(i64),
    /// `a_p ≠ 0` and `Q(√(a_p^2 - 4p)) = Q(√d)`.
    Field(i64),
}

impl Mode {
    fn accepts(self, trace: i32, p: u64) -> bool {
        match self {
            Mode::Trace(a) => trace as i64 == a,
            Mode::Field(d) => trace != 0 && frobenius_field(trace as i64, p).ok() == Some(d),
        }
    }

    /// The matching bound from the averaged Lang-Trotter estimates.
    pub fn envelope_part(self) -> EnvelopePart {
        match self {
            Mode::Trace(0) => EnvelopePart::TraceZero,
            Mode::Trace(_) => EnvelopePart::TraceNonzero,
            Mode::Field(_) => EnvelopePart::Field,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Trace(a) => write!(f, "trace({a})"),
            Mode::Field(d) => write!(f, "field({d})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EnvelopePart {
    /// Part 1: `a ≠ 0`, `T^2 x^{3/4} + T x^{3/2}`.
    TraceNonzero = 1,
    /// Part 2: `a = 0`, `T^2 x^{2/3} + T x^{3/2}`.
    TraceZero = 2,
    /// Part 3: Frobenius fields, `T^2 x^{2/3} + T x^{3/2}`.
    Field = 3,
}

impl TryFrom<u8> for EnvelopePart {
    type Error = Error;

    fn try_from(part: u8) -> Result<Self> {
        match part {
            1 => Ok(EnvelopePart::TraceNonzero),
            2 => Ok(EnvelopePart::TraceZero),
            3 => Ok(EnvelopePart::Field),
            _ => Err(Error::Domain(format!("envelope part must be 1, 2 or 3, got {part}"))),
        }
    }
}

/// Bound shape with the `x^{o(1)}` factor set to 1. Reported for context only.
pub fn theorem2_envelope(t: u64, x: u64, part: EnvelopePart) -> f64 {
    let (t, x) = (t as f64, x as f64);
    let exponent = match part {
        EnvelopePart::TraceNonzero => 0.75,
        EnvelopePart::TraceZero | EnvelopePart::Field => 2.0 / 3.0,
    };
    t * t * x.powf(exponent) + t * x.powf(1.5)
}

/// Per-prime row of an [`AverageReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeContribution {
    pub p: u64,
    pub contribution_direct: u64,
    pub contribution_swapped: u64,
    pub good_v: u64,
    pub bad_v: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AverageReport {
    pub family: String,
    pub family_id: u64,
    pub mode: Mode,
    pub x: u64,
    pub t_order: u64,
    pub total_direct: u64,
    pub total_swapped: u64,
    /// `total_direct / #F(T)`.
    pub normalized: f64,
    pub envelope: f64,
    /// `(p, τ)` pairs left out because `p | β`.
    pub skipped_primes: u64,
    pub rows: Vec<PrimeContribution>,
}

impl AverageReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,contribution_direct,contribution_swapped,good_v,bad_v\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.p, r.contribution_direct, r.contribution_swapped, r.good_v, r.bad_v
            );
        }
        let _ = writeln!(
            out,
            "# total={}, normalized={}, envelope={}, skipped={}",
            self.total_direct, self.normalized, self.envelope, self.skipped_primes
        );
        let _ = writeln!(
            out,
            "# family={} hash={} mode={} x={} T={}",
            self.family, self.family_id, self.mode, self.x, self.t_order
        );
        out.push_str(
            "# good reduction means p does not divide Delta(v) (conductor not computed); primes dividing beta are skipped\n",
        );
        out
    }
}

fn check_hasse(table: &TraceTable) -> Result<()> {
    match table.good().find(|&(_, a)| !within_hasse(a as i64, table.p)) {
        Some((_, a)) => Err(Error::HasseViolation { p: table.p, trace: a as i64 }),
        None => Ok(()),
    }
}

fn average(family: &CurveFamily, mode: Mode, x: u64, t: u64) -> Result<AverageReport> {
    if x == 0 {
        return Err(Error::Domain("x must be at least 1".into()));
    }
    let primes: Vec<u64> = primes_up_to(x).into_iter().filter(|&p| p >= 5).collect();
    let index = |p: u64| primes.binary_search(&p).expect("prime from the list");

    let pairs: Vec<_> = enumerate_coprime_pairs(t)?.collect();
    let (direct, skipped) = pairs
        .par_iter()
        .try_fold(
            || (vec![0u64; primes.len()], 0u64),
            |(mut counts, mut skipped), &tau| {
                skipped += primes.iter().filter(|&&p| tau.beta % p == 0).count() as u64;
                for p in qualifying_primes(family, tau, &primes, |a, p| mode.accepts(a, p))? {
                    counts[index(p)] += 1;
                }
                Ok::<_, Error>((counts, skipped))
            },
        )
        .try_reduce(
            || (vec![0u64; primes.len()], 0u64),
            |(mut a, sa), (b, sb)| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok((a, sa + sb))
            },
        )?;

    let swapped: Vec<(u64, u64, u64)> = primes
        .par_iter()
        .map(|&p| {
            let hist = residue_histogram(t, p)?;
            let table = trace_table(family, p)?;
            check_hasse(&table)?;
            let contribution = table
                .good()
                .filter(|&(_, a)| mode.accepts(a, p))
                .map(|(v, _)| hist.counts[v as usize])
                .sum();
            Ok((contribution, table.good_count() as u64, table.bad_count() as u64))
        })
        .collect::<Result<_>>()?;

    let rows: Vec<PrimeContribution> = primes
        .iter()
        .zip(direct)
        .zip(swapped)
        .map(|((&p, d), (s, good_v, bad_v))| PrimeContribution {
            p,
            contribution_direct: d,
            contribution_swapped: s,
            good_v,
            bad_v,
        })
        .collect();
    let total_direct: u64 = rows.iter().map(|r| r.contribution_direct).sum();
    let total_swapped: u64 = rows.iter().map(|r| r.contribution_swapped).sum();
    if total_direct != total_swapped {
        return Err(Error::SumSwapMismatch { direct: total_direct, swapped: total_swapped });
    }

    Ok(AverageReport {
        family: family.serialize(),
        family_id: family.id(),
        mode,
        x,
        t_order: t,
        total_direct,
        total_swapped,
        normalized: total_direct as f64 / count_coprime_pairs(t)? as f64,
        envelope: theorem2_envelope(t, x, mode.envelope_part()),
        skipped_primes: skipped,
        rows,
    })
}

/// `Σ_{τ ∈ F(T)} Π_{E(τ)}(a, x)`, computed directly and by summing over residues.
pub fn average_pi_a(family: &CurveFamily, a: i64, x: u64, t: u64) -> Result<AverageReport> {
    average(family, Mode::Trace(a), x, t)
}

/// `Σ_{τ ∈ F(T)} Π_{E(τ)}(K, x)` for `K = Q(√d)`.
pub fn average_pi_field(family: &CurveFamily, d: i64, x: u64, t: u64) -> Result<AverageReport> {
    field_of(d)?;
    average(family, Mode::Field(d), x, t)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebotarevReport {
    pub p: u64,
    pub ell: u64,
    /// Good residues `v` with `a_p(v) ≡ a (mod ℓ)`, for every `a` in `[0, ℓ)`.
    pub counts: BTreeMap<u64, u64>,
    /// Good residues by exact trace value.
    pub trace_counts: BTreeMap<i32, u64>,
    pub main_term: f64,
    pub max_abs_dev: f64,
    pub good_v: u64,
    /// The Chebotarev argument behind the bounds needs `ℓ >= 17`.
    pub ell_below_17: bool,
}

impl ChebotarevReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("residue,count\n");
        for (a, c) in &self.counts {
            let _ = writeln!(out, "{a},{c}");
        }
        let _ = writeln!(
            out,
            "# p={} ell={} main_term={} max_abs_dev={} good_v={} ell_below_17={}",
            self.p, self.ell, self.main_term, self.max_abs_dev, self.good_v, self.ell_below_17
        );
        out
    }
}

pub fn chebotarev_counts(family: &CurveFamily, p: u64, ell: u64) -> Result<ChebotarevReport> {
    if !is_prime(ell) {
        return Err(Error::Domain(format!("ell = {ell} is not prime")));
    }
    if ell == p {
        return Err(Error::Domain("ell must differ from p".into()));
    }
    chebotarev_from_table(&trace_table(family, p)?, ell)
}

/// Tallies an existing trace table by residue mod `ell`.
pub fn chebotarev_from_table(table: &TraceTable, ell: u64) -> Result<ChebotarevReport> {
    let p = table.p;
    if !is_prime(ell) || ell == p {
        return Err(Error::Domain(format!("ell = {ell} must be a prime other than p = {p}")));
    }
    check_hasse(table)?;
    let mut counts: BTreeMap<u64, u64> = (0..ell).map(|a| (a, 0)).collect();
    let mut trace_counts = BTreeMap::new();
    for (_, a) in table.good() {
        *counts.get_mut(&(a as i64).rem_euclid(ell as i64).try_into().unwrap()).unwrap() += 1;
        *trace_counts.entry(a).or_insert(0) += 1;
    }
    let main_term = p as f64 / ell as f64;
    let max_abs_dev = counts
        .values()
        .map(|&c| (c as f64 - main_term).abs())
        .fold(0.0, f64::max);
    Ok(ChebotarevReport {
        p,
        ell,
        counts,
        trace_counts,
        main_term,
        max_abs_dev,
        good_v: table.good_count() as u64,
        ell_below_17: ell < 17,
    })
}
