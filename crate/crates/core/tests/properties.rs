use farey_lt_core::arith::{is_prime, primes_up_to};
use farey_lt_core::farey::{count_coprime_pairs, m_count, m_counts_unit, residue_histogram, residue_histogram_oracle};
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_up_to(200))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn histogram_matches_oracle(t in 1u64..150, p in prime()) {
        prop_assert_eq!(residue_histogram(t, p).unwrap(), residue_histogram_oracle(t, p).unwrap());
    }

    #[test]
    fn histogram_total_excludes_p_dividing_beta(t in 1u64..150, p in prime()) {
        let with_p_beta = count_coprime_pairs(t).unwrap() - residue_histogram(t, p).unwrap().total();
        let brute = (1..=t)
            .filter(|b| b % p == 0)
            .map(|b| (1..=t).filter(|&a| num_gcd(a, b) == 1).count() as u64)
            .sum::<u64>();
        prop_assert_eq!(with_p_beta, brute);
    }

    #[test]
    fn batched_m_counts_match_single(w in 1u64..120, p in prime()) {
        let batch = m_counts_unit(w, p).unwrap();
        for v in 0..p {
            prop_assert_eq!(batch[v as usize], m_count(w, p, 1, v).unwrap());
        }
    }

    #[test]
    fn m_count_scales_by_divisor(w in 1u64..200, p in prime(), d in 1u64..12, v in 0u64..200) {
        let v = v % p;
        let expect = if d % p == 0 { 0 } else { m_count(w / d, p, 1, v).unwrap() };
        prop_assert_eq!(m_count(w, p, d, v).unwrap(), expect);
    }

    #[test]
    fn mr_agrees_with_trial_division(n in 0u64..100_000) {
        let slow = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime(n), slow);
    }
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
