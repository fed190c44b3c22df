//! Prime sieving, per-residue-class prime counts, and the master identity
//! connecting the prime-power sum over a progression to the
//! character-weighted combination of log L values.

use crate::arith::gcd;
use crate::characters::enumerate_characters;
use crate::error::{Error, Result};
use crate::index::factorize_modulus;
use crate::lseries::{self, H_TRUNCATION_EPS};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

const SEGMENT_LEN: u64 = 1 << 16;

/// All primes ≤ n_max, ascending. Segmented, deterministic; fine up to 10^8.
pub fn sieve(n_max: u64) -> Vec<u64> {
    if n_max < 2 {
        return Vec::new();
    }
    let root = (n_max as f64).sqrt() as u64 + 1;
    let mut base_composite = vec![false; (root + 1) as usize];
    let mut base = Vec::new();
    for p in 2..=root {
        if !base_composite[p as usize] {
            base.push(p);
            let mut q = p * p;
            while q <= root {
                base_composite[q as usize] = true;
                q += p;
            }
        }
    }

    let mut primes: Vec<u64> = base.iter().copied().filter(|&p| p <= n_max).collect();
    let mut segment = vec![false; SEGMENT_LEN as usize];
    let mut low = root + 1;
    while low <= n_max {
        let high = (low + SEGMENT_LEN - 1).min(n_max);
        let len = (high - low + 1) as usize;
        segment[..len].fill(false);
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut start = low.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut q = start;
            while q <= high {
                segment[(q - low) as usize] = true;
                q += p;
            }
        }
        for (i, &composite) in segment[..len].iter().enumerate() {
            if !composite {
                primes.push(low + i as u64);
            }
        }
        low = high + 1;
    }
    primes
}

/// Process-wide prime table, grown monotonically and immutable once built;
/// callers slice off the prefix they need.
pub(crate) fn shared_primes(n_max: u64) -> Arc<Vec<u64>> {
    static CACHE: OnceLock<Mutex<(u64, Arc<Vec<u64>>)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new((0, Arc::new(Vec::new()))));
    let mut guard = cache.lock().unwrap();
    if guard.0 < n_max {
        *guard = (n_max, Arc::new(sieve(n_max)));
    }
    Arc::clone(&guard.1)
}

pub(crate) fn primes_upto(table: &[u64], n_max: u64) -> &[u64] {
    let cut = table.partition_point(|&p| p <= n_max);
    &table[..cut]
}

/// Prime counts per coprime residue class mod k, up to the sieve bound.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CensusReport {
    pub n_max: u64,
    pub k: u64,
    /// count of primes q ≤ n_max with q ≡ m (mod k), per coprime m < k.
    pub counts: BTreeMap<u64, u64>,
    /// primes dividing k (excluded from every class).
    pub excluded: u64,
    /// max class count / min class count.
    pub ratio_spread: f64,
}

impl CensusReport {
    pub fn total_primes(&self) -> u64 {
        self.counts.values().sum::<u64>() + self.excluded
    }

    /// CSV per the external interface: header rows (N, k, excluded,
    /// ratio_spread), then an (m, count) table.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("N,{}\n", self.n_max));
        out.push_str(&format!("k,{}\n", self.k));
        out.push_str(&format!("excluded,{}\n", self.excluded));
        out.push_str(&format!("ratio_spread,{}\n", self.ratio_spread));
        out.push_str("m,count\n");
        for (m, count) in &self.counts {
            out.push_str(&format!("{m},{count}\n"));
        }
        out
    }
}

/// Count primes ≤ n_max in every coprime residue class mod k.
pub fn census(n_max: u64, k: u64) -> Result<CensusReport> {
    if k < 3 {
        return Err(Error::InvalidModulus(k));
    }
    if n_max < k {
        return Err(Error::InvalidArgument(format!(
            "census needs N >= k, got N = {n_max}, k = {k}"
        )));
    }
    let mut counts: BTreeMap<u64, u64> =
        (1..k).filter(|&m| gcd(m, k) == 1).map(|m| (m, 0)).collect();
    let mut excluded = 0u64;
    let table = shared_primes(n_max);
    for &q in primes_upto(&table, n_max) {
        if k.is_multiple_of(q) {
            excluded += 1;
        } else {
            *counts.get_mut(&(q % k)).unwrap() += 1;
        }
    }
    let max = counts.values().copied().max().unwrap_or(0);
    let min = counts.values().copied().min().unwrap_or(0);
    let ratio_spread = if min == 0 {
        f64::INFINITY
    } else {
        max as f64 / min as f64
    };
    Ok(CensusReport {
        n_max,
        k,
        counts,
        excluded,
        ratio_spread,
    })
}

/// Left side of the master identity: Σ over primes q ≤ N and h ≥ 1 with
/// q^h ≡ m (mod k) of (1/h)·q^{−h(1+ρ)}. The h loop stops once
/// q^{−h(1+ρ)} < 10^{−16}.
pub fn ap_prime_sum_lhs(k: u64, m: u64, rho: f64, n_cutoff: u64) -> Result<f64> {
    if gcd(m, k) != 1 {
        return Err(Error::NotCoprime { n: m, modulus: k });
    }
    if rho <= 0.0 {
        return Err(Error::Domain(format!("need rho > 0, got {rho}")));
    }
    let s = 1.0 + rho;
    let m = m % k;
    let table = shared_primes(n_cutoff);
    let mut sum = 0.0;
    for &q in primes_upto(&table, n_cutoff) {
        if k.is_multiple_of(q) {
            continue;
        }
        let qs = (q as f64).powf(-s);
        let mut q_pow_mod = q % k;
        let mut weight = qs;
        let mut h = 1u32;
        while weight >= H_TRUNCATION_EPS {
            if q_pow_mod == m {
                sum += weight / h as f64;
            }
            q_pow_mod = q_pow_mod * q % k;
            weight *= qs;
            h += 1;
        }
    }
    Ok(sum)
}

/// Both sides of the master identity at s = 1 + ρ, with the combined
/// truncation bound the discrepancy has to stay under.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IdentityCheck {
    pub k: u64,
    pub m: u64,
    pub rho: f64,
    pub n_cutoff: u64,
    pub q_cutoff: u64,
    pub lhs: f64,
    pub rhs: Complex64,
    pub discrepancy: f64,
    pub bound: f64,
}

impl IdentityCheck {
    pub fn passes(&self) -> bool {
        self.discrepancy <= self.bound && self.rhs.im.abs() <= self.bound
    }
}

/// Check the identity for one residue class m.
pub fn ap_identity_check(
    k: u64,
    m: u64,
    rho: f64,
    n_cutoff: u64,
    q_cutoff: u64,
) -> Result<IdentityCheck> {
    let checks = ap_identity_suite(k, &[m], rho, n_cutoff, q_cutoff)?;
    Ok(checks.into_iter().next().unwrap())
}

/// Check the identity for several residue classes, evaluating the K
/// character logarithms once.
pub fn ap_identity_suite(
    k: u64,
    ms: &[u64],
    rho: f64,
    n_cutoff: u64,
    q_cutoff: u64,
) -> Result<Vec<IdentityCheck>> {
    let f = factorize_modulus(k)?;
    for &m in ms {
        if gcd(m, k) != 1 {
            return Err(Error::NotCoprime { n: m, modulus: k });
        }
    }
    let s = 1.0 + rho;
    let chars = enumerate_characters(&f);
    let logs: Vec<Complex64> = chars
        .iter()
        .map(|chi| lseries::log_l(chi, s, q_cutoff))
        .collect::<Result<_>>()?;

    // Everything past max(N, Q) cancels between the two sides; the bound
    // only has to cover the h-truncation tails, the prime range the sides
    // do not share, and a rounding margin.
    let table = shared_primes(n_cutoff.max(q_cutoff));
    let n_primes = primes_upto(&table, n_cutoff.max(q_cutoff)).len() as f64;
    let mut bound = 4.0 * H_TRUNCATION_EPS * n_primes + 1e-9;
    if n_cutoff != q_cutoff {
        let lo = n_cutoff.min(q_cutoff);
        let hi = n_cutoff.max(q_cutoff);
        bound += primes_upto(&table, hi)
            .iter()
            .filter(|&&q| q > lo)
            .map(|&q| 2.0 * (q as f64).powf(-s))
            .sum::<f64>();
    }

    let group_order = f.group_order() as f64;
    ms.iter()
        .map(|&m| {
            let lhs = ap_prime_sum_lhs(k, m, rho, n_cutoff)?;
            let mut rhs = Complex64::new(0.0, 0.0);
            for (chi, log) in chars.iter().zip(&logs) {
                rhs += chi.eval(m).conj() * log;
            }
            rhs /= group_order;
            Ok(IdentityCheck {
                k,
                m,
                rho,
                n_cutoff,
                q_cutoff,
                lhs,
                rhs,
                discrepancy: (rhs - Complex64::new(lhs, 0.0)).norm(),
                bound,
            })
        })
        .collect()
}

/// Exhibit the divergence of the progression prime sum as ρ → 0.
///
/// A prime sum truncated at any feasible N flattens out long before the
/// (1/K)·log(1/ρ) growth shows: the missing tail is on the order of
/// E₁(ρ·ln N), which rivals log 2 / K once ρ < 1/ln N. The probe therefore
/// evaluates the identity's right side with accurate L values (zeta-based
/// for the principal series, tail-bounded series elsewhere), which equals
/// the untruncated prime sum. `n_cutoff` is the series cutoff for the
/// nonprincipal L evaluations.
pub fn divergence_probe(
    k: u64,
    m: u64,
    rho_values: &[f64],
    n_cutoff: u64,
) -> Result<Vec<(f64, f64)>> {
    let f = factorize_modulus(k)?;
    if gcd(m, k) != 1 {
        return Err(Error::NotCoprime { n: m, modulus: k });
    }
    let chars = enumerate_characters(&f);
    let group_order = f.group_order() as f64;
    let mut out = Vec::with_capacity(rho_values.len());
    let mut rhos = rho_values.to_vec();
    rhos.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for &rho in &rhos {
        if rho <= 0.0 {
            return Err(Error::Domain(format!("need rho > 0, got {rho}")));
        }
        let s = 1.0 + rho;
        let mut acc = Complex64::new(0.0, 0.0);
        for chi in &chars {
            let log = if chi.is_principal() {
                Complex64::new(lseries::principal_l_accurate(&f, s).0.ln(), 0.0)
            } else {
                lseries::log_l_from_series(chi, s, n_cutoff)?.0
            };
            acc += chi.eval(m).conj() * log;
        }
        out.push((rho, acc.re / group_order));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve(10), vec![2, 3, 5, 7]);
        assert_eq!(sieve(100).len(), 25);
        assert_eq!(sieve(1), Vec::<u64>::new());
        // textbook count, confirmed by the trial-division oracle on a sample
        let primes = sieve(100_000);
        assert_eq!(primes.len(), 9_592);
        for &p in primes.iter().step_by(397) {
            assert!(trial_division_is_prime(p));
        }
        for w in primes.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn sieve_matches_trial_division_exactly() {
        let expect: Vec<u64> = (0..5000).filter(|&n| trial_division_is_prime(n)).collect();
        assert_eq!(sieve(4999), expect);
    }

    #[test]
    fn sieve_segment_boundaries() {
        // bounds straddling the segment length
        for n in [(1u64 << 16) - 1, 1 << 16, (1 << 16) + 1, (1 << 17) + 3] {
            let primes = sieve(n);
            assert!(primes.iter().all(|&p| p <= n));
            let count = (0..=n).filter(|&x| trial_division_is_prime(x)).count();
            assert_eq!(primes.len(), count, "n={n}");
        }
    }

    #[test]
    fn census_mod_4_at_1e5() {
        let report = census(100_000, 4).unwrap();
        // oracle: trial-division recount per class
        let c1 = (1..=100_000u64)
            .filter(|&n| n % 4 == 1 && trial_division_is_prime(n))
            .count() as u64;
        assert_eq!(report.counts[&1], c1);
        assert_eq!(report.counts[&1], 4_783);
        assert_eq!(report.counts[&3], 4_808);
        assert_eq!(report.excluded, 1);
        assert_eq!(report.total_primes(), 9_592);
    }

    #[test]
    fn census_mod_3_small() {
        let report = census(100, 3).unwrap();
        assert_eq!(report.excluded, 1);
        assert_eq!(report.counts[&1], 11); // 7,13,19,31,37,43,61,67,73,79,97
        assert_eq!(report.counts[&2], 13);
        assert_eq!(report.total_primes(), 25);
    }

    #[test]
    fn census_keys_are_exactly_the_coprime_classes() {
        for k in [3u64, 4, 12, 30, 45] {
            let report = census(1000, k).unwrap();
            let expect: Vec<u64> = (1..k).filter(|&m| gcd(m, k) == 1).collect();
            let keys: Vec<u64> = report.counts.keys().copied().collect();
            assert_eq!(keys, expect, "k={k}");
        }
    }

    #[test]
    fn census_rejects_bad_arguments() {
        assert!(matches!(census(100, 2), Err(Error::InvalidModulus(2))));
        assert!(matches!(census(2, 3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn csv_shape() {
        let report = census(10, 3).unwrap();
        // primes 2,5,7: 3 is excluded, 7 ≡ 1, {2,5} ≡ 2
        assert_eq!(report.counts[&1], 1);
        assert_eq!(report.counts[&2], 2);
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "N,10");
        assert_eq!(lines[1], "k,3");
        assert_eq!(lines[2], "excluded,1");
        assert_eq!(lines[3], "ratio_spread,2");
        assert_eq!(lines[4], "m,count");
        assert_eq!(lines[5], "1,1");
        assert_eq!(lines[6], "2,2");
    }

    #[test]
    fn lhs_matches_direct_summation_oracle() {
        // oracle: sum q^{-2} over trial-division primes q ≡ 1 mod 4, plus
        // the prime powers q^h ≡ 1 with the same cutoff rule
        let mut oracle = 0.0;
        for q in (2..=10_000u64).filter(|&q| trial_division_is_prime(q)) {
            let qs = (q as f64).powi(-2);
            let mut qh = q % 4;
            let mut w = qs;
            let mut h = 1u32;
            while w >= 1e-16 {
                if qh == 1 {
                    oracle += w / h as f64;
                }
                qh = qh * q % 4;
                w *= qs;
                h += 1;
            }
        }
        let lhs = ap_prime_sum_lhs(4, 1, 1.0, 10_000).unwrap();
        assert!((lhs - oracle).abs() < 1e-15, "lhs={lhs} oracle={oracle}");
        assert!(lhs > 0.0);
    }

    #[test]
    fn lhs_vanishes_for_large_rho() {
        let lhs = ap_prime_sum_lhs(4, 3, 30.0, 1000).unwrap();
        assert!(lhs < 1e-12);
        assert!(lhs > 0.0); // 3^{-31} still counted
    }

    #[test]
    fn lhs_higher_powers_stay_bounded() {
        // h ≥ 2 contribution is below Σ_{n≥2} n^{-2} whatever the class
        for (k, m) in [(4u64, 1u64), (4, 3), (5, 2), (8, 7)] {
            let all = ap_prime_sum_lhs(k, m, 0.01, 20_000).unwrap();
            let table = shared_primes(20_000);
            let h1: f64 = primes_upto(&table, 20_000)
                .iter()
                .filter(|&&q| q % k == m)
                .map(|&q| (q as f64).powf(-1.01))
                .sum();
            let higher = all - h1;
            assert!(higher >= 0.0);
            assert!(higher < std::f64::consts::PI.powi(2) / 6.0 - 1.0);
        }
    }

    #[test]
    fn lhs_rejects_noncoprime() {
        assert!(matches!(
            ap_prime_sum_lhs(4, 2, 0.5, 100),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn identity_check_small() {
        let check = ap_identity_check(8, 3, 0.5, 100_000, 100_000).unwrap();
        assert!(
            check.passes(),
            "discrepancy {} > bound {}",
            check.discrepancy,
            check.bound
        );
        assert!(check.lhs > 0.0);
        assert!(check.rhs.im.abs() <= check.bound);
    }

    #[test]
    fn identity_rhs_reduces_to_plain_log_average_for_m_1() {
        // For m = 1 every conj χ(1) = 1, so the right side is the plain
        // average of the K logarithms.
        let f = factorize_modulus(5).unwrap();
        let chars = enumerate_characters(&f);
        let mut avg = Complex64::new(0.0, 0.0);
        for chi in &chars {
            avg += lseries::log_l(chi, 1.5, 50_000).unwrap();
        }
        avg /= chars.len() as f64;
        let check = ap_identity_check(5, 1, 0.5, 50_000, 50_000).unwrap();
        assert!((check.rhs - avg).norm() < 1e-12);
        assert!(check.passes());
    }

    #[test]
    fn identity_check_with_mismatched_cutoffs() {
        let check = ap_identity_check(4, 3, 0.5, 60_000, 40_000).unwrap();
        assert!(
            check.passes(),
            "discrepancy {} > bound {}",
            check.discrepancy,
            check.bound
        );
    }

    #[test]
    fn every_coprime_class_has_a_small_prime_witness() {
        // weak finite witness of the theorem: a prime ≤ 10^4 in every
        // coprime class mod k, for k ≤ 60
        for k in 3..=60u64 {
            let report = census(10_000, k).unwrap();
            for (m, count) in &report.counts {
                assert!(*count > 0, "k={k} m={m}: no prime ≤ 10^4");
            }
        }
    }

    #[test]
    fn divergence_probe_grows_like_log_one_over_rho() {
        for m in [1u64, 3] {
            let points = divergence_probe(4, m, &[0.2, 0.1, 0.05, 0.025], 200_000).unwrap();
            assert!(
                points.windows(2).all(|w| w[1].1 > w[0].1),
                "m={m}: {points:?}"
            );
            let increments: Vec<f64> = points.windows(2).map(|w| w[1].1 - w[0].1).collect();
            let mean = increments.iter().sum::<f64>() / increments.len() as f64;
            let target = std::f64::consts::LN_2 / 2.0;
            assert!(
                (mean - target).abs() < 0.2 * target,
                "m={m} mean increment {mean} vs {target}"
            );
        }
    }
}
