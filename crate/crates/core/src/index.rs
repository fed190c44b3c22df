//! Primitive roots, discrete logarithms (indices), and combined index
//! systems for arbitrary moduli k = 2^λ · p^π · p'^π' · …
//!
//! The unit group mod 2^λ needs special treatment: it is generated by −1
//! (order 2, for λ ≥ 2) together with 5 (order 2^{λ−2}, for λ ≥ 3), while
//! every odd prime power has a genuine primitive root. A residue coprime
//! to k is determined by the tuple of indices (α, β, γ, γ', …) to the
//! bases (−1, 5, c, c', …), one γ per odd prime power.

use crate::arith::{crt_pair, gcd, is_prime, mod_mul, mod_pow, prime_factors};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// One odd prime-power factor p^π of the modulus, with its fixed
/// primitive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPrimePower {
    pub prime: u64,
    pub exponent: u32,
    /// Smallest primitive root mod p^π; fixed once so indices are
    /// reproducible across runs.
    pub primitive_root: u64,
}

impl OddPrimePower {
    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    /// Order of the unit group mod p^π, i.e. (p−1)·p^{π−1}.
    pub fn unit_group_order(&self) -> u64 {
        (self.prime - 1) * self.prime.pow(self.exponent - 1)
    }
}

/// A modulus k ≥ 3 decomposed as 2^λ times odd prime powers, with the
/// unit group order K = φ(k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusFactorization {
    k: u64,
    two_exponent: u32,
    odd_factors: Vec<OddPrimePower>,
    group_order: u64,
}

impl ModulusFactorization {
    pub fn k(&self) -> u64 {
        self.k
    }

    /// λ, the exponent of 2 in k.
    pub fn two_exponent(&self) -> u32 {
        self.two_exponent
    }

    pub fn odd_factors(&self) -> &[OddPrimePower] {
        &self.odd_factors
    }

    /// K = φ(k), the number of residues coprime to k.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// True when the index system carries an α component (λ ≥ 2).
    pub fn has_alpha(&self) -> bool {
        self.two_exponent >= 2
    }

    /// True when the index system carries a β component (λ ≥ 3).
    pub fn has_beta(&self) -> bool {
        self.two_exponent >= 3
    }

    /// Order of the β component, 2^{λ−2}.
    pub fn beta_order(&self) -> u64 {
        1u64 << (self.two_exponent - 2)
    }

    /// Cyclic orders of the index components, in tuple order
    /// (α, β, γ, γ', …). Components that do not exist for this modulus
    /// are absent.
    pub fn component_orders(&self) -> Vec<u64> {
        let mut orders = Vec::with_capacity(self.odd_factors.len() + 2);
        if self.has_alpha() {
            orders.push(2);
        }
        if self.has_beta() {
            orders.push(self.beta_order());
        }
        orders.extend(self.odd_factors.iter().map(|f| f.unit_group_order()));
        orders
    }

    /// Short names for the components, aligned with `component_orders`:
    /// "a" for α, "b" for β, then "c", "d", … per odd prime power.
    pub fn component_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        if self.has_alpha() {
            names.push("a".to_string());
        }
        if self.has_beta() {
            names.push("b".to_string());
        }
        for i in 0..self.odd_factors.len() {
            names.push(((b'c' + i as u8) as char).to_string());
        }
        names
    }

    /// Rebuild the residue n mod k from its index system via the defining
    /// congruences and the CRT.
    pub fn residue_from_indices(&self, sys: &IndexSystem) -> u64 {
        let mut residue = 0u64;
        let mut modulus = 1u64;
        if self.two_exponent >= 1 {
            let m2 = 1u64 << self.two_exponent;
            let r2 = if self.two_exponent == 1 {
                1
            } else {
                let alpha = sys.alpha.expect("alpha required for λ ≥ 2") as u64;
                let pow5 = match sys.beta {
                    Some(beta) => mod_pow(5, beta, m2),
                    None => 1,
                };
                if alpha == 0 {
                    pow5
                } else {
                    (m2 - pow5) % m2
                }
            };
            residue = r2;
            modulus = m2;
        }
        for (factor, &gamma) in self.odd_factors.iter().zip(&sys.gammas) {
            let m = factor.modulus();
            let r = mod_pow(factor.primitive_root, gamma, m);
            residue = crt_pair(residue, modulus, r, m);
            modulus *= m;
        }
        residue % self.k
    }
}

/// The tuple of indices (α, β, γ, γ', …) of a residue coprime to k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSystem {
    /// Index to base −1 mod 4; present iff λ ≥ 2.
    pub alpha: Option<u8>,
    /// Index to base 5 mod 2^λ; present iff λ ≥ 3.
    pub beta: Option<u64>,
    /// Index to the fixed primitive root mod p^π, one per odd factor.
    pub gammas: Vec<u64>,
}

impl IndexSystem {
    /// Flatten to a vector aligned with `ModulusFactorization::component_orders`.
    pub fn components(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.gammas.len() + 2);
        if let Some(a) = self.alpha {
            out.push(a as u64);
        }
        if let Some(b) = self.beta {
            out.push(b);
        }
        out.extend_from_slice(&self.gammas);
        out
    }
}

/// Factor k into its 2-part and odd prime powers. Fails for k < 3.
pub fn factorize_modulus(k: u64) -> Result<ModulusFactorization> {
    if k < 3 {
        return Err(Error::InvalidModulus(k));
    }
    let mut two_exponent = 0u32;
    let mut rest = k;
    while rest.is_multiple_of(2) {
        rest /= 2;
        two_exponent += 1;
    }
    let mut odd_factors = Vec::new();
    for (p, e) in prime_factors(rest) {
        odd_factors.push(OddPrimePower {
            prime: p,
            exponent: e,
            primitive_root: primitive_root(p, e)?,
        });
    }
    let two_part_order = match two_exponent {
        0 | 1 => 1,
        l => 1u64 << (l - 1),
    };
    let group_order = two_part_order
        * odd_factors
            .iter()
            .map(|f| f.unit_group_order())
            .product::<u64>();
    Ok(ModulusFactorization {
        k,
        two_exponent,
        odd_factors,
        group_order,
    })
}

/// Smallest c ≥ 2 whose multiplicative order mod p^π is the full
/// (p−1)·p^{π−1}.
pub fn primitive_root(p: u64, pi: u32) -> Result<u64> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    if pi == 0 {
        return Err(Error::InvalidArgument("exponent must be >= 1".into()));
    }
    let modulus = p.pow(pi);
    let order = (p - 1) * p.pow(pi - 1);
    // c generates iff c^(order/f) != 1 for every prime f | order.
    let mut check_exps: Vec<u64> = prime_factors(p - 1)
        .iter()
        .map(|&(f, _)| order / f)
        .collect();
    if pi >= 2 {
        check_exps.push(order / p);
    }
    for c in 2..modulus {
        if c % p == 0 {
            continue;
        }
        if check_exps.iter().all(|&e| mod_pow(c, e, modulus) != 1) {
            return Ok(c);
        }
    }
    unreachable!("odd prime powers always have a primitive root")
}

const BSGS_THRESHOLD: u64 = 10_000;

/// Discrete log of `target` to `base` in the cyclic subgroup of the given
/// order mod `modulus`. Brute force below 10^4, baby-step/giant-step above.
fn discrete_log(base: u64, target: u64, modulus: u64, order: u64) -> Option<u64> {
    let target = target % modulus;
    if order < BSGS_THRESHOLD {
        let mut power = 1u64;
        for x in 0..order {
            if power == target {
                return Some(x);
            }
            power = mod_mul(power, base, modulus);
        }
        return None;
    }
    let m = (order as f64).sqrt().ceil() as u64;
    let mut baby = HashMap::with_capacity(m as usize);
    let mut power = 1u64;
    for j in 0..m {
        baby.entry(power).or_insert(j);
        power = mod_mul(power, base, modulus);
    }
    // giant step factor base^{-m} = base^{order - m mod order}
    let giant = mod_pow(base, order - (m % order), modulus);
    let mut gamma = target;
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma) {
            let x = i * m + j;
            if x < order {
                return Some(x);
            }
        }
        gamma = mod_mul(gamma, giant, modulus);
    }
    None
}

/// Index γ of n mod p^π: the unique exponent with c^γ ≡ n, c the fixed
/// primitive root.
pub fn index(n: u64, p: u64, pi: u32) -> Result<u64> {
    let c = primitive_root(p, pi)?;
    let modulus = p.pow(pi);
    if n.is_multiple_of(p) {
        return Err(Error::NotCoprime { n, modulus });
    }
    let order = (p - 1) * p.pow(pi - 1);
    Ok(discrete_log(c, n % modulus, modulus, order)
        .expect("primitive root generates every coprime residue"))
}

/// Two-part indices (α, β) of an odd n mod 2^λ for λ ≥ 2:
/// (−1)^α ≡ n (mod 4), and for λ ≥ 3, 5^β ≡ ±n (mod 2^λ) with the sign
/// fixed by α. β is absent when λ = 2.
pub fn index_two_part(n: u64, lambda: u32) -> Result<(u8, Option<u64>)> {
    if lambda < 2 {
        return Err(Error::InvalidArgument(format!(
            "two-part index needs λ >= 2, got {lambda}"
        )));
    }
    let m = 1u64 << lambda;
    if n.is_multiple_of(2) {
        return Err(Error::NotCoprime { n, modulus: m });
    }
    let alpha = if n % 4 == 1 { 0u8 } else { 1u8 };
    if lambda == 2 {
        return Ok((alpha, None));
    }
    let target = if alpha == 0 { n % m } else { (m - n % m) % m };
    let order = 1u64 << (lambda - 2);
    let beta = discrete_log(5, target, m, order)
        .expect("5 generates the residues ≡ 1 mod 4 when the sign is fixed");
    Ok((alpha, Some(beta)))
}

/// Full index system of n relative to the factorization of k.
pub fn index_system(n: u64, f: &ModulusFactorization) -> Result<IndexSystem> {
    if gcd(n, f.k()) != 1 {
        return Err(Error::NotCoprime { n, modulus: f.k() });
    }
    let (alpha, beta) = if f.has_alpha() {
        let (a, b) = index_two_part(n % (1u64 << f.two_exponent), f.two_exponent)?;
        (Some(a), b)
    } else {
        (None, None)
    };
    let gammas = f
        .odd_factors()
        .iter()
        .map(|fac| {
            let modulus = fac.modulus();
            discrete_log(
                fac.primitive_root,
                n % modulus,
                modulus,
                fac.unit_group_order(),
            )
            .expect("coprime residue must have an index")
        })
        .collect();
    Ok(IndexSystem {
        alpha,
        beta,
        gammas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn factorize_examples() {
        // Oracle for K: direct gcd count.
        let totient = |k: u64| (1..k).filter(|&n| gcd(n, k) == 1).count() as u64;

        let f = factorize_modulus(24).unwrap();
        assert_eq!(f.two_exponent(), 3);
        assert_eq!(
            f.odd_factors()
                .iter()
                .map(|q| (q.prime, q.exponent))
                .collect::<Vec<_>>(),
            vec![(3, 1)]
        );
        assert_eq!(f.group_order(), 8);
        assert_eq!(f.group_order(), totient(24));

        let f = factorize_modulus(7).unwrap();
        assert_eq!(f.two_exponent(), 0);
        assert_eq!(f.group_order(), 6);

        let f = factorize_modulus(8).unwrap();
        assert_eq!(f.two_exponent(), 3);
        assert!(f.odd_factors().is_empty());
        assert_eq!(f.group_order(), 4);
        assert_eq!(f.group_order(), totient(8));

        assert!(matches!(
            factorize_modulus(2),
            Err(Error::InvalidModulus(2))
        ));
    }

    #[test]
    fn group_order_formula_matches_totient() {
        for k in 3..=300u64 {
            let f = factorize_modulus(k).unwrap();
            let totient = (1..k).filter(|&n| gcd(n, k) == 1).count() as u64;
            assert_eq!(f.group_order(), totient, "k={k}");
        }
    }

    #[test]
    fn primitive_root_examples() {
        // Oracle: brute-force order check over candidates.
        fn order(c: u64, m: u64) -> u64 {
            let mut x = c % m;
            let mut o = 1;
            while x != 1 {
                x = mod_mul(x, c, m);
                o += 1;
            }
            o
        }
        assert_eq!(primitive_root(7, 1).unwrap(), 3);
        assert_eq!(order(3, 7), 6);
        assert_eq!(order(2, 7), 3); // 2 is not a generator mod 7
        assert_eq!(primitive_root(3, 2).unwrap(), 2);
        assert_eq!(order(2, 9), 6);
        assert_eq!(primitive_root(3, 1).unwrap(), 2);
        assert!(primitive_root(9, 1).is_err());
        assert!(primitive_root(2, 1).is_err());
    }

    #[test]
    fn primitive_root_has_full_order() {
        for p in [3u64, 5, 7, 11, 13, 97] {
            for pi in 1..=2u32 {
                let c = primitive_root(p, pi).unwrap();
                let m = p.pow(pi);
                let order = (p - 1) * p.pow(pi - 1);
                let mut seen = HashSet::new();
                let mut x = 1u64;
                for _ in 0..order {
                    seen.insert(x);
                    x = mod_mul(x, c, m);
                }
                assert_eq!(x, 1);
                assert_eq!(seen.len() as u64, order, "p={p} pi={pi}");
            }
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(index(1, 7, 1).unwrap(), 0);
        // index of p−1 is (p−1)/2
        assert_eq!(index(6, 7, 1).unwrap(), 3);
        // oracle: powers of 3 mod 7 are 1,3,2,6,4,5
        assert_eq!(index(2, 7, 1).unwrap(), 2);
        assert!(matches!(index(14, 7, 1), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn index_parity_tracks_quadratic_residues() {
        for p in [3u64, 5, 7, 11, 13, 23, 97] {
            let squares: HashSet<u64> = (1..p).map(|m| m * m % p).collect();
            for n in 1..p {
                let gamma = index(n, p, 1).unwrap();
                assert_eq!(gamma.is_multiple_of(2), squares.contains(&n), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn two_part_examples() {
        assert_eq!(index_two_part(1, 3).unwrap(), (0, Some(0)));
        assert_eq!(index_two_part(7, 3).unwrap(), (1, Some(0))); // −7 ≡ 1 (mod 8)
        assert_eq!(index_two_part(3, 3).unwrap(), (1, Some(1))); // −3 ≡ 5 (mod 8)
        assert_eq!(index_two_part(5, 2).unwrap(), (0, None));
        assert_eq!(index_two_part(3, 2).unwrap(), (1, None));
        assert!(matches!(
            index_two_part(4, 3),
            Err(Error::NotCoprime { .. })
        ));
        assert!(index_two_part(3, 1).is_err());
    }

    #[test]
    fn two_part_congruences_hold() {
        for lambda in 2..=7u32 {
            let m = 1u64 << lambda;
            for n in (1..m).step_by(2) {
                let (alpha, beta) = index_two_part(n, lambda).unwrap();
                assert_eq!(
                    if alpha == 0 { 1 } else { 3 },
                    n % 4,
                    "alpha congruence, λ={lambda} n={n}"
                );
                if let Some(beta) = beta {
                    assert!(beta < (1 << (lambda - 2)));
                    let pow5 = mod_pow(5, beta, m);
                    let target = if alpha == 0 { n } else { m - n };
                    assert_eq!(pow5, target % m, "λ={lambda} n={n}");
                }
            }
        }
    }

    #[test]
    fn index_system_example_mod_24() {
        let f = factorize_modulus(24).unwrap();
        let one = index_system(1, &f).unwrap();
        assert_eq!(one.alpha, Some(0));
        assert_eq!(one.beta, Some(0));
        assert_eq!(one.gammas, vec![0]);

        // 5 ≡ 5^1 (mod 8) and 5 ≡ 2 ≡ 2^1 (mod 3)
        let five = index_system(5, &f).unwrap();
        assert_eq!(five.alpha, Some(0));
        assert_eq!(five.beta, Some(1));
        assert_eq!(five.gammas, vec![1]);

        assert!(matches!(index_system(9, &f), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn reconstruction_round_trips() {
        for k in 3..=120u64 {
            let f = factorize_modulus(k).unwrap();
            for n in 1..k {
                if gcd(n, k) == 1 {
                    let sys = index_system(n, &f).unwrap();
                    assert_eq!(f.residue_from_indices(&sys), n, "k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn index_systems_are_bijective() {
        for k in 3..=120u64 {
            let f = factorize_modulus(k).unwrap();
            let systems: HashSet<IndexSystem> = (1..k)
                .filter(|&n| gcd(n, k) == 1)
                .map(|n| index_system(n, &f).unwrap())
                .collect();
            assert_eq!(systems.len() as u64, f.group_order(), "k={k}");
        }
    }

    #[test]
    fn product_law_componentwise() {
        // index_system(nm) = index_system(n) + index_system(m), componentwise
        // modulo the respective orders.
        for k in [7u64, 8, 15, 16, 24, 45, 60] {
            let f = factorize_modulus(k).unwrap();
            let orders = f.component_orders();
            for n in 1..=500u64 {
                if gcd(n, k) != 1 {
                    continue;
                }
                for m in (1..=500u64).step_by(7) {
                    if gcd(m, k) != 1 {
                        continue;
                    }
                    let sys_n = index_system(n % k, &f).unwrap().components();
                    let sys_m = index_system(m % k, &f).unwrap().components();
                    let sys_nm = index_system(n * m % k, &f).unwrap().components();
                    for i in 0..orders.len() {
                        assert_eq!(
                            sys_nm[i],
                            (sys_n[i] + sys_m[i]) % orders[i],
                            "k={k} n={n} m={m} component {i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn system_of_35_is_componentwise_sum_mod_24() {
        let f = factorize_modulus(24).unwrap();
        let orders = f.component_orders();
        let s5 = index_system(5, &f).unwrap().components();
        let s7 = index_system(7, &f).unwrap().components();
        let s35 = index_system(35 % 24, &f).unwrap().components();
        for i in 0..orders.len() {
            assert_eq!(s35[i], (s5[i] + s7[i]) % orders[i]);
        }
    }

    #[test]
    fn bsgs_agrees_with_brute_force_over_large_order() {
        // 65537 is prime with group order 65536 > the brute-force threshold.
        let p = 65_537u64;
        let c = primitive_root(p, 1).unwrap();
        for x in [0u64, 1, 2, 1000, 32768, 65535] {
            let n = mod_pow(c, x, p);
            assert_eq!(discrete_log(c, n, p, p - 1), Some(x));
        }
    }
}
