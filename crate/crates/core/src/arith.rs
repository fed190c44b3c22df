//! Integer arithmetic helpers: gcd, modular exponentiation, trial-division
//! primality and factorization. Everything here targets desk-scale moduli
//! (k up to ~10^6), so u64 with u128 intermediates is plenty.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

/// base^exp mod m by binary exponentiation.
pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    base %= m;
    let mut result = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mod_mul(result, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    result
}

/// Modular inverse of a mod m, if gcd(a, m) = 1.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
        if a == 0 {
            return (b, 0, 1);
        }
        let (g, x, y) = ext_gcd(b % a, a);
        (g, y - (b / a) * x, x)
    }
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some((x.rem_euclid(m as i128)) as u64)
}

/// Combine x ≡ r1 (mod m1), x ≡ r2 (mod m2) for coprime m1, m2.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    // x = r1 + m1 * t with t ≡ (r2 - r1) / m1 (mod m2)
    let inv = mod_inv(m1 % m2, m2).expect("crt moduli must be coprime");
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u64;
    let t = mod_mul(diff, inv, m2);
    r1 + m1 * t
}

/// Trial-division primality; fine for the desk-scale inputs used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Distinct prime factors of n with multiplicities, ascending.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_pow_matches_naive() {
        for m in [2u64, 7, 97, 1 << 20] {
            for b in [0u64, 1, 2, 3, 12345] {
                let mut expect = 1 % m;
                for e in 0..24u64 {
                    assert_eq!(mod_pow(b, e, m), expect, "b={b} e={e} m={m}");
                    expect = mod_mul(expect, b % m, m);
                }
            }
        }
    }

    #[test]
    fn mod_inv_inverts() {
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(6, 9), None);
        for m in [5u64, 8, 24, 1009] {
            for a in 1..m {
                if gcd(a, m) == 1 {
                    let inv = mod_inv(a, m).unwrap();
                    assert_eq!(mod_mul(a, inv, m), 1 % m);
                }
            }
        }
    }

    #[test]
    fn crt_pair_reconstructs() {
        for (m1, m2) in [(8u64, 3u64), (4, 9), (16, 15)] {
            for x in 0..m1 * m2 {
                assert_eq!(crt_pair(x % m1, m1, x % m2, m2), x);
            }
        }
    }

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes.len(), 25);
        assert_eq!(&primes[..5], &[2, 3, 5, 7, 11]);
        assert!(is_prime(999_983));
        assert!(!is_prime(999_981));
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in 2..2000u64 {
            let f = prime_factors(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }
}
