//! Integer arithmetic used by the linear-family criteria: primality by trial
//! division, factorization, multiplicative orders, primitive prime divisors.

use crate::error::{Error, Result};

/// Upper bound on prime powers `q = p^f` handled here.
pub const MAX_PRIME_POWER: u64 = 1 << 40;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn require_prime(n: u64) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::NotPrime(n))
    }
}

/// Prime factorization with multiplicities, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Least `k ≥ 1` with `a^k ≡ 1 (mod m)`, or `None` if `gcd(a, m) ≠ 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let phi = euler_phi(m);
    divisors(phi).into_iter().find(|&k| mod_pow(a, k, m) == 1)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `p^f`, failing above [`MAX_PRIME_POWER`].
pub fn prime_power(p: u64, f: u32) -> Result<u64> {
    let q = p
        .checked_pow(f)
        .filter(|&q| q <= MAX_PRIME_POWER)
        .ok_or_else(|| Error::Overflow(format!("{p}^{f} exceeds 2^40")))?;
    Ok(q)
}

/// Whether `r` divides `p^f − 1` but no `p^m − 1` with `1 ≤ m < f`.
///
/// Decided through the multiplicative order of `p` modulo `r`, so no power
/// of `p` is ever formed.
pub fn is_primitive_prime_divisor(r: u64, p: u64, f: u32) -> Result<bool> {
    require_prime(r)?;
    require_prime(p)?;
    if f == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    Ok(multiplicative_order(p, r) == Some(f as u64))
}

/// All primitive prime divisors of `p^f − 1`.
pub fn primitive_prime_divisors(p: u64, f: u32) -> Result<Vec<u64>> {
    require_prime(p)?;
    if f == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let q = prime_power(p, f)?;
    Ok(prime_divisors(q - 1)
        .into_iter()
        .filter(|&r| multiplicative_order(p, r) == Some(f as u64))
        .collect())
}

/// Whether some integer `s` satisfies `k ≡ ℓ·p^t + s·r (mod q − 1)`, where
/// `q = p^f` and `r | q − 1`. Since `r | q − 1` this is `k ≡ ℓ·p^t (mod r)`.
pub fn phi_orbit_congruence(l: u64, k: u64, t: u32, p: u64, f: u32, r: u64) -> Result<bool> {
    require_prime(p)?;
    if f == 0 || t >= f {
        return Err(Error::InvalidArgument(format!("need 0 <= t < f, got t={t}, f={f}")));
    }
    let q = prime_power(p, f)?;
    if r == 0 || (q - 1) % r != 0 {
        return Err(Error::InvalidArgument(format!("{r} does not divide {q} - 1")));
    }
    let lhs = k % r;
    let rhs = ((l % r) as u128 * mod_pow(p, t as u64, r) as u128 % r as u128) as u64;
    Ok(lhs == rhs)
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    assert!(n >= 1 && p >= 2);
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// Exponent `e` with `n = p^e`, if `n` is a power of the prime `p`.
pub fn prime_power_exponent(mut n: u64, p: u64) -> Option<u32> {
    let mut e = 0;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}

/// `(p, f)` with `n = p^f`, if `n > 1` is a prime power.
pub fn as_prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ppd_examples() {
        assert!(is_primitive_prime_divisor(3, 2, 2).unwrap());
        assert!(is_primitive_prime_divisor(7, 2, 3).unwrap());
        assert!(!is_primitive_prime_divisor(3, 2, 4).unwrap());
        assert!(is_primitive_prime_divisor(4, 2, 2).is_err());
        // Large exponents stay exact.
        assert!(is_primitive_prime_divisor(3, 2, 1_000_000).is_ok());
    }

    #[test]
    fn ppd_sets() {
        assert_eq!(primitive_prime_divisors(2, 6).unwrap(), Vec::<u64>::new());
        assert_eq!(primitive_prime_divisors(2, 4).unwrap(), vec![5]);
        assert_eq!(primitive_prime_divisors(3, 2).unwrap(), Vec::<u64>::new());
        assert_eq!(primitive_prime_divisors(2, 1).unwrap(), Vec::<u64>::new());
        assert_eq!(primitive_prime_divisors(7, 1).unwrap(), vec![2, 3]);
        assert!(primitive_prime_divisors(2, 41).is_err());
    }

    #[test]
    fn congruence_examples() {
        assert!(phi_orbit_congruence(1, 1, 0, 5, 1, 2).unwrap());
        assert!(phi_orbit_congruence(1, 2, 1, 2, 2, 3).unwrap());
        assert!(!phi_orbit_congruence(1, 2, 0, 2, 2, 3).unwrap());
        assert!(phi_orbit_congruence(1, 1, 0, 2, 2, 2).is_err());
    }

    #[test]
    fn p_parts() {
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(p_part(48, 5), 1);
        assert_eq!(p_part(8 + 1, 3), 9);
    }

    #[test]
    fn helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(2, 4), None);
        assert_eq!(as_prime_power(81), Some((3, 4)));
        assert_eq!(as_prime_power(12), None);
        assert_eq!(euler_phi(36), 12);
    }
}
