//! Finite fields `F_q`, `q = p^f ≤ 2^20`.
//!
//! An element is stored as the integer `c_0 + c_1 p + … + c_{f-1} p^{f-1}`
//! of its coefficient vector in the polynomial basis, so integer order is
//! the coefficient-lexicographic order (highest coefficient compared first).
//! The modulus is the least monic irreducible polynomial of degree `f` in
//! that order and `λ` is the least element of multiplicative order `q − 1`.

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_divisors};

pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Arithmetic context of one finite field.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    /// Coefficients `a_0..a_{f-1}` of `x^f + Σ a_i x^i`.
    modulus: Vec<u32>,
    lambda: u32,
    /// `exp[k] = λ^k` for `k < q − 1`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

fn digits(x: u32, p: u32, f: u32) -> Vec<u32> {
    let mut x = x;
    (0..f)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Polynomials over F_p as coefficient vectors, lowest degree first.
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    // `m` is monic of degree m.len() - 1.
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - dm;
            for i in 0..dm {
                let sub = lead * m[i] % p;
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        }
    }
    a
}

fn is_irreducible(monic: &[u32], p: u32) -> bool {
    let deg = monic.len() - 1;
    for d in 1..=deg / 2 {
        // Every monic divisor candidate of degree d.
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut cand = digits(low as u32, p, d as u32);
            cand.push(1);
            let r = poly_rem(monic.to_vec(), &cand, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::capacity(format!("field order {p}^{f}"), MAX_FIELD_ORDER))?;
        let (p, q) = (p as u32, q as u32);
        let modulus = (0..q)
            .map(|low| digits(low, p, f))
            .find(|low| {
                let mut m = low.clone();
                m.push(1);
                is_irreducible(&m, p)
            })
            .expect("irreducible polynomials exist in every degree");
        let mut field = Field {
            p,
            f,
            q,
            modulus,
            lambda: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = (q - 1) as u64;
        let primes = prime_divisors(order);
        let lambda = (1..q)
            .find(|&x| {
                order == 1
                    || primes
                        .iter()
                        .all(|&l| field.slow_pow(x, order / l) != 1)
            })
            .expect("the multiplicative group is cyclic");
        field.lambda = lambda;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..order as u32 {
            exp.push(x);
            log[x as usize] = k;
            x = field.slow_mul(x, lambda);
        }
        if x != 1 {
            return Err(Error::InvalidArgument("primitive element check failed".into()));
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (digits(a, self.p, self.f), digits(b, self.p, self.f));
        let mut prod = vec![0u32; 2 * self.f as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut m = self.modulus.clone();
        m.push(1);
        let mut r = poly_rem(prod, &m, self.p);
        r.resize(self.f as usize, 0);
        undigits(&r, self.p)
    }

    fn slow_pow(&self, x: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    /// Modulus coefficients `a_0..a_{f-1}` (the polynomial is monic).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            return (a + b) % self.p;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    /// `λ^k` for any integer `k`.
    pub fn lambda_pow(&self, k: i64) -> u32 {
        let n = (self.q - 1) as i64;
        self.exp[k.rem_euclid(n) as usize]
    }

    /// Discrete log base `λ` of a nonzero element.
    pub fn log(&self, a: u32) -> u32 {
        assert!(a != 0);
        self.log[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u128 * e as u128) % (self.q as u128 - 1);
        self.exp[k as usize]
    }

    /// Frobenius `x ↦ x^{p^j}`.
    pub fn frobenius(&self, a: u32, j: u32) -> u32 {
        self.pow(a, (self.p as u64).pow(j % self.f))
    }

    /// Frobenius applied to each coordinate.
    pub fn frobenius_vec(&self, v: &[u32], j: u32) -> Vec<u32> {
        v.iter().map(|&a| self.frobenius(a, j)).collect()
    }

    /// The `F_p`-basis `1, λ, …, λ^{f−1}`.
    pub fn prime_field_basis(&self) -> Vec<u32> {
        (0..self.f as i64).map(|k| self.lambda_pow(k)).collect()
    }

    pub fn multiplicative_order(&self, a: u32) -> u64 {
        let n = (self.q - 1) as u64;
        n / crate::numtheory::gcd(n, self.log(a) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.q(), 4);
        assert_eq!(f4.multiplicative_order(f4.lambda()), 3);
        assert_eq!(f4.modulus(), &[1, 1]);
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(f7.lambda(), 3);
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.multiplicative_order(f9.lambda()), 8);
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(2, 21).is_err());
    }

    #[test]
    fn field_axioms_on_f9_and_f8() {
        for (p, f) in [(3, 2), (2, 3), (5, 1)] {
            let k = Field::new(p, f).unwrap();
            let q = k.q();
            for a in 0..q {
                assert_eq!(k.add(a, k.neg(a)), 0);
                assert_eq!(k.frobenius(a, f), a);
                for b in 0..q {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    for c in 0..q {
                        let lhs = k.mul(a, k.add(b, c));
                        assert_eq!(lhs, k.add(k.mul(a, b), k.mul(a, c)));
                    }
                    // Frobenius is additive and multiplicative.
                    assert_eq!(k.frobenius(k.add(a, b), 1), k.add(k.frobenius(a, 1), k.frobenius(b, 1)));
                    assert_eq!(k.mul(k.frobenius(a, 1), k.frobenius(b, 1)), k.frobenius(k.mul(a, b), 1));
                }
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn moduli_are_least() {
        // x^3 + x + 1 is the least irreducible cubic over F_2.
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0]);
        // x^2 + 1 is irreducible over F_3 and least.
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0]);
    }
}
