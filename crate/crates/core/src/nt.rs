//! Rational-integer helpers: primality, trial factorization, valuations and
//! modular arithmetic on machine words.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division limit used when factoring discriminants and constant terms.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod_prime(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n == b {
            return true;
        }
        if n.is_multiple_of(b) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first twelve prime bases. Exact below 3.3·10^24,
/// probabilistic (but with no known counterexample) above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Requires `q` to be a prime that fits in a machine word.
pub fn require_prime(q: u64) -> Result<u64> {
    if is_prime_u64(q) {
        Ok(q)
    } else {
        Err(Error::NotPrime(BigInt::from(q)))
    }
}

/// `v_p(n)`, or `None` for `n = 0`.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        n = quot;
        v += 1;
    }
}

/// Reduces a signed integer into `[0, q)`.
pub fn reduce_mod(n: &BigInt, q: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(q));
    r.to_u64().expect("residue fits in u64")
}

/// Strips every prime factor below `limit` from `n` by trial division.
/// Returns the factors found and the unfactored residual.
pub fn trial_factor(n: &BigUint, limit: u64) -> (Vec<(u64, u32)>, BigUint) {
    let mut rest = n.clone();
    let mut factors = Vec::new();
    if rest.is_zero() {
        return (factors, rest);
    }
    let mut d = 2u64;
    while d <= limit {
        let big_d = BigUint::from(d);
        if &big_d * &big_d > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (quot, rem) = rest.div_rem(&big_d);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // what is left is 1, a prime, or a product of primes above the limit
    if let Some(r) = rest.to_u64() {
        if is_prime_u64(r) {
            factors.push((r, 1));
            rest = BigUint::one();
        }
    }
    (factors, rest)
}

/// Full factorization of `|n|`: trial division up to [`TRIAL_DIVISION_LIMIT`],
/// then a primality test on the residual.
pub fn factor(n: &BigInt) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (small, rest) = trial_factor(n.magnitude(), TRIAL_DIVISION_LIMIT);
    let mut out: Vec<(BigUint, u32)> =
        small.into_iter().map(|(p, e)| (BigUint::from(p), e)).collect();
    if !rest.is_one() {
        if is_probable_prime(&rest) {
            out.push((rest, 1));
        } else {
            return Err(Error::FactoringIncomplete(BigInt::from_biguint(Sign::Plus, rest)));
        }
    }
    out.sort();
    Ok(out)
}

/// Multiplicative order of `q` modulo the prime `p`.
pub fn multiplicative_order(q: u64, p: u64) -> Result<u64> {
    if q.is_multiple_of(p) {
        return Err(Error::SamePrime(p));
    }
    let n = p - 1;
    let mut order = n;
    // strip prime factors of p - 1 while q^(order/r) stays 1
    let (factors, _) = trial_factor(&BigUint::from(n), n);
    for (r, e) in factors {
        for _ in 0..e {
            if pow_mod(q, order / r, p) == 1 {
                order /= r;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Legendre symbol `(a / p)` for an odd prime `p`, as -1, 0 or 1.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}
