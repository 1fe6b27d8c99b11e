//! Elementary multiplicative number theory: factorization, divisors,
//! Möbius, totient, multiplicative order, p-adic valuations and the
//! lifting-the-exponent closed formula.
//!
//! Everything here is a pure function of its inputs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Trial division is exhausted up to this bound before Pollard rho takes
/// over. The target workload (gaps a <= 10^6 and the integers derived from
/// them) never reaches the rho path; the bound is a configuration value,
/// not a tuned limit.
pub const DEFAULT_TRIAL_DIVISION_BOUND: u64 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntfunError {
    #[error("argument must be positive, got {0}")]
    NonPositive(u64),
    #[error("{a} and {k} are not coprime")]
    NotCoprime { a: i64, k: u64 },
    #[error("p-adic valuation of zero is infinite")]
    ValuationOfZero,
    #[error("inputs outside the LTE formula regime: {0}")]
    OutsideLteRegime(&'static str),
}

/// A positive integer as an ascending multiset of (prime, exponent) pairs.
/// The empty list represents 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Primes only, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn modpow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd_u64(a, b) * b
}

/// Deterministic Miller-Rabin for u64 (the usual 7-base certificate).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    'base: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = modpow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    // Brent's cycle variant; n is odd, composite, with no factor below the
    // trial-division bound.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Decompose a positive integer into ascending prime powers.
pub fn factorize(n: u64) -> Result<Factorization, IntfunError> {
    factorize_with_bound(n, DEFAULT_TRIAL_DIVISION_BOUND)
}

pub fn factorize_with_bound(n: u64, trial_bound: u64) -> Result<Factorization, IntfunError> {
    if n == 0 {
        return Err(IntfunError::NonPositive(n));
    }
    let mut rest = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, e: u32, factors: &mut Vec<(u64, u32)>| {
        factors.push((p, e));
    };
    let mut d = 2u64;
    while d <= trial_bound && d * d <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            push(d, e, &mut factors);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if rest <= trial_bound * trial_bound || is_prime(rest) {
            // For rest <= bound^2 with no divisor <= bound, rest is prime.
            push(rest, 1, &mut factors);
        } else {
            let mut stack = vec![rest];
            let mut big: Vec<u64> = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime(m) {
                    big.push(m);
                } else {
                    let d = pollard_rho(m);
                    stack.push(d);
                    stack.push(m / d);
                }
            }
            big.sort_unstable();
            let mut i = 0;
            while i < big.len() {
                let p = big[i];
                let mut e = 0;
                while i < big.len() && big[i] == p {
                    e += 1;
                    i += 1;
                }
                push(p, e, &mut factors);
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { factors })
}

/// All divisors of the factored integer, ascending and duplicate-free.
pub fn divisors(f: &Factorization) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, e) in f.factors() {
        let prev = divs.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            divs.extend(prev.iter().map(|d| d * pe));
        }
    }
    divs.sort_unstable();
    divs
}

pub fn moebius(n: u64) -> Result<i32, IntfunError> {
    let f = factorize(n)?;
    if f.factors().iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.factors().len() % 2 == 0 { 1 } else { -1 })
}

pub fn euler_phi(n: u64) -> Result<u64, IntfunError> {
    let f = factorize(n)?;
    Ok(f.factors()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product())
}

/// ord_k(a): least n >= 1 with a^n = 1 (mod k). ord_1(a) = 1.
///
/// Computed by factoring phi(k) and stripping prime factors, never by
/// naive iteration.
pub fn mult_order(a: i64, k: u64) -> Result<u64, IntfunError> {
    if k == 0 {
        return Err(IntfunError::NonPositive(0));
    }
    if k == 1 {
        return Ok(1);
    }
    let a_red = a.rem_euclid(k as i64) as u64;
    if gcd_u64(a_red, k) != 1 {
        return Err(IntfunError::NotCoprime { a, k });
    }
    let phi = euler_phi(k)?;
    let mut ord = phi;
    for &(q, _) in factorize(phi)?.factors() {
        while ord % q == 0 && modpow(a_red, ord / q, k) == 1 {
            ord /= q;
        }
    }
    Ok(ord)
}

/// nu_p(n): exponent of the prime p in the nonzero integer n.
pub fn nu_p(p: u64, n: i64) -> Result<u32, IntfunError> {
    if n == 0 {
        return Err(IntfunError::ValuationOfZero);
    }
    let mut m = n.unsigned_abs();
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    Ok(e)
}

/// Arbitrary-precision variant of [`nu_p`].
pub fn nu_p_big(p: u64, n: &BigInt) -> Result<u32, IntfunError> {
    if n.is_zero() {
        return Err(IntfunError::ValuationOfZero);
    }
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p);
        if !r.is_zero() {
            return Ok(e);
        }
        m = q;
        e += 1;
    }
}

/// The LTE base data for a prime p and an integer m coprime to p:
/// ord = ord_p(m) and m_p = nu_p(m^ord - 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicData {
    pub p: u64,
    pub m: i64,
    pub ord: u64,
    pub m_p: u32,
}

impl PAdicData {
    /// Requires odd prime p and gcd(m, p) = 1.
    pub fn new(p: u64, m: i64) -> Result<Self, IntfunError> {
        let ord = mult_order(m, p)?;
        let mp = BigInt::from(m).pow(ord as u32) - BigInt::one();
        let m_p = nu_p_big(p, &mp)?;
        Ok(PAdicData { p, m, ord, m_p })
    }
}

/// nu_p(m^d - 1) from the closed formula m_p + nu_p(d), never by expanding
/// m^d.
///
/// Regime: gcd(m, p) = 1 and |m| >= 2; for odd p additionally
/// ord_p(m) | d, for p = 2 additionally d even. Inputs outside the regime
/// are rejected so the caller can fall back to a direct valuation.
pub fn lte_valuation(p: u64, m: i64, d: u64) -> Result<u32, IntfunError> {
    if d == 0 {
        return Err(IntfunError::NonPositive(0));
    }
    if m.unsigned_abs() < 2 {
        return Err(IntfunError::OutsideLteRegime("|m| must be at least 2"));
    }
    if m.rem_euclid(p as i64) == 0 {
        return Err(IntfunError::OutsideLteRegime("m divisible by p"));
    }
    if p == 2 {
        if d % 2 != 0 {
            return Err(IntfunError::OutsideLteRegime("d must be even for p = 2"));
        }
        let m2 = if m.rem_euclid(4) == 1 {
            nu_p_big(2, &(BigInt::from(m) - BigInt::one()))?
        } else {
            nu_p_big(2, &(BigInt::from(m) * BigInt::from(m) - BigInt::one()))? - 1
        };
        Ok(m2 + nu_p(2, d as i64)?)
    } else {
        let data = PAdicData::new(p, m)?;
        if d % data.ord != 0 {
            return Err(IntfunError::OutsideLteRegime("ord_p(m) does not divide d"));
        }
        Ok(data.m_p + nu_p(p, d as i64)?)
    }
}

/// Ascending primes strictly below `bound` (simple sieve).
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound <= 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}
