//! Evaluation of the k-th cyclotomic polynomial Phi_k at integers: exact
//! arbitrary-precision values, modular residues for sieving, the special
//! values at x in {-1, 0, 1}, and the solver for Phi_k(x) = Y.
//!
//! Exact evaluation never expands coefficient vectors. It uses the Moebius
//! product Phi_k(x) = prod_{d|k} (x^d - 1)^{mu(k/d)} over a reduced plan:
//! square factors are lifted out via Phi_k(x) = Phi_{k/q}(x^q) and an even
//! square-free part is folded away via Phi_{2t}(x) = Phi_t(-x) for odd t.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::config::SolverConfig;
use crate::intfun::{self, IntfunError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PhiError {
    #[error("k must be at least 3, got {0}")]
    KTooSmall(u64),
    #[error("k = {0} is 2 mod 4; reduce via Phi_2t(x) = Phi_t(-x) first")]
    KTwoModFour(u64),
    #[error("x = {0} is outside {{-1, 0, 1}}")]
    NotSpecial(i64),
    #[error("Y must be at least 2, got {0}")]
    YTooSmall(u64),
    #[error("estimated result size {estimated_bits} bits exceeds ceiling {ceiling} (k = {k}, x = {x})")]
    BitCeiling {
        k: u64,
        x: i64,
        estimated_bits: u64,
        ceiling: u64,
    },
    #[error(transparent)]
    Intfun(#[from] IntfunError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum PlanKind {
    /// k = 2^l with l >= 2: Phi_k(x) = x^(2^(l-1)) + 1.
    PowerOfTwo { half_degree: u64 },
    /// Phi_k(x) = Phi_{k_reduced}(s * x^lift_exponent) with s = -1 iff
    /// `negate`; k_reduced odd and square-free, divisors carry mu(k'/d).
    Reduced {
        k_reduced: u64,
        lift_exponent: u64,
        negate: bool,
        divisors: Vec<(u64, i8)>,
    },
}

/// Resolved evaluation strategy for one k; deterministic and cacheable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiEvalPlan {
    pub k: u64,
    /// phi(k), the degree of Phi_k.
    pub degree: u64,
    kind: PlanKind,
}

impl PhiEvalPlan {
    pub fn new(k: u64) -> Result<Self, PhiError> {
        if k < 3 {
            return Err(PhiError::KTooSmall(k));
        }
        let f = intfun::factorize(k)?;
        let degree = intfun::euler_phi(k)?;
        let radical: u64 = f.primes().product();
        let lift = k / radical;
        let kind = if radical == 2 {
            PlanKind::PowerOfTwo { half_degree: k / 2 }
        } else if radical % 2 == 1 {
            PlanKind::Reduced {
                k_reduced: radical,
                lift_exponent: lift,
                negate: false,
                divisors: signed_divisors(radical),
            }
        } else {
            // radical = 2t, t odd > 1: Phi_{2t}(y) = Phi_t(-y).
            let t = radical / 2;
            PlanKind::Reduced {
                k_reduced: t,
                lift_exponent: lift,
                negate: true,
                divisors: signed_divisors(t),
            }
        };
        Ok(PhiEvalPlan { k, degree, kind })
    }

    /// The odd square-free core, or None for a power of two.
    pub fn k_reduced(&self) -> Option<u64> {
        match &self.kind {
            PlanKind::PowerOfTwo { .. } => None,
            PlanKind::Reduced { k_reduced, .. } => Some(*k_reduced),
        }
    }

    /// Degree of the polynomial actually evaluated after reduction:
    /// phi(k_reduced), or 2^(l-1) for a power of two. This is the quantity
    /// compared against the exact/sieve threshold.
    pub fn reduced_degree(&self) -> u64 {
        match &self.kind {
            PlanKind::PowerOfTwo { half_degree } => *half_degree,
            PlanKind::Reduced { k_reduced, .. } => {
                intfun::euler_phi(*k_reduced).expect("k_reduced positive")
            }
        }
    }
}

/// (d, mu(n/d)) for every divisor d of square-free n; mu never vanishes.
fn signed_divisors(n: u64) -> Vec<(u64, i8)> {
    let f = intfun::factorize(n).expect("positive");
    let omega = f.factors().len() as u32;
    intfun::divisors(&f)
        .into_iter()
        .map(|d| {
            let omega_d = intfun::factorize(d).expect("positive").factors().len() as u32;
            let mu = if (omega - omega_d) % 2 == 0 { 1 } else { -1 };
            (d, mu)
        })
        .collect()
}

fn plan_cache() -> &'static Mutex<HashMap<u64, Arc<PhiEvalPlan>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<PhiEvalPlan>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared read-only plan for k; built once, safe under concurrent readers.
pub fn plan_for(k: u64) -> Result<Arc<PhiEvalPlan>, PhiError> {
    if let Some(p) = plan_cache().lock().unwrap().get(&k) {
        return Ok(p.clone());
    }
    let plan = Arc::new(PhiEvalPlan::new(k)?);
    plan_cache()
        .lock()
        .unwrap()
        .entry(k)
        .or_insert_with(|| plan.clone());
    Ok(plan)
}

/// Lemma-4 special values: Phi_k(0) = 1; Phi_k(1) = p iff k = p^l, else 1;
/// Phi_k(-1) = 2 iff k = 2^l (l > 1), else 1. Requires k >= 3 and
/// k != 2 mod 4.
pub fn phi_special(k: u64, x: i64) -> Result<u64, PhiError> {
    if k < 3 {
        return Err(PhiError::KTooSmall(k));
    }
    if k % 4 == 2 {
        return Err(PhiError::KTwoModFour(k));
    }
    let f = intfun::factorize(k)?;
    match x {
        0 => Ok(1),
        1 => Ok(if f.factors().len() == 1 {
            f.factors()[0].0
        } else {
            1
        }),
        -1 => Ok(if f.factors() == [(2, k.trailing_zeros())] {
            2
        } else {
            1
        }),
        _ => Err(PhiError::NotSpecial(x)),
    }
}

/// Exact Phi_k(x) for k >= 3; always strictly positive.
pub fn phi_eval_exact(k: u64, x: i64) -> Result<BigUint, PhiError> {
    phi_eval_exact_with(k, x, crate::config::DEFAULT_BIT_CEILING)
}

pub fn phi_eval_exact_with(k: u64, x: i64, bit_ceiling: u64) -> Result<BigUint, PhiError> {
    let plan = plan_for(k)?;
    if x.unsigned_abs() >= 2 {
        let bits_per = 64 - (x.unsigned_abs() - 1).leading_zeros() as u64; // ceil(log2|x|)
        let estimated = plan.degree.saturating_mul(bits_per.max(1));
        if estimated > bit_ceiling {
            return Err(PhiError::BitCeiling {
                k,
                x,
                estimated_bits: estimated,
                ceiling: bit_ceiling,
            });
        }
    }
    let value = match &plan.kind {
        PlanKind::PowerOfTwo { half_degree } => {
            if x.unsigned_abs() <= 1 {
                BigInt::from(if x == 0 { 1 } else { 2 })
            } else {
                BigInt::from(x).pow(*half_degree as u32) + 1
            }
        }
        PlanKind::Reduced {
            k_reduced,
            lift_exponent,
            negate,
            divisors,
        } => {
            let mut y = BigInt::from(x).pow(*lift_exponent as u32);
            if *negate {
                y = -y;
            }
            if y.abs() <= BigInt::one() {
                let ys = y.to_i64().expect("|y| <= 1");
                BigInt::from(phi_special(*k_reduced, ys)?)
            } else {
                moebius_product(&y, divisors)
            }
        }
    };
    debug_assert!(value.is_positive(), "Phi_{k}({x}) must be positive");
    Ok(value.to_biguint().expect("positive"))
}

/// prod (y^d - 1)^mu over the signed divisors: mu = +1 factors multiply a
/// numerator, mu = -1 a denominator, one exact division at the end.
fn moebius_product(y: &BigInt, divisors: &[(u64, i8)]) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for &(d, mu) in divisors {
        let f = y.pow(d as u32) - BigInt::one();
        if mu > 0 {
            num *= f;
        } else {
            den *= f;
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "Moebius product must divide exactly");
    q
}

/// Residue of Phi_k(x) mod a prime P, or Degenerate when the Moebius
/// product cannot be evaluated safely because x = 1 mod P makes every
/// factor x^d - 1 vanish. A Degenerate result never stands in for a
/// wrong residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiMod {
    Residue(u64),
    Degenerate,
}

/// nu_P(x^d - 1) for odd P coprime to x, via the lifting-the-exponent
/// identity with base exponent e = ord_P(x).
fn nu_pow_minus_one(x: i64, d: u64, p_mod: u64, e: u64) -> u32 {
    if d % e != 0 {
        return 0;
    }
    let base = BigInt::from(x).pow(e as u32) - BigInt::one();
    let m_p = intfun::nu_p_big(p_mod, &base).expect("e = ord_P(x), so P divides x^e - 1");
    m_p + intfun::nu_p(p_mod, (d / e) as i64).expect("d / e is positive")
}

/// Unit part mod P of the vanishing factor sign * x^d - 1 with known
/// P-valuation nu: compute it mod P^(nu+1), strip P^nu.
fn factor_unit_mod(x: i64, d: u64, negate: bool, p_mod: u64, nu: u32) -> u64 {
    let modulus = BigUint::from(p_mod).pow(nu + 1);
    let base = BigInt::from(x)
        .mod_floor(&BigInt::from(modulus.clone()))
        .to_biguint()
        .expect("mod_floor is non-negative");
    let pow = base.modpow(&BigUint::from(d), &modulus);
    let f = if negate {
        // -x^d - 1 mod P^(nu+1)
        (&modulus - pow + &modulus - BigUint::one()) % &modulus
    } else {
        (pow + &modulus - BigUint::one()) % &modulus
    };
    let scale = BigUint::from(p_mod).pow(nu);
    debug_assert!((&f % &scale).is_zero(), "valuation bookkeeping is exact");
    let unit = (f / scale) % BigUint::from(p_mod);
    unit.to_u64().expect("reduced below a u64 prime")
}

pub fn phi_eval_mod(k: u64, x: i64, p_mod: u64) -> Result<PhiMod, PhiError> {
    let plan = plan_for(k)?;
    if (-1..=1).contains(&x) {
        // the special-value table makes these exact and tiny
        let v = phi_eval_exact(k, x)?;
        return Ok(PhiMod::Residue(
            (v % p_mod).to_u64().expect("reduced below a u64 prime"),
        ));
    }
    let xr = x.rem_euclid(p_mod as i64) as u64;
    match &plan.kind {
        PlanKind::PowerOfTwo { half_degree } => {
            let r = (intfun::modpow(xr, *half_degree, p_mod) + 1) % p_mod;
            Ok(PhiMod::Residue(r))
        }
        PlanKind::Reduced {
            lift_exponent,
            negate,
            divisors,
            ..
        } => {
            if xr == 1 {
                // every x^d - 1 vanishes mod P; skip this prime
                return Ok(PhiMod::Degenerate);
            }
            if xr == 0 {
                // each factor is sign * 0 - 1 = -1 or +(-1); Moebius
                // exponents sum to 0 for k >= 2, and Phi_k(0) = 1
                return Ok(PhiMod::Residue(1 % p_mod));
            }
            let e = intfun::mult_order(xr as i64, p_mod)?;
            let mut net: i64 = 0;
            let mut num = 1u64;
            let mut den = 1u64;
            for &(d, mu) in divisors {
                // the factor in terms of the original x: sign * x^(lift*d) - 1
                let dd = d * lift_exponent;
                let neg = *negate && d % 2 == 1;
                let t = intfun::modpow(xr, dd, p_mod);
                let f = if neg {
                    (2 * p_mod - t - 1) % p_mod
                } else {
                    (t + p_mod - 1) % p_mod
                };
                let (nu, unit) = if f != 0 {
                    (0u32, f)
                } else {
                    let nu = if neg {
                        // nu_P(x^dd + 1) = nu_P(x^(2 dd) - 1) - nu_P(x^dd - 1)
                        match dd.checked_mul(2) {
                            Some(dd2) => nu_pow_minus_one(x, dd2, p_mod, e)
                                - nu_pow_minus_one(x, dd, p_mod, e),
                            None => return Ok(PhiMod::Degenerate),
                        }
                    } else {
                        nu_pow_minus_one(x, dd, p_mod, e)
                    };
                    (nu, factor_unit_mod(x, dd, neg, p_mod, nu))
                };
                net += mu as i64 * nu as i64;
                if mu > 0 {
                    num = num * unit % p_mod;
                } else {
                    den = den * unit % p_mod;
                }
            }
            match net.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(PhiMod::Residue(0)),
                std::cmp::Ordering::Less => Ok(PhiMod::Degenerate),
                std::cmp::Ordering::Equal => {
                    let inv = intfun::modpow(den, p_mod - 2, p_mod);
                    Ok(PhiMod::Residue(num * inv % p_mod))
                }
            }
        }
    }
}

/// Outcome of screening one candidate x for Phi_k(x) = Y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveVerdict {
    pub candidate: i64,
    pub status: SieveStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveStatus {
    /// Phi_k(x) != Y (mod P) established with no degenerate factor.
    ExcludedAtPrime(u64),
    /// No sieve prime decided; requires exact confirmation.
    Inconclusive,
    /// Confirmed by exact evaluation.
    ConfirmedExact,
}

/// Run the modular sieve for one candidate over all primes below the
/// configured bound. Degenerate primes are skipped.
pub fn sieve_candidate(k: u64, x: i64, y: u64, cfg: &SolverConfig) -> Result<SieveVerdict, PhiError> {
    for p_mod in intfun::primes_below(cfg.sieve_prime_bound) {
        match phi_eval_mod(k, x, p_mod)? {
            PhiMod::Residue(r) if r != y % p_mod => {
                return Ok(SieveVerdict {
                    candidate: x,
                    status: SieveStatus::ExcludedAtPrime(p_mod),
                });
            }
            _ => {}
        }
    }
    Ok(SieveVerdict {
        candidate: x,
        status: SieveStatus::Inconclusive,
    })
}

/// All integers x with Phi_k(x) = Y, ascending. Requires k >= 3,
/// k != 2 mod 4, Y >= 2 (Y = 1 is classified by the Lemma-4 table and
/// handled by the caller).
///
/// Candidates are x = +-d for d | Y - 1: x divides
/// Phi_k(x) - Phi_k(0) = Y - 1. Each candidate is confirmed exactly when
/// the reduced degree is below the threshold, otherwise screened by the
/// modular sieve with survivors confirmed exactly.
pub fn solve_phi_eq(k: u64, y: u64, cfg: &SolverConfig) -> Result<Vec<i64>, PhiError> {
    if k % 4 == 2 {
        return Err(PhiError::KTwoModFour(k));
    }
    if y < 2 {
        return Err(PhiError::YTooSmall(y));
    }
    let plan = plan_for(k)?;
    let use_exact = plan.reduced_degree() <= cfg.exact_degree_threshold;
    let big_y = BigUint::from(y);
    let mut solutions = Vec::new();
    for d in intfun::divisors(&intfun::factorize(y - 1)?) {
        for x in [-(d as i64), d as i64] {
            let confirmed = if use_exact {
                phi_eval_exact_with(k, x, cfg.bit_ceiling)? == big_y
            } else {
                match sieve_candidate(k, x, y, cfg)?.status {
                    SieveStatus::ExcludedAtPrime(_) => false,
                    // survivor: verify directly
                    _ => phi_eval_exact_with(k, x, cfg.bit_ceiling)? == big_y,
                }
            };
            if confirmed {
                solutions.push(x);
            }
        }
    }
    solutions.sort_unstable();
    solutions.dedup();
    Ok(solutions)
}

/// Expanded coefficient vector of Phi_k, constant term first. Computed by
/// repeated exact polynomial division of x^d - 1 by lower cyclotomics;
/// independent of the Moebius-product evaluation path, which makes it the
/// test oracle. Intended for moderate k only.
pub fn phi_coefficients(k: u64) -> Vec<BigInt> {
    assert!(k >= 1);
    let mut memo: HashMap<u64, Vec<BigInt>> = HashMap::new();
    for d in intfun::divisors(&intfun::factorize(k).expect("positive")) {
        // x^d - 1
        let mut poly = vec![BigInt::zero(); d as usize + 1];
        poly[0] = BigInt::from(-1);
        poly[d as usize] = BigInt::one();
        for e in intfun::divisors(&intfun::factorize(d).expect("positive")) {
            if e < d {
                poly = poly_div_exact(&poly, &memo[&e]);
            }
        }
        memo.insert(d, poly);
    }
    memo.remove(&k).expect("computed")
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quo = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quo[i] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quo
}

/// Horner evaluation of an expanded coefficient vector.
pub fn eval_coefficients(coeffs: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}
