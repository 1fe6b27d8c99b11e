//! Exact arithmetic in Z[zeta_k] on the power basis, root-of-unity
//! recognition, and the multiplicative-dependence decision for pairs
//! (-m + zeta_k, -(m+a) + zeta_k).
//!
//! Elements are immutable integer coefficient vectors of length phi(k),
//! canonically reduced modulo Phi_k. The per-k modulus is built once and
//! shared read-only.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclotomic::{self, PhiError};
use crate::intfun::{self, gcd_u64, IntfunError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("k must be at least 3, got {0}")]
    KTooSmall(u64),
    #[error("k = {0} is 2 mod 4; reduce the pair via Remark-3 negation first")]
    KTwoModFour(u64),
    #[error("mismatched cyclotomic orders {0} and {1}")]
    MixedOrders(u64, u64),
    #[error("integer too large to factor for the dependence test")]
    FactorTooLarge,
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Intfun(#[from] IntfunError),
}

fn modulus_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Phi_k (constant term first), cached and shared.
fn modulus_for(k: u64) -> Arc<Vec<BigInt>> {
    if let Some(m) = modulus_cache().lock().unwrap().get(&k) {
        return m.clone();
    }
    let m = Arc::new(cyclotomic::phi_coefficients(k));
    modulus_cache()
        .lock()
        .unwrap()
        .entry(k)
        .or_insert_with(|| m.clone())
        .clone()
}

/// An element of Z[zeta_k]: coefficient of zeta_k^i at index i, reduced
/// modulo Phi_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycElement {
    k: u64,
    coeffs: Vec<BigInt>,
}

impl CycElement {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn zero(k: u64) -> Result<Self, CycError> {
        let deg = degree_of(k)?;
        Ok(CycElement {
            k,
            coeffs: vec![BigInt::zero(); deg],
        })
    }

    pub fn one(k: u64) -> Result<Self, CycError> {
        let mut e = Self::zero(k)?;
        e.coeffs[0] = BigInt::one();
        Ok(e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        CycElement {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiply by zeta_k: shift up one power and reduce the single
    /// overflowing term against the monic modulus.
    pub fn mul_by_zeta(&self) -> Self {
        let modulus = modulus_for(self.k);
        let deg = self.coeffs.len();
        let mut out = vec![BigInt::zero(); deg];
        let top = self.coeffs[deg - 1].clone();
        for i in 1..deg {
            out[i] = self.coeffs[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..deg {
                out[i] -= &top * &modulus[i];
            }
        }
        CycElement {
            k: self.k,
            coeffs: out,
        }
    }
}

fn degree_of(k: u64) -> Result<usize, CycError> {
    if k < 3 {
        return Err(CycError::KTooSmall(k));
    }
    Ok(intfun::euler_phi(k)? as usize)
}

/// Construct -m + zeta_k.
pub fn element_from_base(m: i64, k: u64) -> Result<CycElement, CycError> {
    let mut e = CycElement::zero(k)?;
    e.coeffs[0] = BigInt::from(-m);
    e.coeffs[1] = BigInt::one();
    Ok(e)
}

/// Canonical product in Z[zeta_k]: schoolbook convolution, then remainder
/// by the monic Phi_k.
pub fn mul(u: &CycElement, v: &CycElement) -> Result<CycElement, CycError> {
    if u.k != v.k {
        return Err(CycError::MixedOrders(u.k, v.k));
    }
    let deg = u.coeffs.len();
    let mut prod = vec![BigInt::zero(); 2 * deg - 1];
    for (i, a) in u.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in v.coeffs.iter().enumerate() {
            if !b.is_zero() {
                prod[i + j] += a * b;
            }
        }
    }
    let modulus = modulus_for(u.k);
    reduce_in_place(&mut prod, &modulus);
    Ok(CycElement {
        k: u.k,
        coeffs: prod,
    })
}

/// Remainder modulo the monic modulus; output has exactly deg coefficients.
fn reduce_in_place(poly: &mut Vec<BigInt>, modulus: &[BigInt]) {
    let deg = modulus.len() - 1;
    let mut i = poly.len();
    while i > deg {
        i -= 1;
        let c = std::mem::replace(&mut poly[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        let base = i - deg;
        for (j, mc) in modulus[..deg].iter().enumerate() {
            poly[base + j] -= &c * mc;
        }
    }
    poly.resize(deg, BigInt::zero());
}

/// Square-and-multiply power; e = 0 gives 1.
pub fn pow(u: &CycElement, e: u64) -> Result<CycElement, CycError> {
    let mut acc = CycElement::one(u.k)?;
    let mut base = u.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base)?;
        }
    }
    Ok(acc)
}

/// Norm of -m + zeta_k, which is Phi_k(m).
pub fn norm_of_base(m: i64, k: u64) -> Result<BigUint, CycError> {
    norm_of_base_with(m, k, crate::config::DEFAULT_BIT_CEILING)
}

pub fn norm_of_base_with(m: i64, k: u64, bit_ceiling: u64) -> Result<BigUint, CycError> {
    if k < 3 {
        return Err(CycError::KTooSmall(k));
    }
    Ok(cyclotomic::phi_eval_exact_with(k, m, bit_ceiling)?)
}

/// Root-of-unity recognition by comparison against the 2k reduced torsion
/// elements {+-zeta_k^j}. Returns the first match as (sign, j) with
/// j in [0, k).
pub fn is_root_of_unity(u: &CycElement) -> Option<(i8, u64)> {
    let mut zeta_j = CycElement::one(u.k).expect("valid k");
    for j in 0..u.k {
        if *u == zeta_j {
            return Some((1, j));
        }
        if *u == zeta_j.neg() {
            return Some((-1, j));
        }
        zeta_j = zeta_j.mul_by_zeta();
    }
    None
}

/// -m + zeta_k is a root of unity iff m = 0, or (m, k) = (1, 6), or
/// (m, k) = (-1, 3). (Torsion forces every conjugate |m - zeta_k^j| = 1,
/// i.e. m = 0 or cos(2 pi j / k) = m/2 for all primitive j.)
pub fn base_is_torsion(m: i64, k: u64) -> bool {
    m == 0 || (m == 1 && k == 6) || (m == -1 && k == 3)
}

/// Order of the torsion element sign * zeta_k^j in the unit group.
pub fn torsion_order(sign: i8, j: u64, k: u64) -> u64 {
    let gcd0 = |j: u64, k: u64| if j == 0 { k } else { gcd_u64(j, k) };
    if sign > 0 {
        k / gcd0(j % k, k)
    } else if k % 2 == 0 {
        // -1 = zeta_k^(k/2)
        k / gcd0((j + k / 2) % k, k)
    } else {
        // k odd: -zeta^j has even order 2 * k/gcd
        2 * (k / gcd0(j % k, k))
    }
}

/// Multiplicative dependence verdict for a pair of rational integers
/// A, B >= 1: dependent with minimal coprime exponents (r0, s0) such that
/// A^r0 = B^s0, or independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntDependence {
    pub a: BigUint,
    pub b: BigUint,
    pub verdict: IntVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntVerdict {
    Independent,
    Dependent { r0: u64, s0: u64 },
}

/// Integers are dependent iff they share prime support with proportional
/// exponent vectors. Only the smaller side is factored; the larger side's
/// exponents are read off by exact division, so it may be arbitrarily big.
pub fn int_mult_dependent(a: &BigUint, b: &BigUint) -> Result<IntDependence, CycError> {
    let one = BigUint::one();
    debug_assert!(*a >= one && *b >= one);
    let mk = |verdict| {
        Ok(IntDependence {
            a: a.clone(),
            b: b.clone(),
            verdict,
        })
    };
    if a.is_one() && b.is_one() {
        return mk(IntVerdict::Dependent { r0: 1, s0: 1 });
    }
    if a.is_one() {
        return mk(IntVerdict::Dependent { r0: 1, s0: 0 });
    }
    if b.is_one() {
        return mk(IntVerdict::Dependent { r0: 0, s0: 1 });
    }
    let swapped = a > b;
    let (small, large) = if swapped { (b, a) } else { (a, b) };
    let small_u64 = small.to_u64().ok_or(CycError::FactorTooLarge)?;
    let fact = intfun::factorize(small_u64)?;
    // exponent vectors: e over the small side, f over the large side
    let mut rest = large.clone();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for &(p, e) in fact.factors() {
        let bp = BigUint::from(p);
        let mut f = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            f += 1;
        }
        if f == 0 {
            return mk(IntVerdict::Independent);
        }
        pairs.push((e, f));
    }
    if !rest.is_one() {
        // the large side has a prime outside the small side's support
        return mk(IntVerdict::Independent);
    }
    let (e0, f0) = pairs[0];
    if pairs
        .iter()
        .any(|&(e, f)| e as u64 * f0 as u64 != f as u64 * e0 as u64)
    {
        return mk(IntVerdict::Independent);
    }
    let g = gcd_u64(e0 as u64, f0 as u64);
    // small^(f0/g) = large^(e0/g)
    let (rs, ss) = (f0 as u64 / g, e0 as u64 / g);
    let (r0, s0) = if swapped { (ss, rs) } else { (rs, ss) };
    mk(IntVerdict::Dependent { r0, s0 })
}

/// A verified certificate that alpha^r0 = sign * zeta_k^j * beta^s0, with
/// the derived torsion-free relation alpha^(r0 t) = beta^(s0 t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceWitness {
    pub r0: u64,
    pub s0: u64,
    pub sign: i8,
    pub j: u64,
    pub full_r: u64,
    pub full_s: u64,
}

impl DependenceWitness {
    /// Re-verify the relation exactly in Z[zeta_k] for the pair
    /// (-m + zeta_k, -(m+a) + zeta_k).
    pub fn verify(&self, m: i64, a: u64, k: u64) -> Result<bool, CycError> {
        self.verify_pair(m, m + a as i64, k)
    }

    pub fn verify_pair(&self, m: i64, n: i64, k: u64) -> Result<bool, CycError> {
        let alpha = element_from_base(m, k)?;
        let beta = element_from_base(n, k)?;
        let lhs = pow(&alpha, self.r0)?;
        let mut rhs = pow(&beta, self.s0)?;
        for _ in 0..self.j {
            rhs = rhs.mul_by_zeta();
        }
        if self.sign < 0 {
            rhs = rhs.neg();
        }
        if lhs != rhs {
            return Ok(false);
        }
        let t = torsion_order(self.sign, self.j, k);
        if self.full_r != self.r0 * t || self.full_s != self.s0 * t {
            return Ok(false);
        }
        Ok(pow(&alpha, self.full_r)? == pow(&beta, self.full_s)?)
    }
}

/// Which base of the pair is a root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsionSide {
    Alpha { order: u64 },
    Beta { order: u64 },
    Both { alpha_order: u64, beta_order: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dependence {
    Independent,
    Dependent(DependenceWitness),
    TorsionBase(TorsionSide),
}

fn base_torsion_order(m: i64, k: u64) -> u64 {
    debug_assert!(base_is_torsion(m, k));
    if m == 0 {
        k // zeta_k itself
    } else if m == 1 {
        3 // -1 + zeta_6 = zeta_3
    } else {
        6 // 1 + zeta_3 = zeta_6 up to the canonical embedding
    }
}

/// Decide multiplicative dependence of alpha = -m + zeta_k and
/// beta = -(m+a) + zeta_k for k >= 3, k != 2 mod 4.
///
/// Dependence of the pair forces dependence of the norms A = Phi_k(m) and
/// B = Phi_k(m+a); the converse completion searches the torsion twist
/// alpha^r0 = +-zeta_k^j * beta^s0 over the 2k roots of unity of
/// Q(zeta_k).
pub fn decide_dependence(m: i64, a: u64, k: u64) -> Result<Dependence, CycError> {
    decide_dependence_with(m, a, k, crate::config::DEFAULT_BIT_CEILING)
}

pub fn decide_dependence_with(
    m: i64,
    a: u64,
    k: u64,
    bit_ceiling: u64,
) -> Result<Dependence, CycError> {
    decide_pair_with(m, m + a as i64, k, bit_ceiling)
}

/// General form taking the pair (-m + zeta_k, -n + zeta_k) directly; the
/// witness is oriented alpha -> beta, i.e. first base to second.
pub fn decide_pair(m: i64, n: i64, k: u64) -> Result<Dependence, CycError> {
    decide_pair_with(m, n, k, crate::config::DEFAULT_BIT_CEILING)
}

pub fn decide_pair_with(
    m: i64,
    n: i64,
    k: u64,
    bit_ceiling: u64,
) -> Result<Dependence, CycError> {
    if k < 3 {
        return Err(CycError::KTooSmall(k));
    }
    if k % 4 == 2 {
        return Err(CycError::KTwoModFour(k));
    }
    // (i) a torsion base makes dependence trivial: alpha^t = 1 = beta^0
    let alpha_torsion = base_is_torsion(m, k);
    let beta_torsion = base_is_torsion(n, k);
    match (alpha_torsion, beta_torsion) {
        (true, true) => {
            return Ok(Dependence::TorsionBase(TorsionSide::Both {
                alpha_order: base_torsion_order(m, k),
                beta_order: base_torsion_order(n, k),
            }))
        }
        (true, false) => {
            return Ok(Dependence::TorsionBase(TorsionSide::Alpha {
                order: base_torsion_order(m, k),
            }))
        }
        (false, true) => {
            return Ok(Dependence::TorsionBase(TorsionSide::Beta {
                order: base_torsion_order(n, k),
            }))
        }
        (false, false) => {}
    }
    let norm_a = norm_of_base_with(m, k, bit_ceiling)?;
    let norm_b = norm_of_base_with(n, k, bit_ceiling)?;
    let a_unit = norm_a.is_one();
    let b_unit = norm_b.is_one();
    // (ii) exactly one unit: the norm equation A^r = B^s forces the
    // non-unit's exponent to zero, and the unit is not torsion.
    if a_unit ^ b_unit {
        return Ok(Dependence::Independent);
    }
    // (iii)/(iv): norm dependence first, then the torsion-twist completion.
    // Both-units lands here with (r0, s0) = (1, 1); Lemma 5 proves that
    // configuration independent, so a hit would contradict it.
    let int_dep = int_mult_dependent(&norm_a, &norm_b)?;
    let (r0, s0) = match int_dep.verdict {
        IntVerdict::Independent => return Ok(Dependence::Independent),
        IntVerdict::Dependent { r0, s0 } => (r0, s0),
    };
    debug_assert!(r0 >= 1 && s0 >= 1, "unit cases were handled above");
    let alpha = element_from_base(m, k)?;
    let beta = element_from_base(n, k)?;
    let x = pow(&alpha, r0)?;
    let z = pow(&beta, s0)?;
    let mut zj = z;
    for j in 0..k {
        let (hit, sign) = if x == zj {
            (true, 1i8)
        } else if x == zj.neg() {
            (true, -1i8)
        } else {
            (false, 0)
        };
        if hit {
            if a_unit && b_unit {
                eprintln!(
                    "AUDIT: both-units pair (m={m}, n={n}, k={k}) verified dependent; \
                     this contradicts the units lemma and must be investigated"
                );
            }
            let t = torsion_order(sign, j, k);
            let witness = DependenceWitness {
                r0,
                s0,
                sign,
                j,
                full_r: r0 * t,
                full_s: s0 * t,
            };
            debug_assert!(witness.verify_pair(m, n, k)?);
            return Ok(Dependence::Dependent(witness));
        }
        zj = zj.mul_by_zeta();
    }
    Ok(Dependence::Independent)
}
