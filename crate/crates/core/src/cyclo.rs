//! Cyclotomic integers `Z[x] / Φ_e(x)` in the power basis.
//!
//! Values carry their conductor `e`. Binary operations between different
//! conductors first embed both operands into the ring of the lcm, sending
//! `x` to `x^(lcm/e)`. The power basis is an integral basis, so a value is an
//! algebraic integer exactly when its coefficients are integers.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{gcd, lcm};

#[derive(Debug)]
pub struct CycloRing {
    e: u32,
    /// Φ_e, lowest degree first, monic.
    phi: Vec<i64>,
    /// `x^i mod Φ_e` for `i in 0..e`.
    powers: Vec<Vec<i64>>,
}

impl CycloRing {
    fn new(e: u32) -> CycloRing {
        let phi = cyclotomic_polynomial(e);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(e as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..e {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[deg - 1];
            let mut next = vec![0i64; deg];
            next[1..deg].copy_from_slice(&cur[..deg - 1]);
            if top != 0 {
                for (t, n) in next.iter_mut().enumerate() {
                    *n -= top * phi[t];
                }
            }
            cur = next;
        }
        CycloRing { e, phi, powers }
    }

    pub fn conductor(&self) -> u32 {
        self.e
    }

    /// φ(e), the length of every coefficient vector.
    pub fn dimension(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn polynomial(&self) -> &[i64] {
        &self.phi
    }
}

/// Φ_n with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_divide(&num, &cyclotomic_polynomial(d));
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn ring(e: u32) -> Arc<CycloRing> {
    static RINGS: OnceLock<Mutex<HashMap<u32, Arc<CycloRing>>>> = OnceLock::new();
    assert!(e >= 1, "conductor must be positive");
    let rings = RINGS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = rings.lock().unwrap().get(&e) {
        return r.clone();
    }
    let r = Arc::new(CycloRing::new(e));
    rings.lock().unwrap().entry(e).or_insert(r).clone()
}

#[derive(Clone)]
pub struct Cyclo {
    ring: Arc<CycloRing>,
    coeffs: Vec<i64>,
}

impl Cyclo {
    pub fn zero(e: u32) -> Cyclo {
        let ring = ring(e);
        let coeffs = vec![0; ring.dimension()];
        Cyclo { ring, coeffs }
    }

    pub fn from_int(e: u32, n: i64) -> Cyclo {
        let mut c = Cyclo::zero(e);
        c.coeffs[0] = n;
        c
    }

    pub fn one(e: u32) -> Cyclo {
        Cyclo::from_int(e, 1)
    }

    /// `ζ_e^k`.
    pub fn root_power(e: u32, k: u64) -> Cyclo {
        Cyclo::from_terms(e, [(k, 1)])
    }

    /// `Σ c ζ_e^k` over the given `(k, c)` terms.
    pub fn from_terms(e: u32, terms: impl IntoIterator<Item = (u64, i64)>) -> Cyclo {
        let ring = ring(e);
        let mut coeffs = vec![0i64; ring.dimension()];
        for (k, c) in terms {
            if c == 0 {
                continue;
            }
            let pw = &ring.powers[(k % e as u64) as usize];
            for (o, &v) in coeffs.iter_mut().zip(pw) {
                *o += c * v;
            }
        }
        Cyclo { ring, coeffs }
    }

    /// Rebuilds from canonical coefficients; `coeffs.len()` must be φ(e).
    pub fn from_coeffs(e: u32, coeffs: Vec<i64>) -> Cyclo {
        let ring = ring(e);
        assert_eq!(coeffs.len(), ring.dimension(), "coefficient count must equal φ(e)");
        Cyclo { ring, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.ring.e
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k as u64, c))
    }

    /// Image under `x ↦ x^(e2/e)`; `e` must divide `e2`.
    pub fn embed(&self, e2: u32) -> Cyclo {
        let e = self.conductor();
        if e == e2 {
            return self.clone();
        }
        assert!(e2.is_multiple_of(e), "cannot embed conductor {e} into {e2}");
        let step = (e2 / e) as u64;
        Cyclo::from_terms(e2, self.terms().map(|(k, c)| (k * step, c)))
    }

    /// Galois automorphism `ζ ↦ ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: u64) -> Cyclo {
        let e = self.conductor();
        debug_assert_eq!(gcd(k, e as u64), 1);
        Cyclo::from_terms(e, self.terms().map(|(i, c)| (i * k, c)))
    }

    /// Complex conjugate, `ζ ↦ ζ^-1`.
    pub fn conj(&self) -> Cyclo {
        let e = self.conductor() as u64;
        Cyclo::from_terms(e as u32, self.terms().map(|(i, c)| ((e - i % e) % e, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, n: i64) -> Cyclo {
        Cyclo { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| c * n).collect() }
    }

    /// `self / n` when the quotient is again a cyclotomic integer.
    pub fn div_exact(&self, n: i64) -> Option<Cyclo> {
        if n == 0 || self.coeffs.iter().any(|c| c % n != 0) {
            return None;
        }
        Some(Cyclo { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| c / n).collect() })
    }

    fn aligned(&self, other: &Cyclo) -> (Cyclo, Cyclo) {
        let e = lcm(self.conductor() as u64, other.conductor() as u64) as u32;
        (self.embed(e), other.embed(e))
    }

    fn same_ring(&self, other: &Cyclo) -> bool {
        self.ring.e == other.ring.e
    }

    fn mul_same(&self, other: &Cyclo) -> Cyclo {
        let e = self.ring.e as usize;
        let mut buf = vec![0i64; e];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    buf[(i + j) % e] += a * b;
                }
            }
        }
        let mut coeffs = vec![0i64; self.coeffs.len()];
        for (k, &c) in buf.iter().enumerate() {
            if c != 0 {
                for (o, &v) in coeffs.iter_mut().zip(&self.ring.powers[k]) {
                    *o += c * v;
                }
            }
        }
        Cyclo { ring: self.ring.clone(), coeffs }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        if self.same_ring(other) {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.aligned(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclo {}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        if !self.same_ring(rhs) {
            let (a, b) = self.aligned(rhs);
            return &a + &b;
        }
        Cyclo {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.scale(-1)
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if !self.same_ring(rhs) {
            let (a, b) = self.aligned(rhs);
            return a.mul_same(&b);
        }
        self.mul_same(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.scale(-1)
    }
}

impl fmt::Display for Cyclo {
    /// Polynomial in `z = ζ_e`, e.g. `-1-z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (k, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "z".to_string(),
                (1, m) => format!("{m}z"),
                (k, 1) => format!("z^{k}"),
                (k, m) => format!("{m}z^{k}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [e={}]", self, self.conductor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn roots_of_unity() {
        let z = Cyclo::root_power(3, 1);
        let z2 = &z * &z;
        assert_eq!(z2, Cyclo::root_power(3, 2));
        assert_eq!(&(&z * &z2), &Cyclo::one(3));
        // 1 + z + z^2 = 0
        assert!((&(&Cyclo::one(3) + &z) + &z2).is_zero());
        assert_eq!(z.conj(), z2);
        assert_eq!(z.galois(2), z2);
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let a = Cyclo::from_terms(4, [(1, 2), (0, -1)]);
        let b = Cyclo::from_terms(6, [(1, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.conductor(), 12);
        assert_eq!(prod, &a.embed(12) * &b.embed(12));
        assert_eq!(Cyclo::one(3), Cyclo::one(6));
        assert_eq!(Cyclo::root_power(3, 1), Cyclo::root_power(6, 2));
        assert_ne!(Cyclo::root_power(3, 1), Cyclo::root_power(6, 1));
    }
}
