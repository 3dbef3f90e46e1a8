//! Per-conductor context for ℚ(ζ_m): the cyclotomic polynomial, reduction,
//! Galois action and a lookup table for roots of unity.
//!
//! Contexts are created on first use and live for the rest of the process,
//! so numbers carry a `&'static Field` and never take a lock on the hot path.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::int::Int;
use super::CycloError;

/// Default upper bound on conductors.
pub const DEFAULT_CONDUCTOR_CAP: u32 = 10080;

static CONDUCTOR_CAP: AtomicU32 = AtomicU32::new(DEFAULT_CONDUCTOR_CAP);

/// Sets the process-wide conductor cap. Existing contexts are unaffected.
pub fn set_conductor_cap(cap: u32) {
    CONDUCTOR_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub fn conductor_cap() -> u32 {
    CONDUCTOR_CAP.load(Ordering::Relaxed)
}

fn registry() -> &'static RwLock<HashMap<u32, &'static Field>> {
    static REG: OnceLock<RwLock<HashMap<u32, &'static Field>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

pub struct Field {
    m: u32,
    phi: usize,
    /// Φ_m, low degree first, monic of degree `phi`.
    cyclo: Vec<i64>,
    /// Nonzero (degree, coefficient) pairs of Φ_m below the leading term.
    cyclo_sparse: Vec<(usize, i64)>,
    units: OnceLock<HashMap<Vec<i64>, (bool, u32)>>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q(zeta_{})", self.m)
    }
}

impl Field {
    /// Returns the (shared) context for ℚ(ζ_m).
    pub fn get(m: u32) -> Result<&'static Field, CycloError> {
        if m == 0 {
            return Err(CycloError::InvalidConductor(0));
        }
        if let Some(f) = registry().read().expect("field registry poisoned").get(&m) {
            return Ok(f);
        }
        let cap = conductor_cap();
        if m > cap {
            return Err(CycloError::ConductorTooLarge { conductor: m, cap });
        }
        let mut reg = registry().write().expect("field registry poisoned");
        if let Some(f) = reg.get(&m) {
            return Ok(f);
        }
        let cyclo = cyclotomic_polynomial(m);
        let phi = cyclo.len() - 1;
        let cyclo_sparse = cyclo[..phi]
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i, *c))
            .collect();
        let field: &'static Field = Box::leak(Box::new(Field {
            m,
            phi,
            cyclo,
            cyclo_sparse,
            units: OnceLock::new(),
        }));
        reg.insert(m, field);
        Ok(field)
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Degree of ℚ(ζ_m) over ℚ.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn cyclotomic_coeffs(&self) -> &[i64] {
        &self.cyclo
    }

    /// Reduced coefficients of ζ^e.
    pub fn power(&self, e: i64) -> Vec<i64> {
        let e = e.rem_euclid(self.m as i64) as usize;
        if e < self.phi {
            let mut v = vec![0; self.phi];
            v[e] = 1;
            return v;
        }
        let mut poly = vec![0i128; e + 1];
        poly[e] = 1;
        self.reduce_i128(&mut poly)
            .map(|v| v.into_iter().map(|x| x as i64).collect())
            .expect("power of zeta overflowed")
    }

    /// Reduces `poly` (low degree first) modulo Φ_m in place; returns the
    /// first `phi` coefficients, or `None` on overflow.
    pub(crate) fn reduce_i128(&self, poly: &mut [i128]) -> Option<Vec<i128>> {
        let phi = self.phi;
        for d in (phi..poly.len()).rev() {
            let c = poly[d];
            if c == 0 {
                continue;
            }
            poly[d] = 0;
            let base = d - phi;
            for &(j, a) in &self.cyclo_sparse {
                let t = c.checked_mul(a as i128)?;
                poly[base + j] = poly[base + j].checked_sub(t)?;
            }
        }
        let mut out = vec![0i128; phi];
        let k = poly.len().min(phi);
        out[..k].copy_from_slice(&poly[..k]);
        Some(out)
    }

    pub(crate) fn reduce_big(&self, poly: &mut [BigInt]) -> Vec<Int> {
        let phi = self.phi;
        for d in (phi..poly.len()).rev() {
            if poly[d].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[d]);
            let base = d - phi;
            for &(j, a) in &self.cyclo_sparse {
                poly[base + j] -= &c * a;
            }
        }
        let mut out = vec![Int::ZERO; phi];
        for (o, p) in out.iter_mut().zip(poly.iter()) {
            *o = Int::from(p.clone());
        }
        out
    }

    /// Reduces an integer polynomial of arbitrary degree.
    pub(crate) fn reduce_ints(&self, poly: &[Int]) -> Vec<Int> {
        if poly.len() <= self.phi {
            let mut out = poly.to_vec();
            out.resize(self.phi, Int::ZERO);
            return out;
        }
        let small: Option<Vec<i128>> = poly
            .iter()
            .map(|x| x.as_small().map(|v| v as i128))
            .collect();
        if let Some(mut p) = small {
            if let Some(out) = self.reduce_i128(&mut p) {
                if let Some(v) = out.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>() {
                    return v.into_iter().map(Int::from).collect();
                }
            }
        }
        let mut big: Vec<BigInt> = poly.iter().map(Int::to_big).collect();
        self.reduce_big(&mut big)
    }

    /// Looks up `±ζ^e` for an integral coefficient vector: returns
    /// `(negated, e)`.
    pub(crate) fn unit_lookup(&self, coeffs: &[Int]) -> Option<(bool, u32)> {
        // Tables are only built for modest conductors.
        if (self.m as usize) * self.phi > 400_000 {
            return None;
        }
        let key: Option<Vec<i64>> = coeffs.iter().map(Int::as_small).collect();
        let key = key?;
        let table = self.units.get_or_init(|| {
            let mut t = HashMap::with_capacity(2 * self.m as usize);
            for e in 0..self.m {
                let p = self.power(e as i64);
                let n: Vec<i64> = p.iter().map(|x| -x).collect();
                t.entry(n).or_insert((true, e));
                t.insert(p, (false, e));
            }
            t
        });
        table.get(&key).copied()
    }
}

/// Integer coefficients of Φ_m, low degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    // Φ_m = ∏_{d | m} (x^d - 1)^{μ(m/d)}: multiply first, then divide.
    let mut primes = Vec::new();
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            primes.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    let mut mul_by = Vec::new();
    let mut div_by = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let sq: u32 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| *p)
            .product();
        if mask.count_ones() % 2 == 0 {
            mul_by.push(m / sq);
        } else {
            div_by.push(m / sq);
        }
    }
    let mut poly = vec![1i64];
    for d in mul_by {
        let d = d as usize;
        let mut next = vec![0i64; poly.len() + d];
        for (i, c) in poly.iter().enumerate() {
            next[i + d] += c;
            next[i] -= c;
        }
        poly = next;
    }
    for d in div_by {
        // exact division by x^d - 1
        let d = d as usize;
        let qlen = poly.len() - d;
        let mut q = vec![0i64; qlen];
        for i in (0..qlen).rev() {
            let c = poly[i + d];
            q[i] = c;
            poly[i] += c;
            poly[i + d] = 0;
        }
        debug_assert!(poly.iter().all(|x| *x == 0));
        poly = q;
    }
    poly
}

pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len() - 1, 48);
        assert!(p105.contains(&-2));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..60 {
            assert_eq!(Field::get(m).unwrap().degree() as u32, euler_phi(m));
        }
    }

    #[test]
    fn conductor_cap_rejects_large() {
        let err = Field::get(DEFAULT_CONDUCTOR_CAP + 1).unwrap_err();
        assert!(matches!(err, CycloError::ConductorTooLarge { .. }));
    }
}
