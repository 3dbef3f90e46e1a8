//! Elements of ℚ(ζ_m) in the reduced power basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::Field;
use super::int::Int;
use super::{common_conductor, CycloError, RootOfUnity};

/// `num / den` where `num` holds integer coordinates in the basis
/// `1, ζ, …, ζ^{φ(m)-1}`. Normalized: `den > 0` and the gcd of all
/// numerators with `den` is 1, so equal values in one field compare equal
/// field by field.
#[derive(Clone)]
pub struct CycNum {
    field: &'static Field,
    num: Vec<Int>,
    den: Int,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// ζ_m^k in reduced form.
pub fn cyc_root_of_unity(m: u32, k: i64) -> Result<CycNum, CycloError> {
    CycNum::root_of_unity(m, k)
}

/// Field operation with automatic lift to the lcm of the conductors.
pub fn cyc_arith(a: &CycNum, b: &CycNum, op: ArithOp) -> Result<CycNum, CycloError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

impl CycNum {
    pub fn zero(m: u32) -> Result<CycNum, CycloError> {
        Ok(Self::zero_in(Field::get(m)?))
    }

    pub fn one(m: u32) -> Result<CycNum, CycloError> {
        Ok(Self::from_int_in(Field::get(m)?, 1))
    }

    pub fn from_int(m: u32, v: i64) -> Result<CycNum, CycloError> {
        Ok(Self::from_int_in(Field::get(m)?, v))
    }

    pub fn from_rational(m: u32, n: i64, d: i64) -> Result<CycNum, CycloError> {
        if d == 0 {
            return Err(CycloError::DivisionByZero);
        }
        let f = Field::get(m)?;
        let mut num = vec![Int::ZERO; f.degree()];
        num[0] = Int::from(n);
        Ok(Self::build(f, num, Int::from(d)))
    }

    pub fn root_of_unity(m: u32, k: i64) -> Result<CycNum, CycloError> {
        let f = Field::get(m)?;
        Ok(Self::root_in(f, k))
    }

    pub fn zero_in(f: &'static Field) -> CycNum {
        CycNum {
            field: f,
            num: vec![Int::ZERO; f.degree()],
            den: Int::ONE,
        }
    }

    pub fn from_int_in(f: &'static Field, v: i64) -> CycNum {
        let mut num = vec![Int::ZERO; f.degree()];
        num[0] = Int::from(v);
        CycNum {
            field: f,
            num,
            den: Int::ONE,
        }
    }

    pub fn root_in(f: &'static Field, k: i64) -> CycNum {
        CycNum {
            field: f,
            num: f.power(k).into_iter().map(Int::from).collect(),
            den: Int::ONE,
        }
    }

    /// Builds from an integer polynomial of any degree and a nonzero
    /// denominator.
    pub fn from_poly(f: &'static Field, poly: &[Int], den: Int) -> CycNum {
        Self::build(f, f.reduce_ints(poly), den)
    }

    /// Builds from rational coordinates `(num, den)` in the power basis.
    pub fn from_rational_coeffs(
        m: u32,
        coeffs: &[(Int, Int)],
    ) -> Result<CycNum, CycloError> {
        let f = Field::get(m)?;
        if coeffs.len() != f.degree() {
            return Err(CycloError::Malformed(format!(
                "expected {} coefficients for conductor {m}, got {}",
                f.degree(),
                coeffs.len()
            )));
        }
        let mut den = Int::ONE;
        for (_, d) in coeffs {
            if d.is_zero() {
                return Err(CycloError::DivisionByZero);
            }
            let g = den.gcd(d);
            den = den.div_exact(&g).mul(d);
        }
        let num = coeffs
            .iter()
            .map(|(n, d)| n.mul(&den.div_exact(d)))
            .collect();
        Ok(Self::build(f, num, den))
    }

    fn build(field: &'static Field, num: Vec<Int>, den: Int) -> CycNum {
        let mut x = CycNum { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Int::is_zero) {
            self.den = Int::ONE;
            return;
        }
        if self.den.is_negative() {
            self.den = self.den.neg();
            for c in &mut self.num {
                *c = c.neg();
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den = self.den.div_exact(&g);
            for c in &mut self.num {
                *c = c.div_exact(&g);
            }
        }
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    /// Integer numerators in the power basis (common denominator
    /// [`CycNum::denominator`]).
    pub fn numerators(&self) -> &[Int] {
        &self.num
    }

    pub fn denominator(&self) -> &Int {
        &self.den
    }

    /// Reduced rational coordinates in the power basis.
    pub fn coeffs(&self) -> Vec<(Int, Int)> {
        self.num
            .iter()
            .map(|c| {
                if c.is_zero() {
                    return (Int::ZERO, Int::ONE);
                }
                let g = c.gcd(&self.den);
                (c.div_exact(&g), self.den.div_exact(&g))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Int::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Int::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Int::is_zero)
    }

    /// The same number in ℚ(ζ_M), `m | M`.
    pub fn lift(&self, m_new: u32) -> Result<CycNum, CycloError> {
        let m = self.conductor();
        if m_new == m {
            return Ok(self.clone());
        }
        if m_new % m != 0 {
            return Err(CycloError::InvalidConductor(m_new as u64));
        }
        let f = Field::get(m_new)?;
        Ok(self.lift_to(f))
    }

    pub(crate) fn lift_to(&self, f: &'static Field) -> CycNum {
        if std::ptr::eq(f, self.field) {
            return self.clone();
        }
        let step = (f.conductor() / self.conductor()) as usize;
        if self.is_rational() {
            let mut num = vec![Int::ZERO; f.degree()];
            num[0] = self.num[0].clone();
            return CycNum {
                field: f,
                num,
                den: self.den.clone(),
            };
        }
        let mut poly = vec![Int::ZERO; (self.num.len() - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        CycNum {
            field: f,
            num: f.reduce_ints(&poly),
            den: self.den.clone(),
        }
    }

    fn aligned(a: &CycNum, b: &CycNum) -> Result<(&'static Field, CycNum, CycNum), CycloError> {
        let m = common_conductor(a.conductor(), b.conductor())?;
        let f = Field::get(m)?;
        Ok((f, a.lift_to(f), b.lift_to(f)))
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum, CycloError> {
        if std::ptr::eq(self.field, other.field) {
            return Ok(self.add_same(other, false));
        }
        let (_, a, b) = Self::aligned(self, other)?;
        Ok(a.add_same(&b, false))
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum, CycloError> {
        if std::ptr::eq(self.field, other.field) {
            return Ok(self.add_same(other, true));
        }
        let (_, a, b) = Self::aligned(self, other)?;
        Ok(a.add_same(&b, true))
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum, CycloError> {
        if std::ptr::eq(self.field, other.field) {
            return Ok(self.mul_same(other));
        }
        let (_, a, b) = Self::aligned(self, other)?;
        Ok(a.mul_same(&b))
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum, CycloError> {
        let inv = other.inv()?;
        self.try_mul(&inv)
    }

    fn add_same(&self, other: &CycNum, subtract: bool) -> CycNum {
        let combine = |x: &Int, y: &Int| if subtract { x.sub(y) } else { x.add(y) };
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(x, y)| combine(x, y))
                .collect();
            return Self::build(self.field, num, self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let sa = other.den.div_exact(&g);
        let sb = self.den.div_exact(&g);
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| combine(&x.mul(&sa), &y.mul(&sb)))
            .collect();
        Self::build(self.field, num, self.den.mul(&sa))
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        let f = self.field;
        let den = self.den.mul(&other.den);
        if self.is_rational() || other.is_rational() {
            let (r, v) = if self.is_rational() {
                (&self.num[0], other)
            } else {
                (&other.num[0], self)
            };
            let num = v.num.iter().map(|c| c.mul(r)).collect();
            return Self::build(f, num, den);
        }
        let phi = f.degree();
        let small_a: Option<Vec<i64>> = self.num.iter().map(Int::as_small).collect();
        let small_b: Option<Vec<i64>> = other.num.iter().map(Int::as_small).collect();
        if let (Some(a), Some(b)) = (small_a, small_b) {
            if let Some(num) = convolve_small(f, &a, &b) {
                return Self::build(f, num, den);
            }
        }
        let mut poly = vec![BigInt::from(0); 2 * phi - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xb = x.to_big();
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += &xb * y.to_big();
                }
            }
        }
        Self::build(f, f.reduce_big(&mut poly), den)
    }

    /// Image under the Galois automorphism ζ ↦ ζ^k, `gcd(k, m) = 1`.
    pub fn galois(&self, k: i64) -> CycNum {
        let m = self.conductor() as i64;
        if self.is_rational() {
            return self.clone();
        }
        let mut poly = vec![Int::ZERO; m as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let idx = ((i as i64 * k).rem_euclid(m)) as usize;
                poly[idx] = poly[idx].add(c);
            }
        }
        CycNum {
            field: self.field,
            num: self.field.reduce_ints(&poly),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<CycNum, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let f = self.field;
        if self.is_rational() {
            let mut num = vec![Int::ZERO; f.degree()];
            num[0] = self.den.clone();
            return Ok(Self::build(f, num, self.num[0].clone()));
        }
        // content · (±ζ^e) is inverted by a table lookup.
        let mut content = Int::ZERO;
        for c in &self.num {
            content = content.gcd(c);
        }
        let prim: Vec<Int> = self.num.iter().map(|c| c.div_exact(&content)).collect();
        if let Some((negated, e)) = f.unit_lookup(&prim) {
            let mut inv = Self::root_in(f, -(e as i64));
            let scale = if negated { self.den.neg() } else { self.den.clone() };
            for c in &mut inv.num {
                *c = c.mul(&scale);
            }
            inv.den = content;
            inv.normalize();
            return Ok(inv);
        }
        // Product of the nontrivial conjugates, divided by the norm.
        let m = self.conductor() as i64;
        let base = CycNum {
            field: f,
            num: prim,
            den: Int::ONE,
        };
        let mut acc = Self::from_int_in(f, 1);
        for k in 2..m {
            if num_integer::gcd(k, m) == 1 {
                acc = acc.mul_same(&base.galois(k));
            }
        }
        let norm = base.mul_same(&acc);
        debug_assert!(norm.is_rational());
        let norm_rat = Self::build(
            f,
            {
                let mut v = vec![Int::ZERO; f.degree()];
                v[0] = norm.den.clone();
                v
            },
            norm.num[0].clone(),
        );
        let mut out = acc.mul_same(&norm_rat);
        out.num = out.num.iter().map(|c| c.mul(&self.den)).collect();
        out.den = out.den.mul(&content);
        out.normalize();
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, CycloError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::from_int_in(self.field, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_same(&base);
            }
        }
        Ok(acc)
    }

    /// `Some(r)` if this number is a root of unity.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if !self.den.is_one() {
            return None;
        }
        let m = self.conductor() as u64;
        if let Some((negated, e)) = self.field.unit_lookup(&self.num) {
            return Some(if negated {
                RootOfUnity::new(2 * m, 2 * e as i64 + m as i64)
            } else {
                RootOfUnity::new(m, e as i64)
            });
        }
        // Large conductors: scan the powers directly.
        let neg = self.neg();
        for e in 0..m as i64 {
            let p = Self::root_in(self.field, e);
            if p == *self {
                return Some(RootOfUnity::new(m, e));
            }
            if p == neg {
                return Some(RootOfUnity::new(2 * m, 2 * e + m as i64));
            }
        }
        None
    }

    /// True if some entry of the power basis is a single nonzero coordinate,
    /// which makes it cheap to invert.
    pub fn is_monomial(&self) -> bool {
        self.num.iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// Rough size used to prefer small pivots.
    pub(crate) fn weight(&self) -> usize {
        let nz = self.num.iter().filter(|c| !c.is_zero()).count();
        let big = self
            .num
            .iter()
            .chain(std::iter::once(&self.den))
            .filter(|c| c.as_small().map_or(true, |v| v.unsigned_abs() > 1))
            .count();
        nz * 4 + big
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            field: self.field,
            num: self.num.iter().map(Int::neg).collect(),
            den: self.den.clone(),
        }
    }
}

fn convolve_small(f: &'static Field, a: &[i64], b: &[i64]) -> Option<Vec<Int>> {
    let phi = a.len();
    let mut poly = vec![0i128; 2 * phi - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                poly[i + j] = poly[i + j].checked_add(x as i128 * y as i128)?;
            }
        }
    }
    let out = f.reduce_i128(&mut poly)?;
    out.into_iter()
        .map(|v| i64::try_from(v).ok().map(Int::from))
        .collect()
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self.field, other.field) {
            return self.den == other.den && self.num == other.num;
        }
        match CycNum::aligned(self, other) {
            Ok((_, a, b)) => a.den == b.den && a.num == b.num,
            Err(_) => false,
        }
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (m={})", self.conductor())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let m = self.conductor();
        let mut first = true;
        for (i, (n, d)) in self.coeffs().into_iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let neg = n.is_negative();
            let a = n.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = if d.is_one() {
                a.to_string()
            } else {
                format!("{a}/{d}")
            };
            match (i, coeff.as_str()) {
                (0, c) => write!(f, "{c}")?,
                (1, "1") => write!(f, "z{m}")?,
                (1, c) => write!(f, "{c}*z{m}")?,
                (_, "1") => write!(f, "z{m}^{i}")?,
                (_, c) => write!(f, "{c}*z{m}^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            conductor: u32,
            coeffs: Vec<[String; 2]>,
        }
        Repr {
            conductor: self.conductor(),
            coeffs: coeff_strings(self),
        }
        .serialize(s)
    }
}

pub(crate) fn coeff_strings(x: &CycNum) -> Vec<[String; 2]> {
    x.coeffs()
        .into_iter()
        .map(|(n, d)| [n.to_string(), d.to_string()])
        .collect()
}

pub(crate) fn parse_coeffs(raw: &[[String; 2]]) -> Result<Vec<(Int, Int)>, CycloError> {
    raw.iter()
        .map(|[n, d]| {
            let n: Int = n
                .parse()
                .map_err(|_| CycloError::Malformed(format!("bad integer {n:?}")))?;
            let d: Int = d
                .parse()
                .map_err(|_| CycloError::Malformed(format!("bad integer {d:?}")))?;
            Ok((n, d))
        })
        .collect()
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            conductor: u32,
            coeffs: Vec<[String; 2]>,
        }
        let r = Repr::deserialize(d)?;
        let coeffs = parse_coeffs(&r.coeffs).map_err(D::Error::custom)?;
        CycNum::from_rational_coeffs(r.conductor, &coeffs).map_err(D::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;

            /// Panics if the lifted conductor exceeds the cap; use the
            /// `try_` method for a checked variant.
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).expect("conductor lift failed")
            }
        }

        impl $trait<CycNum> for CycNum {
            type Output = CycNum;

            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycNum {
    type Output = CycNum;

    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

impl Neg for CycNum {
    type Output = CycNum;

    fn neg(self) -> CycNum {
        CycNum::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(m, k).unwrap()
    }

    #[test]
    fn roots_of_unity_basics() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(2, 1), CycNum::from_int(2, -1).unwrap());
        let i = z(4, 1);
        assert_eq!(&i * &i, CycNum::from_int(4, -1).unwrap());
        assert_eq!(z(4, 2), CycNum::from_int(1, -1).unwrap());
    }

    #[test]
    fn spec_arith_examples() {
        assert!((&z(3, 1) * &z(3, 2)).is_one());
        let a = &CycNum::one(5).unwrap() + &z(5, 1);
        assert!(cyc_arith(&a, &a, ArithOp::Div).unwrap().is_one());
        let zero = CycNum::zero(5).unwrap();
        assert_eq!(
            cyc_arith(&a, &zero, ArithOp::Div).unwrap_err(),
            CycloError::DivisionByZero
        );
    }

    #[test]
    fn mixed_conductors_lift_to_lcm() {
        let s = &z(4, 1) + &z(3, 1);
        assert_eq!(s.conductor(), 12);
        assert_eq!(&s - &z(3, 1), z(4, 1));
        assert_eq!(z(6, 2), z(3, 1));
    }

    #[test]
    fn inverse_of_non_unit() {
        let a = &CycNum::from_int(7, 2).unwrap() + &z(7, 3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        let half = CycNum::from_rational(12, 1, 2).unwrap();
        let c = &(&half * &z(12, 5)) - &z(12, 1);
        assert!((&c * &c.inv().unwrap()).is_one());
    }

    #[test]
    fn root_detection() {
        assert_eq!(z(12, 5).as_root_of_unity(), Some(RootOfUnity::new(12, 5)));
        assert_eq!(z(5, 2).neg().as_root_of_unity(), Some(RootOfUnity::new(10, 9)));
        assert_eq!(CycNum::from_int(3, 2).unwrap().as_root_of_unity(), None);
    }

    #[test]
    fn json_roundtrip() {
        let x = &CycNum::from_rational(8, -3, 4).unwrap() + &z(8, 3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"conductor":8,"coeffs":[["-3","4"],["0","1"],["0","1"],["1","1"]]}"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
