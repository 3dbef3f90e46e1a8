//! Roots of unity stored as fractions `exp / order` of a full turn.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CycNum, CycloError};

/// `exp(2πi · exp / order)` with `gcd(exp, order) = 1`, so `order` is the
/// exact multiplicative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u64,
    exp: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { order: 1, exp: 0 };

    /// ζ_order^exp, reduced.
    pub fn new(order: u64, exp: i64) -> RootOfUnity {
        assert!(order > 0, "root of unity with order 0");
        let e = exp.rem_euclid(order as i64) as u64;
        let g = num_integer::gcd(e, order);
        if e == 0 {
            return RootOfUnity::ONE;
        }
        RootOfUnity {
            order: order / g,
            exp: e / g,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let l = num_integer::lcm(self.order, other.order);
        let e = self.exp * (l / self.order) + other.exp * (l / other.order);
        RootOfUnity::new(l, (e % l) as i64)
    }

    pub fn inv(&self) -> RootOfUnity {
        RootOfUnity::new(self.order, -(self.exp as i64))
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        let e = (self.exp as i128 * k as i128).rem_euclid(self.order as i128);
        RootOfUnity::new(self.order, e as i64)
    }

    /// Exponent of this root as a power of ζ_m; `m` must be a multiple of
    /// the order.
    pub fn exponent_in(&self, m: u64) -> Option<u64> {
        (m % self.order == 0).then(|| self.exp * (m / self.order))
    }

    pub fn to_cyc(&self) -> Result<CycNum, CycloError> {
        let m = u32::try_from(self.order).map_err(|_| CycloError::InvalidConductor(self.order))?;
        CycNum::root_of_unity(m, self.exp as i64)
    }

    /// The same root as an element of ℚ(ζ_m).
    pub fn to_cyc_in(&self, m: u32) -> Result<CycNum, CycloError> {
        let e = self
            .exponent_in(m as u64)
            .ok_or(CycloError::InvalidConductor(m as u64))?;
        CycNum::root_of_unity(m, e as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exp) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (o, 1) => write!(f, "z{o}"),
            (o, e) => write!(f, "z{o}^{e}"),
        }
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.order, self.exp].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [order, exp] = <[i64; 2]>::deserialize(d)?;
        if order < 1 {
            return Err(serde::de::Error::custom("root of unity order must be positive"));
        }
        Ok(RootOfUnity::new(order as u64, exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_exact_order() {
        let r = RootOfUnity::new(12, 8);
        assert_eq!((r.order(), r.exp()), (3, 2));
        assert!(RootOfUnity::new(5, 10).is_one());
        assert_eq!(RootOfUnity::new(4, -1), RootOfUnity::new(4, 3));
    }

    #[test]
    fn multiplication_adds_angles() {
        let a = RootOfUnity::new(4, 1);
        let b = RootOfUnity::new(6, 1);
        // 1/4 + 1/6 = 5/12
        assert_eq!(a.mul(&b), RootOfUnity::new(12, 5));
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(a.pow(2), RootOfUnity::new(2, 1));
    }
}
