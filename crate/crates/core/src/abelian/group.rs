//! Finite abelian groups in invariant-factor form, their elements and
//! characters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::coords;
use super::AbelianError;
use crate::cyclo::{CycNum, CycloError, RootOfUnity};

/// `ℤ/d₁ × … × ℤ/d_r` with `2 ≤ d₁ | d₂ | … | d_r`; the empty list is the
/// trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FinAbGroup {
    invariant_factors: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupRepr {
    invariant_factors: Vec<u64>,
}

impl TryFrom<GroupRepr> for FinAbGroup {
    type Error = AbelianError;

    fn try_from(r: GroupRepr) -> Result<Self, Self::Error> {
        FinAbGroup::new(r.invariant_factors)
    }
}

impl From<FinAbGroup> for GroupRepr {
    fn from(g: FinAbGroup) -> Self {
        GroupRepr {
            invariant_factors: g.invariant_factors,
        }
    }
}

impl FinAbGroup {
    /// Validates an invariant-factor list.
    pub fn new(invariant_factors: Vec<u64>) -> Result<FinAbGroup, AbelianError> {
        for (i, &d) in invariant_factors.iter().enumerate() {
            if d < 2 {
                return Err(AbelianError::InvalidFactors(invariant_factors.clone()));
            }
            if i > 0 && d % invariant_factors[i - 1] != 0 {
                return Err(AbelianError::InvalidFactors(invariant_factors.clone()));
            }
        }
        Ok(FinAbGroup { invariant_factors })
    }

    pub fn trivial() -> FinAbGroup {
        FinAbGroup {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> FinAbGroup {
        Self::from_cyclic_orders(&[n])
    }

    /// Canonical form of `ℤ/a₁ × … × ℤ/a_s` for arbitrary positive `a_i`.
    pub fn from_cyclic_orders(orders: &[u64]) -> FinAbGroup {
        super::iso::canonical_iso(orders).group
    }

    /// Canonical form of the direct product.
    pub fn product(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.invariant_factors.clone();
        orders.extend_from_slice(&other.invariant_factors);
        Self::from_cyclic_orders(&orders)
    }

    pub fn factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// All elements, coordinates in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        coords::elements(&self.invariant_factors)
            .into_iter()
            .map(|c| GroupElement {
                group: self.clone(),
                coords: c,
            })
            .collect()
    }

    pub fn element(&self, c: &[i64]) -> Result<GroupElement, AbelianError> {
        if c.len() != self.rank() {
            return Err(AbelianError::GroupMismatch);
        }
        Ok(GroupElement {
            group: self.clone(),
            coords: coords::reduce(&self.invariant_factors, c),
        })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![0; self.rank()],
        }
    }

    pub fn character(&self, c: &[i64]) -> Result<Character, AbelianError> {
        let e = self.element(c)?;
        Ok(Character {
            group: e.group,
            coords: e.coords,
        })
    }

    /// All characters, in the same lexicographic order as the elements.
    pub fn characters(&self) -> Vec<Character> {
        self.elements()
            .into_iter()
            .map(|e| Character {
                group: e.group,
                coords: e.coords,
            })
            .collect()
    }

    /// Position of `c` in [`FinAbGroup::elements`].
    pub fn index_of(&self, c: &[u64]) -> usize {
        coords::index_of(&self.invariant_factors, c)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `"2,4"`-style lists of cyclic orders (`"1"` is the trivial group)
/// into canonical form.
impl FromStr for FinAbGroup {
    type Err = AbelianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut orders = Vec::new();
        for part in s.split(',').map(str::trim) {
            let v: u64 = part
                .parse()
                .map_err(|_| AbelianError::Parse(format!("bad group order {part:?}")))?;
            if v == 0 {
                return Err(AbelianError::Parse("group orders must be positive".into()));
            }
            orders.push(v);
        }
        Ok(FinAbGroup::from_cyclic_orders(&orders))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: FinAbGroup,
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement, AbelianError> {
        if self.group != other.group {
            return Err(AbelianError::GroupMismatch);
        }
        Ok(GroupElement {
            group: self.group.clone(),
            coords: coords::add(self.group.factors(), &self.coords, &other.coords),
        })
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            coords: coords::neg(self.group.factors(), &self.coords),
        }
    }

    pub fn order(&self) -> u64 {
        coords::order_of(self.group.factors(), &self.coords)
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| *c == 0)
    }
}

/// A character in self-dual coordinates: `ξ(x) = exp(2πi Σ ξ_i x_i / d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    group: FinAbGroup,
    coords: Vec<u64>,
}

impl Character {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|c| *c == 0)
    }

    pub fn mul(&self, other: &Character) -> Result<Character, AbelianError> {
        if self.group != other.group {
            return Err(AbelianError::GroupMismatch);
        }
        Ok(Character {
            group: self.group.clone(),
            coords: coords::add(self.group.factors(), &self.coords, &other.coords),
        })
    }

    /// ξ(x) as a root of unity.
    pub fn value(&self, x: &GroupElement) -> Result<RootOfUnity, AbelianError> {
        if self.group != x.group {
            return Err(AbelianError::GroupMismatch);
        }
        Ok(coords::dual_pairing(self.group.factors(), &self.coords, &x.coords))
    }
}

/// ξ(x) as an element of ℚ(ζ_m), `m` the exponent of the group.
pub fn char_eval(xi: &Character, x: &GroupElement) -> Result<CycNum, AbelianError> {
    let r = xi.value(x)?;
    let m = u32::try_from(xi.group.exponent())
        .map_err(|_| AbelianError::Cyclo(CycloError::InvalidConductor(xi.group.exponent())))?;
    Ok(r.to_cyc_in(m)?)
}

/// All isomorphism classes of abelian groups of order `n`, ordered by rank
/// and then by factor list.
pub fn enumerate_abelian_groups(n: u64) -> Vec<FinAbGroup> {
    assert!(n >= 1, "group order must be positive");
    let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
    for (p, e) in coords::factorize(n) {
        per_prime.push(
            partitions(e)
                .into_iter()
                .map(|parts| parts.into_iter().map(|k| p.pow(k)).collect())
                .collect(),
        );
    }
    let mut out = vec![Vec::<u64>::new()];
    for choices in &per_prime {
        let mut next = Vec::new();
        for prefix in &out {
            for c in choices {
                let mut v = prefix.clone();
                v.extend_from_slice(c);
                next.push(v);
            }
        }
        out = next;
    }
    let mut groups: Vec<FinAbGroup> = out
        .iter()
        .map(|orders| FinAbGroup::from_cyclic_orders(orders))
        .collect();
    groups.sort_by(|a, b| (a.rank(), a.factors()).cmp(&(b.rank(), b.factors())));
    groups
}

/// Partitions of `n` as non-increasing part lists.
pub(crate) fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_factor_chain() {
        assert!(FinAbGroup::new(vec![2, 4]).is_ok());
        assert!(FinAbGroup::new(vec![4, 2]).is_err());
        assert!(FinAbGroup::new(vec![1]).is_err());
        assert_eq!(FinAbGroup::from_cyclic_orders(&[4, 6]).factors(), &[2, 12]);
        assert_eq!("1".parse::<FinAbGroup>().unwrap(), FinAbGroup::trivial());
        assert_eq!("3,2".parse::<FinAbGroup>().unwrap(), FinAbGroup::cyclic(6));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_abelian_groups(1), vec![FinAbGroup::trivial()]);
        let g8: Vec<Vec<u64>> = enumerate_abelian_groups(8)
            .iter()
            .map(|g| g.factors().to_vec())
            .collect();
        assert_eq!(g8, vec![vec![8], vec![2, 4], vec![2, 2, 2]]);
        let g12: Vec<Vec<u64>> = enumerate_abelian_groups(12)
            .iter()
            .map(|g| g.factors().to_vec())
            .collect();
        assert_eq!(g12, vec![vec![12], vec![2, 6]]);
    }

    #[test]
    fn char_eval_examples() {
        let z2 = FinAbGroup::cyclic(2);
        let v = char_eval(&z2.character(&[1]).unwrap(), &z2.element(&[1]).unwrap()).unwrap();
        assert_eq!(v, CycNum::from_int(1, -1).unwrap());
        let g = FinAbGroup::new(vec![4, 4]).unwrap();
        let v = char_eval(&g.character(&[1, 0]).unwrap(), &g.element(&[3, 2]).unwrap()).unwrap();
        assert_eq!(v, CycNum::root_of_unity(4, 3).unwrap());
        let other = FinAbGroup::cyclic(3);
        assert!(matches!(
            char_eval(&z2.character(&[1]).unwrap(), &other.element(&[1]).unwrap()),
            Err(AbelianError::GroupMismatch)
        ));
    }
}
