//! Alternating pairings on finite abelian groups and their hyperbolic
//! decomposition Ω = 𝓛 × 𝓛̂.

use serde::{Deserialize, Serialize};

use super::coords;
use super::{AbelianError, FinAbGroup};
use crate::cyclo::RootOfUnity;

/// A bilinear pairing given on the canonical generators of `group`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymplecticPairing {
    pub group: FinAbGroup,
    /// `table[i][j]` = pairing of generators `i` and `j`.
    pub table: Vec<Vec<RootOfUnity>>,
}

impl SymplecticPairing {
    pub fn new(group: FinAbGroup, table: Vec<Vec<RootOfUnity>>) -> Result<Self, AbelianError> {
        let r = group.rank();
        if table.len() != r || table.iter().any(|row| row.len() != r) {
            return Err(AbelianError::MalformedPairing(format!(
                "table must be {r}x{r}"
            )));
        }
        let d = group.factors();
        for i in 0..r {
            for j in 0..r {
                if num_integer::gcd(d[i], d[j]) % table[i][j].order() != 0 {
                    return Err(AbelianError::MalformedPairing(format!(
                        "entry ({i},{j}) has order {} which does not divide gcd({}, {})",
                        table[i][j].order(),
                        d[i],
                        d[j]
                    )));
                }
            }
        }
        Ok(SymplecticPairing { group, table })
    }

    /// Bilinear extension to arbitrary elements.
    pub fn eval(&self, x: &[u64], y: &[u64]) -> RootOfUnity {
        let mut acc = RootOfUnity::ONE;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj != 0 {
                    acc = acc.mul(&self.table[i][j].pow((*xi * *yj) as i64));
                }
            }
        }
        acc
    }

    pub fn is_alternating(&self) -> bool {
        coords::elements(self.group.factors())
            .iter()
            .all(|w| self.eval(w, w).is_one())
    }

    pub fn is_nondegenerate(&self) -> bool {
        let d = self.group.factors();
        let gens: Vec<Vec<u64>> = (0..d.len())
            .map(|i| {
                let mut e = vec![0; d.len()];
                e[i] = 1;
                e
            })
            .collect();
        coords::elements(d)
            .iter()
            .filter(|w| !coords::is_zero(w))
            .all(|w| gens.iter().any(|g| !self.eval(w, g).is_one()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicPair {
    pub lambda: Vec<u64>,
    pub lambda_prime: Vec<u64>,
    pub order: u64,
    /// pairing(λ, λ′), a primitive root of unity of the given order.
    pub value: RootOfUnity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicDecomposition {
    pub pairs: Vec<HyperbolicPair>,
    pub lagrangian: FinAbGroup,
}

/// Splits off hyperbolic planes one at a time: λ of maximal order, then λ′
/// pairing with λ to a primitive root of that order, then recursion on the
/// orthogonal complement of ⟨λ, λ′⟩. Ties go to the lexicographically least
/// element.
pub fn symplectic_decompose(
    pairing: &SymplecticPairing,
) -> Result<HyperbolicDecomposition, AbelianError> {
    let d = pairing.group.factors();
    if !pairing.is_alternating() {
        return Err(AbelianError::NotAlternating);
    }
    if !pairing.is_nondegenerate() {
        return Err(AbelianError::DegeneratePairing);
    }
    let mut rest: Vec<Vec<u64>> = coords::elements(d);
    let mut pairs = Vec::new();
    while rest.len() > 1 {
        let mut lambda: Option<(u64, &Vec<u64>)> = None;
        for w in &rest {
            let o = coords::order_of(d, w);
            if lambda.map_or(true, |(best, _)| o > best) {
                lambda = Some((o, w));
            }
        }
        let (r, lambda) = lambda.expect("nonempty");
        let lambda = lambda.clone();
        let lambda_prime = rest
            .iter()
            .find(|w| pairing.eval(&lambda, w).order() == r)
            .ok_or(AbelianError::DegeneratePairing)?
            .clone();
        let value = pairing.eval(&lambda, &lambda_prime);
        // The restriction to ⟨λ⟩ × ⟨λ′⟩ must be nondegenerate.
        let plane = coords::span(d, &[lambda.clone(), lambda_prime.clone()]);
        if plane.len() as u64 != r * r
            || plane.iter().filter(|w| !coords::is_zero(w)).any(|w| {
                pairing.eval(w, &lambda).is_one() && pairing.eval(w, &lambda_prime).is_one()
            })
        {
            return Err(AbelianError::DegeneratePairing);
        }
        rest.retain(|w| pairing.eval(w, &lambda).is_one() && pairing.eval(w, &lambda_prime).is_one());
        pairs.push(HyperbolicPair {
            lambda,
            lambda_prime,
            order: r,
            value,
        });
    }
    let orders: Vec<u64> = pairs.iter().map(|p| p.order).collect();
    Ok(HyperbolicDecomposition {
        pairs,
        lagrangian: FinAbGroup::from_cyclic_orders(&orders),
    })
}

/// The standard form `((a,b),(c,d)) ↦ ζ^{ad − bc}` on `(ℤ/n)²`, extended to
/// `⊕ (ℤ/n_i)²` for the given orders (sorted into invariant-factor form).
pub fn standard_pairing(orders: &[u64]) -> SymplecticPairing {
    let mut sorted: Vec<u64> = orders.iter().copied().filter(|o| *o > 1).collect();
    sorted.sort_unstable();
    let mut factors = Vec::new();
    for o in &sorted {
        factors.push(*o);
        factors.push(*o);
    }
    let r = factors.len();
    let mut table = vec![vec![RootOfUnity::ONE; r]; r];
    for (k, o) in sorted.iter().enumerate() {
        table[2 * k][2 * k + 1] = RootOfUnity::new(*o, 1);
        table[2 * k + 1][2 * k] = RootOfUnity::new(*o, -1);
    }
    let group = FinAbGroup::new(factors).expect("doubled chain stays a chain");
    SymplecticPairing { group, table }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let p = SymplecticPairing::new(FinAbGroup::trivial(), vec![]).unwrap();
        let d = symplectic_decompose(&p).unwrap();
        assert!(d.pairs.is_empty());
        assert!(d.lagrangian.is_trivial());
    }

    #[test]
    fn standard_examples() {
        for n in [2, 4] {
            let p = standard_pairing(&[n]);
            let d = symplectic_decompose(&p).unwrap();
            assert_eq!(d.pairs.len(), 1);
            assert_eq!(d.pairs[0].order, n);
            assert_eq!(d.lagrangian, FinAbGroup::cyclic(n));
        }
    }

    #[test]
    fn rejects_bad_pairings() {
        let g = FinAbGroup::new(vec![2, 2]).unwrap();
        let one = RootOfUnity::ONE;
        let m = RootOfUnity::new(2, 1);
        let degenerate = SymplecticPairing::new(g.clone(), vec![vec![one, one], vec![one, one]]).unwrap();
        assert_eq!(symplectic_decompose(&degenerate), Err(AbelianError::DegeneratePairing));
        let symmetric = SymplecticPairing::new(g, vec![vec![m, one], vec![one, m]]).unwrap();
        assert_eq!(symplectic_decompose(&symmetric), Err(AbelianError::NotAlternating));
    }
}
