//! Classification data: single-orbit ingredients `(b, e, 𝓛, 𝓙, 𝓚)` and
//! multi-orbit gluing data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{canonical_iso, coords, FinAbGroup, Hom};
use crate::cyclo::RootOfUnity;

/// `U = B ⊗ E ⊗ L ⊗ J ⊗ K` with `dim L = |𝓛|`, `dim J = |𝓙|`,
/// `dim K = |𝓚|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleOrbitIngredients {
    pub b: usize,
    pub e: usize,
    #[serde(rename = "L_group")]
    pub l_group: FinAbGroup,
    #[serde(rename = "J_group")]
    pub j_group: FinAbGroup,
    #[serde(rename = "K_group")]
    pub k_group: FinAbGroup,
}

/// Sort key used for orientation and summand ordering.
pub type OrientationKey = (usize, usize, u64, u64, Vec<u64>, Vec<u64>, Vec<u64>);

impl SingleOrbitIngredients {
    pub fn new(b: usize, e: usize, l: FinAbGroup, j: FinAbGroup, k: FinAbGroup) -> Self {
        SingleOrbitIngredients {
            b,
            e,
            l_group: l,
            j_group: j,
            k_group: k,
        }
    }

    /// Connected case: all groups trivial.
    pub fn connected(b: usize, e: usize) -> Self {
        Self::new(b, e, FinAbGroup::trivial(), FinAbGroup::trivial(), FinAbGroup::trivial())
    }

    pub fn ambient_dim(&self) -> usize {
        self.b
            * self.e
            * (self.l_group.order() * self.j_group.order() * self.k_group.order()) as usize
    }

    /// Cyclic orders of the product coordinates `(l, λ, ĵ, k)` on the
    /// G-side component group; the H-side `(l, λ, j, k̂)` has the same list.
    pub fn gamma_orders(&self) -> Vec<u64> {
        let l = self.l_group.factors();
        [l, l, self.j_group.factors(), self.k_group.factors()].concat()
    }

    /// `𝓛 × 𝓛̂ × 𝓙̂ × 𝓚` in canonical form.
    pub fn gamma(&self) -> FinAbGroup {
        FinAbGroup::from_cyclic_orders(&self.gamma_orders())
    }

    /// `𝓛 × 𝓛̂ × 𝓙 × 𝓚̂` in canonical form.
    pub fn gamma_hat(&self) -> FinAbGroup {
        self.gamma()
    }

    pub(crate) fn split<'a>(&self, p: &'a [u64]) -> [&'a [u64]; 4] {
        let l = self.l_group.rank();
        let j = self.j_group.rank();
        [&p[..l], &p[l..2 * l], &p[2 * l..2 * l + j], &p[2 * l + j..]]
    }

    /// Commutator scalar `μ(g, h)` (`g h = μ·h g`) between the G-side
    /// generator at product coordinates `(x, ξ, ĵ, k)` and the H-side
    /// generator at `(x', ξ', j, k̂)`.
    pub fn pairing(&self, g: &[u64], h: &[u64]) -> RootOfUnity {
        let [x, xi, jh, k] = self.split(g);
        let [x2, xi2, j, kh] = self.split(h);
        let l = self.l_group.factors();
        coords::dual_pairing(l, xi, x2)
            .mul(&coords::dual_pairing(l, xi2, x).inv())
            .mul(&coords::dual_pairing(self.j_group.factors(), jh, j))
            .mul(&coords::dual_pairing(self.k_group.factors(), kh, k).inv())
    }

    /// Ingredients of the pair with G and H exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(
            self.e,
            self.b,
            self.l_group.clone(),
            self.k_group.clone(),
            self.j_group.clone(),
        )
    }

    pub fn orientation_key(&self) -> OrientationKey {
        (
            self.b,
            self.e,
            self.j_group.order(),
            self.k_group.order(),
            self.j_group.factors().to_vec(),
            self.k_group.factors().to_vec(),
            self.l_group.factors().to_vec(),
        )
    }

    /// The orientation with the smaller key, and whether it was swapped.
    pub fn normalize_orientation(&self) -> (Self, bool) {
        let s = self.swapped();
        if s.orientation_key() < self.orientation_key() {
            (s, true)
        } else {
            (self.clone(), false)
        }
    }

    /// Reference isomorphism from canonical `Γ` to product coordinates.
    pub fn reference_iso(&self) -> Hom {
        canonical_iso(&self.gamma_orders()).from_canonical
    }

    /// Maps H-side product coordinates `(x', ξ', j, k̂)` to G-side product
    /// coordinates of the swapped ingredients `(x', ξ', k̂, j)`.
    pub(crate) fn h_to_swapped_g(&self, h: &[u64]) -> Vec<u64> {
        let [x, xi, j, kh] = self.split(h);
        [x, xi, kh, j].concat()
    }
}

impl fmt::Display for SingleOrbitIngredients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "b={} e={} L={} J={} K={}",
            self.b, self.e, self.l_group, self.j_group, self.k_group
        )
    }
}

/// One summand of a glued pair with its isomorphism `q: Γ → Γ_i` into the
/// summand's product coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluedSummand {
    pub ingredients: SingleOrbitIngredients,
    pub q: Hom,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiOrbitSpec {
    pub gamma: FinAbGroup,
    pub summands: Vec<GluedSummand>,
}

impl MultiOrbitSpec {
    /// Summands glued along their reference isomorphisms.
    pub fn with_reference_gluing(parts: &[SingleOrbitIngredients]) -> Option<MultiOrbitSpec> {
        let gamma = parts.first()?.gamma();
        if parts.iter().any(|p| p.gamma() != gamma) {
            return None;
        }
        Some(MultiOrbitSpec {
            gamma,
            summands: parts
                .iter()
                .map(|p| GluedSummand {
                    ingredients: p.clone(),
                    q: p.reference_iso(),
                })
                .collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.summands.iter().map(|s| s.ingredients.ambient_dim()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn dims_and_groups() {
        let ing = SingleOrbitIngredients::new(2, 1, g("2"), g("3"), g("1"));
        assert_eq!(ing.ambient_dim(), 12);
        assert_eq!(ing.gamma(), g("2,2,3"));
        assert_eq!(ing.gamma().order(), 12);
    }

    #[test]
    fn orientation_is_an_involution_up_to_normalization() {
        let ing = SingleOrbitIngredients::new(2, 1, g("1"), g("2"), g("1"));
        let (n, swapped) = ing.normalize_orientation();
        assert!(swapped);
        assert_eq!(n, SingleOrbitIngredients::new(1, 2, g("1"), g("1"), g("2")));
        assert_eq!(n.normalize_orientation(), (n.clone(), false));
        assert_eq!(ing.swapped().swapped(), ing);
    }
}
