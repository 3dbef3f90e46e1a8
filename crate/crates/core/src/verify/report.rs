//! Dual-pair verification reports and the component pairing table.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::centralizer::{Centralizer, Membership};
use super::VerifyError;
use crate::abelian::{coords, FinAbGroup};
use crate::construct::{AlgebraSpace, GroupSpec};
use crate::cyclo::RootOfUnity;
use crate::matrep::commutator_root;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FailureCode {
    CentralizerLarger,
    CentralizerSmaller,
    PairingDegenerate,
    IdentityComponentMismatch,
}

impl fmt::Display for FailureCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureCode::CentralizerLarger => "CENTRALIZER_LARGER",
            FailureCode::CentralizerSmaller => "CENTRALIZER_SMALLER",
            FailureCode::PairingDegenerate => "PAIRING_DEGENERATE",
            FailureCode::IdentityComponentMismatch => "IDENTITY_COMPONENT_MISMATCH",
        })
    }
}

/// Which comparison failed: `g` against `Z(h)`, or `h` against `Z(g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    G,
    H,
    Pairing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Failure {
    pub code: FailureCode,
    pub side: Side,
    pub detail: String,
}

/// Commutator scalars `μ(g_γ, h_δ)` over all pairs of cosets, rows and
/// columns in lexicographic coset order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingTable {
    pub gamma: FinAbGroup,
    pub delta: FinAbGroup,
    pub values: Vec<Vec<RootOfUnity>>,
}

impl PairingTable {
    pub fn get(&self, gamma: &[u64], delta: &[u64]) -> &RootOfUnity {
        &self.values[self.gamma.index_of(gamma)][self.delta.index_of(delta)]
    }

    /// Multiplicative in each slot, checked against the canonical
    /// generators.
    pub fn is_bicharacter(&self) -> bool {
        let (dg, dd) = (self.gamma.factors(), self.delta.factors());
        let eg = coords::elements(dg);
        let ed = coords::elements(dd);
        let units = |d: &[u64]| -> Vec<Vec<u64>> {
            (0..d.len())
                .map(|i| {
                    let mut e = vec![0; d.len()];
                    e[i] = 1;
                    e
                })
                .collect()
        };
        for x in &eg {
            for u in units(dg) {
                let xu = coords::add(dg, x, &u);
                for y in &ed {
                    if *self.get(&xu, y) != self.get(x, y).mul(self.get(&u, y)) {
                        return false;
                    }
                }
            }
        }
        for y in &ed {
            for u in units(dd) {
                let yu = coords::add(dd, y, &u);
                for x in &eg {
                    if *self.get(x, &yu) != self.get(x, y).mul(self.get(x, &u)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Rows pairwise distinct, columns pairwise distinct and `|Γ| = |Δ|`.
    pub fn is_nondegenerate(&self) -> bool {
        let rows: HashSet<&Vec<RootOfUnity>> = self.values.iter().collect();
        let ncols = self.delta.order() as usize;
        let cols: HashSet<Vec<RootOfUnity>> = (0..ncols)
            .map(|j| self.values.iter().map(|r| r[j]).collect())
            .collect();
        self.gamma.order() == self.delta.order()
            && rows.len() == self.values.len()
            && cols.len() == ncols
    }
}

/// Dimension and component count of a computed centralizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralizerSummary {
    pub dim: usize,
    pub components: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub is_dual_pair: bool,
    pub g_dim: usize,
    pub h_dim: usize,
    pub g_components: u64,
    pub h_components: u64,
    pub centralizer_of_g: CentralizerSummary,
    pub centralizer_of_h: CentralizerSummary,
    /// Absent when some generators fail to commute projectively.
    pub pairing: Option<PairingTable>,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn has(&self, code: FailureCode) -> bool {
        self.failures.iter().any(|f| f.code == code)
    }
}

/// Table of `μ(g_γ, h_δ)` over every pair of listed generators.
pub fn pairing_table(g: &GroupSpec, h: &GroupSpec) -> Result<PairingTable, VerifyError> {
    let values = g
        .generators
        .iter()
        .map(|a| {
            h.generators
                .iter()
                .map(|b| commutator_root(&a.matrix, &b.matrix).map_err(VerifyError::from))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PairingTable {
        gamma: g.component_group.clone(),
        delta: h.component_group.clone(),
        values,
    })
}

/// Checks `Z(h) = g` and `Z(g) = h` and the nondegeneracy of the pairing
/// between their component groups.
pub fn verify_dual_pair(g: &GroupSpec, h: &GroupSpec) -> Result<VerificationReport, VerifyError> {
    if g.shape.summand_dims() != h.shape.summand_dims() {
        return Err(VerifyError::ShapeMismatch(format!(
            "{:?} vs {:?}",
            g.shape.summand_dims(),
            h.shape.summand_dims()
        )));
    }
    let (zg, zh) = rayon::join(|| Centralizer::compute(g), || Centralizer::compute(h));
    let (zg, zh) = (zg?, zh?);
    let mut failures = compare(Side::G, g, &zh)?;
    failures.extend(compare(Side::H, h, &zg)?);

    let commuting = !failures.iter().any(|f| {
        matches!(
            f.code,
            FailureCode::CentralizerSmaller | FailureCode::IdentityComponentMismatch
        )
    });
    let pairing = if commuting {
        match pairing_table(g, h) {
            Ok(t) => {
                if !t.is_bicharacter() {
                    failures.push(pairing_failure("pairing is not a bicharacter"));
                } else if !t.is_nondegenerate() {
                    failures.push(pairing_failure(&format!(
                        "pairing between groups of order {} and {} is degenerate",
                        t.gamma.order(),
                        t.delta.order()
                    )));
                }
                Some(t)
            }
            Err(e) => {
                failures.push(pairing_failure(&e.to_string()));
                None
            }
        }
    } else {
        None
    };

    Ok(VerificationReport {
        is_dual_pair: failures.is_empty(),
        g_dim: g.identity_dim(),
        h_dim: h.identity_dim(),
        g_components: g.component_group.order(),
        h_components: h.component_group.order(),
        centralizer_of_g: CentralizerSummary {
            dim: zg.dim(),
            components: zg.component_count(),
        },
        centralizer_of_h: CentralizerSummary {
            dim: zh.dim(),
            components: zh.component_count(),
        },
        pairing,
        failures,
    })
}

fn pairing_failure(detail: &str) -> Failure {
    Failure {
        code: FailureCode::PairingDegenerate,
        side: Side::Pairing,
        detail: detail.to_string(),
    }
}

/// Compares a spec `s` with a computed centralizer `z` that should equal it.
fn compare(side: Side, s: &GroupSpec, z: &Centralizer) -> Result<Vec<Failure>, VerifyError> {
    let fail = |code, detail: String| Failure { code, side, detail };
    let mut out = Vec::new();
    let own = s.algebra();
    let identity_inside = own.is_subspace_of(z.identity_space());
    if !identity_inside {
        out.push(fail(
            FailureCode::IdentityComponentMismatch,
            "identity component does not centralize the other side".into(),
        ));
    }
    let mut hit: std::collections::HashMap<Vec<u64>, Vec<u64>> = std::collections::HashMap::new();
    for gen in &s.generators {
        match z.locate(&gen.matrix)? {
            Membership::Component(t) => {
                if let Some(prev) = hit.insert(t, gen.coset.clone()) {
                    out.push(fail(
                        FailureCode::CentralizerSmaller,
                        format!(
                            "cosets {:?} and {:?} fall in one component of the centralizer",
                            prev, gen.coset
                        ),
                    ));
                }
            }
            Membership::NotCommuting => out.push(fail(
                FailureCode::CentralizerSmaller,
                format!("generator for coset {:?} does not commute projectively", gen.coset),
            )),
            Membership::OutsideComponent(_) => out.push(fail(
                FailureCode::CentralizerSmaller,
                format!(
                    "generator for coset {:?} does not commute with the identity component",
                    gen.coset
                ),
            )),
        }
    }
    if identity_inside && z.dim() > own.dim() {
        out.push(fail(
            FailureCode::CentralizerLarger,
            format!(
                "identity component of the centralizer has dimension {} > {}",
                z.dim(),
                own.dim()
            ),
        ));
    }
    if (hit.len() as u64) < z.component_count() {
        out.push(fail(
            FailureCode::CentralizerLarger,
            format!(
                "centralizer has {} components, only {} are reached",
                z.component_count(),
                hit.len()
            ),
        ));
    }
    Ok(out)
}

/// Same subgroup: equal identity-component spans and a bijection of
/// generators modulo the identity component.
pub fn spec_equal(a: &GroupSpec, b: &GroupSpec) -> Result<bool, VerifyError> {
    if a.dim() != b.dim() || a.component_group.order() != b.component_group.order() {
        return Ok(false);
    }
    let (sa, sb) = (a.algebra(), b.algebra());
    if sa.dim() != sb.dim() || !sa.is_subspace_of(&sb) {
        return Ok(false);
    }
    let inverses = b
        .generators
        .iter()
        .map(|g| g.matrix.inverse())
        .collect::<Result<Vec<_>, _>>()?;
    let mut used = vec![false; inverses.len()];
    for g in &a.generators {
        let mut matched = false;
        for (j, inv) in inverses.iter().enumerate() {
            if !used[j] && same_coset(&sa, inv, &g.matrix)? {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_coset(
    identity: &AlgebraSpace,
    inv: &crate::cyclo::CycMatrix,
    x: &crate::cyclo::CycMatrix,
) -> Result<bool, VerifyError> {
    Ok(identity.contains_matrix(&inv.mul(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        connected_pair, single_orbit_pair, xx_hat_pair, GlBlock, Generator, IdentityComponent,
        SingleOrbitIngredients,
    };
    use crate::cyclo::{CycMatrix, Field};
    use crate::matrep::{Ambient, TensorShape};

    fn swap_spec() -> GroupSpec {
        GroupSpec {
            shape: Ambient::single(TensorShape::new([("X", 2)]).unwrap()),
            identity: IdentityComponent::Blocks(vec![GlBlock::scalar("c", vec![0, 1])]),
            component_group: FinAbGroup::cyclic(2),
            generators: vec![
                Generator {
                    coset: vec![0],
                    matrix: CycMatrix::identity_in(2, Field::get(1).unwrap()),
                },
                Generator {
                    coset: vec![1],
                    matrix: CycMatrix::from_ints(2, 2, &[0, 1, 1, 0]),
                },
            ],
        }
    }

    #[test]
    fn xx_hat_over_two_is_a_dual_pair() {
        let (g, h) = xx_hat_pair(&FinAbGroup::cyclic(2)).unwrap();
        let r = verify_dual_pair(&g, &h).unwrap();
        assert!(r.is_dual_pair, "{:?}", r.failures);
        assert_eq!((r.g_components, r.h_components), (4, 4));
        // τ = swap and σ = diag(1, −1) anticommute, each commutes with
        // itself: the form is (−1)^{x ξ′ + ξ x′} on (x, ξ).
        let t = r.pairing.unwrap();
        for a in coords::elements(&[2, 2]) {
            for b in coords::elements(&[2, 2]) {
                let e = (a[0] * b[1] + a[1] * b[0]) % 2;
                assert_eq!(*t.get(&a, &b), RootOfUnity::new(2, e as i64));
            }
        }
    }

    #[test]
    fn swap_is_not_a_dual_pair() {
        let s = swap_spec();
        let r = verify_dual_pair(&s, &s).unwrap();
        assert!(!r.is_dual_pair);
        assert!(r.has(FailureCode::CentralizerLarger));
        assert_eq!(r.centralizer_of_h, CentralizerSummary { dim: 2, components: 2 });
    }

    #[test]
    fn connected_gl2_pair() {
        let (g, h) = connected_pair(&[(2, 2)]).unwrap();
        let r = verify_dual_pair(&g, &h).unwrap();
        assert!(r.is_dual_pair, "{:?}", r.failures);
        assert_eq!(r.pairing.unwrap().values, vec![vec![RootOfUnity::ONE]]);
        assert_eq!((r.g_dim, r.h_dim), (4, 4));
    }

    #[test]
    fn single_orbit_with_j_of_order_two() {
        let ing = SingleOrbitIngredients::new(
            1,
            1,
            FinAbGroup::trivial(),
            FinAbGroup::cyclic(2),
            FinAbGroup::trivial(),
        );
        let (g, h) = single_orbit_pair(&ing).unwrap();
        let t = pairing_table(&g, &h).unwrap();
        let one = RootOfUnity::ONE;
        let m = RootOfUnity::new(2, 1);
        assert_eq!(t.values, vec![vec![one, one], vec![one, m]]);
        assert!(t.is_nondegenerate() && t.is_bicharacter());
    }

    #[test]
    fn shape_mismatch() {
        let (g, _) = connected_pair(&[(2, 1)]).unwrap();
        let (h, _) = connected_pair(&[(3, 1)]).unwrap();
        assert!(matches!(verify_dual_pair(&g, &h), Err(VerifyError::ShapeMismatch(_))));
    }

    #[test]
    fn missing_generator_is_larger() {
        let (g, h) = xx_hat_pair(&FinAbGroup::cyclic(2)).unwrap();
        let mut cut = g.clone();
        cut.component_group = FinAbGroup::cyclic(2);
        cut.generators = vec![g.generators[0].clone(), g.generators[1].clone()];
        cut.generators[1].coset = vec![1];
        let r = verify_dual_pair(&cut, &h).unwrap();
        assert!(r.has(FailureCode::CentralizerLarger));
    }

    #[test]
    fn failure_codes_serialize_in_screaming_case() {
        let s = serde_json::to_string(&FailureCode::IdentityComponentMismatch).unwrap();
        assert_eq!(s, "\"IDENTITY_COMPONENT_MISMATCH\"");
        assert_eq!(FailureCode::CentralizerLarger.to_string(), "CENTRALIZER_LARGER");
    }
}
