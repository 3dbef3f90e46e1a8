//! Projective centralizers `Z_{PGL(U)}(S)` of group specs, as full preimages
//! in `GL(U)`.
//!
//! The target is reduced to its identity-component algebra plus a small set
//! of component generators `h_i` whose cosets generate the component group.
//! An element `X` centralizes the target projectively iff it commutes with
//! the algebra and `X h_i = c_i h_i X` for roots of unity `c_i` with
//! `c_i^{m_i} = 1`, `m_i` the order of `h_i` modulo the identity component.
//! Surviving scalar tuples form a subgroup, so once a tuple survives its
//! multiples are filled in by products of witnesses, and a failing tuple
//! rules out its whole coset.

use std::collections::{HashMap, VecDeque};

use super::commutant::{commutant_of_blocks, commutant_of_span, twisted_space, TwistEngine};
use super::VerifyError;
use crate::abelian::{coords, subgroup_form, FinAbGroup, SubgroupForm};
use crate::construct::{AlgebraSpace, GlBlock, Generator, GroupSpec, IdentityComponent};
use crate::cyclo::{CycMatrix, CycNum, Field};
use crate::matrep::commutator_root;

const MAX_PROJECTIVE_ORDER: u64 = 1024;

/// Where a matrix sits relative to a computed centralizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// In the component with this scalar tuple.
    Component(Vec<u64>),
    /// Some `h_i` does not commute with it up to a root of unity of the
    /// allowed order.
    NotCommuting,
    /// Twists like a component but is not in it (fails to commute with the
    /// identity component of the target).
    OutsideComponent(Vec<u64>),
}

#[derive(Clone, Debug)]
pub struct Centralizer {
    spec: GroupSpec,
    identity: AlgebraSpace,
    gens: Vec<CycMatrix>,
    orders: Vec<u64>,
    inverses: HashMap<Vec<u64>, CycMatrix>,
    form: SubgroupForm,
}

impl Centralizer {
    pub fn compute(target: &GroupSpec) -> Result<Centralizer, VerifyError> {
        let n = target.dim();
        let algebra = target.algebra();
        let (gens, orders) = component_generators(target, &algebra)?;
        let base = match &target.identity {
            IdentityComponent::Blocks(blocks) => commutant_of_blocks(n, blocks),
            IdentityComponent::Algebra(_) => commutant_of_span(n, algebra.basis()),
        };
        let engine = TwistEngine::new(n, base, &gens);
        let q = Field::get(1).expect("Q");
        let ones: Vec<CycNum> = orders.iter().map(|_| CycNum::from_int_in(q, 1)).collect();
        let v1 = engine.solve_matrices(&ones);
        let identity = AlgebraSpace::from_sparse(n, v1);
        if !identity.is_semisimple() {
            return Err(VerifyError::IdentityComponentNotSemisimpleBlocks);
        }

        let zero = vec![0u64; orders.len()];
        let mut found: HashMap<Vec<u64>, CycMatrix> = HashMap::new();
        found.insert(zero.clone(), CycMatrix::identity_in(n, q));
        let mut dead: Vec<Vec<u64>> = Vec::new();
        for t in coords::elements(&orders) {
            if found.contains_key(&t) {
                continue;
            }
            if dead
                .iter()
                .any(|d| found.contains_key(&coords::add(&orders, &t, &coords::neg(&orders, d))))
            {
                continue;
            }
            let admissible = orders
                .iter()
                .zip(&t)
                .all(|(m, k)| n as u64 % (m / num_integer::gcd(*m, *k)) == 0);
            let hit = if admissible {
                let c: Vec<CycNum> = orders
                    .iter()
                    .zip(&t)
                    .map(|(m, k)| CycNum::root_of_unity(*m as u32, *k as i64))
                    .collect::<Result<_, _>>()?;
                twisted_space(&engine, &c, identity.dim())?
            } else {
                None
            };
            match hit {
                Some((_, w)) => close_under(&orders, &mut found, &t, w)?,
                None => dead.push(t),
            }
        }

        let mut surviving: Vec<Vec<u64>> = found.keys().cloned().collect();
        surviving.sort();
        let form = subgroup_form(&orders, &surviving)?;
        let identity_spec = if gens.is_empty() {
            match &target.identity {
                IdentityComponent::Blocks(blocks) => IdentityComponent::Blocks(dual_blocks(blocks)),
                IdentityComponent::Algebra(_) => IdentityComponent::Algebra(identity.basis_matrices()),
            }
        } else {
            IdentityComponent::Algebra(identity.basis_matrices())
        };
        let generators = coords::elements(form.group.factors())
            .into_iter()
            .map(|c| {
                let t = form.element(&orders, &c);
                Generator {
                    matrix: found[&t].clone(),
                    coset: c,
                }
            })
            .collect();
        let spec = GroupSpec {
            shape: target.shape.clone(),
            identity: identity_spec,
            component_group: form.group.clone(),
            generators,
        };
        let inverses = found
            .into_iter()
            .map(|(t, w)| Ok((t, w.inverse()?)))
            .collect::<Result<_, VerifyError>>()?;
        Ok(Centralizer {
            spec,
            identity,
            gens,
            orders,
            inverses,
            form,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn into_spec(self) -> GroupSpec {
        self.spec
    }

    /// Linear span of the identity component.
    pub fn identity_space(&self) -> &AlgebraSpace {
        &self.identity
    }

    pub fn dim(&self) -> usize {
        self.identity.dim()
    }

    pub fn component_count(&self) -> u64 {
        self.form.group.order()
    }

    pub fn component_group(&self) -> &FinAbGroup {
        &self.form.group
    }

    /// Target generators used for the scalar twists, with their projective
    /// orders.
    pub fn twist_generators(&self) -> (&[CycMatrix], &[u64]) {
        (&self.gens, &self.orders)
    }

    /// Canonical coset of a surviving scalar tuple.
    pub fn coset_of(&self, tuple: &[u64]) -> Option<&Vec<u64>> {
        self.form.label(tuple)
    }

    pub fn locate(&self, x: &CycMatrix) -> Result<Membership, VerifyError> {
        let mut t = Vec::with_capacity(self.gens.len());
        for (h, m) in self.gens.iter().zip(&self.orders) {
            let r = match commutator_root(x, h) {
                Ok(r) => r,
                Err(crate::matrep::MatrepError::NotProjectivelyCommuting)
                | Err(crate::matrep::MatrepError::ScalarOrder { .. }) => {
                    return Ok(Membership::NotCommuting)
                }
                Err(e) => return Err(e.into()),
            };
            match r.exponent_in(*m) {
                Some(k) => t.push(k),
                None => return Ok(Membership::NotCommuting),
            }
        }
        let Some(winv) = self.inverses.get(&t) else {
            return Ok(Membership::OutsideComponent(t));
        };
        if self.identity.contains_matrix(&winv.mul(x)?) {
            Ok(Membership::Component(t))
        } else {
            Ok(Membership::OutsideComponent(t))
        }
    }
}

/// `Z_{PGL(U)}(target)` as a group spec.
pub fn projective_centralizer(target: &GroupSpec) -> Result<GroupSpec, VerifyError> {
    Ok(Centralizer::compute(target)?.into_spec())
}

/// The commutant of `⊕ GL(d) ⊗ I_m` is `⊕ I_d ⊗ GL(m)`.
fn dual_blocks(blocks: &[GlBlock]) -> Vec<GlBlock> {
    blocks
        .iter()
        .map(|b| GlBlock {
            label: format!("{}'", b.label),
            dim: b.multiplicity(),
            grid: (0..b.multiplicity())
                .map(|k| b.grid.iter().map(|row| row[k]).collect())
                .collect(),
        })
        .collect()
}

/// Adds `t` (with witness `w`) to the subgroup of found tuples, filling in
/// every new element with a product of witnesses.
fn close_under(
    orders: &[u64],
    found: &mut HashMap<Vec<u64>, CycMatrix>,
    t: &[u64],
    w: CycMatrix,
) -> Result<(), VerifyError> {
    let ord = coords::order_of(orders, t);
    let mut powers = vec![w.clone()];
    for _ in 2..ord {
        let next = powers.last().expect("nonempty").mul(&w)?.normalize_first_nonzero()?;
        powers.push(next);
    }
    let old: Vec<(Vec<u64>, CycMatrix)> = found.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    for (s, ws) in old {
        let mut cur = s.clone();
        for p in &powers {
            cur = coords::add(orders, &cur, t);
            if !found.contains_key(&cur) {
                let m = if coords::is_zero(&s) {
                    p.clone()
                } else {
                    ws.mul(p)?.normalize_first_nonzero()?
                };
                found.insert(cur.clone(), m);
            }
        }
    }
    Ok(())
}

/// Least `m ≥ 1` with `h^m` in the span of the identity component.
fn projective_order(
    h: &CycMatrix,
    algebra: &AlgebraSpace,
    coset: &[u64],
) -> Result<u64, VerifyError> {
    let mut p = h.clone();
    for m in 1..=MAX_PROJECTIVE_ORDER {
        if algebra.contains_matrix(&p) {
            return Ok(m);
        }
        p = p.mul(h)?;
    }
    Err(VerifyError::InfiniteProjectiveOrder(coset.to_vec()))
}

/// Component generators whose cosets generate the component group, unit
/// cosets first. Falls back to every nontrivial generator when the spec's
/// generators are not closed under products modulo the identity component.
fn component_generators(
    target: &GroupSpec,
    algebra: &AlgebraSpace,
) -> Result<(Vec<CycMatrix>, Vec<u64>), VerifyError> {
    let d = target.component_group.factors();
    let is_unit = |c: &[u64]| c.iter().filter(|x| **x != 0).count() == 1 && c.contains(&1);
    let mut order: Vec<&Generator> = target.generators.iter().filter(|g| is_unit(&g.coset)).collect();
    order.extend(target.generators.iter().filter(|g| !is_unit(&g.coset)));

    let mut kept: Vec<(&Generator, u64)> = Vec::new();
    let mut span = vec![vec![0u64; d.len()]];
    for g in order {
        if (span.len() as u64) == target.component_group.order() {
            break;
        }
        if span.contains(&g.coset) {
            continue;
        }
        let m = projective_order(&g.matrix, algebra, &g.coset)?;
        if m == 1 {
            continue;
        }
        kept.push((g, m));
        let labels: Vec<Vec<u64>> = kept.iter().map(|(g, _)| g.coset.clone()).collect();
        span = coords::span(d, &labels);
    }

    if products_consistent(target, algebra, &kept)? {
        return Ok(kept.into_iter().map(|(g, m)| (g.matrix.clone(), m)).unzip());
    }
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for g in &target.generators {
        let m = projective_order(&g.matrix, algebra, &g.coset)?;
        if m > 1 {
            gens.push(g.matrix.clone());
            orders.push(m);
        }
    }
    Ok((gens, orders))
}

/// Every generator lies in the identity-component coset of the matching
/// product of kept generators.
fn products_consistent(
    target: &GroupSpec,
    algebra: &AlgebraSpace,
    kept: &[(&Generator, u64)],
) -> Result<bool, VerifyError> {
    let d = target.component_group.factors();
    let n = target.dim();
    let mut products: HashMap<Vec<u64>, CycMatrix> = HashMap::new();
    let zero = vec![0u64; d.len()];
    products.insert(zero.clone(), CycMatrix::identity_in(n, Field::get(1).expect("Q")));
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for (g, _) in kept {
            let y = coords::add(d, &x, &g.coset);
            if !products.contains_key(&y) {
                let p = products[&x].mul(&g.matrix)?;
                products.insert(y.clone(), p);
                queue.push_back(y);
            }
        }
    }
    for g in &target.generators {
        let Some(p) = products.get(&g.coset) else {
            return Ok(false);
        };
        let r = p.inverse()?.mul(&g.matrix)?;
        if !algebra.contains_matrix(&r) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{connected_pair, xx_hat_pair};
    use crate::matrep::{Ambient, TensorShape};
    use crate::verify::spec_equal;

    fn swap_spec() -> GroupSpec {
        let q = Field::get(1).unwrap();
        GroupSpec {
            shape: Ambient::single(TensorShape::new([("X", 2)]).unwrap()),
            identity: IdentityComponent::Blocks(vec![GlBlock::scalar("c", vec![0, 1])]),
            component_group: FinAbGroup::cyclic(2),
            generators: vec![
                Generator {
                    coset: vec![0],
                    matrix: CycMatrix::identity_in(2, q),
                },
                Generator {
                    coset: vec![1],
                    matrix: CycMatrix::from_ints(2, 2, &[0, 1, 1, 0]),
                },
            ],
        }
    }

    /// Commutant dimension from the rank of `Bᵀ ⊗ I − I ⊗ B`, stacked.
    fn commutant_dim_oracle(mats: &[CycMatrix]) -> usize {
        let n = mats[0].rows();
        let id = CycMatrix::identity(n, 1).unwrap();
        let mut rows = Vec::new();
        for b in mats {
            let op = b.transpose().kron(&id).unwrap().sub(&id.kron(b).unwrap()).unwrap();
            rows.extend(op.sparse_rows());
        }
        let mut stacked = CycMatrix::zeros(rows.len(), n * n, 1).unwrap();
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r {
                stacked.set(i, *j, x.clone()).unwrap();
            }
        }
        n * n - stacked.rank()
    }

    #[test]
    fn gl2_tensor_identity_centralizes_to_the_other_factor() {
        let (g, h) = connected_pair(&[(2, 2)]).unwrap();
        let z = Centralizer::compute(&g).unwrap();
        assert_eq!(z.component_count(), 1);
        assert_eq!(z.dim(), commutant_dim_oracle(&g.algebra().basis_matrices()));
        assert_eq!(z.spec().block_dims(), Some(vec![2]));
        assert!(spec_equal(z.spec(), &h).unwrap());
        for x in z.identity_space().basis_matrices() {
            for b in g.algebra().basis_matrices() {
                assert_eq!(x.mul(&b).unwrap(), b.mul(&x).unwrap());
            }
        }
    }

    #[test]
    fn xx_hat_is_self_centralizing() {
        let (g, _) = xx_hat_pair(&FinAbGroup::cyclic(2)).unwrap();
        let z = projective_centralizer(&g).unwrap();
        assert_eq!(z.component_group.order(), 4);
        assert!(spec_equal(&z, &g).unwrap());
    }

    #[test]
    fn swap_centralizer_is_torus_extended_by_two() {
        // Matrices commuting with the swap are aI + bS; those anticommuting
        // are diag(a, −a) + antidiag(b, −b). Both contain invertibles.
        let z = Centralizer::compute(&swap_spec()).unwrap();
        assert_eq!(z.dim(), 2);
        assert_eq!(z.component_count(), 2);
        let d = CycMatrix::from_ints(2, 2, &[1, 0, 0, -1]);
        assert_eq!(z.locate(&d).unwrap(), Membership::Component(vec![1]));
        let s = CycMatrix::from_ints(2, 2, &[0, 1, 1, 0]);
        assert_eq!(z.locate(&s).unwrap(), Membership::Component(vec![0]));
        let e = CycMatrix::from_ints(2, 2, &[1, 0, 0, 2]);
        assert_eq!(z.locate(&e).unwrap(), Membership::NotCommuting);
    }

    #[test]
    fn triple_centralizer_of_swap() {
        let z1 = projective_centralizer(&swap_spec()).unwrap();
        let z2 = projective_centralizer(&z1).unwrap();
        let z3 = projective_centralizer(&z2).unwrap();
        assert!(spec_equal(&z3, &z1).unwrap());
    }

    #[test]
    fn inconsistent_generators_fall_back_to_all() {
        // Coset [1,1] carries a matrix that is not the product of the other
        // two modulo scalars.
        let q = Field::get(1).unwrap();
        let g = |c: Vec<u64>, m: CycMatrix| Generator { coset: c, matrix: m };
        let spec = GroupSpec {
            shape: Ambient::single(TensorShape::new([("X", 2)]).unwrap()),
            identity: IdentityComponent::Blocks(vec![GlBlock::scalar("c", vec![0, 1])]),
            component_group: FinAbGroup::new(vec![2, 2]).unwrap(),
            generators: vec![
                g(vec![0, 0], CycMatrix::identity_in(2, q)),
                g(vec![0, 1], CycMatrix::from_ints(2, 2, &[1, 0, 0, -1])),
                g(vec![1, 0], CycMatrix::from_ints(2, 2, &[1, 0, 0, -1])),
                g(vec![1, 1], CycMatrix::from_ints(2, 2, &[0, 1, 1, 0])),
            ],
        };
        let z = Centralizer::compute(&spec).unwrap();
        // The generated group is the Klein four group, self-centralizing.
        assert_eq!(z.dim(), 1);
        assert_eq!(z.component_count(), 4);
    }
}
