//! Reductive subgroups of GL(U) up to scalars: an identity component made of
//! GL blocks (or given by an algebra basis) plus one generator per
//! component.

use serde::{Deserialize, Serialize};

use super::ConstructError;
use crate::abelian::{coords, FinAbGroup};
use crate::cyclo::{CycMatrix, CycNum, Echelon, Field, SparseVec};
use crate::matrep::Ambient;

/// `GL(dim)` acting as `M ⊗ I` on the basis vectors `grid[a][k]`: the
/// matrix unit `E_ab` maps to `Σ_k E_{grid[a][k], grid[b][k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlBlock {
    pub label: String,
    pub dim: usize,
    pub grid: Vec<Vec<usize>>,
}

impl GlBlock {
    pub fn multiplicity(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    /// The block `GL(1)` covering `indices`, i.e. scalars on their span.
    pub fn scalar(label: impl Into<String>, indices: Vec<usize>) -> GlBlock {
        GlBlock {
            label: label.into(),
            dim: 1,
            grid: vec![indices],
        }
    }

    /// `E_ab ⊗ I` as a sparse flattened `n × n` matrix.
    pub(crate) fn unit(&self, n: usize, a: usize, b: usize, one: &CycNum) -> SparseVec {
        let mut v: SparseVec = self.grid[a]
            .iter()
            .zip(&self.grid[b])
            .map(|(r, c)| (r * n + c, one.clone()))
            .collect();
        v.sort_by_key(|(j, _)| *j);
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityComponent {
    /// Product of GL blocks whose grids partition the basis.
    Blocks(Vec<GlBlock>),
    /// Unit group of the algebra spanned by these matrices (which must
    /// contain the identity).
    Algebra(Vec<CycMatrix>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub coset: Vec<u64>,
    pub matrix: CycMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct GroupSpec {
    pub shape: Ambient,
    pub identity: IdentityComponent,
    pub component_group: FinAbGroup,
    /// One generator per coset, in lexicographic coset order.
    pub generators: Vec<Generator>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecRepr {
    shape: Ambient,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<GlBlock>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebra: Option<Vec<CycMatrix>>,
    component_group: FinAbGroup,
    generators: Vec<Generator>,
}

impl TryFrom<SpecRepr> for GroupSpec {
    type Error = ConstructError;

    fn try_from(r: SpecRepr) -> Result<Self, Self::Error> {
        let identity = match (r.blocks, r.algebra) {
            (Some(b), None) => IdentityComponent::Blocks(b),
            (None, Some(a)) => IdentityComponent::Algebra(a),
            _ => {
                return Err(ConstructError::MalformedSpec(
                    "exactly one of \"blocks\" and \"algebra\" must be given".into(),
                ))
            }
        };
        let spec = GroupSpec {
            shape: r.shape,
            identity,
            component_group: r.component_group,
            generators: r.generators,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<GroupSpec> for SpecRepr {
    fn from(s: GroupSpec) -> Self {
        let (blocks, algebra) = match s.identity {
            IdentityComponent::Blocks(b) => (Some(b), None),
            IdentityComponent::Algebra(a) => (None, Some(a)),
        };
        SpecRepr {
            shape: s.shape,
            blocks,
            algebra,
            component_group: s.component_group,
            generators: s.generators,
        }
    }
}

impl GroupSpec {
    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    /// Checks shapes, block grids, coset labels and invertibility.
    pub fn validate(&self) -> Result<(), ConstructError> {
        let n = self.dim();
        let bad = |msg: String| Err(ConstructError::MalformedSpec(msg));
        match &self.identity {
            IdentityComponent::Blocks(blocks) => {
                let mut seen = vec![false; n];
                for b in blocks {
                    if b.dim == 0 || b.grid.len() != b.dim {
                        return bad(format!("block {:?} has a grid of the wrong height", b.label));
                    }
                    let m = b.multiplicity();
                    for row in &b.grid {
                        if row.len() != m || m == 0 {
                            return bad(format!("block {:?} has ragged rows", b.label));
                        }
                        for &i in row {
                            if i >= n || seen[i] {
                                return bad(format!(
                                    "block {:?} uses basis index {i} out of range or twice",
                                    b.label
                                ));
                            }
                            seen[i] = true;
                        }
                    }
                }
                if seen.iter().any(|s| !s) {
                    return bad("block grids do not cover the whole space".into());
                }
            }
            IdentityComponent::Algebra(basis) => {
                if basis.iter().any(|m| m.rows() != n || m.cols() != n) {
                    return bad("algebra basis has the wrong size".into());
                }
                let space = AlgebraSpace::from_matrices(n, basis);
                if space.dim() != basis.len() {
                    return bad("algebra basis is linearly dependent".into());
                }
                if !space.contains_matrix(&CycMatrix::identity_in(n, Field::get(1).expect("Q"))) {
                    return bad("algebra does not contain the identity".into());
                }
            }
        }
        let d = self.component_group.factors();
        for g in &self.generators {
            if g.coset.len() != d.len() || g.coset.iter().zip(d).any(|(c, o)| c >= o) {
                return bad(format!("coset label {:?} is not in the component group", g.coset));
            }
            if g.matrix.rows() != n || g.matrix.cols() != n {
                return bad(format!("generator for coset {:?} has the wrong size", g.coset));
            }
            if !g.matrix.is_invertible() {
                return bad(format!("generator for coset {:?} is singular", g.coset));
            }
        }
        Ok(())
    }

    pub fn generator(&self, coset: &[u64]) -> Option<&CycMatrix> {
        self.generators
            .iter()
            .find(|g| g.coset == coset)
            .map(|g| &g.matrix)
    }

    /// Linear span of the identity component.
    pub fn algebra(&self) -> AlgebraSpace {
        let n = self.dim();
        match &self.identity {
            IdentityComponent::Blocks(blocks) => {
                let one = CycNum::from_int_in(Field::get(1).expect("Q"), 1);
                let mut vecs = Vec::new();
                for b in blocks {
                    for a in 0..b.dim {
                        for c in 0..b.dim {
                            vecs.push(b.unit(n, a, c, &one));
                        }
                    }
                }
                AlgebraSpace::from_sparse(n, vecs)
            }
            IdentityComponent::Algebra(basis) => AlgebraSpace::from_matrices(n, basis),
        }
    }

    /// Dimension of the identity component as an algebraic group.
    pub fn identity_dim(&self) -> usize {
        match &self.identity {
            IdentityComponent::Blocks(blocks) => blocks.iter().map(|b| b.dim * b.dim).sum(),
            IdentityComponent::Algebra(basis) => basis.len(),
        }
    }

    /// Block dimensions when the identity component is given as GL blocks.
    pub fn block_dims(&self) -> Option<Vec<usize>> {
        match &self.identity {
            IdentityComponent::Blocks(blocks) => Some(blocks.iter().map(|b| b.dim).collect()),
            IdentityComponent::Algebra(_) => None,
        }
    }

    /// Builds generators for every coset of `group` from a per-coset
    /// matrix function, identity coset first.
    pub(crate) fn from_cosets(
        shape: Ambient,
        identity: IdentityComponent,
        group: FinAbGroup,
        mut matrix: impl FnMut(&[u64]) -> Result<CycMatrix, ConstructError>,
    ) -> Result<GroupSpec, ConstructError> {
        let generators = coords::elements(group.factors())
            .into_iter()
            .map(|c| {
                let m = matrix(&c)?;
                Ok(Generator { coset: c, matrix: m })
            })
            .collect::<Result<_, ConstructError>>()?;
        Ok(GroupSpec {
            shape,
            identity,
            component_group: group,
            generators,
        })
    }
}

/// A linear subspace of `n × n` matrices with a membership test.
#[derive(Clone, Debug)]
pub struct AlgebraSpace {
    n: usize,
    basis: Vec<SparseVec>,
    ech: Echelon,
}

impl AlgebraSpace {
    pub fn from_sparse(n: usize, vecs: Vec<SparseVec>) -> AlgebraSpace {
        let mut ech = Echelon::new(n * n, Field::get(1).expect("Q"));
        let mut basis = Vec::new();
        for v in vecs {
            if ech.insert(v.clone()).is_some() {
                basis.push(v);
            }
        }
        AlgebraSpace { n, basis, ech }
    }

    pub fn from_matrices(n: usize, mats: &[CycMatrix]) -> AlgebraSpace {
        Self::from_sparse(n, mats.iter().map(CycMatrix::to_sparse_vec).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_matrices(&self) -> Vec<CycMatrix> {
        self.basis
            .iter()
            .map(|v| CycMatrix::from_sparse_vec(self.n, self.n, self.ech.field(), v))
            .collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.ech.contains(v)
    }

    pub fn contains_matrix(&self, m: &CycMatrix) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.contains(&m.to_sparse_vec())
    }

    /// True iff every basis element of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &AlgebraSpace) -> bool {
        self.n == other.n && self.basis.iter().all(|v| other.contains(v))
    }

    /// Trace form `(x, y) ↦ Tr(xy)` is nondegenerate; for a unital algebra
    /// of matrices this holds iff it is semisimple.
    pub fn is_semisimple(&self) -> bool {
        let n = self.n;
        let k = self.basis.len();
        // Transposed copies so Tr(xy) = Σ x[r][s]·y[s][r] is a sparse dot.
        let transposed: Vec<SparseVec> = self
            .basis
            .iter()
            .map(|v| {
                let mut t: SparseVec = v
                    .iter()
                    .map(|(idx, x)| ((idx % n) * n + idx / n, x.clone()))
                    .collect();
                t.sort_by_key(|(j, _)| *j);
                t
            })
            .collect();
        let mut gram = Echelon::new(k, self.ech.field());
        for x in &self.basis {
            let row: SparseVec = transposed
                .iter()
                .enumerate()
                .filter_map(|(j, yt)| {
                    let d = sparse_dot(x, yt);
                    (!d.is_zero()).then_some((j, d))
                })
                .collect();
            gram.insert(row);
        }
        gram.rank() == k
    }
}

fn sparse_dot(a: &SparseVec, b: &SparseVec) -> CycNum {
    let f = a
        .first()
        .or(b.first())
        .map(|(_, x)| x.field())
        .unwrap_or_else(|| Field::get(1).expect("Q"));
    let mut acc = CycNum::zero_in(f);
    let (mut i, mut k) = (0, 0);
    while i < a.len() && k < b.len() {
        match a[i].0.cmp(&b[k].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => k += 1,
            std::cmp::Ordering::Equal => {
                acc = &acc + &(&a[i].1 * &b[k].1);
                i += 1;
                k += 1;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semisimplicity_by_trace_form() {
        let upper = [
            CycMatrix::from_ints(2, 2, &[1, 0, 0, 1]),
            CycMatrix::from_ints(2, 2, &[0, 1, 0, 0]),
        ];
        assert!(!AlgebraSpace::from_matrices(2, &upper).is_semisimple());
        let diag = [
            CycMatrix::from_ints(2, 2, &[1, 0, 0, 0]),
            CycMatrix::from_ints(2, 2, &[0, 0, 0, 1]),
        ];
        assert!(AlgebraSpace::from_matrices(2, &diag).is_semisimple());
    }
}
