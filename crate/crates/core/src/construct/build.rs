//! The constructions: connected pairs, the 𝒳 × 𝒳̂ pair and its general
//! form, the two type-2 constructions, single-orbit pairs and multi-orbit
//! gluing.

use std::collections::HashMap;

use super::spec::{GlBlock, GroupSpec, IdentityComponent};
use super::{ConstructError, MultiOrbitSpec, SingleOrbitIngredients};
use crate::abelian::{canonical_iso, coords, dual_isomorphism_transport, CanonicalIso, FinAbGroup};
use crate::cyclo::{CycMatrix, Field};
use crate::matrep::{character_by, translation_by, Ambient, TensorShape};
use crate::verify::verify_dual_pair;

fn rational_identity(n: usize) -> CycMatrix {
    CycMatrix::identity_in(n, Field::get(1).expect("Q"))
}

/// `τ_x σ_ξ` on functions on `ℤ/o₁ × …`.
fn heisenberg(orders: &[u64], x: &[u64], xi: &[u64]) -> Result<CycMatrix, ConstructError> {
    Ok(translation_by(orders, x).mul(&character_by(orders, xi))?)
}

fn kron_all(factors: &[CycMatrix]) -> Result<CycMatrix, ConstructError> {
    let mut acc: Option<CycMatrix> = None;
    for f in factors {
        if f.rows() == 1 && f.get(0, 0).is_one() {
            continue;
        }
        acc = Some(match acc {
            None => f.clone(),
            Some(a) => a.kron(f)?,
        });
    }
    Ok(acc.unwrap_or_else(|| rational_identity(1)))
}

fn offset_blocks(blocks: &[GlBlock], offset: usize) -> Vec<GlBlock> {
    blocks
        .iter()
        .map(|b| GlBlock {
            label: b.label.clone(),
            dim: b.dim,
            grid: b
                .grid
                .iter()
                .map(|row| row.iter().map(|i| i + offset).collect())
                .collect(),
        })
        .collect()
}

/// `G = ∏ GL(V_i)`, `H = ∏ GL(W_i)` on `⊕ V_i ⊗ W_i`.
pub fn connected_pair(dims: &[(usize, usize)]) -> Result<(GroupSpec, GroupSpec), ConstructError> {
    if dims.is_empty() {
        return Err(ConstructError::EmptyDecomposition);
    }
    let mut shapes = Vec::new();
    let mut g_blocks = Vec::new();
    let mut h_blocks = Vec::new();
    let mut off = 0;
    for (i, &(v, w)) in dims.iter().enumerate() {
        if v == 0 || w == 0 {
            return Err(ConstructError::PreconditionViolated(format!(
                "summand {i} has a zero dimension"
            )));
        }
        shapes.push(TensorShape::new([("V", v), ("W", w)])?);
        g_blocks.push(GlBlock {
            label: format!("GL(V{i})"),
            dim: v,
            grid: (0..v).map(|a| (0..w).map(|k| off + a * w + k).collect()).collect(),
        });
        h_blocks.push(GlBlock {
            label: format!("GL(W{i})"),
            dim: w,
            grid: (0..w).map(|a| (0..v).map(|k| off + k * w + a).collect()).collect(),
        });
        off += v * w;
    }
    let shape = Ambient { summands: shapes };
    let id = rational_identity(off);
    let g = GroupSpec::from_cosets(
        shape.clone(),
        IdentityComponent::Blocks(g_blocks),
        FinAbGroup::trivial(),
        |_| Ok(id.clone()),
    )?;
    let h = GroupSpec::from_cosets(
        shape,
        IdentityComponent::Blocks(h_blocks),
        FinAbGroup::trivial(),
        |_| Ok(id.clone()),
    )?;
    Ok((g, h))
}

/// The self-centralizing image of `𝒳 × 𝒳̂` in `PGL(L²(𝒳))`; both sides
/// are the same spec.
pub fn xx_hat_pair(x: &FinAbGroup) -> Result<(GroupSpec, GroupSpec), ConstructError> {
    let n = x.order() as usize;
    let d = x.factors();
    let shape = Ambient::single(TensorShape::new([("X", n)])?);
    let iso = canonical_iso(&[d, d].concat());
    let spec = GroupSpec::from_cosets(
        shape,
        IdentityComponent::Blocks(vec![GlBlock::scalar("scalars", (0..n).collect())]),
        iso.group.clone(),
        |c| {
            let p = iso.from_canonical.apply(c);
            heisenberg(d, &p[..d.len()], &p[d.len()..])
        },
    )?;
    Ok((spec.clone(), spec))
}

fn require_dual_pair(h1: &GroupSpec, h2: &GroupSpec) -> Result<(), ConstructError> {
    let report = verify_dual_pair(h1, h2)
        .map_err(|e| ConstructError::InputNotDualPair(e.to_string()))?;
    if !report.is_dual_pair {
        let codes: Vec<String> = report.failures.iter().map(|f| f.code.to_string()).collect();
        return Err(ConstructError::InputNotDualPair(codes.join(", ")));
    }
    Ok(())
}

fn fresh_label(shape: &Ambient, base: &str) -> String {
    let used = |l: &str| {
        shape
            .summands
            .iter()
            .any(|s| s.factors().iter().any(|f| f.label == l))
    };
    if !used(base) {
        return base.to_string();
    }
    (2..)
        .map(|i| format!("{base}{i}"))
        .find(|l| !used(l))
        .expect("infinitely many labels")
}

/// The identity component of `spec` tensored with `I_nx`.
fn expand_identity(spec: &GroupSpec, nx: usize) -> Result<IdentityComponent, ConstructError> {
    Ok(match &spec.identity {
        IdentityComponent::Blocks(blocks) => IdentityComponent::Blocks(
            blocks
                .iter()
                .map(|b| GlBlock {
                    label: b.label.clone(),
                    dim: b.dim,
                    grid: b
                        .grid
                        .iter()
                        .map(|row| {
                            row.iter()
                                .flat_map(|&i| (0..nx).map(move |x| i * nx + x))
                                .collect()
                        })
                        .collect(),
                })
                .collect(),
        ),
        IdentityComponent::Algebra(basis) => {
            let id = rational_identity(nx);
            IdentityComponent::Algebra(
                basis
                    .iter()
                    .map(|m| m.kron(&id))
                    .collect::<Result<_, _>>()?,
            )
        }
    })
}

fn coset_matrix<'a>(spec: &'a GroupSpec, coset: &[u64]) -> Result<&'a CycMatrix, ConstructError> {
    spec.generator(coset).ok_or_else(|| {
        ConstructError::MalformedSpec(format!("no generator listed for coset {coset:?}"))
    })
}

/// Product of a spec's component group with extra cyclic orders, and a
/// matrix per coset built from the spec generator and the extra
/// coordinates.
fn extend_spec(
    spec: &GroupSpec,
    shape: Ambient,
    identity: IdentityComponent,
    extra: &[u64],
    mut local: impl FnMut(&[u64]) -> Result<CycMatrix, ConstructError>,
) -> Result<GroupSpec, ConstructError> {
    let base = spec.component_group.factors();
    let iso = canonical_iso(&[base, extra].concat());
    GroupSpec::from_cosets(shape, identity, iso.group.clone(), |c| {
        let p = iso.from_canonical.apply(c);
        let g = coset_matrix(spec, &p[..base.len()])?;
        Ok(g.kron(&local(&p[base.len()..])?)?)
    })
}

/// Tensors a dual pair `(H₁, H₂)` in `PGL(W)` with the `𝒳 × 𝒳̂` pair,
/// giving a pair in `PGL(W ⊗ L²(𝒳))` with component groups
/// `H_i/H_i° × 𝒳 × 𝒳̂`.
pub fn general_xx_hat_pair(
    h1: &GroupSpec,
    h2: &GroupSpec,
    x: &FinAbGroup,
) -> Result<(GroupSpec, GroupSpec), ConstructError> {
    require_dual_pair(h1, h2)?;
    let nx = x.order() as usize;
    let d = x.factors();
    let label = fresh_label(&h1.shape, "X");
    let shape = h1.shape.with_factor(&label, nx)?;
    let extra = [d, d].concat();
    let build = |s: &GroupSpec| {
        extend_spec(s, shape.clone(), expand_identity(s, nx)?, &extra, |p| {
            heisenberg(d, &p[..d.len()], &p[d.len()..])
        })
    };
    Ok((build(h1)?, build(h2)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Type2Variant {
    /// `H₁° = ℂ^×`: `([H₁ × torus] ⋊ 𝒳, H₂ × 𝒳̂)`.
    I,
    /// `(H₁, H₂)` connected: `(H₁^{|𝒳|} ⋊ 𝒳, H₂ × 𝒳̂)`.
    II,
}

pub fn type2_pair(
    h1: &GroupSpec,
    h2: &GroupSpec,
    x: &FinAbGroup,
    variant: Type2Variant,
) -> Result<(GroupSpec, GroupSpec), ConstructError> {
    match variant {
        Type2Variant::I if h1.identity_dim() != 1 => {
            return Err(ConstructError::PreconditionViolated(
                "variant i needs the first group's identity component to be the scalars".into(),
            ))
        }
        Type2Variant::II
            if !h1.component_group.is_trivial() || !h2.component_group.is_trivial() =>
        {
            return Err(ConstructError::PreconditionViolated(
                "variant ii needs a connected input pair".into(),
            ))
        }
        _ => {}
    }
    require_dual_pair(h1, h2)?;
    let nx = x.order() as usize;
    let nw = h1.dim();
    let d = x.factors();
    let label = fresh_label(&h1.shape, "X");
    let shape = h1.shape.with_factor(&label, nx)?;
    let id_w = rational_identity(nw);
    let h_side = extend_spec(h2, shape.clone(), expand_identity(h2, nx)?, d, |xi| {
        Ok(character_by(d, xi))
    })?;
    let g_side = match variant {
        Type2Variant::I => {
            let torus = (0..nx)
                .map(|x| GlBlock::scalar(format!("torus@{x}"), (0..nw).map(|w| w * nx + x).collect()))
                .collect();
            extend_spec(h1, shape, IdentityComponent::Blocks(torus), d, |x| {
                Ok(translation_by(d, x))
            })?
        }
        Type2Variant::II => {
            let IdentityComponent::Blocks(blocks) = &h1.identity else {
                return Err(ConstructError::PreconditionViolated(
                    "variant ii needs the identity component as GL blocks".into(),
                ));
            };
            let copies = (0..nx)
                .flat_map(|x| {
                    blocks.iter().map(move |b| GlBlock {
                        label: format!("{}@{x}", b.label),
                        dim: b.dim,
                        grid: b
                            .grid
                            .iter()
                            .map(|row| row.iter().map(|i| i * nx + x).collect())
                            .collect(),
                    })
                })
                .collect();
            GroupSpec::from_cosets(
                shape,
                IdentityComponent::Blocks(copies),
                x.clone(),
                |c| Ok(id_w.kron(&translation_by(d, c))?),
            )?
        }
    };
    Ok((g_side, h_side))
}

/// Matrices and blocks of the single-orbit pair for one set of
/// ingredients.
pub(crate) struct SingleOrbitParts {
    pub ing: SingleOrbitIngredients,
    dims: [usize; 5],
    iso: CanonicalIso,
}

impl SingleOrbitParts {
    pub fn new(ing: &SingleOrbitIngredients) -> SingleOrbitParts {
        let dims = [
            ing.b,
            ing.e,
            ing.l_group.order() as usize,
            ing.j_group.order() as usize,
            ing.k_group.order() as usize,
        ];
        SingleOrbitParts {
            ing: ing.clone(),
            dims,
            iso: canonical_iso(&ing.gamma_orders()),
        }
    }

    pub fn shape(&self) -> Result<TensorShape, ConstructError> {
        let labels = ["B", "E", "L", "J", "K"];
        Ok(TensorShape::new(labels.iter().copied().zip(self.dims))?)
    }

    pub fn canonical(&self) -> &CanonicalIso {
        &self.iso
    }

    fn index(&self, c: [usize; 5]) -> usize {
        let [_, e, l, j, k] = self.dims;
        (((c[0] * e + c[1]) * l + c[2]) * j + c[3]) * k + c[4]
    }

    /// `GL(B)` once per element of `𝓚`.
    pub fn g_blocks(&self, offset: usize) -> Vec<GlBlock> {
        let [b, e, l, j, k] = self.dims;
        (0..k)
            .map(|kk| GlBlock {
                label: format!("GL(B)@K{kk}"),
                dim: b,
                grid: (0..b)
                    .map(|bb| {
                        let mut row = Vec::with_capacity(e * l * j);
                        for ee in 0..e {
                            for ll in 0..l {
                                for jj in 0..j {
                                    row.push(offset + self.index([bb, ee, ll, jj, kk]));
                                }
                            }
                        }
                        row
                    })
                    .collect(),
            })
            .collect()
    }

    /// `GL(E)` once per element of `𝓙`.
    pub fn h_blocks(&self, offset: usize) -> Vec<GlBlock> {
        let [b, e, l, j, k] = self.dims;
        (0..j)
            .map(|jj| GlBlock {
                label: format!("GL(E)@J{jj}"),
                dim: e,
                grid: (0..e)
                    .map(|ee| {
                        let mut row = Vec::with_capacity(b * l * k);
                        for bb in 0..b {
                            for ll in 0..l {
                                for kk in 0..k {
                                    row.push(offset + self.index([bb, ee, ll, jj, kk]));
                                }
                            }
                        }
                        row
                    })
                    .collect(),
            })
            .collect()
    }

    /// G-side generator at product coordinates `(x, ξ, ĵ, k)`.
    pub fn g_matrix(&self, p: &[u64]) -> Result<CycMatrix, ConstructError> {
        let [x, xi, jh, k] = self.ing.split(p);
        kron_all(&[
            rational_identity(self.dims[0] * self.dims[1]),
            heisenberg(self.ing.l_group.factors(), x, xi)?,
            character_by(self.ing.j_group.factors(), jh),
            translation_by(self.ing.k_group.factors(), k),
        ])
    }

    /// H-side generator at product coordinates `(x', ξ', j, k̂)`.
    pub fn h_matrix(&self, p: &[u64]) -> Result<CycMatrix, ConstructError> {
        let [x, xi, j, kh] = self.ing.split(p);
        kron_all(&[
            rational_identity(self.dims[0] * self.dims[1]),
            heisenberg(self.ing.l_group.factors(), x, xi)?,
            translation_by(self.ing.j_group.factors(), j),
            character_by(self.ing.k_group.factors(), kh),
        ])
    }
}

/// The single-orbit pair in `PGL(B ⊗ E ⊗ L ⊗ J ⊗ K)` with component groups
/// `𝓛 × 𝓛̂ × 𝓙̂ × 𝓚` and `𝓛 × 𝓛̂ × 𝓙 × 𝓚̂`.
pub fn single_orbit_pair(
    ing: &SingleOrbitIngredients,
) -> Result<(GroupSpec, GroupSpec), ConstructError> {
    if ing.b == 0 || ing.e == 0 {
        return Err(ConstructError::PreconditionViolated(
            "b and e must be positive".into(),
        ));
    }
    let parts = SingleOrbitParts::new(ing);
    let shape = Ambient::single(parts.shape()?);
    let iso = parts.canonical();
    let g = GroupSpec::from_cosets(
        shape.clone(),
        IdentityComponent::Blocks(parts.g_blocks(0)),
        iso.group.clone(),
        |c| parts.g_matrix(&iso.from_canonical.apply(c)),
    )?;
    let h = GroupSpec::from_cosets(
        shape,
        IdentityComponent::Blocks(parts.h_blocks(0)),
        iso.group.clone(),
        |c| parts.h_matrix(&iso.from_canonical.apply(c)),
    )?;
    Ok((g, h))
}

/// For each summand, the map from `Γ̂` (self-dual coordinates on `Γ`) to
/// the H-side product coordinates: `δ ↦ d` with `μ_i(q_i(γ), d) = δ(γ)`.
pub(crate) fn h_side_gluing(
    spec: &MultiOrbitSpec,
) -> Result<Vec<HashMap<Vec<u64>, Vec<u64>>>, ConstructError> {
    let gamma = spec.gamma.factors();
    let mut out = Vec::new();
    for (i, s) in spec.summands.iter().enumerate() {
        let orders = s.ingredients.gamma_orders();
        if s.q.src != gamma || s.q.dst != orders || !s.q.is_isomorphism() {
            return Err(ConstructError::NotIsomorphism(format!(
                "q for summand {i} is not an isomorphism from the shared group onto {}",
                s.ingredients.gamma()
            )));
        }
        let u = dual_isomorphism_transport(&s.q)?;
        // character of Γ_i (self-dual coordinates) → H-side coordinates
        let mut by_char: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
        let units: Vec<Vec<u64>> = (0..orders.len())
            .map(|j| {
                let mut e = vec![0; orders.len()];
                e[j] = 1;
                e
            })
            .collect();
        for d in coords::elements(&orders) {
            let chi: Vec<u64> = units
                .iter()
                .zip(&orders)
                .map(|(e, o)| {
                    let r = s.ingredients.pairing(e, &d);
                    r.exponent_in(*o).expect("pairing value order divides the generator order")
                })
                .collect();
            by_char.insert(chi, d);
        }
        if by_char.len() as u64 != s.ingredients.gamma().order() {
            return Err(ConstructError::IncompatibleGluing(format!(
                "pairing of summand {i} is degenerate"
            )));
        }
        let map = coords::elements(gamma)
            .into_iter()
            .map(|delta| {
                let d = by_char[&u.apply(&delta)].clone();
                (delta, d)
            })
            .collect();
        out.push(map);
    }
    Ok(out)
}

/// Block-diagonal pair over `⊕ U_i` whose component generators are the
/// tuples `(g_{q_1(γ)}, …, g_{q_r(γ)})`.
pub fn multi_orbit_glue(spec: &MultiOrbitSpec) -> Result<(GroupSpec, GroupSpec), ConstructError> {
    if spec.summands.is_empty() {
        return Err(ConstructError::EmptyDecomposition);
    }
    let h_maps = h_side_gluing(spec)?;
    let gamma = spec.gamma.factors();
    // μ_i(q_i(γ), d_i(δ)) must not depend on i.
    let basis: Vec<Vec<u64>> = (0..gamma.len())
        .map(|j| {
            let mut e = vec![0; gamma.len()];
            e[j] = 1;
            e
        })
        .collect();
    for g in &basis {
        for d in &basis {
            let vals: Vec<_> = spec
                .summands
                .iter()
                .zip(&h_maps)
                .map(|(s, m)| s.ingredients.pairing(&s.q.apply(g), &m[d]))
                .collect();
            if vals.windows(2).any(|w| w[0] != w[1]) {
                return Err(ConstructError::IncompatibleGluing(format!(
                    "pairings disagree at generator pair {g:?}, {d:?}"
                )));
            }
        }
    }
    let parts: Vec<SingleOrbitParts> = spec
        .summands
        .iter()
        .map(|s| SingleOrbitParts::new(&s.ingredients))
        .collect();
    let shape = Ambient {
        summands: parts.iter().map(|p| p.shape()).collect::<Result<_, _>>()?,
    };
    let offsets = shape.offsets();
    let mut g_blocks = Vec::new();
    let mut h_blocks = Vec::new();
    for (i, (p, off)) in parts.iter().zip(&offsets).enumerate() {
        let tag = |mut b: GlBlock| {
            b.label = format!("{}#{i}", b.label);
            b
        };
        g_blocks.extend(offset_blocks(&p.g_blocks(0), *off).into_iter().map(tag));
        h_blocks.extend(offset_blocks(&p.h_blocks(0), *off).into_iter().map(tag));
    }
    let g = GroupSpec::from_cosets(
        shape.clone(),
        IdentityComponent::Blocks(g_blocks),
        spec.gamma.clone(),
        |c| {
            let mats = parts
                .iter()
                .zip(&spec.summands)
                .map(|(p, s)| p.g_matrix(&s.q.apply(c)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CycMatrix::block_diag(&mats)?)
        },
    )?;
    let h = GroupSpec::from_cosets(
        shape,
        IdentityComponent::Blocks(h_blocks),
        spec.gamma.clone(),
        |c| {
            let mats = parts
                .iter()
                .zip(&h_maps)
                .map(|(p, m)| p.h_matrix(&m[c]))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CycMatrix::block_diag(&mats)?)
        },
    )?;
    Ok((g, h))
}
