//! Twisted commutants `{X : X b = b X ∀b ∈ A, X h_i = c_i h_i X}` as kernels
//! of stacked sparse linear systems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::VerifyError;
use crate::construct::{AlgebraSpace, GlBlock};
use crate::cyclo::{axpy, common_conductor, CycMatrix, CycNum, Echelon, Field, SparseVec};

/// Commutant basis of a product of GL blocks whose grids partition the
/// basis: `I_d ⊗ E_kl` for every block and every pair of multiplicity
/// indices.
pub(crate) fn commutant_of_blocks(n: usize, blocks: &[GlBlock]) -> Vec<SparseVec> {
    let one = CycNum::from_int_in(Field::get(1).expect("Q"), 1);
    let mut out = Vec::new();
    for b in blocks {
        let m = b.multiplicity();
        for k in 0..m {
            for l in 0..m {
                let mut v: SparseVec = b
                    .grid
                    .iter()
                    .map(|row| (row[k] * n + row[l], one.clone()))
                    .collect();
                v.sort_by_key(|(j, _)| *j);
                out.push(v);
            }
        }
    }
    out
}

/// Commutant of the span of `mats` (flattened `n × n`), by elimination on
/// the `n²` unknown entries.
pub(crate) fn commutant_of_span(n: usize, mats: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new(n * n, Field::get(1).expect("Q"));
    for b in mats {
        // row (r, s) of XB − BX
        let mut rows: Vec<SparseVec> = vec![Vec::new(); n * n];
        for (idx, v) in b {
            let (k, s) = (idx / n, idx % n);
            for r in 0..n {
                rows[r * n + s].push((r * n + k, v.clone()));
            }
            let r = k;
            let kk = s;
            for s2 in 0..n {
                rows[r * n + s2].push((kk * n + s2, v.neg()));
            }
        }
        for row in rows {
            let row = merge_sparse(row);
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    ech.kernel_basis()
}

/// Sorts by column and sums duplicates.
fn merge_sparse(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(j, _)| *j);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (j, x) in v {
        match out.last_mut() {
            Some((k, y)) if *k == j => *y = &*y + &x,
            _ => out.push((j, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `Σ_t a_t C_t` for a coefficient vector over a basis of flattened
/// matrices.
pub(crate) fn combine(basis: &[SparseVec], a: &SparseVec) -> SparseVec {
    let mut acc: Vec<(usize, CycNum)> = Vec::new();
    for (t, c) in a {
        for (j, x) in &basis[*t] {
            acc.push((*j, c * x));
        }
    }
    merge_sparse(acc)
}

pub(crate) fn sparse_to_matrix(n: usize, v: &SparseVec) -> CycMatrix {
    let mut m = 1;
    for (_, x) in v {
        m = common_conductor(m, x.conductor()).expect("conductor within cap");
    }
    CycMatrix::from_sparse_vec(n, n, Field::get(m).expect("valid conductor"), v)
}

/// Stage two of the solve: with a fixed basis `C_t` of the untwisted
/// commutant, `X = Σ a_t C_t` and each generator contributes the equations
/// `Σ_t a_t (C_t h_i − c_i h_i C_t) = 0`.
pub(crate) struct TwistEngine {
    n: usize,
    base: Vec<SparseVec>,
    /// Per generator, per matrix position: (`C_t h` row, `h C_t` row) over `t`.
    eqs: Vec<Vec<(SparseVec, SparseVec)>>,
}

impl TwistEngine {
    pub fn new(n: usize, base: Vec<SparseVec>, gens: &[CycMatrix]) -> TwistEngine {
        let eqs = gens.iter().map(|h| Self::equations(n, &base, h)).collect();
        TwistEngine { n, base, eqs }
    }

    fn equations(n: usize, base: &[SparseVec], h: &CycMatrix) -> Vec<(SparseVec, SparseVec)> {
        let row_nz: Vec<Vec<usize>> = (0..n)
            .map(|k| (0..n).filter(|&s| !h.get(k, s).is_zero()).collect())
            .collect();
        let col_nz: Vec<Vec<usize>> = (0..n)
            .map(|k| (0..n).filter(|&r| !h.get(r, k).is_zero()).collect())
            .collect();
        let mut p: Vec<SparseVec> = vec![Vec::new(); n * n];
        let mut q: Vec<SparseVec> = vec![Vec::new(); n * n];
        for (t, c) in base.iter().enumerate() {
            let mut pt: Vec<(usize, CycNum)> = Vec::new();
            let mut qt: Vec<(usize, CycNum)> = Vec::new();
            for (idx, v) in c {
                let (r, k) = (idx / n, idx % n);
                for &s in &row_nz[k] {
                    pt.push((r * n + s, v * h.get(k, s)));
                }
                let (k2, s2) = (r, k);
                for &r2 in &col_nz[k2] {
                    qt.push((r2 * n + s2, h.get(r2, k2) * v));
                }
            }
            for (pos, x) in merge_sparse(pt) {
                p[pos].push((t, x));
            }
            for (pos, x) in merge_sparse(qt) {
                q[pos].push((t, x));
            }
        }
        p.into_iter()
            .zip(q)
            .filter(|(a, b)| !a.is_empty() || !b.is_empty())
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Basis of the twisted commutant for scalars `c`, as coefficient
    /// vectors over the base.
    pub fn solve(&self, c: &[CycNum]) -> Vec<SparseVec> {
        let d = self.base.len();
        let mut ech = Echelon::new(d, Field::get(1).expect("Q"));
        'outer: for (eqs, ci) in self.eqs.iter().zip(c) {
            let neg = ci.neg();
            for (p, q) in eqs {
                let row = axpy(p, &neg, q);
                if !row.is_empty() {
                    ech.insert(row);
                    if ech.rank() == d {
                        break 'outer;
                    }
                }
            }
        }
        ech.kernel_basis()
    }

    /// The solution space as flattened matrices.
    pub fn solve_matrices(&self, c: &[CycNum]) -> Vec<SparseVec> {
        self.solve(c).iter().map(|a| combine(&self.base, a)).collect()
    }
}

/// An invertible element of the span of `basis`, searched deterministically:
/// the sum, each basis element, then seeded pseudo-random combinations.
pub(crate) fn find_invertible(n: usize, basis: &[SparseVec]) -> Option<CycMatrix> {
    let k = basis.len();
    if k == 0 {
        return None;
    }
    let try_coeffs = |coeffs: &[i64]| -> Option<CycMatrix> {
        let a: SparseVec = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(t, c)| (t, CycNum::from_int_in(Field::get(1).expect("Q"), *c)))
            .collect();
        if a.is_empty() {
            return None;
        }
        let m = sparse_to_matrix(n, &combine(basis, &a));
        m.is_invertible().then_some(m)
    };
    if let Some(m) = try_coeffs(&vec![1; k]) {
        return Some(m);
    }
    for t in 0..k {
        let mut e = vec![0; k];
        e[t] = 1;
        if let Some(m) = try_coeffs(&e) {
            return Some(m);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7477_6973_7465_64);
    let small = (k * n) as i64;
    for round in 0..320 {
        let range = if round < 64 { small } else { 1000 };
        let coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=range)).collect();
        if let Some(m) = try_coeffs(&coeffs) {
            return Some(m);
        }
    }
    None
}

/// Input to [`twisted_commutant`].
#[derive(Clone, Debug)]
pub struct TwistedCommutantProblem {
    /// Spanning set of the untwisted algebra.
    pub block_span: Vec<CycMatrix>,
    pub comp_gens: Vec<CycMatrix>,
    pub scalars: Vec<CycNum>,
}

#[derive(Clone, Debug)]
pub struct TwistedCommutant {
    pub basis: Vec<CycMatrix>,
    pub has_invertible: bool,
    pub witness: Option<CycMatrix>,
}

/// Solves `X b = b X` for `b` in the span and `X h_i = c_i h_i X`. An
/// invertible solution exists iff the twisted space has the same dimension
/// as the untwisted one.
pub fn twisted_commutant(p: &TwistedCommutantProblem) -> Result<TwistedCommutant, VerifyError> {
    let n = p
        .block_span
        .first()
        .or(p.comp_gens.first())
        .map(CycMatrix::rows)
        .ok_or_else(|| VerifyError::Malformed("empty problem".into()))?;
    if p.scalars.len() != p.comp_gens.len() {
        return Err(VerifyError::Malformed(
            "one scalar per generator is required".into(),
        ));
    }
    if p
        .block_span
        .iter()
        .chain(&p.comp_gens)
        .any(|m| m.rows() != n || m.cols() != n)
    {
        return Err(VerifyError::Malformed("matrices of different sizes".into()));
    }
    let span: Vec<SparseVec> = p.block_span.iter().map(CycMatrix::to_sparse_vec).collect();
    let base = commutant_of_span(n, &span);
    let engine = TwistEngine::new(n, base, &p.comp_gens);
    let twisted = engine.solve_matrices(&p.scalars);
    let ones: Vec<CycNum> = p.scalars.iter().map(|c| CycNum::from_int_in(c.field(), 1)).collect();
    let untwisted_dim = if p.scalars.iter().all(CycNum::is_one) {
        twisted.len()
    } else {
        engine.solve(&ones).len()
    };
    let witness = if p.scalars.iter().all(CycNum::is_one) {
        Some(CycMatrix::identity_in(n, Field::get(1).expect("Q")))
    } else if !twisted.is_empty() && twisted.len() == untwisted_dim {
        witness_or_certificate(&engine, &p.scalars, &twisted)?
            .map(|w| w.normalize_first_nonzero())
            .transpose()?
    } else {
        None
    };
    Ok(TwistedCommutant {
        basis: twisted.iter().map(|v| sparse_to_matrix(n, v)).collect(),
        has_invertible: witness.is_some(),
        witness,
    })
}

/// `I ∈ span(V·W)` for the spaces of `X h = c h X` and `Y h = c⁻¹ h Y`.
/// Any invertible `w ∈ V` has `w⁻¹ ∈ W`, so failure rules out an invertible
/// element of `V`.
fn identity_in_products(engine: &TwistEngine, c: &[CycNum], v: &[SparseVec]) -> Result<bool, VerifyError> {
    let n = engine.n();
    let inv: Vec<CycNum> = c.iter().map(CycNum::inv).collect::<Result<_, _>>()?;
    let w = engine.solve_matrices(&inv);
    if w.len() != v.len() {
        return Ok(false);
    }
    let identity: SparseVec = CycMatrix::identity(n, 1)?.to_sparse_vec();
    let mut ech = Echelon::new(n * n, Field::get(1)?);
    let ws: Vec<CycMatrix> = w.iter().map(|y| sparse_to_matrix(n, y)).collect();
    for x in v {
        let x = sparse_to_matrix(n, x);
        for y in &ws {
            ech.insert(x.mul(y)?.to_sparse_vec());
            if ech.contains(&identity) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The sampled search, backed by the exact obstruction when it finds
/// nothing.
fn witness_or_certificate(
    engine: &TwistEngine,
    c: &[CycNum],
    sol: &[SparseVec],
) -> Result<Option<CycMatrix>, VerifyError> {
    if let Some(w) = find_invertible(engine.n(), sol) {
        return Ok(Some(w));
    }
    if identity_in_products(engine, c, sol)? {
        return Err(VerifyError::WitnessUndecided(
            c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        ));
    }
    Ok(None)
}

/// Dimension-checked wrapper used by the centralizer: the space of
/// solutions together with an invertible element when one exists.
pub(crate) fn twisted_space(
    engine: &TwistEngine,
    c: &[CycNum],
    untwisted_dim: usize,
) -> Result<Option<(AlgebraSpace, CycMatrix)>, VerifyError> {
    let sol = engine.solve_matrices(c);
    if sol.len() != untwisted_dim || sol.is_empty() {
        return Ok(None);
    }
    let Some(w) = witness_or_certificate(engine, c, &sol)? else {
        return Ok(None);
    };
    let w = w.normalize_first_nonzero()?;
    Ok(Some((AlgebraSpace::from_sparse(engine.n(), sol), w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinAbGroup;
    use crate::matrep::character_matrix;

    #[test]
    fn commutant_of_gl2_tensor_identity() {
        // matrix units of GL(2) ⊗ I₂ in GL(4)
        let mut span = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                let mut e = CycMatrix::zeros(2, 2, 1).unwrap();
                e.set(a, b, CycNum::one(1).unwrap()).unwrap();
                span.push(e.kron(&CycMatrix::identity(2, 1).unwrap()).unwrap());
            }
        }
        let p = TwistedCommutantProblem {
            block_span: span,
            comp_gens: vec![],
            scalars: vec![],
        };
        let t = twisted_commutant(&p).unwrap();
        assert_eq!(t.basis.len(), 4);
        assert!(t.has_invertible);
        assert!(t.witness.unwrap().is_identity());
    }

    #[test]
    fn anticommuting_with_sigma() {
        let g = FinAbGroup::cyclic(2);
        let sigma = character_matrix(&g, &g.character(&[1]).unwrap()).unwrap();
        let p = TwistedCommutantProblem {
            block_span: vec![CycMatrix::identity(2, 1).unwrap()],
            comp_gens: vec![sigma],
            scalars: vec![CycNum::from_int(1, -1).unwrap()],
        };
        let t = twisted_commutant(&p).unwrap();
        assert_eq!(t.basis.len(), 2);
        for b in &t.basis {
            assert!(b.get(0, 0).is_zero() && b.get(1, 1).is_zero());
        }
        assert_eq!(t.witness.unwrap(), CycMatrix::from_ints(2, 2, &[0, 1, 1, 0]));
    }

    #[test]
    fn scalar_outside_the_projective_order_gives_nothing() {
        let g = FinAbGroup::cyclic(2);
        let sigma = character_matrix(&g, &g.character(&[1]).unwrap()).unwrap();
        let p = TwistedCommutantProblem {
            block_span: vec![CycMatrix::identity(2, 1).unwrap()],
            comp_gens: vec![sigma],
            scalars: vec![CycNum::root_of_unity(3, 1).unwrap()],
        };
        let t = twisted_commutant(&p).unwrap();
        assert!(t.basis.is_empty());
        assert!(!t.has_invertible);
    }

    #[test]
    fn product_obstruction_sees_the_swap() {
        let g = FinAbGroup::cyclic(2);
        let sigma = character_matrix(&g, &g.character(&[1]).unwrap()).unwrap();
        let span = vec![CycMatrix::identity(2, 1).unwrap().to_sparse_vec()];
        let engine = TwistEngine::new(2, commutant_of_span(2, &span), &[sigma]);
        let c = vec![CycNum::from_int(1, -1).unwrap()];
        let v = engine.solve_matrices(&c);
        assert!(identity_in_products(&engine, &c, &v).unwrap());
        // a strict subspace of the twisted space misses the identity
        assert!(!identity_in_products(&engine, &c, &v[..1]).unwrap());
    }
}
