//! Translation and character operators, tensor-slot embeddings, commutator
//! scalars and projective equality.

use std::sync::atomic::{AtomicU64, Ordering};

use super::{MatrepError, TensorShape};
use crate::abelian::{Character, FinAbGroup, GroupElement};
use crate::cyclo::{CycMatrix, CycNum, Field, RootOfUnity};

static SCALARS_COMPUTED: AtomicU64 = AtomicU64::new(0);
static SCALARS_FAILED: AtomicU64 = AtomicU64::new(0);

/// Process-wide tally of commutator scalars and how many failed the
/// `cⁿ = 1` check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScalarStats {
    pub computed: u64,
    pub failed_root_check: u64,
}

pub fn scalar_stats() -> ScalarStats {
    ScalarStats {
        computed: SCALARS_COMPUTED.load(Ordering::Relaxed),
        failed_root_check: SCALARS_FAILED.load(Ordering::Relaxed),
    }
}

/// Smallest conductor whose field holds every value of a character of a
/// group with this exponent (ℚ(ζ_2k) = ℚ(ζ_k) for odd k).
pub(crate) fn character_conductor(exponent: u64) -> u32 {
    let m = if exponent % 4 == 2 { exponent / 2 } else { exponent };
    u32::try_from(m.max(1)).expect("group exponent fits in u32")
}

/// `r` as an element of `field`, which must contain it.
pub(crate) fn root_value(r: &RootOfUnity, field: &'static Field) -> CycNum {
    let m = field.conductor() as u64;
    let (o, e) = (r.order(), r.exp());
    if m % o == 0 {
        return CycNum::root_in(field, (e * (m / o)) as i64);
    }
    // m odd and o | 2m: ζ_2m = −ζ_m^{(m+1)/2}.
    assert!(m % 2 == 1 && (2 * m) % o == 0, "root {r} not in ℚ(ζ_{m})");
    let e2m = e * (2 * m / o);
    let v = CycNum::root_in(field, (e2m * (m + 1) / 2 % m) as i64);
    if e2m % 2 == 1 {
        v.neg()
    } else {
        v
    }
}

/// Permutation matrix of `f ↦ f(· − x)`: the basis vector at `x_j` goes to
/// the basis vector at `x_j + x`.
pub fn translation_matrix(group: &FinAbGroup, x: &GroupElement) -> Result<CycMatrix, MatrepError> {
    if x.group() != group {
        return Err(MatrepError::GroupMismatch);
    }
    Ok(translation_by(group.factors(), x.coords()))
}

pub(crate) fn translation_by(orders: &[u64], x: &[u64]) -> CycMatrix {
    use crate::abelian::coords;
    let n: u64 = orders.iter().product();
    let one = Field::get(1).expect("rational field");
    let mut m = CycMatrix::zeros_in(n as usize, n as usize, one);
    for (j, y) in coords::elements(orders).iter().enumerate() {
        let i = coords::index_of(orders, &coords::add(orders, y, x));
        m.set(i, j, CycNum::from_int_in(one, 1)).expect("same field");
    }
    m
}

/// `diag(ξ(x₁), …, ξ(x_n))` in the lexicographic basis.
pub fn character_matrix(group: &FinAbGroup, xi: &Character) -> Result<CycMatrix, MatrepError> {
    if xi.group() != group {
        return Err(MatrepError::GroupMismatch);
    }
    Ok(character_by(group.factors(), xi.coords()))
}

pub(crate) fn character_by(orders: &[u64], xi: &[u64]) -> CycMatrix {
    use crate::abelian::coords;
    let exp = orders.iter().fold(1u64, |a, o| num_integer::lcm(a, *o));
    let field = Field::get(character_conductor(exp)).expect("small conductor");
    let n: u64 = orders.iter().product();
    let mut m = CycMatrix::zeros_in(n as usize, n as usize, field);
    for (j, y) in coords::elements(orders).iter().enumerate() {
        let v = root_value(&coords::dual_pairing(orders, xi, y), field);
        m.set(j, j, v).expect("same field");
    }
    m
}

/// `I ⊗ … ⊗ M ⊗ … ⊗ I` with `M` in the slot named `label`.
pub fn embed_factor(m: &CycMatrix, shape: &TensorShape, label: &str) -> Result<CycMatrix, MatrepError> {
    let pos = shape
        .position(label)
        .ok_or_else(|| MatrepError::UnknownLabel(label.to_string()))?;
    let d = shape.factors()[pos].dim;
    if !m.is_square() || m.rows() != d {
        return Err(MatrepError::DimensionMismatch(format!(
            "slot {label:?} has dimension {d} but the matrix is {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let left: usize = shape.factors()[..pos].iter().map(|f| f.dim).product();
    let right: usize = shape.factors()[pos + 1..].iter().map(|f| f.dim).product();
    let one = Field::get(1)?;
    let mut out = m.clone();
    if left > 1 {
        out = CycMatrix::identity_in(left, one).kron(&out)?;
    }
    if right > 1 {
        out = out.kron(&CycMatrix::identity_in(right, one))?;
    }
    Ok(out)
}

/// The scalar `c` with `g h g⁻¹ h⁻¹ = c·I`, equivalently `g h = c·h g`.
/// `c` is checked to satisfy `cⁿ = 1`.
pub fn commutator_scalar(g: &CycMatrix, h: &CycMatrix) -> Result<CycNum, MatrepError> {
    let (c, _) = commutator_parts(g, h)?;
    Ok(c)
}

/// [`commutator_scalar`] as a root of unity.
pub fn commutator_root(g: &CycMatrix, h: &CycMatrix) -> Result<RootOfUnity, MatrepError> {
    let (_, r) = commutator_parts(g, h)?;
    Ok(r)
}

fn commutator_parts(g: &CycMatrix, h: &CycMatrix) -> Result<(CycNum, RootOfUnity), MatrepError> {
    let n = g.rows();
    if !g.is_square() || !h.is_square() || h.rows() != n {
        return Err(MatrepError::DimensionMismatch(format!(
            "{}x{} and {}x{}",
            g.rows(),
            g.cols(),
            h.rows(),
            h.cols()
        )));
    }
    let gh = g.mul(h)?;
    let hg = h.mul(g)?;
    let c = gh.ratio_to(&hg).ok_or(MatrepError::NotProjectivelyCommuting)?;
    SCALARS_COMPUTED.fetch_add(1, Ordering::Relaxed);
    match c.as_root_of_unity() {
        Some(r) if n as u64 % r.order() == 0 => Ok((c, r)),
        _ => {
            SCALARS_FAILED.fetch_add(1, Ordering::Relaxed);
            Err(MatrepError::ScalarOrder {
                scalar: c.to_string(),
                dim: n,
            })
        }
    }
}

/// True iff `g = c·h` for some nonzero scalar `c`.
pub fn projective_equal(g: &CycMatrix, h: &CycMatrix) -> bool {
    match (g.normalize_first_nonzero(), h.normalize_first_nonzero()) {
        (Ok(a), Ok(b)) => !a.is_zero() && a == b,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    #[test]
    fn translation_examples() {
        let g = z(2);
        let t = translation_matrix(&g, &g.element(&[1]).unwrap()).unwrap();
        assert_eq!(t, CycMatrix::from_ints(2, 2, &[0, 1, 1, 0]));
        assert!(translation_matrix(&g, &g.identity()).unwrap().is_identity());
        let g3 = z(3);
        let t = translation_matrix(&g3, &g3.element(&[1]).unwrap()).unwrap();
        assert!(t.pow(3).unwrap().is_identity());
        assert!(!t.is_identity());
        assert!(matches!(
            translation_matrix(&g, &g3.identity()),
            Err(MatrepError::GroupMismatch)
        ));
    }

    #[test]
    fn character_examples() {
        let g = z(2);
        let s = character_matrix(&g, &g.character(&[1]).unwrap()).unwrap();
        assert_eq!(s, CycMatrix::from_ints(2, 2, &[1, 0, 0, -1]));
        let g4 = z(4);
        let s = character_matrix(&g4, &g4.character(&[1]).unwrap()).unwrap();
        for (k, e) in [0, 1, 2, 3].iter().enumerate() {
            assert_eq!(*s.get(k, k), CycNum::root_of_unity(4, *e).unwrap());
        }
    }

    #[test]
    fn odd_conductor_roots() {
        let f = Field::get(3).unwrap();
        for e in 0..6 {
            let r = RootOfUnity::new(6, e);
            assert_eq!(root_value(&r, f), CycNum::root_of_unity(6, e).unwrap());
        }
    }

    #[test]
    fn embedding_examples() {
        let shape = TensorShape::new([("A", 2), ("B", 2)]).unwrap();
        let swap = CycMatrix::from_ints(2, 2, &[0, 1, 1, 0]);
        let e = embed_factor(&swap, &shape, "A").unwrap();
        assert_eq!(e, swap.kron(&CycMatrix::identity(2, 1).unwrap()).unwrap());
        assert!(matches!(
            embed_factor(&swap, &shape, "C"),
            Err(MatrepError::UnknownLabel(_))
        ));
        let three = CycMatrix::identity(3, 1).unwrap();
        assert!(matches!(
            embed_factor(&three, &shape, "A"),
            Err(MatrepError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn commutator_examples() {
        let g = z(2);
        let s = character_matrix(&g, &g.character(&[1]).unwrap()).unwrap();
        let t = translation_matrix(&g, &g.element(&[1]).unwrap()).unwrap();
        assert_eq!(commutator_scalar(&s, &t).unwrap(), CycNum::from_int(1, -1).unwrap());
        let id = CycMatrix::identity(2, 1).unwrap();
        assert!(commutator_scalar(&id, &t).unwrap().is_one());
        let d = CycMatrix::from_ints(2, 2, &[1, 0, 0, 2]);
        let u = CycMatrix::from_ints(2, 2, &[1, 1, 0, 1]);
        assert!(matches!(
            commutator_scalar(&d, &u),
            Err(MatrepError::NotProjectivelyCommuting)
        ));
    }

    #[test]
    fn projective_equality_examples() {
        let g = CycMatrix::from_ints(2, 2, &[1, 2, 3, 4]);
        assert!(projective_equal(&g, &g));
        let w = g.scale(&CycNum::root_of_unity(3, 1).unwrap()).unwrap();
        assert!(projective_equal(&w, &g));
        let d = CycMatrix::from_ints(2, 2, &[1, 0, 0, -1]);
        let s = CycMatrix::from_ints(2, 2, &[0, 1, 1, 0]);
        assert!(!projective_equal(&d, &s));
    }
}
