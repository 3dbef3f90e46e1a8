//! Dense matrices over ℚ(ζ_m).

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::echelon::{Echelon, SparseVec};
use super::field::Field;
use super::num::{coeff_strings, parse_coeffs};
use super::{common_conductor, CycNum, CycloError};

/// Row-major matrix whose entries all live in one field.
#[derive(Clone)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    field: &'static Field,
    entries: Vec<CycNum>,
}

/// Exact basis of the right null space, as column vectors.
pub fn mat_kernel(a: &CycMatrix) -> Vec<CycMatrix> {
    a.kernel()
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize, m: u32) -> Result<CycMatrix, CycloError> {
        Ok(Self::zeros_in(rows, cols, Field::get(m)?))
    }

    pub fn identity(n: usize, m: u32) -> Result<CycMatrix, CycloError> {
        Ok(Self::identity_in(n, Field::get(m)?))
    }

    pub fn zeros_in(rows: usize, cols: usize, field: &'static Field) -> CycMatrix {
        CycMatrix {
            rows,
            cols,
            field,
            entries: vec![CycNum::zero_in(field); rows * cols],
        }
    }

    pub fn identity_in(n: usize, field: &'static Field) -> CycMatrix {
        let mut m = Self::zeros_in(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = CycNum::from_int_in(field, 1);
        }
        m
    }

    /// Builds a matrix from row-major entries, lifting everything to the lcm
    /// of their conductors.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<CycNum>,
    ) -> Result<CycMatrix, CycloError> {
        if entries.len() != rows * cols {
            return Err(CycloError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut m = 1;
        for e in &entries {
            m = common_conductor(m, e.conductor())?;
        }
        let field = Field::get(m)?;
        let entries = entries.iter().map(|e| e.lift_to(field)).collect();
        Ok(CycMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_ints(rows: usize, cols: usize, vals: &[i64]) -> CycMatrix {
        assert_eq!(vals.len(), rows * cols);
        let field = Field::get(1).expect("Q is always available");
        CycMatrix {
            rows,
            cols,
            field,
            entries: vals.iter().map(|v| CycNum::from_int_in(field, *v)).collect(),
        }
    }

    pub fn diagonal(diag: Vec<CycNum>) -> Result<CycMatrix, CycloError> {
        let n = diag.len();
        let mut m = 1;
        for e in &diag {
            m = common_conductor(m, e.conductor())?;
        }
        let field = Field::get(m)?;
        let mut out = Self::zeros_in(n, n, field);
        for (i, d) in diag.into_iter().enumerate() {
            out.entries[i * n + i] = d.lift_to(field);
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) -> Result<(), CycloError> {
        if std::ptr::eq(v.field(), self.field) {
            self.entries[i * self.cols + j] = v;
            return Ok(());
        }
        let m = common_conductor(self.conductor(), v.conductor())?;
        if m != self.conductor() {
            *self = self.lift(m)?;
        }
        self.entries[i * self.cols + j] = v.lift_to(self.field);
        Ok(())
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    pub fn lift(&self, m: u32) -> Result<CycMatrix, CycloError> {
        if m == self.conductor() {
            return Ok(self.clone());
        }
        if m % self.conductor() != 0 {
            return Err(CycloError::InvalidConductor(m as u64));
        }
        Ok(self.lift_to(Field::get(m)?))
    }

    pub(crate) fn lift_to(&self, field: &'static Field) -> CycMatrix {
        if std::ptr::eq(field, self.field) {
            return self.clone();
        }
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            field,
            entries: self.entries.iter().map(|e| e.lift_to(field)).collect(),
        }
    }

    fn aligned(&self, other: &CycMatrix) -> Result<(CycMatrix, CycMatrix), CycloError> {
        if std::ptr::eq(self.field, other.field) {
            return Ok((self.clone(), other.clone()));
        }
        let f = Field::get(common_conductor(self.conductor(), other.conductor())?)?;
        Ok((self.lift_to(f), other.lift_to(f)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycNum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &CycMatrix) -> Result<CycMatrix, CycloError> {
        if self.cols != other.rows {
            return Err(CycloError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !std::ptr::eq(self.field, other.field) {
            let (a, b) = self.aligned(other)?;
            return a.mul(&b);
        }
        let n = other.cols;
        let row_nz: Vec<Vec<usize>> = (0..other.rows)
            .map(|k| (0..n).filter(|&j| !other.get(k, j).is_zero()).collect())
            .collect();
        let mut out = Self::zeros_in(self.rows, n, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &row_nz[k] {
                    let t = a * other.get(k, j);
                    let slot = &mut out.entries[i * n + j];
                    *slot = if slot.is_zero() { t } else { &*slot + &t };
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CycMatrix) -> Result<CycMatrix, CycloError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CycMatrix) -> Result<CycMatrix, CycloError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &CycMatrix,
        f: impl Fn(&CycNum, &CycNum) -> CycNum,
    ) -> Result<CycMatrix, CycloError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CycloError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (a, b) = self.aligned(other)?;
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| f(x, y)).collect();
        Ok(CycMatrix { entries, ..a })
    }

    pub fn scale(&self, c: &CycNum) -> Result<CycMatrix, CycloError> {
        let m = common_conductor(self.conductor(), c.conductor())?;
        let f = Field::get(m)?;
        let c = c.lift_to(f);
        let a = self.lift_to(f);
        let entries = a.entries.iter().map(|x| x * &c).collect();
        Ok(CycMatrix { entries, ..a })
    }

    pub fn transpose(&self) -> CycMatrix {
        let mut out = Self::zeros_in(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Kronecker product; indices of `self` vary slowest.
    pub fn kron(&self, other: &CycMatrix) -> Result<CycMatrix, CycloError> {
        let (a, b) = self.aligned(other)?;
        let rows = a.rows * b.rows;
        let cols = a.cols * b.cols;
        let mut out = Self::zeros_in(rows, cols, a.field);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        let y = b.get(k, l);
                        if y.is_zero() {
                            continue;
                        }
                        out.entries[(i * b.rows + k) * cols + j * b.cols + l] =
                            if x.is_one() { y.clone() } else { x * y };
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diag(blocks: &[CycMatrix]) -> Result<CycMatrix, CycloError> {
        let mut m = 1;
        for b in blocks {
            m = common_conductor(m, b.conductor())?;
        }
        let f = Field::get(m)?;
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros_in(rows, cols, f);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            let b = b.lift_to(f);
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.entries[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Result<CycMatrix, CycloError> {
        self.require_square()?;
        let mut acc = Self::identity_in(self.rows, self.field);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    fn require_square(&self) -> Result<(), CycloError> {
        if !self.is_square() {
            return Err(CycloError::DimensionMismatch(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<CycNum, CycloError> {
        self.require_square()?;
        let n = self.rows;
        let f = self.field;
        if n == 0 {
            return Ok(CycNum::from_int_in(f, 1));
        }
        let mut a: Vec<Vec<CycNum>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut prev = CycNum::from_int_in(f, 1);
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n)
                    .filter(|&i| !a[i][k].is_zero())
                    .min_by_key(|&i| a[i][k].weight())
                else {
                    return Ok(CycNum::zero_in(f));
                };
                a.swap(k, p);
                negate = !negate;
            }
            let prev_inv = prev.inv()?;
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = if prev.is_one() { t } else { &t * &prev_inv };
                }
                a[i][k] = CycNum::zero_in(f);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<CycMatrix, CycloError> {
        self.require_square()?;
        let n = self.rows;
        let f = self.field;
        let mut a: Vec<Vec<CycNum>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut inv: Vec<Vec<CycNum>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| CycNum::from_int_in(f, (i == j) as i64))
                    .collect()
            })
            .collect();
        for k in 0..n {
            let p = (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| a[i][k].weight())
                .ok_or(CycloError::SingularMatrix)?;
            a.swap(k, p);
            inv.swap(k, p);
            let pinv = a[k][k].inv()?;
            if !pinv.is_one() {
                for j in 0..n {
                    if !a[k][j].is_zero() {
                        a[k][j] = &a[k][j] * &pinv;
                    }
                    if !inv[k][j].is_zero() {
                        inv[k][j] = &inv[k][j] * &pinv;
                    }
                }
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let c = a[i][k].clone();
                for j in 0..n {
                    if !a[k][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&c * &a[k][j]);
                    }
                    if !inv[k][j].is_zero() {
                        inv[i][j] = &inv[i][j] - &(&c * &inv[k][j]);
                    }
                }
            }
        }
        Ok(CycMatrix {
            rows: n,
            cols: n,
            field: f,
            entries: inv.into_iter().flatten().collect(),
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.det().map(|d| !d.is_zero()).unwrap_or(false)
    }

    /// Rows as sparse vectors, for elimination.
    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !self.get(i, j).is_zero())
                    .map(|j| (j, self.get(i, j).clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols, self.field);
        for r in self.sparse_rows() {
            ech.insert(r);
        }
        ech.rank()
    }

    /// Basis of the right null space as column vectors.
    pub fn kernel(&self) -> Vec<CycMatrix> {
        let mut ech = Echelon::new(self.cols, self.field);
        for r in self.sparse_rows() {
            ech.insert(r);
        }
        ech.kernel_basis()
            .into_iter()
            .map(|v| {
                let mut col = Self::zeros_in(self.cols, 1, self.field);
                for (j, x) in v {
                    col.entries[j] = x;
                }
                col
            })
            .collect()
    }

    /// Entries flattened row-major as a sparse vector.
    pub fn to_sparse_vec(&self) -> SparseVec {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| (i, e.clone()))
            .collect()
    }

    pub fn from_sparse_vec(rows: usize, cols: usize, field: &'static Field, v: &SparseVec) -> CycMatrix {
        let mut out = Self::zeros_in(rows, cols, field);
        for (i, x) in v {
            out.entries[*i] = x.lift_to(field);
        }
        out
    }

    /// Index and value of the first nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, &CycNum)> {
        self.entries.iter().enumerate().find(|(_, e)| !e.is_zero())
    }

    /// `Some(c)` if this matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<CycNum> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let c = if n == 0 {
            CycNum::from_int_in(self.field, 1)
        } else {
            self.get(0, 0).clone()
        };
        for i in 0..n {
            for j in 0..n {
                let e = self.get(i, j);
                let ok = if i == j { *e == c } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// `Some(c)` with `self = c · other`, if such a scalar exists.
    pub fn ratio_to(&self, other: &CycMatrix) -> Option<CycNum> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let (a, b) = self.aligned(other).ok()?;
        let (k, bk) = b.first_nonzero()?;
        let c = &a.entries[k] * &bk.inv().ok()?;
        if c.is_zero() {
            return None;
        }
        for (x, y) in a.entries.iter().zip(&b.entries) {
            if y.is_zero() {
                if !x.is_zero() {
                    return None;
                }
            } else if *x != y * &c {
                return None;
            }
        }
        Some(c)
    }

    /// Rescales so the first nonzero entry is 1.
    pub fn normalize_first_nonzero(&self) -> Result<CycMatrix, CycloError> {
        match self.first_nonzero() {
            None => Ok(self.clone()),
            Some((_, e)) if e.is_one() => Ok(self.clone()),
            Some((_, e)) => self.scale(&e.inv()?),
        }
    }

    /// Smallest conductor that holds every entry.
    pub fn minimal_conductor(&self) -> u32 {
        let m = self.conductor();
        let mut best = m;
        for d in (1..m).filter(|d| m % d == 0) {
            if d >= best {
                break;
            }
            if self.descends_to(d) {
                best = d;
            }
        }
        best
    }

    fn descends_to(&self, d: u32) -> bool {
        let Ok(f) = Field::get(d) else {
            return false;
        };
        // x lies in ℚ(ζ_d) iff it is fixed by every k ≡ 1 mod d.
        let m = self.conductor() as i64;
        let fixers: Vec<i64> = (1..m)
            .filter(|k| num_integer::gcd(*k, m) == 1 && k % d as i64 == 1 % d as i64)
            .collect();
        let _ = f;
        self.entries
            .iter()
            .all(|e| e.is_rational() || fixers.iter().all(|&k| e.galois(k) == *e))
    }

    /// The same matrix over the smallest conductor that holds its entries.
    pub fn descend(&self) -> Result<CycMatrix, CycloError> {
        let d = self.minimal_conductor();
        if d == self.conductor() {
            return Ok(self.clone());
        }
        let f = Field::get(d)?;
        let entries = self
            .entries
            .iter()
            .map(|e| descend_num(e, f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            field: f,
            entries,
        })
    }
}

/// Rewrites `x` (known to lie in the subfield `f`) over `f` by solving for
/// its coordinates in the lifted basis of `f`.
fn descend_num(x: &CycNum, f: &'static Field) -> Result<CycNum, CycloError> {
    if x.is_rational() {
        let c = &x.coeffs()[0];
        let mut coeffs = vec![(super::Int::ZERO, super::Int::ONE); f.degree()];
        coeffs[0] = c.clone();
        return CycNum::from_rational_coeffs(f.conductor(), &coeffs);
    }
    let big = x.field();
    let basis: Vec<CycNum> = (0..f.degree())
        .map(|i| CycNum::root_in(f, i as i64).lift_to(big))
        .collect();
    // Solve Σ a_i basis_i = x over ℚ.
    let deg = big.degree();
    let one = Field::get(1)?;
    let mut ech = Echelon::new(f.degree() + 1, one);
    for k in 0..deg {
        let mut row: SparseVec = Vec::new();
        for (i, b) in basis.iter().enumerate() {
            let c = &b.coeffs()[k];
            if !c.0.is_zero() {
                row.push((i, rational(one, c)));
            }
        }
        let c = &x.coeffs()[k];
        if !c.0.is_zero() {
            row.push((f.degree(), rational(one, c).neg()));
        }
        ech.insert(row);
    }
    let ker = ech.kernel_basis();
    let v = ker
        .iter()
        .find(|v| v.iter().any(|(j, _)| *j == f.degree()))
        .ok_or_else(|| CycloError::Malformed("value does not lie in the subfield".into()))?;
    let last = v.iter().find(|(j, _)| *j == f.degree()).unwrap().1.clone();
    let scale = last.inv()?;
    let mut out = CycNum::zero_in(f);
    for (j, a) in v {
        if *j < f.degree() {
            let coef = a * &scale;
            let c = coef.coeffs()[0].clone();
            let term = &CycNum::root_in(f, *j as i64)
                * &CycNum::from_rational_coeffs(1, &[c])?.lift_to(f);
            out = &out + &term;
        }
    }
    Ok(out)
}

fn rational(f: &'static Field, c: &(super::Int, super::Int)) -> CycNum {
    CycNum::from_rational_coeffs(f.conductor(), &[c.clone()]).expect("rational in Q")
}

impl PartialEq for CycMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for CycMatrix {}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix {}x{} (m={})", self.rows, self.cols, self.conductor())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<Vec<[String; 2]>>,
}

impl Serialize for CycMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor(),
            entries: self.entries.iter().map(coeff_strings).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        if r.entries.len() != r.rows * r.cols {
            return Err(D::Error::custom(format!(
                "expected {} entries, got {}",
                r.rows * r.cols,
                r.entries.len()
            )));
        }
        let field = Field::get(r.conductor).map_err(D::Error::custom)?;
        let entries = r
            .entries
            .iter()
            .map(|raw| {
                let c = parse_coeffs(raw)?;
                CycNum::from_rational_coeffs(r.conductor, &c)
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(CycMatrix {
            rows: r.rows,
            cols: r.cols,
            field,
            entries,
        })
    }
}
