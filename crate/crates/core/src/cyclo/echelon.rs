//! Incremental reduced row echelon form over ℚ(ζ_m) with sparse rows.
//!
//! Pivots are scaled to 1 and eliminated from every other row, so reducing
//! a new vector is a single pass over the pivot columns it touches. Pivot
//! choice prefers cheap entries (rationals and single roots of unity), which
//! keeps coefficients small on the sparse systems produced by monomial
//! matrices.

use super::field::Field;
use super::{common_conductor, CycNum};

/// `(column, value)` pairs sorted by column, no explicit zeros.
pub type SparseVec = Vec<(usize, CycNum)>;

#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    field: &'static Field,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize, field: &'static Field) -> Echelon {
        Echelon {
            ncols,
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn adopt(&mut self, v: SparseVec) -> SparseVec {
        let mut m = self.field.conductor();
        for (_, x) in &v {
            if !std::ptr::eq(x.field(), self.field) {
                m = common_conductor(m, x.conductor()).expect("conductor lift failed");
            }
        }
        if m != self.field.conductor() {
            let f = Field::get(m).expect("conductor lift failed");
            self.field = f;
            for row in &mut self.rows {
                for (_, x) in row.iter_mut() {
                    *x = x.lift_to(f);
                }
            }
        }
        let f = self.field;
        v.into_iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.lift_to(f)))
            .collect()
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, &CycNum)> = v
            .iter()
            .filter_map(|(j, x)| self.row_of_col[*j].map(|r| (r, x)))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        let mut dense: Vec<Option<CycNum>> = vec![None; self.ncols];
        for (j, x) in v {
            dense[*j] = Some(x.clone());
        }
        for (r, c) in hits {
            for (j, y) in &self.rows[r] {
                let t = c * y;
                dense[*j] = Some(match dense[*j].take() {
                    Some(cur) => &cur - &t,
                    None => t.neg(),
                });
            }
        }
        dense
            .into_iter()
            .enumerate()
            .filter_map(|(j, x)| x.filter(|x| !x.is_zero()).map(|x| (j, x)))
            .collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let own = self.field.conductor();
        if v.iter().all(|(_, x)| own % x.conductor() == 0) {
            let lifted: SparseVec = v
                .iter()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (*j, x.lift_to(self.field)))
                .collect();
            return self.reduce(&lifted).is_empty();
        }
        let mut probe = self.clone();
        let v = probe.adopt(v.clone());
        probe.reduce(&v).is_empty()
    }

    /// Adds `v` to the row space; returns its pivot column if it was
    /// independent of the rows already present.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let v = self.adopt(v);
        let mut r = self.reduce(&v);
        if r.is_empty() {
            return None;
        }
        let (pos, _) = r
            .iter()
            .enumerate()
            .min_by_key(|(_, (j, x))| (x.weight(), *j))
            .expect("nonempty");
        let p = r[pos].0;
        let inv = r[pos].1.inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for (_, x) in r.iter_mut() {
                *x = &*x * &inv;
            }
        }
        for row in &mut self.rows {
            let Some(c) = row.iter().find(|(j, _)| *j == p).map(|(_, x)| x.clone()) else {
                continue;
            };
            *row = axpy(row, &c.neg(), &r);
        }
        self.row_of_col[p] = Some(self.rows.len());
        self.rows.push(r);
        self.pivots.push(p);
        Some(p)
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let one = CycNum::from_int_in(self.field, 1);
        (0..self.ncols)
            .filter(|j| self.row_of_col[*j].is_none())
            .map(|f| {
                let mut v: SparseVec = vec![(f, one.clone())];
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if let Some((_, x)) = row.iter().find(|(j, _)| *j == f) {
                        v.push((p, x.neg()));
                    }
                }
                v.sort_by_key(|(j, _)| *j);
                v
            })
            .collect()
    }
}

/// `a + c·b` on sparse vectors.
pub(crate) fn axpy(a: &SparseVec, c: &CycNum, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let ja = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let jb = b.get(k).map(|e| e.0).unwrap_or(usize::MAX);
        if ja < jb {
            out.push(a[i].clone());
            i += 1;
        } else if jb < ja {
            out.push((jb, c * &b[k].1));
            k += 1;
        } else {
            let s = &a[i].1 + &(c * &b[k].1);
            if !s.is_zero() {
                out.push((ja, s));
            }
            i += 1;
            k += 1;
        }
    }
    out
}
