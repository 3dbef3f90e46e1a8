//! Homomorphisms between products of cyclic groups, explicit isomorphisms
//! to invariant-factor form, automorphism groups and dual transport.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::coords;
use super::{AbelianError, FinAbGroup};

/// A homomorphism `ℤ/a₁ × … → ℤ/b₁ × …` given by the images of the
/// standard generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hom {
    pub src: Vec<u64>,
    pub dst: Vec<u64>,
    pub images: Vec<Vec<u64>>,
}

impl Hom {
    pub fn identity(orders: &[u64]) -> Hom {
        let images = (0..orders.len())
            .map(|i| {
                let mut v = vec![0; orders.len()];
                v[i] = 1 % orders[i];
                v
            })
            .collect();
        Hom {
            src: orders.to_vec(),
            dst: orders.to_vec(),
            images,
        }
    }

    /// Builds from images given as arbitrary integers, reducing them.
    pub fn from_images(src: &[u64], dst: &[u64], images: &[Vec<i64>]) -> Result<Hom, AbelianError> {
        if images.len() != src.len() || images.iter().any(|v| v.len() != dst.len()) {
            return Err(AbelianError::NotIsomorphism(
                "image list does not match the group shapes".into(),
            ));
        }
        Ok(Hom {
            src: src.to_vec(),
            dst: dst.to_vec(),
            images: images.iter().map(|v| coords::reduce(dst, v)).collect(),
        })
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dst.len()];
        for (xi, img) in x.iter().zip(&self.images) {
            if *xi == 0 {
                continue;
            }
            out = coords::add(&self.dst, &out, &coords::scale(&self.dst, img, *xi));
        }
        out
    }

    /// Checks `a_j · image_j = 0` for every generator.
    pub fn is_well_defined(&self) -> bool {
        self.images
            .iter()
            .zip(&self.src)
            .all(|(img, a)| coords::is_zero(&coords::scale(&self.dst, img, *a)))
    }

    pub fn is_isomorphism(&self) -> bool {
        let n_src: u64 = self.src.iter().product();
        let n_dst: u64 = self.dst.iter().product();
        if !self.is_well_defined() || n_src != n_dst {
            return false;
        }
        coords::span(&self.dst, &self.images).len() as u64 == n_dst
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Hom) -> Hom {
        assert_eq!(other.dst, self.src, "composition shape mismatch");
        Hom {
            src: other.src.clone(),
            dst: self.dst.clone(),
            images: other.images.iter().map(|v| self.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Hom, AbelianError> {
        if !self.is_isomorphism() {
            return Err(AbelianError::NotIsomorphism("map is not bijective".into()));
        }
        let mut back: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
        for x in coords::elements(&self.src) {
            back.insert(self.apply(&x), x);
        }
        let images = (0..self.dst.len())
            .map(|j| {
                let mut e = vec![0; self.dst.len()];
                e[j] = 1 % self.dst[j];
                back[&e].clone()
            })
            .collect();
        Ok(Hom {
            src: self.dst.clone(),
            dst: self.src.clone(),
            images,
        })
    }
}

/// Canonical form of a product of cyclic groups with explicit maps both
/// ways.
#[derive(Clone, Debug)]
pub struct CanonicalIso {
    pub group: FinAbGroup,
    /// Source coordinates → invariant-factor coordinates.
    pub to_canonical: Hom,
    pub from_canonical: Hom,
}

/// Routes through the primary decomposition: each cyclic factor splits by
/// CRT into prime-power parts, the parts are stacked per prime, and slot
/// `i` of the canonical form is the CRT merge of the `i`-th parts.
pub fn canonical_iso(orders: &[u64]) -> CanonicalIso {
    let src: Vec<u64> = orders.to_vec();
    // (prime, [(exponent, source index)])
    let mut per_prime: Vec<(u64, Vec<(u32, usize)>)> = Vec::new();
    for (j, &a) in orders.iter().enumerate() {
        for (p, e) in coords::factorize(a) {
            match per_prime.iter_mut().find(|(q, _)| *q == p) {
                Some((_, v)) => v.push((e, j)),
                None => per_prime.push((p, vec![(e, j)])),
            }
        }
    }
    per_prime.sort_by_key(|(p, _)| *p);
    for (_, v) in &mut per_prime {
        v.sort_by_key(|(e, _)| *e);
    }
    let r = per_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    // slots[i] = list of (p, e, source index)
    let mut slots: Vec<Vec<(u64, u32, usize)>> = vec![Vec::new(); r];
    for (p, v) in &per_prime {
        let pad = r - v.len();
        for (k, (e, j)) in v.iter().enumerate() {
            slots[pad + k].push((*p, *e, *j));
        }
    }
    let factors: Vec<u64> = slots
        .iter()
        .map(|s| s.iter().map(|(p, e, _)| p.pow(*e)).product())
        .collect();
    let mut to_images = vec![vec![0u64; r]; src.len()];
    let mut from_images = vec![vec![0u64; src.len()]; r];
    for (i, s) in slots.iter().enumerate() {
        for &(p, e, j) in s {
            let pe = p.pow(e);
            // 1 in the p-part of slot i, 0 in its other prime parts
            let v_slot = crt_unit(factors[i], pe);
            to_images[j][i] = (to_images[j][i] + v_slot) % factors[i];
            let v_src = crt_unit(src[j], pe);
            from_images[i][j] = (from_images[i][j] + v_src) % src[j];
        }
    }
    let group = FinAbGroup::new(factors.clone()).expect("canonical factors form a chain");
    CanonicalIso {
        group,
        to_canonical: Hom {
            src: src.clone(),
            dst: factors.clone(),
            images: to_images,
        },
        from_canonical: Hom {
            src: factors,
            dst: src,
            images: from_images,
        },
    }
}

/// The element of ℤ/n that is 1 mod `pe` and 0 mod `n / pe` (`pe` a prime
/// power dividing `n` exactly).
fn crt_unit(n: u64, pe: u64) -> u64 {
    let rest = n / pe;
    if rest == 1 {
        return 1 % n;
    }
    // rest · (rest⁻¹ mod pe)
    let inv = mod_inverse(rest % pe, pe).expect("coprime parts");
    (rest as u128 * inv as u128 % n as u128) as u64
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// A subgroup of a product of cyclic groups, identified with its canonical
/// form.
#[derive(Clone, Debug)]
pub struct SubgroupForm {
    pub group: FinAbGroup,
    /// Ambient coordinates of the images of the canonical generators.
    pub basis: Vec<Vec<u64>>,
    /// Ambient element → canonical coordinates.
    pub labels: HashMap<Vec<u64>, Vec<u64>>,
}

impl SubgroupForm {
    pub fn label(&self, x: &[u64]) -> Option<&Vec<u64>> {
        self.labels.get(x)
    }

    /// Ambient coordinates of the element with canonical coordinates `c`.
    pub fn element(&self, ambient: &[u64], c: &[u64]) -> Vec<u64> {
        let mut out = vec![0; ambient.len()];
        for (b, k) in self.basis.iter().zip(c) {
            out = coords::add(ambient, &out, &coords::scale(ambient, b, *k));
        }
        out
    }
}

/// Canonical form of the subgroup consisting of `elements` (which must be
/// closed under addition) inside `ℤ/o₁ × …`.
pub fn subgroup_form(ambient: &[u64], elements: &[Vec<u64>]) -> Result<SubgroupForm, AbelianError> {
    let size = elements.len() as u64;
    let mut slot_parts: Vec<(u64, Vec<(u64, Vec<u64>)>)> = Vec::new();
    for (p, _) in coords::factorize(size) {
        let mut part: Vec<Vec<u64>> = elements
            .iter()
            .filter(|x| is_power_of(coords::order_of(ambient, x), p))
            .cloned()
            .collect();
        part.sort();
        let basis = p_group_basis(ambient, &part)?;
        slot_parts.push((p, basis));
    }
    let r = slot_parts.iter().map(|(_, b)| b.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; r];
    let mut basis = vec![vec![0u64; ambient.len()]; r];
    for (_, b) in &slot_parts {
        let pad = r - b.len();
        for (k, (ord, x)) in b.iter().enumerate() {
            factors[pad + k] *= ord;
            basis[pad + k] = coords::add(ambient, &basis[pad + k], x);
        }
    }
    let group = FinAbGroup::new(factors.clone())
        .map_err(|_| AbelianError::NotIsomorphism("subgroup basis failed".into()))?;
    let mut labels = HashMap::with_capacity(elements.len());
    for c in coords::elements(&factors) {
        let mut x = vec![0; ambient.len()];
        for (b, k) in basis.iter().zip(&c) {
            x = coords::add(ambient, &x, &coords::scale(ambient, b, *k));
        }
        labels.insert(x, c);
    }
    if labels.len() as u64 != size || elements.iter().any(|x| !labels.contains_key(x)) {
        return Err(AbelianError::NotIsomorphism(
            "element list is not a subgroup".into(),
        ));
    }
    Ok(SubgroupForm {
        group,
        basis,
        labels,
    })
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Basis of a finite abelian p-group: repeatedly take the lexicographically
/// least element of maximal order whose cyclic span meets the span so far
/// trivially. Returned in increasing order.
fn p_group_basis(ambient: &[u64], part: &[Vec<u64>]) -> Result<Vec<(u64, Vec<u64>)>, AbelianError> {
    let target = part.len();
    let mut span: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();
    span.insert(vec![0; ambient.len()]);
    let mut basis: Vec<(u64, Vec<u64>)> = Vec::new();
    while span.len() < target {
        let mut best: Option<(u64, &Vec<u64>)> = None;
        for y in part {
            let ord = coords::order_of(ambient, y);
            if ord == 1 || best.is_some_and(|(o, _)| o >= ord) {
                continue;
            }
            let mut cur = y.clone();
            let mut meets = false;
            while !coords::is_zero(&cur) {
                if span.contains(&cur) {
                    meets = true;
                    break;
                }
                cur = coords::add(ambient, &cur, y);
            }
            if !meets {
                best = Some((ord, y));
            }
        }
        let (ord, y) = best.ok_or_else(|| AbelianError::NotIsomorphism("p-group basis".into()))?;
        let mut next = std::collections::HashSet::with_capacity(span.len() * ord as usize);
        for s in &span {
            let mut cur = s.clone();
            for _ in 0..ord {
                next.insert(cur.clone());
                cur = coords::add(ambient, &cur, y);
            }
        }
        span = next;
        basis.push((ord, y.clone()));
    }
    if span.len() != target {
        return Err(AbelianError::NotIsomorphism("p-group basis".into()));
    }
    basis.reverse();
    Ok(basis)
}

/// Every automorphism of `g`, as images of the canonical generators, in
/// lexicographic order of the image lists.
pub fn automorphisms(g: &FinAbGroup) -> Vec<Hom> {
    let d = g.factors().to_vec();
    let elems = coords::elements(&d);
    let mut out = Vec::new();
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    let mut span = vec![vec![0u64; d.len()]];
    fn go(
        d: &[u64],
        elems: &[Vec<u64>],
        chosen: &mut Vec<Vec<u64>>,
        span: &[Vec<u64>],
        out: &mut Vec<Hom>,
    ) {
        let j = chosen.len();
        if j == d.len() {
            out.push(Hom {
                src: d.to_vec(),
                dst: d.to_vec(),
                images: chosen.clone(),
            });
            return;
        }
        let set: std::collections::HashSet<&Vec<u64>> = span.iter().collect();
        for y in elems {
            if coords::order_of(d, y) != d[j] {
                continue;
            }
            let mut cur = y.clone();
            let mut ok = true;
            while !coords::is_zero(&cur) {
                if set.contains(&cur) {
                    ok = false;
                    break;
                }
                cur = coords::add(d, &cur, y);
            }
            if !ok {
                continue;
            }
            let mut next = Vec::with_capacity(span.len() * d[j] as usize);
            for s in span {
                let mut cur = s.clone();
                for _ in 0..d[j] {
                    next.push(cur.clone());
                    cur = coords::add(d, &cur, y);
                }
            }
            chosen.push(y.clone());
            go(d, elems, chosen, &next, out);
            chosen.pop();
        }
    }
    go(&d, &elems, &mut chosen, &span, &mut out);
    span.clear();
    out
}

/// For an isomorphism `q: Γ → Γ'`, the map on characters `u` with
/// `u(δ)(q(γ)) = δ(γ)`, both sides in self-dual coordinates.
pub fn dual_isomorphism_transport(q: &Hom) -> Result<Hom, AbelianError> {
    if !q.is_well_defined() {
        return Err(AbelianError::NotIsomorphism(
            "images do not respect the generator orders".into(),
        ));
    }
    let qinv = q.inverse()?;
    // u(δ_k)_j = o_j · δ_k(q⁻¹(e_j)) with δ_k(y) = y_k / d_k.
    let images: Vec<Vec<u64>> = (0..q.src.len())
        .map(|k| {
            (0..q.dst.len())
                .map(|j| {
                    let y = &qinv.images[j];
                    let num = y[k] as u128 * q.dst[j] as u128;
                    debug_assert_eq!(num % q.src[k] as u128, 0);
                    ((num / q.src[k] as u128) % q.dst[j] as u128) as u64
                })
                .collect()
        })
        .collect();
    let u = Hom {
        src: q.src.clone(),
        dst: q.dst.clone(),
        images,
    };
    for (k, dk) in u.images.iter().enumerate() {
        for (l, ql) in q.images.iter().enumerate() {
            let mut delta = vec![0; q.src.len()];
            delta[k] = 1 % q.src[k];
            let mut gamma = vec![0; q.src.len()];
            gamma[l] = 1 % q.src[l];
            let lhs = coords::dual_pairing(&q.dst, dk, ql);
            let rhs = coords::dual_pairing(&q.src, &delta, &gamma);
            if lhs != rhs {
                return Err(AbelianError::NotIsomorphism("transport check failed".into()));
            }
        }
    }
    Ok(u)
}
