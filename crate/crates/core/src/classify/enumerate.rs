use std::collections::BTreeMap;

use super::{ingredient_key, ClassificationRow, ClassifyError};
use crate::abelian::{automorphisms, enumerate_abelian_groups, FinAbGroup, Hom};
use crate::construct::{GluedSummand, MultiOrbitSpec, SingleOrbitIngredients};

pub const DEFAULT_ROW_CAP: usize = 1_000_000;

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn singles(n: usize) -> Vec<SingleOrbitIngredients> {
    let mut out = Vec::new();
    for b in divisors(n) {
        for e in divisors(n / b) {
            let rest = n / (b * e);
            for l in divisors(rest) {
                for j in divisors(rest / l) {
                    let k = rest / (l * j);
                    for lg in enumerate_abelian_groups(l as u64) {
                        for jg in enumerate_abelian_groups(j as u64) {
                            for kg in enumerate_abelian_groups(k as u64) {
                                out.push(SingleOrbitIngredients::new(
                                    b,
                                    e,
                                    lg.clone(),
                                    jg.clone(),
                                    kg,
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(ingredient_key);
    out
}

/// Every single-orbit ingredient tuple with `b·e·|𝓛|·|𝓙|·|𝓚| = n`, in
/// both orientations.
pub fn enumerate_single_orbit(n: usize) -> Vec<ClassificationRow> {
    if n == 0 {
        return Vec::new();
    }
    singles(n).into_iter().map(ClassificationRow::single).collect()
}

/// Single-orbit rows followed by glued rows with `2..=max_parts` summands.
pub fn enumerate_multi_orbit(n: usize, max_parts: usize) -> Result<Vec<ClassificationRow>, ClassifyError> {
    enumerate_multi_orbit_capped(n, max_parts, DEFAULT_ROW_CAP)
}

pub fn enumerate_multi_orbit_capped(
    n: usize,
    max_parts: usize,
    cap: usize,
) -> Result<Vec<ClassificationRow>, ClassifyError> {
    if n == 0 {
        return Err(ClassifyError::InvalidArgument("n must be positive".into()));
    }
    if max_parts == 0 {
        return Err(ClassifyError::InvalidArgument("max_parts must be positive".into()));
    }
    let mut rows = enumerate_single_orbit(n);
    if rows.len() > cap {
        return Err(ClassifyError::TooManyRows(cap));
    }
    if max_parts == 1 {
        return Ok(rows);
    }
    // Candidate summands of dimension < n, grouped by Γ.
    let mut by_gamma: BTreeMap<FinAbGroup, Vec<SingleOrbitIngredients>> = BTreeMap::new();
    for m in 1..n {
        for s in singles(m) {
            by_gamma.entry(s.gamma()).or_default().push(s);
        }
    }
    for r in 2..=max_parts.min(n) {
        for (gamma, pool) in &by_gamma {
            let mut multisets = Vec::new();
            multisets_of(pool, n, r, 0, &mut Vec::new(), &mut multisets);
            if multisets.is_empty() {
                continue;
            }
            let auts = automorphisms(gamma);
            for ms in multisets {
                let parts: Vec<&SingleOrbitIngredients> = ms.iter().map(|&i| &pool[i]).collect();
                for alphas in gluing_classes(&parts, &auts)? {
                    if rows.len() >= cap {
                        return Err(ClassifyError::TooManyRows(cap));
                    }
                    let summands = parts
                        .iter()
                        .zip(&alphas)
                        .map(|(p, a)| GluedSummand {
                            ingredients: (*p).clone(),
                            q: p.reference_iso().compose(a),
                        })
                        .collect();
                    rows.push(ClassificationRow::multi(MultiOrbitSpec {
                        gamma: gamma.clone(),
                        summands,
                    }));
                }
            }
        }
    }
    Ok(rows)
}

/// Nondecreasing index sequences of length `r` into `pool` whose dimensions
/// sum to `n`.
fn multisets_of(
    pool: &[SingleOrbitIngredients],
    n: usize,
    r: usize,
    start: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == r {
        if n == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for i in start..pool.len() {
        let d = pool[i].ambient_dim();
        // pool is sorted by dimension, so the remaining slots need at least d each
        if d * (r - cur.len()) > n {
            break;
        }
        cur.push(i);
        multisets_of(pool, n - d, r, i, cur, out);
        cur.pop();
    }
}

/// Gluing-class representatives `(α_1 = id, α_2, …, α_r)` for sorted
/// summands: each tuple is kept iff it is lexicographically least among
/// its images under permutations of identical summands (renormalized so
/// the first entry is the identity).
fn gluing_classes(
    parts: &[&SingleOrbitIngredients],
    auts: &[Hom],
) -> Result<Vec<Vec<Hom>>, ClassifyError> {
    let r = parts.len();
    let index: std::collections::HashMap<&Vec<Vec<u64>>, usize> =
        auts.iter().enumerate().map(|(i, a)| (&a.images, i)).collect();
    let perms = super::canonical::tie_permutations(parts);
    let nontrivial: Vec<&Vec<usize>> = perms.iter().filter(|p| p.iter().enumerate().any(|(i, j)| i != *j)).collect();
    let inverses: Vec<usize> = if nontrivial.is_empty() {
        Vec::new()
    } else {
        auts.iter()
            .map(|a| Ok(index[&a.inverse()?.images]))
            .collect::<Result<_, ClassifyError>>()?
    };
    let id = auts
        .iter()
        .position(|a| *a == Hom::identity(&a.src))
        .expect("identity automorphism");
    let compose = |a: usize, b: usize| index[&auts[a].compose(&auts[b]).images];

    let mut out = Vec::new();
    let mut tuple = vec![0usize; r - 1];
    let total = auts.len().pow((r - 1) as u32);
    for _ in 0..total {
        let full: Vec<usize> = std::iter::once(id).chain(tuple.iter().copied()).collect();
        let least = nontrivial.iter().all(|p| {
            let inv_first = inverses[full[p[0]]];
            let image: Vec<usize> = (1..r).map(|i| compose(full[p[i]], inv_first)).collect();
            image >= tuple
        });
        if least {
            out.push(full.iter().map(|&i| auts[i].clone()).collect());
        }
        for slot in (0..r - 1).rev() {
            tuple[slot] += 1;
            if tuple[slot] < auts.len() {
                break;
            }
            tuple[slot] = 0;
        }
    }
    Ok(out)
}
