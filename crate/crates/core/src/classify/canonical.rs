use super::{ingredient_key, ClassificationRow, ClassifyError, RowIngredients};
use crate::abelian::Hom;
use crate::construct::{h_side_gluing, GluedSummand, MultiOrbitSpec, SingleOrbitIngredients};

/// Every permutation of positions that only exchanges equal entries of a
/// sorted list, identity first.
pub(crate) fn tie_permutations<T: PartialEq>(items: &[T]) -> Vec<Vec<usize>> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=items.len() {
        if i == items.len() || items[i] != items[start] {
            runs.push((start, i));
            start = i;
        }
    }
    let mut out = vec![(0..items.len()).collect::<Vec<usize>>()];
    for (a, b) in runs {
        if b - a < 2 {
            continue;
        }
        let local = permutations(&(a..b).collect::<Vec<_>>());
        let mut next = Vec::with_capacity(out.len() * local.len());
        for p in &out {
            for l in &local {
                let mut q = p.clone();
                q[a..b].copy_from_slice(l);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Sorted summands with renormalized gluing automorphisms, in a form that
/// compares lexicographically.
type GluingForm = (Vec<super::IngredientKey>, Vec<Vec<Vec<u64>>>);

/// Canonical representative within one orientation.
fn canonical_gluing(spec: &MultiOrbitSpec) -> Result<(GluingForm, MultiOrbitSpec), ClassifyError> {
    let mut items: Vec<(SingleOrbitIngredients, Hom)> = spec
        .summands
        .iter()
        .map(|s| {
            let alpha = s.ingredients.reference_iso().inverse()?.compose(&s.q);
            Ok((s.ingredients.clone(), alpha))
        })
        .collect::<Result<_, ClassifyError>>()?;
    items.sort_by_key(|(ing, _)| ingredient_key(ing));
    let ings: Vec<&SingleOrbitIngredients> = items.iter().map(|(i, _)| i).collect();
    let mut best: Option<Vec<Hom>> = None;
    for p in tie_permutations(&ings) {
        let inv_first = items[p[0]].1.inverse()?;
        let alphas: Vec<Hom> = p.iter().map(|&i| items[i].1.compose(&inv_first)).collect();
        let better = match &best {
            None => true,
            Some(b) => images(&alphas) < images(b),
        };
        if better {
            best = Some(alphas);
        }
    }
    let alphas = best.expect("at least the identity permutation");
    let form = (ings.iter().map(|i| ingredient_key(i)).collect(), images(&alphas));
    let summands = items
        .iter()
        .zip(&alphas)
        .map(|((ing, _), a)| GluedSummand {
            ingredients: ing.clone(),
            q: ing.reference_iso().compose(a),
        })
        .collect();
    Ok((
        form,
        MultiOrbitSpec {
            gamma: spec.gamma.clone(),
            summands,
        },
    ))
}

fn images(alphas: &[Hom]) -> Vec<Vec<Vec<u64>>> {
    alphas.iter().map(|a| a.images.clone()).collect()
}

/// The same glued pair with G and H exchanged.
fn swap_orientation(spec: &MultiOrbitSpec) -> Result<MultiOrbitSpec, ClassifyError> {
    let h_maps = h_side_gluing(spec)?;
    let gamma = spec.gamma.factors();
    let summands = spec
        .summands
        .iter()
        .zip(&h_maps)
        .map(|(s, m)| {
            let swapped = s.ingredients.swapped();
            let images = (0..gamma.len())
                .map(|k| {
                    let mut e = vec![0u64; gamma.len()];
                    e[k] = 1;
                    s.ingredients.h_to_swapped_g(&m[&e])
                })
                .collect();
            GluedSummand {
                q: Hom {
                    src: gamma.to_vec(),
                    dst: swapped.gamma_orders(),
                    images,
                },
                ingredients: swapped,
            }
        })
        .collect();
    Ok(MultiOrbitSpec {
        gamma: spec.gamma.clone(),
        summands,
    })
}

/// Normalizes orientation, sorts summands and reduces gluing maps to the
/// least representative; idempotent.
pub fn canonicalize_row(row: &ClassificationRow) -> Result<ClassificationRow, ClassifyError> {
    match &row.ingredients {
        RowIngredients::Single(ing) => Ok(ClassificationRow::single(ing.normalize_orientation().0)),
        RowIngredients::Multi(spec) => {
            let (fa, a) = canonical_gluing(spec)?;
            let (fb, b) = canonical_gluing(&swap_orientation(spec)?)?;
            Ok(ClassificationRow::multi(if fb < fa { b } else { a }))
        }
    }
}
