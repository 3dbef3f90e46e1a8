//! Canonical JSON (sorted keys) and plain-text tables.

use serde::Serialize;

use projpair::abelian::HyperbolicDecomposition;
use projpair::classify::{ClassificationRow, RowIngredients};
use projpair::verify::{PairingTable, VerificationReport};

/// Pretty JSON with object keys in sorted order.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String, serde_json::Error> {
    // serde_json::Value keeps objects in a BTreeMap
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")
}

pub fn rows_table(rows: &[ClassificationRow]) -> String {
    let mut lines = vec![["n", "b", "e", "L", "J", "K", "Gamma", "Gamma^", "r"].map(String::from).to_vec()];
    for row in rows {
        let s = row.summands();
        lines.push(vec![
            row.ambient_dim.to_string(),
            join(s.iter().map(|i| i.b)),
            join(s.iter().map(|i| i.e)),
            join(s.iter().map(|i| &i.l_group)),
            join(s.iter().map(|i| &i.j_group)),
            join(s.iter().map(|i| &i.k_group)),
            row.gamma.to_string(),
            row.gamma_hat.to_string(),
            row.parts.to_string(),
        ]);
    }
    align(&lines)
}

fn align(lines: &[Vec<String>]) -> String {
    let cols = lines.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| lines.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for l in lines {
        let cells: Vec<String> = l
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn report_table(r: &VerificationReport) -> String {
    let mut out = format!(
        "dual pair:      {}\n\
         G:              dim {}, {} components\n\
         H:              dim {}, {} components\n\
         Z(G):           dim {}, {} components\n\
         Z(H):           dim {}, {} components\n",
        if r.is_dual_pair { "yes" } else { "no" },
        r.g_dim,
        r.g_components,
        r.h_dim,
        r.h_components,
        r.centralizer_of_g.dim,
        r.centralizer_of_g.components,
        r.centralizer_of_h.dim,
        r.centralizer_of_h.components,
    );
    for f in &r.failures {
        out.push_str(&format!("failure:        {} ({:?}) {}\n", f.code, f.side, f.detail));
    }
    if let Some(t) = &r.pairing {
        out.push_str(&pairing_table(t));
    }
    out
}

pub fn pairing_table(t: &PairingTable) -> String {
    let mut lines = vec![std::iter::once(format!("{} \\ {}", t.gamma, t.delta))
        .chain((0..t.values.first().map_or(0, Vec::len)).map(|j| format!("d{j}")))
        .collect::<Vec<_>>()];
    for (i, row) in t.values.iter().enumerate() {
        lines.push(
            std::iter::once(format!("g{i}"))
                .chain(row.iter().map(|r| r.to_string()))
                .collect(),
        );
    }
    align(&lines)
}

pub fn decomposition_table(d: &HyperbolicDecomposition) -> String {
    let mut out = String::new();
    for (i, p) in d.pairs.iter().enumerate() {
        out.push_str(&format!(
            "pair {i}: lambda={:?} lambda'={:?} order={} value={}\n",
            p.lambda, p.lambda_prime, p.order, p.value
        ));
    }
    out.push_str(&format!("lagrangian: {}\n", d.lagrangian));
    out
}

pub fn describe_ingredients(row: &ClassificationRow) -> String {
    match &row.ingredients {
        RowIngredients::Single(s) => s.to_string(),
        RowIngredients::Multi(m) => m
            .summands
            .iter()
            .map(|s| format!("[{}]", s.ingredients))
            .collect::<Vec<_>>()
            .join(" "),
    }
}
