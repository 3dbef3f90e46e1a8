//! Command implementations. Each returns the process exit code on a
//! normal outcome; `CliError` carries the code for everything else.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use projpair::abelian::{symplectic_decompose, AbelianError, FinAbGroup, SymplecticPairing};
use projpair::classify::{
    canonicalize_row, check_rows, enumerate_multi_orbit_capped, enumerate_single_orbit,
    CheckSummary, ClassificationRow, ClassifyError,
};
use projpair::construct::{
    multi_orbit_glue, single_orbit_pair, ConstructError, GroupSpec, MultiOrbitSpec,
    SingleOrbitIngredients,
};
use projpair::verify::{pairing_table, verify_dual_pair, VerifyError};

use crate::output;
use crate::{ConstructArgs, EnumerateArgs, Format};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Malformed { path: PathBuf, message: String },
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("writing output: {0}")]
    Output(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Construct(_) | CliError::Classify(ClassifyError::Construct(_)) => 3,
            _ => 2,
        }
    }
}

/// On-disk form of a constructed pair.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub g: GroupSpec,
    pub h: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).map_err(CliError::Output)?;
    out.flush().map_err(CliError::Output)
}

fn render<T: Serialize>(value: &T, format: Format, table: impl FnOnce(&T) -> String) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => output::canonical_json(value)?,
        Format::Table => table(value),
    })
}

pub fn construct(args: &ConstructArgs, _format: Format) -> Result<u8, CliError> {
    let (g, h, meta) = if let Some(path) = &args.glue {
        let spec: MultiOrbitSpec = read_json(path)?;
        let (g, h) = multi_orbit_glue(&spec)?;
        let meta = serde_json::json!({
            "ambient_dim": g.dim(),
            "glue": spec,
        });
        (g, h, meta)
    } else {
        if args.b.is_none() && args.e.is_none() && args.l.is_none() && args.j.is_none() && args.k.is_none() {
            return Err(CliError::Usage(
                "construct needs ingredient flags (--b, --e, --L, --J, --K) or --glue".into(),
            ));
        }
        let ing = SingleOrbitIngredients::new(
            args.b.unwrap_or(1),
            args.e.unwrap_or(1),
            args.l.clone().unwrap_or_else(FinAbGroup::trivial),
            args.j.clone().unwrap_or_else(FinAbGroup::trivial),
            args.k.clone().unwrap_or_else(FinAbGroup::trivial),
        );
        let (g, h) = single_orbit_pair(&ing)?;
        let meta = serde_json::json!({
            "ambient_dim": g.dim(),
            "ingredients": ing,
        });
        (g, h, meta)
    };
    let file = PairFile {
        g,
        h,
        meta: Some(meta),
    };
    let text = output::canonical_json(&file)?;
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => emit(&text)?,
    }
    Ok(0)
}

pub fn verify(path: &Path, format: Format) -> Result<u8, CliError> {
    let pair: PairFile = read_json(path)?;
    let report = verify_dual_pair(&pair.g, &pair.h)?;
    emit(&render(&report, format, output::report_table)?)?;
    Ok(if report.is_dual_pair { 0 } else { 1 })
}

pub fn pairing(path: &Path, format: Format) -> Result<u8, CliError> {
    let pair: PairFile = read_json(path)?;
    let table = match pairing_table(&pair.g, &pair.h) {
        Ok(t) => t,
        Err(VerifyError::Malformed(m)) => {
            eprintln!("pairing undefined: {m}");
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    emit(&render(&table, format, output::pairing_table)?)?;
    Ok(if table.is_bicharacter() && table.is_nondegenerate() { 0 } else { 1 })
}

pub fn symplectic(path: &Path, format: Format) -> Result<u8, CliError> {
    let raw: SymplecticPairing = read_json(path)?;
    let malformed = |message: String| CliError::Malformed {
        path: path.to_path_buf(),
        message,
    };
    let pairing = SymplecticPairing::new(raw.group, raw.table).map_err(|e| malformed(e.to_string()))?;
    match symplectic_decompose(&pairing) {
        Ok(d) => {
            emit(&render(&d, format, output::decomposition_table)?)?;
            Ok(0)
        }
        Err(AbelianError::DegeneratePairing) => {
            eprintln!("error: {}", AbelianError::DegeneratePairing);
            Ok(1)
        }
        Err(e) => Err(malformed(e.to_string())),
    }
}

#[derive(Serialize)]
struct Listing<'a> {
    n: usize,
    max_parts: usize,
    rows: &'a [ClassificationRow],
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<&'a CheckSummary>,
}

pub fn enumerate(args: &EnumerateArgs, format: Format) -> Result<u8, CliError> {
    let max_parts = args.max_parts.unwrap_or(args.n);
    let mut rows = if max_parts == 1 {
        let rows = enumerate_single_orbit(args.n);
        if rows.len() > args.max_rows {
            return Err(ClassifyError::TooManyRows(args.max_rows).into());
        }
        rows
    } else {
        enumerate_multi_orbit_capped(args.n, max_parts, args.max_rows)?
    };
    if args.normalize_orientation {
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::with_capacity(rows.len());
        for row in rows {
            let c = canonicalize_row(&row)?;
            if seen.insert(c.clone()) {
                kept.push(c);
            }
        }
        rows = kept;
    }
    let summary = args.check.then(|| check_rows(&rows));
    let listing = Listing {
        n: args.n,
        max_parts,
        rows: &rows,
        check: summary.as_ref(),
    };
    let text = render(&listing, format, |l| {
        let mut t = output::rows_table(l.rows);
        if let Some(s) = l.check {
            t.push_str(&format!("checked: {}/{} passed\n", s.passed, s.total));
            for f in &s.failed {
                t.push_str(&format!(
                    "row {} ({}): {}\n",
                    f.index,
                    output::describe_ingredients(&l.rows[f.index]),
                    f.problems.join("; ")
                ));
            }
        }
        t
    })?;
    emit(&text)?;
    Ok(match &summary {
        Some(s) if s.passed != s.total => 1,
        _ => 0,
    })
}
