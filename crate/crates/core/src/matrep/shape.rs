//! Labeled tensor decompositions of the ambient space.

use serde::{Deserialize, Serialize};

use super::MatrepError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Factor {
    pub label: String,
    pub dim: usize,
}

/// `U = F₁ ⊗ F₂ ⊗ …` with the first factor varying slowest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Factor>", into = "Vec<Factor>")]
pub struct TensorShape {
    factors: Vec<Factor>,
}

impl TryFrom<Vec<Factor>> for TensorShape {
    type Error = MatrepError;

    fn try_from(v: Vec<Factor>) -> Result<Self, Self::Error> {
        TensorShape::new(v.into_iter().map(|f| (f.label, f.dim)))
    }
}

impl From<TensorShape> for Vec<Factor> {
    fn from(s: TensorShape) -> Self {
        s.factors
    }
}

impl TensorShape {
    pub fn new<S: Into<String>>(
        factors: impl IntoIterator<Item = (S, usize)>,
    ) -> Result<TensorShape, MatrepError> {
        let mut out: Vec<Factor> = Vec::new();
        for (label, dim) in factors {
            let label = label.into();
            if dim == 0 {
                return Err(MatrepError::ZeroDimension(label));
            }
            if out.iter().any(|f| f.label == label) {
                return Err(MatrepError::DuplicateLabel(label));
            }
            out.push(Factor { label, dim });
        }
        Ok(TensorShape { factors: out })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.label == label)
    }

    pub fn factor_dim(&self, label: &str) -> Option<usize> {
        self.position(label).map(|i| self.factors[i].dim)
    }

    /// A copy with one more factor appended as the fastest-varying slot.
    pub fn with_factor(&self, label: &str, dim: usize) -> Result<TensorShape, MatrepError> {
        TensorShape::new(
            self.factors
                .iter()
                .map(|f| (f.label.clone(), f.dim))
                .chain(std::iter::once((label.to_string(), dim))),
        )
    }
}

/// A direct sum of tensor-decomposed summands; most constructions use a
/// single summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ambient {
    pub summands: Vec<TensorShape>,
}

impl Ambient {
    pub fn single(shape: TensorShape) -> Ambient {
        Ambient {
            summands: vec![shape],
        }
    }

    pub fn dim(&self) -> usize {
        self.summands.iter().map(TensorShape::dim).sum()
    }

    /// Summand dimensions, in order.
    pub fn summand_dims(&self) -> Vec<usize> {
        self.summands.iter().map(TensorShape::dim).collect()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.summands
            .iter()
            .map(|s| {
                let o = acc;
                acc += s.dim();
                o
            })
            .collect()
    }

    pub fn direct_sum(parts: &[Ambient]) -> Ambient {
        Ambient {
            summands: parts.iter().flat_map(|a| a.summands.iter().cloned()).collect(),
        }
    }

    pub fn with_factor(&self, label: &str, dim: usize) -> Result<Ambient, MatrepError> {
        Ok(Ambient {
            summands: self
                .summands
                .iter()
                .map(|s| s.with_factor(label, dim))
                .collect::<Result<_, _>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_validation() {
        let s = TensorShape::new([("A", 2), ("B", 3)]).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.position("B"), Some(1));
        assert!(matches!(
            TensorShape::new([("A", 2), ("A", 3)]),
            Err(MatrepError::DuplicateLabel(_))
        ));
        assert!(TensorShape::new([("A", 0)]).is_err());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"[{"label":"A","dim":2},{"label":"B","dim":3}]"#);
        assert_eq!(serde_json::from_str::<TensorShape>(&json).unwrap(), s);
    }
}
