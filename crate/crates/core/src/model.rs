//! Caterpillar specifications `T(q_1, ..., q_k)` and their derived counters.

use crate::error::{Error, Result};

/// Leg counts `(q_1, ..., q_k)`: `q_i` pendant vertices hang off the `i`-th
/// vertex of a spine path on `k` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaterpillarSpec {
    legs: Vec<u64>,
}

impl CaterpillarSpec {
    /// Validates signed input. Every entry must be nonnegative and there must
    /// be at least one spine vertex.
    pub fn new(q: &[i64]) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::EmptySpec);
        }
        let legs = q
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                u64::try_from(value).map_err(|_| Error::NegativeLegCount { index, value })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { legs })
    }

    pub fn from_legs(legs: Vec<u64>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::EmptySpec);
        }
        Ok(Self { legs })
    }

    pub fn legs(&self) -> &[u64] {
        &self.legs
    }

    /// Number of spine vertices.
    pub fn k(&self) -> usize {
        self.legs.len()
    }

    /// Graph order `sum(q) + k`.
    pub fn order(&self) -> usize {
        self.legs.iter().map(|&q| q as usize).sum::<usize>() + self.k()
    }

    /// True when the tree is a caterpillar in the strict sense: a spine of at
    /// least two vertices and order at least five.
    pub fn is_canonical(&self) -> bool {
        self.k() >= 2 && self.order() >= 5
    }

    /// Contiguous sub-caterpillar on spine positions `range` (0-based).
    pub fn slice(&self, range: std::ops::Range<usize>) -> Result<Self> {
        Self::from_legs(self.legs[range].to_vec())
    }

    pub fn has_zero_leg(&self) -> bool {
        self.legs.contains(&0)
    }

    pub fn derive(&self) -> DerivedParams {
        derive_params(self)
    }
}

impl std::fmt::Display for CaterpillarSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.legs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for CaterpillarSpec {
    type Err = ParseSpecError;

    /// Accepts `4,9,0,1` or `(4,9,0,1)`; surrounding whitespace is ignored.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        if body.trim().is_empty() {
            return Err(ParseSpecError::Invalid(Error::EmptySpec));
        }
        let values = body
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i64>()
                    .map_err(|_| ParseSpecError::BadToken(tok.to_string()))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CaterpillarSpec::new(&values).map_err(ParseSpecError::Invalid)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseSpecError {
    #[error("not an integer: {0:?}")]
    BadToken(String),
    #[error(transparent)]
    Invalid(Error),
}

/// Scalar bookkeeping shared by the polynomial and bound routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedParams {
    /// `delta[i] = 1` iff `q_i > 0`.
    pub delta: Vec<u8>,
    /// `max(1, q_i)`.
    pub qplus: Vec<u64>,
    pub n: usize,
    /// Multiplicity of `-1` contributed by the complete-graph blocks of the line graph.
    pub a: usize,
    /// Number of spine positions with no legs (all-zero rows of `C`).
    pub b: usize,
    pub dim_c: usize,
}

pub fn derive_params(spec: &CaterpillarSpec) -> DerivedParams {
    let q = spec.legs();
    let delta: Vec<u8> = q.iter().map(|&x| u8::from(x > 0)).collect();
    let qplus = q.iter().map(|&x| x.max(1)).collect();
    let zero_legs = delta.iter().filter(|&&d| d == 0).count();
    let a = q
        .iter()
        .zip(&delta)
        .map(|(&x, &d)| x as usize - d as usize)
        .sum();
    DerivedParams {
        delta,
        qplus,
        n: spec.order(),
        a,
        b: zero_legs,
        dim_c: 2 * spec.k() - 1,
    }
}
