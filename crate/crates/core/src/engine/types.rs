use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::series::{BiPolynomial, SeriesError, TriSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(
        "{table} provides powers up to L^{available} but the computation needs L^{missing} \
         (all powers up to {required})",
        available = .available.map_or("-1".to_string(), |k| k.to_string()),
        missing = .available.map_or(0, |k| k + 1)
    )]
    InsufficientPowers {
        table: &'static str,
        required: u32,
        available: Option<u32>,
    },
    #[error("non-integral coefficient {value} at {location} in {context}")]
    IntegralityFailure {
        context: String,
        location: String,
        value: String,
    },
    #[error("negative coefficient {value} at {location} in {context}")]
    NegativeCoefficient {
        context: String,
        location: String,
        value: String,
    },
    #[error("term {location} of {context} exceeds the degree bound")]
    DegreeBound { context: String, location: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{check}: mismatch at n={n}, degree {degree}: {left} vs {right}")]
    Mismatch {
        check: String,
        n: u32,
        degree: String,
        left: String,
        right: String,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Bigraded dimensions `(p, q) -> h^{p,q}` of one space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HodgePolynomial {
    terms: BTreeMap<(u32, u32), BigUint>,
    space_dim: u32,
}

impl HodgePolynomial {
    /// Zero entries are dropped; panics if an entry lies outside `[0, space_dim]^2`.
    pub fn new<I>(terms: I, space_dim: u32) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), BigUint)>,
    {
        let mut map: BTreeMap<(u32, u32), BigUint> = BTreeMap::new();
        for ((p, q), v) in terms {
            assert!(p <= space_dim && q <= space_dim, "({p},{q}) outside dimension {space_dim}");
            if !v.is_zero() {
                *map.entry((p, q)).or_default() += v;
            }
        }
        HodgePolynomial { terms: map, space_dim }
    }

    pub fn from_u64(terms: &[((u32, u32), u64)], space_dim: u32) -> Self {
        HodgePolynomial::new(terms.iter().map(|&(k, v)| (k, BigUint::from(v))), space_dim)
    }

    /// Checks that every coefficient is a nonnegative integer with bidegree
    /// inside `[0, space_dim]^2`.
    pub fn from_bipolynomial(
        poly: &BiPolynomial,
        space_dim: u32,
        context: &str,
    ) -> Result<Self, EngineError> {
        let mut terms = BTreeMap::new();
        for (&(p, q), c) in poly.terms() {
            let location = format!("x^{p} y^{q}");
            let value = c
                .to_integer()
                .ok_or_else(|| EngineError::IntegralityFailure {
                    context: context.to_string(),
                    location: location.clone(),
                    value: c.to_string(),
                })?;
            if value.is_negative() {
                return Err(EngineError::NegativeCoefficient {
                    context: context.to_string(),
                    location,
                    value: value.to_string(),
                });
            }
            if p > space_dim || q > space_dim {
                return Err(EngineError::DegreeBound {
                    context: context.to_string(),
                    location,
                });
            }
            terms.insert((p, q), value.magnitude().clone());
        }
        Ok(HodgePolynomial { terms, space_dim })
    }

    pub fn space_dim(&self) -> u32 {
        self.space_dim
    }

    pub fn get(&self, p: u32, q: u32) -> BigUint {
        self.terms.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigUint)> {
        self.terms.iter()
    }

    /// Terms sorted by `(p + q, p)`.
    pub fn terms_by_total_degree(&self) -> Vec<((u32, u32), BigUint)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by_key(|&((p, q), _)| (p + q, p));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_bipolynomial(&self) -> BiPolynomial {
        BiPolynomial::from_terms(
            self.terms
                .iter()
                .map(|(k, v)| (*k, Coefficient::from_bigint(BigInt::from(v.clone())))),
        )
    }

    pub fn transpose(&self) -> Self {
        HodgePolynomial {
            terms: self.terms.iter().map(|(&(p, q), v)| ((q, p), v.clone())).collect(),
            space_dim: self.space_dim,
        }
    }

    /// `sum_{p+q=i} h^{p,q}` for `i = 0..=2 space_dim`.
    pub fn total_degree_sums(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); 2 * self.space_dim as usize + 1];
        for (&(p, q), v) in &self.terms {
            out[(p + q) as usize] += v;
        }
        out
    }

    /// Collapse along `q - p`.
    pub fn collapse_q_minus_p(&self) -> GradedDims {
        GradedDims::new(
            self.terms
                .iter()
                .map(|(&(p, q), v)| (q as i64 - p as i64, v.clone())),
        )
    }
}

impl fmt::Display for HodgePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for ((p, q), v) in self.terms_by_total_degree() {
            let mut mono = Vec::new();
            for (name, e) in [("x", p), ("y", q)] {
                match e {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    _ => mono.push(format!("{name}^{e}")),
                }
            }
            let one = BigUint::from(1u32);
            parts.push(match (mono.is_empty(), v == one) {
                (true, _) => v.to_string(),
                (false, true) => mono.join("*"),
                (false, false) => format!("{v}*{}", mono.join("*")),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Single-graded dimensions `degree -> dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedDims {
    dims: BTreeMap<i64, BigUint>,
}

impl GradedDims {
    pub fn new<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigUint)>,
    {
        let mut dims: BTreeMap<i64, BigUint> = BTreeMap::new();
        for (d, v) in entries {
            if !v.is_zero() {
                *dims.entry(d).or_default() += v;
            }
        }
        GradedDims { dims }
    }

    pub fn from_u64(entries: &[(i64, u64)]) -> Self {
        GradedDims::new(entries.iter().map(|&(d, v)| (d, BigUint::from(v))))
    }

    /// `dims[i]` at degree `i` for `i = 0..3`.
    pub fn from_triple(v: [u64; 3]) -> Self {
        GradedDims::new(v.iter().enumerate().map(|(i, &d)| (i as i64, BigUint::from(d))))
    }

    pub fn get(&self, degree: i64) -> BigUint {
        self.dims.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigUint)> {
        self.dims.iter()
    }

    pub fn total(&self) -> BigUint {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Graded tensor product (degrees add, dimensions multiply).
    pub fn tensor(&self, other: &GradedDims) -> GradedDims {
        GradedDims::new(
            self.dims
                .iter()
                .flat_map(|(a, u)| other.dims.iter().map(move |(b, v)| (a + b, u * v))),
        )
    }
}

/// Checks that a Hodge-type generating series has nonnegative integer
/// coefficients and respects `e_x, e_y <= 2 e_t + slack`.
pub(crate) fn check_hodge_series(
    series: &TriSeries,
    slack: u32,
    context: &str,
) -> Result<(), EngineError> {
    for (m, c) in series.terms() {
        if !c.is_integral() {
            return Err(EngineError::IntegralityFailure {
                context: context.to_string(),
                location: m.to_string(),
                value: c.to_string(),
            });
        }
        if c.is_negative() {
            return Err(EngineError::NegativeCoefficient {
                context: context.to_string(),
                location: m.to_string(),
                value: c.to_string(),
            });
        }
    }
    if let Some(m) = series.degree_bound_violation(slack) {
        return Err(EngineError::DegreeBound {
            context: context.to_string(),
            location: m.to_string(),
        });
    }
    Ok(())
}
