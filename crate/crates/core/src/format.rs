//! JSON file formats for lattices and polynomials.
//!
//! ```json
//! {
//!   "lattice": {"type": "chain", "size": 3},
//!   "arity": 2,
//!   "coefficients": {"": 0, "1": 1, "1,2": 2}
//! }
//! ```
//!
//! Lattice descriptors are `{"type":"chain","size":k}`,
//! `{"type":"product","factors":[k1,...]}` or
//! `{"type":"table","size":m,"meet":[[...]],"join":[[...]]}`. Coefficient keys
//! are sorted, comma-separated, 1-based variable indices (`""` is the empty
//! set). Values are element ids, or coordinate arrays over product lattices.
//! Missing keys default to bottom.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{BoundedLattice, Element, LatticeError};
use crate::polynomial::{DnfPolynomial, PolyError, Subset, MAX_ARITY};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("bad coefficient key {0:?}: expected sorted, comma-separated 1-based indices")]
    BadKey(String),
    #[error("bad element {0:?}")]
    BadElement(String),
    #[error("table lattice declares size {declared} but its tables have {actual} rows")]
    SizeMismatch { declared: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum LatticeDescriptor {
    Chain { size: usize },
    Product { factors: Vec<usize> },
    Table { size: usize, meet: Vec<Vec<usize>>, join: Vec<Vec<usize>> },
}

impl LatticeDescriptor {
    pub fn build(&self) -> Result<BoundedLattice, FormatError> {
        Ok(match self {
            LatticeDescriptor::Chain { size } => BoundedLattice::chain(*size)?,
            LatticeDescriptor::Product { factors } => BoundedLattice::product(factors)?,
            LatticeDescriptor::Table { size, meet, join } => {
                if meet.len() != *size || join.len() != *size {
                    return Err(FormatError::SizeMismatch { declared: *size, actual: meet.len() });
                }
                BoundedLattice::from_tables(meet.clone(), join.clone())?
            }
        })
    }

    pub fn describe(lattice: &BoundedLattice) -> LatticeDescriptor {
        match lattice.factors() {
            Some(f) if f.len() == 1 => LatticeDescriptor::Chain { size: f[0] },
            Some(factors) => LatticeDescriptor::Product { factors },
            None => {
                let (meet, join) = lattice.tables();
                LatticeDescriptor::Table { size: lattice.size(), meet, join }
            }
        }
    }

    pub fn parse(text: &str) -> Result<LatticeDescriptor, FormatError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A coefficient value: element id or product coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementValue {
    Id(usize),
    Coordinates(Vec<usize>),
}

impl ElementValue {
    pub fn resolve(&self, lattice: &BoundedLattice) -> Result<Element, FormatError> {
        Ok(match self {
            ElementValue::Id(id) => lattice.element(*id)?,
            ElementValue::Coordinates(c) => lattice.from_coordinates(c)?,
        })
    }

    fn of(lattice: &BoundedLattice, a: Element) -> ElementValue {
        if lattice.is_product() {
            ElementValue::Coordinates(lattice.coordinates(a).unwrap_or_default())
        } else {
            ElementValue::Id(a.id())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    pub lattice: LatticeDescriptor,
    pub arity: usize,
    #[serde(default)]
    pub coefficients: BTreeMap<String, ElementValue>,
}

impl PolynomialFile {
    pub fn parse(text: &str) -> Result<PolynomialFile, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_polynomial(&self) -> Result<DnfPolynomial, FormatError> {
        let lattice = Arc::new(self.lattice.build()?);
        if self.arity == 0 || self.arity > MAX_ARITY {
            return Err(PolyError::BadArity(self.arity).into());
        }
        let mut terms = Vec::with_capacity(self.coefficients.len());
        for (key, value) in &self.coefficients {
            let subset = parse_key(key)?;
            if !subset.fits(self.arity) {
                return Err(PolyError::SubsetOutOfRange { subset, arity: self.arity }.into());
            }
            terms.push((subset, value.resolve(&lattice)?));
        }
        Ok(DnfPolynomial::from_terms(lattice, self.arity, terms)?)
    }

    /// Lists every nonbottom coefficient of `p` as stored.
    pub fn from_polynomial(p: &DnfPolynomial) -> PolynomialFile {
        let l = p.lattice();
        let coefficients = p
            .terms()
            .filter(|t| t.coefficient != l.bottom())
            .map(|t| (t.subset.key(), ElementValue::of(l, t.coefficient)))
            .collect();
        PolynomialFile { lattice: LatticeDescriptor::describe(l), arity: p.arity(), coefficients }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polynomial files always serialize")
    }
}

/// Parses a coefficient key such as `"1,3"` (or `""` for the empty set).
pub fn parse_key(key: &str) -> Result<Subset, FormatError> {
    let key = key.trim();
    if key.is_empty() {
        return Ok(Subset::EMPTY);
    }
    let mut prev = 0;
    let mut subset = Subset::EMPTY;
    for part in key.split(',') {
        let i: usize = part.trim().parse().map_err(|_| FormatError::BadKey(key.to_string()))?;
        if i <= prev || i > MAX_ARITY {
            return Err(FormatError::BadKey(key.to_string()));
        }
        subset = subset.insert(i - 1);
        prev = i;
    }
    Ok(subset)
}

/// Parses a comma-separated list of element ids, e.g. a point `"2,1"`.
pub fn parse_point(text: &str, lattice: &BoundedLattice) -> Result<Vec<Element>, FormatError> {
    text.split(',')
        .map(|part| {
            let id: usize = part.trim().parse().map_err(|_| FormatError::BadElement(part.to_string()))?;
            Ok(lattice.element(id)?)
        })
        .collect()
}
