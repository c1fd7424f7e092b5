//! Structural shapes of self-commuting polynomials.
//!
//! A polynomial is a *weighted disjunction* when it has the form
//! `a_∅ ∨ ⋁_i a_i x_i`, and has *chain form* when, in addition, its terms of
//! size at least two sit on a `⊆`-chain `S_1 ⊂ … ⊂ S_r` with every variable
//! outside `S_1` dominated (`a_i ≤ a_j`) by some variable `j ∈ S_1`.
//!
//! Over any distributive lattice both shapes are self-commuting. Over chains
//! they are exactly the self-commuting polynomials, which is what
//! [`is_self_commuting_fast`] relies on. Off chains the converse is unknown
//! and nothing here claims it.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{BoundedLattice, Element};
use crate::polynomial::{DnfPolynomial, PolyError, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("lattice {0} is not a chain; the structural test decides self-commutation only over chains, use the oracle instead")]
    NotAChain(String),
    #[error("polynomial is neither a weighted disjunction nor in chain form")]
    NotStructured,
    #[error("matrix has {got} entries, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("arity {0} is below 3")]
    ArityTooSmall(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Why a polynomial has neither shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainViolation {
    /// Two essential terms of size ≥ 2 whose subsets are incomparable.
    IncomparableTerms(Subset, Subset),
    /// A variable (0-based) outside `S_1` whose weight is not below the
    /// weight of any variable in `S_1`.
    UndominatedVariable(usize),
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainViolation::IncomparableTerms(a, b) => {
                write!(f, "incomparable essential terms {a}, {b}")
            }
            ChainViolation::UndominatedVariable(i) => {
                write!(f, "variable {} outside S_1 is not dominated by any variable of S_1", i + 1)
            }
        }
    }
}

/// Structural verdict. Coefficients are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    WeightedDisjunction {
        constant: Element,
        weights: Vec<Element>,
    },
    ChainForm {
        constant: Element,
        weights: Vec<Element>,
        /// `(S_ℓ, a_{S_ℓ})`, strictly increasing in both components.
        chain: Vec<(Subset, Element)>,
    },
    NotChainStructured {
        violation: ChainViolation,
    },
}

impl Classification {
    /// True for the two self-commuting shapes.
    pub fn is_structured(&self) -> bool {
        !matches!(self, Classification::NotChainStructured { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Classification::WeightedDisjunction { .. } => "WeightedDisjunction",
            Classification::ChainForm { .. } => "ChainForm",
            Classification::NotChainStructured { .. } => "NotChainStructured",
        }
    }

    /// The polynomial spelled out by the reported coefficients, or `None`
    /// for [`Classification::NotChainStructured`].
    pub fn to_polynomial(&self, lattice: Arc<BoundedLattice>) -> Option<Result<DnfPolynomial, PolyError>> {
        let (constant, weights, chain): (Element, &[Element], &[(Subset, Element)]) = match self {
            Classification::WeightedDisjunction { constant, weights } => (*constant, weights, &[]),
            Classification::ChainForm { constant, weights, chain } => (*constant, weights, chain),
            Classification::NotChainStructured { .. } => return None,
        };
        let terms = std::iter::once((Subset::EMPTY, constant))
            .chain(weights.iter().enumerate().map(|(i, &a)| (Subset::singleton(i), a)))
            .chain(chain.iter().copied());
        Some(DnfPolynomial::from_terms(lattice, weights.len(), terms))
    }

    /// One-line summary: `WeightedDisjunction`, `ChainForm: S_1={1,2}, …`,
    /// or `NotChainStructured: <violation>`.
    pub fn headline(&self) -> String {
        match self {
            Classification::WeightedDisjunction { .. } => "WeightedDisjunction".to_string(),
            Classification::ChainForm { chain, .. } => {
                let sets: Vec<String> =
                    chain.iter().enumerate().map(|(l, (s, _))| format!("S_{}={s}", l + 1)).collect();
                format!("ChainForm: {}", sets.join(", "))
            }
            Classification::NotChainStructured { violation } => {
                format!("NotChainStructured: {violation}")
            }
        }
    }

    /// Coefficient listing, e.g. `a_∅=0 a_1=1 a_2=1 a_{1,2}=2`.
    pub fn coefficient_line(&self, lattice: &BoundedLattice) -> Option<String> {
        let (constant, weights, chain): (Element, &[Element], &[(Subset, Element)]) = match self {
            Classification::WeightedDisjunction { constant, weights } => (*constant, weights, &[]),
            Classification::ChainForm { constant, weights, chain } => (*constant, weights, chain),
            Classification::NotChainStructured { .. } => return None,
        };
        let mut parts = vec![format!("a_∅={}", lattice.format_element(constant))];
        parts.extend(
            weights.iter().enumerate().map(|(i, &a)| format!("a_{}={}", i + 1, lattice.format_element(a))),
        );
        parts.extend(chain.iter().map(|(s, a)| format!("a_{s}={}", lattice.format_element(*a))));
        Some(parts.join(" "))
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.headline())
    }
}

/// Classifies the function denoted by `p`; `p` is canonicalized first.
pub fn classify(p: &DnfPolynomial) -> Classification {
    let canon = p.canonicalize();
    let l = canon.lattice();
    let n = canon.arity();
    let constant = canon.coefficient(Subset::EMPTY);
    let weights: Vec<Element> = (0..n).map(|i| canon.coefficient(Subset::singleton(i))).collect();

    // Already sorted by size, then lexicographically.
    let wide: Vec<(Subset, Element)> = canon
        .essential_terms()
        .into_iter()
        .filter(|t| t.size() >= 2)
        .map(|t| (t.subset, t.coefficient))
        .collect();
    if wide.is_empty() {
        return Classification::WeightedDisjunction { constant, weights };
    }
    for (k, &(a, _)) in wide.iter().enumerate() {
        if let Some(&(b, _)) = wide[k + 1..].iter().find(|(b, _)| !a.comparable(*b)) {
            return Classification::NotChainStructured { violation: ChainViolation::IncomparableTerms(a, b) };
        }
    }
    let base = wide[0].0;
    let dominated = |i: usize| {
        if l.is_chain() {
            l.leq(weights[i], l.join_all(base.members().map(|j| weights[j])))
        } else {
            base.members().any(|j| l.leq(weights[i], weights[j]))
        }
    };
    if let Some(i) = (0..n).filter(|&i| !base.contains(i)).find(|&i| !dominated(i)) {
        return Classification::NotChainStructured { violation: ChainViolation::UndominatedVariable(i) };
    }
    Classification::ChainForm { constant, weights, chain: wide }
}

/// Decides self-commutation over a chain from the structure alone.
pub fn is_self_commuting_fast(p: &DnfPolynomial) -> Result<(bool, Classification), StructureError> {
    if !p.lattice().is_chain() {
        return Err(StructureError::NotAChain(p.lattice().describe()));
    }
    let class = classify(p);
    Ok((class.is_structured(), class))
}

/// Evaluates both nested compositions of `p` on the `n × n` matrix `x`
/// (row-major) and compares each with its closed-form expansion
///
/// `a_∅ ∨ ⋁_{i,j} a_i a_j x_ij ∨ ⋁_ℓ a_{S_ℓ} ⋀_{i,j ∈ S_ℓ} x_ij`.
///
/// Returns whether both agree. `p` must be a weighted disjunction or in
/// chain form.
pub fn sufficiency_expansion_check(p: &DnfPolynomial, x: &[Element]) -> Result<bool, StructureError> {
    let n = p.arity();
    if x.len() != n * n {
        return Err(StructureError::ShapeMismatch { expected: n * n, got: x.len() });
    }
    let l = p.lattice();
    for &v in x {
        l.check(v).map_err(PolyError::from)?;
    }
    let (constant, weights, chain) = match classify(p) {
        Classification::WeightedDisjunction { constant, weights } => (constant, weights, Vec::new()),
        Classification::ChainForm { constant, weights, chain } => (constant, weights, chain),
        Classification::NotChainStructured { .. } => return Err(StructureError::NotStructured),
    };
    let at = |i: usize, j: usize| x[i * n + j];

    let rows: Vec<Element> = (0..n).map(|i| p.eval_unchecked(&x[i * n..(i + 1) * n])).collect();
    let row_nested = p.eval_unchecked(&rows);
    let cols: Vec<Element> =
        (0..n).map(|j| p.eval_unchecked(&(0..n).map(|i| at(i, j)).collect::<Vec<_>>())).collect();
    let column_nested = p.eval_unchecked(&cols);

    // The closed form is symmetric under transposition, so one expression
    // serves both sides; the transposed matrix gives the column-side form.
    let closed = |entry: &dyn Fn(usize, usize) -> Element| {
        let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        let linear = pairs.map(|(i, j)| l.meet(l.meet(weights[i], weights[j]), entry(i, j)));
        let chained = chain.iter().map(|&(s, a)| {
            let block = s.members().flat_map(|i| s.members().map(move |j| (i, j)));
            l.meet(a, l.meet_all(block.map(|(i, j)| entry(i, j))))
        });
        l.join(constant, l.join_all(linear.chain(chained)))
    };
    let rh_rows = closed(&|i, j| at(i, j));
    let rh_cols = closed(&|i, j| at(j, i));
    Ok(row_nested == rh_rows && column_nested == rh_cols)
}

/// Checks `a_ij ∧ a_jk ≤ a_i ∨ a_j ≤ a_ij` for all distinct `i, j, k` on
/// canonical coefficients. Self-commuting polynomials over chains satisfy it;
/// the caller is responsible for that precondition.
pub fn necessity_inequality_check(p: &DnfPolynomial) -> Result<bool, StructureError> {
    let n = p.arity();
    if n < 3 {
        return Err(StructureError::ArityTooSmall(n));
    }
    let canon = p.canonicalize();
    let l = canon.lattice();
    let single = |i: usize| canon.coefficient(Subset::singleton(i));
    let pair = |i: usize, j: usize| canon.coefficient(Subset::from_indices([i, j]));
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let middle = l.join(single(i), single(j));
            if !l.leq(middle, pair(i, j)) {
                return Ok(false);
            }
            for k in (0..n).filter(|&k| k != i && k != j) {
                if !l.leq(l.meet(pair(i, j), pair(j, k)), middle) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
