//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use latpoly::{BoundedLattice, DnfPolynomial, Element, Subset};

pub fn chain(k: usize) -> Arc<BoundedLattice> {
    Arc::new(BoundedLattice::chain(k).unwrap())
}

/// `x1 ∧ … ∧ xn` at the top coefficient: self-commuting, so the oracle
/// scans every matrix.
pub fn meet_all(l: Arc<BoundedLattice>, n: usize) -> DnfPolynomial {
    let top = l.top();
    DnfPolynomial::from_terms(l, n, [(Subset::full(n), top)]).unwrap()
}

/// The ternary median, which fails early.
pub fn median(l: Arc<BoundedLattice>) -> DnfPolynomial {
    let top = l.top();
    let terms = [[0, 1], [0, 2], [1, 2]].map(|s| (Subset::from_indices(s), top));
    DnfPolynomial::from_terms(l, 3, terms).unwrap()
}

/// Coefficients from a fixed pseudo-random pattern; not canonical.
pub fn scrambled(l: Arc<BoundedLattice>, n: usize) -> DnfPolynomial {
    let k = l.size() as u64;
    let coeffs = (0..1u64 << n).map(|m| Element(((m * 2654435761) >> 7) as u16 % k as u16)).collect();
    DnfPolynomial::new(l, n, coeffs).unwrap()
}
