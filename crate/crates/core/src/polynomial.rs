//! Lattice polynomial functions in disjunctive normal form.
//!
//! A polynomial of arity `n` over a bounded distributive lattice is stored as
//! one coefficient per subset `I ⊆ [n]`, and denotes
//! `x ↦ ⋁_I (a_I ∧ ⋀_{i∈I} x_i)` with the empty meet read as top.
//!
//! Variables are 0-based in the API (`0..arity`); [`Subset`] renders them
//! 1-based, as in `{1,3}`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{BoundedLattice, Element, LatticeError};

pub const MAX_ARITY: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("lattice is not a bounded distributive lattice: {0}")]
    InvalidLattice(String),
    #[error("arity must be between 1 and {MAX_ARITY}, got {0}")]
    BadArity(usize),
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("cannot identify variable {0} with itself")]
    SameVariable(usize),
    #[error("restriction is not nondecreasing: g({lower}) is not below g({upper})")]
    NotMonotone { lower: Subset, upper: Subset },
    #[error("subset {subset} is not contained in [{arity}]")]
    SubsetOutOfRange { subset: Subset, arity: usize },
    #[error("malformed variable map: {0}")]
    BadMap(String),
    #[error("substituting a constant into a unary polynomial would leave no variables")]
    Nullary,
    #[error("polynomials live over different lattices")]
    LatticeMismatch,
}

/// A subset of variable positions, as a bitmask (bit `i` is variable `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Subset {
        Subset(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn comparable(self, other: Subset) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    pub fn insert(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    /// Members in increasing order (0-based).
    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |&i| bits >> i & 1 == 1)
    }

    /// Size first, then lexicographic on the sorted member lists. This is a
    /// linear extension of inclusion.
    pub fn graded_cmp(self, other: Subset) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.members().cmp(other.members()))
    }

    /// All subsets of `[n]` in [`graded_cmp`](Self::graded_cmp) order.
    pub fn all_graded(n: usize) -> Vec<Subset> {
        let mut all: Vec<Subset> = (0..1u32 << n).map(Subset).collect();
        all.sort_by(|a, b| a.graded_cmp(*b));
        all
    }

    /// 1-based, comma-separated member list without braces: `"1,3"`, `""`.
    pub fn key(self) -> String {
        self.members().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

/// The `I`-th term `a_I ∧ ⋀_{i∈I} x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub subset: Subset,
    pub coefficient: Element,
}

impl Term {
    pub fn size(&self) -> usize {
        self.subset.len()
    }
}

/// A map `σ: [m] → [ν]` used to form simple minors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableMap {
    target: usize,
    images: Vec<usize>,
}

impl VariableMap {
    /// `images[i]` is `σ(i)`; every image must be below `target`.
    pub fn new(images: Vec<usize>, target: usize) -> Result<Self, PolyError> {
        if images.is_empty() || images.len() > MAX_ARITY {
            return Err(PolyError::BadMap(format!("source arity {} out of range", images.len())));
        }
        if target == 0 || target > MAX_ARITY {
            return Err(PolyError::BadMap(format!("target arity {target} out of range")));
        }
        if let Some(&bad) = images.iter().find(|&&v| v >= target) {
            return Err(PolyError::BadMap(format!("image {bad} not below target arity {target}")));
        }
        Ok(VariableMap { target, images })
    }

    pub fn identity(n: usize) -> Self {
        VariableMap { target: n, images: (0..n).collect() }
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &VariableMap) -> Result<VariableMap, PolyError> {
        if other.source() != self.target {
            return Err(PolyError::BadMap(format!(
                "cannot compose: target {} vs source {}",
                self.target,
                other.source()
            )));
        }
        Ok(VariableMap {
            target: other.target,
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    /// `{ i : σ(i) ∈ k }`.
    pub fn preimage(&self, k: Subset) -> Subset {
        Subset::from_indices((0..self.source()).filter(|&i| k.contains(self.images[i])))
    }

    /// Every map `[m] → [ν]`, in lexicographic order of the image lists.
    pub fn all(m: usize, target: usize) -> impl Iterator<Item = VariableMap> {
        let total = (target as u64).pow(m as u32);
        (0..total).map(move |mut code| {
            let mut images = vec![0; m];
            for slot in images.iter_mut().rev() {
                *slot = (code % target as u64) as usize;
                code /= target as u64;
            }
            VariableMap { target, images }
        })
    }
}

impl fmt::Display for VariableMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.images.iter().enumerate().map(|(i, &v)| format!("{}↦{}", i + 1, v + 1)).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// A lattice polynomial function in disjunctive normal form.
///
/// `PartialEq` compares representations; use [`equal`](Self::equal) for
/// equality of the functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfPolynomial {
    lattice: Arc<BoundedLattice>,
    arity: usize,
    coefficients: Vec<Element>,
    canonical: bool,
}

impl DnfPolynomial {
    /// Builds a polynomial from a dense coefficient vector indexed by subset
    /// bitmask (`coefficients.len() == 2^arity`).
    pub fn new(
        lattice: Arc<BoundedLattice>,
        arity: usize,
        coefficients: Vec<Element>,
    ) -> Result<Self, PolyError> {
        check_lattice(&lattice)?;
        check_arity(arity)?;
        if coefficients.len() != 1 << arity {
            return Err(PolyError::ArityMismatch { expected: 1 << arity, got: coefficients.len() });
        }
        for &c in &coefficients {
            lattice.check(c)?;
        }
        Ok(DnfPolynomial { lattice, arity, coefficients, canonical: false })
    }

    /// Builds a polynomial from a sparse list of terms; absent coefficients
    /// are bottom. Repeated subsets are joined.
    pub fn from_terms(
        lattice: Arc<BoundedLattice>,
        arity: usize,
        terms: impl IntoIterator<Item = (Subset, Element)>,
    ) -> Result<Self, PolyError> {
        check_lattice(&lattice)?;
        check_arity(arity)?;
        let mut coefficients = vec![lattice.bottom(); 1 << arity];
        for (subset, c) in terms {
            if !subset.fits(arity) {
                return Err(PolyError::SubsetOutOfRange { subset, arity });
            }
            lattice.check(c)?;
            let slot = &mut coefficients[subset.index()];
            *slot = lattice.join(*slot, c);
        }
        Ok(DnfPolynomial { lattice, arity, coefficients, canonical: false })
    }

    pub fn constant(lattice: Arc<BoundedLattice>, arity: usize, c: Element) -> Result<Self, PolyError> {
        Self::from_terms(lattice, arity, [(Subset::EMPTY, c)])
    }

    /// `x_i` as an `arity`-ary polynomial.
    pub fn projection(lattice: Arc<BoundedLattice>, arity: usize, i: usize) -> Result<Self, PolyError> {
        if i >= arity {
            return Err(PolyError::VariableOutOfRange { index: i, arity });
        }
        let top = lattice.top();
        Self::from_terms(lattice, arity, [(Subset::singleton(i), top)])
    }

    pub fn lattice(&self) -> &BoundedLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<BoundedLattice> {
        &self.lattice
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Dense coefficients indexed by subset bitmask.
    pub fn coefficients(&self) -> &[Element] {
        &self.coefficients
    }

    pub fn coefficient(&self, subset: Subset) -> Element {
        self.coefficients[subset.index()]
    }

    /// All `2^n` terms in bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.coefficients.iter().enumerate().map(|(i, &c)| Term { subset: Subset(i as u32), coefficient: c })
    }

    pub fn eval(&self, x: &[Element]) -> Result<Element, PolyError> {
        if x.len() != self.arity {
            return Err(PolyError::ArityMismatch { expected: self.arity, got: x.len() });
        }
        for &v in x {
            self.lattice.check(v)?;
        }
        Ok(self.eval_unchecked(x))
    }

    /// [`eval`](Self::eval) without argument validation.
    pub fn eval_unchecked(&self, x: &[Element]) -> Element {
        let l = &*self.lattice;
        let mut acc = l.bottom();
        for (mask, &a) in self.coefficients.iter().enumerate() {
            if l.leq(a, acc) {
                continue;
            }
            let term = Subset(mask as u32).members().fold(a, |m, i| l.meet(m, x[i]));
            acc = l.join(acc, term);
        }
        acc
    }

    /// Value at the characteristic vector `e_I`.
    pub fn eval_at(&self, subset: Subset) -> Element {
        self.eval_unchecked(&characteristic_vector(subset, self.arity, &self.lattice))
    }

    /// The canonical form: `a'_I = f(e_I)` for every `I`.
    ///
    /// `f(e_I)` is the join of `a_J` over `J ⊆ I`, so the coefficients are
    /// computed by a subset-join sweep rather than `2^n` evaluations.
    pub fn canonicalize(&self) -> DnfPolynomial {
        if self.canonical {
            return self.clone();
        }
        let l = &*self.lattice;
        let mut c = self.coefficients.clone();
        for i in 0..self.arity {
            let bit = 1 << i;
            for mask in 0..c.len() {
                if mask & bit != 0 {
                    c[mask] = l.join(c[mask], c[mask ^ bit]);
                }
            }
        }
        DnfPolynomial {
            lattice: Arc::clone(&self.lattice),
            arity: self.arity,
            coefficients: c,
            canonical: true,
        }
    }

    /// The unique polynomial extending a nondecreasing `g: 2^[n] → L`
    /// (indexed by subset bitmask). Rejects non-monotone `g` with a witness
    /// pair `I ⊂ J` where `g(I) ≰ g(J)`.
    pub fn from_boolean_restriction(
        lattice: Arc<BoundedLattice>,
        arity: usize,
        g: Vec<Element>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::new(lattice, arity, g)?;
        let l = &*p.lattice;
        for mask in 0..p.coefficients.len() {
            let lower = Subset(mask as u32);
            for i in (0..arity).filter(|&i| !lower.contains(i)) {
                let upper = lower.insert(i);
                if !l.leq(p.coefficients[lower.index()], p.coefficients[upper.index()]) {
                    return Err(PolyError::NotMonotone { lower, upper });
                }
            }
        }
        p.canonical = true;
        Ok(p)
    }

    /// The restriction `I ↦ f(e_I)`, indexed by subset bitmask.
    pub fn boolean_restriction(&self) -> Vec<Element> {
        (0..1u32 << self.arity).map(|m| self.eval_at(Subset(m))).collect()
    }

    /// Whether `x_j` is essential: some `J ∌ j` has `f(e_J) < f(e_{J∪{j}})`.
    pub fn essential_variable(&self, j: usize) -> Result<bool, PolyError> {
        if j >= self.arity {
            return Err(PolyError::VariableOutOfRange { index: j, arity: self.arity });
        }
        let canon = self.canonicalize();
        let l = &*self.lattice;
        Ok((0..1u32 << self.arity)
            .map(Subset)
            .filter(|s| !s.contains(j))
            .any(|s| l.lt(canon.coefficient(s), canon.coefficient(s.insert(j)))))
    }

    pub fn essential_variables(&self) -> Vec<usize> {
        (0..self.arity).filter(|&j| self.essential_variable(j).unwrap_or(false)).collect()
    }

    /// Terms `I ≠ ∅` of the canonical form with `a_I > ⋁_{J⊊I} a_J`, in
    /// [`Subset::graded_cmp`] order.
    ///
    /// The constant term is not listed; it is `coefficient(Subset::EMPTY)`
    /// of the canonical form.
    pub fn essential_terms(&self) -> Vec<Term> {
        let canon = self.canonicalize();
        let l = &*self.lattice;
        let mut out: Vec<Term> = canon
            .terms()
            .filter(|t| !t.subset.is_empty())
            .filter(|t| {
                // On canonical coefficients the join of proper subsets is the
                // join over the lower covers.
                let below = l.join_all(t.subset.members().map(|i| canon.coefficient(t.subset.remove(i))));
                l.lt(below, t.coefficient)
            })
            .collect();
        out.sort_by(|a, b| a.subset.graded_cmp(b.subset));
        out
    }

    /// The minor `(x_1..x_ν) ↦ f(x_σ(1), .., x_σ(m))`, in canonical form.
    pub fn simple_minor(&self, sigma: &VariableMap) -> Result<DnfPolynomial, PolyError> {
        if sigma.source() != self.arity {
            return Err(PolyError::BadMap(format!(
                "map has source arity {}, polynomial has arity {}",
                sigma.source(),
                self.arity
            )));
        }
        let canon = self.canonicalize();
        let g = (0..1u32 << sigma.target()).map(|k| canon.coefficient(sigma.preimage(Subset(k)))).collect();
        Self::from_boolean_restriction(Arc::clone(&self.lattice), sigma.target(), g)
    }

    /// `f_{i←j}`: replace `x_i` by `x_j`, keeping the arity.
    pub fn identify_variables(&self, i: usize, j: usize) -> Result<DnfPolynomial, PolyError> {
        for idx in [i, j] {
            if idx >= self.arity {
                return Err(PolyError::VariableOutOfRange { index: idx, arity: self.arity });
            }
        }
        if i == j {
            return Err(PolyError::SameVariable(i));
        }
        let images = (0..self.arity).map(|k| if k == i { j } else { k }).collect();
        self.simple_minor(&VariableMap::new(images, self.arity)?)
    }

    /// `f_c^i`: pin position `i` to `c`, leaving an `(n-1)`-ary polynomial.
    pub fn substitute_constant(&self, i: usize, c: Element) -> Result<DnfPolynomial, PolyError> {
        if self.arity == 1 {
            return Err(PolyError::Nullary);
        }
        if i >= self.arity {
            return Err(PolyError::VariableOutOfRange { index: i, arity: self.arity });
        }
        self.lattice.check(c)?;
        let m = self.arity - 1;
        let (bot, top) = (self.lattice.bottom(), self.lattice.top());
        let mut x = vec![bot; self.arity];
        let g = (0..1u32 << m)
            .map(|k| {
                let k = Subset(k);
                for (pos, slot) in x.iter_mut().enumerate() {
                    *slot = match pos.cmp(&i) {
                        Ordering::Less => {
                            if k.contains(pos) {
                                top
                            } else {
                                bot
                            }
                        }
                        Ordering::Equal => c,
                        Ordering::Greater => {
                            if k.contains(pos - 1) {
                                top
                            } else {
                                bot
                            }
                        }
                    };
                }
                self.eval_unchecked(&x)
            })
            .collect();
        Self::from_boolean_restriction(Arc::clone(&self.lattice), m, g)
    }

    /// Function equality, decided on canonical coefficients.
    pub fn equal(&self, other: &DnfPolynomial) -> Result<bool, PolyError> {
        if self.lattice != other.lattice {
            return Err(PolyError::LatticeMismatch);
        }
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch { expected: self.arity, got: other.arity });
        }
        Ok(self.canonicalize().coefficients == other.canonicalize().coefficients)
    }

    /// Every point of `L^n` in lexicographic order of element ids.
    pub fn domain(&self) -> impl Iterator<Item = Vec<Element>> {
        points(self.lattice.size(), self.arity)
    }
}

impl fmt::Display for DnfPolynomial {
    /// Nonbottom terms, e.g. `1 ∨ 2·x1 ∨ 3·x1x3`; `0` when all are bottom.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = &*self.lattice;
        let mut terms: Vec<Term> = self.terms().filter(|t| t.coefficient != l.bottom()).collect();
        terms.sort_by(|a, b| a.subset.graded_cmp(b.subset));
        if terms.is_empty() {
            return f.write_str(&l.format_element(l.bottom()));
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|t| {
                let vars: String = t.subset.members().map(|i| format!("x{}", i + 1)).collect();
                let c = l.format_element(t.coefficient);
                match (vars.is_empty(), t.coefficient == l.top()) {
                    (true, _) => c,
                    (false, true) => vars,
                    (false, false) => format!("{c}·{vars}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" ∨ "))
    }
}

/// `e_I`: top at positions in `I`, bottom elsewhere.
pub fn characteristic_vector(subset: Subset, n: usize, lattice: &BoundedLattice) -> Vec<Element> {
    (0..n).map(|i| if subset.contains(i) { lattice.top() } else { lattice.bottom() }).collect()
}

/// All tuples in `{0..size-1}^n`, lexicographic with the first position
/// most significant.
pub fn points(size: usize, n: usize) -> impl Iterator<Item = Vec<Element>> {
    let total = size.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut x = vec![Element(0); n];
        for slot in x.iter_mut().rev() {
            *slot = Element((code % size) as u16);
            code /= size;
        }
        x
    })
}

fn check_lattice(l: &BoundedLattice) -> Result<(), PolyError> {
    if l.is_distributive() {
        Ok(())
    } else {
        Err(PolyError::InvalidLattice(l.validate().to_string()))
    }
}

fn check_arity(n: usize) -> Result<(), PolyError> {
    if (1..=MAX_ARITY).contains(&n) {
        Ok(())
    } else {
        Err(PolyError::BadArity(n))
    }
}
