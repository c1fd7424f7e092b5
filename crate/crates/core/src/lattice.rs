//! Finite bounded distributive lattices.
//!
//! Elements are dense ids `0..size`. Chains and products of chains compute
//! their operations on the fly; lattices given by explicit tables store them.
//! For chains the id is the rank. For products the id is the mixed-radix
//! encoding of the coordinate tuple with the first factor most significant,
//! so `0` is the bottom, `size - 1` is the top, and id order is a linear
//! extension of the lattice order.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of lattice elements.
pub const DEFAULT_MAX_SIZE: usize = 64;

/// An element of a [`BoundedLattice`], addressed by its dense id.
///
/// The derived `Ord` compares ids, not lattice order; use
/// [`BoundedLattice::leq`] for the latter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub u16);

impl Element {
    pub fn id(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("element id {id} out of range for lattice of size {size}")]
    OutOfRange { id: usize, size: usize },
    #[error("lattice of {size} elements exceeds the size cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("chain factors must have at least 2 elements, got {0}")]
    FactorTooSmall(usize),
    #[error("a product needs at least one factor")]
    NoFactors,
    #[error("malformed operation table: {0}")]
    MalformedTable(String),
    #[error("coordinate tuple {coords:?} does not fit factors {factors:?}")]
    BadCoordinates { coords: Vec<usize>, factors: Vec<usize> },
    #[error("lattice fails validation: {0}")]
    Invalid(String),
}

/// The lattice axiom a table violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    MeetIdempotent,
    JoinIdempotent,
    MeetCommutative,
    JoinCommutative,
    MeetAssociative,
    JoinAssociative,
    Absorption,
    Distributivity,
    Bounds,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::MeetIdempotent => "meet idempotence",
            Axiom::JoinIdempotent => "join idempotence",
            Axiom::MeetCommutative => "meet commutativity",
            Axiom::JoinCommutative => "join commutativity",
            Axiom::MeetAssociative => "meet associativity",
            Axiom::JoinAssociative => "join associativity",
            Axiom::Absorption => "absorption",
            Axiom::Distributivity => "distributivity",
            Axiom::Bounds => "bounds",
        };
        f.write_str(name)
    }
}

/// One violated axiom together with the first offending elements found
/// (lexicographic scan). Unary and binary laws carry fewer than three ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Element>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.witness.iter().map(ToString::to_string).collect();
        write!(f, "{} fails at ({})", self.axiom, ids.join(","))
    }
}

/// Empty iff the lattice satisfies every checked axiom.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Chain,
    Product { factors: Vec<usize>, strides: Vec<usize> },
    Table { meet: Vec<u16>, join: Vec<u16>, bounds: Option<(Element, Element)> },
}

/// A finite bounded lattice. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLattice {
    size: usize,
    kind: Kind,
    // Cached result of the full validation scan; always true for chains and
    // products.
    distributive: bool,
}

impl BoundedLattice {
    /// The chain `0 < 1 < ... < size-1`.
    pub fn chain(size: usize) -> Result<Self, LatticeError> {
        Self::chain_with_cap(size, DEFAULT_MAX_SIZE)
    }

    pub fn chain_with_cap(size: usize, cap: usize) -> Result<Self, LatticeError> {
        if size < 2 {
            return Err(LatticeError::FactorTooSmall(size));
        }
        if size > cap {
            return Err(LatticeError::TooLarge { size, cap });
        }
        Ok(BoundedLattice { size, kind: Kind::Chain, distributive: true })
    }

    /// Product of chains with coordinatewise operations. A single factor
    /// yields the chain itself.
    pub fn product(factors: &[usize]) -> Result<Self, LatticeError> {
        Self::product_with_cap(factors, DEFAULT_MAX_SIZE)
    }

    pub fn product_with_cap(factors: &[usize], cap: usize) -> Result<Self, LatticeError> {
        if factors.is_empty() {
            return Err(LatticeError::NoFactors);
        }
        if let Some(&bad) = factors.iter().find(|&&k| k < 2) {
            return Err(LatticeError::FactorTooSmall(bad));
        }
        let mut size: usize = 1;
        for &k in factors {
            size = size.saturating_mul(k);
            if size > cap {
                return Err(LatticeError::TooLarge { size, cap });
            }
        }
        if factors.len() == 1 {
            return Self::chain_with_cap(factors[0], cap);
        }
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len() - 1).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        Ok(BoundedLattice {
            size,
            kind: Kind::Product { factors: factors.to_vec(), strides },
            distributive: true,
        })
    }

    /// A lattice given by explicit `size × size` meet and join tables.
    ///
    /// Shape and range errors are rejected here. Axiom violations are not:
    /// the lattice is built, [`validate`](Self::validate) reports them, and
    /// polynomial construction over it is refused.
    pub fn from_tables(meet: Vec<Vec<usize>>, join: Vec<Vec<usize>>) -> Result<Self, LatticeError> {
        Self::from_tables_with_cap(meet, join, DEFAULT_MAX_SIZE)
    }

    pub fn from_tables_with_cap(
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<Self, LatticeError> {
        let size = meet.len();
        if size < 2 {
            return Err(LatticeError::MalformedTable(format!("need at least 2 elements, got {size}")));
        }
        if size > cap {
            return Err(LatticeError::TooLarge { size, cap });
        }
        let flatten = |name: &str, t: Vec<Vec<usize>>| -> Result<Vec<u16>, LatticeError> {
            if t.len() != size {
                return Err(LatticeError::MalformedTable(format!(
                    "{name} table has {} rows, expected {size}",
                    t.len()
                )));
            }
            let mut flat = Vec::with_capacity(size * size);
            for (r, row) in t.into_iter().enumerate() {
                if row.len() != size {
                    return Err(LatticeError::MalformedTable(format!(
                        "{name} table row {r} has {} entries, expected {size}",
                        row.len()
                    )));
                }
                for v in row {
                    if v >= size {
                        return Err(LatticeError::MalformedTable(format!(
                            "{name} table entry {v} out of range"
                        )));
                    }
                    flat.push(v as u16);
                }
            }
            Ok(flat)
        };
        let meet = flatten("meet", meet)?;
        let join = flatten("join", join)?;
        let mut lattice =
            BoundedLattice { size, kind: Kind::Table { meet, join, bounds: None }, distributive: false };
        let bounds = lattice.find_bounds();
        if let Kind::Table { bounds: b, .. } = &mut lattice.kind {
            *b = bounds;
        }
        lattice.distributive = lattice.validate().is_valid();
        Ok(lattice)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_product(&self) -> bool {
        matches!(self.kind, Kind::Product { .. })
    }

    /// Factor sizes for products, `[size]` for chains, `None` for tables.
    pub fn factors(&self) -> Option<Vec<usize>> {
        match &self.kind {
            Kind::Chain => Some(vec![self.size]),
            Kind::Product { factors, .. } => Some(factors.clone()),
            Kind::Table { .. } => None,
        }
    }

    /// True when the lattice passed validation (always for chains and products).
    pub fn is_distributive(&self) -> bool {
        self.distributive
    }

    pub fn element(&self, id: usize) -> Result<Element, LatticeError> {
        if id < self.size {
            Ok(Element(id as u16))
        } else {
            Err(LatticeError::OutOfRange { id, size: self.size })
        }
    }

    pub fn check(&self, a: Element) -> Result<Element, LatticeError> {
        self.element(a.id())
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size).map(|i| Element(i as u16))
    }

    /// Least element. For a table lacking one this returns id 0; such a
    /// table never validates.
    pub fn bottom(&self) -> Element {
        match &self.kind {
            Kind::Table { bounds: Some((b, _)), .. } => *b,
            _ => Element(0),
        }
    }

    pub fn top(&self) -> Element {
        match &self.kind {
            Kind::Table { bounds: Some((_, t)), .. } => *t,
            Kind::Table { bounds: None, .. } => Element(0),
            _ => Element((self.size - 1) as u16),
        }
    }

    #[inline]
    pub fn meet(&self, a: Element, b: Element) -> Element {
        debug_assert!(a.id() < self.size && b.id() < self.size);
        match &self.kind {
            Kind::Chain => a.min(b),
            Kind::Product { factors, strides } => {
                Element(self.coordinatewise(a.id(), b.id(), factors, strides, usize::min) as u16)
            }
            Kind::Table { meet, .. } => Element(meet[a.id() * self.size + b.id()]),
        }
    }

    #[inline]
    pub fn join(&self, a: Element, b: Element) -> Element {
        debug_assert!(a.id() < self.size && b.id() < self.size);
        match &self.kind {
            Kind::Chain => a.max(b),
            Kind::Product { factors, strides } => {
                Element(self.coordinatewise(a.id(), b.id(), factors, strides, usize::max) as u16)
            }
            Kind::Table { join, .. } => Element(join[a.id() * self.size + b.id()]),
        }
    }

    /// `a ≤ b` iff `a ∧ b = a`.
    #[inline]
    pub fn leq(&self, a: Element, b: Element) -> bool {
        match &self.kind {
            Kind::Chain => a <= b,
            _ => self.meet(a, b) == a,
        }
    }

    /// `a < b` in the lattice order: `a ≤ b` and `a ≠ b`.
    #[inline]
    pub fn lt(&self, a: Element, b: Element) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn try_meet(&self, a: Element, b: Element) -> Result<Element, LatticeError> {
        Ok(self.meet(self.check(a)?, self.check(b)?))
    }

    pub fn try_join(&self, a: Element, b: Element) -> Result<Element, LatticeError> {
        Ok(self.join(self.check(a)?, self.check(b)?))
    }

    pub fn try_leq(&self, a: Element, b: Element) -> Result<bool, LatticeError> {
        Ok(self.leq(self.check(a)?, self.check(b)?))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Element>) -> Element {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Element>) -> Element {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// True iff every pair of elements is comparable.
    pub fn is_chain(&self) -> bool {
        match self.kind {
            Kind::Chain => true,
            Kind::Product { .. } => false,
            Kind::Table { .. } => {
                self.elements().all(|a| self.elements().all(|b| self.leq(a, b) || self.leq(b, a)))
            }
        }
    }

    /// Coordinates of a product element; a chain element is its own single
    /// coordinate. `None` for table lattices.
    pub fn coordinates(&self, a: Element) -> Option<Vec<usize>> {
        match &self.kind {
            Kind::Chain => Some(vec![a.id()]),
            Kind::Product { factors, strides } => {
                Some(factors.iter().zip(strides).map(|(&k, &s)| (a.id() / s) % k).collect())
            }
            Kind::Table { .. } => None,
        }
    }

    pub fn from_coordinates(&self, coords: &[usize]) -> Result<Element, LatticeError> {
        let factors = self
            .factors()
            .ok_or_else(|| LatticeError::MalformedTable("table lattices have no coordinates".into()))?;
        if coords.len() != factors.len() || coords.iter().zip(&factors).any(|(&c, &k)| c >= k) {
            return Err(LatticeError::BadCoordinates { coords: coords.to_vec(), factors });
        }
        let id = coords.iter().zip(&factors).fold(0, |acc, (&c, &k)| acc * k + c);
        self.element(id)
    }

    /// Full-table scan of the lattice, absorption, distributivity and bound
    /// axioms. Each violated axiom is listed once with its first witness.
    pub fn validate(&self) -> ValidationReport {
        let elems: Vec<Element> = self.elements().collect();
        let mut violations = Vec::new();
        let mut first = |axiom: Axiom, found: Option<Vec<Element>>| {
            if let Some(witness) = found {
                violations.push(Violation { axiom, witness });
            }
        };
        let unary = |law: &dyn Fn(Element) -> bool| elems.iter().find(|&&a| !law(a)).map(|&a| vec![a]);
        let binary = |law: &dyn Fn(Element, Element) -> bool| {
            elems
                .iter()
                .flat_map(|&a| elems.iter().map(move |&b| (a, b)))
                .find(|&(a, b)| !law(a, b))
                .map(|(a, b)| vec![a, b])
        };
        let ternary = |law: &dyn Fn(Element, Element, Element) -> bool| {
            for &a in &elems {
                for &b in &elems {
                    for &c in &elems {
                        if !law(a, b, c) {
                            return Some(vec![a, b, c]);
                        }
                    }
                }
            }
            None
        };
        let m = |a, b| self.meet(a, b);
        let j = |a, b| self.join(a, b);

        first(Axiom::MeetIdempotent, unary(&|a| m(a, a) == a));
        first(Axiom::JoinIdempotent, unary(&|a| j(a, a) == a));
        first(Axiom::MeetCommutative, binary(&|a, b| m(a, b) == m(b, a)));
        first(Axiom::JoinCommutative, binary(&|a, b| j(a, b) == j(b, a)));
        first(Axiom::MeetAssociative, ternary(&|a, b, c| m(a, m(b, c)) == m(m(a, b), c)));
        first(Axiom::JoinAssociative, ternary(&|a, b, c| j(a, j(b, c)) == j(j(a, b), c)));
        first(Axiom::Absorption, binary(&|a, b| m(a, j(a, b)) == a && j(a, m(a, b)) == a));
        first(Axiom::Distributivity, ternary(&|a, b, c| m(a, j(b, c)) == j(m(a, b), m(a, c))));
        let bounds_ok = match &self.kind {
            Kind::Table { bounds, .. } => bounds.is_some(),
            _ => true,
        };
        if !bounds_ok {
            first(Axiom::Bounds, Some(Vec::new()));
        } else {
            let (bot, top) = (self.bottom(), self.top());
            first(Axiom::Bounds, unary(&|x| m(bot, x) == bot && j(top, x) == top));
        }
        ValidationReport { violations }
    }

    /// Human-readable description, e.g. `C_3`, `C_2×C_2`, `table(5)`.
    pub fn describe(&self) -> String {
        match &self.kind {
            Kind::Chain => format!("C_{}", self.size),
            Kind::Product { factors, .. } => {
                factors.iter().map(|k| format!("C_{k}")).collect::<Vec<_>>().join("×")
            }
            Kind::Table { .. } => format!("table({})", self.size),
        }
    }

    /// Renders an element: the id for chains and tables, the coordinate
    /// tuple `(c1,c2,...)` for products.
    pub fn format_element(&self, a: Element) -> String {
        match &self.kind {
            Kind::Product { .. } => {
                let coords = self.coordinates(a).unwrap_or_default();
                let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(","))
            }
            _ => a.to_string(),
        }
    }

    /// Row-major meet and join tables as nested vectors.
    pub fn tables(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let table = |op: &dyn Fn(Element, Element) -> Element| {
            self.elements().map(|a| self.elements().map(|b| op(a, b).id()).collect()).collect()
        };
        (table(&|a, b| self.meet(a, b)), table(&|a, b| self.join(a, b)))
    }

    fn coordinatewise(
        &self,
        a: usize,
        b: usize,
        factors: &[usize],
        strides: &[usize],
        op: fn(usize, usize) -> usize,
    ) -> usize {
        factors.iter().zip(strides).map(|(&k, &s)| op((a / s) % k, (b / s) % k) * s).sum()
    }

    fn find_bounds(&self) -> Option<(Element, Element)> {
        let Kind::Table { meet, join, .. } = &self.kind else {
            return None;
        };
        let n = self.size;
        let bottom = (0..n).find(|&b| (0..n).all(|x| meet[b * n + x] as usize == b))?;
        let top = (0..n).find(|&t| (0..n).all(|x| join[t * n + x] as usize == t))?;
        Some((Element(bottom as u16), Element(top as u16)))
    }
}

impl fmt::Display for BoundedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn e(i: u16) -> Element {
        Element(i)
    }

    #[test]
    fn chain_meet_join() {
        let c3 = BoundedLattice::chain(3).unwrap();
        assert_eq!(c3.meet(e(2), e(1)), e(1));
        assert_eq!(c3.join(e(2), e(1)), e(2));
        let c5 = BoundedLattice::chain(5).unwrap();
        assert_eq!(c5.meet(e(0), e(4)), e(0));
        assert_eq!(c5.join(e(0), e(4)), e(4));
        assert!(c3.leq(e(1), e(2)));
    }

    #[test]
    fn product_coordinatewise() {
        let b = BoundedLattice::product(&[2, 2]).unwrap();
        let x = b.from_coordinates(&[1, 0]).unwrap();
        let y = b.from_coordinates(&[0, 1]).unwrap();
        assert_eq!(b.coordinates(b.meet(x, y)).unwrap(), vec![0, 0]);
        assert_eq!(b.coordinates(b.join(x, y)).unwrap(), vec![1, 1]);
        assert!(!b.leq(x, y));
        assert!(!b.leq(y, x));
        assert_eq!(b.bottom(), e(0));
        assert_eq!(b.top(), e(3));
        assert_eq!(b.format_element(x), "(1,0)");
    }

    #[test]
    fn out_of_range_is_domain_error() {
        let c3 = BoundedLattice::chain(3).unwrap();
        assert_eq!(c3.try_meet(e(3), e(0)), Err(LatticeError::OutOfRange { id: 3, size: 3 }));
        assert!(c3.try_join(e(0), e(7)).is_err());
        assert!(c3.try_leq(e(0), e(2)).unwrap());
    }

    #[test]
    fn bottom_below_everything() {
        for l in [
            BoundedLattice::chain(4).unwrap(),
            BoundedLattice::product(&[3, 2]).unwrap(),
            BoundedLattice::product(&[2, 2, 2]).unwrap(),
        ] {
            for x in l.elements() {
                assert!(l.leq(l.bottom(), x));
                assert!(l.leq(x, l.top()));
            }
        }
    }

    #[test]
    fn single_factor_product_is_chain() {
        let l = BoundedLattice::product(&[2]).unwrap();
        assert!(l.is_chain());
        assert_eq!(l, BoundedLattice::chain(2).unwrap());
        assert_eq!(BoundedLattice::product(&[2, 2]).unwrap().size(), 4);
    }

    #[test]
    fn product_rejections() {
        assert_eq!(BoundedLattice::product(&[2, 1]), Err(LatticeError::FactorTooSmall(1)));
        assert_eq!(BoundedLattice::product(&[]), Err(LatticeError::NoFactors));
        assert!(matches!(
            BoundedLattice::product(&[4, 4, 4, 4]),
            Err(LatticeError::TooLarge { cap: 64, .. })
        ));
        assert!(BoundedLattice::product_with_cap(&[4, 4, 4, 4], 256).is_ok());
        assert!(BoundedLattice::chain(65).is_err());
    }

    /// Maximal chains by depth-first search over covering pairs.
    fn maximal_chains(l: &BoundedLattice) -> Vec<Vec<Element>> {
        let covers = |a: Element, b: Element| l.lt(a, b) && !l.elements().any(|z| l.lt(a, z) && l.lt(z, b));
        let mut out = Vec::new();
        let mut stack = vec![vec![l.bottom()]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            if last == l.top() {
                out.push(path);
                continue;
            }
            for z in l.elements().filter(|&z| covers(last, z)) {
                let mut next = path.clone();
                next.push(z);
                stack.push(next);
            }
        }
        out
    }

    #[test]
    fn product_3x2_has_two_maximal_chains_of_length_four() {
        let l = BoundedLattice::product(&[3, 2]).unwrap();
        assert_eq!(l.size(), 6);
        let chains = maximal_chains(&l);
        // 3 paths of 4 elements in a 3×2 grid: (3-1 + 2-1 choose 1) = 3.
        assert!(chains.iter().all(|c| c.len() == 4));
        assert_eq!(chains.len(), 3);
    }

    #[test]
    fn chains_and_products_validate() {
        assert!(BoundedLattice::chain(4).unwrap().validate().is_valid());
        assert!(BoundedLattice::product(&[3, 2]).unwrap().validate().is_valid());
        assert!(BoundedLattice::product(&[2, 2, 2]).unwrap().validate().is_valid());
    }

    #[test]
    fn pentagon_fails_distributivity_only() {
        let n5 = pentagon();
        let report = n5.validate();
        assert_eq!(report.violations.len(), 1, "{report}");
        let v = report.violation(Axiom::Distributivity).unwrap();
        let (a, b, c) = (v.witness[0], v.witness[1], v.witness[2]);
        assert_ne!(n5.meet(a, n5.join(b, c)), n5.join(n5.meet(a, b), n5.meet(a, c)));
        assert!(!n5.is_distributive());
        assert!(!n5.is_chain());
    }

    #[test]
    fn diamond_fails_distributivity() {
        let m3 = diamond();
        let report = m3.validate();
        assert!(report.violation(Axiom::Distributivity).is_some());
        assert!(!m3.is_distributive());
    }

    #[test]
    fn table_of_a_chain_is_a_chain() {
        let t = from_order(4, |x, y| x <= y);
        assert!(t.is_distributive());
        assert!(t.is_chain());
        assert_eq!(t.bottom(), e(0));
        assert_eq!(t.top(), e(3));
    }

    #[test]
    fn broken_tables_report_axioms() {
        // Commutative but "meet" is constant 0: not idempotent, no top.
        let n = 3;
        let meet = vec![vec![0; n]; n];
        let join = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        let l = BoundedLattice::from_tables(meet, join).unwrap();
        let report = l.validate();
        assert!(report.violation(Axiom::MeetIdempotent).is_some());
        assert!(report.violation(Axiom::Absorption).is_some());
        assert!(!l.is_distributive());
    }

    #[test]
    fn malformed_tables_rejected() {
        assert!(BoundedLattice::from_tables(vec![vec![0, 0]], vec![vec![0, 1]]).is_err());
        assert!(
            BoundedLattice::from_tables(vec![vec![0, 0], vec![0, 2]], vec![vec![0, 1], vec![1, 1]]).is_err()
        );
    }

    #[test]
    fn tables_roundtrip_through_from_tables() {
        let p = BoundedLattice::product(&[3, 2]).unwrap();
        let (meet, join) = p.tables();
        let t = BoundedLattice::from_tables(meet, join).unwrap();
        assert!(t.is_distributive());
        for a in p.elements() {
            for b in p.elements() {
                assert_eq!(p.meet(a, b), t.meet(a, b));
                assert_eq!(p.join(a, b), t.join(a, b));
            }
        }
    }
}
