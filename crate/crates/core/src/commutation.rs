//! Extensional operation tables and the brute-force commutation oracle.
//!
//! `f` (arity `n`) commutes with `g` (arity `m`) when, for every `n × m`
//! matrix `A` over the domain, applying `g` to each row and then `f` to the
//! results gives the same value as applying `f` to each column and then `g`.

use std::fmt;

use thiserror::Error;

use crate::lattice::Element;
use crate::polynomial::DnfPolynomial;

/// Default cap on table sizes and on matrices scanned per check.
pub const DEFAULT_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommuteError {
    #[error("operations live on different domains ({0} vs {1} elements)")]
    DomainMismatch(usize, usize),
    #[error("{what} needs {needed} entries, above the cap of {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u64 },
    #[error("malformed operation table: {0}")]
    Malformed(String),
    #[error("an operation family must not be empty")]
    EmptyFamily,
}

/// A finite operation `A^m → A` given by its full value table.
///
/// Entry order is lexicographic in the argument tuple with the first
/// argument most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationTable {
    domain: usize,
    arity: usize,
    values: Vec<u16>,
}

impl OperationTable {
    pub fn new(domain: usize, arity: usize, values: Vec<u16>) -> Result<Self, CommuteError> {
        if domain == 0 || arity == 0 {
            return Err(CommuteError::Malformed("domain and arity must be positive".into()));
        }
        let expected = checked_power(domain, arity, DEFAULT_CAP, "operation table")?;
        if values.len() != expected {
            return Err(CommuteError::Malformed(format!(
                "expected {expected} entries, got {}",
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v as usize >= domain) {
            return Err(CommuteError::Malformed(format!("entry {v} out of range")));
        }
        Ok(OperationTable { domain, arity, values })
    }

    /// Tabulates `op` over every argument tuple.
    pub fn from_fn(domain: usize, arity: usize, op: impl Fn(&[u16]) -> u16) -> Result<Self, CommuteError> {
        let size = checked_power(domain, arity, DEFAULT_CAP, "operation table")?;
        let mut args = vec![0u16; arity];
        let mut values = Vec::with_capacity(size);
        for _ in 0..size {
            values.push(op(&args));
            for slot in args.iter_mut().rev() {
                *slot += 1;
                if (*slot as usize) < domain {
                    break;
                }
                *slot = 0;
            }
        }
        Self::new(domain, arity, values)
    }

    /// The `i`-th projection (0-based).
    pub fn projection(domain: usize, arity: usize, i: usize) -> Result<Self, CommuteError> {
        if i >= arity {
            return Err(CommuteError::Malformed(format!("projection {i} of arity {arity}")));
        }
        Self::from_fn(domain, arity, |x| x[i])
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[u16] {
        &self.values
    }

    pub fn index_of(&self, args: &[u16]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.domain + a as usize)
    }

    pub fn apply(&self, args: &[u16]) -> u16 {
        debug_assert_eq!(args.len(), self.arity);
        self.values[self.index_of(args)]
    }
}

/// Tabulates a polynomial over its lattice.
pub fn table_of(p: &DnfPolynomial) -> Result<OperationTable, CommuteError> {
    table_of_with_cap(p, DEFAULT_CAP)
}

pub fn table_of_with_cap(p: &DnfPolynomial, cap: u64) -> Result<OperationTable, CommuteError> {
    let d = p.lattice().size();
    checked_power(d, p.arity(), cap, "operation table")?;
    let values = p.domain().map(|x| p.eval_unchecked(&x).0).collect();
    OperationTable::new(d, p.arity(), values)
}

/// A matrix at which the commutation identity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationWitness {
    pub rows: usize,
    pub cols: usize,
    /// Row-major `rows × cols` entries.
    pub matrix: Vec<Element>,
    /// `f(g(row_1), …, g(row_n))`.
    pub row_first: Element,
    /// `g(f(col_1), …, f(col_m))`.
    pub column_first: Element,
}

impl CommutationWitness {
    pub fn row(&self, i: usize) -> &[Element] {
        &self.matrix[i * self.cols..(i + 1) * self.cols]
    }

    /// Recomputes both sides of the identity on the stored matrix.
    pub fn replay(&self, f: &OperationTable, g: &OperationTable) -> (Element, Element) {
        let at = |i: usize, j: usize| self.matrix[i * self.cols + j].0;
        let row_values: Vec<u16> =
            (0..self.rows).map(|i| g.apply(&(0..self.cols).map(|j| at(i, j)).collect::<Vec<_>>())).collect();
        let col_values: Vec<u16> =
            (0..self.cols).map(|j| f.apply(&(0..self.rows).map(|i| at(i, j)).collect::<Vec<_>>())).collect();
        (Element(f.apply(&row_values)), Element(g.apply(&col_values)))
    }

    /// Rows as comma-separated element ids, one per line.
    pub fn matrix_lines(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect()
    }
}

impl fmt::Display for CommutationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.matrix_lines().into_iter().map(|r| format!("({r})")).collect();
        write!(
            f,
            "rows {}: row-first {} vs column-first {}",
            rows.join(","),
            self.row_first,
            self.column_first
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Commutation {
    Holds,
    Fails(CommutationWitness),
}

impl Commutation {
    pub fn holds(&self) -> bool {
        matches!(self, Commutation::Holds)
    }

    pub fn witness(&self) -> Option<&CommutationWitness> {
        match self {
            Commutation::Holds => None,
            Commutation::Fails(w) => Some(w),
        }
    }
}

/// Decides `f ⊥ g` by scanning every `n × m` matrix in row-major
/// lexicographic order; the first failing matrix is returned.
pub fn commute(f: &OperationTable, g: &OperationTable) -> Result<Commutation, CommuteError> {
    commute_with_cap(f, g, DEFAULT_CAP)
}

pub fn commute_with_cap(
    f: &OperationTable,
    g: &OperationTable,
    cap: u64,
) -> Result<Commutation, CommuteError> {
    if f.domain != g.domain {
        return Err(CommuteError::DomainMismatch(f.domain, g.domain));
    }
    checked_power(f.domain, f.arity * g.arity, cap, "commutation check")?;
    let mut scan = Scan::new(f, g);
    Ok(match scan.search(0) {
        None => Commutation::Holds,
        Some(()) => Commutation::Fails(scan.witness()),
    })
}

pub fn self_commuting(f: &OperationTable) -> Result<Commutation, CommuteError> {
    commute(f, f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyVerdict {
    Holds,
    /// Ordered pair of 0-based family indices `(i, j)` with `f_i ⊥ f_j` failing.
    Fails {
        first: usize,
        second: usize,
        witness: CommutationWitness,
    },
}

impl FamilyVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, FamilyVerdict::Holds)
    }
}

/// Checks `f_i ⊥ f_j` for every ordered pair, `i = j` included, in
/// lexicographic order of `(i, j)`.
pub fn strongly_bisymmetric(family: &[OperationTable]) -> Result<FamilyVerdict, CommuteError> {
    let Some(head) = family.first() else {
        return Err(CommuteError::EmptyFamily);
    };
    if let Some(bad) = family.iter().find(|t| t.domain != head.domain) {
        return Err(CommuteError::DomainMismatch(head.domain, bad.domain));
    }
    for (i, f) in family.iter().enumerate() {
        for (j, g) in family.iter().enumerate() {
            if let Commutation::Fails(witness) = commute(f, g)? {
                return Ok(FamilyVerdict::Fails { first: i, second: j, witness });
            }
        }
    }
    Ok(FamilyVerdict::Holds)
}

/// Depth-first scan over matrix rows. Row `i` is chosen at depth `i`; the
/// partial table indices of every column and of the outer `f` argument
/// tuple are carried down so each leaf costs `O(m)`.
struct Scan<'a> {
    f: &'a OperationTable,
    g: &'a OperationTable,
    n: usize,
    m: usize,
    // Digits of every row code, `m` per row.
    digits: Vec<u16>,
    chosen: Vec<usize>,
    // col_index[depth * m + j]: index prefix of column j after `depth` rows.
    col_index: Vec<usize>,
    // outer_index[depth]: index prefix of (g(row_0), .., g(row_{depth-1})).
    outer_index: Vec<usize>,
    found: Option<(u16, u16)>,
}

impl<'a> Scan<'a> {
    fn new(f: &'a OperationTable, g: &'a OperationTable) -> Self {
        let (n, m, d) = (f.arity, g.arity, f.domain);
        let rows = g.values.len();
        let mut digits = vec![0u16; rows * m];
        for r in 0..rows {
            let mut code = r;
            for j in (0..m).rev() {
                digits[r * m + j] = (code % d) as u16;
                code /= d;
            }
        }
        Scan {
            f,
            g,
            n,
            m,
            digits,
            chosen: vec![0; n],
            col_index: vec![0; (n + 1) * m],
            outer_index: vec![0; n + 1],
            found: None,
        }
    }

    fn search(&mut self, depth: usize) -> Option<()> {
        let (m, d) = (self.m, self.f.domain);
        if depth == self.n {
            let row_first = self.f.values[self.outer_index[depth]];
            let base = depth * m;
            let g_index = (0..m).fold(0, |acc, j| acc * d + self.f.values[self.col_index[base + j]] as usize);
            let column_first = self.g.values[g_index];
            if row_first != column_first {
                self.found = Some((row_first, column_first));
                return Some(());
            }
            return None;
        }
        for r in 0..self.g.values.len() {
            self.chosen[depth] = r;
            let (prev, next) = (depth * m, (depth + 1) * m);
            for j in 0..m {
                self.col_index[next + j] = self.col_index[prev + j] * d + self.digits[r * m + j] as usize;
            }
            self.outer_index[depth + 1] = self.outer_index[depth] * d + self.g.values[r] as usize;
            if self.search(depth + 1).is_some() {
                return Some(());
            }
        }
        None
    }

    fn witness(&self) -> CommutationWitness {
        let (row_first, column_first) = self.found.expect("witness requested without a failure");
        let matrix = self
            .chosen
            .iter()
            .flat_map(|&r| self.digits[r * self.m..(r + 1) * self.m].iter().map(|&v| Element(v)))
            .collect();
        CommutationWitness {
            rows: self.n,
            cols: self.m,
            matrix,
            row_first: Element(row_first),
            column_first: Element(column_first),
        }
    }
}

fn checked_power(base: usize, exp: usize, cap: u64, what: &'static str) -> Result<usize, CommuteError> {
    let needed = (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(CommuteError::CapExceeded { what, needed, cap });
    }
    Ok(needed as usize)
}
