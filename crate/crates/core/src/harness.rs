//! Exhaustive checks over every polynomial of a given arity and lattice.
//!
//! Polynomials are enumerated through their Boolean restrictions: every
//! nondecreasing map `2^[n] → L` extends to exactly one polynomial. The maps
//! are produced by backtracking over the subsets of `[n]` taken by size, then
//! lexicographically, with coefficient choices in increasing id order.
//!
//! Per-polynomial work runs on a rayon pool; results are collected in
//! enumeration order, so reports do not depend on the worker count.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::commutation::{self, CommutationWitness, CommuteError};
use crate::lattice::{BoundedLattice, Element};
use crate::polynomial::{DnfPolynomial, PolyError, Subset, VariableMap};
use crate::structure::{classify, Classification};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("lattice {0} is not a chain; use the counterexample search instead")]
    NotAChain(String),
    #[error("lattice {0} is a chain; use verify_theorem instead")]
    IsAChain(String),
    #[error("lattice is not a bounded distributive lattice: {0}")]
    InvalidLattice(String),
    #[error("{0}")]
    CapExceeded(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Commute(#[from] CommuteError),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Size limits and parallelism for harness runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    pub max_arity: usize,
    pub max_lattice_size: usize,
    pub max_polynomials: u64,
    /// Matrices per oracle call.
    pub oracle_cap: u64,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            max_arity: 4,
            max_lattice_size: 4,
            max_polynomials: 1_000_000,
            oracle_cap: commutation::DEFAULT_CAP,
            jobs: 1,
        }
    }
}

impl HarnessConfig {
    pub fn with_jobs(self, jobs: usize) -> Self {
        HarnessConfig { jobs, ..self }
    }

    fn check_sizes(&self, n: usize, lattice: &BoundedLattice) -> Result<(), HarnessError> {
        if n == 0 || n > self.max_arity {
            return Err(HarnessError::CapExceeded(format!("arity {n} outside 1..={}", self.max_arity)));
        }
        if lattice.size() > self.max_lattice_size {
            return Err(HarnessError::CapExceeded(format!(
                "lattice of {} elements above the harness cap of {}",
                lattice.size(),
                self.max_lattice_size
            )));
        }
        if !lattice.is_distributive() {
            return Err(HarnessError::InvalidLattice(lattice.validate().to_string()));
        }
        let matrices = (lattice.size() as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
        if matrices > self.oracle_cap as u128 {
            return Err(HarnessError::CapExceeded(format!(
                "{matrices} matrices per oracle call above the cap of {}",
                self.oracle_cap
            )));
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool, HarnessError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| HarnessError::Pool(e.to_string()))
    }
}

/// Iterator over every nondecreasing map `2^[n] → L`, as coefficient
/// vectors indexed by subset bitmask.
pub struct MonotoneMaps {
    lattice: Arc<BoundedLattice>,
    order: Vec<Subset>,
    // lower_covers[p]: bitmasks of I \ {i} for the subset at order position p.
    lower_covers: Vec<Vec<usize>>,
    values: Vec<Element>,
    started: bool,
    done: bool,
}

impl MonotoneMaps {
    pub fn new(n: usize, lattice: Arc<BoundedLattice>) -> Self {
        let order = Subset::all_graded(n);
        let lower_covers = order.iter().map(|s| s.members().map(|i| s.remove(i).index()).collect()).collect();
        let values = vec![lattice.bottom(); 1 << n];
        MonotoneMaps { lattice, order, lower_covers, values, started: false, done: false }
    }

    /// Smallest id `>= from` that lies above every lower cover's value.
    fn next_choice(&self, pos: usize, from: usize) -> Option<Element> {
        let l = &*self.lattice;
        (from..l.size())
            .map(|id| Element(id as u16))
            .find(|&c| self.lower_covers[pos].iter().all(|&m| l.leq(self.values[m], c)))
    }

    fn fill_from(&mut self, start: usize) {
        for pos in start..self.order.len() {
            let c = self.next_choice(pos, 0).expect("top is always admissible");
            self.values[self.order[pos].index()] = c;
        }
    }
}

impl Iterator for MonotoneMaps {
    type Item = Vec<Element>;

    fn next(&mut self) -> Option<Vec<Element>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
            return Some(self.values.clone());
        }
        let mut pos = self.order.len();
        loop {
            if pos == 0 {
                self.done = true;
                return None;
            }
            pos -= 1;
            let current = self.values[self.order[pos].index()].id();
            if let Some(c) = self.next_choice(pos, current + 1) {
                self.values[self.order[pos].index()] = c;
                break;
            }
        }
        self.fill_from(pos + 1);
        Some(self.values.clone())
    }
}

/// Counts monotone maps, stopping once `limit` is exceeded.
pub fn count_monotone_maps(n: usize, lattice: Arc<BoundedLattice>, limit: u64) -> u64 {
    let mut count = 0;
    for _ in MonotoneMaps::new(n, lattice) {
        count += 1;
        if count > limit {
            break;
        }
    }
    count
}

/// Every polynomial of arity `n` over `lattice`, canonical, in enumeration order.
pub fn enumerate_polynomials(
    n: usize,
    lattice: Arc<BoundedLattice>,
    config: &HarnessConfig,
) -> Result<impl Iterator<Item = DnfPolynomial>, HarnessError> {
    config.check_sizes(n, &lattice)?;
    let count = count_monotone_maps(n, Arc::clone(&lattice), config.max_polynomials);
    if count > config.max_polynomials {
        return Err(HarnessError::CapExceeded(format!(
            "more than {} polynomials of arity {n} over {lattice}",
            config.max_polynomials
        )));
    }
    let l = Arc::clone(&lattice);
    Ok(MonotoneMaps::new(n, lattice).map(move |g| {
        DnfPolynomial::from_boolean_restriction(Arc::clone(&l), n, g).expect("enumerated maps are monotone")
    }))
}

/// Fast and oracle verdicts for one polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialVerdict {
    /// Canonical coefficients indexed by subset bitmask.
    pub coefficients: Vec<Element>,
    pub classification: Classification,
    /// Structural verdict: weighted disjunction or chain form.
    pub fast: bool,
    pub oracle: bool,
    pub witness: Option<CommutationWitness>,
}

impl PolynomialVerdict {
    fn evaluate(p: &DnfPolynomial, cap: u64) -> Result<Self, HarnessError> {
        let classification = classify(p);
        let table = commutation::table_of(p)?;
        let result = commutation::commute_with_cap(&table, &table, cap)?;
        Ok(PolynomialVerdict {
            coefficients: p.canonicalize().coefficients().to_vec(),
            fast: classification.is_structured(),
            oracle: result.holds(),
            witness: result.witness().cloned(),
            classification,
        })
    }

    pub fn agrees(&self) -> bool {
        self.fast == self.oracle
    }

    /// `coeffs=<ids in bitmask order> class=<name> fast=<bool> oracle=<bool>`.
    pub fn machine_line(&self) -> String {
        let coeffs: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        let mut line = format!(
            "coeffs={} class={} fast={} oracle={}",
            coeffs.join(","),
            self.classification.name(),
            self.fast,
            self.oracle
        );
        if let Some(w) = &self.witness {
            let _ = write!(line, " witness={}", w.matrix_lines().join(";"));
        }
        line
    }
}

fn evaluate_all(
    n: usize,
    lattice: &Arc<BoundedLattice>,
    config: &HarnessConfig,
) -> Result<Vec<PolynomialVerdict>, HarnessError> {
    let polys: Vec<DnfPolynomial> = enumerate_polynomials(n, Arc::clone(lattice), config)?.collect();
    let cap = config.oracle_cap;
    config.pool()?.install(|| {
        polys.par_iter().map(|p| PolynomialVerdict::evaluate(p, cap)).collect::<Result<Vec<_>, _>>()
    })
}

/// Outcome of checking the structural test against the oracle over a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub lattice: String,
    pub arity: usize,
    pub total: usize,
    pub self_commuting_fast: usize,
    pub self_commuting_oracle: usize,
    pub verdicts: Vec<PolynomialVerdict>,
    pub duration: Duration,
}

impl VerificationReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &PolynomialVerdict> {
        self.verdicts.iter().filter(|v| !v.agrees())
    }

    pub fn mismatch_count(&self) -> usize {
        self.mismatches().count()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "checked={} selfcommuting={} mismatches={}",
            self.total,
            self.self_commuting_oracle,
            self.mismatch_count()
        )
    }

    /// One line per polynomial then the summary; no timing, so identical
    /// runs render identically.
    pub fn machine_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("lattice={} arity={}", self.lattice, self.arity)];
        lines.extend(self.verdicts.iter().map(PolynomialVerdict::machine_line));
        lines.push(self.summary_line());
        lines
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lattice: {}", self.lattice);
        let _ = writeln!(out, "arity: {}", self.arity);
        let _ = writeln!(out, "polynomials: {}", self.total);
        let _ = writeln!(out, "self-commuting (structural): {}", self.self_commuting_fast);
        let _ = writeln!(out, "self-commuting (oracle): {}", self.self_commuting_oracle);
        let _ = writeln!(out, "mismatches: {}", self.mismatch_count());
        for m in self.mismatches() {
            let _ = writeln!(out, "  MISMATCH {}", m.machine_line());
        }
        let _ = writeln!(out, "duration: {:.3}s", self.duration.as_secs_f64());
        let _ = write!(out, "{}", self.summary_line());
        out
    }
}

/// Runs the structural test and the oracle on every polynomial of arity `n`
/// over the chain `lattice`.
pub fn verify_theorem(
    n: usize,
    lattice: Arc<BoundedLattice>,
    config: &HarnessConfig,
) -> Result<VerificationReport, HarnessError> {
    if !lattice.is_chain() {
        return Err(HarnessError::NotAChain(lattice.describe()));
    }
    let start = Instant::now();
    let verdicts = evaluate_all(n, &lattice, config)?;
    Ok(VerificationReport {
        lattice: lattice.describe(),
        arity: n,
        total: verdicts.len(),
        self_commuting_fast: verdicts.iter().filter(|v| v.fast).count(),
        self_commuting_oracle: verdicts.iter().filter(|v| v.oracle).count(),
        verdicts,
        duration: start.elapsed(),
    })
}

/// Outcome of the off-chain search.
///
/// `candidates` are self-commuting polynomials with neither shape: each one
/// would show that the shapes are not necessary off chains.
/// `sufficiency_violations` are structured polynomials the oracle rejects,
/// which cannot happen unless the implementation is wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub lattice: String,
    pub arity: usize,
    pub total: usize,
    pub structured: usize,
    pub sufficiency_confirmed: usize,
    pub self_commuting: usize,
    pub candidates: Vec<PolynomialVerdict>,
    pub sufficiency_violations: Vec<PolynomialVerdict>,
    pub duration: Duration,
}

impl SearchReport {
    pub fn summary_line(&self) -> String {
        format!(
            "checked={} selfcommuting={} structured={} sufficiency_confirmed={} sufficiency_violations={} candidates={}",
            self.total,
            self.self_commuting,
            self.structured,
            self.sufficiency_confirmed,
            self.sufficiency_violations.len(),
            self.candidates.len()
        )
    }

    pub fn machine_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("lattice={} arity={}", self.lattice, self.arity)];
        lines.extend(self.candidates.iter().map(|v| format!("candidate {}", v.machine_line())));
        lines.extend(
            self.sufficiency_violations.iter().map(|v| format!("sufficiency_violation {}", v.machine_line())),
        );
        lines.push(self.summary_line());
        lines
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lattice: {}", self.lattice);
        let _ = writeln!(out, "arity: {}", self.arity);
        let _ = writeln!(out, "polynomials: {}", self.total);
        let _ = writeln!(out, "self-commuting (oracle): {}", self.self_commuting);
        let _ = writeln!(
            out,
            "weighted disjunction or chain form: {} (oracle confirmed {})",
            self.structured, self.sufficiency_confirmed
        );
        if !self.sufficiency_violations.is_empty() {
            let _ = writeln!(
                out,
                "BUG: {} structured polynomials failed the oracle",
                self.sufficiency_violations.len()
            );
            for v in &self.sufficiency_violations {
                let _ = writeln!(out, "  {}", v.machine_line());
            }
        }
        let _ = writeln!(out, "self-commuting without either shape: {}", self.candidates.len());
        for v in &self.candidates {
            let _ = writeln!(out, "  {} ({})", v.machine_line(), v.classification.headline());
        }
        let _ = writeln!(out, "duration: {:.3}s", self.duration.as_secs_f64());
        let _ = write!(out, "{}", self.summary_line());
        out
    }
}

/// Looks for self-commuting polynomials over a non-chain lattice that are
/// neither weighted disjunctions nor in chain form, and confirms along the
/// way that every structured polynomial passes the oracle.
pub fn search_counterexample(
    n: usize,
    lattice: Arc<BoundedLattice>,
    config: &HarnessConfig,
) -> Result<SearchReport, HarnessError> {
    if !lattice.is_distributive() {
        return Err(HarnessError::InvalidLattice(lattice.validate().to_string()));
    }
    if lattice.is_chain() {
        return Err(HarnessError::IsAChain(lattice.describe()));
    }
    let start = Instant::now();
    let verdicts = evaluate_all(n, &lattice, config)?;
    let total = verdicts.len();
    let structured = verdicts.iter().filter(|v| v.fast).count();
    let sufficiency_confirmed = verdicts.iter().filter(|v| v.fast && v.oracle).count();
    let self_commuting = verdicts.iter().filter(|v| v.oracle).count();
    let (candidates, sufficiency_violations) =
        verdicts.into_iter().filter(|v| !v.agrees()).partition(|v| v.oracle);
    Ok(SearchReport {
        lattice: lattice.describe(),
        arity: n,
        total,
        structured,
        sufficiency_confirmed,
        self_commuting,
        candidates,
        sufficiency_violations,
        duration: start.elapsed(),
    })
}

/// Which (polynomial, map) pairs the minor-closure suite checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorSampling {
    /// Every self-commuting polynomial with every map `[n] → [n]`.
    Exhaustive,
    /// `polynomials` self-commuting polynomials drawn without replacement,
    /// each with `maps` random maps `[n] → [ν]`, `1 ≤ ν ≤ n`.
    Sampled { polynomials: usize, maps: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureFailure {
    pub coefficients: Vec<Element>,
    /// Rendered map or substitution that produced the failing operation.
    pub operation: String,
    pub witness: CommutationWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub polynomials: usize,
    pub checks: usize,
    pub failures: Vec<ClosureFailure>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn self_commuting_polynomials(
    n: usize,
    lattice: &Arc<BoundedLattice>,
    config: &HarnessConfig,
) -> Result<Vec<DnfPolynomial>, HarnessError> {
    let polys: Vec<DnfPolynomial> = enumerate_polynomials(n, Arc::clone(lattice), config)?.collect();
    let cap = config.oracle_cap;
    let keep = config.pool()?.install(|| {
        polys
            .par_iter()
            .map(|p| -> Result<bool, HarnessError> {
                let t = commutation::table_of(p)?;
                Ok(commutation::commute_with_cap(&t, &t, cap)?.holds())
            })
            .collect::<Result<Vec<bool>, _>>()
    })?;
    Ok(polys.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect())
}

fn check_closed(
    p: &DnfPolynomial,
    q: &DnfPolynomial,
    operation: String,
    cap: u64,
) -> Result<Option<ClosureFailure>, HarnessError> {
    let t = commutation::table_of(q)?;
    Ok(commutation::commute_with_cap(&t, &t, cap)?.witness().map(|w| ClosureFailure {
        coefficients: p.coefficients().to_vec(),
        operation,
        witness: w.clone(),
    }))
}

/// Checks that simple minors of self-commuting polynomials self-commute.
pub fn minor_closure_suite(
    n: usize,
    lattice: Arc<BoundedLattice>,
    sampling: MinorSampling,
    config: &HarnessConfig,
) -> Result<ClosureReport, HarnessError> {
    let mut polys = self_commuting_polynomials(n, &lattice, config)?;
    let jobs: Vec<(DnfPolynomial, VariableMap)> = match sampling {
        MinorSampling::Exhaustive => {
            polys.iter().flat_map(|p| VariableMap::all(n, n).map(move |m| (p.clone(), m))).collect()
        }
        MinorSampling::Sampled { polynomials, maps, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            polys.shuffle(&mut rng);
            polys.truncate(polynomials);
            let mut jobs = Vec::new();
            for p in &polys {
                for _ in 0..maps {
                    let target = rng.gen_range(1..=n);
                    let images = (0..n).map(|_| rng.gen_range(0..target)).collect();
                    jobs.push((p.clone(), VariableMap::new(images, target)?));
                }
            }
            jobs
        }
    };
    let cap = config.oracle_cap;
    let results = config.pool()?.install(|| {
        jobs.par_iter()
            .map(|(p, m)| check_closed(p, &p.simple_minor(m)?, format!("minor {m}"), cap))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(ClosureReport {
        polynomials: polys.len(),
        checks: jobs.len(),
        failures: results.into_iter().flatten().collect(),
    })
}

/// Checks that pinning one variable of a self-commuting polynomial to a
/// constant `c` with `f(c, …, c) = c` leaves a self-commuting polynomial.
pub fn constant_substitution_suite(
    n: usize,
    lattice: Arc<BoundedLattice>,
    config: &HarnessConfig,
) -> Result<ClosureReport, HarnessError> {
    if n < 2 {
        return Err(PolyError::Nullary.into());
    }
    let polys = self_commuting_polynomials(n, &lattice, config)?;
    let mut jobs = Vec::new();
    for p in &polys {
        for c in lattice.elements() {
            if p.eval_unchecked(&vec![c; n]) == c {
                jobs.extend((0..n).map(|i| (p, i, c)));
            }
        }
    }
    let cap = config.oracle_cap;
    let results = config.pool()?.install(|| {
        jobs.par_iter()
            .map(|&(p, i, c)| {
                let q = p.substitute_constant(i, c)?;
                check_closed(p, &q, format!("x{}:={}", i + 1, c), cap)
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(ClosureReport {
        polynomials: polys.len(),
        checks: jobs.len(),
        failures: results.into_iter().flatten().collect(),
    })
}
