//! Truncation of the infinite level sums and products.
//!
//! Every sum here runs over levels `n = 1, 2, ...` whose terms shrink
//! monotonically once past the thermal scale, so a sum is declared converged
//! as soon as the last included term is below `rel_tol` of the running total.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub rel_tol: f64,
    pub max_terms: u64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { rel_tol: 1e-12, max_terms: 1_000_000 }
    }
}

impl TruncationPolicy {
    pub fn new(rel_tol: f64, max_terms: u64) -> Result<Self> {
        let policy = TruncationPolicy { rel_tol, max_terms };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::InvalidParameter { name: "rel_tol", value: self.rel_tol });
        }
        if self.max_terms < 10 {
            return Err(Error::InvalidParameter { name: "max_terms", value: self.max_terms as f64 });
        }
        Ok(())
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Outcome of a truncated series: the sums plus how many terms were used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum<const K: usize> {
    pub sums: [f64; K],
    pub terms: u64,
    /// Largest `|term| / |sum|` over the components at the last included index.
    pub last_relative: f64,
}

/// Sums `K` parallel series `Σ_{n ≥ 1} term(n)[k]`.
///
/// With `limit = Some(L)` the sum is finite and stops at `n = L` at the
/// latest; it may still stop earlier once every component has converged.
/// Without a limit, running into `policy.max_terms` is an error.
pub fn sum_levels<const K: usize, F>(policy: &TruncationPolicy, limit: Option<u64>, mut term: F) -> Result<SeriesSum<K>>
where
    F: FnMut(u64) -> [f64; K],
{
    let mut acc = [Compensated::default(); K];
    let mut n = 1u64;
    loop {
        let t = term(n);
        let mut last_relative = 0.0f64;
        for (a, &x) in acc.iter_mut().zip(t.iter()) {
            a.add(x);
            let s = a.value();
            let rel = if x == 0.0 { 0.0 } else { (x / s).abs() };
            last_relative = last_relative.max(rel);
        }
        let converged = last_relative < policy.rel_tol;
        let at_limit = limit.is_some_and(|l| n >= l);
        if converged || at_limit {
            return Ok(SeriesSum { sums: acc.map(|a| a.value()), terms: n, last_relative });
        }
        if n >= policy.max_terms {
            let k = t.iter().enumerate().fold(0, |best, (i, x)| if x.abs() > t[best].abs() { i } else { best });
            return Err(Error::Truncation { terms: n, last_term: t[k], partial_sum: acc[k].value() });
        }
        n += 1;
    }
}
