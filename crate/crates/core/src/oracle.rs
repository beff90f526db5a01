//! The set-function oracle contract and oracle-call accounting.
//!
//! Objectives implement [`SetFunction`]. Algorithms never call an objective
//! directly; they go through an [`Oracle`], which validates element ids and
//! counts every query, or through a [`Cursor`], which tracks a growing set and
//! answers marginal-gain queries against it.
//!
//! Accounting rules:
//!
//! * [`Oracle::evaluate`] costs 1 call.
//! * [`Oracle::marginal`] costs 2 calls (`f(S + e)` and `f(S)`), or 1 when the
//!   objective offers an incremental [`MarginalState`]. Asking for the gain of
//!   a member of `S` costs nothing and returns 0.
//! * Opening a [`Cursor`] costs 1 call. Each [`Cursor::gain`] on a non-member
//!   costs 1. [`Cursor::insert`] is free with a fast path and costs 1
//!   otherwise (the new value is re-evaluated).

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::Result;
use crate::set::{ElementId, ElementSet, GroundSet};

/// A non-negative set function over `{0, .., n-1}`.
pub trait SetFunction: Send + Sync {
    fn ground_size(&self) -> usize;

    /// `f(S)`. Callers guarantee ids are in range and distinct.
    fn eval(&self, set: &[ElementId]) -> f64;

    /// Incremental state positioned at `set`, if the objective has one.
    fn state(&self, _set: &[ElementId]) -> Option<Box<dyn MarginalState + '_>> {
        None
    }

    /// Whether the function is known to be submodular. Lazy evaluation relies on it.
    fn is_submodular(&self) -> bool {
        true
    }
}

/// Objective-specific bookkeeping that answers `Δ(e|S)` without re-evaluating `f`.
///
/// Gains must agree with `f(S + e) - f(S)` to within 1e-9.
pub trait MarginalState: Send {
    fn value(&self) -> f64;

    fn gain(&self, e: ElementId) -> f64;

    fn insert(&mut self, e: ElementId);

    /// `f(S - x + e) - f(S)` for every member `x` of `S` (in the order of
    /// `members`), when the objective can compute them cheaply.
    fn swap_gains(&self, _e: ElementId, _members: &[ElementId]) -> Option<Vec<f64>> {
        None
    }
}

/// A counted handle on a set function.
///
/// Clones share the call counter; use [`Oracle::fresh`] for an independent tally.
#[derive(Clone)]
pub struct Oracle {
    f: Arc<dyn SetFunction>,
    ground: GroundSet,
    calls: Arc<AtomicU64>,
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("n", &self.ground.len())
            .field("calls", &self.calls())
            .finish()
    }
}

impl Oracle {
    pub fn new<F: SetFunction + 'static>(f: F) -> Self {
        Self::from_arc(Arc::new(f))
    }

    pub fn from_arc(f: Arc<dyn SetFunction>) -> Self {
        let n = f.ground_size().max(1);
        Oracle {
            ground: GroundSet::new(n).expect("n >= 1"),
            f,
            calls: Arc::new(AtomicU64::new(0)),
        }
    }

    /// Same function, new counter starting at zero.
    pub fn fresh(&self) -> Self {
        Oracle {
            f: Arc::clone(&self.f),
            ground: self.ground.clone(),
            calls: Arc::new(AtomicU64::new(0)),
        }
    }

    pub fn function(&self) -> &Arc<dyn SetFunction> {
        &self.f
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn is_submodular(&self) -> bool {
        self.f.is_submodular()
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset_calls(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    #[inline]
    pub(crate) fn charge(&self, n: u64) {
        self.calls.fetch_add(n, Ordering::Relaxed);
    }

    /// `f(S)`; one oracle call.
    pub fn evaluate(&self, s: &ElementSet) -> Result<f64> {
        s.validate(&self.ground)?;
        self.charge(1);
        Ok(self.f.eval(s.as_slice()))
    }

    /// `Δ(e|S) = f(S + e) - f(S)`.
    pub fn marginal(&self, e: ElementId, s: &ElementSet) -> Result<f64> {
        self.ground.check(e)?;
        s.validate(&self.ground)?;
        if s.contains(e) {
            return Ok(0.0);
        }
        if let Some(state) = self.f.state(s.as_slice()) {
            self.charge(1);
            return Ok(state.gain(e));
        }
        self.charge(2);
        let base = self.f.eval(s.as_slice());
        let mut with = s.as_slice().to_vec();
        with.push(e);
        Ok(self.f.eval(&with) - base)
    }

    /// Opens a cursor at `initial`; one oracle call.
    pub fn cursor(&self, initial: &ElementSet) -> Result<Cursor<'_>> {
        Cursor::new(self, initial)
    }
}

/// A set under construction together with its current value.
pub struct Cursor<'o> {
    oracle: &'o Oracle,
    members: ElementSet,
    value: f64,
    state: Option<Box<dyn MarginalState + 'o>>,
}

impl<'o> Cursor<'o> {
    pub fn new(oracle: &'o Oracle, initial: &ElementSet) -> Result<Self> {
        initial.validate(oracle.ground())?;
        oracle.charge(1);
        let state = oracle.f.state(initial.as_slice());
        let value = match &state {
            Some(s) => s.value(),
            None => oracle.f.eval(initial.as_slice()),
        };
        Ok(Cursor {
            oracle,
            members: initial.clone(),
            value,
            state,
        })
    }

    /// Independent copy positioned at the same set. Not charged: no new query is made.
    pub fn fork(&self) -> Cursor<'o> {
        Cursor {
            oracle: self.oracle,
            members: self.members.clone(),
            value: self.value,
            state: self.oracle.f.state(self.members.as_slice()),
        }
    }

    pub fn oracle(&self) -> &'o Oracle {
        self.oracle
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.members.contains(e)
    }

    pub fn has_fast_path(&self) -> bool {
        self.state.is_some()
    }

    /// `Δ(e|S)` for the current set. Members yield 0 without a call.
    pub fn gain(&self, e: ElementId) -> f64 {
        if self.members.contains(e) {
            return 0.0;
        }
        self.oracle.charge(1);
        match &self.state {
            Some(s) => s.gain(e),
            None => {
                let mut with = self.members.as_slice().to_vec();
                with.push(e);
                self.oracle.f.eval(&with) - self.value
            }
        }
    }

    pub fn insert(&mut self, e: ElementId) {
        if !self.members.insert(e) {
            return;
        }
        match &mut self.state {
            Some(s) => {
                s.insert(e);
                self.value = s.value();
            }
            None => {
                self.oracle.charge(1);
                self.value = self.oracle.f.eval(self.members.as_slice());
            }
        }
    }

    /// Replaces member `x` by `e`; one call.
    pub fn replace(&mut self, x: ElementId, e: ElementId) {
        self.members.remove(x);
        self.members.insert(e);
        self.oracle.charge(1);
        self.state = self.oracle.f.state(self.members.as_slice());
        self.value = match &self.state {
            Some(s) => s.value(),
            None => self.oracle.f.eval(self.members.as_slice()),
        };
    }

    /// `f(S - x + e) - f(S)` for every member `x`, in insertion order.
    pub fn swap_gains(&self, e: ElementId) -> Vec<f64> {
        if let Some(g) = self
            .state
            .as_ref()
            .and_then(|s| s.swap_gains(e, self.members.as_slice()))
        {
            self.oracle.charge(1);
            return g;
        }
        let members = self.members.as_slice();
        self.oracle.charge(members.len() as u64);
        let mut buf = Vec::with_capacity(members.len());
        members
            .iter()
            .map(|&x| {
                buf.clear();
                buf.extend(members.iter().copied().filter(|&m| m != x));
                if !self.members.contains(e) {
                    buf.push(e);
                }
                self.oracle.f.eval(&buf) - self.value
            })
            .collect()
    }

    pub fn into_members(self) -> ElementSet {
        self.members
    }
}
