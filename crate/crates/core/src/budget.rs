//! Step and wall-clock budgets for Groebner computations.
//!
//! The kernel is `no_std`, so it cannot read a clock itself. Callers that
//! want wall-clock enforcement supply a [`Deadline`]; the kernel polls it at
//! S-pair granularity. Step counters double as deterministic telemetry: for
//! a fixed input and seed they are identical across runs and thread counts.

use crate::error::{Error, Result};
use alloc::format;
use alloc::string::String;
use core::cell::Cell;

/// Clock hook polled during long-running computations.
pub trait Deadline {
    /// True once the current Groebner call is out of time.
    fn expired(&self) -> bool;
    /// Called at the start of each Groebner call; per-call clocks restart
    /// here.
    fn reset(&self) {}
}

/// Budget handed down through a pipeline. One per thread of execution.
pub struct Budget<'a> {
    /// Optional wall-clock deadline, reset by `start_call`.
    pub deadline: Option<&'a dyn Deadline>,
    /// Hard cap on S-pairs per Groebner call; safety net against runaway
    /// computations when no deadline is supplied.
    pub max_pairs: u64,
    pairs_this_call: Cell<u64>,
    gb_calls: Cell<u64>,
    pairs_total: Cell<u64>,
    reductions: Cell<u64>,
}

impl<'a> Default for Budget<'a> {
    fn default() -> Self {
        Budget::new()
    }
}

impl<'a> Budget<'a> {
    pub fn new() -> Self {
        Budget {
            deadline: None,
            max_pairs: 2_000_000,
            pairs_this_call: Cell::new(0),
            gb_calls: Cell::new(0),
            pairs_total: Cell::new(0),
            reductions: Cell::new(0),
        }
    }

    pub fn with_deadline(deadline: &'a dyn Deadline) -> Self {
        let mut b = Budget::new();
        b.deadline = Some(deadline);
        b
    }

    /// Marks the start of one Groebner call and resets its per-call counter.
    pub fn start_call(&self) {
        self.gb_calls.set(self.gb_calls.get() + 1);
        self.pairs_this_call.set(0);
        if let Some(d) = self.deadline {
            d.reset();
        }
    }

    /// Charges one S-pair; errors once the call is over budget.
    pub fn tick_pair(&self, what: &str) -> Result<()> {
        self.pairs_this_call.set(self.pairs_this_call.get() + 1);
        self.pairs_total.set(self.pairs_total.get() + 1);
        if self.pairs_this_call.get() > self.max_pairs {
            return Err(Error::Resource {
                what: budget_note(what, self.pairs_this_call.get()),
            });
        }
        if let Some(d) = self.deadline {
            if d.expired() {
                return Err(Error::Resource {
                    what: budget_note(what, self.pairs_this_call.get()),
                });
            }
        }
        Ok(())
    }

    pub fn tick_reduction(&self) {
        self.reductions.set(self.reductions.get() + 1);
    }

    pub fn gb_calls(&self) -> u64 {
        self.gb_calls.get()
    }

    pub fn pairs_total(&self) -> u64 {
        self.pairs_total.get()
    }

    pub fn reductions(&self) -> u64 {
        self.reductions.get()
    }
}

fn budget_note(what: &str, pairs: u64) -> String {
    format!("{what} stopped after {pairs} S-pairs")
}
