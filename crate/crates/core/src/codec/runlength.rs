//! `J` as a rewriting of partial quotients:
//! `[n0, n1, n2, ...] -> [1_{n0-1}, 2, 1_{n1-2}, 2, 1_{n2-2}, 2, ...]`
//! where `1_k` is a block of `k` ones, `1_0` is empty and
//! `[..., m, 1_{-1}, n, ...] = [..., m+n-1, ...]`.

use std::collections::{HashMap, VecDeque};

use crate::cf::{ContinuedFraction, TermSource, Terms};
use crate::error::{Error, Result};
use crate::int::{int, Int};

/// Input bits a stream may consume without producing an output term.
pub const DEFAULT_STALL_BITS: usize = 1 << 16;

#[derive(Clone, Debug)]
struct Rewriter<T> {
    index: usize,
    /// Last output term; a following `1_{-1}` can still merge into it.
    pending: Option<T>,
    merge: bool,
    out: VecDeque<T>,
}

impl<T: Int> Rewriter<T> {
    fn new() -> Self {
        Rewriter { index: 0, pending: None, merge: false, out: VecDeque::new() }
    }

    fn flush(&mut self) {
        if let Some(p) = self.pending.take() {
            self.out.push_back(p);
        }
    }

    fn push(&mut self, n: T) {
        let k = if self.index == 0 { n - T::one() } else { n - int::<T>(2) };
        self.index += 1;
        if k.is_zero() {
            // 1_0 is empty
        } else if k.is_negative() {
            if self.pending.is_none() {
                // Leading 1_{-1}: [1_{-1}, 2, ...] = [0, 1, ...].
                self.out.push_back(T::zero());
                self.pending = Some(T::zero());
            }
            self.merge = true;
        } else {
            self.flush();
            let mut ones = k - T::one();
            while ones.is_positive() {
                self.out.push_back(T::one());
                ones = ones - T::one();
            }
            self.pending = Some(T::one());
        }
        if self.merge {
            self.merge = false;
            let p = self.pending.take().expect("merge needs a pending term");
            self.pending = Some(p + T::one());
        } else {
            self.flush();
            self.pending = Some(int(2));
        }
    }

    /// The input ended: its last term is followed by an infinite one, whose
    /// block is an endless run of ones.
    fn finish(&mut self) {
        self.flush();
    }
}

/// Applies the rewriting. Finite input is read with an infinite final term
/// (the natural boundary string), so it yields a noble number. Periodic
/// input yields the exact periodic or finite image. Stream input yields a
/// stream that fails with `Undecided` if [`DEFAULT_STALL_BITS`] input bits
/// pass without an output term.
pub fn jimm_runlength<T: Int>(cf: &ContinuedFraction<T>) -> ContinuedFraction<T> {
    jimm_runlength_with_budget(cf, DEFAULT_STALL_BITS)
}

pub fn jimm_runlength_with_budget<T: Int>(cf: &ContinuedFraction<T>, stall_bits: usize) -> ContinuedFraction<T> {
    let out = match &cf.terms {
        Terms::Finite(terms) => {
            let mut rw = Rewriter::new();
            for t in terms {
                rw.push(t.clone());
            }
            rw.finish();
            ContinuedFraction::periodic(false, rw.out.into(), vec![T::one()])
                .expect("rewriting keeps terms valid")
        }
        Terms::Periodic { preperiod, period } => rewrite_periodic(preperiod, period),
        Terms::Stream(_) => ContinuedFraction::stream(
            false,
            RewriteStream { input: cf.iter(), rw: Rewriter::new(), finished: false, stall: 0, budget: stall_bits },
        ),
    };
    // J(-1/y) = -1/(1/J(y))
    let out = if cf.s_prefix { out.reciprocal_terms() } else { out };
    ContinuedFraction { s_prefix: cf.s_prefix, ..out }
}

fn rewrite_periodic<T: Int>(preperiod: &[T], period: &[T]) -> ContinuedFraction<T> {
    let mut rw = Rewriter::new();
    for t in preperiod.iter().chain(period) {
        rw.push(t.clone());
    }
    if period.iter().all(|t| t.is_one()) {
        // Every later 1_{-1} merges: the open term grows without bound, so
        // the image is the rational with the terms emitted so far.
        return ContinuedFraction::finite(false, rw.out.into()).expect("valid terms");
    }
    // Between passes over the period only the open term carries state.
    let mut seen: HashMap<Option<T>, usize> = HashMap::new();
    loop {
        if let Some(&start) = seen.get(&rw.pending) {
            let mut out: Vec<T> = rw.out.into();
            let cycle = out.split_off(start);
            return ContinuedFraction::periodic(false, out, cycle).expect("valid terms");
        }
        seen.insert(rw.pending.clone(), rw.out.len());
        for t in period {
            rw.push(t.clone());
        }
    }
}

struct RewriteStream<T> {
    input: Box<dyn TermSource<T>>,
    rw: Rewriter<T>,
    finished: bool,
    stall: usize,
    budget: usize,
}

impl<T: Int> Clone for RewriteStream<T> {
    fn clone(&self) -> Self {
        RewriteStream {
            input: self.input.clone(),
            rw: self.rw.clone(),
            finished: self.finished,
            stall: self.stall,
            budget: self.budget,
        }
    }
}

impl<T: Int> Iterator for RewriteStream<T> {
    type Item = Result<T>;

    fn next(&mut self) -> Option<Result<T>> {
        loop {
            if let Some(t) = self.rw.out.pop_front() {
                return Some(Ok(t));
            }
            if self.finished {
                return Some(Ok(T::one()));
            }
            match self.input.next() {
                None => {
                    self.rw.finish();
                    self.finished = true;
                }
                Some(Err(e)) => return Some(Err(e)),
                Some(Ok(n)) => {
                    self.stall = self.stall.saturating_add(n.to_usize().unwrap_or(usize::MAX));
                    if self.stall > self.budget {
                        return Some(Err(Error::Undecided { max_bits: self.budget }));
                    }
                    self.rw.push(n);
                    if !self.rw.out.is_empty() {
                        self.stall = 0;
                    }
                }
            }
        }
    }
}
