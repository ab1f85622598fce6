//! Independent seeds evaluated in parallel (feature `parallel`) or in
//! sequence; results are always in seed order.

use super::generate::generate_config;
use super::pencil::PencilOptions;
use super::{welschinger_number, CountReport, EnumError};
use crate::scalars::FieldDescriptor;

#[derive(Clone, Debug)]
pub enum BatchOutcome {
    Accepted(Box<CountReport>),
    /// `NotGeneric`: the harness resamples.
    Rejected(String),
    Failed(EnumError),
}

#[derive(Clone, Debug)]
pub struct BatchRun {
    pub seed: u64,
    pub outcome: BatchOutcome,
}

fn run_one(f: FieldDescriptor, kind: &[usize], d: u32, seed: u64, opts: &PencilOptions) -> BatchRun {
    let opts = PencilOptions { seed, ..opts.clone() };
    let outcome = match generate_config(f, kind, d, seed).and_then(|cfg| welschinger_number(&cfg, d, &opts)) {
        Ok(r) => BatchOutcome::Accepted(Box::new(r)),
        Err(EnumError::NotGeneric(why)) => BatchOutcome::Rejected(why),
        Err(e) => BatchOutcome::Failed(e),
    };
    BatchRun { seed, outcome }
}

pub fn run_batch_sequential(f: FieldDescriptor, kind: &[usize], d: u32, seeds: &[u64], opts: &PencilOptions) -> Vec<BatchRun> {
    seeds.iter().map(|&s| run_one(f, kind, d, s, opts)).collect()
}

/// Thread count from `GW_WEL_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("GW_WEL_THREADS").ok()?.parse().ok().filter(|&n| n > 0)
}

#[cfg(feature = "parallel")]
pub fn run_batch_parallel(f: FieldDescriptor, kind: &[usize], d: u32, seeds: &[u64], opts: &PencilOptions) -> Vec<BatchRun> {
    use rayon::prelude::*;
    let work = || seeds.par_iter().map(|&s| run_one(f, kind, d, s, opts)).collect();
    match thread_cap().and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(work),
        None => work(),
    }
}

/// One run per seed, in seed order.
pub fn run_batch(f: FieldDescriptor, kind: &[usize], d: u32, seeds: &[u64], opts: &PencilOptions) -> Vec<BatchRun> {
    #[cfg(feature = "parallel")]
    {
        run_batch_parallel(f, kind, d, seeds, opts)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_batch_sequential(f, kind, d, seeds, opts)
    }
}
