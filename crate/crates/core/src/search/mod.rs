//! Generation of codes: extension sets, clique solvers and the isomorph-free
//! generators built on them.

mod augment;
pub mod clique;
mod genbylist;
mod neighborhood;
mod orbits;
mod slice;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

pub use augment::{canonical_augmentation, enumerate_balanced};
pub use genbylist::genbylist;
pub use neighborhood::{
    is_maximal, max_code_size, maximum_code, neighborhood_size, second_element_representatives, vd_set,
};
pub use orbits::{orbit_clique_search, orbit_graph, OrbitAction, OrbitGraph, OrbitSearchResult, ORBIT_DEGREE_CAP};
pub use slice::size_slice;

use crate::canon::{Certificate, Equivalence};
use crate::code::Code;
use crate::error::{Error, Result};

/// Largest degree for which `Sym(n)` is listed explicitly.
pub const ENUMERATION_DEGREE_CAP: usize = 9;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Worker threads; 1 runs everything on a single thread.
    pub jobs: usize,
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
    pub equivalence: Equivalence,
    /// Stream progress lines to stderr.
    pub progress: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { jobs: 1, max_nodes: None, max_seconds: None, equivalence: Equivalence::Full, progress: false }
    }
}

impl SearchConfig {
    pub fn with_jobs(jobs: usize) -> Self {
        SearchConfig { jobs, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Backtracking with a global list of seen classes.
    List,
    /// Canonical augmentation.
    CanonicalAugmentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mode {
    Census { algorithm: Algorithm },
    Balanced { r: usize },
    SizeSlice { size: usize },
}

/// One isometry class.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    /// Canonical representative of the class.
    pub code: Code,
    pub certificate: Certificate,
    pub maximal: bool,
    pub stabilizer_order: u128,
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub degree: usize,
    pub min_distance: usize,
    pub mode: Mode,
    pub equivalence: Equivalence,
    /// Sorted by size, then certificate.
    pub classes: Vec<ClassRecord>,
    pub nodes: u64,
    pub wall_time: Duration,
}

impl EnumerationResult {
    pub fn total(&self) -> usize {
        self.classes.len()
    }

    pub fn maximal_count(&self) -> usize {
        self.classes.iter().filter(|c| c.maximal).count()
    }

    pub fn counts_by_size(&self) -> BTreeMap<usize, u64> {
        histogram(self.classes.iter())
    }

    pub fn maximal_counts_by_size(&self) -> BTreeMap<usize, u64> {
        histogram(self.classes.iter().filter(|c| c.maximal))
    }

    pub fn certificates(&self) -> BTreeSet<Certificate> {
        self.classes.iter().map(|c| c.certificate.clone()).collect()
    }

    /// Largest size among maximal classes.
    pub fn largest_maximal_size(&self) -> Option<usize> {
        self.classes.iter().filter(|c| c.maximal).map(|c| c.code.len()).max()
    }
}

fn histogram<'a>(it: impl Iterator<Item = &'a ClassRecord>) -> BTreeMap<usize, u64> {
    let mut h = BTreeMap::new();
    for c in it {
        *h.entry(c.code.len()).or_insert(0) += 1;
    }
    h
}

pub(crate) fn validate_parameters(n: usize, d: usize) -> Result<()> {
    if !(3..=ENUMERATION_DEGREE_CAP).contains(&n) {
        return Err(Error::InvalidParameters(format!("n={n} must lie in 3..={ENUMERATION_DEGREE_CAP}")));
    }
    if !(2..=n).contains(&d) {
        return Err(Error::InvalidParameters(format!("d={d} must lie in 2..={n}")));
    }
    Ok(())
}

/// Shared bookkeeping for one search run: node counting, resource caps and
/// progress reporting.
pub(crate) struct Run {
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
    progress: bool,
    started: Instant,
    nodes: AtomicU64,
    aborted: AtomicBool,
    last_report_ms: AtomicU64,
    pub classes: AtomicUsize,
}

const REPORT_INTERVAL_MS: u64 = 2000;

impl Run {
    pub fn new(cfg: &SearchConfig) -> Self {
        Run {
            max_nodes: cfg.max_nodes,
            max_seconds: cfg.max_seconds,
            progress: cfg.progress,
            started: Instant::now(),
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
            last_report_ms: AtomicU64::new(0),
            classes: AtomicUsize::new(0),
        }
    }

    /// Counts one search node; false once a cap has been hit.
    pub fn tick(&self, depth: usize) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.max_nodes.is_some_and(|m| n > m) {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        if n.is_multiple_of(256) {
            let elapsed = self.started.elapsed();
            if self.max_seconds.is_some_and(|s| elapsed.as_secs_f64() > s) {
                self.aborted.store(true, Ordering::Relaxed);
                return false;
            }
            if self.progress {
                let ms = elapsed.as_millis() as u64;
                let last = self.last_report_ms.load(Ordering::Relaxed);
                if ms >= last + REPORT_INTERVAL_MS
                    && self.last_report_ms.compare_exchange(last, ms, Ordering::Relaxed, Ordering::Relaxed).is_ok()
                {
                    eprintln!(
                        "[{:>7.1}s] classes {} nodes {} depth {}",
                        elapsed.as_secs_f64(),
                        self.classes.load(Ordering::Relaxed),
                        n,
                        depth
                    );
                }
            }
        }
        true
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }

    pub fn check(&self) -> Result<()> {
        if self.aborted.load(Ordering::Relaxed) {
            return Err(Error::ResourceCap {
                nodes: self.nodes(),
                seconds: self.elapsed().as_secs_f64(),
                classes: self.classes.load(Ordering::Relaxed),
            });
        }
        Ok(())
    }
}

pub(crate) fn with_pool<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    if jobs == 0 {
        return Err(Error::InvalidParameters("jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

pub(crate) fn finish(
    n: usize,
    d: usize,
    mode: Mode,
    cfg: &SearchConfig,
    run: &Run,
    records: impl IntoIterator<Item = ClassRecord>,
) -> Result<EnumerationResult> {
    run.check()?;
    let mut classes: Vec<ClassRecord> = records.into_iter().collect();
    classes.sort_by(|a, b| (a.code.len(), &a.certificate).cmp(&(b.code.len(), &b.certificate)));
    Ok(EnumerationResult {
        degree: n,
        min_distance: d,
        mode,
        equivalence: cfg.equivalence,
        classes,
        nodes: run.nodes(),
        wall_time: run.elapsed(),
    })
}
