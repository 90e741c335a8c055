//! Canonical augmentation.
//!
//! A node `C` extends by one representative `φ` per `Stab(C)`-orbit on its
//! candidate set. The child `K = C ∪ {φ}` is kept only when `φ` lies in the
//! `Aut(K)`-orbit of the canonically deleted element of `K` (the row with
//! the largest canonical label). Each class is then reached exactly once,
//! so no global table is needed; one is still kept to assert exactly that.

use std::sync::Mutex;

use dashmap::mapref::entry::Entry;
use dashmap::DashMap;
use rayon::prelude::*;

use crate::canon::{canonical_form_with, CanonicalForm, Certificate};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::invariants::occurrence_matrix;
use crate::perm::Permutation;

use super::neighborhood::{is_maximal, restrict, vd_set};
use super::{
    finish, validate_parameters, with_pool, Algorithm, ClassRecord, EnumerationResult, Mode, Run, SearchConfig,
};

/// What to generate: which candidates to allow, which nodes are dead, and
/// which nodes are results.
trait Target: Sync {
    fn candidates(&self, _code: &Code, vd: Vec<Permutation>) -> Vec<Permutation> {
        vd
    }
    fn feasible(&self, _code: &Code, _candidates: &[Permutation]) -> bool {
        true
    }
    /// Some(maximal) if `code` is to be recorded.
    fn record(&self, code: &Code, candidates: &[Permutation]) -> Option<bool>;
    fn terminal(&self, code: &Code) -> bool;
}

struct Census;

impl Target for Census {
    fn record(&self, _code: &Code, candidates: &[Permutation]) -> Option<bool> {
        Some(candidates.is_empty())
    }
    fn terminal(&self, _code: &Code) -> bool {
        false
    }
}

/// `r`-balanced codes: every symbol appears exactly `r` times per column.
struct Balanced {
    r: usize,
}

impl Target for Balanced {
    fn candidates(&self, code: &Code, vd: Vec<Permutation>) -> Vec<Permutation> {
        let n = code.degree();
        let occ = occurrence_matrix(code);
        vd.into_iter().filter(|phi| (0..n).all(|i| (occ.get(i, phi.image(i)) as usize) < self.r)).collect()
    }

    fn feasible(&self, code: &Code, candidates: &[Permutation]) -> bool {
        let n = code.degree();
        let missing = n * self.r - code.len();
        if candidates.len() < missing {
            return false;
        }
        // every cell still short of r needs enough candidates through it
        let occ = occurrence_matrix(code);
        let mut supply = vec![0usize; n * n];
        for phi in candidates {
            for i in 0..n {
                supply[i * n + phi.image(i)] += 1;
            }
        }
        (0..n * n).all(|c| self.r - occ.entries[c] as usize <= supply[c])
    }

    fn record(&self, code: &Code, _candidates: &[Permutation]) -> Option<bool> {
        (code.len() == code.degree() * self.r).then(|| is_maximal(code))
    }

    fn terminal(&self, code: &Code) -> bool {
        code.len() >= code.degree() * self.r
    }
}

struct Shared<'a, T: Target> {
    cfg: &'a SearchConfig,
    run: &'a Run,
    target: &'a T,
    found: DashMap<Certificate, ClassRecord>,
    failure: Mutex<Option<Error>>,
}

impl<T: Target> Shared<'_, T> {
    fn fail(&self, e: Error) {
        let mut slot = self.failure.lock().unwrap();
        if slot.is_none() {
            *slot = Some(e);
        }
    }
}

/// All classes reachable from `{Id}`; every class of every size, with
/// maximal ones flagged.
pub fn canonical_augmentation(n: usize, d: usize, cfg: &SearchConfig) -> Result<EnumerationResult> {
    run_target(n, d, cfg, &Census, Mode::Census { algorithm: Algorithm::CanonicalAugmentation })
}

/// All classes of `r`-balanced `(n,d)`-codes (size `n·r`).
pub fn enumerate_balanced(n: usize, d: usize, r: usize, cfg: &SearchConfig) -> Result<EnumerationResult> {
    if r == 0 {
        return Err(Error::InvalidParameters("r must be at least 1".into()));
    }
    run_target(n, d, cfg, &Balanced { r }, Mode::Balanced { r })
}

fn run_target<T: Target>(n: usize, d: usize, cfg: &SearchConfig, target: &T, mode: Mode) -> Result<EnumerationResult> {
    validate_parameters(n, d)?;
    let run = Run::new(cfg);
    let shared = Shared { cfg, run: &run, target, found: DashMap::new(), failure: Mutex::new(None) };
    let seed = Code::identity(n, d)?;
    let form = canonical_form_with(&seed, cfg.equivalence);
    let vd = vd_set(&seed);
    with_pool(cfg.jobs, || node(&seed, form, vd, &shared))?;
    if let Some(e) = shared.failure.into_inner().unwrap() {
        return Err(e);
    }
    finish(n, d, mode, cfg, &run, shared.found.into_iter().map(|(_, r)| r))
}

fn node<T: Target>(code: &Code, form: CanonicalForm, vd: Vec<Permutation>, shared: &Shared<T>) {
    if !shared.run.tick(code.len()) {
        return;
    }
    let candidates = shared.target.candidates(code, vd);
    if let Some(maximal) = shared.target.record(code, &candidates) {
        match shared.found.entry(form.certificate.clone()) {
            Entry::Occupied(_) => {
                shared.fail(Error::Internal(format!("class generated twice: {code:?}")));
                return;
            }
            Entry::Vacant(slot) => {
                slot.insert(ClassRecord {
                    code: form.canonical_code(code),
                    certificate: form.certificate.clone(),
                    maximal,
                    stabilizer_order: form.group_size,
                });
                shared.run.classes.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            }
        }
    }
    if candidates.is_empty() || shared.target.terminal(code) || !shared.target.feasible(code, &candidates) {
        return;
    }
    let reps = match orbit_representatives(code, &form, &candidates) {
        Ok(r) => r,
        Err(e) => return shared.fail(e),
    };
    let d = code.min_distance();
    reps.par_iter().for_each(|&k| {
        let phi = candidates[k];
        let child = code.extended_unchecked(phi);
        let child_form = canonical_form_with(&child, shared.cfg.equivalence);
        let orbits = child_form.row_orbits();
        let added = child.position(&phi).expect("added element is present");
        if orbits[added] == orbits[child_form.canonical_deletion()] {
            node(&child, child_form, restrict(&candidates, &phi, d), shared);
        }
    });
}

/// Smallest index of each `Stab(C)`-orbit on the sorted candidate list.
fn orbit_representatives(code: &Code, form: &CanonicalForm, candidates: &[Permutation]) -> Result<Vec<usize>> {
    let gens = form.stabilizer_generators(code)?;
    let m = candidates.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for t in &gens {
        for i in 0..m {
            let j = candidates
                .binary_search(&t.apply(&candidates[i]))
                .map_err(|_| Error::Internal(format!("stabilizer element {t} does not preserve the candidate set")))?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    Ok((0..m).filter(|&i| find(&mut parent, i) == i).collect())
}
