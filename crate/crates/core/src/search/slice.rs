use std::sync::atomic::Ordering;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::canon::{canonical_form_with, Certificate};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::clique::for_each_clique_of_size;
use super::neighborhood::{compatibility_graph, is_maximal, second_element_representatives};
use super::{finish, validate_parameters, with_pool, ClassRecord, EnumerationResult, Mode, Run, SearchConfig};

/// All classes of `(n,d)`-codes of exactly `size` elements.
///
/// Every such code is isometric to one containing `Id` and one of the
/// cycle-type representatives of the second element; for each of those the
/// cliques of the remaining `size - 2` elements are listed exhaustively and
/// bucketed by certificate.
pub fn size_slice(n: usize, d: usize, size: usize, cfg: &SearchConfig) -> Result<EnumerationResult> {
    validate_parameters(n, d)?;
    if size == 0 {
        return Err(Error::InvalidParameters("size must be at least 1".into()));
    }
    let run = Run::new(cfg);
    let found: DashMap<Certificate, ClassRecord> = DashMap::new();
    let id = Permutation::identity(n);
    let keep = |code: Code| {
        let form = canonical_form_with(&code, cfg.equivalence);
        if !found.contains_key(&form.certificate) {
            let maximal = is_maximal(&code);
            found.entry(form.certificate.clone()).or_insert_with(|| {
                run.classes.fetch_add(1, Ordering::Relaxed);
                ClassRecord {
                    code: form.canonical_code(&code),
                    certificate: form.certificate,
                    maximal,
                    stabilizer_order: form.group_size,
                }
            });
        }
    };
    let mode = Mode::SizeSlice { size };
    if size == 1 {
        keep(Code::identity(n, d)?);
        return finish(n, d, mode, cfg, &run, found.into_iter().map(|(_, r)| r));
    }
    let reps = second_element_representatives(n, d);
    with_pool(cfg.jobs, || {
        reps.par_iter().for_each(|psi| {
            let cand: Vec<Permutation> =
                Permutation::all(n).filter(|phi| phi.distance(&id) >= d && phi.distance(psi) >= d).collect();
            let g = compatibility_graph(&cand, d);
            if size == 2 {
                keep(Code::from_unsorted_unchecked(d, vec![id, *psi]));
                return;
            }
            // split on the first clique vertex so workers share the load
            (0..cand.len()).into_par_iter().for_each(|first| {
                let later: Vec<usize> = g.neighbors(first).filter(|&v| v > first).collect();
                let sub = g.induced(&later);
                for_each_clique_of_size(&sub, size - 3, |clique| {
                    if !run.tick(size) {
                        return false;
                    }
                    let mut els = vec![id, *psi, cand[first]];
                    els.extend(clique.iter().map(|&v| cand[later[v]]));
                    keep(Code::from_unsorted_unchecked(d, els));
                    true
                });
            });
        });
    })?;
    finish(n, d, mode, cfg, &run, found.into_iter().map(|(_, r)| r))
}
