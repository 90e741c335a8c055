use dashmap::mapref::entry::Entry;
use dashmap::DashMap;
use rayon::prelude::*;

use crate::canon::{canonical_form_with, Certificate};
use crate::code::Code;
use crate::error::Result;
use crate::perm::Permutation;

use super::neighborhood::{restrict, vd_set};
use super::{
    finish, validate_parameters, with_pool, Algorithm, ClassRecord, EnumerationResult, Mode, Run, SearchConfig,
};

/// Depth-first extension from `{Id}`, keeping every class the first time
/// its certificate is seen. Returns every class of every size.
pub fn genbylist(n: usize, d: usize, cfg: &SearchConfig) -> Result<EnumerationResult> {
    validate_parameters(n, d)?;
    let run = Run::new(cfg);
    let seen: DashMap<Certificate, ClassRecord> = DashMap::new();
    let seed = Code::identity(n, d)?;
    let vd = vd_set(&seed);
    with_pool(cfg.jobs, || visit(&seed, &vd, cfg, &run, &seen))?;
    finish(n, d, Mode::Census { algorithm: Algorithm::List }, cfg, &run, seen.into_iter().map(|(_, r)| r))
}

fn visit(code: &Code, vd: &[Permutation], cfg: &SearchConfig, run: &Run, seen: &DashMap<Certificate, ClassRecord>) {
    if !run.tick(code.len()) {
        return;
    }
    let form = canonical_form_with(code, cfg.equivalence);
    let maximal = vd.is_empty();
    match seen.entry(form.certificate.clone()) {
        Entry::Occupied(_) => return,
        Entry::Vacant(slot) => {
            slot.insert(ClassRecord {
                code: form.canonical_code(code),
                certificate: form.certificate,
                maximal,
                stabilizer_order: form.group_size,
            });
        }
    }
    run.classes.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    if maximal {
        return;
    }
    let d = code.min_distance();
    vd.par_iter().for_each(|phi| {
        let child = code.extended_unchecked(*phi);
        let child_vd = restrict(vd, phi, d);
        visit(&child, &child_vd, cfg, run, seen);
    });
}
