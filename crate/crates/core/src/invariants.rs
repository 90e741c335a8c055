//! Isometry invariants that are cheap to compute but not complete: the
//! quotient-set pair, the cycle index (and the distance enumerator it
//! projects onto) and the occurrence matrix.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::perm::{partitions, CycleType, Permutation};

/// `Δ(C) = {φψ⁻¹}` and `Σ(C) = {φ⁻¹ψ}` over all ordered pairs, each kept
/// as a sorted set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPair {
    pub delta: Vec<Permutation>,
    pub sigma: Vec<Permutation>,
}

impl QuotientPair {
    pub fn degree(&self) -> usize {
        self.delta[0].degree()
    }
}

pub fn quotient_pair(code: &Code) -> QuotientPair {
    let els = code.elements();
    let inv: Vec<Permutation> = els.iter().map(|p| p.inverse()).collect();
    let mut delta = BTreeSet::new();
    let mut sigma = BTreeSet::new();
    for (a, ai) in els.iter().zip(&inv) {
        for (b, bi) in els.iter().zip(&inv) {
            delta.insert(a.compose(bi));
            sigma.insert(ai.compose(b));
        }
    }
    QuotientPair { delta: delta.into_iter().collect(), sigma: sigma.into_iter().collect() }
}

/// True iff some `α, β` conjugate the pair onto the other one, possibly
/// after swapping `Δ` and `Σ`.
pub fn quotient_pairs_equivalent(p1: &QuotientPair, p2: &QuotientPair) -> Result<bool> {
    if p1.degree() != p2.degree() {
        return Err(Error::DegreeMismatch { left: p1.degree(), right: p2.degree() });
    }
    Ok((set_conjugate(&p1.delta, &p2.delta) && set_conjugate(&p1.sigma, &p2.sigma))
        || (set_conjugate(&p1.delta, &p2.sigma) && set_conjugate(&p1.sigma, &p2.delta)))
}

fn type_histogram(set: &[Permutation]) -> BTreeMap<CycleType, usize> {
    let mut h = BTreeMap::new();
    for p in set {
        *h.entry(p.cycle_type()).or_insert(0) += 1;
    }
    h
}

fn conjugates_onto(alpha: &Permutation, from: &[Permutation], onto: &[Permutation]) -> bool {
    let alpha_inv = alpha.inverse();
    from.iter().all(|a| onto.binary_search(&alpha.compose(a).compose(&alpha_inv)).is_ok())
}

/// Whether `α A α⁻¹ = B` for some `α` (both sorted sets).
///
/// A pivot element of `A` with the largest support (rarest cycle type
/// among those) is sent to each element of `B` of the same cycle type, and
/// only the conjugators realizing that are tried.
pub fn set_conjugate(a: &[Permutation], b: &[Permutation]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let (ha, hb) = (type_histogram(a), type_histogram(b));
    if ha != hb {
        return false;
    }
    let pivot = a
        .iter()
        .max_by(|x, y| {
            let (tx, ty) = (x.cycle_type(), y.cycle_type());
            tx.support().cmp(&ty.support()).then(ha[&ty].cmp(&ha[&tx])).then(y.cmp(x))
        })
        .unwrap();
    let pivot_type = pivot.cycle_type();
    b.iter()
        .filter(|y| y.cycle_type() == pivot_type)
        .any(|y| conjugators(pivot, y).any(|alpha| conjugates_onto(&alpha, a, b)))
}

/// Full `Sym(n)` scan; the reference for [`set_conjugate`].
pub fn set_conjugate_bruteforce(a: &[Permutation], b: &[Permutation]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    match a.first() {
        None => true,
        Some(x) => Permutation::all(x.degree()).any(|alpha| conjugates_onto(&alpha, a, b)),
    }
}

/// Iterator over every `α` with `α x α⁻¹ = y`, assuming equal cycle types.
fn conjugators(x: &Permutation, y: &Permutation) -> impl Iterator<Item = Permutation> {
    let xc = x.cycles();
    let yc = y.cycles();
    let mut out = Vec::new();
    let mut used = vec![false; yc.len()];
    let mut images = vec![usize::MAX; x.degree()];
    fn rec(
        i: usize,
        xc: &[Vec<usize>],
        yc: &[Vec<usize>],
        used: &mut [bool],
        images: &mut [usize],
        out: &mut Vec<Permutation>,
    ) {
        if i == xc.len() {
            out.push(Permutation::from_zero_based(images));
            return;
        }
        let len = xc[i].len();
        for j in 0..yc.len() {
            if used[j] || yc[j].len() != len {
                continue;
            }
            used[j] = true;
            for rot in 0..len {
                for k in 0..len {
                    images[xc[i][k]] = yc[j][(k + rot) % len];
                }
                rec(i + 1, xc, yc, used, images, out);
            }
            used[j] = false;
        }
    }
    rec(0, &xc, &yc, &mut used, &mut images, &mut out);
    out.into_iter()
}

/// Class-wise counts `b_j` of ordered pairs `(φ, ψ)` with `φψ⁻¹` of cycle
/// type `j`, over all partitions of `n` in reverse-lexicographic order.
/// The cycle index polynomial is `Σ b_j x^j / code_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleIndexVector {
    pub code_size: usize,
    pub counts: Vec<(CycleType, u64)>,
}

impl CycleIndexVector {
    pub fn count(&self, ty: &CycleType) -> u64 {
        self.counts.iter().find(|(t, _)| t == ty).map_or(0, |(_, c)| *c)
    }

    /// Non-zero entries keyed by partition string (`"3+2"`).
    pub fn nonzero(&self) -> BTreeMap<String, u64> {
        self.counts.iter().filter(|(_, c)| *c > 0).map(|(t, c)| (t.to_string(), *c)).collect()
    }
}

pub fn cycle_index(code: &Code) -> CycleIndexVector {
    let n = code.degree();
    let parts = partitions(n);
    let slot: HashMap<CycleType, usize> = parts.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut counts = vec![0u64; parts.len()];
    let els = code.elements();
    let inv: Vec<Permutation> = els.iter().map(|p| p.inverse()).collect();
    for a in els {
        for bi in &inv {
            counts[slot[&a.compose(bi).cycle_type()]] += 1;
        }
    }
    CycleIndexVector { code_size: code.len(), counts: parts.into_iter().zip(counts).collect() }
}

/// `A[k]` = number of ordered pairs at distance `k`, `0 <= k <= n`.
pub fn distance_enumerator(code: &Code) -> Vec<u64> {
    let mut out = vec![0u64; code.degree() + 1];
    for a in code.elements() {
        for b in code.elements() {
            out[a.distance(b)] += 1;
        }
    }
    out
}

/// Projection of the cycle index onto fixed-point counts: a class with `f`
/// fixed points contributes to distance `n - f`.
pub fn distance_enumerator_from_cycle_index(ci: &CycleIndexVector) -> Vec<u64> {
    let n = ci.counts.first().map_or(0, |(t, _)| t.degree());
    let mut out = vec![0u64; n + 1];
    for (t, c) in &ci.counts {
        out[t.support()] += c;
    }
    out
}

/// `o[i][j]` = number of code elements mapping `i` to `j` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OccurrenceMatrix {
    pub degree: usize,
    pub entries: Vec<u32>,
}

impl OccurrenceMatrix {
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.degree + j]
    }

    /// Sorted multiset of all `n²` entries; this is the isometry invariant.
    pub fn multiset(&self) -> Vec<u32> {
        let mut v = self.entries.clone();
        v.sort_unstable();
        v
    }

    /// The set view `{o_ij}`.
    pub fn value_set(&self) -> BTreeSet<u32> {
        self.entries.iter().copied().collect()
    }
}

pub fn occurrence_matrix(code: &Code) -> OccurrenceMatrix {
    let n = code.degree();
    let mut entries = vec![0u32; n * n];
    for p in code.elements() {
        for i in 0..n {
            entries[i * n + p.image(i)] += 1;
        }
    }
    OccurrenceMatrix { degree: n, entries }
}

/// Whether every `o_ij` equals `r` (which forces `|C| = n·r`).
pub fn is_balanced(code: &Code, r: usize) -> bool {
    if r == 0 || code.len() != code.degree() * r {
        return false;
    }
    occurrence_matrix(code).entries.iter().all(|&o| o as usize == r)
}
