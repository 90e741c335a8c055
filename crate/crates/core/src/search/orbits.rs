//! Codes built as unions of orbits of a permutation group acting on
//! `Sym(n)`, found by weighted clique search on the orbit graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::BitGraph;
use crate::code::{make_code, Code};
use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::clique::max_weight_clique;

/// Largest degree for which the orbit graph is built.
pub const ORBIT_DEGREE_CAP: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitAction {
    /// `φ ↦ βφ`
    #[default]
    Left,
    /// `φ ↦ βφβ⁻¹`
    Conjugation,
}

impl OrbitAction {
    fn act(self, beta: &Permutation, phi: &Permutation) -> Permutation {
        match self {
            OrbitAction::Left => beta.compose(phi),
            OrbitAction::Conjugation => beta.compose(phi).compose(&beta.inverse()),
        }
    }
}

/// Orbits of a group action on `Sym(n)` and their compatibility relation.
#[derive(Clone, Debug)]
pub struct OrbitGraph {
    /// Orbits in order of their smallest element; each sorted.
    pub orbits: Vec<Vec<Permutation>>,
    /// Whether the orbit on its own is a code of minimum distance `d`.
    pub admissible: Vec<bool>,
    /// Pairs `(i, j)`, `i < j`, of admissible orbits whose union is a code.
    pub edges: Vec<(usize, usize)>,
}

/// Outcome of [`orbit_clique_search`].
#[derive(Clone, Debug)]
pub struct OrbitSearchResult {
    /// `None` when no orbit is admissible.
    pub code: Option<Code>,
    /// Indices of the chosen orbits.
    pub chosen: Vec<usize>,
    pub orbit_count: usize,
    pub admissible_count: usize,
    pub edge_count: usize,
    /// False if the node cap cut the clique search short.
    pub optimal: bool,
    pub nodes: u64,
}

fn min_distance_within(set: &[Permutation]) -> Option<usize> {
    let mut best = None;
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            let d = a.distance(b);
            best = Some(best.map_or(d, |x: usize| x.min(d)));
        }
    }
    best
}

fn far_apart(a: &[Permutation], b: &[Permutation], d: usize) -> bool {
    a.iter().all(|x| b.iter().all(|y| x.distance(y) >= d))
}

fn check_generators(n: usize, d: usize, generators: &[Permutation]) -> Result<()> {
    if !(3..=ORBIT_DEGREE_CAP).contains(&n) {
        return Err(Error::InvalidParameters(format!("n={n} must lie in 3..={ORBIT_DEGREE_CAP}")));
    }
    if !(2..=n).contains(&d) {
        return Err(Error::InvalidParameters(format!("d={d} must lie in 2..={n}")));
    }
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch { left: n, right: g.degree() });
    }
    Ok(())
}

/// Builds the orbit graph of the group generated by `generators`.
pub fn orbit_graph(n: usize, d: usize, generators: &[Permutation], action: OrbitAction) -> Result<OrbitGraph> {
    check_generators(n, d, generators)?;
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let index: BTreeMap<Permutation, usize> = all.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut orbit_of = vec![usize::MAX; all.len()];
    let mut orbits = Vec::new();
    for start in 0..all.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut members = vec![all[start]];
        let mut k = 0;
        while k < members.len() {
            let phi = members[k];
            k += 1;
            for g in generators {
                let img = action.act(g, &phi);
                let j = index[&img];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(img);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    let admissible: Vec<bool> = orbits.iter().map(|o| min_distance_within(o).is_none_or(|m| m >= d)).collect();
    let good: Vec<usize> = (0..orbits.len()).filter(|&i| admissible[i]).collect();
    let mut edges = Vec::new();
    for (a, &i) in good.iter().enumerate() {
        for &j in &good[a + 1..] {
            if far_apart(&orbits[i], &orbits[j], d) {
                edges.push((i, j));
            }
        }
    }
    Ok(OrbitGraph { orbits, admissible, edges })
}

/// Largest union of pairwise compatible admissible orbits.
pub fn orbit_clique_search(
    n: usize,
    d: usize,
    generators: &[Permutation],
    action: OrbitAction,
    max_nodes: Option<u64>,
) -> Result<OrbitSearchResult> {
    let og = orbit_graph(n, d, generators, action)?;
    let good: Vec<usize> = (0..og.orbits.len()).filter(|&i| og.admissible[i]).collect();
    let slot: BTreeMap<usize, usize> = good.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut g = BitGraph::new(good.len());
    for &(i, j) in &og.edges {
        g.add_edge(slot[&i], slot[&j]);
    }
    let weights: Vec<u64> = good.iter().map(|&i| og.orbits[i].len() as u64).collect();
    let mut result = OrbitSearchResult {
        code: None,
        chosen: Vec::new(),
        orbit_count: og.orbits.len(),
        admissible_count: good.len(),
        edge_count: og.edges.len(),
        optimal: true,
        nodes: 0,
    };
    if good.is_empty() {
        return Ok(result);
    }
    let best = max_weight_clique(&g, &weights, max_nodes);
    result.optimal = best.optimal;
    result.nodes = best.nodes;
    let mut chosen: Vec<usize> = best.vertices.iter().map(|&k| good[k]).collect();
    chosen.sort_unstable();
    if !chosen.is_empty() {
        result.code = Some(make_code(d, chosen.iter().flat_map(|&i| og.orbits[i].iter().copied()))?);
    }
    result.chosen = chosen;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Permutation {
        Permutation::from_zero_based(&(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>())
    }

    #[test]
    fn cyclic_left_orbits_rebuild_the_optimum() {
        let r = orbit_clique_search(5, 4, &[cycle(5)], OrbitAction::Left, None).unwrap();
        assert_eq!(r.orbit_count, 24);
        assert_eq!(r.admissible_count, 24);
        assert_eq!(r.code.unwrap().len(), 20);
        assert!(r.optimal);
    }

    #[test]
    fn orbits_partition_and_edges_are_sound() {
        for action in [OrbitAction::Left, OrbitAction::Conjugation] {
            let og = orbit_graph(4, 3, &[cycle(4)], action).unwrap();
            let total: usize = og.orbits.iter().map(Vec::len).sum();
            assert_eq!(total, 24);
            let mut all: Vec<Permutation> = og.orbits.concat();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), 24);
            for &(i, j) in &og.edges {
                assert!(i < j && og.admissible[i] && og.admissible[j]);
            }
        }
    }

    #[test]
    fn trivial_group_matches_mu() {
        let r = orbit_clique_search(4, 3, &[], OrbitAction::Left, None).unwrap();
        assert_eq!(r.orbit_count, 24);
        assert_eq!(r.code.unwrap().len(), super::super::max_code_size(4, 3).unwrap());
    }

    #[test]
    fn conjugation_orbit_of_identity_is_singleton() {
        let og = orbit_graph(5, 4, &[cycle(5)], OrbitAction::Conjugation).unwrap();
        assert_eq!(og.orbits[0], vec![Permutation::identity(5)]);
    }
}
