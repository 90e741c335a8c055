use crate::canon::BitGraph;
use crate::code::{make_code, Code};
use crate::error::{Error, Result};
use crate::perm::{binomial, derangement_count, Permutation};

use super::clique;

/// `V_d(C)`: permutations at distance at least `d` from every element of
/// `C`, in lexicographic order.
pub fn vd_set(code: &Code) -> Vec<Permutation> {
    let d = code.min_distance();
    Permutation::all(code.degree()).filter(|phi| code.elements().iter().all(|psi| phi.distance(psi) >= d)).collect()
}

/// Candidates of `vd` that stay compatible after adding `phi`.
pub(crate) fn restrict(vd: &[Permutation], phi: &Permutation, d: usize) -> Vec<Permutation> {
    vd.iter().filter(|psi| psi.distance(phi) >= d).copied().collect()
}

/// `Σ_{k=d}^{n} C(n,k)·D_k`, the number of permutations at distance at
/// least `d` from the identity.
pub fn neighborhood_size(n: usize, d: usize) -> Result<u128> {
    if !(2..=n).contains(&d) || n > crate::perm::MAX_DEGREE {
        return Err(Error::InvalidParameters(format!("need 2 <= d <= n <= 16, got n={n} d={d}")));
    }
    Ok((d..=n).map(|k| binomial(n, k) * derangement_count(k)).sum())
}

/// A code is maximal iff it has no legal extension.
pub fn is_maximal(code: &Code) -> bool {
    let d = code.min_distance();
    !Permutation::all(code.degree()).any(|phi| code.elements().iter().all(|psi| phi.distance(psi) >= d))
}

/// One permutation per cycle type among `V_d({Id})`.
///
/// Conjugations fix `{Id}`, so every code containing `Id` and at least one
/// other element is isometric to a code containing `Id` and one of these.
pub fn second_element_representatives(n: usize, d: usize) -> Vec<Permutation> {
    let mut seen = std::collections::BTreeSet::new();
    let id = Permutation::identity(n);
    Permutation::all(n).filter(|phi| phi.distance(&id) >= d).filter(|phi| seen.insert(phi.cycle_type())).collect()
}

pub(crate) fn compatibility_graph(vertices: &[Permutation], d: usize) -> BitGraph {
    let mut g = BitGraph::new(vertices.len());
    for (i, a) in vertices.iter().enumerate() {
        for (j, b) in vertices.iter().enumerate().skip(i + 1) {
            if a.distance(b) >= d {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// A code of maximum size `μ(n,d)`, found by exact maximum-clique search
/// around the identity.
pub fn maximum_code(n: usize, d: usize) -> Result<Code> {
    super::validate_parameters(n, d)?;
    let id = Permutation::identity(n);
    let mut best = vec![id];
    for psi in second_element_representatives(n, d) {
        let cand: Vec<Permutation> =
            Permutation::all(n).filter(|phi| phi.distance(&id) >= d && phi.distance(&psi) >= d).collect();
        let g = compatibility_graph(&cand, d);
        // need strictly more than best.len() - 2 further elements to improve
        if let Some(found) = clique::max_clique(&g, (best.len() + 1).saturating_sub(2)) {
            if found.len() + 2 > best.len() {
                best = [id, psi].into_iter().chain(found.iter().map(|&v| cand[v])).collect();
            }
        }
    }
    make_code(d, best)
}

/// `μ(n,d)`.
pub fn max_code_size(n: usize, d: usize) -> Result<usize> {
    Ok(maximum_code(n, d)?.len())
}
