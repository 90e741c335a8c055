//! Exact clique solvers: branch and bound with greedy-coloring bounds over
//! bitset candidate sets, vertices renumbered by descending degree.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::canon::BitGraph;

type Bits = Vec<u64>;

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[inline]
fn clear(bits: &mut [u64], v: usize) {
    bits[v >> 6] &= !(1 << (v & 63));
}

fn and(a: &[u64], b: &[u64]) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn is_empty(a: &[u64]) -> bool {
    a.iter().all(|&w| w == 0)
}

/// The graph with vertices renumbered by descending degree, plus the map
/// back to original ids.
struct Ordered {
    g: BitGraph,
    original: Vec<usize>,
}

impl Ordered {
    fn new(g: &BitGraph) -> Self {
        let mut original: Vec<usize> = (0..g.len()).collect();
        original.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut rank = vec![0; g.len()];
        for (k, &v) in original.iter().enumerate() {
            rank[v] = k;
        }
        Ordered { g: g.relabeled(&rank), original }
    }

    fn all(&self) -> Bits {
        let n = self.g.len();
        let mut bits = vec![0u64; self.g.words()];
        for v in 0..n {
            bits[v >> 6] |= 1 << (v & 63);
        }
        bits
    }

    /// Greedy sequential coloring of `cand`: vertices listed class by
    /// class, with the running color number of each.
    fn color(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = cand.to_vec();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut color = 0;
        while !is_empty(&uncolored) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                clear(&mut uncolored, v);
                clear(&mut q, v);
                for (w, nb) in q.iter_mut().zip(self.g.row(v)) {
                    *w &= !nb;
                }
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }
}

/// A maximum clique, provided its size is at least `at_least`.
pub fn max_clique(g: &BitGraph, at_least: usize) -> Option<Vec<usize>> {
    let o = Ordered::new(g);
    let mut best: Vec<usize> = Vec::new();
    let mut found = at_least == 0;
    let mut floor = at_least.saturating_sub(1);
    fn expand(
        o: &Ordered,
        cur: &mut Vec<usize>,
        mut cand: Bits,
        best: &mut Vec<usize>,
        floor: &mut usize,
        found: &mut bool,
    ) {
        let (order, colors) = o.color(&cand);
        for k in (0..order.len()).rev() {
            if cur.len() + colors[k] <= *floor {
                return;
            }
            let v = order[k];
            cur.push(v);
            let next = and(&cand, o.g.row(v));
            if is_empty(&next) {
                if cur.len() > *floor {
                    *best = cur.clone();
                    *floor = cur.len();
                    *found = true;
                }
            } else {
                expand(o, cur, next, best, floor, found);
            }
            cur.pop();
            clear(&mut cand, v);
        }
    }
    if g.is_empty() {
        return found.then(Vec::new);
    }
    expand(&o, &mut Vec::new(), o.all(), &mut best, &mut floor, &mut found);
    found.then(|| best.iter().map(|&v| o.original[v]).collect())
}

/// Calls `visit` once for every clique of exactly `size` vertices (original
/// vertex ids, ascending). `visit` returns false to stop early.
pub fn for_each_clique_of_size(g: &BitGraph, size: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let o = Ordered::new(g);
    let mut buf = Vec::with_capacity(size);
    fn rec(
        o: &Ordered,
        cur: &mut Vec<usize>,
        mut cand: Bits,
        size: usize,
        buf: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let (order, colors) = o.color(&cand);
        for k in (0..order.len()).rev() {
            if cur.len() + colors[k] < size {
                return true;
            }
            let v = order[k];
            cur.push(v);
            if cur.len() == size {
                buf.clear();
                buf.extend(cur.iter().map(|&x| o.original[x]));
                buf.sort_unstable();
                if !visit(buf) {
                    return false;
                }
            } else {
                let next = and(&cand, o.g.row(v));
                if !is_empty(&next) && !rec(o, cur, next, size, buf, visit) {
                    return false;
                }
            }
            cur.pop();
            clear(&mut cand, v);
        }
        true
    }
    if size == 0 {
        visit(&[]);
        return;
    }
    if g.is_empty() {
        return;
    }
    rec(&o, &mut Vec::new(), o.all(), size, &mut buf, &mut visit);
}

/// Outcome of a weighted clique search.
#[derive(Clone, Debug)]
pub struct WeightedClique {
    pub vertices: Vec<usize>,
    pub weight: u64,
    /// False if the node cap stopped the search before it was exhausted.
    pub optimal: bool,
    pub nodes: u64,
}

/// Maximum-weight clique with color-class weight bounds.
pub fn max_weight_clique(g: &BitGraph, weights: &[u64], max_nodes: Option<u64>) -> WeightedClique {
    let o = Ordered::new(g);
    let w: Vec<u64> = o.original.iter().map(|&v| weights[v]).collect();
    let nodes = AtomicU64::new(0);
    struct State<'a> {
        o: &'a Ordered,
        w: &'a [u64],
        best: Vec<usize>,
        best_weight: u64,
        nodes: &'a AtomicU64,
        max_nodes: Option<u64>,
        stopped: bool,
    }
    fn rec(s: &mut State, cur: &mut Vec<usize>, cur_weight: u64, mut cand: Bits) {
        if s.stopped {
            return;
        }
        let n = s.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if s.max_nodes.is_some_and(|m| n > m) {
            s.stopped = true;
            return;
        }
        let (order, colors) = s.o.color(&cand);
        // bound[k]: sum over color classes 1..=colors[k] of their heaviest vertex
        let classes = colors.last().copied().unwrap_or(0);
        let mut heaviest = vec![0u64; classes + 1];
        for (&v, &c) in order.iter().zip(&colors) {
            heaviest[c] = heaviest[c].max(s.w[v]);
        }
        let mut prefix = vec![0u64; classes + 1];
        for c in 1..=classes {
            prefix[c] = prefix[c - 1] + heaviest[c];
        }
        let bound: Vec<u64> = colors.iter().map(|&c| prefix[c]).collect();
        for k in (0..order.len()).rev() {
            if cur_weight + bound[k] <= s.best_weight {
                return;
            }
            let v = order[k];
            cur.push(v);
            let wv = cur_weight + s.w[v];
            let next = and(&cand, s.o.g.row(v));
            if wv > s.best_weight {
                s.best_weight = wv;
                s.best = cur.clone();
            }
            if !is_empty(&next) {
                rec(s, cur, wv, next);
            }
            cur.pop();
            clear(&mut cand, v);
            if s.stopped {
                return;
            }
        }
    }
    let mut state = State { o: &o, w: &w, best: Vec::new(), best_weight: 0, nodes: &nodes, max_nodes, stopped: false };
    if !g.is_empty() {
        rec(&mut state, &mut Vec::new(), 0, o.all());
    }
    let mut vertices: Vec<usize> = state.best.iter().map(|&v| o.original[v]).collect();
    vertices.sort_unstable();
    WeightedClique { vertices, weight: state.best_weight, optimal: !state.stopped, nodes: nodes.into_inner() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_graph(n: usize, p: f64, seed: u64) -> BitGraph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut g = BitGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    fn is_clique(g: &BitGraph, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
    }

    /// Subset enumeration oracle.
    fn brute_cliques(g: &BitGraph) -> Vec<Vec<usize>> {
        let n = g.len();
        (0u32..1 << n)
            .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
            .filter(|vs| is_clique(g, vs))
            .collect()
    }

    #[test]
    fn max_clique_matches_brute_force() {
        for seed in 0..20 {
            let g = random_graph(14, 0.5, seed);
            let all = brute_cliques(&g);
            let omega = all.iter().map(|c| c.len()).max().unwrap();
            let found = max_clique(&g, 0).unwrap();
            assert!(is_clique(&g, &found));
            assert_eq!(found.len(), omega, "seed {seed}");
            assert!(max_clique(&g, omega + 1).is_none());
            assert_eq!(max_clique(&g, omega).unwrap().len(), omega);
        }
    }

    #[test]
    fn fixed_size_enumeration_matches_brute_force() {
        for seed in 0..10 {
            let g = random_graph(13, 0.6, 100 + seed);
            let all = brute_cliques(&g);
            for size in 1..=6 {
                let mut expect: Vec<Vec<usize>> = all.iter().filter(|c| c.len() == size).cloned().collect();
                let mut got = Vec::new();
                for_each_clique_of_size(&g, size, |c| {
                    got.push(c.to_vec());
                    true
                });
                expect.sort();
                got.sort();
                assert_eq!(got, expect, "seed {seed} size {size}");
            }
        }
    }

    #[test]
    fn weighted_clique_matches_brute_force() {
        for seed in 0..15 {
            let g = random_graph(12, 0.5, 200 + seed);
            let weights: Vec<u64> = (0..12).map(|v| 1 + (v as u64 * 7 + seed) % 5).collect();
            let best = brute_cliques(&g).iter().map(|c| c.iter().map(|&v| weights[v]).sum::<u64>()).max().unwrap();
            let r = max_weight_clique(&g, &weights, None);
            assert!(r.optimal);
            assert!(is_clique(&g, &r.vertices));
            assert_eq!(r.weight, best, "seed {seed}");
            assert_eq!(r.vertices.iter().map(|&v| weights[v]).sum::<u64>(), best);
        }
    }
}
