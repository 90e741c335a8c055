//! Canonical labeling of vertex-colored graphs by individualization and
//! refinement.
//!
//! Frozen conventions (certificates depend on them):
//! - the initial partition lists color classes in ascending color id;
//! - refinement is a FIFO queue of splitter cells; a split cell is reordered
//!   by ascending neighbor count into the splitter, and every new fragment
//!   except the one keeping the old cell start is queued;
//! - the target cell is the first smallest non-singleton cell;
//! - the canonical leaf maximizes (refinement trace, permuted adjacency)
//!   lexicographically.

use std::cmp::Ordering;
use std::collections::VecDeque;

use super::bitgraph::BitGraph;

pub(crate) struct Labeling {
    /// Canonical position -> vertex.
    pub lab: Vec<usize>,
    pub generators: Vec<Vec<usize>>,
    pub group_size: u128,
    /// Adjacency rows of the relabeled graph, `words` u64 per row.
    pub canonical: Vec<u64>,
}

#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    pos: Vec<usize>,
    /// position -> start of its cell
    start: Vec<usize>,
    /// cell start -> end (exclusive); only meaningful at cell starts
    end: Vec<usize>,
    cells: usize,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let h = (h ^ x).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    h ^ (h >> 29)
}

impl Partition {
    fn from_colors(colors: &[u32]) -> Self {
        let n = colors.len();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (colors[v], v));
        let mut pos = vec![0; n];
        let mut start = vec![0; n];
        let mut end = vec![0; n];
        let mut cells = 0;
        let mut s = 0;
        while s < n {
            let mut e = s + 1;
            while e < n && colors[lab[e]] == colors[lab[s]] {
                e += 1;
            }
            for p in s..e {
                start[p] = s;
                pos[lab[p]] = p;
            }
            end[s] = e;
            cells += 1;
            s = e;
        }
        Partition { lab, pos, start, end, cells }
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.lab.len() {
            out.push(s);
            s = self.end[s];
        }
        out
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn target_cell(&self) -> (usize, usize) {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.lab.len() {
            let e = self.end[s];
            if e - s > 1 && best.is_none_or(|(bs, be)| e - s < be - bs) {
                best = Some((s, e));
            }
            s = e;
        }
        best.expect("target cell requested on a discrete partition")
    }

    /// Splits `v` off the front of its cell; returns the singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let p = self.pos[v];
        let s = self.start[p];
        let e = self.end[s];
        debug_assert!(e - s > 1);
        let u = self.lab[s];
        self.lab.swap(s, p);
        self.pos[u] = p;
        self.pos[v] = s;
        self.end[s] = s + 1;
        self.end[s + 1] = e;
        for q in s + 1..e {
            self.start[q] = s + 1;
        }
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition finer than the current
    /// one, starting from the given splitters. Returns a trace value that
    /// depends only on positional data.
    fn refine(&mut self, g: &BitGraph, splitters: &[usize], count: &mut [u32]) -> u64 {
        let n = self.lab.len();
        let words = g.words();
        let mut queue: VecDeque<usize> = splitters.iter().copied().collect();
        let mut queued = vec![false; n];
        for &s in splitters {
            queued[s] = true;
        }
        let mut trace = 0xcbf2_9ce4_8422_2325u64;
        let mut mask = vec![0u64; words];
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            if self.is_discrete() {
                break;
            }
            mask.fill(0);
            for &v in &self.lab[w..self.end[w]] {
                mask[v >> 6] |= 1 << (v & 63);
            }
            let mut x = 0;
            while x < n {
                let xe = self.end[x];
                if xe - x > 1 {
                    let mut uniform = true;
                    let mut first = None;
                    for &v in &self.lab[x..xe] {
                        let c: u32 = g.row(v).iter().zip(&mask).map(|(a, b)| (a & b).count_ones()).sum();
                        count[v] = c;
                        match first {
                            None => first = Some(c),
                            Some(f) if f != c => uniform = false,
                            _ => {}
                        }
                    }
                    if !uniform {
                        self.lab[x..xe].sort_unstable_by_key(|&v| count[v]);
                        trace = mix(trace, ((w as u64) << 32) | x as u64);
                        let mut fs = x;
                        while fs < xe {
                            let c = count[self.lab[fs]];
                            let mut fe = fs + 1;
                            while fe < xe && count[self.lab[fe]] == c {
                                fe += 1;
                            }
                            self.end[fs] = fe;
                            for p in fs..fe {
                                self.start[p] = fs;
                                self.pos[self.lab[p]] = p;
                            }
                            trace = mix(trace, ((c as u64) << 32) | (fe - fs) as u64);
                            if fs != x {
                                self.cells += 1;
                                if !queued[fs] {
                                    queued[fs] = true;
                                    queue.push_back(fs);
                                }
                            }
                            fs = fe;
                        }
                    }
                }
                x = xe;
            }
        }
        mix(trace, self.cells as u64)
    }
}

#[derive(Clone)]
struct Leaf {
    lab: Vec<usize>,
    canon: Vec<u64>,
    trace: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a BitGraph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
    count: Vec<u32>,
}

/// Orbit representative (smallest member) per vertex under the given
/// generators.
pub(crate) fn orbits<'g>(n: usize, gens: impl IntoIterator<Item = &'g Vec<usize>>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for (v, &gv) in g.iter().enumerate().take(n) {
            let (a, b) = (find(&mut parent, v), find(&mut parent, gv));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'a> Search<'a> {
    fn permuted(&self, part: &Partition) -> Vec<u64> {
        let n = self.g.len();
        let words = self.g.words();
        let mut out = vec![0u64; n * words];
        for (p, &v) in part.lab.iter().enumerate() {
            let row = &mut out[p * words..(p + 1) * words];
            for u in self.g.neighbors(v) {
                let q = part.pos[u];
                row[q >> 6] |= 1 << (q & 63);
            }
        }
        out
    }

    fn orbits_fixing(&self, path: &[usize]) -> Vec<usize> {
        orbits(self.g.len(), self.generators.iter().filter(|g| path.iter().all(|&v| g[v] == v)))
    }

    fn add_generator(&mut self, from: &[usize], to: &[usize]) {
        let mut gamma = vec![0; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            gamma[a] = b;
        }
        if gamma.iter().enumerate().any(|(i, &x)| i != x) && !self.generators.contains(&gamma) {
            self.generators.push(gamma);
        }
    }

    fn worth_exploring(&self, trace: &[u64]) -> bool {
        let (Some(first), Some(best)) = (&self.first, &self.best) else {
            return true;
        };
        let k = trace.len();
        if first.trace.len() >= k && first.trace[..k] == *trace {
            return true;
        }
        let m = k.min(best.trace.len());
        trace[..m] >= best.trace[..m]
    }

    fn leaf(&mut self, part: &Partition, path: &[usize], trace: &[u64]) -> Option<usize> {
        let canon = self.permuted(part);
        let Some(first) = &self.first else {
            let leaf = Leaf { lab: part.lab.clone(), canon, trace: trace.to_vec(), path: path.to_vec() };
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };
        if first.trace == trace && first.canon == canon {
            let level = common_prefix(path, &first.path);
            let from = first.lab.clone();
            self.add_generator(&from, &part.lab);
            return Some(level);
        }
        let best = self.best.as_ref().unwrap();
        match (trace, &canon).cmp(&(&best.trace[..], &best.canon)) {
            Ordering::Equal => {
                let level = common_prefix(path, &best.path);
                let from = best.lab.clone();
                self.add_generator(&from, &part.lab);
                Some(level)
            }
            Ordering::Greater => {
                self.best = Some(Leaf { lab: part.lab.clone(), canon, trace: trace.to_vec(), path: path.to_vec() });
                None
            }
            Ordering::Less => None,
        }
    }

    /// Returns `Some(level)` to unwind to the node at depth `level`.
    fn explore(&mut self, part: &Partition, path: &mut Vec<usize>, trace: &mut Vec<u64>) -> Option<usize> {
        if part.is_discrete() {
            return self.leaf(part, path, trace);
        }
        let depth = path.len();
        let (ts, te) = part.target_cell();
        let mut candidates = part.lab[ts..te].to_vec();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        let mut cached: Option<(usize, Vec<usize>)> = None;
        for w in candidates {
            if !explored.is_empty() {
                if cached.as_ref().is_none_or(|(k, _)| *k != self.generators.len()) {
                    cached = Some((self.generators.len(), self.orbits_fixing(path)));
                }
                let orb = &cached.as_ref().unwrap().1;
                if explored.iter().any(|&e| orb[e] == orb[w]) {
                    continue;
                }
            }
            explored.push(w);
            let mut child = part.clone();
            let s = child.individualize(w);
            let t = child.refine(self.g, &[s], &mut self.count);
            path.push(w);
            trace.push(t);
            let jump = if self.worth_exploring(trace) { self.explore(&child, path, trace) } else { None };
            path.pop();
            trace.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }
}

pub(crate) fn canonical_labeling(g: &BitGraph, colors: &[u32]) -> Labeling {
    let n = g.len();
    assert_eq!(colors.len(), n);
    let mut search = Search { g, first: None, best: None, generators: Vec::new(), count: vec![0; n] };
    let mut root = Partition::from_colors(colors);
    let starts = root.cell_starts();
    let t = root.refine(g, &starts, &mut search.count);
    let mut path = Vec::new();
    let mut trace = vec![t];
    search.explore(&root, &mut path, &mut trace);

    let first = search.first.take().expect("search reaches at least one leaf");
    let mut group_size: u128 = 1;
    for k in 0..first.path.len() {
        let orb = search.orbits_fixing(&first.path[..k]);
        let v = first.path[k];
        group_size *= orb.iter().filter(|&&r| r == orb[v]).count() as u128;
    }
    let best = search.best.take().unwrap();
    Labeling { lab: best.lab, generators: search.generators, group_size, canonical: best.canon }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> BitGraph {
        let mut g = BitGraph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    fn is_automorphism(g: &BitGraph, gamma: &[usize]) -> bool {
        (0..g.len()).all(|u| (0..g.len()).all(|v| g.has_edge(u, v) == g.has_edge(gamma[u], gamma[v])))
    }

    #[test]
    fn cycle_automorphism_group() {
        for n in [3, 5, 6, 9] {
            let g = cycle(n);
            let l = canonical_labeling(&g, &vec![0; n]);
            assert_eq!(l.group_size, 2 * n as u128, "C_{n}");
            assert!(l.generators.iter().all(|gamma| is_automorphism(&g, gamma)));
        }
    }

    #[test]
    fn complete_and_empty_graphs() {
        let mut k5 = BitGraph::new(5);
        for u in 0..5 {
            for v in u + 1..5 {
                k5.add_edge(u, v);
            }
        }
        assert_eq!(canonical_labeling(&k5, &[0; 5]).group_size, 120);
        assert_eq!(canonical_labeling(&BitGraph::new(4), &[0; 4]).group_size, 24);
        assert_eq!(canonical_labeling(&BitGraph::new(4), &[0, 0, 1, 1]).group_size, 4);
    }

    #[test]
    fn petersen_graph() {
        let mut g = BitGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
            g.add_edge(i, 5 + i);
        }
        let l = canonical_labeling(&g, &[0; 10]);
        assert_eq!(l.group_size, 120);
        assert!(l.generators.iter().all(|gamma| is_automorphism(&g, gamma)));
    }

    #[test]
    fn relabeling_gives_the_same_canonical_graph() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let mut g = BitGraph::new(12);
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 4),
            (7, 8),
            (8, 9),
            (9, 10),
            (10, 11),
            (0, 7),
            (4, 11),
        ];
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        let colors = vec![0; 12];
        let base = canonical_labeling(&g, &colors);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..12).collect();
            perm.shuffle(&mut rng);
            let h = g.relabeled(&perm);
            let l = canonical_labeling(&h, &colors);
            assert_eq!(l.canonical, base.canonical);
            assert_eq!(l.group_size, base.group_size);
        }
    }
}
