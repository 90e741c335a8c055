//! The code graph `(V(C), E(C))` and its canonical form. Code stabilizers
//! are read off the graph automorphisms.
//!
//! Vertex layout for a code of size `s` and degree `n`:
//!
//! | vertices                  | meaning                       |
//! |---------------------------|-------------------------------|
//! | `0..s`                    | rows, one per sorted element  |
//! | `s..s+n`                  | columns `1..n`                |
//! | `s+n..s+2n`               | symbols `1..n`                |
//! | `s+2n + i·n + j`          | cell `(i, j)`                 |
//!
//! Every cell is adjacent to its column and symbol; an occupied cell is
//! also adjacent to each row `φ` with `φ(i) = j`. Columns and symbols share
//! one color so that the inversion shows up as a graph automorphism
//! exchanging the two sides.

mod bitgraph;
mod label;

use std::fmt;

use sha2::{Digest, Sha256};

pub use bitgraph::BitGraph;

use crate::code::{make_code, Code};
use crate::error::{Error, Result};
use crate::isometry::Isometry;
use crate::perm::Permutation;

/// Version byte leading every certificate.
pub const CERTIFICATE_VERSION: u8 = 1;

/// Which isometries count as equivalences.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivalence {
    /// The full group `(L × R) ⋊ I`.
    #[default]
    Full,
    /// `L × R` only: columns and symbols get separate colors.
    NoInversion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexTag {
    Row(usize),
    Column(usize),
    Symbol(usize),
    Cell { column: usize, symbol: usize },
}

#[derive(Clone, Debug)]
pub struct ColoredGraph {
    degree: usize,
    min_distance: usize,
    adjacency: BitGraph,
    colors: Vec<u32>,
    tags: Vec<VertexTag>,
}

const ROW_COLOR: u32 = 0;
const COLUMN_COLOR: u32 = 1;

impl ColoredGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_distance(&self) -> usize {
        self.min_distance
    }

    pub fn adjacency(&self) -> &BitGraph {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.has_edge(u, v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.neighbors(v)
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn tag(&self, v: usize) -> VertexTag {
        self.tags[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.edge_count()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adjacency.add_edge(u, v);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adjacency.remove_edge(u, v);
    }

    /// The same graph with vertex `v` renamed to `perm[v]`; colors and tags
    /// travel with their vertices.
    pub fn relabeled(&self, perm: &[usize]) -> ColoredGraph {
        let n = self.vertex_count();
        let mut colors = vec![0; n];
        let mut tags = vec![VertexTag::Row(0); n];
        for v in 0..n {
            colors[perm[v]] = self.colors[v];
            tags[perm[v]] = self.tags[v];
        }
        ColoredGraph {
            degree: self.degree,
            min_distance: self.min_distance,
            adjacency: self.adjacency.relabeled(perm),
            colors,
            tags,
        }
    }
}

pub fn build_graph(code: &Code) -> ColoredGraph {
    build_graph_with(code, Equivalence::Full)
}

pub fn build_graph_with(code: &Code, equivalence: Equivalence) -> ColoredGraph {
    let s = code.len();
    let n = code.degree();
    let (col, sym, cell_base) = (s, s + n, s + 2 * n);
    let total = s + n * n + 2 * n;
    let mut g = BitGraph::new(total);
    let (symbol_color, cell_color) = match equivalence {
        Equivalence::Full => (COLUMN_COLOR, 2),
        Equivalence::NoInversion => (COLUMN_COLOR + 1, 3),
    };
    let mut colors = Vec::with_capacity(total);
    let mut tags = Vec::with_capacity(total);
    colors.extend(std::iter::repeat_n(ROW_COLOR, s));
    tags.extend((0..s).map(VertexTag::Row));
    colors.extend(std::iter::repeat_n(COLUMN_COLOR, n));
    tags.extend((0..n).map(VertexTag::Column));
    colors.extend(std::iter::repeat_n(symbol_color, n));
    tags.extend((0..n).map(VertexTag::Symbol));
    for i in 0..n {
        for j in 0..n {
            let c = cell_base + i * n + j;
            colors.push(cell_color);
            tags.push(VertexTag::Cell { column: i, symbol: j });
            g.add_edge(c, col + i);
            g.add_edge(c, sym + j);
        }
    }
    for (k, phi) in code.elements().iter().enumerate() {
        for i in 0..n {
            g.add_edge(k, cell_base + i * n + phi.image(i));
        }
    }
    ColoredGraph { degree: n, min_distance: code.min_distance(), adjacency: g, colors, tags }
}

/// Recovers the code from a code graph, reading columns and symbols off
/// the vertex tags.
pub fn reconstruct_code(g: &ColoredGraph) -> Result<Code> {
    let n = g.degree;
    let mut perms = Vec::new();
    for v in 0..g.vertex_count() {
        let VertexTag::Row(k) = g.tag(v) else { continue };
        let mut images = vec![usize::MAX; n];
        let mut cells = 0;
        for u in g.neighbors(v) {
            if !matches!(g.tag(u), VertexTag::Cell { .. }) {
                return Err(Error::Structural(format!("row {k} is adjacent to a non-cell vertex")));
            }
            cells += 1;
            let (mut column, mut symbol) = (Vec::new(), Vec::new());
            for w in g.neighbors(u) {
                match g.tag(w) {
                    VertexTag::Column(i) => column.push(i),
                    VertexTag::Symbol(j) => symbol.push(j),
                    _ => {}
                }
            }
            let ([i], [j]) = (column.as_slice(), symbol.as_slice()) else {
                return Err(Error::Structural(format!(
                    "a cell of row {k} touches {} columns and {} symbols",
                    column.len(),
                    symbol.len()
                )));
            };
            if images[*i] != usize::MAX {
                return Err(Error::Structural(format!("row {k} has two cells in column {}", i + 1)));
            }
            images[*i] = *j;
        }
        if cells != n {
            return Err(Error::Structural(format!("row {k} has {cells} cells, expected {n}")));
        }
        let mut seen = vec![false; n];
        for &j in &images {
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::Structural(format!("row {k} repeats symbol {}", j + 1)));
            }
        }
        perms.push(Permutation::from_zero_based(&images));
    }
    make_code(g.min_distance, perms)
}

/// Versioned canonical encoding of a code graph: the version byte, the
/// color-class sizes, then the upper triangle of the canonically relabeled
/// adjacency matrix, row-major, most significant bit first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    /// SHA-256 of the certificate bytes, lowercase hex.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(&self.0))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.digest();
        write!(f, "Certificate({}…)", &d[..12])
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub certificate: Certificate,
    /// Vertex permutations generating the automorphism group.
    pub automorphism_generators: Vec<Vec<usize>>,
    pub group_size: u128,
    /// Canonical position -> vertex of the code graph.
    pub labeling: Vec<usize>,
    pub equivalence: Equivalence,
    size: usize,
    degree: usize,
}

pub fn canonical_form(code: &Code) -> CanonicalForm {
    canonical_form_with(code, Equivalence::Full)
}

pub fn canonical_form_with(code: &Code, equivalence: Equivalence) -> CanonicalForm {
    let g = build_graph_with(code, equivalence);
    let l = label::canonical_labeling(&g.adjacency, &g.colors);
    let certificate = encode_certificate(&g, &l);
    CanonicalForm {
        certificate,
        automorphism_generators: l.generators,
        group_size: l.group_size,
        labeling: l.lab,
        equivalence,
        size: code.len(),
        degree: code.degree(),
    }
}

fn encode_certificate(g: &ColoredGraph, l: &label::Labeling) -> Certificate {
    let n = g.vertex_count();
    let words = g.adjacency.words();
    let mut sizes: Vec<(u32, u16)> = Vec::new();
    for &c in &g.colors {
        match sizes.iter_mut().find(|(k, _)| *k == c) {
            Some((_, m)) => *m += 1,
            None => sizes.push((c, 1)),
        }
    }
    sizes.sort();
    let mut out = Vec::with_capacity(2 + 2 * sizes.len() + n * n / 16 + 1);
    out.push(CERTIFICATE_VERSION);
    out.push(sizes.len() as u8);
    for (_, m) in &sizes {
        out.extend_from_slice(&m.to_le_bytes());
    }
    let (mut byte, mut nbits) = (0u8, 0);
    for p in 0..n {
        let row = &l.canonical[p * words..(p + 1) * words];
        for q in p + 1..n {
            byte = (byte << 1) | ((row[q >> 6] >> (q & 63)) & 1) as u8;
            nbits += 1;
            if nbits == 8 {
                out.push(byte);
                byte = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(byte << (8 - nbits));
    }
    Certificate(out)
}

/// Reads an isometry off a color-preserving vertex map between the graphs
/// of two codes of sizes `s_from`, `s_to`.
fn vertex_map_to_isometry(gamma: &[usize], s_from: usize, s_to: usize, n: usize) -> Isometry {
    let (col_from, sym_from) = (s_from, s_from + n);
    let (col_to, sym_to) = (s_to, s_to + n);
    let read = |base_from: usize, base_to: usize| {
        Permutation::from_zero_based(&(0..n).map(|i| gamma[base_from + i] - base_to).collect::<Vec<_>>())
    };
    if gamma[col_from] < sym_to {
        // columns stay columns
        Isometry { alpha: read(sym_from, sym_to), beta: read(col_from, col_to), inverse: false }
    } else {
        Isometry { alpha: read(col_from, sym_to), beta: read(sym_from, col_to), inverse: true }
    }
}

impl CanonicalForm {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Canonical position -> vertex, inverted.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.labeling.len()];
        for (p, &v) in self.labeling.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }

    /// Index (in sorted order) of the element whose row vertex receives the
    /// largest canonical label.
    pub fn canonical_deletion(&self) -> usize {
        // rows occupy canonical positions 0..s
        self.labeling[self.size - 1]
    }

    /// Orbit representative per row index under the automorphism group.
    pub fn row_orbits(&self) -> Vec<usize> {
        let orb = label::orbits(self.labeling.len(), &self.automorphism_generators);
        orb[..self.size].to_vec()
    }

    /// Stabilizer generators as isometries, each verified against `code`.
    pub fn stabilizer_generators(&self, code: &Code) -> Result<Vec<Isometry>> {
        let n = self.degree;
        let mut out = Vec::with_capacity(self.automorphism_generators.len());
        for gamma in &self.automorphism_generators {
            let t = vertex_map_to_isometry(gamma, self.size, self.size, n);
            if t.is_identity() {
                return Err(Error::Internal("automorphism acts trivially on columns and symbols".into()));
            }
            if t.apply_to_code(code) != *code {
                return Err(Error::Internal(format!("automorphism does not realize a stabilizer element: {t}")));
            }
            out.push(t);
        }
        Ok(out)
    }

    /// The representative of the isometry class of `code` determined by the
    /// canonical labeling.
    pub fn canonical_code(&self, code: &Code) -> Code {
        let (s, n) = (self.size, self.degree);
        let pos = self.positions();
        let rank = |base: usize| {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| pos[base + i]);
            let mut r = vec![0; n];
            for (k, &i) in order.iter().enumerate() {
                r[i] = k;
            }
            r
        };
        let (col_rank, sym_rank) = (rank(s), rank(s + n));
        let columns_first = self.labeling[s] < s + n;
        let mut elements: Vec<Permutation> = code
            .elements()
            .iter()
            .map(|phi| {
                let mut images = vec![0; n];
                for i in 0..n {
                    let j = phi.image(i);
                    if columns_first {
                        images[col_rank[i]] = sym_rank[j];
                    } else {
                        images[sym_rank[j]] = col_rank[i];
                    }
                }
                Permutation::from_zero_based(&images)
            })
            .collect();
        elements.sort_unstable();
        Code::from_sorted_unchecked(code.min_distance(), elements)
    }
}

/// Generators of `Stab(C)` translated from graph automorphisms.
pub fn stabilizer(code: &Code) -> Result<Vec<Isometry>> {
    canonical_form(code).stabilizer_generators(code)
}

/// An isometry mapping `c1` onto `c2`, found by comparing canonical forms.
pub fn find_isometry(c1: &Code, c2: &Code, equivalence: Equivalence) -> Result<Option<Isometry>> {
    if c1.degree() != c2.degree() {
        return Err(Error::DegreeMismatch { left: c1.degree(), right: c2.degree() });
    }
    let (f1, f2) = (canonical_form_with(c1, equivalence), canonical_form_with(c2, equivalence));
    if f1.certificate != f2.certificate {
        return Ok(None);
    }
    let mut gamma = vec![0; f1.labeling.len()];
    for (&a, &b) in f1.labeling.iter().zip(&f2.labeling) {
        gamma[a] = b;
    }
    let t = vertex_map_to_isometry(&gamma, c1.len(), c2.len(), c1.degree());
    if t.apply_to_code(c1).elements() != c2.elements() {
        return Err(Error::Internal(format!("equal certificates but {t} does not map one code onto the other")));
    }
    Ok(Some(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::stabilizer_bruteforce;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn singleton_graph_shape() {
        let c = Code::identity(3, 2).unwrap();
        let g = build_graph(&c);
        assert_eq!(g.vertex_count(), 16);
        let occupied: Vec<usize> = (7..16).filter(|&v| g.neighbors(v).any(|u| u == 0)).collect();
        assert_eq!(occupied.len(), 3);
        assert!(occupied.iter().all(|&v| g.adjacency().degree(v) == 3));
        assert_eq!(g.adjacency().degree(0), 3);
    }

    #[test]
    fn row_to_cell_edges() {
        let c = make_code(3, [Permutation::identity(4), p(&[2, 3, 4, 1]), p(&[3, 4, 1, 2])]).unwrap();
        let g = build_graph(&c);
        // s·n row edges plus 2n² column/symbol edges
        assert_eq!(g.edge_count(), 3 * 4 + 2 * 16);
    }

    #[test]
    fn singleton_stabilizer_has_order_twelve() {
        let c = Code::identity(3, 2).unwrap();
        let f = canonical_form(&c);
        assert_eq!(f.group_size, 12);
        let gens = f.stabilizer_generators(&c).unwrap();
        let brute = stabilizer_bruteforce(&c).unwrap();
        assert_eq!(brute.len(), 12);
        assert!(gens.iter().all(|t| brute.binary_search(t).is_ok()));
    }

    #[test]
    fn reconstruct_round_trip() {
        let c = make_code(3, [Permutation::identity(4), p(&[2, 3, 4, 1]), p(&[3, 1, 4, 2])]).unwrap();
        let g = build_graph(&c);
        assert_eq!(reconstruct_code(&g).unwrap(), c);
        let mut bad = g.clone();
        // attach row 0 to the unoccupied cell (0, 1)
        bad.add_edge(0, 3 + 8 + 1);
        assert!(matches!(reconstruct_code(&bad), Err(Error::Structural(_))));
    }

    #[test]
    fn inversion_is_realized_by_certificates() {
        let c = make_code(3, [Permutation::identity(4), p(&[2, 3, 4, 1]), p(&[3, 1, 4, 2])]).unwrap();
        let inv = Isometry::inversion(4).apply_to_code(&c);
        assert_eq!(canonical_form(&c).certificate, canonical_form(&inv).certificate);
        let t = find_isometry(&c, &inv, Equivalence::Full).unwrap().unwrap();
        assert_eq!(t.apply_to_code(&c), inv);
    }
}
