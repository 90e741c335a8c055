//! Permutations of `{1..n}` and the bits of `Sym(n)` arithmetic everything
//! else is built on.
//!
//! Images are stored 0-based in a fixed 16-byte table; every public
//! constructor and formatter speaks the 1-based convention of permutation
//! arrays.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 16;

/// A permutation of degree `n`, `3 <= n <= 16` for codes (any `1..=16` is
/// accepted here so that small helper permutations can be built too).
///
/// Entries past the degree always hold the identity, so the derived
/// ordering is the lexicographic order of image sequences.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

const IDENTITY_TABLE: [u8; MAX_DEGREE] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15];
const LOW7: u128 = 0x7f7f_7f7f_7f7f_7f7f_7f7f_7f7f_7f7f_7f7f;
const HIGH: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&degree), "degree {degree} out of range");
        Permutation { degree: degree as u8, images: IDENTITY_TABLE }
    }

    /// Builds a permutation from its 1-based image sequence `φ(1) … φ(n)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        let mut table = IDENTITY_TABLE;
        let mut seen = 0u32;
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > n || seen & (1 << (img - 1)) != 0 {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen |= 1 << (img - 1);
            table[i] = (img - 1) as u8;
        }
        Ok(Permutation { degree: n as u8, images: table })
    }

    /// Builds a permutation from 0-based images. Panics if `images` is not
    /// a bijection.
    pub fn from_zero_based(images: &[usize]) -> Self {
        let n = images.len();
        assert!((1..=MAX_DEGREE).contains(&n));
        let mut table = IDENTITY_TABLE;
        let mut seen = 0u32;
        for (i, &img) in images.iter().enumerate() {
            assert!(img < n && seen & (1 << img) == 0, "not a permutation: {images:?}");
            seen |= 1 << img;
            table[i] = img as u8;
        }
        Permutation { degree: n as u8, images: table }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// 0-based image of the 0-based point `i`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images[..self.degree()].iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images == IDENTITY_TABLE
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`. Panics on a degree mismatch;
    /// see [`Permutation::try_compose`] for the checked variant.
    #[inline]
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut images = IDENTITY_TABLE;
        for (slot, &j) in images.iter_mut().zip(other.images.iter()).take(self.degree()) {
            *slot = self.images[j as usize];
        }
        Permutation { degree: self.degree, images }
    }

    pub fn try_compose(&self, other: &Permutation) -> Result<Permutation> {
        check_degrees(self, other)?;
        Ok(self.compose(other))
    }

    #[inline]
    pub fn inverse(&self) -> Permutation {
        let mut images = IDENTITY_TABLE;
        for i in 0..self.degree() {
            images[self.images[i] as usize] = i as u8;
        }
        Permutation { degree: self.degree, images }
    }

    /// Hamming distance: the number of points on which the two permutations
    /// disagree. Panics on a degree mismatch.
    #[inline]
    pub fn distance(&self, other: &Permutation) -> usize {
        debug_assert_eq!(self.degree, other.degree, "degree mismatch");
        let x = u128::from_le_bytes(self.images) ^ u128::from_le_bytes(other.images);
        // high bit of each byte is set iff that byte of x is non-zero
        ((((x & LOW7) + LOW7) | x) & HIGH).count_ones() as usize
    }

    pub fn try_distance(&self, other: &Permutation) -> Result<usize> {
        check_degrees(self, other)?;
        Ok(self.distance(other))
    }

    pub fn fixed_points(&self) -> usize {
        (0..self.degree()).filter(|&i| self.image(i) == i).count()
    }

    /// Number of moved points.
    pub fn support(&self) -> usize {
        self.degree() - self.fixed_points()
    }

    /// Disjoint cycles (0-based), fixed points included as 1-cycles, each
    /// starting from its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<u8> = self.cycles().iter().map(|c| c.len() as u8).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// Every permutation of the given degree in lexicographic order.
    pub fn all(degree: usize) -> AllPermutations {
        AllPermutations { next: Some(Permutation::identity(degree)) }
    }

    /// Lexicographic successor, or `None` for the last permutation.
    pub fn next_lex(&self) -> Option<Permutation> {
        let n = self.degree();
        let mut a = self.images;
        let mut i = n.checked_sub(1)?;
        while i > 0 && a[i - 1] > a[i] {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        let mut j = n - 1;
        while a[j] < a[i - 1] {
            j -= 1;
        }
        a.swap(i - 1, j);
        a[i..n].reverse();
        Some(Permutation { degree: self.degree, images: a })
    }
}

fn check_degrees(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch { left: a.degree(), right: b.degree() });
    }
    Ok(())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, img) in self.images().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{img}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    /// Parses space- or comma-separated 1-based images, e.g. `"2 3 4 5 1"`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::InvalidPermutation(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(&images)
    }
}

pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next?;
        self.next = cur.next_lex();
        Some(cur)
    }
}

/// A partition of `n` listing cycle lengths (fixed points included) in
/// non-increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<u8>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        assert!(parts.iter().all(|&p| p > 0));
        CycleType { parts: parts.into_iter().map(|p| p as u8).collect() }
    }

    pub fn parts(&self) -> Vec<usize> {
        self.parts.iter().map(|&p| p as usize).collect()
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn fixed_points(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }

    pub fn support(&self) -> usize {
        self.degree() - self.fixed_points()
    }

    /// A representative permutation: cycles laid out on consecutive points.
    pub fn representative(&self) -> Permutation {
        let n = self.degree();
        let mut images = vec![0; n];
        let mut start = 0;
        for &len in &self.parts {
            let len = len as usize;
            for k in 0..len {
                images[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        Permutation::from_zero_based(&images)
    }
}

impl fmt::Display for CycleType {
    /// `3+2`, `2+1+1`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order (`[n]` first,
/// `[1,…,1]` last).
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            out.push(CycleType::new(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of fixed-point-free permutations of `k` points. Panics on
/// overflow (`k > 34`).
pub fn derangement_count(k: usize) -> u128 {
    let (mut prev, mut cur) = (1u128, 0u128);
    if k == 0 {
        return 1;
    }
    for m in 2..=k {
        let next = ((m as u128) - 1).checked_mul(cur + prev).expect("derangement count overflows u128");
        prev = cur;
        cur = next;
    }
    cur
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i as u128 + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn compose_examples() {
        let phi = p(&[2, 3, 1]);
        assert_eq!(Permutation::identity(3).compose(&phi), phi);
        assert!(phi.compose(&phi.inverse()).is_identity());
        // pointwise: 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1
        assert_eq!(p(&[2, 3, 1]).compose(&p(&[2, 1, 3])), p(&[3, 2, 1]));
    }

    #[test]
    fn compose_degree_mismatch_is_an_error() {
        let err = p(&[1, 2, 3]).try_compose(&p(&[1, 2, 3, 4])).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { left: 3, right: 4 }));
        assert!(p(&[1, 2, 3]).try_distance(&p(&[1, 2, 3, 4])).is_err());
    }

    #[test]
    fn invert_examples() {
        assert!(Permutation::identity(5).inverse().is_identity());
        assert_eq!(p(&[2, 3, 1]).inverse(), p(&[3, 1, 2]));
        let phi = p(&[4, 1, 5, 2, 3]);
        assert_eq!(phi.inverse().inverse(), phi);
    }

    #[test]
    fn distance_examples() {
        let phi = p(&[3, 1, 4, 2]);
        assert_eq!(phi.distance(&phi), 0);
        assert_eq!(Permutation::identity(4).distance(&p(&[2, 1, 3, 4])), 2);
        assert_eq!(Permutation::identity(5).distance(&p(&[2, 3, 4, 5, 1])), 5);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Permutation::identity(5).cycle_type().parts(), vec![1; 5]);
        assert_eq!(p(&[2, 1, 3, 4]).cycle_type().parts(), vec![2, 1, 1]);
        assert_eq!(p(&[2, 3, 1, 5, 4]).cycle_type().parts(), vec![3, 2]);
        assert_eq!(p(&[2, 3, 1, 5, 4]).cycle_type().to_string(), "3+2");
    }

    #[test]
    fn derangements_match_brute_force() {
        assert_eq!(derangement_count(0), 1);
        assert_eq!(derangement_count(1), 0);
        for k in 1..=7 {
            let brute = Permutation::all(k).filter(|q| q.fixed_points() == 0).count() as u128;
            assert_eq!(derangement_count(k), brute, "k={k}");
        }
        assert_eq!(derangement_count(4), 9);
        assert_eq!(derangement_count(5), 44);
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<_> = Permutation::all(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn partitions_are_reverse_lex() {
        let parts: Vec<String> = partitions(4).iter().map(|c| c.to_string()).collect();
        assert_eq!(parts, ["4", "3+1", "2+2", "2+1+1", "1+1+1+1"]);
        assert_eq!(partitions(7).len(), 15);
        for c in partitions(6) {
            assert_eq!(c.representative().cycle_type(), c);
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1, 3]).is_err());
        assert!(Permutation::from_images(&[0, 1, 2]).is_err());
        assert!(Permutation::from_images(&[]).is_err());
        assert!("2 3 x".parse::<Permutation>().is_err());
        assert_eq!("2 3 1".parse::<Permutation>().unwrap(), p(&[2, 3, 1]));
    }
}
