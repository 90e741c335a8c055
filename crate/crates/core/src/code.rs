//! Permutation codes and their text file format.
//!
//! ```text
//! # comment lines start with '#'
//! n=4 d=3 s=2
//! 1 2 3 4
//! 2 1 4 3
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A non-empty `(n,d)`-permutation code. Elements are kept sorted and
/// duplicate-free, so equal codes have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    degree: u8,
    min_distance: u8,
    elements: Vec<Permutation>,
}

/// Validates and canonicalizes a list of permutations into a code.
pub fn make_code(min_distance: usize, perms: impl IntoIterator<Item = Permutation>) -> Result<Code> {
    let mut elements: Vec<Permutation> = perms.into_iter().collect();
    let first = *elements.first().ok_or(Error::EmptyCode)?;
    let degree = first.degree();
    if degree < 3 {
        return Err(Error::DegreeOutOfRange(degree));
    }
    if !(2..=degree).contains(&min_distance) {
        return Err(Error::InvalidParameters(format!("d={min_distance} must lie in 2..={degree}")));
    }
    if let Some(bad) = elements.iter().find(|p| p.degree() != degree) {
        return Err(Error::DegreeMismatch { left: degree, right: bad.degree() });
    }
    elements.sort_unstable();
    elements.dedup();
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i + 1..] {
            let distance = a.distance(b);
            if distance < min_distance {
                return Err(Error::DistanceViolation { first: *a, second: *b, distance, required: min_distance });
            }
        }
    }
    Ok(Code { degree: degree as u8, min_distance: min_distance as u8, elements })
}

impl Code {
    /// Wraps elements that are already sorted, distinct and pairwise far
    /// enough apart. Only checked in debug builds.
    pub(crate) fn from_sorted_unchecked(min_distance: usize, elements: Vec<Permutation>) -> Code {
        debug_assert!(!elements.is_empty());
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements
            .iter()
            .enumerate()
            .all(|(i, a)| elements[i + 1..].iter().all(|b| a.distance(b) >= min_distance)));
        Code { degree: elements[0].degree() as u8, min_distance: min_distance as u8, elements }
    }

    pub(crate) fn from_unsorted_unchecked(min_distance: usize, mut elements: Vec<Permutation>) -> Code {
        elements.sort_unstable();
        Code::from_sorted_unchecked(min_distance, elements)
    }

    /// The singleton code `{Id}`.
    pub fn identity(degree: usize, min_distance: usize) -> Result<Code> {
        make_code(min_distance, [Permutation::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn min_distance(&self) -> usize {
        self.min_distance as usize
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; codes are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Index of `p` among the sorted elements.
    pub fn position(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// `self ∪ {p}` where `p` is known to be at distance `>= d` from every
    /// element.
    pub(crate) fn extended_unchecked(&self, p: Permutation) -> Code {
        let mut elements = Vec::with_capacity(self.elements.len() + 1);
        let at = self.elements.binary_search(&p).unwrap_err();
        elements.extend_from_slice(&self.elements[..at]);
        elements.push(p);
        elements.extend_from_slice(&self.elements[at..]);
        Code { degree: self.degree, min_distance: self.min_distance, elements }
    }

    /// Checked extension by one permutation.
    pub fn extended(&self, p: Permutation) -> Result<Code> {
        make_code(self.min_distance(), self.elements.iter().copied().chain([p]))
    }

    /// The same set read with a different minimum distance.
    pub fn with_min_distance(&self, d: usize) -> Result<Code> {
        make_code(d, self.elements.iter().copied())
    }

    /// Minimum pairwise distance actually realized (`None` for a singleton).
    pub fn realized_distance(&self) -> Option<usize> {
        let mut best = None;
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                let d = a.distance(b);
                best = Some(best.map_or(d, |x: usize| x.min(d)));
            }
        }
        best
    }

    /// Renders the code in the text file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={} d={} s={}\n", self.degree, self.min_distance, self.len());
        for p in &self.elements {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the text file format.
    pub fn from_text(text: &str) -> Result<Code> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, message: "missing header".into() })?;
        let (mut n, mut d, mut s) = (None, None, None);
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: hline, message: format!("bad header field `{field}`") })?;
            let value: usize =
                value.parse().map_err(|_| Error::Parse { line: hline, message: format!("bad number in `{field}`") })?;
            match key {
                "n" => n = Some(value),
                "d" => d = Some(value),
                "s" => s = Some(value),
                _ => return Err(Error::Parse { line: hline, message: format!("unknown header key `{key}`") }),
            }
        }
        let missing = |k: &str| Error::Parse { line: hline, message: format!("header lacks `{k}=`") };
        let (n, d, s) =
            (n.ok_or_else(|| missing("n"))?, d.ok_or_else(|| missing("d"))?, s.ok_or_else(|| missing("s"))?);
        let mut perms = Vec::with_capacity(s);
        for (line, body) in lines {
            let p: Permutation = body.parse().map_err(|e| Error::Parse { line, message: format!("{e}") })?;
            if p.degree() != n {
                return Err(Error::Parse { line, message: format!("expected {n} images, found {}", p.degree()) });
            }
            perms.push(p);
        }
        if perms.len() != s {
            return Err(Error::Parse {
                line: hline,
                message: format!("header says s={s} but {} rows follow", perms.len()),
            });
        }
        let code = make_code(d, perms)?;
        if code.len() != s {
            return Err(Error::Parse { line: hline, message: "duplicate rows".into() });
        }
        Ok(code)
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code(n={}, d={}, {:?})", self.degree, self.min_distance, self.elements)
    }
}
