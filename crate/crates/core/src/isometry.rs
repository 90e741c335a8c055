//! The isometry group of `(Sym(n), d_H)`.
//!
//! Every isometry is a triple `(α, β, k)` acting as
//! `φ ↦ α · ι^k(φ) · β⁻¹`: the inversion `ι` is applied first, then the
//! left factor permutes symbols and the right factor permutes columns.
//! With this convention composition is the wreath-product law
//!
//! ```text
//! (α₁,β₁,0)(α₂,β₂,k) = (α₁α₂, β₁β₂, k)
//! (α₁,β₁,1)(α₂,β₂,k) = (α₁β₂, β₁α₂, 1-k)
//! ```

use std::fmt;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation};

/// Degree cap of [`are_isometric_bruteforce`].
pub const BRUTEFORCE_ISOMETRY_CAP: usize = 5;
/// Degree cap of [`stabilizer_bruteforce`].
pub const BRUTEFORCE_STABILIZER_CAP: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub inverse: bool,
}

impl Isometry {
    pub fn new(alpha: Permutation, beta: Permutation, inverse: bool) -> Result<Self> {
        if alpha.degree() != beta.degree() {
            return Err(Error::DegreeMismatch { left: alpha.degree(), right: beta.degree() });
        }
        Ok(Isometry { alpha, beta, inverse })
    }

    pub fn identity(degree: usize) -> Self {
        let id = Permutation::identity(degree);
        Isometry { alpha: id, beta: id, inverse: false }
    }

    /// The inversion `ι`.
    pub fn inversion(degree: usize) -> Self {
        Isometry { inverse: true, ..Isometry::identity(degree) }
    }

    /// Left multiplication `l_α: φ ↦ αφ`.
    pub fn left(alpha: Permutation) -> Self {
        Isometry { alpha, beta: Permutation::identity(alpha.degree()), inverse: false }
    }

    /// Right multiplication `r_β: φ ↦ φβ⁻¹`.
    pub fn right(beta: Permutation) -> Self {
        Isometry { alpha: Permutation::identity(beta.degree()), beta, inverse: false }
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }

    pub fn is_identity(&self) -> bool {
        !self.inverse && self.alpha.is_identity() && self.beta.is_identity()
    }

    #[inline]
    pub fn apply(&self, phi: &Permutation) -> Permutation {
        let x = if self.inverse { phi.inverse() } else { *phi };
        self.alpha.compose(&x).compose(&self.beta.inverse())
    }

    pub fn try_apply(&self, phi: &Permutation) -> Result<Permutation> {
        if phi.degree() != self.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: phi.degree() });
        }
        Ok(self.apply(phi))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        if self.inverse {
            Isometry {
                alpha: self.alpha.compose(&other.beta),
                beta: self.beta.compose(&other.alpha),
                inverse: !other.inverse,
            }
        } else {
            Isometry {
                alpha: self.alpha.compose(&other.alpha),
                beta: self.beta.compose(&other.beta),
                inverse: other.inverse,
            }
        }
    }

    pub fn try_compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Isometry {
        if self.inverse {
            Isometry { alpha: self.beta.inverse(), beta: self.alpha.inverse(), inverse: true }
        } else {
            Isometry { alpha: self.alpha.inverse(), beta: self.beta.inverse(), inverse: false }
        }
    }

    /// Elementwise image of a code, re-sorted.
    pub fn apply_to_code(&self, code: &Code) -> Code {
        assert_eq!(self.degree(), code.degree(), "degree mismatch");
        let mut elements: Vec<Permutation> = code.elements().iter().map(|p| self.apply(p)).collect();
        elements.sort_unstable();
        Code::from_sorted_unchecked(code.min_distance(), elements)
    }

    /// Parses `alpha=<images>; beta=<images>; inv=<0|1>`.
    pub fn parse(text: &str) -> Result<Isometry> {
        let bad = || Error::InvalidParameters(format!("bad isometry `{text}`"));
        let (mut alpha, mut beta, mut inverse) = (None, None, None);
        for part in text.split(';') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "alpha" => alpha = Some(value.parse::<Permutation>()?),
                "beta" => beta = Some(value.parse::<Permutation>()?),
                "inv" => {
                    inverse = Some(match value.trim() {
                        "0" => false,
                        "1" => true,
                        _ => return Err(bad()),
                    })
                }
                _ => return Err(bad()),
            }
        }
        Isometry::new(alpha.ok_or_else(bad)?, beta.ok_or_else(bad)?, inverse.ok_or_else(bad)?)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={}; beta={}; inv={}", self.alpha, self.beta, self.inverse as u8)
    }
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isometry({self})")
    }
}

/// `|Iso(n)| = 2·(n!)²`, defined for `n >= 3`.
pub fn iso_group_order(n: usize) -> Result<u128> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("the isometry group description needs n >= 3, got {n}")));
    }
    if n > crate::perm::MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(n));
    }
    Ok(2 * factorial(n) * factorial(n))
}

/// Every isometry of degree `n`, in the fixed order `(k, α, β)`.
pub fn all_isometries(n: usize) -> impl Iterator<Item = Isometry> {
    [false, true].into_iter().flat_map(move |inverse| {
        Permutation::all(n)
            .flat_map(move |alpha| Permutation::all(n).map(move |beta| Isometry { alpha, beta, inverse }))
    })
}

fn check_pair(c1: &Code, c2: &Code) -> Result<()> {
    if c1.degree() != c2.degree() {
        return Err(Error::DegreeMismatch { left: c1.degree(), right: c2.degree() });
    }
    if c1.min_distance() != c2.min_distance() {
        return Err(Error::InvalidParameters(format!(
            "minimum distances differ: {} vs {}",
            c1.min_distance(),
            c2.min_distance()
        )));
    }
    Ok(())
}

/// Exhaustive search for an isometry mapping `c1` onto `c2`. Refuses
/// degrees above [`BRUTEFORCE_ISOMETRY_CAP`].
pub fn are_isometric_bruteforce(c1: &Code, c2: &Code) -> Result<Option<Isometry>> {
    check_pair(c1, c2)?;
    let n = c1.degree();
    if n > BRUTEFORCE_ISOMETRY_CAP {
        return Err(Error::OracleTooLarge { degree: n, cap: BRUTEFORCE_ISOMETRY_CAP });
    }
    if c1.len() != c2.len() {
        return Ok(None);
    }
    let first = c1.elements()[0];
    for t in all_isometries(n) {
        // cheap filter before mapping the whole code
        if !c2.contains(&t.apply(&first)) {
            continue;
        }
        if c1.elements().iter().all(|p| c2.contains(&t.apply(p))) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// All isometries fixing `code` setwise, sorted. Refuses degrees above
/// [`BRUTEFORCE_STABILIZER_CAP`].
pub fn stabilizer_bruteforce(code: &Code) -> Result<Vec<Isometry>> {
    let n = code.degree();
    if n > BRUTEFORCE_STABILIZER_CAP {
        return Err(Error::OracleTooLarge { degree: n, cap: BRUTEFORCE_STABILIZER_CAP });
    }
    let mut out: Vec<Isometry> =
        all_isometries(n).filter(|t| code.elements().iter().all(|p| code.contains(&t.apply(p)))).collect();
    out.sort();
    Ok(out)
}
