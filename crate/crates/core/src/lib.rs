//! Permutation codes under the Hamming metric, classified up to isometry
//! of the symmetric group.
//!
//! ```
//! use permcode::{canonical_form, make_code, Permutation};
//!
//! let p = |s: &str| s.parse::<Permutation>().unwrap();
//! let a = make_code(3, [p("1 2 3 4"), p("2 3 4 1")]).unwrap();
//! let b = make_code(3, [p("1 2 3 4"), p("4 1 2 3")]).unwrap();
//! assert_eq!(canonical_form(&a).certificate, canonical_form(&b).certificate);
//! ```

pub mod canon;
pub mod census;
pub mod code;
pub mod error;
pub mod invariants;
pub mod isometry;
pub mod perm;
pub mod search;

pub use canon::{
    canonical_form, canonical_form_with, find_isometry, stabilizer, CanonicalForm, Certificate, Equivalence,
};
pub use code::{make_code, Code};
pub use error::{Error, Result};
pub use isometry::Isometry;
pub use perm::{CycleType, Permutation};
pub use search::{EnumerationResult, SearchConfig};
