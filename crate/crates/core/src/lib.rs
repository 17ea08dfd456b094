//! Exact linear algebra for families of shifted powers `(x - a)^e`.
//!
//! Scalars live in the rationals or a cyclotomic field `Q(ξ_k)`. The crate
//! decides linear independence, extracts independent subfamilies, finds
//! shifted differential equations, computes Waring ranks of univariate
//! polynomials, enumerates Pólya sequences and builds explicit dependent
//! families with certificates.
//!
//! ```
//! use shiftpow::family::Family;
//!
//! // (x+1)^2, (x-1)^2, x span a 2-dimensional space.
//! let f = Family::from_int_pairs(&[(-1, 2), (1, 2), (0, 1)]).unwrap();
//! assert_eq!(f.dimension(), 2);
//! assert!(!f.is_independent());
//! ```

pub mod algebra;
pub mod construct;
pub mod error;
pub mod family;
pub mod json;
pub mod linalg;
pub mod polya;
pub mod sde;
pub mod waring;

pub use error::{Error, Result};
pub use family::{Family, PolyaSequence, ShiftedPower};
pub use num_bigint::BigInt;
