//! Exact computation on `Z^ω`: eventually periodic points, regular compact
//! sets, the fiber-separating translation, the segmented coding system, the
//! witness space `K₀` and certificate-producing verifiers around them.

pub mod certificate;
pub mod coding;
pub mod corpus;
pub mod counterexample;
pub mod error;
pub mod hyperspace;
pub mod oracle;
pub mod regsets;
pub mod seq;
pub mod suite;
pub mod witness;

pub use error::{Error, Result};
pub use regsets::{RegularCompact, TailSpec, TreeSpec};
pub use seq::{is_segmented, Int, LazyPoint, Point, RegularPoint, Word};
