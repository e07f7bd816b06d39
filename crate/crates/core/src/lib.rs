//! Reduced pipe dreams, mitosis, and Schubert polynomials.
//!
//! ```
//! use schubert_mitosis::{rp_by_mitosis, schubert_divdiff, Permutation};
//!
//! let w: Permutation = "132".parse().unwrap();
//! assert_eq!(rp_by_mitosis(&w).unwrap().len(), 2);
//! assert_eq!(schubert_divdiff(&w).unwrap().to_string(), "x1 + x2");
//! ```

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod intron;
pub mod mitosis;
pub mod oracle;
pub mod permutation;
pub mod pipedream;
pub mod poset;
pub mod schubert;
pub mod verify;

pub use error::{Error, Result};
pub use mitosis::{mitosis, mitosis_set, rp_by_mitosis, rp_by_mitosis_with_word};
pub use oracle::{enumerate_rp, Oracle};
pub use permutation::{Permutation, Word};
pub use pipedream::{top_pipe_dream, PipeDream};
pub use schubert::{schubert_bjs, schubert_divdiff, schubert_mitosis, Polynomial};
