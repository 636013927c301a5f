//! Exact algorithms for concept classes of VC dimension 1 on finite domains.
//!
//! - [`concept`]: classes, shattering, brute-force VC dimension,
//!   f-representations, quotienting, exact losses.
//! - [`structure`]: the tree-order certificate, or a shattered pair.
//! - [`compression`]: the size-1 unlabeled compression scheme and its audit.
//! - [`erm`]: the ordinal initial-segment class, the adversarial ERM rule,
//!   exact and Monte-Carlo error, and the finite Fubini check.
//! - [`io`] and [`cli`]: file formats and the `vcone` command line.
//!
//! ```
//! use vcone::concept::{vc_dimension, ConceptClass};
//! use vcone::structure::structure_certificate;
//!
//! let chain = ConceptClass::from_bit_strings(&["000", "100", "110", "111"]).unwrap();
//! assert_eq!(vc_dimension(&chain), 1);
//! assert!(structure_certificate(&chain, None).unwrap().is_tree());
//! ```

pub mod cli;
pub mod compression;
pub mod concept;
pub mod erm;
pub mod error;
pub mod io;
pub mod structure;

pub use concept::{ConceptClass, Domain, Hypothesis, LabeledSample, QuotientMap, Rational};
pub use error::{Error, ErrorKind, Result};
