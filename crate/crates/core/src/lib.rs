//! Signed plane trees and the Hopf arborescent links they encode.
//!
//! A tree with vertices labelled `+` or `-` describes a surface built by
//! plumbing one Hopf band per vertex along the tree. This crate provides
//!
//! * [`tree`]: the tree type, its text and JSON forms, and the three
//!   reductions (leaf deletion, unary-root removal, path contraction);
//! * [`enumerate`]: exhaustive enumeration, ranking and uniform sampling;
//! * [`embedding`]: the homeomorphic-embedding (minor) relation with
//!   certificates and a brute-force cross-check;
//! * [`invariants`]: the Seifert matrix of the plumbed surface and exact
//!   invariants of its boundary link;
//! * [`minor_lab`]: minor posets, excluded-minor mining and audits over
//!   bounded universes.
//!
//! ```
//! use hopfarb::{embeds, fingerprint, PlaneTree};
//!
//! let trefoil: PlaneTree = "+(+)".parse().unwrap();
//! let fp = fingerprint(&trefoil);
//! assert_eq!((fp.b, fp.g, fp.signature), (1, 1, 2));
//! assert_eq!(fp.alexander.to_string(), "t^2 - t + 1");
//!
//! let bigger: PlaneTree = "+(-(+))".parse().unwrap();
//! assert!(embeds(&trefoil, &bigger));
//! ```

#![allow(clippy::needless_range_loop)]

pub mod embedding;
pub mod enumerate;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod minor_lab;
pub mod poly;
pub mod tree;

pub use embedding::{embed_witness, embeds, oracle_embeds, verify_witness, EmbeddingWitness};
pub use enumerate::{count, enumerate, random_tree};
pub use error::{Error, Result};
pub use invariants::{fingerprint, seifert_matrix, Fingerprint, SeifertMatrix};
pub use minor_lab::{universe, PosetReport, Predicate, Universe};
pub use poly::LaurentPolynomial;
pub use tree::{PlaneTree, Sign};
