//! List decodability of small linear codes.
//!
//! The crate builds linear codes over prime fields (random, Reed-Muller,
//! Wozencraft, punctured), maps them through the simplex encoding, and
//! evaluates sufficient conditions for list decodability (ℓ1 certificate,
//! restricted isometry constant, average distance) against an exhaustive
//! oracle. A seeded experiment harness measures the probabilistic
//! statements about random codes and writes CSV and JSON results.
//!
//! ```
//! use ldlab::budget::Budget;
//! use ldlab::certify::{l1_certificate, Verdict};
//! use ldlab::code::LinearCode;
//! use ldlab::oracle::{worst_case_list_size, SearchMethod};
//!
//! let full = LinearCode::from_rows(2, &[vec![1, 0], vec![0, 1]], 2)?;
//! let cert = l1_certificate(&full, 2, 0.6, &Budget::default())?;
//! assert_eq!(cert.verdict, Verdict::Holds);
//! let t = cert.radius.unwrap();
//! let report = worst_case_list_size(&full, t, SearchMethod::Coset, &Budget::default())?;
//! assert!(report.max_list <= cert.list_bound());
//! # Ok::<(), ldlab::error::Error>(())
//! ```
//!
//! Every exhaustive routine checks a [`budget::Budget`] before starting and
//! fails with [`error::Error::SizeOverBudget`] instead of running away.

pub mod budget;
pub mod certify;
pub mod cli;
pub mod code;
pub mod error;
pub mod experiment;
pub mod field;
pub mod oracle;
pub mod plot;
pub mod simplex;

pub use budget::Budget;
pub use code::LinearCode;
pub use error::{Error, Result};
