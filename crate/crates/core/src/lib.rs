//! Referring-expression content selection and evaluation.
//!
//! The crate is `no_std` and needs only `alloc`. It covers:
//!
//! - the furniture and people attribute schemas, scenes, and the truth
//!   relation ([`schema`], [`scene`], [`description`]);
//! - Full Brevity, Greedy and Incremental selection with TYPE policies
//!   ([`algorithms`]);
//! - exhaustive scene profiling and the over/under-specification taxonomy
//!   ([`analysis`]);
//! - DICE, PRP, grouped summaries and the probabilistic-TYPE sweep
//!   ([`evaluation`]);
//! - chi-squared and one-way ANOVA tests ([`stats`]).
//!
//! File formats, reports and the command-line tool live in the `regkit`
//! crate.

#![no_std]

extern crate alloc;

pub mod algorithms;
pub mod analysis;
pub mod candidates;
pub mod corpus;
pub mod description;
mod error;
pub mod evaluation;
pub mod fixtures;
pub mod scene;
pub mod schema;
pub mod stats;

pub use algorithms::{AlgorithmSpec, GeneratedDescription, PreferenceOrder, RandomStream, TypePolicy};
pub use corpus::{AnnotatedRE, Corpus, Position};
pub use description::{merge_raw_properties, Description, Property, RawProperty};
pub use error::DomainError;
pub use scene::{true_of, DomainObject, Scene, TrialId};
pub use schema::{Attribute, Domain, DomainSchema, Usability, Value};
