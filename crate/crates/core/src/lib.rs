//! Solver library for preference-based claim-augmented argumentation.
//!
//! The layers build on each other: [`ArgFramework`] holds an abstract
//! framework and its eight semantics, [`ClaimFramework`] adds a claim per
//! argument, and [`PrefFramework`] adds a preference relation that one of four
//! [`Reduction`]s folds back into the attacks.

pub mod af;
pub mod bitset;
pub mod caf;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod hardgen;
pub mod pcaf;
pub mod propcheck;
pub mod realize;
pub mod search;

pub use af::{ArgFramework, Semantics};
pub use bitset::BitSet;
pub use caf::{ClaimFramework, ClaimSet, WfProblem};
pub use error::{Error, Result};
pub use pcaf::{PrefFramework, Reduction, ValidationReport, Violation};
pub use classify::{in_image, preimage_search, ImageClass, Preimage};
pub use realize::{realization, verify, RealizationTrace, Verifier};
pub use enumerate::{credulous, enumerate_claim_extensions, skeptical, EnumOptions, Limits, TaskResult};
pub use propcheck::{catalog, check_imaximality, falsify_imaximality, random_pcaf, CatalogEntry, SampleBounds};
pub use hardgen::{gen_cf_naive, gen_com_pref, gen_qbf, gen_stb_adm_com, qbf_oracle, sat_oracle, CnfFormula, HardInstance, Polarity, Qbf2Formula};
