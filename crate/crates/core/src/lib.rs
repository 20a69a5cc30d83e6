//! Executable decision procedures and witness searches around jump-free
//! function families on N^k.
//!
//! The building blocks:
//!
//! * [`tuples`]: points of N^k, order types (dense-rank signatures), fields and
//!   cube detection.
//! * [`predicates`]: finite functions and families, reflexivity, the jump-free
//!   condition, bounded fullness and regressive regularity over a cube.
//! * [`families`]: seeded universes of domains, rule-generated families and the
//!   regressively regular witness search.
//! * [`intsets`]: interval classification, bijections N -> Z and the F/H
//!   multisets.
//! * [`subsetsum`]: target-zero subset sum solvers and the end-to-end
//!   experiment tying the pieces together.
//!
//! Everything is generic over the scalar types ([`Natural`] for coordinates
//! and values, [`Integer`] for images in Z). The aliases below fix them to
//! `u64` and `i64`.

pub mod error;
pub mod families;
pub mod intsets;
pub mod predicates;
pub mod scalar;
pub mod subsetsum;
pub mod tuples;

pub use error::{Error, Result};
pub use scalar::{Integer, Natural};

pub type KTuple = tuples::Tuple<u64>;
pub type NatCube = tuples::Cube<u64>;
pub type NatFunction = predicates::FiniteFunction<u64>;
pub type NatFamily = predicates::Family<u64>;
pub type NatDomain = families::Domain<u64>;
pub type NatWitness = families::WitnessResult<u64>;
pub type NatRegularityReport = predicates::RegularityReport<u64>;
pub type NatJumpFreeWitness = predicates::JumpFreeWitness<u64>;
pub type IntMultiset = intsets::Multiset<i64>;
pub type IntFhSets = intsets::FhSets<i64>;
pub type Certificate = subsetsum::SubsetCertificate<i64>;
pub type Experiment = subsetsum::ExperimentOutcome<u64, i64>;
