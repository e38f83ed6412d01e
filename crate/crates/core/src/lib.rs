//! Symbolic calculus for linear order types under the finite and countable
//! condensations.
//!
//! The crate is `no_std` (it needs `alloc`). Terms are built with
//! [`OrderTerm`] or parsed from the surface grammar with [`parse`], and every
//! operation is a pure function of its inputs.
//!
//! * [`term`] holds the term language, normalization and end-point surgery.
//! * [`classify`] computes structural [`Profile`]s and the right-identity test.
//! * [`condense`] computes quotients modulo `~F` and `~ω` compositionally.
//! * [`algebra`] multiplies modulo a condensation and checks band/semigroup laws.
//! * [`points`] gives terms concrete elements, interval cardinalities and
//!   class indices; [`embed`] builds embeddings into ℚ and into the
//!   ω₁-lengthened rational line.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod classify;
pub mod condense;
pub mod embed;
pub mod equality;
mod error;
pub mod generate;
pub mod ordinal;
pub mod parse;
pub mod points;
pub mod rational;
pub mod rules;
pub mod term;

pub use algebra::{
    check_left_regular_band, check_semigroup, closure_table, mul_finite, mul_omega, multiply,
    LawCheck, LawReport, ProductTable, SemigroupCase,
};
pub use classify::{
    check_tfae, profile, CardClass, Cofinality, ConsistencyReport, Level, PerLevel, Profile,
};
pub use condense::{cc, cc_ordinal, glue, CondResult};
pub use embed::{
    cantor_embed, embed_into_u, EmbedCase, EmbedCertificate, EmbedOutcome, GapMap, SpineEntry,
    SpineSource,
};
pub use equality::{eq_order_type, Equality};
pub use error::{Error, Result};
pub use ordinal::{Cnf, Exponent, WellOrder};
pub use parse::{parse, parse_expr, Expr};
pub use points::{
    class_frame, class_index, compare_points, interval_class, sample_points, ClassFrame, PointCode,
    Side, Slot, UPoint,
};
pub use rational::Rational;
pub use term::{detach_first, detach_last, normalize, OrderTerm};
