//! Exact enumeration of canon permutations and rectangular standard Young
//! tableaux, the descent-statistic bijections between them, and an
//! exhaustive harness for the polynomial identities they satisfy.

pub mod bijections;
pub mod config;
pub mod error;
pub mod families;
pub mod par;
pub mod poly;
pub mod series;
pub mod tableaux;
pub mod verify;
pub mod words;

pub use config::Config;
pub use error::{Error, Result};
pub use par::Strategy;
pub use poly::{BivariatePolynomial, Rational, RationalPoly};
pub use series::TruncatedSeries;
pub use tableaux::{DyckPath, LabeledMatching, RectTableau};
pub use words::{CanonWord, IndexSet, Permutation, Word};
