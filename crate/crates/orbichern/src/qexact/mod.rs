//! Exact rational scalars and truncated formal power series over Q.
//!
//! A [`Series`] of truncation order `N` carries exactly the coefficients of
//! `z^0 … z^N`; coefficients beyond `N` are undefined, not zero, and mixing
//! truncation orders is an error rather than a silent re-truncation.

mod rat;
mod series;

pub use rat::{binomial, factorial, Rat};
pub use series::Series;
