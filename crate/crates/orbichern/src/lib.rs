//! Exact engines for the generating-function calculus of orbifold invariants
//! of symmetric products `X^n/S_n` and wreath-product quotients `X^n/(G≀S_n)`.
//!
//! Everything is computed over exact rationals: truncated formal power series
//! ([`qexact`]), subgroup-growth sequences and homomorphism enumeration
//! ([`grp`]), homomorphism censuses stratified by cycle type ([`homcount`]),
//! the free graded algebra of diagonal classes with its ⊙-product
//! ([`diagalg`]), and concrete finite models where both sides of each
//! identity are evaluated pointwise and compared for exact equality
//! ([`finmodel`]).
//!
//! The identities covered: the Dey–Wohlfahrt exponential formula for
//! `Σ_n 1^{(A)}_{X^n/S_n} z^n`, its wreath-product generalization, the
//! Macdonald / Bryan–Fulman / Tamanoi Euler-characteristic specializations,
//! and Müller's formula for `Σ_n |Hom(A, G≀S_n)|/(|G|^n n!) z^n`.

pub mod diagalg;
pub mod finmodel;
pub mod grp;
pub mod homcount;
pub mod qexact;

use thiserror::Error;

/// Crate-wide error type. Enumeration engines never return partial results:
/// a budget or cap overrun is reported before work starts.
#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation orders differ: {0} vs {1}")]
    TruncMismatch(usize, usize),
    #[error("{op}: constant term must be zero")]
    NonzeroConstantTerm { op: &'static str },
    #[error("{op}: constant term must be one")]
    ConstantTermNotOne { op: &'static str },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("permutation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("group closure exceeds cap of {cap} elements")]
    GroupCapExceeded { cap: usize },
    #[error("enumeration budget exceeded: {needed} candidates, cap {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("{op} does not support group {group}")]
    UnsupportedGroup { op: &'static str, group: String },
    #[error("transitive action count {count} for r={r} is not divisible by (r-1)!")]
    TransitiveCountNotDivisible { r: usize, count: u64 },
    #[error("unknown base class `{0}` in specialization")]
    UnknownBaseClass(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("group action is not well-defined: {0}")]
    BadAction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
