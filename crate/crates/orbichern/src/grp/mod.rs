//! Finitely presented source groups, finite permutation target groups,
//! wreath products, homomorphism search, and subgroup-growth sequences.

mod finite;
mod homsearch;
mod jseq;
mod perm;
mod spec;
mod wreath;

pub use finite::{FiniteGroup, DEFAULT_GROUP_CAP};
pub use homsearch::{eval_word, for_each_hom, hom_candidates, Budget, MulTable};
pub use jseq::{
    count_transitive_homs, free_abelian_j, j_sequence, u_sequence, JEntry, JSequence, Provenance,
};
pub use perm::Permutation;
pub(crate) use perm::orbit_sizes;
pub use spec::{GroupSpec, Presentation, Word};
pub use wreath::{wreath_identity, wreath_inv, wreath_mul, WreathElement, WreathGroup};
