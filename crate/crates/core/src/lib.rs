//! Congruences on free semigroups, computed on bounded word universes.
//!
//! The free semigroup `E⁺` over a finite alphabet is infinite, so every
//! computation here runs on `U_L`, the words of length at most `L`. The
//! crate provides:
//!
//! * [`word`]: alphabets, words, and canonical enumeration of `U_L`;
//! * [`relation`]: symmetric pair relations, partitions, transitive closure;
//! * [`closure`]: invariance, invariant closure, minimal kernels, and
//!   context decompositions;
//! * [`congruence`]: bounded congruence checks, saturation from seed pairs,
//!   quotient semigroups;
//! * [`hom`]: finite semigroups, homomorphic extensions, kernels and their
//!   factorization, the permutation congruence;
//! * [`oracle`]: brute-force verifiers and seeded generators;
//! * [`format`] and [`cli`]: the text formats and the command-line tool.
//!
//! With the default `parallel` feature, verification passes run on rayon;
//! results are identical without it.

pub mod cli;
pub mod closure;
pub mod congruence;
pub mod error;
pub mod format;
pub mod hom;
pub mod oracle;
pub mod par;
pub mod relation;
pub mod word;

pub use closure::{
    ic_member, invariant_closure, is_invariant, minimal_kernel, strip_to_core,
    ContextDecomposition, ContextViolation, Side,
};
pub use congruence::{
    build_quotient, check_congruence, generate_congruence, verify_well_defined, CongruenceVerdict,
    QuotientSemigroup,
};
pub use error::{Error, Result};
pub use hom::{
    abelian_congruence, check_associativity, check_homomorphism, commutative_image, extend_hom,
    factorize, kernel, length_parity_congruence, FactorizationResult, FiniteSemigroup, LetterMap,
};
pub use oracle::{
    bfs_word_equivalence, check_characterization, check_inclusion_chain, random_congruence,
    random_equivalence, LemmaReport, TheoremReport,
};
pub use relation::{
    coset, partition_to_relation, relation_to_partition, transitive_closure, union_family,
    ClosureTrace, PairRelation, Partition,
};
pub use word::{enumerate_universe, parse_word, Alphabet, Universe, Word};
