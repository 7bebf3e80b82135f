//! Monomial codes over F2 (Reed-Muller and polar-style constructions) and
//! their coordinate automorphisms: evaluation vectors and ANF, the monomial
//! divisibility order and decreasing closures, affine point maps, stabilizer
//! chains, exact automorphism search at short lengths, a full census of the
//! affine subgroup, and a verification harness for the predicted group
//! structures of lifted and low-degree code families.

pub mod affine;
pub mod aut;
pub mod chain;
pub mod code;
pub mod error;
pub mod eval;
pub mod exec;
pub mod gf2;
pub mod io;
pub mod monomial;
pub mod perm;
pub mod search;
pub mod theorems;

pub use affine::{fiber_swap, fiber_swap_by, lower_triangular_generators, AffineMap, AffinePresentation};
pub use aut::{
    classify, enumerate_affine_automorphisms, image_anf, is_automorphism,
    permutation_from_images, AffineAutomorphisms, AffineGenerator, Classification,
};
pub use chain::{group_order, StabilizerChain};
pub use code::{kernel_row_monomial, BinaryCode, InformationSet};
pub use error::{Error, Result};
pub use eval::{EvalVector, MAX_N};
pub use exec::{run_chunks, set_parallelism, Exec};
pub use gf2::RowSpan;
pub use monomial::{eval_to_anf, Monomial, MonomialSet};
pub use perm::Permutation;
pub use search::{backtrack_group, exhaustive_group, SearchMethod, SearchResult};
pub use theorems::{
    build_generators, check_thm34_form, classical_order, lift_permutation, predict,
    remark43_witness, rm_aut_order, verify, ClassicalKind, Prediction, TheoremCase,
    VerificationReport,
};
