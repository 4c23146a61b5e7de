//! The group `S4 ⋉ (C2 * C2 * C2 * C2)` generated by the index permutations
//! and the four reflective involutions `σ_i`, and its action on the lattice.

mod element;
mod isometry;
mod perm;
mod projection;

pub use element::{parse_sigma_word, GroupElement};
pub use isometry::{
    faithfulness_check, permutation_matrix, sigma_matrix, to_isometry, FaithfulnessReport, IsometryMatrix,
};
pub use perm::Permutation;
pub use projection::{check_parity, parse_reflection_word, project_to_w4c, ReflectionLetter};
