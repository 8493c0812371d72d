//! Exact arithmetic in the group, its covering group `Γ` and the action on
//! the binary tree.

mod gamma;
mod sections;
mod tree;
mod word;
mod word_problem;

pub use gamma::{gamma_length, gamma_normal_form, GammaNormalForm, Syllable, D4};
pub use sections::{
    act, level_decomposition, permutation_cycles, section_at, section_at_bit, sections, LevelDecomposition,
    SectionDecomposition,
};
pub(crate) use sections::apply_letter;
pub use tree::{vertex, BitPermutation, TreeVertex};
pub use word::{word, GroupWord, Letter, MAX_WORD_LEN};
pub use word_problem::{element_order, equal_in_group, is_trivial, triviality, Triviality};
