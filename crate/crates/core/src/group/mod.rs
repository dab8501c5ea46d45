//! Finitely presented groups and Tietze moves.

pub mod matching;
pub mod presentation;
pub mod simplify;
pub mod smith;
pub mod word;

pub use matching::{match_up_to_renaming, match_up_to_renaming_with};
pub use presentation::{
    euler_characteristic, tietze1_conjugate, tietze2_eliminate, tietze2_introduce, tietze3_multiply, tietze4_add, Gen,
    Move, Presentation, PresentationJson,
};
pub use simplify::simplify;
pub use smith::{abelianization, AbelianizationResult};
pub use word::{free_reduce, Letter, Word};
