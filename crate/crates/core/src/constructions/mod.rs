//! The paper's constructions and end-to-end verification pipelines.

pub mod canonical;
pub mod extension;
pub mod isotopy;
pub mod paper;
pub mod verify;

pub use canonical::{canonicalize_pencil_presentation, canonicalize_pencil_presentation_logged, lemma_present_target};
pub use extension::{
    build_parallel_extension, build_pencil_extension, detect_pencil_form, exterior_pencil_model,
    exterior_pencil_model_with_config, ExteriorModelConfig, ParallelAttachment, PencilAttachment,
};
pub use isotopy::{
    check_lattice_constancy, check_lattice_constancy_with, default_samples, engineered_degenerate_family,
    family_from_proof, ConstancyReport, FamilyKind, FamilyLine, FamilyParameters, IsotopyFamily, LatticeChange, Poly,
    Witness,
};
pub use verify::{
    canonical_presentation, common_shear, compare_arrangements, lemma_check, verify_arb_lines, verify_instance,
    verify_paper_example, verify_theorem_arb, verify_theorem_main, verify_theorem_main_with, ArbReport, Bijection,
    CompareRoute, Comparison, MainReport,
};
