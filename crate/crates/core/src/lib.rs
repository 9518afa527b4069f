//! Qcharacters of minimal affinizations in type A and their tensor products
//! with Kirillov-Reshetikhin modules.

pub mod error;
pub mod lweight;
pub mod minaff;
pub mod sl2fact;
pub mod tableaux;
pub mod tensor;

pub use error::{Error, Result};
pub use lweight::{
    expand_lroot_path, expand_simple_lroot, is_dominant, le, lroot_decompose, restrict, right_negativity,
    root_coordinates, spectral_lroot, spectral_lroot_path, transform, weight_of, y_string, LMonomial,
    LRootDecomposition, Transform, Weight,
};
pub use minaff::{
    drinfeld_of_spec, highest_tableau, kr_qchar_by_partitions, qchar, recognize_minaff, weyl_dimension, Direction,
    Epsilon, KRSpec, MinAffSpec, QChar, QCharCache, Recognized,
};
pub use sl2fact::{in_general_position, pair_in_general_position, q_factorize, StringList};
pub use tableaux::{
    box_support, column_gaps, enumerate_semistandard, is_semistandard, monomial_of_box, monomial_of_tableau, raise_box,
    SemistandardIter, Shape, Tableau,
};
pub use tensor::{
    classify_as, classify_normal, classify_normal_with, classify_variant, classify_variant_with, dominant_resonance,
    dominant_spectrum, expected_dominants, family_s, family_t, product_qchar, resonant_window, single_path_step,
    sweep_grid, theorem_conditions, weights_up_to, Case, CaseTag, DEntry, GridPoint, Resonance, SocleHead, SocleHeads,
    Spectrum, TensorReport, Variant, VariantDiagnostics,
};
