//! Monomorphic decompositions and profiles of finite relational structures.

pub mod canon;
pub mod catalog;
pub mod decomposition;
pub mod error;
pub mod extraction;
pub mod kind;
pub mod morphism;
pub mod profile;
pub mod structure;
pub mod subsets;
pub mod verify;

pub use canon::{canonical_code, generic_code, ordered_code, Code};
pub use catalog::{generate, random_structure, CatalogOptions, CatalogSpec, Family, RandomOptions};
pub use decomposition::{
    component_count_series, components_via_oracle, equivalence_partition, f_equivalent,
    is_monomorphic_block_oracle, k_equivalent, le_k_equivalent, level_partition,
    monomorphic_partition, threshold_for, Equivalence, FEquivalence, Partition,
};
pub use extraction::{
    dichotomy_witness, dichotomy_witness_all, invariant_restriction, ramsey_subset,
    validate_witness, witness_system, CertifiedWitness, DichotomyWitness, InvariantRestriction,
    PairColoring, WitnessSystem,
};
pub use error::{Error, ErrorClass, Result};
pub use kind::Kind;
pub use profile::{
    age, age_generic, ages, bounds_up_to, classify_growth, fit_quasi_polynomial, forb_levels,
    forb_profile, infinite_component_degree_check, profile_series, profile_series_generic,
    DegreeReport, GrowthConfig, GrowthKind, GrowthVerdict, ProfileSeries, QuasiPolynomialFit,
};
pub use morphism::{embeds, find_embedding, is_interval, isomorphic, order_interval};
pub use structure::{graph, natural_order, Signature, Structure};
