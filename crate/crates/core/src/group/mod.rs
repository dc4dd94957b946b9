//! Finite groups, unfactorizability and automorphisms of direct products.

pub mod corpus;
mod finite;
mod morphism;
mod product;
mod subgroups;

pub use finite::{FiniteGroup, GroupJson, GroupOps};
pub use morphism::{
    are_isomorphic, automorphisms, automorphisms_capped, generating_set, isomorphisms,
    GroupAutomorphism, DEFAULT_AUTOMORPHISM_CAP,
};
pub use product::{
    aut_order_check, aut_order_check_capped, compose_product_automorphism,
    decompose_product_automorphism, is_automorphism_of_product, AutOrderReport, BlockAutomorphism,
    ProductAutomorphism, ProductGroup, ProductGroupSpec, ProductSpecJson, DEFAULT_PRODUCT_CAP,
};
pub use subgroups::{
    all_subgroups, center, conjugacy_classes, direct_decomposition_witness, generated,
    is_indecomposable, is_unfactorizable, unfactorizable_equivalence_check, ElementSet,
    FactorWitness, Subgroup, UnfactorizableReport,
};
