//! Simplicial complexes, boundary maps and Lefschetz numbers.

pub mod complex;
pub mod corpus;
pub mod lefschetz;

pub use complex::{
    betti_numbers, boundary_matrices, boundary_matrix, euler_characteristic, ComplexJson,
    SimplicialComplex, MAX_SIMPLICES,
};
pub use lefschetz::{
    chain_level_trace, chain_map, lefschetz_from_json, lefschetz_number, lefschetz_report,
    lefschetz_report_subdivided, LefschetzReport, MapJson, SimplicialMap, SubdividedMap,
};
