//! Fixed points of smooth perturbed torus maps by Newton's method.

pub mod corpus;
pub mod cyclic;
pub mod map;
pub mod solver;

pub use cyclic::{
    compare_block_dets, cyclic_jacobian_check, BlockDetComparison, CyclicJacobianReport,
    CyclicPointCheck, CyclicSmoothMap, CyclicSmoothMapJson, BLOCK_DET_RELATIVE_TOLERANCE,
};
pub use map::{ComposedMap, LiftedMap, Mode, SmoothTorusMap, SmoothTorusMapJson};
pub use solver::{
    class_label, find_fixed_points, find_fixed_points_guarded, jacobian_fd_check,
    lefschetz_hopf_check, FdReport, FixedPointNumeric, HopfReport, SolveReport, SolverConfig,
};

#[cfg(test)]
mod tests;
