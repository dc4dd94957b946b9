use serde::{Deserialize, Serialize};

use super::map::{ComposedMap, LiftedMap, SmoothTorusMap, SmoothTorusMapJson};
use super::solver::{find_fixed_points, SolveReport, SolverConfig};
use crate::error::{Error, Result};
use crate::linalg::{block_cyclic, cyclic_product, det_f64, RealMatrix};

/// `tau o (F_1 x ... x F_m)` on `(T^n)^m`.
#[derive(Clone, Debug)]
pub struct CyclicSmoothMap {
    components: Vec<SmoothTorusMap>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CyclicSmoothMapJson {
    pub components: Vec<SmoothTorusMapJson>,
}

impl CyclicSmoothMap {
    pub fn new(components: Vec<SmoothTorusMap>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Validation("cyclic map needs a component".into()));
        };
        let n = first.dim();
        if components.iter().any(|c| c.dim() != n) {
            return Err(Error::Dimension("components differ in dimension".into()));
        }
        Ok(CyclicSmoothMap { components })
    }

    pub fn components(&self) -> &[SmoothTorusMap] {
        &self.components
    }

    pub fn composed(&self) -> ComposedMap<'_> {
        ComposedMap::new(&self.components).expect("equal dims")
    }
}

impl TryFrom<CyclicSmoothMapJson> for CyclicSmoothMap {
    type Error = Error;

    fn try_from(j: CyclicSmoothMapJson) -> Result<Self> {
        CyclicSmoothMap::new(
            j.components
                .into_iter()
                .map(SmoothTorusMap::try_from)
                .collect::<Result<_>>()?,
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockDetComparison {
    /// `det(I_{mn} - N)` with `N` block-cyclic in the component Jacobians.
    pub cyclic_det: f64,
    /// `det(I_n - N_m ... N_1)`.
    pub composed_det: f64,
    pub relative_deviation: f64,
    pub signs_equal: bool,
    pub inconclusive: bool,
}

/// Compares both determinants for one tuple of Jacobians.
pub fn compare_block_dets(jacobians: &[RealMatrix], threshold: f64) -> Result<BlockDetComparison> {
    let n_big = block_cyclic(jacobians)?;
    let prod = cyclic_product(jacobians)?;
    let cyclic_det = det_f64(&n_big.identity_minus()?)?;
    let composed_det = det_f64(&prod.identity_minus()?)?;
    let scale = cyclic_det.abs().max(composed_det.abs()).max(1.0);
    Ok(BlockDetComparison {
        cyclic_det,
        composed_det,
        relative_deviation: (cyclic_det - composed_det).abs() / scale,
        signs_equal: cyclic_det.signum() == composed_det.signum()
            || (cyclic_det == 0.0 && composed_det == 0.0),
        inconclusive: cyclic_det.abs() < threshold || composed_det.abs() < threshold,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicPointCheck {
    /// `(a_1, F_1(a_1), ...)` reduced to `[0, 1)^{mn}`.
    pub point: Vec<f64>,
    /// Max-norm distance of `F_m(a_m) - a_1` from an integer vector.
    pub closing_residual: f64,
    pub index: i32,
    pub comparison: BlockDetComparison,
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicJacobianReport {
    pub composed: SolveReport,
    pub points: Vec<CyclicPointCheck>,
    pub all_signs_equal: bool,
    pub max_relative_deviation: f64,
    pub inconclusive: usize,
    /// Sum of indices at the cyclic fixed points.
    pub index_sum: i64,
}

/// Relative tolerance for the floating determinant comparison.
pub const BLOCK_DET_RELATIVE_TOLERANCE: f64 = 1e-8;

/// Tolerance on the closing residual of a pushed-forward point.
pub const CLOSING_TOLERANCE: f64 = 1e-9;

impl CyclicJacobianReport {
    pub fn passed(&self) -> bool {
        self.composed.passed()
            && self.all_signs_equal
            && self.inconclusive == 0
            && self.max_relative_deviation <= BLOCK_DET_RELATIVE_TOLERANCE
            && self.index_sum == self.composed.index_sum()
            && self
                .points
                .iter()
                .all(|p| p.closing_residual <= CLOSING_TOLERANCE)
    }
}

/// Solves the composed map, pushes each fixed point to the cyclic map via
/// `a_1 -> (a_1, F_1(a_1), ...)` and compares the index there with the index
/// of the composed map.
pub fn cyclic_jacobian_check(
    f: &CyclicSmoothMap,
    cfg: &SolverConfig,
) -> Result<CyclicJacobianReport> {
    let g = f.composed();
    let composed = find_fixed_points(&g, cfg)?;
    let m = f.components.len();
    let mut points = Vec::with_capacity(composed.points.len());
    for p in &composed.points {
        let orbit = g.orbit(&p.coordinates);
        let jacobians: Vec<RealMatrix> = f
            .components
            .iter()
            .zip(&orbit)
            .map(|(c, a)| c.jacobian(a))
            .collect();
        let back = f.components[m - 1].lift(&orbit[m - 1]);
        let closing_residual = back
            .iter()
            .zip(&orbit[0])
            .map(|(b, a)| {
                let t = b - a;
                (t - t.round()).abs()
            })
            .fold(0.0, f64::max);
        let comparison = compare_block_dets(&jacobians, cfg.transversality_threshold)?;
        points.push(CyclicPointCheck {
            point: orbit.concat().iter().map(|t| t.rem_euclid(1.0)).collect(),
            closing_residual,
            index: comparison.cyclic_det.signum() as i32,
            comparison,
        });
    }
    Ok(CyclicJacobianReport {
        all_signs_equal: points.iter().all(|p| p.comparison.signs_equal),
        max_relative_deviation: points
            .iter()
            .map(|p| p.comparison.relative_deviation)
            .fold(0.0, f64::max),
        inconclusive: points.iter().filter(|p| p.comparison.inconclusive).count(),
        index_sum: points.iter().map(|p| i64::from(p.index)).sum(),
        composed,
        points,
    })
}
