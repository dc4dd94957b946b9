use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::map::{LiftedMap, SmoothTorusMap};
use crate::error::{Error, Result};
use crate::linalg::{cokernel, det_exact, det_f64, CokernelStructure, CosetRep, RealMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Newton stops once the max-norm residual is at most this.
    pub convergence_tolerance: f64,
    /// Converged points closer than this on the torus are merged.
    pub dedupe_radius: f64,
    /// Minimum `|det(I - Df)|` for a point to count as transversal.
    pub transversality_threshold: f64,
    /// Maximum distance from `x - F(x)` to the nearest integer vector.
    pub label_tolerance: f64,
    /// Seeds per axis in each unit cell.
    pub grid_density: usize,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            convergence_tolerance: 1e-12,
            dedupe_radius: 1e-8,
            transversality_threshold: 1e-8,
            label_tolerance: 1e-6,
            grid_density: 32,
            max_iterations: 50,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.convergence_tolerance,
            self.dedupe_radius,
            self.transversality_threshold,
            self.label_tolerance,
        ];
        if positive.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::Validation("tolerances must be positive".into()));
        }
        if self.grid_density == 0 || self.max_iterations == 0 {
            return Err(Error::Validation(
                "grid density and iteration count must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPointNumeric {
    /// Point in `[0, 1)^n`.
    pub coordinates: Vec<f64>,
    pub jacobian: RealMatrix,
    pub det_i_minus_df: f64,
    pub index: i32,
    pub transversal: bool,
    pub class_label: CosetRep,
    /// Max-norm distance from `F(x) - x` to the nearest integer vector.
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub points: Vec<FixedPointNumeric>,
    pub seeds: usize,
    pub converged: usize,
    pub non_converged: usize,
    #[serde(with = "crate::json::bigint")]
    pub expected_count: BigInt,
    pub count_matches: bool,
    pub all_transversal: bool,
    pub labels_distinct: bool,
}

impl SolveReport {
    pub fn passed(&self) -> bool {
        self.count_matches && self.all_transversal && self.labels_distinct
    }

    pub fn index_sum(&self) -> i64 {
        self.points.iter().map(|p| i64::from(p.index)).sum()
    }
}

fn displacement_cokernel<M: LiftedMap + ?Sized>(f: &M) -> Result<(BigInt, CokernelStructure)> {
    let d = f.linear_part().identity_minus()?;
    let det = det_exact(&d)?;
    if det.is_zero() {
        return Err(Error::Precondition("linear part has det(I - A) = 0".into()));
    }
    Ok((det, cokernel(&d, f.dim())?))
}

/// Nielsen class of a fixed point: the offset `v = x - F(x)` of the lift
/// `x -> F(x) + v` fixing `x`, rounded and reduced modulo `(I - A) Z^n`.
pub fn class_label<M: LiftedMap + ?Sized>(
    f: &M,
    x: &[f64],
    cfg: &SolverConfig,
) -> Result<CosetRep> {
    let (_, coker) = displacement_cokernel(f)?;
    label_with(f, &coker, x, cfg.label_tolerance)
}

fn label_with<M: LiftedMap + ?Sized>(
    f: &M,
    coker: &CokernelStructure,
    x: &[f64],
    tolerance: f64,
) -> Result<CosetRep> {
    let fx = f.lift(x);
    let v: Vec<f64> = x.iter().zip(&fx).map(|(a, b)| a - b).collect();
    let residual = v.iter().map(|t| (t - t.round()).abs()).fold(0.0, f64::max);
    if residual.is_nan() || residual > tolerance {
        return Err(Error::LabelAmbiguous {
            residual,
            tolerance,
        });
    }
    let rounded: Vec<BigInt> = v.iter().map(|t| BigInt::from(t.round() as i64)).collect();
    let label = coker.label_of(&rounded)?;
    let vector = coker.vector_of(&label)?;
    Ok(CosetRep { label, vector })
}

/// Solves `x - F(x) = v` by Newton from `x0`.
fn newton<M: LiftedMap + ?Sized>(
    f: &M,
    v: &[f64],
    x0: Vec<f64>,
    cfg: &SolverConfig,
) -> Option<Vec<f64>> {
    let n = x0.len();
    let mut x = x0;
    for _ in 0..cfg.max_iterations {
        let fx = f.lift(&x);
        let r: Vec<f64> = (0..n).map(|i| x[i] - fx[i] - v[i]).collect();
        let norm = r.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        if !norm.is_finite() {
            return None;
        }
        if norm <= cfg.convergence_tolerance {
            return Some(x);
        }
        let df = f.jacobian(&x);
        let j = DMatrix::from_fn(n, n, |i, k| (if i == k { 1.0 } else { 0.0 }) - df[(i, k)]);
        let step = j.lu().solve(&DVector::from_vec(r))?;
        for i in 0..n {
            x[i] -= step[i];
        }
    }
    None
}

fn torus_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).rem_euclid(1.0);
            d.min(1.0 - d)
        })
        .fold(0.0, f64::max)
}

fn reduce(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|t| {
            let r = t.rem_euclid(1.0);
            if r >= 1.0 {
                0.0
            } else {
                r
            }
        })
        .collect()
}

/// Integer offsets in the box bounding `(I - A)[0,1)^n - p`.
fn offsets<M: LiftedMap + ?Sized>(f: &M) -> Vec<Vec<i64>> {
    let d = f.linear_part().identity_minus().expect("square");
    let b = f.periodic_bound();
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for row in d.row_iter() {
        let lo: i64 = row.iter().map(|x| x.to_i64().unwrap_or(0).min(0)).sum();
        let hi: i64 = row.iter().map(|x| x.to_i64().unwrap_or(0).max(0)).sum();
        let lo = (lo as f64 - b).ceil() as i64;
        let hi = (hi as f64 + b).floor() as i64;
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

fn grid(n: usize, density: usize) -> Vec<Vec<f64>> {
    let total = density.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut x = vec![0.0; n];
            for slot in x.iter_mut().rev() {
                *slot = ((code % density) as f64 + 0.5) / density as f64;
                code /= density;
            }
            x
        })
        .collect()
}

/// Upper limit on Newton runs per solve.
pub const MAX_SEEDS: usize = 1 << 24;

/// Locates all fixed points of a map whose linear part has `det(I - A) != 0`.
pub fn find_fixed_points<M: LiftedMap + ?Sized>(f: &M, cfg: &SolverConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let (det, coker) = displacement_cokernel(f)?;
    let n = f.dim();
    let offs = offsets(f);
    let seeds = grid(n, cfg.grid_density);
    let total = offs.len().saturating_mul(seeds.len());
    if total > MAX_SEEDS {
        return Err(Error::SizeCap {
            what: "Newton seeds",
            size: total,
            cap: MAX_SEEDS,
        });
    }
    let runs: Vec<Option<Vec<f64>>> = offs
        .par_iter()
        .flat_map_iter(|v| {
            let vf: Vec<f64> = v.iter().map(|&c| c as f64).collect();
            seeds
                .iter()
                .map(move |s| newton(f, &vf, s.clone(), cfg))
                .collect::<Vec<_>>()
        })
        .collect();
    let converged: Vec<Vec<f64>> = runs.iter().flatten().map(|x| reduce(x)).collect();
    let non_converged = runs.len() - converged.len();

    let mut sorted = converged.clone();
    sorted.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut kept: Vec<Vec<f64>> = Vec::new();
    for x in sorted {
        if kept
            .iter()
            .all(|k| torus_distance(k, &x) >= cfg.dedupe_radius)
        {
            kept.push(x);
        }
    }

    let mut points = Vec::with_capacity(kept.len());
    for x in kept {
        let jac = f.jacobian(&x);
        let i_minus = RealMatrix::identity(n)
            .entries()
            .iter()
            .zip(jac.entries())
            .map(|(a, b)| a - b)
            .collect();
        let d = det_f64(&RealMatrix::new(n, n, i_minus)?)?;
        let fx = f.lift(&x);
        let residual = x
            .iter()
            .zip(&fx)
            .map(|(a, b)| {
                let t = b - a;
                (t - t.round()).abs()
            })
            .fold(0.0, f64::max);
        points.push(FixedPointNumeric {
            class_label: label_with(f, &coker, &x, cfg.label_tolerance)?,
            coordinates: x,
            jacobian: jac,
            det_i_minus_df: d,
            index: if d > 0.0 {
                1
            } else if d < 0.0 {
                -1
            } else {
                0
            },
            transversal: d.abs() >= cfg.transversality_threshold,
            residual,
        });
    }
    let mut labels: Vec<&CosetRep> = points.iter().map(|p| &p.class_label).collect();
    labels.sort();
    labels.dedup();
    let expected_count = det.abs();
    Ok(SolveReport {
        seeds: runs.len(),
        converged: converged.len(),
        non_converged,
        count_matches: BigInt::from(points.len()) == expected_count,
        all_transversal: points.iter().all(|p| p.transversal),
        labels_distinct: labels.len() == points.len(),
        expected_count,
        points,
    })
}

/// Guarded entry point for a single smooth map.
pub fn find_fixed_points_guarded(f: &SmoothTorusMap, cfg: &SolverConfig) -> Result<SolveReport> {
    displacement_cokernel(f)?;
    f.check_guard()?;
    find_fixed_points(f, cfg)
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub index_sum: i64,
    #[serde(with = "crate::json::bigint")]
    pub lefschetz: BigInt,
    pub equal: bool,
    pub solve: SolveReport,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.equal && self.solve.passed()
    }
}

/// Sum of numerical indices against `L = det(I - A)`.
pub fn lefschetz_hopf_check(f: &SmoothTorusMap, cfg: &SolverConfig) -> Result<HopfReport> {
    let solve = find_fixed_points_guarded(f, cfg)?;
    let lefschetz = det_exact(&f.linear_part().identity_minus()?)?;
    let index_sum = solve.index_sum();
    Ok(HopfReport {
        equal: BigInt::from(index_sum) == lefschetz,
        index_sum,
        lefschetz,
        solve,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FdReport {
    pub step: f64,
    pub max_abs_deviation: f64,
    /// Deviation divided by `max(1, max |Df_ij|)`.
    pub max_rel_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Analytic Jacobian against central differences of the lift.
pub fn jacobian_fd_check<M: LiftedMap + ?Sized>(
    f: &M,
    x: &[f64],
    step: f64,
    tolerance: f64,
) -> Result<FdReport> {
    let n = f.dim();
    if x.len() != n {
        return Err(Error::Dimension(format!(
            "point has length {}, map has dim {n}",
            x.len()
        )));
    }
    let analytic = f.jacobian(x);
    let mut max_abs = 0.0f64;
    for j in 0..n {
        let mut plus = x.to_vec();
        let mut minus = x.to_vec();
        plus[j] += step;
        minus[j] -= step;
        let fp = f.lift(&plus);
        let fm = f.lift(&minus);
        for i in 0..n {
            let fd = (fp[i] - fm[i]) / (2.0 * step);
            max_abs = max_abs.max((fd - analytic[(i, j)]).abs());
        }
    }
    let scale = analytic
        .entries()
        .iter()
        .fold(1.0f64, |m, t| m.max(t.abs()));
    let rel = max_abs / scale;
    Ok(FdReport {
        step,
        max_abs_deviation: max_abs,
        max_rel_deviation: rel,
        tolerance,
        passed: rel <= tolerance,
    })
}
