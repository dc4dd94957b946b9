//! The verification sweep behind `verify-all`: one check per acceptance
//! criterion, each returning a deterministic, serializable result.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    self, bundled_valid_multisets, bundled_violating_multisets, check_index_multiset,
    cross_check_with_oracle, SurfaceSpec,
};
use crate::error::Result;
use crate::group::{
    aut_order_check, automorphisms_capped, compose_product_automorphism, corpus,
    decompose_product_automorphism, unfactorizable_equivalence_check, GroupOps, ProductGroup,
    ProductGroupSpec, DEFAULT_PRODUCT_CAP,
};
use crate::homology::{self, corpus as tri, SimplicialMap, SubdividedMap};
use crate::linalg::{cyclic_det_identity_check, IntMatrix};
use crate::smooth::{self, LiftedMap, SolverConfig};
use crate::torus::{self, TorusMap};

/// Runtime budget for the whole sweep.
pub const TOTAL_BUDGET: Duration = Duration::from_secs(300);
/// Runtime budget for the quick sweep.
pub const QUICK_BUDGET: Duration = Duration::from_secs(30);
/// Relative tolerance for analytic against finite-difference Jacobians.
pub const FD_RELATIVE_TOLERANCE: f64 = 1e-5;
/// Finite-difference step.
pub const FD_STEP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub quick: bool,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            quick: false,
            seed: 20_240_611,
        }
    }
}

impl VerifyConfig {
    pub fn quick(seed: u64) -> Self {
        VerifyConfig { quick: true, seed }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    /// Per-criterion budgets; the quick sweep shares one small budget.
    fn budget(&self, full: Duration) -> Duration {
        if self.quick {
            QUICK_BUDGET
        } else {
            full
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub details: Value,
    /// Wall time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    /// One summary line, e.g. `[PASS] 3 unfactorizable equivalence (0.41 s)`.
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {} ({:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(
    id: u8,
    name: &'static str,
    budget: Duration,
    f: impl FnOnce() -> Result<(bool, Value)>,
) -> CriterionResult {
    let start = Instant::now();
    let (passed, mut details) = match f() {
        Ok(r) => r,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    let elapsed = start.elapsed();
    let in_budget = elapsed <= budget;
    if let Value::Object(map) = &mut details {
        map.insert("budget_seconds".into(), json!(budget.as_secs()));
    }
    CriterionResult {
        id,
        name,
        passed: passed && in_budget,
        details,
        elapsed,
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> IntMatrix {
    IntMatrix::from_fn(n, n, |_, _| BigInt::from(rng.gen_range(lo..=hi)))
}

type Observation = (Vec<Vec<i64>>, Vec<i64>);

/// Block determinant identity on random block tuples.
pub fn criterion_1(cfg: &VerifyConfig) -> CriterionResult {
    timed(
        1,
        "block determinant identity",
        cfg.budget(Duration::from_secs(10)),
        || {
            let trials = if cfg.quick { 200 } else { 1000 };
            let mut rng = cfg.rng(1);
            let tuples: Vec<Vec<IntMatrix>> = (0..trials)
                .map(|_| {
                    let k = rng.gen_range(1..=4);
                    let m = rng.gen_range(1..=5);
                    (0..m).map(|_| random_matrix(&mut rng, k, -9, 9)).collect()
                })
                .collect();
            let failures: Vec<usize> = tuples
                .par_iter()
                .enumerate()
                .filter_map(|(i, t)| match cyclic_det_identity_check(t) {
                    Ok(r) if r.equal => None,
                    _ => Some(i),
                })
                .collect();
            Ok((
                failures.is_empty(),
                json!({ "trials": trials, "failures": failures.len(), "failing_trials": failures }),
            ))
        },
    )
}

/// Automorphisms of products of unfactorizable groups.
pub fn criterion_2(cfg: &VerifyConfig) -> CriterionResult {
    timed(
        2,
        "product automorphism decomposition",
        cfg.budget(Duration::from_secs(60)),
        || {
            let s3 = corpus::symmetric(3);
            let spec = ProductGroupSpec::new(vec![(s3.clone(), 2)])?;
            let product = ProductGroup::new(spec, DEFAULT_PRODUCT_CAP)?;
            let auts = automorphisms_capped(&product, DEFAULT_PRODUCT_CAP)?;
            let mut round_trips = 0;
            let mut swaps = 0;
            for phi in &auts {
                let pa = decompose_product_automorphism(&product, phi)?;
                if pa.blocks[0].permutation == [1, 0] {
                    swaps += 1;
                }
                if compose_product_automorphism(&product, &pa)? == *phi {
                    round_trips += 1;
                }
            }
            let specs: Vec<(&str, ProductGroupSpec)> = {
                let mut v = vec![("S3^2", ProductGroupSpec::new(vec![(s3.clone(), 2)])?)];
                if !cfg.quick {
                    v.push((
                        "S3 x D5",
                        ProductGroupSpec::new(vec![(s3.clone(), 1), (corpus::dihedral(5), 1)])?,
                    ));
                    v.push((
                        "S3 x S4",
                        ProductGroupSpec::new(vec![(s3.clone(), 1), (corpus::symmetric(4), 1)])?,
                    ));
                }
                v
            };
            let mut orders = Vec::new();
            let mut all_equal = true;
            for (name, spec) in specs {
                let r = aut_order_check(&spec)?;
                all_equal &= r.equal;
                orders.push(json!({
                    "product": name,
                    "enumerated": r.enumerated,
                    "formula": r.formula.to_string(),
                    "equal": r.equal,
                }));
            }
            let passed = auts.len() == 72 && round_trips == 72 && all_equal;
            Ok((
                passed,
                json!({
                    "s3_squared_automorphisms": auts.len(),
                    "round_trips": round_trips,
                    "with_swap": swaps,
                    "aut_orders": orders,
                }),
            ))
        },
    )
}

/// Unfactorizable iff centerless and indecomposable, over the group corpus.
pub fn criterion_3(cfg: &VerifyConfig) -> CriterionResult {
    timed(
        3,
        "unfactorizable equivalence",
        cfg.budget(Duration::from_secs(60)),
        || {
            let groups: Vec<_> = corpus::bundled_groups()
                .into_iter()
                .filter(|g| !cfg.quick || g.order() <= 24)
                .collect();
            let reports: Vec<_> = groups
                .par_iter()
                .map(|g| {
                    (
                        g.name().unwrap_or("unnamed").to_string(),
                        unfactorizable_equivalence_check(g),
                    )
                })
                .collect();
            let discrepancies: Vec<&str> = reports
                .iter()
                .filter(|(_, r)| !r.consistent)
                .map(|(n, _)| n.as_str())
                .collect();
            let unfactorizable = reports.iter().filter(|(_, r)| r.unfactorizable).count();
            Ok((
                discrepancies.is_empty(),
                json!({
                    "groups": reports.len(),
                    "max_order": groups.iter().map(|g| g.order()).max().unwrap_or(0),
                    "unfactorizable": unfactorizable,
                    "discrepancies": discrepancies,
                }),
            ))
        },
    )
}

/// Non-degenerate maps with entries in `[-3, 3]`.
fn nondegenerate(dim: usize) -> Vec<TorusMap> {
    torus::all_maps(dim, -3, 3)
        .into_iter()
        .filter(|f| !f.lefschetz().is_zero())
        .collect()
}

/// One family of factor tuples in a sweep.
struct Family {
    name: &'static str,
    exhaustive: bool,
    tuples: Vec<Vec<TorusMap>>,
}

fn cartesian(parts: &[&[TorusMap]]) -> Vec<Vec<TorusMap>> {
    parts.iter().fold(vec![Vec::new()], |acc, part| {
        acc.iter()
            .flat_map(|p| {
                part.iter().map(move |f| {
                    let mut q = p.clone();
                    q.push(f.clone());
                    q
                })
            })
            .collect()
    })
}

fn sample(rng: &mut ChaCha8Rng, parts: &[&[TorusMap]], count: usize) -> Vec<Vec<TorusMap>> {
    (0..count)
        .map(|_| {
            parts
                .iter()
                .map(|p| p.choose(rng).expect("nonempty").clone())
                .collect()
        })
        .collect()
}

/// Factor tuples for the product sweep. Tuples of circle maps and tuples
/// with a single 2-torus factor are exhaustive; tuples with two or three
/// 2-torus factors are sampled.
fn product_families(cfg: &VerifyConfig) -> Vec<Family> {
    let one = nondegenerate(1);
    let two = nondegenerate(2);
    let (o, t) = (one.as_slice(), two.as_slice());
    let mut rng = cfg.rng(4);
    let mut fams = vec![Family {
        name: "circle tuples, 1 to 3 factors",
        exhaustive: true,
        tuples: [cartesian(&[o]), cartesian(&[o, o]), cartesian(&[o, o, o])].concat(),
    }];
    if cfg.quick {
        fams.push(Family {
            name: "single 2-torus factor, sampled",
            exhaustive: false,
            tuples: sample(&mut rng, &[t], 300),
        });
        fams.push(Family {
            name: "mixed tuples, sampled",
            exhaustive: false,
            tuples: [
                sample(&mut rng, &[t, t], 300),
                sample(&mut rng, &[o, t, t], 100),
            ]
            .concat(),
        });
        return fams;
    }
    fams.push(Family {
        name: "single 2-torus factor",
        exhaustive: true,
        tuples: cartesian(&[t]),
    });
    fams.push(Family {
        name: "one 2-torus and one circle factor, both orders",
        exhaustive: true,
        tuples: [cartesian(&[o, t]), cartesian(&[t, o])].concat(),
    });
    fams.push(Family {
        name: "one 2-torus and two circle factors, all positions",
        exhaustive: true,
        tuples: [
            cartesian(&[t, o, o]),
            cartesian(&[o, t, o]),
            cartesian(&[o, o, t]),
        ]
        .concat(),
    });
    fams.push(Family {
        name: "two 2-torus factors, sampled",
        exhaustive: false,
        tuples: sample(&mut rng, &[t, t], 20_000),
    });
    fams.push(Family {
        name: "two 2-torus factors and a circle, sampled",
        exhaustive: false,
        tuples: [
            sample(&mut rng, &[t, t, o], 2_000),
            sample(&mut rng, &[t, o, t], 2_000),
            sample(&mut rng, &[o, t, t], 2_000),
        ]
        .concat(),
    });
    fams.push(Family {
        name: "three 2-torus factors, sampled",
        exhaustive: false,
        tuples: sample(&mut rng, &[t, t, t], 3_000),
    });
    fams
}

/// Product formulas for L, N and class indices on torus factor tuples.
pub fn criterion_4(cfg: &VerifyConfig) -> CriterionResult {
    timed(
        4,
        "product formulas on tori",
        cfg.budget(Duration::from_secs(300)),
        || {
            let fams = product_families(cfg);
            let mut summary = Vec::new();
            let mut passed = true;
            let mut observations = Vec::new();
            for fam in &fams {
                let results: Vec<(bool, usize, Option<Observation>)> = fam
                    .tuples
                    .par_iter()
                    .map(|fs| match torus::analyze_product(fs) {
                        Ok(r) => {
                            let obs = (fs.len() > 1).then(|| {
                                (
                                    r.factors
                                        .iter()
                                        .map(|s| {
                                            s.classes.iter().map(|c| i64::from(c.index)).collect()
                                        })
                                        .collect(),
                                    r.direct
                                        .classes
                                        .iter()
                                        .map(|c| i64::from(c.index))
                                        .collect(),
                                )
                            });
                            (r.passed(), r.classes_checked, obs)
                        }
                        Err(_) => (false, 0, None),
                    })
                    .collect();
                let failures = results.iter().filter(|r| !r.0).count();
                let classes: usize = results.iter().map(|r| r.1).sum();
                passed &= failures == 0;
                // index observations from the sampled families feed the bound cross-check
                if !fam.exhaustive {
                    observations.extend(results.into_iter().filter_map(|r| r.2).take(2_000));
                }
                summary.push(json!({
                    "family": fam.name,
                    "exhaustive": fam.exhaustive,
                    "tuples": fam.tuples.len(),
                    "classes_checked": classes,
                    "failures": failures,
                }));
            }
            let cross = cross_check_with_oracle(&observations);
            passed &= cross.dominated;
            Ok((
                passed,
                json!({ "families": summary, "bound_cross_check": cross }),
            ))
        },
    )
}

fn cyclic_families(cfg: &VerifyConfig) -> Vec<Family> {
    let one = torus::all_maps(1, -3, 3);
    let two = torus::all_maps(2, -3, 3);
    let (o, t) = (one.as_slice(), two.as_slice());
    let mut rng = cfg.rng(5);
    let mut fams = vec![Family {
        name: "circle components, m = 1 to 3",
        exhaustive: true,
        tuples: [cartesian(&[o]), cartesian(&[o, o]), cartesian(&[o, o, o])].concat(),
    }];
    if cfg.quick {
        fams.push(Family {
            name: "2-torus components, m = 1 to 3, sampled",
            exhaustive: false,
            tuples: [
                sample(&mut rng, &[t], 200),
                sample(&mut rng, &[t, t], 200),
                sample(&mut rng, &[t, t, t], 100),
            ]
            .concat(),
        });
        return fams;
    }
    fams.push(Family {
        name: "2-torus components, m = 1",
        exhaustive: true,
        tuples: cartesian(&[t]),
    });
    fams.push(Family {
        name: "2-torus components, m = 2, sampled",
        exhaustive: false,
        tuples: sample(&mut rng, &[t, t], 10_000),
    });
    fams.push(Family {
        name: "2-torus components, m = 3, sampled",
        exhaustive: false,
        tuples: sample(&mut rng, &[t, t, t], 5_000),
    });
    fams
}

/// Cyclic reduction: the cyclic map and the composed map agree, and the
/// rho correspondence is an index-preserving bijection.
pub fn criterion_5(cfg: &VerifyConfig) -> CriterionResult {
    timed(
        5,
        "cyclic reduction on tori",
        cfg.budget(Duration::from_secs(300)),
        || {
            let mut summary = Vec::new();
            let mut passed = true;
            for fam in cyclic_families(cfg) {
                let results: Vec<(bool, bool, usize)> = fam
                    .tuples
                    .par_iter()
                    .map(|comps| {
                        let Ok(c) = torus::CyclicTorusMap::new(comps.clone()) else {
                            return (false, false, 0);
                        };
                        let ok = torus::analyze_cyclic(&c)
                            .map(|r| r.passed())
                            .unwrap_or(false);
                        if c.composed().lefschetz().is_zero() {
                            return (ok, false, 0);
                        }
                        match torus::rho_correspondence(&c) {
                            Ok(r) => (ok && r.passed(), true, r.pairs.len()),
                            Err(_) => (false, true, 0),
                        }
                    })
                    .collect();
                let failures = results.iter().filter(|r| !r.0).count();
                passed &= failures == 0;
                summary.push(json!({
                    "family": fam.name,
                    "exhaustive": fam.exhaustive,
                    "tuples": fam.tuples.len(),
                    "rho_checked": results.iter().filter(|r| r.1).count(),
                    "rho_pairs": results.iter().map(|r| r.2).sum::<usize>(),
                    "failures": failures,
                }));
            }
            Ok((passed, json!({ "families": summary })))
        },
    )
}

/// Lefschetz-Hopf for the smooth corpus, and analytic Jacobians against
/// finite differences.
pub fn criterion_6(cfg: &VerifyConfig) -> CriterionResult {
    timed(
        6,
        "smooth Lefschetz-Hopf",
        cfg.budget(Duration::from_secs(120)),
        || {
            let solver = SolverConfig {
                grid_density: if cfg.quick {
                    8
                } else {
                    SolverConfig::default().grid_density
                },
                ..SolverConfig::default()
            };
            let mut rng = cfg.rng(6);
            let mut rows = Vec::new();
            let mut passed = true;
            let maps = smooth::corpus::bundled_maps();
            for (name, f) in &maps {
                let h = smooth::lefschetz_hopf_check(f, &solver)?;
                let mut worst = 0.0f64;
                let probes: Vec<Vec<f64>> = h
                    .solve
                    .points
                    .iter()
                    .map(|p| p.coordinates.clone())
                    .chain((0..4).map(|_| (0..f.dim()).map(|_| rng.gen::<f64>()).collect()))
                    .collect();
                let mut fd_ok = true;
                for x in &probes {
                    let r = smooth::jacobian_fd_check(f, x, FD_STEP, FD_RELATIVE_TOLERANCE)?;
                    worst = worst.max(r.max_rel_deviation);
                    fd_ok &= r.passed;
                }
                passed &= h.passed() && fd_ok;
                rows.push(json!({
                    "map": name,
                    "points": h.solve.points.len(),
                    "index_sum": h.index_sum,
                    "lefschetz": h.lefschetz.to_string(),
                    "equal": h.equal,
                    "transversal": h.solve.all_transversal,
                    "fd_max_relative_deviation": worst,
                }));
            }
            let mut cyclic = Vec::new();
            for (name, c) in smooth::corpus::bundled_cyclic_maps() {
                let r = smooth::cyclic_jacobian_check(&c, &solver)?;
                passed &= r.passed();
                cyclic.push(json!({
                    "map": name,
                    "points": r.points.len(),
                    "index_sum": r.index_sum,
                    "signs_equal": r.all_signs_equal,
                    "max_relative_deviation": r.max_relative_deviation,
                    "passed": r.passed(),
                }));
            }
            Ok((
                passed && maps.len() >= 20,
                json!({ "maps": rows, "cyclic": cyclic }),
            ))
        },
    )
}

/// Surface index bounds on the bundled multisets.
pub fn criterion_7(cfg: &VerifyConfig) -> CriterionResult {
    timed(
        7,
        "surface index bounds",
        cfg.budget(Duration::from_secs(10)),
        || {
            let mut passed = true;
            let mut valid = Vec::new();
            for m in bundled_valid_multisets() {
                let r = check_index_multiset(&m)?;
                passed &= r.verdict;
                valid.push(json!({ "indices": m.indices, "chi": m.chi, "verdict": r.verdict }));
            }
            let mut violating = Vec::new();
            for (m, clause) in bundled_violating_multisets() {
                let r = check_index_multiset(&m)?;
                let named = r.violated(clause);
                passed &= !r.verdict && named;
                violating.push(json!({
                    "indices": m.indices,
                    "chi": m.chi,
                    "expected_clause": clause,
                    "rejected": !r.verdict,
                    "clause_named": named,
                }));
            }
            Ok((passed, json!({ "valid": valid, "violating": violating })))
        },
    )
}

/// Product bounds for hyperbolic surfaces.
pub fn criterion_8(cfg: &VerifyConfig) -> CriterionResult {
    timed(
        8,
        "hyperbolic product bound",
        cfg.budget(Duration::from_secs(10)),
        || {
            let two_genus2 = bounds::hyperbolic_product_bound(&[SurfaceSpec::genus(2, 2)])?;
            let mixed = bounds::hyperbolic_product_bound(&[
                SurfaceSpec::genus(2, 1),
                SurfaceSpec::genus(3, 1),
            ])?;
            let passed = two_genus2 == BigInt::from(25) && mixed == BigInt::from(45);
            Ok((
                passed,
                json!({ "genus2_squared": two_genus2.to_string(), "genus2_times_genus3": mixed.to_string() }),
            ))
        },
    )
}

/// Lefschetz numbers of simplicial maps.
pub fn criterion_9(cfg: &VerifyConfig) -> CriterionResult {
    timed(
        9,
        "simplicial Lefschetz numbers",
        cfg.budget(Duration::from_secs(10)),
        || {
            let mut passed = true;
            let mut rows = Vec::new();
            for (name, k) in [
                ("point", tri::point()),
                ("circle", tri::circle(3)),
                ("torus", tri::torus()),
                ("genus_two", tri::genus_two()),
            ] {
                let l = homology::lefschetz_number(&k, &SimplicialMap::identity(k.vertices()))?;
                let chi = homology::euler_characteristic(&k);
                passed &= l == BigInt::from(chi);
                rows.push(
                    json!({ "complex": name, "lefschetz_identity": l.to_string(), "chi": chi }),
                );
            }
            let (domain, g) = tri::hexagon_subdivision_of_triangle();
            let deg2 = homology::lefschetz_report_subdivided(
                &tri::circle(3),
                &SubdividedMap {
                    domain,
                    map: tri::degree_two_circle_map(),
                    identity_approximation: g,
                },
            )?;
            passed &= deg2.lefschetz == BigInt::from(-1);
            Ok((
                passed,
                json!({ "identity": rows, "degree_two_circle": deg2 }),
            ))
        },
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub quick: bool,
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

/// Runs criteria 1 to 9; criterion 10 is the sweep as a whole, judged by the
/// caller from `passed` and the wall time.
pub fn run_all(cfg: &VerifyConfig) -> VerifyReport {
    let criteria: Vec<CriterionResult> = vec![
        criterion_1(cfg),
        criterion_2(cfg),
        criterion_3(cfg),
        criterion_4(cfg),
        criterion_5(cfg),
        criterion_6(cfg),
        criterion_7(cfg),
        criterion_8(cfg),
        criterion_9(cfg),
    ];
    VerifyReport {
        quick: cfg.quick,
        seed: cfg.seed,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        let cfg = VerifyConfig::quick(1);
        for c in [criterion_7(&cfg), criterion_8(&cfg), criterion_9(&cfg)] {
            assert!(c.passed, "{}", c.line());
        }
    }

    #[test]
    fn quick_sweeps_are_reproducible() {
        let cfg = VerifyConfig::quick(3);
        let a = serde_json::to_string(&criterion_1(&cfg)).unwrap();
        let b = serde_json::to_string(&criterion_1(&cfg)).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"failures\":0"));
    }

    #[test]
    #[ignore]
    fn full_timings() {
        let cfg = VerifyConfig::default();
        for f in [
            criterion_1,
            criterion_2,
            criterion_3,
            criterion_4,
            criterion_5,
            criterion_6,
        ] {
            let c = f(&cfg);
            println!("{}", c.line());
            println!("{}", serde_json::to_string(&c.details).unwrap());
        }
    }

    #[test]
    fn product_families_cover_the_spec() {
        let fams = product_families(&VerifyConfig::default());
        let circle = &fams[0];
        assert_eq!(circle.tuples.len(), 6 + 36 + 216);
        assert!(fams
            .iter()
            .all(|f| f.tuples.iter().all(|t| (1..=3).contains(&t.len()))));
    }
}
