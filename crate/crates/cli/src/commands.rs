use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use nielsen_core::bounds::{self, IndexMultiset, SurfaceSpec};
use nielsen_core::group::{
    self, FiniteGroup, GroupAutomorphism, GroupJson, GroupOps, ProductGroup, ProductGroupSpec,
    ProductSpecJson,
};
use nielsen_core::homology::{self, ComplexJson, MapJson, SimplicialComplex};
use nielsen_core::linalg::{self, IntMatrix};
use nielsen_core::smooth::{
    self, CyclicSmoothMap, CyclicSmoothMapJson, SmoothTorusMap, SmoothTorusMapJson, SolverConfig,
};
use nielsen_core::torus::{self, CyclicTorusMap, CyclicTorusMapJson, TorusMap, TorusMapJson};
use nielsen_core::verify::{self, VerifyConfig};

use crate::input::read;
use crate::report::{Check, Outcome, SCHEMA_VERSION};
use crate::{
    BoundsCmd, Command, GroupCmd, HomologyCmd, LinalgCmd, SmoothCmd, TorusCmd, VerifyArgs,
};

pub fn name(c: &Command) -> String {
    let (a, b) = match c {
        Command::Linalg(s) => (
            "linalg",
            match s {
                LinalgCmd::Snf(_) => "snf",
                LinalgCmd::Det(_) => "det",
                LinalgCmd::BlockDetIdentity { .. } => "block-det-identity",
            },
        ),
        Command::Group(s) => (
            "group",
            match s {
                GroupCmd::Check(_) => "check",
                GroupCmd::Aut { .. } => "aut",
                GroupCmd::Decompose { .. } => "decompose",
                GroupCmd::ConjClasses(_) => "conj-classes",
                GroupCmd::AutOrderCheck { .. } => "aut-order-check",
            },
        ),
        Command::Torus(s) => (
            "torus",
            match s {
                TorusCmd::Analyze(_) => "analyze",
                TorusCmd::Product(_) => "product",
                TorusCmd::Cyclic(_) => "cyclic",
            },
        ),
        Command::Smooth(s) => (
            "smooth",
            match s {
                SmoothCmd::Find(_) => "find",
                SmoothCmd::Check(_) => "check",
                SmoothCmd::Cyclic(_) => "cyclic",
            },
        ),
        Command::Bounds(s) => (
            "bounds",
            match s {
                BoundsCmd::Interval { .. } => "interval",
                BoundsCmd::Check(_) => "check",
                BoundsCmd::Product(_) => "product",
                BoundsCmd::HyperbolicProduct(_) => "hyperbolic-product",
            },
        ),
        Command::Homology(s) => (
            "homology",
            match s {
                HomologyCmd::Lefschetz { .. } => "lefschetz",
                HomologyCmd::Chi { .. } => "chi",
            },
        ),
        Command::VerifyAll(_) => return "verify-all".into(),
    };
    format!("{a} {b}")
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn big(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

pub fn run(c: Command) -> Result<Outcome> {
    match c {
        Command::Linalg(s) => linalg_cmd(s),
        Command::Group(s) => group_cmd(s),
        Command::Torus(s) => torus_cmd(s),
        Command::Smooth(s) => smooth_cmd(s),
        Command::Bounds(s) => bounds_cmd(s),
        Command::Homology(s) => homology_cmd(s),
        Command::VerifyAll(_) => unreachable!("handled by verify_all"),
    }
}

#[derive(Deserialize)]
struct BlocksJson {
    blocks: Vec<IntMatrix>,
}

fn linalg_cmd(c: LinalgCmd) -> Result<Outcome> {
    match c {
        LinalgCmd::Snf(a) => {
            let (m, inputs): (IntMatrix, _) = read(a.input.as_ref())?;
            let s = linalg::smith_normal_form(&m);
            let product = s.u.matmul(&m)?.matmul(&s.v)?;
            let unimodular = [&s.u, &s.v].iter().all(|x| {
                linalg::det_exact(x).map(|d| d == BigInt::from(1) || d == BigInt::from(-1))
                    == Ok(true)
            });
            let diag = s.diagonal();
            let chain = diag.windows(2).all(|w| {
                if w[0] == BigInt::from(0) {
                    w[1] == BigInt::from(0)
                } else {
                    (&w[1] % &w[0]) == BigInt::from(0)
                }
            });
            Ok(Outcome {
                inputs,
                results: json!({
                    "invariant_factors": diag.iter().map(big).collect::<Vec<_>>(),
                    "rank": s.rank(),
                    "u": to_value(&s.u),
                    "d": to_value(&s.d),
                    "v": to_value(&s.v),
                }),
                checks: vec![
                    Check::new("u_m_v_equals_d", product == s.d),
                    Check::new("u_v_unimodular", unimodular),
                    Check::new("divisibility_chain", chain),
                ],
            })
        }
        LinalgCmd::Det(a) => {
            let (m, inputs): (IntMatrix, _) = read(a.input.as_ref())?;
            let d = linalg::det_exact(&m)?;
            Ok(Outcome {
                inputs,
                results: json!({ "det": d.to_string() }),
                checks: vec![],
            })
        }
        LinalgCmd::BlockDetIdentity { blocks } => {
            let (b, inputs): (BlocksJson, _) = read(blocks.as_ref())?;
            let r = linalg::cyclic_det_identity_check(&b.blocks)?;
            Ok(Outcome {
                inputs,
                checks: vec![Check::new("det_identity", r.equal)],
                results: to_value(&r),
            })
        }
    }
}

fn read_group(path: Option<&PathBuf>) -> Result<(FiniteGroup, Value)> {
    let (j, inputs): (GroupJson, _) = read(path)?;
    Ok((FiniteGroup::try_from(j)?, inputs))
}

fn read_spec(path: Option<&PathBuf>) -> Result<(ProductGroupSpec, Value)> {
    let (j, inputs): (ProductSpecJson, _) = read(path)?;
    Ok((ProductGroupSpec::try_from(j)?, inputs))
}

fn group_cmd(c: GroupCmd) -> Result<Outcome> {
    match c {
        GroupCmd::Check(a) => {
            let (g, inputs) = read_group(a.input.as_ref())?;
            let r = group::unfactorizable_equivalence_check(&g);
            Ok(Outcome {
                inputs,
                checks: vec![Check::new(
                    "unfactorizable_iff_centerless_and_indecomposable",
                    r.consistent,
                )],
                results: json!({
                    "order": g.order(),
                    "centerless": r.centerless,
                    "indecomposable": r.indecomposable,
                    "unfactorizable": r.unfactorizable,
                    "center_order": r.center_order,
                    "witness": to_value(&r.witness),
                }),
            })
        }
        GroupCmd::Aut { input, cap } => {
            let (g, inputs) = read_group(input.as_ref())?;
            let auts = group::automorphisms_capped(&g, cap)?;
            let all_valid = auts.iter().all(|a| g.is_automorphism(&a.images));
            Ok(Outcome {
                inputs,
                results: json!({
                    "count": auts.len(),
                    "automorphisms": auts.iter().map(|a| &a.images).collect::<Vec<_>>(),
                }),
                checks: vec![Check::new("all_automorphisms_valid", all_valid)],
            })
        }
        GroupCmd::Decompose { spec, aut } => {
            let (spec, spec_in) = read_spec(Some(&spec))?;
            let (phi, aut_in): (GroupAutomorphism, _) = read(aut.as_ref())?;
            let product = ProductGroup::new(spec, group::DEFAULT_PRODUCT_CAP)?;
            let pa = group::decompose_product_automorphism(&product, &phi)?;
            let back = group::compose_product_automorphism(&product, &pa)?;
            Ok(Outcome {
                inputs: json!({ "spec": spec_in, "aut": aut_in }),
                results: json!({
                    "blocks": pa.blocks.iter().map(|b| json!({
                        "permutation": b.cycle_notation(),
                        "permutation_images": b.permutation,
                        "components": b.components.iter().map(|c| &c.images).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                }),
                checks: vec![Check::new("round_trip", back == phi)],
            })
        }
        GroupCmd::ConjClasses(a) => {
            let (g, inputs) = read_group(a.input.as_ref())?;
            let classes = group::conjugacy_classes(&g);
            let total: usize = classes.iter().map(Vec::len).sum();
            Ok(Outcome {
                inputs,
                results: json!({ "count": classes.len(), "classes": classes }),
                checks: vec![Check::new("classes_partition_group", total == g.order())],
            })
        }
        GroupCmd::AutOrderCheck { spec, cap } => {
            let (spec, inputs) = read_spec(spec.as_ref())?;
            let r = group::aut_order_check_capped(&spec, cap)?;
            let formula = u64::try_from(r.formula)
                .map_or_else(|_| json!(r.formula.to_string()), |v| json!(v));
            Ok(Outcome {
                inputs,
                results: json!({ "enumerated": r.enumerated, "formula": formula }),
                checks: vec![Check::new("aut_order_equals_formula", r.equal)],
            })
        }
    }
}

#[derive(Deserialize)]
struct FactorsJson {
    factors: Vec<TorusMapJson>,
}

fn torus_cmd(c: TorusCmd) -> Result<Outcome> {
    match c {
        TorusCmd::Analyze(a) => {
            let (j, inputs): (TorusMapJson, _) = read(a.input.as_ref())?;
            let f = TorusMap::try_from(j)?;
            let s = torus::analyze(&f);
            Ok(Outcome {
                inputs,
                checks: vec![Check::new("lefschetz_hopf", s.is_consistent())],
                results: to_value(&s),
            })
        }
        TorusCmd::Product(a) => {
            let (j, inputs): (FactorsJson, _) = read(a.input.as_ref())?;
            let fs = j
                .factors
                .into_iter()
                .map(TorusMap::try_from)
                .collect::<nielsen_core::Result<Vec<_>>>()?;
            let r = torus::analyze_product(&fs)?;
            Ok(Outcome {
                inputs,
                checks: vec![
                    Check::new("lefschetz_product", r.lefschetz_product_ok),
                    Check::new("nielsen_product", r.nielsen_product_ok),
                    Check::with(
                        "class_index_product",
                        r.class_indices_ok,
                        json!({ "classes_checked": r.classes_checked }),
                    ),
                ],
                results: to_value(&r),
            })
        }
        TorusCmd::Cyclic(a) => {
            let (j, inputs): (CyclicTorusMapJson, _) = read(a.input.as_ref())?;
            let c = CyclicTorusMap::try_from(j)?;
            let r = torus::analyze_cyclic(&c)?;
            let mut checks = vec![
                Check::new("lefschetz_equal", r.lefschetz_equal),
                Check::new("nielsen_equal", r.nielsen_equal),
                Check::new("index_multiset_equal", r.index_multiset_equal),
                Check::new("det_identity", r.det_identity.equal),
            ];
            let rho = if r.composed.degenerate {
                Value::Null
            } else {
                let rho = torus::rho_correspondence(&c)?;
                checks.push(Check::new("rho_bijective", rho.bijective));
                checks.push(Check::new("rho_indices_match", rho.indices_match));
                to_value(&rho)
            };
            Ok(Outcome {
                inputs,
                results: json!({ "report": to_value(&r), "rho": rho }),
                checks,
            })
        }
    }
}

fn solver_config(path: Option<&PathBuf>) -> Result<(SolverConfig, Value)> {
    match path {
        Some(p) => {
            let (cfg, v): (SolverConfig, _) = read(Some(p))?;
            cfg.validate()?;
            Ok((cfg, v))
        }
        None => Ok((SolverConfig::default(), Value::Null)),
    }
}

fn smooth_cmd(c: SmoothCmd) -> Result<Outcome> {
    match c {
        SmoothCmd::Find(a) => {
            let (j, map_in): (SmoothTorusMapJson, _) = read(a.map.as_ref())?;
            let (cfg, cfg_in) = solver_config(a.config.as_ref())?;
            let f = SmoothTorusMap::try_from(j)?;
            let r = smooth::find_fixed_points_guarded(&f, &cfg)?;
            Ok(Outcome {
                inputs: json!({ "map": map_in, "config": cfg_in }),
                checks: vec![
                    Check::with(
                        "count_matches_lefschetz",
                        r.count_matches,
                        json!({ "found": r.points.len(), "expected": big(&r.expected_count) }),
                    ),
                    Check::new("all_transversal", r.all_transversal),
                    Check::new("labels_distinct", r.labels_distinct),
                ],
                results: to_value(&r),
            })
        }
        SmoothCmd::Check(a) => {
            let (j, map_in): (SmoothTorusMapJson, _) = read(a.map.as_ref())?;
            let (cfg, cfg_in) = solver_config(a.config.as_ref())?;
            let f = SmoothTorusMap::try_from(j)?;
            let h = smooth::lefschetz_hopf_check(&f, &cfg)?;
            let fd = h
                .solve
                .points
                .iter()
                .map(|p| {
                    smooth::jacobian_fd_check(
                        &f,
                        &p.coordinates,
                        verify::FD_STEP,
                        verify::FD_RELATIVE_TOLERANCE,
                    )
                })
                .collect::<nielsen_core::Result<Vec<_>>>()?;
            Ok(Outcome {
                inputs: json!({ "map": map_in, "config": cfg_in }),
                checks: vec![
                    Check::with(
                        "index_sum_equals_lefschetz",
                        h.equal,
                        json!({ "index_sum": h.index_sum, "lefschetz": big(&h.lefschetz) }),
                    ),
                    Check::new("solve_complete", h.solve.passed()),
                    Check::new(
                        "jacobian_matches_finite_differences",
                        fd.iter().all(|r| r.passed),
                    ),
                ],
                results: json!({ "hopf": to_value(&h), "finite_differences": to_value(&fd) }),
            })
        }
        SmoothCmd::Cyclic(a) => {
            let (j, map_in): (CyclicSmoothMapJson, _) = read(a.map.as_ref())?;
            let (cfg, cfg_in) = solver_config(a.config.as_ref())?;
            let c = CyclicSmoothMap::try_from(j)?;
            let r = smooth::cyclic_jacobian_check(&c, &cfg)?;
            Ok(Outcome {
                inputs: json!({ "map": map_in, "config": cfg_in }),
                checks: vec![
                    Check::new("composed_solve_complete", r.composed.passed()),
                    Check::new("block_det_signs_equal", r.all_signs_equal),
                    Check::with(
                        "block_det_relative_deviation",
                        r.max_relative_deviation <= smooth::BLOCK_DET_RELATIVE_TOLERANCE,
                        json!({ "max": r.max_relative_deviation }),
                    ),
                    Check::new("cyclic_check_passed", r.passed()),
                ],
                results: to_value(&r),
            })
        }
    }
}

#[derive(Deserialize)]
struct BoundsJson {
    bounds: Vec<BigIntJson>,
}

#[derive(Deserialize)]
#[serde(transparent)]
struct BigIntJson(#[serde(with = "nielsen_core::json::bigint")] BigInt);

#[derive(Deserialize)]
struct SurfacesJson {
    surfaces: Vec<SurfaceSpec>,
}

fn bounds_cmd(c: BoundsCmd) -> Result<Outcome> {
    match c {
        BoundsCmd::Interval { chi } => {
            let (lower, upper) = bounds::surface_index_interval(chi)?;
            Ok(Outcome {
                inputs: json!({ "chi": chi }),
                results: json!({ "lower": lower, "upper": upper }),
                checks: vec![],
            })
        }
        BoundsCmd::Check(a) => {
            let (m, inputs): (IndexMultiset, _) = read(a.input.as_ref())?;
            let r = bounds::check_index_multiset(&m)?;
            Ok(Outcome {
                inputs,
                checks: vec![
                    Check::new("interval", r.interval_ok),
                    Check::new("aggregate", r.aggregate_ok),
                    Check::new("lefschetz_nielsen", r.ln_inequality_ok),
                ],
                results: to_value(&r),
            })
        }
        BoundsCmd::Product(a) => {
            let (b, inputs): (BoundsJson, _) = read(a.input.as_ref())?;
            let v: Vec<BigInt> = b.bounds.into_iter().map(|x| x.0).collect();
            let p = bounds::product_bound(&v)?;
            Ok(Outcome {
                inputs,
                results: json!({ "bound": big(&p) }),
                checks: vec![],
            })
        }
        BoundsCmd::HyperbolicProduct(a) => {
            let (s, inputs): (SurfacesJson, _) = read(a.input.as_ref())?;
            let p = bounds::hyperbolic_product_bound(&s.surfaces)?;
            Ok(Outcome {
                inputs,
                results: json!({ "bound": big(&p) }),
                checks: vec![],
            })
        }
    }
}

fn read_complex(path: Option<&PathBuf>) -> Result<(SimplicialComplex, Value)> {
    let (j, inputs): (ComplexJson, _) = read(path)?;
    Ok((SimplicialComplex::try_from(j)?, inputs))
}

fn homology_cmd(c: HomologyCmd) -> Result<Outcome> {
    match c {
        HomologyCmd::Lefschetz { complex, map } => {
            let (k, k_in) = read_complex(Some(&complex))?;
            let (m, m_in): (MapJson, _) = read(Some(&map))?;
            let r = homology::lefschetz_from_json(&k, m)?;
            Ok(Outcome {
                inputs: json!({ "complex": k_in, "map": m_in }),
                results: to_value(&r),
                checks: vec![],
            })
        }
        HomologyCmd::Chi { complex } => {
            let (k, inputs) = read_complex(complex.as_ref())?;
            let chi = homology::euler_characteristic(&k);
            let betti = homology::betti_numbers(&k);
            let alt: i64 = betti
                .iter()
                .enumerate()
                .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            Ok(Outcome {
                inputs,
                results: json!({ "euler_characteristic": chi, "betti": betti }),
                checks: vec![Check::new("alternating_betti_sum", alt == chi)],
            })
        }
    }
}

/// Runs the sweep; returns the exit code.
pub fn verify_all(args: &VerifyArgs) -> u8 {
    let seed = args.seed.unwrap_or(VerifyConfig::default().seed);
    let cfg = VerifyConfig {
        quick: args.quick,
        seed,
    };
    let start = Instant::now();
    let report = verify::run_all(&cfg);
    let elapsed = start.elapsed();
    let budget = if cfg.quick {
        verify::QUICK_BUDGET
    } else {
        verify::TOTAL_BUDGET
    };
    let within = elapsed <= budget;
    let passed = report.passed && within;
    let mut criteria: Vec<Value> = report.criteria.iter().map(to_value).collect();
    criteria.push(json!({
        "id": 10,
        "name": "verify-all completes",
        "passed": passed,
        "details": { "criteria_passed": report.passed, "budget_seconds": budget.as_secs() },
    }));
    let exit_code: u8 = if passed { 0 } else { 1 };
    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify-all",
        "inputs": { "quick": cfg.quick, "seed": cfg.seed },
        "results": { "criteria": criteria },
        "checks": report
            .criteria
            .iter()
            .map(|c| Check::new(format!("criterion_{}", c.id), c.passed))
            .chain(std::iter::once(Check::new("criterion_10", passed)))
            .collect::<Vec<_>>(),
        "exit_code": exit_code,
    });
    let text = serde_json::to_string_pretty(&out).expect("serializable");
    let mut lines: Vec<String> = report.criteria.iter().map(|c| c.line()).collect();
    lines.push(format!(
        "[{}] 10 verify-all completes ({:.2} s)",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    ));
    match &args.json {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n")
                .with_context(|| format!("writing {}", path.display()))
            {
                eprintln!("error: {e:#}");
                return 2;
            }
            crate::emit(&lines.join("\n"));
        }
        None => {
            crate::emit(&text);
            for l in &lines {
                eprintln!("{l}");
            }
        }
    }
    exit_code
}
