//! The six experiment runners: each consumes a validated spec and produces
//! one deterministic [`Report`].

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use framelab_core::disk::{
    carleson_constant, is_interpolating, rho, DiskPoint, DiskSequence, FiniteBlaschke,
    LOG_UNDERFLOW,
};
use framelab_core::interp::{
    mcphail_check, min_norm_interpolant, multi_weight_interpolant, riesz_basic_test, KernelFamily,
    McPhailConfig,
};
use framelab_core::model::{
    jordan_structure, orbit_frame_defect, parseval_orbit_check, spectrum_check,
    FiniteBlaschkeModel, JORDAN_RANK_TOL,
};
use framelab_core::muntz::{pointwise_condition, s_of_x, ExponentSet};
use framelab_core::orbit::{
    CarlesonFrameConfig, DiagonalOperator, GeneratorVector, OrbitFrameSystem,
};
use framelab_core::wco::{
    cowen_adjoint_factors, invertibility_check, isometry_rkh_check, multiplication_orbit_frame,
    unitarity_check, LinearFractionalMap, OrbitFrameOutcome, WeightKind, WeightedCompositionOp,
    ALGEBRAIC_TOL, BN_FIT_TOL, ORBIT_FRAME_GATE, WEIGHT_FLOOR,
};

use crate::config::{
    to_complex, CarlesonSpec, ExperimentSpec, FrameBoundsSpec, InterpCheck, InterpSpec, ModelCheck,
    ModelSpec, MuntzSweepSpec, Quantity, WcoCheck, WcoSpec, WeightSpec,
};
use crate::report::{flag, meta, sig, Report};

/// Gates used for CLI verdicts that have no exported constant in the core
/// crate; values match the acceptance tolerances of the matching checks.
const UNITARY_DEFECT_GATE: f64 = 1e-6;
const COWEN_DEFECT_GATE: f64 = 1e-8;
const ISOMETRY_GATE: f64 = 1e-10;
const RESIDUAL_GATE: f64 = 1e-8;
const CONDITION_CEILING: f64 = 1e12;
const NATURALS_FLATNESS_TOL: f64 = 1e-12;
/// Envelope constant for x·S(x): the sweep passes when
/// x·S(x)·ln(1/x) stays below this for every grid point in (0, 1).
const XSX_ENVELOPE: f64 = 1.25;

pub fn run(spec: &ExperimentSpec, seed: Option<u64>) -> Result<Report, String> {
    match spec {
        ExperimentSpec::Carleson(s) => run_carleson(s),
        ExperimentSpec::FrameBounds(s) => run_frame_bounds(s),
        ExperimentSpec::MuntzSweep(s) => run_muntz_sweep(s),
        ExperimentSpec::Wco(s) => run_wco(s),
        ExperimentSpec::Model(s) => run_model(s, seed),
        ExperimentSpec::Interp(s) => run_interp(s),
    }
}

fn from_core<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn to_json<T: serde::Serialize + ?Sized>(value: &T) -> Result<serde_json::Value, String> {
    serde_json::to_value(value).map_err(|e| format!("cannot serialize report: {e}"))
}

fn disk_points(pairs: &[[f64; 2]]) -> Result<Vec<DiskPoint>, String> {
    pairs
        .iter()
        .map(|&p| DiskPoint::new(to_complex(p)).map_err(from_core))
        .collect()
}

// ---------------------------------------------------------------------------
// carleson
// ---------------------------------------------------------------------------

fn run_carleson(spec: &CarlesonSpec) -> Result<Report, String> {
    let delta_min = spec.delta_min.unwrap_or(1e-3);
    let sequence = DiskSequence::new(disk_points(&spec.points)?).map_err(from_core)?;
    let verdict_report = is_interpolating(&sequence, delta_min);
    let summary = carleson_constant(&sequence);

    let points = sequence.points();
    let mut rows = Vec::with_capacity(points.len());
    for (n, pn) in points.iter().enumerate() {
        // Product of pseudo-hyperbolic distances to the other points, in the
        // log domain; zero once the log sum falls below the underflow cut.
        let log_sum: f64 = points
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != n)
            .map(|(_, pk)| rho(pn.value(), pk.value()).max(f64::MIN_POSITIVE).ln())
            .sum();
        let product = if points.len() == 1 {
            1.0
        } else if log_sum < LOG_UNDERFLOW {
            0.0
        } else {
            log_sum.exp()
        };
        rows.push(vec![
            n.to_string(),
            sig(pn.value().re),
            sig(pn.value().im),
            sig(product),
            sig(delta_min),
        ]);
    }

    Ok(Report {
        meta: vec![
            meta("points", points.len().to_string()),
            meta("delta_min", sig(delta_min)),
            meta("constant", sig(summary.constant)),
            meta("argmin_index", summary.argmin_index.to_string()),
            meta("log_sum_min", sig(summary.log_sum_min)),
            meta("underflow", flag(summary.underflow)),
        ],
        columns: vec!["index", "re", "im", "separation_product", "delta_min"],
        rows,
        verdict: verdict_report.pass,
        structured: Some(to_json(&verdict_report)?),
    })
}

// ---------------------------------------------------------------------------
// frame-bounds
// ---------------------------------------------------------------------------

fn run_frame_bounds(spec: &FrameBoundsSpec) -> Result<Report, String> {
    let n_max = spec.n_max.unwrap_or(200);
    let mus: Vec<Complex64> = spec.mus.iter().copied().map(to_complex).collect();
    let weights: Vec<Complex64> = spec.weights.iter().copied().map(to_complex).collect();
    let base = OrbitFrameSystem::with_naturals(
        DiagonalOperator::new(mus).map_err(from_core)?,
        GeneratorVector::new(weights).map_err(from_core)?,
        n_max,
    )
    .map_err(from_core)?;
    let diagnostic = base.check_carleson_frame(&CarlesonFrameConfig::default());

    let system = match spec.stride {
        Some(stride) => base.subsample_orbit(stride).map_err(from_core)?,
        None => base.clone(),
    };
    let closed = system.frame_bounds_closed().map_err(from_core)?;
    let partial = system.frame_bounds_partial().map_err(from_core)?;

    let mut meta_rows = vec![
        meta("dimension", base.dimension().to_string()),
        meta("n_max", n_max.to_string()),
    ];
    if let Some(stride) = spec.stride {
        meta_rows.push(meta("stride", stride.to_string()));
    }
    meta_rows.extend([
        meta("diagnostic_all_pass", flag(diagnostic.all_pass)),
        meta("spectrum_inside", flag(diagnostic.spectrum_inside.pass)),
        meta("boundary_approach", flag(diagnostic.boundary_approach.pass)),
        meta("separation", flag(diagnostic.separation.pass)),
        meta("weight_band", flag(diagnostic.weight_band.pass)),
    ]);

    let rows = vec![
        vec![
            "closed-form".to_string(),
            sig(closed.lower),
            sig(closed.upper),
            sig(closed.truncation_tail),
        ],
        vec![
            "partial-sum".to_string(),
            sig(partial.lower),
            sig(partial.upper),
            sig(partial.truncation_tail),
        ],
    ];

    let structured = serde_json::json!({
        "closed": to_json(&closed)?,
        "partial": to_json(&partial)?,
        "diagnostic": to_json(&diagnostic)?,
    });
    Ok(Report {
        meta: meta_rows,
        columns: vec!["method", "lower", "upper", "truncation_tail"],
        rows,
        verdict: diagnostic.all_pass,
        structured: Some(structured),
    })
}

// ---------------------------------------------------------------------------
// muntz-sweep
// ---------------------------------------------------------------------------

fn build_exponent_set(text: &str, n_max: u64) -> Result<ExponentSet, String> {
    match text {
        "naturals" => Ok(ExponentSet::naturals(n_max)),
        "ceil" => ExponentSet::ceil_n_log_n(n_max).map_err(from_core),
        "primes" => ExponentSet::primes(n_max).map_err(from_core),
        other => match other.strip_prefix("every-nth:") {
            Some(stride) => {
                let stride: u64 = stride
                    .parse()
                    .map_err(|_| format!("cannot parse stride `{stride}`"))?;
                ExponentSet::every_nth(stride, n_max).map_err(from_core)
            }
            None => Err(format!(
                "unknown exponent set `{other}` (expected naturals, ceil, primes, or every-nth:N)"
            )),
        },
    }
}

fn run_muntz_sweep(spec: &MuntzSweepSpec) -> Result<Report, String> {
    let set_name = spec.set.clone().unwrap_or_else(|| "ceil".to_string());
    let quantity = spec.quantity.unwrap_or(Quantity::Pointwise);
    let n_max = spec.n_max.unwrap_or(100_000);
    let tolerance = spec.tolerance.unwrap_or(1e-15);
    let xs = spec.xs.clone().unwrap_or_else(|| match quantity {
        Quantity::Pointwise => vec![1e-1, 1e-2, 1e-3],
        Quantity::Xsx => vec![1e-1, 1e-2, 1e-3, 1e-4],
    });
    if xs.is_empty() {
        return Err("the sweep needs at least one x value".to_string());
    }

    let mut rows = Vec::with_capacity(xs.len());
    let mut values = Vec::with_capacity(xs.len());
    let mut meta_rows = vec![
        meta("set", set_name.clone()),
        meta(
            "quantity",
            match quantity {
                Quantity::Pointwise => "pointwise",
                Quantity::Xsx => "xsx",
            },
        ),
        meta("n_max", n_max.to_string()),
    ];

    match quantity {
        Quantity::Pointwise => {
            let set = build_exponent_set(&set_name, n_max)?;
            let lambda_max = set.values().last().copied().unwrap_or(0.0);
            meta_rows.push(meta("exponent_count", set.len().to_string()));
            for &x in &xs {
                if !(0.0..1.0).contains(&x) || x <= 0.0 {
                    return Err(format!("x = {x} must lie in (0, 1)"));
                }
                let mu = (1.0 - x).sqrt();
                let value = pointwise_condition(mu, &set).map_err(from_core)?;
                // Conservative tail for exponents beyond the largest kept:
                // a full geometric block starting at λ_max + 1.
                let tail = mu.powf(2.0 * (lambda_max + 1.0));
                rows.push(vec![sig(x), sig(value), sig(tail)]);
                values.push(value);
            }
        }
        Quantity::Xsx => {
            meta_rows.push(meta("tolerance", sig(tolerance)));
            for &x in &xs {
                let r = s_of_x(x, tolerance).map_err(from_core)?;
                rows.push(vec![sig(x), sig(x * r.value), sig(x * r.tail_bound)]);
                values.push(x * r.value);
            }
        }
    }

    // Verdict: the sweep shows the expected shape. The rules are grid-order
    // independent; rows keep the order the xs were given in.
    let (rule, verdict) = match quantity {
        Quantity::Pointwise if set_name == "naturals" => (
            "flat-at-one",
            values
                .iter()
                .all(|v| (v - 1.0).abs() <= NATURALS_FLATNESS_TOL),
        ),
        Quantity::Pointwise => {
            let mut pairs: Vec<(f64, f64)> =
                xs.iter().copied().zip(values.iter().copied()).collect();
            pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
            (
                "decreasing-with-x",
                pairs.windows(2).all(|w| w[1].1 < w[0].1),
            )
        }
        Quantity::Xsx => (
            "log-envelope",
            xs.iter()
                .zip(&values)
                .filter(|&(&x, _)| x < 1.0)
                .all(|(&x, &v)| v * (1.0 / x).ln() <= XSX_ENVELOPE),
        ),
    };
    meta_rows.push(meta("verdict_rule", rule));
    if matches!(quantity, Quantity::Xsx) {
        meta_rows.push(meta("envelope", sig(XSX_ENVELOPE)));
    }

    Ok(Report {
        meta: meta_rows,
        columns: vec!["parameter", "value", "tail_bound"],
        rows,
        verdict,
        structured: None,
    })
}

// ---------------------------------------------------------------------------
// wco
// ---------------------------------------------------------------------------

fn build_weight(spec: &Option<WeightSpec>) -> WeightKind {
    match spec {
        None | Some(WeightSpec::One) => WeightKind::One,
        Some(WeightSpec::Kernel { point }) => WeightKind::Kernel {
            point: to_complex(*point),
        },
        Some(WeightSpec::Bn { point, constant }) => WeightKind::NormalizedKernel {
            point: to_complex(*point),
            constant: constant.map(to_complex).unwrap_or(Complex64::ONE),
        },
        Some(WeightSpec::Poly { coefficients }) => WeightKind::Polynomial {
            coefficients: coefficients.iter().copied().map(to_complex).collect(),
        },
    }
}

fn run_wco(spec: &WcoSpec) -> Result<Report, String> {
    let [a, b, c, d] = spec.phi;
    let phi = LinearFractionalMap::new(to_complex(a), to_complex(b), to_complex(c), to_complex(d))
        .map_err(from_core)?;
    let weight = build_weight(&spec.weight);
    let degree = spec.degree.unwrap_or(64);

    let mut meta_rows = vec![
        meta("degree", degree.to_string()),
        meta(
            "check",
            match spec.check {
                WcoCheck::Invert => "invert",
                WcoCheck::Unitary => "unitary",
                WcoCheck::Cowen => "cowen",
                WcoCheck::Isometry => "isometry",
                WcoCheck::OrbitFrame => "orbit-frame",
            },
        ),
    ];
    let columns = vec!["quantity", "value", "gate"];

    let (rows, verdict, structured) = match spec.check {
        WcoCheck::Invert => {
            let op = WeightedCompositionOp::new(phi, weight, degree).map_err(from_core)?;
            let rep = invertibility_check(&op);
            let rows = vec![
                vec![
                    "automorphism".to_string(),
                    flag(rep.automorphism),
                    sig(ALGEBRAIC_TOL),
                ],
                vec![
                    "weight_grid_min".to_string(),
                    sig(rep.grid_min),
                    sig(WEIGHT_FLOOR),
                ],
                vec![
                    "weight_grid_max".to_string(),
                    sig(rep.grid_max),
                    sig(f64::INFINITY),
                ],
                vec![
                    "invertible".to_string(),
                    flag(rep.invertible),
                    "0".to_string(),
                ],
            ];
            (rows, rep.invertible, to_json(&rep)?)
        }
        WcoCheck::Unitary => {
            let op = WeightedCompositionOp::new(phi, weight, degree).map_err(from_core)?;
            let rep = unitarity_check(&op).map_err(from_core)?;
            let mut rows = vec![
                vec![
                    "is_unitary_form".to_string(),
                    flag(rep.is_bn_form),
                    "0".to_string(),
                ],
                vec![
                    "fit_residual".to_string(),
                    sig(rep.fit_residual),
                    sig(BN_FIT_TOL),
                ],
                vec![
                    "truncation_defect".to_string(),
                    sig(rep.truncation_defect),
                    sig(UNITARY_DEFECT_GATE),
                ],
                vec![
                    "row_extension".to_string(),
                    rep.row_extension.to_string(),
                    "0".to_string(),
                ],
            ];
            if let Some(p) = rep.p {
                rows.push(vec!["p_re".to_string(), sig(p.re), "0".to_string()]);
                rows.push(vec!["p_im".to_string(), sig(p.im), "0".to_string()]);
            }
            let verdict = rep.is_bn_form && rep.truncation_defect < UNITARY_DEFECT_GATE;
            (rows, verdict, to_json(&rep)?)
        }
        WcoCheck::Cowen => {
            let rep = cowen_adjoint_factors(&phi, degree).map_err(from_core)?;
            // The full Taylor expansion of g is degree+1 coefficients; keep
            // the leading ones in the report and record the count.
            let mut structured = to_json(&rep)?;
            if let Some(obj) = structured.as_object_mut() {
                obj.insert("g_coefficient_count".to_string(), rep.g.len().into());
                obj.insert("g".to_string(), to_json(&rep.g[..rep.g.len().min(8)])?);
            }
            let rows = vec![
                vec![
                    "defect".to_string(),
                    sig(rep.defect),
                    sig(COWEN_DEFECT_GATE),
                ],
                vec![
                    "sigma_maps_disc".to_string(),
                    flag(rep.sigma_maps_disc),
                    "0".to_string(),
                ],
            ];
            let verdict = rep.sigma_maps_disc && rep.defect < COWEN_DEFECT_GATE;
            (rows, verdict, structured)
        }
        WcoCheck::Isometry => {
            let op = WeightedCompositionOp::new(phi, weight, degree).map_err(from_core)?;
            let rep = isometry_rkh_check(&op);
            let mut rows = vec![vec![
                "max_violation".to_string(),
                sig(rep.max_violation),
                sig(ISOMETRY_GATE),
            ]];
            if let Some(err) = rep.bn_profile_error {
                rows.push(vec!["profile_error".to_string(), sig(err), sig(BN_FIT_TOL)]);
            }
            rows.push(vec![
                "forces_unitary".to_string(),
                flag(rep.forces_unitary),
                "0".to_string(),
            ]);
            (rows, rep.max_violation <= ISOMETRY_GATE, to_json(&rep)?)
        }
        WcoCheck::OrbitFrame => {
            let outcome =
                multiplication_orbit_frame(&phi, &weight, degree, spec.n_max).map_err(from_core)?;
            match outcome {
                OrbitFrameOutcome::UnboundedOrbit { sup_modulus } => {
                    meta_rows.push(meta("outcome", "unbounded-orbit"));
                    let rows = vec![vec!["sup_modulus".to_string(), sig(sup_modulus), sig(1.0)]];
                    (rows, false, to_json(&outcome)?)
                }
                OrbitFrameOutcome::Bounded(ref rep) => {
                    meta_rows.push(meta("outcome", "bounded"));
                    let rows = vec![
                        vec![
                            "lower".to_string(),
                            sig(rep.bounds.lower),
                            sig(ORBIT_FRAME_GATE),
                        ],
                        vec![
                            "upper".to_string(),
                            sig(rep.bounds.upper),
                            sig(f64::INFINITY),
                        ],
                        vec![
                            "last_vector_norm_sq".to_string(),
                            sig(rep.last_vector_norm_sq),
                            "0".to_string(),
                        ],
                        vec!["n_max".to_string(), rep.n_max.to_string(), "0".to_string()],
                        vec![
                            "agrees_with_invertibility".to_string(),
                            flag(rep.agrees_with_invertibility),
                            "0".to_string(),
                        ],
                    ];
                    let verdict = rep.frame_verdict;
                    (rows, verdict, to_json(&outcome)?)
                }
            }
        }
    };

    meta_rows.insert(0, meta("symbol", format_map(&phi)));
    Ok(Report {
        meta: meta_rows,
        columns,
        rows,
        verdict,
        structured: Some(structured),
    })
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn format_map(phi: &LinearFractionalMap) -> String {
    let (a, b, c, d) = phi.coefficients();
    format!(
        "({}·z + {}) / ({}·z + {})",
        format_complex(a),
        format_complex(b),
        format_complex(c),
        format_complex(d)
    )
}

// ---------------------------------------------------------------------------
// model
// ---------------------------------------------------------------------------

fn run_model(spec: &ModelSpec, seed: Option<u64>) -> Result<Report, String> {
    let zeros: Vec<(DiskPoint, u32)> = spec
        .zeros
        .iter()
        .map(|z| {
            DiskPoint::new(Complex64::new(z.re, z.im))
                .map(|p| (p, z.mult))
                .map_err(from_core)
        })
        .collect::<Result<_, _>>()?;
    let theta = FiniteBlaschke::new(zeros, Complex64::ONE).map_err(from_core)?;
    let degree = theta.degree();
    // Basis coefficients decay like r^n with r the largest zero modulus, so
    // the truncation degree has to scale with 1/ln(1/r) for the computed
    // basis to be orthonormal to working precision.
    let r = spec
        .zeros
        .iter()
        .map(|z| (z.re * z.re + z.im * z.im).sqrt())
        .fold(0.0f64, f64::max);
    let auto_cutoff = if r > 0.0 {
        ((-30.0 / r.ln()).ceil() as usize).clamp(32, 2048)
    } else {
        32
    };
    let cutoff = spec.cutoff.unwrap_or(auto_cutoff);
    let model = FiniteBlaschkeModel::new(theta, cutoff).map_err(from_core)?;

    let mut meta_rows = vec![
        meta("degree", degree.to_string()),
        meta("cutoff", cutoff.to_string()),
        meta("basis_gram_defect", sig(model.gram_defect())),
    ];

    match spec.check {
        ModelCheck::Spectrum => {
            let rep = spectrum_check(&model).map_err(from_core)?;
            let rows = rep
                .clusters
                .iter()
                .map(|cl| {
                    vec![
                        sig(cl.zero.re),
                        sig(cl.zero.im),
                        cl.multiplicity.to_string(),
                        sig(cl.centroid.re),
                        sig(cl.centroid.im),
                        sig(cl.centroid_deviation),
                        sig(1e-8),
                    ]
                })
                .collect();
            meta_rows.push(meta("counts_match", flag(rep.counts_match)));
            meta_rows.push(meta("max_raw_deviation", sig(rep.max_raw_deviation)));
            let verdict = rep.counts_match && rep.max_centroid_deviation < 1e-8;
            Ok(Report {
                meta: meta_rows,
                columns: vec![
                    "zero_re",
                    "zero_im",
                    "multiplicity",
                    "centroid_re",
                    "centroid_im",
                    "deviation",
                    "tolerance",
                ],
                rows,
                verdict,
                structured: Some(to_json(&rep)?),
            })
        }
        ModelCheck::Jordan => {
            let blocks = jordan_structure(&model);
            let rows = blocks
                .iter()
                .map(|b| {
                    vec![
                        sig(b.eigenvalue.re),
                        sig(b.eigenvalue.im),
                        b.multiplicity.to_string(),
                        b.block_sizes
                            .iter()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join("|"),
                        b.eigenspace_dimension.to_string(),
                        sig(JORDAN_RANK_TOL),
                    ]
                })
                .collect();
            let verdict = blocks
                .iter()
                .all(|b| b.block_sizes == vec![b.multiplicity] && b.eigenspace_dimension == 1);
            Ok(Report {
                meta: meta_rows,
                columns: vec![
                    "eigenvalue_re",
                    "eigenvalue_im",
                    "multiplicity",
                    "block_sizes",
                    "eigenspace_dim",
                    "rank_tolerance",
                ],
                rows,
                verdict,
                structured: Some(to_json(&blocks)?),
            })
        }
        ModelCheck::Parseval => {
            let seed = seed.ok_or_else(|| {
                "--seed is required: the parseval check draws random model coordinates".to_string()
            })?;
            let draws = spec.draws.unwrap_or(5);
            if draws == 0 {
                return Err("--draws must be at least 1".to_string());
            }
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let mut rows = Vec::with_capacity(draws);
            let mut worst = 0.0f64;
            for draw in 0..draws {
                let coords: Vec<Complex64> = (0..model.dimension())
                    .map(|_| {
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                    })
                    .collect();
                let defect = parseval_orbit_check(&model, &coords).map_err(from_core)?;
                worst = worst.max(defect);
                rows.push(vec![draw.to_string(), sig(defect), sig(1e-8)]);
            }
            let frame_defect = orbit_frame_defect(&model, 200);
            meta_rows.push(meta("draws", draws.to_string()));
            meta_rows.push(meta("orbit_frame_defect_200", sig(frame_defect)));
            meta_rows.push(meta("orbit_frame_tolerance", sig(1e-6)));
            let verdict = worst < 1e-8 && frame_defect < 1e-6;
            Ok(Report {
                meta: meta_rows,
                columns: vec!["draw", "defect", "tolerance"],
                rows,
                verdict,
                structured: None,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// interp
// ---------------------------------------------------------------------------

fn run_interp(spec: &InterpSpec) -> Result<Report, String> {
    let (problem, file_degree) = spec.problem.build().map_err(from_core)?;
    let degree = spec.degree.unwrap_or(file_degree);
    let check = spec.check.unwrap_or(InterpCheck::MinNorm);

    let mut meta_rows = vec![
        meta("nodes", problem.len().to_string()),
        meta("generators", problem.generator_count().to_string()),
        meta("degree", degree.to_string()),
    ];

    match check {
        InterpCheck::MinNorm => {
            let solution = if problem.generator_count() == 1 {
                min_norm_interpolant(&problem, degree).map_err(from_core)?
            } else {
                multi_weight_interpolant(&problem, degree)
                    .map_err(from_core)?
                    .1
            };
            let norm: f64 = solution
                .coefficients
                .iter()
                .map(|c| c.norm_sqr())
                .sum::<f64>()
                .sqrt();
            let rows = vec![
                vec![
                    "residual".to_string(),
                    sig(solution.residual),
                    sig(RESIDUAL_GATE),
                ],
                vec![
                    "condition_estimate".to_string(),
                    sig(solution.condition_estimate),
                    sig(CONDITION_CEILING),
                ],
                vec!["solution_norm".to_string(), sig(norm), "0".to_string()],
                vec![
                    "coefficients".to_string(),
                    solution.coefficients.len().to_string(),
                    "0".to_string(),
                ],
            ];
            Ok(Report {
                meta: meta_rows,
                columns: vec!["quantity", "value", "gate"],
                rows,
                verdict: solution.residual < RESIDUAL_GATE,
                structured: Some(to_json(&solution)?),
            })
        }
        InterpCheck::Mcphail => {
            if problem.generator_count() != 1 {
                return Err("the mcphail check needs a single-generator problem".to_string());
            }
            let weights: Vec<f64> = problem
                .weight_vectors()
                .iter()
                .map(|g| g[0].norm())
                .collect();
            let config = McPhailConfig {
                delta_min: spec.delta_min.unwrap_or(1e-3),
                band_ratio_min: spec.band_ratio_min.unwrap_or(0.05),
            };
            let rep = mcphail_check(problem.nodes(), &weights, &config).map_err(from_core)?;
            meta_rows.push(meta("carleson_pass", flag(rep.carleson_pass)));
            let rows = vec![
                vec![
                    "carleson_constant".to_string(),
                    sig(rep.carleson.constant),
                    sig(config.delta_min),
                ],
                vec!["ratio_low".to_string(), sig(rep.ratio_low), "0".to_string()],
                vec![
                    "ratio_high".to_string(),
                    sig(rep.ratio_high),
                    "0".to_string(),
                ],
                vec![
                    "band_ratio".to_string(),
                    sig(rep.ratio_low / rep.ratio_high),
                    sig(config.band_ratio_min),
                ],
            ];
            Ok(Report {
                meta: meta_rows,
                columns: vec!["quantity", "value", "gate"],
                rows,
                verdict: rep.pass,
                structured: Some(to_json(&rep)?),
            })
        }
        InterpCheck::Riesz => {
            let family =
                KernelFamily::new(problem.nodes(), problem.weight_vectors().to_vec(), degree)
                    .map_err(from_core)?;
            let gate = spec.condition_gate.unwrap_or(1e4);
            let rep = riesz_basic_test(&family, gate).map_err(from_core)?;
            meta_rows.push(meta("degenerate", flag(rep.degenerate)));
            let rows = vec![
                vec!["min_eig".to_string(), sig(rep.min_eig), "0".to_string()],
                vec!["max_eig".to_string(), sig(rep.max_eig), "0".to_string()],
                vec!["condition".to_string(), sig(rep.condition), sig(gate)],
            ];
            Ok(Report {
                meta: meta_rows,
                columns: vec!["quantity", "value", "gate"],
                rows,
                verdict: rep.pass,
                structured: Some(to_json(&rep)?),
            })
        }
    }
}
