//! The experiments behind each subcommand. Every function is deterministic in its config.

use kernstab_core::analysis::{
    self, fit_bound_constant, fit_power_law, BoundCheck, BoundConstants, BoundSide, QMode, Reliability,
    SpectrumSample,
};
use kernstab_core::linalg::norm2;
use kernstab_core::{
    conv_gram, equispaced, gram, halton, DomainBox, Error, KernelFamily, KernelSpec, PointSet, SplitMix64,
};

use crate::config::{CommandKind, ExperimentConfig, Layout};
use crate::report::{check_cells, Table, Value, CHECK_COLUMNS};
use crate::svg::{self, Series};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything a run produces. `tables[0]` is the main CSV; the others carry a file suffix.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub tables: Vec<(String, Table)>,
    pub checks: Vec<BoundCheck>,
    pub svg: Option<String>,
    /// Human-readable lines for stderr.
    pub notes: Vec<String>,
}

pub fn run(cfg: &ExperimentConfig) -> kernstab_core::Result<Outcome> {
    match cfg.command {
        CommandKind::EigenScaling => run_eigen_scaling(cfg),
        CommandKind::Heatmap => run_heatmap(cfg),
        CommandKind::Equivalence => run_equivalence(cfg),
        CommandKind::Identity => run_identity(cfg),
        CommandKind::Sin2 => run_sin2(cfg),
        CommandKind::Thm41 => run_thm41(cfg),
        CommandKind::Fit => run_fit(cfg),
    }
}

fn comment(cfg: &ExperimentConfig, what: &str) -> String {
    format!("kernstab {VERSION} {what} {}", cfg.echo())
}

fn table(cfg: &ExperimentConfig, what: &str, columns: &[&str]) -> Table {
    Table::new(comment(cfg, what), cfg.hash(), columns)
}

fn spec(cfg: &ExperimentConfig) -> kernstab_core::Result<KernelSpec> {
    KernelSpec::new(cfg.kernel, cfg.dim)
}

/// Uniform points in the unit box, redrawn until no two are closer than `1/(4n)`.
pub fn random_points(n: usize, dim: usize, rng: &mut SplitMix64) -> kernstab_core::Result<PointSet> {
    let min_gap = 0.25 / n as f64;
    loop {
        let pts: Vec<Vec<f64>> = (0..n).map(|_| rng.uniform_vec(dim, 0.0, 1.0)).collect();
        let close = (0..n).any(|i| {
            (i + 1..n).any(|j| kernstab_core::kernels::distance(&pts[i], &pts[j]) < min_gap)
        });
        if !close {
            return PointSet::new(pts, DomainBox::unit(dim));
        }
    }
}

pub fn make_points(cfg: &ExperimentConfig, n: usize, rng: &mut SplitMix64) -> kernstab_core::Result<PointSet> {
    match cfg.layout {
        Layout::Halton => halton(n, cfg.dim, 0),
        Layout::Equispaced if cfg.dim == 1 => equispaced(n, 0.0, 1.0, cfg.endpoints),
        Layout::Equispaced => Err(Error::Unsupported(format!(
            "equispaced layout is one-dimensional, got d = {}",
            cfg.dim
        ))),
        Layout::Random => random_points(n, cfg.dim, rng),
    }
}

/// Shift of length `len` along the main diagonal.
pub fn diagonal_shift(dim: usize, len: f64) -> Vec<f64> {
    vec![len / (dim as f64).sqrt(); dim]
}

/// One row of the eigenvalue scaling experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingSample {
    pub n: usize,
    pub q: f64,
    pub gram: SpectrumSample,
    pub conv: SpectrumSample,
}

pub fn scaling_samples(cfg: &ExperimentConfig) -> kernstab_core::Result<Vec<ScalingSample>> {
    let k = spec(cfg)?;
    let mut rng = SplitMix64::new(cfg.seed);
    cfg.sizes
        .iter()
        .map(|&n| {
            let x = make_points(cfg, n, &mut rng)?;
            Ok(ScalingSample {
                n,
                q: x.separation_distance()?,
                gram: SpectrumSample::of(&gram(&k, &x)?.data)?,
                conv: SpectrumSample::of(&conv_gram(&k, &x, &cfg.quadrature)?.data)?,
            })
        })
        .collect()
}

/// Shipped constants, or for other families the tightest constants under the reliable data.
fn bound_constants(family: KernelFamily, tau: f64, samples: &[ScalingSample]) -> kernstab_core::Result<(BoundConstants, bool)> {
    if let Some(c) = BoundConstants::for_family(family) {
        return Ok((c, false));
    }
    let gram: Vec<(f64, f64)> = samples.iter().filter(|s| s.gram.reliable).map(|s| (s.q, s.gram.lambda_min)).collect();
    let conv: Vec<(f64, f64)> = samples.iter().filter(|s| s.conv.reliable).map(|s| (s.q, s.conv.lambda_min)).collect();
    Ok((
        BoundConstants {
            c_min: fit_bound_constant(&gram, 2.0 * tau - 1.0, BoundSide::Lower)?,
            c_conv: fit_bound_constant(&conv, 4.0 * tau - 1.0, BoundSide::Lower)?,
        },
        true,
    ))
}

fn reliability(reliable: bool) -> Reliability {
    if reliable {
        Reliability::Reliable
    } else {
        Reliability::BelowPrecisionFloor
    }
}

pub const SCALING_COLUMNS: [&str; 11] = [
    "n",
    "q_x",
    "lambda_min_gram",
    "lambda_max_gram",
    "gram_reliable",
    "bound_gram",
    "lambda_min_conv",
    "lambda_max_conv",
    "conv_reliable",
    "bound_conv",
    "cond_conv",
];

pub fn run_eigen_scaling(cfg: &ExperimentConfig) -> kernstab_core::Result<Outcome> {
    let k = spec(cfg)?;
    let tau = k.smoothness()?;
    let samples = scaling_samples(cfg)?;
    let (consts, fitted) = bound_constants(cfg.kernel, tau, &samples)?;
    let mut t = table(cfg, "eigen-scaling", &SCALING_COLUMNS);
    let mut checks = Vec::new();
    for s in &samples {
        let bg = analysis::symmetric_lower_bound(tau, 1, s.q, consts.c_min)?;
        let bc = analysis::conv_lower_bound(tau, 1, s.q, consts.c_conv)?;
        let cond = if s.conv.lambda_min > 0.0 {
            s.conv.lambda_max / s.conv.lambda_min
        } else {
            f64::NAN
        };
        t.push(vec![
            s.n.into(),
            s.q.into(),
            s.gram.lambda_min.into(),
            s.gram.lambda_max.into(),
            s.gram.reliable.into(),
            bg.into(),
            s.conv.lambda_min.into(),
            s.conv.lambda_max.into(),
            s.conv.reliable.into(),
            bc.into(),
            cond.into(),
        ]);
        checks.push(
            BoundCheck::new(format!("gram-lower-bound-n{}", s.n), bg, s.gram.lambda_min, 0.0)
                .with_reliability(reliability(s.gram.reliable)),
        );
        checks.push(
            BoundCheck::new(format!("conv-lower-bound-n{}", s.n), bc, s.conv.lambda_min, 0.0)
                .with_reliability(reliability(s.conv.reliable)),
        );
    }
    let mut notes = vec![format!(
        "bound constants c_min = {}, c_conv = {}{}",
        consts.c_min,
        consts.c_conv,
        if fitted { " (fitted to this run)" } else { "" }
    )];
    let floor = samples.iter().filter(|s| !s.conv.reliable).count();
    if floor > 0 {
        notes.push(format!("{floor} convolutional samples below the precision floor"));
    }
    let svg = eigen_scaling_svg(&t);
    Ok(Outcome {
        tables: vec![(String::new(), t)],
        checks,
        svg: Some(svg),
        notes,
    })
}

/// The scaling plot, drawn from the table alone.
pub fn eigen_scaling_svg(t: &Table) -> String {
    let col = |name: &str| t.column_f64(name).unwrap_or_default();
    let n = col("n");
    let series = |name: &str, label: &str, color, dashed| Series {
        label: label.to_string(),
        points: n.iter().copied().zip(col(name)).collect(),
        color,
        dashed,
    };
    svg::loglog(
        &[
            series("lambda_min_gram", "lambda_min(k(X,X))", svg::BLUE, false),
            series("lambda_min_conv", "lambda_min(k*(X,X))", svg::ORANGE, false),
            series("bound_gram", "c_min q^(2 tau - d)", svg::BLACK, true),
            series("bound_conv", "c q^(4 tau - d)", svg::BLACK, true),
        ],
        "#points",
        "smallest eigenvalue",
    )
}

pub fn run_heatmap(cfg: &ExperimentConfig) -> kernstab_core::Result<Outcome> {
    let k = spec(cfg)?;
    let n = cfg.sizes[0];
    let mut rng = SplitMix64::new(cfg.seed);
    let x = make_points(cfg, n, &mut rng)?;
    let q = x.separation_distance()?;
    let b = diagonal_shift(cfg.dim, cfg.shift_factor.unwrap_or(0.1) * q);
    let r = analysis::verify_equivalence(&k, &x, &b)?;

    let mut grid = table(cfg, "heatmap", &["i", "j", "abs_value"]);
    for i in 0..n {
        for j in 0..n {
            grid.push(vec![i.into(), j.into(), r.whitened[(i, j)].abs().into()]);
        }
    }
    let mut spectrum = table(cfg, "heatmap-spectrum", &["index", "eigenvalue"]);
    for (i, l) in r.spectrum.iter().enumerate() {
        spectrum.push(vec![i.into(), (*l).into()]);
    }
    let diag: Vec<f64> = r.whitened.diagonal().iter().map(|v| v.abs()).collect();
    let dmin = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let dmax = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let checks = vec![
        r.lower.clone(),
        r.upper.clone(),
        BoundCheck::new("diagonal-min", 0.9, dmin, 0.0),
        BoundCheck::new("diagonal-max", dmax, 1.0, 1e-10),
    ];
    let notes = vec![
        format!("q_X = {q}, |b| = {}", norm2(&b)),
        format!("spectrum in [{}, {}]", r.spectrum[0], r.spectrum[n - 1]),
    ];
    let svg = heatmap_svg(&grid);
    Ok(Outcome {
        tables: vec![(String::new(), grid), ("spectrum".into(), spectrum)],
        checks,
        svg: Some(svg),
        notes,
    })
}

/// Heatmap of the `(i, j, abs_value)` table on the clipped log scale `[1e-5, 1]`.
pub fn heatmap_svg(t: &Table) -> String {
    let is = t.column_f64("i").unwrap_or_default();
    let js = t.column_f64("j").unwrap_or_default();
    let vs = t.column_f64("abs_value").unwrap_or_default();
    let n = is.iter().copied().fold(-1.0, f64::max) as usize + 1;
    let mut values = vec![0.0; n * n];
    for ((i, j), v) in is.iter().zip(&js).zip(&vs) {
        values[*i as usize * n + *j as usize] = *v;
    }
    svg::heatmap(n, &values, 1e-5, 1.0)
}

fn check_row(prefix: Vec<Value>, c: &BoundCheck) -> Vec<Value> {
    let mut row = prefix;
    row.extend(check_cells(c));
    row
}

fn columns(prefix: &[&'static str]) -> Vec<&'static str> {
    prefix.iter().chain(CHECK_COLUMNS.iter()).copied().collect()
}

pub fn run_equivalence(cfg: &ExperimentConfig) -> kernstab_core::Result<Outcome> {
    let k = spec(cfg)?;
    let n = cfg.sizes[0];
    let mut rng = SplitMix64::new(cfg.seed);
    let x = make_points(cfg, n, &mut rng)?;
    let q = x.separation_distance()?;
    let factor = cfg.shift_factor.unwrap_or(0.1);
    let diameter = x.domain().diameter();
    let tau = k.smoothness().ok();
    let top = match tau {
        Some(t) if t > 1.0 => Some(kernstab_core::spectral::sym_eigen(&gram(&k, &x)?.data)?.eigenvector(n - 1)),
        _ => None,
    };

    let cols = columns(&["trial", "shift_norm", "lambda_min", "lambda_max"]);
    let mut t = table(cfg, "equivalence", &cols);
    let mut checks = Vec::new();
    let mut worst_prefactor = f64::NEG_INFINITY;
    for trial in 0..cfg.trials {
        let small = if trial == 0 {
            diagonal_shift(cfg.dim, factor * q)
        } else {
            rng.direction(cfg.dim, factor * q)
        };
        let r = analysis::verify_equivalence(&k, &x, &small)?;
        let (lo, hi) = (r.spectrum[0], r.spectrum[n - 1]);
        for c in [&r.lower, &r.upper] {
            t.push(check_row(vec![trial.into(), norm2(&small).into(), lo.into(), hi.into()], c));
            checks.push(c.clone());
        }
        if let Some(v) = &top {
            let s = analysis::verify_sharp_equivalence(&k, &x, &small, v, 1.0)?;
            worst_prefactor = worst_prefactor.max(s.required_prefactor);
            t.push(check_row(vec![trial.into(), norm2(&small).into(), lo.into(), hi.into()], &s.lower));
            checks.push(s.lower);
        }

        // the upper bound needs no smallness of the shift
        let large = {
            let len = rng.uniform(0.0, diameter);
            rng.direction(cfg.dim, len)
        };
        let r = analysis::verify_equivalence(&k, &x, &large)?;
        let (lo, hi) = (r.spectrum[0], r.spectrum[n - 1]);
        let upper = BoundCheck::new("equivalence-upper-any-shift", hi, 1.0, 1e-10);
        t.push(check_row(vec![trial.into(), norm2(&large).into(), lo.into(), hi.into()], &upper));
        checks.push(upper);
    }
    let mut notes = vec![format!("q_X = {q}, small shifts |b| = {}", factor * q)];
    if top.is_some() {
        notes.push(format!("largest gap prefactor needed for the top eigenvector: {worst_prefactor}"));
    }
    Ok(Outcome {
        tables: vec![(String::new(), t)],
        checks,
        svg: None,
        notes,
    })
}

fn one_d_points(cfg: &ExperimentConfig, rng: &mut SplitMix64) -> kernstab_core::Result<PointSet> {
    make_points(cfg, cfg.sizes[0], rng)
}

pub fn run_identity(cfg: &ExperimentConfig) -> kernstab_core::Result<Outcome> {
    let k = spec(cfg)?;
    let density = k.spectral_density_1d()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let cols = columns(&["trial", "shift", "matrix_side", "fourier_side", "tail_bound"]);
    let mut t = table(cfg, "identity", &cols);
    let mut checks = Vec::new();
    for trial in 0..cfg.trials {
        let x = one_d_points(cfg, &mut rng)?;
        let alpha = rng.uniform_vec(x.len(), -1.0, 1.0);
        let b = cfg.shift_factor.unwrap_or(0.1) * x.separation_distance()?;
        let r = analysis::verify_identity_eq15(&density, &x, &alpha, b, &cfg.quadrature)?;
        t.push(check_row(
            vec![
                trial.into(),
                b.into(),
                r.matrix_side.into(),
                r.fourier_side.into(),
                r.fourier.tail_bound.into(),
            ],
            &r.check,
        ));
        checks.push(r.check);
    }
    Ok(Outcome {
        tables: vec![(String::new(), t)],
        checks,
        svg: None,
        notes: Vec::new(),
    })
}

pub fn run_sin2(cfg: &ExperimentConfig) -> kernstab_core::Result<Outcome> {
    let k = spec(cfg)?;
    let density = k.spectral_density_1d()?;
    let c_min = BoundConstants::for_family(cfg.kernel).map(|c| c.c_min);
    let mut rng = SplitMix64::new(cfg.seed);
    let kappas = match cfg.shift_factor {
        Some(s) => vec![s],
        None => vec![0.1, 0.5, 1.0],
    };
    let cols = columns(&["trial", "kappa", "shift"]);
    let mut t = table(cfg, "sin2", &cols);
    let mut checks = Vec::new();
    for trial in 0..cfg.trials {
        let x = one_d_points(cfg, &mut rng)?;
        let alpha = rng.uniform_vec(x.len(), -1.0, 1.0);
        let q = x.separation_distance()?;
        for &kappa in &kappas {
            let b = kappa * cfg.eps.sqrt() * q;
            let r = analysis::verify_sin2_bound(&density, &x, &alpha, b, cfg.eps, c_min, &cfg.quadrature)?;
            for c in std::iter::once(r.basic).chain(r.improved) {
                t.push(check_row(vec![trial.into(), kappa.into(), b.into()], &c));
                checks.push(c);
            }
        }
    }
    let mut notes = Vec::new();
    if c_min.is_none() || k.smoothness()? <= 1.0 {
        notes.push("improved estimate not evaluated (needs tau > 1 and a shipped c_min)".into());
    }
    Ok(Outcome {
        tables: vec![(String::new(), t)],
        checks,
        svg: None,
        notes,
    })
}

pub fn run_thm41(cfg: &ExperimentConfig) -> kernstab_core::Result<Outcome> {
    let k = spec(cfg)?;
    let c = BoundConstants::for_family(cfg.kernel)
        .map(|c| c.c_conv)
        .ok_or_else(|| Error::Unsupported(format!("no fitted constant for {}", cfg.kernel)))?;
    let mut rng = SplitMix64::new(cfg.seed);
    let x = one_d_points(cfg, &mut rng)?;
    let q = analysis::effective_q(&x, QMode::BoundaryAware)?;
    let factor = cfg.shift_factor.unwrap_or(0.5);
    if factor > 1.0 {
        return Err(Error::Hypothesis(format!("shift factor {factor} exceeds 1 (|b| <= q)")));
    }
    let weakest = analysis::weakest_direction(&k, &x)?;
    let cols = columns(&["trial", "q", "shift"]);
    let mut t = table(cfg, "thm41", &cols);
    let mut checks = Vec::new();
    for trial in 0..cfg.trials {
        let alpha = if trial == 0 {
            weakest.clone()
        } else {
            rng.uniform_vec(x.len(), -1.0, 1.0)
        };
        let b = factor * q;
        let r = analysis::verify_thm41_chain(&k, &x, &alpha, &[b], c, QMode::BoundaryAware, &cfg.quadrature)?;
        for chk in [r.discretization, r.symmetric_part, r.end_to_end] {
            t.push(check_row(vec![trial.into(), r.q.into(), b.into()], &chk));
            checks.push(chk);
        }
    }
    Ok(Outcome {
        tables: vec![(String::new(), t)],
        checks,
        svg: None,
        notes: vec![format!("q = {q}, c = {c}")],
    })
}

/// Allowed distance of a fitted exponent from `2 tau - d` and `4 tau - d`.
pub const GRAM_EXPONENT_TOLERANCE: f64 = 0.15;
pub const CONV_EXPONENT_TOLERANCE: f64 = 0.3;
/// Condition-number constants are fitted on `n <= 50` and validated on `n >= 50`.
pub const COND_TRAINING_MAX_N: usize = 50;

pub fn run_fit(cfg: &ExperimentConfig) -> kernstab_core::Result<Outcome> {
    let k = spec(cfg)?;
    let tau = k.smoothness()?;
    let samples = scaling_samples(cfg)?;
    let gram_pts: Vec<(f64, f64)> = samples.iter().filter(|s| s.gram.reliable).map(|s| (s.q, s.gram.lambda_min)).collect();
    let conv_pts: Vec<(f64, f64)> = samples.iter().filter(|s| s.conv.reliable).map(|s| (s.q, s.conv.lambda_min)).collect();

    let mut laws = table(
        cfg,
        "fit",
        &["quantity", "exponent", "expected", "constant", "r_squared", "support"],
    );
    let mut checks = Vec::new();
    for (name, pts, expected, tol) in [
        ("lambda_min_gram", &gram_pts, 2.0 * tau - 1.0, GRAM_EXPONENT_TOLERANCE),
        ("lambda_min_conv", &conv_pts, 4.0 * tau - 1.0, CONV_EXPONENT_TOLERANCE),
    ] {
        let law = fit_power_law(pts)?;
        laws.push(vec![
            name.into(),
            law.exponent.into(),
            expected.into(),
            law.constant().into(),
            law.r_squared.into(),
            law.support.len().into(),
        ]);
        checks.push(BoundCheck::new(
            format!("{name}-exponent"),
            (law.exponent - expected).abs(),
            tol,
            0.0,
        ));
    }

    let cond_pts: Vec<(usize, f64, f64)> = samples
        .iter()
        .filter(|s| s.conv.reliable && s.conv.lambda_min > 0.0)
        .map(|s| (s.n, s.q, s.conv.lambda_max / s.conv.lambda_min))
        .collect();
    let train: Vec<(f64, f64)> = cond_pts
        .iter()
        .filter(|(n, _, _)| *n <= COND_TRAINING_MAX_N)
        .map(|(_, q, c)| (*q, *c))
        .collect();
    let mut cond = table(cfg, "fit-cond", &["n", "q_x", "cond_conv", "bound", "role"]);
    if !train.is_empty() {
        let c = fit_bound_constant(&train, -4.0 * tau, BoundSide::Upper)?;
        for (n, q, value) in &cond_pts {
            let bound = analysis::cond_upper_bound(tau, *q, c)?;
            let validate = *n >= COND_TRAINING_MAX_N;
            cond.push(vec![
                (*n).into(),
                (*q).into(),
                (*value).into(),
                bound.into(),
                if validate { "validate" } else { "train" }.into(),
            ]);
            if validate {
                checks.push(BoundCheck::new(format!("cond-upper-bound-n{n}"), *value, bound, 0.0));
            }
        }
    }
    Ok(Outcome {
        tables: vec![(String::new(), laws), ("cond".into(), cond)],
        checks,
        svg: None,
        notes: vec![format!(
            "{} of {} convolutional samples reliable",
            conv_pts.len(),
            samples.len()
        )],
    })
}
