//! Command-line arguments and their resolution into a fully specified experiment.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kernstab_core::{KernelFamily, QuadratureConfig};
use sha2::{Digest, Sha256};

#[derive(Debug, Parser)]
#[command(name = "kernstab", version, about = "Stability experiments for kernel matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smallest eigenvalues of k(X,X) and k*(X,X) over a log-spaced range of n.
    EigenScaling(CommonArgs),
    /// |A^{-1/2} k(X+b,X)_+ A^{-1/2}| as a heatmap, plus its spectrum.
    Heatmap(CommonArgs),
    /// Spectrum of the whitened shifted matrix against [3/4, 1).
    Equivalence(CommonArgs),
    /// Matrix and Fourier sides of the shifted quadratic form identity.
    Identity(CommonArgs),
    /// The sin^2-damped Fourier integral against its bounds.
    Sin2(CommonArgs),
    /// The inequalities behind the convolutional lower bound.
    Thm41(CommonArgs),
    /// Power-law fits of the smallest eigenvalues against q_X.
    Fit(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Layout {
    Halton,
    Equispaced,
    /// Seeded uniform points.
    Random,
}

impl Layout {
    pub fn name(self) -> &'static str {
        match self {
            Layout::Halton => "halton",
            Layout::Equispaced => "equispaced",
            Layout::Random => "random",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub kernel: Option<KernelFamily>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Single sample size.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub n_count: Option<usize>,
    #[arg(long, value_enum)]
    pub layout: Option<Layout>,
    #[arg(long, action = clap::ArgAction::Set)]
    pub endpoints: Option<bool>,
    /// Shift length as a multiple of q_X.
    #[arg(long)]
    pub shift_factor: Option<f64>,
    #[arg(long)]
    pub quad_order: Option<usize>,
    #[arg(long)]
    pub fourier_cutoff: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Number of randomized instances for the verifiers.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    EigenScaling,
    Heatmap,
    Equivalence,
    Identity,
    Sin2,
    Thm41,
    Fit,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::EigenScaling => "eigen-scaling",
            CommandKind::Heatmap => "heatmap",
            CommandKind::Equivalence => "equivalence",
            CommandKind::Identity => "identity",
            CommandKind::Sin2 => "sin2",
            CommandKind::Thm41 => "thm41",
            CommandKind::Fit => "fit",
        }
    }
}

impl Command {
    pub fn split(self) -> (CommandKind, CommonArgs) {
        match self {
            Command::EigenScaling(a) => (CommandKind::EigenScaling, a),
            Command::Heatmap(a) => (CommandKind::Heatmap, a),
            Command::Equivalence(a) => (CommandKind::Equivalence, a),
            Command::Identity(a) => (CommandKind::Identity, a),
            Command::Sin2(a) => (CommandKind::Sin2, a),
            Command::Thm41(a) => (CommandKind::Thm41, a),
            Command::Fit(a) => (CommandKind::Fit, a),
        }
    }
}

/// Every parameter of a run, defaults filled in and preconditions checked.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: CommandKind,
    pub kernel: KernelFamily,
    pub dim: usize,
    /// Sample sizes, ascending and distinct.
    pub sizes: Vec<usize>,
    pub layout: Layout,
    pub endpoints: bool,
    /// `None` means the command's own sweep.
    pub shift_factor: Option<f64>,
    pub quadrature: QuadratureConfig,
    pub seed: u64,
    pub eps: f64,
    pub trials: usize,
    pub out_csv: Option<PathBuf>,
    pub out_svg: Option<PathBuf>,
}

/// Rejected arguments; reported with exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

/// `floor(geomspace(lo, hi, count))` without repeats.
///
/// Flooring (not rounding) is what reproduces the published grid
/// 10, 11, 12, 13, 15, 16, 18, ..., 180, 200 for `(10, 200, 30)`.
pub fn log_grid(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    if count <= 1 || lo == hi {
        return vec![lo];
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<usize> = (0..count)
        .map(|i| {
            if i + 1 == count {
                return hi;
            }
            let v = (a + (b - a) * i as f64 / (count - 1) as f64).exp();
            // guard against values like 11.999999999999998
            (v + 1e-9).floor() as usize
        })
        .collect();
    out.dedup();
    out
}

struct Defaults {
    kernel: KernelFamily,
    dim: usize,
    n: usize,
    layout: Layout,
    trials: usize,
}

fn defaults(kind: CommandKind) -> Defaults {
    let d = |kernel, dim, n, layout, trials| Defaults {
        kernel,
        dim,
        n,
        layout,
        trials,
    };
    use KernelFamily::*;
    match kind {
        CommandKind::EigenScaling | CommandKind::Fit => d(MaternBasic, 1, 10, Layout::Equispaced, 1),
        CommandKind::Heatmap => d(MaternLinear, 2, 50, Layout::Halton, 1),
        CommandKind::Equivalence => d(MaternLinear, 2, 50, Layout::Halton, 20),
        CommandKind::Identity => d(MaternBasic, 1, 6, Layout::Random, 10),
        CommandKind::Sin2 => d(MaternLinear, 1, 20, Layout::Equispaced, 5),
        CommandKind::Thm41 => d(MaternBasic, 1, 20, Layout::Equispaced, 5),
    }
}

impl ExperimentConfig {
    pub fn resolve(kind: CommandKind, args: CommonArgs) -> Result<Self, UsageError> {
        let def = defaults(kind);
        let kernel = args.kernel.unwrap_or(def.kernel);
        let dim = args.dim.unwrap_or(def.dim);
        if !(1..=3).contains(&dim) {
            return usage(format!("--dim must be 1, 2 or 3, got {dim}"));
        }

        let sweep = matches!(kind, CommandKind::EigenScaling | CommandKind::Fit);
        let sizes = if sweep && args.n.is_none() {
            let lo = args.n_min.unwrap_or(10);
            let hi = args.n_max.unwrap_or(if kind == CommandKind::Fit { 200 } else { 1000 });
            let count = args.n_count.unwrap_or(30);
            if lo < 2 || hi < lo || count == 0 {
                return usage(format!("need 2 <= n-min <= n-max and n-count >= 1, got {lo}, {hi}, {count}"));
            }
            log_grid(lo, hi, count)
        } else {
            if args.n_min.is_some() || args.n_max.is_some() || args.n_count.is_some() {
                if !sweep {
                    return usage(format!("{} takes --n, not an n-range", kind.name()));
                }
            }
            let n = args.n.unwrap_or(def.n);
            if n < 2 {
                return usage(format!("--n must be at least 2, got {n}"));
            }
            vec![n]
        };

        let layout = args.layout.unwrap_or(def.layout);
        let endpoints = args.endpoints.unwrap_or(true);

        let mut quadrature = QuadratureConfig::default();
        if let Some(m) = args.quad_order {
            quadrature.order = m;
        }
        if let Some(l) = args.fourier_cutoff {
            quadrature.fourier_cutoff = l;
        }
        quadrature
            .validate()
            .map_err(|e| UsageError(format!("quadrature settings: {e}")))?;

        if let Some(s) = args.shift_factor {
            if !(s.is_finite() && s >= 0.0) {
                return usage(format!("--shift-factor must be finite and >= 0, got {s}"));
            }
        }
        let eps = args.eps.unwrap_or(0.25);
        if !(eps > 0.0 && eps < 1.0) {
            return usage(format!("--eps must lie in (0, 1), got {eps}"));
        }
        let trials = args.trials.unwrap_or(def.trials);
        if trials == 0 {
            return usage("--trials must be positive");
        }

        let one_d = matches!(
            kind,
            CommandKind::EigenScaling | CommandKind::Fit | CommandKind::Identity | CommandKind::Sin2 | CommandKind::Thm41
        );
        if one_d && dim != 1 {
            return usage(format!("{} is one-dimensional; got --dim {dim}", kind.name()));
        }
        if kind == CommandKind::Heatmap && !(2..=3).contains(&dim) {
            return usage(format!("heatmap needs --dim 2 or 3, got {dim}"));
        }
        if one_d && kernel == KernelFamily::Gaussian {
            return usage(format!("{} needs a Matern kernel with finite smoothness", kind.name()));
        }
        if matches!(kind, CommandKind::Identity | CommandKind::Sin2 | CommandKind::Thm41)
            && layout == Layout::Halton
        {
            return usage("the one-dimensional verifiers use --layout equispaced or random");
        }

        Ok(Self {
            command: kind,
            kernel,
            dim,
            sizes,
            layout,
            endpoints,
            shift_factor: args.shift_factor,
            quadrature,
            seed: args.seed.unwrap_or(0),
            eps,
            trials,
            out_csv: args.out_csv,
            out_svg: args.out_svg,
        })
    }

    /// Canonical one-line description; output paths are excluded so they do not change the hash.
    pub fn echo(&self) -> String {
        let sizes: Vec<String> = self.sizes.iter().map(|n| n.to_string()).collect();
        let shift = match self.shift_factor {
            Some(s) => kernstab_core::io::format_g17(s),
            None => "sweep".into(),
        };
        format!(
            "command={} kernel={} dim={} n={} layout={} endpoints={} shift-factor={} quad-order={} \
             panels-per-unit={} fourier-cutoff={} seed={} eps={} trials={}",
            self.command.name(),
            self.kernel.name(),
            self.dim,
            sizes.join(";"),
            self.layout.name(),
            self.endpoints,
            shift,
            self.quadrature.order,
            kernstab_core::io::format_g17(self.quadrature.panels_per_unit),
            kernstab_core::io::format_g17(self.quadrature.fourier_cutoff),
            self.seed,
            kernstab_core::io::format_g17(self.eps),
            self.trials,
        )
    }

    /// First 16 hex digits of the SHA-256 of [`echo`](Self::echo).
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.echo().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_grid() {
        let want = [
            10, 11, 12, 13, 15, 16, 18, 20, 22, 25, 28, 31, 34, 38, 42, 47, 52, 57, 64, 71, 78, 87, 97, 107,
            119, 132, 146, 162, 180, 200,
        ];
        assert_eq!(log_grid(10, 200, 30), want);
        assert_eq!(log_grid(10, 10, 30), vec![10]);
        let wide = log_grid(10, 1000, 30);
        assert_eq!((wide[0], *wide.last().unwrap()), (10, 1000));
        assert!(wide.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(log_grid(10, 12, 30), vec![10, 11, 12]);
    }

    fn resolve(kind: CommandKind, f: impl FnOnce(&mut CommonArgs)) -> Result<ExperimentConfig, UsageError> {
        let mut a = CommonArgs::default();
        f(&mut a);
        ExperimentConfig::resolve(kind, a)
    }

    #[test]
    fn defaults_and_preconditions() {
        let c = resolve(CommandKind::EigenScaling, |_| {}).unwrap();
        assert_eq!(c.sizes.len(), 30);
        assert_eq!(c.kernel, KernelFamily::MaternBasic);
        let c = resolve(CommandKind::EigenScaling, |a| a.n = Some(10)).unwrap();
        assert_eq!(c.sizes, vec![10]);
        assert!(resolve(CommandKind::EigenScaling, |a| a.dim = Some(2)).is_err());
        assert!(resolve(CommandKind::Heatmap, |a| a.dim = Some(1)).is_err());
        assert!(resolve(CommandKind::Sin2, |a| a.eps = Some(1.5)).is_err());
        assert!(resolve(CommandKind::Identity, |a| a.kernel = Some(KernelFamily::Gaussian)).is_err());
        assert!(resolve(CommandKind::Equivalence, |a| a.n_max = Some(30)).is_err());
        assert!(resolve(CommandKind::Equivalence, |a| a.shift_factor = Some(-1.0)).is_err());
        assert!(resolve(CommandKind::Equivalence, |a| a.quad_order = Some(0)).is_err());
    }

    #[test]
    fn hash_ignores_output_paths() {
        let a = resolve(CommandKind::Heatmap, |_| {}).unwrap();
        let b = resolve(CommandKind::Heatmap, |a| a.out_csv = Some("x.csv".into())).unwrap();
        let c = resolve(CommandKind::Heatmap, |a| a.seed = Some(1)).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_ne!(a.hash(), c.hash());
        assert_eq!(a.hash().len(), 16);
    }
}
