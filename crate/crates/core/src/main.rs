use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use massless::chern::{chern_refinement, SphereMesh};
use massless::config::{load_config, RunConfig};
use massless::fields::{convergence_study, field_momenta, field_residuals, Packet, Particle, STUDY_POINTS, STUDY_SPACINGS};
use massless::little_group::Helicity;
use massless::report::{emit_report, Format, Report};
use massless::spacetime::SpacetimeGrid;
use massless::suites::{run_suite, tau_sweep};
use massless::{Error, Result};

/// Output directory override; the only setting read from the environment.
const OUT_DIR_ENV: &str = "MASSLESS_OUT_DIR";

#[derive(Parser)]
#[command(name = "massless", version, about = "Verification runs for massless Poincare representations")]
struct Cli {
    /// Seed for every random sweep (overrides the config file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for reports.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParticleArg {
    Photon,
    Graviton,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// First Chern number of the helicity-s bundle.
    Chern {
        /// Twice the helicity.
        #[arg(long, allow_hyphen_values = true)]
        spin: i32,
        /// Number of mesh refinements after the coarsest level.
        #[arg(long, default_value_t = 1)]
        refine: usize,
    },
    /// Field-equation residuals of a synthesized wave packet.
    Fields {
        #[arg(long, value_enum)]
        particle: ParticleArg,
        /// Points per axis of the spacetime grid.
        #[arg(long, default_value_t = 32)]
        grid: usize,
    },
    /// Reduced helicity density under boosts, as plot-ready CSV.
    TauDemo {
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value_t = 1.5)]
        max_rapidity: f64,
    },
    /// Parity identities.
    ParityCheck,
}

fn resolve(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => load_config(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(dir) = std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()) {
        cfg.out_dir = PathBuf::from(dir);
    }
    if let Some(dir) = &cli.out {
        cfg.out_dir = dir.clone();
    }
    Ok(cfg)
}

fn finish(report: &Report, format: Format, dir: &Path) -> Result<bool> {
    let path = emit_report(report, format, dir)?;
    let failed: Vec<_> = report.failures().collect();
    println!("{}: {} checks, {} failed -> {}", report.suite, report.records.len(), failed.len(), path.display());
    for f in failed {
        let m = f.measured.map(|v| format!("{v:e}")).unwrap_or_else(|| "n/a".into());
        println!("  FAIL {} measured {} tolerance {:e} ({})", f.id, m, f.tolerance, f.anchor);
    }
    Ok(report.passed())
}

fn chern_report(two_s: i32, refine: usize, cfg: &RunConfig) -> Result<Report> {
    let s = Helicity::from_twice(two_s);
    let mut r = Report::new(&format!("chern_{two_s}"), cfg.seed);
    let levels = chern_refinement(s, refine + 1, cfg.chern_cap);
    let levels = match levels {
        Ok(v) => v,
        Err(e @ Error::NonConvergence(_)) => {
            r.failed("chern.refine", "stable under mesh refinement", &e);
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let c1 = *levels.last().expect("at least one level");
    r.at_most("chern.c1", "first Chern number is -2s", (c1 + two_s as f64).abs(), cfg.tolerance("chern_integer"));
    if let [.., a, b] = levels[..] {
        r.at_most("chern.refine", "stable under one mesh refinement", (a - b).abs(), cfg.tolerance("chern_stability"));
    }
    r.values.insert("c1".into(), c1);
    for (l, v) in levels.iter().enumerate() {
        let mesh = SphereMesh::new(l, cfg.chern_cap)?;
        r.values.insert(format!("level_{l}_cells_{}", (mesh.main_bands + mesh.cap_bands) * mesh.sectors), *v);
    }
    Ok(r)
}

fn fields_report(particle: Particle, n: usize, cfg: &RunConfig) -> Result<Report> {
    let grid = SpacetimeGrid { n, h: cfg.spacetime.h };
    grid.check()?;
    let packet = Packet::new(particle, &field_momenta()?)?;
    let mut r = Report::new(&format!("fields_{particle}"), cfg.seed);
    r.at_most("fields.momentum_constraints", "momentum-space constraints at every node", packet.momentum_constraints(), cfg.tolerance("momentum_constraint"));
    let fr = field_residuals(&packet, grid)?;
    let tol = cfg.tolerance("field_residual");
    r.at_most("fields.wave", "wave equation", fr.wave, tol);
    r.at_most("fields.divergence", "divergence condition", fr.divergence, tol);
    r.at_most("fields.algebraic", "trace and symmetry", fr.algebraic, cfg.tolerance("momentum_constraint"));
    r.at_most("fields.gauge", "gauge shift equals the (symmetrized) gradient", fr.gauge, tol);
    let study = convergence_study(&packet, STUDY_POINTS, &STUDY_SPACINGS)?;
    r.at_least("fields.order", "second-order convergence of the residuals", study.min_order(), cfg.tolerance("min_convergence_order"));
    for (i, s) in study.steps.iter().enumerate() {
        r.values.insert(format!("study_{i}_h"), s.h);
        r.values.insert(format!("study_{i}_wave"), s.wave);
        r.values.insert(format!("study_{i}_divergence"), s.divergence);
        r.values.insert(format!("study_{i}_gauge"), s.gauge);
    }
    Ok(r)
}

fn tau_demo(cfg: &RunConfig, steps: usize, max_rapidity: f64) -> Result<PathBuf> {
    let rows = tau_sweep(cfg, steps, max_rapidity)?;
    std::fs::create_dir_all(&cfg.out_dir)?;
    let path = cfg.out_dir.join("tau_demo.csv");
    let mut w = csv::Writer::from_path(&path).map_err(|e| Error::Io(e.to_string()))?;
    for row in &rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(path)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = resolve(cli)?;
    let format = Format::from(cli.format);
    match &cli.command {
        Command::Verify { suite } => finish(&run_suite(suite, &cfg)?, format, &cfg.out_dir),
        Command::ParityCheck => finish(&run_suite("parity", &cfg)?, format, &cfg.out_dir),
        Command::Chern { spin, refine } => {
            if spin.abs() > 24 || *refine > 5 {
                return Err(Error::Config("chern: |2s| <= 24 and refine <= 5".into()));
            }
            finish(&chern_report(*spin, *refine, &cfg)?, format, &cfg.out_dir)
        }
        Command::Fields { particle, grid } => {
            let p = match particle {
                ParticleArg::Photon => Particle::Photon,
                ParticleArg::Graviton => Particle::Graviton,
            };
            if *grid > 128 {
                return Err(Error::Config(format!("grid of {grid} points per axis is too large")));
            }
            finish(&fields_report(p, *grid, &cfg)?, format, &cfg.out_dir)
        }
        Command::TauDemo { steps, max_rapidity } => {
            let path = tau_demo(&cfg, (*steps).clamp(1, 10_000), *max_rapidity)?;
            println!("tau-demo -> {}", path.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
