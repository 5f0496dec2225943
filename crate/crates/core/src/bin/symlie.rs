use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use symplectic_lie::harness::{
    run_longrun, run_order_study, run_symplecticity_check, write_csv, ErrorMetric, ExperimentConfig, Problem,
    SYMPLECTICITY_THRESHOLD,
};
use symplectic_lie::tableau::tableau_by_name;
use symplectic_lie::{Method, Result};

const CSV_SCHEMA: &str = "\
CSV output (--out), comma separated, one header line, floats as %.16e:
  order-study    h,error,iterations,slope_local,steps
                 error and slope_local are NaN where undefined or the run failed
  longrun        t,energy_error        energy_error = H(z_k) - H(z_0)
  symplecticity  h,defect,pass         defect = max |J^T Omega(z1) J - Omega(z0)|, pass is 1 or 0

Exit status: 0 success, 1 usage or input error, 2 solver failure.";

#[derive(Parser)]
#[command(name = "symlie", version, about = "Symplectic Lie group integrators on cotangent bundles", after_help = CSV_SCHEMA)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Global error at t_end against a sixth-order reference, over a range of step sizes.
    #[command(after_help = CSV_SCHEMA)]
    OrderStudy(Common),
    /// Energy error over many steps.
    #[command(after_help = CSV_SCHEMA)]
    Longrun(Common),
    /// Finite-difference symplecticity defect of one step at the initial state.
    /// `--method rkmk` runs the non-variational control.
    #[command(after_help = CSV_SCHEMA)]
    Symplecticity(Common),
    /// Print a Butcher tableau.
    TableauDump {
        #[arg(long, default_value = "gauss2")]
        tableau: String,
        /// Override the truncation degree.
        #[arg(long)]
        r: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    /// Start from a named configuration (paper-dipole); other flags override it.
    #[arg(long)]
    preset: Option<String>,
    /// dipole, nonregular or abelian-oscillator
    #[arg(long)]
    problem: Option<Problem>,
    /// vrkmk, vcg, rkmk, cg or sprk
    #[arg(long)]
    method: Option<Method>,
    /// midpoint, gauss1-3, kutta3, yoshida2/4/6
    #[arg(long)]
    tableau: Option<String>,
    /// Truncation degree of dexp⁻¹ (0 to 6); defaults to the tableau's.
    #[arg(long)]
    r: Option<usize>,
    /// Step size of longrun and symplecticity [default: 0.01].
    #[arg(long)]
    h: Option<f64>,
    /// Smallest order-study step [default: 1e-3].
    #[arg(long)]
    h_min: Option<f64>,
    /// Largest order-study step [default: 0.1].
    #[arg(long)]
    h_max: Option<f64>,
    /// Number of log-spaced order-study steps [default: 12].
    #[arg(long)]
    h_count: Option<usize>,
    /// Long-run step count [default: 100000].
    #[arg(long)]
    steps: Option<usize>,
    /// Order-study final time [default: 0.5].
    #[arg(long)]
    t_end: Option<f64>,
    /// Relative fixed-point tolerance [default: 1e-14].
    #[arg(long)]
    fp_tol: Option<f64>,
    /// Fixed-point sweep cap per step [default: 100].
    #[arg(long)]
    fp_max_iter: Option<usize>,
    /// Error metric of order studies: full or group.
    #[arg(long)]
    metric: Option<ErrorMetric>,
    /// Keep every n-th long-run row in the CSV.
    #[arg(long)]
    stride: Option<usize>,
    /// Write the CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.preset {
            Some(p) => ExperimentConfig::preset(p)?,
            None => ExperimentConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => { $(if let Some(v) = self.$field.clone() { cfg.$field = v; })* };
        }
        set!(problem, method, tableau, h, h_min, h_max, h_count, steps, t_end, fp_tol, fp_max_iter, metric);
        cfg.cutoff = self.r.or(cfg.cutoff);
        cfg.stride = self.stride.or(cfg.stride);
        Ok(cfg)
    }
}

fn header(cfg: &ExperimentConfig) -> String {
    format!("problem={} method={} tableau={}", cfg.problem, cfg.method, cfg.tableau)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::TableauDump { tableau, r } => {
            let cfg = ExperimentConfig { tableau, cutoff: r, ..ExperimentConfig::default() };
            tableau_by_name(&cfg.tableau)?;
            print!("{}", cfg.resolve_tableau()?);
            Ok(true)
        }
        Command::OrderStudy(args) => {
            let cfg = args.config()?;
            let study = run_order_study(&cfg)?;
            println!("# {} t_end={} metric={}", header(&cfg), cfg.t_end, cfg.metric.name());
            println!("{:>12} {:>8} {:>24} {:>6} {:>8}", "h", "steps", "error", "iter", "slope");
            for row in &study.rows {
                let err = match (&row.error, &row.failure) {
                    (Some(e), _) => format!("{e:.6e}"),
                    (None, Some(msg)) => format!("failed: {msg}"),
                    (None, None) => "-".into(),
                };
                let slope = row.local_slope.map_or("-".into(), |s| format!("{s:.3}"));
                println!("{:>12.6e} {:>8} {:>24} {:>6} {:>8}", row.h, row.steps, err, row.max_iterations, slope);
            }
            match study.slope {
                Some(s) => println!("fitted slope {s:.4} over {} points", study.fitted),
                None => println!("fitted slope unavailable ({} usable points)", study.fitted),
            }
            if let Some(path) = &args.out {
                write_csv(path, &symplectic_lie::harness::OrderStudy::CSV_HEADER, &study.csv_rows())?;
            }
            Ok(study.rows.iter().all(|r| r.failure.is_none()))
        }
        Command::Longrun(args) => {
            let cfg = args.config()?;
            let run = run_longrun(&cfg)?;
            println!("# {} h={} steps={}", header(&cfg), run.h, run.steps);
            println!("max |energy error|      {:.6e}", run.max_abs_error);
            println!("first tenth max         {:.6e}", run.first_tenth_max);
            println!("last tenth max          {:.6e}", run.last_tenth_max);
            println!("drift free              {}", run.drift_free());
            if let Some(d) = run.final_orthogonality_defect {
                println!("final |q^T q - I|_inf   {d:.3e}");
            }
            println!("max fixed-point sweeps  {}", run.max_iterations);
            if let Some(path) = &args.out {
                write_csv(path, &symplectic_lie::harness::LongRun::CSV_HEADER, &run.csv_rows())?;
            }
            Ok(true)
        }
        Command::Symplecticity(args) => {
            let cfg = args.config()?;
            let report = run_symplecticity_check(&cfg)?;
            println!("# {} h={} sign={:?}", header(&cfg), report.h, report.sign);
            println!(
                "defect {:.6e} ({} threshold {:.0e})",
                report.defect,
                if report.passed() { "within" } else { "above" },
                SYMPLECTICITY_THRESHOLD
            );
            if let Some(path) = &args.out {
                write_csv(path, &symplectic_lie::harness::SymplecticityReport::CSV_HEADER, &report.csv_rows())?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: solver failed at one or more step sizes");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_solver_failure() { 2 } else { 1 })
        }
    }
}
