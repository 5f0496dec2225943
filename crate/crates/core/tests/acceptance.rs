//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use nalgebra::SVector;
use rand::Rng;
use symplectic_lie::cotangent::CotangentPoint;
use symplectic_lie::harness::{
    run_longrun, run_order_study, run_symplecticity_check, ErrorMetric, ExperimentConfig, LongRun, Problem,
};
use symplectic_lie::integrators::{compose_steps, sprk_step, step, vcg_step, vrkmk_step};
use symplectic_lie::lie::Abelian;
use symplectic_lie::systems::{AbelianOscillator, Dipole};
use symplectic_lie::tableau::{
    compose_tableaux, gauss_tableau, midpoint_tableau, tableau_by_name, yoshida4_weights, yoshida6_weights,
    yoshida_dirk,
};
use symplectic_lie::{AlgebraVector, CoVector, Method, StepConfig};

const FP_TOL: f64 = StepConfig::DEFAULT_FP_TOL;
const SAMPLES: usize = 1000;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn convergence_orders() -> Verdict {
    let start = Instant::now();
    let cases = [
        (Method::Vrkmk, "gauss1", 2.0),
        (Method::Vrkmk, "kutta3", 3.0),
        (Method::Vrkmk, "gauss2", 4.0),
        (Method::Vrkmk, "gauss3", 6.0),
        (Method::Vcg, "midpoint", 2.0),
        (Method::Vcg, "yoshida4", 4.0),
        (Method::Vcg, "yoshida6", 6.0),
    ];
    let mut pass = true;
    let mut parts = vec![];
    for (method, tableau, order) in cases {
        let cfg = ExperimentConfig::preset("paper-dipole")
            .map(|c| ExperimentConfig { method, tableau: tableau.into(), ..c })
            .unwrap();
        match run_order_study(&cfg).map(|s| s.slope) {
            Ok(Some(slope)) => {
                pass &= (slope - order).abs() <= 0.3;
                parts.push(format!("{method} {tableau} {slope:.2}"));
            }
            other => {
                pass = false;
                parts.push(format!("{method} {tableau} no slope ({other:?})"));
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed <= Duration::from_secs(300);
    Verdict::new(pass, format!("{}; {:.1}s", parts.join(", "), elapsed.as_secs_f64()))
}

fn order_barrier() -> Verdict {
    let cfg = ExperimentConfig {
        cutoff: Some(0),
        metric: ErrorMetric::Group,
        ..ExperimentConfig::new(Problem::NonRegular, Method::Vrkmk, "kutta3")
    };
    match run_order_study(&cfg).map(|s| s.slope) {
        Ok(Some(slope)) => Verdict::new(slope <= 2.5, format!("kutta3 r=0 group slope {slope:.2} (limit 2.5)")),
        other => Verdict::new(false, format!("no slope: {other:?}")),
    }
}

struct LongRunCase {
    method: Method,
    tableau: &'static str,
    interval: (f64, f64),
    result: Result<LongRun, String>,
    elapsed: Duration,
}

fn long_runs() -> Vec<LongRunCase> {
    let cases = [
        (Method::Vrkmk, "gauss1", (2e-4, 5e-3)),
        (Method::Vcg, "midpoint", (2e-4, 5e-3)),
        (Method::Vrkmk, "gauss2", (1e-8, 1e-6)),
        (Method::Vcg, "yoshida4", (1e-6, 1e-4)),
    ];
    std::thread::scope(|scope| {
        let handles: Vec<_> = cases
            .iter()
            .map(|&(method, tableau, interval)| {
                scope.spawn(move || {
                    let cfg = ExperimentConfig { h: 0.01, steps: 100_000, ..ExperimentConfig::new(Problem::Dipole, method, tableau) };
                    let start = Instant::now();
                    let result = run_longrun(&cfg).map_err(|e| e.to_string());
                    LongRunCase { method, tableau, interval, result, elapsed: start.elapsed() }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("long run thread")).collect()
    })
}

fn long_run_energy(runs: &[LongRunCase]) -> Verdict {
    let mut pass = true;
    let mut parts = vec![];
    for case in runs {
        match &case.result {
            Ok(run) => {
                let (lo, hi) = case.interval;
                let ok = (lo..=hi).contains(&run.max_abs_error)
                    && run.drift_free()
                    && case.elapsed <= Duration::from_secs(600);
                pass &= ok;
                parts.push(format!(
                    "{} {} max {:.2e} in [{lo:.0e}, {hi:.0e}], tenths {:.2e}/{:.2e}, {:.0}s",
                    case.method,
                    case.tableau,
                    run.max_abs_error,
                    run.first_tenth_max,
                    run.last_tenth_max,
                    case.elapsed.as_secs_f64()
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{} {} failed: {e}", case.method, case.tableau));
            }
        }
    }
    Verdict::new(pass, parts.join("; "))
}

fn symplecticity() -> Verdict {
    let mut worst: f64 = 0.0;
    for method in [Method::Vrkmk, Method::Vcg] {
        for tableau in ["midpoint", "gauss2", "gauss3", "kutta3", "yoshida4"] {
            let cfg = ExperimentConfig { h: 1e-2, ..ExperimentConfig::new(Problem::Dipole, method, tableau) };
            match run_symplecticity_check(&cfg) {
                Ok(r) => worst = worst.max(r.defect),
                Err(e) => return Verdict::new(false, format!("{method} {tableau}: {e}")),
            }
        }
    }
    let control = ExperimentConfig { h: 1e-2, ..ExperimentConfig::new(Problem::Dipole, Method::Rkmk, "gauss2") };
    let control = run_symplecticity_check(&control).map(|r| r.defect).unwrap_or(f64::NAN);
    Verdict::new(
        worst <= 1e-6 && control > 1e-3,
        format!("variational max defect {worst:.2e} (limit 1e-6), control {control:.2e} (needs > 1e-3)"),
    )
}

fn abelian_reduction() -> Verdict {
    let osc = AbelianOscillator::new(1.0, 0.5);
    let mut rng = rng(2024);
    let cfg = StepConfig::new(0.1);
    let mut worst: f64 = 0.0;
    for name in ["gauss1", "gauss2", "gauss3", "kutta3", "yoshida4"] {
        let t = tableau_by_name(name).unwrap();
        for _ in 0..100 {
            let q = SVector::<f64, 2>::from_fn(|_, _| rng.random_range(-1.5..1.5));
            let p = CoVector::<2>::from([rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5)]);
            let z = CotangentPoint::<Abelian<2>, 2>::new(q, p);
            let reference = match sprk_step(&osc, &z, &cfg, &t) {
                Ok(r) => r,
                Err(e) => return Verdict::new(false, format!("sprk {name}: {e}")),
            };
            for got in [vrkmk_step(&osc, &z, &cfg, &t), vcg_step(&osc, &z, &cfg, &t)] {
                match got {
                    Ok(w) => worst = worst.max(w.distance(&reference)),
                    Err(e) => return Verdict::new(false, format!("{name}: {e}")),
                }
            }
        }
    }
    Verdict::new(worst <= 10.0 * FP_TOL, format!("max distance {worst:.2e} over 500 states (limit {:.0e})", 10.0 * FP_TOL))
}

fn second_order_coincidence() -> Verdict {
    let d = Dipole::standard();
    let cfg = StepConfig::new(1e-2);
    let (gauss1, mid) = (gauss_tableau(1).unwrap(), midpoint_tableau());
    let mut z = d.initial_state();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = step(Method::Vrkmk, &d, &z, &cfg, &gauss1, None).unwrap().z;
        let b = step(Method::Vcg, &d, &z, &cfg, &mid, None).unwrap().z;
        worst = worst.max(a.distance(&b));
        z = a;
    }
    Verdict::new(worst <= 10.0 * FP_TOL, format!("max step difference {worst:.2e} over 100 states (limit {:.0e})", 10.0 * FP_TOL))
}

fn composition() -> Verdict {
    let d = Dipole::standard();
    let z0 = d.initial_state();
    let cfg = StepConfig::new(0.05);
    let pairs = [("midpoint", "midpoint"), ("gauss2", "midpoint"), ("midpoint", "gauss3"), ("kutta3", "gauss2")];
    let mut worst: f64 = 0.0;
    for (n1, n2) in pairs {
        let (t1, t2) = (tableau_by_name(n1).unwrap(), tableau_by_name(n2).unwrap());
        for gamma in [0.3, 0.5, yoshida4_weights()[0]] {
            let two = compose_steps(&d, &z0, &cfg, &t1, &t2, gamma).unwrap();
            let one = vcg_step(&d, &z0, &cfg, &compose_tableaux(&t1, &t2, gamma).unwrap()).unwrap();
            worst = worst.max(two.distance(&one));
        }
    }
    let mut entry_err: f64 = 0.0;
    for (order, w) in [(4, yoshida4_weights().to_vec()), (6, yoshida6_weights().to_vec())] {
        let t = yoshida_dirk(order).unwrap();
        for i in 0..w.len() {
            entry_err = entry_err.max((t.b(i) - w[i]).abs());
            for j in 0..w.len() {
                let expected = if j < i { w[j] } else if j == i { w[i] / 2.0 } else { 0.0 };
                entry_err = entry_err.max((t.a(i, j) - expected).abs());
            }
        }
    }
    Verdict::new(
        worst <= 1e-12 && entry_err == 0.0,
        format!("two-step vs composed tableau {worst:.2e} (limit 1e-12), DIRK entry error {entry_err:.1e}"),
    )
}

fn kernel_suites() -> Verdict {
    let mut rng = rng(7);
    let mut worst = [0.0f64; 5];
    let mut min_order_margin = f64::INFINITY;
    for k in 0..SAMPLES {
        let x = AlgebraVector(random_vec(&mut rng, 2.0));
        let y = AlgebraVector(random_vec(&mut rng, 2.0));
        let z = AlgebraVector(random_vec(&mut rng, 2.0));
        worst[0] = worst[0].max(antisymmetry_residual(&x, &y));
        worst[4] = worst[4].max(jacobi_residual(&x, &y, &z));

        let g = random_rotation(&mut rng);
        let xs = AlgebraVector(random_vec_norm(&mut rng, 1e-6, 3.0));
        let mu = CoVector(random_vec(&mut rng, 1.0));
        worst[1] = worst[1].max(pairing_residual(&g, &xs, &y, &mu));
        worst[2] = worst[2].max(dexp_adjoint_residual(&xs, &y));

        let xe = AlgebraVector(random_vec_norm(&mut rng, 1e-6, 1.0));
        worst[3] = worst[3].max(series_residual(&xe, &AlgebraVector(random_vec(&mut rng, 1.0))));

        let r = k % 7;
        let xt = AlgebraVector(random_vec_norm(&mut rng, 0.3, 0.5));
        let yt = loop {
            let v = AlgebraVector(random_vec(&mut rng, 1.0));
            if xt.0.normalize().cross(&v.0).norm() > 0.1 {
                break v;
            }
        };
        min_order_margin = min_order_margin.min(truncation_order(&xt, &yt, r) - (r as f64 + 1.0));
    }
    let pass = worst[0] < 1e-15 && worst[4] < 1e-13 && worst[1] < 1e-14 && worst[2] < 1e-13 && worst[3] < 1e-13 && min_order_margin >= -0.25;
    Verdict::new(
        pass,
        format!(
            "{SAMPLES} samples: antisymmetry {:.1e}, Jacobi {:.1e}, pairing {:.1e}, dexp/Ad {:.1e}, series {:.1e}, truncation order margin {:+.2}",
            worst[0], worst[4], worst[1], worst[2], worst[3], min_order_margin
        ),
    )
}

fn manifold_exactness(runs: &[LongRunCase]) -> Verdict {
    let mut worst: f64 = 0.0;
    for case in runs {
        match case.result.as_ref().ok().and_then(|r| r.final_orthogonality_defect) {
            Some(d) => worst = worst.max(d),
            None => return Verdict::new(false, format!("{} {}: no final state", case.method, case.tableau)),
        }
    }
    Verdict::new(worst <= 1e-10, format!("max |q^T q - I| after 1e5 steps {worst:.2e} (limit 1e-10)"))
}

fn main() -> ExitCode {
    let runs = long_runs();
    let verdicts = [
        ("convergence orders", convergence_orders()),
        ("order barrier", order_barrier()),
        ("long-run energy", long_run_energy(&runs)),
        ("symplecticity", symplecticity()),
        ("abelian reduction", abelian_reduction()),
        ("second-order coincidence", second_order_coincidence()),
        ("composition", composition()),
        ("kernel property suites", kernel_suites()),
        ("manifold exactness", manifold_exactness(&runs)),
    ];
    let mut failed = 0;
    for (k, (name, v)) in verdicts.iter().enumerate() {
        println!("{} {}. {name}: {}", if v.pass { "PASS" } else { "FAIL" }, k + 1, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("{} of {} criteria passed", verdicts.len() - failed, verdicts.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
