//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::collections::HashMap;
use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ggd_core::ewens::cycle_type_law;
use ggd_core::montecarlo::{sample_partitions, LemmaConfig};
use ggd_core::quadrature::{integrate_semi_infinite, TailBound};
use ggd_core::specfun::e1;
use ggd_core::stats::chi_square_gof;
use ggd_core::{
    asymptotic_lambda, crossover_theta, estimate_lambda, euler_gamma, lambda_theta, sweep, verify_lemma,
    AsymptoticRegime, ExperimentConfig, Model, Theta,
};

const TOL: f64 = 1e-12;

const TABLE: [(f64, f64); 16] = [
    (1.0 / 10.0, 0.936295),
    (1.0 / 8.0, 0.921937),
    (1.0 / 6.0, 0.899210),
    (1.0 / 5.0, 0.882027),
    (1.0 / 4.0, 0.857758),
    (1.0 / 3.0, 0.820854),
    (1.0 / 2.0, 0.757823),
    (2.0 / 3.0, 0.705779),
    (3.0 / 4.0, 0.682960),
    (1.0, 0.624330),
    (3.0 / 2.0, 0.537540),
    (2.0, 0.475639),
    (3.0, 0.391838),
    (4.0, 0.336771),
    (5.0, 0.297288),
    (10.0, 0.194884),
];

type Outcome = Result<String, String>;

fn theta(v: f64) -> Theta {
    Theta::new(v).unwrap()
}

fn lam(v: f64) -> f64 {
    lambda_theta(theta(v), TOL).unwrap()
}

fn six(v: f64) -> String {
    format!("{v:.6}")
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    if elapsed.as_secs_f64() < limit_s as f64 {
        Ok(())
    } else {
        Err(format!("took {:.2?}, limit {limit_s} s", elapsed))
    }
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let mut misses = Vec::new();
    for &(th, expected) in &TABLE {
        let got = six(lam(th));
        if got != six(expected) {
            misses.push(format!("theta={th}: {got} vs {expected:.6}"));
        }
    }
    let elapsed = start.elapsed();
    if !misses.is_empty() {
        return Err(misses.join("; "));
    }
    within(elapsed, 5)?;
    Ok(format!("16/16 rows at 6 d.p. in {elapsed:.2?}"))
}

fn crossover() -> Outcome {
    let th = crossover_theta(0.5, TOL).map_err(|e| e.to_string())?.get();
    if (th - 1.784910).abs() <= 5e-7 {
        Ok(format!("theta = {th:.9}"))
    } else {
        Err(format!("theta = {th:.9}"))
    }
}

fn classical_constant() -> Outcome {
    let v = lam(1.0);
    if six(v) == "0.624330" {
        Ok(format!("lambda_1 = {v:.12}"))
    } else {
        Err(format!("lambda_1 = {v:.12}"))
    }
}

fn spaghetti_hoops() -> Outcome {
    let v = lam(0.5);
    if six(v) != "0.757823" {
        return Err(format!("lambda_1/2 = {v:.12}"));
    }
    let config = ExperimentConfig::new(1000, 10_000, 20_240_601);
    let est = estimate_lambda(Model::Spaghetti, theta(0.5), &config).map_err(|e| e.to_string())?;
    let gap = (est.mean - 0.757823).abs();
    let line = format!("lambda_1/2 = {v:.6}, hoops mean {:.5} (se {:.5})", est.mean, est.std_error);
    if gap < 0.01 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn small_theta() -> Outcome {
    let rem = |t: f64| (lam(t) - (1.0 - t * LN_2)).abs();
    let (a, b) = (rem(1e-2) / 1e-4, rem(1e-3) / 1e-6);
    let c = a.max(b);
    let line = format!("ratios {a:.6} and {b:.6}");
    let bounded = [1e-2, 1e-3].iter().all(|&t| rem(t) <= 2.0 * t * t * c);
    if bounded && a / b < 4.0 && b / a < 4.0 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn large_theta() -> Outcome {
    let r = |t: f64| t * lam(t) - (t.ln() - t.ln().ln() + euler_gamma());
    let (r2, r4) = (r(1e2), r(1e4));
    let asym = asymptotic_lambda(theta(1e4), AsymptoticRegime::LargeTheta).map_err(|e| e.to_string())?;
    let line = format!("r(1e2) = {r2:.6}, r(1e4) = {r4:.6}, asym(1e4) = {asym:.6e}");
    if r4.abs() < r2.abs() {
        Ok(line)
    } else {
        Err(line)
    }
}

fn proof_identities() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for &th in &[0.5, 1.0, 2.0] {
        let no_atom = |t: f64| (-th * e1(t).unwrap()).exp();
        let tail = TailBound::exponential(1.0).with_min_cutoff(60.0);
        let lhs = integrate_semi_infinite(|x| -(-th * e1(x).unwrap()).exp_m1(), TOL, tail)
            .map_err(|e| e.to_string())?
            .value;
        worst = worst.max((lhs - th * lam(th)).abs());
        for &x in &[0.1, 1.0, 5.0] {
            let lhs = -(-th * e1(x).unwrap()).exp_m1();
            let integrand = |u: f64| {
                let t = x + u;
                (-t).exp() / t * no_atom(t)
            };
            let rhs = th * integrate_semi_infinite(integrand, TOL, tail).map_err(|e| e.to_string())?.value;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    let elapsed = start.elapsed();
    let line = format!("max deviation {worst:.2e} in {elapsed:.2?}");
    if worst >= 1e-8 {
        return Err(line);
    }
    within(elapsed, 10)?;
    Ok(line)
}

fn exact_oracle() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for &(th, n) in &[(1.0, 3), (2.0, 3), (1.0, 6)] {
        let law = cycle_type_law(theta(th), n).map_err(|e| e.to_string())?;
        let index: HashMap<_, _> = law.iter().enumerate().map(|(i, (c, _))| (c.clone(), i)).collect();
        let probs: Vec<f64> = law.iter().map(|(_, p)| *p).collect();
        for model in [Model::Hoppe, Model::Crp] {
            let config = ExperimentConfig::new(n, 100_000, 7_000 + n as u64);
            let parts = sample_partitions(model, theta(th), &config).map_err(|e| e.to_string())?;
            let mut counts = vec![0u64; law.len()];
            for p in &parts {
                counts[index[&p.cycle_type()]] += 1;
            }
            let gof = chi_square_gof(&counts, &probs, 5.0).map_err(|e| e.to_string())?;
            ok &= gof.p_value > 0.001;
            lines.push(format!("{model}({th},{n}) p={:.3}", gof.p_value));
        }
    }
    for &(th, exact) in &[(1.0, 13.0 / 18.0), (2.0, 11.0 / 18.0)] {
        for model in [Model::Hoppe, Model::Crp] {
            let config = ExperimentConfig::new(3, 100_000, 99);
            let est = estimate_lambda(model, theta(th), &config).map_err(|e| e.to_string())?;
            let z = (est.mean - exact).abs() / est.std_error;
            ok &= z < 4.0;
            lines.push(format!("{model} E[L3]/3 at {th}: z={z:.2}"));
        }
    }
    let line = lines.join(", ");
    if ok {
        Ok(line)
    } else {
        Err(line)
    }
}

fn lemma_scaling() -> Outcome {
    let start = Instant::now();
    let fine = verify_lemma(theta(1.0), &LemmaConfig::new(1e-3, 100_000, 31)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let coarse = verify_lemma(theta(1.0), &LemmaConfig::new(1e-2, 100_000, 31)).map_err(|e| e.to_string())?;
    let line = format!(
        "sup(s=1e-3) = {:.5} in {elapsed:.2?}, sup(s=1e-2) = {:.5}",
        fine.sup_distance, coarse.sup_distance
    );
    if fine.sup_distance >= 0.02 || coarse.sup_distance <= fine.sup_distance {
        return Err(line);
    }
    within(elapsed, 60)?;
    Ok(line)
}

fn monte_carlo_sweep() -> Outcome {
    let thetas: Vec<Theta> = [0.5, 1.0, 2.0, 5.0].iter().map(|&v| theta(v)).collect();
    let expected = [0.757823, 0.624330, 0.475639, 0.297288];
    let config = ExperimentConfig::new(1000, 10_000, 2024);
    let start = Instant::now();
    let serial: Vec<_> = sweep(&thetas, Model::Hoppe, &config.with_workers(1))
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let serial_time = start.elapsed();
    let start = Instant::now();
    let parallel: Vec<_> = sweep(&thetas, Model::Hoppe, &config.with_workers(0))
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let parallel_time = start.elapsed();

    let means: Vec<String> = serial.iter().map(|e| format!("{:.4}", e.mean)).collect();
    let line = format!(
        "means [{}], serial {serial_time:.2?}, all cores {parallel_time:.2?}",
        means.join(", ")
    );
    let close = serial.iter().zip(&expected).all(|(e, &x)| (e.mean - x).abs() < 0.01);
    let identical = serial
        .iter()
        .zip(&parallel)
        .all(|(a, b)| a.mean.to_bits() == b.mean.to_bits() && a.std_error.to_bits() == b.std_error.to_bits());
    if !close {
        return Err(line);
    }
    if !identical {
        return Err(format!("{line}; worker counts disagree"));
    }
    within(serial_time, 300)?;
    Ok(line)
}

fn determinism() -> Outcome {
    let run = |workers| {
        let config = ExperimentConfig::new(500, 2000, 123_456).with_workers(workers);
        let est = estimate_lambda(Model::Crp, theta(1.5), &config).unwrap();
        serde_json::to_string(&est).unwrap()
    };
    let (a, b, c) = (run(0), run(0), run(1));
    if a == b && a == c {
        Ok(format!("{} bytes identical across runs and worker counts", a.len()))
    } else {
        Err(format!("{a} | {b} | {c}"))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("table reproduction", table_reproduction),
        ("crossover at one half", crossover),
        ("classical constant", classical_constant),
        ("spaghetti hoops", spaghetti_hoops),
        ("small-theta expansion", small_theta),
        ("large-theta trend", large_theta),
        ("proof identities", proof_identities),
        ("exact oracle vs samplers", exact_oracle),
        ("tilted Poisson scaling limit", lemma_scaling),
        ("monte carlo sweep", monte_carlo_sweep),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
