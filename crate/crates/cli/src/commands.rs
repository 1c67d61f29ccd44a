use std::fs;

use anyhow::{bail, Context};
use ggd_core::ewens::exact::exact_expected_longest_rational;
use ggd_core::montecarlo::{LemmaConfig, SPAGHETTI_THETA};
use ggd_core::samplers::hoppe_urn_trace;
use ggd_core::{
    asymptotic_lambda, crossover_theta, estimate_lambda, exact_expected_longest, holst_moment, lambda_theta,
    sweep, verify_lemma, AsymptoticRegime, ExperimentConfig, Model, Seed, Theta,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::output::{Cell, OutputFormat, Table};
use crate::theta::{ThetaArg, ThetaList};
use crate::{Cli, Command, FigureArg, ModelArg, RegimeArg, SimArgs};

const TABLE_THETAS: [&str; 16] = [
    "1/10", "1/8", "1/6", "1/5", "1/4", "1/3", "1/2", "2/3", "3/4", "1", "3/2", "2", "3", "4", "5", "10",
];

const MC_THETAS: [f64; 11] = [0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 7.5, 10.0];

pub fn run(cli: &Cli) -> anyhow::Result<String> {
    let format = cli.format;
    match &cli.command {
        Command::Lambda { theta, tol } => lambda(theta, *tol).map(|t| t.render(format)),
        Command::Table => table().map(|t| t.render(format)),
        Command::Moment { theta, k, tol } => {
            let m = holst_moment(theta.theta()?, *k, *tol)?;
            let mut t = Table::new(vec!["theta", "k", "moment"]);
            t.push(vec![Cell::Float(theta.value), Cell::Int(u64::from(*k)), Cell::Float(m)]);
            Ok(t.render(format))
        }
        Command::Asym { theta, regime } => asym(theta, *regime).map(|t| t.render(format)),
        Command::Crossover { target, tol } => {
            let th = crossover_theta(*target, *tol)?;
            let mut t = Table::new(vec!["target", "theta"]);
            t.push(vec![Cell::Float(*target), Cell::Float(th.get())]);
            Ok(t.render(format))
        }
        Command::Exact { theta, n } => exact(theta, *n).map(|t| t.render(format)),
        Command::Simulate {
            model,
            theta,
            n,
            reps,
            sim,
        } => simulate(*model, theta.as_ref(), *n, *reps, sim, format),
        Command::VerifyLemma {
            theta,
            s,
            reps,
            grid,
            sim,
        } => lemma(theta, *s, *reps, *grid, sim, format),
        Command::Figdata {
            which,
            out,
            theta,
            n,
            reps,
            tol,
            sim,
        } => {
            let table = match which {
                FigureArg::Ggd => ggd_curve(*tol)?,
                FigureArg::Singlerun => single_run(theta.as_ref(), n.unwrap_or(50), sim)?,
                FigureArg::Mc => mc_curve(theta.as_ref(), n.unwrap_or(1000), *reps, *tol, sim)?,
            };
            let csv = table.to_csv();
            match out {
                Some(path) => {
                    fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
                    Ok(format!("wrote {} rows to {}\n", table.rows.len(), path.display()))
                }
                None => Ok(csv),
            }
        }
    }
}

fn lambda(thetas: &ThetaList, tol: f64) -> anyhow::Result<Table> {
    let mut t = Table::new(vec!["theta", "lambda"]);
    for th in &thetas.0 {
        let v = lambda_theta(th.theta()?, tol).with_context(|| format!("theta = {th}"))?;
        t.push(vec![Cell::Float(th.value), Cell::Float(v)]);
    }
    Ok(t)
}

fn table() -> anyhow::Result<Table> {
    let mut t = Table::new(vec!["theta", "lambda"]);
    for lit in TABLE_THETAS {
        let th: ThetaArg = lit.parse().map_err(anyhow::Error::msg)?;
        let v = lambda_theta(th.theta()?, 1e-12)?;
        t.push(vec![Cell::Str(lit.to_string()), Cell::Fixed(v, 6)]);
    }
    Ok(t)
}

fn asym(thetas: &ThetaList, regime: RegimeArg) -> anyhow::Result<Table> {
    let (regime, name) = match regime {
        RegimeArg::Small => (AsymptoticRegime::SmallTheta, "small"),
        RegimeArg::Large => (AsymptoticRegime::LargeTheta, "large"),
    };
    let mut t = Table::new(vec!["theta", "regime", "lambda_asym"]);
    for th in &thetas.0 {
        let v = asymptotic_lambda(th.theta()?, regime).with_context(|| format!("theta = {th}"))?;
        t.push(vec![Cell::Float(th.value), Cell::Str(name.into()), Cell::Float(v)]);
    }
    Ok(t)
}

fn exact(thetas: &ThetaList, n: usize) -> anyhow::Result<Table> {
    let mut t = Table::new(vec!["theta", "n", "expected_longest_fraction", "exact"]);
    for th in &thetas.0 {
        let (value, fraction) = match &th.exact {
            Some(q) => {
                let r = exact_expected_longest_rational(q, n)?;
                (r.to_f64().unwrap_or(f64::NAN), Cell::Str(r.to_string()))
            }
            None => (exact_expected_longest(th.theta()?, n)?, Cell::Empty),
        };
        t.push(vec![Cell::Float(th.value), Cell::Int(n as u64), Cell::Float(value), fraction]);
    }
    Ok(t)
}

fn core_model(model: ModelArg) -> Model {
    match model {
        ModelArg::Hoppe => Model::Hoppe,
        ModelArg::Crp => Model::Crp,
        ModelArg::Spaghetti => Model::Spaghetti,
    }
}

fn simulate(
    model: ModelArg,
    theta: Option<&ThetaArg>,
    n: usize,
    reps: u64,
    sim: &SimArgs,
    format: OutputFormat,
) -> anyhow::Result<String> {
    let theta = match theta {
        Some(th) => th.theta()?,
        None if model == ModelArg::Spaghetti => Theta::new(SPAGHETTI_THETA)?,
        None => Theta::new(1.0)?,
    };
    let config = ExperimentConfig::new(n, reps, sim.seed).with_workers(sim.workers);
    let est = estimate_lambda(core_model(model), theta, &config)?;
    let mut t = Table::new(vec!["model", "theta", "n", "replicates", "seed", "mean", "std_error"]);
    t.push(vec![
        Cell::Str(est.model.as_str().into()),
        Cell::Float(est.theta),
        Cell::Int(est.n as u64),
        Cell::Int(est.replicates),
        Cell::Int(est.master_seed),
        Cell::Float(est.mean),
        Cell::Float(est.std_error),
    ]);
    Ok(match format {
        OutputFormat::Json => single_object(&t),
        _ => t.render(format),
    })
}

fn single_object(t: &Table) -> String {
    let obj = t.json_rows().into_iter().next().unwrap_or(Value::Null);
    let mut s = serde_json::to_string_pretty(&obj).expect("serializable");
    s.push('\n');
    s
}

fn lemma(
    theta: &ThetaArg,
    s: f64,
    reps: u64,
    grid: usize,
    sim: &SimArgs,
    format: OutputFormat,
) -> anyhow::Result<String> {
    let mut config = LemmaConfig::new(s, reps, sim.seed);
    config.grid_size = grid;
    config.workers = sim.workers;
    let report = verify_lemma(theta.theta()?, &config)?;

    let mut t = Table::new(vec!["x", "empirical_cdf", "theoretical_cdf"]);
    for i in 0..report.grid.len() {
        t.push(vec![
            Cell::Float(report.grid[i]),
            Cell::Float(report.empirical[i]),
            Cell::Float(report.theoretical[i]),
        ]);
    }
    Ok(match format {
        OutputFormat::Csv => {
            let mut out = t.to_csv();
            out.push_str(&format!("sup_distance,{:?},\n", report.sup_distance));
            out
        }
        OutputFormat::Json => {
            let obj = json!({
                "theta": theta.value,
                "s": s,
                "replicates": reps,
                "seed": sim.seed,
                "sup_distance": report.sup_distance,
                "rows": t.json_rows(),
            });
            let mut out = serde_json::to_string_pretty(&obj).expect("serializable");
            out.push('\n');
            out
        }
        OutputFormat::Text => {
            let step = (t.rows.len() / 16).max(1);
            let mut brief = Table::new(t.columns.clone());
            for (i, row) in t.rows.iter().enumerate() {
                if i % step == 0 || i + 1 == t.rows.len() {
                    brief.push(row.clone());
                }
            }
            format!(
                "theta = {theta}, s = {s}, replicates = {reps}, seed = {}\nsup |F_emp - F| = {:?}\n\n{}",
                sim.seed,
                report.sup_distance,
                brief.to_text()
            )
        }
    })
}

fn ggd_curve(tol: f64) -> anyhow::Result<Table> {
    let mut t = Table::new(vec!["theta", "lambda"]);
    for i in 0..=500u32 {
        let th = f64::from(i) / 100.0;
        t.push(vec![Cell::Float(th), Cell::Float(lambda_theta(Theta::new(th)?, tol)?)]);
    }
    Ok(t)
}

fn single_run(theta: Option<&ThetaList>, n: usize, sim: &SimArgs) -> anyhow::Result<Table> {
    let theta = match theta.map(|l| l.0.as_slice()) {
        None => Theta::new(1.0)?,
        Some([one]) => one.theta()?,
        Some(_) => bail!("singlerun takes a single theta"),
    };
    let trace = hoppe_urn_trace(theta, n, Seed(sim.seed))?;
    let mut t = Table::new(vec!["step", "class", "size", "proportion"]);
    for (step, sizes) in trace.iter().enumerate() {
        let k = (step + 1) as f64;
        for (class, &size) in sizes.iter().enumerate() {
            t.push(vec![
                Cell::Int(step as u64 + 1),
                Cell::Int(class as u64 + 1),
                Cell::Int(size as u64),
                Cell::Float(size as f64 / k),
            ]);
        }
    }
    Ok(t)
}

fn mc_curve(theta: Option<&ThetaList>, n: usize, reps: u64, tol: f64, sim: &SimArgs) -> anyhow::Result<Table> {
    let thetas: Vec<Theta> = match theta {
        Some(list) => list.0.iter().map(ThetaArg::theta).collect::<anyhow::Result<_>>()?,
        None => MC_THETAS.iter().map(|&v| Theta::new(v)).collect::<Result<_, _>>()?,
    };
    let config = ExperimentConfig::new(n, reps, sim.seed).with_workers(sim.workers);
    let estimates = sweep(&thetas, Model::Hoppe, &config);
    let mut t = Table::new(vec!["theta", "mc_mean", "mc_se", "exact_lambda", "asym_small", "asym_large"]);
    for (th, est) in thetas.iter().zip(estimates) {
        let est = est.with_context(|| format!("theta = {}", th.get()))?;
        let large = if th.get() > std::f64::consts::E {
            Cell::Float(asymptotic_lambda(*th, AsymptoticRegime::LargeTheta)?)
        } else {
            Cell::Empty
        };
        t.push(vec![
            Cell::Float(th.get()),
            Cell::Float(est.mean),
            Cell::Float(est.std_error),
            Cell::Float(lambda_theta(*th, tol)?),
            Cell::Float(asymptotic_lambda(*th, AsymptoticRegime::SmallTheta)?),
            large,
        ]);
    }
    Ok(t)
}
