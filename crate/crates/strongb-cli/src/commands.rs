//! Executes a resolved command against the library and assembles the report.
//!
//! Every effective parameter value, defaults included, is echoed into the
//! report config so a report alone reproduces its run.

use std::collections::BTreeMap;

use strongb::constants;
use strongb::findim::cocycle::cochain_check;
use strongb::findim::dist::{cocycle_bound_suite, hyperref_ratio};
use strongb::findim::group::{commutant_hyperref_check, parse_cayley, CayleyTable};
use strongb::findim::norms::MatP;
use strongb::findim::strongb::strong_b_estimate;
use strongb::report::{fmt_float, Entry, Report, Status};
use strongb::witness::{verify, WitnessParams};
use strongb::{Algebra64, Bimodule64};

use crate::CliError;

const DEFAULT_EPSILON: f64 = 0.6;
const DEFAULT_TRUNCATION: usize = 100_000;
const DEFAULT_GRID: usize = 256;
const DEFAULT_ALGEBRA: &str = "ck:2";
const DEFAULT_TASK: &str = "hyperref";
const DEFAULT_DEGREE: usize = 1;
const DEFAULT_FINDIM_SAMPLES: usize = 100;
const DEFAULT_BUDGET: usize = 64;
const DEFAULT_GROUP: &str = "cyclic:3";
const DEFAULT_P: &str = "2";
const DEFAULT_CVP_SAMPLES: usize = 200;
/// Reports flag runs whose inconclusive share reaches this as inconclusive.
const INCONCLUSIVE_RATE_CAP: f64 = 0.2;

pub fn execute(
    command: &str,
    params: &BTreeMap<String, String>,
    seed: u64,
) -> Result<Report, CliError> {
    match command {
        "witness" => run_witness(params, seed),
        "constants" => run_constants(params, seed),
        "findim" => run_findim(params, seed),
        "cvp" => run_cvp(params, seed),
        other => Err(CliError::Config(format!("unknown command `{other}`"))),
    }
}

fn get_raw<'a>(params: &'a BTreeMap<String, String>, key: &str) -> Option<&'a str> {
    params.get(key).map(String::as_str)
}

fn get_f64(params: &BTreeMap<String, String>, key: &str) -> Result<Option<f64>, CliError> {
    match get_raw(params, key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<f64>()
            .map(Some)
            .map_err(|_| CliError::Config(format!("{key} must be a number, got `{raw}`"))),
    }
}

fn get_usize(params: &BTreeMap<String, String>, key: &str) -> Result<Option<usize>, CliError> {
    match get_raw(params, key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::Config(format!("{key} must be a nonnegative integer, got `{raw}`"))),
    }
}

fn get_u32(params: &BTreeMap<String, String>, key: &str) -> Result<Option<u32>, CliError> {
    match get_raw(params, key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<u32>()
            .map(Some)
            .map_err(|_| CliError::Config(format!("{key} must be a nonnegative integer, got `{raw}`"))),
    }
}

fn require_positive(value: usize, key: &str) -> Result<usize, CliError> {
    if value == 0 {
        return Err(CliError::Config(format!("{key} must be at least 1")));
    }
    Ok(value)
}

fn run_witness(params: &BTreeMap<String, String>, seed: u64) -> Result<Report, CliError> {
    let epsilon = get_f64(params, "epsilon")?.unwrap_or(DEFAULT_EPSILON);
    let delta = get_f64(params, "delta")?.unwrap_or(epsilon / 100.0);
    let truncation = get_usize(params, "truncation")?.unwrap_or(DEFAULT_TRUNCATION);
    let grid = get_usize(params, "grid")?.unwrap_or(DEFAULT_GRID);

    let wp = WitnessParams::new(epsilon, delta, truncation, grid)?;
    let result = verify(wp)?;

    let mut report = Report::new("witness", seed);
    report.set_config("epsilon", fmt_float(epsilon));
    report.set_config("delta", fmt_float(delta));
    report.set_config("truncation", truncation.to_string());
    report.set_config("grid", grid.to_string());
    for entry in result.report_entries() {
        report.push(entry);
    }
    Ok(report)
}

fn run_constants(params: &BTreeMap<String, String>, seed: u64) -> Result<Report, CliError> {
    let alpha = get_f64(params, "alpha")?.unwrap_or(1.0);
    let gamma = get_f64(params, "gamma")?.unwrap_or(1.0);
    let n = get_u32(params, "n")?.unwrap_or(1);
    let m = get_f64(params, "M")?.unwrap_or(1.0);
    let c = get_f64(params, "C")?.unwrap_or(1.0);
    let k = get_f64(params, "K")?.unwrap_or(1.0);
    let pi_norm = get_f64(params, "pi_norm")?.unwrap_or(1.0);
    let r = get_f64(params, "r")?.unwrap_or(constants::cstar_group_constant::<f64>().value);

    let mut report = Report::new("constants", seed);
    report.set_config("alpha", fmt_float(alpha));
    report.set_config("gamma", fmt_float(gamma));
    report.set_config("n", n.to_string());
    report.set_config("M", fmt_float(m));
    report.set_config("C", fmt_float(c));
    report.set_config("K", fmt_float(k));
    report.set_config("pi_norm", fmt_float(pi_norm));
    report.set_config("r", fmt_float(r));

    let mut push_value = |name: &str, v: constants::ConstantValue<f64>| {
        report.push(Entry::new(name, v.value, (v.value, v.value), Status::Pass, v.formula));
    };
    push_value("circle_lemma_bound", constants::circle_lemma_bound(alpha));
    let (restricted, general) = constants::circle_strong_b(alpha);
    push_value("circle_strong_b_restricted", restricted);
    push_value("circle_strong_b_general", general);
    push_value("cstar_group_constant", constants::cstar_group_constant());
    push_value("unitization_constant", constants::unitization_constant(m, r));
    push_value("cocycle_norm_bound", constants::cocycle_norm_bound(n, r, gamma));
    push_value("hyperref_bound", constants::hyperref_bound(n, m, r, c));
    push_value("commutant_bound", constants::commutant_bound(m, c, k, pi_norm));
    Ok(report)
}

fn load_algebra(designator: &str) -> Result<Algebra64, CliError> {
    if let Some(path) = designator.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read algebra file {path}: {e}")))?;
        Ok(strongb::findim::algebra::parse_algebra(&text)?)
    } else {
        Ok(Algebra64::from_designator(designator)?)
    }
}

fn run_findim(params: &BTreeMap<String, String>, seed: u64) -> Result<Report, CliError> {
    let task = get_raw(params, "task").unwrap_or(DEFAULT_TASK).to_string();
    let algebra_designator = get_raw(params, "algebra").unwrap_or(DEFAULT_ALGEBRA).to_string();
    let degree = require_positive(get_usize(params, "degree")?.unwrap_or(DEFAULT_DEGREE), "degree")?;
    let samples =
        require_positive(get_usize(params, "samples")?.unwrap_or(DEFAULT_FINDIM_SAMPLES), "samples")?;
    let budget = require_positive(get_usize(params, "budget")?.unwrap_or(DEFAULT_BUDGET), "budget")?;
    let r = get_f64(params, "r")?.unwrap_or(constants::cstar_group_constant::<f64>().value);

    let algebra = load_algebra(&algebra_designator)?;
    let module = Bimodule64::over_self(&algebra)?;

    let mut report = Report::new("findim", seed);
    report.set_config("task", task.clone());
    report.set_config("algebra", algebra_designator);
    report.set_config("degree", degree.to_string());
    report.set_config("samples", samples.to_string());
    report.set_config("budget", budget.to_string());
    report.set_config("r", fmt_float(r));

    match task.as_str() {
        "cochain" => {
            let rep = cochain_check(&algebra, &module, degree, samples, seed)?;
            let tol = 1e-10;
            report.push(Entry::new(
                "coboundary_squared",
                tol,
                (0.0, rep.max_coboundary_sq),
                if rep.max_coboundary_sq <= tol { Status::Pass } else { Status::Fail },
                "max entry of delta(delta T) over random cochains",
            ));
            report.push(Entry::new(
                "lambda_intertwine",
                tol,
                (0.0, rep.max_lambda_defect),
                if rep.max_lambda_defect <= tol { Status::Pass } else { Status::Fail },
                "max deviation of the reshaped coboundary from its operator form",
            ));
            push_dim_entry(&mut report, rep.cocycle_dim);
        }
        "strongb" => {
            let est = strong_b_estimate(&algebra, samples, seed)?;
            let bound = constants::cstar_group_constant::<f64>().value;
            report.push(Entry::new(
                "strong_b_lower",
                bound,
                (est.r_hat, f64::INFINITY),
                if est.r_hat <= bound * (1.0 + 1e-9) { Status::Pass } else { Status::Fail },
                "certified defect/alpha lower bound vs group-algebra constant",
            ));
            report.push(Entry::new(
                "best_defect",
                est.best_defect,
                (est.best_defect, est.best_defect),
                Status::Pass,
                "defect norm of the best candidate form",
            ));
            report.push(Entry::new(
                "best_alpha",
                est.best_alpha,
                (est.best_alpha, est.best_alpha),
                Status::Pass,
                if est.alpha_exact {
                    "exact annihilation constant of the best candidate"
                } else {
                    "annihilation upper bound of the best candidate"
                },
            ));
            report.push(Entry::new(
                "candidates",
                est.candidates as f64,
                (est.candidates as f64, est.candidates as f64),
                Status::Pass,
                "candidate forms examined",
            ));
        }
        "hyperref" => {
            let rep = hyperref_ratio(&algebra, &module, degree, samples, seed)?;
            push_dim_entry(&mut report, rep.cocycle_dim);
            for (i, s) in rep.samples.iter().enumerate() {
                report.push(Entry::new(
                    format!("sample_{i}"),
                    rep.bound,
                    (s.dist_lower, s.dist_upper),
                    s.status,
                    "distance bracket: residual pairing below / coefficient search above",
                ));
            }
            push_ratio_summary(&mut report, rep.bound, rep.max_conclusive_ratio, rep.conclusive);
            push_rate_entry(&mut report, rep.inconclusive, rep.samples.len());
        }
        "cocycle-bound" => {
            let suite = cocycle_bound_suite(&algebra, &module, degree, samples, r, budget, seed)?;
            for (i, s) in suite.reports.iter().enumerate() {
                report.push(Entry::new(
                    format!("sample_{i}"),
                    s.bound,
                    (s.delta_lower, s.delta_lower),
                    if s.consistent { Status::Pass } else { Status::Inconclusive },
                    "coboundary norm vs 2^(n-1) r^(n+1) gamma-hat",
                ));
            }
            report.push(Entry::new(
                "consistent_samples",
                samples as f64,
                (suite.consistent as f64, suite.consistent as f64),
                if suite.consistent == samples { Status::Pass } else { Status::Inconclusive },
                "samples whose chain inequality held",
            ));
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown task `{other}`: expected cochain, strongb, hyperref, or cocycle-bound"
            )))
        }
    }
    Ok(report)
}

fn load_group(designator: &str) -> Result<CayleyTable, CliError> {
    if let Some(path) = designator.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read group file {path}: {e}")))?;
        Ok(parse_cayley(&text)?)
    } else if let Some(arg) = designator.strip_prefix("cyclic:") {
        let k = arg
            .parse::<usize>()
            .map_err(|_| CliError::Config(format!("bad size in group designator `{designator}`")))?;
        Ok(CayleyTable::cyclic(k)?)
    } else {
        Err(CliError::Config(format!(
            "unknown group designator `{designator}`: expected cyclic:K or file:PATH"
        )))
    }
}

fn run_cvp(params: &BTreeMap<String, String>, seed: u64) -> Result<Report, CliError> {
    let group_designator = get_raw(params, "group").unwrap_or(DEFAULT_GROUP).to_string();
    let p_choice = get_raw(params, "p").unwrap_or(DEFAULT_P).to_string();
    let samples =
        require_positive(get_usize(params, "samples")?.unwrap_or(DEFAULT_CVP_SAMPLES), "samples")?;

    let group = load_group(&group_designator)?;
    let p = match p_choice.as_str() {
        "1" => MatP::One,
        "2" => MatP::Two,
        "inf" => MatP::Inf,
        other => return Err(CliError::Config(format!("p must be 1, 2, or inf, got `{other}`"))),
    };

    let rep = commutant_hyperref_check::<f64>(&group, p, samples, seed)?;

    let mut report = Report::new("cvp", seed);
    report.set_config("group", group_designator);
    report.set_config("p", p_choice);
    report.set_config("samples", samples.to_string());

    report.push(Entry::new(
        "commutant_dim",
        rep.commutant_dim as f64,
        (rep.commutant_dim as f64, rep.commutant_dim as f64),
        Status::Pass,
        "dimension of the commutant of the regular representation",
    ));
    for (i, s) in rep.samples.iter().enumerate() {
        report.push(Entry::new(
            format!("sample_{i}"),
            rep.bound,
            (s.dist_lower, s.dist_upper),
            s.status,
            "distance bracket: residual pairing below / coefficient search above",
        ));
    }
    push_ratio_summary(&mut report, rep.bound, rep.max_conclusive_ratio, rep.conclusive);
    push_rate_entry(&mut report, rep.inconclusive, rep.samples.len());
    report.push(Entry::new(
        "intermediate_inequality",
        rep.alpha_hat,
        (0.0, rep.alpha_hat),
        if rep.intermediate_consistent { Status::Pass } else { Status::Inconclusive },
        format!("sandwich values vs alpha-hat on {} zero-product pairs", rep.intermediate_pairs),
    ));
    Ok(report)
}

fn push_dim_entry(report: &mut Report, dim: usize) {
    report.push(Entry::new(
        "cocycle_dim",
        dim as f64,
        (dim as f64, dim as f64),
        Status::Pass,
        "dimension of the cocycle space at this degree",
    ));
}

/// The ratio summary can never fail: upper/lower brackets above the bound
/// only show the estimates were too loose to conclude anything.
fn push_ratio_summary(report: &mut Report, bound: f64, max_ratio: f64, conclusive: usize) {
    report.push(Entry::new(
        "max_conclusive_ratio",
        bound,
        (0.0, max_ratio),
        if conclusive > 0 { Status::Pass } else { Status::Inconclusive },
        "largest conclusive dist_upper/dist_lower vs closed-form bound",
    ));
}

fn push_rate_entry(report: &mut Report, inconclusive: usize, total: usize) {
    let rate = if total == 0 { 0.0 } else { inconclusive as f64 / total as f64 };
    report.push(Entry::new(
        "inconclusive_rate",
        INCONCLUSIVE_RATE_CAP,
        (rate, rate),
        if rate < INCONCLUSIVE_RATE_CAP { Status::Pass } else { Status::Inconclusive },
        "share of samples without a usable distance bracket",
    ));
}
