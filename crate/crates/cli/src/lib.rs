//! Command-line front end: figure data as CSV/JSON and verification reports.

pub mod format;

use std::f64::consts::PI;
use std::path::PathBuf;

use circle_estimation::entropy::{
    circle_average_state, counterexample_entropies, sphere_average_state, von_neumann_entropy,
};
use circle_estimation::formulas::{fmax_nm, fmax_two_circle, locc_closed_form};
use circle_estimation::locc::{locc_average_fidelity_exact, locc_average_fidelity_mc};
use circle_estimation::povm::{
    average_fidelity, certify_bound, optimize_strategy, Alignment, Scenario,
};
use circle_estimation::{BOUND_MARGIN, CLOSED_FORM_TOL};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use format::{fmt_g, num, to_json, Csv};

pub const SPEC_VERSION: &str = "1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] circle_estimation::Error),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    Single,
    TwoCircle,
    Opposite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Parallel,
    Antiparallel,
}

impl From<KindArg> for Alignment {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Parallel => Alignment::Parallel,
            KindArg::Antiparallel => Alignment::Antiparallel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Optimal fidelity curves over θ for the given (n, m) pairs.
    Curves,
    /// Two-circle optimal fidelity over the (θ, θ0) domain.
    Surface,
    /// Entropies of circle-average states, plus sphere and counterexample values.
    Entropy,
    /// Certify the closed-form bound and check the named strategy attains it.
    Verify,
    /// Exact and simulated fidelity of the two-step local protocol.
    Locc,
    /// Numerically optimize a strategy and report its gap to the bound.
    Optimize,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "circle-est",
    version,
    about = "Optimal estimation of qubits on circles of the Bloch sphere"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Random seed for Monte Carlo, certification and optimization.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format for tabular commands.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Number of grid points per axis.
    #[arg(long, global = true, default_value_t = 181)]
    pub steps: usize,
    /// Colatitude θ of the circle.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Offset θ0 of the second circle.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub theta0: Option<f64>,
    /// Copy counts as n:m, comma separated.
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_pair)]
    pub pairs: Vec<(usize, usize)>,
    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: usize,
    /// Random strategies tried by `verify`.
    #[arg(long, global = true, default_value_t = 200)]
    pub trials: usize,
    /// Random restarts used by `optimize`.
    #[arg(long, global = true, default_value_t = 20)]
    pub restarts: usize,
    /// Read --theta and --theta0 in degrees.
    #[arg(long, global = true)]
    pub degrees: bool,
    /// Scenario for `verify` and `optimize`.
    #[arg(long, global = true, value_enum, default_value_t = ScenarioKind::Single)]
    pub scenario: ScenarioKind,
    /// Alignment of the two qubits for the opposite-circle scenario.
    #[arg(long, global = true, value_enum, default_value_t = KindArg::Parallel)]
    pub kind: KindArg,
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (n, m) = s
        .split_once(':')
        .ok_or_else(|| format!("expected n:m, got {s:?}"))?;
    let n: usize = n.trim().parse().map_err(|_| format!("bad n in {s:?}"))?;
    let m: usize = m.trim().parse().map_err(|_| format!("bad m in {s:?}"))?;
    if n + m == 0 {
        return Err(format!("n + m must be positive in {s:?}"));
    }
    Ok((n, m))
}

/// What a command produced: the main output, an optional side summary for
/// tabular commands, and whether all verification checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: String,
    pub summary: Option<String>,
    pub passed: bool,
}

impl Report {
    fn ok(body: String) -> Self {
        Self {
            body,
            summary: None,
            passed: true,
        }
    }
}

impl Cli {
    fn angle(&self, v: Option<f64>) -> Option<f64> {
        v.map(|x| if self.degrees { x.to_radians() } else { x })
    }

    fn theta_required(&self) -> Result<f64> {
        self.angle(self.theta)
            .ok_or_else(|| CliError::Usage(format!("{} needs --theta", self.command_name())))
    }

    fn command_name(&self) -> &'static str {
        match self.command {
            Command::Curves => "curves",
            Command::Surface => "surface",
            Command::Entropy => "entropy",
            Command::Verify => "verify",
            Command::Locc => "locc",
            Command::Optimize => "optimize",
        }
    }

    fn grid(&self) -> Result<Vec<f64>> {
        if self.steps < 2 {
            return Err(CliError::Usage("--steps must be at least 2".into()));
        }
        Ok((0..self.steps)
            .map(|i| PI * i as f64 / (self.steps - 1) as f64)
            .collect())
    }

    fn scenario(&self) -> Result<Scenario> {
        let theta = self.theta_required()?;
        Ok(match self.scenario {
            ScenarioKind::Single => {
                let &(n, m) = self.pairs.first().ok_or_else(|| {
                    CliError::Usage("single-circle scenario needs --pairs n:m".into())
                })?;
                if self.pairs.len() > 1 {
                    return Err(CliError::Usage(
                        "single-circle scenario takes one pair".into(),
                    ));
                }
                Scenario::single_circle(n, m, theta)?
            }
            ScenarioKind::TwoCircle => {
                Scenario::two_circle(theta, self.angle(self.theta0).unwrap_or(0.0))?
            }
            ScenarioKind::Opposite => Scenario::opposite(theta, self.kind.into())?,
        })
    }

    /// The resolved configuration echoed into JSON reports.
    fn config(&self) -> Value {
        json!({
            "command": self.command_name(),
            "seed": self.seed,
            "out": self.out,
            "format": self.format,
            "steps": self.steps,
            "theta": self.angle(self.theta).map(num),
            "theta0": self.angle(self.theta0).map(num),
            "pairs": self.pairs.iter().map(|(n, m)| format!("{n}:{m}")).collect::<Vec<_>>(),
            "samples": self.samples,
            "trials": self.trials,
            "restarts": self.restarts,
            "degrees": self.degrees,
            "scenario": self.scenario,
            "kind": self.kind,
        })
    }

    fn envelope(&self, mut body: Value) -> Value {
        if let Value::Object(map) = &mut body {
            map.insert("spec_version".into(), json!(SPEC_VERSION));
            map.insert("config".into(), self.config());
        }
        body
    }
}

fn scenario_json(sc: &Scenario) -> Value {
    match *sc {
        Scenario::SingleCircle { n, m, theta } => {
            json!({"type": "single_circle", "n": n, "m": m, "theta": num(theta)})
        }
        Scenario::TwoCircle { theta, theta0 } => {
            json!({"type": "two_circle", "theta": num(theta), "theta0": num(theta0)})
        }
        Scenario::OppositeCircles { theta, kind } => {
            json!({"type": "opposite_circles", "theta": num(theta), "kind": kind})
        }
    }
}

fn curves(cli: &Cli) -> Result<Report> {
    if cli.pairs.is_empty() {
        return Err(CliError::Usage("curves needs --pairs n:m[,n:m...]".into()));
    }
    let grid = cli.grid()?;
    let mut rows = Vec::new();
    for &(n, m) in &cli.pairs {
        for &theta in &grid {
            rows.push((theta, n, m, fmax_nm(n, m, theta)?.value()));
        }
    }
    Ok(Report::ok(match cli.format {
        OutputFormat::Csv => {
            let mut csv = Csv::new(&["theta", "n", "m", "fmax"]);
            for (theta, n, m, f) in rows {
                csv.row(&[fmt_g(theta), n.to_string(), m.to_string(), fmt_g(f)]);
            }
            csv.finish()
        }
        OutputFormat::Json => to_json(&cli.envelope(json!({
            "rows": rows
                .iter()
                .map(|&(t, n, m, f)| json!({"theta": num(t), "n": n, "m": m, "fmax": num(f)}))
                .collect::<Vec<_>>(),
        }))),
    }))
}

fn surface(cli: &Cli) -> Result<Report> {
    let grid = cli.grid()?;
    let last = cli.steps - 1;
    let mut rows = Vec::new();
    for (i, &theta) in grid.iter().enumerate() {
        for j in 0..cli.steps {
            let theta0 = -theta + PI * j as f64 / last as f64;
            let slice = if j == i {
                "parallel"
            } else if j == last - i {
                "antiparallel"
            } else {
                "none"
            };
            rows.push((
                theta,
                theta0,
                fmax_two_circle(theta, theta0)?.value(),
                slice,
            ));
        }
    }
    Ok(Report::ok(match cli.format {
        OutputFormat::Csv => {
            let mut csv = Csv::new(&["theta", "theta0", "fmax", "slice"]);
            for (t, t0, f, s) in rows {
                csv.row(&[fmt_g(t), fmt_g(t0), fmt_g(f), s.to_string()]);
            }
            csv.finish()
        }
        OutputFormat::Json => to_json(&cli.envelope(json!({
            "rows": rows
                .iter()
                .map(|&(t, t0, f, s)| json!({"theta": num(t), "theta0": num(t0), "fmax": num(f), "slice": s}))
                .collect::<Vec<_>>(),
        }))),
    }))
}

fn entropy(cli: &Cli) -> Result<Report> {
    let grid = cli.grid()?;
    let mut rows = Vec::new();
    for &theta in &grid {
        let s20 = von_neumann_entropy(&circle_average_state(2, 0, theta)?);
        let s11 = von_neumann_entropy(&circle_average_state(1, 1, theta)?);
        rows.push((theta, s20, s11));
    }
    let sp = von_neumann_entropy(&sphere_average_state(Alignment::Parallel)?);
    let sa = von_neumann_entropy(&sphere_average_state(Alignment::Antiparallel)?);
    let c = counterexample_entropies()?;
    let summary = json!({
        "sphere": {"parallel": num(sp), "antiparallel": num(sa)},
        "counterexample": {"s_e1": num(c.s_e1), "s_e2": num(c.s_e2), "s_e2_exceeds_s_e1": c.s_e2 > c.s_e1},
    });
    Ok(match cli.format {
        OutputFormat::Csv => {
            let mut csv = Csv::new(&["theta", "s_20", "s_11"]);
            for (t, a, b) in rows {
                csv.row(&[fmt_g(t), fmt_g(a), fmt_g(b)]);
            }
            Report {
                body: csv.finish(),
                summary: Some(to_json(&cli.envelope(summary))),
                passed: true,
            }
        }
        OutputFormat::Json => {
            let mut body = summary;
            body["rows"] = rows
                .iter()
                .map(|&(t, a, b)| json!({"theta": num(t), "s_20": num(a), "s_11": num(b)}))
                .collect();
            Report::ok(to_json(&cli.envelope(body)))
        }
    })
}

fn verify(cli: &Cli) -> Result<Report> {
    let sc = cli.scenario()?;
    let cert = certify_bound(&sc, cli.trials.max(1), cli.seed)?;
    let named = average_fidelity(&sc.named_optimal_strategy()?, &sc)?;
    let attained = (named - cert.bound).abs() <= CLOSED_FORM_TOL;
    let passed = cert.margin >= -BOUND_MARGIN && attained;
    let body = cli.envelope(json!({
        "scenario": scenario_json(&sc),
        "bound": num(cert.bound),
        "max_found": num(cert.max_found),
        "margin": num(cert.margin),
        "named_strategy_fidelity": num(named),
        "attained_by_named_strategy": attained,
        "passed": passed,
    }));
    Ok(Report {
        body: to_json(&body),
        summary: None,
        passed,
    })
}

fn locc(cli: &Cli) -> Result<Report> {
    let theta = cli.theta_required()?;
    let exact = locc_average_fidelity_exact(theta)?.value();
    let closed = locc_closed_form(theta)?.value();
    let mc = locc_average_fidelity_mc(theta, cli.samples.max(1), cli.seed)?;
    let passed = (exact - closed).abs() < 1e-12
        && (mc.mean - exact).abs() <= (4.0 * mc.std_error).max(1e-12);
    let body = cli.envelope(json!({
        "theta": num(theta),
        "exact": num(exact),
        "closed_form": num(closed),
        "mc_mean": num(mc.mean),
        "mc_se": num(mc.std_error),
        "passed": passed,
    }));
    Ok(Report {
        body: to_json(&body),
        summary: None,
        passed,
    })
}

fn optimize(cli: &Cli) -> Result<Report> {
    let sc = cli.scenario()?;
    let r = optimize_strategy(&sc, cli.restarts.max(1), cli.seed)?;
    let elements: Vec<Value> = r
        .strategy
        .povm()
        .elements()
        .iter()
        .zip(r.strategy.estimated_phis())
        .map(|(e, &phi)| {
            json!({
                "weight": num(e.weight),
                "coeffs": e.coeffs.iter().map(|c| json!([num(c.re), num(c.im)])).collect::<Vec<_>>(),
                "phi": num(phi),
            })
        })
        .collect();
    let body = cli.envelope(json!({
        "scenario": scenario_json(&sc),
        "strategy": {"dim": r.strategy.povm().dim(), "elements": elements},
        "fidelity": num(r.fidelity),
        "bound": num(r.bound),
        "gap": num(r.gap),
    }));
    Ok(Report::ok(to_json(&body)))
}

pub fn run(cli: &Cli) -> Result<Report> {
    match cli.command {
        Command::Curves => curves(cli),
        Command::Surface => surface(cli),
        Command::Entropy => entropy(cli),
        Command::Verify => verify(cli),
        Command::Locc => locc(cli),
        Command::Optimize => optimize(cli),
    }
}
