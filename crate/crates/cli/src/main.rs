use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use gatecost::campaign::SCHEDULE_RESIDUAL;
use gatecost::io::{
    chart_grid, emit_report, write_json, ChartAxis, GateReport, HamiltonianReport, Report,
};
use gatecost::protocol::synthesize_gate_with;
use gatecost::{
    cost_lemma_oracle, interaction_cost, kak_full, parse_gate, parse_hamiltonian,
    run_order_campaign, run_synthesis_campaign, run_theorem1_campaign, verify_schedule,
    CampaignConfig, CanonicalGateVector, Error, HamiltonianVector, Mat4, Relation,
    SimulationSchedule, Tolerance,
};

const EXIT_INPUT: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_UNDETERMINED: u8 = 3;

/// Interaction cost of two-qubit gates under a given coupling Hamiltonian.
#[derive(Parser)]
#[command(name = "gatecost", version)]
struct Cli {
    /// Scalar tolerance; matrix checks use ten times this value.
    #[arg(long, global = true, env = "GATECOST_TOL", default_value_t = 1e-9)]
    tol: f64,

    /// Write the report as JSON to this file, or to standard output with `-`.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical decomposition of a gate.
    CanonGate {
        #[arg(long)]
        gate: String,
    },
    /// Canonical vector of a coupling Hamiltonian.
    CanonHam {
        #[arg(long)]
        ham: String,
    },
    /// Least interaction time for a gate.
    Cost {
        #[arg(long)]
        gate: String,
        #[arg(long)]
        ham: String,
        /// Also run the exhaustive shift search with |n_j| up to this bound.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Compare two gates; pass `--gate V --gate U`.
    Order {
        #[arg(long, num_args = 1, required = true)]
        gate: Vec<String>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Optimal schedule realizing a gate.
    Protocol {
        #[arg(long)]
        gate: String,
        #[arg(long)]
        ham: String,
    },
    /// Check a schedule file against a gate.
    Verify {
        #[arg(long, value_name = "PATH")]
        schedule: PathBuf,
        #[arg(long)]
        gate: String,
        #[arg(long)]
        ham: String,
    },
    /// Cost landscape as CSV: over gates for `--ham`, over couplings for `--gate`.
    Chart {
        #[arg(long, conflicts_with = "gate", required_unless_present = "gate")]
        ham: Option<String>,
        #[arg(long)]
        gate: Option<String>,
        #[arg(long, default_value_t = 10)]
        resolution: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Reduced randomized campaigns.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

struct Session {
    tol: Tolerance,
    json: Option<PathBuf>,
}

impl Session {
    /// Summary to stdout unless JSON goes there instead.
    fn emit<T: Serialize>(&self, value: &T, summary: String) -> anyhow::Result<()> {
        match &self.json {
            Some(path) if path.as_os_str() == "-" => {}
            _ => print!("{summary}"),
        }
        if let Some(path) = &self.json {
            write_json(value, path).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }

    /// Like `emit`, with `extra` appended to the report's own summary.
    fn report(&self, report: Report<'_>, extra: &str) -> anyhow::Result<()> {
        let json = self.json.as_deref();
        let summary = emit_report(&report, json)
            .with_context(|| format!("writing {}", json.unwrap_or(Path::new("-")).display()))?;
        if !json.is_some_and(|p| p.as_os_str() == "-") {
            print!("{summary}{extra}");
        }
        Ok(())
    }

    fn gate(&self, spec: &str) -> anyhow::Result<Mat4> {
        parse_gate(spec, &self.tol).with_context(|| format!("gate {spec:?}"))
    }

    fn lambda(&self, spec: &str) -> anyhow::Result<CanonicalGateVector> {
        let u = self.gate(spec)?;
        gatecost::gate::canonical_vector_with(&u, &self.tol)
            .with_context(|| format!("decomposing {spec:?}"))
    }

    fn ham(&self, spec: &str) -> anyhow::Result<HamiltonianVector> {
        let parsed =
            parse_hamiltonian(spec, &self.tol).with_context(|| format!("Hamiltonian {spec:?}"))?;
        for w in &parsed.warnings {
            eprintln!("warning: {w}");
        }
        gatecost::hamiltonian::canonical_hamiltonian_with(&parsed.input, &self.tol)
            .with_context(|| format!("Hamiltonian {spec:?}"))
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        bail!("--tol must be positive, got {}", cli.tol);
    }
    let cx = Session {
        tol: Tolerance::from_scalar(cli.tol),
        json: cli.json,
    };
    match cli.command {
        Command::CanonGate { gate } => {
            let u = cx.gate(&gate)?;
            let f = gatecost::gate::kak_full_with(&u, &cx.tol)?;
            let report = GateReport::new(&f, f.reconstruct().max_abs_diff(&u));
            cx.report(Report::Gate(&report), "")?;
        }
        Command::CanonHam { ham } => {
            let report = HamiltonianReport { h: cx.ham(&ham)? };
            cx.report(Report::Hamiltonian(&report), "")?;
        }
        Command::Cost { gate, ham, bound } => {
            let lambda = cx.lambda(&gate)?;
            let h = cx.ham(&ham)?;
            let report = interaction_cost(&lambda, &h);
            let mut extra = String::new();
            if let Some(b) = bound {
                if b == 0 {
                    bail!("--bound must be at least 1");
                }
                let oracle = cost_lemma_oracle(&lambda, &h, b);
                extra = format!("exhaustive search over |n_j| ≤ {b}: {oracle}\n");
            }
            cx.report(Report::Cost(&report), &extra)?;
            if !report.feasible {
                return Ok(EXIT_INFEASIBLE);
            }
        }
        Command::Order { gate, sampling } => {
            let [v, u] = gate.as_slice() else {
                bail!(
                    "order needs exactly two --gate arguments (V then U), got {}",
                    gate.len()
                );
            };
            let (v, u) = (cx.lambda(v)?, cx.lambda(u)?);
            let verdict = gatecost::order::compare_general_with(
                &v,
                &u,
                sampling.samples,
                sampling.seed,
                cx.tol.scalar,
            );
            cx.report(Report::Order(&verdict), "")?;
            if verdict.relation == Relation::Undetermined {
                return Ok(EXIT_UNDETERMINED);
            }
        }
        Command::Protocol { gate, ham } => {
            let u = cx.gate(&gate)?;
            let h = cx.ham(&ham)?;
            let schedule = synthesize_gate_with(&u, &h, &cx.tol)?;
            let residual = verify_schedule(&schedule, &u, &h);
            cx.report(
                Report::Schedule(&schedule, &h),
                &format!("residual = {residual:.3e}\n"),
            )?;
        }
        Command::Verify {
            schedule,
            gate,
            ham,
        } => {
            let text = std::fs::read_to_string(&schedule)
                .with_context(|| format!("reading {}", schedule.display()))?;
            let parsed: SimulationSchedule = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("schedule JSON: {e}")))
                .with_context(|| format!("parsing {}", schedule.display()))?;
            let u = cx.gate(&gate)?;
            let h = cx.ham(&ham)?;
            let residual = verify_schedule(&parsed, &u, &h);
            let ok = residual < SCHEDULE_RESIDUAL;
            let report = VerifyReport { residual, ok };
            let verdict = if ok { "ok" } else { "MISMATCH" };
            cx.emit(&report, format!("residual = {residual:.3e} ({verdict})\n"))?;
            if !ok {
                return Ok(EXIT_INPUT);
            }
        }
        Command::Chart {
            ham,
            gate,
            resolution,
            out,
        } => {
            if resolution < 2 {
                bail!("--resolution must be at least 2");
            }
            let axis = match (ham, gate) {
                (Some(h), _) => ChartAxis::Coupling(cx.ham(&h)?),
                (None, Some(g)) => ChartAxis::Gate(cx.lambda(&g)?),
                (None, None) => unreachable!("clap requires one of --ham and --gate"),
            };
            let csv = chart_grid(&axis, resolution);
            write_csv(&csv, out.as_deref())?;
        }
        Command::Selftest { seed, bound } => return selftest(&cx, seed, bound),
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyReport {
    residual: f64,
    ok: bool,
}

fn write_csv(csv: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, csv).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn selftest(cx: &Session, seed: u64, bound: u32) -> anyhow::Result<u8> {
    let mut lines = String::new();
    let mut ok = true;

    let named = [
        ("cnot", CanonicalGateVector::CNOT),
        ("swap", CanonicalGateVector::SWAP),
        ("xy", CanonicalGateVector::XY),
    ];
    for (name, expected) in named {
        let u = parse_gate(name, &cx.tol)?;
        let got = kak_full(&u)?.core;
        let dev = got.distance(&expected);
        let pass = dev <= 1e-10;
        ok &= pass;
        lines.push_str(&format!(
            "{} named gate {name}: {got} (deviation {dev:.1e})\n",
            mark(pass)
        ));
    }
    let swap = interaction_cost(&CanonicalGateVector::SWAP, &HamiltonianVector::HEISENBERG).cost;
    let pass = (swap - std::f64::consts::FRAC_PI_4).abs() < 1e-12;
    ok &= pass;
    lines.push_str(&format!(
        "{} SWAP under exchange coupling costs {swap}\n",
        mark(pass)
    ));

    let config = CampaignConfig {
        seed,
        trials: 100,
        tol: cx.tol.scalar,
        shift_bound: bound,
    };
    let reports = vec![
        run_theorem1_campaign(&config)?,
        run_synthesis_campaign(&config)?,
        run_order_campaign(&config, 100)?,
    ];
    for r in &reports {
        ok &= r.passed();
        lines.push_str(&format!(
            "{} campaign {}: {} failures in {} trials, worst deviation {:.2e}, worst residual {:.2e}\n",
            mark(r.passed()),
            r.campaign,
            r.failures.len(),
            r.trials,
            r.worst_deviation,
            r.worst_residual
        ));
    }
    cx.emit(&reports, lines)?;
    Ok(if ok { 0 } else { EXIT_INPUT })
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "ok  "
    } else {
        "FAIL"
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Infeasible(_)) => EXIT_INFEASIBLE,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = !e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if informational { 0 } else { EXIT_INPUT });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
