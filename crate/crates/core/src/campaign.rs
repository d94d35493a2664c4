//! Randomized campaigns that check the closed forms against independent
//! oracles. Each trial draws from its own RNG stream, so reports depend only
//! on the seed and not on thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cost::{cost_lemma_oracle, interaction_cost};
use crate::error::{Error, Result};
use crate::gate::{exp_canonical, kak_full_with, CanonicalGateVector};
use crate::hamiltonian::{natural_interaction, HamiltonianVector};
use crate::linalg::Mat4;
use crate::order::{compare_in_region_with, Relation};
use crate::protocol::{synthesize_gate_with, verify_schedule};
use crate::random::{
    random_canonical_stratified, random_hamiltonian, random_hamiltonian_unit, random_in_region,
    random_su2, random_unitary4,
};
use crate::tolerance::Tolerance;

/// Residual bound for a synthesized schedule against its target gate.
pub const SCHEDULE_RESIDUAL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub shift_bound: u32,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 1,
            trials: 1000,
            tol: 1e-9,
            shift_bound: 2,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.shift_bound == 0 {
            return Err(Error::InvalidConfig(
                "shift bound must be at least 1".into(),
            ));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }

    fn rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

/// One failed trial, with inputs in JSON so it can be replayed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignFailure {
    pub trial: usize,
    pub input: Value,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignReport {
    pub campaign: String,
    pub config: CampaignConfig,
    pub trials: usize,
    pub failures: Vec<CampaignFailure>,
    /// Largest deviation of a scalar compared against its oracle.
    pub worst_deviation: f64,
    /// Largest operator residual (schedule campaigns only).
    pub worst_residual: f64,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Outcome {
    deviation: f64,
    residual: f64,
    failure: Option<(Value, String)>,
}

fn collect(
    name: &str,
    config: &CampaignConfig,
    trials: usize,
    outcomes: Vec<Outcome>,
) -> CampaignReport {
    let mut report = CampaignReport {
        campaign: name.to_string(),
        config: *config,
        trials,
        failures: Vec::new(),
        worst_deviation: 0.0,
        worst_residual: 0.0,
    };
    for (trial, o) in outcomes.into_iter().enumerate() {
        report.worst_deviation = report.worst_deviation.max(o.deviation);
        report.worst_residual = report.worst_residual.max(o.residual);
        if let Some((input, detail)) = o.failure {
            report.failures.push(CampaignFailure {
                trial,
                input,
                detail,
            });
        }
    }
    report
}

fn gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}

/// Two-branch cost against the exhaustive shift search.
pub fn run_theorem1_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = config.rng(trial);
            let lambda = random_canonical_stratified(&mut rng, 0.25);
            let h = if trial % 10 == 9 {
                HamiltonianVector::HEISENBERG.scaled(rng.random_range(0.1..3.0))
            } else {
                random_hamiltonian(&mut rng)
            };
            let fast = interaction_cost(&lambda, &h).cost;
            let oracle = cost_lemma_oracle(&lambda, &h, config.shift_bound);
            let deviation = gap(fast, oracle);
            let failure = (!(deviation <= config.tol * oracle.max(1.0))).then(|| {
                (
                    json!({ "lambda": lambda, "h": h }),
                    format!("two-branch cost {fast} vs exhaustive {oracle}"),
                )
            });
            Outcome {
                deviation,
                residual: 0.0,
                failure,
            }
        })
        .collect();
    Ok(collect("two-branch-cost", config, config.trials, outcomes))
}

fn dressed<R: Rng>(rng: &mut R, lambda: &CanonicalGateVector) -> Mat4 {
    let left = random_su2(rng).kron(&random_su2(rng));
    let right = random_su2(rng).kron(&random_su2(rng));
    left * exp_canonical(lambda.as_array()) * right
}

/// Synthesized schedules multiply out to the target in exactly the cost time.
pub fn run_synthesis_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let tol = Tolerance::from_scalar(config.tol);
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = config.rng(trial);
            let (u, h) = match trial % 10 {
                // Haar-random gates exercise the full decomposition path.
                0 | 5 => (random_unitary4(&mut rng), random_hamiltonian(&mut rng)),
                // The gate's own natural interaction: no simulation overhead.
                3 => {
                    let lambda = random_canonical_stratified(&mut rng, 0.25);
                    let (h, _) = natural_interaction(&lambda);
                    (dressed(&mut rng, &lambda), h)
                }
                7 => (
                    dressed(&mut rng, &CanonicalGateVector::IDENTITY),
                    random_hamiltonian(&mut rng),
                ),
                _ => {
                    let lambda = random_canonical_stratified(&mut rng, 0.25);
                    (dressed(&mut rng, &lambda), random_hamiltonian(&mut rng))
                }
            };
            let input = || json!({ "u": u, "h": h });
            let fail = |e: Error| Outcome {
                deviation: f64::INFINITY,
                residual: f64::INFINITY,
                failure: Some((input(), e.to_string())),
            };
            let cost = match kak_full_with(&u, &tol) {
                Ok(f) => interaction_cost(&f.core, &h).cost,
                Err(e) => return fail(e),
            };
            let schedule = match synthesize_gate_with(&u, &h, &tol) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let residual = verify_schedule(&schedule, &u, &h);
            let deviation = gap(schedule.total_time, cost)
                .max(gap(schedule.duration_sum(), schedule.total_time));
            let negative = schedule.segments.iter().any(|s| !(s.duration >= 0.0));
            let failure = if !(residual < SCHEDULE_RESIDUAL) {
                Some(format!("schedule residual {residual:.3e}"))
            } else if !(deviation <= config.tol * cost.max(1.0)) {
                Some(format!(
                    "total time {} vs cost {cost} (durations sum to {})",
                    schedule.total_time,
                    schedule.duration_sum()
                ))
            } else if negative {
                Some("negative segment duration".to_string())
            } else {
                None
            };
            Outcome {
                deviation,
                residual,
                failure: failure.map(|d| (input(), d)),
            }
        })
        .collect();
    Ok(collect("synthesis", config, config.trials, outcomes))
}

/// In-region order: `pairs` random gate pairs, each probed with
/// `config.trials` random couplings.
pub fn run_order_campaign(config: &CampaignConfig, pairs: usize) -> Result<CampaignReport> {
    config.validate()?;
    let outcomes = (0..pairs)
        .into_par_iter()
        .map(|pair| {
            let mut rng = config.rng(pair);
            let u = random_in_region(&mut rng);
            // Every third pair is a scaled-down copy, which is always below.
            let v = if pair % 3 == 2 {
                CanonicalGateVector::folded(u.scaled(rng.random_range(0.0..1.0)))
            } else {
                random_in_region(&mut rng)
            };
            let input = || json!({ "v": v, "u": u });
            let verdict = match compare_in_region_with(&v, &u, config.tol) {
                Ok(r) => r,
                Err(e) => {
                    return Outcome {
                        deviation: f64::INFINITY,
                        residual: 0.0,
                        failure: Some((input(), e.to_string())),
                    }
                }
            };
            let forward = matches!(verdict.relation, Relation::LessOrEqual | Relation::Equal);
            let backward = matches!(verdict.relation, Relation::GreaterOrEqual | Relation::Equal);

            // The claimed order must survive every probe.
            let mut deviation: f64 = 0.0;
            let mut failure = None;
            for _ in 0..config.trials {
                let h = random_hamiltonian_unit(&mut rng);
                let cv = interaction_cost(&v, &h).cost;
                let cu = interaction_cost(&u, &h).cost;
                let slack = config.tol * cv.max(cu).max(1.0);
                if forward {
                    deviation = deviation.max(cv - cu);
                    if cv > cu + slack && failure.is_none() {
                        failure = Some(format!(
                            "V ≤ U claimed but C(V) = {cv} > C(U) = {cu} at {h}"
                        ));
                    }
                }
                if backward {
                    deviation = deviation.max(cu - cv);
                    if cu > cv + slack && failure.is_none() {
                        failure = Some(format!(
                            "U ≤ V claimed but C(U) = {cu} > C(V) = {cv} at {h}"
                        ));
                    }
                }
            }
            // Witnesses come in order: against V ≤ U (coupling λ_U), then
            // against U ≤ V (coupling λ_V).
            let mut witnesses = verdict.witnesses.iter();
            for (refuted, coupling, against_forward) in [(!forward, u, true), (!backward, v, false)]
            {
                if !refuted {
                    continue;
                }
                let shown = witnesses.next().is_some_and(|w| {
                    w.h.as_array() == coupling.as_array()
                        && if against_forward {
                            w.refutes_v_le_u(0.0)
                        } else {
                            w.refutes_u_le_v(0.0)
                        }
                });
                if !shown && failure.is_none() {
                    failure = Some(format!(
                        "no cost reversal under the witness coupling {coupling}"
                    ));
                }
            }
            Outcome {
                deviation,
                residual: 0.0,
                failure: failure.map(|d| (input(), d)),
            }
        })
        .collect();
    Ok(collect("order", config, pairs, outcomes))
}
