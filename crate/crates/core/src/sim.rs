//! Time-series generators: the deterministic replicator flow (fixed-step RK4)
//! and a finite-population agent simulation of repeated random matching.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{build_payoff_matrix, replicator_field, GameSpec, Matrix5, SimplexPoint};
use crate::subspace::N_STRATEGIES;

/// Components below this are treated as a failed step rather than rounding.
pub const NEGATIVITY_TOL: f64 = 1e-9;

/// Sum drift tolerated on integrated points (RK4 preserves the sum up to rounding).
const ODE_SIMPLEX_TOL: f64 = 1e-7;

pub const DEFAULT_ODE_DT: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PolicyKind {
    /// Choice probabilities proportional to `exp(beta * U_i)`.
    #[default]
    Logit,
    /// Uniform with probability `1 / (1 + beta)`, else a best response.
    NoisyBestResponse,
}

/// How the payoff an agent banks each round is computed. Choices are driven
/// by the displayed counts either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PayoffMode {
    /// Payoff of the single match the agent was paired into.
    #[default]
    SingleMatch,
    /// Average payoff against all other agents.
    AllOthers,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AgentPolicy {
    pub kind: PolicyKind,
    pub beta: f64,
    /// Probability of repeating the previous choice.
    pub inertia: f64,
    pub population_size: usize,
    pub payoff_mode: PayoffMode,
}

impl Default for AgentPolicy {
    fn default() -> Self {
        Self {
            kind: PolicyKind::Logit,
            beta: 5.0,
            inertia: 0.3,
            population_size: 6,
            payoff_mode: PayoffMode::SingleMatch,
        }
    }
}

impl AgentPolicy {
    /// Every agent picks uniformly at random every round.
    pub fn uniform(population_size: usize) -> Self {
        Self {
            beta: 0.0,
            inertia: 0.0,
            population_size,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidArgument(format!("beta must be >= 0, got {}", self.beta)));
        }
        if !(0.0..=1.0).contains(&self.inertia) {
            return Err(Error::InvalidArgument(format!(
                "inertia must lie in [0, 1], got {}",
                self.inertia
            )));
        }
        if self.population_size < 2 || !self.population_size.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "population size must be even and >= 2, got {}",
                self.population_size
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMeta {
    pub a: f64,
    pub seed: Option<u64>,
    pub policy: Option<AgentPolicy>,
    /// Total banked payoff per agent (agent simulations only).
    pub agent_payoffs: Vec<f64>,
}

impl SeriesMeta {
    pub fn for_spec(spec: &GameSpec) -> Self {
        Self {
            a: spec.a,
            seed: None,
            policy: None,
            agent_payoffs: Vec::new(),
        }
    }
}

/// Points sampled at `t = i * dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    pub points: Vec<SimplexPoint>,
    pub dt: f64,
    /// Integer strategy counts behind each point, when the series is discrete.
    pub counts: Option<Vec<[u32; N_STRATEGIES]>>,
    pub meta: SeriesMeta,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn time(&self, index: usize) -> f64 {
        index as f64 * self.dt
    }

    pub fn arrays(&self) -> Vec<[f64; N_STRATEGIES]> {
        self.points.iter().map(|p| p.into_array()).collect()
    }

    /// Largest `|sum(x) - 1|` over the series.
    pub fn simplex_drift(&self) -> f64 {
        self.points
            .iter()
            .map(|p| (p.as_array().iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Per-strategy sample mean and (population) standard deviation.
    pub fn frequency_moments(&self) -> ([f64; N_STRATEGIES], [f64; N_STRATEGIES]) {
        let n = self.points.len() as f64;
        let mut mean = [0.0; N_STRATEGIES];
        for p in &self.points {
            for (m, x) in mean.iter_mut().zip(p.as_array()) {
                *m += x / n;
            }
        }
        let mut std = [0.0; N_STRATEGIES];
        for p in &self.points {
            for ((s, x), m) in std.iter_mut().zip(p.as_array()).zip(&mean) {
                *s += (x - m).powi(2) / n;
            }
        }
        (mean, std.map(f64::sqrt))
    }
}

fn rk4_step(payoff: &Matrix5, x: &[f64; N_STRATEGIES], dt: f64) -> [f64; N_STRATEGIES] {
    let add = |x: &[f64; N_STRATEGIES], k: &[f64; N_STRATEGIES], h: f64| {
        let mut out = *x;
        for (o, ki) in out.iter_mut().zip(k) {
            *o += h * ki;
        }
        out
    };
    let k1 = replicator_field(payoff, x);
    let k2 = replicator_field(payoff, &add(x, &k1, dt / 2.0));
    let k3 = replicator_field(payoff, &add(x, &k2, dt / 2.0));
    let k4 = replicator_field(payoff, &add(x, &k3, dt));
    let mut out = *x;
    for i in 0..N_STRATEGIES {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Fixed-step RK4 of the replicator flow from `x0`, sampled at every step up
/// to `t_end`. No renormalization is applied; see [`TimeSeries::simplex_drift`].
pub fn integrate_replicator(spec: &GameSpec, x0: &SimplexPoint, t_end: f64, dt: f64) -> Result<TimeSeries> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("dt must be > 0, got {dt}")));
    }
    if !(t_end >= dt && t_end.is_finite()) {
        return Err(Error::InvalidArgument(format!("t_end must be >= dt, got {t_end}")));
    }
    let steps = (t_end / dt).round() as usize;
    let payoff = build_payoff_matrix(spec);
    let mut points = Vec::with_capacity(steps + 1);
    points.push(*x0);
    let mut x = x0.into_array();
    for step in 1..=steps {
        x = rk4_step(&payoff, &x, dt);
        if let Some(i) = x.iter().position(|v| *v < -NEGATIVITY_TOL) {
            return Err(Error::StepRejected {
                t: step as f64 * dt,
                index: i + 1,
                value: x[i],
            });
        }
        points.push(SimplexPoint::with_tolerance(x, ODE_SIMPLEX_TOL)?);
    }
    Ok(TimeSeries {
        points,
        dt,
        counts: None,
        meta: SeriesMeta::for_spec(spec),
    })
}

fn tally(choices: &[usize]) -> [u32; N_STRATEGIES] {
    let mut c = [0u32; N_STRATEGIES];
    for &s in choices {
        c[s] += 1;
    }
    c
}

/// Expected payoff of each strategy against the other agents' displayed choices.
fn expected_payoffs(payoff: &Matrix5, others: &[u32; N_STRATEGIES], n_others: f64) -> [f64; N_STRATEGIES] {
    let mut u = [0.0; N_STRATEGIES];
    for (ui, row) in u.iter_mut().zip(payoff) {
        *ui = row.iter().zip(others).map(|(a, c)| a * *c as f64).sum::<f64>() / n_others;
    }
    u
}

fn choose<R: Rng>(policy: &AgentPolicy, u: &[f64; N_STRATEGIES], rng: &mut R) -> usize {
    match policy.kind {
        PolicyKind::Logit => {
            let max = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let w = u.map(|v| (policy.beta * (v - max)).exp());
            let total: f64 = w.iter().sum();
            let mut r = rng.random::<f64>() * total;
            for (i, wi) in w.iter().enumerate() {
                if r < *wi {
                    return i;
                }
                r -= wi;
            }
            N_STRATEGIES - 1
        }
        PolicyKind::NoisyBestResponse => {
            if rng.random::<f64>() < 1.0 / (1.0 + policy.beta) {
                return rng.random_range(0..N_STRATEGIES);
            }
            let max = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let best: Vec<usize> = (0..N_STRATEGIES).filter(|&i| u[i] == max).collect();
            best[rng.random_range(0..best.len())]
        }
    }
}

/// One session of `rounds` rounds. Round 0 choices are uniform; afterwards
/// each agent, with probability `1 - inertia`, responds to the previous
/// round's choices of the other agents and otherwise repeats.
pub fn simulate_session(spec: &GameSpec, policy: &AgentPolicy, rounds: usize, seed: u64) -> Result<TimeSeries> {
    policy.validate()?;
    if rounds == 0 {
        return Err(Error::InvalidArgument("rounds must be >= 1".into()));
    }
    let n = policy.population_size;
    let payoff = build_payoff_matrix(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut choices: Vec<usize> = (0..n).map(|_| rng.random_range(0..N_STRATEGIES)).collect();
    let mut banked = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    let mut counts = Vec::with_capacity(rounds);
    let mut points = Vec::with_capacity(rounds);

    for round in 0..rounds {
        if round > 0 {
            let shown = tally(&choices);
            let prev = choices.clone();
            for (agent, choice) in choices.iter_mut().enumerate() {
                if rng.random::<f64>() < policy.inertia {
                    continue;
                }
                let mut others = shown;
                others[prev[agent]] -= 1;
                let u = expected_payoffs(&payoff, &others, (n - 1) as f64);
                *choice = choose(policy, &u, &mut rng);
            }
        }
        let c = tally(&choices);
        order.shuffle(&mut rng);
        match policy.payoff_mode {
            PayoffMode::SingleMatch => {
                for pair in order.chunks_exact(2) {
                    let (i, j) = (pair[0], pair[1]);
                    banked[i] += payoff[choices[i]][choices[j]];
                    banked[j] += payoff[choices[j]][choices[i]];
                }
            }
            PayoffMode::AllOthers => {
                for (agent, total) in banked.iter_mut().enumerate() {
                    let mut others = c;
                    others[choices[agent]] -= 1;
                    *total += expected_payoffs(&payoff, &others, (n - 1) as f64)[choices[agent]];
                }
            }
        }
        points.push(SimplexPoint::from_counts(&c)?);
        counts.push(c);
    }

    Ok(TimeSeries {
        points,
        dt: 1.0,
        counts: Some(counts),
        meta: SeriesMeta {
            a: spec.a,
            seed: Some(seed),
            policy: Some(*policy),
            agent_payoffs: banked,
        },
    })
}

/// SplitMix64 finalizer; spreads consecutive session indices across seeds.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add((index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent sessions with seeds `derive_seed(seed, i)`, run in parallel.
/// Output is identical to running them serially.
pub fn simulate_treatment(
    spec: &GameSpec,
    policy: &AgentPolicy,
    sessions: usize,
    rounds: usize,
    seed: u64,
) -> Result<Vec<TimeSeries>> {
    if sessions == 0 {
        return Err(Error::InvalidArgument("sessions must be >= 1".into()));
    }
    policy.validate()?;
    (0..sessions as u64)
        .into_par_iter()
        .map(|i| simulate_session(spec, policy, rounds, derive_seed(seed, i)))
        .collect()
}
