//! The voluntary contribution game.
//!
//! Each agent picks a contribution `g_i` (in units of public good, costing
//! `RPT` private units each) to maximize `U_i(G, m_i - RPT * g_i)` taking the
//! others' contributions as given. The module computes best responses, Nash
//! equilibria, Samuelson-efficient and Pareto-efficient allocations, and the
//! utility lost to free riding.

use serde::{Deserialize, Serialize};

use crate::economy::{check_len, samuelson_residual, Agent, Allocation, Technology};
use crate::error::{ensure_finite, Error, Result};

/// Per-agent contributions with the derived public total, private
/// consumptions and utilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContributionProfile {
    pub contributions: Vec<f64>,
    pub public_total: f64,
    pub private_consumption: Vec<f64>,
    pub utilities: Vec<f64>,
}

impl ContributionProfile {
    pub fn new(agents: &[Agent], contributions: Vec<f64>, tech: &Technology) -> Result<Self> {
        check_len(agents.len(), contributions.len())?;
        let rpt = tech.rpt();
        let mut private_consumption = Vec::with_capacity(agents.len());
        for (i, (agent, &g)) in agents.iter().zip(&contributions).enumerate() {
            ensure_finite("contribution", g)?;
            let y = agent.endowment() - rpt * g;
            if g < 0.0 || y < 0.0 {
                return Err(Error::Domain(format!(
                    "contribution {g} of agent {i} is outside [0, {}]",
                    agent.endowment() / rpt
                )));
            }
            private_consumption.push(y);
        }
        let public_total: f64 = contributions.iter().sum();
        let utilities = agents
            .iter()
            .zip(&private_consumption)
            .map(|(a, &y)| a.utility(public_total, y))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            contributions,
            public_total,
            private_consumption,
            utilities,
        })
    }

    pub fn len(&self) -> usize {
        self.contributions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contributions.is_empty()
    }

    pub fn allocation(&self) -> Allocation {
        Allocation {
            public_total: self.public_total,
            private_consumption: self.private_consumption.clone(),
        }
    }
}

/// Nash and efficient outcomes side by side for a symmetric economy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub nash: ContributionProfile,
    pub efficient: ContributionProfile,
    pub utility_loss_per_agent: f64,
    pub utility_loss_percent: f64,
    pub samuelson_gap_at_nash: f64,
}

/// Optimal contribution given the others' total, `max(0, a*m/RPT - (1-a)*others)`.
pub fn best_response(agent: &Agent, others_total: f64, tech: &Technology) -> Result<f64> {
    ensure_finite("others_total", others_total)?;
    if others_total < 0.0 {
        return Err(Error::Domain(format!(
            "others' total must be non-negative, got {others_total}"
        )));
    }
    Ok(unclamped_response(agent, others_total, tech.rpt()).max(0.0))
}

fn unclamped_response(agent: &Agent, others_total: f64, rpt: f64) -> f64 {
    agent.public_weight() * agent.endowment() / rpt - agent.private_weight() * others_total
}

/// Per-agent contribution in the symmetric equilibrium of `n` copies of `agent`.
pub fn symmetric_nash_closed_form(n: usize, agent: &Agent, tech: &Technology) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("need at least one agent".into()));
    }
    // a*m / (1 + (1-a)(n-1)) rewritten as m / (1 + n*k)
    Ok(agent.endowment() / (tech.rpt() * (1.0 + n as f64 * substitution_ratio(agent))))
}

/// `(1 - a) / a`, evaluated as `1/a - 1`, which is exact for the common
/// weights 1/2, 1/3, 1/4 and so on.
fn substitution_ratio(agent: &Agent) -> f64 {
    1.0 / agent.public_weight() - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NashOptions {
    /// Stop once no contribution moves by more than this in a sweep.
    pub tolerance: f64,
    pub max_sweeps: usize,
    /// Weight on the new best response in each update; 1 is a plain best response.
    pub relaxation: f64,
    /// Use the closed form when all agents are identical.
    pub symmetric_fast_path: bool,
}

impl Default for NashOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_sweeps: 100_000,
            relaxation: 1.0,
            symmetric_fast_path: true,
        }
    }
}

pub fn nash_equilibrium(agents: &[Agent], tech: &Technology) -> Result<ContributionProfile> {
    nash_equilibrium_with(agents, tech, &NashOptions::default())
}

/// Nash equilibrium by sequential best response.
///
/// The game has the exact potential `ln G + sum_i ((1-a_i)/a_i) ln y_i`,
/// strictly concave on the strategy box, so sequential best responses
/// converge to its unique maximizer. Once converged the support is fixed and
/// the equilibrium is recomputed exactly from the linear first-order
/// conditions of the contributing agents.
pub fn nash_equilibrium_with(
    agents: &[Agent],
    tech: &Technology,
    opts: &NashOptions,
) -> Result<ContributionProfile> {
    if agents.is_empty() {
        return Err(Error::Domain("need at least one agent".into()));
    }
    if !(opts.relaxation > 0.0 && opts.relaxation <= 1.0) {
        return Err(Error::Domain(format!(
            "relaxation must lie in (0, 1], got {}",
            opts.relaxation
        )));
    }
    if opts.symmetric_fast_path && agents.iter().all(|a| a == &agents[0]) {
        let g = symmetric_nash_closed_form(agents.len(), &agents[0], tech)?;
        return ContributionProfile::new(agents, vec![g; agents.len()], tech);
    }

    let rpt = tech.rpt();
    let w = opts.relaxation;
    let mut g = vec![0.0; agents.len()];
    let mut total: f64 = 0.0;
    let mut last_change = f64::INFINITY;
    for _ in 0..opts.max_sweeps {
        let mut change: f64 = 0.0;
        for (i, agent) in agents.iter().enumerate() {
            let others = (total - g[i]).max(0.0);
            let br = unclamped_response(agent, others, rpt).max(0.0);
            let next = (1.0 - w) * g[i] + w * br;
            change = change.max((next - g[i]).abs());
            total += next - g[i];
            g[i] = next;
        }
        // refresh the running sum to stop drift
        total = g.iter().sum();
        last_change = change;
        if change < opts.tolerance {
            if let Some(exact) = active_set_solve(agents, &g, rpt, opts.tolerance) {
                g = exact;
            }
            return ContributionProfile::new(agents, g, tech);
        }
    }
    Err(Error::Convergence {
        iterations: opts.max_sweeps,
        last_change,
        last: g,
    })
}

/// Exact equilibrium on the support of `approx` (entries above `cutoff`). Contributors satisfy
/// `g_i = m_i/RPT - ((1-a_i)/a_i) G`; returns `None` if the resulting profile
/// fails the complementarity conditions.
fn active_set_solve(agents: &[Agent], approx: &[f64], rpt: f64, cutoff: f64) -> Option<Vec<f64>> {
    let support: Vec<bool> = approx.iter().map(|&g| g > cutoff).collect();
    let (mut num, mut den) = (0.0, 1.0);
    for (agent, &active) in agents.iter().zip(&support) {
        if active {
            num += agent.endowment() / rpt;
            den += substitution_ratio(agent);
        }
    }
    let total = num / den;
    let mut out = Vec::with_capacity(agents.len());
    for (agent, &active) in agents.iter().zip(&support) {
        let interior = agent.endowment() / rpt - substitution_ratio(agent) * total;
        if active {
            if interior < 0.0 {
                return None;
            }
            out.push(interior);
        } else {
            if interior > 1e-12 * (1.0 + total) {
                return None;
            }
            out.push(0.0);
        }
    }
    Some(out)
}

/// Symmetric efficient allocation for `n` copies of `agent`: each contributes
/// `a*m/RPT`, independent of `n`.
pub fn efficient_symmetric(n: usize, agent: &Agent, tech: &Technology) -> Result<ContributionProfile> {
    if n == 0 {
        return Err(Error::Domain("need at least one agent".into()));
    }
    let g = agent.public_weight() * agent.endowment() / tech.rpt();
    ContributionProfile::new(&vec![*agent; n], vec![g; n], tech)
}

/// Maximize the first agent's utility while every other agent `i` keeps at
/// least `reserved[i-1]`, subject to the economy-wide resource constraint
/// `sum_i y_i + RPT * G = sum_i m_i`.
///
/// For a fixed public level the cheapest way to honor a reservation is
/// `y_i = (u_i / G^a_i)^(1/(1-a_i))`; what remains goes to the first agent.
/// Both the leftover and the log of the first agent's utility are concave in
/// `G`, so nested bisection on their derivatives finds the optimum.
pub fn pareto_efficient(agents: &[Agent], tech: &Technology, reserved: &[f64]) -> Result<Allocation> {
    if agents.is_empty() {
        return Err(Error::Domain("need at least one agent".into()));
    }
    check_len(agents.len() - 1, reserved.len())?;
    for &u in reserved {
        ensure_finite("reserved utility", u)?;
    }
    let rpt = tech.rpt();
    let resources: f64 = agents.iter().map(Agent::endowment).sum();
    let upper = resources / rpt;
    let others: Vec<(f64, f64)> = agents[1..]
        .iter()
        .zip(reserved)
        .filter(|(_, &u)| u > 0.0)
        .map(|(a, &u)| {
            let k = a.public_weight() / a.private_weight();
            (u.powf(1.0 / a.private_weight()), k)
        })
        .collect();
    // private good the reserved agents need at public level x, and its slope
    let need = |x: f64| -> f64 { others.iter().map(|&(c, k)| c * x.powf(-k)).sum() };
    let need_slope = |x: f64| -> f64 { others.iter().map(|&(c, k)| -c * k * x.powf(-k - 1.0)).sum() };
    let leftover = |x: f64| resources - rpt * x - need(x);
    let leftover_slope = |x: f64| -rpt - need_slope(x);

    let first = &agents[0];
    let (lo, hi) = if others.is_empty() {
        (0.0, upper)
    } else {
        // peak of the concave leftover
        let peak = bisect_decreasing(leftover_slope, 0.0, upper);
        let best = leftover(peak);
        let scale = resources.max(1.0);
        if best < -1e-12 * scale {
            return Err(Error::Infeasible(format!(
                "reservations need {:.6} more units of private good than exist",
                -best
            )));
        }
        if best <= 1e-12 * scale {
            return finish(agents, reserved, peak, 0.0);
        }
        let mut below = peak;
        while leftover(below) > 0.0 {
            below *= 0.5;
        }
        let lo = bisect_decreasing(|x| -leftover(x), below, peak);
        let hi = bisect_decreasing(leftover, peak, upper);
        (lo, hi)
    };
    let a = first.public_weight();
    let log_slope = |x: f64| a / x + (1.0 - a) * leftover_slope(x) / leftover(x);
    let x = bisect_decreasing(log_slope, lo, hi);
    let y0 = leftover(x).max(0.0);
    finish(agents, reserved, x, y0)
}

fn finish(
    agents: &[Agent],
    reserved: &[f64],
    public_total: f64,
    first_private: f64,
) -> Result<Allocation> {
    let mut private = Vec::with_capacity(agents.len());
    private.push(first_private);
    for (agent, &u) in agents[1..].iter().zip(reserved) {
        let y = if u > 0.0 {
            (u / public_total.powf(agent.public_weight())).powf(1.0 / agent.private_weight())
        } else {
            0.0
        };
        private.push(y);
    }
    Ok(Allocation {
        public_total,
        private_consumption: private,
    })
}

/// Root of a decreasing function on the open interval `(lo, hi)` by bisection
/// to machine precision. Returns an endpoint if the sign never changes.
fn bisect_decreasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v.is_nan() {
            break;
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Nash versus efficient provision for a symmetric economy.
pub fn inefficiency_report(agents: &[Agent], tech: &Technology) -> Result<EquilibriumReport> {
    if agents.is_empty() {
        return Err(Error::Domain("need at least one agent".into()));
    }
    if agents.iter().any(|a| a != &agents[0]) {
        return Err(Error::NotSymmetric);
    }
    let nash = nash_equilibrium(agents, tech)?;
    let efficient = efficient_symmetric(agents.len(), &agents[0], tech)?;
    let (u_nash, u_eff) = (nash.utilities[0], efficient.utilities[0]);
    let loss = u_eff - u_nash;
    let samuelson_gap_at_nash = samuelson_residual(agents, &nash.allocation(), tech)?;
    Ok(EquilibriumReport {
        utility_loss_per_agent: loss,
        utility_loss_percent: 100.0 * loss / u_eff,
        samuelson_gap_at_nash,
        nash,
        efficient,
    })
}
