//! Lindahl pricing: each agent pays a personalized share of the public good's
//! cost, and the shares are set so that everyone demands the same quantity.

use serde::{Deserialize, Serialize};

use crate::economy::{Agent, Technology};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LindahlSolution {
    /// Cost shares, summing to one.
    pub shares: Vec<f64>,
    /// Common public-good level.
    pub quantity: f64,
    /// Quantity each agent demands at its own share.
    pub per_agent_demand: Vec<f64>,
    /// Public good each agent pays for, `share * quantity`. Distinct from the
    /// demanded level: with two equal shares each pays for half of it.
    pub contributions: Vec<f64>,
}

/// Public-good level that maximizes `U(x, m - share*RPT*x)`; for Cobb-Douglas
/// this is `a*m / (share*RPT)`.
pub fn lindahl_demand(agent: &Agent, share: f64, tech: &Technology) -> Result<f64> {
    if !(share > 0.0 && share <= 1.0) {
        return Err(Error::Domain(format!("share must lie in (0, 1], got {share}")));
    }
    Ok(agent.public_weight() * agent.endowment() / (share * tech.rpt()))
}

/// Closed-form Lindahl equilibrium: `x* = sum_i a_i*m_i / RPT` and
/// `share_i = a_i*m_i / (x* * RPT)`. Demands are recomputed at the returned
/// shares and checked against `x*`.
pub fn lindahl_equilibrium(agents: &[Agent], tech: &Technology) -> Result<LindahlSolution> {
    if agents.is_empty() {
        return Err(Error::Domain("need at least one agent".into()));
    }
    let rpt = tech.rpt();
    let spend: Vec<f64> = agents
        .iter()
        .map(|a| a.public_weight() * a.endowment())
        .collect();
    let total: f64 = spend.iter().sum();
    let quantity = total / rpt;
    let shares: Vec<f64> = spend.iter().map(|s| s / total).collect();
    let per_agent_demand = agents
        .iter()
        .zip(&shares)
        .map(|(a, &s)| lindahl_demand(a, s, tech))
        .collect::<Result<Vec<_>>>()?;
    for (i, d) in per_agent_demand.iter().enumerate() {
        if (d - quantity).abs() > 1e-8 * quantity.max(1.0) {
            return Err(Error::Infeasible(format!(
                "agent {i} demands {d} at its share, not the common level {quantity}"
            )));
        }
    }
    let contributions = shares.iter().map(|s| s * quantity).collect();
    Ok(LindahlSolution {
        shares,
        quantity,
        per_agent_demand,
        contributions,
    })
}
