//! Preferences, linear technology, and the efficiency diagnostics built on them.
//!
//! Every agent has Cobb-Douglas preferences `U = x^a * y^(1-a)` over the
//! public-good total `x` and own private consumption `y`. Production is
//! linear, so the rate of product transformation (the private-good cost of
//! one unit of public good) is a constant.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// A participant: an endowment and a Cobb-Douglas weight on the public good.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Agent {
    endowment: f64,
    public_weight: f64,
}

impl Agent {
    pub fn new(endowment: f64, public_weight: f64) -> Result<Self> {
        if !(endowment.is_finite() && endowment > 0.0) {
            return Err(Error::Domain(format!(
                "endowment must be positive, got {endowment}"
            )));
        }
        if !(public_weight > 0.0 && public_weight < 1.0) {
            return Err(Error::Domain(format!(
                "public_weight must lie in (0, 1), got {public_weight}"
            )));
        }
        Ok(Self {
            endowment,
            public_weight,
        })
    }

    pub fn endowment(&self) -> f64 {
        self.endowment
    }

    pub fn public_weight(&self) -> f64 {
        self.public_weight
    }

    pub fn private_weight(&self) -> f64 {
        1.0 - self.public_weight
    }

    /// Utility of consuming `public_total` of the public good and `private_own`
    /// of the private good. Zero on the boundary of the consumption set.
    pub fn utility(&self, public_total: f64, private_own: f64) -> Result<f64> {
        ensure_finite("public_total", public_total)?;
        ensure_finite("private_own", private_own)?;
        if public_total < 0.0 || private_own < 0.0 {
            return Err(Error::Domain(format!(
                "consumption must be non-negative, got ({public_total}, {private_own})"
            )));
        }
        if public_total == 0.0 || private_own == 0.0 {
            return Ok(0.0);
        }
        Ok(public_total.powf(self.public_weight) * private_own.powf(self.private_weight()))
    }

    /// Marginal rate of substitution of private for public good,
    /// `(a / (1 - a)) * y / x`.
    pub fn mrs(&self, public_total: f64, private_own: f64) -> Result<f64> {
        ensure_finite("public_total", public_total)?;
        ensure_finite("private_own", private_own)?;
        if public_total < 0.0 || private_own < 0.0 {
            return Err(Error::Domain(format!(
                "consumption must be non-negative, got ({public_total}, {private_own})"
            )));
        }
        if public_total == 0.0 {
            return Err(Error::Singularity(
                "MRS is unbounded at a zero public-good level".into(),
            ));
        }
        Ok(self.public_weight / self.private_weight() * private_own / public_total)
    }
}

/// Free-function form of [`Agent::utility`].
pub fn utility(agent: &Agent, public_total: f64, private_own: f64) -> Result<f64> {
    agent.utility(public_total, private_own)
}

/// Free-function form of [`Agent::mrs`].
pub fn mrs(agent: &Agent, public_total: f64, private_own: f64) -> Result<f64> {
    agent.mrs(public_total, private_own)
}

/// Linear production: one unit of input yields `public_coeff` units of the
/// public good or `private_coeff` units of the private good.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Technology {
    public_coeff: f64,
    private_coeff: f64,
}

impl Default for Technology {
    fn default() -> Self {
        Self {
            public_coeff: 1.0,
            private_coeff: 1.0,
        }
    }
}

impl Technology {
    pub fn new(public_coeff: f64, private_coeff: f64) -> Result<Self> {
        for (name, v) in [("public_coeff", public_coeff), ("private_coeff", private_coeff)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        let tech = Self {
            public_coeff,
            private_coeff,
        };
        let rpt = tech.rpt();
        if !(rpt.is_finite() && rpt > 0.0) {
            return Err(Error::Domain(format!("rate of transformation {rpt} is degenerate")));
        }
        Ok(tech)
    }

    pub fn public_coeff(&self) -> f64 {
        self.public_coeff
    }

    pub fn private_coeff(&self) -> f64 {
        self.private_coeff
    }

    /// Rate of product transformation: private good given up per unit of public good.
    pub fn rpt(&self) -> f64 {
        self.private_coeff / self.public_coeff
    }
}

/// A consumption allocation: one public-good level shared by everyone and a
/// private consumption per agent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Allocation {
    pub public_total: f64,
    pub private_consumption: Vec<f64>,
}

impl Allocation {
    pub fn utilities(&self, agents: &[Agent]) -> Result<Vec<f64>> {
        check_len(agents.len(), self.private_consumption.len())?;
        agents
            .iter()
            .zip(&self.private_consumption)
            .map(|(a, &y)| a.utility(self.public_total, y))
            .collect()
    }
}

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Shape { expected, actual })
    }
}

/// `sum_i MRS_i - RPT`. Zero at an efficient allocation; positive means the
/// public good is underprovided.
pub fn samuelson_residual(agents: &[Agent], allocation: &Allocation, tech: &Technology) -> Result<f64> {
    check_len(agents.len(), allocation.private_consumption.len())?;
    if allocation.public_total <= 0.0 {
        return Err(Error::Singularity(
            "Samuelson residual needs a positive public-good level".into(),
        ));
    }
    let mut sum = 0.0;
    for (agent, &y) in agents.iter().zip(&allocation.private_consumption) {
        sum += agent.mrs(allocation.public_total, y)?;
    }
    Ok(sum - tech.rpt())
}

/// A tabulated inverse demand (marginal willingness-to-pay) curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandCurve {
    points: Vec<(f64, f64)>,
}

impl DemandCurve {
    /// `points` are `(quantity, price)` pairs.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Validation("demand curve needs at least one point".into()));
        }
        for &(q, p) in &points {
            ensure_finite("quantity", q)?;
            ensure_finite("price", p)?;
            if p < 0.0 {
                return Err(Error::Validation(format!("negative price {p} at quantity {q}")));
            }
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::Validation(format!(
                    "quantities must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
            if w[1].1 > w[0].1 {
                return Err(Error::Validation(format!(
                    "prices must be non-increasing ({} then {})",
                    w[0].1, w[1].1
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Price at `quantity`, linearly interpolated between tabulated points.
    pub fn price_at(&self, quantity: f64) -> Result<f64> {
        let (min, max) = (self.points[0].0, self.points[self.points.len() - 1].0);
        if !(quantity >= min && quantity <= max) {
            return Err(Error::Range {
                value: quantity,
                min,
                max,
            });
        }
        // first index whose quantity is >= the query
        let hi = self.points.partition_point(|&(q, _)| q < quantity);
        let (q1, p1) = self.points[hi];
        if q1 == quantity || hi == 0 {
            return Ok(p1);
        }
        let (q0, p0) = self.points[hi - 1];
        let t = (quantity - q0) / (q1 - q0);
        Ok(p0 + t * (p1 - p0))
    }
}

/// Aggregate marginal willingness to pay at `quantity`: individual demand
/// curves add vertically because every consumer enjoys each unit.
pub fn vertical_sum_demand(curves: &[DemandCurve], quantity: f64) -> Result<f64> {
    curves.iter().map(|c| c.price_at(quantity)).sum()
}
