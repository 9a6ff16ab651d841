//! Majority-rule public spending financed by a proportional income tax.
//!
//! Voter `i` with income `y_i` consumes `(1 - t) y_i` privately and enjoys
//! `f(g)` from public spending `g = t * n * ȳ`. The preferred spending solves
//! `f'(g) = y_i / (n ȳ)`, which falls with income, so with single-peaked
//! preferences the median-income voter is decisive.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Strictly increasing, strictly concave benefit of public spending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Benefit {
    /// `f(g) = scale * ln g`
    Log { scale: f64 },
    /// `f(g) = g^exponent / exponent`, `0 < exponent < 1`
    Power { exponent: f64 },
}

impl Benefit {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Benefit::Log { scale } if scale.is_finite() && scale > 0.0 => Ok(()),
            Benefit::Log { scale } => Err(Error::Validation(format!(
                "log benefit scale must be positive, got {scale}"
            ))),
            Benefit::Power { exponent } if exponent > 0.0 && exponent < 1.0 => Ok(()),
            Benefit::Power { exponent } => Err(Error::Validation(format!(
                "power benefit exponent must lie in (0, 1), got {exponent}"
            ))),
        }
    }

    pub fn value(&self, g: f64) -> f64 {
        match *self {
            Benefit::Log { scale } => scale * g.ln(),
            Benefit::Power { exponent } => g.powf(exponent) / exponent,
        }
    }

    pub fn derivative(&self, g: f64) -> f64 {
        match *self {
            Benefit::Log { scale } => scale / g,
            Benefit::Power { exponent } => g.powf(exponent - 1.0),
        }
    }

    /// Spending level at which the marginal benefit equals `marginal`.
    pub fn inverse_derivative(&self, marginal: f64) -> f64 {
        match *self {
            Benefit::Log { scale } => scale / marginal,
            Benefit::Power { exponent } => marginal.powf(1.0 / (exponent - 1.0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiscalModel {
    incomes: Vec<f64>,
    benefit: Benefit,
}

impl FiscalModel {
    pub fn new(incomes: Vec<f64>, benefit: Benefit) -> Result<Self> {
        if incomes.is_empty() {
            return Err(Error::Validation("need at least one voter".into()));
        }
        for &y in &incomes {
            ensure_finite("income", y)?;
            if y <= 0.0 {
                return Err(Error::Validation(format!("incomes must be positive, got {y}")));
            }
        }
        benefit.validate()?;
        Ok(Self { incomes, benefit })
    }

    pub fn incomes(&self) -> &[f64] {
        &self.incomes
    }

    pub fn benefit(&self) -> Benefit {
        self.benefit
    }

    pub fn voters(&self) -> usize {
        self.incomes.len()
    }

    pub fn mean_income(&self) -> f64 {
        self.tax_base() / self.incomes.len() as f64
    }

    /// `n * ȳ`, total income.
    pub fn tax_base(&self) -> f64 {
        self.incomes.iter().sum()
    }

    pub fn median_income(&self) -> Result<f64> {
        let n = self.incomes.len();
        if n.is_multiple_of(2) {
            return Err(Error::Ambiguous(format!(
                "{n} voters: the median income is an interval"
            )));
        }
        let mut sorted = self.incomes.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(sorted[n / 2])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiscalEquilibrium {
    pub median_income: f64,
    pub spending: f64,
    pub tax_rate: f64,
    pub marginal_benefit: f64,
    /// The whole tax base is spent (`tax_rate == 1`).
    pub at_boundary: bool,
}

/// Spending that maximizes `y - (y / (n ȳ)) g + f(g)` for a voter with this income.
pub fn preferred_spending(model: &FiscalModel, income: f64) -> Result<f64> {
    ensure_finite("income", income)?;
    if income <= 0.0 {
        return Err(Error::Domain(format!("income must be positive, got {income}")));
    }
    Ok(model.benefit.inverse_derivative(income / model.tax_base()))
}

/// Spending preferred by the median-income voter and the tax rate that funds it.
pub fn equilibrium_spending(model: &FiscalModel) -> Result<FiscalEquilibrium> {
    let median = model.median_income()?;
    equilibrium_at_median(model, median)
}

fn equilibrium_at_median(model: &FiscalModel, median: f64) -> Result<FiscalEquilibrium> {
    let spending = preferred_spending(model, median)?;
    let tax_rate = spending / model.tax_base();
    if tax_rate > 1.0 {
        return Err(Error::Infeasible(format!(
            "preferred spending {spending} needs tax rate {tax_rate} > 1"
        )));
    }
    Ok(FiscalEquilibrium {
        median_income: median,
        spending,
        tax_rate,
        marginal_benefit: model.benefit.derivative(spending),
        at_boundary: tax_rate == 1.0,
    })
}

/// Equilibria for hypothetical median incomes with the model's `n` and ȳ held fixed.
pub fn skew_comparative_statics(model: &FiscalModel, medians: &[f64]) -> Result<Vec<FiscalEquilibrium>> {
    medians
        .iter()
        .map(|&m| equilibrium_at_median(model, m))
        .collect()
}
