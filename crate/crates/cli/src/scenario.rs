//! Scenario files: one TOML document per analysis, tagged by `kind`.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use pubgoods::groves::{MechanismScenario, TransferConvention};
use pubgoods::polecon::{Benefit, FiscalModel};
use pubgoods::voting::PreferenceProfile;
use pubgoods::{Agent, Technology};

use crate::error::CliError;

/// What the scenario asks the report to contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Output {
    Report,
    Csv,
    ErratumComparison,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub title: String,
    pub outputs: Vec<Output>,
    pub kind: ScenarioKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioKind {
    Contribution(EconomySpec),
    Lindahl(EconomySpec),
    Mechanism(MechanismSpec),
    Vote(PreferenceProfile),
    Fiscal(FiscalSpec),
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Contribution(_) => "contribution",
            Self::Lindahl(_) => "lindahl",
            Self::Mechanism(_) => "mechanism",
            Self::Vote(_) => "vote",
            Self::Fiscal(_) => "fiscal",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EconomySpec {
    pub agents: Vec<Agent>,
    pub technology: Technology,
    pub reference: Option<ReferenceValues>,
}

/// Previously published figures to compare computed values against.
#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceValues {
    /// Where the figures come from, shown in the report.
    pub source: Option<String>,
    /// Relative tolerance for a match.
    #[serde(default = "default_reference_tolerance")]
    pub tolerance: f64,
    pub nash_contribution: Option<f64>,
    pub nash_total: Option<f64>,
    pub nash_utility: Option<f64>,
    pub efficient_contribution: Option<f64>,
    pub efficient_total: Option<f64>,
    pub efficient_utility: Option<f64>,
    pub utility_loss_percent: Option<f64>,
    pub lindahl_quantity: Option<f64>,
}

fn default_reference_tolerance() -> f64 {
    0.01
}

#[derive(Debug, Clone, PartialEq)]
pub struct MechanismSpec {
    pub scenario: MechanismScenario,
    pub reports: Vec<f64>,
    pub grid: Option<GridSpec>,
}

/// Evenly spaced report grid `min, min + step, ..., max`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn with_step(self, step: f64) -> Self {
        Self { step, ..self }
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|k| self.min + k as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiscalSpec {
    pub model: FiscalModel,
    pub alternative_medians: Vec<f64>,
}

// ---------------------------------------------------------------- raw schema

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawScenario {
    Contribution {
        title: Option<String>,
        #[serde(default)]
        outputs: Vec<Output>,
        agents: Vec<RawAgent>,
        technology: Option<RawTechnology>,
        reference: Option<ReferenceValues>,
    },
    Lindahl {
        title: Option<String>,
        #[serde(default)]
        outputs: Vec<Output>,
        agents: Vec<RawAgent>,
        technology: Option<RawTechnology>,
        reference: Option<ReferenceValues>,
    },
    Mechanism {
        title: Option<String>,
        #[serde(default)]
        outputs: Vec<Output>,
        valuations: Vec<f64>,
        #[serde(default)]
        cost: f64,
        convention: TransferConvention,
        reports: Option<Vec<f64>>,
        truthfulness: Option<GridSpec>,
    },
    Vote {
        title: Option<String>,
        #[serde(default)]
        outputs: Vec<Output>,
        alternatives: Vec<String>,
        voters: Vec<RawVoter>,
    },
    Fiscal {
        title: Option<String>,
        #[serde(default)]
        outputs: Vec<Output>,
        incomes: Vec<f64>,
        benefit: Benefit,
        #[serde(default)]
        alternative_medians: Vec<f64>,
    },
}

struct Common {
    title: Option<String>,
    outputs: Vec<Output>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAgent {
    endowment: f64,
    public_weight: f64,
    #[serde(default = "one")]
    count: usize,
}

fn one() -> usize {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTechnology {
    public_coeff: f64,
    private_coeff: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVoter {
    name: String,
    ranking: Vec<String>,
}

fn invalid(field: impl Into<String>, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation {
        field: field.into(),
        message: msg.to_string(),
    }
}

fn finite(field: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(field, format!("must be finite, got {v}")))
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_scenario(&text)
}

pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    match raw {
        RawScenario::Contribution {
            title,
            outputs,
            agents,
            technology,
            reference,
        } => finish(
            Common { title, outputs },
            "contribution",
            ScenarioKind::Contribution(economy_spec(agents, technology, reference)?),
        ),
        RawScenario::Lindahl {
            title,
            outputs,
            agents,
            technology,
            reference,
        } => finish(
            Common { title, outputs },
            "lindahl",
            ScenarioKind::Lindahl(economy_spec(agents, technology, reference)?),
        ),
        RawScenario::Mechanism {
            title,
            outputs,
            valuations,
            cost,
            convention,
            reports,
            truthfulness,
        } => {
            if valuations.is_empty() {
                return Err(invalid("valuations", "need at least one agent"));
            }
            for (i, &v) in valuations.iter().enumerate() {
                finite(&format!("valuations[{i}]"), v)?;
            }
            finite("cost", cost)?;
            if cost < 0.0 {
                return Err(invalid("cost", format!("must be non-negative, got {cost}")));
            }
            let reports = reports.unwrap_or_else(|| valuations.clone());
            if reports.len() != valuations.len() {
                return Err(invalid(
                    "reports",
                    format!("expected {} entries, got {}", valuations.len(), reports.len()),
                ));
            }
            for (i, &r) in reports.iter().enumerate() {
                finite(&format!("reports[{i}]"), r)?;
            }
            if let Some(g) = truthfulness {
                validate_grid("truthfulness", &g)?;
            }
            let scenario = MechanismScenario::new(valuations, cost, convention)
                .map_err(|e| invalid("valuations", e))?;
            finish(
                Common { title, outputs },
                "mechanism",
                ScenarioKind::Mechanism(MechanismSpec {
                    scenario,
                    reports,
                    grid: truthfulness,
                }),
            )
        }
        RawScenario::Vote {
            title,
            outputs,
            alternatives,
            voters,
        } => {
            if voters.is_empty() {
                return Err(invalid("voters", "need at least one voter"));
            }
            let ballots: Vec<(String, Vec<String>)> =
                voters.into_iter().map(|v| (v.name, v.ranking)).collect();
            let profile =
                PreferenceProfile::new(&alternatives, &ballots).map_err(|e| invalid("voters", e))?;
            finish(Common { title, outputs }, "vote", ScenarioKind::Vote(profile))
        }
        RawScenario::Fiscal {
            title,
            outputs,
            incomes,
            benefit,
            alternative_medians,
        } => {
            for (i, &y) in incomes.iter().enumerate() {
                if finite(&format!("incomes[{i}]"), y)? <= 0.0 {
                    return Err(invalid(format!("incomes[{i}]"), format!("must be positive, got {y}")));
                }
            }
            for (i, &y) in alternative_medians.iter().enumerate() {
                if finite(&format!("alternative_medians[{i}]"), y)? <= 0.0 {
                    return Err(invalid(
                        format!("alternative_medians[{i}]"),
                        format!("must be positive, got {y}"),
                    ));
                }
            }
            benefit.validate().map_err(|e| invalid("benefit", e))?;
            let model = FiscalModel::new(incomes, benefit).map_err(|e| invalid("incomes", e))?;
            finish(
                Common { title, outputs },
                "fiscal",
                ScenarioKind::Fiscal(FiscalSpec {
                    model,
                    alternative_medians,
                }),
            )
        }
    }
}

fn finish(common: Common, default_title: &str, kind: ScenarioKind) -> Result<Scenario, CliError> {
    let outputs = if common.outputs.is_empty() {
        vec![Output::Report]
    } else {
        common.outputs
    };
    Ok(Scenario {
        title: common.title.unwrap_or_else(|| format!("{default_title} scenario")),
        outputs,
        kind,
    })
}

fn validate_grid(field: &str, g: &GridSpec) -> Result<(), CliError> {
    finite(&format!("{field}.min"), g.min)?;
    finite(&format!("{field}.max"), g.max)?;
    finite(&format!("{field}.step"), g.step)?;
    if g.step <= 0.0 {
        return Err(invalid(format!("{field}.step"), "must be positive"));
    }
    if g.max < g.min {
        return Err(invalid(format!("{field}.max"), "must not be below min"));
    }
    Ok(())
}

fn economy_spec(
    raw_agents: Vec<RawAgent>,
    technology: Option<RawTechnology>,
    reference: Option<ReferenceValues>,
) -> Result<EconomySpec, CliError> {
    if raw_agents.is_empty() {
        return Err(invalid("agents", "need at least one agent"));
    }
    let mut agents = Vec::new();
    for (i, a) in raw_agents.iter().enumerate() {
        let endowment = finite(&format!("agents[{i}].endowment"), a.endowment)?;
        let weight = finite(&format!("agents[{i}].public_weight"), a.public_weight)?;
        if endowment <= 0.0 {
            return Err(invalid(
                format!("agents[{i}].endowment"),
                format!("must be positive, got {endowment}"),
            ));
        }
        if !(weight > 0.0 && weight < 1.0) {
            return Err(invalid(
                format!("agents[{i}].public_weight"),
                format!("must lie strictly between 0 and 1, got {weight}"),
            ));
        }
        if a.count == 0 {
            return Err(invalid(format!("agents[{i}].count"), "must be at least 1"));
        }
        let agent = Agent::new(endowment, weight).map_err(|e| invalid(format!("agents[{i}]"), e))?;
        agents.extend(std::iter::repeat_n(agent, a.count));
    }
    let technology = match technology {
        None => Technology::default(),
        Some(t) => {
            finite("technology.public_coeff", t.public_coeff)?;
            finite("technology.private_coeff", t.private_coeff)?;
            Technology::new(t.public_coeff, t.private_coeff).map_err(|e| invalid("technology", e))?
        }
    };
    if let Some(r) = &reference {
        if !(r.tolerance.is_finite() && r.tolerance >= 0.0) {
            return Err(invalid("reference.tolerance", "must be a non-negative number"));
        }
    }
    Ok(EconomySpec {
        agents,
        technology,
        reference,
    })
}
