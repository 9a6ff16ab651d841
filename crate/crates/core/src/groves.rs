//! A Clarke-Groves style direct mechanism for a binary public project.
//!
//! Agents report valuations `v̂_i`; the project cost `C` is split equally, so
//! net reports are `ŵ_i = v̂_i - C/n`. The project goes ahead iff
//! `sum_i ŵ_i >= 0`, and when it does each agent's transfer is built from the
//! *other* agents' net reports. Two sign conventions are available:
//!
//! * [`TransferConvention::Literal`] charges `t_i = sum_{j != i} ŵ_j`.
//! * [`TransferConvention::GrovesAligned`] charges `t_i = -sum_{j != i} ŵ_j`,
//!   so realized utility `w_i - t_i` equals the reported social surplus and
//!   truthful reporting is dominant.
//!
//! [`truthfulness_check`] enumerates report grids to decide which convention
//! actually makes truth-telling dominant.

use serde::{Deserialize, Serialize};

use crate::economy::check_len;
use crate::error::{ensure_finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransferConvention {
    /// `t_i = sum_{j != i} ŵ_j`.
    #[serde(rename = "PAPER_LITERAL", alias = "LITERAL")]
    Literal,
    /// `t_i = -sum_{j != i} ŵ_j`.
    #[serde(rename = "GROVES_ALIGNED")]
    GrovesAligned,
}

impl TransferConvention {
    pub fn label(self) -> &'static str {
        match self {
            Self::Literal => "PAPER_LITERAL",
            Self::GrovesAligned => "GROVES_ALIGNED",
        }
    }

    fn sign(self) -> f64 {
        match self {
            Self::Literal => 1.0,
            Self::GrovesAligned => -1.0,
        }
    }
}

/// True valuations, the project cost and the transfer rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MechanismScenario {
    valuations: Vec<f64>,
    cost: f64,
    convention: TransferConvention,
}

impl MechanismScenario {
    pub fn new(valuations: Vec<f64>, cost: f64, convention: TransferConvention) -> Result<Self> {
        if valuations.is_empty() {
            return Err(Error::Validation("mechanism needs at least one agent".into()));
        }
        for &v in &valuations {
            ensure_finite("valuation", v)?;
        }
        ensure_finite("cost", cost)?;
        if cost < 0.0 {
            return Err(Error::Validation(format!("cost must be non-negative, got {cost}")));
        }
        Ok(Self {
            valuations,
            cost,
            convention,
        })
    }

    pub fn valuations(&self) -> &[f64] {
        &self.valuations
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn convention(&self) -> TransferConvention {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.valuations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valuations.is_empty()
    }

    fn cost_share(&self) -> f64 {
        self.cost / self.valuations.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MechanismOutcome {
    pub implemented: bool,
    pub reports: Vec<f64>,
    /// Taxes; positive means the agent pays.
    pub transfers: Vec<f64>,
    pub revenue: f64,
    pub per_agent_utility: Vec<f64>,
}

/// Implement iff reported value covers the cost; ties implement.
pub fn decide(reports: &[f64], cost: f64) -> bool {
    reports.iter().sum::<f64>() - cost >= 0.0
}

/// Transfers given net reports `ŵ`. All zero when the project is rejected.
pub fn transfers(net_reports: &[f64], implemented: bool, convention: TransferConvention) -> Vec<f64> {
    (0..net_reports.len())
        .map(|i| {
            if implemented {
                convention.sign() * others_sum(net_reports, i, 0.0)
            } else {
                0.0
            }
        })
        .collect()
}

/// `sum_{j != i} (values_j - shift)`.
fn others_sum(values: &[f64], i: usize, shift: f64) -> f64 {
    values
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, v)| v - shift)
        .sum()
}

/// Utility agent `i` realizes given everyone's raw reports.
fn realized_utility(scenario: &MechanismScenario, reports: &[f64], i: usize, implemented: bool) -> f64 {
    if !implemented {
        return 0.0;
    }
    let share = scenario.cost_share();
    let tax = scenario.convention.sign() * others_sum(reports, i, share);
    (scenario.valuations[i] - share) - tax
}

pub fn run_mechanism(scenario: &MechanismScenario, reports: &[f64]) -> Result<MechanismOutcome> {
    check_len(scenario.len(), reports.len())?;
    for &r in reports {
        ensure_finite("report", r)?;
    }
    let share = scenario.cost_share();
    let implemented = decide(reports, scenario.cost);
    let net: Vec<f64> = reports.iter().map(|r| r - share).collect();
    let transfers = transfers(&net, implemented, scenario.convention);
    let revenue = transfers.iter().sum();
    let per_agent_utility = (0..reports.len())
        .map(|i| realized_utility(scenario, reports, i, implemented))
        .collect();
    Ok(MechanismOutcome {
        implemented,
        reports: reports.to_vec(),
        transfers,
        revenue,
        per_agent_utility,
    })
}

/// Total tax collected. Under the literal convention with the project
/// implemented this is `(n-1) * sum_j ŵ_j`.
pub fn budget_report(scenario: &MechanismScenario, reports: &[f64]) -> Result<f64> {
    Ok(run_mechanism(scenario, reports)?.revenue)
}

/// Default cap on utility evaluations for [`truthfulness_check`].
pub const DEFAULT_EVALUATION_CAP: u64 = 10_000_000;

/// Misreport gains at or below this are treated as rounding noise.
pub const GAIN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub agent: usize,
    pub true_value: f64,
    pub misreport: f64,
    /// Reports of the other agents, in agent order with `agent` skipped.
    pub opponent_reports: Vec<f64>,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    Dominant,
    Counterexample(Counterexample),
}

impl Verdict {
    pub fn is_dominant(&self) -> bool {
        matches!(self, Verdict::Dominant)
    }
}

/// Exhaustive check that truthful reporting is a dominant strategy.
///
/// For every agent, every tuple of opponent reports drawn from `grid`, and
/// every misreport in `grid`, compares the agent's realized utility against
/// reporting its true valuation. Scans agents in order, opponent tuples
/// lexicographically and misreports ascending, returning the first
/// profitable deviation found.
pub fn truthfulness_check(scenario: &MechanismScenario, grid: &[f64], cap: u64) -> Result<Verdict> {
    if grid.is_empty() {
        return Err(Error::Validation("report grid is empty".into()));
    }
    for &g in grid {
        ensure_finite("grid value", g)?;
    }
    let mut grid = grid.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();

    let n = scenario.len();
    let k = grid.len() as u128;
    let required = (n as u128).saturating_mul(k.checked_pow(n as u32).unwrap_or(u128::MAX));
    if required > cap as u128 {
        return Err(Error::Budget { required, cap });
    }

    let mut reports = vec![0.0; n];
    let mut idx = vec![0usize; n.saturating_sub(1)];
    for agent in 0..n {
        let truth = scenario.valuations[agent];
        idx.iter_mut().for_each(|x| *x = 0);
        loop {
            let mut slot = 0;
            for (j, r) in reports.iter_mut().enumerate() {
                if j != agent {
                    *r = grid[idx[slot]];
                    slot += 1;
                }
            }
            reports[agent] = truth;
            let honest = realized_utility(scenario, &reports, agent, decide(&reports, scenario.cost));
            for &lie in &grid {
                reports[agent] = lie;
                let u = realized_utility(scenario, &reports, agent, decide(&reports, scenario.cost));
                let gain = u - honest;
                if gain > GAIN_TOLERANCE {
                    return Ok(Verdict::Counterexample(Counterexample {
                        agent,
                        true_value: truth,
                        misreport: lie,
                        opponent_reports: idx.iter().map(|&t| grid[t]).collect(),
                        gain,
                    }));
                }
            }
            if !advance(&mut idx, grid.len()) {
                break;
            }
        }
    }
    Ok(Verdict::Dominant)
}

/// Odometer step, last position fastest. Returns false after the final tuple.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use TransferConvention::*;

    #[test]
    fn decide_examples() {
        assert!(decide(&[3.0, -1.0], 0.0));
        assert!(!decide(&[1.0, -2.0], 0.0));
        assert!(decide(&[5.0, 4.0], 6.0));
        assert!(decide(&[2.0, -2.0], 0.0));
        assert!(decide(&[3.0, 3.0], 6.0));
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(transfers(&[3.0, -1.0], true, Literal), vec![-1.0, 3.0]);
        assert_eq!(transfers(&[3.0, -1.0], true, GrovesAligned), vec![1.0, -3.0]);
        assert_eq!(transfers(&[3.0, -1.0], false, Literal), vec![0.0, 0.0]);
        assert_eq!(transfers(&[3.0, -1.0], false, GrovesAligned), vec![0.0, 0.0]);
    }

    #[test]
    fn run_examples() {
        let s = MechanismScenario::new(vec![3.0, -1.0], 0.0, GrovesAligned).unwrap();
        let o = run_mechanism(&s, &[3.0, -1.0]).unwrap();
        assert!(o.implemented);
        assert_eq!(o.per_agent_utility, vec![2.0, 2.0]);
        assert_eq!(o.revenue, -2.0);

        let s = MechanismScenario::new(vec![1.0, -2.0], 0.0, GrovesAligned).unwrap();
        let o = run_mechanism(&s, &[1.0, -2.0]).unwrap();
        assert!(!o.implemented);
        assert_eq!(o.per_agent_utility, vec![0.0, 0.0]);
        assert_eq!(o.transfers, vec![0.0, 0.0]);

        let s = MechanismScenario::new(vec![1.0, 3.0], 0.0, Literal).unwrap();
        let o = run_mechanism(&s, &[1.0, 3.0]).unwrap();
        assert!(o.implemented);
        assert_eq!(o.per_agent_utility, vec![-2.0, 2.0]);
        assert_eq!(o.revenue, 4.0);

        assert!(matches!(run_mechanism(&s, &[1.0]), Err(Error::Shape { .. })));
    }

    #[test]
    fn budget_examples() {
        let s = MechanismScenario::new(vec![2.0, 1.0, 1.0], 0.0, Literal).unwrap();
        assert_eq!(budget_report(&s, &[2.0, 1.0, 1.0]).unwrap(), 8.0);
        let s = MechanismScenario::new(vec![2.0, 1.0, 1.0], 0.0, GrovesAligned).unwrap();
        assert_eq!(budget_report(&s, &[2.0, 1.0, 1.0]).unwrap(), -8.0);
        for conv in [Literal, GrovesAligned] {
            let s = MechanismScenario::new(vec![4.0], 1.0, conv).unwrap();
            assert_eq!(budget_report(&s, &[4.0]).unwrap(), 0.0);
            assert_eq!(budget_report(&s, &[-4.0]).unwrap(), 0.0);
        }
    }

    #[test]
    fn cost_is_split_equally() {
        let s = MechanismScenario::new(vec![5.0, 4.0], 6.0, GrovesAligned).unwrap();
        let o = run_mechanism(&s, &[5.0, 4.0]).unwrap();
        assert!(o.implemented);
        // net values (2, 1); each gets its own plus the other's net value
        assert_eq!(o.per_agent_utility, vec![3.0, 3.0]);
        assert_eq!(o.transfers, vec![-1.0, -2.0]);
    }

    #[test]
    fn scenario_validation() {
        assert!(MechanismScenario::new(vec![], 0.0, Literal).is_err());
        assert!(MechanismScenario::new(vec![1.0], -1.0, Literal).is_err());
        assert!(MechanismScenario::new(vec![f64::NAN], 0.0, Literal).is_err());
    }

    fn grid(lo: i32, hi: i32) -> Vec<f64> {
        (lo..=hi).map(f64::from).collect()
    }

    #[test]
    fn aligned_is_dominant() {
        let s = MechanismScenario::new(vec![1.0, -2.0], 0.0, GrovesAligned).unwrap();
        assert_eq!(
            truthfulness_check(&s, &grid(-3, 3), DEFAULT_EVALUATION_CAP).unwrap(),
            Verdict::Dominant
        );
    }

    #[test]
    fn literal_documented_deviation() {
        // true value 1, opponent reports 3: honest utility 1 - 3 = -2, while
        // reporting -4 blocks the project for utility 0
        let s = MechanismScenario::new(vec![1.0, 3.0], 0.0, Literal).unwrap();
        let honest = run_mechanism(&s, &[1.0, 3.0]).unwrap();
        let lie = run_mechanism(&s, &[-4.0, 3.0]).unwrap();
        assert_eq!(honest.per_agent_utility[0], -2.0);
        assert!(!lie.implemented);
        assert_eq!(lie.per_agent_utility[0] - honest.per_agent_utility[0], 2.0);

        match truthfulness_check(&s, &grid(-4, 3), DEFAULT_EVALUATION_CAP).unwrap() {
            Verdict::Counterexample(c) => {
                assert_eq!(c.agent, 0);
                assert!(c.gain > 0.0);
            }
            Verdict::Dominant => panic!("literal convention should admit a profitable lie"),
        }
    }

    #[test]
    fn counterexample_is_first_in_scan_order() {
        let s = MechanismScenario::new(vec![1.0, 3.0], 0.0, Literal).unwrap();
        let Verdict::Counterexample(c) = truthfulness_check(&s, &grid(-4, 3), DEFAULT_EVALUATION_CAP).unwrap() else {
            panic!()
        };
        // opponent -4: honest rejects and no grid lie reaches a sum of 0.
        // opponent -3: honest rejects, lying 3 implements with utility 1 + 3
        assert_eq!(c.opponent_reports, vec![-3.0]);
        assert_eq!(c.misreport, 3.0);
        assert_eq!(c.gain, 4.0);
        let honest = run_mechanism(&s, &[1.0, -3.0]).unwrap().per_agent_utility[0];
        let lie = run_mechanism(&s, &[c.misreport, -3.0]).unwrap().per_agent_utility[0];
        assert_eq!(lie - honest, c.gain);
    }

    #[test]
    fn single_agent_is_dominant() {
        for conv in [Literal, GrovesAligned] {
            let s = MechanismScenario::new(vec![0.5], 0.0, conv).unwrap();
            assert!(truthfulness_check(&s, &[-1.0, 0.0, 1.0], 100).unwrap().is_dominant());
        }
    }

    #[test]
    fn budget_cap_enforced() {
        let s = MechanismScenario::new(vec![0.0; 4], 0.0, GrovesAligned).unwrap();
        let g = grid(-5, 5);
        assert!(matches!(
            truthfulness_check(&s, &g, 1000),
            Err(Error::Budget { required: 58564, cap: 1000 })
        ));
        assert!(truthfulness_check(&s, &[], 1000).is_err());
    }

    #[test]
    fn odometer_visits_every_tuple() {
        let mut idx = vec![0, 0];
        let mut seen = vec![idx.clone()];
        while advance(&mut idx, 3) {
            seen.push(idx.clone());
        }
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[1], vec![0, 1]);
        assert_eq!(seen[8], vec![2, 2]);
        let mut empty: Vec<usize> = vec![];
        assert!(!advance(&mut empty, 3));
    }
}
