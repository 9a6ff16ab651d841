//! Turns a scenario into a report for one verb.

use pubgoods::economy::{samuelson_residual, Agent, Allocation, Technology};
use pubgoods::groves::{self, TransferConvention, Verdict, DEFAULT_EVALUATION_CAP};
use pubgoods::lindahl::{lindahl_equilibrium, LindahlSolution};
use pubgoods::polecon::{equilibrium_spending, preferred_spending, skew_comparative_statics};
use pubgoods::voluntary::{efficient_symmetric, inefficiency_report, nash_equilibrium, ContributionProfile};
use pubgoods::voting::{
    condorcet_winner, has_majority_cycle, is_single_peaked, median_voter_outcome, pairwise_matrix,
    PreferenceProfile,
};

use crate::error::CliError;
use crate::report::{Cell, Report, Table};
use crate::scenario::{
    EconomySpec, FiscalSpec, MechanismSpec, Output, ReferenceValues, Scenario, ScenarioKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Verb {
    Nash,
    Efficient,
    Lindahl,
    Mechanism,
    Vote,
    Fiscal,
    Report,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Nash => "nash",
            Verb::Efficient => "efficient",
            Verb::Lindahl => "lindahl",
            Verb::Mechanism => "mechanism",
            Verb::Vote => "vote",
            Verb::Fiscal => "fiscal",
            Verb::Report => "report",
        }
    }
}

/// Oracle settings.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    /// Grid resolution for brute-force checks; `None` uses each check's default.
    pub grid_step: Option<f64>,
    /// Cross-check solver output against brute force and fail on mismatch.
    pub verify: bool,
}

const DEFAULT_GRID_STEP: f64 = 1e-3;
const ORACLE_SLACK: f64 = 1e-9;

/// Runs every analysis the scenario supports.
pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Result<Report, CliError> {
    run(Verb::Report, scenario, opts)
}

pub fn run(verb: Verb, scenario: &Scenario, opts: &RunOptions) -> Result<Report, CliError> {
    if let Some(step) = opts.grid_step {
        if !(step.is_finite() && step > 0.0) {
            return Err(CliError::Validation {
                field: "--grid-step".into(),
                message: format!("must be a positive number, got {step}"),
            });
        }
    }
    let mut report = Report::new(scenario.title.clone());
    report.kv("kind", Cell::text(scenario.kind.name()));
    let wrong = || CliError::WrongKind {
        verb: verb.name(),
        kind: scenario.kind.name(),
    };
    match (&scenario.kind, verb) {
        (ScenarioKind::Contribution(e) | ScenarioKind::Lindahl(e), Verb::Nash) => {
            economy_summary(&mut report, e);
            nash_section(&mut report, e, opts)?;
        }
        (ScenarioKind::Contribution(e) | ScenarioKind::Lindahl(e), Verb::Efficient) => {
            economy_summary(&mut report, e);
            efficient_section(&mut report, e, opts)?;
        }
        (ScenarioKind::Contribution(e) | ScenarioKind::Lindahl(e), Verb::Lindahl) => {
            economy_summary(&mut report, e);
            lindahl_section(&mut report, e, opts)?;
        }
        (ScenarioKind::Contribution(e), Verb::Report) => {
            economy_summary(&mut report, e);
            let nash = nash_section(&mut report, e, opts)?;
            efficient_section(&mut report, e, opts)?;
            provision_section(&mut report, e, &nash, scenario)?;
        }
        (ScenarioKind::Lindahl(e), Verb::Report) => {
            economy_summary(&mut report, e);
            let solution = lindahl_section(&mut report, e, opts)?;
            lindahl_efficiency(&mut report, e, &solution)?;
            if wants_reference(scenario) {
                if let Some(reference) = &e.reference {
                    let computed = [("lindahl_quantity", solution.quantity, reference.lindahl_quantity)];
                    reference_section(&mut report, reference, &computed);
                }
            }
        }
        (ScenarioKind::Mechanism(m), Verb::Mechanism | Verb::Report) => {
            mechanism_section(&mut report, m, opts)?;
        }
        (ScenarioKind::Vote(p), Verb::Vote | Verb::Report) => {
            vote_section(&mut report, p, opts)?;
        }
        (ScenarioKind::Fiscal(f), Verb::Fiscal | Verb::Report) => {
            fiscal_section(&mut report, f, opts)?;
        }
        _ => return Err(wrong()),
    }
    Ok(report)
}

fn wants_reference(scenario: &Scenario) -> bool {
    scenario.outputs.contains(&Output::ErratumComparison)
}

fn identical(agents: &[Agent]) -> bool {
    agents.iter().all(|a| a == &agents[0])
}

// ---------------------------------------------------------------- economy

fn economy_summary(report: &mut Report, e: &EconomySpec) {
    report.kv("agents", Cell::int(e.agents.len()));
    report.kv("identical_agents", Cell::Flag(identical(&e.agents)));
    report.kv("rate_of_transformation", Cell::num(e.technology.rpt()));
}

fn allocation_table(
    name: &str,
    agents: &[Agent],
    contributions: &[f64],
    allocation: &Allocation,
) -> Result<Table, CliError> {
    let mut t = Table::new(
        name,
        &["agent", "endowment", "public_weight", "contribution", "private", "utility", "mrs"],
    );
    for (i, a) in agents.iter().enumerate() {
        let y = allocation.private_consumption[i];
        t.push(vec![
            Cell::int(i + 1),
            Cell::num(a.endowment()),
            Cell::num(a.public_weight()),
            Cell::num(contributions[i]),
            Cell::num(y),
            Cell::num(a.utility(allocation.public_total, y)?),
            Cell::num(a.mrs(allocation.public_total, y)?),
        ]);
    }
    Ok(t)
}

fn nash_section(report: &mut Report, e: &EconomySpec, opts: &RunOptions) -> Result<ContributionProfile, CliError> {
    let nash = nash_equilibrium(&e.agents, &e.technology)?;
    let gap = samuelson_residual(&e.agents, &nash.allocation(), &e.technology)?;
    report.kv("nash_public_total", Cell::num(nash.public_total));
    report.kv("samuelson_gap_at_nash", Cell::num(gap));
    report
        .tables
        .push(allocation_table("nash", &e.agents, &nash.contributions, &nash.allocation())?);
    if opts.verify {
        let step = opts.grid_step.unwrap_or(DEFAULT_GRID_STEP);
        verify_nash(&e.agents, &e.technology, &nash, step)?;
        report.note(format!(
            "verified: no agent gains by deviating to any contribution on a grid of step {step}"
        ));
    }
    Ok(nash)
}

/// Every agent's Nash utility must weakly beat every grid deviation.
fn verify_nash(agents: &[Agent], tech: &Technology, nash: &ContributionProfile, step: f64) -> Result<(), CliError> {
    let rpt = tech.rpt();
    for (i, a) in agents.iter().enumerate() {
        let others = nash.public_total - nash.contributions[i];
        let cap = a.endowment() / rpt;
        let steps = (cap / step).floor() as usize;
        for k in 0..=steps {
            let g = (k as f64 * step).min(cap);
            let u = a.utility(others + g, (a.endowment() - rpt * g).max(0.0))?;
            if u > nash.utilities[i] + ORACLE_SLACK {
                return Err(CliError::Verification(format!(
                    "agent {} gains by contributing {g} instead of {} ({u} > {})",
                    i + 1,
                    nash.contributions[i],
                    nash.utilities[i]
                )));
            }
        }
    }
    Ok(())
}

fn efficient_section(report: &mut Report, e: &EconomySpec, opts: &RunOptions) -> Result<(), CliError> {
    let (contributions, allocation) = if identical(&e.agents) {
        let p = efficient_symmetric(e.agents.len(), &e.agents[0], &e.technology)?;
        (p.contributions.clone(), p.allocation())
    } else {
        // Lindahl contributions are one efficient allocation among many
        let s = lindahl_equilibrium(&e.agents, &e.technology)?;
        report.note("agents differ: the efficient allocation shown is the one financed by Lindahl shares");
        let private = e
            .agents
            .iter()
            .zip(&s.contributions)
            .map(|(a, c)| a.endowment() - e.technology.rpt() * c)
            .collect();
        (
            s.contributions.clone(),
            Allocation {
                public_total: s.quantity,
                private_consumption: private,
            },
        )
    };
    report.kv("efficient_public_total", Cell::num(allocation.public_total));
    report.kv(
        "samuelson_gap_at_efficient",
        Cell::num(samuelson_residual(&e.agents, &allocation, &e.technology)?),
    );
    report
        .tables
        .push(allocation_table("efficient", &e.agents, &contributions, &allocation)?);
    if opts.verify && identical(&e.agents) {
        let step = opts.grid_step.unwrap_or(DEFAULT_GRID_STEP);
        let a = &e.agents[0];
        let n = e.agents.len() as f64;
        let rpt = e.technology.rpt();
        let cap = a.endowment() / rpt;
        let (mut best_g, mut best_u) = (0.0, f64::NEG_INFINITY);
        for k in 0..=((cap / step).floor() as usize) {
            let g = (k as f64 * step).min(cap);
            let u = a.utility(n * g, (a.endowment() - rpt * g).max(0.0))?;
            if u > best_u {
                best_u = u;
                best_g = g;
            }
        }
        let u_eff = a.utility(allocation.public_total, allocation.private_consumption[0])?;
        if best_u > u_eff + ORACLE_SLACK || (best_g - contributions[0]).abs() > step {
            return Err(CliError::Verification(format!(
                "symmetric grid optimum {best_g} (utility {best_u}) disagrees with {} (utility {u_eff})",
                contributions[0]
            )));
        }
        report.note(format!(
            "verified: symmetric grid search with step {step} peaks within one step of the efficient contribution"
        ));
    }
    Ok(())
}

fn provision_section(
    report: &mut Report,
    e: &EconomySpec,
    nash: &ContributionProfile,
    scenario: &Scenario,
) -> Result<(), CliError> {
    if !identical(&e.agents) {
        report.note("agents differ: the Nash versus efficient comparison needs identical agents");
        return Ok(());
    }
    let r = inefficiency_report(&e.agents, &e.technology)?;
    debug_assert_eq!(r.nash.contributions, nash.contributions);
    let mut t = Table::new(
        "provision",
        &[
            "group_size",
            "nash_contribution",
            "efficient_contribution",
            "nash_utility",
            "efficient_utility",
            "utility_loss",
            "utility_loss_pct",
        ],
    );
    t.push(vec![
        Cell::int(e.agents.len()),
        Cell::num(r.nash.contributions[0]),
        Cell::num(r.efficient.contributions[0]),
        Cell::num(r.nash.utilities[0]),
        Cell::num(r.efficient.utilities[0]),
        Cell::num(r.utility_loss_per_agent),
        Cell::num(r.utility_loss_percent),
    ]);
    report.tables.push(t);
    if wants_reference(scenario) {
        if let Some(reference) = &e.reference {
            let computed = [
                ("nash_contribution", r.nash.contributions[0], reference.nash_contribution),
                ("nash_total", r.nash.public_total, reference.nash_total),
                ("nash_utility", r.nash.utilities[0], reference.nash_utility),
                ("efficient_contribution", r.efficient.contributions[0], reference.efficient_contribution),
                ("efficient_total", r.efficient.public_total, reference.efficient_total),
                ("efficient_utility", r.efficient.utilities[0], reference.efficient_utility),
                ("utility_loss_percent", r.utility_loss_percent, reference.utility_loss_percent),
            ];
            reference_section(report, reference, &computed);
        }
    }
    Ok(())
}

fn reference_section(report: &mut Report, reference: &ReferenceValues, computed: &[(&str, f64, Option<f64>)]) {
    let mut t = Table::new("reference_comparison", &["quantity", "computed", "reference", "status"]);
    let mut differing = Vec::new();
    for &(name, value, printed) in computed {
        let Some(printed) = printed else { continue };
        let matches = (value - printed).abs() <= reference.tolerance * printed.abs().max(f64::MIN_POSITIVE);
        if !matches {
            differing.push(name);
        }
        t.push(vec![
            Cell::text(name),
            Cell::num(value),
            Cell::num(printed),
            Cell::text(if matches { "matches" } else { "differs" }),
        ]);
    }
    report.tables.push(t);
    let source = reference.source.as_deref().unwrap_or("reference");
    if differing.is_empty() {
        report.note(format!(
            "all {source} figures match within {}% relative tolerance",
            reference.tolerance * 100.0
        ));
    } else {
        report.note(format!(
            "erratum: {source} figures for {} are not reproducible from the model; computed values are confirmed by grid-search oracles (run with --verify)",
            differing.join(", ")
        ));
    }
}

// ---------------------------------------------------------------- lindahl

fn lindahl_section(report: &mut Report, e: &EconomySpec, opts: &RunOptions) -> Result<LindahlSolution, CliError> {
    let s = lindahl_equilibrium(&e.agents, &e.technology)?;
    report.kv("lindahl_quantity", Cell::num(s.quantity));
    report.kv("share_sum", Cell::num(s.shares.iter().sum()));
    let mut t = Table::new("lindahl", &["agent", "endowment", "share", "demand", "contribution"]);
    for (i, a) in e.agents.iter().enumerate() {
        t.push(vec![
            Cell::int(i + 1),
            Cell::num(a.endowment()),
            Cell::num(s.shares[i]),
            Cell::num(s.per_agent_demand[i]),
            Cell::num(s.contributions[i]),
        ]);
    }
    report.tables.push(t);
    if opts.verify {
        let rpt = e.technology.rpt();
        let step = opts.grid_step.unwrap_or(DEFAULT_GRID_STEP);
        for (i, a) in e.agents.iter().enumerate() {
            let price = s.shares[i] * rpt;
            let cap = a.endowment() / price;
            let (mut best_x, mut best_u) = (0.0, f64::NEG_INFINITY);
            for k in 0..=((cap / step).floor() as usize) {
                let x = (k as f64 * step).min(cap);
                let u = a.utility(x, (a.endowment() - price * x).max(0.0))?;
                if u > best_u {
                    best_u = u;
                    best_x = x;
                }
            }
            if (best_x - s.quantity).abs() > step {
                return Err(CliError::Verification(format!(
                    "agent {} demands {best_x} on the grid, not {}",
                    i + 1,
                    s.quantity
                )));
            }
        }
        report.note(format!(
            "verified: every agent's grid-optimal demand (step {step}) is within one step of the common quantity"
        ));
    }
    Ok(s)
}

fn lindahl_efficiency(report: &mut Report, e: &EconomySpec, s: &LindahlSolution) -> Result<(), CliError> {
    let private = e
        .agents
        .iter()
        .zip(&s.contributions)
        .map(|(a, c)| a.endowment() - e.technology.rpt() * c)
        .collect();
    let alloc = Allocation {
        public_total: s.quantity,
        private_consumption: private,
    };
    report.kv(
        "samuelson_gap_at_lindahl",
        Cell::num(samuelson_residual(&e.agents, &alloc, &e.technology)?),
    );
    if identical(&e.agents) {
        let eff = efficient_symmetric(e.agents.len(), &e.agents[0], &e.technology)?;
        report.kv("efficient_public_total", Cell::num(eff.public_total));
    }
    Ok(())
}

// ---------------------------------------------------------------- mechanism

fn mechanism_section(report: &mut Report, m: &MechanismSpec, opts: &RunOptions) -> Result<(), CliError> {
    let s = &m.scenario;
    let outcome = groves::run_mechanism(s, &m.reports)?;
    let n = s.len();
    let share = s.cost() / n as f64;
    report.kv("convention", Cell::text(s.convention().label()));
    report.kv("agents", Cell::int(n));
    report.kv("cost", Cell::num(s.cost()));
    report.kv("implemented", Cell::Flag(outcome.implemented));
    report.kv("revenue", Cell::num(outcome.revenue));
    let net_sum: f64 = m.reports.iter().map(|r| r - share).sum();
    let budget = outcome.revenue - if outcome.implemented { s.cost() } else { 0.0 };
    report.kv("surplus_after_cost", Cell::num(budget));
    let mut t = Table::new(
        "outcome",
        &["agent", "valuation", "report", "net_report", "transfer", "utility"],
    );
    for i in 0..n {
        t.push(vec![
            Cell::int(i + 1),
            Cell::num(s.valuations()[i]),
            Cell::num(m.reports[i]),
            Cell::num(m.reports[i] - share),
            Cell::num(outcome.transfers[i]),
            Cell::num(outcome.per_agent_utility[i]),
        ]);
    }
    report.tables.push(t);

    if let Some(grid) = m.grid {
        let grid = match opts.grid_step {
            Some(step) => grid.with_step(step),
            None => grid,
        };
        let points = grid.points();
        let verdict = groves::truthfulness_check(s, &points, DEFAULT_EVALUATION_CAP)?;
        report.kv("truthfulness_grid_points", Cell::int(points.len()));
        match verdict {
            Verdict::Dominant => report.kv("truthful_reporting", Cell::text("dominant")),
            Verdict::Counterexample(c) => {
                report.kv("truthful_reporting", Cell::text("not dominant"));
                let mut t = Table::new(
                    "counterexample",
                    &["agent", "true_value", "opponent_reports", "misreport", "gain"],
                );
                let opp: Vec<String> = c.opponent_reports.iter().map(|v| v.to_string()).collect();
                t.push(vec![
                    Cell::int(c.agent + 1),
                    Cell::num(c.true_value),
                    Cell::text(opp.join(" ")),
                    Cell::num(c.misreport),
                    Cell::num(c.gain),
                ]);
                report.tables.push(t);
            }
        }
    }
    if s.convention() == TransferConvention::Literal {
        report.note("PAPER_LITERAL taxes each agent the sum of the others' net reports; truthful reporting is not dominant under this sign");
    }
    if opts.verify {
        let truthful_sum: f64 = s.valuations().iter().sum();
        if m.reports == s.valuations() && outcome.implemented != (truthful_sum >= s.cost()) {
            return Err(CliError::Verification(
                "decision under truthful reports disagrees with total value versus cost".into(),
            ));
        }
        if outcome.implemented {
            let sign = match s.convention() {
                TransferConvention::Literal => 1.0,
                TransferConvention::GrovesAligned => -1.0,
            };
            let expected = sign * (n as f64 - 1.0) * net_sum;
            if (outcome.revenue - expected).abs() > 1e-9 * (1.0 + expected.abs()) {
                return Err(CliError::Verification(format!(
                    "revenue {} differs from (n-1) * net reports = {expected}",
                    outcome.revenue
                )));
            }
        }
        report.note("verified: decision rule and revenue identity hold");
    }
    Ok(())
}

// ---------------------------------------------------------------- voting

fn vote_section(report: &mut Report, p: &PreferenceProfile, opts: &RunOptions) -> Result<(), CliError> {
    let m = pairwise_matrix(p);
    let alts = p.alternatives();
    report.kv("voters", Cell::int(p.voter_count()));
    report.kv("alternatives", Cell::text(alts.join(" < ")));
    let winner = condorcet_winner(&m);
    report.kv(
        "condorcet_winner",
        Cell::text(winner.map_or("none".to_string(), |w| alts[w].clone())),
    );
    let cycle = match has_majority_cycle(&m) {
        Ok(c) => c,
        Err(pubgoods::Error::Tie(a, b)) => {
            report.note(format!("pairwise tie between {a} and {b}: majority cycles are undefined"));
            None
        }
        Err(e) => return Err(e.into()),
    };
    report.kv(
        "majority_cycle",
        Cell::text(cycle.as_ref().map_or("none".to_string(), |c| c.labels(&m).join("→"))),
    );
    let sp = is_single_peaked(p);
    report.kv("single_peaked", Cell::Flag(sp.overall));
    match median_voter_outcome(p) {
        Ok(mv) => {
            report.kv("median_outcome", Cell::text(alts[mv.alternative].clone()));
            report.kv("median_voter", Cell::text(p.voters()[mv.voter].clone()));
        }
        Err(e) => report.note(format!("no median-voter outcome: {e}")),
    }

    let mut cols = vec!["alternative".to_string()];
    cols.extend(alts.iter().map(|a| format!("beats_{a}")));
    let mut t = Table {
        name: "pairwise_wins".into(),
        columns: cols,
        rows: Vec::new(),
    };
    for (i, a) in alts.iter().enumerate() {
        let mut row = vec![Cell::text(a.clone())];
        row.extend((0..alts.len()).map(|j| if i == j { Cell::text("-") } else { Cell::int(m.wins(i, j)) }));
        t.rows.push(row);
    }
    report.tables.push(t);

    let mut t = Table::new("voters", &["voter", "ranking", "peak", "single_peaked"]);
    for (v, ranking) in p.rankings().iter().enumerate() {
        let labels: Vec<&str> = ranking.iter().map(|&i| alts[i].as_str()).collect();
        t.push(vec![
            Cell::text(p.voters()[v].clone()),
            Cell::text(labels.join(" > ")),
            Cell::text(alts[ranking[0]].clone()),
            Cell::Flag(sp.per_voter[v]),
        ]);
    }
    report.tables.push(t);

    match (winner, &cycle) {
        (None, Some(c)) => report.note(format!(
            "no Condorcet winner; cycle {}",
            c.labels(&m).join("→")
        )),
        (Some(w), _) => report.note(format!("{} beats every other alternative by majority", alts[w])),
        (None, None) => {}
    }

    if opts.verify {
        // count pairwise majorities straight from the ballots
        let prefers = |r: &[usize], a: usize, b: usize| {
            r.iter().position(|&x| x == a) < r.iter().position(|&x| x == b)
        };
        let brute = (0..alts.len()).find(|&a| {
            (0..alts.len()).filter(|&b| b != a).all(|b| {
                2 * p.rankings().iter().filter(|r| prefers(r, a, b)).count() > p.voter_count()
            })
        });
        if brute != winner {
            return Err(CliError::Verification(
                "ballot count and majority matrix disagree on the Condorcet winner".into(),
            ));
        }
        if let Ok(mv) = median_voter_outcome(p) {
            if Some(mv.alternative) != winner {
                return Err(CliError::Verification(
                    "median voter's peak is not the Condorcet winner".into(),
                ));
            }
        }
        report.note("verified: Condorcet winner recounted from ballots");
    }
    Ok(())
}

// ---------------------------------------------------------------- fiscal

fn fiscal_section(report: &mut Report, f: &FiscalSpec, opts: &RunOptions) -> Result<(), CliError> {
    let model = &f.model;
    let n = model.voters();
    report.kv("voters", Cell::int(n));
    report.kv("mean_income", Cell::num(model.mean_income()));
    report.kv("tax_base", Cell::num(model.tax_base()));
    let eq = equilibrium_spending(model)?;
    report.kv("median_income", Cell::num(eq.median_income));
    report.kv("spending", Cell::num(eq.spending));
    report.kv("tax_rate", Cell::num(eq.tax_rate));
    report.kv("marginal_benefit", Cell::num(eq.marginal_benefit));
    report.kv("one_over_n", Cell::num(1.0 / n as f64));
    if eq.at_boundary {
        report.note("tax rate is exactly 1: the decisive voter wants the whole tax base spent");
    }
    let relation = if eq.median_income < model.mean_income() {
        "median income is below the mean, so marginal benefit is below 1/n (spending above the equal-income level)"
    } else if eq.median_income > model.mean_income() {
        "median income is above the mean, so marginal benefit exceeds 1/n (spending below the equal-income level)"
    } else {
        "median income equals the mean, so marginal benefit equals 1/n"
    };
    report.note(relation);

    let mut t = Table::new("voters", &["voter", "income", "preferred_spending"]);
    for (i, &y) in model.incomes().iter().enumerate() {
        t.push(vec![
            Cell::int(i + 1),
            Cell::num(y),
            Cell::num(preferred_spending(model, y)?),
        ]);
    }
    report.tables.push(t);

    if !f.alternative_medians.is_empty() {
        let sweep = skew_comparative_statics(model, &f.alternative_medians)?;
        let mut t = Table::new("median_sweep", &["median_income", "spending", "tax_rate", "marginal_benefit"]);
        for e in sweep {
            t.push(vec![
                Cell::num(e.median_income),
                Cell::num(e.spending),
                Cell::num(e.tax_rate),
                Cell::num(e.marginal_benefit),
            ]);
        }
        report.tables.push(t);
    }

    if opts.verify {
        let step = opts.grid_step.unwrap_or(DEFAULT_GRID_STEP);
        let base = model.tax_base();
        let y = eq.median_income;
        let benefit = model.benefit();
        let (mut best_g, mut best_v) = (0.0, f64::NEG_INFINITY);
        for k in 1..=((base / step).floor() as usize) {
            let g = k as f64 * step;
            let v = y - y / base * g + benefit.value(g);
            if v > best_v {
                best_v = v;
                best_g = g;
            }
        }
        if (best_g - eq.spending).abs() > step {
            return Err(CliError::Verification(format!(
                "median voter's grid optimum {best_g} differs from {}",
                eq.spending
            )));
        }
        report.note(format!(
            "verified: median voter's objective peaks within one grid step ({step}) of the equilibrium spending"
        ));
    }
    Ok(())
}
