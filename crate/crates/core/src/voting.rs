//! Pairwise majority voting over alternatives laid out on a policy axis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strict rankings of a fixed set of alternatives. The order of
/// `alternatives` is the policy axis (e.g. low < medium < high spending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferenceProfile {
    alternatives: Vec<String>,
    voters: Vec<String>,
    /// `rankings[v]` lists alternative indices, most preferred first.
    rankings: Vec<Vec<usize>>,
}

impl PreferenceProfile {
    /// Builds a profile from labelled rankings, most preferred first.
    pub fn new<S: AsRef<str>>(
        alternatives: &[S],
        ballots: &[(S, Vec<S>)],
    ) -> Result<Self> {
        let alternatives: Vec<String> = alternatives.iter().map(|a| a.as_ref().to_owned()).collect();
        if alternatives.is_empty() {
            return Err(Error::Validation("profile needs at least one alternative".into()));
        }
        for (i, a) in alternatives.iter().enumerate() {
            if alternatives[..i].contains(a) {
                return Err(Error::Validation(format!("duplicate alternative {a:?}")));
            }
        }
        if ballots.is_empty() {
            return Err(Error::Validation("profile needs at least one voter".into()));
        }
        let mut voters = Vec::with_capacity(ballots.len());
        let mut rankings = Vec::with_capacity(ballots.len());
        for (name, ranking) in ballots {
            let name = name.as_ref();
            let mut seen = vec![false; alternatives.len()];
            let mut order = Vec::with_capacity(ranking.len());
            for label in ranking {
                let label = label.as_ref();
                let idx = alternatives.iter().position(|a| a == label).ok_or_else(|| {
                    Error::Validation(format!("voter {name:?} ranks unknown alternative {label:?}"))
                })?;
                if std::mem::replace(&mut seen[idx], true) {
                    return Err(Error::Validation(format!(
                        "voter {name:?} ranks {label:?} more than once"
                    )));
                }
                order.push(idx);
            }
            if order.len() != alternatives.len() {
                return Err(Error::Validation(format!(
                    "voter {name:?} ranks {} of {} alternatives",
                    order.len(),
                    alternatives.len()
                )));
            }
            voters.push(name.to_owned());
            rankings.push(order);
        }
        Ok(Self {
            alternatives,
            voters,
            rankings,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn voters(&self) -> &[String] {
        &self.voters
    }

    pub fn rankings(&self) -> &[Vec<usize>] {
        &self.rankings
    }

    pub fn voter_count(&self) -> usize {
        self.rankings.len()
    }

    /// Axis position of each voter's top choice.
    pub fn peaks(&self) -> Vec<usize> {
        self.rankings.iter().map(|r| r[0]).collect()
    }
}

/// Pairwise majority counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorityMatrix {
    alternatives: Vec<String>,
    voters: usize,
    /// `wins[a][b]` voters rank `a` above `b`.
    wins: Vec<Vec<usize>>,
}

impl MajorityMatrix {
    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    pub fn wins(&self, a: usize, b: usize) -> usize {
        self.wins[a][b]
    }

    /// Does `a` beat `b` by a strict majority?
    pub fn beats(&self, a: usize, b: usize) -> bool {
        a != b && 2 * self.wins[a][b] > self.voters
    }
}

pub fn pairwise_matrix(profile: &PreferenceProfile) -> MajorityMatrix {
    let k = profile.alternatives.len();
    let mut wins = vec![vec![0; k]; k];
    for ranking in &profile.rankings {
        for (pos, &a) in ranking.iter().enumerate() {
            for &b in &ranking[pos + 1..] {
                wins[a][b] += 1;
            }
        }
    }
    MajorityMatrix {
        alternatives: profile.alternatives.clone(),
        voters: profile.voter_count(),
        wins,
    }
}

/// The alternative beating every other one by strict majority, if any.
pub fn condorcet_winner(matrix: &MajorityMatrix) -> Option<usize> {
    let k = matrix.alternatives.len();
    (0..k).find(|&a| (0..k).all(|b| b == a || matrix.beats(a, b)))
}

/// Directed cycle in the majority tournament, e.g. `[A, B, C, A]` when A
/// beats B, B beats C and C beats A.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorityCycle {
    /// Alternative indices, first repeated at the end.
    pub path: Vec<usize>,
}

impl MajorityCycle {
    pub fn labels<'a>(&self, matrix: &'a MajorityMatrix) -> Vec<&'a str> {
        self.path.iter().map(|&i| matrix.alternatives[i].as_str()).collect()
    }
}

/// First cycle found by depth-first search from the lowest-indexed
/// alternative, following edges in index order. Pairwise ties are an error
/// because the tournament is then undefined.
pub fn has_majority_cycle(matrix: &MajorityMatrix) -> Result<Option<MajorityCycle>> {
    let k = matrix.alternatives.len();
    for a in 0..k {
        for b in a + 1..k {
            if matrix.wins[a][b] == matrix.wins[b][a] {
                return Err(Error::Tie(
                    matrix.alternatives[a].clone(),
                    matrix.alternatives[b].clone(),
                ));
            }
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        OnStack,
        Done,
    }
    let mut mark = vec![Mark::New; k];
    let mut stack: Vec<usize> = Vec::new();

    fn visit(
        u: usize,
        matrix: &MajorityMatrix,
        mark: &mut [Mark],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        mark[u] = Mark::OnStack;
        stack.push(u);
        for v in 0..mark.len() {
            if !matrix.beats(u, v) {
                continue;
            }
            match mark[v] {
                Mark::OnStack => {
                    let start = stack.iter().position(|&w| w == v).unwrap();
                    let mut path = stack[start..].to_vec();
                    path.push(v);
                    return Some(path);
                }
                Mark::New => {
                    if let Some(p) = visit(v, matrix, mark, stack) {
                        return Some(p);
                    }
                }
                Mark::Done => {}
            }
        }
        stack.pop();
        mark[u] = Mark::Done;
        None
    }

    for s in 0..k {
        if mark[s] == Mark::New {
            if let Some(path) = visit(s, matrix, &mut mark, &mut stack) {
                return Ok(Some(MajorityCycle { path }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinglePeakedness {
    pub per_voter: Vec<bool>,
    pub overall: bool,
}

/// A ranking is single-peaked on the axis when preference strictly rises up
/// to the top choice and strictly falls after it.
pub fn is_single_peaked(profile: &PreferenceProfile) -> SinglePeakedness {
    let k = profile.alternatives.len();
    let per_voter: Vec<bool> = profile
        .rankings
        .iter()
        .map(|ranking| {
            // score[pos]: higher is better
            let mut score = vec![0usize; k];
            for (place, &alt) in ranking.iter().enumerate() {
                score[alt] = k - place;
            }
            let peak = ranking[0];
            score[..=peak].windows(2).all(|w| w[0] < w[1])
                && score[peak..].windows(2).all(|w| w[0] > w[1])
        })
        .collect();
    let overall = per_voter.iter().all(|&b| b);
    SinglePeakedness { per_voter, overall }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MedianOutcome {
    /// Axis index of the median peak.
    pub alternative: usize,
    /// A voter whose peak is the median.
    pub voter: usize,
}

/// Median of the voters' peaks. Requires single-peaked preferences and an
/// odd electorate.
pub fn median_voter_outcome(profile: &PreferenceProfile) -> Result<MedianOutcome> {
    let sp = is_single_peaked(profile);
    if !sp.overall {
        let failing = sp
            .per_voter
            .iter()
            .enumerate()
            .filter(|(_, &ok)| !ok)
            .map(|(i, _)| i)
            .collect();
        return Err(Error::NotSinglePeaked(failing));
    }
    let n = profile.voter_count();
    if n.is_multiple_of(2) {
        return Err(Error::Ambiguous(format!(
            "{n} voters: the median peak is an interval"
        )));
    }
    let mut by_peak: Vec<(usize, usize)> = profile
        .peaks()
        .into_iter()
        .enumerate()
        .map(|(voter, peak)| (peak, voter))
        .collect();
    by_peak.sort_unstable();
    let (alternative, voter) = by_peak[n / 2];
    Ok(MedianOutcome { alternative, voter })
}
