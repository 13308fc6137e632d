//! Coupled Stackelberg games, leader strategies and commitment sets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp::{lp_solve, LinearProgram, Sense};
use crate::rational::{dot, Rational};

pub type Matrix = Vec<Vec<Rational>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("game has no followers")]
    EmptyFollowerList,
    #[error("dimension mismatch in follower {follower} ({matrix}): {detail}")]
    DimensionMismatch { follower: String, matrix: &'static str, detail: String },
    #[error("non-rational entry {found} in follower {follower} ({matrix}) at row {row}, column {col}")]
    NonRationalEntry { follower: String, matrix: &'static str, row: usize, col: usize, found: String },
    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),
    #[error("invalid commitment set: {0}")]
    InvalidCommitment(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("unknown example {0:?} (expected zs-gap, coupling-gap, pure-unbounded or frac-opt)")]
    UnknownExample(String),
    #[error("example {example} requires parameter {param}")]
    MissingParam { example: String, param: String },
    #[error("example {example} does not take parameter {param}")]
    UnexpectedParam { example: String, param: String },
}

/// A probability vector with exact rational weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MixedStrategy(Vec<Rational>);

impl MixedStrategy {
    pub fn new(weights: Vec<Rational>) -> Result<Self, ValidationError> {
        if weights.is_empty() {
            return Err(ValidationError::InvalidStrategy("no actions".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(ValidationError::InvalidStrategy(format!("negative weight {w}")));
        }
        let total: Rational = weights.iter().sum();
        if total != Rational::one() {
            return Err(ValidationError::InvalidStrategy(format!("weights sum to {total}")));
        }
        Ok(MixedStrategy(weights))
    }

    /// Wraps weights already known to form a distribution.
    pub fn from_weights_unchecked(weights: Vec<Rational>) -> Self {
        debug_assert!(MixedStrategy::new(weights.clone()).is_ok(), "not a distribution");
        MixedStrategy(weights)
    }

    pub fn pure(actions: usize, index: usize) -> Self {
        assert!(index < actions, "pure action out of range");
        let mut w = vec![Rational::zero(); actions];
        w[index] = Rational::one();
        MixedStrategy(w)
    }

    /// The two-action strategy `(1 − p, p)`.
    pub fn two_point(p: &Rational) -> Self {
        assert!(!p.is_negative() && p <= &Rational::one(), "probability outside [0,1]");
        MixedStrategy(vec![Rational::one() - p, p.clone()])
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn pure_index(&self) -> Option<usize> {
        match self.support().as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }

    /// `(1 − t)·self + t·other`.
    pub fn mix(&self, other: &Self, t: &Rational) -> Self {
        let s = Rational::one() - t;
        MixedStrategy(self.0.iter().zip(&other.0).map(|(a, b)| &(&s * a) + &(t * b)).collect())
    }
}

impl fmt::Display for MixedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// One follower's bimatrix game against the leader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FollowerGame {
    pub name: String,
    /// Rows are leader actions, columns follower actions.
    pub follower_payoff: Matrix,
    pub leader_payoff: Matrix,
}

impl FollowerGame {
    pub fn new(name: impl Into<String>, follower_payoff: Matrix, leader_payoff: Matrix) -> Self {
        FollowerGame { name: name.into(), follower_payoff, leader_payoff }
    }

    pub fn rows(&self) -> usize {
        self.follower_payoff.len()
    }

    pub fn cols(&self) -> usize {
        self.follower_payoff.first().map_or(0, Vec::len)
    }

    /// Expected payoff of each follower action against leader strategy `p`.
    pub fn follower_values(&self, p: &MixedStrategy) -> Vec<Rational> {
        column_values(&self.follower_payoff, p)
    }

    pub fn leader_values(&self, p: &MixedStrategy) -> Vec<Rational> {
        column_values(&self.leader_payoff, p)
    }

    pub fn negated_for_leader(&self) -> bool {
        self.follower_payoff
            .iter()
            .flatten()
            .zip(self.leader_payoff.iter().flatten())
            .all(|(f, l)| *l == -f)
    }

    fn validate(&self, n: usize) -> Result<(), ValidationError> {
        for (label, m) in [("follower_payoff", &self.follower_payoff), ("leader_payoff", &self.leader_payoff)] {
            let mismatch = |detail: String| ValidationError::DimensionMismatch {
                follower: self.name.clone(),
                matrix: label,
                detail,
            };
            if m.len() != n {
                return Err(mismatch(format!("{} rows, leader has {n} actions", m.len())));
            }
            let cols = self.cols();
            if cols == 0 {
                return Err(mismatch("no follower actions".into()));
            }
            if let Some((i, row)) = m.iter().enumerate().find(|(_, r)| r.len() != cols) {
                return Err(mismatch(format!("row {i} has {} columns, expected {cols}", row.len())));
            }
        }
        Ok(())
    }
}

fn column_values(m: &Matrix, p: &MixedStrategy) -> Vec<Rational> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); cols];
    for (w, row) in p.weights().iter().zip(m) {
        if w.is_zero() {
            continue;
        }
        for (o, a) in out.iter_mut().zip(row) {
            if !a.is_zero() {
                *o += &(w * a);
            }
        }
    }
    out
}

/// A leader broadcasting one commitment to several followers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoupledGame {
    pub leader_actions: usize,
    pub followers: Vec<FollowerGame>,
}

impl CoupledGame {
    pub fn new(leader_actions: usize, followers: Vec<FollowerGame>) -> Result<Self, ValidationError> {
        let g = CoupledGame { leader_actions, followers };
        validate(&g)?;
        Ok(g)
    }

    pub fn follower_count(&self) -> usize {
        self.followers.len()
    }

    pub fn is_zero_sum(&self) -> bool {
        self.followers.iter().all(FollowerGame::negated_for_leader)
    }

    /// The game against follower `index` alone.
    pub fn restricted_to(&self, index: usize) -> CoupledGame {
        CoupledGame { leader_actions: self.leader_actions, followers: vec![self.followers[index].clone()] }
    }

    /// Every payoff multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> CoupledGame {
        let scale = |m: &Matrix| m.iter().map(|r| r.iter().map(|v| v * factor).collect()).collect();
        CoupledGame {
            leader_actions: self.leader_actions,
            followers: self
                .followers
                .iter()
                .map(|f| FollowerGame::new(f.name.clone(), scale(&f.follower_payoff), scale(&f.leader_payoff)))
                .collect(),
        }
    }

    /// Leader's total expected payoff at `p` against fixed follower mixtures.
    pub fn leader_total(&self, p: &MixedStrategy, responses: &[MixedStrategy]) -> Rational {
        self.followers
            .iter()
            .zip(responses)
            .map(|(f, q)| dot(&f.leader_values(p), q.weights()))
            .sum()
    }
}

/// Checks every structural invariant of a game.
pub fn validate(game: &CoupledGame) -> Result<(), ValidationError> {
    if game.followers.is_empty() {
        return Err(ValidationError::EmptyFollowerList);
    }
    if game.leader_actions == 0 {
        return Err(ValidationError::DimensionMismatch {
            follower: game.followers[0].name.clone(),
            matrix: "follower_payoff",
            detail: "leader needs at least one action".into(),
        });
    }
    for f in &game.followers {
        f.validate(game.leader_actions)?;
        if f.leader_payoff[0].len() != f.cols() {
            return Err(ValidationError::DimensionMismatch {
                follower: f.name.clone(),
                matrix: "leader_payoff",
                detail: format!("{} columns, follower payoff has {}", f.leader_payoff[0].len(), f.cols()),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TieBreak {
    LeaderFavorable,
    LexicographicFirst,
    Adversarial,
}

impl TieBreak {
    pub const ALL: [TieBreak; 3] = [TieBreak::LeaderFavorable, TieBreak::LexicographicFirst, TieBreak::Adversarial];

    pub fn as_str(self) -> &'static str {
        match self {
            TieBreak::LeaderFavorable => "leader",
            TieBreak::LexicographicFirst => "lex",
            TieBreak::Adversarial => "adversarial",
        }
    }
}

impl FromStr for TieBreak {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "leader" => Ok(TieBreak::LeaderFavorable),
            "lex" => Ok(TieBreak::LexicographicFirst),
            "adversarial" => Ok(TieBreak::Adversarial),
            other => Err(format!("unknown tie-break {other:?}")),
        }
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommitmentKind {
    Singleton,
    PureSubset,
    Interval { lower: Rational, upper: Rational },
    GeneralPolytope,
}

/// A closed convex set of leader strategies given by its extreme points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommitmentSet {
    extreme_points: Vec<MixedStrategy>,
    kind: CommitmentKind,
}

impl CommitmentSet {
    pub fn singleton(p: MixedStrategy) -> Self {
        CommitmentSet { extreme_points: vec![p], kind: CommitmentKind::Singleton }
    }

    /// Pure strategies `indices` (sorted, deduplicated) over `n` actions.
    pub fn pure_subset(n: usize, indices: &[usize]) -> Result<Self, ValidationError> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.is_empty() {
            return Err(ValidationError::InvalidCommitment("empty pure subset".into()));
        }
        if idx.iter().any(|&i| i >= n) {
            return Err(ValidationError::InvalidCommitment(format!("pure action out of range for {n} actions")));
        }
        Ok(CommitmentSet {
            extreme_points: idx.iter().map(|&i| MixedStrategy::pure(n, i)).collect(),
            kind: CommitmentKind::PureSubset,
        })
    }

    pub fn full_simplex(n: usize) -> Self {
        CommitmentSet::pure_subset(n, &(0..n).collect::<Vec<_>>()).expect("n > 0")
    }

    /// `{(1 − p, p) : lower ≤ p ≤ upper}`; collapses to a singleton when the ends meet.
    pub fn interval(lower: Rational, upper: Rational) -> Result<Self, ValidationError> {
        if lower.is_negative() || upper > Rational::one() || lower > upper {
            return Err(ValidationError::InvalidCommitment(format!("bad interval [{lower}, {upper}]")));
        }
        if lower == upper {
            return Ok(CommitmentSet::singleton(MixedStrategy::two_point(&lower)));
        }
        Ok(CommitmentSet {
            extreme_points: vec![MixedStrategy::two_point(&lower), MixedStrategy::two_point(&upper)],
            kind: CommitmentKind::Interval { lower, upper },
        })
    }

    /// Arbitrary extreme points; duplicates and redundant points are rejected.
    pub fn polytope(points: Vec<MixedStrategy>) -> Result<Self, ValidationError> {
        let Some(first) = points.first() else {
            return Err(ValidationError::InvalidCommitment("no extreme points".into()));
        };
        let n = first.len();
        if points.iter().any(|p| p.len() != n) {
            return Err(ValidationError::InvalidCommitment("extreme points differ in length".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(ValidationError::InvalidCommitment(format!("duplicate extreme point {p}")));
            }
        }
        for i in 0..points.len() {
            if points.len() > 1 && in_hull_of_others(&points, i) {
                return Err(ValidationError::InvalidCommitment(format!(
                    "{} is a convex combination of the other points",
                    points[i]
                )));
            }
        }
        let kind = if points.len() == 1 {
            CommitmentKind::Singleton
        } else if points.iter().all(|p| p.pure_index().is_some()) {
            CommitmentKind::PureSubset
        } else {
            CommitmentKind::GeneralPolytope
        };
        Ok(CommitmentSet { extreme_points: points, kind })
    }

    /// `self` with `point` appended without any minimality check.
    pub fn with_redundant_point(&self, point: MixedStrategy) -> Self {
        let mut extreme_points = self.extreme_points.clone();
        extreme_points.push(point);
        CommitmentSet { extreme_points, kind: CommitmentKind::GeneralPolytope }
    }

    pub fn extreme_points(&self) -> &[MixedStrategy] {
        &self.extreme_points
    }

    pub fn kind(&self) -> &CommitmentKind {
        &self.kind
    }

    pub fn action_count(&self) -> usize {
        self.extreme_points[0].len()
    }

    /// Interval endpoints for two-action commitments, singletons included.
    pub fn interval_bounds(&self) -> Option<(Rational, Rational)> {
        match &self.kind {
            CommitmentKind::Interval { lower, upper } => Some((lower.clone(), upper.clone())),
            CommitmentKind::Singleton if self.action_count() == 2 => {
                let p = self.extreme_points[0].weights()[1].clone();
                Some((p.clone(), p))
            }
            _ => None,
        }
    }

    pub fn pure_indices(&self) -> Option<Vec<usize>> {
        self.extreme_points.iter().map(MixedStrategy::pure_index).collect()
    }
}

impl fmt::Display for CommitmentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((lo, hi)) = self.interval_bounds() {
            return write!(f, "[{lo}, {hi}]");
        }
        if let Some(idx) = self.pure_indices() {
            let names: Vec<String> = idx.iter().map(|i| format!("a{i}")).collect();
            return write!(f, "{{{}}}", names.join(","));
        }
        let pts: Vec<String> = self.extreme_points.iter().map(ToString::to_string).collect();
        write!(f, "co{{{}}}", pts.join(", "))
    }
}

fn in_hull_of_others(points: &[MixedStrategy], i: usize) -> bool {
    let others: Vec<&MixedStrategy> = points.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, p)| p).collect();
    let mut lp = LinearProgram::new(vec![Rational::zero(); others.len()]);
    lp.add_row(vec![Rational::one(); others.len()], Sense::Eq, Rational::one());
    for a in 0..points[i].len() {
        lp.add_row(others.iter().map(|p| p.weights()[a].clone()).collect(), Sense::Eq, points[i].weights()[a].clone());
    }
    lp_solve(&lp).is_optimal()
}

#[derive(Clone)]
enum Entry {
    Value(Rational),
    Invalid(String),
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        let text = match &value {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            other => return Ok(Entry::Invalid(other.to_string())),
        };
        text.parse::<Rational>().map(Entry::Value).map_err(serde::de::Error::custom)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FollowerFile {
    #[serde(default)]
    name: Option<String>,
    follower_payoff: Vec<Vec<Entry>>,
    leader_payoff: Vec<Vec<Entry>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    leader_actions: usize,
    followers: Vec<FollowerFile>,
}

#[derive(Serialize)]
struct FollowerOut<'a> {
    name: &'a str,
    follower_payoff: &'a Matrix,
    leader_payoff: &'a Matrix,
}

#[derive(Serialize)]
struct GameOut<'a> {
    leader_actions: usize,
    followers: Vec<FollowerOut<'a>>,
}

fn convert(name: &str, label: &'static str, raw: Vec<Vec<Entry>>) -> Result<Matrix, ValidationError> {
    raw.into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, e)| match e {
                    Entry::Value(v) => Ok(v),
                    Entry::Invalid(found) => Err(ValidationError::NonRationalEntry {
                        follower: name.to_string(),
                        matrix: label,
                        row: i,
                        col: j,
                        found,
                    }),
                })
                .collect()
        })
        .collect()
}

/// Parses and validates a game file.
pub fn parse_game(text: &[u8]) -> Result<CoupledGame, GameError> {
    let file: GameFile = serde_json::from_slice(text).map_err(|e| GameError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut followers = Vec::with_capacity(file.followers.len());
    for (i, f) in file.followers.into_iter().enumerate() {
        let name = f.name.unwrap_or_else(|| format!("F{}", i + 1));
        let fp = convert(&name, "follower_payoff", f.follower_payoff)?;
        let lp = convert(&name, "leader_payoff", f.leader_payoff)?;
        followers.push(FollowerGame::new(name, fp, lp));
    }
    Ok(CoupledGame::new(file.leader_actions, followers)?)
}

/// Canonical JSON encoding; integers stay integers, other values become `"a/b"`.
pub fn serialize_game(game: &CoupledGame) -> String {
    let out = GameOut {
        leader_actions: game.leader_actions,
        followers: game
            .followers
            .iter()
            .map(|f| FollowerOut { name: &f.name, follower_payoff: &f.follower_payoff, leader_payoff: &f.leader_payoff })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&out).expect("game serializes");
    s.push('\n');
    s
}

pub type Params = BTreeMap<String, Rational>;

fn take(example: &str, params: &Params, allowed: &[&str]) -> Result<Vec<Rational>, GameError> {
    if let Some(extra) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(GameError::UnexpectedParam { example: example.into(), param: extra.clone() });
    }
    allowed
        .iter()
        .map(|&p| {
            params
                .get(p)
                .cloned()
                .ok_or_else(|| GameError::MissingParam { example: example.into(), param: p.into() })
        })
        .collect()
}

fn ints(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect()
}

fn negate(m: &Matrix) -> Matrix {
    m.iter().map(|r| r.iter().map(|v| -v).collect()).collect()
}

fn zero_sum(name: &str, follower: Matrix) -> FollowerGame {
    let leader = negate(&follower);
    FollowerGame::new(name, follower, leader)
}

/// Games from the worked examples, parameterized as in their tables.
pub fn paper_example(name: &str, params: &Params) -> Result<CoupledGame, GameError> {
    let zero = Rational::zero;
    let one = Rational::one;
    let game = match name {
        "zs-gap" => {
            let [d] = <[Rational; 1]>::try_from(take(name, params, &["D"])?).expect("one param");
            CoupledGame::new(
                2,
                vec![
                    zero_sum("F1", vec![vec![d.clone(), one()], vec![zero(), one()]]),
                    zero_sum("F2", vec![vec![one(), zero()], vec![one(), d]]),
                ],
            )?
        }
        "coupling-gap" => {
            let [d] = <[Rational; 1]>::try_from(take(name, params, &["D"])?).expect("one param");
            CoupledGame::new(
                2,
                vec![
                    FollowerGame::new("F1", vec![vec![d.clone(), one()], vec![zero(), one()]], ints(&[&[0, 1], &[0, 0]])),
                    FollowerGame::new("F2", vec![vec![one(), zero()], vec![one(), d]], ints(&[&[0, 0], &[1, 0]])),
                ],
            )?
        }
        "pure-unbounded" => {
            let [b, c] = <[Rational; 2]>::try_from(take(name, params, &["B", "c"])?).expect("two params");
            let m1 = -Rational::one();
            CoupledGame::new(
                3,
                vec![
                    FollowerGame::new(
                        "F1",
                        vec![vec![b.clone(), one()], vec![zero(), one()], vec![zero(), m1.clone()]],
                        vec![vec![zero(), c.clone()], vec![zero(), zero()], vec![zero(), zero()]],
                    ),
                    FollowerGame::new(
                        "F2",
                        vec![vec![one(), zero()], vec![one(), b], vec![m1, zero()]],
                        vec![vec![zero(), zero()], vec![c, zero()], vec![zero(), zero()]],
                    ),
                ],
            )?
        }
        "frac-opt" => {
            take(name, params, &[])?;
            let r = crate::rational::rat;
            CoupledGame::new(
                2,
                vec![
                    FollowerGame::new(
                        "F1",
                        vec![vec![r(1, 1), r(0, 1), r(-2, 3)], vec![r(-4, 1), r(0, 1), r(1, 1)]],
                        ints(&[&[0, 2, 0], &[0, 2, 0]]),
                    ),
                    FollowerGame::new(
                        "F2",
                        vec![vec![r(1, 1), r(0, 1), r(-4, 1)], vec![r(-2, 3), r(0, 1), r(1, 1)]],
                        ints(&[&[0, 3, 0], &[0, 2, 0]]),
                    ),
                ],
            )?
        }
        other => return Err(GameError::UnknownExample(other.to_string())),
    };
    Ok(game)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn params(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), Rational::from(*v))).collect()
    }

    #[test]
    fn validation_errors() {
        let ok = FollowerGame::new("F1", ints(&[&[1, 0], &[0, 1]]), ints(&[&[0, 0], &[0, 0]]));
        assert!(CoupledGame::new(2, vec![ok.clone()]).is_ok());
        let tall = FollowerGame::new("F1", ints(&[&[1, 0], &[0, 1], &[2, 2]]), ints(&[&[0, 0], &[0, 0], &[0, 0]]));
        assert!(matches!(CoupledGame::new(2, vec![tall]), Err(ValidationError::DimensionMismatch { .. })));
        assert_eq!(CoupledGame::new(2, vec![]), Err(ValidationError::EmptyFollowerList));
        let skew = FollowerGame::new("F1", ints(&[&[1, 0], &[0, 1]]), ints(&[&[0], &[0]]));
        assert!(matches!(CoupledGame::new(2, vec![skew]), Err(ValidationError::DimensionMismatch { .. })));
    }

    #[test]
    fn parses_exact_entries() {
        let text = br#"{"leader_actions": 2, "followers": [
            {"name": "F1", "follower_payoff": [["0.5", 1], [-2, "3/4"]], "leader_payoff": [[0.25, 0], [0, "1e-2"]]}]}"#;
        let g = parse_game(text).unwrap();
        assert_eq!(g.followers[0].follower_payoff[0][0], rat(1, 2));
        assert_eq!(g.followers[0].follower_payoff[1][1], rat(3, 4));
        assert_eq!(g.followers[0].leader_payoff[0][0], rat(1, 4));
        assert_eq!(g.followers[0].leader_payoff[1][1], rat(1, 100));
    }

    #[test]
    fn malformed_fraction_reports_position() {
        let text = b"{\"leader_actions\": 1,\n \"followers\": [{\"follower_payoff\": [[\"3/\"]], \"leader_payoff\": [[0]]}]}";
        match parse_game(text) {
            Err(GameError::Syntax { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 1);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn non_numeric_entry_is_a_validation_error() {
        let text = br#"{"leader_actions": 1, "followers": [{"follower_payoff": [[true]], "leader_payoff": [[0]]}]}"#;
        assert!(matches!(
            parse_game(text),
            Err(GameError::Validation(ValidationError::NonRationalEntry { row: 0, col: 0, .. }))
        ));
    }

    #[test]
    fn examples_match_tables() {
        let zs = paper_example("zs-gap", &params(&[("D", 10)])).unwrap();
        assert!(zs.is_zero_sum());
        assert_eq!(zs.followers[0].follower_payoff, ints(&[&[10, 1], &[0, 1]]));
        assert_eq!(zs.followers[1].follower_payoff, ints(&[&[1, 0], &[1, 10]]));
        let fo = paper_example("frac-opt", &Params::new()).unwrap();
        assert_eq!(fo.followers[0].follower_payoff[0][2], rat(-2, 3));
        assert_eq!(fo.followers[1].leader_payoff, ints(&[&[0, 3, 0], &[0, 2, 0]]));
        let pu = paper_example("pure-unbounded", &params(&[("B", 100), ("c", 1)])).unwrap();
        assert_eq!(pu.leader_actions, 3);
        assert_eq!(pu.followers[1].follower_payoff, ints(&[&[1, 0], &[1, 100], &[-1, 0]]));
        assert!(matches!(paper_example("zs-gap", &Params::new()), Err(GameError::MissingParam { .. })));
        assert!(matches!(paper_example("nope", &Params::new()), Err(GameError::UnknownExample(_))));
    }

    #[test]
    fn round_trip_is_exact() {
        let g = paper_example("frac-opt", &Params::new()).unwrap();
        let text = serialize_game(&g);
        assert!(text.contains("\"-2/3\""));
        assert_eq!(parse_game(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn commitment_constructors() {
        assert!(CommitmentSet::interval(rat(1, 2), rat(1, 3)).is_err());
        let s = CommitmentSet::interval(rat(1, 3), rat(1, 3)).unwrap();
        assert_eq!(s.kind(), &CommitmentKind::Singleton);
        let mid = MixedStrategy::two_point(&rat(1, 2));
        let redundant = vec![MixedStrategy::pure(2, 0), MixedStrategy::pure(2, 1), mid.clone()];
        assert!(CommitmentSet::polytope(redundant).is_err());
        assert!(CommitmentSet::polytope(vec![mid.clone(), mid]).is_err());
        let tri = CommitmentSet::polytope(vec![MixedStrategy::pure(3, 2), MixedStrategy::pure(3, 0)]).unwrap();
        assert_eq!(tri.kind(), &CommitmentKind::PureSubset);
        assert_eq!(CommitmentSet::full_simplex(3).to_string(), "{a0,a1,a2}");
    }

    #[test]
    fn strategy_validation() {
        assert!(MixedStrategy::new(vec![rat(1, 2), rat(1, 2)]).is_ok());
        assert!(MixedStrategy::new(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(MixedStrategy::new(vec![rat(3, 2), rat(-1, 2)]).is_err());
    }
}
