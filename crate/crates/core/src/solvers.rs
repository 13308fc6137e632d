//! Optimal commitments: interval search for two-action leaders, classical and
//! decoupled baselines, pure-subset brute force and a grid oracle.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::{CommitmentSet, CoupledGame, MixedStrategy, TieBreak};
use crate::landscape::{LandscapeError, PreparedFollower, Segment};
use crate::lp::{lp_solve, LinearProgram, Sense};
use crate::rational::{dot, Rational};
use crate::responses::{evaluate_commitment, maxmin_response, ResponseOutcome};

pub const DEFAULT_PATTERN_BUDGET: u64 = 1_000_000;
pub const DEFAULT_SUBSET_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("this solver needs a two-action leader, the game has {0} actions")]
    WrongLeaderActionCount(usize),
    #[error("{what} needs {needed} candidates, above the budget of {budget}")]
    BudgetExceeded { what: &'static str, needed: String, budget: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl From<LandscapeError> for SolveError {
    fn from(e: LandscapeError) -> Self {
        match e {
            LandscapeError::WrongLeaderActionCount(n) => SolveError::WrongLeaderActionCount(n),
            LandscapeError::PreconditionViolated(m) => SolveError::InvalidParameter(m),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Classical,
    Ambiguous2xm,
    PureSubset,
    Decoupled,
    GridOracle,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Classical => "classical",
            Mode::Ambiguous2xm => "ambiguous-2xm",
            Mode::PureSubset => "pure-subset",
            Mode::Decoupled => "decoupled",
            Mode::GridOracle => "grid-oracle",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Mode::Classical, Mode::Ambiguous2xm, Mode::PureSubset, Mode::Decoupled, Mode::GridOracle]
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown mode {s:?}"))
    }
}

/// An explicit commitment with its re-verified worst-case value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub mode: Mode,
    pub tiebreak: TieBreak,
    pub commitment: CommitmentSet,
    pub value: Rational,
    pub per_follower: Vec<ResponseOutcome>,
    /// Leader's total payoff at each extreme point against the fixed responses.
    pub extreme_values: Vec<Rational>,
    pub candidates_examined: u64,
    pub epsilon_used: Option<Rational>,
}

impl SolveReport {
    /// Evaluates `commitment` from scratch and checks it against `claimed`.
    pub fn verified(
        g: &CoupledGame,
        mode: Mode,
        tiebreak: TieBreak,
        commitment: CommitmentSet,
        claimed: &Rational,
        candidates_examined: u64,
        epsilon_used: Option<Rational>,
    ) -> SolveReport {
        let ev = evaluate_commitment(g, &commitment, tiebreak);
        assert_eq!(&ev.w, claimed, "reported value disagrees with a fresh evaluation of {commitment}");
        SolveReport {
            mode,
            tiebreak,
            commitment,
            value: ev.w,
            per_follower: ev.responses,
            extreme_values: ev.extreme_values,
            candidates_examined,
            epsilon_used,
        }
    }
}

/// Leader payoff contributions at an interval's two ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalValue {
    pub lo: Rational,
    pub hi: Rational,
    pub w_lo: Rational,
    pub w_hi: Rational,
}

impl IntervalValue {
    pub fn w(&self) -> Rational {
        if self.lo == self.hi {
            self.w_lo.clone()
        } else {
            self.w_lo.clone().min(self.w_hi.clone())
        }
    }

    fn spread(&self) -> Rational {
        if self.lo == self.hi {
            Rational::zero()
        } else {
            (&self.w_lo - &self.w_hi).abs()
        }
    }

    /// Candidate order: larger `W`, then closer to consistent, then wider,
    /// then further left.
    fn rank(&self, other: &Self) -> Ordering {
        self.w()
            .cmp(&other.w())
            .then_with(|| other.spread().cmp(&self.spread()))
            .then_with(|| (&self.hi - &self.lo).cmp(&(&other.hi - &other.lo)))
            .then_with(|| other.lo.cmp(&self.lo))
    }

    pub fn commitment(&self) -> CommitmentSet {
        CommitmentSet::interval(self.lo.clone(), self.hi.clone()).expect("endpoints are ordered within [0,1]")
    }
}

/// Evaluates `W` of interval commitments through the closed-form landscape,
/// falling back to linear programming for followers whose weakly dominated
/// actions may carry optimal weight.
pub struct IntervalEvaluator<'g> {
    game: &'g CoupledGame,
    prepared: Vec<PreparedFollower>,
    tiebreak: TieBreak,
}

impl<'g> IntervalEvaluator<'g> {
    pub fn new(game: &'g CoupledGame, tiebreak: TieBreak) -> Result<Self, SolveError> {
        if game.leader_actions != 2 {
            return Err(SolveError::WrongLeaderActionCount(game.leader_actions));
        }
        let prepared = game.followers.iter().map(PreparedFollower::new).collect::<Result<_, _>>()?;
        Ok(IntervalEvaluator { game, prepared, tiebreak })
    }

    /// `{0, 1}` together with every follower's breakpoints, sorted.
    pub fn landmarks(&self) -> Vec<Rational> {
        let mut m = vec![Rational::zero(), Rational::one()];
        for p in &self.prepared {
            m.extend(p.breakpoints().iter().cloned());
        }
        m.sort();
        m.dedup();
        m
    }

    /// Candidate endpoint set `N` and the step actually used, halved
    /// until it is below half the smallest landmark gap.
    pub fn candidate_points(&self, eps: &Rational) -> (Vec<Rational>, Rational) {
        let landmarks = self.landmarks();
        let min_gap = landmarks.windows(2).map(|w| &w[1] - &w[0]).min().expect("0 and 1 are landmarks");
        let mut e = eps.clone();
        let two = Rational::from(2);
        while &e * &two >= min_gap {
            e = &e / &two;
        }
        (shifted_points(&landmarks, &e), e)
    }

    /// Tie-broken response of follower `fi` to `[lo, hi]`, as a face point.
    pub fn response(&self, fi: usize, lo: &Rational, hi: &Rational) -> MixedStrategy {
        let f = &self.game.followers[fi];
        match self.prepared[fi].face(lo, hi) {
            Some(seg) => {
                let lo_vals = f.leader_values(&MixedStrategy::two_point(lo));
                let hi_vals = f.leader_values(&MixedStrategy::two_point(hi));
                let s = select_on_segment(&seg, &lo_vals, (lo != hi).then_some(&hi_vals[..]), self.tiebreak);
                seg.point(&s, f.cols())
            }
            None => self.lp_response(fi, lo, hi),
        }
    }

    fn lp_response(&self, fi: usize, lo: &Rational, hi: &Rational) -> MixedStrategy {
        let c = CommitmentSet::interval(lo.clone(), hi.clone()).expect("ordered endpoints");
        maxmin_response(&c, &self.game.followers[fi], self.tiebreak).representative
    }

    pub fn evaluate(&self, lo: &Rational, hi: &Rational) -> IntervalValue {
        let points = [lo.clone(), hi.clone()];
        let table = self.leader_table(&points);
        self.evaluate_indexed(&points, &table, 0, 1)
    }

    /// `table[f][i][a]`: follower `f`'s contribution to the leader at `points[i]`.
    fn leader_table(&self, points: &[Rational]) -> Vec<Vec<Vec<Rational>>> {
        self.game
            .followers
            .iter()
            .map(|f| points.iter().map(|p| f.leader_values(&MixedStrategy::two_point(p))).collect())
            .collect()
    }

    fn evaluate_indexed(&self, points: &[Rational], table: &[Vec<Vec<Rational>>], i: usize, j: usize) -> IntervalValue {
        let (lo, hi) = (&points[i], &points[j]);
        let single = lo == hi;
        let (mut w_lo, mut w_hi) = (Rational::zero(), Rational::zero());
        for (fi, prepared) in self.prepared.iter().enumerate() {
            let (lv, hv) = (&table[fi][i], &table[fi][j]);
            match prepared.face(lo, hi) {
                Some(seg) => {
                    let s = select_on_segment(&seg, lv, (!single).then_some(&hv[..]), self.tiebreak);
                    w_lo += &segment_value(&seg, lv, &s);
                    w_hi += &segment_value(&seg, hv, &s);
                }
                None => {
                    let q = self.lp_response(fi, lo, hi);
                    w_lo += &dot(lv, q.weights());
                    w_hi += &dot(hv, q.weights());
                }
            }
        }
        IntervalValue { lo: lo.clone(), hi: hi.clone(), w_lo, w_hi }
    }

    /// Best interval with both endpoints in `points`, plus the number of
    /// intervals examined.
    pub fn search(&self, points: &[Rational]) -> (IntervalValue, u64) {
        let table = self.leader_table(points);
        let mut best: Option<IntervalValue> = None;
        let mut count = 0u64;
        for i in 0..points.len() {
            for j in i..points.len() {
                let cand = self.evaluate_indexed(points, &table, i, j);
                count += 1;
                if best.as_ref().is_none_or(|b| cand.rank(b) == Ordering::Greater) {
                    best = Some(cand);
                }
            }
        }
        (best.expect("at least one point"), count)
    }
}

fn segment_value(seg: &Segment, vals: &[Rational], s: &Rational) -> Rational {
    let a = &vals[seg.x];
    if seg.x == seg.y || s.is_zero() {
        return a.clone();
    }
    a + &(s * &(&vals[seg.y] - a))
}

/// Tie-broken point `s` of a face segment; `hi_vals` is absent for singletons.
fn select_on_segment(seg: &Segment, lo_vals: &[Rational], hi_vals: Option<&[Rational]>, t: TieBreak) -> Rational {
    let (smin, smax) = if seg.s_from <= seg.s_to {
        (seg.s_from.clone(), seg.s_to.clone())
    } else {
        (seg.s_to.clone(), seg.s_from.clone())
    };
    if seg.x == seg.y || smin == smax {
        return smin;
    }
    // Lexicographically first: more weight on the lower column index.
    let lex = |a: Rational, b: Rational| if seg.x < seg.y { a } else { b };
    let lines: Vec<(Rational, Rational)> = std::iter::once(lo_vals)
        .chain(hi_vals)
        .map(|v| (v[seg.x].clone(), &v[seg.y] - &v[seg.x]))
        .collect();
    let at = |(a, b): &(Rational, Rational), s: &Rational| a + &(b * s);
    match t {
        TieBreak::LexicographicFirst => lex(smin, smax),
        TieBreak::LeaderFavorable => {
            let g = |s: &Rational| lines.iter().map(|l| at(l, s)).min().expect("non-empty");
            let mut candidates = vec![smin.clone(), smax.clone()];
            if let [(a1, b1), (a2, b2)] = &lines[..] {
                if b1 != b2 {
                    let c = (a2 - a1) / (b1 - b2);
                    if smin < c && c < smax {
                        candidates.push(c);
                    }
                }
            }
            let best = candidates.iter().map(g).max().expect("non-empty");
            let (mut a, mut b) = (smin, smax);
            for (alpha, beta) in &lines {
                if beta.is_positive() {
                    a = a.max((&best - alpha) / beta);
                } else if beta.is_negative() {
                    b = b.min((&best - alpha) / beta);
                }
            }
            lex(a, b)
        }
        TieBreak::Adversarial => {
            let mut worst: Option<(Rational, usize)> = None;
            for (i, l) in lines.iter().enumerate() {
                let v = at(l, &smin).min(at(l, &smax));
                if worst.as_ref().is_none_or(|(w, _)| v < *w) {
                    worst = Some((v, i));
                }
            }
            let (_, i) = worst.expect("non-empty");
            let beta = &lines[i].1;
            if beta.is_positive() {
                smin
            } else if beta.is_negative() {
                smax
            } else {
                lex(smin, smax)
            }
        }
    }
}

/// `C = max_F max_a |u_{L_F}(1, a) − u_{L_F}(0, a)|`.
pub fn approximation_constant(g: &CoupledGame) -> Rational {
    g.followers
        .iter()
        .flat_map(|f| f.leader_payoff[1].iter().zip(&f.leader_payoff[0]).map(|(b, a)| (b - a).abs()))
        .max()
        .unwrap_or_else(Rational::zero)
}

fn shifted_points(landmarks: &[Rational], eps: &Rational) -> Vec<Rational> {
    let (zero, one) = (Rational::zero(), Rational::one());
    let mut n: Vec<Rational> = Vec::with_capacity(3 * landmarks.len());
    for m in landmarks {
        n.push(m.clone());
        n.push(m - eps);
        n.push(m + eps);
    }
    n.retain(|p| *p >= zero && *p <= one);
    n.sort();
    n.dedup();
    n
}

/// Approximately optimal interval commitment for a two-action leader.
pub fn algorithm1(g: &CoupledGame, eps: &Rational, t: TieBreak) -> Result<SolveReport, SolveError> {
    if !eps.is_positive() {
        return Err(SolveError::InvalidParameter(format!("epsilon must be positive, got {eps}")));
    }
    let ev = IntervalEvaluator::new(g, t)?;
    let (points, e) = ev.candidate_points(eps);
    let (best, count) = ev.search(&points);
    Ok(SolveReport::verified(g, Mode::Ambiguous2xm, t, best.commitment(), &best.w(), count, Some(e)))
}

/// Exhaustive search over intervals with endpoints on a regular grid
/// together with the landmarks and their `step` shifts.
pub fn grid_oracle(g: &CoupledGame, step: &Rational, t: TieBreak) -> Result<SolveReport, SolveError> {
    if !step.is_positive() || step > &Rational::one() {
        return Err(SolveError::InvalidParameter(format!("step must lie in (0, 1], got {step}")));
    }
    let ev = IntervalEvaluator::new(g, t)?;
    let mut points = shifted_points(&ev.landmarks(), step);
    let mut k = Rational::zero();
    while k < Rational::one() {
        points.push(k.clone());
        k += step;
    }
    points.sort();
    points.dedup();
    let (best, count) = ev.search(&points);
    Ok(SolveReport::verified(g, Mode::GridOracle, t, best.commitment(), &best.w(), count, Some(step.clone())))
}

/// Optimal classical commitment under leader-favorable tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalSolution {
    pub strategy: MixedStrategy,
    pub value: Rational,
    /// Follower actions induced at `strategy`.
    pub pattern: Vec<usize>,
    pub patterns_examined: u64,
}

fn incentive_rows(g: &CoupledGame, fi: usize, a: usize) -> Vec<Vec<Rational>> {
    let f = &g.followers[fi];
    (0..f.cols())
        .filter(|&b| b != a)
        .map(|b| (0..g.leader_actions).map(|i| &f.follower_payoff[i][a] - &f.follower_payoff[i][b]).collect())
        .collect()
}

fn simplex_program(n: usize, objective: Vec<Rational>, rows: &[Vec<Rational>]) -> LinearProgram {
    let mut lp = LinearProgram::new(objective);
    lp.add_row(vec![Rational::one(); n], Sense::Eq, Rational::one());
    for r in rows {
        lp.add_row(r.clone(), Sense::Ge, Rational::zero());
    }
    lp
}

/// Optimal Stackelberg commitment by enumerating inducible response patterns.
pub fn classical_coupled(g: &CoupledGame, budget: u64) -> Result<ClassicalSolution, SolveError> {
    let n = g.leader_actions;
    let k = g.follower_count();
    let feasible = |rows: &[Vec<Rational>]| lp_solve(&simplex_program(n, vec![Rational::zero(); n], rows)).is_optimal();
    let inducible: Vec<Vec<usize>> = (0..k)
        .map(|fi| (0..g.followers[fi].cols()).filter(|&a| feasible(&incentive_rows(g, fi, a))).collect())
        .collect();
    let total = inducible.iter().try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64));
    match total {
        Some(t) if t <= budget => {}
        _ => {
            let needed = inducible.iter().map(|s| s.len().to_string()).collect::<Vec<_>>().join("×");
            return Err(SolveError::BudgetExceeded { what: "classical pattern enumeration", needed, budget });
        }
    }

    struct Search<'a> {
        g: &'a CoupledGame,
        inducible: &'a [Vec<usize>],
        best: Option<(Rational, Vec<Rational>, Vec<usize>)>,
        examined: u64,
    }
    impl Search<'_> {
        fn visit(&mut self, depth: usize, rows: &mut Vec<Vec<Rational>>, pattern: &mut Vec<usize>) {
            let n = self.g.leader_actions;
            if depth == self.inducible.len() {
                let objective: Vec<Rational> = (0..n)
                    .map(|i| pattern.iter().enumerate().map(|(fi, &a)| self.g.followers[fi].leader_payoff[i][a].clone()).sum())
                    .collect();
                self.examined += 1;
                let sol = lp_solve(&simplex_program(n, objective, rows));
                if let (Some(v), Some(p)) = (sol.value, sol.point) {
                    if self.best.as_ref().is_none_or(|(b, _, _)| v > *b) {
                        self.best = Some((v, p, pattern.clone()));
                    }
                }
                return;
            }
            for &a in &self.inducible[depth] {
                let before = rows.len();
                rows.extend(incentive_rows(self.g, depth, a));
                let viable = depth + 1 == self.inducible.len()
                    || lp_solve(&simplex_program(n, vec![Rational::zero(); n], rows)).is_optimal();
                if viable {
                    pattern.push(a);
                    self.visit(depth + 1, rows, pattern);
                    pattern.pop();
                }
                rows.truncate(before);
            }
        }
    }
    let mut search = Search { g, inducible: &inducible, best: None, examined: 0 };
    search.visit(0, &mut Vec::new(), &mut Vec::new());
    let (value, point, pattern) = search.best.expect("every leader strategy induces some pattern");
    Ok(ClassicalSolution {
        strategy: MixedStrategy::from_weights_unchecked(point),
        value,
        pattern,
        patterns_examined: search.examined,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoupledSolution {
    pub per_follower: Vec<ClassicalSolution>,
    pub isv: Rational,
}

/// Sum of the followers' standalone Stackelberg values.
pub fn decoupled_isv(g: &CoupledGame, budget: u64) -> Result<DecoupledSolution, SolveError> {
    let per_follower = (0..g.follower_count())
        .map(|fi| classical_coupled(&g.restricted_to(fi), budget))
        .collect::<Result<Vec<_>, _>>()?;
    let isv = per_follower.iter().map(|s| &s.value).sum();
    Ok(DecoupledSolution { per_follower, isv })
}

/// Nonempty subsets of `0..n` ordered by size, then lexicographically.
pub fn subsets_by_size(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=n).flat_map(move |size| {
        let mut combo: Vec<usize> = (0..size).collect();
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = combo.clone();
            // Advance to the next combination in lexicographic order.
            match (0..size).rev().find(|&i| combo[i] < n - size + i) {
                Some(i) => {
                    combo[i] += 1;
                    for j in i + 1..size {
                        combo[j] = combo[j - 1] + 1;
                    }
                }
                None => done = true,
            }
            Some(out)
        })
    })
}

/// Best commitment whose extreme points are pure leader strategies.
pub fn pure_subset_bruteforce(g: &CoupledGame, t: TieBreak, budget: u64) -> Result<SolveReport, SolveError> {
    let n = g.leader_actions;
    let needed = if n >= 64 { None } else { Some((1u64 << n) - 1) };
    if needed.is_none_or(|c| c > budget) {
        return Err(SolveError::BudgetExceeded { what: "pure subset enumeration", needed: format!("2^{n} - 1"), budget });
    }
    let mut best: Option<(Rational, CommitmentSet)> = None;
    let mut examined = 0u64;
    for subset in subsets_by_size(n) {
        let c = CommitmentSet::pure_subset(n, &subset).expect("valid subset");
        let w = evaluate_commitment(g, &c, t).w;
        examined += 1;
        if best.as_ref().is_none_or(|(b, _)| w > *b) {
            best = Some((w, c));
        }
    }
    let (w, c) = best.expect("n >= 1");
    Ok(SolveReport::verified(g, Mode::PureSubset, t, c, &w, examined, None))
}

/// Whether the leader's payoff against the fixed responses to `commitment`
/// is equal at both interval ends.
pub fn consistency_check(g: &CoupledGame, commitment: &CommitmentSet, t: TieBreak) -> Result<bool, SolveError> {
    if g.leader_actions != 2 {
        return Err(SolveError::WrongLeaderActionCount(g.leader_actions));
    }
    if commitment.interval_bounds().is_none() {
        return Err(SolveError::InvalidParameter("consistency is defined for interval commitments".into()));
    }
    let ev = evaluate_commitment(g, commitment, t);
    Ok(ev.extreme_values.first() == ev.extreme_values.last())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{paper_example, FollowerGame, Params};
    use crate::rational::rat;

    fn ex(name: &str, params: &[(&str, i64)]) -> CoupledGame {
        let p: Params = params.iter().map(|(k, v)| (k.to_string(), Rational::from(*v))).collect();
        paper_example(name, &p).unwrap()
    }

    #[test]
    fn subsets_are_ordered() {
        let all: Vec<Vec<usize>> = subsets_by_size(3).collect();
        assert_eq!(all, vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn algorithm1_on_examples() {
        let eps = rat(1, 100);
        let fo = algorithm1(&ex("frac-opt", &[]), &eps, TieBreak::LeaderFavorable).unwrap();
        assert_eq!(fo.commitment.interval_bounds(), Some((rat(2, 5), rat(3, 5))));
        assert_eq!(fo.value, rat(22, 5));
        let zs = algorithm1(&ex("zs-gap", &[("D", 10)]), &eps, TieBreak::LeaderFavorable).unwrap();
        assert_eq!(zs.commitment.interval_bounds(), Some((rat(0, 1), rat(1, 1))));
        assert_eq!(zs.value, rat(-2, 1));
        let cg = algorithm1(&ex("coupling-gap", &[("D", 10)]), &eps, TieBreak::LeaderFavorable).unwrap();
        assert_eq!(cg.commitment.interval_bounds(), Some((rat(0, 1), rat(1, 1))));
        assert_eq!(cg.value, Rational::one());
        assert!(algorithm1(&ex("pure-unbounded", &[("B", 100), ("c", 1)]), &eps, TieBreak::LeaderFavorable).is_err());
    }

    #[test]
    fn epsilon_is_halved_below_half_the_landmark_gap() {
        let r = algorithm1(&ex("frac-opt", &[]), &rat(1, 2), TieBreak::LeaderFavorable).unwrap();
        // Landmarks 0, 1/5, 2/5, 3/5, 4/5, 1 have minimum gap 1/5.
        assert_eq!(r.epsilon_used, Some(rat(1, 16)));
        let fine = algorithm1(&ex("frac-opt", &[]), &rat(1, 100), TieBreak::LeaderFavorable).unwrap();
        assert_eq!(fine.epsilon_used, Some(rat(1, 100)));
    }

    #[test]
    fn classical_values() {
        assert_eq!(classical_coupled(&ex("zs-gap", &[("D", 10)]), DEFAULT_PATTERN_BUDGET).unwrap().value, rat(-10, 1));
        let cg = classical_coupled(&ex("coupling-gap", &[("D", 10)]), DEFAULT_PATTERN_BUDGET).unwrap();
        assert_eq!(cg.value, rat(1, 10));
        let g = ex("coupling-gap", &[("D", 10)]);
        assert_eq!(crate::responses::classical_payoff(&g, &cg.strategy, TieBreak::LeaderFavorable), cg.value);
        let trivial = CoupledGame::new(1, vec![FollowerGame::new("F", vec![vec![rat(0, 1)]], vec![vec![rat(5, 1)]])]).unwrap();
        assert_eq!(classical_coupled(&trivial, DEFAULT_PATTERN_BUDGET).unwrap().value, rat(5, 1));
        let fo = classical_coupled(&ex("frac-opt", &[]), DEFAULT_PATTERN_BUDGET).unwrap();
        assert!(fo.value <= rat(3, 1));
    }

    #[test]
    fn pattern_budget_is_enforced() {
        let g = ex("frac-opt", &[]);
        assert!(matches!(classical_coupled(&g, 4), Err(SolveError::BudgetExceeded { .. })));
    }

    #[test]
    fn decoupled_values() {
        let cg = decoupled_isv(&ex("coupling-gap", &[("D", 10)]), DEFAULT_PATTERN_BUDGET).unwrap();
        assert_eq!(cg.per_follower.iter().map(|s| s.value.clone()).collect::<Vec<_>>(), vec![rat(1, 10), rat(1, 10)]);
        assert_eq!(cg.isv, rat(1, 5));
        assert_eq!(decoupled_isv(&ex("pure-unbounded", &[("B", 100), ("c", 1)]), DEFAULT_PATTERN_BUDGET).unwrap().isv, rat(1, 50));
        assert_eq!(decoupled_isv(&ex("zs-gap", &[("D", 10)]), DEFAULT_PATTERN_BUDGET).unwrap().isv, rat(-2, 1));
    }

    #[test]
    fn pure_subsets() {
        let g = ex("pure-unbounded", &[("B", 100), ("c", 1)]);
        let r = pure_subset_bruteforce(&g, TieBreak::LeaderFavorable, DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!(r.commitment.pure_indices(), Some(vec![0, 1]));
        assert_eq!(r.value, Rational::one());
        assert_eq!(evaluate_commitment(&g, &CommitmentSet::full_simplex(3), TieBreak::LeaderFavorable).w, Rational::zero());
        assert!(matches!(pure_subset_bruteforce(&g, TieBreak::LeaderFavorable, 6), Err(SolveError::BudgetExceeded { .. })));
    }

    #[test]
    fn grid_oracle_on_examples() {
        let fo = grid_oracle(&ex("frac-opt", &[]), &rat(1, 100), TieBreak::LeaderFavorable).unwrap();
        assert_eq!(fo.value, rat(22, 5));
        assert_eq!(fo.commitment.interval_bounds(), Some((rat(2, 5), rat(3, 5))));
        assert_eq!(grid_oracle(&ex("zs-gap", &[("D", 10)]), &rat(1, 100), TieBreak::LeaderFavorable).unwrap().value, rat(-2, 1));
    }

    #[test]
    fn consistency() {
        let zs = ex("zs-gap", &[("D", 10)]);
        let t = TieBreak::LeaderFavorable;
        assert!(consistency_check(&zs, &CommitmentSet::interval(rat(0, 1), rat(1, 1)).unwrap(), t).unwrap());
        let fo = ex("frac-opt", &[]);
        assert!(!consistency_check(&fo, &CommitmentSet::interval(rat(2, 5), rat(3, 5)).unwrap(), t).unwrap());
        assert!(consistency_check(&fo, &CommitmentSet::interval(rat(1, 3), rat(1, 3)).unwrap(), t).unwrap());
    }

    #[test]
    fn interval_evaluator_matches_lp_on_examples() {
        for g in [ex("frac-opt", &[]), ex("zs-gap", &[("D", 10)]), ex("coupling-gap", &[("D", 4)])] {
            for t in TieBreak::ALL {
                let ev = IntervalEvaluator::new(&g, t).unwrap();
                let pts: Vec<Rational> = (0..=20).map(|k| rat(k, 20)).chain(ev.landmarks()).collect();
                for lo in &pts {
                    for hi in pts.iter().filter(|h| *h >= lo) {
                        let c = CommitmentSet::interval(lo.clone(), hi.clone()).unwrap();
                        let exact = evaluate_commitment(&g, &c, t);
                        assert_eq!(ev.evaluate(lo, hi).w(), exact.w, "{t} [{lo}, {hi}]");
                        for fi in 0..g.follower_count() {
                            assert_eq!(ev.response(fi, lo, hi), exact.responses[fi].representative);
                        }
                    }
                }
            }
        }
    }
}
