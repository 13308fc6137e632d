//! Best-response structure of followers facing a two-action leader.
//!
//! A leader strategy is identified with `p`, the weight on her second
//! action. Follower action `j` then earns `U_j(p) = (1 − p)·w_j + p·v_j`,
//! a line with slope `v_j − w_j`.

use std::cmp::Ordering;

use thiserror::Error;

use crate::game::{FollowerGame, MixedStrategy};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LandscapeError {
    #[error("landscape needs a two-action leader, found {0} actions")]
    WrongLeaderActionCount(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Payoffs of one follower action under the leader's two pure actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub w: Rational,
    pub v: Rational,
}

impl Line {
    pub fn slope(&self) -> Rational {
        &self.v - &self.w
    }

    pub fn at(&self, p: &Rational) -> Rational {
        &self.w + &(p * &self.slope())
    }
}

fn lines_of(f: &FollowerGame) -> Result<Vec<Line>, LandscapeError> {
    if f.rows() != 2 {
        return Err(LandscapeError::WrongLeaderActionCount(f.rows()));
    }
    Ok((0..f.cols())
        .map(|j| Line { w: f.follower_payoff[0][j].clone(), v: f.follower_payoff[1][j].clone() })
        .collect())
}

/// A follower game restricted to its undominated actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub game: FollowerGame,
    /// Original column of every surviving action, ascending.
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
}

impl Reduced {
    /// Lifts a strategy over surviving actions back to the original columns.
    pub fn lift(&self, q: &MixedStrategy, original_cols: usize) -> MixedStrategy {
        let mut w = vec![Rational::zero(); original_cols];
        for (&col, x) in self.kept.iter().zip(q.weights()) {
            w[col] = x.clone();
        }
        MixedStrategy::from_weights_unchecked(w)
    }
}

/// Keeps exactly the actions that are the unique maximum on some open
/// subinterval of `[0, 1]`; among identical lines the lowest column wins.
pub fn remove_weakly_dominated(f: &FollowerGame) -> Result<Reduced, LandscapeError> {
    let lines = lines_of(f)?;
    let m = lines.len();
    let mut kept = Vec::new();
    let mut removed = Vec::new();
    for j in 0..m {
        let duplicate = lines[..j].contains(&lines[j]);
        if !duplicate && dominance_region(&lines, j).is_some_and(|(lo, hi)| lo < hi) {
            kept.push(j);
        } else {
            removed.push(j);
        }
    }
    let pick = |m: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        m.iter().map(|row| kept.iter().map(|&j| row[j].clone()).collect()).collect()
    };
    let game = FollowerGame::new(f.name.clone(), pick(&f.follower_payoff), pick(&f.leader_payoff));
    Ok(Reduced { game, kept, removed })
}

/// `{p ∈ [0,1] : U_j(p) ≥ U_k(p) for all k}` as a closed interval, ignoring
/// exact duplicates of line `j`.
fn dominance_region(lines: &[Line], j: usize) -> Option<(Rational, Rational)> {
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    let sj = lines[j].slope();
    for (k, other) in lines.iter().enumerate() {
        if k == j || *other == lines[j] {
            continue;
        }
        let dw = &lines[j].w - &other.w;
        let ds = &sj - &other.slope();
        match ds.signum() {
            0 if !dw.is_positive() => return None,
            0 => {}
            1 => lo = lo.max(-&dw / &ds),
            _ => hi = hi.min(-&dw / &ds),
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Slope-sign transition of the upper envelope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transition {
    /// No zero-slope action; `mu` is where the envelope turns upward.
    SignChange { x: Option<usize>, y: Option<usize>, mu: Rational },
    /// The envelope is flat on `[mu_minus, mu_plus]`, attained by `flat`.
    Flat { x: Option<usize>, flat: usize, y: Option<usize>, mu_minus: Rational, mu_plus: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Landscape {
    /// Columns ordered by strictly increasing slope.
    pub ordered_actions: Vec<usize>,
    pub lines: Vec<Line>,
    /// `breakpoints[j]` separates `ordered_actions[j]` and `ordered_actions[j + 1]`.
    pub breakpoints: Vec<Rational>,
    pub negative: Vec<usize>,
    pub zero: Option<usize>,
    pub positive: Vec<usize>,
    pub transition: Transition,
}

/// Best-response landscape of a dominance-reduced follower.
pub fn compute_landscape(f: &FollowerGame) -> Result<Landscape, LandscapeError> {
    let lines = lines_of(f)?;
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.sort_by_key(|a| lines[*a].slope());
    let sorted: Vec<Line> = order.iter().map(|&j| lines[j].clone()).collect();
    let mut breakpoints = Vec::with_capacity(sorted.len().saturating_sub(1));
    for pair in sorted.windows(2) {
        let ds = pair[1].slope() - pair[0].slope();
        if !ds.is_positive() {
            return Err(LandscapeError::PreconditionViolated("parallel surviving actions".into()));
        }
        let mu = (&pair[0].w - &pair[1].w) / ds;
        let increasing = breakpoints.last().is_none_or(|last: &Rational| *last < mu);
        if !mu.is_positive() || mu >= Rational::one() || !increasing {
            return Err(LandscapeError::PreconditionViolated(
                "follower has weakly dominated actions".into(),
            ));
        }
        breakpoints.push(mu);
    }
    let by_sign = |s: Ordering| -> Vec<usize> {
        order.iter().copied().filter(|&j| lines[j].slope().cmp(&Rational::zero()) == s).collect()
    };
    let negative = by_sign(Ordering::Less);
    let zero = by_sign(Ordering::Equal).first().copied();
    let positive = by_sign(Ordering::Greater);
    let pos = |col: usize| order.iter().position(|&c| c == col).expect("ordered column");
    let between = |a: usize, b: usize| breakpoints[pos(a).min(pos(b))].clone();
    let x = negative.last().copied();
    let y = positive.first().copied();
    let transition = match zero {
        None => {
            let mu = match (x, y) {
                (Some(a), Some(b)) => between(a, b),
                (Some(_), None) => Rational::one(),
                (None, _) => Rational::zero(),
            };
            Transition::SignChange { x, y, mu }
        }
        Some(flat) => Transition::Flat {
            x,
            flat,
            y,
            mu_minus: x.map_or_else(Rational::zero, |a| between(a, flat)),
            mu_plus: y.map_or_else(Rational::one, |b| between(flat, b)),
        },
    };
    Ok(Landscape { ordered_actions: order, lines: sorted, breakpoints, negative, zero, positive, transition })
}

/// Weight `ν` on `y` making `(1 − ν)·x + ν·y` indifferent between the
/// leader's actions.
pub fn tying_point(x_line: &Line, y_line: &Line) -> Result<Rational, LandscapeError> {
    let down = &x_line.w - &x_line.v;
    let up = &y_line.v - &y_line.w;
    if !down.is_positive() || !up.is_positive() {
        return Err(LandscapeError::PreconditionViolated(
            "tying needs a decreasing and an increasing line".into(),
        ));
    }
    Ok(&down / &(&down + &up))
}

/// Which closed-form case produced an interval face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceCase {
    /// Interval lies below the transition: `BR(hi)`.
    Below,
    /// Upper end is the sign change: `[a_x, t_ν]`.
    UpTo,
    /// Degenerate interval at the sign change: `[a_x, a_y]`.
    At,
    /// Lower end is the sign change: `[t_ν, a_y]`.
    From,
    /// Interval straddles the sign change: `{t_ν}`.
    Straddle,
    /// Interval lies above the transition: `BR(lo)`.
    Above,
    /// Interval covers the flat stretch: `{a_=}`.
    FlatAction,
}

/// Maxmin responses to `[lo, hi]`: the segment between `from` and `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalFace {
    pub case: FaceCase,
    pub from: MixedStrategy,
    pub to: MixedStrategy,
    pub nu: Option<Rational>,
}

impl IntervalFace {
    /// The follower's guaranteed payoff on `[lo, hi]` for any face point.
    pub fn implied_value(&self, f: &FollowerGame, lo: &Rational, hi: &Rational) -> Rational {
        let at = |p: &Rational| {
            crate::rational::dot(&f.follower_values(&MixedStrategy::two_point(p)), self.from.weights())
        };
        at(lo).min(at(hi))
    }

    /// Whether `q` lies on the segment `[from, to]`.
    pub fn contains(&self, q: &MixedStrategy) -> bool {
        segment_parameter(&self.from, &self.to, q).is_some()
    }
}

/// `t ∈ [0,1]` with `q = (1 − t)·a + t·b`, if any.
pub fn segment_parameter(a: &MixedStrategy, b: &MixedStrategy, q: &MixedStrategy) -> Option<Rational> {
    let Some(k) = (0..a.len()).find(|&k| a.weights()[k] != b.weights()[k]) else {
        return (a == q).then(Rational::zero);
    };
    let t = (&q.weights()[k] - &a.weights()[k]) / (&b.weights()[k] - &a.weights()[k]);
    let inside = !t.is_negative() && t <= Rational::one();
    (inside && a.mix(b, &t) == *q).then_some(t)
}

impl Landscape {
    fn line_of(&self, col: usize) -> &Line {
        &self.lines[self.ordered_actions.iter().position(|&c| c == col).expect("known column")]
    }

    /// Classical best responses at `p` as a segment of pure actions.
    pub fn best_response_face(&self, p: &Rational) -> (usize, usize) {
        let idx = self.breakpoints.iter().take_while(|mu| *mu < p).count();
        if self.breakpoints.get(idx) == Some(p) {
            (self.ordered_actions[idx], self.ordered_actions[idx + 1])
        } else {
            (self.ordered_actions[idx], self.ordered_actions[idx])
        }
    }

    fn br_segment(&self, p: &Rational) -> Segment {
        let (a, b) = self.best_response_face(p);
        if a == b {
            Segment::pure(a)
        } else {
            Segment { x: a, y: b, s_from: Rational::zero(), s_to: Rational::one() }
        }
    }

    /// Closed-form maxmin responses to `[lo, hi]` with the case that applies
    /// and, when the sign change is involved, the tying weight.
    pub fn interval_segment(&self, lo: &Rational, hi: &Rational) -> (FaceCase, Segment, Option<Rational>) {
        debug_assert!(!lo.is_negative() && lo <= hi && hi <= &Rational::one());
        match &self.transition {
            Transition::SignChange { x, y, mu } => {
                let (Some(x), Some(y)) = (*x, *y) else {
                    // Monotone envelope: the worst case sits at one fixed end.
                    return if y.is_none() {
                        (FaceCase::Below, self.br_segment(hi), None)
                    } else {
                        (FaceCase::Above, self.br_segment(lo), None)
                    };
                };
                if hi < mu {
                    return (FaceCase::Below, self.br_segment(hi), None);
                }
                if mu < lo {
                    return (FaceCase::Above, self.br_segment(lo), None);
                }
                let nu = tying_point(self.line_of(x), self.line_of(y)).expect("slopes straddle zero");
                let (case, s_from, s_to) = match (lo == mu, hi == mu) {
                    (false, true) => (FaceCase::UpTo, Rational::zero(), nu.clone()),
                    (true, true) => (FaceCase::At, Rational::zero(), Rational::one()),
                    (true, false) => (FaceCase::From, nu.clone(), Rational::one()),
                    (false, false) => (FaceCase::Straddle, nu.clone(), nu.clone()),
                };
                (case, Segment { x, y, s_from, s_to }, Some(nu))
            }
            Transition::Flat { flat, mu_minus, mu_plus, .. } => {
                if hi < mu_plus {
                    (FaceCase::Below, self.br_segment(hi), None)
                } else if mu_minus < lo {
                    (FaceCase::Above, self.br_segment(lo), None)
                } else {
                    (FaceCase::FlatAction, Segment::pure(*flat), None)
                }
            }
        }
    }

    /// Closed-form maxmin responses to the interval `[lo, hi]`.
    pub fn interval_face(&self, lo: &Rational, hi: &Rational) -> IntervalFace {
        assert!(!lo.is_negative() && lo <= hi && hi <= &Rational::one(), "interval outside [0,1]");
        let (case, seg, nu) = self.interval_segment(lo, hi);
        let (from, to) = seg.endpoints(self.ordered_actions.len());
        IntervalFace { case, from, to, nu }
    }

    pub fn envelope(&self, p: &Rational) -> Rational {
        self.lines.iter().map(|l| l.at(p)).max().expect("non-empty landscape")
    }

    /// Minimizers of the upper envelope over `[lo, hi]`, as a closed interval.
    pub fn envelope_argmin(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let (g1, g2) = match &self.transition {
            Transition::SignChange { x: Some(_), y: Some(_), mu } => (mu.clone(), mu.clone()),
            Transition::SignChange { y: None, .. } => (Rational::one(), Rational::one()),
            Transition::SignChange { x: None, .. } => (Rational::zero(), Rational::zero()),
            Transition::Flat { mu_minus, mu_plus, .. } => (mu_minus.clone(), mu_plus.clone()),
        };
        if hi < &g1 {
            (hi.clone(), hi.clone())
        } else if lo > &g2 {
            (lo.clone(), lo.clone())
        } else {
            (lo.clone().max(g1), hi.clone().min(g2))
        }
    }
}

/// Follower mixtures `(1 − s)·x + s·y` for `s` between `s_from` and `s_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub x: usize,
    pub y: usize,
    pub s_from: Rational,
    pub s_to: Rational,
}

impl Segment {
    pub fn pure(a: usize) -> Self {
        Segment { x: a, y: a, s_from: Rational::zero(), s_to: Rational::zero() }
    }

    pub fn point(&self, s: &Rational, m: usize) -> MixedStrategy {
        let mut w = vec![Rational::zero(); m];
        w[self.x] += &(Rational::one() - s);
        w[self.y] += s;
        MixedStrategy::from_weights_unchecked(w)
    }

    pub fn endpoints(&self, m: usize) -> (MixedStrategy, MixedStrategy) {
        (self.point(&self.s_from, m), self.point(&self.s_to, m))
    }
}

/// Closed-form maxmin responses of a dominance-reduced follower to `[lo, hi]`.
pub fn interval_maxmin_response(f: &FollowerGame, lo: &Rational, hi: &Rational) -> Result<IntervalFace, LandscapeError> {
    if lo.is_negative() || lo > hi || hi > &Rational::one() {
        return Err(LandscapeError::PreconditionViolated(format!("bad interval [{lo}, {hi}]")));
    }
    Ok(compute_landscape(f)?.interval_face(lo, hi))
}

/// A follower prepared for repeated interval queries on its original columns.
#[derive(Debug, Clone)]
pub struct PreparedFollower {
    pub reduced: Reduced,
    pub landscape: Landscape,
    lines: Vec<Line>,
    /// Removed actions that reach the envelope somewhere (duplicates and
    /// lines touching it at a point).
    touching: Vec<usize>,
}

impl PreparedFollower {
    pub fn new(f: &FollowerGame) -> Result<Self, LandscapeError> {
        let reduced = remove_weakly_dominated(f)?;
        let landscape = compute_landscape(&reduced.game)?;
        let lines = lines_of(f)?;
        let mut checkpoints = vec![Rational::zero()];
        checkpoints.extend(landscape.breakpoints.iter().cloned());
        checkpoints.push(Rational::one());
        let envelope: Vec<Rational> = checkpoints.iter().map(|p| landscape.envelope(p)).collect();
        let touching = reduced
            .removed
            .iter()
            .copied()
            .filter(|&j| checkpoints.iter().zip(&envelope).any(|(p, e)| lines[j].at(p) == *e))
            .collect();
        Ok(PreparedFollower { reduced, landscape, lines, touching })
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.landscape.breakpoints
    }

    /// The maxmin face over the original columns, or `None` when a removed
    /// action could carry optimal weight and the closed form does not apply.
    ///
    /// Every optimal response is supported on actions attaining the envelope
    /// throughout its minimizer set, so the face of the reduced game is exact
    /// unless some removed action does.
    pub fn face(&self, lo: &Rational, hi: &Rational) -> Option<Segment> {
        if !self.touching.is_empty() {
            let (p1, p2) = self.landscape.envelope_argmin(lo, hi);
            let (e1, e2) = (self.landscape.envelope(&p1), self.landscape.envelope(&p2));
            if self.touching.iter().any(|&j| self.lines[j].at(&p1) == e1 && self.lines[j].at(&p2) == e2) {
                return None;
            }
        }
        let (_, seg, _) = self.landscape.interval_segment(lo, hi);
        let kept = &self.reduced.kept;
        Some(Segment { x: kept[seg.x], y: kept[seg.y], s_from: seg.s_from, s_to: seg.s_to })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{paper_example, Params};
    use crate::rational::rat;

    fn follower(rows: [&[i64]; 2]) -> FollowerGame {
        let m = |r: &[i64]| r.iter().map(|&v| Rational::from(v)).collect::<Vec<_>>();
        let zeros = vec![vec![Rational::zero(); rows[0].len()]; 2];
        FollowerGame::new("F", vec![m(rows[0]), m(rows[1])], zeros)
    }

    fn frac_f1() -> FollowerGame {
        paper_example("frac-opt", &Params::new()).unwrap().followers[0].clone()
    }

    #[test]
    fn dominance_removal() {
        let r = remove_weakly_dominated(&frac_f1()).unwrap();
        assert_eq!(r.kept, vec![0, 1, 2]);
        let dup = follower([&[2, 2], &[1, 1]]);
        assert_eq!(remove_weakly_dominated(&dup).unwrap().removed, vec![1]);
        let below = follower([&[3, 1, 1], &[0, 2, 1]]);
        assert_eq!(remove_weakly_dominated(&below).unwrap().removed, vec![2]);
        let below = follower([&[3, 0, 1], &[0, 2, 1]]);
        let r = remove_weakly_dominated(&below).unwrap();
        assert_eq!(r.kept, vec![0, 1]);
        assert_eq!(r.removed, vec![2]);
        // A line touching the envelope at a single point is removed.
        let touch = follower([&[2, 0, 1], &[0, 2, 1]]);
        assert_eq!(remove_weakly_dominated(&touch).unwrap().removed, vec![2]);
    }

    #[test]
    fn landscapes_of_examples() {
        let l = compute_landscape(&frac_f1()).unwrap();
        assert_eq!(l.ordered_actions, vec![0, 1, 2]);
        assert_eq!(l.breakpoints, vec![rat(1, 5), rat(2, 5)]);
        assert_eq!(l.zero, Some(1));
        assert_eq!(
            l.transition,
            Transition::Flat { x: Some(0), flat: 1, y: Some(2), mu_minus: rat(1, 5), mu_plus: rat(2, 5) }
        );
        let zs = paper_example("zs-gap", &[("D".to_string(), Rational::from(10))].into_iter().collect()).unwrap();
        let l = compute_landscape(&zs.followers[0]).unwrap();
        assert_eq!(l.breakpoints, vec![rat(9, 10)]);
        assert_eq!(l.zero, Some(1));
        let id = compute_landscape(&follower([&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(id.transition, Transition::SignChange { x: Some(0), y: Some(1), mu: rat(1, 2) });
    }

    #[test]
    fn tying_points() {
        let l = |w, v| Line { w: Rational::from(w), v: Rational::from(v) };
        assert_eq!(tying_point(&l(1, 0), &l(0, 1)).unwrap(), rat(1, 2));
        assert_eq!(tying_point(&l(3, 0), &l(0, 1)).unwrap(), rat(3, 4));
        assert_eq!(tying_point(&l(1, 0), &l(0, 10)).unwrap(), rat(1, 11));
        assert!(tying_point(&l(0, 1), &l(0, 1)).is_err());
    }

    #[test]
    fn interval_cases() {
        let f = frac_f1();
        let face = interval_maxmin_response(&f, &rat(2, 5), &rat(3, 5)).unwrap();
        assert_eq!(face.case, FaceCase::Above);
        assert_eq!((face.from, face.to), (MixedStrategy::pure(3, 1), MixedStrategy::pure(3, 2)));
        let covered = interval_maxmin_response(&f, &rat(1, 10), &rat(9, 10)).unwrap();
        assert_eq!(covered.case, FaceCase::FlatAction);
        assert_eq!(covered.from, MixedStrategy::pure(3, 1));
        let id = follower([&[1, 0], &[0, 1]]);
        let e = interval_maxmin_response(&id, &rat(1, 4), &rat(3, 4)).unwrap();
        assert_eq!(e.case, FaceCase::Straddle);
        assert_eq!(e.from.weights(), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(e.implied_value(&id, &rat(1, 4), &rat(3, 4)), rat(1, 2));
        let b = interval_maxmin_response(&id, &rat(1, 4), &rat(1, 2)).unwrap();
        assert_eq!(b.case, FaceCase::UpTo);
        assert!(b.contains(&MixedStrategy::pure(2, 0)));
        assert!(b.contains(&MixedStrategy::two_point(&rat(1, 3))));
        assert!(!b.contains(&MixedStrategy::pure(2, 1)));
    }

    #[test]
    fn monotone_envelopes_use_the_far_end() {
        let down = follower([&[3, 2], &[0, 1]]);
        let l = compute_landscape(&down).unwrap();
        assert_eq!(l.transition, Transition::SignChange { x: Some(1), y: None, mu: Rational::one() });
        assert_eq!(l.interval_face(&rat(0, 1), &rat(1, 1)).from, MixedStrategy::pure(2, 1));
        let up = follower([&[0, -1], &[1, 3]]);
        let l = compute_landscape(&up).unwrap();
        assert_eq!(l.interval_face(&rat(0, 1), &rat(1, 1)).from, MixedStrategy::pure(2, 0));
    }
}
