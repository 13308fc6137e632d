//! Follower best responses, maxmin responses to ambiguous commitments, and
//! the leader's worst-case payoff.

use crate::game::{CommitmentSet, CoupledGame, FollowerGame, MixedStrategy, TieBreak};
use crate::lp::{lp_solve, matrix_game_maximin, Bound, LinearProgram, Sense};
use crate::rational::{dot, Rational};

/// A follower's maxmin value together with the tie-broken response.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResponseOutcome {
    pub maxmin_value: Rational,
    pub representative: MixedStrategy,
    /// Actions used by at least one optimal response.
    pub support: Vec<usize>,
    /// Extreme points minimizing the follower's payoff against `representative`.
    pub active_leader_extremes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub w: Rational,
    pub responses: Vec<ResponseOutcome>,
    /// Lowest-index extreme point attaining `w`.
    pub argmin_extreme: usize,
    /// Leader's total payoff at every extreme point.
    pub extreme_values: Vec<Rational>,
}

/// Pure follower actions maximizing expected payoff against `p`.
pub fn best_response(p: &MixedStrategy, f: &FollowerGame) -> Vec<usize> {
    argmax_all(&f.follower_values(p))
}

fn argmax_all(values: &[Rational]) -> Vec<usize> {
    let best = values.iter().max().expect("at least one action");
    (0..values.len()).filter(|&j| &values[j] == best).collect()
}

/// The set of optimal follower mixtures, as linear constraints over the
/// actions in `support`.
struct Face<'a> {
    /// Rows `e·u_F` for every extreme point `e`.
    rows: &'a [Vec<Rational>],
    value: &'a Rational,
    support: &'a [usize],
    /// Extra `Σ_j coeffs[j] q_{support[j]} ≥ rhs` rows narrowing the face.
    cuts: Vec<(Vec<Rational>, Rational)>,
}

impl Face<'_> {
    fn program(&self, objective: Vec<Rational>) -> LinearProgram {
        let k = self.support.len();
        let mut lp = LinearProgram::new(objective);
        lp.add_row(vec![Rational::one(); k], Sense::Eq, Rational::one());
        // With a singleton extreme set the support already pins the face.
        if self.rows.len() > 1 {
            for row in self.rows {
                lp.add_row(self.support.iter().map(|&a| &row[a] - self.value).collect(), Sense::Ge, Rational::zero());
            }
        }
        for (coeffs, rhs) in &self.cuts {
            lp.add_row(coeffs.clone(), Sense::Ge, rhs.clone());
        }
        lp
    }

    fn optimum(&self, objective: Vec<Rational>) -> Rational {
        let sol = lp_solve(&self.program(objective));
        sol.value.expect("optimal face is non-empty and bounded")
    }

    /// The lexicographically largest point of the face.
    fn lex_first(mut self, m: usize) -> MixedStrategy {
        let k = self.support.len();
        let mut fixed = vec![Rational::zero(); k];
        let mut mass = Rational::zero();
        for j in 0..k {
            if mass == Rational::one() {
                break;
            }
            if j + 1 == k {
                fixed[j] = Rational::one() - &mass;
                break;
            }
            let mut obj = vec![Rational::zero(); k];
            obj[j] = Rational::one();
            let best = self.optimum(obj);
            let mut unit = vec![Rational::zero(); k];
            unit[j] = Rational::one();
            self.cuts.push((unit.clone(), best.clone()));
            self.cuts.push((unit.iter().map(|v| -v).collect(), -&best));
            mass += &best;
            fixed[j] = best;
        }
        let mut weights = vec![Rational::zero(); m];
        for (&a, w) in self.support.iter().zip(fixed) {
            weights[a] = w;
        }
        MixedStrategy::from_weights_unchecked(weights)
    }
}

/// Maxmin response of follower `f` to commitment `commitment`.
pub fn maxmin_response(commitment: &CommitmentSet, f: &FollowerGame, t: TieBreak) -> ResponseOutcome {
    let extremes = commitment.extreme_points();
    let m = f.cols();
    let rows: Vec<Vec<Rational>> = extremes.iter().map(|e| f.follower_values(e)).collect();

    let (value, support) = if rows.len() == 1 {
        let support = argmax_all(&rows[0]);
        (rows[0][support[0]].clone(), support)
    } else {
        let transposed: Vec<Vec<Rational>> =
            (0..m).map(|a| rows.iter().map(|r| r[a].clone()).collect()).collect();
        let game = matrix_game_maximin(&transposed);
        let support = face_support(&rows, &game.value, &game.row_strategy);
        (game.value, support)
    };

    let representative = if support.len() == 1 {
        MixedStrategy::pure(m, support[0])
    } else {
        let leader_rows: Vec<Vec<Rational>> = extremes
            .iter()
            .map(|e| {
                let v = f.leader_values(e);
                support.iter().map(|&a| v[a].clone()).collect()
            })
            .collect();
        let mut face = Face { rows: &rows, value: &value, support: &support, cuts: Vec::new() };
        match t {
            TieBreak::LexicographicFirst => {}
            TieBreak::LeaderFavorable => {
                // Epigraph variable s is free; q occupies the first |support| columns.
                let k = support.len();
                let mut lp = face.program(vec![Rational::zero(); k]);
                lp.objective.push(Rational::one());
                for row in lp.matrix.iter_mut() {
                    row.push(Rational::zero());
                }
                lp.bounds.push(Bound::free());
                for lrow in &leader_rows {
                    let mut r = lrow.clone();
                    r.push(-Rational::one());
                    lp.add_row(r, Sense::Ge, Rational::zero());
                }
                let best = lp_solve(&lp).value.expect("face is non-empty");
                for lrow in &leader_rows {
                    face.cuts.push((lrow.clone(), best.clone()));
                }
            }
            TieBreak::Adversarial => {
                let mut worst: Option<(Rational, usize)> = None;
                for (i, lrow) in leader_rows.iter().enumerate() {
                    let v = -face.optimum(lrow.iter().map(|x| -x).collect());
                    if worst.as_ref().is_none_or(|(w, _)| v < *w) {
                        worst = Some((v, i));
                    }
                }
                let (v, i) = worst.expect("at least one extreme point");
                face.cuts.push((leader_rows[i].iter().map(|x| -x).collect(), -v));
            }
        }
        face.lex_first(m)
    };

    let payoffs: Vec<Rational> = rows.iter().map(|r| dot(r, representative.weights())).collect();
    let achieved = payoffs.iter().min().expect("non-empty").clone();
    assert_eq!(achieved, value, "representative misses the maxmin value");
    let active_leader_extremes = (0..payoffs.len()).filter(|&i| payoffs[i] == value).collect();
    ResponseOutcome { maxmin_value: value, representative, support, active_leader_extremes }
}

/// Union of supports over the optimal face `{q ∈ Δ : rows·q ≥ value}`.
///
/// Solved over the cone of the face: maximize `Σ z_j` with `z_j ≤ y_j`,
/// `z_j ≤ 1` and `rows·y ≥ value·Σy`; any positive `z_j` witnesses an
/// optimal response using action `j`.
fn face_support(rows: &[Vec<Rational>], value: &Rational, witness: &MixedStrategy) -> Vec<usize> {
    let m = witness.len();
    let known = witness.support();
    if known.len() == m {
        return known;
    }
    let mut lp = LinearProgram::new(
        std::iter::repeat_n(Rational::zero(), m).chain(std::iter::repeat_n(Rational::one(), m)).collect(),
    );
    for j in 0..m {
        lp.bounds[m + j] = Bound::between(Rational::zero(), Rational::one());
        let mut row = vec![Rational::zero(); 2 * m];
        row[j] = Rational::one();
        row[m + j] = -Rational::one();
        lp.add_row(row, Sense::Ge, Rational::zero());
    }
    for r in rows {
        let mut row: Vec<Rational> = r.iter().map(|a| a - value).collect();
        row.resize(2 * m, Rational::zero());
        lp.add_row(row, Sense::Ge, Rational::zero());
    }
    let z = lp_solve(&lp).point.expect("cone LP is bounded and feasible");
    let support: Vec<usize> = (0..m).filter(|&j| z[m + j].is_positive()).collect();
    debug_assert!(known.iter().all(|j| support.contains(j)));
    support
}

/// The leader's worst-case payoff `W` over the commitment's extreme points.
pub fn evaluate_commitment(g: &CoupledGame, commitment: &CommitmentSet, t: TieBreak) -> Evaluation {
    let responses: Vec<ResponseOutcome> = g.followers.iter().map(|f| maxmin_response(commitment, f, t)).collect();
    let reps: Vec<MixedStrategy> = responses.iter().map(|r| r.representative.clone()).collect();
    evaluate_with_responses(g, commitment, responses, &reps)
}

fn evaluate_with_responses(
    g: &CoupledGame,
    commitment: &CommitmentSet,
    responses: Vec<ResponseOutcome>,
    reps: &[MixedStrategy],
) -> Evaluation {
    let extreme_values: Vec<Rational> =
        commitment.extreme_points().iter().map(|e| g.leader_total(e, reps)).collect();
    let (argmin_extreme, w) = extreme_values
        .iter()
        .enumerate()
        .fold(None::<(usize, &Rational)>, |acc, (i, v)| match acc {
            Some((_, best)) if best <= v => acc,
            _ => Some((i, v)),
        })
        .expect("at least one extreme point");
    let w = w.clone();
    Evaluation { w, responses, argmin_extreme, extreme_values }
}

/// Classical payoff `V(t, p)`: the singleton commitment `{p}`.
pub fn classical_payoff(g: &CoupledGame, p: &MixedStrategy, t: TieBreak) -> Rational {
    evaluate_commitment(g, &CommitmentSet::singleton(p.clone()), t).w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{paper_example, Params};
    use crate::rational::rat;

    fn zs10() -> CoupledGame {
        paper_example("zs-gap", &[("D".to_string(), Rational::from(10))].into_iter().collect()).unwrap()
    }

    fn frac() -> CoupledGame {
        paper_example("frac-opt", &Params::new()).unwrap()
    }

    #[test]
    fn classical_best_responses() {
        let g = zs10();
        assert_eq!(best_response(&MixedStrategy::pure(2, 0), &g.followers[0]), vec![0]);
        let f = frac();
        assert_eq!(best_response(&MixedStrategy::two_point(&rat(2, 5)), &f.followers[0]), vec![1, 2]);
        let single = FollowerGame::new("F", vec![vec![rat(3, 1)], vec![rat(-1, 1)]], vec![vec![rat(0, 1)], vec![rat(0, 1)]]);
        assert_eq!(best_response(&MixedStrategy::pure(2, 1), &single), vec![0]);
    }

    #[test]
    fn full_simplex_response_is_safe_action() {
        let g = zs10();
        let r = maxmin_response(&CommitmentSet::full_simplex(2), &g.followers[0], TieBreak::LeaderFavorable);
        assert_eq!(r.maxmin_value, Rational::one());
        assert_eq!(r.representative, MixedStrategy::pure(2, 1));
        let s = maxmin_response(&CommitmentSet::singleton(MixedStrategy::pure(2, 0)), &g.followers[0], TieBreak::LexicographicFirst);
        assert_eq!(s.maxmin_value, Rational::from(10));
        assert_eq!(s.representative, MixedStrategy::pure(2, 0));
    }

    #[test]
    fn fractional_interval_response() {
        let f = frac();
        let p = CommitmentSet::interval(rat(2, 5), rat(3, 5)).unwrap();
        let r = maxmin_response(&p, &f.followers[0], TieBreak::LeaderFavorable);
        assert_eq!(r.maxmin_value, Rational::zero());
        assert_eq!(r.representative, MixedStrategy::pure(3, 1));
        assert_eq!(r.support, vec![1, 2]);
        let e = evaluate_commitment(&f, &p, TieBreak::LeaderFavorable);
        assert_eq!(e.w, rat(22, 5));
        assert_eq!(e.extreme_values, vec![rat(23, 5), rat(22, 5)]);
        assert_eq!(e.argmin_extreme, 1);
    }

    #[test]
    fn tie_breaks_select_distinct_face_points() {
        let f = frac();
        let p = CommitmentSet::interval(rat(2, 5), rat(3, 5)).unwrap();
        let lex = maxmin_response(&p, &f.followers[0], TieBreak::LexicographicFirst);
        let adv = maxmin_response(&p, &f.followers[0], TieBreak::Adversarial);
        // Face is conv{b2, b3}; lex prefers b2, the adversary b3 (leader gets 0).
        assert_eq!(lex.representative, MixedStrategy::pure(3, 1));
        assert_eq!(adv.representative, MixedStrategy::pure(3, 2));
    }

    #[test]
    fn worst_case_payoffs_of_examples() {
        assert_eq!(evaluate_commitment(&zs10(), &CommitmentSet::full_simplex(2), TieBreak::LeaderFavorable).w, rat(-2, 1));
        let cg = paper_example("coupling-gap", &[("D".to_string(), Rational::from(10))].into_iter().collect()).unwrap();
        for t in TieBreak::ALL {
            assert_eq!(evaluate_commitment(&cg, &CommitmentSet::full_simplex(2), t).w, Rational::one());
        }
    }

    #[test]
    fn mixed_equalizer_response() {
        let id = FollowerGame::new(
            "I",
            vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]],
            vec![vec![rat(0, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1)]],
        );
        let p = CommitmentSet::interval(rat(1, 4), rat(3, 4)).unwrap();
        let r = maxmin_response(&p, &id, TieBreak::LexicographicFirst);
        assert_eq!(r.maxmin_value, rat(1, 2));
        assert_eq!(r.representative.weights(), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(r.active_leader_extremes, vec![0, 1]);
    }
}
