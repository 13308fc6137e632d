//! Ambiguity and coupling gap metrics.

use crate::game::{CommitmentSet, CoupledGame, TieBreak};
use crate::rational::Rational;
use crate::responses::classical_payoff;
use crate::solvers::{
    algorithm1, classical_coupled, decoupled_isv, pure_subset_bruteforce, ClassicalSolution, Mode, SolveError, SolveReport,
};

/// `|W|^sgn(W) / |V|^sgn(V)`, undefined when either value is zero.
pub fn ambiguity_gap(w: &Rational, v: &Rational) -> Option<Rational> {
    if w.is_zero() || v.is_zero() {
        return None;
    }
    let signed = |x: &Rational| if x.is_positive() { x.clone() } else { x.abs().recip() };
    Some(signed(w) / signed(v))
}

/// `W / ISV`, defined only when both are strictly positive.
pub fn coupling_gap(w: &Rational, isv: &Rational) -> Option<Rational> {
    (w.is_positive() && isv.is_positive()).then(|| w / isv)
}

#[derive(Debug, Clone)]
pub struct GapOptions {
    pub tiebreak: TieBreak,
    pub epsilon: Rational,
    pub pattern_budget: u64,
    pub subset_budget: u64,
}

#[derive(Debug, Clone)]
pub struct GapReport {
    /// Best ambiguous commitment found and the mode that produced it.
    pub best: SolveReport,
    pub classical: ClassicalSolution,
    pub per_follower_classical: Vec<Rational>,
    pub isv: Rational,
    pub ambiguity_gap: Option<Rational>,
    pub coupling_gap: Option<Rational>,
    pub ambiguity_advantage: bool,
    pub coupling_advantage: bool,
    /// The classical optimum is simultaneously optimal for every follower alone.
    pub shared_classical_optimum: bool,
}

impl GapReport {
    pub fn w_star(&self) -> &Rational {
        &self.best.value
    }

    pub fn v_star(&self) -> &Rational {
        &self.classical.value
    }
}

/// Searches ambiguous commitments (interval search for two leader actions, pure
/// subsets otherwise, plus the classical optimum itself) and compares them
/// with the classical and decoupled baselines.
pub fn gap_report(g: &CoupledGame, opts: &GapOptions) -> Result<GapReport, SolveError> {
    let classical = classical_coupled(g, opts.pattern_budget)?;
    let decoupled = decoupled_isv(g, opts.pattern_budget)?;
    let mut best = if g.leader_actions == 2 {
        algorithm1(g, &opts.epsilon, opts.tiebreak)?
    } else {
        pure_subset_bruteforce(g, opts.tiebreak, opts.subset_budget)?
    };
    let at_classical = classical_payoff(g, &classical.strategy, opts.tiebreak);
    if at_classical > best.value {
        let c = CommitmentSet::singleton(classical.strategy.clone());
        best = SolveReport::verified(g, Mode::Classical, opts.tiebreak, c, &at_classical, 1, None);
    }
    let ambiguity = ambiguity_gap(&best.value, &classical.value);
    let coupling = coupling_gap(&best.value, &decoupled.isv);
    let one = Rational::one();
    Ok(GapReport {
        ambiguity_advantage: ambiguity.as_ref().is_some_and(|x| x > &one),
        coupling_advantage: coupling.as_ref().is_some_and(|x| x > &one),
        shared_classical_optimum: classical.value == decoupled.isv,
        per_follower_classical: decoupled.per_follower.iter().map(|s| s.value.clone()).collect(),
        isv: decoupled.isv,
        ambiguity_gap: ambiguity,
        coupling_gap: coupling,
        best,
        classical,
    })
}
