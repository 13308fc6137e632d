//! Dense two-phase primal simplex over exact rationals.
//!
//! Pivoting follows Bland's rule over a fixed column order, so every solve is
//! deterministic and cannot cycle. Each optimal solution is re-verified
//! against the original program before it is returned.

use crate::game::MixedStrategy;
use crate::rational::{dot, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// Column bounds; `None` stands for an infinite bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bound {
    pub fn non_negative() -> Self {
        Bound { lower: Some(Rational::zero()), upper: None }
    }

    pub fn free() -> Self {
        Bound { lower: None, upper: None }
    }

    pub fn between(lower: Rational, upper: Rational) -> Self {
        Bound { lower: Some(lower), upper: Some(upper) }
    }
}

/// `maximize objective·x` subject to `matrix·x (sense) rhs` and column bounds.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub matrix: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub senses: Vec<Sense>,
    pub bounds: Vec<Bound>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub point: Option<Vec<Rational>>,
    /// One multiplier per original constraint row (when optimal).
    pub duals: Option<Vec<Rational>>,
    /// Final basis over internal tableau columns.
    pub basis: Vec<usize>,
}

impl LpSolution {
    fn status_only(status: LpStatus) -> Self {
        LpSolution { status, value: None, point: None, duals: None, basis: Vec::new() }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

impl LinearProgram {
    /// An empty program over `vars` non-negative variables.
    pub fn new(objective: Vec<Rational>) -> Self {
        let vars = objective.len();
        LinearProgram {
            objective,
            matrix: Vec::new(),
            rhs: Vec::new(),
            senses: Vec::new(),
            bounds: vec![Bound::non_negative(); vars],
        }
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coefficients: Vec<Rational>, sense: Sense, rhs: Rational) {
        assert_eq!(coefficients.len(), self.var_count(), "row width mismatch");
        self.matrix.push(coefficients);
        self.senses.push(sense);
        self.rhs.push(rhs);
    }

    fn check_shape(&self) {
        let n = self.var_count();
        assert_eq!(self.matrix.len(), self.rhs.len(), "rhs length mismatch");
        assert_eq!(self.matrix.len(), self.senses.len(), "sense length mismatch");
        assert_eq!(self.bounds.len(), n, "bounds length mismatch");
        assert!(self.matrix.iter().all(|r| r.len() == n), "row width mismatch");
    }

    /// Exact feasibility test of a candidate point.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.var_count() {
            return false;
        }
        let bounds_ok = self.bounds.iter().zip(x).all(|(b, v)| {
            b.lower.as_ref().is_none_or(|l| v >= l) && b.upper.as_ref().is_none_or(|u| v <= u)
        });
        bounds_ok
            && self.matrix.iter().zip(&self.rhs).zip(&self.senses).all(|((row, b), s)| {
                let lhs = dot(row, x);
                match s {
                    Sense::Le => &lhs <= b,
                    Sense::Ge => &lhs >= b,
                    Sense::Eq => &lhs == b,
                }
            })
    }
}

/// How an original column is expressed through non-negative internal columns.
struct ColumnMap {
    offset: Rational,
    terms: Vec<(usize, bool)>,
}

struct Tableau {
    /// Constraint rows; the last entry of each is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs; the last entry is minus the current objective value.
    z: Vec<Rational>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if inv != Rational::one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rational>| {
            let factor = row[c].clone();
            if factor.is_zero() {
                return;
            }
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.z);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs Bland-rule simplex iterations; returns false when unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> bool {
        loop {
            let Some(c) = (0..self.width).find(|&j| allowed[j] && self.z[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let mut z: Vec<Rational> = cost.to_vec();
        z.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (zj, a) in z.iter_mut().zip(row) {
                if !a.is_zero() {
                    *zj -= &(cb * a);
                }
            }
        }
        self.z = z;
    }
}

/// Solves `lp` exactly.
pub fn lp_solve(lp: &LinearProgram) -> LpSolution {
    lp.check_shape();
    let n = lp.var_count();

    // Express every original column through non-negative internal columns.
    let mut maps = Vec::with_capacity(n);
    let mut internal = 0usize;
    let mut extra_rows: Vec<(usize, Rational)> = Vec::new();
    for b in &lp.bounds {
        match (&b.lower, &b.upper) {
            (Some(l), Some(u)) if l > u => return LpSolution::status_only(LpStatus::Infeasible),
            (Some(l), up) => {
                if let Some(u) = up {
                    extra_rows.push((internal, u - l));
                }
                maps.push(ColumnMap { offset: l.clone(), terms: vec![(internal, true)] });
                internal += 1;
            }
            (None, Some(u)) => {
                maps.push(ColumnMap { offset: u.clone(), terms: vec![(internal, false)] });
                internal += 1;
            }
            (None, None) => {
                maps.push(ColumnMap {
                    offset: Rational::zero(),
                    terms: vec![(internal, true), (internal + 1, false)],
                });
                internal += 2;
            }
        }
    }

    // Rows over internal columns, then sign-normalized so every rhs is >= 0.
    struct Row {
        coeffs: Vec<Rational>,
        sense: Sense,
        rhs: Rational,
        negated: bool,
        original: Option<usize>,
    }
    let mut rows: Vec<Row> = Vec::with_capacity(lp.matrix.len() + extra_rows.len());
    for (i, orig) in lp.matrix.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); internal];
        let mut rhs = lp.rhs[i].clone();
        for (a, map) in orig.iter().zip(&maps) {
            if a.is_zero() {
                continue;
            }
            if !map.offset.is_zero() {
                rhs -= &(a * &map.offset);
            }
            for &(col, positive) in &map.terms {
                if positive {
                    coeffs[col] += a;
                } else {
                    coeffs[col] -= a;
                }
            }
        }
        rows.push(Row { coeffs, sense: lp.senses[i], rhs, negated: false, original: Some(i) });
    }
    for (col, cap) in extra_rows {
        let mut coeffs = vec![Rational::zero(); internal];
        coeffs[col] = Rational::one();
        rows.push(Row { coeffs, sense: Sense::Le, rhs: cap, negated: false, original: None });
    }
    for row in rows.iter_mut() {
        if row.rhs.is_negative() {
            row.negated = true;
            row.rhs = -&row.rhs;
            for v in row.coeffs.iter_mut() {
                *v = -&*v;
            }
            row.sense = match row.sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
    }

    // Column layout: internal | one slack or surplus per inequality | artificials.
    let slack_count = rows.iter().filter(|r| r.sense != Sense::Eq).count();
    let art_count = rows.iter().filter(|r| r.sense != Sense::Le).count();
    let width = internal + slack_count + art_count;
    let mut slack_of = vec![None; rows.len()];
    let mut art_of = vec![None; rows.len()];
    let mut tab_rows = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut next_slack, mut next_art) = (internal, internal + slack_count);
    for (i, row) in rows.iter().enumerate() {
        let mut t = row.coeffs.clone();
        t.resize(width + 1, Rational::zero());
        t[width] = row.rhs.clone();
        match row.sense {
            Sense::Le => {
                t[next_slack] = Rational::one();
                slack_of[i] = Some(next_slack);
                basis.push(next_slack);
                next_slack += 1;
            }
            Sense::Ge => {
                t[next_slack] = -Rational::one();
                slack_of[i] = Some(next_slack);
                next_slack += 1;
                t[next_art] = Rational::one();
                art_of[i] = Some(next_art);
                basis.push(next_art);
                next_art += 1;
            }
            Sense::Eq => {
                t[next_art] = Rational::one();
                art_of[i] = Some(next_art);
                basis.push(next_art);
                next_art += 1;
            }
        }
        tab_rows.push(t);
    }
    let mut tab = Tableau { rows: tab_rows, basis, z: Vec::new(), width };
    let is_art = |j: usize| j >= internal + slack_count && j < width;

    // Phase 1: maximize minus the sum of artificials.
    if art_count > 0 {
        let mut cost = vec![Rational::zero(); width];
        for c in cost.iter_mut().skip(internal + slack_count) {
            *c = -Rational::one();
        }
        tab.set_objective(&cost);
        let allowed = vec![true; width];
        tab.optimize(&allowed);
        if !tab.z[width].is_zero() {
            return LpSolution::status_only(LpStatus::Infeasible);
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tab.rows.len() {
            if is_art(tab.basis[r]) {
                match (0..internal + slack_count).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(c) => tab.pivot(r, c),
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        rows.remove(r);
                        slack_of.remove(r);
                        art_of.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    // Phase 2 with artificials barred from entering.
    let mut cost = vec![Rational::zero(); width];
    for (c, map) in lp.objective.iter().zip(&maps) {
        for &(col, positive) in &map.terms {
            cost[col] = if positive { c.clone() } else { -c };
        }
    }
    tab.set_objective(&cost);
    let allowed: Vec<bool> = (0..width).map(|j| !is_art(j)).collect();
    if !tab.optimize(&allowed) {
        return LpSolution::status_only(LpStatus::Unbounded);
    }

    let mut internal_x = vec![Rational::zero(); width];
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        internal_x[b] = row[width].clone();
    }
    let point: Vec<Rational> = maps
        .iter()
        .map(|m| {
            let mut v = m.offset.clone();
            for &(col, positive) in &m.terms {
                if positive {
                    v += &internal_x[col];
                } else {
                    v -= &internal_x[col];
                }
            }
            v
        })
        .collect();
    let value = dot(&lp.objective, &point);

    // Row multipliers read off the reduced costs of slack/artificial columns.
    let mut duals = vec![Rational::zero(); lp.matrix.len()];
    for (k, row) in rows.iter().enumerate() {
        let Some(orig) = row.original else { continue };
        let y = match (row.sense, slack_of[k], art_of[k]) {
            (Sense::Le, Some(s), _) => -&tab.z[s],
            (Sense::Ge, Some(s), _) => tab.z[s].clone(),
            (Sense::Eq, _, Some(a)) => -&tab.z[a],
            _ => unreachable!("row without auxiliary column"),
        };
        duals[orig] = if row.negated { -y } else { y };
    }

    assert!(lp.is_feasible(&point), "simplex returned an infeasible point");
    let slackness: Rational = (0..lp.matrix.len())
        .map(|i| &duals[i] * &(&lp.rhs[i] - &dot(&lp.matrix[i], &point)))
        .sum();
    assert!(slackness.is_zero(), "multipliers violate complementary slackness");

    LpSolution {
        status: LpStatus::Optimal,
        value: Some(value),
        point: Some(point),
        duals: Some(duals),
        basis: tab.basis,
    }
}

/// Optimal strategies and value of a two-player zero-sum matrix game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGameSolution {
    pub value: Rational,
    pub row_strategy: MixedStrategy,
    pub col_strategy: MixedStrategy,
}

/// Value of the zero-sum game where the row player maximizes `payoff`.
///
/// The matrix is shifted to be strictly positive, after which the column
/// player's problem is the packing LP `max Σy s.t. A y ≤ 1, y ≥ 0`; the row
/// strategy is read from its optimal multipliers.
pub fn matrix_game_maximin(payoff: &[Vec<Rational>]) -> MatrixGameSolution {
    let r = payoff.len();
    assert!(r > 0, "matrix game needs at least one row");
    let c = payoff[0].len();
    assert!(c > 0 && payoff.iter().all(|row| row.len() == c), "ragged matrix game");

    let min = payoff.iter().flatten().min().expect("non-empty").clone();
    let shift = Rational::one() - min;
    let mut lp = LinearProgram::new(vec![Rational::one(); c]);
    for row in payoff {
        lp.add_row(row.iter().map(|a| a + &shift).collect(), Sense::Le, Rational::one());
    }
    let sol = lp_solve(&lp);
    assert!(sol.is_optimal(), "packing LP of a positive matrix is always bounded");
    let z = sol.value.expect("optimal");
    let y = sol.point.expect("optimal");
    let x = sol.duals.expect("optimal");
    let inv = z.recip();
    let col: Vec<Rational> = y.iter().map(|v| v * &inv).collect();
    let row: Vec<Rational> = x.iter().map(|v| v * &inv).collect();
    let value = &inv - &shift;

    let guaranteed = (0..c)
        .map(|j| (0..r).map(|i| &row[i] * &payoff[i][j]).sum::<Rational>())
        .min()
        .expect("c > 0");
    let conceded = payoff.iter().map(|prow| dot(prow, &col)).max().expect("r > 0");
    assert!(
        guaranteed == value && conceded == value,
        "matrix game strategies fail to certify the value"
    );
    MatrixGameSolution {
        value,
        row_strategy: MixedStrategy::from_weights_unchecked(row),
        col_strategy: MixedStrategy::from_weights_unchecked(col),
    }
}
