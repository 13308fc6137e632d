//! Seeded generators for random games, intervals and graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{CoupledGame, FollowerGame};
use crate::hardness::Graph;
use crate::landscape::remove_weakly_dominated;
use crate::rational::Rational;

pub type GameRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GameRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational in `[-bound, bound]` with denominator at most `max_den`.
pub fn rational(rng: &mut GameRng, bound: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    Rational::new(rng.gen_range(-bound * den..=bound * den), den)
}

/// Rational in `[0, 1]` with denominator at most `max_den`.
pub fn unit_rational(rng: &mut GameRng, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    Rational::new(rng.gen_range(0..=den), den)
}

fn matrix(rng: &mut GameRng, n: usize, m: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|_| (0..m).map(|_| rational(rng, 5, 4)).collect()).collect()
}

/// Follower with entries in `[-5, 5]`.
pub fn follower(rng: &mut GameRng, name: String, n: usize, m: usize) -> FollowerGame {
    let fp = matrix(rng, n, m);
    let lp = matrix(rng, n, m);
    FollowerGame::new(name, fp, lp)
}

/// `k` followers with independently drawn column counts in `2..=max_cols`.
pub fn game(rng: &mut GameRng, n: usize, k: usize, max_cols: usize) -> CoupledGame {
    let followers = (0..k)
        .map(|i| {
            let m = rng.gen_range(2..=max_cols);
            follower(rng, format!("F{}", i + 1), n, m)
        })
        .collect();
    CoupledGame::new(n, followers).expect("generated game is valid")
}

/// Game where every leader payoff is the negated follower payoff.
pub fn zero_sum_game(rng: &mut GameRng, n: usize, k: usize, max_cols: usize) -> CoupledGame {
    let followers = (0..k)
        .map(|i| {
            let m = rng.gen_range(2..=max_cols);
            let fp = matrix(rng, n, m);
            let lp = fp.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
            FollowerGame::new(format!("F{}", i + 1), fp, lp)
        })
        .collect();
    CoupledGame::new(n, followers).expect("generated game is valid")
}

/// Zero-sum game whose leader payoffs are all strictly positive.
pub fn positive_zero_sum_game(rng: &mut GameRng, n: usize, k: usize, max_cols: usize) -> CoupledGame {
    let followers = (0..k)
        .map(|i| {
            let m = rng.gen_range(2..=max_cols);
            let lp: Vec<Vec<Rational>> = (0..n)
                .map(|_| {
                    (0..m)
                        .map(|_| {
                            let den = rng.gen_range(1..=4);
                            Rational::new(rng.gen_range(1..=5 * den), den)
                        })
                        .collect()
                })
                .collect();
            let fp = lp.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
            FollowerGame::new(format!("F{}", i + 1), fp, lp)
        })
        .collect();
    CoupledGame::new(n, followers).expect("generated game is valid")
}

/// Drops each follower's weakly dominated columns.
pub fn reduce_columns(g: &CoupledGame) -> CoupledGame {
    let followers = g
        .followers
        .iter()
        .map(|f| remove_weakly_dominated(f).expect("two leader actions").game)
        .collect();
    CoupledGame::new(g.leader_actions, followers).expect("reduced game is valid")
}

/// Two-action follower with no weakly dominated columns.
pub fn reduced_follower(rng: &mut GameRng, max_cols: usize) -> FollowerGame {
    let m = rng.gen_range(1..=max_cols);
    let f = follower(rng, "F".into(), 2, m);
    remove_weakly_dominated(&f).expect("two leader actions").game
}

/// `[lo, hi] ⊆ [0, 1]`; singletons appear with probability 1/10.
pub fn interval(rng: &mut GameRng, max_den: i64) -> (Rational, Rational) {
    let a = unit_rational(rng, max_den);
    if rng.gen_ratio(1, 10) {
        return (a.clone(), a);
    }
    let b = unit_rational(rng, max_den);
    (a.clone().min(b.clone()), a.max(b))
}

/// Random spanning tree on `n` vertices plus each remaining edge with
/// probability `extra`.
pub fn connected_graph(rng: &mut GameRng, n: usize, extra: f64) -> Graph {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (order[rng.gen_range(0..i)], order[i])).collect();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated graph is valid")
}
