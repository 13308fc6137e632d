use ambistack::game::{paper_example, parse_game, serialize_game, Params};
use ambistack::landscape::compute_landscape;
use ambistack::random;
use ambistack::rational::{dot, rat};
use ambistack::responses::{best_response, classical_payoff, evaluate_commitment, maxmin_response};
use ambistack::{CommitmentSet, MixedStrategy, Rational, TieBreak};
use proptest::prelude::*;
use rand::Rng;

fn random_strategy(r: &mut random::GameRng, n: usize) -> MixedStrategy {
    let w: Vec<Rational> = (0..n).map(|_| Rational::from(r.gen_range(0..4i64))).collect();
    let total: Rational = w.iter().sum();
    if total.is_zero() {
        return MixedStrategy::pure(n, 0);
    }
    MixedStrategy::new(w.iter().map(|x| x / &total).collect()).unwrap()
}

fn random_commitment(r: &mut random::GameRng, n: usize) -> CommitmentSet {
    let mut pts: Vec<MixedStrategy> = Vec::new();
    for _ in 0..r.gen_range(1..=3) {
        let p = random_strategy(r, n);
        let mut trial = pts.clone();
        trial.push(p);
        if let Ok(c) = CommitmentSet::polytope(trial.clone()) {
            if c.extreme_points().len() == trial.len() {
                pts = trial;
            }
        }
    }
    CommitmentSet::polytope(pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(1..=3);
        let k = r.gen_range(1..=3);
        let g = random::game(&mut r, n, k, 4);
        let text = serialize_game(&g);
        let back = parse_game(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_game(&back), text);
    }

    #[test]
    fn singleton_commitments_are_classical(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(1..=3);
        let g = random::game(&mut r, n, 2, 4);
        let p = random_strategy(&mut r, n);
        let c = CommitmentSet::singleton(p.clone());
        for t in TieBreak::ALL {
            for f in &g.followers {
                let out = maxmin_response(&c, f, t);
                let br = best_response(&p, f);
                prop_assert!(out.support.iter().all(|a| br.contains(a)));
            }
            prop_assert_eq!(evaluate_commitment(&g, &c, t).w, classical_payoff(&g, &p, t));
        }
    }

    #[test]
    fn optimal_face_is_convex(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(2..=3);
        let g = random::game(&mut r, n, 1, 5);
        let c = random_commitment(&mut r, n);
        let f = &g.followers[0];
        let outs: Vec<_> = TieBreak::ALL.iter().map(|&t| maxmin_response(&c, f, t)).collect();
        let value = |q: &MixedStrategy| {
            c.extreme_points().iter().map(|e| dot(&f.follower_values(e), q.weights())).min().unwrap()
        };
        for a in &outs {
            for b in &outs {
                prop_assert_eq!(&a.maxmin_value, &b.maxmin_value);
                for t in [rat(1, 3), rat(1, 2), rat(4, 5)] {
                    prop_assert_eq!(value(&a.representative.mix(&b.representative, &t)), a.maxmin_value.clone());
                }
            }
        }
    }

    #[test]
    fn support_stays_inside_reachable_best_responses(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let f = random::reduced_follower(&mut r, 5);
        let (lo, hi) = random::interval(&mut r, 12);
        let land = compute_landscape(&f).unwrap();
        let c = CommitmentSet::interval(lo.clone(), hi.clone()).unwrap();
        let out = maxmin_response(&c, &f, TieBreak::LeaderFavorable);
        for a in out.support {
            let j = land.ordered_actions.iter().position(|&x| x == a).unwrap();
            let left = if j == 0 { Rational::zero() } else { land.breakpoints[j - 1].clone() };
            let right = land.breakpoints.get(j).cloned().unwrap_or_else(Rational::one);
            prop_assert!(left <= hi && right >= lo, "action {} region [{}, {}] misses [{}, {}]", a, left, right, lo, hi);
        }
    }

    #[test]
    fn enlarging_the_commitment_never_helps_the_follower(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(2..=3);
        let g = random::game(&mut r, n, 1, 4);
        let small = random_commitment(&mut r, n);
        let mut bigger = small.extreme_points().to_vec();
        for e in 0..n {
            let p = MixedStrategy::pure(n, e);
            if !bigger.contains(&p) {
                bigger.push(p);
            }
        }
        let full = CommitmentSet::full_simplex(n);
        let f = &g.followers[0];
        let v_small = maxmin_response(&small, f, TieBreak::LexicographicFirst).maxmin_value;
        let v_full = maxmin_response(&full, f, TieBreak::LexicographicFirst).maxmin_value;
        prop_assert!(v_full <= v_small);
    }

    #[test]
    fn redundant_points_change_nothing(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(2..=3);
        let g = random::game(&mut r, n, 2, 4);
        let c = random_commitment(&mut r, n);
        let pts = c.extreme_points();
        let mid = if pts.len() >= 2 { pts[0].mix(&pts[1], &rat(1, 2)) } else { pts[0].clone() };
        let padded = c.with_redundant_point(mid);
        for t in TieBreak::ALL {
            let a = evaluate_commitment(&g, &c, t);
            let b = evaluate_commitment(&g, &padded, t);
            prop_assert_eq!(a.w, b.w);
            prop_assert_eq!(
                a.responses.iter().map(|o| &o.representative).collect::<Vec<_>>(),
                b.responses.iter().map(|o| &o.representative).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn positive_scaling_preserves_choices(seed in any::<u64>(), num in 1i64..20, den in 1i64..20) {
        let mut r = random::rng(seed);
        let n = r.gen_range(2..=3);
        let g = random::game(&mut r, n, 2, 4);
        let lambda = rat(num, den);
        let s = g.scaled(&lambda);
        let c = random_commitment(&mut r, n);
        let p = random_strategy(&mut r, n);
        for (f, fs) in g.followers.iter().zip(&s.followers) {
            prop_assert_eq!(best_response(&p, f), best_response(&p, fs));
        }
        for t in TieBreak::ALL {
            let a = evaluate_commitment(&g, &c, t);
            let b = evaluate_commitment(&s, &c, t);
            prop_assert_eq!(&b.w, &(&a.w * &lambda));
            prop_assert_eq!(a.argmin_extreme, b.argmin_extreme);
            for (x, y) in a.responses.iter().zip(&b.responses) {
                prop_assert_eq!(&x.representative, &y.representative);
            }
        }
    }
}

#[test]
fn zero_sum_example_is_zero_sum_for_every_d() {
    for d in [rat(0, 1), rat(1, 1), rat(10, 1), rat(-3, 7), rat(1000, 3)] {
        let params: Params = [("D".to_string(), d)].into_iter().collect();
        assert!(paper_example("zs-gap", &params).unwrap().is_zero_sum());
    }
}
