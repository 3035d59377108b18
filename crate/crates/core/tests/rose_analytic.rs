use fforge_core::rose::{
    alpha_analytic, eval_chi, eval_fp, eval_r, eval_r_closed, predict_fed_rose, r_of_real, r_of_s, threshold_f,
    verify_local_relations, Prediction,
};
use fforge_core::spectral::{algebraic_connectivity, check_fed, DegeneratePolicy};
use fforge_core::{RoseParams, Tree};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn rose(s: usize, t: usize, p: usize) -> Tree {
    Tree::rose(RoseParams::new(s, t, p).unwrap()).unwrap()
}

fn lambda2(s: usize, t: usize, p: usize) -> f64 {
    algebraic_connectivity(&rose(s, t, p)).unwrap()
}

#[test]
fn recurrence_matches_closed_form() {
    for n in 0..=60 {
        for k in 0..=100 {
            let x = k as f64 / 100.0;
            let a = eval_r(n, x);
            let b = eval_r_closed(n, x).unwrap();
            assert!((a - b).abs() <= 1e-10, "n={n} x={x}: {a} vs {b}");
        }
    }
}

#[test]
fn chi_factors_when_arms_match() {
    for s in 3..=8 {
        for p in 0..=12 {
            for k in 1..=40 {
                let x = k as f64 * 0.025;
                let lhs = eval_chi(s, s, p, x);
                let rhs = eval_r(s, x) * eval_fp(s, p, x);
                assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()), "s={s} p={p} x={x}");
            }
        }
    }
}

#[test]
fn chi_slope_at_zero_is_order() {
    let mut rng = StdRng::seed_from_u64(7);
    let h = 1e-7;
    for _ in 0..50 {
        let (s, t, p) = (rng.gen_range(3..=8), rng.gen_range(3..=8), rng.gen_range(0..=12));
        let slope = (eval_chi(s, t, p, h) - eval_chi(s, t, p, -h)) / (2.0 * h);
        assert!((slope.abs() - (s + t + p + 2) as f64).abs() <= 1e-6, "({s},{t},{p}): {slope}");
    }
}

#[test]
fn analytic_alpha_matches_eigensolver() {
    for s in 3..=8 {
        for t in 3..=8 {
            for p in 0..=12 {
                let a = alpha_analytic(s, t, p).unwrap();
                let b = lambda2(s, t, p);
                assert!((a - b).abs() <= 1e-9, "({s},{t},{p}): {a} vs {b}");
            }
        }
    }
}

#[test]
fn plateau_then_drop() {
    for s in 3..=8 {
        let f = threshold_f(s);
        let r = r_of_s(s);
        for p in 0..=f.floor() as usize {
            assert!((lambda2(s, s, p) - r).abs() <= 1e-8, "s={s} p={p}");
        }
        let mut prev = r;
        for p in f.ceil() as usize..=f.ceil() as usize + 5 {
            let a = lambda2(s, s, p);
            assert!(a < r - 1e-8, "s={s} p={p}");
            assert!(a <= prev + 1e-12);
            prev = a;
        }
    }
}

#[test]
fn bound_chain() {
    for s in 3..=7 {
        for t in s + 1..=9 {
            for p in 0..=20 {
                let a = lambda2(s, t, p);
                let upper = r_of_s(s).min(r_of_real((s + t) as f64 / 2.0));
                assert!(lambda2(t, t, p) <= a + 1e-10, "({s},{t},{p}) below");
                assert!(a <= upper + 1e-10, "({s},{t},{p}) above");
            }
        }
    }
}

#[test]
fn definite_predictions_are_sound() {
    for s in 3..=6 {
        for t in s..=10 {
            for p in 0..=50 {
                let verdict = predict_fed_rose(s, t, p).unwrap();
                let fed = check_fed(&rose(s, t, p), DegeneratePolicy::Projection).unwrap().satisfied;
                match verdict.prediction {
                    Prediction::FedTrue => assert!(fed, "({s},{t},{p}) predicted true"),
                    Prediction::FedFalse => assert!(!fed, "({s},{t},{p}) predicted false"),
                    Prediction::Indeterminate => {}
                }
            }
        }
    }
}

#[test]
fn swapped_arms_give_the_same_tree_class() {
    for (s, t, p) in [(3, 5, 2), (4, 7, 9), (6, 3, 0)] {
        assert_eq!(rose(s, t, p).canonical_code(), rose(t, s, p).canonical_code());
        assert_eq!(predict_fed_rose(s, t, p).unwrap().prediction, predict_fed_rose(t, s, p).unwrap().prediction);
    }
}

#[test]
fn local_relations_hold_on_random_triples() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..50 {
        let (s, t, p) = (rng.gen_range(3..=8), rng.gen_range(3..=8), rng.gen_range(0..=12));
        match verify_local_relations(s, t, p) {
            Ok(res) => assert!(res.max() <= 1e-9, "({s},{t},{p}): {res:?}"),
            Err(e) => panic!("({s},{t},{p}): {e}"),
        }
    }
}
