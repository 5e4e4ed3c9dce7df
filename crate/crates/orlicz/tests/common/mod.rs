#![allow(dead_code)]

//! Independent oracles shared by the integration tests. These deliberately
//! avoid the library's computational routes: the conjugate oracle is a grid
//! supremum (not root finding), and the dual-norm oracle solves the
//! constrained maximization directly on a budget simplex (not the one-
//! parameter formula).

use orlicz::function::DiscreteFunction;
use orlicz::young::YoungFunction;

/// Legendre transform by brute grid supremum with local refinement.
pub fn grid_sup_conjugate(phi: &YoungFunction, y: f64, x_max: f64) -> f64 {
    let n = 4000;
    let mut lo = 0.0f64;
    let mut hi = x_max;
    let mut best = 0.0f64;
    for _ in 0..4 {
        let step = (hi - lo) / n as f64;
        let mut best_x = lo;
        best = f64::NEG_INFINITY;
        for i in 0..=n {
            let x = lo + step * i as f64;
            let v = x * y - phi.evaluate(x);
            if v > best {
                best = v;
                best_x = x;
            }
        }
        lo = (best_x - 2.0 * step).max(0.0);
        hi = best_x + 2.0 * step;
    }
    best.max(0.0)
}

/// Inverse of an increasing function by bracketing bisection.
fn invert_increasing(f: impl Fn(f64) -> f64, target: f64) -> f64 {
    if target <= 0.0 {
        return 0.0;
    }
    let mut hi = 1.0f64;
    while f(hi) < target {
        hi *= 2.0;
        assert!(hi < 1e280, "no bracket");
    }
    let mut lo = if hi > 1.0 { hi / 2.0 } else { 0.0 };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Dual-supremum Orlicz norm for small supports: maximizes
/// `sum |f(s)| v(s)` subject to `sum psi(v(s)) <= 1` by distributing the
/// modular budget over the support on a refined simplex grid.
pub fn small_support_dual_norm(psi: &YoungFunction, f: &DiscreteFunction) -> f64 {
    let weights: Vec<f64> = f.iter().map(|(_, v)| v.norm()).collect();
    let k = weights.len();
    assert!((1..=3).contains(&k), "oracle supports 1..=3 points");
    let value = |budgets: &[f64]| -> f64 {
        budgets
            .iter()
            .zip(&weights)
            .map(|(&b, &w)| w * invert_increasing(|v| psi.evaluate(v), b))
            .sum()
    };
    match k {
        1 => value(&[1.0]),
        2 => {
            let mut best = 0.0f64;
            let mut center = 0.5;
            let mut radius = 0.5;
            for _ in 0..6 {
                let mut best_b = center;
                for i in 0..=200 {
                    let b = (center - radius + 2.0 * radius * i as f64 / 200.0).clamp(0.0, 1.0);
                    let v = value(&[b, 1.0 - b]);
                    if v > best {
                        best = v;
                        best_b = b;
                    }
                }
                center = best_b;
                radius /= 50.0;
            }
            best
        }
        _ => {
            let mut best = 0.0f64;
            let m = 120;
            let mut arg = (0.0, 0.0);
            for i in 0..=m {
                for j in 0..=(m - i) {
                    let (a, b) = (i as f64 / m as f64, j as f64 / m as f64);
                    let v = value(&[a, b, 1.0 - a - b]);
                    if v > best {
                        best = v;
                        arg = (a, b);
                    }
                }
            }
            // local refinement around the coarse argmax
            let mut radius = 1.0 / m as f64;
            let mut center = arg;
            for _ in 0..5 {
                let mut best_arg = center;
                for i in 0..=40 {
                    for j in 0..=40 {
                        let a =
                            (center.0 - radius + 2.0 * radius * i as f64 / 40.0).clamp(0.0, 1.0);
                        let b =
                            (center.1 - radius + 2.0 * radius * j as f64 / 40.0).clamp(0.0, 1.0);
                        if a + b > 1.0 {
                            continue;
                        }
                        let v = value(&[a, b, 1.0 - a - b]);
                        if v > best {
                            best = v;
                            best_arg = (a, b);
                        }
                    }
                }
                center = best_arg;
                radius /= 10.0;
            }
            best
        }
    }
}
