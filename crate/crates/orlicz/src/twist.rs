//! Twisted convolution under a 2-cocycle.
//!
//! `(f ⊛ g)(t) = sum_s f(s) g(t-s) Omega(s, t-s)`, an exact finite sum over
//! the supports. The sum is a direct double loop: supports are small and the
//! cocycle factor breaks the translation structure an FFT would need.
//!
//! ```
//! use orlicz::function::DiscreteFunction;
//! use orlicz::lattice::{coboundary, LatticePoint, Weight};
//! use orlicz::twist::twisted_convolve;
//!
//! let omega = coboundary(Weight::poly(1.0)?);
//! let d1 = DiscreteFunction::delta(LatticePoint(vec![1]));
//! let report = twisted_convolve(&omega, &d1, &d1)?;
//! // one term: Omega(1,1) = w(2)/w(1)^2 = 3/4
//! assert!((report.result.get(&LatticePoint(vec![2])).re - 0.75).abs() < 1e-14);
//! assert_eq!(report.flops, 1);
//! # Ok::<(), orlicz::Error>(())
//! ```
//!
//! For a coboundary twist, dividing by the weight intertwines the twisted
//! and plain convolutions — the factor `w(s+t)/(w(s)w(t))` telescopes:
//!
//! ```
//! use orlicz::function::DiscreteFunction;
//! use orlicz::lattice::{coboundary, Cocycle, LatticePoint, Weight};
//! use orlicz::twist::twisted_convolve;
//! use num_complex::Complex64;
//!
//! let w = Weight::poly(1.0)?;
//! let omega = coboundary(w.clone());
//! let plain = Cocycle::Product { factors: vec![] };
//!
//! let mut f = DiscreteFunction::new(1);
//! f.set(LatticePoint(vec![1]), Complex64::new(2.0, 0.0))?;
//! f.set(LatticePoint(vec![-2]), Complex64::new(0.0, 1.0))?;
//! let g = DiscreteFunction::delta(LatticePoint(vec![3]));
//!
//! let lhs = twisted_convolve(&omega, &f, &g)?.result.mul_inverse_weight(&w);
//! let rhs = twisted_convolve(&plain, &f.mul_inverse_weight(&w), &g.mul_inverse_weight(&w))?.result;
//! assert!(lhs.sub(&rhs)?.sup_norm() < 1e-14);
//! # Ok::<(), orlicz::Error>(())
//! ```

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::DiscreteFunction;
use crate::lattice::{word_length, Cocycle};
use crate::norms::luxemburg_norm;
use crate::young::YoungFunction;

/// Result of a twisted convolution, with a flop count for performance
/// tracking.
#[derive(Clone, Debug)]
pub struct ConvolutionReport {
    pub result: DiscreteFunction,
    /// Complex multiply-accumulate operations performed.
    pub flops: u64,
    pub cocycle_id: String,
}

/// Twisted convolution of two finitely supported functions.
pub fn twisted_convolve(
    omega: &Cocycle,
    f: &DiscreteFunction,
    g: &DiscreteFunction,
) -> Result<ConvolutionReport> {
    if f.dim() != g.dim() {
        return Err(Error::Dimension {
            expected: f.dim(),
            got: g.dim(),
        });
    }
    if let Some(d) = omega.required_dim() {
        if d != f.dim() {
            return Err(Error::Dimension {
                expected: d,
                got: f.dim(),
            });
        }
    }
    let mut out = DiscreteFunction::new(f.dim());
    let mut flops = 0u64;
    for (s, fs) in f.iter() {
        for (r, gr) in g.iter() {
            let t = s.add(r);
            out.add_at(t, fs * gr * omega.evaluate(s, r))?;
            flops += 1;
        }
    }
    Ok(ConvolutionReport {
        result: out,
        flops,
        cocycle_id: omega.label(),
    })
}

/// Relative sup-norm gap between the two associations of a triple product.
pub fn associativity_residual(
    omega: &Cocycle,
    f: &DiscreteFunction,
    g: &DiscreteFunction,
    h: &DiscreteFunction,
) -> Result<f64> {
    let left = twisted_convolve(omega, &twisted_convolve(omega, f, g)?.result, h)?.result;
    let right = twisted_convolve(omega, f, &twisted_convolve(omega, g, h)?.result)?.result;
    let denom = 1.0 + right.sup_norm();
    Ok(left.sub(&right)?.sup_norm() / denom)
}

/// Report of a splitting-bound scan `|Omega(s,t)| <= u(tau(s)) + v(tau(t))`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCheck {
    /// Max of `|Omega| - u - v` over the scan; nonpositive means the bound
    /// holds everywhere scanned.
    pub max_violation: f64,
    /// Radii attaining the maximum.
    pub argmax: (u64, u64),
    /// Whether the per-radius modulus maximum is exact for this cocycle.
    pub exact: bool,
    pub radius: u64,
}

/// Scans the splitting bound over all length pairs up to `radius`.
///
/// The modulus of every built-in cocycle depends on the pair only through
/// the three lengths involved, and its maximum over pairs with fixed
/// `(tau(s), tau(t))` is attained at colinear points, so the scan over
/// integer radius pairs is exact; no lattice enumeration is needed.
pub fn decomposition_bound_check(
    omega: &Cocycle,
    u: impl Fn(u64) -> f64,
    v: impl Fn(u64) -> f64,
    radius: u64,
) -> DecompositionCheck {
    let mut worst = f64::NEG_INFINITY;
    let mut arg = (0, 0);
    for m in 0..=radius {
        let um = u(m);
        for n in 0..=radius {
            let gap = omega.radial_modulus_max(m, n) - um - v(n);
            if gap > worst {
                worst = gap;
                arg = (m, n);
            }
        }
    }
    DecompositionCheck {
        max_violation: worst,
        argmax: arg,
        exact: true,
        radius,
    }
}

/// Sampler configuration for the submultiplicativity probe.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeSampler {
    pub dim: usize,
    pub support_radius: i64,
    pub support_points: usize,
}

/// Empirical bound tracking for `N(f ⊛ g) <= C N(f) N(g)`.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub max_ratio: f64,
    /// Sup norms of the witnessing pair, for reproduction.
    pub argmax_f: String,
    pub argmax_g: String,
    pub trials: usize,
}

/// Samples random pairs and reports the worst observed ratio
/// `N(f ⊛ g) / (N(f) N(g))`, the empirical algebra constant.
pub fn submultiplicativity_probe<R: Rng + ?Sized>(
    phi: &YoungFunction,
    omega: &Cocycle,
    sampler: &ProbeSampler,
    trials: usize,
    rng: &mut R,
) -> Result<ProbeReport> {
    if trials == 0 {
        return Err(Error::Param("probe needs at least one trial".into()));
    }
    let mut max_ratio = f64::NEG_INFINITY;
    let mut arg_f = String::new();
    let mut arg_g = String::new();
    for _ in 0..trials {
        let f = DiscreteFunction::random(
            rng,
            sampler.dim,
            sampler.support_radius,
            sampler.support_points,
        );
        let g = DiscreteFunction::random(
            rng,
            sampler.dim,
            sampler.support_radius,
            sampler.support_points,
        );
        let conv = twisted_convolve(omega, &f, &g)?.result;
        let ratio =
            luxemburg_norm(phi, &conv)? / (luxemburg_norm(phi, &f)? * luxemburg_norm(phi, &g)?);
        if ratio > max_ratio {
            max_ratio = ratio;
            arg_f = serde_json::to_string(&f).expect("serializable");
            arg_g = serde_json::to_string(&g).expect("serializable");
        }
    }
    Ok(ProbeReport {
        max_ratio,
        argmax_f: arg_f,
        argmax_g: arg_g,
        trials,
    })
}

/// Checks `supp(f ⊛ g) ⊆ supp f + supp g`.
pub fn support_contained(
    conv: &DiscreteFunction,
    f: &DiscreteFunction,
    g: &DiscreteFunction,
) -> bool {
    use std::collections::BTreeSet;
    let sums: BTreeSet<_> = f
        .support()
        .flat_map(|s| g.support().map(move |r| s.add(r)))
        .collect();
    conv.support().all(|t| sums.contains(t))
}

/// Max word length appearing in the support.
pub fn support_radius(f: &DiscreteFunction) -> u64 {
    f.support().map(word_length).max().unwrap_or(0)
}
