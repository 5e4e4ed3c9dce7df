//! Radial series over `Z^d` and sound-by-construction summability verdicts.
//!
//! A sum over the lattice of a radial profile reduces to
//! `sum_n sphere(d,n) * value(n)`. The diagnostics below never guess: a
//! `Converges` verdict carries a certified tail bound derived from a ratio
//! hypothesis verified on the final window, a `Diverges` verdict carries a
//! harmonic-minorant or non-vanishing witness, and anything else is
//! `Inconclusive` with the reason. Every verdict records the hypothesis
//! checks it rests on, so reports are auditable.
//!
//! ```
//! use orlicz::series::{radial_series, summability, SummabilityPolicy};
//!
//! let policy = SummabilityPolicy::default();
//!
//! // sum 2 (1+n)^{-1.5} on Z: power decay, certified tail
//! let rt = radial_series(1, |n| (1.0 + n as f64).powf(-1.5));
//! assert!(summability(&rt, &policy).converges());
//!
//! // the harmonic profile diverges with a minorant witness
//! let rt = radial_series(1, |n| (1.0 + n as f64).recip());
//! assert!(summability(&rt, &policy).diverges());
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lattice::sphere_size_f64;
use crate::young::YoungFunction;

/// A nonnegative radial summand, already multiplied by the sphere size.
#[derive(Clone)]
pub struct RadialTerm {
    term: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
    /// Exact ratio `term(n+1)/term(n)` when a closed form is available.
    ratio: Option<Arc<dyn Fn(u64) -> f64 + Send + Sync>>,
}

impl RadialTerm {
    pub fn new(term: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        RadialTerm {
            term: Arc::new(term),
            ratio: None,
        }
    }

    pub fn with_ratio(mut self, ratio: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        self.ratio = Some(Arc::new(ratio));
        self
    }

    pub fn term(&self, n: u64) -> f64 {
        (self.term)(n)
    }
}

/// `term(n) = sphere(d,n) * value(n)` for a per-point radial value.
pub fn radial_series(dim: u32, value: impl Fn(u64) -> f64 + Send + Sync + 'static) -> RadialTerm {
    RadialTerm::new(move |n| sphere_size_f64(dim, n) * value(n))
}

/// Tuning knobs for the summability scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummabilityPolicy {
    /// Number of terms inspected.
    pub n_max: u64,
    /// Length of the final window the hypotheses are checked on.
    pub window: u64,
    /// Geometric certificates need `ratio <= 1 - geometric_margin`.
    pub geometric_margin: f64,
    /// Power-decay certificates need local exponent `>= 1 + power_margin`.
    pub power_margin: f64,
    /// Terms below this are treated as vanished.
    pub floor: f64,
}

impl Default for SummabilityPolicy {
    fn default() -> Self {
        SummabilityPolicy {
            n_max: 100_000,
            window: 200,
            geometric_margin: 0.01,
            power_margin: 0.05,
            floor: 1e-280,
        }
    }
}

/// Outcome of a summability scan.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum SeriesOutcome {
    Converges {
        /// Certified bound on the tail beyond the inspected terms, valid
        /// under the recorded window hypotheses.
        tail_bound: f64,
        certificate: String,
    },
    Diverges {
        witness: String,
    },
    Inconclusive {
        reason: String,
    },
}

/// Summability verdict with its audit trail.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesVerdict {
    pub outcome: SeriesOutcome,
    pub partial_sum: f64,
    pub terms_inspected: u64,
    /// The hypothesis checks the verdict rests on.
    pub hypotheses: Vec<String>,
}

impl SeriesVerdict {
    pub fn converges(&self) -> bool {
        matches!(self.outcome, SeriesOutcome::Converges { .. })
    }

    pub fn diverges(&self) -> bool {
        matches!(self.outcome, SeriesOutcome::Diverges { .. })
    }

    pub fn inconclusive(&self) -> bool {
        matches!(self.outcome, SeriesOutcome::Inconclusive { .. })
    }

    pub fn tail_bound(&self) -> Option<f64> {
        match &self.outcome {
            SeriesOutcome::Converges { tail_bound, .. } => Some(*tail_bound),
            _ => None,
        }
    }

    fn inconclusive_with(reason: String, partial: f64, n: u64, hyp: Vec<String>) -> Self {
        SeriesVerdict {
            outcome: SeriesOutcome::Inconclusive { reason },
            partial_sum: partial,
            terms_inspected: n,
            hypotheses: hyp,
        }
    }
}

/// Decides `sum_n term(n) < inf` from a finite scan.
///
/// Convergence routes (each certifies a tail bound):
/// * geometric — window ratios nonincreasing and `<= 1 - margin`; tail
///   `term(N) rbar / (1 - rbar)`;
/// * power decay — local exponents `s_n = -ln r_n / ln((n+1)/n)` are
///   `>= 1 + margin` and nondecreasing on the window; tail
///   `term(N) N / (sbar - 1)`;
/// * vanished — every term on the final window is below the floor.
///
/// Divergence routes: terms bounded away from zero, or a harmonic minorant
/// (`n * term(n)` positive and nondecreasing on the window).
pub fn summability(rt: &RadialTerm, policy: &SummabilityPolicy) -> SeriesVerdict {
    let n_max = policy.n_max.max(16);
    let mut partial = 0.0f64;
    let mut terms = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let t = rt.term(n);
        if t < 0.0 || t.is_nan() {
            return SeriesVerdict::inconclusive_with(
                format!("term({n}) = {t} is not a nonnegative number"),
                partial,
                n,
                vec![],
            );
        }
        partial += t;
        terms.push(t);
    }

    let mut hyp = Vec::new();

    // effective end: last index with a term above the floor
    let n_eff = match terms.iter().rposition(|&t| t > policy.floor) {
        None => {
            return SeriesVerdict {
                outcome: SeriesOutcome::Converges {
                    tail_bound: 0.0,
                    certificate: "all terms at or below the floor".into(),
                },
                partial_sum: partial,
                terms_inspected: n_max + 1,
                hypotheses: vec![format!("every term <= floor {}", policy.floor)],
            }
        }
        Some(i) => i as u64,
    };
    if n_eff + policy.window <= n_max {
        hyp.push(format!(
            "terms vanish beyond n = {n_eff} (floor {}), assumed zero onward",
            policy.floor
        ));
        return SeriesVerdict {
            outcome: SeriesOutcome::Converges {
                tail_bound: 0.0,
                certificate: "terms vanish on the final window".into(),
            },
            partial_sum: partial,
            terms_inspected: n_max + 1,
            hypotheses: hyp,
        };
    }

    let win_start = n_eff.saturating_sub(policy.window.min(n_eff.saturating_sub(1)).max(8));
    if n_eff - win_start < 8 {
        return SeriesVerdict::inconclusive_with(
            "too few nonzero terms for a window".into(),
            partial,
            n_max + 1,
            hyp,
        );
    }

    // window ratios
    let mut ratios = Vec::new();
    for n in win_start..n_eff {
        let r = match &rt.ratio {
            Some(f) => f(n),
            None => terms[(n + 1) as usize] / terms[n as usize],
        };
        if !r.is_finite() || r <= 0.0 {
            return SeriesVerdict::inconclusive_with(
                format!("ratio at n = {n} is {r}"),
                partial,
                n_max + 1,
                hyp,
            );
        }
        ratios.push((n, r));
    }

    let nonincreasing = ratios.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12));
    let r_max = ratios.iter().map(|&(_, r)| r).fold(0.0f64, f64::max);

    // geometric route
    if nonincreasing && r_max <= 1.0 - policy.geometric_margin {
        hyp.push(format!(
            "window [{win_start}, {n_eff}]: ratios nonincreasing, max {r_max:.6e} <= 1 - {}",
            policy.geometric_margin
        ));
        let tail = terms[n_eff as usize] * r_max / (1.0 - r_max);
        return SeriesVerdict {
            outcome: SeriesOutcome::Converges {
                tail_bound: tail,
                certificate: format!("eventually geometric with ratio <= {r_max:.6e}"),
            },
            partial_sum: partial,
            terms_inspected: n_max + 1,
            hypotheses: hyp,
        };
    }

    // power-decay route: local exponent s_n with term ~ n^{-s}
    let exponents: Vec<(u64, f64)> = ratios
        .iter()
        .map(|&(n, r)| {
            let step = ((n + 1) as f64 / n as f64).ln();
            (n, -r.ln() / step)
        })
        .collect();
    let s_min = exponents
        .iter()
        .map(|&(_, s)| s)
        .fold(f64::INFINITY, f64::min);
    // rounding in the terms is amplified by 1/ln((n+1)/n) ~ n when the local
    // exponent is extracted, so the monotonicity slack is coarser here than
    // for the raw ratios
    let s_nondecreasing = exponents
        .windows(2)
        .all(|w| w[1].1 >= w[0].1 - 1e-7 * (1.0 + w[0].1.abs()));
    if s_nondecreasing && s_min >= 1.0 + policy.power_margin {
        hyp.push(format!(
            "window [{win_start}, {n_eff}]: local exponents nondecreasing, min {s_min:.6}"
        ));
        let n = n_eff as f64;
        let tail = terms[n_eff as usize] * n / (s_min - 1.0);
        return SeriesVerdict {
            outcome: SeriesOutcome::Converges {
                tail_bound: tail,
                certificate: format!("power decay with exponent >= {s_min:.6}"),
            },
            partial_sum: partial,
            terms_inspected: n_max + 1,
            hypotheses: hyp,
        };
    }

    // divergence: harmonic minorant c/n (covers non-vanishing terms as well)
    let minorant: Vec<f64> = (win_start.max(1)..=n_eff)
        .map(|n| n as f64 * terms[n as usize])
        .collect();
    let c_min = minorant.iter().cloned().fold(f64::INFINITY, f64::min);
    let c_nondecreasing = minorant.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-9));
    if c_nondecreasing && c_min > 0.0 {
        hyp.push(format!(
            "window [{win_start}, {n_eff}]: n*term(n) nondecreasing, min {c_min:.6e}"
        ));
        return SeriesVerdict {
            outcome: SeriesOutcome::Diverges {
                witness: format!("term(n) >= {c_min:.6e}/n on and beyond the window"),
            },
            partial_sum: partial,
            terms_inspected: n_max + 1,
            hypotheses: hyp,
        };
    }

    SeriesVerdict::inconclusive_with(
        format!(
            "no route certified on window [{win_start}, {n_eff}]: ratio max {r_max:.6}, \
             exponent min {s_min:.6}, minorant min {c_min:.6e}"
        ),
        partial,
        n_max + 1,
        hyp,
    )
}

/// Decides membership of a radial profile in the step-function class of the
/// complementary space: convergence of `sum sphere(d,n) psi(alpha value(n))`
/// is required for every `alpha`, approximated by the escalating ladder
/// `alpha in {1, 2, 10, 100}`. The surrogate is recorded in the verdict.
///
/// ```
/// use orlicz::series::{s_psi_membership, SummabilityPolicy};
/// use orlicz::young::power;
///
/// let psi = power(2.0)?.analytic_conjugate().unwrap().clone();
/// let policy = SummabilityPolicy { n_max: 20_000, ..Default::default() };
/// let v = s_psi_membership(&psi, 1, |n| (1.0 + n as f64).recip(), &policy);
/// assert!(v.converges());
/// assert!(v.hypotheses.iter().any(|h| h.contains("alpha-escalation")));
/// # Ok::<(), orlicz::Error>(())
/// ```
pub fn s_psi_membership(
    psi: &YoungFunction,
    dim: u32,
    value: impl Fn(u64) -> f64 + Send + Sync + Clone + 'static,
    policy: &SummabilityPolicy,
) -> SeriesVerdict {
    // precondition: nonnegative, eventually nonincreasing
    let probe_to = policy.n_max.min(4000);
    let mut prev = f64::INFINITY;
    for n in 0..=probe_to {
        let v = value(n);
        if v < 0.0 || v.is_nan() {
            return SeriesVerdict::inconclusive_with(
                format!("value({n}) = {v} is not nonnegative"),
                0.0,
                0,
                vec![],
            );
        }
        if n >= 16 && v > prev * (1.0 + 1e-12) {
            return SeriesVerdict::inconclusive_with(
                format!("value increases at n = {n}; radial profile not eventually monotone"),
                0.0,
                0,
                vec![],
            );
        }
        if n >= 16 {
            prev = prev.min(v);
        }
    }

    let mut hyp = vec![
        "alpha-escalation surrogate for `every alpha`: tested alpha in {1, 2, 10, 100}".into(),
    ];
    let mut overall: Option<SeriesVerdict> = None;
    let mut partial_at_one = 0.0;
    for &alpha in &[1.0f64, 2.0, 10.0, 100.0] {
        let psi = psi.clone();
        let value = value.clone();
        let rt = radial_series(dim, move |n| psi.evaluate(alpha * value(n)));
        let v = summability(&rt, policy);
        if alpha == 1.0 {
            partial_at_one = v.partial_sum;
        }
        match &v.outcome {
            SeriesOutcome::Converges { tail_bound, .. } => {
                hyp.push(format!(
                    "alpha = {alpha}: converges, tail <= {tail_bound:.6e}"
                ));
                overall = Some(v);
            }
            SeriesOutcome::Diverges { witness } => {
                hyp.push(format!("alpha = {alpha}: diverges ({witness})"));
                return SeriesVerdict {
                    outcome: v.outcome.clone(),
                    partial_sum: v.partial_sum,
                    terms_inspected: v.terms_inspected,
                    hypotheses: hyp,
                };
            }
            SeriesOutcome::Inconclusive { reason } => {
                hyp.push(format!("alpha = {alpha}: inconclusive ({reason})"));
                return SeriesVerdict {
                    outcome: v.outcome.clone(),
                    partial_sum: v.partial_sum,
                    terms_inspected: v.terms_inspected,
                    hypotheses: hyp,
                };
            }
        }
    }
    let last = overall.expect("at least one alpha run");
    SeriesVerdict {
        outcome: last.outcome,
        partial_sum: partial_at_one,
        terms_inspected: last.terms_inspected,
        hypotheses: hyp,
    }
}
