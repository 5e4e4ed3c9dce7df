//! Mechanical checkers for the algebra sufficient conditions.
//!
//! Each checker returns a typed report carrying a three-valued verdict.
//! `Holds`/`Fails` are only reported when every sub-check is decisive;
//! anything murky is `Inconclusive` — a false `Holds` is worse than an
//! honest shrug, since the underlying criteria are strict inequalities on
//! limits. Limit estimates use Richardson extrapolation across the decades
//! `x = 10^2, 10^3, 10^4` with 1% agreement, and strict comparisons demand
//! a margin of three times the cross-decade spread.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::series::{radial_series, s_psi_membership, SeriesVerdict, SummabilityPolicy};
use crate::young::{growth_class, l_exponent, GrowthReport, YoungFunction};

/// Three-valued outcome of a criterion check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    /// Exit code contract: 0 holds, 1 fails, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Holds => 0,
            Verdict::Fails => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

/// Envelope for serialized criterion output.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub verdict: Verdict,
    pub evidence: serde_json::Value,
}

impl CriterionReport {
    pub fn new(criterion: impl Into<String>, verdict: Verdict, evidence: &impl Serialize) -> Self {
        CriterionReport {
            criterion: criterion.into(),
            verdict,
            evidence: serde_json::to_value(evidence).expect("serializable evidence"),
        }
    }
}

// ---------------------------------------------------------------------------
// Decreasing-quotient splitting inequality
// ---------------------------------------------------------------------------

/// Outcome of the decreasing-quotient check for a weight sequence
/// `sigma(n) = exp(log_sigma(n))`.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub verdict: Verdict,
    /// Whether `sigma(n+1)/sigma(n)` is nonincreasing on `[0, 2N]`.
    pub quotients_decreasing: bool,
    pub first_quotient_violation: Option<u64>,
    /// Max of `LHS - RHS` in the splitting inequality over `m, n <= N`
    /// (only scanned when the hypothesis holds).
    pub max_slack: Option<f64>,
    pub n: u64,
}

/// Verifies that the quotient sequence of `sigma` decreases and then brute
/// forces the splitting inequality
/// `sigma(m+n)/(sigma(m) sigma(n)) <= sigma(2m)/sigma(m)^2 + sigma(2n)/sigma(n)^2`
/// for all `0 <= m, n <= N`. Works on `log sigma` so subexponential weights
/// do not overflow.
///
/// ```
/// use orlicz::criteria::{decreasing_quotient, Verdict};
///
/// // sigma = exp(sqrt n): concave exponent, quotients decrease
/// let rep = decreasing_quotient(|n| (n as f64).sqrt(), 500);
/// assert_eq!(rep.verdict, Verdict::Holds);
///
/// // sigma = exp(n^2): convex exponent, the hypothesis fails
/// let rep = decreasing_quotient(|n| (n * n) as f64, 100);
/// assert!(!rep.quotients_decreasing);
/// ```
pub fn decreasing_quotient(log_sigma: impl Fn(u64) -> f64, n: u64) -> QuotientReport {
    let ls: Vec<f64> = (0..=2 * n).map(&log_sigma).collect();
    let mut decreasing = true;
    let mut first_violation = None;
    for k in 1..2 * n as usize {
        let mu_prev = ls[k] - ls[k - 1];
        let mu_next = ls[k + 1] - ls[k];
        if mu_next > mu_prev + 1e-12 {
            decreasing = false;
            first_violation = Some(k as u64);
            break;
        }
    }
    if !decreasing {
        return QuotientReport {
            verdict: Verdict::Fails,
            quotients_decreasing: false,
            first_quotient_violation: first_violation,
            max_slack: None,
            n,
        };
    }
    let mut max_slack = f64::NEG_INFINITY;
    for m in 0..=n as usize {
        for k in 0..=n as usize {
            let lhs = (ls[m + k] - ls[m] - ls[k]).exp();
            let rhs = (ls[2 * m] - 2.0 * ls[m]).exp() + (ls[2 * k] - 2.0 * ls[k]).exp();
            max_slack = max_slack.max(lhs - rhs);
        }
    }
    let verdict = if max_slack <= 1e-12 {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    QuotientReport {
        verdict,
        quotients_decreasing: true,
        first_quotient_violation: None,
        max_slack: Some(max_slack),
        n,
    }
}

// ---------------------------------------------------------------------------
// Splitting profile u(n) = exp(rho(2n) - 2 rho(n))
// ---------------------------------------------------------------------------

/// The dominating radial profile of a concave-weight coboundary.
pub fn splitting_u(w: &Weight) -> impl Fn(u64) -> f64 {
    let w = w.clone();
    move |n| (w.log_at_radius(2 * n) - 2.0 * w.log_at_radius(n)).exp()
}

/// Scan of the splitting bound `w(s+t)/(w(s)w(t)) <= u(tau(s)) + u(tau(t))`.
#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub verdict: Verdict,
    /// Max of `LHS - RHS` over integer radius pairs up to `radius`.
    pub max_violation: f64,
    pub argmax: (u64, u64),
    pub radius: u64,
    /// First few values of `u`.
    pub u_head: Vec<f64>,
}

/// Builds the profile `u` for a weight with increasing concave `rho`,
/// `rho(0) = 0`, and verifies the bound on all length pairs up to `radius`.
/// The check reduces to integer radii: the worst pair with given lengths is
/// colinear, where `tau(s+t) = tau(s) + tau(t)`.
pub fn splitting_bound(w: &Weight, radius: u64) -> Result<SplittingReport> {
    w.check_invariants(2 * radius)?;
    let u = splitting_u(w);
    let mut max_violation = f64::NEG_INFINITY;
    let mut argmax = (0, 0);
    for m in 0..=radius {
        let um = u(m);
        for n in 0..=radius {
            let lhs = (w.log_at_radius(m + n) - w.log_at_radius(m) - w.log_at_radius(n)).exp();
            let gap = lhs - um - u(n);
            if gap > max_violation {
                max_violation = gap;
                argmax = (m, n);
            }
        }
    }
    let verdict = if max_violation <= 1e-12 {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    Ok(SplittingReport {
        verdict,
        max_violation,
        argmax,
        radius,
        u_head: (0..8).map(u).collect(),
    })
}

// ---------------------------------------------------------------------------
// Limit estimation at infinity
// ---------------------------------------------------------------------------

/// Richardson-extrapolated limit of `f(x)` as `x -> inf`, from the decades
/// `10^2, 10^3, 10^4`.
#[derive(Clone, Debug, Serialize)]
pub enum LimitEstimate {
    Finite { value: f64, spread: f64 },
    PlusInfinity,
    MinusInfinity,
}

fn limit_at_infinity(f: impl Fn(f64) -> f64, context: &str) -> Result<LimitEstimate> {
    let v = [f(1e2), f(1e3), f(1e4)];
    if v.iter().any(|x| x.is_nan()) {
        return Err(Error::InconclusiveGrowth(format!("{context}: NaN samples")));
    }
    if v[2].is_infinite() {
        return Ok(if v[2] > 0.0 {
            LimitEstimate::PlusInfinity
        } else {
            LimitEstimate::MinusInfinity
        });
    }
    let r12 = v[1] + (v[1] - v[0]) / 9.0;
    let r23 = v[2] + (v[2] - v[1]) / 9.0;
    let spread = (r12 - r23).abs();
    if spread <= (0.01 * r23.abs()).max(1e-9) {
        return Ok(LimitEstimate::Finite { value: r23, spread });
    }
    let growing = v[1].abs() >= 1.2 * v[0].abs() && v[2].abs() >= 1.2 * v[1].abs();
    let same_sign = v.iter().all(|&x| x > 0.0) || v.iter().all(|&x| x < 0.0);
    if growing && same_sign {
        return Ok(if v[2] > 0.0 {
            LimitEstimate::PlusInfinity
        } else {
            LimitEstimate::MinusInfinity
        });
    }
    Err(Error::InconclusiveGrowth(format!(
        "{context}: decade samples {v:?} neither settle nor diverge"
    )))
}

// ---------------------------------------------------------------------------
// Membership conditions for the splitting profile
// ---------------------------------------------------------------------------

/// Condition (i): `u w` bounded and `1/w` in the step-function class.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionIReport {
    pub verdict: Verdict,
    pub u_weight_bounded: Verdict,
    /// Estimated sup of `u(n) w(n)` when bounded.
    pub u_weight_sup: Option<f64>,
    pub limit_note: String,
    pub inverse_weight_membership: SeriesVerdict,
}

pub fn condition_bounded_product(
    w: &Weight,
    psi: &YoungFunction,
    dim: u32,
    policy: &SummabilityPolicy,
) -> ConditionIReport {
    // u(n) w(n) = exp(rho(2n) - rho(n)); bounded iff the exponent settles
    let g = |x: f64| w.rho(2.0 * x) - w.rho(x);
    let (bounded, sup, note) = match limit_at_infinity(g, "rho(2x) - rho(x)") {
        Ok(LimitEstimate::Finite { value, spread }) => {
            let grid_sup = (0..=10_000u64)
                .map(|n| w.log_at_radius(2 * n) - w.log_at_radius(n))
                .fold(f64::NEG_INFINITY, f64::max);
            (
                Verdict::Holds,
                Some(grid_sup.max(value).exp()),
                format!("limit {value:.6} (spread {spread:.2e}); grid sup {grid_sup:.6}"),
            )
        }
        Ok(LimitEstimate::PlusInfinity) => (
            Verdict::Fails,
            None,
            "rho(2x) - rho(x) grows without bound".into(),
        ),
        Ok(LimitEstimate::MinusInfinity) => (Verdict::Holds, Some(1.0), "exponent falls".into()),
        Err(e) => (Verdict::Inconclusive, None, e.to_string()),
    };
    let w2 = w.clone();
    let membership = s_psi_membership(psi, dim, move |n| (-w2.log_at_radius(n)).exp(), policy);
    let verdict = match (bounded, &membership) {
        (Verdict::Holds, m) if m.converges() => Verdict::Holds,
        (Verdict::Fails, _) => Verdict::Fails,
        (_, m) if m.diverges() => Verdict::Fails,
        (Verdict::Inconclusive, _) => Verdict::Inconclusive,
        (_, _) => Verdict::Inconclusive,
    };
    ConditionIReport {
        verdict,
        u_weight_bounded: bounded,
        u_weight_sup: sup,
        limit_note: note,
        inverse_weight_membership: membership,
    }
}

/// Condition (ii): the derivative profile `v(n) = exp(n rho'(n) - rho(n))`
/// lies in the step-function class.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionIiReport {
    pub verdict: Verdict,
    /// Whether `x^2 q'(x) = x rho'(x) - rho(x)` is nonincreasing on the grid,
    /// as concavity predicts.
    pub exponent_nonincreasing: bool,
    pub membership: SeriesVerdict,
}

pub fn condition_derivative_profile(
    w: &Weight,
    psi: &YoungFunction,
    dim: u32,
    policy: &SummabilityPolicy,
) -> ConditionIiReport {
    let exponent = |x: f64| {
        if x == 0.0 {
            0.0
        } else {
            x * w.rho_d1(x) - w.rho(x)
        }
    };
    let mut nonincreasing = true;
    let mut prev = f64::INFINITY;
    for n in 1..=2000u64 {
        let e = exponent(n as f64);
        if e > prev + 1e-9 * (1.0 + prev.abs()) {
            nonincreasing = false;
            break;
        }
        prev = e;
    }
    let w2 = w.clone();
    let membership = s_psi_membership(
        psi,
        dim,
        move |n| {
            if n == 0 {
                1.0
            } else {
                (n as f64 * w2.rho_d1(n as f64) - w2.rho(n as f64)).exp()
            }
        },
        policy,
    );
    let verdict = if membership.converges() {
        Verdict::Holds
    } else if membership.diverges() {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    };
    ConditionIiReport {
        verdict,
        exponent_nonincreasing: nonincreasing,
        membership,
    }
}

/// Condition (iii): `lim x^2 rho''(x) < -d/l`, where `l` is the low-order
/// exponent of `psi`.
///
/// ```
/// use orlicz::criteria::{condition_curvature_limit, Verdict};
/// use orlicz::lattice::Weight;
/// use orlicz::young::power;
///
/// let psi = power(2.0)?.analytic_conjugate().unwrap().clone(); // l = 2
/// // rho = b ln(1+x) has x^2 rho'' -> -b, so the condition is b > d/2
/// let holds = condition_curvature_limit(&Weight::poly(0.75)?, &psi, 1)?;
/// assert_eq!(holds.verdict, Verdict::Holds);
/// let fails = condition_curvature_limit(&Weight::poly(0.25)?, &psi, 1)?;
/// assert_eq!(fails.verdict, Verdict::Fails);
/// # Ok::<(), orlicz::Error>(())
/// ```
#[derive(Clone, Debug, Serialize)]
pub struct ConditionIiiReport {
    pub verdict: Verdict,
    pub limit: Option<f64>,
    pub limit_spread: Option<f64>,
    pub limit_is_minus_infinity: bool,
    pub l_exponent: f64,
    pub l_spread: f64,
    /// The comparison threshold `-d/l`.
    pub threshold: f64,
    pub note: String,
}

pub fn condition_curvature_limit(
    w: &Weight,
    psi: &YoungFunction,
    dim: u32,
) -> Result<ConditionIiiReport> {
    let (l, l_spread) = l_exponent(psi)?;
    let threshold = -(dim as f64) / l;
    let curvature = |x: f64| x * x * w.rho_d2(x);
    match limit_at_infinity(curvature, "x^2 rho''(x)") {
        Ok(LimitEstimate::MinusInfinity) => Ok(ConditionIiiReport {
            verdict: Verdict::Holds,
            limit: None,
            limit_spread: None,
            limit_is_minus_infinity: true,
            l_exponent: l,
            l_spread,
            threshold,
            note: "curvature limit is -infinity".into(),
        }),
        Ok(LimitEstimate::PlusInfinity) => Ok(ConditionIiiReport {
            verdict: Verdict::Fails,
            limit: None,
            limit_spread: None,
            limit_is_minus_infinity: false,
            l_exponent: l,
            l_spread,
            threshold,
            note: "curvature limit is +infinity".into(),
        }),
        Ok(LimitEstimate::Finite { value, spread }) => {
            // strictness: the margin must beat three times the decade spread
            let margin = 3.0 * spread;
            let verdict = if value < threshold - margin {
                Verdict::Holds
            } else if value > threshold + margin {
                Verdict::Fails
            } else {
                Verdict::Inconclusive
            };
            Ok(ConditionIiiReport {
                verdict,
                limit: Some(value),
                limit_spread: Some(spread),
                limit_is_minus_infinity: false,
                l_exponent: l,
                l_spread,
                threshold,
                note: format!(
                    "estimate {value:.6} vs threshold {threshold:.6}, margin {margin:.2e}"
                ),
            })
        }
        Err(e) => Ok(ConditionIiiReport {
            verdict: Verdict::Inconclusive,
            limit: None,
            limit_spread: None,
            limit_is_minus_infinity: false,
            l_exponent: l,
            l_spread,
            threshold,
            note: e.to_string(),
        }),
    }
}

// ---------------------------------------------------------------------------
// Operator-algebra certificate
// ---------------------------------------------------------------------------

/// Which of the known weight families the certificate recognizes.
#[derive(Clone, Debug, Serialize)]
pub struct CorollaryCase {
    pub family: String,
    /// For polynomial weights: whether `1/w` is square summable.
    pub inverse_weight_square_summable: Option<SeriesVerdict>,
}

/// Certificate that the hypotheses for an operator-algebra representation
/// are verified: the quadratic lower bound near zero (the group is discrete)
/// and square summability of the splitting profile.
///
/// ```
/// use orlicz::criteria::{operator_algebra_certificate, Verdict};
/// use orlicz::lattice::Weight;
/// use orlicz::series::SummabilityPolicy;
/// use orlicz::young::power;
///
/// let policy = SummabilityPolicy::default();
/// let phi = power(2.0)?;
/// let granted = operator_algebra_certificate(&phi, &Weight::poly(0.75)?, 1, &policy)?;
/// assert_eq!(granted.verdict, Verdict::Holds);
/// let denied = operator_algebra_certificate(&phi, &Weight::poly(0.25)?, 1, &policy)?;
/// assert_eq!(denied.verdict, Verdict::Fails);
/// # Ok::<(), orlicz::Error>(())
/// ```
#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub growth: GrowthReport,
    pub u_square_series: SeriesVerdict,
    pub corollary_case: CorollaryCase,
    /// Young function named for the intersection space.
    pub intersection_young: String,
    pub dim: u32,
}

pub fn operator_algebra_certificate(
    phi: &YoungFunction,
    w: &Weight,
    dim: u32,
    policy: &SummabilityPolicy,
) -> Result<CertificateReport> {
    let growth = growth_class(phi)?;
    let u = splitting_u(w);
    let u_square = radial_series(dim, move |n| {
        let v = u(n);
        v * v
    });
    let series = crate::series::summability(&u_square, policy);

    let label = w.label();
    let corollary_case = if label.starts_with("poly") {
        let w2 = w.clone();
        let inv_sq = radial_series(dim, move |n| (-2.0 * w2.log_at_radius(n)).exp());
        CorollaryCase {
            family: format!("polynomial weight ({label}); applies when 1/w is square summable"),
            inverse_weight_square_summable: Some(crate::series::summability(&inv_sq, policy)),
        }
    } else if label.starts_with("subexp:") {
        CorollaryCase {
            family: format!("subexponential power weight ({label}); always qualifies"),
            inverse_weight_square_summable: None,
        }
    } else if label.starts_with("subexp2:") {
        CorollaryCase {
            family: format!("subexponential log-damped weight ({label}); always qualifies"),
            inverse_weight_square_summable: None,
        }
    } else {
        CorollaryCase {
            family: format!("custom weight ({label})"),
            inverse_weight_square_summable: None,
        }
    };

    let verdict = if growth.satisfies_discrete.holds() && series.converges() {
        Verdict::Holds
    } else if growth.satisfies_discrete.status == crate::young::RegimeStatus::Fails
        || series.diverges()
    {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    };
    Ok(CertificateReport {
        verdict,
        growth,
        u_square_series: series,
        corollary_case,
        intersection_young: format!("x^2 + {}", phi.name()),
        dim,
    })
}

// ---------------------------------------------------------------------------
// Closed-form thresholds for weighted p-norm algebras
// ---------------------------------------------------------------------------

/// The two arithmetic thresholds for `l^p` with a polynomial weight.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ThresholdReport {
    pub banach_algebra: bool,
    pub operator_algebra_claimed: bool,
    pub q: f64,
    pub banach_threshold: f64,
    pub operator_threshold: f64,
}

/// `banach_algebra` iff `beta > d/q`; `operator_algebra_claimed` additionally
/// needs `1 < p <= 2` and `beta > d/2`.
pub fn lp_threshold(dim: u32, p: f64, beta: f64) -> Result<ThresholdReport> {
    if p.is_nan() || p <= 1.0 || !p.is_finite() {
        return Err(Error::Param(format!("need 1 < p < inf, got {p}")));
    }
    if beta.is_nan() || beta <= 0.0 || !beta.is_finite() {
        return Err(Error::Param(format!("need beta > 0, got {beta}")));
    }
    if dim == 0 {
        return Err(Error::Param("need d >= 1".into()));
    }
    let q = p / (p - 1.0);
    let banach_threshold = dim as f64 / q;
    let operator_threshold = dim as f64 / 2.0;
    Ok(ThresholdReport {
        banach_algebra: beta > banach_threshold,
        operator_algebra_claimed: p <= 2.0 && beta > operator_threshold,
        q,
        banach_threshold,
        operator_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::{pair_for, parse_young_spec, power};

    #[test]
    fn quotient_check_examples() {
        // sigma = exp(sqrt n)
        let r = decreasing_quotient(|n| (n as f64).sqrt(), 500);
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.max_slack.unwrap() <= 1e-12);
        // sigma = exp(n^2): quotients increase
        let r = decreasing_quotient(|n| (n as f64) * (n as f64), 50);
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(!r.quotients_decreasing);
        // zero radius row/column always satisfies the inequality
        let r = decreasing_quotient(|n| (n as f64).sqrt(), 1);
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn splitting_profile_closed_forms() {
        // poly: u(n) = ((1+2n)/(1+n)^2)^beta
        let w = Weight::poly(2.0).unwrap();
        let u = splitting_u(&w);
        for n in [0u64, 1, 5, 40] {
            let x = n as f64;
            let expect = ((1.0 + 2.0 * x) / ((1.0 + x) * (1.0 + x))).powi(2);
            assert!((u(n) - expect).abs() < 1e-12 * expect.max(1e-12), "n={n}");
        }
        assert_eq!(u(0), 1.0);
        // subexp: u(n) = exp(-c (2 - 2^a) n^a)
        let w = Weight::subexp_pow(0.5, 1.0).unwrap();
        let u = splitting_u(&w);
        for n in [1u64, 4, 100] {
            let x = n as f64;
            let expect = (-(2.0 - 2f64.powf(0.5)) * x.powf(0.5)).exp();
            assert!((u(n) - expect).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn splitting_bound_holds_for_concave_profiles() {
        for w in [
            Weight::poly(0.5).unwrap(),
            Weight::poly(2.0).unwrap(),
            Weight::subexp_pow(0.75, 2.0).unwrap(),
            Weight::subexp_log(1.0, 1.0).unwrap(),
        ] {
            let rep = splitting_bound(&w, 100).unwrap();
            assert_eq!(rep.verdict, Verdict::Holds, "{}", w.label());
            assert!(rep.max_violation <= 1e-12);
        }
    }

    #[test]
    fn splitting_bound_rejects_convex_profile() {
        let w = Weight::custom("quadratic", |x| x * x, None, None);
        assert!(matches!(splitting_bound(&w, 50), Err(Error::Concavity(_))));
    }

    #[test]
    fn condition_i_examples() {
        let policy = SummabilityPolicy {
            n_max: 30_000,
            ..Default::default()
        };
        let psi = power(2.0).unwrap().analytic_conjugate().unwrap().clone();
        // beta = 2, d = 1: bounded product and square-summable inverse
        let r = condition_bounded_product(&Weight::poly(2.0).unwrap(), &psi, 1, &policy);
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.u_weight_sup.unwrap() <= 4.0 + 1e-6); // 2^beta
                                                        // beta = 0.25: inverse weight fails square summability
        let r = condition_bounded_product(&Weight::poly(0.25).unwrap(), &psi, 1, &policy);
        assert_eq!(r.verdict, Verdict::Fails);
        // constant weight: inverse has non-vanishing terms
        let one = Weight::custom("one", |_| 0.0, None, None);
        let r = condition_bounded_product(&one, &psi, 1, &policy);
        assert_eq!(r.verdict, Verdict::Fails);
        // subexponential: u w unbounded
        let r = condition_bounded_product(&Weight::subexp_pow(0.5, 1.0).unwrap(), &psi, 1, &policy);
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.u_weight_bounded, Verdict::Fails);
    }

    #[test]
    fn condition_ii_examples() {
        let policy = SummabilityPolicy {
            n_max: 30_000,
            ..Default::default()
        };
        let psi = power(2.0).unwrap().analytic_conjugate().unwrap().clone();
        // subexponential: v decays subexponentially
        let r =
            condition_derivative_profile(&Weight::subexp_pow(0.5, 1.0).unwrap(), &psi, 1, &policy);
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.exponent_nonincreasing);
        // linear profile: v constant, series diverges
        let lin = Weight::custom(
            "linear",
            |x| x,
            Some(std::sync::Arc::new(|_| 1.0)),
            Some(std::sync::Arc::new(|_| 0.0)),
        );
        let r = condition_derivative_profile(&lin, &psi, 1, &policy);
        assert_eq!(r.verdict, Verdict::Fails);
        // polynomial: verdict matches the beta > d/l threshold
        let r = condition_derivative_profile(&Weight::poly(2.0).unwrap(), &psi, 1, &policy);
        assert_eq!(r.verdict, Verdict::Holds);
        let r = condition_derivative_profile(&Weight::poly(0.25).unwrap(), &psi, 1, &policy);
        assert_eq!(r.verdict, Verdict::Fails);
    }

    #[test]
    fn condition_iii_examples() {
        let psi = power(2.0).unwrap().analytic_conjugate().unwrap().clone();
        // poly: limit -beta, holds iff beta > d/2 for l = 2
        for (beta, expect) in [(0.75, Verdict::Holds), (0.25, Verdict::Fails)] {
            let r = condition_curvature_limit(&Weight::poly(beta).unwrap(), &psi, 1).unwrap();
            assert_eq!(r.verdict, expect, "beta = {beta}");
            let est = r.limit.unwrap();
            assert!(
                (est + beta).abs() <= 0.01 * beta,
                "estimate {est} for -{beta}"
            );
        }
        // subexponential: limit is minus infinity
        let r = condition_curvature_limit(&Weight::subexp_pow(0.5, 1.0).unwrap(), &psi, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.limit_is_minus_infinity);
        let r = condition_curvature_limit(&Weight::subexp_log(1.0, 1.0).unwrap(), &psi, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        // linear profile: limit 0 fails the strict inequality
        let lin = Weight::custom(
            "linear",
            |x| x,
            Some(std::sync::Arc::new(|_| 1.0)),
            Some(std::sync::Arc::new(|_| 0.0)),
        );
        let r = condition_curvature_limit(&lin, &psi, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.limit, Some(0.0));
    }

    #[test]
    fn certificate_examples() {
        let policy = SummabilityPolicy::default();
        let phi = power(2.0).unwrap();
        let granted =
            operator_algebra_certificate(&phi, &Weight::poly(0.75).unwrap(), 1, &policy).unwrap();
        assert_eq!(granted.verdict, Verdict::Holds);
        let denied =
            operator_algebra_certificate(&phi, &Weight::poly(0.25).unwrap(), 1, &policy).unwrap();
        assert_eq!(denied.verdict, Verdict::Fails);
        let sg =
            operator_algebra_certificate(&phi, &Weight::subexp_pow(0.5, 1.0).unwrap(), 1, &policy)
                .unwrap();
        assert_eq!(sg.verdict, Verdict::Holds);
        let nu =
            operator_algebra_certificate(&phi, &Weight::subexp_log(1.0, 1.0).unwrap(), 1, &policy)
                .unwrap();
        assert_eq!(nu.verdict, Verdict::Holds);
        assert!(nu.intersection_young.contains("x^2 +"));
        // an entropy-type Young function qualifies on the growth side
        let ent = parse_young_spec("entropy").unwrap();
        let r =
            operator_algebra_certificate(&ent, &Weight::poly(0.75).unwrap(), 1, &policy).unwrap();
        assert!(r.growth.satisfies_discrete.holds());
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn threshold_examples() {
        let r = lp_threshold(1, 2.0, 0.75).unwrap();
        assert!(r.banach_algebra && r.operator_algebra_claimed);
        let r = lp_threshold(2, 2.0, 0.9).unwrap();
        assert!(!r.banach_algebra && !r.operator_algebra_claimed);
        let r = lp_threshold(1, 4.0, 0.8).unwrap();
        assert!(r.banach_algebra && !r.operator_algebra_claimed);
        assert!(lp_threshold(1, 1.0, 0.5).is_err());
        assert!(lp_threshold(1, 2.0, 0.0).is_err());
        assert!(lp_threshold(0, 2.0, 0.5).is_err());
    }

    #[test]
    fn certificate_matches_thresholds_for_powers() {
        // cross-validation away from the boundary band
        let policy = SummabilityPolicy::default();
        let phi = power(2.0).unwrap();
        for beta in [0.2, 0.35, 0.65, 0.9, 1.3] {
            let cert = operator_algebra_certificate(&phi, &Weight::poly(beta).unwrap(), 1, &policy)
                .unwrap();
            let th = lp_threshold(1, 2.0, beta).unwrap();
            assert_eq!(
                cert.verdict == Verdict::Holds,
                th.operator_algebra_claimed,
                "beta = {beta}"
            );
        }
    }

    #[test]
    fn pair_helper_supplies_psi() {
        let pair = pair_for(&parse_young_spec("power:3").unwrap());
        let (l, _) = l_exponent(&pair.psi).unwrap();
        assert!((l - 1.5).abs() < 0.01);
    }
}
