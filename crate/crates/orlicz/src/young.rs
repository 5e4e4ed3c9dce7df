//! Young functions, complementary pairs, and growth classification.
//!
//! A Young function here is convex, continuous, strictly increasing with
//! `phi(0) = 0` and `phi(x) -> inf`; functions that jump to infinity are out
//! of scope. The complementary function is the Legendre transform
//! `psi(y) = sup { x y - phi(x) : x >= 0 }`, computed by root-finding on the
//! strictly increasing derivative rather than by a grid supremum (the grid
//! supremum survives as a test oracle).
//!
//! ```
//! use orlicz::young::{conjugate, power};
//!
//! let phi = power(3.0)?; // x^3 / 3
//! let psi = conjugate(&phi);
//! // conjugate of x^3/3 is (2/3) y^(3/2); at y = 1 that is 2/3
//! assert!((psi.evaluate(1.0) - 2.0 / 3.0).abs() < 1e-9);
//! # Ok::<(), orlicz::Error>(())
//! ```
//!
//! Some pairs close in closed form; `exp` and `entropy` are complementary:
//!
//! ```
//! use orlicz::young::{pair_for, parse_young_spec, PairProvenance};
//!
//! let pair = pair_for(&parse_young_spec("exp")?);
//! assert_eq!(pair.provenance, PairProvenance::Analytic);
//! // psi(y) = (1+y) ln(1+y) - y
//! assert!((pair.psi.evaluate(1.0) - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-12);
//! # Ok::<(), orlicz::Error>(())
//! ```

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Default absolute tolerance for quadrature and root finding.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Cap for geometric bracket growth; exceeding it signals a bounded
/// derivative, which is not a valid Young derivative.
pub const BRACKET_CAP: f64 = 1e280;

/// A Young function together with its derivative and optional closed-form
/// complementary function.
#[derive(Clone)]
pub struct YoungFunction {
    name: String,
    eval: RealFn,
    deriv: RealFn,
    second: Option<RealFn>,
    conj: Option<Arc<YoungFunction>>,
}

impl fmt::Debug for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YoungFunction({})", self.name)
    }
}

impl YoungFunction {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        YoungFunction {
            name: name.into(),
            eval: Arc::new(eval),
            deriv: Arc::new(deriv),
            second: None,
            conj: None,
        }
    }

    fn with_second(mut self, second: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.second = Some(Arc::new(second));
        self
    }

    fn with_conjugate(mut self, conj: YoungFunction) -> Self {
        self.conj = Some(Arc::new(conj));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `phi(x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// Right derivative `phi'(x)`; strictly increasing with `phi'(0) = 0`.
    pub fn derivative(&self, x: f64) -> f64 {
        (self.deriv)(x)
    }

    /// `phi''(x)`, analytic when known, otherwise a central difference of
    /// the derivative.
    pub fn second_derivative(&self, x: f64) -> f64 {
        match &self.second {
            Some(s) => s(x),
            None => {
                let h = (1e-6f64).max(1e-7 * x.abs());
                ((self.deriv)(x + h) - (self.deriv)((x - h).max(0.0))) / (x + h - (x - h).max(0.0))
            }
        }
    }

    pub fn has_analytic_second(&self) -> bool {
        self.second.is_some()
    }

    /// Closed-form complementary function, when one is attached.
    pub fn analytic_conjugate(&self) -> Option<&YoungFunction> {
        self.conj.as_deref()
    }

    /// Inverse of the derivative: the unique `x` with `phi'(x) = y`.
    ///
    /// Brackets geometrically and bisects; errors with `Bracket` if no finite
    /// bracket exists below [`BRACKET_CAP`].
    pub fn invert_derivative(&self, y: f64) -> Result<f64> {
        if y <= 0.0 {
            return Ok(0.0);
        }
        let mut hi = 1.0f64;
        while (self.deriv)(hi) < y {
            hi *= 2.0;
            if hi > BRACKET_CAP {
                return Err(Error::Bracket {
                    cap: BRACKET_CAP,
                    context: format!("phi' of `{}` never reaches {y}", self.name),
                });
            }
        }
        let mut lo = if hi > 1.0 { hi / 2.0 } else { 0.0 };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (self.deriv)(mid) < y {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi.abs() + 1e-300 {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Sampled invariant check: normalization, strict growth, convexity and
    /// monotone derivative on a log grid.
    pub fn check_invariants(&self) -> Result<()> {
        let tol = 1e-9;
        if self.evaluate(0.0).abs() > tol {
            return Err(Error::Param(format!("{}(0) != 0", self.name)));
        }
        if self.derivative(0.0).abs() > 1e-6 {
            return Err(Error::NonMonotoneInput(format!("{}'(0) != 0", self.name)));
        }
        let grid = log_grid(1e-3, 1e3, 120);
        let mut prev_v = 0.0;
        let mut prev_d = 0.0;
        for &x in &grid {
            let v = self.evaluate(x);
            let d = self.derivative(x);
            if v < prev_v - tol {
                return Err(Error::NonMonotoneInput(format!(
                    "{} decreases at {x}",
                    self.name
                )));
            }
            if d < prev_d - tol {
                return Err(Error::NonMonotoneInput(format!(
                    "{}' decreases at {x}",
                    self.name
                )));
            }
            prev_v = v;
            prev_d = d;
        }
        // sampled midpoint convexity
        for i in 0..grid.len() - 1 {
            let (a, b) = (grid[i], grid[i + 1]);
            let mid = 0.5 * (a + b);
            let chord = 0.5 * (self.evaluate(a) + self.evaluate(b));
            if self.evaluate(mid) > chord + tol * (1.0 + chord.abs()) {
                return Err(Error::Param(format!(
                    "{} fails midpoint convexity at {mid}",
                    self.name
                )));
            }
        }
        if self.evaluate(1e3) < self.evaluate(1.0) + 1.0 {
            return Err(Error::Param(format!(
                "{} does not grow to infinity",
                self.name
            )));
        }
        Ok(())
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// How the complementary half of a pair was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairProvenance {
    Analytic,
    NumericLegendre,
}

/// A complementary pair `(phi, psi)`.
#[derive(Clone, Debug)]
pub struct YoungPair {
    pub phi: YoungFunction,
    pub psi: YoungFunction,
    pub provenance: PairProvenance,
}

/// Complementary function by numeric Legendre transform.
///
/// For `y > 0` solves `phi'(x*) = y` and returns `x* y - phi(x*)`; the
/// resulting function carries `phi'^{-1}` as its (exact) derivative. The
/// closed-form conjugate attached to `phi`, if any, is deliberately ignored
/// so that double application exercises the numeric path.
pub fn conjugate(phi: &YoungFunction) -> YoungFunction {
    let inner = phi.clone();
    let inner2 = phi.clone();
    YoungFunction::new(
        format!("conj({})", phi.name),
        move |y| {
            if y <= 0.0 {
                return 0.0;
            }
            match inner.invert_derivative(y) {
                Ok(x) => x * y - inner.evaluate(x),
                // the maximizer sits beyond the representable range (slowly
                // growing derivatives, huge y); saturate
                Err(_) => f64::INFINITY,
            }
        },
        move |y| inner2.invert_derivative(y).unwrap_or(f64::INFINITY),
    )
}

/// The pair `(phi, conj phi)`, analytic when `phi` carries a closed form.
pub fn pair_for(phi: &YoungFunction) -> YoungPair {
    match phi.analytic_conjugate() {
        Some(psi) => YoungPair {
            phi: phi.clone(),
            psi: psi.clone(),
            provenance: PairProvenance::Analytic,
        },
        None => YoungPair {
            phi: phi.clone(),
            psi: conjugate(phi),
            provenance: PairProvenance::NumericLegendre,
        },
    }
}

/// Builds a pair from a derivative profile: `phi = integral of d`,
/// `psi = integral of d^{-1}`, both by adaptive quadrature.
pub fn make_pair_from_phi(
    name: impl Into<String>,
    phi_derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
) -> Result<YoungPair> {
    let name = name.into();
    let d: RealFn = Arc::new(phi_derivative);
    if d(0.0).abs() > 1e-9 {
        return Err(Error::NonMonotoneInput(format!(
            "derivative of `{name}` nonzero at 0"
        )));
    }
    let mut prev = 0.0;
    for &x in &log_grid(1e-4, 1e4, 160) {
        let v = d(x);
        // overflow to +inf is fine for fast-growing derivatives
        if v.is_nan() || v < prev {
            return Err(Error::NonMonotoneInput(format!(
                "derivative of `{name}` decreases near x = {x}"
            )));
        }
        prev = v;
    }

    let d_phi = d.clone();
    let d_phi2 = d.clone();
    let phi = YoungFunction::new(
        name.clone(),
        move |x| adaptive_simpson(&*d_phi, 0.0, x, DEFAULT_TOL).expect("quadrature"),
        move |x| d_phi2(x),
    );
    // probe the quadrature once so failures surface as errors, not panics
    adaptive_simpson(&*d, 0.0, 1.0, DEFAULT_TOL)?;

    let d_inv = d.clone();
    let inv = move |y: f64| -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let mut hi = 1.0f64;
        while d_inv(hi) < y {
            hi *= 2.0;
            if hi > BRACKET_CAP {
                // inverse beyond the representable range; saturate
                return f64::INFINITY;
            }
        }
        let mut lo = if hi > 1.0 { hi / 2.0 } else { 0.0 };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if d_inv(mid) < y {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi.abs() + 1e-300 {
                break;
            }
        }
        0.5 * (lo + hi)
    };
    let inv2 = inv.clone();
    let psi = YoungFunction::new(
        format!("conj({name})"),
        move |y| {
            if !inv(y).is_finite() {
                return f64::INFINITY;
            }
            adaptive_simpson(&inv, 0.0, y, DEFAULT_TOL).expect("quadrature")
        },
        inv2,
    );
    Ok(YoungPair {
        phi,
        psi,
        provenance: PairProvenance::NumericLegendre,
    })
}

/// Max over `grid` of `|conj(conj(phi))(x) - phi(x)|`, both transforms numeric.
pub fn biconjugate_residual(phi: &YoungFunction, grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::Param("biconjugate grid is empty".into()));
    }
    let double = conjugate(&conjugate(phi));
    let mut worst: f64 = 0.0;
    for &x in grid {
        if x < 0.0 {
            return Err(Error::Param(format!("grid point {x} < 0")));
        }
        worst = worst.max((double.evaluate(x) - phi.evaluate(x)).abs());
    }
    Ok(worst)
}

/// Adaptive Simpson quadrature.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || (b - a) < 1e-14 * (a.abs() + b.abs() + 1.0) {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::Divergence(format!(
                "adaptive quadrature exceeded depth on [{a}, {b}]"
            )));
        }
        Ok(rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)?
            + rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)?)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    rec(f, a, fa, b, fb, m, fm, whole, tol, 48)
}

// ---------------------------------------------------------------------------
// Growth classification
// ---------------------------------------------------------------------------

/// Outcome of a second-derivative limit estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
enum LimitClass {
    Finite(f64),
    Infinite,
    Zero,
}

/// Richardson-style limit classification from values at three scales
/// (toward infinity or toward zero; the extrapolation weight is the same for
/// decade-spaced abscissae).
fn classify_limit(v: [f64; 3], context: &str) -> Result<LimitClass> {
    let v: Vec<f64> = v
        .iter()
        .map(|&x| if x < 0.0 && x > -1e-12 { 0.0 } else { x })
        .collect();
    if v.iter().any(|x| x.is_nan()) {
        return Err(Error::InconclusiveGrowth(format!(
            "{context}: NaN in limit samples"
        )));
    }
    if v[2].is_infinite() {
        if v[2] > 0.0 && v[1] >= v[0] {
            return Ok(LimitClass::Infinite);
        }
        return Err(Error::InconclusiveGrowth(format!(
            "{context}: non-monotone blow-up"
        )));
    }
    let r12 = v[1] + (v[1] - v[0]) / 9.0;
    let r23 = v[2] + (v[2] - v[1]) / 9.0;
    if (r12 - r23).abs() <= (0.01 * r23.abs()).max(1e-9) {
        if r23.abs() <= 1e-9 {
            return Ok(LimitClass::Zero);
        }
        return Ok(LimitClass::Finite(r23));
    }
    if v[2] >= 1.2 * v[1] && v[1] >= 1.2 * v[0] && v[2] > 0.0 {
        return Ok(LimitClass::Infinite);
    }
    if v[0] >= v[1] && v[1] >= v[2] && v[1] <= 0.5 * v[0] && v[2] <= 0.5 * v[1] {
        return Ok(LimitClass::Zero);
    }
    Err(Error::InconclusiveGrowth(format!(
        "{context}: samples {v:?} neither settle nor trend"
    )))
}

/// Whether one regime of the quadratic lower bound `K x^2 <= phi(x)` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegimeStatus {
    Holds,
    Fails,
    /// The limit samples neither settle nor trend; no verdict is guessed.
    Inconclusive,
}

/// Witness for one regime of the quadratic lower bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegimeWitness {
    pub status: RegimeStatus,
    /// Witnessed constant, when the regime holds.
    pub k: Option<f64>,
    /// Threshold `x0` the witness refers to.
    pub x0: Option<f64>,
    pub note: Option<String>,
}

impl RegimeWitness {
    pub fn holds(&self) -> bool {
        self.status == RegimeStatus::Holds
    }
}

/// Classification of a Young function against the quadratic minorant in the
/// three regimes: eventually (`x >= x0`), near zero (`x <= x0`), and globally.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthReport {
    pub satisfies_compact: RegimeWitness,
    pub satisfies_discrete: RegimeWitness,
    pub satisfies_noncompact: RegimeWitness,
    /// Second-derivative samples used for the limit tests.
    pub limit_samples_at_infinity: [f64; 3],
    pub limit_samples_at_zero: [f64; 3],
}

/// Classifies where `K x^2 <= phi(x)` holds, via the second-derivative limit
/// tests plus grid confirmation of the witnessed `K`.
///
/// A zero limit of `phi''` refutes the corresponding regime; a nonzero or
/// infinite limit establishes it. When the decade samples neither settle nor
/// trend, that regime is reported inconclusive rather than guessed.
///
/// ```
/// use orlicz::young::{growth_class, parse_young_spec};
///
/// let g = growth_class(&parse_young_spec("entropy")?)?;
/// assert!(g.satisfies_discrete.holds());   // phi''(0) = 1
/// assert!(!g.satisfies_compact.holds());   // phi'' -> 0 at infinity
/// # Ok::<(), orlicz::Error>(())
/// ```
pub fn growth_class(phi: &YoungFunction) -> Result<GrowthReport> {
    let at_inf = [1e2, 1e3, 1e4].map(|x| phi.second_derivative(x));
    let at_zero = [1e-2, 1e-3, 1e-4].map(|x| phi.second_derivative(x));
    let lim_inf = classify_limit(at_inf, &format!("{} at infinity", phi.name()));
    let lim_zero = classify_limit(at_zero, &format!("{} at zero", phi.name()));

    let ratio_min = |lo: f64, hi: f64| -> f64 {
        log_grid(lo, hi, 400)
            .into_iter()
            .map(|x| phi.evaluate(x) / (x * x))
            .fold(f64::INFINITY, f64::min)
    };

    let witness = |lim: &Result<LimitClass>, lo: f64, hi: f64, x0: f64| -> RegimeWitness {
        match lim {
            Ok(LimitClass::Zero) => RegimeWitness {
                status: RegimeStatus::Fails,
                k: None,
                x0: None,
                note: Some("second derivative tends to zero".into()),
            },
            Ok(_) => RegimeWitness {
                status: RegimeStatus::Holds,
                k: Some(ratio_min(lo, hi)),
                x0: Some(x0),
                note: None,
            },
            Err(e) => RegimeWitness {
                status: RegimeStatus::Inconclusive,
                k: None,
                x0: None,
                note: Some(e.to_string()),
            },
        }
    };

    let compact = witness(&lim_inf, 1.0, 1e4, 1.0);
    let discrete = witness(&lim_zero, 1e-6, 1.0, 1.0);
    let noncompact = match (&compact.status, &discrete.status) {
        (RegimeStatus::Holds, RegimeStatus::Holds) => RegimeWitness {
            status: RegimeStatus::Holds,
            k: Some(ratio_min(1e-6, 1e4)),
            x0: None,
            note: None,
        },
        (RegimeStatus::Fails, _) | (_, RegimeStatus::Fails) => RegimeWitness {
            status: RegimeStatus::Fails,
            k: None,
            x0: None,
            note: Some("needs both the eventual and the near-zero bound".into()),
        },
        _ => RegimeWitness {
            status: RegimeStatus::Inconclusive,
            k: None,
            x0: None,
            note: Some("one side is inconclusive".into()),
        },
    };

    Ok(GrowthReport {
        satisfies_compact: compact,
        satisfies_discrete: discrete,
        satisfies_noncompact: noncompact,
        limit_samples_at_infinity: at_inf,
        limit_samples_at_zero: at_zero,
    })
}

/// `phi0(x) = phi(x^2)` together with its numeric conjugate.
///
/// `phi0` always satisfies the eventual quadratic bound with `K = phi(1)`
/// for `x >= 1`, and its conjugate satisfies the near-zero bound.
pub fn square_compose(phi: &YoungFunction) -> Result<YoungPair> {
    phi.check_invariants()?;
    let inner = phi.clone();
    let inner_d = phi.clone();
    let mut phi0 = YoungFunction::new(
        format!("square_compose:{}", phi.name()),
        move |x| inner.evaluate(x * x),
        move |x| 2.0 * x * inner_d.derivative(x * x),
    );
    if phi.has_analytic_second() {
        let inner_s = phi.clone();
        phi0 = phi0.with_second(move |x| {
            2.0 * inner_s.derivative(x * x) + 4.0 * x * x * inner_s.second_derivative(x * x)
        });
    }
    let psi0 = conjugate(&phi0);
    Ok(YoungPair {
        phi: phi0,
        psi: psi0,
        provenance: PairProvenance::NumericLegendre,
    })
}

/// Log–log slope of `psi` near zero, the exponent `l` with
/// `psi(x) ~ x^l`; returns the estimate and the spread across decades.
pub fn l_exponent(psi: &YoungFunction) -> Result<(f64, f64)> {
    let xs: Vec<f64> = (1..=6).map(|k| 10f64.powi(-k)).collect();
    let logs: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let v = psi.evaluate(x);
            if v > 0.0 {
                Ok(v.ln())
            } else {
                Err(Error::NoStableSlope(format!(
                    "{}({x}) = {v} not positive",
                    psi.name()
                )))
            }
        })
        .collect::<Result<_>>()?;
    let slopes: Vec<f64> = logs
        .windows(2)
        .map(|w| (w[1] - w[0]) / (-std::f64::consts::LN_10))
        .collect();
    let spread = slopes.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - slopes.iter().cloned().fold(f64::INFINITY, f64::min);
    let last_two = (slopes[slopes.len() - 1] - slopes[slopes.len() - 2]).abs();
    if last_two > 0.05 {
        return Err(Error::NoStableSlope(format!(
            "slopes of {} drift by {last_two:.3} across the deepest decades",
            psi.name()
        )));
    }
    Ok((slopes[slopes.len() - 1], spread))
}

// ---------------------------------------------------------------------------
// Built-in catalog
// ---------------------------------------------------------------------------

/// Builds `phi(x) = x^p / p`; the conjugate is `y^q / q` with `1/p + 1/q = 1`.
pub fn power(p: f64) -> Result<YoungFunction> {
    if p.is_nan() || p <= 1.0 || !p.is_finite() {
        return Err(Error::Param(format!("power needs p > 1, got {p}")));
    }
    let q = p / (p - 1.0);
    let conj = power_raw(q).with_conjugate(power_raw(p));
    Ok(power_raw(p).with_conjugate(conj))
}

fn power_raw(p: f64) -> YoungFunction {
    YoungFunction::new(
        format!("power:{p}"),
        move |x| x.powf(p) / p,
        move |x| x.powf(p - 1.0),
    )
    .with_second(move |x| (p - 1.0) * x.powf(p - 2.0))
}

/// `phi(x) = x ln(1+x)`; the conjugate has no closed form here.
pub fn xlog() -> YoungFunction {
    YoungFunction::new("xlog", |x| x * x.ln_1p(), |x| x.ln_1p() + x / (1.0 + x))
        .with_second(|x| 1.0 / (1.0 + x) + 1.0 / ((1.0 + x) * (1.0 + x)))
}

/// `phi(x) = e^x - x - 1`, conjugate `(1+y) ln(1+y) - y`.
pub fn exp() -> YoungFunction {
    YoungFunction::new("exp", |x| x.exp_m1() - x, |x| x.exp_m1())
        .with_second(|x| x.exp())
        .with_conjugate(entropy_raw())
}

/// `phi(x) = (1+x) ln(1+x) - x`, conjugate `e^y - y - 1`.
pub fn entropy() -> YoungFunction {
    entropy_raw().with_conjugate(
        YoungFunction::new("exp", |x| x.exp_m1() - x, |x| x.exp_m1()).with_second(|x| x.exp()),
    )
}

fn entropy_raw() -> YoungFunction {
    YoungFunction::new(
        "entropy",
        |x| {
            let l = x.ln_1p();
            (l - x) + x * l
        },
        |x| x.ln_1p(),
    )
    .with_second(|x| 1.0 / (1.0 + x))
}

/// `phi(x) = cosh x - 1`, conjugate `y asinh y - sqrt(1+y^2) + 1`.
pub fn cosh() -> YoungFunction {
    let conj = YoungFunction::new(
        "conj(cosh)",
        |y| y * y.asinh() - (1.0 + y * y).sqrt() + 1.0,
        |y| y.asinh(),
    )
    .with_second(|y| 1.0 / (1.0 + y * y).sqrt());
    YoungFunction::new("cosh", |x| 2.0 * (0.5 * x).sinh().powi(2), |x| x.sinh())
        .with_second(|x| x.cosh())
        .with_conjugate(conj)
}

/// Pointwise sum of two Young functions.
pub fn sum_of(a: YoungFunction, b: YoungFunction) -> YoungFunction {
    let name = format!("sum:{}+{}", a.name(), b.name());
    let (a2, b2) = (a.clone(), b.clone());
    let mut out = YoungFunction::new(
        name,
        {
            let (a, b) = (a.clone(), b.clone());
            move |x| a.evaluate(x) + b.evaluate(x)
        },
        move |x| a2.derivative(x) + b2.derivative(x),
    );
    if a.has_analytic_second() && b.has_analytic_second() {
        out = out.with_second(move |x| a.second_derivative(x) + b.second_derivative(x));
    }
    out
}

/// Parses a catalog spec: `power:p`, `xlog`, `exp`, `cosh`, `entropy`,
/// `square_compose:<inner>`, `sum:<a>+<b>`, `conj:<inner>`.
pub fn parse_young_spec(spec: &str) -> Result<YoungFunction> {
    let bad = || Error::BadSpec(format!("unknown young spec `{spec}`"));
    match spec {
        "xlog" => return Ok(xlog()),
        "exp" => return Ok(exp()),
        "cosh" => return Ok(cosh()),
        "entropy" => return Ok(entropy()),
        _ => {}
    }
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    match kind {
        "power" => {
            let p: f64 = rest.trim().parse().map_err(|_| bad())?;
            power(p)
        }
        "square_compose" => {
            let inner = parse_young_spec(rest)?;
            Ok(square_compose(&inner)?.phi)
        }
        "sum" => {
            let (a, b) = rest.split_once('+').ok_or_else(bad)?;
            Ok(sum_of(parse_young_spec(a)?, parse_young_spec(b)?))
        }
        "conj" => Ok(conjugate(&parse_young_spec(rest)?)),
        _ => Err(bad()),
    }
}

/// Serializable identity of a catalog entry, `{name, params}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct YoungSpec {
    pub name: String,
    pub params: Vec<f64>,
}

impl YoungFunction {
    pub fn spec(&self) -> YoungSpec {
        // numeric parameters live after `:` separators in the catalog name
        let params = self
            .name
            .split(':')
            .filter_map(|part| part.parse::<f64>().ok())
            .collect();
        YoungSpec {
            name: self.name.clone(),
            params,
        }
    }
}
