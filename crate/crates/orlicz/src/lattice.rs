//! The concrete group: `Z^d` with generating set `F = {-1,0,1}^d`.
//!
//! The word length with respect to `F` is the sup norm, since `F^n` is the
//! closed sup-norm ball of radius `n`. Weights are built from an increasing
//! concave profile `rho` with `rho(0) = 0` as `w(s) = exp(rho(tau(s)))`;
//! all weight arithmetic is kept in log space so subexponential profiles do
//! not overflow at radius 10^4.
//!
//! ```
//! use orlicz::lattice::{ball_and_sphere, word_length, LatticePoint, Weight};
//!
//! assert_eq!(word_length(&LatticePoint(vec![3, -2])), 3);
//! assert_eq!(ball_and_sphere(2, 1)?, (9, 8));
//!
//! let w = Weight::poly(2.0)?;
//! assert!((w.evaluate(&LatticePoint(vec![3])) - 16.0).abs() < 1e-12);
//! assert_eq!(w.evaluate(&LatticePoint(vec![0])), 1.0);
//! # Ok::<(), orlicz::Error>(())
//! ```
//!
//! Cocycles factor exactly into modulus and unimodular parts:
//!
//! ```
//! use orlicz::lattice::{coboundary, heisenberg_cocycle, LatticePoint, Weight};
//!
//! let c = coboundary(Weight::poly(1.0)?).product(heisenberg_cocycle(2, 0.3)?);
//! let (modulus, torus) = c.decompose();
//! let (s, t) = (LatticePoint(vec![2, -1]), LatticePoint(vec![1, 3]));
//! let recomposed = modulus.evaluate(&s, &t) * torus.evaluate(&s, &t);
//! assert!((recomposed - c.evaluate(&s, &t)).norm() < 1e-15);
//! # Ok::<(), orlicz::Error>(())
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of `Z^d`. The group operation is coordinate-wise addition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn zero(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "lattice dimension mismatch");
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Word length of `s` with respect to `F = {-1,0,1}^d`, i.e. `max_i |s_i|`.
///
/// `F^n` is exactly the sup-norm ball of radius `n`, so this closed form
/// agrees with the infimum over word representations; a breadth-first search
/// oracle confirms that in the tests.
pub fn word_length(s: &LatticePoint) -> u64 {
    s.0.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
}

/// `|F^n| = (2n+1)^d`, computed in wide arithmetic.
pub fn ball_size(dim: u32, n: u64) -> Result<u128> {
    let side = 2u128 * n as u128 + 1;
    let mut out: u128 = 1;
    for _ in 0..dim {
        out = out
            .checked_mul(side)
            .ok_or_else(|| Error::Param(format!("ball size overflow: d={dim}, n={n}")))?;
    }
    Ok(out)
}

/// `(ball, sphere)` at radius `n`: sphere(0) = 1 and
/// `sphere(n) = (2n+1)^d - (2n-1)^d` for `n >= 1`.
pub fn ball_and_sphere(dim: u32, n: u64) -> Result<(u128, u128)> {
    let ball = ball_size(dim, n)?;
    let sphere = if n == 0 {
        1
    } else {
        ball - ball_size(dim, n - 1)?
    };
    Ok((ball, sphere))
}

/// Sphere cardinality as `f64`, the factor used in radial series.
pub fn sphere_size_f64(dim: u32, n: u64) -> f64 {
    ball_and_sphere(dim, n)
        .map(|(_, s)| s as f64)
        .unwrap_or(f64::INFINITY)
}

/// Uniform random point in the sup-norm ball of the given radius.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, dim: usize, radius: i64) -> LatticePoint {
    LatticePoint((0..dim).map(|_| rng.gen_range(-radius..=radius)).collect())
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Profile {
    /// `rho(x) = beta * ln(1+x)`, the polynomial weight `(1+tau)^beta`.
    Poly { beta: f64 },
    /// `rho(x) = c * x^alpha`, subexponential for `0 < alpha < 1`.
    SubexpPow { alpha: f64, c: f64 },
    /// `rho(x) = c * x / ln(1+x)^gamma`, with `rho(0) = 0` by convention.
    SubexpLog { gamma: f64, c: f64 },
    Custom {
        name: String,
        f: RealFn,
        d1: Option<RealFn>,
        d2: Option<RealFn>,
    },
}

/// A weight `w(s) = exp(rho(tau(s)))` on `Z^d`.
///
/// The profile `rho` carries analytic first and second derivatives for the
/// built-in kinds; custom profiles fall back to central differences with
/// step `h = max(1e-4, 1e-6 x)`.
#[derive(Clone)]
pub struct Weight {
    profile: Profile,
}

impl Weight {
    /// Polynomial weight `w_beta(s) = (1+tau(s))^beta`.
    pub fn poly(beta: f64) -> Result<Self> {
        if beta.is_nan() || beta <= 0.0 || !beta.is_finite() {
            return Err(Error::Param(format!(
                "poly weight needs beta > 0, got {beta}"
            )));
        }
        Ok(Weight {
            profile: Profile::Poly { beta },
        })
    }

    /// Subexponential weight `exp(c * tau(s)^alpha)`, `0 < alpha < 1`, `c > 0`.
    pub fn subexp_pow(alpha: f64, c: f64) -> Result<Self> {
        if alpha.is_nan()
            || c.is_nan()
            || alpha <= 0.0
            || alpha >= 1.0
            || c <= 0.0
            || !c.is_finite()
        {
            return Err(Error::Param(format!(
                "subexp weight needs 0 < alpha < 1 and c > 0, got alpha={alpha}, c={c}"
            )));
        }
        Ok(Weight {
            profile: Profile::SubexpPow { alpha, c },
        })
    }

    /// Subexponential weight `exp(c * tau(s) / ln(1+tau(s))^gamma)`, `gamma, c > 0`.
    pub fn subexp_log(gamma: f64, c: f64) -> Result<Self> {
        if gamma.is_nan()
            || c.is_nan()
            || gamma <= 0.0
            || c <= 0.0
            || !gamma.is_finite()
            || !c.is_finite()
        {
            return Err(Error::Param(format!(
                "subexp2 weight needs gamma > 0 and c > 0, got gamma={gamma}, c={c}"
            )));
        }
        Ok(Weight {
            profile: Profile::SubexpLog { gamma, c },
        })
    }

    /// Weight from a user-supplied profile. Derivatives are optional; when
    /// absent they are approximated by central differences.
    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d1: Option<RealFn>,
        d2: Option<RealFn>,
    ) -> Self {
        Weight {
            profile: Profile::Custom {
                name: name.into(),
                f: Arc::new(f),
                d1,
                d2,
            },
        }
    }

    /// `rho(x)`.
    pub fn rho(&self, x: f64) -> f64 {
        match &self.profile {
            Profile::Poly { beta } => beta * x.ln_1p(),
            Profile::SubexpPow { alpha, c } => c * x.powf(*alpha),
            Profile::SubexpLog { gamma, c } => {
                if x == 0.0 {
                    0.0
                } else {
                    c * x / x.ln_1p().powf(*gamma)
                }
            }
            Profile::Custom { f, .. } => f(x),
        }
    }

    /// `rho'(x)`; analytic for built-in kinds.
    pub fn rho_d1(&self, x: f64) -> f64 {
        match &self.profile {
            Profile::Poly { beta } => beta / (1.0 + x),
            Profile::SubexpPow { alpha, c } => c * alpha * x.powf(alpha - 1.0),
            Profile::SubexpLog { gamma, c } => {
                let l = x.ln_1p();
                c * l.powf(-gamma) * (1.0 - gamma * x / ((1.0 + x) * l))
            }
            Profile::Custom { f, d1, .. } => match d1 {
                Some(d) => d(x),
                None => {
                    let h = (1e-4f64).max(1e-6 * x.abs());
                    (f(x + h) - f(x - h)) / (2.0 * h)
                }
            },
        }
    }

    /// `rho''(x)`; analytic for built-in kinds.
    pub fn rho_d2(&self, x: f64) -> f64 {
        match &self.profile {
            Profile::Poly { beta } => -beta / ((1.0 + x) * (1.0 + x)),
            Profile::SubexpPow { alpha, c } => c * alpha * (alpha - 1.0) * x.powf(alpha - 2.0),
            Profile::SubexpLog { gamma, c } => {
                let l = x.ln_1p();
                let u = 1.0 + x;
                c * gamma
                    * (-2.0 * l.powf(-gamma - 1.0) / u
                        + (gamma + 1.0) * x * l.powf(-gamma - 2.0) / (u * u)
                        + x * l.powf(-gamma - 1.0) / (u * u))
            }
            Profile::Custom { f, d2, .. } => match d2 {
                Some(d) => d(x),
                None => {
                    let h = (1e-4f64).max(1e-6 * x.abs());
                    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
                }
            },
        }
    }

    /// Whether `rho'`/`rho''` come from closed forms rather than differencing.
    pub fn has_analytic_derivatives(&self) -> bool {
        match &self.profile {
            Profile::Custom { d1, d2, .. } => d1.is_some() && d2.is_some(),
            _ => true,
        }
    }

    /// `rho(n)` at an integer radius.
    pub fn log_at_radius(&self, n: u64) -> f64 {
        self.rho(n as f64)
    }

    /// `ln w(s) = rho(tau(s))`.
    pub fn log_weight(&self, s: &LatticePoint) -> f64 {
        self.log_at_radius(word_length(s))
    }

    /// `w(s)`; exponentiation is done last.
    pub fn evaluate(&self, s: &LatticePoint) -> f64 {
        self.log_weight(s).exp()
    }

    /// Checks `rho(0)=0`, monotonicity and integer-grid concavity up to `n_max`.
    pub fn check_invariants(&self, n_max: u64) -> Result<()> {
        let tol = 1e-9;
        if self.rho(0.0).abs() > tol {
            return Err(Error::Param(format!("rho(0) = {} != 0", self.rho(0.0))));
        }
        let mut prev = 0.0;
        let mut prev_diff = f64::INFINITY;
        for n in 1..=n_max {
            let v = self.log_at_radius(n);
            let diff = v - prev;
            if diff < -tol {
                return Err(Error::NonMonotoneInput(format!("rho decreases at n={n}")));
            }
            if diff > prev_diff + tol {
                return Err(Error::Concavity(format!(
                    "integer second difference positive at n={n}"
                )));
            }
            prev = v;
            prev_diff = diff;
        }
        Ok(())
    }

    /// Compact label, e.g. `poly:2`.
    pub fn label(&self) -> String {
        match &self.profile {
            Profile::Poly { beta } => format!("poly:{beta}"),
            Profile::SubexpPow { alpha, c } => format!("subexp:{alpha},{c}"),
            Profile::SubexpLog { gamma, c } => format!("subexp2:{gamma},{c}"),
            Profile::Custom { name, .. } => format!("custom:{name}"),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({})", self.label())
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "kind", rename_all = "lowercase")]
        enum Repr<'a> {
            Poly { beta: f64 },
            Subexp { alpha: f64, c: f64 },
            Subexp2 { gamma: f64, c: f64 },
            Custom { name: &'a str },
        }
        let repr = match &self.profile {
            Profile::Poly { beta } => Repr::Poly { beta: *beta },
            Profile::SubexpPow { alpha, c } => Repr::Subexp {
                alpha: *alpha,
                c: *c,
            },
            Profile::SubexpLog { gamma, c } => Repr::Subexp2 {
                gamma: *gamma,
                c: *c,
            },
            Profile::Custom { name, .. } => Repr::Custom { name },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(tag = "kind", rename_all = "lowercase")]
        enum Repr {
            Poly { beta: f64 },
            Subexp { alpha: f64, c: f64 },
            Subexp2 { gamma: f64, c: f64 },
        }
        let repr = Repr::deserialize(deserializer)?;
        let built = match repr {
            Repr::Poly { beta } => Weight::poly(beta),
            Repr::Subexp { alpha, c } => Weight::subexp_pow(alpha, c),
            Repr::Subexp2 { gamma, c } => Weight::subexp_log(gamma, c),
        };
        built.map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Parses a compact weight spec: `poly:B`, `subexp:A,C`, `subexp2:G,C`.
pub fn parse_weight_spec(spec: &str) -> Result<Weight> {
    let bad = || Error::BadSpec(format!("unknown weight spec `{spec}`"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    let nums: Vec<f64> = rest
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match (kind, nums.as_slice()) {
        ("poly", [beta]) => Weight::poly(*beta),
        ("subexp", [alpha, c]) => Weight::subexp_pow(*alpha, *c),
        ("subexp2", [gamma, c]) => Weight::subexp_log(*gamma, *c),
        _ => Err(bad()),
    }
}

// ---------------------------------------------------------------------------
// 2-cocycles
// ---------------------------------------------------------------------------

/// A normalized 2-cocycle on `Z^d` with values in `C \ {0}`.
///
/// Every built-in evaluates through the pair `(log |Omega|, arg Omega)`, so
/// the polar decomposition `Omega = |Omega| * Omega_T` is exact by
/// construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Cocycle {
    /// Coboundary of a weight: `Omega(s,t) = w(s+t) / (w(s) w(t))`.
    Coboundary { weight: Weight },
    /// `Omega((a,b),(c,e)) = exp(2 pi i theta a e)` on `Z^2`.
    Heisenberg { theta: f64 },
    /// Pointwise product of cocycles.
    Product { factors: Vec<Cocycle> },
    /// The modulus part `|Omega|` of another cocycle.
    Modulus { of: Box<Cocycle> },
    /// The unimodular part `Omega_T` of another cocycle.
    Torus { of: Box<Cocycle> },
}

/// Coboundary cocycle determined by a weight.
pub fn coboundary(weight: Weight) -> Cocycle {
    Cocycle::Coboundary { weight }
}

/// The bilinear torus-valued cocycle on `Z^2`.
pub fn heisenberg_cocycle(dim: usize, theta: f64) -> Result<Cocycle> {
    if dim != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: dim,
        });
    }
    Ok(Cocycle::Heisenberg { theta })
}

impl Cocycle {
    /// `ln |Omega(s,t)|`, exact in log space for coboundary factors.
    pub fn log_modulus(&self, s: &LatticePoint, t: &LatticePoint) -> f64 {
        match self {
            Cocycle::Coboundary { weight } => {
                let st = s.add(t);
                weight.log_weight(&st) - weight.log_weight(s) - weight.log_weight(t)
            }
            Cocycle::Heisenberg { .. } => 0.0,
            Cocycle::Product { factors } => factors.iter().map(|c| c.log_modulus(s, t)).sum(),
            Cocycle::Modulus { of } => of.log_modulus(s, t),
            Cocycle::Torus { .. } => 0.0,
        }
    }

    /// `arg Omega(s,t)`, reduced so large integer multiples keep full
    /// precision.
    pub fn phase(&self, s: &LatticePoint, t: &LatticePoint) -> f64 {
        match self {
            Cocycle::Coboundary { .. } => 0.0,
            Cocycle::Heisenberg { theta } => {
                assert_eq!(s.dim(), 2, "heisenberg cocycle needs d = 2");
                2.0 * PI * fract_times_int(*theta, s.0[0] * t.0[1])
            }
            Cocycle::Product { factors } => factors.iter().map(|c| c.phase(s, t)).sum(),
            Cocycle::Modulus { .. } => 0.0,
            Cocycle::Torus { of } => of.phase(s, t),
        }
    }

    /// `Omega(s,t)`.
    pub fn evaluate(&self, s: &LatticePoint, t: &LatticePoint) -> Complex64 {
        Complex64::from_polar(self.log_modulus(s, t).exp(), self.phase(s, t))
    }

    /// Polar decomposition `(|Omega|, Omega_T)`; recomposes exactly.
    pub fn decompose(&self) -> (Cocycle, Cocycle) {
        (
            Cocycle::Modulus {
                of: Box::new(self.clone()),
            },
            Cocycle::Torus {
                of: Box::new(self.clone()),
            },
        )
    }

    /// Pointwise product.
    pub fn product(self, other: Cocycle) -> Cocycle {
        Cocycle::Product {
            factors: vec![self, other],
        }
    }

    /// Dimension the cocycle insists on, if any.
    pub fn required_dim(&self) -> Option<usize> {
        match self {
            Cocycle::Heisenberg { .. } => Some(2),
            Cocycle::Product { factors } => factors.iter().find_map(|c| c.required_dim()),
            Cocycle::Modulus { of } | Cocycle::Torus { of } => of.required_dim(),
            Cocycle::Coboundary { .. } => None,
        }
    }

    /// Largest possible `|Omega(s,t)|` over pairs with `tau(s)=m`, `tau(t)=n`.
    ///
    /// For coboundaries the maximum is attained at colinear points where
    /// `tau(s+t) = m+n`; unimodular parts contribute 1. The bound is exact
    /// for all built-in combinations (at most one non-unimodular factor per
    /// product of a coboundary with torus-valued factors, and products of
    /// coboundaries maximize at the same witness).
    pub fn radial_modulus_max(&self, m: u64, n: u64) -> f64 {
        self.radial_log_modulus_max(m, n).exp()
    }

    fn radial_log_modulus_max(&self, m: u64, n: u64) -> f64 {
        match self {
            Cocycle::Coboundary { weight } => {
                weight.log_at_radius(m + n) - weight.log_at_radius(m) - weight.log_at_radius(n)
            }
            Cocycle::Heisenberg { .. } | Cocycle::Torus { .. } => 0.0,
            Cocycle::Product { factors } => {
                factors.iter().map(|c| c.radial_log_modulus_max(m, n)).sum()
            }
            Cocycle::Modulus { of } => of.radial_log_modulus_max(m, n),
        }
    }

    /// Compact label, e.g. `coboundary:poly:1`.
    pub fn label(&self) -> String {
        match self {
            Cocycle::Coboundary { weight } => format!("coboundary:{}", weight.label()),
            Cocycle::Heisenberg { theta } => format!("heisenberg:{theta}"),
            Cocycle::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|c| c.label()).collect();
                format!("product:{}", parts.join("|"))
            }
            Cocycle::Modulus { of } => format!("modulus:{}", of.label()),
            Cocycle::Torus { of } => format!("torus:{}", of.label()),
        }
    }
}

/// Fractional part of `theta * k` for integer `k`, computed with a split of
/// `theta` so the product stays exact: naive `theta * k mod 1` loses the
/// low bits that the phase lives in once `|theta * k|` is large.
fn fract_times_int(theta: f64, k: i64) -> f64 {
    let split = 134_217_729.0; // 2^27 + 1
    let c = theta * split;
    let hi = c - (c - theta);
    let lo = theta - hi;
    let kf = k as f64;
    // kf * hi is exact while |k| < 2^26; its fract is exact as well
    ((kf * hi).fract() + kf * lo).fract()
}

/// Parses a compact cocycle spec: `coboundary:<weight>`, `heisenberg:T`,
/// `product:<spec>|<spec>`, `modulus:<spec>`, `torus:<spec>`, `trivial`.
pub fn parse_cocycle_spec(spec: &str) -> Result<Cocycle> {
    if spec == "trivial" {
        return Ok(Cocycle::Product { factors: vec![] });
    }
    let bad = || Error::BadSpec(format!("unknown cocycle spec `{spec}`"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    match kind {
        "coboundary" => Ok(coboundary(parse_weight_spec(rest)?)),
        "heisenberg" => {
            let theta: f64 = rest.trim().parse().map_err(|_| bad())?;
            Ok(Cocycle::Heisenberg { theta })
        }
        "product" => {
            let factors = rest
                .split('|')
                .map(parse_cocycle_spec)
                .collect::<Result<Vec<_>>>()?;
            Ok(Cocycle::Product { factors })
        }
        "modulus" => Ok(Cocycle::Modulus {
            of: Box::new(parse_cocycle_spec(rest)?),
        }),
        "torus" => Ok(Cocycle::Torus {
            of: Box::new(parse_cocycle_spec(rest)?),
        }),
        _ => Err(bad()),
    }
}

/// Max deviation of `Omega(s,0)` and `Omega(0,s)` from 1 over sampled points.
pub fn normalization_residual<R: Rng + ?Sized>(
    cocycle: &Cocycle,
    dim: usize,
    radius: i64,
    samples: usize,
    rng: &mut R,
) -> f64 {
    let zero = LatticePoint::zero(dim);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let s = random_point(rng, dim, radius);
        let a = (cocycle.evaluate(&s, &zero) - Complex64::new(1.0, 0.0)).norm();
        let b = (cocycle.evaluate(&zero, &s) - Complex64::new(1.0, 0.0)).norm();
        worst = worst.max(a).max(b);
    }
    worst
}

/// Max cocycle-identity residual
/// `|Omega(r,s) Omega(r+s,t) - Omega(s,t) Omega(r,s+t)|` over sampled triples.
pub fn cocycle_identity_residual<R: Rng + ?Sized>(
    cocycle: &Cocycle,
    dim: usize,
    radius: i64,
    triples: usize,
    rng: &mut R,
) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..triples {
        let r = random_point(rng, dim, radius);
        let s = random_point(rng, dim, radius);
        let t = random_point(rng, dim, radius);
        let lhs = cocycle.evaluate(&r, &s) * cocycle.evaluate(&r.add(&s), &t);
        let rhs = cocycle.evaluate(&s, &t) * cocycle.evaluate(&r, &s.add(&t));
        worst = worst.max((lhs - rhs).norm());
    }
    worst
}
