//! Constructive builder for a concave profile whose splitting series
//! diverges even though the weight itself is summable.
//!
//! The profile is piecewise affine. On each block `[n_k, 2 n_k]` it follows
//! the tangent line to `2 ln x` through the point `(0, ln n_k)`, which
//! touches the curve at `x_k = e sqrt(n_k)`:
//!
//! ```text
//! rho(x) = ln n_k + 2 x / (e sqrt(n_k))      on [n_k, 2 n_k]
//! ```
//!
//! By construction `2 rho(n_k) - rho(2 n_k) = ln n_k`, so the ratio terms
//! `a_n = exp(rho(2n) - 2 rho(n))` satisfy `n_k a_{n_k} = 1` at every
//! anchor: `n a_n` does not vanish along the anchors while `rho(n) >= 2 ln n`
//! keeps `sum exp(-rho(n))` finite. Consecutive tangents are joined at their
//! intersection abscissa `t_k`, which must land strictly between `2 n_k` and
//! `n_{k+1}`; the next anchor is the smallest integer for which that happens.
//! On `[0, n_1]` the profile is completed by the chord from the origin, whose
//! slope exceeds the first tangent slope, preserving concavity.
//!
//! Admissibility forces anchors to grow like `n exp((4/e) sqrt(n))`, so only
//! a handful of blocks fit in any fixed-width integer type; the builder
//! reports `SearchExhausted` as soon as the next anchor would overflow the
//! configured cap.
//!
//! ```
//! use orlicz::counterexample::{build_rho, verify_counterexample, BuildPolicy};
//!
//! let (rho, log) = build_rho(3, 3, &BuildPolicy::default())?;
//! assert_eq!(rho.anchors, vec![3, 9, 376]);
//! assert_eq!(log.searches.len(), 2);
//! let report = verify_counterexample(&rho, 2 * rho.last_anchor(), 100_000)?;
//! assert!(report.max_anchor_identity_residual <= 1e-9);
//! assert!(report.min_gap_above_double_log >= -1e-9);
//! # Ok::<(), orlicz::Error>(())
//! ```
//!
//! Tampering with a single coefficient is caught by the verifier:
//!
//! ```
//! use orlicz::counterexample::{build_rho, verify_counterexample, BuildPolicy};
//!
//! let (mut rho, _) = build_rho(3, 2, &BuildPolicy::default())?;
//! rho.pieces[1].slope += 1e-3;
//! assert!(verify_counterexample(&rho, 2 * rho.last_anchor(), 50_000).is_err());
//! # Ok::<(), orlicz::Error>(())
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One affine piece `x -> intercept + slope * x` on `[start, end]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffinePiece {
    pub start: f64,
    pub end: f64,
    pub slope: f64,
    pub intercept: f64,
}

impl AffinePiece {
    pub fn eval(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// The assembled piecewise profile.
///
/// Pieces tile `[0, 2 n_K]` with strictly decreasing positive slopes: the
/// chord on `[0, n_1]`, then the k-th tangent line on `[t_{k-1}, t_k]`
/// (with `t_0 = n_1` and `t_K = 2 n_K`). Beyond the domain the last tangent
/// extends indefinitely.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseRho {
    pub n1: u64,
    pub anchors: Vec<u64>,
    /// Tangency abscissae `x_k = e sqrt(n_k)`.
    pub touch_points: Vec<f64>,
    /// Junction abscissae `t_k` between consecutive tangents.
    pub junctions: Vec<f64>,
    pub chord_slope: f64,
    pub pieces: Vec<AffinePiece>,
}

impl PiecewiseRho {
    /// Index of the piece containing `x` (the last piece for `x` beyond the
    /// domain).
    pub fn piece_index(&self, x: f64) -> usize {
        let idx = match self
            .pieces
            .binary_search_by(|p| p.start.partial_cmp(&x).expect("finite"))
        {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        };
        idx.min(self.pieces.len() - 1)
    }

    /// Evaluates the profile; beyond the last piece the final tangent
    /// continues.
    pub fn eval(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0);
        self.pieces[self.piece_index(x)].eval(x)
    }

    pub fn eval_at(&self, n: u64) -> f64 {
        self.eval(n as f64)
    }

    pub fn domain_end(&self) -> f64 {
        self.pieces.last().expect("nonempty").end
    }

    pub fn last_anchor(&self) -> u64 {
        *self.anchors.last().expect("nonempty")
    }
}

/// Search limits for the anchor hunt.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BuildPolicy {
    /// Anchors above this are rejected; `2 n_K` must stay inside `u64`.
    pub anchor_cap: u64,
}

impl Default for BuildPolicy {
    fn default() -> Self {
        BuildPolicy {
            anchor_cap: 4_000_000_000_000_000_000,
        }
    }
}

/// One candidate inspected by the anchor search.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateTrial {
    pub candidate: u64,
    pub junction: f64,
    pub admissible: bool,
}

/// Audit trail of the construction.
#[derive(Clone, Debug, Serialize, Default)]
pub struct ConstructionLog {
    pub searches: Vec<AnchorSearch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnchorSearch {
    pub from_anchor: u64,
    pub tried: Vec<CandidateTrial>,
    pub chosen: u64,
    pub junction: f64,
}

/// Intersection abscissa of the tangents anchored at `n_prev` and `n_next`.
pub fn junction_abscissa(n_prev: u64, n_next: u64) -> f64 {
    let (a, b) = (n_prev as f64, n_next as f64);
    std::f64::consts::E * (b / a).ln() * (a * b.sqrt() + b * a.sqrt()) / (2.0 * (b - a))
}

/// Whether `n_next` is an admissible successor of `n_prev`:
/// the junction lands strictly inside `(2 n_prev, n_next)`.
pub fn admissible(n_prev: u64, n_next: u64) -> bool {
    if n_next <= 2 * n_prev {
        return false;
    }
    let t = junction_abscissa(n_prev, n_next);
    ((2 * n_prev) as f64) < t && t < n_next as f64
}

fn tangent_slope(n: u64) -> f64 {
    2.0 / (std::f64::consts::E * (n as f64).sqrt())
}

fn tangent_intercept(n: u64) -> f64 {
    (n as f64).ln()
}

/// Builds the profile with `segments` tangent blocks starting at `n1 > 2`.
///
/// Each next anchor is the smallest admissible integer, found by doubling
/// the offset past `2 n_k` and bisecting the admissibility boundary
/// (admissibility is monotone in the candidate). Every candidate inspected
/// is recorded in the log.
pub fn build_rho(
    n1: u64,
    segments: usize,
    policy: &BuildPolicy,
) -> Result<(PiecewiseRho, ConstructionLog)> {
    if n1 <= 2 {
        return Err(Error::Param(format!("need n1 > 2, got {n1}")));
    }
    if segments == 0 {
        return Err(Error::Param("need at least one segment".into()));
    }
    let mut log = ConstructionLog::default();
    let mut anchors = vec![n1];
    for _ in 1..segments {
        let prev = *anchors.last().expect("nonempty");
        let (next, search) = find_smallest_admissible(prev, policy)?;
        anchors.push(next);
        log.searches.push(search);
    }

    let touch_points: Vec<f64> = anchors
        .iter()
        .map(|&n| std::f64::consts::E * (n as f64).sqrt())
        .collect();
    let junctions: Vec<f64> = anchors
        .windows(2)
        .map(|w| junction_abscissa(w[0], w[1]))
        .collect();

    // chord from the origin to (n1, rho(n1)); its slope exceeds the first
    // tangent slope because ln n1 > 0
    let rho_n1 = tangent_intercept(n1) + tangent_slope(n1) * n1 as f64;
    let chord_slope = rho_n1 / n1 as f64;
    let mut pieces = vec![AffinePiece {
        start: 0.0,
        end: n1 as f64,
        slope: chord_slope,
        intercept: 0.0,
    }];
    let last = anchors.len() - 1;
    for (k, &n) in anchors.iter().enumerate() {
        let start = if k == 0 { n1 as f64 } else { junctions[k - 1] };
        let end = if k == last {
            2.0 * (anchors[last] as f64)
        } else {
            junctions[k]
        };
        pieces.push(AffinePiece {
            start,
            end,
            slope: tangent_slope(n),
            intercept: tangent_intercept(n),
        });
    }

    Ok((
        PiecewiseRho {
            n1,
            anchors,
            touch_points,
            junctions,
            chord_slope,
            pieces,
        },
        log,
    ))
}

fn find_smallest_admissible(prev: u64, policy: &BuildPolicy) -> Result<(u64, AnchorSearch)> {
    let mut tried = Vec::new();
    let mut probe = |m: u64| -> bool {
        let ok = admissible(prev, m);
        tried.push(CandidateTrial {
            candidate: m,
            junction: junction_abscissa(prev, m),
            admissible: ok,
        });
        ok
    };
    // double the offset past 2*prev until admissible
    let base = 2 * prev;
    let mut offset = 1u64;
    let mut lo = base; // inadmissible by construction
    let mut hi = loop {
        let m = match base.checked_add(offset) {
            Some(m) if m <= policy.anchor_cap => m,
            _ => {
                return Err(Error::SearchExhausted {
                    cap: policy.anchor_cap,
                    context: format!(
                        "no admissible anchor after {prev}; the junction constraint forces \
                         growth like n*exp((4/e)*sqrt(n)) and the next anchor exceeds the cap"
                    ),
                })
            }
        };
        if probe(m) {
            break m;
        }
        lo = m;
        offset = offset.saturating_mul(2);
    };
    // bisect the monotone boundary for the smallest admissible integer
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if probe(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let search = AnchorSearch {
        from_anchor: prev,
        tried,
        chosen: hi,
        junction: junction_abscissa(prev, hi),
    };
    Ok((hi, search))
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Evidence gathered by a successful five-part verification.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub horizon: u64,
    /// Integer ranges were enumerated up to this bound; all-`x` claims are
    /// covered analytically per piece.
    pub enumerated_to: u64,
    // (i) normalization and monotonicity
    pub zero_at_origin: bool,
    pub slopes_positive: bool,
    // (ii) concavity
    pub slopes_strictly_decreasing: bool,
    pub max_junction_gap: f64,
    pub max_integer_second_difference: f64,
    // (iii) sublinearity trend
    pub tangent_slopes: Vec<f64>,
    pub rho_over_x_at_horizon: f64,
    pub sublinearity_note: String,
    // (iv) domination of 2 ln x
    pub min_gap_above_double_log: f64,
    pub inverse_sum_head: f64,
    pub inverse_sum_bound: f64,
    // (v) ratio terms
    pub ratio_terms_checked_to: u64,
    pub max_anchor_identity_residual: f64,
    pub anchor_unit_products: Vec<f64>,
}

fn fail(part: &str, at: impl std::fmt::Display, detail: impl Into<String>) -> Error {
    Error::VerifyFailed {
        part: part.into(),
        at: at.to_string(),
        detail: detail.into(),
    }
}

/// Runs the five-part verification; any decisive failure is a hard error
/// naming the part and the offending index.
///
/// Claims quantified over every real `x` (concavity, domination of
/// `2 ln x`) are checked analytically per affine piece, so they hold for
/// *all* integers in range, not only the enumerated ones; enumeration up to
/// `enum_cap` additionally exercises the assembled evaluator, and log-spaced
/// integer pairs cover the region beyond.
pub fn verify_counterexample(
    rho: &PiecewiseRho,
    horizon: u64,
    enum_cap: u64,
) -> Result<VerificationReport> {
    let last_anchor = rho.last_anchor();
    if horizon < 2 * last_anchor {
        return Err(Error::Param(format!(
            "horizon {horizon} is below 2 * last anchor = {}",
            2 * last_anchor
        )));
    }

    // (i) rho(0) = 0, increasing
    let chord = &rho.pieces[0];
    if chord.start != 0.0 || chord.intercept != 0.0 {
        return Err(fail(
            "i",
            0,
            "profile does not start at the origin with value 0",
        ));
    }
    for (j, p) in rho.pieces.iter().enumerate() {
        if p.slope.is_nan() || p.slope <= 0.0 {
            return Err(fail("i", j, format!("slope {} is not positive", p.slope)));
        }
    }

    // (ii) concavity: strictly decreasing slopes, continuity at junctions,
    // and sampled integer second differences
    for j in 1..rho.pieces.len() {
        let decreasing = rho.pieces[j].slope < rho.pieces[j - 1].slope;
        if !decreasing {
            return Err(fail(
                "ii",
                j,
                format!(
                    "slope does not decrease: {} -> {}",
                    rho.pieces[j - 1].slope,
                    rho.pieces[j].slope
                ),
            ));
        }
    }
    let mut max_gap = 0.0f64;
    for j in 1..rho.pieces.len() {
        let x = rho.pieces[j].start;
        if (x - rho.pieces[j - 1].end).abs() > 0.0 {
            return Err(fail("ii", j, "pieces do not tile: gap or overlap"));
        }
        let left = rho.pieces[j - 1].eval(x);
        let right = rho.pieces[j].eval(x);
        let gap = (left - right).abs() / (1.0 + left.abs());
        max_gap = max_gap.max(gap);
        if gap > 1e-12 {
            return Err(fail(
                "ii",
                j,
                format!("discontinuity {gap:.3e} at junction x = {x}"),
            ));
        }
    }
    let enum_to = horizon.min(enum_cap);
    let mut max_dd = f64::NEG_INFINITY;
    let mut check_second_difference = |n: u64| -> Result<()> {
        if n < 1 {
            return Ok(());
        }
        // a triple inside one affine piece has second difference exactly
        // zero; evaluating it in floating point would only add noise that
        // scales with rho(n)
        let dd = if rho.piece_index((n - 1) as f64) == rho.piece_index((n + 1) as f64) {
            0.0
        } else {
            rho.eval_at(n + 1) - 2.0 * rho.eval_at(n) + rho.eval_at(n - 1)
        };
        max_dd = max_dd.max(dd);
        if dd > 1e-12 {
            return Err(fail(
                "ii",
                n,
                format!("positive second difference {dd:.3e}"),
            ));
        }
        Ok(())
    };
    for n in 1..enum_to {
        check_second_difference(n)?;
    }
    for n in log_spaced_integers(enum_to, horizon, 256) {
        check_second_difference(n)?;
    }
    for w in junction_windows(rho, horizon) {
        check_second_difference(w)?;
    }

    // (iii) slopes of the tangent blocks decrease toward zero
    let tangent_slopes: Vec<f64> = rho.pieces[1..].iter().map(|p| p.slope).collect();
    let rho_over_x = rho.eval(horizon as f64) / horizon as f64;

    // (iv) every tangent piece dominates 2 ln x on its interval (the gap is
    // convex, so its minimum is at an endpoint or at x = 2/slope); the chord
    // is excluded: the claim starts at n1
    let n1f = rho.n1 as f64;
    let mut min_gap = f64::INFINITY;
    for (j, p) in rho.pieces.iter().enumerate().skip(1) {
        let a = p.start.max(n1f);
        let b = p.end;
        if a >= b {
            continue;
        }
        let gap = |x: f64| p.eval(x) - 2.0 * x.ln();
        let mut local = gap(a).min(gap(b));
        let critical = 2.0 / p.slope;
        if critical > a && critical < b {
            local = local.min(gap(critical));
        }
        min_gap = min_gap.min(local);
        if local < -1e-9 {
            return Err(fail(
                "iv",
                j,
                format!("piece dips {local:.3e} below 2 ln x"),
            ));
        }
    }
    // partial-sum bound: head enumerated, tail dominated by sum n^{-2}
    let head_to = (2 * last_anchor).min(enum_cap).max(rho.n1);
    let head: f64 = (rho.n1..=head_to).map(|n| (-rho.eval_at(n)).exp()).sum();
    let inverse_sum_bound = head + 1.0 / head_to as f64;

    // (v) a_n = exp(rho(2n) - 2 rho(n)) nonincreasing, with n_k a_{n_k} = 1.
    // The exponent is evaluated in a cancellation-free form: with n on the
    // piece (s_b, i_b) and 2n on (s_a, i_a) it equals
    // (i_a - 2 i_b) + (s_a * 2n - 2 s_b * n), so deep inside a block the
    // huge linear parts cancel exactly instead of through lossy additions.
    let exponent = |n: u64| -> f64 {
        let x = n as f64;
        let a = &rho.pieces[rho.piece_index(2.0 * x)];
        let b = &rho.pieces[rho.piece_index(x)];
        (a.intercept - 2.0 * b.intercept) + (a.slope * (2.0 * x) - 2.0 * (b.slope * x))
    };
    let a_term = |n: u64| exponent(n).exp();
    let half = horizon / 2;
    let ratio_to = half.min(enum_cap);
    // between piece transitions the exponent changes by 2 (s_a - s_b) <= 0
    // per step (slopes decrease along pieces), so only transition straddles
    // need a numeric comparison
    let check_ratio_step = |n: u64| -> Result<()> {
        let (xa, xb) = (n as f64, (n + 1) as f64);
        let same = rho.piece_index(xa) == rho.piece_index(xb)
            && rho.piece_index(2.0 * xa) == rho.piece_index(2.0 * xb);
        if !same && exponent(n + 1) > exponent(n) + 1e-12 {
            return Err(fail(
                "v",
                n,
                format!(
                    "a_n increases: exponent {} -> {}",
                    exponent(n),
                    exponent(n + 1)
                ),
            ));
        }
        Ok(())
    };
    for n in 1..ratio_to {
        check_ratio_step(n)?;
    }
    for n in log_spaced_integers(ratio_to, half, 256)
        .into_iter()
        .chain(junction_windows(rho, half))
    {
        if n >= 1 && n < half {
            check_ratio_step(n)?;
        }
    }
    let mut max_residual = 0.0f64;
    let mut unit_products = Vec::new();
    for (k, &nk) in rho.anchors.iter().enumerate() {
        // both n_k and 2 n_k must lie on the k-th tangent block, where the
        // identity 2 rho(n_k) - rho(2 n_k) = intercept = ln n_k is algebraic
        let idx = rho.piece_index(nk as f64);
        if idx != rho.piece_index((2 * nk) as f64) {
            return Err(fail(
                "v",
                k,
                format!("anchor block [{nk}, {}] is split", 2 * nk),
            ));
        }
        let identity = -exponent(nk);
        let rel = (identity - (nk as f64).ln()).abs() / (1.0 + (nk as f64).ln().abs());
        max_residual = max_residual.max(rel);
        if rel > 1e-9 {
            return Err(fail(
                "v",
                k,
                format!("anchor identity off by {rel:.3e} at n_k = {nk}"),
            ));
        }
        unit_products.push(nk as f64 * a_term(nk));
    }

    Ok(VerificationReport {
        horizon,
        enumerated_to: enum_to,
        zero_at_origin: true,
        slopes_positive: true,
        slopes_strictly_decreasing: true,
        max_junction_gap: max_gap,
        max_integer_second_difference: if max_dd == f64::NEG_INFINITY {
            0.0
        } else {
            max_dd
        },
        tangent_slopes,
        rho_over_x_at_horizon: rho_over_x,
        sublinearity_note: "slope trend reported; the x -> infinity limit itself is not \
                            certifiable from finite data"
            .into(),
        min_gap_above_double_log: min_gap,
        inverse_sum_head: head,
        inverse_sum_bound,
        ratio_terms_checked_to: ratio_to,
        max_anchor_identity_residual: max_residual,
        anchor_unit_products: unit_products,
    })
}

fn log_spaced_integers(from: u64, to: u64, count: usize) -> Vec<u64> {
    if to <= from.max(2) {
        return Vec::new();
    }
    let (lf, lt) = ((from.max(2) as f64).ln(), (to as f64).ln());
    let mut out: Vec<u64> = (0..count)
        .map(|i| (lf + (lt - lf) * i as f64 / (count - 1).max(1) as f64).exp() as u64)
        .collect();
    out.dedup();
    out
}

/// Integer windows around anchors and junctions, clipped to `[1, limit]`.
fn junction_windows(rho: &PiecewiseRho, limit: u64) -> Vec<u64> {
    let mut centers: Vec<u64> = Vec::new();
    for &n in &rho.anchors {
        centers.push(n);
        centers.push(n.saturating_mul(2));
    }
    for &t in &rho.junctions {
        centers.push(t as u64);
        centers.push((t / 2.0) as u64);
    }
    let mut out = Vec::new();
    for c in centers {
        let lo = c.saturating_sub(30).max(1);
        let hi = c.saturating_add(30).min(limit);
        for n in lo..=hi {
            out.push(n);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}
