//! Closed-form machinery for Rose trees `R(s, t, p)`.
//!
//! The Fiedler vector of `R(s, t, p)` is pinned down by a handful of polynomials in the
//! eigenvalue:
//!
//! ```text
//! P(X)   = X² − (p+2)X + 1
//! Q(X)   = (X − 3)P(X) + (1 − X)
//! R_0    = 1,  R_1 = 1 − X,  R_n = (2 − X)R_{n−1} − R_{n−2}
//! h_s    = 2R_{s−1} + (X − 3)R_s
//! f_p    = 2R_{s−1}P + R_sQ
//! χ      = (R_sR_{t−1} + R_{s−1}R_t)P + QR_sR_t
//! ```
//!
//! λ₂ is the first positive root of χ, and for `s = t` one has `χ = R_s·f_p`. Everything
//! here is evaluated pointwise by recurrence; no polynomial is ever expanded into
//! coefficients.

use core::f64::consts::PI;

use crate::spectral::{fiedler, TreeType};
use crate::{Error, Result, RoseParams, Tree};

/// Grid resolution of the sign-change scan in [`first_positive_root`].
pub const SCAN_POINTS: usize = 2048;
/// The scan starts here so the trivial root at 0 is skipped.
pub const SCAN_START: f64 = 1e-9;
/// Bisection stops once the bracket is this narrow.
pub const BISECTION_WIDTH: f64 = 1e-13;
/// `|f(upper)|` below this counts as a root sitting on the upper endpoint.
pub const ENDPOINT_ROOT: f64 = 1e-10;
/// Slack added to `r(s)` so a root exactly at `r(s)` is inside the scan interval.
pub const UPPER_SLACK: f64 = 1e-6;

/// `(R_{n−1}(x), R_n(x))` for `n >= 1`.
fn r_pair(n: usize, x: f64) -> (f64, f64) {
    debug_assert!(n >= 1);
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    for _ in 1..n {
        let next = (2.0 - x) * cur - prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

pub fn eval_r(n: usize, x: f64) -> f64 {
    if n == 0 {
        1.0
    } else {
        r_pair(n, x).1
    }
}

/// `R_n(x) = cos((n + ½)θ) / cos(θ/2)` with `cos θ = 1 − x/2`, valid on `[0, 1]`.
pub fn eval_r_closed(n: usize, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DomainError("closed form of R_n needs 0 <= x <= 1"));
    }
    let theta = libm::acos(1.0 - x / 2.0);
    Ok(libm::cos((n as f64 + 0.5) * theta) / libm::cos(theta / 2.0))
}

pub fn eval_p(p: usize, x: f64) -> f64 {
    x * x - (p as f64 + 2.0) * x + 1.0
}

pub fn eval_q(p: usize, x: f64) -> f64 {
    (x - 3.0) * eval_p(p, x) + (1.0 - x)
}

pub fn eval_h(s: usize, x: f64) -> f64 {
    let (rs1, rs) = r_pair(s, x);
    2.0 * rs1 + (x - 3.0) * rs
}

pub fn eval_fp(s: usize, p: usize, x: f64) -> f64 {
    let (rs1, rs) = r_pair(s, x);
    2.0 * rs1 * eval_p(p, x) + rs * eval_q(p, x)
}

pub fn eval_chi(s: usize, t: usize, p: usize, x: f64) -> f64 {
    let (rs1, rs) = r_pair(s, x);
    let (rt1, rt) = r_pair(t, x);
    (rs * rt1 + rs1 * rt) * eval_p(p, x) + eval_q(p, x) * rs * rt
}

/// `2(1 − cos(π/(2s+1)))` for real `s`; at integer `s` this is the first positive root of `R_s`,
/// and it is also λ₂ of the path on `2s + 1` vertices.
pub fn r_of_real(s: f64) -> f64 {
    2.0 * (1.0 - libm::cos(PI / (2.0 * s + 1.0)))
}

pub fn r_of_s(s: usize) -> f64 {
    r_of_real(s as f64)
}

/// `(r(s) − 1)² / r(s)`: `R(s, s, p)` satisfies FED exactly when `p` is at most this.
pub fn threshold_f(s: usize) -> f64 {
    let r = r_of_s(s);
    (r - 1.0) * (r - 1.0) / r
}

/// `threshold_f(s) / ((4/π²) s²)`, which tends to 1.
pub fn asymptotic_ratio(s: usize) -> f64 {
    let sf = s as f64;
    threshold_f(s) / (4.0 / (PI * PI) * sf * sf)
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    let mut flo = f(lo);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Smallest root of `f` in `(SCAN_START, upper]`.
///
/// A uniform scan with step `upper / SCAN_POINTS` looks for the first sign change, which is
/// then bisected down to [`BISECTION_WIDTH`]. Without a sign change, `upper` itself is
/// returned when `|f(upper)| <= ENDPOINT_ROOT`.
pub fn first_positive_root(f: impl Fn(f64) -> f64, upper: f64) -> Result<f64> {
    if upper.is_nan() || upper <= SCAN_START {
        return Err(Error::BadParam("upper bound must exceed the scan start"));
    }
    let step = upper / SCAN_POINTS as f64;
    let mut x0 = SCAN_START;
    let mut f0 = f(x0);
    if f0 == 0.0 {
        return Ok(x0);
    }
    let mut k = 1;
    while x0 < upper {
        let x1 = (SCAN_START + k as f64 * step).min(upper);
        let f1 = f(x1);
        if f1 == 0.0 {
            return Ok(x1);
        }
        if (f1 > 0.0) != (f0 > 0.0) {
            return Ok(bisect(&f, x0, x1, BISECTION_WIDTH));
        }
        x0 = x1;
        f0 = f1;
        k += 1;
    }
    if f(upper).abs() <= ENDPOINT_ROOT {
        Ok(upper)
    } else {
        Err(Error::NoRoot)
    }
}

fn require_theory_range(s: usize, t: usize) -> Result<()> {
    if s < 3 || t < 3 {
        return Err(Error::BadParam("Rose-tree analytics need s >= 3 and t >= 3"));
    }
    Ok(())
}

/// λ₂ of `R(s, t, p)` by root isolation, without eigensolving.
///
/// For `s = t` the factor `R_s` contributes the root `r(s)` and the remaining factor `f_p`
/// is scanned separately, so two nearly coincident roots never share a scan cell.
pub fn alpha_analytic(s: usize, t: usize, p: usize) -> Result<f64> {
    require_theory_range(s, t)?;
    let upper = r_of_s(s.min(t)) + UPPER_SLACK;
    if s == t {
        let r = r_of_s(s);
        return match first_positive_root(|x| eval_fp(s, p, x), upper) {
            Ok(rho) if rho < r => Ok(rho),
            Ok(_) | Err(Error::NoRoot) => Ok(r),
            Err(e) => Err(e),
        };
    }
    first_positive_root(|x| eval_chi(s, t, p, x), upper)
}

/// The unique root of `h_s` in `(0, r(s))`, which is the limit of `α(s, s, p)` as `p → ∞`.
pub fn root_of_h(s: usize) -> Result<f64> {
    if s < 3 {
        return Err(Error::BadParam("root_of_h needs s >= 3"));
    }
    let h = |x| eval_h(s, x);
    let hi = r_of_s(s);
    if !(h(0.0) < 0.0 && h(hi) > 0.0) {
        return Err(Error::NoRoot);
    }
    Ok(bisect(&h, 0.0, hi, 0.0))
}

/// Evaluators sharing one parameter triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyFamily {
    pub s: usize,
    pub t: usize,
    pub p: usize,
}

impl PolyFamily {
    pub fn new(s: usize, t: usize, p: usize) -> Result<Self> {
        require_theory_range(s, t)?;
        Ok(PolyFamily { s, t, p })
    }

    pub fn p(&self, x: f64) -> f64 {
        eval_p(self.p, x)
    }
    pub fn q(&self, x: f64) -> f64 {
        eval_q(self.p, x)
    }
    pub fn h(&self, x: f64) -> f64 {
        eval_h(self.s, x)
    }
    pub fn fp(&self, x: f64) -> f64 {
        eval_fp(self.s, self.p, x)
    }
    pub fn chi(&self, x: f64) -> f64 {
        eval_chi(self.s, self.t, self.p, x)
    }
    pub fn alpha(&self) -> Result<f64> {
        alpha_analytic(self.s, self.t, self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Prediction {
    FedTrue,
    FedFalse,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PredictionBasis {
    /// `s = t`: compared against `threshold_f(s)`.
    ExactThreshold,
    /// `p <= threshold_f(s) − 1`.
    LowerBound,
    /// `p >= threshold_f(t + 2)`.
    UpperBound,
    /// Between the bounds; an eigensolve has to decide.
    NumericFallback,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RoseVerdict {
    pub prediction: Prediction,
    pub basis: PredictionBasis,
    pub alpha_analytic: f64,
    pub threshold_low: f64,
    pub threshold_high: f64,
    /// The input had `s > t` and was normalized.
    pub swapped: bool,
}

/// Thresholds this close to an integer are not trusted to decide `p <= f`.
const THRESHOLD_INTEGER_GUARD: f64 = 1e-9;

/// FED prediction for `R(s, t, p)` from the thresholds alone.
pub fn predict_fed_rose(s: usize, t: usize, p: usize) -> Result<RoseVerdict> {
    require_theory_range(s, t)?;
    let swapped = s > t;
    let (s, t) = if swapped { (t, s) } else { (s, t) };
    let alpha = alpha_analytic(s, t, p)?;
    let pf = p as f64;

    let (prediction, basis, threshold_low, threshold_high) = if s == t {
        let f = threshold_f(s);
        if (f - libm::round(f)).abs() < THRESHOLD_INTEGER_GUARD {
            (Prediction::Indeterminate, PredictionBasis::NumericFallback, f, f)
        } else if pf <= f {
            (Prediction::FedTrue, PredictionBasis::ExactThreshold, f, f)
        } else {
            (Prediction::FedFalse, PredictionBasis::ExactThreshold, f, f)
        }
    } else {
        let low = threshold_f(s) - 1.0;
        let high = threshold_f(t + 2);
        if pf <= low {
            (Prediction::FedTrue, PredictionBasis::LowerBound, low, high)
        } else if pf >= high {
            (Prediction::FedFalse, PredictionBasis::UpperBound, low, high)
        } else {
            (Prediction::Indeterminate, PredictionBasis::NumericFallback, low, high)
        }
    };
    Ok(RoseVerdict { prediction, basis, alpha_analytic: alpha, threshold_low, threshold_high, swapped })
}

/// Residuals of the local eigenvector relations on `R(s, t, p)`, measured on the unit
/// Fiedler vector from the eigensolver.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LocalResiduals {
    pub alpha: f64,
    /// Common star-leaf value (for `p = 0`, the value a virtual leaf would carry).
    pub phi_hat: f64,
    /// Φ at the attachment vertex `s + 1`.
    pub phi_attach: f64,
    /// `(1 − α)Φ̂ − Φ_c`
    pub center: f64,
    /// `P(α)Φ̂ − Φ_{s+1}`
    pub attach: f64,
    /// `−Q(α)Φ̂ − (Φ_s + Φ_{s+2})`
    pub neighbors: f64,
    /// `max_i |R_s(α)Φ_i − R_{i−1}(α)Φ_{s+1}|`, `i = 1..=s`
    pub left_branch: f64,
    /// `max_i |R_t(α)Φ_{s+1+i} − R_{t−i}(α)Φ_{s+1}|`, `i = 1..=t`
    pub right_branch: f64,
    /// `max |Φ_leaf − Φ̂|`
    pub leaf_spread: f64,
}

impl LocalResiduals {
    pub fn max(&self) -> f64 {
        [self.center, self.attach, self.neighbors, self.left_branch, self.right_branch, self.leaf_spread]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn verify_local_relations(s: usize, t: usize, p: usize) -> Result<LocalResiduals> {
    require_theory_range(s, t)?;
    let params = RoseParams::new(s, t, p)?;
    let tree = Tree::rose(params)?;
    let report = fiedler(&tree)?;
    if report.tree_type == TreeType::Degenerate {
        return Err(Error::DegenerateEigenspace { multiplicity: report.multiplicity });
    }
    let a = report.lambda2;
    let phi = |label: usize| report.vector[label - 1];
    let c = params.center();

    let (phi_hat, leaf_spread) = if p == 0 {
        (phi(c) / (1.0 - a), 0.0)
    } else {
        let mean = params.star_leaves().map(phi).sum::<f64>() / p as f64;
        let spread = params.star_leaves().map(|l| (phi(l) - mean).abs()).fold(0.0, f64::max);
        (mean, spread)
    };
    let attach = phi(s + 1);
    let rs = eval_r(s, a);
    let rt = eval_r(t, a);
    let left_branch = (1..=s).map(|i| (rs * phi(i) - eval_r(i - 1, a) * attach).abs()).fold(0.0, f64::max);
    let right_branch = (1..=t).map(|i| (rt * phi(i + s + 1) - eval_r(t - i, a) * attach).abs()).fold(0.0, f64::max);

    Ok(LocalResiduals {
        alpha: a,
        phi_hat,
        phi_attach: attach,
        center: ((1.0 - a) * phi_hat - phi(c)).abs(),
        attach: (eval_p(p, a) * phi_hat - attach).abs(),
        neighbors: (-eval_q(p, a) * phi_hat - (phi(s) + phi(s + 2))).abs(),
        left_branch,
        right_branch,
        leaf_spread,
    })
}
