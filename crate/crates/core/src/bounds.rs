//! Closed-form and implicit constants: the root `ξ(γ)`, clique, chromatic
//! and independence thresholds for each time regime, Chernoff tails, Poisson
//! masses and the offline degree profile.
//!
//! All logarithms are natural. Non-integer bound values are reported as
//! reals; callers that need integers round `k` down and `k'` up.

use serde::Serialize;
use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};

/// `γ` at which `ξ(γ) = 2`; above it the circulant lower bound `2γ log n`
/// beats `ξγ log n`.
pub fn gamma_lower_switch() -> f64 {
    1.0 / (2.0 * std::f64::consts::LN_2 - 1.0)
}

/// The quoted threshold `(64 e log 64 - 1)^{-1} ≈ 0.00139` below which the
/// rare-pair upper bound is the stronger one.
pub fn gamma_upper_switch() -> f64 {
    1.0 / (64.0 * std::f64::consts::E * 64f64.ln() - 1.0)
}

/// Exact `γ` where `1 + 2√2 (e/ξ)^{1/4} = 2`, i.e. `ξ = 64e`. Differs from
/// [`gamma_upper_switch`] by the sign of the `1` (about 0.3%).
pub fn gamma_upper_crossover() -> f64 {
    1.0 / (64.0 * std::f64::consts::E * 64f64.ln() + 1.0)
}

fn xi_lhs(xi: f64) -> f64 {
    xi * (xi.ln() - 1.0)
}

/// Unique `ξ > 1` with `1 - ξγ(log ξ - 1) - γ = 0`.
///
/// Bisection on `(1, B)` with `B` doubled until the sign flips, down to a
/// bracket of width `1e-10`, then Newton steps kept inside the bracket.
pub fn solve_xi(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "gamma must be positive and finite, got {gamma}"
        )));
    }
    let target = 1.0 / gamma - 1.0;
    let f = |xi: f64| xi_lhs(xi) - target;

    let mut lo = 1.0_f64;
    let mut hi = 2.0_f64;
    while f(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut xi = 0.5 * (lo + hi);
    for _ in 0..4 {
        let d = xi.ln();
        if d <= 0.0 {
            break;
        }
        let next = xi - f(xi) / d;
        if !(next > lo && next < hi) {
            break;
        }
        if f(next).abs() >= f(xi).abs() {
            break;
        }
        xi = next;
    }
    Ok(xi)
}

/// `|1 - ξγ(log ξ - 1) - γ|`.
pub fn xi_residual(gamma: f64, xi: f64) -> f64 {
    (1.0 - xi * gamma * (xi.ln() - 1.0) - gamma).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `t ≪ n log n`, parametrised by `β = n log n / t`.
    Small,
    /// `t = γ n log n`.
    Log,
    /// `t ≥ ω n log n` with `ω` large.
    VeryLarge,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Small => "small",
            Regime::Log => "log",
            Regime::VeryLarge => "vlarge",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Regime::Small),
            "log" => Ok(Regime::Log),
            "vlarge" => Ok(Regime::VeryLarge),
            other => Err(Error::Config(format!("unknown regime {other:?}"))),
        }
    }
}

fn check_n(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "bounds need n >= 3 so that log log n > 0, got {n}"
        )));
    }
    Ok(n as f64)
}

/// Splits the time axis at `n log n / log log n` and `10 n log n`.
pub fn detect_regime(n: usize, t: u64) -> Result<Regime> {
    let nf = check_n(n)?;
    let ln = nf.ln();
    let t = t as f64;
    Ok(if t < nf * ln / ln.ln() {
        Regime::Small
    } else if t <= 10.0 * nf * ln {
        Regime::Log
    } else {
        Regime::VeryLarge
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaCase {
    /// `λ ≫ n^{2/5}`: every part completes.
    Dense,
    /// `1 ≪ λ = O(n^{2/5})`.
    Growing,
    /// `λ = Θ(1)`.
    Constant,
}

/// Independence-number bounds for average degree `2λ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaBounds {
    pub lambda: f64,
    pub ell: f64,
    /// Part size `2⌈ℓ⌉ + 1`.
    pub k: u64,
    pub parts: u64,
    pub case: AlphaCase,
    pub upper: f64,
    /// `n / (2λ + 1)`, from the Caro–Wei average-degree bound.
    pub lower: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeBounds {
    pub n: usize,
    pub t: u64,
    pub lambda: f64,
    pub regime: Regime,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub omega: Option<f64>,
    pub xi: Option<f64>,
    /// Max-squares threshold.
    pub ell: Option<f64>,
    pub epsilon: Option<f64>,
    /// Clique order reachable a.a.s.
    pub k: f64,
    /// Clique order that cannot be reached a.a.s.
    pub k_prime: f64,
    pub k1: Option<f64>,
    pub k2: Option<f64>,
    pub k1_prime: Option<f64>,
    pub k2_prime: Option<f64>,
    pub chi_lower: f64,
    pub chi_upper: f64,
    pub alpha: Option<AlphaBounds>,
    pub warnings: Vec<String>,
}

impl RegimeBounds {
    fn empty(n: usize, t: u64, regime: Regime) -> Self {
        RegimeBounds {
            n,
            t,
            lambda: t as f64 / n as f64,
            regime,
            beta: None,
            gamma: None,
            omega: None,
            xi: None,
            ell: None,
            epsilon: None,
            k: 0.0,
            k_prime: 0.0,
            k1: None,
            k2: None,
            k1_prime: None,
            k2_prime: None,
            chi_lower: 0.0,
            chi_upper: 0.0,
            alpha: alpha_bounds(n, t).ok(),
            warnings: Vec::new(),
        }
    }

    /// `(key, value)` pairs in a fixed order, absent values skipped.
    pub fn entries(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("n".to_string(), self.n.to_string()),
            ("t".to_string(), self.t.to_string()),
            ("regime".to_string(), self.regime.as_str().to_string()),
            ("lambda".to_string(), fmt_sig(self.lambda)),
        ];
        let opt = [
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("omega", self.omega),
            ("xi", self.xi),
            ("ell", self.ell),
            ("epsilon", self.epsilon),
            ("k1", self.k1),
            ("k2", self.k2),
            ("k1_prime", self.k1_prime),
            ("k2_prime", self.k2_prime),
        ];
        for (key, v) in opt {
            if let Some(v) = v {
                out.push((key.to_string(), fmt_sig(v)));
            }
        }
        out.push(("k".into(), fmt_sig(self.k)));
        out.push(("k_prime".into(), fmt_sig(self.k_prime)));
        out.push(("chi_lower".into(), fmt_sig(self.chi_lower)));
        out.push(("chi_upper".into(), fmt_sig(self.chi_upper)));
        if let Some(a) = &self.alpha {
            out.push(("alpha_ell".into(), fmt_sig(a.ell)));
            out.push(("alpha_k".into(), a.k.to_string()));
            out.push(("alpha_parts".into(), a.parts.to_string()));
            out.push((
                "alpha_case".into(),
                match a.case {
                    AlphaCase::Dense => "dense",
                    AlphaCase::Growing => "growing",
                    AlphaCase::Constant => "constant",
                }
                .into(),
            ));
            out.push(("alpha_upper".into(), fmt_sig(a.upper)));
            out.push(("alpha_lower".into(), fmt_sig(a.lower)));
        }
        out
    }
}

/// Formats a float with 12 significant digits, `%g` style.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').unwrap();
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{e}")
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Bounds for `t ≪ n log n` with `β = n log n / t`.
pub fn small_t_bounds(n: usize, t: u64) -> Result<RegimeBounds> {
    let nf = check_n(n)?;
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    let ln = nf.ln();
    let lln = ln.ln();
    let beta = nf * ln / t as f64;
    if beta <= 1.0 {
        return Err(Error::Regime(format!(
            "beta = {beta} <= 1 (t >= n log n); use the log-t or very-large-t bounds"
        )));
    }
    let lb = beta.ln();
    let denom = lb - 2.0 * lb.ln();
    if denom <= 0.0 {
        return Err(Error::Regime(format!(
            "log beta - 2 log log beta = {denom} <= 0; use the large-t bounds"
        )));
    }
    let ell = ln / denom;
    let epsilon = if beta <= ln / lln {
        std::f64::consts::E.powi(2) * lb / beta
    } else if beta <= ln * ln {
        15.0 * ell.ln() / ell
    } else {
        std::f64::consts::E / ell
    };
    let lambda = t as f64 / nf;
    let k = (ln - 2.0 * lln - lambda) / lb;
    let k_prime = ell * (1.0 + 4.0 * epsilon.powf(0.25));

    let mut b = RegimeBounds::empty(n, t, Regime::Small);
    b.beta = Some(beta);
    b.ell = Some(ell);
    b.epsilon = Some(epsilon);
    b.k = k;
    b.k_prime = k_prime;
    b.chi_lower = k;
    b.chi_upper = 2.0 * ell + 2.0;
    if t as f64 >= nf * ln / lln {
        b.warnings
            .push("t >= n log n / log log n: outside the intended small-t range".into());
    }
    if epsilon >= 1.0 {
        b.warnings.push(format!(
            "epsilon = {epsilon:.4} >= 1 at this n; the bound is loose"
        ));
    }
    Ok(b)
}

/// Bounds for `t = γ n log n`. `t` is rounded to the nearest integer.
pub fn large_t_bounds(n: usize, gamma: f64) -> Result<RegimeBounds> {
    let nf = check_n(n)?;
    let xi = solve_xi(gamma)?;
    let ln = nf.ln();
    let lln = ln.ln();
    let t = (gamma * nf * ln).round().max(1.0) as u64;
    let ell = xi * gamma * ln;
    let lxi = xi.ln();
    // Past γ = 1 the quoted finite-n correction changes sign (log ξ - 1 <= 0)
    // and would push k1 above ℓ; there the first-moment correction
    // 2 log log n / log ξ keeps k1 below ℓ.
    let k1 = if gamma < 1.0 {
        ((1.0 - gamma) * ln - 2.0 * lln) / (lxi - 1.0)
    } else {
        ell - 2.0 * lln / lxi
    };
    let k2 = 2.0 * gamma * ln - 4.0 * (gamma * ln * lln).sqrt();
    let k1_prime = (1.0 + 3.0 / ln.sqrt())
        * (1.0 + 2.0 * std::f64::consts::SQRT_2 * (std::f64::consts::E / xi).powf(0.25))
        * xi
        * gamma
        * ln;
    let k2_prime = 2.0 * xi * gamma * ln + 1.0;

    let mut b = RegimeBounds::empty(n, t, Regime::Log);
    b.gamma = Some(gamma);
    b.xi = Some(xi);
    b.ell = Some(ell);
    b.k1 = Some(k1);
    b.k2 = Some(k2);
    b.k1_prime = Some(k1_prime);
    b.k2_prime = Some(k2_prime);
    b.k = k1.max(k2);
    b.k_prime = k1_prime.min(k2_prime);
    b.chi_lower = b.k;
    b.chi_upper = 2.0 * ell + 2.0;
    Ok(b)
}

/// Bounds for `t ≥ ω n log n`.
pub fn very_large_t_bounds(n: usize, t: u64) -> Result<RegimeBounds> {
    let nf = check_n(n)?;
    let ln = nf.ln();
    let omega = t as f64 / (nf * ln);
    if omega < 1.0 {
        return Err(Error::Regime(format!(
            "omega = {omega} < 1 (t < n log n); use the small-t or log-t bounds"
        )));
    }
    let base = 2.0 * t as f64 / nf;
    let corr = omega.powf(-1.0 / 3.0);
    let k = (base * (1.0 - corr)).min(nf);
    let k_prime = base * (1.0 + corr);

    let mut b = RegimeBounds::empty(n, t, Regime::VeryLarge);
    b.omega = Some(omega);
    b.k = k;
    b.k_prime = k_prime;
    b.chi_lower = k;
    b.chi_upper = k_prime;
    if omega < 10.0 {
        b.warnings.push(format!(
            "omega = {omega:.3} < 10; the o(1) corrections are large"
        ));
    }
    Ok(b)
}

/// Dispatches on `regime`, or on [`detect_regime`] when `None`.
pub fn regime_bounds(n: usize, t: u64, regime: Option<Regime>) -> Result<RegimeBounds> {
    let regime = match regime {
        Some(r) => r,
        None => detect_regime(n, t)?,
    };
    match regime {
        Regime::Small => small_t_bounds(n, t),
        Regime::Log => {
            let nf = check_n(n)?;
            let gamma = t as f64 / (nf * nf.ln());
            let mut b = large_t_bounds(n, gamma)?;
            b.t = t;
            b.lambda = t as f64 / nf;
            b.alpha = alpha_bounds(n, t).ok();
            Ok(b)
        }
        Regime::VeryLarge => very_large_t_bounds(n, t),
    }
}

/// Clique-partition upper bound and Caro–Wei lower bound on `α(G_t)`.
///
/// The cases switch at `λ = n^{2/5}` and `λ = log n`.
pub fn alpha_bounds(n: usize, t: u64) -> Result<AlphaBounds> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let nf = n as f64;
    let lambda = t as f64 / nf;
    let ell = partition_ell(lambda)?;
    let ceil_ell = ell.ceil();
    let k = 2 * ceil_ell as u64 + 1;
    let parts = (n as u64).div_ceil(k);
    let kf = k as f64;
    let (case, upper) = if lambda > nf.powf(0.4) {
        (AlphaCase::Dense, parts as f64)
    } else if n >= 3 && lambda >= nf.ln() {
        (
            AlphaCase::Growing,
            parts as f64 * (1.0 + kf * kf * lambda.ln().sqrt() / lambda.powf(2.5)),
        )
    } else {
        (
            AlphaCase::Constant,
            nf * (1.0 / kf + 2.0 * ceil_ell / lambda.powf(2.5)) + nf.powf(0.75),
        )
    };
    Ok(AlphaBounds {
        lambda,
        ell,
        k,
        parts,
        case,
        upper,
        lower: nf / (2.0 * lambda + 1.0),
    })
}

/// `ℓ = λ - √(5 λ log λ)`, required positive.
pub fn partition_ell(lambda: f64) -> Result<f64> {
    if !(lambda > 1.0) {
        return Err(Error::Config(format!(
            "lambda = {lambda} too small for the clique partition (need ell > 0)"
        )));
    }
    let ell = lambda - (5.0 * lambda * lambda.ln()).sqrt();
    if ell <= 0.0 {
        return Err(Error::Config(format!(
            "lambda = {lambda} gives ell = {ell} <= 0; the clique partition needs ell > 0"
        )));
    }
    Ok(ell)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSide {
    Upper,
    Lower,
}

/// Chernoff bound on `P(X ≥ μ + d)` (upper) or `P(X ≤ μ - d)` (lower).
pub fn chernoff_tail(mean: f64, deviation: f64, side: TailSide) -> Result<f64> {
    if !(mean >= 0.0) || !(deviation >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "mean and deviation must be nonnegative, got ({mean}, {deviation})"
        )));
    }
    if deviation == 0.0 {
        return Ok(1.0);
    }
    Ok(match side {
        TailSide::Upper => (-deviation * deviation / (2.0 * (mean + deviation / 3.0))).exp(),
        TailSide::Lower => {
            if mean == 0.0 {
                0.0
            } else {
                (-deviation * deviation / (2.0 * mean)).exp()
            }
        }
    })
}

/// `λ^k e^{-λ} / k!`, evaluated in log space.
pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    if lambda <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (k as f64 * lambda.ln() - lambda - ln_factorial(k)).exp()
}

/// Degree profile reached by placing every circle at the end on a current
/// minimum-degree vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OfflineProfile {
    pub lambda: f64,
    /// Largest `m` with `f(m) ≤ λ`.
    pub m: u64,
    /// `f(0), f(1), …, f(M + 1)`.
    pub f: Vec<f64>,
    pub g_m: f64,
    /// `h[k]` for `k = 0..h.len()`, zero below `M`, truncated once the
    /// Poisson tail drops under `1e-12`.
    pub h: Vec<f64>,
    /// `Σ_{k ≥ M} h(k) / (k + 1)`.
    pub lower_bound_coeff: f64,
}

impl OfflineProfile {
    pub fn mass(&self) -> f64 {
        self.h.iter().sum()
    }

    pub fn mean_degree(&self) -> f64 {
        self.h.iter().enumerate().map(|(k, h)| k as f64 * h).sum()
    }
}

/// Offline greedy degree profile for `t = λn`.
pub fn offline_profile(lambda: f64) -> Result<OfflineProfile> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let p = |k: u64| poisson_pmf(lambda, k);
    // f(m+1) = f(m) + g(m) with g(m) = P(X ≤ m).
    let mut f = vec![0.0];
    let mut g = 0.0;
    let mut m = 0u64;
    loop {
        g += p(m);
        let next = f[m as usize] + g;
        f.push(next);
        if next > lambda {
            break;
        }
        m += 1;
    }
    let fm = f[m as usize];
    let g_m = (0..=m).map(p).sum::<f64>();

    let mut h = vec![0.0; m as usize];
    h.push(g_m - lambda + fm);
    h.push(p(m + 1) + lambda - fm);
    let mut k = m + 2;
    loop {
        let pk = p(k);
        h.push(pk);
        let ratio = lambda / (k as f64 + 2.0);
        let tail = if ratio < 1.0 {
            p(k + 1) / (1.0 - ratio)
        } else {
            f64::INFINITY
        };
        if tail < 1e-12 {
            break;
        }
        k += 1;
    }
    let lower_bound_coeff = h
        .iter()
        .enumerate()
        .skip(m as usize)
        .map(|(k, h)| h / (k as f64 + 1.0))
        .sum();
    Ok(OfflineProfile {
        lambda,
        m,
        f,
        g_m,
        h,
        lower_bound_coeff,
    })
}

/// Leading coefficients (of `log n`) of the clique and chromatic bounds for
/// `t = γ n log n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub gamma: f64,
    pub xi: f64,
    /// `max{ξ, 2} γ`.
    pub lower: f64,
    /// `min{1 + 2√2 (e/ξ)^{1/4}, 2} ξγ`.
    pub upper: f64,
    pub ratio: f64,
    pub chi_lower: f64,
    /// `2ξγ`.
    pub chi_upper: f64,
    pub chi_ratio: f64,
}

pub fn curve_point(gamma: f64) -> Result<CurvePoint> {
    let xi = solve_xi(gamma)?;
    let lower = xi.max(2.0) * gamma;
    let rare = 1.0 + 2.0 * std::f64::consts::SQRT_2 * (std::f64::consts::E / xi).powf(0.25);
    let upper = rare.min(2.0) * xi * gamma;
    let chi_upper = 2.0 * xi * gamma;
    Ok(CurvePoint {
        gamma,
        xi,
        lower,
        upper,
        ratio: upper / lower,
        chi_lower: lower,
        chi_upper,
        chi_ratio: chi_upper / lower,
    })
}

/// `points` values spaced evenly in log scale over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo) || points == 0 {
        return Err(Error::InvalidArgument(format!(
            "need 0 < lo <= hi and points >= 1, got ({lo}, {hi}, {points})"
        )));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect())
}
