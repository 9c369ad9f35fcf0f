//! Fluid limit of the greedy minimum-degree strategy.
//!
//! During phase `q` the minimum degree is `q` and the degree fractions
//! `y_q, …, y_r` (with `r = ⌊2λ⌋`) follow
//!
//! ```text
//! y_i' = -[i = q] + [i = q + 1] - y_i + [i > q] y_{i-1}
//! ```
//!
//! Phase `q` ends at the root `x_q` of `y_q`; its final values seed the next
//! phase. Circles never land above degree `r`, so degrees past `r` move by
//! squares alone; they are carried along with the same equations up to a
//! cutoff `K` so the profile at `x = λ` is a full distribution.

use crate::bounds::poisson_pmf;
use crate::error::{Error, Result};

/// Bisection tolerance for phase boundaries.
pub const ROOT_TOL: f64 = 1e-10;

/// Tail terms of the profile below this are dropped.
pub const TAIL_CUTOFF: f64 = 1e-12;

pub const DEFAULT_STEP: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSample {
    pub x: f64,
    pub phase: usize,
    /// `y[i]` for `i` in `0..=top`; entries below the phase are zero.
    pub y: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSolution {
    pub lambda: f64,
    pub step: f64,
    pub r: usize,
    /// Highest degree carried by the integration.
    pub top: usize,
    /// `boundaries[q]` is the end of phase `q`.
    pub boundaries: Vec<f64>,
    /// Phase active at `x = λ`.
    pub phase_at_lambda: usize,
    /// `y_i(λ)` for `i` in `0..=top`.
    pub y_at_lambda: Vec<f64>,
    /// Thinned trajectory, about one sample per 0.01 in `x`, plus every
    /// phase boundary.
    pub samples: Vec<PhaseSample>,
    pub lower_bound_coeff: f64,
    /// Same sum with `w(k)` replaced by the Poisson mass `λᵏe^{-λ}/k!` for
    /// `k > r`. That tail is not the fluid limit (its total mass is below 1)
    /// and is kept only for comparison.
    pub poisson_tail_coeff: f64,
    pub warnings: Vec<String>,
}

impl PhaseSolution {
    /// Rewound degree profile at `x = λ`.
    pub fn w(&self, k: usize) -> f64 {
        if k < self.phase_at_lambda {
            0.0
        } else {
            self.y_at_lambda.get(k).copied().unwrap_or(0.0)
        }
    }

    /// `(k, w(k))` from the active phase up to the last entry above the
    /// cutoff.
    pub fn profile(&self) -> Vec<(usize, f64)> {
        let last = (self.phase_at_lambda..=self.top)
            .rev()
            .find(|&k| self.w(k) >= TAIL_CUTOFF)
            .unwrap_or(self.phase_at_lambda);
        (self.phase_at_lambda..=last)
            .map(|k| (k, self.w(k)))
            .collect()
    }

    /// Mass of `w` over the tracked range `q..=r`.
    pub fn tracked_mass(&self) -> f64 {
        (self.phase_at_lambda..=self.r).map(|k| self.w(k)).sum()
    }
}

/// Right-hand side of the phase-`q` system over `y[q..]`.
pub fn derivative(q: usize, y: &[f64], out: &mut [f64]) {
    for i in q..y.len() {
        let mut d = -y[i];
        if i == q {
            d -= 1.0;
        } else {
            d += y[i - 1];
        }
        if i == q + 1 {
            d += 1.0;
        }
        out[i] = d;
    }
}

struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4 {
    fn new(len: usize) -> Self {
        Rk4 {
            k1: vec![0.0; len],
            k2: vec![0.0; len],
            k3: vec![0.0; len],
            k4: vec![0.0; len],
            tmp: vec![0.0; len],
        }
    }

    fn step(&mut self, q: usize, y: &[f64], h: f64, out: &mut [f64]) {
        let r = y.len() - 1;
        derivative(q, y, &mut self.k1);
        for i in q..=r {
            self.tmp[i] = y[i] + 0.5 * h * self.k1[i];
        }
        derivative(q, &self.tmp, &mut self.k2);
        for i in q..=r {
            self.tmp[i] = y[i] + 0.5 * h * self.k2[i];
        }
        derivative(q, &self.tmp, &mut self.k3);
        for i in q..=r {
            self.tmp[i] = y[i] + h * self.k3[i];
        }
        derivative(q, &self.tmp, &mut self.k4);
        for i in 0..q {
            out[i] = 0.0;
        }
        for i in q..=r {
            out[i] =
                y[i] + h / 6.0 * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
    }
}

/// Integrates every phase up to the end of phase `r`, recording the state at
/// `x = λ` on the way.
pub fn integrate_phases(lambda: f64, step: f64) -> Result<PhaseSolution> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {step}"
        )));
    }
    let r = (2.0 * lambda).floor() as usize;
    // every phase ends by x = r + 1; past r a vertex gains degree only from
    // squares, at rate one, so Poisson(r + 1) bounds the mass above r + m
    let mut m = 1;
    while (m as f64) < r as f64 + 1.0 || poisson_pmf(r as f64 + 1.0, m as u64) > 1e-16 {
        m += 1;
    }
    let top = r + m;
    let len = top + 1;
    let mut y = vec![0.0; len];
    y[0] = 1.0;
    let mut next = vec![0.0; len];
    let mut rk = Rk4::new(len);
    let mut x = 0.0f64;
    let mut q = 0usize;
    let mut boundaries = Vec::with_capacity(r + 1);
    let mut at_lambda: Option<(usize, Vec<f64>)> = None;
    let stride = ((0.01 / step).round() as u64).max(1);
    let mut samples = vec![PhaseSample {
        x,
        phase: q,
        y: y.clone(),
    }];
    let mut steps = 0u64;

    while q <= r {
        rk.step(q, &y, step, &mut next);
        let event = if next[q] <= 0.0 {
            // y_q decreases through the phase; bisect on the step length
            let (mut lo, mut hi) = (0.0, step);
            let mut probe = vec![0.0; len];
            while hi - lo > ROOT_TOL {
                let mid = 0.5 * (lo + hi);
                rk.step(q, &y, mid, &mut probe);
                if probe[q] > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(hi)
        } else {
            None
        };
        let h = event.unwrap_or(step);
        if at_lambda.is_none() && x + h >= lambda {
            let mut part = vec![0.0; len];
            rk.step(q, &y, lambda - x, &mut part);
            at_lambda = Some((q, part));
        }
        if let Some(h) = event {
            rk.step(q, &y, h, &mut next);
            next[q] = 0.0;
            x += h;
            std::mem::swap(&mut y, &mut next);
            boundaries.push(x);
            samples.push(PhaseSample {
                x,
                phase: q,
                y: y.clone(),
            });
            q += 1;
            steps = 0;
        } else {
            x += step;
            std::mem::swap(&mut y, &mut next);
            steps += 1;
            if steps.is_multiple_of(stride) {
                samples.push(PhaseSample {
                    x,
                    phase: q,
                    y: y.clone(),
                });
            }
        }
    }

    let mut warnings = Vec::new();
    let (phase_at_lambda, y_at_lambda) = match at_lambda {
        Some(v) => v,
        None => {
            warnings.push(format!(
                "lambda = {lambda} falls after the last phase ends at x = {x}; using final values"
            ));
            (r, y.clone())
        }
    };
    let mut sol = PhaseSolution {
        lambda,
        step,
        r,
        top,
        boundaries,
        phase_at_lambda,
        y_at_lambda,
        samples,
        lower_bound_coeff: 0.0,
        poisson_tail_coeff: 0.0,
        warnings,
    };
    sol.lower_bound_coeff = sol
        .profile()
        .iter()
        .map(|&(k, w)| w / (k as f64 + 1.0))
        .sum();
    let tracked: f64 = (sol.phase_at_lambda..=r)
        .map(|k| sol.w(k) / (k as f64 + 1.0))
        .sum();
    let mut tail = 0.0;
    let mut k = r + 1;
    loop {
        let p = poisson_pmf(lambda, k as u64);
        if (k as f64) > lambda && p < TAIL_CUTOFF {
            break;
        }
        tail += p / (k as f64 + 1.0);
        k += 1;
    }
    sol.poisson_tail_coeff = tracked + tail;
    Ok(sol)
}

/// `Σ_{k ≥ q} w(k) / (k + 1)` at the default step.
pub fn online_alpha_lower(lambda: f64) -> Result<f64> {
    Ok(integrate_phases(lambda, DEFAULT_STEP)?.lower_bound_coeff)
}
