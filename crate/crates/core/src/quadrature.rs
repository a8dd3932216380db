//! Adaptive Simpson quadrature with a Richardson error estimate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Levels that are always subdivided before the error test is trusted.
const MIN_DEPTH: u32 = 5;

/// Integrand evaluations allowed per integral before giving up.
const MAX_EVALUATIONS: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_depth: 50,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::invalid("rel_tol must be positive and finite"));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::invalid("abs_tol must be positive and finite"));
        }
        if self.max_depth < 1 {
            return Err(Error::invalid("max_depth must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Sum of the per-interval Richardson error estimates.
    pub error_estimate: f64,
    pub evaluations: usize,
}

struct Simpson<F> {
    f: F,
    rel_tol: f64,
    max_depth: u32,
    evaluations: usize,
    error: f64,
    unconverged: bool,
    diverged: bool,
}

impl<F: FnMut(f64) -> f64> Simpson<F> {
    fn eval(&mut self, x: f64) -> f64 {
        self.evaluations += 1;
        let y = (self.f)(x);
        if !y.is_finite() {
            self.diverged = true;
        }
        y
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        fa: f64,
        m: f64,
        fm: f64,
        b: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm);
        let frm = self.eval(rm);
        if self.diverged {
            return f64::INFINITY;
        }
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;

        // The local relative test keeps rounding noise in steep regions from
        // forcing subdivision down to the depth limit; for a non-negative
        // integrand it still bounds the total relative error by `rel_tol`.
        let tol = eps.max(self.rel_tol * (left + right).abs());
        let converged = depth >= MIN_DEPTH.min(self.max_depth) && delta.abs() <= 15.0 * tol;
        // Interval no longer splittable in floating point.
        let exhausted = lm <= a || lm >= m || rm <= m || rm >= b;
        let out_of_budget = self.evaluations >= MAX_EVALUATIONS;
        if converged || exhausted || out_of_budget || depth >= self.max_depth {
            if !converged && !exhausted {
                self.unconverged = true;
            }
            self.error += delta.abs() / 15.0;
            return left + right + delta / 15.0;
        }
        let l = self.refine(a, fa, lm, flm, m, fm, left, 0.5 * eps, depth + 1);
        if self.diverged {
            return f64::INFINITY;
        }
        let r = self.refine(m, fm, rm, frm, b, fb, right, 0.5 * eps, depth + 1);
        l + r
    }
}

/// Integrates `f` over `[a, b]`.
///
/// A non-finite integrand value anywhere the rule probes makes the result
/// `+inf`. Hitting `cfg.max_depth` on any subinterval before the local
/// tolerance is met, or running out of the evaluation budget, yields
/// [`Error::Convergence`] with the best estimate.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Integral>
where
    F: FnMut(f64) -> f64,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::invalid(format!(
            "bad integration interval [{a}, {b}]"
        )));
    }
    let mut s = Simpson {
        f,
        rel_tol: cfg.rel_tol,
        max_depth: cfg.max_depth,
        evaluations: 0,
        error: 0.0,
        unconverged: false,
        diverged: false,
    };
    if b == a {
        return Ok(Integral {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }

    let m = 0.5 * (a + b);
    let fa = s.eval(a);
    let fm = s.eval(m);
    let fb = s.eval(b);
    if s.diverged {
        return Ok(Integral {
            value: f64::INFINITY,
            error_estimate: 0.0,
            evaluations: s.evaluations,
        });
    }
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let eps = cfg.abs_tol.max(cfg.rel_tol * whole.abs());
    let value = s.refine(a, fa, m, fm, b, fb, whole, eps, 1);

    if s.diverged {
        return Ok(Integral {
            value: f64::INFINITY,
            error_estimate: 0.0,
            evaluations: s.evaluations,
        });
    }
    if s.unconverged {
        return Err(Error::Convergence {
            estimate: value,
            error_bound: s.error,
        });
    }
    Ok(Integral {
        value,
        error_estimate: s.error,
        evaluations: s.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let cfg = QuadratureConfig::default();
        let r = adaptive_simpson(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, &cfg).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn reciprocal_matches_logarithm() {
        let cfg = QuadratureConfig::default();
        let r = adaptive_simpson(|t| 1.0 / (1.0 + t), 0.0, 2.0, &cfg).unwrap();
        assert!((r.value - 3f64.ln()).abs() < 1e-11);
    }

    #[test]
    fn handles_a_kink() {
        let cfg = QuadratureConfig::default();
        let r = adaptive_simpson(|t: f64| (t - 0.3).abs(), 0.0, 1.0, &cfg).unwrap();
        let exact = 0.5 * 0.3 * 0.3 + 0.5 * 0.7 * 0.7;
        assert!((r.value - exact).abs() < 1e-10);
    }

    #[test]
    fn infinite_integrand_short_circuits() {
        let cfg = QuadratureConfig::default();
        let r = adaptive_simpson(|t: f64| 1.0 / (t - 0.5).abs(), 0.0, 1.0, &cfg).unwrap();
        assert_eq!(r.value, f64::INFINITY);
    }

    #[test]
    fn zero_width_interval() {
        let r = adaptive_simpson(|_| 1.0, 1.0, 1.0, &QuadratureConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn depth_limit_reports_estimate() {
        let cfg = QuadratureConfig {
            rel_tol: 1e-15,
            abs_tol: 1e-15,
            max_depth: 4,
        };
        match adaptive_simpson(|t: f64| (40.0 * t).sin().abs(), 0.0, 1.0, &cfg) {
            Err(Error::Convergence {
                estimate,
                error_bound,
            }) => {
                assert!(estimate.is_finite());
                assert!(error_bound > 0.0);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = QuadratureConfig {
            rel_tol: 0.0,
            ..Default::default()
        };
        assert!(adaptive_simpson(|t| t, 0.0, 1.0, &cfg).is_err());
        let cfg = QuadratureConfig {
            max_depth: 0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
