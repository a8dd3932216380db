//! Admissible lower bounds on the reciprocal clearance cost.
//!
//! Every bound starts from the clearance cone: clearance is 1-Lipschitz and
//! the path is arc-length parameterized, so a state at arc length `t` has
//! clearance at most `d₁ + |t₁ − t|` when the state at `t₁` has clearance
//! `d₁`. Replacing `δ(π(t))` in the cost integral by the lower envelope of the
//! known cones gives closed-form lower bounds:
//!
//! | bound                   | knowledge                          | value |
//! |-------------------------|------------------------------------|-------|
//! | [`bound_one_endpoint`]  | clearance of start *or* goal       | `ln((d₁ + l̂)/d₁)` |
//! | [`bound_two_endpoint`]  | clearance of start *and* goal      | `ln((d₁ + d₂ + l̂)² / (4 d₁ d₂))` |
//! | [`bound_single_sample`] | clearance at one arc length `t₁`   | `ln((d₁+t₁)/d₁) + ln((d₁+l−t₁)/d₁)` |
//! | [`bound_multi_sample`]  | clearances at `t₁ < … < t_n`       | leading + pairwise + trailing terms |
//! | [`bound_endpoint_chain`]| as above with `t₁ = 0`, `t_n = l`  | pairwise terms only |
//!
//! `l̂` is any lower bound on the arc length (the Euclidean distance between
//! the end states, for instance); the path-cost bounds need the exact `l`.
//!
//! Infinite clearances (no obstacles at all) make every term that involves
//! them zero.

use serde::{Deserialize, Serialize};

use crate::cost_oracle::{PolylinePath, ARC_SLACK};
use crate::error::{Error, Result};
use crate::geometry::State;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    OneEndpoint,
    TwoEndpoint,
    SingleSample,
    MultiSample,
    EndpointChain,
}

/// A non-negative lower bound on a path cost, tagged with its origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostBound {
    pub value: f64,
    pub kind: BoundKind,
}

/// Clearance `d` known at arc length `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClearanceSample {
    pub t: f64,
    pub d: f64,
}

impl ClearanceSample {
    pub fn new(t: f64, d: f64) -> Result<Self> {
        check_position(t, "t")?;
        check_clearance(d, "d")?;
        Ok(ClearanceSample { t, d })
    }
}

/// What is known about the arc length of a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcLengthInfo {
    exact_l: Option<f64>,
    lower_bound_lhat: f64,
}

impl ArcLengthInfo {
    pub fn new(exact_l: Option<f64>, lower_bound_lhat: f64) -> Result<Self> {
        check_length(lower_bound_lhat, "lhat")?;
        if let Some(l) = exact_l {
            check_length(l, "l")?;
            if lower_bound_lhat > l {
                return Err(Error::invalid(format!(
                    "arc-length lower bound {lower_bound_lhat} exceeds the arc length {l}"
                )));
            }
        }
        Ok(ArcLengthInfo {
            exact_l,
            lower_bound_lhat,
        })
    }

    /// Straight-line distance between the end states, a valid `l̂` for any
    /// path joining them.
    pub fn euclidean(from: &State, to: &State) -> Self {
        ArcLengthInfo {
            exact_l: None,
            lower_bound_lhat: from.distance(to),
        }
    }

    pub fn of_path(path: &PolylinePath) -> Self {
        let l = path.length();
        ArcLengthInfo {
            exact_l: Some(l),
            lower_bound_lhat: l,
        }
    }

    pub fn exact(&self) -> Option<f64> {
        self.exact_l
    }

    pub fn lhat(&self) -> f64 {
        self.lower_bound_lhat
    }
}

/// Whether sample clearances must be realizable by some path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Consistency {
    /// Evaluate the formula as written.
    #[default]
    Permissive,
    /// Reject samples with `|d_i − d_j| > |t_i − t_j|`, which no path can
    /// produce.
    Strict,
}

fn check_clearance(d: f64, name: &str) -> Result<()> {
    // +inf is allowed: the clearance of any state in an obstacle-free world.
    if d.is_nan() || d <= 0.0 {
        return Err(Error::invalid(format!(
            "clearance {name} must be positive, got {d}"
        )));
    }
    Ok(())
}

fn check_length(l: f64, name: &str) -> Result<()> {
    if !(l >= 0.0 && l.is_finite()) {
        return Err(Error::invalid(format!(
            "{name} must be finite and non-negative, got {l}"
        )));
    }
    Ok(())
}

fn check_position(t: f64, name: &str) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::invalid(format!("{name} must be finite, got {t}")));
    }
    Ok(())
}

/// Checks `0 <= t <= l` up to [`ARC_SLACK`] and clamps into range.
fn check_on_path(t: f64, l: f64, name: &str) -> Result<f64> {
    check_position(t, name)?;
    if t < -ARC_SLACK || t > l + ARC_SLACK {
        return Err(Error::invalid(format!("{name} = {t} outside [0, {l}]")));
    }
    Ok(t.clamp(0.0, l))
}

/// `ln((d + len)/d)`: one known clearance at one end of a stretch of `len`.
fn endpoint_term(d: f64, len: f64) -> f64 {
    if d.is_infinite() {
        return 0.0;
    }
    (len / d).ln_1p()
}

/// `ln((d1 + d2 + len)² / (4 d1 d2))`: known clearances at both ends.
fn segment_term(d1: f64, d2: f64, len: f64) -> f64 {
    if d1.is_infinite() || d2.is_infinite() {
        return 0.0;
    }
    let s = d1 + d2 + len;
    let num = s * s;
    let den = 4.0 * (d1 * d2);
    let ratio = num / den;
    let v = if num.is_finite() && den.is_normal() && ratio.is_finite() {
        ratio.ln()
    } else {
        2.0 * s.ln() - 4f64.ln() - (d1.ln() + d2.ln())
    };
    // (d1 + d2 + len)² >= 4 d1 d2 by AM–GM; only rounding can go below.
    v.max(0.0)
}

/// Upper bound `d1 + |t1 − t|` on the clearance at arc length `t`, given the
/// clearance `d1` at arc length `t1` of the same path.
pub fn clearance_cone(d1: f64, t1: f64, t: f64) -> Result<f64> {
    check_clearance(d1, "d1")?;
    check_position(t1, "t1")?;
    check_position(t, "t")?;
    Ok(d1 + (t1 - t).abs())
}

/// Solution-cost bound from the clearance of one end state.
pub fn bound_one_endpoint(d1: f64, lhat: f64) -> Result<CostBound> {
    check_clearance(d1, "d1")?;
    check_length(lhat, "lhat")?;
    Ok(CostBound {
        value: endpoint_term(d1, lhat),
        kind: BoundKind::OneEndpoint,
    })
}

/// Solution-cost bound from the clearances of both end states.
///
/// No check that `|d1 − d2| <= lhat`; inputs that violate it cannot come from
/// a real path, and the formula is evaluated as written.
pub fn bound_two_endpoint(d1: f64, d2: f64, lhat: f64) -> Result<CostBound> {
    check_clearance(d1, "d1")?;
    check_clearance(d2, "d2")?;
    check_length(lhat, "lhat")?;
    Ok(CostBound {
        value: segment_term(d1, d2, lhat),
        kind: BoundKind::TwoEndpoint,
    })
}

/// Path-cost bound from the clearance at a single arc length `t1` of a path
/// of known length `l`.
pub fn bound_single_sample(d1: f64, t1: f64, l: f64) -> Result<CostBound> {
    check_clearance(d1, "d1")?;
    check_length(l, "l")?;
    let t1 = check_on_path(t1, l, "t1")?;
    Ok(CostBound {
        value: endpoint_term(d1, t1) + endpoint_term(d1, l - t1),
        kind: BoundKind::SingleSample,
    })
}

fn check_samples(samples: &[ClearanceSample], l: f64, consistency: Consistency) -> Result<()> {
    check_length(l, "l")?;
    if samples.is_empty() {
        return Err(Error::invalid("at least one clearance sample is required"));
    }
    for (i, s) in samples.iter().enumerate() {
        check_clearance(s.d, &format!("samples[{i}].d"))?;
        check_on_path(s.t, l, &format!("samples[{i}].t"))?;
    }
    for (i, pair) in samples.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        if b.t <= a.t {
            return Err(Error::invalid(format!(
                "sample positions must be strictly increasing (samples[{i}].t = {}, samples[{}].t = {})",
                a.t,
                i + 1,
                b.t
            )));
        }
        if consistency == Consistency::Strict {
            // Adjacent pairs suffice: the triangle inequality extends them to
            // every pair.
            let gap = b.t - a.t;
            let consistent = match (a.d.is_infinite(), b.d.is_infinite()) {
                (true, true) => true,
                (false, false) => (a.d - b.d).abs() <= gap + 1e-12 * a.d.max(b.d).max(1.0),
                _ => false,
            };
            if !consistent {
                return Err(Error::invalid(format!(
                    "samples {i} and {} are inconsistent: clearance differs by {} over arc length {gap}",
                    i + 1,
                    (a.d - b.d).abs()
                )));
            }
        }
    }
    Ok(())
}

/// Path-cost bound from clearances at several arc lengths of a path of known
/// length `l`. Samples must be strictly increasing in `t`.
pub fn bound_multi_sample(
    samples: &[ClearanceSample],
    l: f64,
    consistency: Consistency,
) -> Result<CostBound> {
    check_samples(samples, l, consistency)?;
    let first = samples[0];
    let last = samples[samples.len() - 1];
    let t_first = first.t.clamp(0.0, l);
    let t_last = last.t.clamp(0.0, l);
    let mut value = endpoint_term(first.d, t_first);
    value += samples
        .windows(2)
        .map(|p| segment_term(p[0].d, p[1].d, p[1].t - p[0].t))
        .sum::<f64>();
    value += endpoint_term(last.d, l - t_last);
    Ok(CostBound {
        value,
        kind: BoundKind::MultiSample,
    })
}

/// Path-cost bound from a chain of samples that includes both end states
/// (`t₁ = 0` and `t_n = l`).
pub fn bound_endpoint_chain(
    samples: &[ClearanceSample],
    l: f64,
    consistency: Consistency,
) -> Result<CostBound> {
    if samples.len() < 2 {
        return Err(Error::invalid(
            "an endpoint chain needs at least two samples",
        ));
    }
    check_samples(samples, l, consistency)?;
    let first = samples[0].t;
    let last = samples[samples.len() - 1].t;
    if first.abs() > ARC_SLACK || (last - l).abs() > ARC_SLACK {
        return Err(Error::invalid(format!(
            "endpoint chain must start at 0 and end at l = {l} (got {first} and {last})"
        )));
    }
    let value = samples
        .windows(2)
        .map(|p| segment_term(p[0].d, p[1].d, p[1].t - p[0].t))
        .sum();
    Ok(CostBound {
        value,
        kind: BoundKind::EndpointChain,
    })
}

/// Arc length where the two end-state cones `d1 + t` and `d2 + l − t` meet.
/// Plotting helper; the bounds never need it.
pub fn cone_crossing(d1: f64, d2: f64, l: f64) -> f64 {
    (d2 - d1 + l) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const LN2: f64 = std::f64::consts::LN_2;

    fn cs(t: f64, d: f64) -> ClearanceSample {
        ClearanceSample::new(t, d).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    /// Midpoint-rule integral of the reciprocal of the lower envelope of all
    /// clearance cones over `[0, l]`.
    fn envelope_integral(samples: &[ClearanceSample], l: f64, n: usize) -> f64 {
        let h = l / n as f64;
        (0..n)
            .map(|i| {
                let t = (i as f64 + 0.5) * h;
                let u = samples
                    .iter()
                    .map(|s| s.d + (s.t - t).abs())
                    .fold(f64::INFINITY, f64::min);
                h / u
            })
            .sum()
    }

    #[test]
    fn cone_examples() {
        assert_eq!(clearance_cone(2.0, 0.0, 0.0).unwrap(), 2.0);
        assert_eq!(clearance_cone(1.0, 3.0, 1.0).unwrap(), 3.0);
        assert!(clearance_cone(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn one_endpoint_examples() {
        let b = bound_one_endpoint(1.0, 0.0).unwrap();
        assert_eq!(b.value, 0.0);
        assert_eq!(b.kind, BoundKind::OneEndpoint);
        assert!(close(
            bound_one_endpoint(1.0, 2.0).unwrap().value,
            3f64.ln(),
            1e-15
        ));
        assert!(bound_one_endpoint(0.0, 1.0).is_err());
        assert!(bound_one_endpoint(-1.0, 1.0).is_err());
        assert!(bound_one_endpoint(1.0, -1.0).is_err());
        assert!(bound_one_endpoint(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn two_endpoint_examples() {
        assert_eq!(bound_two_endpoint(1.0, 1.0, 0.0).unwrap().value, 0.0);
        assert!(close(
            bound_two_endpoint(1.0, 2.0, 1.0).unwrap().value,
            LN2,
            1e-15
        ));
        assert!(close(
            bound_two_endpoint(1.0, 1.0, 2.0).unwrap().value,
            2.0 * LN2,
            1e-15
        ));
        assert!(bound_two_endpoint(1.0, 0.0, 1.0).is_err());
        assert!(bound_two_endpoint(1.0, 1.0, -0.5).is_err());
    }

    #[test]
    fn single_sample_examples() {
        let at_start = bound_single_sample(1.0, 0.0, 2.0).unwrap().value;
        assert_eq!(at_start, bound_one_endpoint(1.0, 2.0).unwrap().value);
        assert!(close(
            bound_single_sample(1.0, 1.0, 2.0).unwrap().value,
            4f64.ln(),
            1e-15
        ));
        assert!(bound_single_sample(1.0, 2.5, 2.0).is_err());
        assert!(bound_single_sample(1.0, -0.1, 2.0).is_err());
    }

    #[test]
    fn multi_sample_examples() {
        let v = bound_multi_sample(&[cs(0.0, 1.0), cs(1.0, 1.0)], 1.0, Consistency::Permissive)
            .unwrap()
            .value;
        assert!(close(v, (9.0f64 / 4.0).ln(), 1e-15));
        let v = bound_multi_sample(&[cs(1.0, 1.0)], 2.0, Consistency::Permissive)
            .unwrap()
            .value;
        assert_eq!(v, bound_single_sample(1.0, 1.0, 2.0).unwrap().value);
    }

    #[test]
    fn multi_sample_rejects_bad_sequences() {
        let p = Consistency::Permissive;
        assert!(bound_multi_sample(&[], 1.0, p).is_err());
        assert!(bound_multi_sample(&[cs(0.5, 1.0), cs(0.5, 1.0)], 1.0, p).is_err());
        assert!(bound_multi_sample(&[cs(0.7, 1.0), cs(0.5, 1.0)], 1.0, p).is_err());
        assert!(bound_multi_sample(&[cs(0.5, 1.0), cs(1.5, 1.0)], 1.0, p).is_err());
    }

    #[test]
    fn strict_mode_names_the_offending_pair() {
        let samples = [cs(0.0, 1.0), cs(0.5, 1.2), cs(1.0, 3.0)];
        assert!(bound_multi_sample(&samples, 1.0, Consistency::Permissive).is_ok());
        let err = bound_multi_sample(&samples, 1.0, Consistency::Strict).unwrap_err();
        assert!(err.to_string().contains("samples 1 and 2"), "{err}");
        // exactly linear growth is consistent
        let linear = [cs(0.0, 1.0), cs(1.0, 2.0), cs(2.0, 3.0)];
        assert!(bound_multi_sample(&linear, 2.0, Consistency::Strict).is_ok());
    }

    #[test]
    fn endpoint_chain_examples() {
        let v = bound_endpoint_chain(&[cs(0.0, 1.0), cs(2.0, 1.0)], 2.0, Consistency::Permissive)
            .unwrap()
            .value;
        assert_eq!(v, bound_two_endpoint(1.0, 1.0, 2.0).unwrap().value);
        let v = bound_endpoint_chain(
            &[cs(0.0, 1.0), cs(1.0, 2.0), cs(2.0, 1.0)],
            2.0,
            Consistency::Permissive,
        )
        .unwrap()
        .value;
        assert!(close(v, 2.0 * LN2, 1e-15));
        assert!(
            bound_endpoint_chain(&[cs(0.1, 1.0), cs(2.0, 1.0)], 2.0, Consistency::Permissive)
                .is_err()
        );
        assert!(
            bound_endpoint_chain(&[cs(0.0, 1.0), cs(1.9, 1.0)], 2.0, Consistency::Permissive)
                .is_err()
        );
        assert!(bound_endpoint_chain(&[cs(0.0, 1.0)], 0.0, Consistency::Permissive).is_err());
    }

    #[test]
    fn infinite_clearance_terms_vanish() {
        let inf = f64::INFINITY;
        assert_eq!(bound_one_endpoint(inf, 3.0).unwrap().value, 0.0);
        assert_eq!(bound_two_endpoint(inf, inf, 3.0).unwrap().value, 0.0);
        assert_eq!(bound_single_sample(inf, 1.0, 3.0).unwrap().value, 0.0);
        let v = bound_endpoint_chain(&[cs(0.0, inf), cs(3.0, inf)], 3.0, Consistency::Strict)
            .unwrap()
            .value;
        assert_eq!(v, 0.0);
    }

    #[test]
    fn extreme_magnitudes_stay_finite() {
        let v = bound_two_endpoint(1e-300, 1e-300, 1e300).unwrap().value;
        assert!(v.is_finite() && v > 0.0);
        let v = bound_two_endpoint(1e200, 1e200, 1e200).unwrap().value;
        assert!(close(v, (9.0f64 / 4.0).ln(), 1e-12));
    }

    #[test]
    fn crossing_point_lies_between_ends_for_consistent_input() {
        assert_eq!(cone_crossing(1.0, 1.0, 2.0), 1.0);
        assert_eq!(cone_crossing(1.0, 2.0, 1.0), 1.0);
    }

    #[test]
    fn closed_forms_match_the_cone_envelope_integral() {
        // Each closed form is the exact integral of 1/min(cones).
        let cases: &[(&[ClearanceSample], f64)] = &[
            (&[cs(0.0, 0.7)], 1.3),
            (&[cs(1.3, 0.7)], 1.3),
            (&[cs(0.4, 0.3)], 1.5),
            (&[cs(0.0, 0.5), cs(2.0, 1.1)], 2.0),
            (&[cs(0.2, 0.4), cs(0.9, 0.6), cs(1.7, 0.3)], 2.5),
        ];
        for &(samples, l) in cases {
            let formula = bound_multi_sample(samples, l, Consistency::Strict)
                .unwrap()
                .value;
            let numeric = envelope_integral(samples, l, 200_000);
            assert!(close(formula, numeric, 1e-8), "{formula} vs {numeric}");
        }
    }

    proptest! {
        #[test]
        fn bounds_are_nonnegative(d1 in 1e-6f64..1e3, d2 in 1e-6f64..1e3, l in 0.0f64..1e3, f in 0.0f64..=1.0) {
            prop_assert!(bound_one_endpoint(d1, l).unwrap().value >= 0.0);
            prop_assert!(bound_two_endpoint(d1, d2, l).unwrap().value >= 0.0);
            prop_assert!(bound_single_sample(d1, f * l, l).unwrap().value >= 0.0);
        }

        #[test]
        fn two_endpoint_is_symmetric(d1 in 1e-6f64..1e3, d2 in 1e-6f64..1e3, l in 0.0f64..1e3) {
            prop_assert_eq!(
                bound_two_endpoint(d1, d2, l).unwrap().value,
                bound_two_endpoint(d2, d1, l).unwrap().value
            );
        }

        #[test]
        fn single_sample_is_mirror_symmetric(d1 in 1e-6f64..1e3, l in 1e-3f64..1e3, f in 0.5f64..=1.0) {
            // For t1 >= l/2 the mirror l - t1 is exact, so both evaluations see
            // the same pair of arm lengths.
            let t1 = f * l;
            let mirror = l - t1;
            prop_assert_eq!(
                bound_single_sample(d1, t1, l).unwrap().value,
                bound_single_sample(d1, mirror, l).unwrap().value
            );
        }

        #[test]
        fn both_endpoints_dominate_one(d1 in 1e-6f64..1e3, d2 in 1e-6f64..1e3, l in 0.0f64..1e3) {
            let two = bound_two_endpoint(d1, d2, l).unwrap().value;
            let one = bound_one_endpoint(d1, l).unwrap().value.max(bound_one_endpoint(d2, l).unwrap().value);
            prop_assert!(two >= one - 1e-12, "{} < {}", two, one);
        }

        #[test]
        fn solution_bounds_increase_with_lhat(d1 in 1e-3f64..1e2, d2 in 1e-3f64..1e2, l in 0.0f64..1e2, dl in 1e-6f64..1e2) {
            prop_assert!(bound_one_endpoint(d1, l + dl).unwrap().value > bound_one_endpoint(d1, l).unwrap().value);
            prop_assert!(bound_two_endpoint(d1, d2, l + dl).unwrap().value > bound_two_endpoint(d1, d2, l).unwrap().value);
        }

        #[test]
        fn reductions_hold(d1 in 1e-6f64..1e3, d2 in 1e-6f64..1e3, l in 1e-6f64..1e3, f in 0.0f64..=1.0) {
            let t1 = f * l;
            prop_assert_eq!(
                bound_multi_sample(&[cs(t1, d1)], l, Consistency::Permissive).unwrap().value,
                bound_single_sample(d1, t1, l).unwrap().value
            );
            prop_assert_eq!(bound_single_sample(d1, 0.0, l).unwrap().value, bound_one_endpoint(d1, l).unwrap().value);
            prop_assert_eq!(bound_single_sample(d1, l, l).unwrap().value, bound_one_endpoint(d1, l).unwrap().value);
            prop_assert_eq!(
                bound_endpoint_chain(&[cs(0.0, d1), cs(l, d2)], l, Consistency::Permissive).unwrap().value,
                bound_two_endpoint(d1, d2, l).unwrap().value
            );
        }
    }
}
