//! Averaging over conjugations by unimodular characters.
//!
//! Conjugating `F` by the character `χ_f(z) = e^{2πifz}` multiplies the term
//! `F(n)` by `e^{−2πifnθ}` and leaves `F(0)` alone. Averaging over
//! `f_j = j·q`, `j = 1..M`, multiplies `F(n)` by the geometric mean
//!
//! ```text
//! g_n = (1/M) Σ_j e^{−2πi j q n θ},   |g_n| = |sin(πMqnθ) / (M sin(πqnθ))|,
//! ```
//!
//! which is small for `0 < |n| ≤ N` once `M` is chosen well, so the average
//! approximates `P(F) = F(0)` in the weighted norm.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, RotationParameter};
use crate::error::{Error, Result};
use crate::torus::{mul_turns, TorusFunction};

/// Largest number of characters a plan may use.
pub const MAX_AVERAGING_TERMS: usize = 1_000_000;

/// Convergent denominators larger than this are not tried.
const MAX_DENOMINATOR: u64 = 10_000;

/// Character frequencies and the error they guarantee on `0 < |n| ≤ N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragingPlan {
    /// Support cutoff `N`.
    pub cutoff: usize,
    /// Target for `predicted_error`.
    pub epsilon: f64,
    /// Step `q` between consecutive frequencies.
    pub step: u64,
    /// `f_j = j·q` for `j = 1..=M`.
    pub frequencies: Vec<i64>,
    /// `max_{0<|n|≤N} |g_n|`, by direct summation.
    pub predicted_error: f64,
}

impl AveragingPlan {
    /// Number of characters `M`.
    pub fn terms(&self) -> usize {
        self.frequencies.len()
    }
}

/// `|sin(πMx)/(M sin(πx))|` with `x = qnθ mod 1`.
pub fn geometric_factor(theta: f64, step: u64, count: usize, n: i64) -> f64 {
    let x = mul_turns(step as i64 * n, theta);
    let den = (std::f64::consts::PI * x).sin();
    if den.abs() < 1e-300 {
        return 1.0;
    }
    let num = (std::f64::consts::PI * mul_turns(count as i64, x)).sin();
    (num / (count as f64 * den)).abs()
}

/// `(1/M) Σ_j e^{−2πi f_j n θ}` by direct summation.
pub fn character_mean(theta: f64, frequencies: &[i64], n: i64) -> Complex64 {
    if n == 0 || frequencies.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    let sum: Complex64 = frequencies
        .iter()
        .map(|&f| Complex64::from_polar(1.0, -std::f64::consts::TAU * mul_turns(f * n, theta)))
        .sum();
    sum / frequencies.len() as f64
}

/// `max_{1≤|n|≤N} |g_n|` by direct summation.
pub fn direct_error(theta: f64, frequencies: &[i64], cutoff: usize) -> f64 {
    let n = cutoff as i64;
    (-n..=n)
        .filter(|&k| k != 0)
        .map(|k| character_mean(theta, frequencies, k).norm())
        .fold(0.0, f64::max)
}

/// Finds a plan whose predicted error is at most `epsilon` on `0 < |n| ≤ cutoff`.
///
/// Tries `q = 1` and the convergent denominators of θ, and for each the
/// smallest `M` that meets the target; the plan with fewest characters wins.
pub fn plan_average(cutoff: usize, epsilon: f64, theta: &RotationParameter) -> Result<AveragingPlan> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::NoPlanFound {
            reason: format!("epsilon must be positive (got {epsilon}); exact averaging is not attempted"),
        });
    }
    if cutoff == 0 {
        return Ok(AveragingPlan {
            cutoff,
            epsilon,
            step: 1,
            frequencies: vec![1],
            predicted_error: 0.0,
        });
    }
    let t = theta.theta();
    let mut steps = vec![1u64];
    steps.extend(theta.denominators(MAX_DENOMINATOR));
    steps.sort_unstable();
    steps.dedup();

    let mut best: Option<AveragingPlan> = None;
    for q in steps {
        let limit = best.as_ref().map_or(MAX_AVERAGING_TERMS, |b| b.terms() - 1);
        let n = cutoff as i64;
        let mut m = 1usize;
        while m <= limit {
            let bound = (1..=n).map(|k| geometric_factor(t, q, m, k)).fold(0.0, f64::max);
            if bound <= epsilon {
                let frequencies: Vec<i64> = (1..=m as i64).map(|j| j * q as i64).collect();
                let predicted_error = direct_error(t, &frequencies, cutoff);
                if predicted_error <= epsilon {
                    best = Some(AveragingPlan {
                        cutoff,
                        epsilon,
                        step: q,
                        frequencies,
                        predicted_error,
                    });
                    break;
                }
            }
            m += 1;
        }
    }
    best.ok_or_else(|| Error::NoPlanFound {
        reason: format!("no M ≤ {MAX_AVERAGING_TERMS} reaches {epsilon:e} for N = {cutoff}"),
    })
}

/// Chooses `N` so that the tail of `f` is below `epsilon`, then a plan whose
/// predicted error times the A-norm of the terms `0 < |n| ≤ N` is at most
/// `epsilon`. The resulting error bound is below `2ε`.
pub fn plan_for_element(f: &AlgebraElement, epsilon: f64) -> Result<AveragingPlan> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::NoPlanFound {
            reason: format!("epsilon must be positive (got {epsilon})"),
        });
    }
    let cutoff = (0..=f.width())
        .find(|&n| f.truncate_support(n).1 < epsilon)
        .unwrap_or(f.width());
    let middle = middle_norm(f, cutoff);
    let target = if middle > 0.0 { epsilon / middle } else { epsilon };
    plan_average(cutoff, target, f.theta())
}

/// Upper bound of `‖F restricted to 0 < |n| ≤ cutoff‖_A`.
fn middle_norm(f: &AlgebraElement, cutoff: usize) -> f64 {
    let w = f.weight();
    f.terms()
        .filter(|(n, _)| *n != 0 && n.unsigned_abs() as usize <= cutoff)
        .map(|(n, t)| w.at(n) * t.sup_norm().upper)
        .sum()
}

/// `u* F u` for a unimodular `u`, through the generic product.
pub fn conjugate_by_unimodular(f: &AlgebraElement, u: &TorusFunction) -> Result<AlgebraElement> {
    let values = u.sample(crate::torus::grid_size(crate::torus::DEFAULT_GRID, u.degree()));
    let (min, max) = values
        .iter()
        .map(|v| v.norm())
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if (min - 1.0).abs() > 1e-9 || (max - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnimodular { min, max });
    }
    let params = f.params();
    let left = AlgebraElement::embed(params, u.conj());
    let right = AlgebraElement::embed(params, u.clone());
    left.multiply(f)?.multiply(&right)
}

/// `χ_k* F χ_k` in closed form: `F(n) ↦ F(n) e^{−2πiknθ}`.
pub fn conjugate_by_character(f: &AlgebraElement, k: i64) -> AlgebraElement {
    let theta = f.theta().theta();
    AlgebraElement::from_terms(
        f.params(),
        f.terms()
            .map(|(n, t)| {
                let phase = Complex64::from_polar(1.0, -std::f64::consts::TAU * mul_turns(k * n, theta));
                (n, t.scale(phase))
            })
            .collect::<Vec<_>>(),
    )
}

/// The averaged element and a bound on its distance to `P(F)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragingOutcome {
    pub average: AlgebraElement,
    /// `tail + predicted_error · middle_norm`.
    pub error_bound: f64,
    /// Upper bound of the A-norm of the terms `|n| > N`.
    pub tail: f64,
    /// Upper bound of the A-norm of the terms `0 < |n| ≤ N`.
    pub middle_norm: f64,
}

/// `(1/M) Σ_j χ_{f_j}* F χ_{f_j}` with its a priori error bound.
pub fn average_toward_p(f: &AlgebraElement, plan: &AveragingPlan) -> AveragingOutcome {
    let theta = f.theta().theta();
    let average = AlgebraElement::from_terms(
        f.params(),
        f.terms()
            .map(|(n, t)| {
                if n == 0 {
                    (n, t.clone())
                } else {
                    (n, t.scale(character_mean(theta, &plan.frequencies, n)))
                }
            })
            .collect::<Vec<_>>(),
    );
    let tail = f.truncate_support(plan.cutoff).1;
    let middle_norm = middle_norm(f, plan.cutoff);
    AveragingOutcome {
        average,
        error_bound: tail + plan.predicted_error * middle_norm,
        tail,
        middle_norm,
    }
}

/// Upper bound of `‖embed(P(F)) − avg‖_A`.
pub fn measured_deviation(f: &AlgebraElement, average: &AlgebraElement) -> Result<f64> {
    let p = AlgebraElement::embed(f.params(), f.project_p());
    Ok(p.checked_sub(average)?.norm_a().upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraParams;
    use crate::sample::Sampler;
    use std::f64::consts::{E, TAU};

    fn params() -> AlgebraParams {
        AlgebraParams::default()
    }

    /// Independent oracle: `|(1/M) Σ_j e^{−2πi j q n θ}|` with plain floats.
    fn naive_mean(theta: f64, q: u64, m: usize, n: i64) -> f64 {
        let (mut re, mut im) = (0.0, 0.0);
        for j in 1..=m {
            let a = -TAU * ((j as f64 * q as f64 * n as f64 * theta) % 1.0);
            re += a.cos();
            im += a.sin();
        }
        (re * re + im * im).sqrt() / m as f64
    }

    #[test]
    fn conjugation_examples() {
        let p = params();
        let mut s = Sampler::new(41, p.clone());
        let f = s.element(3, 3);
        let same = conjugate_by_unimodular(&f, &TorusFunction::one()).unwrap();
        assert!(same.max_coeff_diff(&f) < 1e-15);

        let u1 = AlgebraElement::unit_element(&p, 1);
        let c = conjugate_by_unimodular(&u1, &TorusFunction::character(1)).unwrap();
        let expected = u1.scale(Complex64::from_polar(1.0, -TAU * p.theta.theta()));
        assert!(c.max_coeff_diff(&expected) < 1e-12);

        let phi = AlgebraElement::embed(&p, s.torus_function(4));
        for k in [-3, 1, 7] {
            let u = TorusFunction::character(k).scale(Complex64::from_polar(1.0, 0.4));
            let c = conjugate_by_unimodular(&phi, &u).unwrap();
            assert!(c.max_coeff_diff(&phi) < 1e-12);
        }

        assert!(matches!(
            conjugate_by_unimodular(&f, &TorusFunction::cosine(1)),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn closed_form_matches_generic_conjugation() {
        let p = params();
        let mut s = Sampler::new(42, p.clone());
        for _ in 0..10 {
            let f = s.element(3, 3);
            for k in [-5i64, -1, 2, 13] {
                let generic = conjugate_by_unimodular(&f, &TorusFunction::character(k)).unwrap();
                let closed = conjugate_by_character(&f, k);
                assert!(generic.max_coeff_diff(&closed) < 1e-12);
            }
        }
    }

    #[test]
    fn plan_examples() {
        let theta = RotationParameter::golden();
        let plan = plan_average(0, 0.1, &theta).unwrap();
        assert_eq!(plan.terms(), 1);
        assert_eq!(plan.predicted_error, 0.0);

        let plan = plan_average(3, 1e-3, &theta).unwrap();
        assert!(plan.predicted_error <= 1e-3);
        for n in 1..=3 {
            let oracle = naive_mean(theta.theta(), plan.step, plan.terms(), n);
            assert!(oracle <= 1e-3 + 1e-12, "n = {n}: {oracle}");
            assert!((oracle - naive_mean(theta.theta(), plan.step, plan.terms(), -n)).abs() < 1e-12);
        }
        for (j, f) in plan.frequencies.iter().enumerate() {
            assert_eq!(*f, (j as i64 + 1) * plan.step as i64);
        }

        assert!(matches!(plan_average(3, 0.0, &theta), Err(Error::NoPlanFound { .. })));
    }

    #[test]
    fn closed_form_factor_matches_direct_sum() {
        let t = RotationParameter::golden().theta();
        for q in [1u64, 2, 5] {
            for m in [1usize, 7, 55, 200] {
                for n in 1..=6 {
                    let a = geometric_factor(t, q, m, n);
                    let b = naive_mean(t, q, m, n);
                    assert!((a - b).abs() < 1e-10, "q={q} m={m} n={n}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn error_is_monotone_along_doubling() {
        let t = RotationParameter::golden().theta();
        for q in [1u64, 3, 8] {
            for m in [3usize, 10, 17, 40] {
                let freqs = |m: usize| (1..=m as i64).map(|j| j * q as i64).collect::<Vec<_>>();
                let e1 = direct_error(t, &freqs(m), 4);
                let e2 = direct_error(t, &freqs(2 * m), 4);
                let e4 = direct_error(t, &freqs(4 * m), 4);
                assert!(e2 <= e1 + 1e-12 && e4 <= e2 + 1e-12);
            }
        }
    }

    #[test]
    fn average_examples() {
        let p = params();
        let theta = &p.theta;
        let plan = plan_average(2, 1e-3, theta).unwrap();
        let id = AlgebraElement::identity(&p);
        let out = average_toward_p(&id, &plan);
        assert_eq!(out.average, id);
        assert_eq!(out.error_bound, 0.0);

        let u1 = AlgebraElement::unit_element(&p, 1);
        let out = average_toward_p(&u1, &plan);
        assert!(u1.project_p().is_zero());
        assert!(out.average.norm_a().upper <= E * plan.predicted_error * (1.0 + 1e-12));
    }

    #[test]
    fn average_matches_generic_average_for_small_plans() {
        let p = params();
        let mut s = Sampler::new(43, p.clone());
        let f = s.element(2, 2);
        let plan = plan_average(2, 0.2, &p.theta).unwrap();
        let mut acc = AlgebraElement::zero(&p);
        for &k in &plan.frequencies {
            let c = conjugate_by_unimodular(&f, &TorusFunction::character(k)).unwrap();
            acc = acc.checked_add(&c).unwrap();
        }
        let generic = acc.scale(1.0 / plan.terms() as f64);
        let out = average_toward_p(&f, &plan);
        assert!(generic.max_coeff_diff(&out.average) < 1e-12);
    }

    #[test]
    fn deviation_is_within_bound() {
        let p = params();
        let mut s = Sampler::new(44, p.clone());
        let plan = plan_average(3, 1e-2, &p.theta).unwrap();
        for _ in 0..100 {
            let f = s.element(3, 3);
            let out = average_toward_p(&f, &plan);
            let dev = measured_deviation(&f, &out.average).unwrap();
            assert!(dev <= out.error_bound * (1.0 + 1e-9) + 1e-12);
            // the zero term is untouched
            assert_eq!(out.average.project_p(), f.project_p());
            assert!(out.average.norm_a().upper <= f.norm_a().upper + 1e-9);
        }
    }

    #[test]
    fn truncation_contributes_tail() {
        let p = params();
        let mut s = Sampler::new(45, p.clone());
        let f = s.balanced_element(5, 2);
        let plan = plan_average(2, 1e-3, &p.theta).unwrap();
        let out = average_toward_p(&f, &plan);
        assert!(out.tail > 0.0);
        let dev = measured_deviation(&f, &out.average).unwrap();
        assert!(dev <= out.error_bound * (1.0 + 1e-9));
    }

    #[test]
    fn element_plans_reproduce_two_epsilon() {
        let p = params();
        let mut s = Sampler::new(46, p.clone());
        for eps in [1e-2, 1e-3] {
            for _ in 0..10 {
                let f = s.element(3, 3);
                let plan = plan_for_element(&f, eps).unwrap();
                let out = average_toward_p(&f, &plan);
                assert!(out.tail < eps);
                assert!(out.error_bound < 2.0 * eps);
                let dev = measured_deviation(&f, &out.average).unwrap();
                assert!(dev < 2.0 * eps, "{dev}");
            }
        }
    }
}
