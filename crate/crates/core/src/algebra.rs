//! Finitely supported elements of the crossed product `C(T) ⋊_θ Z` and the
//! exponentially weighted subalgebra.
//!
//! An [`AlgebraElement`] is a finite map `n ↦ F(n)` with values in
//! [`TorusFunction`]. Multiplication is the twisted convolution
//!
//! ```text
//! (F * G)(n, z) = Σ_m F(m, z) G(n − m, z − mθ)
//! ```
//!
//! and the weighted norm is `‖F‖_A = Σ σ^{|n|} ‖F(n)‖_∞`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::AlgebraElementWire;
use crate::torus::{int_pow, mul_turns, Interval, TorusFunction, DEFAULT_GRID};

/// A convergent `p/q` of the continued fraction of θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergent {
    pub p: u64,
    pub q: u64,
}

impl Convergent {
    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// Convergents `p/q` of the continued fraction of `x`, with `q ≤ max_q`.
/// The trivial `0/1` is omitted.
pub fn continued_fraction_convergents(x: f64, max_q: u64) -> Vec<Convergent> {
    let mut out = Vec::new();
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if !(0.0..1e12).contains(&a) {
            break;
        }
        let a = a as u64;
        let (Some(p2), Some(q2)) = (
            a.checked_mul(p1).and_then(|v| v.checked_add(p0)),
            a.checked_mul(q1).and_then(|v| v.checked_add(q0)),
        ) else {
            break;
        };
        if q2 > max_q {
            break;
        }
        if p2 > 0 {
            out.push(Convergent { p: p2, q: q2 });
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - r.floor();
        if frac < 1e-15 || (x - p2 as f64 / q2 as f64).abs() < 1e-16 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

/// The rotation angle θ ∈ (0, 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationParameter {
    theta: f64,
    irrational: bool,
    convergents: Vec<Convergent>,
}

impl RotationParameter {
    /// Declares `theta` irrational without a convergent list.
    pub fn new(theta: f64) -> Result<Self> {
        Self::with_convergents(theta, true, Vec::new())
    }

    /// `theta` with an explicit convergent list, each checked against
    /// `|θ − p/q| < 1/q²`.
    pub fn with_convergents(theta: f64, irrational: bool, convergents: Vec<Convergent>) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::OutOfRange {
                what: "theta",
                value: theta,
                range: "(0, 1)".into(),
            });
        }
        for c in &convergents {
            let q = c.q as f64;
            if c.q == 0 || (theta - c.value()).abs() >= 1.0 / (q * q) {
                return Err(Error::InvalidInput(format!(
                    "{}/{} is not a convergent of theta = {theta}",
                    c.p, c.q
                )));
            }
        }
        Ok(Self {
            theta,
            irrational,
            convergents,
        })
    }

    /// `theta` with convergents derived from its continued fraction.
    pub fn with_derived_convergents(theta: f64, max_q: u64) -> Result<Self> {
        let convergents = continued_fraction_convergents(theta, max_q)
            .into_iter()
            .filter(|c| {
                let q = c.q as f64;
                (theta - c.value()).abs() < 1.0 / (q * q)
            })
            .collect();
        Self::with_convergents(theta, true, convergents)
    }

    /// θ = (√5 − 1)/2 with convergents `1/1, 1/2, 2/3, 3/5, ...`.
    pub fn golden() -> Self {
        Self::with_derived_convergents((5f64.sqrt() - 1.0) / 2.0, 1_000_000).expect("golden mean is in (0, 1)")
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn is_declared_irrational(&self) -> bool {
        self.irrational
    }

    pub fn convergents(&self) -> &[Convergent] {
        &self.convergents
    }

    /// Convergent denominators, or those of the continued fraction of θ when
    /// none were supplied.
    pub fn denominators(&self, max_q: u64) -> Vec<u64> {
        let list = if self.convergents.is_empty() {
            continued_fraction_convergents(self.theta, max_q)
        } else {
            self.convergents.clone()
        };
        let mut qs: Vec<u64> = list.into_iter().map(|c| c.q).filter(|&q| q <= max_q).collect();
        qs.sort_unstable();
        qs.dedup();
        qs
    }
}

impl Default for RotationParameter {
    fn default() -> Self {
        Self::golden()
    }
}

/// Exponential weight `ω(n) = σ^{|n|}` with `σ ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weight {
    sigma: f64,
}

impl Weight {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 1.0) {
            return Err(Error::OutOfRange {
                what: "sigma",
                value: sigma,
                range: "[1, inf)".into(),
            });
        }
        Ok(Self { sigma })
    }

    /// σ = e.
    pub fn exponential() -> Self {
        Self {
            sigma: std::f64::consts::E,
        }
    }

    /// σ = 1, the plain ℓ¹ weight.
    pub fn flat() -> Self {
        Self { sigma: 1.0 }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `σ^{|n|}`.
    pub fn at(&self, n: i64) -> f64 {
        int_pow(self.sigma, n.unsigned_abs() as i32)
    }

    /// `σ^n` with the sign of `n` kept.
    pub fn signed(&self, n: i64) -> f64 {
        int_pow(self.sigma, n as i32)
    }
}

impl Default for Weight {
    fn default() -> Self {
        Self::exponential()
    }
}

/// The pair (θ, weight) shared by every element of one algebra.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AlgebraParams {
    pub theta: RotationParameter,
    pub weight: Weight,
}

impl AlgebraParams {
    pub fn new(theta: RotationParameter, weight: Weight) -> Self {
        Self { theta, weight }
    }

    fn compatible(&self, other: &Self) -> bool {
        self.theta.theta == other.theta.theta && self.weight.sigma == other.weight.sigma
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::MismatchedParameters {
                lhs_theta: self.theta.theta,
                rhs_theta: other.theta.theta,
                lhs_sigma: self.weight.sigma,
                rhs_sigma: other.weight.sigma,
            })
        }
    }

    /// The shift `nθ mod 1` used by the action `α_n`.
    pub fn shift(&self, n: i64) -> f64 {
        mul_turns(n, self.theta.theta)
    }
}

/// A finitely supported function `Z → C(T)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AlgebraElementWire", into = "AlgebraElementWire")]
pub struct AlgebraElement {
    params: AlgebraParams,
    terms: BTreeMap<i64, TorusFunction>,
}

impl AlgebraElement {
    pub fn zero(params: &AlgebraParams) -> Self {
        Self {
            params: params.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Builds an element from `(n, F(n))` pairs; repeated indices are summed
    /// and zero terms dropped.
    pub fn from_terms(params: &AlgebraParams, terms: impl IntoIterator<Item = (i64, TorusFunction)>) -> Self {
        let mut map: BTreeMap<i64, TorusFunction> = BTreeMap::new();
        for (n, f) in terms {
            match map.get_mut(&n) {
                Some(existing) => *existing = &*existing + &f,
                None => {
                    map.insert(n, f);
                }
            }
        }
        map.retain(|_, f| !f.is_zero());
        Self {
            params: params.clone(),
            terms: map,
        }
    }

    /// `u_n = δ_n ⊗ 1`; `u_0` is the identity.
    pub fn unit_element(params: &AlgebraParams, n: i64) -> Self {
        Self::from_terms(params, [(n, TorusFunction::one())])
    }

    pub fn identity(params: &AlgebraParams) -> Self {
        Self::unit_element(params, 0)
    }

    /// `c · u_0`.
    pub fn scalar(params: &AlgebraParams, c: impl Into<Complex64>) -> Self {
        Self::from_terms(params, [(0, TorusFunction::constant(c))])
    }

    /// `φ` viewed as the element supported at 0.
    pub fn embed(params: &AlgebraParams, phi: TorusFunction) -> Self {
        Self::from_terms(params, [(0, phi)])
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn theta(&self) -> &RotationParameter {
        &self.params.theta
    }

    pub fn weight(&self) -> Weight {
        self.params.weight
    }

    /// `F(n)`, or `None` when `n` is outside the support.
    pub fn term(&self, n: i64) -> Option<&TorusFunction> {
        self.terms.get(&n)
    }

    /// Nonzero terms in increasing `n`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &TorusFunction)> + '_ {
        self.terms.iter().map(|(&n, f)| (n, f))
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// `max |n|` over the support.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|n| n.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Largest coefficient degree over all terms.
    pub fn degree(&self) -> usize {
        self.terms.values().map(TorusFunction::degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `F(n, z)`.
    pub fn evaluate(&self, n: i64, z: f64) -> Complex64 {
        self.terms.get(&n).map(|f| f.evaluate(z)).unwrap_or_default()
    }

    /// Twisted convolution `(F * G)(n, z) = Σ_m F(m, z) G(n − m, z − mθ)`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.params.check(&other.params)?;
        let mut acc: BTreeMap<i64, BTreeMap<i64, Complex64>> = BTreeMap::new();
        for (&m, f) in &self.terms {
            let shift = self.params.shift(m);
            for (&j, g) in &other.terms {
                let g = g.translate(shift);
                let slot = acc.entry(m + j).or_default();
                for (a, ca) in f.coeffs() {
                    for (b, cb) in g.coeffs() {
                        *slot.entry(a + b).or_default() += ca * cb;
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .map(|(n, map)| (n, TorusFunction::from_map(map)))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        Ok(Self {
            params: self.params.clone(),
            terms,
        })
    }

    /// `F^k` by repeated multiplication; `F^0 = u_0`.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(&self.params);
        for _ in 0..k {
            out = out.multiply(self).expect("same parameters");
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.params.check(&other.params)?;
        Ok(Self::from_terms(
            &self.params,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(&n, f)| (n, f.clone())),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        Self::from_terms(&self.params, self.terms.iter().map(|(&n, f)| (n, f.scale(c))))
    }

    /// Involution `F*(n, z) = conj(F(−n, z − nθ))`.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(
            &self.params,
            self.terms
                .iter()
                .map(|(&m, f)| (-m, f.translate(-self.params.shift(m)).conj())),
        )
    }

    fn weighted_norm(&self, grid: usize, weight: impl Fn(i64) -> f64) -> Interval {
        let (mut lower, mut upper) = (0.0, 0.0);
        for (&n, f) in &self.terms {
            let s = f.sup_norm_with_grid(grid);
            let w = weight(n);
            lower += w * s.lower;
            upper += w * s.upper;
        }
        Interval { lower, upper }
    }

    /// `‖F‖_A = Σ σ^{|n|} ‖F(n)‖_∞` as an enclosure.
    pub fn norm_a(&self) -> Interval {
        self.norm_a_with_grid(DEFAULT_GRID)
    }

    pub fn norm_a_with_grid(&self, grid: usize) -> Interval {
        let w = self.params.weight;
        self.weighted_norm(grid, |n| w.at(n))
    }

    /// `‖F‖_{ℓ¹} = Σ ‖F(n)‖_∞` as an enclosure.
    pub fn norm_l1(&self) -> Interval {
        self.weighted_norm(DEFAULT_GRID, |_| 1.0)
    }

    /// `P(F) = F(0)`.
    pub fn project_p(&self) -> TorusFunction {
        self.terms.get(&0).cloned().unwrap_or_default()
    }

    /// Keeps the terms with `|n| ≤ cutoff`; the second value is an upper bound
    /// for the A-norm of what was dropped.
    pub fn truncate_support(&self, cutoff: usize) -> (Self, f64) {
        let w = self.params.weight;
        let mut kept = BTreeMap::new();
        let mut tail = 0.0;
        for (&n, f) in &self.terms {
            if n.unsigned_abs() as usize <= cutoff {
                kept.insert(n, f.clone());
            } else {
                tail += w.at(n) * f.sup_norm().upper;
            }
        }
        (
            Self {
                params: self.params.clone(),
                terms: kept,
            },
            tail,
        )
    }

    /// Largest coefficientwise distance to `other` over all terms.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let zero = TorusFunction::zero();
        let mut ns: Vec<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        ns.sort_unstable();
        ns.dedup();
        ns.into_iter()
            .map(|n| {
                let a = self.terms.get(&n).unwrap_or(&zero);
                let b = other.terms.get(&n).unwrap_or(&zero);
                a.max_coeff_diff(b)
            })
            .fold(0.0, f64::max)
    }

    pub(crate) fn into_parts(self) -> (AlgebraParams, BTreeMap<i64, TorusFunction>) {
        (self.params, self.terms)
    }
}
