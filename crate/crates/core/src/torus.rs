//! Trigonometric polynomials on the circle `T = R/Z`.
//!
//! A [`TorusFunction`] stores finitely many Fourier coefficients `c_k` and
//! represents `z ↦ Σ c_k e^{2πikz}`. These are the computable stand-ins for
//! the coefficient algebra `C(T)`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::TorusFunctionWire;

/// Coefficients smaller than this fraction of the largest one are dropped.
pub const DROP_TOLERANCE: f64 = 1e-14;

/// Default number of grid points used for sup-norm bounds.
pub const DEFAULT_GRID: usize = 256;

/// Smallest admissible grid value of `|φ|` for [`TorusFunction::reciprocal`].
pub const POSITIVITY_FLOOR: f64 = 1e-10;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Reduces a real number to a circle point in `[0, 1)`.
pub fn reduce_circle(x: f64) -> f64 {
    let mut r = x - x.round_ties_even();
    if r < 0.0 {
        r += 1.0;
    }
    if r >= 1.0 {
        r = 0.0;
    }
    r
}

/// `xⁿ` by binary exponentiation. Unlike `powi` the rounding does not depend
/// on the optimization level.
pub fn int_pow(x: f64, n: i32) -> f64 {
    let mut base = x;
    let mut e = n.unsigned_abs();
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    if n < 0 {
        1.0 / acc
    } else {
        acc
    }
}

/// `n·x mod 1`, using an exact two-product so the result is accurate to
/// about one ulp of the fractional part even for large `n`.
pub fn mul_turns(n: i64, x: f64) -> f64 {
    let a = n as f64;
    let hi = a * x;
    let lo = a.mul_add(x, -hi);
    reduce_circle((hi - hi.round_ties_even()) + lo)
}

#[inline]
fn cis_turns(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * reduce_circle(turns))
}

/// Grid size used for a function of degree `degree` when at least `requested`
/// points are asked for.
pub fn grid_size(requested: usize, degree: usize) -> usize {
    requested.max(16 * (degree + 1)).next_power_of_two()
}

/// A closed interval `[lower, upper]` enclosing a norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Self { lower: x, upper: x }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Trigonometric polynomial with finitely many nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "TorusFunctionWire", into = "TorusFunctionWire")]
pub struct TorusFunction {
    coeffs: BTreeMap<i64, Complex64>,
}

impl TorusFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        Self::from_coeffs([(0, c.into())])
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    /// The character `z ↦ e^{2πikz}`.
    pub fn character(k: i64) -> Self {
        Self::from_coeffs([(k, Complex64::new(1.0, 0.0))])
    }

    /// `z ↦ cos(2πkz)`.
    pub fn cosine(k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        Self::from_coeffs([(k, Complex64::new(0.5, 0.0)), (-k, Complex64::new(0.5, 0.0))])
    }

    /// `z ↦ sin(2πkz)`.
    pub fn sine(k: i64) -> Self {
        Self::from_coeffs([(k, Complex64::new(0.0, -0.5)), (-k, Complex64::new(0.0, 0.5))])
    }

    /// Builds a function from `(k, c_k)` pairs; repeated frequencies are summed.
    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in pairs {
            *coeffs.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut f = Self { coeffs };
        f.prune();
        f
    }

    /// Builds a function without applying the drop tolerance. Exact zeros are
    /// still removed.
    pub(crate) fn from_map_raw(mut coeffs: BTreeMap<i64, Complex64>) -> Self {
        coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    /// Builds a function from a coefficient map and applies the drop tolerance.
    pub(crate) fn from_map(coeffs: BTreeMap<i64, Complex64>) -> Self {
        let mut f = Self::from_map_raw(coeffs);
        f.prune();
        f
    }

    fn prune(&mut self) {
        let max = self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 || !max.is_finite() {
            self.coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
            return;
        }
        let cut = DROP_TOLERANCE * max;
        self.coeffs.retain(|_, c| c.norm() >= cut);
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    /// Nonzero coefficients in increasing frequency order.
    pub fn coeffs(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn num_coeffs(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `max |k|` over the support, 0 for the zero function.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// `Σ |c_k|`, an upper bound for the sup norm.
    pub fn coeff_l1(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    /// Largest coefficientwise distance to `other`.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<i64> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    pub fn evaluate(&self, z: f64) -> Complex64 {
        let z = reduce_circle(z);
        self.coeffs.iter().map(|(&k, &c)| c * cis_turns(k as f64 * z)).sum()
    }

    /// `z ↦ φ(z − t)`.
    pub fn translate(&self, t: f64) -> Self {
        let t = reduce_circle(t);
        if t == 0.0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, &c)| (k, c * cis_turns(-(k as f64) * t)))
            .collect();
        Self::from_map_raw(coeffs)
    }

    /// Complex conjugate function: `c_k ↦ conj(c_{-k})`.
    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&k, c)| (-k, c.conj())).collect(),
        }
    }

    /// Pointwise product, computed as a coefficient convolution.
    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (&j, &a) in &self.coeffs {
            for (&k, &b) in &other.coeffs {
                *out.entry(j + k).or_default() += a * b;
            }
        }
        let mut f = Self::from_map_raw(out);
        f.prune();
        f
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        if c == Complex64::new(0.0, 0.0) {
            return Self::zero();
        }
        Self::from_map_raw(self.coeffs.iter().map(|(&k, &v)| (k, v * c)).collect())
    }

    /// True when `c_{-k} = conj(c_k)` within `tol` for every `k`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.max_coeff_diff(&self.conj()) <= tol
    }

    /// The real part `(φ + conj φ)/2`.
    pub fn real_part(&self) -> Self {
        (self + &self.conj()).scale(0.5)
    }

    /// Values at `z_j = j / g`, `j = 0..g`.
    pub fn sample(&self, g: usize) -> Vec<Complex64> {
        assert!(g > 0, "grid must be nonempty");
        if self.degree() == 0 {
            return vec![self.coeff(0); g];
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); g];
        for (&k, &c) in &self.coeffs {
            buf[k.rem_euclid(g as i64) as usize] += c;
        }
        PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(g).process(&mut buf));
        buf
    }

    /// Sup-norm enclosure using the default grid.
    pub fn sup_norm(&self) -> Interval {
        self.sup_norm_with_grid(DEFAULT_GRID)
    }

    /// Sup-norm enclosure on a grid of at least `grid` points.
    ///
    /// With `g = |φ|²` (a real polynomial of degree `2K`), Bernstein's
    /// inequality gives `|g''| ≤ 16π²K²M²` where `M = ‖φ‖_∞`, and the maximiser
    /// lies within `1/(2G)` of a grid point, so `M² (1 − 2π²K²/G²)` is at most
    /// the grid maximum of `g`. The upper end is the smaller of that bound and
    /// `Σ |c_k|`. The lower end is the grid maximum polished by Newton steps
    /// on `g`.
    pub fn sup_norm_with_grid(&self, grid: usize) -> Interval {
        if self.is_zero() {
            return Interval::point(0.0);
        }
        let degree = self.degree();
        if degree == 0 {
            return Interval::point(self.coeff(0).norm());
        }
        let g = grid_size(grid, degree);
        let abs2: Vec<f64> = self.sample(g).iter().map(|v| v.norm_sqr()).collect();
        let gmax2 = abs2.iter().copied().fold(0.0, f64::max);
        let k = degree as f64;
        let kappa = 2.0 * PI * PI * k * k / (g as f64 * g as f64);
        let upper = self.coeff_l1().min((gmax2 / (1.0 - kappa)).sqrt());

        let threshold = gmax2 * (1.0 - kappa);
        let mut candidates: Vec<usize> = (0..g)
            .filter(|&j| {
                let v = abs2[j];
                v >= threshold && v >= abs2[(j + g - 1) % g] && v >= abs2[(j + 1) % g]
            })
            .collect();
        candidates.sort_by(|&a, &b| abs2[b].total_cmp(&abs2[a]).then(a.cmp(&b)));
        candidates.truncate(8);
        let best2 = candidates
            .into_iter()
            .map(|j| self.polish_max(j as f64 / g as f64, 1.0 / g as f64))
            .fold(gmax2, f64::max);
        Interval {
            lower: best2.sqrt().min(upper),
            upper,
        }
    }

    /// `(|φ|², (|φ|²)', (|φ|²)'')` at `z`.
    fn abs2_derivatives(&self, z: f64) -> (f64, f64, f64) {
        let (mut v, mut d1, mut d2) = (Complex64::default(), Complex64::default(), Complex64::default());
        for (&k, &c) in &self.coeffs {
            let w = TAU * k as f64;
            let e = c * cis_turns(k as f64 * z);
            v += e;
            d1 += e * Complex64::new(0.0, w);
            d2 -= e * (w * w);
        }
        let g1 = 2.0 * (v.conj() * d1).re;
        let g2 = 2.0 * (d1.norm_sqr() + (v.conj() * d2).re);
        (v.norm_sqr(), g1, g2)
    }

    /// Local maximum of `|φ|²` near `z0`, searching at most `h` per step.
    fn polish_max(&self, z0: f64, h: f64) -> f64 {
        let mut z = z0;
        let (mut best, mut d1, mut d2) = self.abs2_derivatives(z);
        for _ in 0..40 {
            let mut step = if d2 < 0.0 { -d1 / d2 } else { d1.signum() * h / 4.0 };
            step = step.clamp(-h, h);
            if step.abs() < 1e-15 {
                break;
            }
            let mut accepted = false;
            for _ in 0..8 {
                let (v, e1, e2) = self.abs2_derivatives(z + step);
                if v > best {
                    z += step;
                    (best, d1, d2) = (v, e1, e2);
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        best
    }

    /// Minimum of `|φ|` over the grid of at least `grid` points.
    pub fn grid_min_abs(&self, grid: usize) -> f64 {
        let g = grid_size(grid, self.degree());
        self.sample(g).iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min)
    }

    /// Certified lower bound for `min_z Re φ(z)`, assuming φ is real valued.
    pub fn certified_min_real(&self, grid: usize) -> f64 {
        if self.degree() == 0 {
            return self.coeff(0).re;
        }
        let g = grid_size(grid, self.degree());
        let gmin = self.sample(g).iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
        // Every point is within 1/(2g) of a grid point.
        let slope = 2.0 * PI * self.degree() as f64 * self.sup_norm_with_grid(g).upper;
        gmin - slope / (2.0 * g as f64)
    }

    /// Approximate reciprocal with the default positivity floor.
    pub fn reciprocal(&self, tol: f64, maxdeg: usize) -> Result<Self> {
        self.reciprocal_with_floor(tol, maxdeg, POSITIVITY_FLOOR)
    }

    /// Trigonometric polynomial `ρ` of degree at most `maxdeg` with
    /// `‖ρφ − 1‖_∞ < tol`.
    ///
    /// `1/φ` is sampled on a uniform grid and inverted by a discrete Fourier
    /// transform; the residual is then bounded on a 4× finer grid. The degree
    /// is doubled until the residual check passes or `maxdeg` is reached.
    pub fn reciprocal_with_floor(&self, tol: f64, maxdeg: usize, floor: f64) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotBoundedAway { min: 0.0, floor });
        }
        let k = self.degree();
        if k == 0 {
            let c = self.coeff(0);
            if c.norm() < floor {
                return Err(Error::NotBoundedAway { min: c.norm(), floor });
            }
            return Ok(Self::constant(c.inv()));
        }
        let min = self.grid_min_abs(2 * maxdeg + 1);
        if min < floor {
            return Err(Error::NotBoundedAway { min, floor });
        }

        let mut deg = maxdeg.min(16.max(2 * k));
        loop {
            let g = grid_size(4 * (deg + 1), k);
            let mut buf = self.sample(g);
            for v in buf.iter_mut() {
                if v.norm() < floor {
                    return Err(Error::NotBoundedAway { min: v.norm(), floor });
                }
                *v = v.inv();
            }
            PLANNER.with(|p| p.borrow_mut().plan_fft_forward(g).process(&mut buf));
            let scale = 1.0 / g as f64;
            let d = deg as i64;
            let rho = Self::from_coeffs((-d..=d).map(|j| (j, buf[j.rem_euclid(g as i64) as usize] * scale)));
            let residual = (&rho.multiply(self) - &Self::one()).sup_norm_with_grid(4 * g).upper;
            if residual < tol {
                return Ok(rho);
            }
            if deg >= maxdeg {
                return Err(Error::ToleranceNotMet {
                    residual,
                    tol,
                    degree: deg,
                });
            }
            deg = (2 * deg).min(maxdeg);
        }
    }
}

impl Add for &TorusFunction {
    type Output = TorusFunction;

    fn add(self, rhs: &TorusFunction) -> TorusFunction {
        let mut out = self.coeffs.clone();
        for (&k, &c) in &rhs.coeffs {
            *out.entry(k).or_default() += c;
        }
        let mut f = TorusFunction::from_map_raw(out);
        f.prune();
        f
    }
}

impl Sub for &TorusFunction {
    type Output = TorusFunction;

    fn sub(self, rhs: &TorusFunction) -> TorusFunction {
        self + &(-rhs)
    }
}

impl Neg for &TorusFunction {
    type Output = TorusFunction;

    fn neg(self) -> TorusFunction {
        TorusFunction {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &TorusFunction {
    type Output = TorusFunction;

    fn mul(self, rhs: &TorusFunction) -> TorusFunction {
        self.multiply(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_fn(rng: &mut ChaCha8Rng, degree: i64) -> TorusFunction {
        TorusFunction::from_coeffs((-degree..=degree).map(|k| {
            (
                k,
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            )
        }))
    }

    #[test]
    fn reduce_circle_lands_in_unit_interval() {
        for x in [-3.5, -1.0, -0.25, 0.0, 0.5, 0.999, 1.0, 7.25, -1e-18] {
            let r = reduce_circle(x);
            assert!((0.0..1.0).contains(&r), "{x} -> {r}");
        }
        assert_eq!(reduce_circle(-0.25), 0.75);
        assert_eq!(reduce_circle(2.5), 0.5);
    }

    #[test]
    fn evaluate_examples() {
        assert_abs_diff_eq!(TorusFunction::one().evaluate(0.37).re, 1.0);
        let v = TorusFunction::character(1).evaluate(0.25);
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 1.0, epsilon = 1e-15);
        let c = TorusFunction::cosine(1).evaluate(1.0 / 3.0);
        assert_abs_diff_eq!(c.re, (TAU / 3.0).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(c.re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn translate_examples() {
        assert_eq!(TorusFunction::one().translate(0.3), TorusFunction::one());
        let theta = (5f64.sqrt() - 1.0) / 2.0;
        let t = TorusFunction::character(1).translate(theta);
        let expected = Complex64::from_polar(1.0, -TAU * theta);
        assert!((t.coeff(1) - expected).norm() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let f = random_fn(&mut rng, 8);
            let s = rng.random_range(-3.0..3.0);
            let u = rng.random_range(-3.0..3.0);
            let lhs = f.translate(s + u);
            let rhs = f.translate(s).translate(u);
            assert!(lhs.max_coeff_diff(&rhs) < 1e-12);
            let z = rng.random_range(0.0..1.0);
            assert!((lhs.evaluate(z) - f.evaluate(z - s - u)).norm() < 1e-12);
        }
    }

    #[test]
    fn multiply_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let psi = random_fn(&mut rng, 5);
        assert_eq!(TorusFunction::one().multiply(&psi), psi);
        let p = TorusFunction::character(1).multiply(&TorusFunction::character(-1));
        assert_eq!(p, TorusFunction::one());

        for _ in 0..20 {
            let f = random_fn(&mut rng, 8);
            let g = random_fn(&mut rng, 8);
            let fg = f.multiply(&g);
            assert_eq!(fg.degree(), 16);
            for j in 0..64 {
                let z = j as f64 / 64.0;
                let d = fg.evaluate(z) - f.evaluate(z) * g.evaluate(z);
                assert!(d.norm() < 1e-10);
            }
        }
    }

    #[test]
    fn multiply_is_commutative_and_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (a, b, c) = (random_fn(&mut rng, 8), random_fn(&mut rng, 8), random_fn(&mut rng, 8));
            assert!(a.multiply(&b).max_coeff_diff(&b.multiply(&a)) < 1e-10);
            let l = a.multiply(&b).multiply(&c);
            let r = a.multiply(&b.multiply(&c));
            assert!(l.max_coeff_diff(&r) < 1e-10);
        }
    }

    #[test]
    fn conj_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let f = random_fn(&mut rng, 6);
            assert_eq!(f.conj().conj(), f);
            let z = rng.random_range(0.0..1.0);
            assert!((f.conj().evaluate(z) - f.evaluate(z).conj()).norm() < 1e-12);
        }
        assert!(TorusFunction::cosine(3).is_real(0.0));
        assert!(!TorusFunction::character(1).is_real(1e-3));
    }

    #[test]
    fn sup_norm_examples() {
        let c = TorusFunction::constant(Complex64::new(3.0, -4.0));
        assert_eq!(c.sup_norm(), Interval::point(5.0));

        let cos = TorusFunction::cosine(1).sup_norm_with_grid(256);
        assert!(cos.lower >= 1.0 - 1e-9 && cos.upper <= 1.0 + 1e-6);

        let ch = TorusFunction::character(1).sup_norm();
        assert!(ch.lower >= 1.0 - 1e-9 && ch.upper <= 1.0 + 1e-6);
    }

    #[test]
    fn sup_norm_is_sound_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let d = rng.random_range(0..=16);
            let f = random_fn(&mut rng, d);
            let iv = f.sup_norm();
            assert!(iv.lower <= iv.upper);
            for _ in 0..10 {
                let z = rng.random_range(0.0..1.0);
                assert!(f.evaluate(z).norm() <= iv.upper + 1e-9);
            }
        }
        // fewer functions, denser probing
        for _ in 0..10 {
            let f = random_fn(&mut rng, 16);
            let iv = f.sup_norm();
            for _ in 0..10_000 {
                let z = rng.random_range(0.0..1.0);
                assert!(f.evaluate(z).norm() <= iv.upper + 1e-9);
            }
        }
    }

    #[test]
    fn reciprocal_examples() {
        let r = TorusFunction::constant(2.0).reciprocal(1e-12, 8).unwrap();
        assert_eq!(r, TorusFunction::constant(0.5));

        let phi = &TorusFunction::constant(2.0) + &TorusFunction::cosine(1);
        let rho = phi.reciprocal(1e-8, 64).unwrap();
        assert!(rho.degree() <= 64);
        let res = (&rho.multiply(&phi) - &TorusFunction::one()).sup_norm_with_grid(1024);
        assert!(res.upper < 1e-8);
        // independent pointwise check
        for j in 0..97 {
            let z = j as f64 / 97.0;
            assert!((rho.evaluate(z) * phi.evaluate(z) - 1.0).norm() < 1e-8);
        }

        match TorusFunction::cosine(1).reciprocal(1e-8, 64) {
            Err(Error::NotBoundedAway { .. }) => {}
            other => panic!("expected NotBoundedAway, got {other:?}"),
        }
    }

    #[test]
    fn reciprocal_reports_tolerance_failure() {
        // nearly vanishing: coefficients of 1/φ decay too slowly for degree 8
        let phi = &TorusFunction::constant(1.001) + &TorusFunction::cosine(1);
        match phi.reciprocal(1e-12, 8) {
            Err(Error::ToleranceNotMet { degree, .. }) => assert_eq!(degree, 8),
            other => panic!("expected ToleranceNotMet, got {other:?}"),
        }
    }

    #[test]
    fn drop_tolerance_prunes_noise() {
        let f = TorusFunction::from_coeffs([(0, Complex64::new(1.0, 0.0)), (3, Complex64::new(1e-16, 0.0))]);
        assert_eq!(f.num_coeffs(), 1);
        let z = &f - &f;
        assert!(z.is_zero());
    }
}
