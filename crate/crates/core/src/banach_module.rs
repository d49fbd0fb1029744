//! The Banach module `E = C(T)` with the weighted shift action
//!
//! ```text
//! (Fφ)(z) = Σ_n F(n, z) σⁿ φ(z − nθ)
//! ```
//!
//! Note the one-sided `σⁿ`: `u_n` acts on the constant 1 by `σⁿ`, so negative
//! powers contract and positive powers expand, and no isometric action of `Z`
//! is compatible with it.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraParams};
use crate::error::{Error, Result};
use crate::torus::{grid_size, Interval, TorusFunction};

/// Translates `u_n` with `|n|` up to this bound are considered for covering.
pub const MAX_TRANSLATE: i64 = 10;

/// Smallest superlevel fraction tried by [`find_covering_translates`].
pub const MIN_LEVEL: f64 = 1e-6;

const MAX_CERTIFY_GRID: usize = 1 << 20;

/// A vector of `E` with its cached sup-norm enclosure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleVector {
    func: TorusFunction,
    sup: Interval,
}

impl ModuleVector {
    pub fn new(func: TorusFunction) -> Self {
        let sup = func.sup_norm();
        Self { func, sup }
    }

    pub fn one() -> Self {
        Self::new(TorusFunction::one())
    }

    pub fn func(&self) -> &TorusFunction {
        &self.func
    }

    pub fn into_func(self) -> TorusFunction {
        self.func
    }

    pub fn sup_norm(&self) -> Interval {
        self.sup
    }
}

impl From<TorusFunction> for ModuleVector {
    fn from(f: TorusFunction) -> Self {
        Self::new(f)
    }
}

/// `Fφ`.
pub fn act(f: &AlgebraElement, phi: &ModuleVector) -> ModuleVector {
    let params = f.params();
    let w = params.weight;
    let mut out = TorusFunction::zero();
    for (n, term) in f.terms() {
        let shifted = phi.func.translate(params.shift(n));
        out = &out + &term.multiply(&shifted).scale(w.signed(n));
    }
    ModuleVector::new(out)
}

/// `Σ_n σⁿ upper‖F(n)‖_∞`, a bound for the operator norm of `φ ↦ Fφ`.
pub fn action_bound(f: &AlgebraElement) -> f64 {
    let w = f.weight();
    f.terms().map(|(n, t)| w.signed(n) * t.sup_norm().upper).sum()
}

/// Translates `n_i` with `χ = Σ σ^{n_i} ψ(· − n_iθ)` certified positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Covering {
    pub translates: Vec<i64>,
    pub chi: TorusFunction,
    /// Rigorous lower bound of `min χ`.
    pub certified_min: f64,
    /// Grid on which the certificate was obtained.
    pub grid: usize,
    /// Superlevel fraction `τ` of the covering sets.
    pub level: f64,
}

fn candidate_order(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k]))
}

/// Greedy cover of the circle by translates of the superlevel set
/// `{ψ > τ max ψ}` of a nonnegative `ψ`.
///
/// Each step adds the translate covering the most uncovered grid points
/// (ties: smallest `|n|`, then positive `n`). The level starts at `τ = 1/2`
/// and is halved whenever `kmax` translates do not cover. The sum `χ` is then
/// certified positive with a Bernstein slack, refining the grid as needed.
pub fn find_covering_translates(psi: &ModuleVector, params: &AlgebraParams, kmax: usize) -> Result<Covering> {
    let psi = &psi.func;
    if psi.is_zero() {
        return Err(Error::ZeroVector);
    }
    let scale = psi.coeff_l1();
    if !psi.is_real(1e-12 * scale.max(1.0)) {
        return Err(Error::InvalidInput("psi must be real valued".into()));
    }
    let g = grid_size(1024, psi.degree());
    let values: Vec<f64> = psi.sample(g).iter().map(|v| v.re).collect();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -1e-12 * scale.max(1.0) {
        return Err(Error::InvalidInput(format!(
            "psi must be nonnegative (grid minimum {min:e})"
        )));
    }
    let peak = values.iter().copied().fold(0.0, f64::max);
    if peak <= 0.0 {
        return Err(Error::ZeroVector);
    }

    let shifted: Vec<(i64, Vec<f64>)> = candidate_order(MAX_TRANSLATE)
        .map(|n| {
            (
                n,
                psi.translate(params.shift(n)).sample(g).iter().map(|v| v.re).collect(),
            )
        })
        .collect();

    let mut level = 0.5;
    let mut last_k = 0;
    while level >= MIN_LEVEL {
        let threshold = level * peak;
        match greedy_cover(&shifted, threshold, kmax) {
            Some(translates) => {
                if let Some(cover) = certify(psi, params, translates, g, level) {
                    return Ok(cover);
                }
            }
            None => last_k = kmax,
        }
        level /= 2.0;
    }
    Err(Error::NotCovered { k: last_k })
}

fn greedy_cover(shifted: &[(i64, Vec<f64>)], threshold: f64, kmax: usize) -> Option<Vec<i64>> {
    let masks: Vec<(i64, Vec<bool>)> = shifted
        .iter()
        .map(|(n, v)| (*n, v.iter().map(|x| *x > threshold).collect()))
        .collect();
    let mut covered = vec![false; shifted[0].1.len()];
    let mut translates = Vec::new();
    while covered.iter().any(|c| !c) {
        if translates.len() >= kmax {
            return None;
        }
        let mut best: Option<(usize, usize)> = None;
        for (i, (n, mask)) in masks.iter().enumerate() {
            if translates.contains(n) {
                continue;
            }
            let gain = mask.iter().zip(&covered).filter(|(m, c)| **m && !**c).count();
            if gain > best.map_or(0, |b| b.1) {
                best = Some((i, gain));
            }
        }
        let (i, _) = best?;
        for (c, m) in covered.iter_mut().zip(&masks[i].1) {
            *c |= *m;
        }
        translates.push(masks[i].0);
    }
    Some(translates)
}

fn certify(
    psi: &TorusFunction,
    params: &AlgebraParams,
    translates: Vec<i64>,
    g: usize,
    level: f64,
) -> Option<Covering> {
    let w = params.weight;
    let chi = translates
        .iter()
        .fold(TorusFunction::zero(), |acc, &n| {
            &acc + &psi.translate(params.shift(n)).scale(w.signed(n))
        })
        .real_part();
    let mut grid = grid_size(g, chi.degree());
    while grid <= MAX_CERTIFY_GRID {
        let certified_min = chi.certified_min_real(grid);
        if certified_min > 0.0 {
            return Some(Covering {
                translates,
                chi,
                certified_min,
                grid,
                level,
            });
        }
        grid *= 4;
    }
    None
}

/// Element `F` with `Fφ ≈ 1`, together with the data used to build it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicSolution {
    pub element: AlgebraElement,
    pub translates: Vec<i64>,
    pub chi_min: f64,
    pub reciprocal_degree: usize,
    /// Upper bound of `‖Fφ − 1‖_∞`.
    pub residual: f64,
}

/// Translate budget of [`cyclic_solver`].
pub const MAX_COVER: usize = 8;

/// Largest reciprocal degree tried by [`cyclic_solver`].
pub const MAX_RECIPROCAL_DEGREE: usize = 8192;

/// Builds `F = (1/χ) · (Σ_i u_{n_i}) · conj(φ)` so that `Fφ = 1` up to `tol`.
///
/// `conj(φ)φ = |φ|² = ψ`, the translates make `χ = Σ u_{n_i}ψ` positive, and
/// multiplying by an approximate reciprocal of `χ` lands on 1. The residual
/// is verified a posteriori.
pub fn cyclic_solver(params: &AlgebraParams, phi: &ModuleVector, tol: f64) -> Result<CyclicSolution> {
    if phi.func.is_zero() || phi.sup.lower <= 0.0 {
        return Err(Error::ZeroVector);
    }
    let conj = AlgebraElement::embed(params, phi.func.conj());
    let psi = ModuleVector::new(act(&conj, phi).into_func().real_part());
    let cover = find_covering_translates(&psi, params, MAX_COVER)?;
    let rho = cover.chi.reciprocal(tol / 4.0, MAX_RECIPROCAL_DEGREE)?;
    let shifts = AlgebraElement::from_terms(
        params,
        cover
            .translates
            .iter()
            .map(|&n| (n, TorusFunction::one()))
            .collect::<Vec<_>>(),
    );
    let element = AlgebraElement::embed(params, rho.clone())
        .multiply(&shifts)?
        .multiply(&conj)?;
    let image = act(&element, phi);
    let residual = (image.func() - &TorusFunction::one())
        .sup_norm_with_grid(4 * grid_size(0, rho.degree()))
        .upper;
    if residual >= tol {
        return Err(Error::ToleranceNotMet {
            residual,
            tol,
            degree: rho.degree(),
        });
    }
    Ok(CyclicSolution {
        element,
        translates: cover.translates,
        chi_min: cover.certified_min,
        reciprocal_degree: rho.degree(),
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: i64,
    /// `‖u_n 1‖_∞`.
    pub norm: f64,
    /// `‖u_n 1‖ / ‖u_{n−1} 1‖`, and `‖u_0 1‖` for `n = 0`.
    pub ratio: f64,
    pub isometric: bool,
}

/// Growth of `u_n` acting on the constant function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonUnitarizabilityReport {
    pub sigma: f64,
    pub rows: Vec<ScalingRow>,
    /// Per-step violation of isometry.
    pub step_ratio: f64,
}

pub fn nonunitarizability_report(params: &AlgebraParams, nmax: usize) -> Result<NonUnitarizabilityReport> {
    if nmax == 0 {
        return Err(Error::InvalidInput("nmax must be at least 1".into()));
    }
    let one = ModuleVector::one();
    let mut rows: Vec<ScalingRow> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax as i64 {
        let image = act(&AlgebraElement::unit_element(params, n), &one);
        let norm = image.sup_norm().upper;
        let ratio = match rows.last() {
            Some(prev) => norm / prev.norm,
            None => norm,
        };
        rows.push(ScalingRow {
            n,
            norm,
            ratio,
            isometric: (norm - 1.0).abs() < 1e-12,
        });
    }
    Ok(NonUnitarizabilityReport {
        sigma: params.weight.sigma(),
        step_ratio: rows.last().map_or(1.0, |r| r.ratio),
        rows,
    })
}
