//! Finite sections of the regular representation and spectral comparisons
//! between the weighted algebra and the C*-algebra.
//!
//! An element `F` acts on `ℓ²(Z)` through `(π(F)ξ)(m) = Σ_n F(n, z₀ + mθ) ξ(m − n)`.
//! Compressing to `|m| ≤ L` gives a [`TruncatedOperator`]; its singular values
//! bound the C*-norm from below, while `‖F‖_{ℓ¹}` bounds it from above.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::torus::{int_pow, reduce_circle, Interval, TorusFunction};

/// Base points used when none are given: 0 followed by five fixed
/// pseudo-random points.
pub const DEFAULT_BASE_POINTS: [f64; 6] = [
    0.0,
    0.137_284_592_018_734_6,
    0.291_845_760_312_447_3,
    0.503_117_284_906_615_2,
    0.716_402_938_551_027_9,
    0.884_290_173_645_118_4,
];

/// Compression of `π_{z₀}(F)` to indices `|m| ≤ L`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    half_size: usize,
    z0: f64,
    matrix: DMatrix<Complex64>,
}

impl TruncatedOperator {
    pub fn half_size(&self) -> usize {
        self.half_size
    }

    pub fn base_point(&self) -> f64 {
        self.z0
    }

    pub fn dim(&self) -> usize {
        2 * self.half_size + 1
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    /// Matrix position of index `m ∈ [−L, L]`.
    pub fn position(&self, m: i64) -> usize {
        (m + self.half_size as i64) as usize
    }

    /// Entry `(m, l)` in signed indices.
    pub fn entry(&self, m: i64, l: i64) -> Complex64 {
        self.matrix[(self.position(m), self.position(l))]
    }

    pub fn singular_values(&self) -> Vec<f64> {
        self.matrix.clone().singular_values().iter().copied().collect()
    }

    pub fn largest_singular_value(&self) -> f64 {
        self.singular_values().into_iter().fold(0.0, f64::max)
    }

    pub fn smallest_singular_value(&self) -> f64 {
        self.singular_values().into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// Builds the `(2L+1)×(2L+1)` compression with `M[m, m−n] = F(n, z₀ + mθ)`.
pub fn represent(f: &AlgebraElement, half_size: usize, z0: f64) -> Result<TruncatedOperator> {
    if half_size < f.width() {
        return Err(Error::TooSmallL {
            l: half_size,
            width: f.width(),
        });
    }
    let dim = 2 * half_size + 1;
    let l = half_size as i64;
    let params = f.params();
    let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
    for m in -l..=l {
        let z = reduce_circle(z0 + params.shift(m));
        for (n, term) in f.terms() {
            let col = m - n;
            if col.abs() <= l {
                matrix[((m + l) as usize, (col + l) as usize)] = term.evaluate(z);
            }
        }
    }
    Ok(TruncatedOperator { half_size, z0, matrix })
}

/// Largest singular value of one finite section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionNorm {
    pub half_size: usize,
    pub z0: f64,
    pub largest_singular_value: f64,
    pub smallest_singular_value: f64,
}

/// Sandwich `lower ≤ ‖F‖_B ≤ upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpNormEstimate {
    pub lower: f64,
    pub upper: f64,
    pub sections: Vec<SectionNorm>,
}

/// Lower bound from the largest singular value over all sections, upper bound
/// from the ℓ¹ norm.
pub fn opnorm_estimate(f: &AlgebraElement, half_sizes: &[usize], base_points: &[f64]) -> Result<OpNormEstimate> {
    let upper = f.norm_l1().upper;
    let mut sections = Vec::with_capacity(half_sizes.len() * base_points.len());
    for &l in half_sizes {
        for &z0 in base_points {
            let op = represent(f, l, z0)?;
            let sv = op.singular_values();
            sections.push(SectionNorm {
                half_size: l,
                z0,
                largest_singular_value: sv.iter().copied().fold(0.0, f64::max),
                smallest_singular_value: sv.iter().copied().fold(f64::INFINITY, f64::min),
            });
        }
    }
    sections.sort_by(|a, b| a.half_size.cmp(&b.half_size).then(a.z0.total_cmp(&b.z0)));
    let lower = sections
        .iter()
        .map(|s| s.largest_singular_value)
        .fold(0.0, f64::max)
        .min(upper);
    Ok(OpNormEstimate { lower, upper, sections })
}

/// Largest coefficient deviation between `F` and `F*`.
pub fn self_adjoint_deviation(f: &AlgebraElement) -> f64 {
    f.max_coeff_diff(&f.adjoint())
}

/// Eigenvalues of one Hermitian finite section, with interior flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSection {
    pub half_size: usize,
    pub z0: f64,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `true` when the eigenvector carries more than 90% of its mass on
    /// `|m| ≤ L/2`; such eigenvalues are not boundary artifacts.
    pub interior: Vec<bool>,
}

fn hermitian_section(f: &AlgebraElement, half_size: usize, z0: f64) -> Result<DMatrix<Complex64>> {
    let deviation = self_adjoint_deviation(f);
    if deviation > 1e-12 {
        return Err(Error::NotSelfAdjoint { deviation });
    }
    let m = represent(f, half_size, z0)?.into_matrix();
    Ok((&m + m.adjoint()).scale(0.5))
}

/// Eigenvalues (ascending) of the truncation of a self-adjoint element.
pub fn eig_selfadjoint(f: &AlgebraElement, half_size: usize, z0: f64) -> Result<Vec<f64>> {
    let h = hermitian_section(f, half_size, z0)?;
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Eigenvalues plus the interior-mass classification of their eigenvectors.
pub fn eig_section(f: &AlgebraElement, half_size: usize, z0: f64) -> Result<EigenSection> {
    let h = hermitian_section(f, half_size, z0)?;
    let eig = h.symmetric_eigen();
    let l = half_size as i64;
    let mut pairs: Vec<(f64, bool)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(j, &lambda)| {
            let v = eig.eigenvectors.column(j);
            let total: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            let inner: f64 = (-l / 2..=l / 2).map(|m| v[(m + l) as usize].norm_sqr()).sum();
            (lambda, inner > 0.9 * total)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(EigenSection {
        half_size,
        z0,
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        interior: pairs.iter().map(|p| p.1).collect(),
    })
}

/// `s_n = upper(‖Fⁿ‖_A)^{1/n}` and its running minimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GelfandSequence {
    pub sequence: Vec<f64>,
    pub certified_upper: f64,
}

/// Upper bounds for the spectral radius in the weighted algebra.
pub fn spectral_radius_a(f: &AlgebraElement, nmax: usize) -> Result<GelfandSequence> {
    if nmax == 0 {
        return Err(Error::InvalidInput("nmax must be at least 1".into()));
    }
    let mut sequence = Vec::with_capacity(nmax);
    let mut power = f.clone();
    for n in 1..=nmax {
        if n > 1 {
            power = power.multiply(f)?;
        }
        sequence.push(power.norm_a().upper.powf(1.0 / n as f64));
    }
    let certified_upper = sequence.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(GelfandSequence {
        sequence,
        certified_upper,
    })
}

/// Outcome of [`invert_in_a`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Inversion {
    Certified {
        inverse: AlgebraElement,
        terms: usize,
        left_residual: f64,
        right_residual: f64,
    },
    NoCertificate {
        reason: String,
        /// `upper ‖R^k‖_A / upper ‖R^{k−1}‖_A` at the last step.
        growth_ratio: Option<f64>,
        power_norms: Vec<f64>,
    },
}

impl Inversion {
    pub fn inverse(&self) -> Option<&AlgebraElement> {
        match self {
            Inversion::Certified { inverse, .. } => Some(inverse),
            Inversion::NoCertificate { .. } => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Inversion::Certified { .. })
    }
}

/// Inverse in the weighted algebra by a Neumann series.
///
/// With `ρ ≈ 1/F(0)` and `R = u₀ − ρF`, `G = (Σ_{k≤K} Rᵏ) ρ` satisfies
/// `GF = u₀ − R^{K+1}`. Success requires both residuals `‖FG − u₀‖_A` and
/// `‖GF − u₀‖_A` to have upper bounds below `tol`.
pub fn invert_in_a(f: &AlgebraElement, tol: f64, max_terms: usize) -> Inversion {
    let no_cert = |reason: String, norms: Vec<f64>| {
        let growth_ratio = match norms.as_slice() {
            [.., a, b] if *a > 0.0 => Some(b / a),
            [b] => Some(*b),
            _ => None,
        };
        Inversion::NoCertificate {
            reason,
            growth_ratio,
            power_norms: norms,
        }
    };

    let params = f.params();
    let constant = f.project_p();
    let rho = match constant.reciprocal(tol * 1e-3, 512) {
        Ok(r) => r,
        Err(e) => return no_cert(format!("constant term has no reciprocal: {e}"), Vec::new()),
    };
    let rho_el = AlgebraElement::embed(params, rho);
    let identity = AlgebraElement::identity(params);
    let residual = identity
        .checked_sub(&rho_el.multiply(f).expect("same parameters"))
        .expect("same parameters");
    let r_norm = residual.norm_a().upper;

    let check = |sum: &AlgebraElement| -> (AlgebraElement, f64, f64) {
        let g = sum.multiply(&rho_el).expect("same parameters");
        let left = g.multiply(f).unwrap().checked_sub(&identity).unwrap().norm_a().upper;
        let right = f.multiply(&g).unwrap().checked_sub(&identity).unwrap().norm_a().upper;
        (g, left, right)
    };

    let mut sum = identity.clone();
    let mut power = identity.clone();
    let mut norms = Vec::new();
    for k in 0..=max_terms {
        if k > 0 {
            power = power.multiply(&residual).expect("same parameters");
            let nk = power.norm_a().upper;
            norms.push(nk);
            if !nk.is_finite() || nk > 1e150 {
                return no_cert("Neumann powers overflow".into(), norms);
            }
            sum = sum.checked_add(&power).expect("same parameters");
        }
        let last = norms.last().copied().unwrap_or(1.0);
        if last * r_norm < tol {
            let (g, left, right) = check(&sum);
            if left < tol && right < tol {
                return Inversion::Certified {
                    inverse: g,
                    terms: k,
                    left_residual: left,
                    right_residual: right,
                };
            }
        }
    }
    no_cert(
        format!("residual not below {tol:e} after {max_terms} Neumann terms"),
        norms,
    )
}

/// Checks `a ∘ b = a + b − ab = 0` and `b ∘ a = 0` in the weighted norm.
pub fn quasi_inverse_check(a: &AlgebraElement, b: &AlgebraElement, tol: f64) -> Result<bool> {
    let sum = a.checked_add(b)?;
    let left = sum.checked_sub(&a.multiply(b)?)?.norm_a().upper;
    let right = sum.checked_sub(&b.multiply(a)?)?.norm_a().upper;
    Ok(left < tol && right < tol)
}

/// Smallest singular value of the truncated `S_L − λ` against `|λ| − 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolventEvidence {
    pub half_size: usize,
    pub smallest_singular_value: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalCheck {
    pub n: usize,
    pub expected: Complex64,
    pub max_deviation: f64,
}

/// Comparison of the numerically inverted section with `−λ^{−n−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InverseEvidence {
    pub diagonals: Vec<DiagonalCheck>,
    pub max_deviation: f64,
    /// Largest entry strictly above the diagonal (should vanish).
    pub upper_triangle_max: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialSum {
    pub n: usize,
    /// Certified lower bound of `‖S_n‖_A`.
    pub lower_norm_a: f64,
    /// `Σ_{j≤n} σ^j |λ|^{−j−1}`.
    pub closed_form: f64,
    /// `lower_n / lower_{n−1}`, absent for `n = 0`.
    pub ratio: Option<f64>,
}

/// Growth of the partial sums `S_N = −Σ_{n≤N} λ^{−n−1} u₁ⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceEvidence {
    pub partial_sums: Vec<PartialSum>,
    pub limit_ratio: f64,
    pub final_ratio: f64,
    /// `‖(u₁ − λ) S_N − u₀‖_{ℓ¹} = |λ|^{−N−1}`: the series converges in ℓ¹.
    pub l1_residual: f64,
    /// The same residual in the weighted norm, `σ^{N+1} |λ|^{−N−1}`.
    pub a_residual: f64,
    pub passed: bool,
}

/// Evidence that `u₁ − λ` is invertible in the C*-algebra but not in the
/// weighted algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub lambda: Complex64,
    pub theta: f64,
    pub sigma: f64,
    pub element: AlgebraElement,
    pub resolvent: ResolventEvidence,
    pub inverse: InverseEvidence,
    pub divergence: DivergenceEvidence,
    pub passed: bool,
    pub verdict: String,
    pub note: String,
}

/// Assembles the three pieces of evidence for `u₁ − λu₀` with
/// `1 < |λ| < σ`.
pub fn nonspectrality_witness(
    params: &crate::algebra::AlgebraParams,
    lambda: Complex64,
    terms: usize,
    half_size: usize,
) -> Result<WitnessReport> {
    let sigma = params.weight.sigma();
    let modulus = lambda.norm();
    if !(modulus > 1.0 && modulus < sigma) {
        return Err(Error::OutOfRange {
            what: "|lambda|",
            value: modulus,
            range: format!("(1, {sigma})"),
        });
    }
    if terms < 2 || half_size < 2 {
        return Err(Error::InvalidInput("N and L must both be at least 2".into()));
    }

    let u1 = AlgebraElement::unit_element(params, 1);
    let element = u1.checked_sub(&AlgebraElement::scalar(params, lambda))?;

    // (a) ‖(S − λ)ξ‖ ≥ (|λ| − 1)‖ξ‖
    let section = represent(&element, half_size, 0.0)?;
    let smallest = section.smallest_singular_value();
    let bound = modulus - 1.0;
    let resolvent = ResolventEvidence {
        half_size,
        smallest_singular_value: smallest,
        bound,
        passed: smallest >= bound - 1e-10,
    };

    // (b) the inverse of the bidiagonal section is −Σ λ^{−n−1} Sⁿ exactly
    let inv = section
        .matrix()
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidInput("truncated section is singular".into()))?;
    let l = half_size as i64;
    let nmax = 20.min(2 * half_size);
    let diagonals: Vec<DiagonalCheck> = (0..=nmax)
        .map(|n| {
            let expected = -lambda.powi(-(n as i32) - 1);
            let max_deviation = (-l + n as i64..=l)
                .map(|m| (inv[((m + l) as usize, (m - n as i64 + l) as usize)] - expected).norm())
                .fold(0.0, f64::max);
            DiagonalCheck {
                n,
                expected,
                max_deviation,
            }
        })
        .collect();
    let max_deviation = diagonals.iter().map(|d| d.max_deviation).fold(0.0, f64::max);
    let dim = section.dim();
    let upper_triangle_max = (0..dim)
        .flat_map(|i| (i + 1..dim).map(move |j| (i, j)))
        .map(|(i, j)| inv[(i, j)].norm())
        .fold(0.0, f64::max);
    let inverse = InverseEvidence {
        diagonals,
        max_deviation,
        upper_triangle_max,
        passed: max_deviation < 1e-10 && upper_triangle_max < 1e-10,
    };

    // (c) partial sums of the B-inverse grow like (σ/|λ|)^N in the A-norm
    let mut partial = AlgebraElement::zero(params);
    let mut partial_sums = Vec::with_capacity(terms + 1);
    let mut closed_form = 0.0;
    for n in 0..=terms {
        let coeff = -lambda.powi(-(n as i32) - 1);
        partial = partial.checked_add(&AlgebraElement::from_terms(
            params,
            [(n as i64, TorusFunction::constant(coeff))],
        ))?;
        closed_form += int_pow(sigma, n as i32) * int_pow(modulus, -(n as i32) - 1);
        let lower_norm_a = partial.norm_a().lower;
        let ratio = partial_sums.last().map(|p: &PartialSum| lower_norm_a / p.lower_norm_a);
        partial_sums.push(PartialSum {
            n,
            lower_norm_a,
            closed_form,
            ratio,
        });
    }
    let limit_ratio = sigma / modulus;
    let final_ratio = partial_sums.last().and_then(|p| p.ratio).unwrap_or(f64::NAN);
    let residual = element
        .multiply(&partial)?
        .checked_sub(&AlgebraElement::identity(params))?;
    let increasing = partial_sums.windows(2).all(|w| w[1].lower_norm_a > w[0].lower_norm_a);
    let divergence = DivergenceEvidence {
        limit_ratio,
        final_ratio,
        l1_residual: residual.norm_l1().upper,
        a_residual: residual.norm_a().lower,
        passed: increasing && limit_ratio > 1.0 && (final_ratio / limit_ratio - 1.0).abs() < 0.01,
        partial_sums,
    };

    let passed = resolvent.passed && inverse.passed && divergence.passed;
    let verdict = if passed {
        "element of A, invertible in B, A-norm of unique inverse diverges".to_string()
    } else {
        "inconclusive: at least one evidence check failed".to_string()
    };
    Ok(WitnessReport {
        lambda,
        theta: params.theta.theta(),
        sigma,
        element,
        resolvent,
        inverse,
        divergence,
        passed,
        verdict,
        note: "u1 - lambda is a constructive witness chosen to mirror the weighted \
               shift u_n 1 = sigma^n 1 of the module E; it is an interpretation, \
               not an element named in the original argument"
            .to_string(),
    })
}

/// Combined per-element spectral summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub id: String,
    pub norm_a: Interval,
    pub norm_l1: Interval,
    pub opnorm: OpNormEstimate,
    pub gelfand: GelfandSequence,
    /// Present only for self-adjoint elements.
    pub eigen: Vec<EigenSection>,
}

pub fn spectral_report(
    id: &str,
    f: &AlgebraElement,
    half_sizes: &[usize],
    base_points: &[f64],
    nmax: usize,
) -> Result<SpectralReport> {
    let opnorm = opnorm_estimate(f, half_sizes, base_points)?;
    let gelfand = spectral_radius_a(f, nmax)?;
    let mut eigen = Vec::new();
    if self_adjoint_deviation(f) <= 1e-12 {
        for &l in half_sizes {
            for &z0 in base_points {
                eigen.push(eig_section(f, l, z0)?);
            }
        }
        eigen.sort_by(|a, b| a.half_size.cmp(&b.half_size).then(a.z0.total_cmp(&b.z0)));
    }
    Ok(SpectralReport {
        id: id.to_string(),
        norm_a: f.norm_a(),
        norm_l1: f.norm_l1(),
        opnorm,
        gelfand,
        eigen,
    })
}

/// `u₁ + u₁* + λ(v + v*)` with `v = e^{2πiz}`.
pub fn almost_mathieu(params: &crate::algebra::AlgebraParams, coupling: f64) -> AlgebraElement {
    AlgebraElement::from_terms(
        params,
        [
            (-1, TorusFunction::one()),
            (0, TorusFunction::cosine(1).scale(2.0 * coupling)),
            (1, TorusFunction::one()),
        ],
    )
}
