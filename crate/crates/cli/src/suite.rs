//! Seeded property suite. Every check draws from its own sampler so results do
//! not depend on the sizes chosen for the other checks.

use irrot_core::averaging::{average_toward_p, measured_deviation, plan_for_element};
use irrot_core::banach_module::{act, cyclic_solver, ModuleVector};
use irrot_core::sample::Sampler;
use irrot_core::spectra::{eig_selfadjoint, nonspectrality_witness, opnorm_estimate, spectral_radius_a};
use irrot_core::torus::int_pow;
use irrot_core::{AlgebraElement, AlgebraParams, Complex64, TorusFunction, Weight};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "<=")]
    AtMost,
}

/// One quantitative check: `worst relation threshold`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub name: String,
    pub cases: usize,
    pub worst: f64,
    pub relation: Relation,
    pub threshold: f64,
    pub passed: bool,
    /// Extra figures worth reporting (plan sizes, translate counts).
    pub notes: Vec<(String, f64)>,
}

impl Check {
    fn new(id: &str, name: &str, cases: usize, worst: f64, relation: Relation, threshold: f64) -> Self {
        let passed = match relation {
            Relation::Less => worst < threshold,
            Relation::AtMost => worst <= threshold,
        };
        Self {
            id: id.to_string(),
            name: name.to_string(),
            cases,
            worst,
            relation,
            threshold,
            passed,
            notes: Vec::new(),
        }
    }

    fn note(mut self, key: &str, value: f64) -> Self {
        self.notes.push((key.to_string(), value));
        self
    }

    fn and(mut self, passed: bool) -> Self {
        self.passed &= passed;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteSizes {
    pub triples: usize,
    pub pairs: usize,
    pub projections: usize,
    pub averaging: usize,
    pub module: usize,
    pub cyclic: usize,
}

impl SuiteSizes {
    pub fn full() -> Self {
        Self {
            triples: 500,
            pairs: 500,
            projections: 1000,
            averaging: 50,
            module: 200,
            cyclic: 20,
        }
    }

    pub fn quick() -> Self {
        Self {
            triples: 40,
            pairs: 40,
            projections: 100,
            averaging: 5,
            module: 20,
            cyclic: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub theta: f64,
    pub sigma: f64,
    pub sizes: SuiteSizes,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn sampler(seed: u64, stream: u64, params: &AlgebraParams) -> Sampler {
    Sampler::new(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15), params.clone())
}

pub fn associativity(params: &AlgebraParams, seed: u64, cases: usize) -> Check {
    let mut s = sampler(seed, 1, params);
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let (f, g, h) = (s.element(3, 4), s.element(3, 4), s.element(3, 4));
        let lhs = f.multiply(&g).and_then(|fg| fg.multiply(&h));
        let rhs = g.multiply(&h).and_then(|gh| f.multiply(&gh));
        let dev = match (lhs, rhs) {
            (Ok(l), Ok(r)) => l.checked_sub(&r).map_or(f64::INFINITY, |d| d.norm_a().upper),
            _ => f64::INFINITY,
        };
        let scale = f.norm_a().upper * g.norm_a().upper * h.norm_a().upper;
        worst = worst.max(dev / scale);
    }
    Check::new(
        "1",
        "associativity deviation / product of norms",
        cases,
        worst,
        Relation::Less,
        1e-9,
    )
}

/// `‖u_n‖_A = σ^{|n|}` exactly for the listed weights.
pub fn unit_norms() -> Check {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for sigma in [1.0, 2.0, std::f64::consts::E] {
        let params = AlgebraParams::new(Default::default(), Weight::new(sigma).expect("sigma >= 1"));
        for n in -8..=8 {
            let norm = AlgebraElement::unit_element(&params, n).norm_a();
            let expected = int_pow(sigma, n.abs() as i32);
            worst = worst
                .max((norm.lower - expected).abs())
                .max((norm.upper - expected).abs());
            cases += 1;
        }
    }
    Check::new(
        "2a",
        "unit element norm minus sigma^|n|",
        cases,
        worst,
        Relation::AtMost,
        0.0,
    )
}

/// `lower‖FG‖ ≤ upper‖F‖·upper‖G‖`.
pub fn submultiplicativity(params: &AlgebraParams, seed: u64, cases: usize) -> Check {
    let mut s = sampler(seed, 2, params);
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let (f, g) = (s.element(3, 4), s.element(3, 4));
        let fg = f.multiply(&g).map_or(f64::INFINITY, |p| p.norm_a().lower);
        worst = worst.max(fg / (f.norm_a().upper * g.norm_a().upper));
    }
    Check::new(
        "2b",
        "norm of product / product of norms",
        cases,
        worst,
        Relation::AtMost,
        1.0,
    )
}

pub fn projection_contraction(params: &AlgebraParams, seed: u64, cases: usize) -> Check {
    let mut s = sampler(seed, 3, params);
    let mut worst = 0.0f64;
    let mut violations = 0;
    for _ in 0..cases {
        let f = s.element(3, 4);
        let (pf, norm) = (f.project_p().sup_norm().upper, f.norm_a().upper);
        if pf > norm {
            violations += 1;
        }
        worst = worst.max(pf / norm);
    }
    Check::new("3", "norm of P(F) / norm of F", cases, worst, Relation::AtMost, 1.0)
        .note("violations", violations as f64)
}

pub fn averaging(params: &AlgebraParams, seed: u64, cases: usize) -> Check {
    let mut s = sampler(seed, 4, params);
    let mut worst = 0.0f64;
    let mut max_terms = 0usize;
    let mut failures = 0usize;
    for _ in 0..cases {
        let f = s.element(5, 4);
        for epsilon in [1e-2, 1e-3] {
            let measured = plan_for_element(&f, epsilon).and_then(|plan| {
                max_terms = max_terms.max(plan.terms());
                measured_deviation(&f, &average_toward_p(&f, &plan).average)
            });
            match measured {
                Ok(m) => worst = worst.max(m / (2.0 * epsilon)),
                Err(_) => failures += 1,
            }
        }
    }
    Check::new(
        "4",
        "averaging deviation / 2 epsilon",
        2 * cases,
        worst,
        Relation::Less,
        1.0,
    )
    .note("max_M", max_terms as f64)
    .note("plan_failures", failures as f64)
    .and(failures == 0)
}

pub fn module_law(params: &AlgebraParams, seed: u64, cases: usize) -> Check {
    let mut s = sampler(seed, 5, params);
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let (f, g) = (s.element(3, 4), s.element(3, 4));
        let phi = ModuleVector::new(s.torus_function(4));
        let dev = f.multiply(&g).map_or(f64::INFINITY, |fg| {
            let lhs = act(&fg, &phi);
            let rhs = act(&f, &act(&g, &phi));
            (lhs.func() - rhs.func()).sup_norm().upper
        });
        worst = worst.max(dev);
    }
    Check::new("5", "module law sup deviation", cases, worst, Relation::Less, 1e-9)
}

/// Coefficient-exact `u_n 1 = σⁿ 1` for `n ∈ [−6, 6]`.
pub fn scaling(params: &AlgebraParams) -> Check {
    let one = ModuleVector::one();
    let sigma = params.weight.sigma();
    let mut worst = 0.0f64;
    for n in -6..=6i64 {
        let image = act(&AlgebraElement::unit_element(params, n), &one);
        let expected = TorusFunction::constant(int_pow(sigma, n as i32));
        worst = worst.max(image.func().max_coeff_diff(&expected));
        if image.func().num_coeffs() != 1 {
            worst = f64::INFINITY;
        }
    }
    Check::new(
        "6",
        "coefficient deviation of u_n 1 from sigma^n",
        13,
        worst,
        Relation::AtMost,
        0.0,
    )
}

/// Random `φ` of degree ≤ 6; every other one is forced to vanish somewhere.
pub fn cyclic(params: &AlgebraParams, seed: u64, cases: usize, tol: f64) -> Check {
    let mut s = sampler(seed, 7, params);
    let mut worst = 0.0f64;
    let mut max_k = 0usize;
    let mut failures = 0usize;
    for i in 0..cases {
        let phi = if i % 2 == 0 {
            s.torus_function(6)
        } else {
            let root = Complex64::from_polar(1.0, std::f64::consts::TAU * s.uniform(0.0, 1.0));
            s.torus_function(5)
                .multiply(&(&TorusFunction::character(1) - &TorusFunction::constant(root)))
        };
        match cyclic_solver(params, &ModuleVector::new(phi), tol) {
            Ok(sol) => {
                worst = worst.max(sol.residual);
                max_k = max_k.max(sol.translates.len());
            }
            Err(_) => failures += 1,
        }
    }
    Check::new("7", "cyclic solver residual", cases, worst, Relation::Less, tol)
        .note("max_translates", max_k as f64)
        .note("solver_failures", failures as f64)
        .and(failures == 0 && max_k <= 8)
}

pub fn witness(params: &AlgebraParams) -> Check {
    match nonspectrality_witness(params, Complex64::new(2.0, 0.0), 30, 64) {
        Ok(r) => {
            let lower_25 = r.divergence.partial_sums.get(25).map_or(0.0, |p| p.lower_norm_a);
            let ratio_error = (r.divergence.final_ratio / r.divergence.limit_ratio - 1.0).abs();
            Check::new(
                "8",
                "witness ratio relative error at N = 30",
                1,
                ratio_error,
                Relation::Less,
                0.01,
            )
            .note("smallest_singular_value", r.resolvent.smallest_singular_value)
            .note("diagonal_deviation", r.inverse.max_deviation)
            .note("lower_norm_at_25", lower_25)
            .and(r.passed && lower_25 > 1e3)
        }
        Err(_) => Check::new(
            "8",
            "witness ratio relative error at N = 30",
            1,
            f64::INFINITY,
            Relation::Less,
            0.01,
        ),
    }
}

pub fn radius_split(params: &AlgebraParams) -> Check {
    let u1 = AlgebraElement::unit_element(params, 1);
    let sigma = params.weight.sigma();
    let gelfand = spectral_radius_a(&u1, 20);
    let opnorm = opnorm_estimate(&u1, &[8, 16, 32], &[0.0, 0.25]);
    let worst = match (gelfand, opnorm) {
        (Ok(g), Ok(o)) => g
            .sequence
            .iter()
            .map(|s| (s - sigma).abs())
            .fold((g.certified_upper - sigma).abs(), f64::max)
            .max((o.lower - 1.0).abs())
            .max((o.upper - 1.0).abs()),
        _ => f64::INFINITY,
    };
    Check::new(
        "9",
        "deviation from r_A = sigma and operator norm 1",
        1,
        worst,
        Relation::Less,
        1e-12,
    )
}

pub fn finite_section(params: &AlgebraParams) -> Check {
    let f = AlgebraElement::from_terms(params, [(-1, TorusFunction::one()), (1, TorusFunction::one())]);
    let worst = match eig_selfadjoint(&f, 10, 0.0) {
        Ok(eigs) if eigs.len() == 21 => {
            let mut expected: Vec<f64> = (1..=21)
                .map(|j| 2.0 * (j as f64 * std::f64::consts::PI / 22.0).cos())
                .collect();
            expected.sort_by(f64::total_cmp);
            eigs.iter()
                .zip(&expected)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        }
        _ => f64::INFINITY,
    };
    Check::new(
        "10",
        "finite section eigenvalue deviation",
        21,
        worst,
        Relation::Less,
        1e-10,
    )
}

pub fn run(cfg: &RunConfig, sizes: SuiteSizes) -> CliResult<SuiteReport> {
    let params = cfg.params()?;
    let seed = cfg.seed;
    let checks = vec![
        associativity(&params, seed, sizes.triples),
        unit_norms(),
        submultiplicativity(&params, seed, sizes.pairs),
        projection_contraction(&params, seed, sizes.projections),
        averaging(&params, seed, sizes.averaging),
        module_law(&params, seed, sizes.module),
        scaling(&params),
        cyclic(&params, seed, sizes.cyclic, 1e-6),
        witness(&params),
        radius_split(&params),
        finite_section(&params),
    ];
    Ok(SuiteReport {
        seed,
        theta: params.theta.theta(),
        sigma: params.weight.sigma(),
        sizes,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
