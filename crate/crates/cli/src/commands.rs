//! Subcommand bodies. Each returns the bytes for stdout plus named artifacts
//! for the output directory.

use std::path::Path;

use irrot_core::averaging::{average_toward_p, measured_deviation, plan_for_element};
use irrot_core::banach_module::{cyclic_solver, nonunitarizability_report, ModuleVector, NonUnitarizabilityReport};
use irrot_core::spectra::{
    almost_mathieu, eig_selfadjoint, nonspectrality_witness, opnorm_estimate, self_adjoint_deviation, OpNormEstimate,
};
use irrot_core::{AlgebraElement, Complex64, Interval};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::io::{csv_bytes, read_element, read_function, render, SpectrumRow};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: Vec<u8>,
    pub files: Vec<(String, Vec<u8>)>,
    /// Set when the command ran but its check did not pass.
    pub failure: Option<String>,
}

impl Outcome {
    fn report(name: &str, json: String) -> Self {
        Self {
            files: vec![(format!("{name}.json"), json.clone().into_bytes())],
            stdout: json.into_bytes(),
            failure: None,
        }
    }

    fn failing_if(mut self, passed: bool, message: impl FnOnce() -> String) -> Self {
        if !passed {
            self.failure = Some(message());
        }
        self
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormsReport {
    pub id: String,
    pub theta: f64,
    pub sigma: f64,
    pub grid: usize,
    pub support: Vec<i64>,
    pub norm_a: Interval,
    pub norm_l1: Interval,
    pub opnorm: OpNormEstimate,
}

pub fn norms(cfg: &RunConfig, element: &Path) -> CliResult<Outcome> {
    let f = read_element(element)?;
    let report = norms_report(cfg, &stem(element), &f)?;
    Ok(Outcome::report("norms", render(&report)?))
}

pub fn norms_report(cfg: &RunConfig, id: &str, f: &AlgebraElement) -> CliResult<NormsReport> {
    Ok(NormsReport {
        id: id.to_string(),
        theta: f.theta().theta(),
        sigma: f.weight().sigma(),
        grid: cfg.grid,
        support: f.support(),
        norm_a: f.norm_a_with_grid(cfg.grid),
        norm_l1: f.norm_l1(),
        opnorm: opnorm_estimate(f, &cfg.ls, &cfg.z0s)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub n: usize,
    pub lower_norm_a: f64,
    pub closed_form: f64,
    pub ratio: Option<f64>,
}

pub fn witness(cfg: &RunConfig) -> CliResult<Outcome> {
    let params = cfg.params()?;
    let report = nonspectrality_witness(&params, Complex64::new(cfg.lambda, 0.0), cfg.n, cfg.largest_l())?;
    let rows: Vec<RatioRow> = report
        .divergence
        .partial_sums
        .iter()
        .map(|p| RatioRow {
            n: p.n,
            lower_norm_a: p.lower_norm_a,
            closed_form: p.closed_form,
            ratio: p.ratio,
        })
        .collect();
    let passed = report.passed;
    let mut out = Outcome::report("witness", render(&report)?);
    out.files.push(("witness.csv".into(), csv_bytes(&rows)?));
    Ok(out.failing_if(passed, || {
        format!("witness evidence incomplete for lambda = {}", cfg.lambda)
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplicityReport {
    pub id: String,
    pub epsilon: f64,
    pub cutoff: usize,
    pub terms: usize,
    pub step: u64,
    pub predicted_error: f64,
    pub tail: f64,
    pub middle_norm: f64,
    pub error_bound: f64,
    pub measured_deviation: f64,
    pub threshold: f64,
    pub passed: bool,
}

pub fn simplicity(cfg: &RunConfig, element: &Path) -> CliResult<Outcome> {
    let f = read_element(element)?;
    let report = simplicity_report(&stem(element), &f, cfg.epsilon)?;
    let passed = report.passed;
    let deviation = report.measured_deviation;
    Ok(Outcome::report("simplicity", render(&report)?)
        .failing_if(passed, || format!("deviation {deviation:e} is not below 2 epsilon")))
}

pub fn simplicity_report(id: &str, f: &AlgebraElement, epsilon: f64) -> CliResult<SimplicityReport> {
    let plan = plan_for_element(f, epsilon)?;
    let outcome = average_toward_p(f, &plan);
    let measured = measured_deviation(f, &outcome.average)?;
    Ok(SimplicityReport {
        id: id.to_string(),
        epsilon,
        cutoff: plan.cutoff,
        terms: plan.terms(),
        step: plan.step,
        predicted_error: plan.predicted_error,
        tail: outcome.tail,
        middle_norm: outcome.middle_norm,
        error_bound: outcome.error_bound,
        measured_deviation: measured,
        threshold: 2.0 * epsilon,
        passed: measured < 2.0 * epsilon,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuleReport {
    pub id: String,
    pub theta: f64,
    pub sigma: f64,
    pub tol: f64,
    pub phi_sup: Interval,
    pub translates: Vec<i64>,
    pub chi_min: f64,
    pub reciprocal_degree: usize,
    pub residual: f64,
    pub element: AlgebraElement,
    pub scaling: NonUnitarizabilityReport,
}

pub fn module(cfg: &RunConfig, phi: &Path) -> CliResult<Outcome> {
    let phi_fn = read_function(phi)?;
    let report = module_report(cfg, &stem(phi), ModuleVector::new(phi_fn))?;
    let element = render(&report.element)?;
    let mut out = Outcome::report("module", render(&report)?);
    out.files.push(("module_element.json".into(), element.into_bytes()));
    Ok(out)
}

pub fn module_report(cfg: &RunConfig, id: &str, phi: ModuleVector) -> CliResult<ModuleReport> {
    let params = cfg.params()?;
    let solution = cyclic_solver(&params, &phi, cfg.tol)?;
    Ok(ModuleReport {
        id: id.to_string(),
        theta: params.theta.theta(),
        sigma: params.weight.sigma(),
        tol: cfg.tol,
        phi_sup: phi.sup_norm(),
        translates: solution.translates,
        chi_min: solution.chi_min,
        reciprocal_degree: solution.reciprocal_degree,
        residual: solution.residual,
        element: solution.element,
        scaling: nonunitarizability_report(&params, cfg.n.max(1))?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionSummary {
    #[serde(rename = "L")]
    pub l: usize,
    pub z0: f64,
    pub count: usize,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub id: String,
    pub theta: f64,
    pub lambda_param: Option<f64>,
    pub self_adjoint_deviation: f64,
    pub sections: Vec<SectionSummary>,
}

pub enum SpectrumSource<'a> {
    File(&'a Path),
    AlmostMathieu(f64),
}

pub fn spectrum(cfg: &RunConfig, source: SpectrumSource<'_>) -> CliResult<Outcome> {
    let (id, f, lambda_param) = match source {
        SpectrumSource::File(path) => (stem(path), read_element(path)?, None),
        SpectrumSource::AlmostMathieu(coupling) => (
            format!("almost_mathieu_{coupling}"),
            almost_mathieu(&cfg.params()?, coupling),
            Some(coupling),
        ),
    };
    let (rows, summary) = spectrum_rows(cfg, &id, &f, lambda_param)?;
    let csv = csv_bytes(&rows)?;
    Ok(Outcome {
        stdout: csv.clone(),
        files: vec![
            ("spectrum.csv".into(), csv),
            ("spectrum.json".into(), render(&summary)?.into_bytes()),
        ],
        failure: None,
    })
}

pub fn spectrum_rows(
    cfg: &RunConfig,
    id: &str,
    f: &AlgebraElement,
    lambda_param: Option<f64>,
) -> CliResult<(Vec<SpectrumRow>, SpectrumSummary)> {
    let theta = f.theta().theta();
    let mut rows = Vec::new();
    let mut sections = Vec::new();
    for &l in &cfg.ls {
        for &z0 in &cfg.z0s {
            let eigs = eig_selfadjoint(f, l, z0)?;
            sections.push(SectionSummary {
                l,
                z0,
                count: eigs.len(),
                min: eigs.first().copied().unwrap_or(f64::NAN),
                max: eigs.last().copied().unwrap_or(f64::NAN),
            });
            rows.extend(eigs.into_iter().enumerate().map(|(i, eigenvalue)| SpectrumRow {
                theta,
                lambda_param,
                l,
                z0,
                eigenvalue_index: i,
                eigenvalue,
            }));
        }
    }
    let summary = SpectrumSummary {
        id: id.to_string(),
        theta,
        lambda_param,
        self_adjoint_deviation: self_adjoint_deviation(f),
        sections,
    };
    Ok((rows, summary))
}

pub fn suite(cfg: &RunConfig, sizes: crate::suite::SuiteSizes) -> CliResult<Outcome> {
    let report = crate::suite::run(cfg, sizes)?;
    let failed: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.id.clone())
        .collect();
    Ok(
        Outcome::report("suite", render(&report)?).failing_if(failed.is_empty(), || {
            format!("suite checks failed: {}", failed.join(", "))
        }),
    )
}
