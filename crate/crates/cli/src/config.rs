//! Run configuration: defaults, a flat `key = value` file, and flag overrides.

use std::path::{Path, PathBuf};

use irrot_core::algebra::Convergent;
use irrot_core::spectra::DEFAULT_BASE_POINTS;
use irrot_core::{AlgebraParams, RotationParameter, Weight};
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Largest denominator used when convergents are derived from θ.
pub const DERIVED_CONVERGENT_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub theta: f64,
    /// Explicit convergents; derived from `theta` when empty.
    pub convergents: Vec<Convergent>,
    pub sigma: f64,
    pub grid: usize,
    pub ls: Vec<usize>,
    pub z0s: Vec<f64>,
    pub tol: f64,
    pub epsilon: f64,
    pub lambda: f64,
    pub n: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            theta: RotationParameter::golden().theta(),
            convergents: Vec::new(),
            sigma: std::f64::consts::E,
            grid: irrot_core::torus::DEFAULT_GRID,
            ls: vec![16, 32, 64],
            z0s: DEFAULT_BASE_POINTS.to_vec(),
            tol: 1e-6,
            epsilon: 1e-3,
            lambda: 2.0,
            n: 30,
            seed: 0,
            out: None,
        }
    }
}

/// Values given on the command line; `None` keeps the file or default value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub theta: Option<f64>,
    pub convergents: Option<Vec<Convergent>>,
    pub sigma: Option<f64>,
    pub grid: Option<usize>,
    pub ls: Vec<usize>,
    pub z0s: Vec<f64>,
    pub tol: Option<f64>,
    pub epsilon: Option<f64>,
    pub lambda: Option<f64>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, path)
    }

    /// Parses `key = value` lines on top of the defaults. `#` starts a comment.
    pub fn parse(text: &str, path: &Path) -> CliResult<Self> {
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CliError::Config {
                path: path.to_path_buf(),
                line: idx + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, found {line:?}")))?;
            cfg.set(key.trim(), value.trim()).map_err(err)?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("{key}: cannot parse {v:?}"))
        }
        fn list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, String> {
            v.split(',').map(|s| num(key, s.trim())).collect()
        }
        match key {
            "theta" => self.theta = num(key, value)?,
            "convergents" => self.convergents = parse_convergents(value)?,
            "sigma" => self.sigma = num(key, value)?,
            "grid" => self.grid = num(key, value)?,
            "L" => self.ls = list(key, value)?,
            "z0" => self.z0s = list(key, value)?,
            "tol" => self.tol = num(key, value)?,
            "epsilon" => self.epsilon = num(key, value)?,
            "lambda" => self.lambda = num(key, value)?,
            "N" => self.n = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    pub fn apply(mut self, o: Overrides) -> Self {
        if let Some(theta) = o.theta {
            self.theta = theta;
            if o.convergents.is_none() {
                self.convergents.clear();
            }
        }
        if let Some(c) = o.convergents {
            self.convergents = c;
        }
        macro_rules! take {
            ($($field:ident),*) => { $(if let Some(v) = o.$field { self.$field = v; })* };
        }
        take!(sigma, grid, tol, epsilon, lambda, n, seed);
        if !o.ls.is_empty() {
            self.ls = o.ls;
        }
        if !o.z0s.is_empty() {
            self.z0s = o.z0s;
        }
        if o.out.is_some() {
            self.out = o.out;
        }
        self
    }

    /// Checks ranges and sorts the truncation sizes. `epsilon` is left to the
    /// averaging planner, which reports a plan failure for `ε ≤ 0`.
    pub fn validated(mut self) -> CliResult<Self> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Option(format!("tol must be positive (got {})", self.tol)));
        }
        if self.grid == 0 {
            return Err(CliError::Option("grid must be positive".into()));
        }
        if self.ls.is_empty() || self.z0s.is_empty() {
            return Err(CliError::Option("at least one L and one z0 are required".into()));
        }
        if self.z0s.iter().any(|z| !z.is_finite()) {
            return Err(CliError::Option("z0 values must be finite".into()));
        }
        self.ls.sort_unstable();
        self.ls.dedup();
        self.params()?;
        Ok(self)
    }

    pub fn rotation(&self) -> CliResult<RotationParameter> {
        let theta = if self.convergents.is_empty() {
            RotationParameter::with_derived_convergents(self.theta, DERIVED_CONVERGENT_LIMIT)?
        } else {
            RotationParameter::with_convergents(self.theta, true, self.convergents.clone())?
        };
        Ok(theta)
    }

    pub fn params(&self) -> CliResult<AlgebraParams> {
        Ok(AlgebraParams::new(self.rotation()?, Weight::new(self.sigma)?))
    }

    pub fn largest_l(&self) -> usize {
        self.ls.last().copied().unwrap_or(0)
    }
}

/// `p/q` pairs separated by commas, e.g. `1/1, 1/2, 2/3`.
pub fn parse_convergents(value: &str) -> Result<Vec<Convergent>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (p, q) = s
                .split_once('/')
                .ok_or_else(|| format!("convergent {s:?} is not p/q"))?;
            let p = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let q = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            Ok(Convergent { p, q })
        })
        .collect()
}
