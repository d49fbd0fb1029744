//! Seeded generators for random test inputs.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, AlgebraParams};
use crate::torus::TorusFunction;

/// Deterministic source of random functions and elements.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    params: AlgebraParams,
}

impl Sampler {
    pub fn new(seed: u64, params: AlgebraParams) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            params,
        }
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    fn complex(&mut self) -> Complex64 {
        Complex64::new(self.rng.random_range(-1.0..1.0), self.rng.random_range(-1.0..1.0))
    }

    /// Coefficients uniform in the unit square for `|k| ≤ degree`.
    pub fn torus_function(&mut self, degree: usize) -> TorusFunction {
        let d = degree as i64;
        TorusFunction::from_coeffs((-d..=d).map(|k| (k, self.complex())).collect::<Vec<_>>())
    }

    /// Real-valued function of the given degree.
    pub fn real_function(&mut self, degree: usize) -> TorusFunction {
        self.torus_function(degree).real_part()
    }

    /// Element with every `|n| ≤ width` populated by a function of degree
    /// `degree`.
    pub fn element(&mut self, width: usize, degree: usize) -> AlgebraElement {
        let w = width as i64;
        let terms: Vec<_> = (-w..=w).map(|n| (n, self.torus_function(degree))).collect();
        AlgebraElement::from_terms(&self.params, terms)
    }

    /// Like [`Sampler::element`] but term `n` is scaled by `σ^{-|n|}`, so that
    /// every term contributes comparably to the weighted norm.
    pub fn balanced_element(&mut self, width: usize, degree: usize) -> AlgebraElement {
        let w = width as i64;
        let weight = self.params.weight;
        let terms: Vec<_> = (-w..=w)
            .map(|n| (n, self.torus_function(degree).scale(1.0 / weight.at(n))))
            .collect();
        AlgebraElement::from_terms(&self.params, terms)
    }
}
