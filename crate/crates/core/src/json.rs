//! JSON wire forms and canonical output.
//!
//! Torus functions serialize as `{"coeffs": [{"k", "re", "im"}, ...]}` sorted
//! by `k`; algebra elements as `{"theta", "sigma", "terms": [{"n", "fn"}],
//! "meta"}` sorted by `n`. Canonical output prints every float with 17
//! significant digits so that parsing it back is exact.

use std::collections::BTreeMap;
use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraParams, Convergent, RotationParameter, Weight};
use crate::error::Error;
use crate::torus::TorusFunction;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffWire {
    pub k: i64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusFunctionWire {
    pub coeffs: Vec<CoeffWire>,
}

impl TryFrom<TorusFunctionWire> for TorusFunction {
    type Error = Error;

    fn try_from(w: TorusFunctionWire) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        let mut prev: Option<i64> = None;
        for c in w.coeffs {
            if let Some(p) = prev {
                if c.k <= p {
                    return Err(Error::InvalidInput(format!(
                        "coeffs must be sorted by k without duplicates (k = {} after {p})",
                        c.k
                    )));
                }
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite coefficient at k = {}", c.k)));
            }
            prev = Some(c.k);
            map.insert(c.k, Complex64::new(c.re, c.im));
        }
        Ok(TorusFunction::from_map_raw(map))
    }
}

impl From<TorusFunction> for TorusFunctionWire {
    fn from(f: TorusFunction) -> Self {
        Self {
            coeffs: f.coeffs().map(|(k, c)| CoeffWire { k, re: c.re, im: c.im }).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermWire {
    pub n: i64,
    #[serde(rename = "fn")]
    pub func: TorusFunction,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct MetaWire {
    #[serde(default = "default_true")]
    pub irrational: bool,
    /// `[p, q]` pairs.
    #[serde(default)]
    pub convergents: Vec<[u64; 2]>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraElementWire {
    pub theta: f64,
    pub sigma: f64,
    pub terms: Vec<TermWire>,
    #[serde(default)]
    pub meta: Option<MetaWire>,
}

impl TryFrom<AlgebraElementWire> for AlgebraElement {
    type Error = Error;

    fn try_from(w: AlgebraElementWire) -> Result<Self, Error> {
        let meta = w.meta.unwrap_or(MetaWire {
            irrational: true,
            convergents: Vec::new(),
        });
        let convergents = meta.convergents.iter().map(|&[p, q]| Convergent { p, q }).collect();
        let theta = RotationParameter::with_convergents(w.theta, meta.irrational, convergents)?;
        let params = AlgebraParams::new(theta, Weight::new(w.sigma)?);
        let mut prev: Option<i64> = None;
        for t in &w.terms {
            if let Some(p) = prev {
                if t.n <= p {
                    return Err(Error::InvalidInput(format!(
                        "terms must be sorted by n without duplicates (n = {} after {p})",
                        t.n
                    )));
                }
            }
            prev = Some(t.n);
        }
        Ok(AlgebraElement::from_terms(
            &params,
            w.terms.into_iter().map(|t| (t.n, t.func)).collect::<Vec<_>>(),
        ))
    }
}

impl From<AlgebraElement> for AlgebraElementWire {
    fn from(f: AlgebraElement) -> Self {
        let (params, terms) = f.into_parts();
        Self {
            theta: params.theta.theta(),
            sigma: params.weight.sigma(),
            terms: terms.into_iter().map(|(n, func)| TermWire { n, func }).collect(),
            meta: Some(MetaWire {
                irrational: params.theta.is_declared_irrational(),
                convergents: params.theta.convergents().iter().map(|c| [c.p, c.q]).collect(),
            }),
        }
    }
}

/// Compact JSON formatter printing floats as `d.dddddddddddddddde±x`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CanonicalFormatter;

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// 17 significant digits in scientific notation.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Serializes `value` with [`CanonicalFormatter`], followed by a newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, CanonicalFormatter);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}
