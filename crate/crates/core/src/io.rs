//! JSON wire formats and file helpers.
//!
//! Complex numbers are `[re, im]` pairs; matrices are
//! `{"rows": r, "cols": c, "data": [[re, im], ...]}` in row-major order. Floats are written
//! in shortest round-trip form.

use std::fs;
use std::path::Path;

use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::channel::{CircleMeasure, ProbabilityDistribution, QuantumChannel};
use crate::math::{ComplexMatrix, C64};
use crate::state::{CorrelatedStateSpec, DensityMatrix};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            rows: self.rows(),
            cols: self.cols(),
            data: self.data().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MatrixWire::deserialize(d)?;
        ComplexMatrix::new(w.rows, w.cols, w.data).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ChannelWire {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

impl Serialize for QuantumChannel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChannelWire {
            dim_in: self.dim_in(),
            dim_out: self.dim_out(),
            kraus: self.kraus().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuantumChannel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ChannelWire::deserialize(d)?;
        let ch = QuantumChannel::new(w.kraus).map_err(D::Error::custom)?;
        if ch.dim_in() != w.dim_in || ch.dim_out() != w.dim_out {
            return Err(D::Error::custom(format!(
                "declared dimensions {}→{} do not match Kraus operators {}→{}",
                w.dim_in,
                w.dim_out,
                ch.dim_in(),
                ch.dim_out()
            )));
        }
        Ok(ch)
    }
}

#[derive(Serialize, Deserialize)]
struct DistributionWire {
    weights: Vec<f64>,
}

impl Serialize for ProbabilityDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistributionWire {
            weights: self.weights().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProbabilityDistribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = DistributionWire::deserialize(d)?;
        ProbabilityDistribution::new(w.weights).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MeasureWire {
    atoms: Vec<(f64, f64)>,
}

impl Serialize for CircleMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MeasureWire {
            atoms: self.atoms().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CircleMeasure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MeasureWire::deserialize(d)?;
        CircleMeasure::new(w.atoms).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SpecWire {
    coeff: ComplexMatrix,
    vectors: Vec<Vec<C64>>,
}

impl Serialize for CorrelatedStateSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecWire {
            coeff: self.coeff().clone(),
            vectors: self.vectors().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CorrelatedStateSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SpecWire::deserialize(d)?;
        CorrelatedStateSpec::new(w.coeff, w.vectors).map_err(D::Error::custom)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(d)?;
        DensityMatrix::new(m).map_err(D::Error::custom)
    }
}

/// A state file: the matrix format plus optional `dim_h`/`dim_k` for bipartite states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateFile {
    pub state: DensityMatrix,
    pub dims: Option<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct StateWire {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim_h: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim_k: Option<usize>,
}

impl Serialize for StateFile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.state.matrix();
        StateWire {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().to_vec(),
            dim_h: self.dims.map(|d| d.0),
            dim_k: self.dims.map(|d| d.1),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StateFile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = StateWire::deserialize(d)?;
        let m = ComplexMatrix::new(w.rows, w.cols, w.data).map_err(D::Error::custom)?;
        let state = DensityMatrix::new(m).map_err(D::Error::custom)?;
        let dims = match (w.dim_h, w.dim_k) {
            (None, None) => None,
            (Some(h), Some(k)) if h * k == state.dim() => Some((h, k)),
            (Some(h), Some(k)) => {
                return Err(D::Error::custom(format!(
                    "dim_h·dim_k = {} does not match state dimension {}",
                    h * k,
                    state.dim()
                )))
            }
            _ => return Err(D::Error::custom("dim_h and dim_k must be given together")),
        };
        Ok(StateFile { state, dims })
    }
}

/// Accepted encodings of a `λ` sequence: a bare array or `{"lambda": [...]}`, entries
/// either `[re, im]` or real numbers.
#[derive(Deserialize)]
#[serde(untagged)]
enum LambdaWire {
    Bare(Vec<Entry>),
    Wrapped { lambda: Vec<Entry> },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Complex(C64),
    Real(f64),
}

pub fn parse_lambda(text: &str) -> Result<Vec<C64>> {
    let w: LambdaWire = serde_json::from_str(text)?;
    let entries = match w {
        LambdaWire::Bare(v) | LambdaWire::Wrapped { lambda: v } => v,
    };
    Ok(entries
        .into_iter()
        .map(|e| match e {
            Entry::Complex(z) => z,
            Entry::Real(x) => C64::new(x, 0.0),
        })
        .collect())
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    from_json(&fs::read_to_string(path)?)
}

pub fn write_json<T: Serialize + ?Sized>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = to_json(value)?;
    text.push('\n');
    fs::write(path, text).map_err(Error::from)
}
