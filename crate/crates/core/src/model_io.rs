//! Model persistence: a self-describing key/value text document with a
//! variant tag, shared by every model kind.
//!
//! Floats are written with Rust's shortest round-trip formatting, so
//! `read(write(m))` reproduces `m` bit-for-bit and `write(read(d))`
//! reproduces the document bytes.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use thiserror::Error;

use crate::baselines::{CbaModel, CwsModel, ErgModel, ErgVariant};
use crate::experiment::TrainedModel;
use crate::frg::{FrgModel, KernelDensityEstimate};

const HEADER: &str = "frg-model-document v1";

#[derive(Debug, Error)]
pub enum ModelIoError {
    #[error("i/o error")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("missing field '{0}'")]
    MissingField(&'static str),
    #[error("unknown model tag '{0}'")]
    UnknownModel(String),
}

/// Provenance recorded alongside a model so an evaluation run can
/// reconstruct the exact train split and keep the test split disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelMeta {
    pub seed: u64,
    pub train_size: usize,
}

fn write_floats(out: &mut String, key: &str, values: &[f64]) {
    out.push_str(key);
    out.push_str(" = [");
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("{v}"));
    }
    out.push_str("]\n");
}

/// Serialize a model document.
pub fn write_model<W: Write>(
    writer: &mut W,
    model: &TrainedModel,
    meta: &ModelMeta,
) -> std::io::Result<()> {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("model = {}\n", model.kind_name()));
    out.push_str(&format!("seed = {}\n", meta.seed));
    out.push_str(&format!("train_size = {}\n", meta.train_size));
    match model {
        TrainedModel::Frg(frg) => {
            out.push_str(&format!("prior = {}\n", frg.prior_edge()));
            out.push_str(&format!("bandwidth_pos = {}\n", frg.kde_pos().bandwidth()));
            out.push_str(&format!("bandwidth_neg = {}\n", frg.kde_neg().bandwidth()));
            write_floats(&mut out, "samples_pos", frg.kde_pos().points());
            write_floats(&mut out, "samples_neg", frg.kde_neg().points());
        }
        TrainedModel::Erg(erg) => {
            out.push_str(&format!("kmax = {}\n", erg.k_max));
            out.push_str(&format!("rho = {}\n", erg.rho));
            write_floats(&mut out, "theta", &erg.theta);
        }
        TrainedModel::Cws(cws) => {
            out.push_str(&format!("delta = {}\n", cws.delta));
            out.push_str(&format!("theta_beta = {}\n", cws.theta_beta));
        }
        TrainedModel::Cba(cba) => {
            out.push_str(&format!("alpha = {}\n", cba.alpha));
        }
    }
    writer.write_all(out.as_bytes())
}

struct Document {
    fields: BTreeMap<String, String>,
}

impl Document {
    fn required(&self, key: &'static str) -> Result<&str, ModelIoError> {
        self.fields
            .get(key)
            .map(String::as_str)
            .ok_or(ModelIoError::MissingField(key))
    }

    fn float(&self, key: &'static str) -> Result<f64, ModelIoError> {
        parse_float(self.required(key)?, key)
    }

    fn unsigned(&self, key: &'static str) -> Result<u64, ModelIoError> {
        let raw = self.required(key)?;
        raw.parse().map_err(|_| ModelIoError::Parse {
            line: 0,
            reason: format!("field '{key}': invalid integer '{raw}'"),
        })
    }

    fn float_array(&self, key: &'static str) -> Result<Vec<f64>, ModelIoError> {
        let raw = self.required(key)?;
        let inner = raw
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| ModelIoError::Parse {
                line: 0,
                reason: format!("field '{key}': expected [..] array"),
            })?;
        let trimmed = inner.trim();
        if trimmed.is_empty() {
            return Ok(Vec::new());
        }
        trimmed
            .split(',')
            .map(|tok| parse_float(tok.trim(), key))
            .collect()
    }
}

fn parse_float(token: &str, key: &str) -> Result<f64, ModelIoError> {
    token.parse().map_err(|_| ModelIoError::Parse {
        line: 0,
        reason: format!("field '{key}': invalid number '{token}'"),
    })
}

/// Parse a model document back into a model and its provenance.
pub fn read_model<R: BufRead>(reader: R) -> Result<(TrainedModel, ModelMeta), ModelIoError> {
    let mut lines = reader.lines().enumerate();
    let (_, header) = lines.next().ok_or(ModelIoError::Parse {
        line: 1,
        reason: "empty document".into(),
    })?;
    let header = header?;
    if header.trim() != HEADER {
        return Err(ModelIoError::Parse {
            line: 1,
            reason: format!("expected header '{HEADER}', found '{header}'"),
        });
    }
    let mut fields = BTreeMap::new();
    for (idx, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| ModelIoError::Parse {
            line: idx + 1,
            reason: "expected 'key = value'".into(),
        })?;
        fields.insert(key.trim().to_owned(), value.trim().to_owned());
    }
    let document = Document { fields };

    let meta = ModelMeta {
        seed: document.unsigned("seed")?,
        train_size: document.unsigned("train_size")? as usize,
    };
    let model = match document.required("model")? {
        "frg" => {
            let prior = document.float("prior")?;
            let kde_pos = KernelDensityEstimate::with_bandwidth(
                document.float_array("samples_pos")?,
                document.float("bandwidth_pos")?,
            );
            let kde_neg = KernelDensityEstimate::with_bandwidth(
                document.float_array("samples_neg")?,
                document.float("bandwidth_neg")?,
            );
            TrainedModel::Frg(FrgModel::new(prior, kde_pos, kde_neg))
        }
        tag @ ("mrg" | "hrg") => {
            let variant = if tag == "mrg" {
                ErgVariant::Markov
            } else {
                ErgVariant::HigherOrder
            };
            TrainedModel::Erg(ErgModel::new(
                variant,
                document.float_array("theta")?,
                document.unsigned("kmax")? as usize,
                document.float("rho")?,
            ))
        }
        "cws" => TrainedModel::Cws(CwsModel::new(
            document.unsigned("delta")? as usize,
            document.float("theta_beta")?,
        )),
        "cba" => TrainedModel::Cba(CbaModel::new(document.float("alpha")?)),
        other => return Err(ModelIoError::UnknownModel(other.to_owned())),
    };
    Ok((model, meta))
}
