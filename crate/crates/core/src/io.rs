//! The JSON vector-set file format.
//!
//! ```json
//! { "dimension": 2, "mode": "float", "label": "x",
//!   "vectors": [[[1.0, 0.0], [0.0, 0.0]], ...] }
//! ```
//!
//! Exact files add `"conductor": n` and encode each entry as the list of
//! `[num, den]` power-basis coefficients, `phi(n)` of them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constructions::LineSet;
use crate::cyclo::{coeffs_from_wire, coeffs_to_wire, totient, CycloNumber, WireInt};
use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::scalar::{Conductor, Scalar, ScalarMode};
use crate::verify::VerificationReport;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Float([f64; 2]),
    Exact(Vec<[WireInt; 2]>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSetFile {
    pub dimension: usize,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor: Option<u32>,
    pub vectors: Vec<Vec<Entry>>,
    #[serde(default)]
    pub label: String,
}

/// Scalars with a file encoding.
pub trait WireScalar: Scalar {
    fn to_entry(&self, ctx: &Self::Context) -> Result<Entry>;
    fn from_entry(entry: &Entry, ctx: &Self::Context) -> Result<Self>;
}

impl WireScalar for Complex64 {
    fn to_entry(&self, _: &()) -> Result<Entry> {
        Ok(Entry::Float([self.re, self.im]))
    }

    fn from_entry(entry: &Entry, _: &()) -> Result<Self> {
        match entry {
            Entry::Float([re, im]) if re.is_finite() && im.is_finite() => Ok(Complex64::new(*re, *im)),
            Entry::Float(_) => Err(Error::Format("non-finite float entry".into())),
            Entry::Exact(_) => Err(Error::Format("expected a [re, im] float entry".into())),
        }
    }
}

impl WireScalar for CycloNumber {
    fn to_entry(&self, ctx: &Conductor) -> Result<Entry> {
        Ok(Entry::Exact(coeffs_to_wire(&self.lift(ctx.0)?)))
    }

    fn from_entry(entry: &Entry, ctx: &Conductor) -> Result<Self> {
        match entry {
            Entry::Exact(coeffs) => coeffs_from_wire(ctx.0, coeffs),
            Entry::Float(_) => Err(Error::Format(
                "expected a coefficient list in an exact file".into(),
            )),
        }
    }
}

/// A parsed file in whichever arithmetic it was written in.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedSet {
    Float(LineSet<Complex64>),
    Exact(LineSet<CycloNumber>, Conductor),
}

impl LoadedSet {
    pub fn dim(&self) -> usize {
        match self {
            LoadedSet::Float(s) => s.dim,
            LoadedSet::Exact(s, _) => s.dim,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            LoadedSet::Float(s) => s.len(),
            LoadedSet::Exact(s, _) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Float view; exact sets are embedded.
    pub fn to_float(&self) -> LineSet<Complex64> {
        match self {
            LoadedSet::Float(s) => s.clone(),
            LoadedSet::Exact(s, _) => s.embed(),
        }
    }
}

impl VectorSetFile {
    pub fn from_set<S: WireScalar>(ctx: &S::Context, set: &LineSet<S>) -> Result<Self> {
        let (mode, conductor) = match S::mode(ctx) {
            ScalarMode::Float => ("float", None),
            ScalarMode::Exact { conductor } => ("exact", Some(conductor)),
        };
        let vectors = set
            .vectors
            .iter()
            .map(|v| v.iter().map(|z| z.to_entry(ctx)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorSetFile {
            dimension: set.dim,
            mode: mode.into(),
            conductor,
            vectors,
            label: set.label.clone(),
        })
    }

    fn check_shape(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::Format("dimension must be positive".into()));
        }
        if self.vectors.is_empty() {
            return Err(Error::Format("file contains no vectors".into()));
        }
        if let Some((k, v)) = self
            .vectors
            .iter()
            .enumerate()
            .find(|(_, v)| v.len() != self.dimension)
        {
            return Err(Error::Format(format!(
                "vector {k} has {} entries, expected {}",
                v.len(),
                self.dimension
            )));
        }
        Ok(())
    }

    fn decode<S: WireScalar>(&self, ctx: &S::Context) -> Result<LineSet<S>> {
        self.check_shape()?;
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|e| S::from_entry(e, ctx))
                    .collect::<Result<Vec<_>>>()
                    .map(CVector::new)
            })
            .collect::<Result<Vec<_>>>()?;
        LineSet::new(ctx, vectors, self.label.clone())
    }

    pub fn load(&self) -> Result<LoadedSet> {
        match self.mode.as_str() {
            "float" => Ok(LoadedSet::Float(self.decode(&())?)),
            "exact" => {
                let n = self
                    .conductor
                    .ok_or_else(|| Error::Format("exact file needs a conductor".into()))?;
                if n == 0 {
                    return Err(Error::InvalidConductor(n));
                }
                let phi = totient(n);
                let bad = self.vectors.iter().flatten().any(|e| match e {
                    Entry::Exact(c) => c.len() != phi,
                    Entry::Float(_) => true,
                });
                if bad {
                    return Err(Error::Format(format!(
                        "exact entries must list {phi} coefficients for conductor {n}"
                    )));
                }
                let ctx = Conductor(n);
                Ok(LoadedSet::Exact(self.decode(&ctx)?, ctx))
            }
            other => Err(Error::Format(format!("unknown mode '{other}'"))),
        }
    }

    /// Parse either a bare vector-set file or a `{"set": ..., "report": ...}`
    /// document as written by `generate`.
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let inner = match value {
            serde_json::Value::Object(mut map) if map.contains_key("set") => {
                map.remove("set").expect("key checked")
            }
            other => other,
        };
        serde_json::from_value(inner).map_err(|e| Error::Format(e.to_string()))
    }
}

/// The output of `generate`.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratedDocument<'a> {
    pub set: &'a VectorSetFile,
    pub report: &'a VerificationReport,
}

/// Float embedding as CSV with columns `vector, component, re, im`.
pub fn set_to_csv(set: &LineSet<Complex64>) -> String {
    let mut out = String::from("vector,component,re,im\n");
    for (k, v) in set.vectors.iter().enumerate() {
        for (j, z) in v.iter().enumerate() {
            out.push_str(&format!("{k},{j},{:?},{:?}\n", z.re, z.im));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::power::theorem1_sic;

    #[test]
    fn exact_round_trip() {
        let ctx = Conductor::DEFAULT;
        let s = theorem1_sic::<CycloNumber>(&ctx).unwrap();
        let f = VectorSetFile::from_set(&ctx, &s).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back = VectorSetFile::parse(&text).unwrap().load().unwrap();
        assert_eq!(back, LoadedSet::Exact(s, ctx));
    }

    #[test]
    fn float_round_trip_is_bit_exact() {
        let s = theorem1_sic::<Complex64>(&()).unwrap();
        let f = VectorSetFile::from_set(&(), &s).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(VectorSetFile::parse(&text).unwrap().load().unwrap(), LoadedSet::Float(s));
    }

    #[test]
    fn ragged_vectors_rejected() {
        let text = r#"{"dimension": 2, "mode": "float", "label": "",
                       "vectors": [[[1.0, 0.0]]]}"#;
        assert!(matches!(
            VectorSetFile::parse(text).unwrap().load(),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn wrapped_document_accepted() {
        let text = r#"{"set": {"dimension": 1, "mode": "float", "label": "",
                       "vectors": [[[1.0, 0.0]]]}, "report": {}}"#;
        assert_eq!(VectorSetFile::parse(text).unwrap().dimension, 1);
    }
}
