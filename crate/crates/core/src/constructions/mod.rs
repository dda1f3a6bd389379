//! Named SIC-POVM constructions in dimensions 2 and 3.

pub mod bicyclic;
pub mod hadamard;
pub mod power;
pub mod ranga;
pub mod weyl;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::scalar::{Scalar, ScalarMode};

/// An ordered list of candidate line representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSet<S> {
    pub dim: usize,
    pub mode: ScalarMode,
    pub vectors: Vec<CVector<S>>,
    pub label: String,
}

impl<S: Scalar> LineSet<S> {
    pub fn new(
        ctx: &S::Context,
        vectors: Vec<CVector<S>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let dim = vectors.first().map(CVector::dim).ok_or_else(|| {
            Error::InvalidParameter("a line set needs at least one vector".into())
        })?;
        if let Some(bad) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(LineSet {
            dim,
            mode: S::mode(ctx),
            vectors,
            label: label.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Float copy of the set.
    pub fn embed(&self) -> LineSet<Complex64> {
        LineSet {
            dim: self.dim,
            mode: ScalarMode::Float,
            vectors: self.vectors.iter().map(CVector::embed).collect(),
            label: self.label.clone(),
        }
    }

    /// Apply `u` to every vector.
    pub fn transform(&self, u: &CMatrix<S>) -> Result<Self> {
        let vectors = self
            .vectors
            .iter()
            .map(|v| u.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(LineSet {
            vectors,
            ..self.clone()
        })
    }
}

/// The orbit `{v, Dv, D^2 v, ...}` of one generator under a diagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit<S> {
    pub generator_index: usize,
    pub vectors: Vec<CVector<S>>,
}

impl<S: Scalar> Orbit<S> {
    /// Iterate `D` on `v` until it returns to `v`. Float mode compares within
    /// `tol`, exact mode exactly. Fails if the orbit does not close within
    /// `max_len` steps.
    pub fn generate(
        d: &CMatrix<S>,
        v: &CVector<S>,
        generator_index: usize,
        max_len: usize,
        tol: f64,
    ) -> Result<Self> {
        let mut vectors = vec![v.clone()];
        let mut next = d.apply(v)?;
        while !next
            .iter()
            .zip(v.iter())
            .all(|(a, b)| (a.clone() - b.clone()).is_negligible(tol))
        {
            if vectors.len() >= max_len {
                return Err(Error::InvalidParameter(format!(
                    "orbit of generator {generator_index} does not close within {max_len} steps"
                )));
            }
            vectors.push(next.clone());
            next = d.apply(&next)?;
        }
        Ok(Orbit {
            generator_index,
            vectors,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Constructions addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    PowerD2,
    BicyclicD2,
    BicyclicD3,
    HadamardD2,
    WeylD2,
    WeylD3,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Construction::PowerD2,
        Construction::BicyclicD2,
        Construction::BicyclicD3,
        Construction::HadamardD2,
        Construction::WeylD2,
        Construction::WeylD3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::PowerD2 => "power-d2",
            Construction::BicyclicD2 => "bicyclic-d2",
            Construction::BicyclicD3 => "bicyclic-d3",
            Construction::HadamardD2 => "hadamard-d2",
            Construction::WeylD2 => "weyl-d2",
            Construction::WeylD3 => "weyl-d3",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Construction::BicyclicD3 | Construction::WeylD3 => 3,
            _ => 2,
        }
    }

    pub fn needs_fiducial(self) -> bool {
        matches!(self, Construction::WeylD2 | Construction::WeylD3)
    }

    /// Build the named set. Weyl constructions need a fiducial; the others
    /// ignore it.
    pub fn build<S: Scalar>(
        self,
        ctx: &S::Context,
        fiducial: Option<&CVector<S>>,
    ) -> Result<LineSet<S>> {
        match self {
            Construction::PowerD2 => power::theorem1_sic(ctx),
            Construction::BicyclicD2 => Ok(bicyclic::bicyclic_d2(ctx)?.sic),
            Construction::BicyclicD3 => {
                Ok(bicyclic::bicyclic_d3(ctx, &bicyclic::BicyclicSolution::reference())?.sic)
            }
            Construction::HadamardD2 => {
                hadamard::hadamard_sic(ctx, hadamard::HadamardVariant::ProjectorChain)
            }
            Construction::WeylD2 | Construction::WeylD3 => {
                let f = fiducial.ok_or_else(|| {
                    Error::InvalidParameter(format!("{} requires a fiducial vector", self.name()))
                })?;
                weyl::weyl_sic(ctx, self.dim(), f)
            }
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown construction '{s}'")))
    }
}
