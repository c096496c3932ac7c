//! Primitive classes and length spectra.

use crate::scalar::{Complex, Dd};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Smallest admissible norm is `1 + NORM_GAP`.
pub const NORM_GAP: f64 = 1e-9;

/// Which field a class was specified by, so that saving reproduces the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    Norm,
    Length,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveClass {
    norm: f64,
    length: f64,
    weight: [f64; 2],
    multiplicity: u32,
    label: Option<String>,
    source: Source,
}

impl PrimitiveClass {
    pub fn from_norm(norm: f64, weight: [f64; 2], multiplicity: u32, label: Option<String>) -> Result<Self> {
        if !norm.is_finite() || !(norm > 1.0 + NORM_GAP) {
            return Err(Error::InvariantViolation(format!("norm {norm} must exceed 1 + 1e-9")));
        }
        Self::build(norm, norm.ln(), weight, multiplicity, label, Source::Norm)
    }

    pub fn from_length(length: f64, weight: [f64; 2], multiplicity: u32, label: Option<String>) -> Result<Self> {
        let norm = length.exp();
        if !length.is_finite() || !norm.is_finite() || !(norm > 1.0 + NORM_GAP) {
            return Err(Error::InvariantViolation(format!(
                "length {length} gives an inadmissible norm"
            )));
        }
        Self::build(norm, length, weight, multiplicity, label, Source::Length)
    }

    fn build(
        norm: f64,
        length: f64,
        weight: [f64; 2],
        multiplicity: u32,
        label: Option<String>,
        source: Source,
    ) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::InvariantViolation("multiplicity must be at least 1".into()));
        }
        if !weight.iter().all(|w| w.is_finite()) {
            return Err(Error::InvariantViolation("weight must be finite".into()));
        }
        if (norm.ln() - length).abs() > 1e-13 * length.max(1.0) {
            return Err(Error::InvariantViolation(format!("length {length} is not log {norm}")));
        }
        Ok(PrimitiveClass {
            norm,
            length,
            weight,
            multiplicity,
            label,
            source,
        })
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// `log N` in double-double, from whichever field defined the class.
    pub fn length_dd(&self) -> Dd {
        match self.source {
            Source::Norm => Dd::from(self.norm).ln(),
            Source::Length => Dd::from(self.length),
        }
    }

    /// `N` in double-double, from whichever field defined the class.
    pub fn norm_dd(&self) -> Dd {
        match self.source {
            Source::Norm => Dd::from(self.norm),
            Source::Length => Dd::from(self.length).exp(),
        }
    }

    pub fn weight_pair(&self) -> [f64; 2] {
        self.weight
    }

    pub fn weight(&self) -> Complex {
        Complex::from_f64(self.weight[0], self.weight[1])
    }

    /// `multiplicity * weight`.
    pub fn total_weight(&self) -> Complex {
        self.weight() * self.multiplicity as f64
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn with_weight(&self, weight: [f64; 2]) -> Self {
        PrimitiveClass { weight, ..self.clone() }
    }
}

/// Declared bound `sum_{N > n_max} |beta| N^{-sigma} <= growth n_max^{1-sigma} / (sigma - 1)`
/// for classes missing from a file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailModel {
    pub n_max: f64,
    pub growth: f64,
}

impl TailModel {
    pub fn bound(&self, sigma: f64) -> f64 {
        if !(sigma > 1.0) {
            return f64::INFINITY;
        }
        self.growth * self.n_max.powf(1.0 - sigma) / (sigma - 1.0)
    }
}

/// Classes sorted by norm; immutable once built.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LengthSpectrum {
    classes: Vec<PrimitiveClass>,
    tail_model: Option<TailModel>,
}

impl LengthSpectrum {
    pub fn new(mut classes: Vec<PrimitiveClass>, tail_model: Option<TailModel>) -> Result<Self> {
        classes.sort_by(|a, b| a.norm.total_cmp(&b.norm).then_with(|| a.label.cmp(&b.label)));
        for w in classes.windows(2) {
            if w[0].norm == w[1].norm && w[0].label == w[1].label {
                return Err(Error::InvariantViolation(format!(
                    "duplicate class with norm {} and label {:?}",
                    w[0].norm, w[0].label
                )));
            }
        }
        if let Some(t) = tail_model {
            if !(t.n_max > 1.0) || !(t.growth >= 0.0) || !t.growth.is_finite() {
                return Err(Error::InvariantViolation(
                    "tail model needs n_max > 1, growth >= 0".into(),
                ));
            }
        }
        Ok(LengthSpectrum { classes, tail_model })
    }

    pub fn empty() -> Self {
        LengthSpectrum::default()
    }

    pub fn classes(&self) -> &[PrimitiveClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn tail_model(&self) -> Option<TailModel> {
        self.tail_model
    }

    /// A copy with every weight replaced by `f(class)`.
    pub fn map_weights(&self, f: impl Fn(&PrimitiveClass) -> [f64; 2]) -> Self {
        LengthSpectrum {
            classes: self.classes.iter().map(|c| c.with_weight(f(c))).collect(),
            tail_model: self.tail_model,
        }
    }

    pub fn norm_range(&self) -> Option<(f64, f64)> {
        Some((self.classes.first()?.norm, self.classes.last()?.norm))
    }
}
