use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::berkline::Neighborhood;
use crate::diffmod::{DiffModuleSpec, DomainSpec, ModuleSource};
use crate::valcore::{Exponent, FieldMode, FieldSpec};
use crate::vary::SegmentSpec;

/// A run of the tool, as read from the JSON config document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: FieldMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    pub module: ModuleSource,
    pub command: Command,
    #[serde(default, skip_serializing_if = "OutputOptions::is_default")]
    pub output: OutputOptions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    /// Module spectrum over the domain.
    Spectrum {},
    /// Module spectrum against `Q(Σ_d)` for a module given as a differential polynomial.
    Compare {},
    /// Closed form of `Σ_d` cross-checked by the selected probes.
    Oracle {
        #[serde(default = "Probe::all")]
        probes: Vec<Probe>,
        /// Sample points on each side of the boundary.
        #[serde(default = "default_points")]
        points: usize,
    },
    /// Spectra along a segment with continuity verdicts.
    Vary {
        segment: SegmentSpec,
        #[serde(default = "default_margins")]
        margins: Vec<Exponent>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        neighborhoods: Vec<Neighborhood>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum {} => "spectrum",
            Command::Compare {} => "compare",
            Command::Oracle { .. } => "oracle",
            Command::Vary { .. } => "vary",
        }
    }
}

fn default_points() -> usize {
    10
}

fn default_margins() -> Vec<Exponent> {
    vec![Exponent::ratio(1, 4), Exponent::ratio(1, 2), Exponent::int(1)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Probe {
    /// `‖d^n‖^{1/n}` against `‖d‖_sp`.
    Norm,
    /// Convergence of `exp(a(S - c))` against membership.
    Kernel,
    /// Principal-part resolvent at the smallest hole.
    Annulus,
    /// Resolvent radius against the distance to the spectrum.
    Resolvent,
    /// Growth of the boundary series.
    Divergence,
    /// `|φ^{-1} g| ≤ r |g|` along a type-4 family.
    #[serde(rename = "type4")]
    #[value(name = "type4")]
    Type4,
}

impl Probe {
    pub fn all() -> Vec<Probe> {
        vec![
            Probe::Norm,
            Probe::Kernel,
            Probe::Annulus,
            Probe::Resolvent,
            Probe::Divergence,
            Probe::Type4,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Probe::Norm => "norm",
            Probe::Kernel => "kernel",
            Probe::Annulus => "annulus",
            Probe::Resolvent => "resolvent",
            Probe::Divergence => "divergence",
            Probe::Type4 => "type4",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Render {
    Ascii,
    Svg,
    #[default]
    None,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputOptions {
    #[serde(default)]
    pub render: Render,
}

impl OutputOptions {
    fn is_default(&self) -> bool {
        *self == OutputOptions::default()
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config {path}: line {line}, column {column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("config field `{field}`: {source}")]
    Invalid {
        field: &'static str,
        source: crate::Error,
    },
    #[error("config: {0}")]
    Missing(String),
}

/// Parses a config document, reporting the JSON path, line and column of the first problem.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let out: Result<RunConfig, _> = serde_path_to_error::deserialize(de);
    out.map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ConfigError::Syntax {
            path,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })
}

/// The validated pieces of a config.
#[derive(Clone, Debug)]
pub struct Validated {
    pub field: FieldSpec,
    pub domain: Option<DomainSpec>,
    pub module: DiffModuleSpec,
}

impl RunConfig {
    pub fn validate(&self) -> Result<Validated, ConfigError> {
        let invalid = |field| move |source| ConfigError::Invalid { field, source };
        let field = FieldSpec::new(self.field).map_err(invalid("field"))?;
        if let Some(d) = &self.domain {
            d.validate(&field).map_err(invalid("domain"))?;
        }
        let module = DiffModuleSpec::from_source(&self.module, &field).map_err(invalid("module"))?;
        match &self.command {
            Command::Vary {
                segment,
                margins,
                neighborhoods,
            } => {
                segment.validate(&field).map_err(invalid("command.segment"))?;
                if margins.iter().any(|m| !(m > &Exponent::zero()) || m.is_infinite()) {
                    return Err(ConfigError::Invalid {
                        field: "command.margins",
                        source: crate::Error::Precondition("margins must be positive and finite".into()),
                    });
                }
                for n in neighborhoods {
                    n.validate(&field).map_err(invalid("command.neighborhoods"))?;
                }
            }
            _ if self.domain.is_none() => {
                return Err(ConfigError::Missing(format!("command `{}` needs a domain", self.command.name())));
            }
            Command::Compare {} if !matches!(self.module, ModuleSource::Diffpoly { .. }) => {
                return Err(ConfigError::Invalid {
                    field: "module",
                    source: crate::Error::Precondition("compare needs a module given by kind \"diffpoly\"".into()),
                });
            }
            Command::Oracle { points, .. } if *points == 0 => {
                return Err(ConfigError::Invalid {
                    field: "command.points",
                    source: crate::Error::Precondition("at least one sample point".into()),
                });
            }
            _ => {}
        }
        Ok(Validated {
            field,
            domain: self.domain.clone(),
            module,
        })
    }
}
