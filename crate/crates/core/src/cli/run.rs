use std::path::PathBuf;

use clap::Parser;
use serde_json::{json, Value};

use super::config::{parse_config, Command, ConfigError, Probe, Render, RunConfig, Validated};
use super::probes::{run_probe, ProbeStatus};
use super::render::{render_dendrogram, render_svg, render_vary_ascii, render_vary_svg};
use crate::berkline::Spectrum;
use crate::diffmod::{DomainSpec, ModuleSource};
use crate::error::Error;
use crate::specengine::{derivation_spectrum, module_spectrum, spectra_report, SpectrumReport};
use crate::valcore::Exponent;
use crate::vary::{
    discontinuity_witness, left_continuity_threshold, margin_neighborhoods, sample_segment, two_sided_threshold,
    SegmentSpec,
};

pub const SCHEMA: &str = "ultraspec/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

const MARGIN_NEIGHBORHOODS: [&str; 3] = ["enlarged", "annulus", "boundary"];

/// Exact spectra of constant-coefficient differential modules on the
/// ultrametric affine line.
#[derive(Clone, Debug, Parser)]
#[command(name = "ultraspec", version)]
pub struct Args {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Write the result document here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Rendering of the resulting spectra; overrides the config.
    #[arg(long, value_enum)]
    pub render: Option<Render>,
    /// Comma-separated probe set for the oracle command; overrides the config.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub probe: Vec<Probe>,
    /// Sample points per side (oracle) or uniform grid size (vary).
    #[arg(long)]
    pub grid: Option<usize>,
}

/// Flag overrides applied on top of a config.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub render: Option<Render>,
    pub probes: Option<Vec<Probe>>,
    pub grid: Option<usize>,
}

impl From<&Args> for Overrides {
    fn from(a: &Args) -> Self {
        Overrides {
            render: a.render,
            probes: (!a.probe.is_empty()).then(|| a.probe.clone()),
            grid: a.grid,
        }
    }
}

/// What a run produced: the exit code, the JSON document, an optional
/// rendering and diagnostics for stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub document: Option<String>,
    pub rendering: Option<String>,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn failure(code: i32, message: String) -> Self {
        Outcome {
            code,
            diagnostics: vec![message],
            ..Outcome::default()
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidScalar(_)
        | Error::InvalidField(_)
        | Error::Parse { .. }
        | Error::InvalidDomain(_)
        | Error::InvalidDisk(_)
        | Error::ShapeMismatch(_)
        | Error::Precondition(_)
        | Error::ValuationOnly(_) => EXIT_VALIDATION,
        _ => EXIT_OTHER,
    }
}

struct Produced {
    result: Value,
    rendering: Option<String>,
    mismatches: Vec<String>,
}

fn render_spectrum(mode: Render, s: &Spectrum) -> Option<String> {
    match mode {
        Render::Ascii => Some(render_dendrogram(s)),
        Render::Svg => Some(render_svg(s)),
        Render::None => None,
    }
}

fn render_report(mode: Render, r: &SpectrumReport) -> Option<String> {
    let mut text = match &r.spectrum {
        Some(s) => render_spectrum(mode, s)?,
        None if mode == Render::None => return None,
        None => String::new(),
    };
    if mode == Render::Ascii {
        for c in &r.symbolic {
            text.push_str(&format!("~ roots of {} rexp={} valuation-only\n", c.factor, c.radius_exp));
        }
    }
    Some(text)
}

fn domain(v: &Validated) -> &DomainSpec {
    v.domain.as_ref().expect("validated command has a domain")
}

fn spectrum_cmd(v: &Validated, mode: Render) -> Result<Produced, Error> {
    let report = module_spectrum(&v.module, domain(v), &v.field)?;
    Ok(Produced {
        rendering: render_report(mode, &report),
        result: serde_json::to_value(&report).expect("serializable"),
        mismatches: Vec::new(),
    })
}

fn compare_cmd(cfg: &RunConfig, v: &Validated, mode: Render) -> Result<Produced, Error> {
    let ModuleSource::Diffpoly { coeffs } = &cfg.module else {
        unreachable!("validated compare config");
    };
    let report = spectra_report(coeffs, domain(v), &v.field)?;
    let rendering = match mode {
        Render::None => None,
        _ => {
            let module = render_report(mode, &report.module).unwrap_or_default();
            let operator = render_spectrum(mode, &report.operator).unwrap_or_default();
            Some(match mode {
                Render::Ascii => format!("module:\n{module}operator:\n{operator}"),
                _ => format!("{module}{operator}"),
            })
        }
    };
    Ok(Produced {
        rendering,
        result: serde_json::to_value(&report).expect("serializable"),
        mismatches: Vec::new(),
    })
}

fn oracle_cmd(v: &Validated, probes: &[Probe], points: usize, mode: Render) -> Result<Produced, Error> {
    let dom = domain(v);
    let sigma = derivation_spectrum(dom, &v.field)?;
    let mut outcomes = Vec::new();
    let mut mismatches = Vec::new();
    for p in probes {
        let out = run_probe(*p, dom, &v.field, &sigma, points)?;
        if out.status == ProbeStatus::Mismatch {
            mismatches.push(format!("probe {} contradicts the closed form", p.name()));
        }
        outcomes.push(out);
    }
    Ok(Produced {
        rendering: render_spectrum(mode, &sigma),
        result: json!({
            "closed_form": {
                "spectrum": sigma.disks(),
                "enclosing_radius_exp": sigma.enclosing_radius_exp(),
            },
            "probes": outcomes,
        }),
        mismatches,
    })
}

fn opt_exp(e: &Option<Exponent>) -> Value {
    match e {
        Some(x) => json!(x),
        None => Value::Null,
    }
}

fn vary_cmd(v: &Validated, cmd: &Command, grid: Option<usize>, mode: Render) -> Result<Produced, Error> {
    let Command::Vary {
        segment,
        margins,
        neighborhoods,
    } = cmd
    else {
        unreachable!("vary command");
    };
    let seg = match grid {
        Some(n) if n < 2 => return Err(Error::Precondition("--grid needs at least two points".into())),
        Some(n) => SegmentSpec::uniform(segment.center.clone(), segment.rho_high.clone(), segment.rho_low.clone(), n),
        None => segment.clone(),
    };
    let f = &v.field;
    let m = &v.module;
    let samples = sample_segment(m, &seg, f)?;
    let mut continuity = Vec::new();
    let mut discontinuity = Vec::new();
    let mut mismatches = Vec::new();

    for s in &samples {
        let mut tested: Vec<(String, _)> = margins
            .iter()
            .flat_map(|eps| {
                margin_neighborhoods(&s.spectrum, eps)
                    .into_iter()
                    .enumerate()
                    .map(move |(i, n)| (format!("{} margin={eps}", MARGIN_NEIGHBORHOODS[i]), n))
            })
            .collect();
        tested.extend(neighborhoods.iter().enumerate().map(|(i, n)| (format!("config[{i}]"), n.clone())));
        for (name, n) in &tested {
            let left = match left_continuity_threshold(m, &seg, &s.rho, n, f) {
                Ok(t) => t,
                Err(Error::Precondition(reason)) => {
                    continuity.push(json!({"rho": s.rho, "neighborhood": name, "status": "not-a-neighborhood", "reason": reason}));
                    continue;
                }
                Err(e) => return Err(e),
            };
            if left.is_none() {
                mismatches.push(format!("no left-continuity threshold at rho={} for {name}", s.rho));
            }
            let mut row = json!({
                "rho": s.rho,
                "type": s.point_type,
                "neighborhood": name,
                "left_threshold": opt_exp(&left),
            });
            if s.point_type == 3 {
                let two = two_sided_threshold(m, &seg, &s.rho, n, f)?;
                if two.is_none() {
                    mismatches.push(format!("no two-sided threshold at type-3 rho={} for {name}", s.rho));
                }
                row["two_sided_threshold"] = opt_exp(&two);
            }
            continuity.push(row);
        }
        if s.point_type == 2 && s.rho > seg.rho_low {
            match discontinuity_witness(m, &seg, &s.rho, 10, f) {
                Ok(w) => {
                    if !w.holds {
                        mismatches.push(format!("discontinuity witness fails at rho={}", s.rho));
                    }
                    discontinuity.push(json!({"rho": s.rho, "status": if w.holds { "witnessed" } else { "failed" }, "witness": w}));
                }
                Err(Error::Unsupported(reason)) => {
                    discontinuity.push(json!({"rho": s.rho, "status": "skipped", "reason": reason}));
                }
                Err(e) => return Err(e),
            }
        }
    }
    let rendering = match mode {
        Render::Ascii => Some(render_vary_ascii(&samples)),
        Render::Svg => Some(render_vary_svg(&samples)),
        Render::None => None,
    };
    Ok(Produced {
        rendering,
        result: json!({
            "segment": seg,
            "samples": samples,
            "continuity": continuity,
            "discontinuity": discontinuity,
        }),
        mismatches,
    })
}

/// Runs a parsed config.
pub fn execute(cfg: &RunConfig, ov: &Overrides) -> Outcome {
    let v = match cfg.validate() {
        Ok(v) => v,
        Err(e) => return Outcome::failure(EXIT_VALIDATION, e.to_string()),
    };
    let mode = ov.render.unwrap_or(cfg.output.render);
    let produced = match &cfg.command {
        Command::Spectrum {} => spectrum_cmd(&v, mode),
        Command::Compare {} => compare_cmd(cfg, &v, mode),
        Command::Oracle { probes, points } => {
            let probes = ov.probes.as_deref().unwrap_or(probes);
            oracle_cmd(&v, probes, ov.grid.unwrap_or(*points).max(1), mode)
        }
        cmd @ Command::Vary { .. } => vary_cmd(&v, cmd, ov.grid, mode),
    };
    match produced {
        Ok(p) => finish(cfg, &v, p),
        Err(e) => Outcome::failure(error_code(&e), e.to_string()),
    }
}

/// Wraps a command result in the versioned document; any mismatch turns the
/// run into a failure.
fn finish(cfg: &RunConfig, v: &Validated, p: Produced) -> Outcome {
    let doc = json!({
        "schema": SCHEMA,
        "command": cfg.command.name(),
        "field": v.field.describe(),
        "domain": v.domain,
        "module": cfg.module,
        "status": if p.mismatches.is_empty() { "ok" } else { "mismatch" },
        "mismatches": p.mismatches,
        "result": p.result,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    Outcome {
        code: if p.mismatches.is_empty() { EXIT_OK } else { EXIT_MISMATCH },
        document: Some(text),
        rendering: p.rendering,
        diagnostics: p.mismatches,
    }
}

/// Parses and runs a config document.
pub fn run_text(text: &str, ov: &Overrides) -> Outcome {
    match parse_config(text) {
        Ok(cfg) => execute(&cfg, ov),
        Err(e @ (ConfigError::Syntax { .. } | ConfigError::Invalid { .. } | ConfigError::Missing(_))) => {
            Outcome::failure(EXIT_VALIDATION, e.to_string())
        }
    }
}

/// Reads `--config`, runs it and writes `--out` when given.
pub fn run(args: &Args) -> Outcome {
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => return Outcome::failure(EXIT_OTHER, format!("cannot read {}: {e}", args.config.display())),
    };
    let mut out = run_text(&text, &Overrides::from(args));
    if let (Some(path), Some(doc)) = (&args.out, &out.document) {
        if let Err(e) = std::fs::write(path, doc) {
            return Outcome::failure(EXIT_OTHER, format!("cannot write {}: {e}", path.display()));
        }
        out.document = None;
    }
    out
}
