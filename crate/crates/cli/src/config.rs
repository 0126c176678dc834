//! The JSON input document.

use serde::{Deserialize, Serialize};

use torus_link_core::rational::{format_rational, frac, parse_rational, Rational};
use torus_link_core::{Geodesic, LatticeVector, MultiGeodesic, T2Geodesic, TermCount};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    T3,
    T2,
}

impl Mode {
    fn dimension(self) -> usize {
        match self {
            Mode::T3 => 3,
            Mode::T2 => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::T3 => "t3",
            Mode::T2 => "t2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawCount {
    Count(u64),
    Word(String),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    direction: Vec<i64>,
    origin: Vec<String>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kmax: Option<RawCount>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    require_trivial: Option<bool>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default = "default_mode")]
    mode: Mode,
    gamma: Vec<RawCurve>,
    upsilon: Vec<RawCurve>,
    #[serde(default)]
    options: RawOptions,
}

fn default_mode() -> Mode {
    Mode::T3
}

/// A curve as read from the input, origin already reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRecord {
    pub direction: Vec<i64>,
    pub origin: Vec<Rational>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Options {
    pub t: Option<Vec<f64>>,
    pub kmax: Option<TermCount>,
    pub tol: Option<f64>,
    pub require_trivial: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputConfig {
    pub mode: Mode,
    pub gamma: Vec<CurveRecord>,
    pub upsilon: Vec<CurveRecord>,
    pub options: Options,
}

pub fn parse_count(s: &str) -> Result<TermCount, String> {
    if s == "auto" {
        return Ok(TermCount::Auto);
    }
    match s.parse::<u64>() {
        Ok(n) if n > 0 => Ok(TermCount::Fixed(n)),
        _ => Err(format!("expected a positive integer or \"auto\", got {s:?}")),
    }
}

fn parse_curve(raw: RawCurve, mode: Mode, field: &str) -> Result<CurveRecord, CliError> {
    let dim = mode.dimension();
    if raw.direction.len() != dim {
        return Err(CliError::validation(
            format!("{field}.direction"),
            format!("expected {dim} integers for mode {}, got {}", mode.as_str(), raw.direction.len()),
        ));
    }
    if raw.direction.iter().all(|c| *c == 0) {
        return Err(CliError::validation(format!("{field}.direction"), "direction must be nonzero"));
    }
    if raw.origin.len() != dim {
        return Err(CliError::validation(
            format!("{field}.origin"),
            format!("expected {dim} rational strings for mode {}, got {}", mode.as_str(), raw.origin.len()),
        ));
    }
    let origin = raw
        .origin
        .iter()
        .enumerate()
        .map(|(i, s)| {
            parse_rational(s.trim())
                .map(|r| frac(&r))
                .ok_or_else(|| CliError::validation(format!("{field}.origin[{i}]"), format!("not a rational \"p\" or \"p/q\": {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    Ok(CurveRecord {
        direction: raw.direction,
        origin,
    })
}

pub fn parse_input(text: &str) -> Result<InputConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse {
            message: inner.to_string(),
            field: (path != ".").then_some(path),
            line: inner.line(),
            column: inner.column(),
        }
    })?;
    let mode = raw.mode;
    let curves = |list: Vec<RawCurve>, label: &str| -> Result<Vec<CurveRecord>, CliError> {
        if list.is_empty() {
            return Err(CliError::validation(label, "collection must not be empty"));
        }
        list.into_iter()
            .enumerate()
            .map(|(i, c)| parse_curve(c, mode, &format!("{label}[{i}]")))
            .collect()
    };
    let gamma = curves(raw.gamma, "gamma")?;
    let upsilon = curves(raw.upsilon, "upsilon")?;
    let kmax = match raw.options.kmax {
        None => None,
        Some(RawCount::Count(n)) => Some(parse_count(&n.to_string()).map_err(|m| CliError::validation("options.kmax", m))?),
        Some(RawCount::Word(w)) => Some(parse_count(&w).map_err(|m| CliError::validation("options.kmax", m))?),
    };
    if let Some(ts) = &raw.options.t {
        if ts.is_empty() {
            return Err(CliError::validation("options.t", "at least one heat time is required"));
        }
    }
    Ok(InputConfig {
        mode,
        gamma,
        upsilon,
        options: Options {
            t: raw.options.t,
            kmax,
            tol: raw.options.tol,
            require_trivial: raw.options.require_trivial.unwrap_or(false),
        },
    })
}

fn lattice(direction: &[i64]) -> LatticeVector {
    LatticeVector::new(direction[0], direction[1], direction[2])
}

impl InputConfig {
    pub fn to_json(&self) -> String {
        let curves = |list: &[CurveRecord]| {
            list.iter()
                .map(|c| RawCurve {
                    direction: c.direction.clone(),
                    origin: c.origin.iter().map(format_rational).collect(),
                })
                .collect()
        };
        let raw = RawConfig {
            mode: self.mode,
            gamma: curves(&self.gamma),
            upsilon: curves(&self.upsilon),
            options: RawOptions {
                t: self.options.t.clone(),
                kmax: self.options.kmax.map(|k| match k {
                    TermCount::Auto => RawCount::Word("auto".into()),
                    TermCount::Fixed(n) => RawCount::Count(n),
                }),
                tol: self.options.tol,
                require_trivial: Some(self.options.require_trivial),
            },
        };
        serde_json::to_string(&raw).expect("config serializes")
    }

    fn require_mode(&self, mode: Mode) -> Result<(), CliError> {
        if self.mode == mode {
            Ok(())
        } else {
            Err(CliError::validation(
                "mode",
                format!("this command needs mode {}, input has mode {}", mode.as_str(), self.mode.as_str()),
            ))
        }
    }

    pub fn t3_collections(&self) -> Result<(MultiGeodesic, MultiGeodesic), CliError> {
        self.require_mode(Mode::T3)?;
        let build = |list: &[CurveRecord]| -> Result<MultiGeodesic, CliError> {
            let comps = list
                .iter()
                .map(|c| {
                    let origin = [c.origin[0].clone(), c.origin[1].clone(), c.origin[2].clone()];
                    Geodesic::new(lattice(&c.direction), origin)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MultiGeodesic::new(comps)?)
        };
        Ok((build(&self.gamma)?, build(&self.upsilon)?))
    }

    pub fn t2_collections(&self) -> Result<(Vec<T2Geodesic>, Vec<T2Geodesic>), CliError> {
        self.require_mode(Mode::T2)?;
        let build = |list: &[CurveRecord]| -> Result<Vec<T2Geodesic>, CliError> {
            list.iter()
                .map(|c| {
                    T2Geodesic::new([c.direction[0], c.direction[1]], [c.origin[0].clone(), c.origin[1].clone()])
                        .map_err(CliError::from)
                })
                .collect()
        };
        Ok((build(&self.gamma)?, build(&self.upsilon)?))
    }
}
