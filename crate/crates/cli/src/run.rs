//! Command dispatch and report assembly.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::Serialize;

use torus_link_core::geodesic::{are_disjoint, require_trivial};
use torus_link_core::oracle::oracle_link_traced;
use torus_link_core::rational::{format_rational, to_f64};
use torus_link_core::spectral::{convergence_warnings, covering_cutoff, pair_series};
use torus_link_core::t2::{intersection_data, lifted_closed_form, lifted_oracle_link, pair_corollary, warnings as t2_warnings};
use torus_link_core::{
    corollary_link, general_series, linking_number, primitive_orthogonal, Error, LinkReport, MultiGeodesic,
    SpectralParams, TermCount,
};

use crate::config::InputConfig;
use crate::error::CliError;
use crate::json::{big, num, Num};

pub const DEFAULT_T_SCHEDULE: [f64; 3] = [1e-2, 1e-3, 1e-4];
pub const DEFAULT_SPECTRAL_T: f64 = 1e-4;
pub const DEFAULT_TOL: f64 = 1e-5;
/// Above this sup-norm cutoff the general series is skipped as too costly.
pub const GENERAL_SERIES_MAX_CUTOFF: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    ClosedForm,
    Spectral,
    Oracle,
    Verify,
    T2,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ClosedForm => "closed-form",
            Command::Spectral => "spectral",
            Command::Oracle => "oracle",
            Command::Verify => "verify",
            Command::T2 => "t2",
        }
    }
}

/// Command-line settings; each falls back to the input's `options`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOptions {
    pub t: Vec<f64>,
    pub kmax: Option<TermCount>,
    pub tol: Option<f64>,
    pub require_trivial: bool,
}

#[derive(Serialize)]
pub struct ClosedFormPair {
    gamma: usize,
    upsilon: usize,
    beta: Option<Vec<Num>>,
    det: Num,
    frac_mu_beta: String,
    value: String,
}

#[derive(Serialize)]
pub struct ClosedFormSection {
    total: String,
    total_f64: Num,
    is_integer: bool,
    pairs: Vec<ClosedFormPair>,
}

#[derive(Serialize)]
pub struct SpectralPair {
    gamma: usize,
    upsilon: usize,
    terms: u64,
    value: Num,
}

#[derive(Serialize)]
pub struct SpectralSection {
    t: Num,
    kmax: String,
    pair_series: Num,
    frequency_cutoff: u64,
    /// `null` when the cutoff exceeds [`GENERAL_SERIES_MAX_CUTOFF`].
    general_series: Option<Num>,
    pairs: Vec<SpectralPair>,
}

#[derive(Serialize)]
pub struct OracleSection {
    value: i64,
    apex: Vec<String>,
    attempts: usize,
}

#[derive(Serialize)]
pub struct T2Point {
    point: [Num; 2],
    sign: i32,
}

#[derive(Serialize)]
pub struct T2Pair {
    gamma: usize,
    upsilon: usize,
    det2: i64,
    angle_x: Option<Num>,
    value: Num,
    points: Vec<T2Point>,
}

#[derive(Serialize)]
pub struct T2Section {
    corollary: Num,
    nearest_integer: i64,
    lifted_closed_form: Num,
    oracle_on_lifts: Option<i64>,
    pairs: Vec<T2Pair>,
}

#[derive(Serialize)]
pub struct Agreement {
    tolerance: Num,
    t: Num,
    spectral_error: Num,
    oracle_matches: bool,
    verdict: &'static str,
}

#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<Vec<SpectralSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t2: Option<T2Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<Agreement>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    summary: Vec<String>,
    #[serde(skip)]
    passed: bool,
}

impl Report {
    fn new(command: Command, config: &InputConfig) -> Self {
        Report {
            command: command.name(),
            mode: config.mode.as_str(),
            closed_form: None,
            spectral: None,
            oracle: None,
            t2: None,
            agreement: None,
            warnings: Vec::new(),
            summary: Vec::new(),
            passed: true,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Human-readable rendering for `--pretty`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "torus-link {} ({})", self.command, self.mode);
        for line in &self.summary {
            let _ = writeln!(out, "  {line}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        out
    }

    /// 0 on success, 2 when a verification disagreed.
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            2
        }
    }
}

fn closed_form_section(report: &LinkReport) -> ClosedFormSection {
    ClosedFormSection {
        total: format_rational(&report.total),
        total_f64: num(to_f64(&report.total)),
        is_integer: report.is_integer,
        pairs: report
            .terms
            .iter()
            .map(|t| ClosedFormPair {
                gamma: t.gamma_index,
                upsilon: t.upsilon_index,
                beta: t.beta.as_ref().map(|b| b.0.iter().map(big).collect()),
                det: big(&t.det3),
                frac_mu_beta: format_rational(&t.mu_dot_beta_frac),
                value: format_rational(&t.value),
            })
            .collect(),
    }
}

fn check_cross_disjoint(gamma: &MultiGeodesic, upsilon: &MultiGeodesic) -> Result<(), CliError> {
    for (i, g) in gamma.components().iter().enumerate() {
        for (j, h) in upsilon.components().iter().enumerate() {
            if !are_disjoint(g, h) {
                return Err(Error::IntersectingCurves(format!("gamma[{i}] meets upsilon[{j}]")).into());
            }
        }
    }
    Ok(())
}

fn spectral_section(
    gamma: &MultiGeodesic,
    upsilon: &MultiGeodesic,
    params: &SpectralParams,
    warnings: &mut Vec<String>,
) -> Result<SpectralSection, CliError> {
    params.validate()?;
    let mut pairs = Vec::new();
    let mut total = torus_link_core::spectral::CompensatedSum::default();
    for (i, g) in gamma.components().iter().enumerate() {
        for (j, h) in upsilon.components().iter().enumerate() {
            let terms = match primitive_orthogonal(g.direction(), h.direction()) {
                Ok(beta) => params.resolve_kmax(beta.norm_sq().to_f64().unwrap_or(f64::INFINITY))?,
                Err(_) => 0,
            };
            let value = pair_series(g, h, params)?;
            total.add(value);
            pairs.push(SpectralPair {
                gamma: i,
                upsilon: j,
                terms,
                value: num(value),
            });
        }
    }
    let cutoff = covering_cutoff(gamma.components(), upsilon.components(), params)?;
    let general = if cutoff <= GENERAL_SERIES_MAX_CUTOFF {
        let params = params.with_frequency_cutoff(TermCount::Fixed(cutoff));
        Some(general_series(gamma.components(), upsilon.components(), &params)?)
    } else {
        warnings.push(format!(
            "general series skipped at t = {}: frequency cutoff {cutoff} exceeds {GENERAL_SERIES_MAX_CUTOFF}",
            params.heat_time
        ));
        None
    };
    for w in convergence_warnings(gamma, upsilon, params) {
        if !warnings.contains(&w) {
            warnings.push(w);
        }
    }
    Ok(SpectralSection {
        t: num(params.heat_time),
        kmax: match params.kmax {
            TermCount::Auto => "auto".into(),
            TermCount::Fixed(n) => n.to_string(),
        },
        pair_series: num(total.value()),
        frequency_cutoff: cutoff,
        general_series: general.map(num),
        pairs,
    })
}

fn heat_times(opts: &RunOptions, config: &InputConfig, default: &[f64]) -> Vec<f64> {
    if !opts.t.is_empty() {
        opts.t.clone()
    } else if let Some(t) = &config.options.t {
        t.clone()
    } else {
        default.to_vec()
    }
}

fn spectral_params(t: f64, opts: &RunOptions, config: &InputConfig) -> SpectralParams {
    let kmax = opts.kmax.or(config.options.kmax).unwrap_or(TermCount::Auto);
    SpectralParams::new(t).with_kmax(kmax)
}

fn collection_warnings(gamma: &MultiGeodesic, upsilon: &MultiGeodesic) -> Vec<String> {
    let mut w = gamma.warnings("gamma");
    w.extend(upsilon.warnings("upsilon"));
    w
}

pub fn run(command: Command, config: &InputConfig, opts: &RunOptions) -> Result<Report, CliError> {
    let require = opts.require_trivial || config.options.require_trivial;
    let mut report = Report::new(command, config);
    match command {
        Command::ClosedForm => {
            let (gamma, upsilon) = config.t3_collections()?;
            let lk = linking_number(&gamma, &upsilon, require)?;
            report.summary.push(format!("closed form: {}", format_rational(&lk.total)));
            report.warnings = lk.warnings.clone();
            report.closed_form = Some(closed_form_section(&lk));
        }
        Command::Spectral => {
            let (gamma, upsilon) = config.t3_collections()?;
            if require {
                require_trivial(&gamma)?;
                require_trivial(&upsilon)?;
            }
            check_cross_disjoint(&gamma, &upsilon)?;
            let mut warnings = collection_warnings(&gamma, &upsilon);
            let mut sections = Vec::new();
            for t in heat_times(opts, config, &[DEFAULT_SPECTRAL_T]) {
                let section = spectral_section(&gamma, &upsilon, &spectral_params(t, opts, config), &mut warnings)?;
                report
                    .summary
                    .push(format!("spectral at t = {t:e}: {}", section.pair_series.get()));
                sections.push(section);
            }
            report.warnings = warnings;
            report.spectral = Some(sections);
        }
        Command::Oracle => {
            let (gamma, upsilon) = config.t3_collections()?;
            let outcome = oracle_link_traced(&gamma, &upsilon)?;
            report.summary.push(format!("oracle: {} (apex attempt {})", outcome.value, outcome.attempts));
            report.warnings = collection_warnings(&gamma, &upsilon);
            report.oracle = Some(OracleSection {
                value: outcome.value,
                apex: outcome.apex.iter().map(format_rational).collect(),
                attempts: outcome.attempts,
            });
        }
        Command::Verify => {
            let (gamma, upsilon) = config.t3_collections()?;
            let lk = linking_number(&gamma, &upsilon, true)?;
            let exact = to_f64(&lk.total);
            let mut warnings = lk.warnings.clone();
            let outcome = oracle_link_traced(&gamma, &upsilon)?;
            let mut times = heat_times(opts, config, &DEFAULT_T_SCHEDULE);
            times.sort_by(|a, b| b.total_cmp(a));
            let mut sections = Vec::new();
            let mut last_error = f64::NAN;
            for &t in &times {
                let section = spectral_section(&gamma, &upsilon, &spectral_params(t, opts, config), &mut warnings)?;
                let pair: f64 = section.pair_series.get().parse().unwrap_or(f64::NAN);
                let mut err = (pair - exact).abs();
                if let Some(g) = &section.general_series {
                    let g: f64 = g.get().parse().unwrap_or(f64::NAN);
                    err = err.max((g - exact).abs());
                }
                last_error = err;
                sections.push(section);
            }
            let tol = opts.tol.or(config.options.tol).unwrap_or(DEFAULT_TOL);
            let smallest = *times.last().expect("at least one heat time");
            let oracle_matches = lk.total == torus_link_core::rational::int(outcome.value);
            let pass = last_error <= tol && oracle_matches;
            report.summary.push(format!("closed form: {}", format_rational(&lk.total)));
            report.summary.push(format!("oracle: {}", outcome.value));
            report
                .summary
                .push(format!("spectral error at t = {smallest:e}: {last_error:e} (tolerance {tol:e})"));
            report.summary.push(format!("verdict: {}", if pass { "pass" } else { "fail" }));
            report.closed_form = Some(closed_form_section(&lk));
            report.spectral = Some(sections);
            report.oracle = Some(OracleSection {
                value: outcome.value,
                apex: outcome.apex.iter().map(format_rational).collect(),
                attempts: outcome.attempts,
            });
            report.agreement = Some(Agreement {
                tolerance: num(tol),
                t: num(smallest),
                spectral_error: num(last_error),
                oracle_matches,
                verdict: if pass { "pass" } else { "fail" },
            });
            report.warnings = warnings;
            report.passed = pass;
        }
        Command::T2 => {
            let (gamma, upsilon) = config.t2_collections()?;
            let value = corollary_link(&gamma, &upsilon)?;
            let lifted = lifted_closed_form(&gamma, &upsilon)?;
            let mut warnings = t2_warnings(&gamma, "gamma");
            warnings.extend(t2_warnings(&upsilon, "upsilon"));
            let oracle = match lifted_oracle_link(&gamma, &upsilon) {
                Ok(v) => Some(v),
                Err(e @ (Error::Degenerate(_) | Error::PersistentDegeneracy(_))) => {
                    warnings.push(format!("oracle on rationalized lifts unavailable: {e}"));
                    None
                }
                Err(e) => return Err(e.into()),
            };
            let mut pairs = Vec::new();
            for (i, g) in gamma.iter().enumerate() {
                for (j, h) in upsilon.iter().enumerate() {
                    let [a, b] = [g.direction(), h.direction()];
                    let det2 = a[0] * b[1] - a[1] * b[0];
                    let points = if det2 == 0 { Vec::new() } else { intersection_data(g, h)? };
                    pairs.push(T2Pair {
                        gamma: i,
                        upsilon: j,
                        det2,
                        angle_x: points.first().map(|p| num(p.angle_x)),
                        value: num(pair_corollary(g, h)),
                        points: points
                            .iter()
                            .map(|p| T2Point {
                                point: [num(p.point[0]), num(p.point[1])],
                                sign: p.sign,
                            })
                            .collect(),
                    });
                }
            }
            report.summary.push(format!("corollary: {value}"));
            report.summary.push(format!("closed form on lifts: {lifted}"));
            if let Some(o) = oracle {
                report.summary.push(format!("oracle on lifts: {o}"));
            }
            report.t2 = Some(T2Section {
                corollary: num(value),
                nearest_integer: value.round() as i64,
                lifted_closed_form: num(lifted),
                oracle_on_lifts: oracle,
                pairs,
            });
            report.warnings = warnings;
        }
    }
    Ok(report)
}
