//! Report assembly: runs the claim checkers and collects order-stable entries.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use gex_core::slopes::slope_rows;
use gex_core::volume::{volume_row, VolumeRow};
use gex_core::{angles, build_cusp_torus, build_triangulation, Verdict};

use crate::claims::{
    claim, claims_for, volume_limit, CheckInputs, VOLUME_LIMIT_ID, VOLUME_LIMIT_LOCATION,
};
use crate::config::{Command, RunConfig};
use crate::error::CliError;

pub const REPORT_SCHEMA: &str = "gex.report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(b: bool) -> Self {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    /// `None` for claims spanning several genera.
    pub g: Option<usize>,
    pub claim: String,
    pub location: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub status: Status,
}

/// Echo of the inputs that determine the report contents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunParameters {
    pub command: Command,
    pub genera: Vec<usize>,
    pub volume_genera: Vec<usize>,
    pub quadrature_tol: f64,
    pub coeff_bound: i64,
    pub k: f64,
    pub deep: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeTableRow {
    pub g: usize,
    pub p: i64,
    pub q: i64,
    pub delta: u64,
    pub length_sq: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub version: u32,
    pub parameters: RunParameters,
    pub entries: Vec<ReportEntry>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub volume_table: Vec<VolumeRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slope_table: Vec<SlopeTableRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.status == Status::Pass
    }
}

fn summarize(entries: &[ReportEntry]) -> Summary {
    let passed = entries.iter().filter(|e| e.status == Status::Pass).count();
    Summary {
        total: entries.len(),
        passed,
        failed: entries.len() - passed,
        status: Status::from_bool(passed == entries.len()),
    }
}

fn entry(
    g: Option<usize>,
    id: &str,
    location: &str,
    outcome: gex_core::Result<(bool, Value)>,
) -> ReportEntry {
    let (status, witness) = match outcome {
        Ok((pass, w)) => (Status::from_bool(pass), w),
        Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
    };
    ReportEntry {
        g,
        claim: id.to_string(),
        location: location.to_string(),
        status,
        witness,
    }
}

/// Thread cap from `GEX_MAX_THREADS`; unset means rayon's default.
pub fn max_threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("GEX_MAX_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "GEX_MAX_THREADS must be a positive integer, got '{s}'"
            ))),
        },
    }
}

/// Runs every claim selected by `cfg`, in parallel over genera when allowed.
pub fn run(cfg: &RunConfig, max_threads: Option<usize>) -> Result<VerificationReport, CliError> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = max_threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| assemble(cfg)))
}

fn assemble(cfg: &RunConfig) -> VerificationReport {
    let inputs = CheckInputs {
        quadrature_tol: cfg.quadrature_tol,
        coeff_bound: cfg.coeff_bound,
        k: cfg.k,
    };
    let ids = claims_for(cfg.command);
    let mut entries: Vec<ReportEntry> = cfg
        .genera
        .par_iter()
        .flat_map_iter(|&g| {
            ids.iter().map(move |id| {
                let c = claim(id).expect("claim ids come from the table");
                entry(Some(g), c.id, c.location, (c.check)(g, &inputs))
            })
        })
        .collect();

    let with_volume = matches!(cfg.command, Command::Volume | Command::All);
    let volume_genera = if with_volume {
        cfg.volume_genera()
    } else {
        Vec::new()
    };
    let mut volume_table = Vec::new();
    if with_volume {
        let rows: Vec<(usize, gex_core::Result<VolumeRow>)> = volume_genera
            .par_iter()
            .map(|&g| (g, volume_row(g, cfg.quadrature_tol)))
            .collect();
        let vc = claim("volume.value").expect("volume claim is registered");
        for (g, row) in rows {
            let outcome = row.clone().map(|r| {
                let allowed = (2 * g + 2) as f64 * cfg.quadrature_tol;
                (
                    r.abs_error_bound <= allowed,
                    json!({ "row": r, "allowed_error": allowed }),
                )
            });
            entries.push(entry(Some(g), vc.id, vc.location, outcome));
            if let Ok(r) = row {
                volume_table.push(r);
            }
        }
        if volume_genera.len() >= 2 {
            let outcome = if volume_table.len() == volume_genera.len() {
                Ok(volume_limit(&volume_table))
            } else {
                Ok((
                    false,
                    json!({ "error": "volume unavailable for some genera" }),
                ))
            };
            entries.push(entry(None, VOLUME_LIMIT_ID, VOLUME_LIMIT_LOCATION, outcome));
        }
    }

    let slope_table = if cfg.command == Command::Slopes {
        slope_table(&cfg.genera, cfg.coeff_bound)
    } else {
        Vec::new()
    };

    entries.sort_by(|a, b| {
        (a.g.unwrap_or(usize::MAX), &a.claim).cmp(&(b.g.unwrap_or(usize::MAX), &b.claim))
    });
    let summary = summarize(&entries);
    VerificationReport {
        schema: REPORT_SCHEMA.into(),
        version: REPORT_VERSION,
        parameters: RunParameters {
            command: cfg.command,
            genera: cfg.genera.clone(),
            volume_genera,
            quadrature_tol: cfg.quadrature_tol,
            coeff_bound: cfg.coeff_bound,
            k: cfg.k,
            deep: cfg.deep,
        },
        entries,
        summary,
        volume_table,
        slope_table,
    }
}

fn slope_table(genera: &[usize], bound: i64) -> Vec<SlopeTableRow> {
    let per_g: Vec<Vec<SlopeTableRow>> = genera
        .par_iter()
        .map(|&g| {
            let ct = match angles(g).and_then(|a| build_cusp_torus(&build_triangulation(g)?, &a)) {
                Ok(ct) => ct,
                Err(_) => return Vec::new(),
            };
            slope_rows(&ct, bound)
                .into_iter()
                .map(|r| SlopeTableRow {
                    g,
                    p: r.p,
                    q: r.q,
                    delta: r.delta,
                    length_sq: r.length_sq,
                    verdict: r.verdict,
                })
                .collect()
        })
        .collect();
    per_g.into_iter().flatten().collect()
}
