//! Deterministic serialization of reports.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::config::{Command, Format};
use crate::error::CliError;
use crate::report::{Status, VerificationReport};

pub const VOLUME_COLUMNS: [&str; 5] = ["g", "V_g", "vol(M_g)", "vol(M_g)/g", "abs_error_bound"];
pub const SLOPE_COLUMNS: [&str; 6] = ["g", "p", "q", "delta", "length_sq", "verdict"];
pub const CLAIM_COLUMNS: [&str; 5] = ["g", "claim", "location", "status", "witness"];

fn ser_err(e: impl std::fmt::Display) -> CliError {
    CliError::Serialize(e.to_string())
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
    }
}

pub fn emit_report(rep: &VerificationReport, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(rep).map_err(ser_err)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => emit_csv(rep),
        Format::Text => Ok(emit_text(rep).into_bytes()),
    }
}

/// Volume and slope commands emit their tables; everything else emits one row per claim.
fn emit_csv(rep: &VerificationReport) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match rep.parameters.command {
        Command::Volume => {
            w.write_record(VOLUME_COLUMNS).map_err(ser_err)?;
            for r in &rep.volume_table {
                w.write_record([
                    r.g.to_string(),
                    r.v_g.to_string(),
                    r.vol_mg.to_string(),
                    r.vol_per_g.to_string(),
                    r.abs_error_bound.to_string(),
                ])
                .map_err(ser_err)?;
            }
        }
        Command::Slopes => {
            w.write_record(SLOPE_COLUMNS).map_err(ser_err)?;
            for r in &rep.slope_table {
                w.write_record([
                    r.g.to_string(),
                    r.p.to_string(),
                    r.q.to_string(),
                    r.delta.to_string(),
                    r.length_sq.to_string(),
                    r.verdict.to_string(),
                ])
                .map_err(ser_err)?;
            }
        }
        _ => {
            w.write_record(CLAIM_COLUMNS).map_err(ser_err)?;
            for e in &rep.entries {
                w.write_record([
                    e.g.map(|g| g.to_string()).unwrap_or_default(),
                    e.claim.clone(),
                    e.location.clone(),
                    status_word(e.status).to_lowercase(),
                    serde_json::to_string(&e.witness).map_err(ser_err)?,
                ])
                .map_err(ser_err)?;
            }
        }
    }
    w.into_inner().map_err(ser_err)
}

/// Short witness for text output: scalar fields only.
fn brief(w: &serde_json::Value) -> String {
    match w {
        serde_json::Value::Object(map) => map
            .iter()
            .filter(|(_, v)| v.is_number() || v.is_boolean() || v.is_string())
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn emit_text(rep: &VerificationReport) -> String {
    let mut s = String::new();
    let p = &rep.parameters;
    s += &format!(
        "{} v{}  command={:?}  genera={:?}  tol={:e}  bound={}  k={}\n",
        rep.schema, rep.version, p.command, p.genera, p.quadrature_tol, p.coeff_bound, p.k
    );
    for e in &rep.entries {
        let g =
            e.g.map(|g| format!("g={g}"))
                .unwrap_or_else(|| "sweep".into());
        s += &format!(
            "{} {:<6} {:<22} [{}]",
            status_word(e.status),
            g,
            e.claim,
            e.location
        );
        let b = brief(&e.witness);
        if !b.is_empty() {
            s += &format!("\n       {b}");
        }
        s.push('\n');
    }
    if !rep.volume_table.is_empty() {
        s += &format!(
            "\n{:>5} {:>14} {:>16} {:>14} {:>10}\n",
            "g", "V_g", "vol(M_g)", "vol(M_g)/g", "bound"
        );
        for r in &rep.volume_table {
            s += &format!(
                "{:>5} {:>14.9} {:>16.9} {:>14.9} {:>10.1e}\n",
                r.g, r.v_g, r.vol_mg, r.vol_per_g, r.abs_error_bound
            );
        }
    }
    if !rep.slope_table.is_empty() {
        let flagged: Vec<String> = rep
            .slope_table
            .iter()
            .filter(|r| r.verdict != gex_core::Verdict::Hyperbolic)
            .map(|r| format!("g={} ({}, {}) {}", r.g, r.p, r.q, r.verdict))
            .collect();
        s += &format!(
            "\n{} slopes tabulated; not certified hyperbolic: {}\n",
            rep.slope_table.len(),
            flagged.join(", ")
        );
    }
    let sm = &rep.summary;
    s += &format!(
        "\n{} of {} claims passed: {}\n",
        sm.passed,
        sm.total,
        status_word(sm.status)
    );
    s
}

/// Writes to `path`, or to stdout when no path is given.
pub fn write_output(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;
    use crate::report::run;

    #[test]
    fn volume_csv_has_fixed_columns() {
        let mut cfg = RunConfig::new(Command::Volume);
        cfg.genera = vec![2, 3];
        let rep = run(&cfg, Some(1)).unwrap();
        let out = String::from_utf8(emit_report(&rep, Format::Csv).unwrap()).unwrap();
        let mut lines = out.lines();
        assert_eq!(
            lines.next(),
            Some("g,V_g,vol(M_g),vol(M_g)/g,abs_error_bound")
        );
        assert_eq!(lines.count(), 2);
    }

    #[test]
    fn text_cites_every_location() {
        let mut cfg = RunConfig::new(Command::Canonical);
        cfg.genera = vec![2];
        let rep = run(&cfg, Some(1)).unwrap();
        let text = String::from_utf8(emit_report(&rep, Format::Text).unwrap()).unwrap();
        for e in &rep.entries {
            assert!(text.contains(&e.location));
        }
    }

    #[test]
    fn unwritable_path_reports_the_path() {
        let err = write_output(b"x", Some(Path::new("/nonexistent-dir/out.json"))).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/out.json"));
    }
}
