use std::io::{self, Write};

use clap::ValueEnum;
use coxrig_core::orbits::NilpotentData;
use coxrig_core::rigidity::{CrossCheckReport, RigidityVerdict};
use coxrig_core::rootsys::Family;
use coxrig_core::strata::{NewtonPolygon, StratumJson};
use coxrig_core::Triple;
use serde::Serialize;

use crate::Command;

pub const SCHEMA_VERSION: &str = "1";

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Serialize)]
pub struct GradingRow {
    pub i: i64,
    pub kmp_dim: usize,
    pub coxeter_cartan_dim: usize,
}

#[derive(Debug, Serialize)]
pub struct TypeSummary {
    #[serde(rename = "type")]
    pub ty: String,
    pub condition: &'static str,
    pub rigid: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct TableSummary {
    pub rows: usize,
    pub rigid: usize,
    pub mismatches: Vec<Triple>,
    pub types: Vec<TypeSummary>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Check {
        verdict: RigidityVerdict,
        predicate: bool,
    },
    Table {
        rows: Vec<RigidityVerdict>,
        summary: TableSummary,
    },
    Orbit(NilpotentData),
    Grading {
        #[serde(rename = "type")]
        ty: String,
        h: u32,
        rank: usize,
        exponents: Vec<u32>,
        rows: Vec<GradingRow>,
    },
    Strata(StratumJson),
    Irregularity {
        #[serde(rename = "type")]
        ty: String,
        irregularity: String,
        slopes: NewtonPolygon,
    },
}

fn condition(family: Family, rank: usize) -> &'static str {
    match (family, rank) {
        (Family::A, _) => "r = 1, or m = 0 and r | n-1 or r | n+1 with n = rank+1",
        (Family::B, _) => "r = 1, or m = 0 and r | n+1 or r | 2n+1",
        (Family::C, _) => "r = 1, or m = 0 and r | 2n-1 or r | 2n+1",
        (Family::D, _) => "r = 1, or m = 0 and r | 2n or r | 2n-1",
        (Family::E, 7) => "r = 1, or m = 0 and r = 7",
        _ => "r = 1",
    }
}

impl Payload {
    pub fn table(rows: Vec<RigidityVerdict>, report: CrossCheckReport) -> Self {
        let mut types: Vec<TypeSummary> = Vec::new();
        for v in &rows {
            let name = format!("{}{}", v.family, v.rank);
            if types.last().map(|t| t.ty != name).unwrap_or(true) {
                types.push(TypeSummary {
                    ty: name,
                    condition: condition(v.family, v.rank),
                    rigid: Vec::new(),
                });
            }
            if v.rigid {
                types.last_mut().unwrap().rigid.push(format!("r={} m={}", v.r, v.m));
            }
        }
        Payload::Table {
            summary: TableSummary {
                rows: report.checked,
                rigid: report.rigid,
                mismatches: report.mismatches,
                types,
            },
            rows,
        }
    }
}

#[derive(Serialize)]
struct OutputRecord<'a> {
    schema_version: &'static str,
    command: &'a str,
    payload: &'a Payload,
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Table { .. } => "table",
        Command::Orbit { .. } => "orbit",
        Command::Grading { .. } => "grading",
        Command::Strata { .. } => "strata",
        Command::Irregularity { .. } => "irregularity",
    }
}

type BoxResult = Result<(), Box<dyn std::error::Error>>;

pub fn emit(command: &str, payload: &Payload, format: Format) -> BoxResult {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            let rec = OutputRecord {
                schema_version: SCHEMA_VERSION,
                command,
                payload,
            };
            serde_json::to_writer_pretty(&mut out, &rec)?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(&mut out, payload)?,
        Format::Text => write_text(&mut out, payload)?,
    }
    out.flush()?;
    Ok(())
}

fn partition_cell(p: &Option<coxrig_core::orbits::Partition>) -> String {
    p.as_ref()
        .map(|p| p.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .unwrap_or_default()
}

fn write_csv<W: Write>(out: W, payload: &Payload) -> BoxResult {
    let mut w = csv::Writer::from_writer(out);
    match payload {
        Payload::Check { verdict, .. } => w.serialize(verdict)?,
        Payload::Table { rows, .. } => {
            if rows.is_empty() {
                w.write_record(["family", "rank", "r", "m", "irr0", "dimI0", "dimIinf", "dimI", "n", "rigid", "method"])?;
            }
            for v in rows {
                w.serialize(v)?;
            }
        }
        Payload::Orbit(d) => {
            w.write_record(["family", "rank", "r", "jordan", "dual", "dimC", "dimO", "method"])?;
            w.write_record([
                d.family.to_string(),
                d.rank.to_string(),
                d.r.to_string(),
                partition_cell(&d.jordan),
                partition_cell(&d.dual),
                d.dim_centralizer.to_string(),
                d.dim_orbit.to_string(),
                d.method.to_string(),
            ])?;
        }
        Payload::Grading { rows, .. } => {
            for r in rows {
                w.serialize(r)?;
            }
        }
        Payload::Strata(s) => {
            w.write_record(["depth", "fundamental", "regular_singular", "leading_terms"])?;
            w.write_record([
                s.depth.clone(),
                s.fundamental.to_string(),
                s.regular_singular.to_string(),
                s.leading.len().to_string(),
            ])?;
        }
        Payload::Irregularity { ty, irregularity, slopes } => {
            w.write_record(["type", "irregularity", "slope", "multiplicity"])?;
            for (s, k) in &slopes.slopes {
                w.write_record([ty.clone(), irregularity.clone(), s.to_string(), k.to_string()])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn verdict_line(v: &RigidityVerdict) -> String {
    format!(
        "{}{} r={} m={}: n={} {} (irr0={} dimI0={} dimIinf={} dimI={}, {})",
        v.family,
        v.rank,
        v.r,
        v.m,
        v.n_value,
        if v.rigid { "rigid" } else { "not rigid" },
        v.irr0,
        v.dim_g_i0,
        v.dim_g_iinf,
        v.dim_g_i,
        v.method
    )
}

fn write_text<W: Write>(mut out: W, payload: &Payload) -> BoxResult {
    match payload {
        Payload::Check { verdict, predicate } => {
            writeln!(out, "{}", verdict_line(verdict))?;
            writeln!(out, "classification predicts {}", if *predicate { "rigid" } else { "not rigid" })?;
        }
        Payload::Table { rows, summary } => {
            for v in rows {
                writeln!(out, "{}", verdict_line(v))?;
            }
            for t in &summary.types {
                writeln!(out, "{:<4} {:<55} rigid: {}", t.ty, t.condition, t.rigid.join(", "))?;
            }
            writeln!(
                out,
                "{} rows, {} rigid, {} mismatches",
                summary.rows,
                summary.rigid,
                summary.mismatches.len()
            )?;
        }
        Payload::Orbit(d) => {
            writeln!(out, "{}{} r={}", d.family, d.rank, d.r)?;
            if let (Some(j), Some(dual)) = (&d.jordan, &d.dual) {
                writeln!(out, "jordan type {j}, dual {dual}")?;
            }
            if let Some(l) = &d.labels {
                writeln!(out, "orbit {l}")?;
            }
            writeln!(out, "dim C(N_r) = {}, dim O = {} ({})", d.dim_centralizer, d.dim_orbit, d.method)?;
        }
        Payload::Grading { ty, h, rank, exponents, rows } => {
            writeln!(out, "{ty}: h={h} rank={rank} exponents={exponents:?}")?;
            writeln!(out, "{:>4} {:>8} {:>15}", "i", "kmp_dim", "coxeter_cartan")?;
            for r in rows {
                writeln!(out, "{:>4} {:>8} {:>15}", r.i, r.kmp_dim, r.coxeter_cartan_dim)?;
            }
        }
        Payload::Strata(s) => {
            writeln!(
                out,
                "depth {} fundamental={} regular_singular={} ({} leading terms)",
                s.depth,
                s.fundamental,
                s.regular_singular,
                s.leading.len()
            )?;
        }
        Payload::Irregularity { ty, irregularity, slopes } => {
            writeln!(out, "{ty}: irregularity {irregularity}")?;
            for (s, k) in &slopes.slopes {
                writeln!(out, "  slope {s} x{k}")?;
            }
        }
    }
    Ok(())
}
