//! Regenerates the reference tables and diffs them against the embedded data.

use std::fmt::Write as _;

use anyhow::Result;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use symbell::fwsolver::{visibility_search, FWConfig};
use symbell::lucas4::{lij, local_bound_m4};
use symbell::necklaces::{multichoose, necklace_count};
use symbell::reference;
use symbell::sympoly::enumerate_sym_vertices;
use symbell::ScenarioParams;

/// Printed visibilities carry five decimals.
pub const VISIBILITY_TOLERANCE: f64 = 5e-6;
pub const DEFAULT_MAX_COST: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    I,
    II,
    III,
    V,
    Lij,
}

impl Table {
    pub fn id(self) -> &'static str {
        match self {
            Table::I => "I",
            Table::II => "II",
            Table::III => "III",
            Table::V => "V",
            Table::Lij => "Lij",
        }
    }
}

impl std::str::FromStr for Table {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "I" => Ok(Table::I),
            "II" => Ok(Table::II),
            "III" => Ok(Table::III),
            "V" => Ok(Table::V),
            "Lij" => Ok(Table::Lij),
            other => Err(format!(
                "unknown table {other:?} (expected I, II, III, V or Lij)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Match,
    Mismatch,
    /// Reported but not gating: the reference value is only an upper bound.
    Differs,
    Skipped,
}

impl Status {
    fn as_str(&self) -> &'static str {
        match self {
            Status::Match => "ok",
            Status::Mismatch => "MISMATCH",
            Status::Differs => "differs",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub cell: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub table: Table,
    pub max_cost: u128,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn mismatches(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.status == Status::Mismatch)
            .count()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(lines) = reference::table_provenance(self.table.id()) {
            for l in lines {
                let _ = writeln!(s, "# {l}");
            }
        }
        let _ = writeln!(s, "# max_cost={}", self.max_cost);
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.line());
        }
        let count = |st: Status| self.rows.iter().filter(|r| r.status == st).count();
        let _ = writeln!(
            s,
            "# summary: {} ok, {} mismatch, {} differs, {} skipped",
            count(Status::Match),
            count(Status::Mismatch),
            count(Status::Differs),
            count(Status::Skipped)
        );
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "table": self.table.id(),
            "max_cost": self.max_cost.to_string(),
            "mismatches": self.mismatches(),
            "rows": self.rows.iter().map(|r| json!({
                "cell": r.cell,
                "expected": r.expected,
                "computed": r.computed,
                "status": r.status.as_str(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl Row {
    pub fn line(&self) -> String {
        format!(
            "{}\texpected={}\tcomputed={}\t{}",
            self.cell,
            self.expected,
            self.computed,
            self.status.as_str()
        )
    }
}

fn exact_row(cell: String, expected: String, computed: String) -> Row {
    let status = if expected == computed {
        Status::Match
    } else {
        Status::Mismatch
    };
    Row {
        cell,
        expected,
        computed,
        status,
    }
}

fn skipped(cell: String, expected: String, cost: u128) -> Row {
    Row {
        cell,
        expected,
        computed: format!("cost {cost}"),
        status: Status::Skipped,
    }
}

/// Orbit evaluations in one exact pass: `(N−1)`-multisets of `u_m` necklaces.
fn orbit_cost(m: usize, n: usize) -> u128 {
    match necklace_count(m).to_usize() {
        Some(u) => multichoose(u, n - 1),
        None => u128::MAX,
    }
}

pub fn reproduce(table: Table, max_cost: u128) -> Result<Report> {
    reproduce_with_progress(table, max_cost, &mut |_| {})
}

/// Like [`reproduce`], calling `progress` as each row completes.
pub fn reproduce_with_progress(
    table: Table,
    max_cost: u128,
    progress: &mut dyn FnMut(&Row),
) -> Result<Report> {
    let mut emit = |row: Row| {
        progress(&row);
        row
    };
    let rows = match table {
        Table::I => reference::necklace_counts()
            .into_iter()
            .map(|(m, u)| {
                emit(exact_row(
                    format!("m={m}"),
                    u.to_string(),
                    necklace_count(m).to_string(),
                ))
            })
            .collect(),
        Table::II => {
            let mut rows = Vec::new();
            for (m, n, count) in reference::vertex_counts() {
                let cell = format!("m={m} N={n}");
                let cost = orbit_cost(m, n).saturating_mul(1 << m);
                if cost > max_cost {
                    rows.push(emit(skipped(cell, count.to_string(), cost)));
                    continue;
                }
                let set = enumerate_sym_vertices(&ScenarioParams::new(n, m)?, max_cost)?;
                rows.push(emit(exact_row(
                    cell,
                    count.to_string(),
                    set.len().to_string(),
                )));
            }
            rows
        }
        Table::III => reference::m4_local_bounds()
            .into_iter()
            .map(|(n, l)| {
                Ok(emit(exact_row(
                    format!("N={n}"),
                    l.to_string(),
                    local_bound_m4(n)?.to_string(),
                )))
            })
            .collect::<Result<Vec<_>>>()?,
        Table::Lij => reference::lij_values()
            .into_iter()
            .map(|(i, j, v)| {
                emit(exact_row(
                    format!("i={i} j={j}"),
                    v.to_string(),
                    lij(i, j).to_string(),
                ))
            })
            .collect(),
        Table::V => {
            let mut rows = Vec::new();
            let config = FWConfig::default();
            for e in reference::visibilities() {
                let cell = format!("m={} N={}", e.m, e.n);
                let cost = orbit_cost(e.m, e.n);
                if cost > max_cost {
                    rows.push(emit(skipped(cell, e.printed.to_string(), cost)));
                    continue;
                }
                let res = visibility_search(&ScenarioParams::new(e.n, e.m)?, &config)?;
                let v = res.certificate.visibility;
                let close = (v - e.value).abs() <= VISIBILITY_TOLERANCE;
                let status = match (close && res.certificate.certified, e.certified) {
                    (true, _) => Status::Match,
                    (false, true) => Status::Mismatch,
                    (false, false) => Status::Differs,
                };
                rows.push(emit(Row {
                    cell,
                    expected: e.printed.to_string(),
                    computed: format!("{v:.7}"),
                    status,
                }));
            }
            rows
        }
    };
    Ok(Report {
        table,
        max_cost,
        rows,
    })
}
