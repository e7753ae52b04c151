//! JSON and text rendering of an [`InvariantReport`].

use std::fmt::Write as _;

use gbinv_core::invariants::{CheckStatus, EqualityTable, LastFall, TraceRow};
use gbinv_core::regularity::Regularity;
use gbinv_core::{InvariantReport, Outcome, PolySystem};
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OutcomeJson<T> {
    Ok { value: T },
    NotFound { cap: usize },
    Error { message: String },
    Skipped,
}

impl<T> OutcomeJson<T> {
    fn map<U>(o: &Outcome<U>, f: impl FnOnce(&U) -> T) -> Self {
        match o {
            Outcome::Value(v) => OutcomeJson::Ok { value: f(v) },
            Outcome::NotFound { cap } => OutcomeJson::NotFound { cap: *cap },
            Outcome::Failed(e) => OutcomeJson::Error { message: e.to_string() },
            Outcome::Skipped => OutcomeJson::Skipped,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemJson {
    pub field: u32,
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub degrees: Vec<usize>,
    pub homogeneous: bool,
    pub field_equations: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderJson {
    pub order: String,
    pub solving_degree: OutcomeJson<usize>,
    pub max_gb_degree: OutcomeJson<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FallJson {
    pub polynomial: String,
    pub degree: usize,
    pub reached_at: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LastFallJson {
    pub value: usize,
    pub falls: Vec<FallJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiJson {
    pub i: usize,
    pub j: usize,
    pub value: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityJson {
    pub value: usize,
    pub certified: bool,
    pub jmax: usize,
    /// Nonzero graded Betti numbers of the quotient ring.
    pub betti: Vec<BettiJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsJson {
    pub cap: usize,
    pub orders: Vec<OrderJson>,
    pub last_fall_degree: OutcomeJson<LastFallJson>,
    pub first_fall_degree: OutcomeJson<usize>,
    pub degree_of_regularity: OutcomeJson<usize>,
    pub regularity: OutcomeJson<RegularityJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRowJson {
    pub d: usize,
    pub dim_v: usize,
    pub dim_next_truncated: usize,
    pub ideal_dim: u64,
    pub stable: bool,
    pub saturated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableJson {
    pub rows: Vec<TableRowJson>,
    pub stable_from: Option<usize>,
    pub saturated_from: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub status: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceJson {
    pub d: usize,
    pub dim_v: usize,
    pub ideal_dim: u64,
    pub rows_added: usize,
    pub falls: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TimingJson {
    pub total_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub schema: u32,
    pub system: SystemJson,
    pub invariants: InvariantsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<OutcomeJson<TableJson>>,
    pub checks: Vec<CheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<TimingJson>,
}

fn status_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Info => "info",
        CheckStatus::NotApplicable => "not_applicable",
    }
}

fn table_json(t: &EqualityTable) -> TableJson {
    TableJson {
        rows: t
            .rows
            .iter()
            .map(|r| TableRowJson {
                d: r.d,
                dim_v: r.dim_v,
                dim_next_truncated: r.dim_next_truncated,
                ideal_dim: r.ideal_dim,
                stable: r.stable,
                saturated: r.saturated,
            })
            .collect(),
        stable_from: t.stable_from,
        saturated_from: t.saturated_from,
    }
}

impl ReportJson {
    pub fn new(system: &PolySystem, report: &InvariantReport, trace: bool) -> Self {
        let names = system.var_names();
        let show = |p: &gbinv_core::Polynomial| p.display_with(names).to_string();
        let last_fall = OutcomeJson::map(&report.last_fall, |lf: &LastFall| LastFallJson {
            value: lf.value,
            falls: lf
                .events
                .iter()
                .filter(|e| e.is_fall())
                .map(|e| FallJson {
                    polynomial: show(&e.polynomial),
                    degree: e.degree,
                    reached_at: e.reached_at,
                })
                .collect(),
        });
        let regularity = OutcomeJson::map(&report.regularity, |r: &Regularity| RegularityJson {
            value: r.value,
            certified: r.certified,
            jmax: r.betti.jmax(),
            betti: r
                .betti
                .entries()
                .iter()
                .filter(|(_, &b)| b > 0)
                .map(|(&(i, j), &b)| BettiJson { i, j, value: b })
                .collect(),
        });
        ReportJson {
            schema: SCHEMA,
            system: SystemJson {
                field: system.field().modulus(),
                vars: names.to_vec(),
                generators: system.generators().iter().map(show).collect(),
                degrees: system.degrees(),
                homogeneous: system.is_homogeneous(),
                field_equations: system.contains_field_equations(),
            },
            invariants: InvariantsJson {
                cap: report.cap,
                orders: report
                    .orders
                    .iter()
                    .map(|o| OrderJson {
                        order: o.order.display_with(names).to_string(),
                        solving_degree: OutcomeJson::map(&o.solving_degree, |v| *v),
                        max_gb_degree: OutcomeJson::map(&o.max_gb_degree, |v| *v),
                    })
                    .collect(),
                last_fall_degree: last_fall,
                first_fall_degree: OutcomeJson::map(&report.first_fall, |v| *v),
                degree_of_regularity: OutcomeJson::map(&report.degree_of_regularity, |v| *v),
                regularity,
            },
            table: report.table.as_ref().map(|t| OutcomeJson::map(t, table_json)),
            checks: report
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.to_string(),
                    status: status_name(c.status),
                    detail: c.detail.clone(),
                })
                .collect(),
            trace: trace.then(|| {
                report
                    .trace
                    .iter()
                    .map(|r: &TraceRow| TraceJson {
                        d: r.d,
                        dim_v: r.dim_v,
                        ideal_dim: r.ideal_dim,
                        rows_added: r.rows_added,
                        falls: r.falls.iter().map(show).collect(),
                    })
                    .collect()
            }),
            timing: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn outcome_text<T: std::fmt::Display>(o: &Outcome<T>) -> String {
    outcome_with(o, |v| v.to_string())
}

fn outcome_with<T>(o: &Outcome<T>, f: impl FnOnce(&T) -> String) -> String {
    match o {
        Outcome::Value(v) => f(v),
        Outcome::NotFound { cap } => format!("not found up to degree {}", cap),
        Outcome::Failed(e) => format!("error: {}", e),
        Outcome::Skipped => "-".into(),
    }
}

/// Human-readable summary.
pub fn render_text(system: &PolySystem, report: &InvariantReport, trace: bool) -> String {
    let names = system.var_names();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "system: {} generators in {} variables over F_{}",
        system.generators().len(),
        system.nvars(),
        system.field().modulus()
    );
    for o in &report.orders {
        if matches!(o.solving_degree, Outcome::Skipped) && matches!(o.max_gb_degree, Outcome::Skipped) {
            continue;
        }
        let _ = writeln!(
            out,
            "{:<20} sd = {:<10} maxGB = {}",
            o.order.display_with(names).to_string(),
            outcome_text(&o.solving_degree),
            outcome_text(&o.max_gb_degree)
        );
    }
    if !matches!(report.last_fall, Outcome::Skipped) {
        let _ = writeln!(out, "d_F   = {}", outcome_with(&report.last_fall, |lf| lf.value.to_string()));
    }
    if let Outcome::Value(lf) = &report.last_fall {
        for e in lf.events.iter().filter(|e| e.is_fall()) {
            let _ = writeln!(
                out,
                "        fall: {} (degree {}) in V_{}",
                e.polynomial.display_with(names),
                e.degree,
                e.reached_at
            );
        }
    }
    if !matches!(report.first_fall, Outcome::Skipped) {
        let _ = writeln!(out, "d_ff  = {}", outcome_text(&report.first_fall));
    }
    if !matches!(report.degree_of_regularity, Outcome::Skipped) {
        let _ = writeln!(out, "d_reg = {}", outcome_text(&report.degree_of_regularity));
    }
    if !matches!(report.regularity, Outcome::Skipped) {
        let reg = outcome_with(&report.regularity, |r| {
            format!("{}{}", r.value, if r.certified { "" } else { " (uncertified)" })
        });
        let _ = writeln!(out, "reg   = {}", reg);
    }
    if let Outcome::Value(r) = &report.regularity {
        let _ = write!(out, "{}", r.betti);
    }
    if let Some(t) = &report.table {
        match t {
            Outcome::Value(t) => {
                let mut header = String::from("d  ");
                let mut a = String::from("(a)");
                let mut b = String::from("(b)");
                for r in &t.rows {
                    let w = r.d.to_string().len().max(1) + 1;
                    let _ = write!(header, "{:>w$}", r.d, w = w);
                    let _ = write!(a, "{:>w$}", if r.stable { "✓" } else { "✗" }, w = w);
                    let _ = write!(b, "{:>w$}", if r.saturated { "✓" } else { "✗" }, w = w);
                }
                let _ = writeln!(out, "{}\n{}\n{}", header, a, b);
                if let Some(d) = t.saturated_from {
                    let _ = writeln!(out, "row (b) holds from d = {} on: d_F = {}", d, d);
                }
            }
            Outcome::Failed(e) => {
                let _ = writeln!(out, "table: error: {}", e);
            }
            _ => {}
        }
    }
    for c in &report.checks {
        if c.detail.is_empty() {
            let _ = writeln!(out, "[{}] {}", status_name(c.status), c.name);
        } else {
            let _ = writeln!(out, "[{}] {}: {}", status_name(c.status), c.name, c.detail);
        }
    }
    if trace {
        let _ = writeln!(out, "  d   dim V   dim (F)_d   rows added   falls");
        for r in &report.trace {
            let falls: Vec<String> = r.falls.iter().map(|f| f.display_with(names).to_string()).collect();
            let _ = writeln!(
                out,
                "{:>3} {:>7} {:>11} {:>12}   {}",
                r.d,
                r.dim_v,
                r.ideal_dim,
                r.rows_added,
                falls.join(", ")
            );
        }
    }
    out
}
