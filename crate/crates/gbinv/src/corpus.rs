//! The bundled example corpus and its verification.

use std::collections::BTreeMap;

use gbinv_core::groebner::buchberger;
use gbinv_core::macaulay::lazard_closure;
use gbinv_core::{Analyzer, Limits, Polynomial, TermOrder};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::syntax::{parse_order, parse_polynomial, parse_system, SystemFile};

pub const CORPUS: &str = include_str!("../corpus/corpus.toml");

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub entry: Vec<Entry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub name: String,
    pub source: String,
    pub system: String,
    #[serde(default)]
    pub min_q: Option<u64>,
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub kind: String,
    pub source: String,
    #[serde(default)]
    pub status: Option<String>,
    #[serde(default)]
    pub value: Option<String>,
    #[serde(default)]
    pub order: Option<String>,
    #[serde(default)]
    pub poly: Option<String>,
    #[serde(default)]
    pub polys: Option<Vec<String>>,
    #[serde(default)]
    pub degree: Option<String>,
    #[serde(default)]
    pub rows: Option<Vec<String>>,
    #[serde(default)]
    pub shifts: Option<Vec<String>>,
}

impl Expectation {
    pub fn is_disputed(&self) -> bool {
        self.status.as_deref() == Some("disputed")
    }
}

pub fn load() -> Result<Corpus> {
    toml::from_str(CORPUS).map_err(|e| CliError::Corpus(e.to_string()))
}

/// Evaluates an integer expression in `q` such as `2q-1`, `q+1` or `7`.
pub fn eval_q(expr: &str, q: u64) -> Result<i64> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Corpus(format!("bad expression '{}'", expr));
    if s.is_empty() {
        return Err(bad());
    }
    let mut total: i64 = 0;
    let mut rest = s.as_str();
    let mut sign = 1i64;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    }
    loop {
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        let value = if let Some(coef) = term.strip_suffix('q') {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
            c * q as i64
        } else {
            term.parse::<i64>().map_err(|_| bad())?
        };
        total += sign * value;
        if end == rest.len() {
            break;
        }
        sign = if rest.as_bytes()[end] == b'-' { -1 } else { 1 };
        rest = &rest[end + 1..];
    }
    Ok(total)
}

/// Replaces every `{expr}` with its value at `q`.
pub fn instantiate(template: &str, q: u64) -> Result<String> {
    let mut out = String::with_capacity(template.len());
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..]
            .find('}')
            .ok_or_else(|| CliError::Corpus("unbalanced '{'".into()))?;
        out.push_str(&eval_q(&rest[open + 1..open + close], q)?.to_string());
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

fn eval_usize(expr: &str, q: u64) -> Result<usize> {
    let v = eval_q(expr, q)?;
    usize::try_from(v).map_err(|_| CliError::Corpus(format!("'{}' is negative at q = {}", expr, q)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Disputed,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub entry: String,
    pub kind: String,
    pub expected: String,
    pub actual: String,
    pub verdict: Verdict,
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntrySkip {
    pub entry: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub q: u64,
    pub results: Vec<CheckResult>,
    pub skipped: Vec<EntrySkip>,
}

impl Verification {
    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| r.verdict == Verdict::Fail).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let w_entry = self.results.iter().map(|r| r.entry.len()).max().unwrap_or(5).max(5);
        let w_kind = self.results.iter().map(|r| r.kind.len()).max().unwrap_or(4).max(4);
        let w_exp = self.results.iter().map(|r| r.expected.chars().count()).max().unwrap_or(8).max(8);
        let w_act = self.results.iter().map(|r| r.actual.chars().count()).max().unwrap_or(6).max(6);
        out.push_str(&format!(
            "{:<we$}  {:<wk$}  {:<wx$}  {:<wa$}  verdict\n",
            "entry",
            "kind",
            "expected",
            "actual",
            we = w_entry,
            wk = w_kind,
            wx = w_exp,
            wa = w_act
        ));
        for r in &self.results {
            let v = match r.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Disputed => "DISPUTED",
            };
            out.push_str(&format!(
                "{:<we$}  {:<wk$}  {:<wx$}  {:<wa$}  {}\n",
                r.entry,
                r.kind,
                r.expected,
                r.actual,
                v,
                we = w_entry,
                wk = w_kind,
                wx = w_exp,
                wa = w_act
            ));
        }
        for s in &self.skipped {
            out.push_str(&format!("skipped {}: {}\n", s.entry, s.reason));
        }
        let passed = self.results.iter().filter(|r| r.verdict == Verdict::Pass).count();
        let disputed = self.results.iter().filter(|r| r.verdict == Verdict::Disputed).count();
        out.push_str(&format!(
            "q = {}: {} passed, {} failed, {} disputed\n",
            self.q,
            passed,
            self.failures(),
            disputed
        ));
        out
    }
}

struct Context {
    file: SystemFile,
    analyzer: Analyzer,
    order: TermOrder,
}

impl Context {
    fn order_for(&self, token: Option<&str>) -> Result<TermOrder> {
        match token {
            None => Ok(self.order.clone()),
            Some(t) => {
                let s = &self.file.base;
                parse_order(t, s.var_names(), self.file.hvar.as_deref()).map_err(CliError::Corpus)
            }
        }
    }

    fn poly(&self, text: &str) -> Result<Polynomial> {
        let s = &self.file.base;
        parse_polynomial(text, s.var_names(), s.field(), 0, 0)
    }

    fn show(&self, f: &Polynomial) -> String {
        f.display_with(self.file.base.var_names()).to_string()
    }
}

fn show_opt(v: gbinv_core::Result<Option<usize>>) -> String {
    match v {
        Ok(Some(v)) => v.to_string(),
        Ok(None) => "not found".into(),
        Err(e) => format!("error: {}", e),
    }
}

fn row_string(flags: impl Iterator<Item = bool>) -> String {
    flags.map(|b| if b { '✓' } else { '✗' }).collect()
}

fn check(ctx: &mut Context, ex: &Expectation, q: u64) -> Result<(String, String)> {
    let need = |v: &Option<String>, what: &str| {
        v.clone()
            .ok_or_else(|| CliError::Corpus(format!("{} expectation needs '{}'", ex.kind, what)))
    };
    let value = || -> Result<String> { Ok(eval_q(&need(&ex.value, "value")?, q)?.to_string()) };
    Ok(match ex.kind.as_str() {
        "sd" => {
            let o = ctx.order_for(ex.order.as_deref())?;
            (value()?, show_opt(ctx.analyzer.solving_degree(&o)))
        }
        "maxgb" => {
            let o = ctx.order_for(ex.order.as_deref())?;
            let a = match ctx.analyzer.max_gb_degree(&o) {
                Ok(v) => v.to_string(),
                Err(e) => format!("error: {}", e),
            };
            (value()?, a)
        }
        "lfd" => {
            let drl = TermOrder::degrevlex(ctx.file.base.nvars());
            let a = show_opt(ctx.analyzer.last_fall_degree(&drl).map(|o| o.map(|lf| lf.value)));
            (value()?, a)
        }
        "dff" => (value()?, show_opt(ctx.analyzer.first_fall_degree())),
        "dreg" => {
            let a = match ctx.analyzer.degree_of_regularity() {
                Ok(v) => v.to_string(),
                Err(e) => format!("error: {}", e),
            };
            (value()?, a)
        }
        "reg" => {
            let a = match ctx.analyzer.regularity() {
                Ok(r) if r.certified => r.value.to_string(),
                Ok(r) => format!("{} (uncertified)", r.value),
                Err(e) => format!("error: {}", e),
            };
            (value()?, a)
        }
        "dreg_le_reg" => {
            let a = match (ctx.analyzer.degree_of_regularity(), ctx.analyzer.regularity()) {
                (Ok(d), Ok(r)) if r.certified => (d <= r.value).to_string(),
                (Ok(_), Ok(_)) => "uncertified".into(),
                (Err(e), _) | (_, Err(e)) => format!("error: {}", e),
            };
            ("true".into(), a)
        }
        "betti" => {
            let shifts = ex
                .shifts
                .as_ref()
                .ok_or_else(|| CliError::Corpus("betti expectation needs 'shifts'".into()))?;
            let mut expected: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            for s in shifts {
                let parts: Vec<&str> = s.split(',').collect();
                if parts.len() != 3 {
                    return Err(CliError::Corpus(format!("bad shift '{}'", s)));
                }
                let key = (eval_usize(parts[0], q)?, eval_usize(parts[1], q)?);
                *expected.entry(key).or_default() += eval_usize(parts[2], q)? as u64;
            }
            let fmt = |m: &BTreeMap<(usize, usize), u64>| {
                m.iter()
                    .map(|((i, j), b)| format!("{},{},{}", i, j, b))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let a = match ctx.analyzer.regularity() {
                Ok(r) => {
                    let actual: BTreeMap<(usize, usize), u64> =
                        r.betti.ideal_shifts().into_iter().map(|(i, j, b)| ((i, j), b)).collect();
                    fmt(&actual)
                }
                Err(e) => format!("error: {}", e),
            };
            (fmt(&expected), a)
        }
        "table" => {
            let rows = ex
                .rows
                .as_ref()
                .filter(|r| r.len() == 2)
                .ok_or_else(|| CliError::Corpus("table expectation needs two rows".into()))?;
            let dmax = rows[0].chars().count().saturating_sub(1);
            let a = match ctx.analyzer.degree_equality_table(dmax) {
                Ok(t) => format!(
                    "{} {}",
                    row_string(t.rows.iter().map(|r| r.stable)),
                    row_string(t.rows.iter().map(|r| r.saturated))
                ),
                Err(e) => format!("error: {}", e),
            };
            (format!("{} {}", rows[0], rows[1]), a)
        }
        "gb" => {
            let o = ctx.order_for(ex.order.as_deref())?;
            let polys = ex
                .polys
                .as_ref()
                .ok_or_else(|| CliError::Corpus("gb expectation needs 'polys'".into()))?;
            let mut expected = Vec::new();
            for p in polys {
                let f = ctx.poly(&instantiate(p, q)?)?;
                expected.push(ctx.show(&f.monic(&o)));
            }
            expected.sort();
            let a = match buchberger(&ctx.file.system(), &o, Default::default()) {
                Ok(gb) => {
                    let mut v: Vec<String> = gb.elements().iter().map(|g| ctx.show(g)).collect();
                    v.sort();
                    v.join(", ")
                }
                Err(e) => format!("error: {}", e),
            };
            (expected.join(", "), a)
        }
        "fall" => {
            let f = ctx.poly(&instantiate(&need(&ex.poly, "poly")?, q)?)?;
            let a = match ctx.analyzer.degree_fall_of(&f) {
                Ok(Some(ev)) => ev.reached_at.to_string(),
                Ok(None) => "not found".into(),
                Err(e) => format!("error: {}", e),
            };
            (value()?, a)
        }
        "in_v" => {
            let f = ctx.poly(&instantiate(&need(&ex.poly, "poly")?, q)?)?;
            let d = eval_usize(&need(&ex.degree, "degree")?, q)?;
            let a = match ctx.analyzer.v_space(d).and_then(|v| v.contains(&f)) {
                Ok(b) => b.to_string(),
                Err(e) => format!("error: {}", e),
            };
            ("true".into(), a)
        }
        "not_in_closure" => {
            let f = ctx.poly(&instantiate(&need(&ex.poly, "poly")?, q)?)?;
            let d = eval_usize(&need(&ex.degree, "degree")?, q)?;
            let o = ctx.order_for(ex.order.as_deref())?;
            let a = match lazard_closure(&ctx.file.system(), d, &o).and_then(|c| c.contains(&f)) {
                Ok(b) => (!b).to_string(),
                Err(e) => format!("error: {}", e),
            };
            ("true".into(), a)
        }
        "sd_below_max" => {
            let o = ctx.order_for(ex.order.as_deref())?;
            let drl = TermOrder::degrevlex(ctx.file.base.nvars());
            let sd = ctx.analyzer.solving_degree(&o);
            let lf = ctx.analyzer.last_fall_degree(&drl);
            let mg = ctx.analyzer.max_gb_degree(&o);
            let a = match (sd, lf, mg) {
                (Ok(Some(sd)), Ok(Some(lf)), Ok(mg)) => {
                    format!("{} (sd {}, d_F {}, maxGB {})", sd < lf.value.max(mg), sd, lf.value, mg)
                }
                (Ok(None), _, _) | (_, Ok(None), _) => "not found".into(),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => format!("error: {}", e),
            };
            ("true".into(), a)
        }
        other => return Err(CliError::Corpus(format!("unknown expectation kind '{}'", other))),
    })
}

fn matches(expected: &str, actual: &str) -> bool {
    if expected == actual {
        return true;
    }
    // "true (sd 3, ...)" carries detail after the verdict
    actual
        .split_once(' ')
        .is_some_and(|(head, _)| head == expected && (expected == "true" || expected == "false"))
}

/// Runs every corpus entry at the given `q`.
pub fn verify(corpus: &Corpus, q: u64) -> Result<Verification> {
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for entry in &corpus.entry {
        if let Some(min) = entry.min_q {
            if q < min {
                skipped.push(EntrySkip {
                    entry: entry.name.clone(),
                    reason: format!("needs q >= {}", min),
                });
                continue;
            }
        }
        let file = parse_system(&instantiate(&entry.system, q)?)
            .map_err(|e| CliError::Corpus(format!("{}: {}", entry.name, e)))?;
        let system = file.system();
        let order = file
            .order
            .clone()
            .unwrap_or_else(|| TermOrder::degrevlex(system.nvars()));
        let mut ctx = Context {
            analyzer: Analyzer::new(system, Limits::default()),
            file,
            order,
        };
        for ex in &entry.expect {
            let (expected, actual) = check(&mut ctx, ex, q)?;
            let verdict = if ex.is_disputed() {
                Verdict::Disputed
            } else if matches(&expected, &actual) {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            results.push(CheckResult {
                entry: entry.name.clone(),
                kind: ex.kind.clone(),
                expected,
                actual,
                verdict,
                source: ex.source.clone(),
            });
        }
    }
    Ok(Verification { q, results, skipped })
}
