//! Solving degree, degree falls, last fall degree and the report that ties
//! them to the first fall degree and the two regularities.
//!
//! All closures and Gröbner bases of a run are cached in an [`Analyzer`], so
//! the linear membership scans reuse work across invariants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::firstfall::{default_first_fall_cap, first_fall_degree};
use crate::groebner::{buchberger, GbLimits, GroebnerBasis};
use crate::macaulay::{lazard_closure, EchelonBasis};
use crate::polyring::{OrderKind, PolySystem, Polynomial, TermOrder};
use crate::regularity::{cm_regularity, degree_of_regularity, Regularity};

/// Result of an invariant computation that may legitimately miss.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Value(T),
    /// Not reached within the degree cap.
    NotFound { cap: usize },
    Failed(Error),
    Skipped,
}

impl<T> Outcome<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Outcome::Value(v) => Some(v),
            _ => None,
        }
    }

    /// Not found under the degree cap, or stopped by a resource cap.
    pub fn is_cap_miss(&self) -> bool {
        matches!(self, Outcome::NotFound { .. } | Outcome::Failed(Error::Capacity { .. }))
    }

    fn from_search(r: Result<Option<T>>, cap: usize) -> Self {
        match r {
            Ok(Some(v)) => Outcome::Value(v),
            Ok(None) => Outcome::NotFound { cap },
            Err(e) => Outcome::Failed(e),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    /// Degree cap for closures; `3 * max generator degree + n` when unset.
    pub max_degree: Option<usize>,
    /// Degree cap for Betti numbers; `2 * sum of degrees` when unset.
    pub betti_degree: Option<usize>,
    /// Degree cap for the first fall search; `q + sum of degrees` when unset.
    pub first_fall_degree: Option<usize>,
    pub gb: GbLimits,
}

/// `d_f`: the least `d` with `f ∈ V_{F,d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeFallEvent {
    pub polynomial: Polynomial,
    pub degree: usize,
    pub reached_at: usize,
}

impl DegreeFallEvent {
    pub fn is_fall(&self) -> bool {
        self.reached_at > self.degree
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LastFall {
    pub value: usize,
    /// One event per reduced Gröbner basis element.
    pub events: Vec<DegreeFallEvent>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EqualityRow {
    pub d: usize,
    pub dim_v: usize,
    /// `dim (V_{F,d+1} ∩ R_{<=d})`.
    pub dim_next_truncated: usize,
    /// `dim (F)_{<=d}`.
    pub ideal_dim: u64,
    /// `V_{F,d} = V_{F,d+1} ∩ R_{<=d}`.
    pub stable: bool,
    /// `V_{F,d} = (F)_{<=d}`.
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityTable {
    pub rows: Vec<EqualityRow>,
    /// Least `d` from which every row up to `dmax` is saturated.
    pub saturated_from: Option<usize>,
    /// Least `d` from which every row up to `dmax` is stable.
    pub stable_from: Option<usize>,
}

fn tail_start(flags: impl DoubleEndedIterator<Item = (usize, bool)>) -> Option<usize> {
    let mut start = None;
    for (d, ok) in flags.rev() {
        if !ok {
            break;
        }
        start = Some(d);
    }
    start
}

/// One row of the per-degree trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub d: usize,
    pub dim_v: usize,
    pub ideal_dim: u64,
    pub rows_added: usize,
    pub falls: Vec<Polynomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Logged only; the statement is not asserted.
    Info,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub order: TermOrder,
    pub solving_degree: Outcome<usize>,
    pub max_gb_degree: Outcome<usize>,
}

/// Which invariants to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Selection {
    pub solving_degree: bool,
    pub last_fall: bool,
    pub first_fall: bool,
    pub degree_of_regularity: bool,
    pub regularity: bool,
    pub max_gb: bool,
    pub table: bool,
}

impl Selection {
    pub fn all() -> Self {
        Selection {
            solving_degree: true,
            last_fall: true,
            first_fall: true,
            degree_of_regularity: true,
            regularity: true,
            max_gb: true,
            table: false,
        }
    }

    pub fn none() -> Self {
        Selection {
            solving_degree: false,
            last_fall: false,
            first_fall: false,
            degree_of_regularity: false,
            regularity: false,
            max_gb: false,
            table: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub cap: usize,
    pub orders: Vec<OrderReport>,
    pub last_fall: Outcome<LastFall>,
    pub first_fall: Outcome<usize>,
    pub degree_of_regularity: Outcome<usize>,
    pub regularity: Outcome<Regularity>,
    pub table: Option<Outcome<EqualityTable>>,
    pub trace: Vec<TraceRow>,
    pub checks: Vec<Check>,
}

impl InvariantReport {
    pub fn has_cap_miss(&self) -> bool {
        self.orders
            .iter()
            .any(|o| o.solving_degree.is_cap_miss() || o.max_gb_degree.is_cap_miss())
            || self.last_fall.is_cap_miss()
            || self.first_fall.is_cap_miss()
            || self.degree_of_regularity.is_cap_miss()
            || self.regularity.is_cap_miss()
            || matches!(&self.regularity, Outcome::Value(r) if !r.certified)
            || self.table.as_ref().is_some_and(|t| t.is_cap_miss())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Caches closures by `(order, d)` and Gröbner bases by order.
pub struct Analyzer {
    system: PolySystem,
    limits: Limits,
    closures: BTreeMap<(TermOrder, usize), EchelonBasis>,
    bases: BTreeMap<TermOrder, GroebnerBasis>,
}

impl Analyzer {
    pub fn new(system: PolySystem, limits: Limits) -> Self {
        Analyzer {
            system,
            limits,
            closures: BTreeMap::new(),
            bases: BTreeMap::new(),
        }
    }

    pub fn system(&self) -> &PolySystem {
        &self.system
    }

    pub fn cap(&self) -> usize {
        self.limits
            .max_degree
            .unwrap_or(3 * self.system.max_degree() + self.system.nvars())
    }

    fn degrevlex(&self) -> TermOrder {
        TermOrder::degrevlex(self.system.nvars())
    }

    pub fn closure(&mut self, order: &TermOrder, d: usize) -> Result<&EchelonBasis> {
        let key = (order.clone(), d);
        if !self.closures.contains_key(&key) {
            let e = lazard_closure(&self.system, d, order)?;
            self.closures.insert(key.clone(), e);
        }
        Ok(&self.closures[&key])
    }

    /// `V_{F,d}`.
    pub fn v_space(&mut self, d: usize) -> Result<&EchelonBasis> {
        let o = self.degrevlex();
        self.closure(&o, d)
    }

    pub fn groebner(&mut self, order: &TermOrder) -> Result<&GroebnerBasis> {
        if !self.bases.contains_key(order) {
            let gb = buchberger(&self.system, order, self.limits.gb)?;
            self.bases.insert(order.clone(), gb);
        }
        Ok(&self.bases[order])
    }

    pub fn max_gb_degree(&mut self, order: &TermOrder) -> Result<usize> {
        Ok(self.groebner(order)?.max_degree())
    }

    /// Least `d <= cap` such that every element of the reduced Gröbner basis
    /// lies in the closed Macaulay matrix of degree `d`.
    pub fn solving_degree(&mut self, order: &TermOrder) -> Result<Option<usize>> {
        let cap = self.cap();
        let gb = self.groebner(order)?.clone();
        let start = gb.max_degree();
        for d in start..=cap {
            let e = self.closure(order, d)?;
            let mut all = true;
            for g in gb.elements() {
                if !e.contains(g)? {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    /// `d_f` by a linear upward scan from `deg f`.
    pub fn degree_fall_of(&mut self, f: &Polynomial) -> Result<Option<DegreeFallEvent>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let o = self.degrevlex();
        if !self.groebner(&o)?.contains(f) {
            return Err(Error::NotInIdeal);
        }
        let deg = f.degree() as usize;
        for d in deg..=self.cap().max(deg) {
            if self.v_space(d)?.contains(f)? {
                return Ok(Some(DegreeFallEvent {
                    polynomial: f.clone(),
                    degree: deg,
                    reached_at: d,
                }));
            }
        }
        Ok(None)
    }

    /// `d_F = max {d_g : g in the reduced Gröbner basis, d_g > deg g}`, or 0
    /// if no element has a degree fall.
    pub fn last_fall_degree(&mut self, order: &TermOrder) -> Result<Option<LastFall>> {
        if !order.degree_compatible() {
            return Err(Error::NotDegreeCompatible);
        }
        let gb = self.groebner(order)?.clone();
        let mut events = Vec::with_capacity(gb.elements().len());
        for g in gb.elements() {
            match self.degree_fall_of(g)? {
                Some(ev) => events.push(ev),
                None => return Ok(None),
            }
        }
        let value = events
            .iter()
            .filter(|e| e.is_fall())
            .map(|e| e.reached_at)
            .max()
            .unwrap_or(0);
        Ok(Some(LastFall { value, events }))
    }

    /// Rows `(a)` and `(b)` for `0 <= d <= dmax`. Always scans to `dmax`:
    /// `(a)` can hold on a long stretch and fail again later.
    pub fn degree_equality_table(&mut self, dmax: usize) -> Result<EqualityTable> {
        let o = self.degrevlex();
        let gb = self.groebner(&o)?.clone();
        let mut rows = Vec::with_capacity(dmax + 1);
        for d in 0..=dmax {
            let dim_v = self.v_space(d)?.dim();
            let dim_next_truncated = self.v_space(d + 1)?.truncated_dim(d)?;
            let ideal_dim = gb.truncated_ideal_dim(d)?;
            rows.push(EqualityRow {
                d,
                dim_v,
                dim_next_truncated,
                ideal_dim,
                stable: dim_v == dim_next_truncated,
                saturated: dim_v as u64 == ideal_dim,
            });
        }
        let saturated_from = tail_start(rows.iter().map(|r| (r.d, r.saturated)));
        let stable_from = tail_start(rows.iter().map(|r| (r.d, r.stable)));
        Ok(EqualityTable {
            rows,
            saturated_from,
            stable_from,
        })
    }

    pub fn first_fall_degree(&self) -> Result<Option<usize>> {
        let q = self.system.field().modulus() as u64;
        let dmax = self
            .limits
            .first_fall_degree
            .unwrap_or_else(|| default_first_fall_cap(&self.system, q));
        first_fall_degree(&self.system, q, dmax)
    }

    fn first_fall_cap(&self) -> usize {
        let q = self.system.field().modulus() as u64;
        self.limits
            .first_fall_degree
            .unwrap_or_else(|| default_first_fall_cap(&self.system, q))
    }

    pub fn degree_of_regularity(&self) -> Result<usize> {
        degree_of_regularity(&self.system, self.limits.gb)
    }

    pub fn regularity(&self) -> Result<Regularity> {
        cm_regularity(&self.system, self.limits.betti_degree, self.limits.gb)
    }

    fn trace(&mut self, falls: &[DegreeFallEvent]) -> Result<Vec<TraceRow>> {
        let o = self.degrevlex();
        let gb = self.groebner(&o)?.clone();
        let degrees: Vec<usize> = self
            .closures
            .keys()
            .filter(|(k, _)| *k == o)
            .map(|(_, d)| *d)
            .collect();
        let mut out = Vec::with_capacity(degrees.len());
        for d in degrees {
            let e = &self.closures[&(o.clone(), d)];
            out.push(TraceRow {
                d,
                dim_v: e.dim(),
                ideal_dim: gb.truncated_ideal_dim(d)?,
                rows_added: e.stats().rows_added,
                falls: falls
                    .iter()
                    .filter(|ev| ev.is_fall() && ev.reached_at == d)
                    .map(|ev| ev.polynomial.clone())
                    .collect(),
            });
        }
        Ok(out)
    }

    /// Runs the selected invariants for each order and cross-checks them.
    pub fn assemble_report(
        &mut self,
        orders: &[TermOrder],
        selection: Selection,
        table_dmax: Option<usize>,
    ) -> InvariantReport {
        let cap = self.cap();
        let mut order_reports = Vec::with_capacity(orders.len());
        for o in orders {
            let max_gb_degree = if selection.max_gb || selection.solving_degree {
                match self.max_gb_degree(o) {
                    Ok(v) => Outcome::Value(v),
                    Err(e) => Outcome::Failed(e),
                }
            } else {
                Outcome::Skipped
            };
            let solving_degree = if selection.solving_degree {
                Outcome::from_search(self.solving_degree(o), cap)
            } else {
                Outcome::Skipped
            };
            order_reports.push(OrderReport {
                order: o.clone(),
                solving_degree,
                max_gb_degree,
            });
        }

        let drl = self.degrevlex();
        let last_fall = if selection.last_fall || selection.solving_degree {
            Outcome::from_search(self.last_fall_degree(&drl), cap)
        } else {
            Outcome::Skipped
        };
        let first_fall = if selection.first_fall {
            Outcome::from_search(self.first_fall_degree(), self.first_fall_cap())
        } else {
            Outcome::Skipped
        };
        let dreg = if selection.degree_of_regularity {
            match self.degree_of_regularity() {
                Ok(v) => Outcome::Value(v),
                Err(e) => Outcome::Failed(e),
            }
        } else {
            Outcome::Skipped
        };
        let regularity = if selection.regularity {
            match self.regularity() {
                Ok(v) => Outcome::Value(v),
                Err(e) => Outcome::Failed(e),
            }
        } else {
            Outcome::Skipped
        };
        let table = if selection.table {
            let dmax = table_dmax.unwrap_or(cap);
            Some(match self.degree_equality_table(dmax) {
                Ok(t) => Outcome::Value(t),
                Err(e) => Outcome::Failed(e),
            })
        } else {
            None
        };

        let mut checks = Vec::new();
        self.cross_checks(&order_reports, &last_fall, &first_fall, &dreg, &regularity, &mut checks);
        if let Some(Outcome::Value(t)) = &table {
            let inclusion = t.rows.iter().all(|r| !r.saturated || r.stable);
            checks.push(Check {
                name: "saturated rows are stable",
                status: if inclusion { CheckStatus::Pass } else { CheckStatus::Fail },
                detail: String::new(),
            });
            if let Outcome::Value(lf) = &last_fall {
                // the saturated tail starts exactly at d_F once the table reaches it
                if lf.value < t.rows.len() {
                    checks.push(Check {
                        name: "table agrees with d_F",
                        status: if t.saturated_from == Some(lf.value) { CheckStatus::Pass } else { CheckStatus::Fail },
                        detail: format!("saturated from {:?}, d_F = {}", t.saturated_from, lf.value),
                    });
                }
            }
        }

        let falls = match &last_fall {
            Outcome::Value(lf) => lf.events.clone(),
            _ => Vec::new(),
        };
        let trace = self.trace(&falls).unwrap_or_default();
        InvariantReport {
            cap,
            orders: order_reports,
            last_fall,
            first_fall,
            degree_of_regularity: dreg,
            regularity,
            table,
            trace,
            checks,
        }
    }

    fn cross_checks(
        &mut self,
        orders: &[OrderReport],
        last_fall: &Outcome<LastFall>,
        first_fall: &Outcome<usize>,
        dreg: &Outcome<usize>,
        regularity: &Outcome<Regularity>,
        checks: &mut Vec<Check>,
    ) {
        let pass = |ok: bool| if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        let d_f = last_fall.value().map(|lf| lf.value);
        for rep in orders {
            let (Some(&sd), Some(&mg)) = (rep.solving_degree.value(), rep.max_gb_degree.value()) else {
                continue;
            };
            let Some(df) = d_f else {
                continue;
            };
            let status = if rep.order.degree_compatible() {
                pass(sd == df.max(mg))
            } else {
                CheckStatus::NotApplicable
            };
            checks.push(Check {
                name: "sd = max(d_F, maxGB)",
                status,
                detail: format!("{}: sd = {}, d_F = {}, maxGB = {}", rep.order, sd, df, mg),
            });
            if rep.order.degree_compatible() {
                checks.push(Check {
                    name: "sd >= maxGB and sd >= d_F",
                    status: pass(sd >= mg && sd >= df),
                    detail: format!("{}", rep.order),
                });
            }
        }

        if let Some(df) = d_f {
            let grlex = TermOrder::standard(OrderKind::Grlex, self.system.nvars());
            let (status, detail) = match self.last_fall_degree(&grlex) {
                Ok(Some(lf)) => (pass(lf.value == df), format!("degrevlex {}, grlex {}", df, lf.value)),
                Ok(None) => (CheckStatus::NotApplicable, String::from("grlex scan hit the cap")),
                Err(e) => (CheckStatus::NotApplicable, format!("{}", e)),
            };
            checks.push(Check {
                name: "d_F independent of the order",
                status,
                detail,
            });
        }

        let reg = match regularity {
            Outcome::Value(r) if r.certified => Some(r.value),
            _ => None,
        };
        if let (Some(&dr), Some(rg)) = (dreg.value(), reg) {
            checks.push(Check {
                name: "d_reg <= reg",
                status: pass(dr <= rg),
                detail: format!("d_reg = {}, reg = {}", dr, rg),
            });
        }

        let field_eqs = self.system.contains_field_equations();
        if let (Some(&ff), Some(&dr)) = (first_fall.value(), dreg.value()) {
            checks.push(Check {
                name: "d_ff <= d_reg + 1",
                status: if field_eqs { pass(ff <= dr + 1) } else { CheckStatus::NotApplicable },
                detail: format!("d_ff = {}, d_reg = {}", ff, dr),
            });
        }
        let sd_drl = orders
            .iter()
            .find(|r| r.order.kind() == OrderKind::Degrevlex)
            .and_then(|r| r.solving_degree.value().copied());
        if let (Some(sd), Some(rg)) = (sd_drl, reg) {
            checks.push(Check {
                name: "sd <= reg",
                status: if field_eqs { pass(sd <= rg) } else { CheckStatus::NotApplicable },
                detail: format!("sd = {}, reg = {}", sd, rg),
            });
        }
        if let (Some(sd), Some(&dr)) = (sd_drl, dreg.value()) {
            // bound proved for a solving degree taken in the quotient by the
            // field equations; only logged
            let q = self.system.field().modulus() as usize;
            let hyp = field_eqs && dr >= q.max(self.system.max_degree());
            checks.push(Check {
                name: "sd <= 2 d_reg - 2",
                status: if hyp { CheckStatus::Info } else { CheckStatus::NotApplicable },
                detail: format!("sd = {}, 2 d_reg - 2 = {}", sd, (2 * dr).saturating_sub(2)),
            });
        }
    }
}
