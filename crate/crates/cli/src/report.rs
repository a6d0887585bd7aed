//! Serializable reports and their text and CSV renderings.
//!
//! CSV column orders are fixed by the `*Row` structs below; the header line
//! names every column.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cyclocode_core::closedform::{
    BoundSet, Prediction, SemiPrimitiveParams, WeightTablePrediction,
};
use cyclocode_core::cyclotomy::{CodeSpec, Violation};
use cyclocode_core::ghw::IdentityCheck;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecEcho {
    pub p: u32,
    pub e: u32,
    pub m: u32,
    pub h: u32,
    pub t: Vec<u32>,
    pub s: u32,
    pub q: u64,
    #[serde(rename = "Q")]
    pub order: u64,
    pub n0: u64,
    pub n: u64,
}

impl From<&CodeSpec> for SpecEcho {
    fn from(s: &CodeSpec) -> Self {
        Self {
            p: s.p(),
            e: s.e(),
            m: s.m(),
            h: s.h(),
            t: s.t().to_vec(),
            s: s.s(),
            q: s.q(),
            order: s.order(),
            n0: s.n0(),
            n: s.n(),
        }
    }
}

/// Raw parameters of a grid line or command line, valid or not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSpec {
    pub p: u32,
    pub e: u32,
    pub m: u32,
    pub h: u32,
    pub t: Vec<u32>,
}

impl RawSpec {
    pub fn t_list(&self) -> String {
        join(&self.t, ",")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoReport {
    pub spec: SpecEcho,
    /// Low coefficients `c_0..c_(d-1)` of the monic primitive polynomial over `F_p`.
    pub polynomial: Vec<u32>,
    pub rank: usize,
    pub class_size: u64,
    pub s_equals_h: bool,
    pub semiprimitive: Option<SemiPrimitiveParams>,
    pub witnesses: Vec<SemiPrimitiveParams>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WdistReport {
    pub spec: SpecEcho,
    pub rank: usize,
    pub weight_distribution: BTreeMap<u64, u64>,
    pub table1: Option<WeightTablePrediction>,
    pub table1_match: Option<bool>,
    pub dual_distance_at_least_3: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodValues {
    pub direct: Option<u64>,
    pub thm1: Option<u64>,
    pub gauss: Option<u64>,
    pub period: Option<u64>,
}

impl MethodValues {
    pub fn set(&mut self, m: cyclocode_core::ghw::Method, v: u64) {
        use cyclocode_core::ghw::Method::*;
        match m {
            Direct => self.direct = Some(v),
            Thm1 => self.thm1 = Some(v),
            Thm2Gauss => self.gauss = Some(v),
            Thm2Period => self.period = Some(v),
        }
    }

    pub fn values(&self) -> Vec<u64> {
        [self.direct, self.thm1, self.gauss, self.period]
            .into_iter()
            .flatten()
            .collect()
    }

    pub fn agree(&self) -> bool {
        let v = self.values();
        !v.is_empty() && v.iter().all(|&x| x == v[0])
    }

    /// The common value, if every computed method agrees.
    pub fn common(&self) -> Option<u64> {
        self.agree().then(|| self.values()[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhwLevel {
    pub r: u32,
    pub d_r: MethodValues,
    pub n_r: Option<u64>,
    pub methods_agree: bool,
    pub corollary1: Prediction,
    pub corollary1_match: Option<bool>,
    pub corollary2: Prediction,
    pub corollary2_match: Option<bool>,
    pub remark: Option<u64>,
    pub remark_match: Option<bool>,
    pub bounds: BoundSet,
    pub within_bounds: bool,
    /// Reduced basis of the optimal subspace found by the first method run,
    /// as `F_q` coordinate rows.
    pub witness: Vec<Vec<u32>>,
    pub identity: Option<IdentityCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhwReport {
    pub spec: SpecEcho,
    pub levels: Vec<GhwLevel>,
    pub increasing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodsReport {
    pub p: u32,
    pub e: u32,
    pub m: u32,
    pub h: u32,
    #[serde(rename = "Q")]
    pub order: u64,
    pub eta: Vec<Cx>,
    /// `S(θ^i)` by direct summation.
    pub exp_sums: Vec<Cx>,
    /// `max_i |S(θ^i) - (h η_i + 1)|`
    pub identity_residual: f64,
    /// `G(φ^λ)`, `λ = 0..h`, with `φ` of order `h`.
    pub gauss_sums: Vec<Cx>,
    /// Number of `j ≢ 0` with `G(ψ_j)` evaluated.
    pub gauss_checked: u64,
    /// `max_j ||G(ψ_j)| - √Q|` over the evaluated `j`.
    pub gauss_modulus_residual: f64,
    pub semiprimitive: Option<SemiPrimitiveParams>,
    pub eta_closed_form: Option<Vec<f64>>,
    pub exp_sums_closed_form: Option<Vec<i64>>,
    /// `max_i |η_i - closed form|`
    pub closed_form_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsLevel {
    pub r: u32,
    pub d_r: u64,
    pub bounds: BoundSet,
    pub within_bounds: bool,
    pub griesmer_tight: bool,
    pub plotkin_tight: bool,
    pub singleton_tight: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub spec: SpecEcho,
    pub d1: u64,
    pub levels: Vec<BoundsLevel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Invalid,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub input: RawSpec,
    pub status: Status,
    pub spec: Option<SpecEcho>,
    pub violations: Vec<Violation>,
    pub error: Option<String>,
    /// Which checks failed.
    pub failures: Vec<String>,
    pub rank: Option<usize>,
    pub weight_distribution: Option<BTreeMap<u64, u64>>,
    pub table1: Option<WeightTablePrediction>,
    pub table1_match: Option<bool>,
    pub dual_distance_at_least_3: Option<bool>,
    pub mds: Option<bool>,
    pub levels: Vec<GhwLevel>,
    pub increasing: Option<bool>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub invalid: usize,
    pub errors: usize,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryLine {
    pub summary: GridSummary,
}

// ---------------------------------------------------------------------------
// rendering

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_owned(), |v| v.to_string())
}

pub fn prediction_cell(p: Prediction) -> String {
    match p {
        Prediction::Value(v) => v.to_string(),
        Prediction::NotApplicable => "not_applicable".into(),
        Prediction::NotCovered => "not_covered".into(),
    }
}

fn csv_string<R: Serialize>(rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

/// Text and CSV forms of a report; JSON comes from serde.
pub trait Render: Serialize {
    fn text(&self) -> String;
    fn csv(&self) -> Result<String, CliError>;
}

fn spec_line(s: &SpecEcho) -> String {
    format!(
        "p={} e={} m={} h={} t=[{}]  q={} Q={} n0={} s={} n={}",
        s.p,
        s.e,
        s.m,
        s.h,
        join(&s.t, ","),
        s.q,
        s.order,
        s.n0,
        s.s,
        s.n
    )
}

#[derive(Serialize)]
struct InfoRow {
    p: u32,
    e: u32,
    m: u32,
    h: u32,
    t: String,
    s: u32,
    q: u64,
    #[serde(rename = "Q")]
    order: u64,
    n0: u64,
    n: u64,
    rank: usize,
    k: Option<u32>,
    l: Option<u32>,
    h0: Option<u32>,
}

impl Render for InfoReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", spec_line(&self.spec));
        let _ = writeln!(
            out,
            "primitive polynomial (c_0..): [{}]",
            join(&self.polynomial, ",")
        );
        let _ = writeln!(out, "rank {}  class size {}", self.rank, self.class_size);
        if self.s_equals_h {
            let _ = writeln!(out, "s = h: every class is used");
        }
        match &self.semiprimitive {
            Some(sp) => {
                let _ = writeln!(
                    out,
                    "semi-primitive: k={} l={} h0={} sign={}",
                    sp.k, sp.l, sp.h0, sp.sign
                );
                for w in &self.witnesses[1..] {
                    let _ = writeln!(out, "  also k={} l={} h0={}", w.k, w.l, w.h0);
                }
            }
            None => {
                let _ = writeln!(out, "semi-primitive: not applicable");
            }
        }
        out
    }

    fn csv(&self) -> Result<String, CliError> {
        let s = &self.spec;
        csv_string(&[InfoRow {
            p: s.p,
            e: s.e,
            m: s.m,
            h: s.h,
            t: join(&s.t, ","),
            s: s.s,
            q: s.q,
            order: s.order,
            n0: s.n0,
            n: s.n,
            rank: self.rank,
            k: self.semiprimitive.map(|x| x.k),
            l: self.semiprimitive.map(|x| x.l),
            h0: self.semiprimitive.map(|x| x.h0),
        }])
    }
}

#[derive(Serialize)]
struct WdistRow {
    p: u32,
    e: u32,
    m: u32,
    h: u32,
    t: String,
    weight: u64,
    count: u64,
    predicted: Option<u64>,
}

impl Render for WdistReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", spec_line(&self.spec));
        let _ = writeln!(out, "[{}, {}] code", self.spec.n, self.rank);
        let predicted = self
            .table1
            .as_ref()
            .map(WeightTablePrediction::distribution);
        let _ = writeln!(out, "{:>8} {:>10} {:>10}", "weight", "count", "table");
        for (w, c) in &self.weight_distribution {
            let p = predicted.as_ref().and_then(|p| p.get(w).copied());
            let _ = writeln!(out, "{w:>8} {c:>10} {:>10}", opt(p));
        }
        let _ = writeln!(out, "table match: {}", opt(self.table1_match));
        let _ = writeln!(out, "dual distance >= 3: {}", self.dual_distance_at_least_3);
        out
    }

    fn csv(&self) -> Result<String, CliError> {
        let s = &self.spec;
        let predicted = self
            .table1
            .as_ref()
            .map(WeightTablePrediction::distribution);
        let rows: Vec<_> = self
            .weight_distribution
            .iter()
            .map(|(&weight, &count)| WdistRow {
                p: s.p,
                e: s.e,
                m: s.m,
                h: s.h,
                t: join(&s.t, ","),
                weight,
                count,
                predicted: predicted
                    .as_ref()
                    .map(|p| p.get(&weight).copied().unwrap_or(0)),
            })
            .collect();
        csv_string(&rows)
    }
}

/// One CSV row per `(spec, r)`.
#[derive(Serialize)]
struct LevelRow {
    p: u32,
    e: u32,
    m: u32,
    h: u32,
    t: String,
    status: String,
    n: Option<u64>,
    rank: Option<usize>,
    r: Option<u32>,
    direct: Option<u64>,
    thm1: Option<u64>,
    gauss: Option<u64>,
    period: Option<u64>,
    n_r: Option<u64>,
    methods_agree: Option<bool>,
    corollary1: String,
    corollary2: String,
    remark: Option<u64>,
    singleton_lo: Option<u64>,
    singleton_hi: Option<u64>,
    griesmer_lo: Option<u64>,
    plotkin_hi: Option<u64>,
    within_bounds: Option<bool>,
    identity_mismatches: Option<u128>,
}

impl LevelRow {
    fn new(
        raw: &RawSpec,
        status: &str,
        n: Option<u64>,
        rank: Option<usize>,
        lv: Option<&GhwLevel>,
    ) -> Self {
        Self {
            p: raw.p,
            e: raw.e,
            m: raw.m,
            h: raw.h,
            t: raw.t_list(),
            status: status.to_owned(),
            n,
            rank,
            r: lv.map(|l| l.r),
            direct: lv.and_then(|l| l.d_r.direct),
            thm1: lv.and_then(|l| l.d_r.thm1),
            gauss: lv.and_then(|l| l.d_r.gauss),
            period: lv.and_then(|l| l.d_r.period),
            n_r: lv.and_then(|l| l.n_r),
            methods_agree: lv.map(|l| l.methods_agree),
            corollary1: lv
                .map(|l| prediction_cell(l.corollary1))
                .unwrap_or_default(),
            corollary2: lv
                .map(|l| prediction_cell(l.corollary2))
                .unwrap_or_default(),
            remark: lv.and_then(|l| l.remark),
            singleton_lo: lv.map(|l| l.bounds.singleton_lo),
            singleton_hi: lv.map(|l| l.bounds.singleton_hi),
            griesmer_lo: lv.map(|l| l.bounds.griesmer_lo),
            plotkin_hi: lv.map(|l| l.bounds.plotkin_hi),
            within_bounds: lv.map(|l| l.within_bounds),
            identity_mismatches: lv.and_then(|l| l.identity).map(|i| i.mismatches),
        }
    }
}

fn raw_of(s: &SpecEcho) -> RawSpec {
    RawSpec {
        p: s.p,
        e: s.e,
        m: s.m,
        h: s.h,
        t: s.t.clone(),
    }
}

fn level_table(out: &mut String, levels: &[GhwLevel]) {
    let _ = writeln!(
        out,
        "{:>3} {:>7} {:>7} {:>7} {:>7} {:>6} {:>14} {:>14} {:>6} {:>13}",
        "r",
        "direct",
        "thm1",
        "gauss",
        "period",
        "agree",
        "corollary1",
        "corollary2",
        "remark",
        "bounds"
    );
    for l in levels {
        let _ = writeln!(
            out,
            "{:>3} {:>7} {:>7} {:>7} {:>7} {:>6} {:>14} {:>14} {:>6} {:>13}",
            l.r,
            opt(l.d_r.direct),
            opt(l.d_r.thm1),
            opt(l.d_r.gauss),
            opt(l.d_r.period),
            l.methods_agree,
            prediction_cell(l.corollary1),
            prediction_cell(l.corollary2),
            opt(l.remark),
            format!("[{}, {}]", l.bounds.lower(), l.bounds.upper()),
        );
    }
}

impl Render for GhwReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", spec_line(&self.spec));
        level_table(&mut out, &self.levels);
        let _ = writeln!(out, "strictly increasing: {}", self.increasing);
        out
    }

    fn csv(&self) -> Result<String, CliError> {
        let raw = raw_of(&self.spec);
        let rows: Vec<_> = self
            .levels
            .iter()
            .map(|l| LevelRow::new(&raw, "ok", Some(self.spec.n), None, Some(l)))
            .collect();
        csv_string(&rows)
    }
}

#[derive(Serialize)]
struct PeriodRow {
    i: usize,
    eta_re: f64,
    eta_im: f64,
    eta_closed_form: Option<f64>,
    s_re: f64,
    s_im: f64,
    s_closed_form: Option<i64>,
    gauss_re: f64,
    gauss_im: f64,
}

impl Render for PeriodsReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "p={} e={} m={} h={} Q={}",
            self.p, self.e, self.m, self.h, self.order
        );
        let _ = writeln!(
            out,
            "{:>3} {:>22} {:>22} {:>22}",
            "i", "eta_i", "S(theta^i)", "G(phi^i)"
        );
        let cx = |z: &Cx| format!("{:.6}{:+.6}i", z.re, z.im);
        for i in 0..self.eta.len() {
            let _ = writeln!(
                out,
                "{i:>3} {:>22} {:>22} {:>22}",
                cx(&self.eta[i]),
                cx(&self.exp_sums[i]),
                cx(&self.gauss_sums[i])
            );
        }
        let _ = writeln!(
            out,
            "max |S - (h eta + 1)| = {:.3e}",
            self.identity_residual
        );
        let _ = writeln!(
            out,
            "max ||G(psi_j)| - sqrt(Q)| = {:.3e} over {} characters",
            self.gauss_modulus_residual, self.gauss_checked
        );
        match (&self.semiprimitive, &self.eta_closed_form) {
            (Some(sp), Some(eta)) => {
                let _ = writeln!(
                    out,
                    "closed form (k={} l={} h0={}): eta = [{}], residual {:.3e}",
                    sp.k,
                    sp.l,
                    sp.h0,
                    join(eta, ", "),
                    self.closed_form_residual.unwrap_or(f64::NAN)
                );
            }
            _ => {
                let _ = writeln!(out, "closed form: not applicable");
            }
        }
        out
    }

    fn csv(&self) -> Result<String, CliError> {
        let rows: Vec<_> = (0..self.eta.len())
            .map(|i| PeriodRow {
                i,
                eta_re: self.eta[i].re,
                eta_im: self.eta[i].im,
                eta_closed_form: self.eta_closed_form.as_ref().map(|v| v[i]),
                s_re: self.exp_sums[i].re,
                s_im: self.exp_sums[i].im,
                s_closed_form: self.exp_sums_closed_form.as_ref().map(|v| v[i]),
                gauss_re: self.gauss_sums[i].re,
                gauss_im: self.gauss_sums[i].im,
            })
            .collect();
        csv_string(&rows)
    }
}

#[derive(Serialize)]
struct BoundsRow {
    p: u32,
    e: u32,
    m: u32,
    h: u32,
    t: String,
    r: u32,
    d_r: u64,
    singleton_lo: u64,
    singleton_hi: u64,
    griesmer_lo: u64,
    plotkin_hi: u64,
    within_bounds: bool,
}

impl Render for BoundsReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", spec_line(&self.spec));
        let _ = writeln!(out, "d1 = {}", self.d1);
        let _ = writeln!(
            out,
            "{:>3} {:>6} {:>10} {:>10} {:>10} {:>10} {:>7}",
            "r", "d_r", "singleton", "griesmer", "plotkin", "n-m+r", "within"
        );
        for l in &self.levels {
            let mark = |tight: bool| if tight { "*" } else { "" };
            let _ = writeln!(
                out,
                "{:>3} {:>6} {:>10} {:>10} {:>10} {:>10} {:>7}",
                l.r,
                l.d_r,
                l.bounds.singleton_lo,
                format!("{}{}", mark(l.griesmer_tight), l.bounds.griesmer_lo),
                format!("{}{}", mark(l.plotkin_tight), l.bounds.plotkin_hi),
                format!("{}{}", mark(l.singleton_tight), l.bounds.singleton_hi),
                l.within_bounds
            );
        }
        let _ = writeln!(out, "* bound met with equality");
        out
    }

    fn csv(&self) -> Result<String, CliError> {
        let s = &self.spec;
        let rows: Vec<_> = self
            .levels
            .iter()
            .map(|l| BoundsRow {
                p: s.p,
                e: s.e,
                m: s.m,
                h: s.h,
                t: join(&s.t, ","),
                r: l.r,
                d_r: l.d_r,
                singleton_lo: l.bounds.singleton_lo,
                singleton_hi: l.bounds.singleton_hi,
                griesmer_lo: l.bounds.griesmer_lo,
                plotkin_hi: l.bounds.plotkin_hi,
                within_bounds: l.within_bounds,
            })
            .collect();
        csv_string(&rows)
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Invalid => "invalid",
        Status::Error => "error",
    }
}

/// A verify-grid run: records plus summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReport {
    pub records: Vec<VerificationRecord>,
    pub summary: GridSummary,
}

impl GridReport {
    /// JSON lines: one record per line, then the summary line.
    pub fn json_lines(&self) -> Result<String, CliError> {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).map_err(|e| CliError::Internal(e.to_string()))?);
            out.push('\n');
        }
        let s = SummaryLine {
            summary: self.summary,
        };
        out.push_str(&serde_json::to_string(&s).map_err(|e| CliError::Internal(e.to_string()))?);
        out.push('\n');
        Ok(out)
    }

    pub fn summary_text(&self) -> String {
        let s = &self.summary;
        format!(
            "{} specs: {} passed, {} failed, {} invalid, {} errors ({} ms)",
            s.total, s.passed, s.failed, s.invalid, s.errors, s.elapsed_ms
        )
    }
}

impl Render for GridReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let i = &r.input;
            let _ = write!(
                out,
                "{:<7} p={} e={} m={} h={} t=[{}]",
                status_name(r.status),
                i.p,
                i.e,
                i.m,
                i.h,
                i.t_list()
            );
            if let Some(spec) = &r.spec {
                let d: Vec<String> = r.levels.iter().map(|l| opt(l.d_r.common())).collect();
                let _ = write!(out, "  n={} d=({})", spec.n, d.join(","));
            }
            if !r.violations.is_empty() {
                let _ = write!(out, "  {}", join(&r.violations, "; "));
            }
            if let Some(e) = &r.error {
                let _ = write!(out, "  {e}");
            }
            if !r.failures.is_empty() {
                let _ = write!(out, "  failed: {}", r.failures.join(", "));
            }
            out.push('\n');
        }
        out.push_str(&self.summary_text());
        out.push('\n');
        out
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut rows = Vec::new();
        for rec in &self.records {
            let status = status_name(rec.status);
            let n = rec.spec.as_ref().map(|s| s.n);
            if rec.levels.is_empty() {
                rows.push(LevelRow::new(&rec.input, status, n, rec.rank, None));
            }
            for l in &rec.levels {
                rows.push(LevelRow::new(&rec.input, status, n, rec.rank, Some(l)));
            }
        }
        if rows.is_empty() {
            // header only
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            w.write_record(LEVEL_COLUMNS)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            let bytes = w
                .into_inner()
                .map_err(|e| CliError::Internal(e.to_string()))?;
            return String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()));
        }
        csv_string(&rows)
    }
}

/// Column order of `ghw` and `verify-grid` CSV output.
pub const LEVEL_COLUMNS: [&str; 24] = [
    "p",
    "e",
    "m",
    "h",
    "t",
    "status",
    "n",
    "rank",
    "r",
    "direct",
    "thm1",
    "gauss",
    "period",
    "n_r",
    "methods_agree",
    "corollary1",
    "corollary2",
    "remark",
    "singleton_lo",
    "singleton_hi",
    "griesmer_lo",
    "plotkin_hi",
    "within_bounds",
    "identity_mismatches",
];
