//! The verify-grid battery: every check, for every spec of a grid, grouped by
//! `(p, e, m, h)` so subspace sweeps are shared across `t`-sets.

use std::collections::BTreeMap;
use std::fs;
use std::time::Instant;

use cyclocode_core::code::dual_distance_at_least_3;
use cyclocode_core::cyclotomy::{validate_spec, CodeSpec};
use cyclocode_core::field::{FieldConfig, FieldCtx};
use cyclocode_core::ghw::{FamilySweep, GhwConfig, GhwResult, IdentityCheck, Method};
use itertools::Itertools;

use crate::args::{Format, RunConfig};
use crate::commands::{increasing, level, spec_code, weight_report, Outcome};
use crate::error::{CliError, EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK};
use crate::report::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridEntry {
    /// 1-based line in the grid file; 0 for generated entries.
    pub line: usize,
    pub spec: RawSpec,
}

/// Parses `p e m h t1,t2,...` lines; `#` starts a comment.
pub fn parse_grid(text: &str) -> Result<Vec<GridEntry>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| CliError::GridParse { line, message };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(err(format!(
                "expected `p e m h t1,t2,...`, got {} fields",
                fields.len()
            )));
        }
        let num = |s: &str, name: &str| {
            s.parse::<u32>()
                .map_err(|e| err(format!("bad {name} {s:?}: {e}")))
        };
        let t = fields[4]
            .split(',')
            .map(|x| num(x.trim(), "t"))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(GridEntry {
            line,
            spec: RawSpec {
                p: num(fields[0], "p")?,
                e: num(fields[1], "e")?,
                m: num(fields[2], "m")?,
                h: num(fields[3], "h")?,
                t,
            },
        });
    }
    Ok(out)
}

/// Every `h` that gives a valid specification over `F_(p^(em))`.
pub fn admissible_h(p: u32, e: u32, m: u32) -> Vec<u32> {
    let Some(order) = u64::from(p).checked_pow(e * m) else {
        return Vec::new();
    };
    (2u64..)
        .take_while(|h| (h - 1) * (h - 1) < order)
        .filter(|&h| validate_spec(p, e, m, h as u32, vec![0]).is_ok())
        .map(|h| h as u32)
        .collect()
}

/// `q ∈ {2, 3}`, `m ∈ {2, 4, 6}`, every admissible `h`, every `t` with
/// `1 <= s <= 3`.
pub fn default_grid() -> Vec<GridEntry> {
    let mut out = Vec::new();
    for p in [2, 3] {
        for m in [2, 4, 6] {
            for h in admissible_h(p, 1, m) {
                for s in 1..=h.min(3) {
                    for t in (0..h).combinations(s as usize) {
                        out.push(GridEntry {
                            line: 0,
                            spec: RawSpec { p, e: 1, m, h, t },
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub field: FieldConfig,
    pub ghw: GhwConfig,
    pub enum_budget: u64,
    pub identity_max_m: u32,
}

impl From<&RunConfig> for VerifyOptions {
    fn from(c: &RunConfig) -> Self {
        Self {
            field: c.field_config(),
            ghw: c.ghw_config(),
            enum_budget: c.enum_budget,
            identity_max_m: c.identity_max_m,
        }
    }
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            field: FieldConfig::default(),
            ghw: GhwConfig::default(),
            enum_budget: cyclocode_core::code::DEFAULT_ENUMERATION_BUDGET,
            identity_max_m: 4,
        }
    }
}

fn blank(input: RawSpec, status: Status) -> VerificationRecord {
    VerificationRecord {
        input,
        status,
        spec: None,
        violations: Vec::new(),
        error: None,
        failures: Vec::new(),
        rank: None,
        weight_distribution: None,
        table1: None,
        table1_match: None,
        dual_distance_at_least_3: None,
        mds: None,
        levels: Vec::new(),
        increasing: None,
        elapsed_ms: 0,
    }
}

/// Family-level results: `[r-1][method][t-set]`, plus identity checks per `r`.
struct FamilyResults {
    by_r: Vec<BTreeMap<Method, Vec<GhwResult>>>,
    identity: Vec<Option<IdentityCheck>>,
}

fn sweep_family(
    ctx: &FieldCtx,
    h: u32,
    tsets: &[Vec<u32>],
    opts: &VerifyOptions,
) -> Result<FamilyResults, CliError> {
    let fam = FamilySweep::new(ctx, h)?;
    let mut by_r = Vec::new();
    let mut identity = Vec::new();
    for r in 1..=ctx.m() {
        let mut per = BTreeMap::new();
        for m in Method::ALL {
            per.insert(m, fam.run(m, r, tsets, &opts.ghw)?);
        }
        by_r.push(per);
        identity.push(if ctx.m() <= opts.identity_max_m {
            Some(fam.check_duality_identity(r, &opts.ghw)?)
        } else {
            None
        });
    }
    Ok(FamilyResults { by_r, identity })
}

fn check_spec(
    ctx: &FieldCtx,
    spec: &CodeSpec,
    ti: usize,
    fam: &FamilyResults,
    opts: &VerifyOptions,
    rec: &mut VerificationRecord,
) -> Result<(), CliError> {
    let code = spec_code(ctx, spec)?;
    let (wd, table1, table1_match) = weight_report(&code, spec, opts.enum_budget)?;
    let dual = dual_distance_at_least_3(&code).holds;
    let mut fails = Vec::new();
    if code.rank() != spec.m() as usize {
        fails.push("rank".to_owned());
    }
    if table1_match == Some(false) {
        fails.push("table1".to_owned());
    }
    if !dual {
        fails.push("dual_distance".to_owned());
    }
    let mut levels = Vec::new();
    let mut d1 = None;
    for (ri, per) in fam.by_r.iter().enumerate() {
        let r = ri as u32 + 1;
        let mut values = MethodValues::default();
        for (&m, res) in per {
            values.set(m, res[ti].d_r);
        }
        if r == 1 {
            d1 = values.common();
        }
        let witness = per[&Method::Direct][ti].witness.rows().to_vec();
        let mut lv = level(spec, r, values, d1, witness)?;
        lv.identity = fam.identity[ri];
        let tag = |name: &str| format!("{name} r={r}");
        if !lv.methods_agree {
            fails.push(tag("methods_agree"));
        }
        if lv.corollary1_match == Some(false) {
            fails.push(tag("corollary1"));
        }
        if lv.corollary2_match == Some(false) {
            fails.push(tag("corollary2"));
        }
        if lv.remark_match == Some(false) {
            fails.push(tag("remark"));
        }
        if !lv.within_bounds {
            fails.push(tag("bounds"));
        }
        if lv.identity.is_some_and(|i| i.mismatches > 0) {
            fails.push(tag("identity"));
        }
        levels.push(lv);
    }
    if d1 != wd.min_nonzero_weight() {
        fails.push("d1_vs_min_weight".to_owned());
    }
    let inc = increasing(&levels);
    if !inc {
        fails.push("increasing".to_owned());
    }
    let mds = (spec.m() == 2).then(|| d1 == Some(spec.n() - 1));
    if mds == Some(false) {
        fails.push("mds".to_owned());
    }
    rec.status = if fails.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    rec.rank = Some(code.rank());
    rec.weight_distribution = Some(wd.counts);
    rec.table1 = table1;
    rec.table1_match = table1_match;
    rec.dual_distance_at_least_3 = Some(dual);
    rec.mds = mds;
    rec.levels = levels;
    rec.increasing = Some(inc);
    rec.failures = fails;
    Ok(())
}

/// Runs the battery; returns the report and the exit code it implies.
pub fn verify_grid(entries: &[GridEntry], opts: &VerifyOptions) -> (GridReport, i32) {
    let start = Instant::now();
    let mut records: Vec<VerificationRecord> = entries
        .iter()
        .map(|e| blank(e.spec.clone(), Status::Invalid))
        .collect();
    type Family = Vec<(usize, CodeSpec)>;
    let mut families: BTreeMap<(u32, u32, u32, u32), Family> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        let s = &e.spec;
        match validate_spec(s.p, s.e, s.m, s.h, s.t.clone()) {
            Ok(spec) => {
                records[i].spec = Some(SpecEcho::from(&spec));
                families
                    .entry((s.p, s.e, s.m, s.h))
                    .or_default()
                    .push((i, spec));
            }
            Err(err) => records[i].violations = err.violations().to_vec(),
        }
    }
    let mut worst = EXIT_OK;
    let note = |worst: &mut i32, e: &CliError, rec: &mut VerificationRecord| {
        rec.status = Status::Error;
        rec.error = Some(e.to_string());
        let code = if e.exit_code() == EXIT_BUDGET {
            EXIT_BUDGET
        } else {
            EXIT_MISMATCH
        };
        *worst = (*worst).max(code);
    };
    for ((p, e, m, h), members) in families {
        let fam_start = Instant::now();
        let ctx = match FieldCtx::new(p, e, m, &opts.field) {
            Ok(c) => c,
            Err(err) => {
                let err = CliError::from(err);
                for (i, _) in &members {
                    note(&mut worst, &err, &mut records[*i]);
                }
                continue;
            }
        };
        let tsets: Vec<Vec<u32>> = members.iter().map(|(_, s)| s.t().to_vec()).collect();
        let fam = match sweep_family(&ctx, h, &tsets, opts) {
            Ok(f) => f,
            Err(err) => {
                for (i, _) in &members {
                    note(&mut worst, &err, &mut records[*i]);
                }
                continue;
            }
        };
        let shared = fam_start.elapsed().as_millis() as u64 / members.len() as u64;
        for (ti, (i, spec)) in members.iter().enumerate() {
            let t0 = Instant::now();
            let rec = &mut records[*i];
            if let Err(err) = check_spec(&ctx, spec, ti, &fam, opts, rec) {
                note(&mut worst, &err, rec);
            }
            if rec.status == Status::Fail {
                worst = worst.max(EXIT_MISMATCH);
            }
            rec.elapsed_ms = shared + t0.elapsed().as_millis() as u64;
        }
    }
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let summary = GridSummary {
        total: records.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        invalid: count(Status::Invalid),
        errors: count(Status::Error),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    (GridReport { records, summary }, worst)
}

pub fn run_command(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let entries = match &cfg.grid {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            parse_grid(&text)?
        }
        None => default_grid(),
    };
    let (report, exit_code) = verify_grid(&entries, &VerifyOptions::from(cfg));
    let output = match cfg.format {
        Format::Json => report.json_lines()?,
        Format::Csv => report.csv()?,
        Format::Text => report.text(),
    };
    Ok(Outcome { output, exit_code })
}
