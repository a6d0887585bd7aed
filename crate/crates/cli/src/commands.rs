use cyclocode_core::characters::{CharSumCfg, Characters};
use cyclocode_core::closedform::{
    bounds, corollary1_ghw, corollary2_ghw, lemma1_exp_sum, lemma1_periods, remark_formulas,
    semiprimitive_params, semiprimitive_witnesses, theorem3_predict, ClosedFormError, Prediction,
};
use cyclocode_core::code::{build_code, dual_distance_at_least_3, LinearCode, WeightDistribution};
use cyclocode_core::cyclotomy::{build_defining_set, validate_spec, CodeSpec};
use cyclocode_core::field::{FieldConfig, FieldCtx};
use cyclocode_core::ghw::{ghw, GhwConfig, GhwResult, Method};

use crate::args::{Command, Format, RunConfig};
use crate::error::{CliError, EXIT_OK};
use crate::report::*;
use crate::verify;

/// Rendered output and the exit code it should end with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

impl RunConfig {
    pub fn field_config(&self) -> FieldConfig {
        FieldConfig {
            max_order: self.field_cap,
        }
    }

    pub fn ghw_config(&self) -> GhwConfig {
        GhwConfig {
            subspace_budget: self.subspace_budget,
            chars: self.char_config(),
            ..GhwConfig::default()
        }
    }

    pub fn char_config(&self) -> CharSumCfg {
        CharSumCfg {
            tolerance: self.tolerance,
        }
    }

    fn need(&self, name: &str, v: Option<u32>) -> Result<u32, CliError> {
        v.ok_or_else(|| CliError::Usage(format!("--{name} is required")))
    }

    /// The validated specification; `t` defaults to `[0]` when `allow_default_t`.
    pub fn spec(&self, allow_default_t: bool) -> Result<CodeSpec, CliError> {
        let p = self.need("p", self.p)?;
        let m = self.need("m", self.m)?;
        let h = self.need("h", self.h)?;
        let t = if self.t.is_empty() && allow_default_t {
            vec![0]
        } else {
            self.t.clone()
        };
        Ok(validate_spec(p, self.e, m, h, t)?)
    }

    /// `r` values to evaluate, checked against `1..=m`.
    pub fn r_values(&self, m: u32) -> Result<Vec<u32>, CliError> {
        let (lo, hi) = self.r.map_or((1, m), |r| (r.lo, r.hi));
        if hi > m {
            return Err(CliError::Usage(format!("r = {hi} exceeds m = {m}")));
        }
        Ok((lo..=hi).collect())
    }
}

fn render<R: Render>(report: &R, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => report.csv(),
        Format::Text => Ok(report.text()),
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    let cfg = command.config();
    if let Command::VerifyGrid(_) = command {
        return verify::run_command(cfg);
    }
    let output = match command {
        Command::Info(_) => render(&info(cfg)?, cfg.format)?,
        Command::Wdist(_) => render(&wdist(cfg)?, cfg.format)?,
        Command::Ghw(_) => render(&ghw_report(cfg)?, cfg.format)?,
        Command::Periods(_) => render(&periods(cfg)?, cfg.format)?,
        Command::Bounds(_) => render(&bounds_report(cfg)?, cfg.format)?,
        Command::VerifyGrid(_) => unreachable!(),
    };
    Ok(Outcome {
        output,
        exit_code: EXIT_OK,
    })
}

pub(crate) fn spec_code<'a>(
    ctx: &'a FieldCtx,
    spec: &CodeSpec,
) -> Result<LinearCode<'a>, CliError> {
    let d = build_defining_set(ctx, spec)?;
    Ok(build_code(ctx, &d.elements)?)
}

fn optional_params<T>(r: Result<T, ClosedFormError>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(ClosedFormError::NotApplicable) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn info(cfg: &RunConfig) -> Result<InfoReport, CliError> {
    let spec = cfg.spec(false)?;
    let ctx = spec.build_field(&cfg.field_config())?;
    let code = spec_code(&ctx, &spec)?;
    Ok(InfoReport {
        spec: SpecEcho::from(&spec),
        polynomial: ctx.polynomial().to_vec(),
        rank: code.rank(),
        class_size: (spec.order() - 1) / u64::from(spec.h()),
        s_equals_h: spec.s() == spec.h(),
        semiprimitive: optional_params(semiprimitive_params(&spec))?,
        witnesses: semiprimitive_witnesses(&spec),
    })
}

/// Weight distribution with the two-weight table comparison.
pub(crate) fn weight_report(
    code: &LinearCode,
    spec: &CodeSpec,
    budget: u64,
) -> Result<
    (
        WeightDistribution,
        Option<cyclocode_core::closedform::WeightTablePrediction>,
        Option<bool>,
    ),
    CliError,
> {
    let wd = code.weight_distribution(budget)?;
    let table = optional_params(theorem3_predict(spec))?;
    let matched = table.as_ref().map(|t| {
        t.distribution() == wd.counts
            && t.dimension as usize == code.rank()
            && t.length == code.n() as u64
    });
    Ok((wd, table, matched))
}

pub fn wdist(cfg: &RunConfig) -> Result<WdistReport, CliError> {
    let spec = cfg.spec(false)?;
    let ctx = spec.build_field(&cfg.field_config())?;
    let code = spec_code(&ctx, &spec)?;
    let (wd, table1, table1_match) = weight_report(&code, &spec, cfg.enum_budget)?;
    Ok(WdistReport {
        spec: SpecEcho::from(&spec),
        rank: code.rank(),
        weight_distribution: wd.counts,
        table1,
        table1_match,
        dual_distance_at_least_3: dual_distance_at_least_3(&code).holds,
    })
}

/// Closed-form columns and bounds for one level, given its computed values.
pub(crate) fn level(
    spec: &CodeSpec,
    r: u32,
    d_r: MethodValues,
    d1: Option<u64>,
    witness: Vec<Vec<u32>>,
) -> Result<GhwLevel, CliError> {
    let common = d_r.common();
    let corollary1 = corollary1_ghw(spec, r)?;
    let corollary2 = corollary2_ghw(spec, r)?;
    let remark = remark_formulas(spec, r);
    let cmp = |p: Prediction| p.value().map(|v| Some(v) == common);
    let b = bounds(spec.n(), spec.m(), spec.q(), r, d1.unwrap_or(0));
    Ok(GhwLevel {
        r,
        methods_agree: d_r.agree(),
        n_r: common.map(|d| spec.n() - d),
        d_r,
        corollary1,
        corollary1_match: cmp(corollary1),
        corollary2,
        corollary2_match: cmp(corollary2),
        remark,
        remark_match: remark.map(|v| Some(v) == common),
        within_bounds: common.is_some_and(|d| b.contains(d)),
        bounds: b,
        witness,
        identity: None,
    })
}

pub(crate) fn increasing(levels: &[GhwLevel]) -> bool {
    levels
        .windows(2)
        .all(|w| matches!((w[0].d_r.common(), w[1].d_r.common()), (Some(a), Some(b)) if a < b))
        && levels.iter().all(|l| l.d_r.common().is_some())
}

pub fn ghw_report(cfg: &RunConfig) -> Result<GhwReport, CliError> {
    let spec = cfg.spec(false)?;
    let ctx = spec.build_field(&cfg.field_config())?;
    let gcfg = cfg.ghw_config();
    let methods = cfg.method.methods();
    let rs = cfg.r_values(spec.m())?;
    let first =
        |r: u32| -> Result<GhwResult, CliError> { Ok(ghw(&ctx, &spec, methods[0], r, &gcfg)?) };
    let d1 = first(1)?.d_r;
    let mut levels = Vec::new();
    for r in rs {
        let mut values = MethodValues::default();
        let mut witness = None;
        for &m in &methods {
            let g = ghw(&ctx, &spec, m, r, &gcfg)?;
            values.set(m, g.d_r);
            witness.get_or_insert(g.witness.rows().to_vec());
        }
        levels.push(level(
            &spec,
            r,
            values,
            Some(d1),
            witness.unwrap_or_default(),
        )?);
    }
    let increasing = increasing(&levels);
    Ok(GhwReport {
        spec: SpecEcho::from(&spec),
        levels,
        increasing,
    })
}

/// `G(ψ_j)` is checked for every `j ≢ 0` up to this field order.
const FULL_GAUSS_CHECK: u64 = 1 << 12;

pub fn periods(cfg: &RunConfig) -> Result<PeriodsReport, CliError> {
    let spec = cfg.spec(true)?;
    let ctx = spec.build_field(&cfg.field_config())?;
    let chars = Characters::new(&ctx);
    let h = spec.h();
    let eta = chars
        .gaussian_periods(h)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let exp_sums: Vec<_> = (0..h)
        .map(|i| chars.exponential_sum(ctx.elem(i64::from(i)), h))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let identity_residual = exp_sums
        .iter()
        .zip(&eta)
        .map(|(s, e)| (s - (e * f64::from(h) + 1.0)).norm())
        .fold(0.0, f64::max);
    let group = spec.order() - 1;
    let step = group / u64::from(h);
    let gauss_sums = (0..u64::from(h))
        .map(|l| chars.gauss_sum((l * step) as i64).into())
        .collect();
    let js: Vec<u64> = if spec.order() <= FULL_GAUSS_CHECK {
        (1..group).collect()
    } else {
        (1..u64::from(h)).map(|l| l * step).collect()
    };
    let sqrt_q = (spec.order() as f64).sqrt();
    let gauss_modulus_residual = js
        .iter()
        .map(|&j| (chars.gauss_sum(j as i64).norm() - sqrt_q).abs())
        .fold(0.0, f64::max);
    let sp = optional_params(semiprimitive_params(&spec))?;
    let eta_closed_form = sp.as_ref().map(|sp| lemma1_periods(&spec, sp));
    let exp_sums_closed_form = match &sp {
        Some(sp) => Some(
            (0..h)
                .map(|i| lemma1_exp_sum(ctx.elem(i64::from(i)), &spec, sp))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let closed_form_residual = eta_closed_form.as_ref().map(|cf| {
        cf.iter()
            .zip(&eta)
            .map(|(&c, e)| (e - c).norm())
            .fold(0.0, f64::max)
    });
    Ok(PeriodsReport {
        p: spec.p(),
        e: spec.e(),
        m: spec.m(),
        h,
        order: spec.order(),
        eta: eta.into_iter().map(Cx::from).collect(),
        exp_sums: exp_sums.into_iter().map(Cx::from).collect(),
        identity_residual,
        gauss_sums,
        gauss_checked: js.len() as u64,
        gauss_modulus_residual,
        semiprimitive: sp,
        eta_closed_form,
        exp_sums_closed_form,
        closed_form_residual,
    })
}

pub fn bounds_report(cfg: &RunConfig) -> Result<BoundsReport, CliError> {
    let spec = cfg.spec(false)?;
    let ctx = spec.build_field(&cfg.field_config())?;
    let gcfg = cfg.ghw_config();
    let method = cfg
        .method
        .methods()
        .first()
        .copied()
        .unwrap_or(Method::Direct);
    let method = if cfg.method.methods().len() > 1 {
        Method::Direct
    } else {
        method
    };
    let d1 = ghw(&ctx, &spec, method, 1, &gcfg)?.d_r;
    let mut levels = Vec::new();
    for r in cfg.r_values(spec.m())? {
        let d_r = ghw(&ctx, &spec, method, r, &gcfg)?.d_r;
        let b = bounds(spec.n(), spec.m(), spec.q(), r, d1);
        levels.push(BoundsLevel {
            r,
            d_r,
            within_bounds: b.contains(d_r),
            griesmer_tight: b.griesmer_lo == d_r,
            plotkin_tight: b.plotkin_hi == d_r,
            singleton_tight: b.singleton_hi == d_r,
            bounds: b,
        });
    }
    Ok(BoundsReport {
        spec: SpecEcho::from(&spec),
        d1,
        levels,
    })
}
