//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes the code parameters, returns a JSON string, and throws a
//! string on invalid input. The `*_json` functions hold the logic so they can
//! be tested natively.

use std::collections::BTreeMap;

use cyclocode_core::characters::Characters;
use cyclocode_core::closedform::{
    bounds, corollary1_ghw, corollary2_ghw, lemma1_periods, remark_formulas, semiprimitive_params,
    theorem3_predict, BoundSet, Prediction, WeightRow,
};
use cyclocode_core::code::build_code;
use cyclocode_core::cyclotomy::{build_defining_set, validate_spec, CodeSpec};
use cyclocode_core::field::{FieldConfig, FieldCtx};
use cyclocode_core::ghw::{ghw, GhwConfig, Method};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Keeps every request interactive in a browser tab.
pub const MAX_ORDER: u64 = 1 << 12;
const SUBSPACE_BUDGET: u128 = 200_000;

fn parse_t(t: &str) -> Result<Vec<u32>, String> {
    t.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<u32>()
                .map_err(|e| format!("bad t entry {x:?}: {e}"))
        })
        .collect()
}

fn setup(p: u32, e: u32, m: u32, h: u32, t: &str) -> Result<(FieldCtx, CodeSpec), String> {
    let spec = validate_spec(p, e, m, h, parse_t(t)?).map_err(|e| e.to_string())?;
    let ctx = spec
        .build_field(&FieldConfig {
            max_order: MAX_ORDER,
        })
        .map_err(|e| e.to_string())?;
    Ok((ctx, spec))
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Weights {
    n: u64,
    rank: usize,
    distribution: BTreeMap<u64, u64>,
    table: Option<Vec<WeightRow>>,
    table_match: Option<bool>,
}

pub fn weight_distribution_json(p: u32, e: u32, m: u32, h: u32, t: &str) -> Result<String, String> {
    let (ctx, spec) = setup(p, e, m, h, t)?;
    let d = build_defining_set(&ctx, &spec).map_err(|e| e.to_string())?;
    let code = build_code(&ctx, &d.elements).map_err(|e| e.to_string())?;
    let wd = code
        .weight_distribution(MAX_ORDER)
        .map_err(|e| e.to_string())?;
    let table = theorem3_predict(&spec).ok();
    to_json(&Weights {
        n: spec.n(),
        rank: code.rank(),
        table_match: table.as_ref().map(|t| t.distribution() == wd.counts),
        table: table.map(|t| t.rows),
        distribution: wd.counts,
    })
}

#[derive(Serialize)]
struct Level {
    r: u32,
    direct: u64,
    thm1: u64,
    gauss: u64,
    period: u64,
    closed_form: Option<u64>,
    bounds: BoundSet,
}

#[derive(Serialize)]
struct Hierarchy {
    n: u64,
    m: u32,
    levels: Vec<Level>,
}

pub fn weight_hierarchy_json(p: u32, e: u32, m: u32, h: u32, t: &str) -> Result<String, String> {
    let (ctx, spec) = setup(p, e, m, h, t)?;
    let cfg = GhwConfig {
        subspace_budget: SUBSPACE_BUDGET,
        ..GhwConfig::default()
    };
    let mut levels = Vec::new();
    let mut d1 = 0;
    for r in 1..=m {
        let d = |method| {
            ghw(&ctx, &spec, method, r, &cfg)
                .map(|g| g.d_r)
                .map_err(|e| e.to_string())
        };
        let direct = d(Method::Direct)?;
        if r == 1 {
            d1 = direct;
        }
        let closed = [corollary1_ghw(&spec, r), corollary2_ghw(&spec, r)]
            .into_iter()
            .filter_map(|p| p.ok().and_then(Prediction::value))
            .next()
            .or_else(|| remark_formulas(&spec, r));
        levels.push(Level {
            r,
            direct,
            thm1: d(Method::Thm1)?,
            gauss: d(Method::Thm2Gauss)?,
            period: d(Method::Thm2Period)?,
            closed_form: closed,
            bounds: bounds(spec.n(), m, spec.q(), r, d1),
        });
    }
    to_json(&Hierarchy {
        n: spec.n(),
        m,
        levels,
    })
}

#[derive(Serialize)]
struct Sums {
    order: u64,
    eta: Vec<[f64; 2]>,
    eta_closed_form: Option<Vec<f64>>,
    gauss: Vec<[f64; 2]>,
}

pub fn character_sums_json(p: u32, e: u32, m: u32, h: u32) -> Result<String, String> {
    let (ctx, spec) = setup(p, e, m, h, "0")?;
    let chars = Characters::new(&ctx);
    let eta = chars.gaussian_periods(h).map_err(|e| e.to_string())?;
    let step = (spec.order() - 1) / u64::from(h);
    let gauss = (0..u64::from(h))
        .map(|l| {
            let g = chars.gauss_sum((l * step) as i64);
            [g.re, g.im]
        })
        .collect();
    to_json(&Sums {
        order: spec.order(),
        eta: eta.iter().map(|z| [z.re, z.im]).collect(),
        eta_closed_form: semiprimitive_params(&spec)
            .ok()
            .map(|sp| lemma1_periods(&spec, &sp)),
        gauss,
    })
}

#[wasm_bindgen]
pub fn weight_distribution(p: u32, e: u32, m: u32, h: u32, t: &str) -> Result<String, JsValue> {
    weight_distribution_json(p, e, m, h, t).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn weight_hierarchy(p: u32, e: u32, m: u32, h: u32, t: &str) -> Result<String, JsValue> {
    weight_hierarchy_json(p, e, m, h, t).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn character_sums(p: u32, e: u32, m: u32, h: u32) -> Result<String, JsValue> {
    character_sums_json(p, e, m, h).map_err(|e| JsValue::from_str(&e))
}
