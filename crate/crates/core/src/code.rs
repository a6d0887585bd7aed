//! Trace codes `C_D = {(Tr(x d_1), ..., Tr(x d_n)) : x ∈ F_Q}`.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{CharError, CharSumCfg, Characters};
use crate::cyclotomy::{coset_index, CodeSpec};
use crate::field::{FieldCtx, FieldElem};
use crate::{linalg, par};

/// Default cap on the number of messages `x` enumerated by
/// [`LinearCode::weight_distribution`].
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodeError {
    #[error("defining set is empty")]
    EmptyDefiningSet,
    #[error("defining set contains zero at position {0}")]
    ZeroInDefiningSet(usize),
    #[error("enumerating {needed} messages exceeds the budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("codeword weight formula is not integral: {0}")]
    NonIntegerResult(CharError),
    #[error(transparent)]
    Char(CharError),
    #[error("specification does not match the field context")]
    ContextMismatch,
}

#[derive(Debug, Clone)]
pub struct LinearCode<'a> {
    ctx: &'a FieldCtx,
    defining_set: Vec<FieldElem>,
    gen_matrix: Vec<Vec<u32>>,
    rank: usize,
}

/// Builds `C_D`. Row `i` of the generator matrix is the codeword of `θ^i`.
pub fn build_code<'a>(
    ctx: &'a FieldCtx,
    defining_set: &[FieldElem],
) -> Result<LinearCode<'a>, CodeError> {
    if defining_set.is_empty() {
        return Err(CodeError::EmptyDefiningSet);
    }
    if let Some(pos) = defining_set.iter().position(|d| d.is_zero()) {
        return Err(CodeError::ZeroInDefiningSet(pos));
    }
    let gen_matrix: Vec<Vec<u32>> = (0..ctx.m())
        .map(|i| {
            let x = ctx.elem(i64::from(i));
            defining_set
                .iter()
                .map(|&d| ctx.trace_q(ctx.mul(x, d)))
                .collect()
        })
        .collect();
    let rank = linalg::rank(ctx.fq(), &gen_matrix);
    Ok(LinearCode {
        ctx,
        defining_set: defining_set.to_vec(),
        gen_matrix,
        rank,
    })
}

impl<'a> LinearCode<'a> {
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }
    pub fn n(&self) -> usize {
        self.defining_set.len()
    }
    pub fn m(&self) -> usize {
        self.ctx.m() as usize
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn defining_set(&self) -> &[FieldElem] {
        &self.defining_set
    }
    pub fn gen_matrix(&self) -> &[Vec<u32>] {
        &self.gen_matrix
    }

    pub fn codeword(&self, x: FieldElem) -> Vec<u32> {
        self.defining_set
            .iter()
            .map(|&d| self.ctx.trace_q(self.ctx.mul(x, d)))
            .collect()
    }

    /// Hamming weight of the codeword of `x`.
    pub fn weight_of(&self, x: FieldElem) -> usize {
        let Some(k) = x.log() else { return 0 };
        let g = u64::from(self.ctx.order() - 1);
        self.defining_set
            .iter()
            .filter(|d| {
                let e = (u64::from(k) + u64::from(d.log().unwrap())) % g;
                self.ctx.trace_q_of_log(e as u32) != 0
            })
            .count()
    }

    /// Weight counts over all messages `x ∈ F_Q` (one count per pre-image).
    pub fn weight_distribution(&self, budget: u64) -> Result<WeightDistribution, CodeError> {
        let needed = u64::from(self.ctx.order());
        if needed > budget {
            return Err(CodeError::BudgetExceeded { needed, budget });
        }
        let group = needed - 1;
        let parts = par::map_ordered(par::chunks(group, 4096), |range| {
            let mut local: BTreeMap<u64, u64> = BTreeMap::new();
            for k in range {
                let w = self.weight_of(self.ctx.elem(k as i64)) as u64;
                *local.entry(w).or_default() += 1;
            }
            local
        });
        let mut counts = BTreeMap::from([(0u64, 1u64)]);
        for part in parts {
            for (w, c) in part {
                *counts.entry(w).or_default() += c;
            }
        }
        Ok(WeightDistribution {
            n: self.n() as u64,
            rank: self.rank as u32,
            counts,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub n: u64,
    pub rank: u32,
    /// weight -> number of messages `x` with that codeword weight
    pub counts: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    /// `Σ_w w A_w`.
    pub fn first_moment(&self) -> u64 {
        self.counts.iter().map(|(w, c)| w * c).sum()
    }
}

/// `S(θ^i)` for `i = 0..h`, each summed literally over `F_Q`. `S` is constant
/// on cyclotomic classes, so this covers every nonzero argument.
pub fn exponential_sums_by_class(chars: &Characters, h: u32) -> Result<Vec<Complex64>, CharError> {
    let ctx = chars.ctx();
    (0..h)
        .map(|i| chars.exponential_sum(ctx.elem(i64::from(i)), h))
        .collect()
}

fn weight_from_sums(spec: &CodeSpec, sum_s: Complex64, cfg: &CharSumCfg) -> Result<i64, CodeError> {
    let s = spec.s() as f64;
    let order = spec.order() as f64;
    let denom = spec.q() as f64 * f64::from(spec.h());
    let value = (Complex64::new(s * (order - 1.0) + s, 0.0) - sum_s) / denom;
    cfg.snap(value).map_err(CodeError::NonIntegerResult)
}

/// `w(c_x) = (s(Q-1) + s - Σ_j S(x θ^(t_j))) / (q h)` with each `S` summed
/// directly.
pub fn codeword_weight_via_sums(
    chars: &Characters,
    spec: &CodeSpec,
    x: FieldElem,
    cfg: &CharSumCfg,
) -> Result<i64, CodeError> {
    let ctx = chars.ctx();
    if !spec.matches(ctx) {
        return Err(CodeError::ContextMismatch);
    }
    if x.is_zero() {
        return Ok(0);
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for &tj in spec.t() {
        let alpha = ctx.mul(x, ctx.elem(i64::from(tj)));
        sum += chars
            .exponential_sum(alpha, spec.h())
            .map_err(CodeError::Char)?;
    }
    weight_from_sums(spec, sum, cfg)
}

/// The same formula for every nonzero `x = θ^k`, indexed by `k`.
pub fn codeword_weights_via_sums(
    chars: &Characters,
    spec: &CodeSpec,
    cfg: &CharSumCfg,
) -> Result<Vec<i64>, CodeError> {
    let ctx = chars.ctx();
    if !spec.matches(ctx) {
        return Err(CodeError::ContextMismatch);
    }
    let table = exponential_sums_by_class(chars, spec.h()).map_err(CodeError::Char)?;
    let h = spec.h();
    (0..ctx.order() - 1)
        .map(|k| {
            let x = ctx.elem(i64::from(k));
            let sum: Complex64 = spec
                .t()
                .iter()
                .map(|&tj| {
                    let alpha = ctx.mul(x, ctx.elem(i64::from(tj)));
                    table[coset_index(alpha, h).expect("nonzero") as usize]
                })
                .sum();
            weight_from_sums(spec, sum, cfg)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ColumnWitness {
    ZeroColumn { column: usize },
    Proportional { first: usize, second: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualDistanceCheck {
    pub holds: bool,
    pub witness: Option<ColumnWitness>,
}

/// `d(C^⊥) >= 3` iff no generator column is zero and no two columns are
/// `F_q`-proportional.
pub fn dual_distance_at_least_3(code: &LinearCode) -> DualDistanceCheck {
    let fq = code.ctx.fq();
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    for j in 0..code.n() {
        let col: Vec<u32> = code.gen_matrix.iter().map(|row| row[j]).collect();
        let Some(&lead) = col.iter().find(|&&c| c != 0) else {
            return DualDistanceCheck {
                holds: false,
                witness: Some(ColumnWitness::ZeroColumn { column: j }),
            };
        };
        let inv = fq.inv(lead).expect("nonzero");
        let normalized: Vec<u32> = col.iter().map(|&c| fq.mul(c, inv)).collect();
        if let Some(&first) = seen.get(&normalized) {
            return DualDistanceCheck {
                holds: false,
                witness: Some(ColumnWitness::Proportional { first, second: j }),
            };
        }
        seen.insert(normalized, j);
    }
    DualDistanceCheck {
        holds: true,
        witness: None,
    }
}
