//! Closed forms for the semi-primitive case `m = 2lk`, `h | q^k + 1`:
//! exponential sums, the two-weight table, explicit weight hierarchies, and
//! the classical Singleton, Griesmer and Plotkin bounds on `d_r`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomy::{coset_index, CodeSpec};
use crate::field::FieldElem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("no (k, l) with m = 2lk and h | q^k + 1")]
    NotApplicable,
    #[error("witnesses (k={k1}, l={l1}) and (k={k2}, l={l2}) predict different sums")]
    WitnessDisagreement { k1: u32, l1: u32, k2: u32, l2: u32 },
    #[error("exponential sum undefined at zero")]
    ZeroArgument,
    #[error("closed form {what} is not integral: {num}/{den}")]
    NonIntegral {
        what: &'static str,
        num: i128,
        den: i128,
    },
    #[error("r = {r} is outside 1..={m}")]
    BadR { r: u32, m: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiPrimitiveParams {
    pub k: u32,
    pub l: u32,
    pub h0: u32,
    /// `(-1)^l`
    pub sign: i32,
}

impl SemiPrimitiveParams {
    /// `S(α)` for `α` in class `i`.
    pub fn sum_for_class(&self, i: u32, h: u32, sqrt_q: i64) -> i64 {
        let sign = i64::from(self.sign);
        if i == self.h0 {
            -sign * (i64::from(h) - 1) * sqrt_q
        } else {
            sign * sqrt_q
        }
    }
}

/// A closed-form value with its applicability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Prediction {
    Value(u64),
    NotApplicable,
    NotCovered,
}

impl Prediction {
    pub fn value(self) -> Option<u64> {
        match self {
            Prediction::Value(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: u64,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTablePrediction {
    pub params: SemiPrimitiveParams,
    /// Rows with zero multiplicity are dropped.
    pub rows: Vec<WeightRow>,
    pub length: u64,
    pub dimension: u32,
    /// The dual code is claimed to have minimum distance at least 3.
    pub dual_distance_at_least_3: bool,
}

impl WeightTablePrediction {
    /// Nonzero weights with multiplicities plus the zero word, merged.
    pub fn distribution(&self) -> std::collections::BTreeMap<u64, u64> {
        let mut out = std::collections::BTreeMap::from([(0, 1)]);
        for r in &self.rows {
            *out.entry(r.weight).or_default() += r.multiplicity;
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSet {
    pub singleton_lo: u64,
    pub singleton_hi: u64,
    pub griesmer_lo: u64,
    pub plotkin_hi: u64,
}

impl BoundSet {
    pub fn lower(&self) -> u64 {
        self.singleton_lo.max(self.griesmer_lo)
    }
    pub fn upper(&self) -> u64 {
        self.singleton_hi.min(self.plotkin_hi)
    }
    pub fn contains(&self, d: u64) -> bool {
        self.lower() <= d && d <= self.upper()
    }
}

fn pow(q: u64, k: u32) -> i128 {
    i128::from(q).pow(k)
}

fn exact(what: &'static str, num: i128, den: i128) -> Result<u64, ClosedFormError> {
    if den == 0 || num % den != 0 || num / den < 0 {
        return Err(ClosedFormError::NonIntegral { what, num, den });
    }
    Ok((num / den) as u64)
}

fn h0_of(p: u32, q: u64, h: u32, k: u32, l: u32) -> u32 {
    let quotient = (pow(q, k) + 1) / i128::from(h);
    if p > 2 && l % 2 == 1 && quotient % 2 == 1 {
        h / 2
    } else {
        0
    }
}

/// Every `(k, l)` with `m = 2lk` and `h | q^k + 1`, by increasing `k`.
pub fn semiprimitive_witnesses(spec: &CodeSpec) -> Vec<SemiPrimitiveParams> {
    let m = spec.m();
    if m % 2 == 1 {
        return Vec::new();
    }
    let q = spec.q();
    let h = spec.h();
    (1..=m / 2)
        .filter(|k| (m / 2).is_multiple_of(*k))
        .filter(|&k| (pow(q, k) + 1) % i128::from(h) == 0)
        .map(|k| {
            let l = m / (2 * k);
            SemiPrimitiveParams {
                k,
                l,
                h0: h0_of(spec.p(), q, h, k, l),
                sign: if l.is_multiple_of(2) { 1 } else { -1 },
            }
        })
        .collect()
}

fn sqrt_order(spec: &CodeSpec) -> i64 {
    spec.q().pow(spec.m() / 2) as i64
}

/// The smallest-`k` witness, after checking that all witnesses predict the
/// same exponential sums.
pub fn semiprimitive_params(spec: &CodeSpec) -> Result<SemiPrimitiveParams, ClosedFormError> {
    let all = semiprimitive_witnesses(spec);
    let first = *all.first().ok_or(ClosedFormError::NotApplicable)?;
    let h = spec.h();
    let sq = sqrt_order(spec);
    let values = |w: &SemiPrimitiveParams| {
        (0..h)
            .map(|i| w.sum_for_class(i, h, sq))
            .collect::<Vec<_>>()
    };
    let want = values(&first);
    for w in &all[1..] {
        if values(w) != want {
            return Err(ClosedFormError::WitnessDisagreement {
                k1: first.k,
                l1: first.l,
                k2: w.k,
                l2: w.l,
            });
        }
    }
    Ok(first)
}

/// `S(α) = Σ_{x ∈ F_Q} ζ_p^{Tr(α x^h)}` from its closed form.
pub fn lemma1_exp_sum(
    alpha: FieldElem,
    spec: &CodeSpec,
    sp: &SemiPrimitiveParams,
) -> Result<i64, ClosedFormError> {
    let i = coset_index(alpha, spec.h()).map_err(|_| ClosedFormError::ZeroArgument)?;
    Ok(sp.sum_for_class(i, spec.h(), sqrt_order(spec)))
}

/// Gaussian periods `η_i = (S(θ^i) - 1)/h` from the closed form, as rationals
/// `(numerator, h)`.
pub fn lemma1_periods(spec: &CodeSpec, sp: &SemiPrimitiveParams) -> Vec<f64> {
    let h = spec.h();
    let sq = sqrt_order(spec);
    (0..h)
        .map(|i| (sp.sum_for_class(i, h, sq) - 1) as f64 / f64::from(h))
        .collect()
}

/// The two-weight table.
pub fn theorem3_predict(spec: &CodeSpec) -> Result<WeightTablePrediction, ClosedFormError> {
    let sp = semiprimitive_params(spec)?;
    let q = i128::from(spec.q());
    let big_q = i128::from(spec.order());
    let s = i128::from(spec.s());
    let h = i128::from(spec.h());
    let sq = i128::from(sqrt_order(spec));
    let sign = i128::from(sp.sign);
    let w1 = exact("w1", s * (big_q - 1) + s + sign * (h - s) * sq, q * h)?;
    let w2 = exact("w2", s * (big_q - 1) + s - s * sign * sq, q * h)?;
    let m1 = exact("multiplicity 1", s * (big_q - 1), h)?;
    let m2 = exact("multiplicity 2", (h - s) * (big_q - 1), h)?;
    let rows = [(w1, m1), (w2, m2)]
        .into_iter()
        .filter(|&(_, m)| m > 0)
        .map(|(weight, multiplicity)| WeightRow {
            weight,
            multiplicity,
        })
        .collect();
    Ok(WeightTablePrediction {
        params: sp,
        rows,
        length: spec.n(),
        dimension: spec.m(),
        dual_distance_at_least_3: true,
    })
}

fn check_r(spec: &CodeSpec, r: u32) -> Result<(), ClosedFormError> {
    if r == 0 || r > spec.m() {
        return Err(ClosedFormError::BadR { r, m: spec.m() });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `r ≤ m/2` (or `r ≤ l'k`)
    Low,
    /// `r ≥ m/2` (or `r ≥ m - l'k`)
    High,
}

/// Shared upper branch: `(s(q^m-1) - h(q^(m-r)-1)) / (h(q-1))`.
fn high_branch(spec: &CodeSpec, r: u32) -> Result<u64, ClosedFormError> {
    let (q, m) = (spec.q(), spec.m());
    let s = i128::from(spec.s());
    let h = i128::from(spec.h());
    exact(
        "upper branch",
        s * (pow(q, m) - 1) - h * (pow(q, m - r) - 1),
        h * (pow(q, 1) - 1),
    )
}

/// One branch of the odd-`l` hierarchy, evaluated at any `r` without range
/// checks, so the overlap at `r = m/2` can be compared.
pub fn corollary1_branch(spec: &CodeSpec, r: u32, branch: Branch) -> Result<u64, ClosedFormError> {
    check_r(spec, r)?;
    match branch {
        Branch::Low => {
            let (q, m) = (spec.q(), spec.m());
            let s = i128::from(spec.s());
            let h = i128::from(spec.h());
            if r > m / 2 {
                return Err(ClosedFormError::NotApplicable);
            }
            exact(
                "lower branch",
                s * (pow(q, m) - pow(q, m - r)) + (s - h) * pow(q, m / 2 - r) * (pow(q, r) - 1),
                h * (pow(q, 1) - 1),
            )
        }
        Branch::High => high_branch(spec, r),
    }
}

/// `d_r` when some witness has `l` odd.
pub fn corollary1_ghw(spec: &CodeSpec, r: u32) -> Result<Prediction, ClosedFormError> {
    check_r(spec, r)?;
    if !semiprimitive_witnesses(spec).iter().any(|w| w.l % 2 == 1) {
        return Ok(Prediction::NotApplicable);
    }
    let branch = if 2 * r <= spec.m() {
        Branch::Low
    } else {
        Branch::High
    };
    corollary1_branch(spec, r, branch).map(Prediction::Value)
}

/// `d_r` when some witness has `l = 2^u l'` with `u > 0`, and `s < h`.
/// Values of `r` strictly between `l'k` and `m - l'k` are not covered.
pub fn corollary2_ghw(spec: &CodeSpec, r: u32) -> Result<Prediction, ClosedFormError> {
    check_r(spec, r)?;
    let Some(w) = semiprimitive_witnesses(spec)
        .into_iter()
        .find(|w| w.l % 2 == 0)
    else {
        return Ok(Prediction::NotApplicable);
    };
    if spec.s() >= spec.h() {
        return Ok(Prediction::NotApplicable);
    }
    let odd = w.l >> w.l.trailing_zeros();
    let cut = odd * w.k;
    let m = spec.m();
    if r <= cut {
        let q = spec.q();
        let s = i128::from(spec.s());
        let h = i128::from(spec.h());
        exact(
            "lower branch",
            s * pow(q, m / 2 - r) * (pow(q, r) - 1) * (pow(q, m / 2) - 1),
            h * (pow(q, 1) - 1),
        )
        .map(Prediction::Value)
    } else if r >= m - cut {
        high_branch(spec, r).map(Prediction::Value)
    } else {
        Ok(Prediction::NotCovered)
    }
}

/// `d_r` forced for every spec: the full hierarchy when `s = h`, and
/// `d_(m-1) = n - 1` always.
pub fn remark_formulas(spec: &CodeSpec, r: u32) -> Option<u64> {
    if r == 0 || r > spec.m() {
        return None;
    }
    if spec.s() == spec.h() {
        let (q, m) = (spec.q(), spec.m());
        return Some((q.pow(m) - q.pow(m - r)) / (q - 1));
    }
    (r == spec.m() - 1).then(|| spec.n() - 1)
}

/// `[n, 2, n-1]` for `m = 2`.
pub fn mds_parameters(spec: &CodeSpec) -> Option<(u64, u32, u64)> {
    (spec.m() == 2).then(|| {
        let n = u64::from(spec.s()) * (spec.q() + 1) / u64::from(spec.h());
        (n, 2, n - 1)
    })
}

/// Singleton, Griesmer and Plotkin bounds on `d_r` for an `[n, m]_q` code
/// with minimum distance `d1`.
pub fn bounds(n: u64, m: u32, q: u64, r: u32, d1: u64) -> BoundSet {
    let griesmer_lo = (0..r).map(|i| d1.div_ceil(q.pow(i))).sum();
    let qm = u128::from(q).pow(m);
    let plotkin_hi =
        (u128::from(n) * (u128::from(q).pow(r) - 1) * u128::from(q).pow(m - r) / (qm - 1)) as u64;
    BoundSet {
        singleton_lo: u64::from(r),
        singleton_hi: n + u64::from(r) - u64::from(m),
        griesmer_lo,
        plotkin_hi,
    }
}
