//! Cyclotomic classes of order `h` and the defining set
//! `D̄ = {θ^(t_j + h i) : 1 <= j <= s, 0 <= i < n₀}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{is_prime, FieldConfig, FieldCtx, FieldElem, FieldError};

/// One violated constraint of a code specification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    /// `p` is not prime, or `e`/`m` is zero, or `Q` overflows.
    BadField {
        reason: String,
    },
    /// `h (q - 1)` does not divide `Q - 1`.
    NonDivisor {
        h: u32,
        q: u64,
        order: u64,
    },
    /// `h` is not in the open interval `(1, √Q + 1)`.
    HOutOfRange {
        h: u32,
        order: u64,
    },
    /// `t` is not strictly increasing.
    TNotSorted,
    /// Some `t_j >= h`.
    TOutOfRange {
        t: u32,
        h: u32,
    },
    EmptyT,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadField { reason } => write!(f, "BadField: {reason}"),
            Violation::NonDivisor { h, q, order } => {
                write!(
                    f,
                    "NonDivisor: h(q-1) = {} does not divide Q-1 = {}",
                    u64::from(*h) * (q - 1),
                    order - 1
                )
            }
            Violation::HOutOfRange { h, order } => {
                write!(f, "HOutOfRange: h = {h} is not in (1, sqrt({order}) + 1)")
            }
            Violation::TNotSorted => write!(f, "TNotSorted: t must be strictly increasing"),
            Violation::TOutOfRange { t, h } => {
                write!(f, "TOutOfRange: t = {t} is not below h = {h}")
            }
            Violation::EmptyT => write!(f, "EmptyT: t must be nonempty"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("invalid code specification: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("field context F_{ctx_p}^({ctx_degree}) does not match the specification")]
    ContextMismatch { ctx_p: u32, ctx_degree: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("coset index of zero is undefined")]
    ZeroArgument,
}

impl SpecError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            SpecError::Invalid(v) => v,
            _ => &[],
        }
    }
}

/// Parameters `(p, e, m, h, t)` of one cyclotomic code. Only constructible
/// through [`validate_spec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CodeSpec {
    p: u32,
    e: u32,
    m: u32,
    h: u32,
    t: Vec<u32>,
}

impl CodeSpec {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn h(&self) -> u32 {
        self.h
    }
    pub fn t(&self) -> &[u32] {
        &self.t
    }
    pub fn s(&self) -> u32 {
        self.t.len() as u32
    }
    pub fn q(&self) -> u64 {
        u64::from(self.p).pow(self.e)
    }
    /// `Q = q^m`.
    pub fn order(&self) -> u64 {
        self.q().pow(self.m)
    }
    /// `n₀ = (q^m - 1) / (h (q - 1))`.
    pub fn n0(&self) -> u64 {
        (self.order() - 1) / (u64::from(self.h) * (self.q() - 1))
    }
    /// Code length `s n₀`.
    pub fn n(&self) -> u64 {
        u64::from(self.s()) * self.n0()
    }

    pub fn build_field(&self, cfg: &FieldConfig) -> Result<FieldCtx, FieldError> {
        FieldCtx::new(self.p, self.e, self.m, cfg)
    }

    /// Same field and `h`, different residues. Fails on invalid `t`.
    pub fn with_t(&self, t: Vec<u32>) -> Result<CodeSpec, SpecError> {
        validate_spec(self.p, self.e, self.m, self.h, t)
    }

    pub fn matches(&self, ctx: &FieldCtx) -> bool {
        ctx.p() == self.p && ctx.e() == self.e && ctx.m() == self.m
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.t.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "p={} e={} m={} h={} t=[{}]",
            self.p,
            self.e,
            self.m,
            self.h,
            t.join(",")
        )
    }
}

impl<'de> Deserialize<'de> for CodeSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            p: u32,
            e: u32,
            m: u32,
            h: u32,
            t: Vec<u32>,
        }
        let r = Raw::deserialize(d)?;
        validate_spec(r.p, r.e, r.m, r.h, r.t).map_err(serde::de::Error::custom)
    }
}

/// Checks every constraint and reports all violations at once.
pub fn validate_spec(p: u32, e: u32, m: u32, h: u32, t: Vec<u32>) -> Result<CodeSpec, SpecError> {
    let mut v = Vec::new();
    let order = if !is_prime(p) {
        v.push(Violation::BadField {
            reason: format!("{p} is not prime"),
        });
        None
    } else if e == 0 || m == 0 {
        v.push(Violation::BadField {
            reason: format!("extension degrees must be positive (e = {e}, m = {m})"),
        });
        None
    } else {
        let order = e
            .checked_mul(m)
            .and_then(|d| u64::from(p).checked_pow(d))
            .filter(|&o| o <= u64::from(u32::MAX));
        if order.is_none() {
            v.push(Violation::BadField {
                reason: format!("{p}^({e}*{m}) is too large"),
            });
        }
        order
    };

    if let Some(order) = order {
        let q = u64::from(p).pow(e);
        let hq = u64::from(h) * (q - 1);
        if hq == 0 || (order - 1) % hq != 0 {
            v.push(Violation::NonDivisor { h, q, order });
        }
        // 1 < h < √Q + 1  ⇔  h >= 2 and (h - 1)^2 < Q
        let hm1 = u64::from(h.saturating_sub(1));
        if h <= 1 || hm1 * hm1 >= order {
            v.push(Violation::HOutOfRange { h, order });
        }
    }

    if t.is_empty() {
        v.push(Violation::EmptyT);
    }
    if t.windows(2).any(|w| w[0] >= w[1]) {
        v.push(Violation::TNotSorted);
    }
    for &tj in &t {
        if tj >= h {
            v.push(Violation::TOutOfRange { t: tj, h });
        }
    }

    if v.is_empty() {
        Ok(CodeSpec { p, e, m, h, t })
    } else {
        Err(SpecError::Invalid(v))
    }
}

/// Index `i` of the class `C_i` containing `x`, i.e. `log_θ(x) mod h`.
pub fn coset_index(x: FieldElem, h: u32) -> Result<u32, SpecError> {
    x.log().map(|k| k % h).ok_or(SpecError::ZeroArgument)
}

/// The members of `C_i`, in the order `θ^i (θ^h)^j`.
pub fn cyclotomic_class(ctx: &FieldCtx, i: u32, h: u32) -> Vec<FieldElem> {
    let size = (ctx.order() - 1) / h;
    (0..size)
        .map(|j| ctx.elem(i64::from(i) + i64::from(h) * i64::from(j)))
        .collect()
}

/// `D̄` in j-major, i-minor order with the class index of each element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    pub elements: Vec<FieldElem>,
    pub coset_ids: Vec<u32>,
}

impl DefiningSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn build_defining_set(ctx: &FieldCtx, spec: &CodeSpec) -> Result<DefiningSet, SpecError> {
    if !spec.matches(ctx) {
        return Err(SpecError::ContextMismatch {
            ctx_p: ctx.p(),
            ctx_degree: ctx.e() * ctx.m(),
        });
    }
    let n0 = spec.n0() as i64;
    let h = i64::from(spec.h());
    let mut elements = Vec::with_capacity(spec.n() as usize);
    let mut coset_ids = Vec::with_capacity(spec.n() as usize);
    for &tj in spec.t() {
        for i in 0..n0 {
            elements.push(ctx.elem(i64::from(tj) + h * i));
            coset_ids.push(tj);
        }
    }
    Ok(DefiningSet {
        elements,
        coset_ids,
    })
}
