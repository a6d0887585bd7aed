//! Generalized Hamming weights `d_r` by four independent routes.
//!
//! * `Direct`: over `r`-dimensional message subspaces `H`, count coordinates
//!   `j` with `Tr(β d_j) = 0` for every basis vector `β` of `H`.
//! * `Thm1`: over `(m-r)`-dimensional subspaces `H`, count `|D ∩ H|`.
//! * `Thm2Gauss`: the same maximum written through Gauss sums of the order-`h`
//!   multiplicative character.
//! * `Thm2Period`: the same maximum written through Gaussian periods and the
//!   coset profile of `H`.
//!
//! In each case `d_r = n - N_r` where `N_r` is the maximum of the per-subspace
//! count. All four are linear in the residue set `t`, so a [`FamilySweep`]
//! scores each subspace once per residue class and then evaluates any number
//! of `t`-sets sharing `(p, e, m, h)`.

use std::fmt;
use std::ops::AddAssign;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{CharError, CharSumCfg, Characters};
use crate::code::{build_code, CodeError, LinearCode};
use crate::cyclotomy::{build_defining_set, CodeSpec, SpecError};
use crate::field::{FieldCtx, FieldElem};
use crate::par;
use crate::subspace::{
    coset_profile, enumerate_subspaces, trace_dual, Grassmannian, Subspace, SubspaceError,
    DEFAULT_SUBSPACE_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Thm1,
    Thm2Gauss,
    Thm2Period,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Direct,
        Method::Thm1,
        Method::Thm2Gauss,
        Method::Thm2Period,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Thm1 => "thm1",
            Method::Thm2Gauss => "gauss",
            Method::Thm2Period => "period",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?} (expected direct, thm1, gauss or period)"))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GhwError {
    #[error("code has rank {rank}, but the weight formulas need rank m = {m}")]
    RankDeficient { rank: usize, m: usize },
    #[error("r = {r} is outside 1..={m}")]
    BadR { r: u32, m: u32 },
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error("N(C_r) is not integral: {0}")]
    NonIntegerResult(CharError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("weight hierarchy is not strictly increasing at r = {r}: {prev} then {next}")]
    NotIncreasing { r: u32, prev: u64, next: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhwConfig {
    pub subspace_budget: u128,
    pub chars: CharSumCfg,
    /// Subspaces per work unit.
    pub chunk: u64,
}

impl Default for GhwConfig {
    fn default() -> Self {
        Self {
            subspace_budget: DEFAULT_SUBSPACE_BUDGET,
            chars: CharSumCfg::default(),
            chunk: 2048,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhwResult {
    pub r: u32,
    pub d_r: u64,
    /// `N_r = n - d_r`, the maximized count.
    pub n_r: u64,
    pub method: Method,
    /// First optimal subspace in enumeration order: `H_r` for
    /// `direct`/`gauss`/`period`, `H_(m-r)` for `thm1`.
    pub witness: Subspace,
    pub witness_index: u128,
}

// ---------------------------------------------------------------------------
// sweep core

#[derive(Debug, Clone, Copy)]
struct Best {
    value: i64,
    index: u128,
}

fn merge(into: &mut [Option<Best>], from: Vec<Option<Best>>) {
    for (a, b) in into.iter_mut().zip(from) {
        if let Some(b) = b {
            match a {
                Some(cur) if cur.value >= b.value => {}
                _ => *a = Some(b),
            }
        }
    }
}

/// For every subspace, fills `scores[label]`; a `t`-set's value is the sum of
/// its labels' scores mapped through `value`. Returns the per-`t`-set maximum
/// and the first subspace index achieving it.
fn sweep<S, F, V>(
    g: &Grassmannian,
    labels: usize,
    tsets: &[Vec<u32>],
    chunk: u64,
    score: F,
    value: V,
) -> Result<Vec<Best>, GhwError>
where
    S: Copy + Default + AddAssign + Send,
    F: Fn(&Subspace, &mut [S]) + Sync + Send,
    V: Fn(usize, S) -> Result<i64, GhwError> + Sync + Send,
{
    let parts = par::map_ordered(g.chunks(chunk), |(start, end)| {
        let mut best: Vec<Option<Best>> = vec![None; tsets.len()];
        let mut buf = vec![S::default(); labels];
        for (index, h) in g.range(start, end) {
            buf.iter_mut().for_each(|x| *x = S::default());
            score(&h, &mut buf);
            for (ti, t) in tsets.iter().enumerate() {
                let mut acc = S::default();
                for &l in t {
                    acc += buf[l as usize];
                }
                let v = value(ti, acc)?;
                if best[ti].is_none_or(|b| v > b.value) {
                    best[ti] = Some(Best { value: v, index });
                }
            }
        }
        Ok::<_, GhwError>(best)
    });
    let mut best: Vec<Option<Best>> = vec![None; tsets.len()];
    for p in parts {
        merge(&mut best, p?);
    }
    Ok(best
        .into_iter()
        .map(|b| b.expect("nonempty Grassmannian"))
        .collect())
}

fn check_r(r: u32, m: u32) -> Result<(), GhwError> {
    if r == 0 || r > m {
        return Err(GhwError::BadR { r, m });
    }
    Ok(())
}

/// Labelled defining set: element logs and their label.
struct Columns {
    logs: Vec<u32>,
    labels: Vec<u32>,
    nlabels: usize,
}

impl Columns {
    fn unlabelled(elems: &[FieldElem]) -> Self {
        Self {
            logs: elems.iter().map(|d| d.log().expect("nonzero")).collect(),
            labels: vec![0; elems.len()],
            nlabels: 1,
        }
    }
}

fn direct_sweep(
    ctx: &FieldCtx,
    cols: &Columns,
    r: u32,
    tsets: &[Vec<u32>],
    cfg: &GhwConfig,
) -> Result<(Grassmannian, Vec<Best>), GhwError> {
    let g = enumerate_subspaces(ctx.m(), r, ctx.q(), cfg.subspace_budget)?;
    let group = ctx.order() - 1;
    let best = sweep(
        &g,
        cols.nlabels,
        tsets,
        cfg.chunk,
        |h, out: &mut [i64]| {
            let basis: Vec<u32> = h
                .basis_elements(ctx)
                .iter()
                .map(|b| b.log().expect("basis vectors are nonzero"))
                .collect();
            for (&d, &l) in cols.logs.iter().zip(&cols.labels) {
                let vanishes = basis.iter().all(|&b| {
                    let mut k = b + d;
                    if k >= group {
                        k -= group;
                    }
                    ctx.trace_q_of_log(k) == 0
                });
                if vanishes {
                    out[l as usize] += 1;
                }
            }
        },
        |_, n| Ok(n),
    )?;
    Ok((g, best))
}

fn thm1_sweep(
    ctx: &FieldCtx,
    elems: &[FieldElem],
    cols: &Columns,
    r: u32,
    tsets: &[Vec<u32>],
    cfg: &GhwConfig,
) -> Result<(Grassmannian, Vec<Best>), GhwError> {
    let g = enumerate_subspaces(ctx.m(), ctx.m() - r, ctx.q(), cfg.subspace_budget)?;
    let best = sweep(
        &g,
        cols.nlabels,
        tsets,
        cfg.chunk,
        |h, out: &mut [i64]| {
            for (&x, &l) in elems.iter().zip(&cols.labels) {
                if h.contains(ctx, x) {
                    out[l as usize] += 1;
                }
            }
        },
        |_, n| Ok(n),
    )?;
    Ok((g, best))
}

fn to_results(
    g: &Grassmannian,
    best: Vec<Best>,
    lengths: &[u64],
    r: u32,
    method: Method,
) -> Vec<GhwResult> {
    best.into_iter()
        .zip(lengths)
        .map(|(b, &n)| {
            let n_r = b.value as u64;
            GhwResult {
                r,
                d_r: n - n_r,
                n_r,
                method,
                witness: g.at(b.index).expect("index in range"),
                witness_index: b.index,
            }
        })
        .collect()
}

fn require_full_rank(code: &LinearCode) -> Result<(), GhwError> {
    if code.rank() != code.m() {
        return Err(GhwError::RankDeficient {
            rank: code.rank(),
            m: code.m(),
        });
    }
    Ok(())
}

/// `d_r` from the definition, for any trace code of full rank.
pub fn ghw_direct(code: &LinearCode, r: u32, cfg: &GhwConfig) -> Result<GhwResult, GhwError> {
    let ctx = code.ctx();
    check_r(r, ctx.m())?;
    require_full_rank(code)?;
    let cols = Columns::unlabelled(code.defining_set());
    let (g, best) = direct_sweep(ctx, &cols, r, &[vec![0]], cfg)?;
    Ok(to_results(&g, best, &[code.n() as u64], r, Method::Direct).remove(0))
}

/// `d_r = n - max{|D ∩ H| : dim H = m - r}`, for any trace code of full rank.
pub fn ghw_theorem1(code: &LinearCode, r: u32, cfg: &GhwConfig) -> Result<GhwResult, GhwError> {
    let ctx = code.ctx();
    check_r(r, ctx.m())?;
    require_full_rank(code)?;
    let cols = Columns::unlabelled(code.defining_set());
    let (g, best) = thm1_sweep(ctx, code.defining_set(), &cols, r, &[vec![0]], cfg)?;
    Ok(to_results(&g, best, &[code.n() as u64], r, Method::Thm1).remove(0))
}

/// Zero counts `N(C_r)` for a single message subspace `H_r`, per column.
pub fn zero_coordinates(code: &LinearCode, h: &Subspace) -> usize {
    let ctx = code.ctx();
    let basis = h.basis_elements(ctx);
    code.defining_set()
        .iter()
        .filter(|&&d| basis.iter().all(|&b| ctx.trace_q(ctx.mul(b, d)) == 0))
        .count()
}

// ---------------------------------------------------------------------------
// families sharing (p, e, m, h)

/// Shared state for all cyclotomic codes over one field with one `h`.
pub struct FamilySweep<'a> {
    ctx: &'a FieldCtx,
    h: u32,
    chars: Characters<'a>,
    eta: Vec<Complex64>,
    // G(φ^λ) for λ = 0..h
    gauss: Vec<Complex64>,
    // the s = h defining set, labelled by residue
    full: Vec<FieldElem>,
    cols: Columns,
    n0: u64,
}

/// Outcome of checking `N(C_r) = |D ∩ H_r^⊥|` over every `r`-subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub subspaces: u128,
    pub mismatches: u128,
}

impl<'a> FamilySweep<'a> {
    /// `h` must satisfy the code-spec constraints for this field.
    pub fn new(ctx: &'a FieldCtx, h: u32) -> Result<Self, GhwError> {
        let spec = crate::cyclotomy::validate_spec(ctx.p(), ctx.e(), ctx.m(), h, (0..h).collect())?;
        let full = build_defining_set(ctx, &spec)?;
        let chars = Characters::new(ctx);
        let eta = chars.gaussian_periods(h)?;
        let step = i64::from((ctx.order() - 1) / h);
        let gauss = (0..h)
            .map(|l| chars.gauss_sum(i64::from(l) * step))
            .collect();
        let cols = Columns {
            logs: full
                .elements
                .iter()
                .map(|d| d.log().expect("nonzero"))
                .collect(),
            labels: full.coset_ids.clone(),
            nlabels: h as usize,
        };
        Ok(Self {
            ctx,
            h,
            chars,
            eta,
            gauss,
            full: full.elements,
            cols,
            n0: spec.n0(),
        })
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }
    pub fn h(&self) -> u32 {
        self.h
    }
    /// Gaussian periods `η_0..η_(h-1)`.
    pub fn periods(&self) -> &[Complex64] {
        &self.eta
    }
    /// `G(φ^λ)` for `λ = 0..h`, with `φ = ψ_((Q-1)/h)`.
    pub fn gauss_sums(&self) -> &[Complex64] {
        &self.gauss
    }

    fn check_tsets(&self, tsets: &[Vec<u32>]) -> Result<(), GhwError> {
        for t in tsets {
            crate::cyclotomy::validate_spec(
                self.ctx.p(),
                self.ctx.e(),
                self.ctx.m(),
                self.h,
                t.clone(),
            )?;
        }
        Ok(())
    }

    /// `d_r` for every residue set in `tsets`, by one method.
    pub fn run(
        &self,
        method: Method,
        r: u32,
        tsets: &[Vec<u32>],
        cfg: &GhwConfig,
    ) -> Result<Vec<GhwResult>, GhwError> {
        let ctx = self.ctx;
        check_r(r, ctx.m())?;
        self.check_tsets(tsets)?;
        let lengths: Vec<u64> = tsets.iter().map(|t| t.len() as u64 * self.n0).collect();
        let (g, best) = match method {
            Method::Direct => direct_sweep(ctx, &self.cols, r, tsets, cfg)?,
            Method::Thm1 => thm1_sweep(ctx, &self.full, &self.cols, r, tsets, cfg)?,
            Method::Thm2Period => self.period_sweep(r, tsets, cfg)?,
            Method::Thm2Gauss => self.gauss_sweep(r, tsets, cfg)?,
        };
        Ok(to_results(&g, best, &lengths, r, method))
    }

    fn period_sweep(
        &self,
        r: u32,
        tsets: &[Vec<u32>],
        cfg: &GhwConfig,
    ) -> Result<(Grassmannian, Vec<Best>), GhwError> {
        let ctx = self.ctx;
        let g = enumerate_subspaces(ctx.m(), r, ctx.q(), cfg.subspace_budget)?;
        let h = self.h as usize;
        let q = f64::from(ctx.q());
        let denom = q.powi(r as i32) * (q - 1.0);
        let n0 = self.n0 as f64;
        let tol = cfg.chars;
        let best = sweep(
            &g,
            h,
            tsets,
            cfg.chunk,
            |sub, out: &mut [Complex64]| {
                let profile = coset_profile(ctx, sub, self.h);
                // residue t: Σ_i |H ∩ C_(i-t)| η_i
                for (t, slot) in out.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (i, &eta) in self.eta.iter().enumerate() {
                        let c = profile[(i + h - t) % h];
                        if c != 0 {
                            acc += eta * c as f64;
                        }
                    }
                    *slot = acc;
                }
            },
            |ti, sum| {
                let s = tsets[ti].len() as f64;
                let n = (Complex64::new(s * n0 * (q - 1.0), 0.0) + sum) / denom;
                tol.snap(n).map_err(GhwError::NonIntegerResult)
            },
        )?;
        Ok((g, best))
    }

    fn gauss_sweep(
        &self,
        r: u32,
        tsets: &[Vec<u32>],
        cfg: &GhwConfig,
    ) -> Result<(Grassmannian, Vec<Best>), GhwError> {
        let ctx = self.ctx;
        let g = enumerate_subspaces(ctx.m(), r, ctx.q(), cfg.subspace_budget)?;
        let h = self.h as usize;
        let step = i64::from((ctx.order() - 1) / self.h);
        let q = f64::from(ctx.q());
        let qr = q.powi(r as i32);
        let base_num = q.powi(ctx.m() as i32) - qr;
        let denom = f64::from(self.h) * qr * (q - 1.0);
        let tol = cfg.chars;
        // conj(φ^λ(θ^t)) G(φ^λ), λ = 1..h, t = 0..h
        let weights: Vec<Vec<Complex64>> = (0..h)
            .map(|t| {
                (1..h)
                    .map(|l| {
                        let conj = self.chars.mult_char_of_log(-(l as i64) * step, t as u32);
                        conj * self.gauss[l]
                    })
                    .collect()
            })
            .collect();
        let best = sweep(
            &g,
            h,
            tsets,
            cfg.chunk,
            |sub, out: &mut [Complex64]| {
                // P_λ = Σ_{β ∈ H^*} conj(φ^λ(β))
                let mut pl = vec![Complex64::new(0.0, 0.0); h.saturating_sub(1)];
                for beta in sub.elements(ctx).into_iter().skip(1) {
                    let k = beta.log().expect("nonzero");
                    for (l, slot) in pl.iter_mut().enumerate() {
                        *slot += self.chars.mult_char_of_log(-((l + 1) as i64) * step, k);
                    }
                }
                for (t, slot) in out.iter_mut().enumerate() {
                    *slot = weights[t].iter().zip(&pl).map(|(w, p)| w * p).sum();
                }
            },
            |ti, a_h| {
                let s = tsets[ti].len() as f64;
                let n = (Complex64::new(s * base_num, 0.0) + a_h) / denom;
                tol.snap(n).map_err(GhwError::NonIntegerResult)
            },
        )?;
        Ok((g, best))
    }

    /// Checks, for every `r`-dimensional `H` and every residue class `t`,
    /// that the zero count of the class-`t` coordinates equals
    /// `|D̄_t ∩ H^⊥|`. Summing over `t ∈ T` gives the identity for every code
    /// of the family.
    pub fn check_duality_identity(
        &self,
        r: u32,
        cfg: &GhwConfig,
    ) -> Result<IdentityCheck, GhwError> {
        let ctx = self.ctx;
        let g = enumerate_subspaces(ctx.m(), r, ctx.q(), cfg.subspace_budget)?;
        let h = self.h as usize;
        let parts = par::map_ordered(g.chunks(cfg.chunk), |(start, end)| {
            let mut bad = 0u128;
            let mut seen = 0u128;
            for (_, sub) in g.range(start, end) {
                let basis = sub.basis_elements(ctx);
                let dual = trace_dual(ctx, &sub);
                let mut zeros = vec![0u64; h];
                let mut inter = vec![0u64; h];
                for (&d, &l) in self.full.iter().zip(&self.cols.labels) {
                    if basis.iter().all(|&b| ctx.trace_q(ctx.mul(b, d)) == 0) {
                        zeros[l as usize] += 1;
                    }
                    if dual.contains(ctx, d) {
                        inter[l as usize] += 1;
                    }
                }
                seen += 1;
                if zeros != inter {
                    bad += 1;
                }
            }
            (seen, bad)
        });
        let (subspaces, mismatches) = parts
            .into_iter()
            .fold((0, 0), |(a, b), (c, d)| (a + c, b + d));
        Ok(IdentityCheck {
            subspaces,
            mismatches,
        })
    }
}

// ---------------------------------------------------------------------------
// per-spec entry points

fn spec_code<'a>(ctx: &'a FieldCtx, spec: &CodeSpec) -> Result<LinearCode<'a>, GhwError> {
    let d = build_defining_set(ctx, spec)?;
    Ok(build_code(ctx, &d.elements)?)
}

fn single(
    ctx: &FieldCtx,
    spec: &CodeSpec,
    method: Method,
    r: u32,
    cfg: &GhwConfig,
) -> Result<GhwResult, GhwError> {
    let code = spec_code(ctx, spec)?;
    require_full_rank(&code)?;
    let fam = FamilySweep::new(ctx, spec.h())?;
    Ok(fam.run(method, r, &[spec.t().to_vec()], cfg)?.remove(0))
}

/// Gaussian-period route for one code.
pub fn ghw_thm2_period(
    ctx: &FieldCtx,
    spec: &CodeSpec,
    r: u32,
    cfg: &GhwConfig,
) -> Result<GhwResult, GhwError> {
    single(ctx, spec, Method::Thm2Period, r, cfg)
}

/// Gauss-sum route for one code.
pub fn ghw_thm2_gauss(
    ctx: &FieldCtx,
    spec: &CodeSpec,
    r: u32,
    cfg: &GhwConfig,
) -> Result<GhwResult, GhwError> {
    single(ctx, spec, Method::Thm2Gauss, r, cfg)
}

/// `d_r` of the cyclotomic code by the chosen method.
pub fn ghw(
    ctx: &FieldCtx,
    spec: &CodeSpec,
    method: Method,
    r: u32,
    cfg: &GhwConfig,
) -> Result<GhwResult, GhwError> {
    match method {
        Method::Direct => ghw_direct(&spec_code(ctx, spec)?, r, cfg),
        Method::Thm1 => ghw_theorem1(&spec_code(ctx, spec)?, r, cfg),
        Method::Thm2Gauss | Method::Thm2Period => single(ctx, spec, method, r, cfg),
    }
}

/// `d_1, ..., d_(r_max)`, checked to be strictly increasing.
pub fn ghw_hierarchy(
    ctx: &FieldCtx,
    spec: &CodeSpec,
    method: Method,
    r_max: u32,
    cfg: &GhwConfig,
) -> Result<Vec<GhwResult>, GhwError> {
    let out = (1..=r_max)
        .map(|r| ghw(ctx, spec, method, r, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    check_increasing(&out)?;
    Ok(out)
}

pub fn check_increasing(results: &[GhwResult]) -> Result<(), GhwError> {
    for w in results.windows(2) {
        if w[1].d_r <= w[0].d_r {
            return Err(GhwError::NotIncreasing {
                r: w[1].r,
                prev: w[0].d_r,
                next: w[1].d_r,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
