//! Character sums over `F_Q`, evaluated numerically.
//!
//! Sums run in ascending exponent order so results are reproducible
//! bit-for-bit. Values that a closed form says are integers are recovered
//! with [`CharSumCfg::snap`].

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::field::{FieldCtx, FieldElem};

pub type ComplexVal = Complex64;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharError {
    #[error("multiplicative character evaluated at zero")]
    ZeroArgument,
    #[error("{h} does not divide Q - 1 = {group}")]
    NotADivisor { h: u32, group: u32 },
    #[error("value {re} + {im}i is not within {tol} of an integer")]
    NonIntegerResult { re: f64, im: f64, tol: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharSumCfg {
    pub tolerance: f64,
}

impl Default for CharSumCfg {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl CharSumCfg {
    /// Rounds `z` to the nearest integer, failing if it is not within
    /// tolerance of one.
    pub fn snap(&self, z: Complex64) -> Result<i64, CharError> {
        let r = z.re.round();
        if (z.re - r).abs() < self.tolerance && z.im.abs() < self.tolerance {
            Ok(r as i64)
        } else {
            Err(CharError::NonIntegerResult {
                re: z.re,
                im: z.im,
                tol: self.tolerance,
            })
        }
    }
}

/// Precomputed `p`-th and `(Q-1)`-th roots of unity for one field.
#[derive(Debug, Clone)]
pub struct Characters<'a> {
    ctx: &'a FieldCtx,
    zeta_p: Vec<Complex64>,
    roots: Vec<Complex64>,
}

impl<'a> Characters<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Self {
        let p = ctx.p();
        let g = ctx.order() - 1;
        let zeta_p = (0..p)
            .map(|t| Complex64::from_polar(1.0, TAU * f64::from(t) / f64::from(p)))
            .collect();
        let roots = (0..g)
            .map(|k| Complex64::from_polar(1.0, TAU * f64::from(k) / f64::from(g)))
            .collect();
        Self { ctx, zeta_p, roots }
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    #[inline]
    fn group(&self) -> u64 {
        u64::from(self.ctx.order() - 1)
    }

    /// `ζ_p^t`.
    #[inline]
    pub fn zeta(&self, t: u32) -> Complex64 {
        self.zeta_p[t as usize]
    }

    /// `χ_1(θ^k) = ζ_p^(Tr_{Q/p}(θ^k))` for a reduced exponent.
    #[inline]
    pub fn canonical_of_log(&self, k: u32) -> Complex64 {
        let t = self.ctx.trace_fq_to_p(self.ctx.trace_q_of_log(k));
        self.zeta_p[t as usize]
    }

    /// `χ_b(c) = ζ_p^(Tr_{Q/p}(b c))`.
    pub fn additive_char(&self, b: FieldElem, c: FieldElem) -> Complex64 {
        self.zeta_p[self.ctx.trace_p(self.ctx.mul(b, c)) as usize]
    }

    /// `ψ_j(θ^k) = exp(2πi j k / (Q-1))`; `j` may be any integer.
    pub fn mult_char(&self, j: i64, x: FieldElem) -> Result<Complex64, CharError> {
        let k = x.log().ok_or(CharError::ZeroArgument)?;
        Ok(self.mult_char_of_log(j, k))
    }

    #[inline]
    pub fn mult_char_of_log(&self, j: i64, k: u32) -> Complex64 {
        let g = self.group();
        let j = j.rem_euclid(g as i64) as u64;
        self.roots[(j * u64::from(k) % g) as usize]
    }

    /// `G(ψ_j, χ_1) = Σ_{x ≠ 0} ψ_j(x) χ_1(x)`.
    pub fn gauss_sum(&self, j: i64) -> Complex64 {
        let g = self.group();
        let j = j.rem_euclid(g as i64) as u64;
        (0..g)
            .map(|k| self.roots[(j * k % g) as usize] * self.canonical_of_log(k as u32))
            .sum()
    }

    fn check_divisor(&self, h: u32) -> Result<(), CharError> {
        let group = self.ctx.order() - 1;
        if h == 0 || !group.is_multiple_of(h) {
            return Err(CharError::NotADivisor { h, group });
        }
        Ok(())
    }

    /// `S(α) = Σ_{x ∈ F_Q} χ_1(α x^h)`, summed literally over all `Q` elements.
    pub fn exponential_sum(&self, alpha: FieldElem, h: u32) -> Result<Complex64, CharError> {
        self.check_divisor(h)?;
        let Some(a) = alpha.log() else {
            return Ok(Complex64::new(f64::from(self.ctx.order()), 0.0));
        };
        let g = self.group();
        let mut acc = Complex64::new(1.0, 0.0);
        for k in 0..g {
            let e = (u64::from(a) + u64::from(h) * k) % g;
            acc += self.canonical_of_log(e as u32);
        }
        Ok(acc)
    }

    /// `η_i = Σ_{x ∈ C_i} χ_1(x)` over the class `θ^i ⟨θ^h⟩`.
    pub fn gaussian_period(&self, i: u32, h: u32) -> Result<Complex64, CharError> {
        self.check_divisor(h)?;
        let g = self.group();
        let size = g / u64::from(h);
        Ok((0..size)
            .map(|j| self.canonical_of_log(((u64::from(i) + u64::from(h) * j) % g) as u32))
            .sum())
    }

    /// `(η_0, ..., η_(h-1))`.
    pub fn gaussian_periods(&self, h: u32) -> Result<Vec<Complex64>, CharError> {
        (0..h).map(|i| self.gaussian_period(i, h)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < DEFAULT_TOLERANCE
    }

    #[test]
    fn additive_character_basics() {
        let ctx = build_field(2, 1, 6).unwrap();
        let ch = Characters::new(&ctx);
        let one = Complex64::new(1.0, 0.0);
        for x in ctx.elements() {
            assert!(close(ch.additive_char(x, ctx.zero()), one));
            assert!(close(ch.additive_char(ctx.zero(), x), one));
            assert!((ch.additive_char(ctx.one(), x).norm() - 1.0).abs() < 1e-12);
        }
        let total: Complex64 = ctx.elements().map(|c| ch.additive_char(ctx.one(), c)).sum();
        assert!(close(total, Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn orthogonality() {
        for (p, e, m) in [(2, 1, 4), (3, 1, 2), (3, 1, 4), (2, 2, 3), (5, 1, 2)] {
            let ctx = build_field(p, e, m).unwrap();
            let ch = Characters::new(&ctx);
            let g = i64::from(ctx.order() - 1);
            for j in 1..g {
                let s: Complex64 = (0..g).map(|k| ch.mult_char(j, ctx.elem(k)).unwrap()).sum();
                assert!(close(s, Complex64::new(0.0, 0.0)));
            }
            for b in ctx.elements().skip(1) {
                let s: Complex64 = ctx.elements().map(|c| ch.additive_char(b, c)).sum();
                assert!(close(s, Complex64::new(0.0, 0.0)));
            }
        }
    }

    #[test]
    fn multiplicative_character_basics() {
        let ctx = build_field(2, 1, 6).unwrap();
        let ch = Characters::new(&ctx);
        assert_eq!(ch.mult_char(1, ctx.zero()), Err(CharError::ZeroArgument));
        for k in 0..63 {
            assert!(close(
                ch.mult_char(0, ctx.elem(k)).unwrap(),
                Complex64::new(1.0, 0.0)
            ));
        }
        for j in [1i64, 5, 62] {
            let expect = Complex64::from_polar(1.0, TAU * j as f64 / 63.0);
            assert!(close(ch.mult_char(j, ctx.theta()).unwrap(), expect));
            // multiplicativity
            let (x, y) = (ctx.elem(11), ctx.elem(40));
            let lhs = ch.mult_char(j, ctx.mul(x, y)).unwrap();
            let rhs = ch.mult_char(j, x).unwrap() * ch.mult_char(j, y).unwrap();
            assert!(close(lhs, rhs));
        }
        // the order-3 character is trivial exactly on C_0
        for k in 0..63 {
            let v = ch.mult_char(21, ctx.elem(k)).unwrap();
            assert_eq!(close(v, Complex64::new(1.0, 0.0)), k % 3 == 0);
        }
    }

    #[test]
    fn gauss_sum_values() {
        let ctx = build_field(2, 1, 6).unwrap();
        let ch = Characters::new(&ctx);
        assert!(close(ch.gauss_sum(0), Complex64::new(-1.0, 0.0)));
        for j in 1..63 {
            assert!((ch.gauss_sum(j).norm() - 8.0).abs() < DEFAULT_TOLERANCE);
        }
        // G(ψ) G(ψ̄) = ψ(-1) Q
        for (p, m) in [(2, 4), (3, 2), (5, 2)] {
            let ctx = build_field(p, 1, m).unwrap();
            let ch = Characters::new(&ctx);
            let g = i64::from(ctx.order() - 1);
            let minus_one = ctx.neg(ctx.one());
            for j in 1..g {
                let lhs = ch.gauss_sum(j) * ch.gauss_sum(-j);
                let rhs = ch.mult_char(j, minus_one).unwrap() * f64::from(ctx.order());
                assert!(close(lhs, rhs), "p={p} m={m} j={j}");
            }
        }
    }

    #[test]
    fn exponential_sums_flagship() {
        let ctx = build_field(2, 1, 6).unwrap();
        let ch = Characters::new(&ctx);
        let cfg = CharSumCfg::default();
        assert_eq!(cfg.snap(ch.exponential_sum(ctx.zero(), 3).unwrap()), Ok(64));
        assert_eq!(cfg.snap(ch.exponential_sum(ctx.one(), 3).unwrap()), Ok(16));
        assert_eq!(
            cfg.snap(ch.exponential_sum(ctx.theta(), 3).unwrap()),
            Ok(-8)
        );
        assert!(matches!(
            ch.exponential_sum(ctx.one(), 5),
            Err(CharError::NotADivisor { .. })
        ));
    }

    #[test]
    fn periods_flagship() {
        let ctx = build_field(2, 1, 6).unwrap();
        let ch = Characters::new(&ctx);
        let eta = ch.gaussian_periods(3).unwrap();
        for (v, expect) in eta.iter().zip([5.0, -3.0, -3.0]) {
            assert!(close(*v, Complex64::new(expect, 0.0)));
        }
    }

    #[test]
    fn periods_sum_and_identity() {
        for (p, e, m) in [
            (2, 1, 4),
            (2, 1, 6),
            (3, 1, 2),
            (3, 1, 4),
            (2, 2, 3),
            (5, 1, 2),
        ] {
            let ctx = build_field(p, e, m).unwrap();
            let ch = Characters::new(&ctx);
            let g = ctx.order() - 1;
            for h in (1..=g).filter(|h| g.is_multiple_of(*h)) {
                let eta = ch.gaussian_periods(h).unwrap();
                let total: Complex64 = eta.iter().sum();
                assert!(close(total, Complex64::new(-1.0, 0.0)));
                for (i, &eta_i) in eta.iter().enumerate() {
                    let s = ch.exponential_sum(ctx.elem(i as i64), h).unwrap();
                    assert!(close(s, eta_i * f64::from(h) + 1.0));
                }
                if h == g {
                    for (i, &eta_i) in eta.iter().enumerate() {
                        assert!(close(eta_i, ch.canonical_of_log(i as u32)));
                    }
                }
            }
        }
    }

    #[test]
    fn snapping() {
        let cfg = CharSumCfg::default();
        assert_eq!(cfg.snap(Complex64::new(3.0 + 1e-12, -1e-12)), Ok(3));
        assert!(cfg.snap(Complex64::new(2.5, 0.0)).is_err());
        assert!(cfg.snap(Complex64::new(2.0, 1e-3)).is_err());
    }
}
