//! Exact arithmetic in the tower `F_p ⊆ F_q ⊆ F_Q` with `q = p^e`, `Q = q^m`.
//!
//! Elements of `F_Q` are stored in discrete-log form ([`FieldElem`]): either
//! zero or `θ^k` with `0 <= k < Q-1`, where `θ` is the root of a primitive
//! polynomial. Multiplication is exponent addition. Addition goes through a
//! coordinate table over the `F_p`-basis `{ω^a θ^i : a < e, i < m}` where
//! `ω = θ^((Q-1)/(q-1))` generates `F_q^*`.
//!
//! With that basis an element's packed base-`p` coordinate word is, read in
//! base `q`, exactly its coordinate vector over the `F_q`-basis
//! `{1, θ, ..., θ^(m-1)}`. Elements of `F_q` are encoded the same way as
//! words below `q` (see [`SubField`]).

mod poly;

use std::fmt;

use thiserror::Error;

/// Default cap on `Q`; tables are `O(Q)` words.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degrees must be positive (e = {e}, m = {m})")]
    ZeroDegree { e: u32, m: u32 },
    #[error("field of order {p}^{degree} exceeds the table limit {limit}")]
    FieldTooLarge { p: u32, degree: u32, limit: u64 },
    #[error("no primitive polynomial of degree {0} found")]
    NoPrimitivePolyFound(u32),
    #[error("polynomial {0:?} is not primitive")]
    NotPrimitive(Vec<u32>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {0} is not an element of F_q")]
    BadCoordinate(u32),
    #[error("element {0} does not belong to this field")]
    ForeignElement(FieldElem),
}

/// Construction limits for [`FieldCtx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldConfig {
    pub max_order: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// An element of `F_Q`: zero, or `θ^k` for an exponent `k` reduced mod `Q-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(u32::MAX);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == u32::MAX
    }

    /// Discrete logarithm to base `θ`, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }

    #[cfg(test)]
    #[inline]
    pub(crate) fn from_log(k: u32) -> Self {
        FieldElem(k)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(k) => write!(f, "θ^{k}"),
        }
    }
}

/// Which subfield a trace lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subfield {
    Fq,
    Fp,
}

/// `F_q` with elements encoded as packed base-`p` words `0..q` over the basis
/// `{1, ω, ..., ω^(e-1)}`. For `e = 1` the word is the residue itself.
#[derive(Debug, Clone)]
pub struct SubField {
    p: u32,
    e: u32,
    q: u32,
    // word -> exponent of ω (word 0 unused)
    log: Vec<u32>,
    // exponent of ω -> word
    exp: Vec<u32>,
}

impl SubField {
    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            add_digits(a, b, self.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            neg_digits(a, self.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.e == 1 {
            return ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32;
        }
        let k = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let k = self.log[a as usize];
        Some(self.exp[((self.q - 1 - k) % (self.q - 1)) as usize])
    }

    /// Exponent of `a` to base `ω`.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }
}

#[inline]
fn add_digits(mut a: u32, mut b: u32, p: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let mut out = 0;
    let mut w = 1;
    while a > 0 || b > 0 {
        let d = (a % p + b % p) % p;
        out += d * w;
        w *= p;
        a /= p;
        b /= p;
    }
    out
}

#[inline]
fn neg_digits(mut a: u32, p: u32) -> u32 {
    if p == 2 {
        return a;
    }
    let mut out = 0;
    let mut w = 1;
    while a > 0 {
        let d = a % p;
        if d != 0 {
            out += (p - d) * w;
        }
        w *= p;
        a /= p;
    }
    out
}

fn unpack(mut v: u32, base: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % base);
        v /= base;
    }
    out
}

fn pack(digits: &[u32], base: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * base + d)
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The field tower with all lookup tables. Immutable after construction.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    m: u32,
    q: u32,
    order: u32,
    poly: Vec<u32>,
    // exponent k -> packed coordinates of θ^k
    vec_of: Vec<u32>,
    // packed coordinates -> exponent (index 0 unused)
    log_of: Vec<u32>,
    // exponent k -> Tr_{Q/q}(θ^k) as an F_q word
    trq_of_log: Vec<u32>,
    // F_q word -> Tr_{q/p}
    trp_of_fq: Vec<u32>,
    fq: SubField,
}

/// Builds `F_{p^(e m)}` under the default size cap.
pub fn build_field(p: u32, e: u32, m: u32) -> Result<FieldCtx, FieldError> {
    FieldCtx::new(p, e, m, &FieldConfig::default())
}

impl FieldCtx {
    /// Picks the first monic polynomial of degree `e m` (coefficients read as
    /// a base-`p` integer, constant term least significant) that is
    /// irreducible and has a primitive root.
    pub fn new(p: u32, e: u32, m: u32, cfg: &FieldConfig) -> Result<Self, FieldError> {
        let (degree, order) = Self::check_params(p, e, m, cfg)?;
        let group = u64::from(order - 1);
        let mut coeffs = vec![0u32; degree as usize];
        // c_0 must be nonzero; the counter walks c_0 fastest.
        for n in 1..u64::from(order) {
            let mut rest = n;
            for c in coeffs.iter_mut() {
                *c = (rest % u64::from(p)) as u32;
                rest /= u64::from(p);
            }
            if coeffs[0] == 0 {
                continue;
            }
            let mut f = coeffs.clone();
            f.push(1);
            if poly::is_irreducible(&f, p) && poly::x_has_order(&f, p, group) {
                return Self::from_primitive(p, e, m, coeffs.clone());
            }
        }
        Err(FieldError::NoPrimitivePolyFound(degree))
    }

    /// Builds the field from an explicit monic polynomial given by its low
    /// coefficients `c_0..c_(em-1)`.
    pub fn with_polynomial(
        p: u32,
        e: u32,
        m: u32,
        low_coeffs: &[u32],
        cfg: &FieldConfig,
    ) -> Result<Self, FieldError> {
        let (degree, order) = Self::check_params(p, e, m, cfg)?;
        if low_coeffs.len() != degree as usize {
            return Err(FieldError::DimensionMismatch {
                expected: degree as usize,
                got: low_coeffs.len(),
            });
        }
        let mut f: Vec<u32> = low_coeffs.iter().map(|c| c % p).collect();
        f.push(1);
        if !poly::is_irreducible(&f, p) || !poly::x_has_order(&f, p, u64::from(order - 1)) {
            return Err(FieldError::NotPrimitive(low_coeffs.to_vec()));
        }
        f.pop();
        Self::from_primitive(p, e, m, f)
    }

    fn check_params(p: u32, e: u32, m: u32, cfg: &FieldConfig) -> Result<(u32, u32), FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 || m == 0 {
            return Err(FieldError::ZeroDegree { e, m });
        }
        let degree = e.checked_mul(m).ok_or(FieldError::FieldTooLarge {
            p,
            degree: u32::MAX,
            limit: cfg.max_order,
        })?;
        let limit = cfg.max_order.min(u64::from(u32::MAX));
        let too_large = FieldError::FieldTooLarge {
            p,
            degree,
            limit: cfg.max_order,
        };
        let mut order = 1u64;
        for _ in 0..degree {
            order *= u64::from(p);
            if order > limit {
                return Err(too_large);
            }
        }
        Ok((degree, order as u32))
    }

    fn from_primitive(p: u32, e: u32, m: u32, poly: Vec<u32>) -> Result<Self, FieldError> {
        let n = (e * m) as usize;
        let q = p.pow(e);
        let order = p.pow(e * m);
        let group = (order - 1) as usize;
        let step = (order - 1) / (q - 1);

        // Powers of θ in the polynomial basis.
        let mut poly_pow = vec![0u32; group];
        let mut cur = vec![0u32; n];
        cur[0] = 1;
        for slot in poly_pow.iter_mut() {
            *slot = pack(&cur, p);
            let top = cur[n - 1];
            for i in (1..n).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (c, &fc) in cur.iter_mut().zip(poly.iter()) {
                    *c = (*c + (p - top) * fc % p) % p;
                }
            }
        }
        debug_assert_eq!(pack(&cur, p), 1);

        // Change of basis to {ω^a θ^i}, column a + e i.
        let basis_col = |a: u32, i: u32| -> Vec<u32> {
            let k = (u64::from(a) * u64::from(step) + u64::from(i)) % group as u64;
            unpack(poly_pow[k as usize], p, n)
        };
        let mut mat = vec![vec![0u32; n]; n];
        for i in 0..m {
            for a in 0..e {
                let col = basis_col(a, i);
                for (row, &v) in col.iter().enumerate() {
                    mat[row][(a + e * i) as usize] = v;
                }
            }
        }
        let inv = invert_mod_p(mat, p).ok_or(FieldError::NotPrimitive(poly.clone()))?;
        let to_basis = |v: &[u32]| -> Vec<u32> {
            (0..n)
                .map(|r| {
                    let s: u64 = (0..n).map(|c| u64::from(inv[r][c]) * u64::from(v[c])).sum();
                    (s % u64::from(p)) as u32
                })
                .collect()
        };
        // ω^a θ^m in the new basis, used when multiplying by θ overflows.
        let tail: Vec<Vec<u32>> = (0..e).map(|a| to_basis(&basis_col(a, m))).collect();

        let mut vec_of = vec![0u32; group];
        let mut log_of = vec![u32::MAX; order as usize];
        let mut digits = vec![0u32; n];
        digits[0] = 1;
        let ue = e as usize;
        for (k, slot) in vec_of.iter_mut().enumerate() {
            let w = pack(&digits, p);
            if log_of[w as usize] != u32::MAX {
                return Err(FieldError::NotPrimitive(poly));
            }
            *slot = w;
            log_of[w as usize] = k as u32;
            let mut next = vec![0u32; n];
            next[ue..n].copy_from_slice(&digits[..n - ue]);
            for a in 0..ue {
                let c = digits[a + n - ue];
                if c != 0 {
                    for (x, &t) in next.iter_mut().zip(tail[a].iter()) {
                        *x = (*x + c * t) % p;
                    }
                }
            }
            digits = next;
        }

        let mut fq_exp = vec![0u32; (q - 1) as usize];
        let mut fq_log = vec![u32::MAX; q as usize];
        for j in 0..q - 1 {
            let w = vec_of[(j * step) as usize];
            debug_assert!(w < q);
            fq_exp[j as usize] = w;
            fq_log[w as usize] = j;
        }
        let fq = SubField {
            p,
            e,
            q,
            log: fq_log,
            exp: fq_exp,
        };

        let mut ctx = FieldCtx {
            p,
            e,
            m,
            q,
            order,
            poly,
            vec_of,
            log_of,
            trq_of_log: Vec::new(),
            trp_of_fq: Vec::new(),
            fq,
        };
        ctx.build_traces();
        Ok(ctx)
    }

    fn build_traces(&mut self) {
        let n = (self.e * self.m) as usize;
        let qm = u64::from(self.q);
        let group = u64::from(self.order - 1);
        // Traces of the basis vectors from the definition Σ x^(q^i).
        let basis_trace: Vec<u32> = (0..n)
            .map(|j| {
                let x = self.from_packed(self.p.pow(j as u32));
                let k = u64::from(x.0);
                let mut acc = 0u32;
                let mut exp = k;
                for _ in 0..self.m {
                    acc = add_digits(acc, self.vec_of[exp as usize], self.p);
                    exp = exp * qm % group;
                }
                debug_assert!(acc < self.q);
                acc
            })
            .collect();
        // Extend by F_p-linearity over packed words.
        let mut trq_packed = vec![0u32; self.order as usize];
        for v in 1..self.order {
            let mut j = 0;
            let mut w = 1;
            while (v / w) % self.p == 0 {
                w *= self.p;
                j += 1;
            }
            trq_packed[v as usize] =
                add_digits(trq_packed[(v - w) as usize], basis_trace[j], self.p);
        }
        self.trq_of_log = self
            .vec_of
            .iter()
            .map(|&w| trq_packed[w as usize])
            .collect();

        let qg = self.q - 1;
        self.trp_of_fq = (0..self.q)
            .map(|c| {
                if c == 0 {
                    return 0;
                }
                let j = u64::from(self.fq.log[c as usize]);
                let mut acc = 0;
                let mut exp = j;
                for _ in 0..self.e {
                    acc = add_digits(acc, self.fq.exp[exp as usize], self.p);
                    exp = exp * u64::from(self.p) % u64::from(qg);
                }
                debug_assert!(acc < self.p);
                acc
            })
            .collect();
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }
    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }
    /// `q = p^e`.
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }
    /// `Q = q^m`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }
    /// Low coefficients `c_0..c_(em-1)` of the monic defining polynomial.
    pub fn polynomial(&self) -> &[u32] {
        &self.poly
    }
    #[inline]
    pub fn fq(&self) -> &SubField {
        &self.fq
    }

    #[inline]
    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }
    #[inline]
    pub fn one(&self) -> FieldElem {
        FieldElem(0)
    }
    #[inline]
    pub fn theta(&self) -> FieldElem {
        FieldElem(1 % (self.order - 1))
    }

    /// `θ^k` for any integer `k`.
    #[inline]
    pub fn elem(&self, k: i64) -> FieldElem {
        FieldElem(k.rem_euclid(i64::from(self.order - 1)) as u32)
    }

    pub fn check(&self, x: FieldElem) -> Result<FieldElem, FieldError> {
        if x.is_zero() || x.0 < self.order - 1 {
            Ok(x)
        } else {
            Err(FieldError::ForeignElement(x))
        }
    }

    /// All `Q` elements: zero first, then `θ^0, θ^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        std::iter::once(FieldElem::ZERO).chain((0..self.order - 1).map(FieldElem))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        let s = u64::from(a.0) + u64::from(b.0);
        FieldElem((s % u64::from(self.order - 1)) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.from_packed(add_digits(self.packed(a), self.packed(b), self.p))
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.from_packed(neg_digits(self.packed(a), self.p))
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        a.log().map(|k| self.elem(-i64::from(k)))
    }

    /// `a^n`; negative `n` inverts. `0^0 = 1`, `0^n = 0` otherwise.
    pub fn pow(&self, a: FieldElem, n: i64) -> FieldElem {
        match a.log() {
            None if n == 0 => self.one(),
            None => FieldElem::ZERO,
            Some(k) => {
                let g = i128::from(self.order - 1);
                FieldElem((i128::from(k) * i128::from(n)).rem_euclid(g) as u32)
            }
        }
    }

    /// Packed coordinate word of `x` (base `p`, equivalently base `q` over the
    /// `F_q`-basis `{θ^i}`).
    #[inline]
    pub fn packed(&self, x: FieldElem) -> u32 {
        if x.is_zero() {
            0
        } else {
            self.vec_of[x.0 as usize]
        }
    }

    #[inline]
    pub fn from_packed(&self, w: u32) -> FieldElem {
        if w == 0 {
            FieldElem::ZERO
        } else {
            FieldElem(self.log_of[w as usize])
        }
    }

    /// Coordinates of `x` over `{1, θ, ..., θ^(m-1)}` as `F_q` words.
    pub fn coords(&self, x: FieldElem) -> Vec<u32> {
        unpack(self.packed(x), self.q, self.m as usize)
    }

    pub fn uncoords(&self, v: &[u32]) -> Result<FieldElem, FieldError> {
        if v.len() != self.m as usize {
            return Err(FieldError::DimensionMismatch {
                expected: self.m as usize,
                got: v.len(),
            });
        }
        if let Some(&bad) = v.iter().find(|&&c| c >= self.q) {
            return Err(FieldError::BadCoordinate(bad));
        }
        Ok(self.from_packed(pack(v, self.q)))
    }

    #[inline]
    pub fn add_packed(&self, a: u32, b: u32) -> u32 {
        add_digits(a, b, self.p)
    }

    /// `c · v` for an `F_q` word `c` and a packed vector `v`.
    pub fn scale_packed(&self, c: u32, v: u32) -> u32 {
        if c == 0 || v == 0 {
            return 0;
        }
        if c == 1 {
            return v;
        }
        self.packed(self.mul(self.fq_elem(c), self.from_packed(v)))
    }

    /// Embeds an `F_q` word into `F_Q`.
    #[inline]
    pub fn fq_elem(&self, c: u32) -> FieldElem {
        self.from_packed(c)
    }

    /// The `F_q` word of `x` if `x ∈ F_q`.
    pub fn as_fq(&self, x: FieldElem) -> Option<u32> {
        let w = self.packed(x);
        (w < self.q).then_some(w)
    }

    /// `Tr_{Q/q}(x)` as an `F_q` word.
    #[inline]
    pub fn trace_q(&self, x: FieldElem) -> u32 {
        match x.log() {
            None => 0,
            Some(k) => self.trq_of_log[k as usize],
        }
    }

    /// `Tr_{Q/q}(θ^k)` for a reduced exponent.
    #[inline]
    pub fn trace_q_of_log(&self, k: u32) -> u32 {
        self.trq_of_log[k as usize]
    }

    /// `Tr_{Q/p}(x)` as an integer `0..p`.
    #[inline]
    pub fn trace_p(&self, x: FieldElem) -> u32 {
        self.trp_of_fq[self.trace_q(x) as usize]
    }

    /// `Tr_{q/p}` of an `F_q` word.
    #[inline]
    pub fn trace_fq_to_p(&self, c: u32) -> u32 {
        self.trp_of_fq[c as usize]
    }

    pub fn trace_to_subfield(&self, x: FieldElem, target: Subfield) -> FieldElem {
        match target {
            Subfield::Fq => self.fq_elem(self.trace_q(x)),
            Subfield::Fp => self.fq_elem(self.trace_p(x)),
        }
    }
}

fn invert_mod_p(mut a: Vec<Vec<u32>>, p: u32) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let mut inv: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect();
    let pp = u64::from(p);
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = u64::from(poly::inv_mod(a[col][col], p));
        for j in 0..n {
            a[col][j] = (u64::from(a[col][j]) * s % pp) as u32;
            inv[col][j] = (u64::from(inv[col][j]) * s % pp) as u32;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = u64::from(a[r][col]);
                for j in 0..n {
                    a[r][j] = ((u64::from(a[r][j]) + (pp - f) * u64::from(a[col][j])) % pp) as u32;
                    inv[r][j] =
                        ((u64::from(inv[r][j]) + (pp - f) * u64::from(inv[col][j])) % pp) as u32;
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests;
