//! `F_q`-subspaces of `F_Q ≅ F_q^m` in canonical reduced row-echelon form,
//! and exhaustive enumeration of the Grassmannian `[F_Q, r]_q`.
//!
//! Enumeration order: pivot-column sets in lexicographic order, then the free
//! entries as an odometer whose last free position (row-major) turns
//! fastest. Every subspace has a stable global index in that order.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldCtx, FieldElem, SubField};
use crate::linalg;

pub const DEFAULT_SUBSPACE_BUDGET: u128 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("dimension {r} exceeds ambient dimension {m}")]
    BadDimension { r: u32, m: u32 },
    #[error("enumerating {count} subspaces exceeds the budget {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
}

/// Number of `r`-dimensional subspaces of `F_q^m`.
pub fn gaussian_binomial(m: u32, r: u32, q: u64) -> u128 {
    if r > m {
        return 0;
    }
    let q = u128::from(q);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc = [m, i]_q, exact at every step
        let num = q.pow(m - i) - 1;
        let den = q.pow(i + 1) - 1;
        acc = acc * num / den;
    }
    acc
}

/// A subspace stored by its reduced row-echelon basis (rows of `F_q` words).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    m: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(m: usize) -> Self {
        let rows = (0..m)
            .map(|i| (0..m).map(|j| u32::from(i == j)).collect())
            .collect();
        Self {
            m,
            rows,
            pivots: (0..m).collect(),
        }
    }

    /// Span of arbitrary generator rows, canonicalized.
    pub fn from_generators(fq: &SubField, m: usize, mut gens: Vec<Vec<u32>>) -> Self {
        gens.retain(|g| g.iter().any(|&c| c != 0));
        let pivots = linalg::rref(fq, &mut gens);
        Self {
            m,
            rows: gens,
            pivots,
        }
    }

    /// `F_q`-span of field elements.
    pub fn span(ctx: &FieldCtx, elems: &[FieldElem]) -> Self {
        let gens = elems.iter().map(|&x| ctx.coords(x)).collect();
        Self::from_generators(ctx.fq(), ctx.m() as usize, gens)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.m
    }
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// True if re-reducing the basis reproduces it exactly.
    pub fn is_canonical(&self, fq: &SubField) -> bool {
        let again = Self::from_generators(fq, self.m, self.rows.clone());
        again == *self && self.pivots.windows(2).all(|w| w[0] < w[1])
    }

    /// Basis rows as field elements.
    pub fn basis_elements(&self, ctx: &FieldCtx) -> Vec<FieldElem> {
        self.rows
            .iter()
            .map(|r| ctx.uncoords(r).expect("row has ambient length"))
            .collect()
    }

    pub fn contains_coords(&self, fq: &SubField, v: &[u32]) -> bool {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                let f = fq.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = fq.add(*x, fq.mul(f, y));
                    }
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains(&self, ctx: &FieldCtx, x: FieldElem) -> bool {
        if ctx.q() == 2 {
            let mut w = ctx.packed(x);
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                if (w >> pc) & 1 == 1 {
                    w ^= pack_bits(row);
                }
            }
            return w == 0;
        }
        self.contains_coords(ctx.fq(), &ctx.coords(x))
    }

    /// All `q^r` members, zero first.
    pub fn elements(&self, ctx: &FieldCtx) -> Vec<FieldElem> {
        let q = ctx.q();
        let mut span: Vec<u32> = vec![0];
        span.reserve(q.pow(self.dim() as u32) as usize);
        for b in self.basis_elements(ctx) {
            let base = ctx.packed(b);
            let len = span.len();
            for c in 1..q {
                let scaled = ctx.scale_packed(c, base);
                for i in 0..len {
                    span.push(ctx.add_packed(span[i], scaled));
                }
            }
        }
        span.into_iter().map(|w| ctx.from_packed(w)).collect()
    }
}

fn pack_bits(row: &[u32]) -> u32 {
    row.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (b << i))
}

#[derive(Debug, Clone)]
struct PivotBlock {
    pivots: Vec<usize>,
    // (row, column) of each free entry, row-major
    free: Vec<(usize, usize)>,
    offset: u128,
    count: u128,
}

/// The set `[F_q^m, r]` with a fixed enumeration order.
#[derive(Debug, Clone)]
pub struct Grassmannian {
    q: u32,
    m: usize,
    r: usize,
    blocks: Vec<PivotBlock>,
    total: u128,
}

/// Enumerates all `r`-dimensional subspaces of `F_q^m`, refusing if their
/// number exceeds `budget`.
pub fn enumerate_subspaces(
    m: u32,
    r: u32,
    q: u32,
    budget: u128,
) -> Result<Grassmannian, SubspaceError> {
    if r > m {
        return Err(SubspaceError::BadDimension { r, m });
    }
    let count = gaussian_binomial(m, r, u64::from(q));
    if count > budget {
        return Err(SubspaceError::BudgetExceeded { count, budget });
    }
    Ok(Grassmannian::new(q, m as usize, r as usize))
}

impl Grassmannian {
    fn new(q: u32, m: usize, r: usize) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0u128;
        for pivots in (0..m).combinations(r) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(k, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..m)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (k, c))
                })
                .collect();
            let count = u128::from(q).pow(free.len() as u32);
            blocks.push(PivotBlock {
                pivots,
                free,
                offset,
                count,
            });
            offset += count;
        }
        Self {
            q,
            m,
            r,
            blocks,
            total: offset,
        }
    }

    pub fn count(&self) -> u128 {
        self.total
    }
    pub fn dim(&self) -> usize {
        self.r
    }
    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    fn build(&self, block: &PivotBlock, mut counter: u128) -> Subspace {
        let mut rows = vec![vec![0u32; self.m]; self.r];
        for (k, &pc) in block.pivots.iter().enumerate() {
            rows[k][pc] = 1;
        }
        let q = u128::from(self.q);
        for &(k, c) in block.free.iter().rev() {
            rows[k][c] = (counter % q) as u32;
            counter /= q;
        }
        Subspace {
            m: self.m,
            rows,
            pivots: block.pivots.clone(),
        }
    }

    /// The subspace with global index `index`.
    pub fn at(&self, index: u128) -> Option<Subspace> {
        if index >= self.total {
            return None;
        }
        let b = self.blocks.partition_point(|b| b.offset + b.count <= index);
        let block = &self.blocks[b];
        Some(self.build(block, index - block.offset))
    }

    pub fn iter(&self) -> SubspaceIter<'_> {
        self.range(0, self.total)
    }

    /// Iterates global indices `start..end`.
    pub fn range(&self, start: u128, end: u128) -> SubspaceIter<'_> {
        let end = end.min(self.total);
        let block = self.blocks.partition_point(|b| b.offset + b.count <= start);
        SubspaceIter {
            g: self,
            block,
            index: start,
            end,
        }
    }

    /// Splits the index range into pieces of at most `size` subspaces.
    pub fn chunks(&self, size: u64) -> Vec<(u128, u128)> {
        let size = u128::from(size.max(1));
        let n = self.total.div_ceil(size);
        (0..n)
            .map(|i| (i * size, ((i + 1) * size).min(self.total)))
            .collect()
    }
}

/// Streams subspaces with their global index.
#[derive(Debug, Clone)]
pub struct SubspaceIter<'a> {
    g: &'a Grassmannian,
    block: usize,
    index: u128,
    end: u128,
}

impl Iterator for SubspaceIter<'_> {
    type Item = (u128, Subspace);

    fn next(&mut self) -> Option<Self::Item> {
        if self.index >= self.end {
            return None;
        }
        while self.g.blocks[self.block].offset + self.g.blocks[self.block].count <= self.index {
            self.block += 1;
        }
        let b = &self.g.blocks[self.block];
        let s = self.g.build(b, self.index - b.offset);
        let i = self.index;
        self.index += 1;
        Some((i, s))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.index) as usize;
        (n, Some(n))
    }
}

/// `|{x ∈ S : x ∈ H}|`.
pub fn intersect_count(ctx: &FieldCtx, h: &Subspace, set: &[FieldElem]) -> usize {
    set.iter().filter(|&&x| h.contains(ctx, x)).count()
}

/// `H^⊥ = {v : Tr_{Q/q}(u v) = 0 for all u ∈ H}`.
pub fn trace_dual(ctx: &FieldCtx, h: &Subspace) -> Subspace {
    let m = ctx.m() as usize;
    // v ↦ Tr(u v) has coefficient Tr(u θ^i) on coordinate i.
    let mut pairing: Vec<Vec<u32>> = h
        .basis_elements(ctx)
        .into_iter()
        .map(|u| {
            (0..m)
                .map(|i| ctx.trace_q(ctx.mul(u, ctx.elem(i as i64))))
                .collect()
        })
        .collect();
    let pivots = linalg::rref(ctx.fq(), &mut pairing);
    let kernel = linalg::null_space(ctx.fq(), &pairing, &pivots, m);
    Subspace::from_generators(ctx.fq(), m, kernel)
}

/// Entry `i` is `|H^* ∩ C_i|` for the cyclotomic classes of order `h`.
pub fn coset_profile(ctx: &FieldCtx, h_space: &Subspace, h: u32) -> Vec<u64> {
    let mut profile = vec![0u64; h as usize];
    for x in h_space.elements(ctx).into_iter().skip(1) {
        profile[(x.log().expect("nonzero") % h) as usize] += 1;
    }
    profile
}
