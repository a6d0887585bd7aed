//! Dense polynomials over a prime field, just enough to pick a primitive
//! defining polynomial.
//!
//! Coefficients are stored lowest degree first and kept trimmed (no trailing
//! zeros). The zero polynomial is the empty vector.

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p = u64::from(p);
    let mut base = u64::from(base) % p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc as u32
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Remainder of `a` modulo `f` (`f` nonzero).
fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let df = f.len() - 1;
    let lead_inv = u64::from(inv_mod(f[df], p));
    while a.len() > df {
        let top = a.len() - 1;
        let c = (u64::from(a[top]) * lead_inv % u64::from(p)) as u32;
        let shift = top - df;
        for (i, &fi) in f.iter().enumerate() {
            let t = (u64::from(c) * u64::from(fi) % u64::from(p)) as u32;
            a[shift + i] = (a[shift + i] + p - t) % p;
        }
        a = trim(a);
    }
    a
}

fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let pp = u64::from(p);
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + u64::from(x) * u64::from(y)) % pp;
        }
    }
    let out: Poly = out.into_iter().map(|c| c as u32).collect();
    rem(&out, f, p)
}

pub(crate) fn pow_x_mod(exp: u64, f: &[u32], p: u32) -> Poly {
    let mut acc: Poly = rem(&[1], f, p);
    let mut base: Poly = rem(&[0, 1], f, p);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, f, p);
        }
        base = mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn pow_poly_mod(base: &[u32], exp: u64, f: &[u32], p: u32) -> Poly {
    let mut acc: Poly = rem(&[1], f, p);
    let mut base = rem(base, f, p);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, f, p);
        }
        base = mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a monic `f` of degree `n >= 1`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    let x: Poly = vec![0, 1];
    let mut xp = rem(&x, f, p);
    for _ in 0..n / 2 {
        // xp <- xp^p, i.e. x^(p^i)
        xp = pow_poly_mod(&xp, u64::from(p), f, p);
        let g = gcd(f, &sub(&xp, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// True iff the class of `x` has multiplicative order exactly `group_order`
/// in `F_p[x]/(f)`.
pub(crate) fn x_has_order(f: &[u32], p: u32, group_order: u64) -> bool {
    if pow_x_mod(group_order, f, p) != [1] {
        return false;
    }
    prime_factors(group_order)
        .into_iter()
        .all(|l| pow_x_mod(group_order / l, f, p) != [1])
}
