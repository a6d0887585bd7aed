use super::*;
use proptest::prelude::*;

/// Independent oracle: θ^k as a coefficient vector, by repeated
/// multiplication by x modulo the monic polynomial with low coefficients `f`.
fn poly_power(f: &[u32], p: u32, k: u64) -> Vec<u32> {
    let n = f.len();
    let mut cur = vec![0u32; n];
    cur[0] = 1;
    for _ in 0..k {
        let top = cur[n - 1];
        let mut next = vec![0u32; n];
        next[1..].copy_from_slice(&cur[..n - 1]);
        for i in 0..n {
            next[i] = (next[i] + (p - top) * f[i]) % p;
        }
        cur = next;
    }
    cur
}

#[test]
fn gf16_uses_lexicographically_first_primitive_polynomial() {
    let ctx = build_field(2, 1, 4).unwrap();
    assert_eq!(ctx.order(), 16);
    // x^4 + x + 1
    assert_eq!(ctx.polynomial(), &[1, 1, 0, 0]);
    let t4 = ctx.pow(ctx.theta(), 4);
    assert_eq!(t4, ctx.add(ctx.theta(), ctx.one()));
}

#[test]
fn prime_field_generator() {
    let ctx = build_field(3, 1, 1).unwrap();
    assert_eq!(ctx.order(), 3);
    assert_eq!(ctx.packed(ctx.theta()), 2);
}

#[test]
fn gf64_theta_has_full_order() {
    let ctx = build_field(2, 1, 6).unwrap();
    assert_eq!(ctx.order(), 64);
    // repeated squaring oracle on the polynomial side
    let f = ctx.polynomial().to_vec();
    assert_eq!(poly_power(&f, 2, 63), vec![1, 0, 0, 0, 0, 0]);
    for d in [1u64, 3, 7, 9, 21] {
        assert_ne!(
            poly_power(&f, 2, d),
            vec![1, 0, 0, 0, 0, 0],
            "order divides {d}"
        );
    }
    assert_eq!(ctx.pow(ctx.theta(), 63), ctx.one());
}

#[test]
fn table_matches_polynomial_oracle_prime_base() {
    for (p, m) in [(2, 6), (3, 4), (5, 2), (2, 10)] {
        let ctx = build_field(p, 1, m).unwrap();
        let f = ctx.polynomial().to_vec();
        for k in [0u64, 1, 2, 5, 17, u64::from(ctx.order()) - 2] {
            let expect = poly_power(&f, p, k % u64::from(ctx.order() - 1));
            assert_eq!(ctx.coords(ctx.elem(k as i64)), expect, "p={p} m={m} k={k}");
        }
    }
}

#[test]
fn errors() {
    assert_eq!(build_field(4, 1, 2).unwrap_err(), FieldError::NotPrime(4));
    assert!(matches!(
        build_field(2, 1, 21),
        Err(FieldError::FieldTooLarge { .. })
    ));
    assert!(matches!(
        build_field(2, 0, 3),
        Err(FieldError::ZeroDegree { .. })
    ));
    let cfg = FieldConfig { max_order: 1 << 22 };
    assert_eq!(FieldCtx::new(2, 1, 21, &cfg).unwrap().order(), 1 << 21);
    // x^2 + 1 over F_3 is irreducible but not primitive
    assert!(matches!(
        FieldCtx::with_polynomial(3, 1, 2, &[1, 0], &FieldConfig::default()),
        Err(FieldError::NotPrimitive(_))
    ));
}

#[test]
fn arithmetic_examples() {
    let ctx = build_field(2, 1, 6).unwrap();
    assert_eq!(ctx.mul(ctx.elem(3), ctx.elem(60)), ctx.one());
    let x = ctx.elem(17);
    assert_eq!(ctx.add(x, x), ctx.zero());
    assert_eq!(ctx.mul(ctx.zero(), x), ctx.zero());
    assert_eq!(ctx.inv(ctx.elem(5)), Some(ctx.elem(58)));
    assert_eq!(ctx.inv(ctx.zero()), None);
    assert_eq!(ctx.pow(ctx.zero(), 0), ctx.one());
    assert_eq!(ctx.pow(ctx.elem(2), -1), ctx.elem(61));
    assert!(ctx.check(ctx.elem(62)).is_ok());
    assert!(ctx.check(FieldElem::from_log(63)).is_err());
}

#[test]
fn trace_examples() {
    let ctx = build_field(2, 1, 6).unwrap();
    assert_eq!(ctx.trace_q(ctx.zero()), 0);

    let f9 = build_field(3, 1, 2).unwrap();
    // Tr(1) = m · 1
    assert_eq!(f9.trace_q(f9.one()), 2);

    // θ^2 = θ + 1, i.e. x^2 + 2x + 2 over F_3: Tr(θ) = θ + θ^3 = 1
    let g = FieldCtx::with_polynomial(3, 1, 2, &[2, 2], &FieldConfig::default()).unwrap();
    assert_eq!(g.pow(g.theta(), 2), g.add(g.theta(), g.one()));
    assert_eq!(g.trace_q(g.theta()), 1);
    // default polynomial x^2 + x + 2: θ^2 = 2θ + 1, Tr(θ) = -1 = 2
    assert_eq!(f9.polynomial(), &[2, 1]);
    assert_eq!(f9.trace_q(f9.theta()), 2);
}

#[test]
fn coords_examples() {
    let ctx = build_field(2, 1, 6).unwrap();
    assert_eq!(ctx.coords(ctx.zero()), vec![0; 6]);
    assert_eq!(ctx.coords(ctx.elem(2)), vec![0, 0, 1, 0, 0, 0]);
    // θ^6 = θ + 1 under x^6 + x + 1
    assert_eq!(ctx.polynomial(), &[1, 1, 0, 0, 0, 0]);
    assert_eq!(ctx.coords(ctx.elem(6)), vec![1, 1, 0, 0, 0, 0]);
    assert!(matches!(
        ctx.uncoords(&[1, 0]),
        Err(FieldError::DimensionMismatch {
            expected: 6,
            got: 2
        })
    ));
}

fn tower_contexts() -> Vec<FieldCtx> {
    vec![
        build_field(2, 1, 4).unwrap(),
        build_field(2, 1, 6).unwrap(),
        build_field(3, 1, 2).unwrap(),
        build_field(3, 1, 4).unwrap(),
        build_field(2, 2, 3).unwrap(),
        build_field(2, 3, 2).unwrap(),
        build_field(3, 2, 2).unwrap(),
        build_field(5, 1, 2).unwrap(),
    ]
}

#[test]
fn coords_are_fq_basis_coordinates() {
    for ctx in tower_contexts() {
        let m = ctx.m() as usize;
        for i in 0..m {
            let mut unit = vec![0; m];
            unit[i] = 1;
            assert_eq!(ctx.coords(ctx.elem(i as i64)), unit);
        }
        // F_q-linearity: coords(c x + y) = c coords(x) + coords(y)
        let fq = ctx.fq();
        for c in 0..ctx.q() {
            for (a, b) in [(3i64, 11i64), (0, 1), (5, 5)] {
                let x = ctx.elem(a);
                let y = ctx.elem(b);
                let lhs = ctx.coords(ctx.add(ctx.mul(ctx.fq_elem(c), x), y));
                let rhs: Vec<u32> = ctx
                    .coords(x)
                    .iter()
                    .zip(ctx.coords(y))
                    .map(|(&u, v)| fq.add(fq.mul(c, u), v))
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
        for x in ctx.elements() {
            assert_eq!(ctx.uncoords(&ctx.coords(x)).unwrap(), x);
        }
    }
}

#[test]
fn subfield_is_generated_by_omega() {
    for ctx in tower_contexts() {
        let step = i64::from((ctx.order() - 1) / (ctx.q() - 1));
        let omega = ctx.elem(step);
        let mut seen = std::collections::BTreeSet::new();
        for j in 0..i64::from(ctx.q() - 1) {
            let w = ctx.pow(omega, j);
            let c = ctx.as_fq(w).expect("power of ω lies in F_q");
            // coordinates live on the line through 1
            let mut v = vec![0; ctx.m() as usize];
            v[0] = c;
            assert_eq!(ctx.coords(w), v);
            seen.insert(c);
        }
        assert_eq!(seen.len() as u32, ctx.q() - 1);
        // F_q words agree with field multiplication
        let fq = ctx.fq();
        for a in 0..ctx.q() {
            for b in 0..ctx.q() {
                let prod = ctx.mul(ctx.fq_elem(a), ctx.fq_elem(b));
                assert_eq!(ctx.as_fq(prod), Some(fq.mul(a, b)));
                let sum = ctx.add(ctx.fq_elem(a), ctx.fq_elem(b));
                assert_eq!(ctx.as_fq(sum), Some(fq.add(a, b)));
            }
            if a != 0 {
                assert_eq!(fq.mul(a, fq.inv(a).unwrap()), 1);
            }
        }
    }
}

#[test]
fn trace_definition_fibers_and_transitivity() {
    for ctx in tower_contexts() {
        let q = u64::from(ctx.q());
        let p = ctx.p();
        let mut fiber = vec![0u32; ctx.q() as usize];
        for x in ctx.elements() {
            // Tr_{Q/q}(x) = Σ x^(q^i)
            let mut acc = ctx.zero();
            let mut y = x;
            for _ in 0..ctx.m() {
                acc = ctx.add(acc, y);
                y = ctx.pow(y, q as i64);
            }
            assert_eq!(ctx.as_fq(acc), Some(ctx.trace_q(x)));
            // Tr_{Q/p}(x) = Σ x^(p^i), and equals Tr_{q/p}(Tr_{Q/q}(x))
            let mut acc = ctx.zero();
            let mut y = x;
            for _ in 0..ctx.e() * ctx.m() {
                acc = ctx.add(acc, y);
                y = ctx.pow(y, i64::from(p));
            }
            assert_eq!(ctx.as_fq(acc), Some(ctx.trace_p(x)));
            assert_eq!(ctx.trace_p(x), ctx.trace_fq_to_p(ctx.trace_q(x)));
            assert_eq!(
                ctx.trace_to_subfield(x, Subfield::Fp),
                ctx.fq_elem(ctx.trace_p(x))
            );
            fiber[ctx.trace_q(x) as usize] += 1;
        }
        let expect = ctx.order() / ctx.q();
        assert!(fiber.iter().all(|&c| c == expect));
    }
}

#[test]
fn fibers_large_prime_power() {
    // exhaustive up to 2^12
    let ctx = build_field(2, 2, 6).unwrap();
    assert_eq!(ctx.order(), 4096);
    let mut fiber = [0u32; 4];
    for x in ctx.elements() {
        fiber[ctx.trace_q(x) as usize] += 1;
    }
    assert_eq!(fiber, [1024; 4]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn frobenius_is_additive(a in 0i64..728, b in 0i64..728, za in any::<bool>()) {
        let ctx = build_field(3, 1, 6).unwrap();
        let x = if za { ctx.zero() } else { ctx.elem(a) };
        let y = ctx.elem(b);
        let lhs = ctx.pow(ctx.add(x, y), 3);
        let rhs = ctx.add(ctx.pow(x, 3), ctx.pow(y, 3));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn field_axioms(a in 0i64..1023, b in 0i64..1023, c in 0i64..1023) {
        let ctx = build_field(2, 2, 5).unwrap();
        let (x, y, z) = (ctx.elem(a), ctx.elem(b), ctx.elem(c));
        prop_assert_eq!(ctx.mul(x, ctx.add(y, z)), ctx.add(ctx.mul(x, y), ctx.mul(x, z)));
        prop_assert_eq!(ctx.add(x, ctx.add(y, z)), ctx.add(ctx.add(x, y), z));
        prop_assert_eq!(ctx.sub(ctx.add(x, y), y), x);
        prop_assert_eq!(
            ctx.mul(x, y).log().unwrap(),
            ((a + b) % 1023) as u32
        );
    }
}
