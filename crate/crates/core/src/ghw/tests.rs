use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;

use super::*;
use crate::cyclotomy::validate_spec;
use crate::field::build_field;

fn cfg() -> GhwConfig {
    GhwConfig::default()
}

fn hierarchy(ctx: &FieldCtx, h: u32, t: Vec<u32>, method: Method) -> Vec<u64> {
    let spec = validate_spec(ctx.p(), ctx.e(), ctx.m(), h, t).unwrap();
    ghw_hierarchy(ctx, &spec, method, ctx.m(), &cfg())
        .unwrap()
        .iter()
        .map(|g| g.d_r)
        .collect()
}

/// Oracle: every r-dimensional subcode built as the span of r codewords,
/// its support taken from the explicit vectors.
fn brute_hierarchy(code: &LinearCode, r_max: usize) -> Vec<u64> {
    let ctx = code.ctx();
    let fq = ctx.fq();
    let nonzero: Vec<FieldElem> = ctx.elements().skip(1).collect();
    let m = ctx.m() as usize;
    (1..=r_max.min(m))
        .map(|r| {
            let mut seen = BTreeSet::new();
            let mut best = u64::MAX;
            for gens in nonzero.iter().copied().combinations(r) {
                // F_q-span of gens as a set of field elements
                let mut span: BTreeSet<FieldElem> = BTreeSet::from([ctx.zero()]);
                for g in &gens {
                    let cur: Vec<FieldElem> = span.iter().copied().collect();
                    for x in cur {
                        for c in 1..fq.order() {
                            span.insert(ctx.add(x, ctx.mul(ctx.fq_elem(c), *g)));
                        }
                    }
                }
                if span.len() != (fq.order() as usize).pow(r as u32) || !seen.insert(span.clone()) {
                    continue;
                }
                let mut support = vec![false; code.n()];
                for &x in &span {
                    for (j, c) in code.codeword(x).into_iter().enumerate() {
                        support[j] |= c != 0;
                    }
                }
                best = best.min(support.iter().filter(|&&b| b).count() as u64);
            }
            best
        })
        .collect()
}

#[test]
fn flagship_hierarchy_all_methods() {
    let ctx = build_field(2, 1, 6).unwrap();
    for m in Method::ALL {
        assert_eq!(
            hierarchy(&ctx, 3, vec![0], m),
            vec![8, 12, 14, 18, 20, 21],
            "{m}"
        );
    }
}

#[test]
fn flagship_period_value_at_r3() {
    let ctx = build_field(2, 1, 6).unwrap();
    let spec = validate_spec(2, 1, 6, 3, vec![0]).unwrap();
    let g = ghw_thm2_period(&ctx, &spec, 3, &cfg()).unwrap();
    assert_eq!((g.n_r, g.d_r), (7, 14));
    let g = ghw_thm2_gauss(&ctx, &spec, 3, &cfg()).unwrap();
    assert_eq!((g.n_r, g.d_r), (7, 14));
}

#[test]
fn small_examples() {
    let f16 = build_field(2, 1, 4).unwrap();
    let f9 = build_field(3, 1, 2).unwrap();
    let f64_ = build_field(2, 1, 6).unwrap();
    for m in Method::ALL {
        assert_eq!(hierarchy(&f16, 3, vec![0], m), vec![2, 3, 4, 5]);
        assert_eq!(hierarchy(&f16, 3, vec![0, 1, 2], m), vec![8, 12, 14, 15]);
        assert_eq!(hierarchy(&f9, 2, vec![0], m), vec![1, 2]);
        assert_eq!(hierarchy(&f64_, 3, vec![0, 1], m)[0], 20);
    }
}

#[test]
fn matches_brute_force_oracle() {
    for (p, m, h, r_max, s_max) in [
        (2, 4, 3, 4, 3),
        (3, 2, 2, 2, 2),
        (3, 4, 5, 2, 2),
        (2, 6, 3, 2, 2),
    ] {
        let ctx = build_field(p, 1, m).unwrap();
        for s in 1..=s_max {
            for t in (0..h).combinations(s) {
                let spec = validate_spec(p, 1, m, h, t.clone()).unwrap();
                let d = build_defining_set(&ctx, &spec).unwrap();
                let code = build_code(&ctx, &d.elements).unwrap();
                let want = brute_hierarchy(&code, r_max);
                for meth in Method::ALL {
                    let got = hierarchy(&ctx, h, t.clone(), meth);
                    assert_eq!(got[..want.len()], want[..], "{p} {m} {h} {t:?} {meth}");
                }
            }
        }
    }
}

#[test]
fn first_weight_is_minimum_distance() {
    let ctx = build_field(3, 1, 4).unwrap();
    for h in [2, 4, 5] {
        let spec = validate_spec(3, 1, 4, h, vec![0]).unwrap();
        let d = build_defining_set(&ctx, &spec).unwrap();
        let code = build_code(&ctx, &d.elements).unwrap();
        let wd = code.weight_distribution(1 << 20).unwrap();
        let g = ghw_direct(&code, 1, &cfg()).unwrap();
        assert_eq!(Some(g.d_r), wd.min_nonzero_weight());
    }
}

#[test]
fn witnesses_attain_the_count() {
    let ctx = build_field(2, 1, 6).unwrap();
    let spec = validate_spec(2, 1, 6, 3, vec![0]).unwrap();
    let d = build_defining_set(&ctx, &spec).unwrap();
    let code = build_code(&ctx, &d.elements).unwrap();
    for r in 1..=6 {
        for m in [Method::Direct, Method::Thm2Gauss, Method::Thm2Period] {
            let g = ghw(&ctx, &spec, m, r, &cfg()).unwrap();
            assert_eq!(g.witness.dim(), r as usize);
            assert_eq!(zero_coordinates(&code, &g.witness) as u64, g.n_r);
        }
        let g = ghw_theorem1(&code, r, &cfg()).unwrap();
        assert_eq!(g.witness.dim(), 6 - r as usize);
        let inside = d
            .elements
            .iter()
            .filter(|&&x| g.witness.contains(&ctx, x))
            .count();
        assert_eq!(inside as u64, g.n_r);
    }
}

#[test]
fn family_run_matches_single_specs() {
    let ctx = build_field(3, 1, 4).unwrap();
    let fam = FamilySweep::new(&ctx, 5).unwrap();
    let tsets: Vec<Vec<u32>> = (1..=3).flat_map(|s| (0..5).combinations(s)).collect();
    for r in 1..=4 {
        for m in Method::ALL {
            let batch = fam.run(m, r, &tsets, &cfg()).unwrap();
            for (t, got) in tsets.iter().zip(&batch) {
                let spec = validate_spec(3, 1, 4, 5, t.clone()).unwrap();
                let one = ghw(&ctx, &spec, m, r, &cfg()).unwrap();
                assert_eq!(got, &one);
            }
        }
    }
}

#[test]
fn duality_identity_has_no_mismatch() {
    let ctx = build_field(3, 1, 4).unwrap();
    let fam = FamilySweep::new(&ctx, 4).unwrap();
    for r in 1..=4 {
        let c = fam.check_duality_identity(r, &cfg()).unwrap();
        assert_eq!(c.mismatches, 0);
        assert_eq!(c.subspaces, crate::subspace::gaussian_binomial(4, r, 3));
    }
}

#[test]
fn ties_go_to_the_first_subspace() {
    let ctx = build_field(2, 1, 4).unwrap();
    let spec = validate_spec(2, 1, 4, 3, vec![0]).unwrap();
    let g = enumerate_subspaces(4, 4, 2, 10).unwrap();
    assert_eq!(g.count(), 1);
    let res = ghw(&ctx, &spec, Method::Direct, 4, &cfg()).unwrap();
    assert_eq!(res.witness_index, 0);
    let all = enumerate_subspaces(4, 1, 2, 100).unwrap();
    let d = build_defining_set(&ctx, &spec).unwrap();
    let code = build_code(&ctx, &d.elements).unwrap();
    let res = ghw_direct(&code, 1, &cfg()).unwrap();
    let first = all
        .iter()
        .find(|(_, h)| zero_coordinates(&code, h) as u64 == res.n_r)
        .unwrap()
        .0;
    assert_eq!(res.witness_index, first);
}

#[test]
fn errors() {
    let ctx = build_field(2, 1, 4).unwrap();
    let spec = validate_spec(2, 1, 4, 3, vec![0]).unwrap();
    assert_eq!(
        ghw(&ctx, &spec, Method::Direct, 0, &cfg()),
        Err(GhwError::BadR { r: 0, m: 4 })
    );
    assert_eq!(
        ghw(&ctx, &spec, Method::Thm2Period, 5, &cfg()),
        Err(GhwError::BadR { r: 5, m: 4 })
    );
    let tight = GhwConfig {
        subspace_budget: 10,
        ..cfg()
    };
    assert!(matches!(
        ghw(&ctx, &spec, Method::Thm1, 2, &tight),
        Err(GhwError::Subspace(SubspaceError::BudgetExceeded { .. }))
    ));
    // a single column spans only a 1-dimensional space
    let code = build_code(&ctx, &[ctx.one()]).unwrap();
    assert_eq!(
        ghw_direct(&code, 1, &cfg()),
        Err(GhwError::RankDeficient { rank: 1, m: 4 })
    );
    let other = build_field(2, 1, 6).unwrap();
    assert!(matches!(
        ghw(&other, &spec, Method::Thm2Gauss, 1, &cfg()),
        Err(GhwError::Spec(SpecError::ContextMismatch { .. }))
    ));
}

#[test]
fn increasing_check_reports_the_step() {
    let ctx = build_field(2, 1, 4).unwrap();
    let spec = validate_spec(2, 1, 4, 3, vec![0]).unwrap();
    let mut h = ghw_hierarchy(&ctx, &spec, Method::Direct, 4, &cfg()).unwrap();
    h[2].d_r = 3;
    assert_eq!(
        check_increasing(&h),
        Err(GhwError::NotIncreasing {
            r: 3,
            prev: 3,
            next: 3
        })
    );
}

#[test]
fn method_names_round_trip() {
    for m in Method::ALL {
        assert_eq!(m.name().parse::<Method>().unwrap(), m);
    }
    assert!("brute".parse::<Method>().is_err());
    assert_eq!(
        serde_json::to_string(&Method::Thm2Gauss).unwrap(),
        "\"thm2_gauss\""
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn methods_agree_on_random_specs(
        pick in 0usize..4,
        mask in 1u32..128,
        r in 1u32..=4,
    ) {
        let (p, e, m, h) = [(2, 1, 6, 7), (3, 1, 4, 5), (2, 2, 3, 3), (5, 1, 2, 3)][pick];
        let t: Vec<u32> = (0..h).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!t.is_empty());
        let r = r.min(m);
        let ctx = build_field(p, e, m).unwrap();
        let spec = validate_spec(p, e, m, h, t).unwrap();
        let vals: Vec<u64> = Method::ALL
            .iter()
            .map(|&meth| ghw(&ctx, &spec, meth, r, &cfg()).unwrap().d_r)
            .collect();
        prop_assert!(vals.iter().all(|&v| v == vals[0]), "{:?}", vals);
    }
}
