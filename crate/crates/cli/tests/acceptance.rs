//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Everything runs on a single worker thread so the
//! time limits are single-threaded figures.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cyclocode::verify::{default_grid, verify_grid, VerifyOptions};
use cyclocode_core::characters::Characters;
use cyclocode_core::closedform::{
    bounds, corollary1_branch, corollary1_ghw, corollary2_ghw, lemma1_periods,
    semiprimitive_params, theorem3_predict, Branch, Prediction,
};
use cyclocode_core::code::{
    build_code, dual_distance_at_least_3, LinearCode, DEFAULT_ENUMERATION_BUDGET,
};
use cyclocode_core::cyclotomy::{build_defining_set, validate_spec, CodeSpec, Violation};
use cyclocode_core::field::{build_field, FieldCtx};
use cyclocode_core::ghw::{ghw_hierarchy, GhwConfig, Method};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn setup(p: u32, m: u32, h: u32, t: Vec<u32>) -> (FieldCtx, CodeSpec) {
    let spec = validate_spec(p, 1, m, h, t).expect("valid spec");
    (build_field(p, 1, m).expect("field"), spec)
}

fn code<'a>(ctx: &'a FieldCtx, spec: &CodeSpec) -> LinearCode<'a> {
    let d = build_defining_set(ctx, spec).expect("defining set");
    build_code(ctx, &d.elements).expect("code")
}

fn dist(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    pairs.iter().copied().collect()
}

fn hierarchies(ctx: &FieldCtx, spec: &CodeSpec) -> Result<Vec<(Method, Vec<u64>)>, String> {
    Method::ALL
        .iter()
        .map(|&m| {
            ghw_hierarchy(ctx, spec, m, spec.m(), &GhwConfig::default())
                .map(|h| (m, h.iter().map(|g| g.d_r).collect()))
                .map_err(|e| format!("{m}: {e}"))
        })
        .collect()
}

fn flagship_weights() -> Check {
    let (ctx, spec) = setup(2, 6, 3, vec![0]);
    let c = code(&ctx, &spec);
    ensure((c.n(), c.rank()) == (21, 6), || {
        format!("[{}, {}]", c.n(), c.rank())
    })?;
    let wd = c
        .weight_distribution(DEFAULT_ENUMERATION_BUDGET)
        .map_err(|e| e.to_string())?;
    let want = dist(&[(0, 1), (8, 21), (12, 42)]);
    ensure(wd.counts == want, || {
        format!("distribution {:?}", wd.counts)
    })?;
    let table = theorem3_predict(&spec).map_err(|e| e.to_string())?;
    ensure(table.distribution() == wd.counts, || {
        format!("table {:?}", table.rows)
    })?;
    let dual = dual_distance_at_least_3(&c);
    ensure(dual.holds, || format!("dual witness {:?}", dual.witness))?;
    Ok("[21, 6], {0:1, 8:21, 12:42}, table matches, dual distance >= 3".into())
}

fn flagship_hierarchy() -> Check {
    let (ctx, spec) = setup(2, 6, 3, vec![0]);
    let want = vec![8, 12, 14, 18, 20, 21];
    for (m, got) in hierarchies(&ctx, &spec)? {
        ensure(got == want, || format!("{m}: {got:?}"))?;
    }
    let closed: Vec<Option<u64>> = (1..=6)
        .map(|r| corollary1_ghw(&spec, r).map(Prediction::value))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(
        closed == want.iter().map(|&v| Some(v)).collect::<Vec<_>>(),
        || format!("closed form {closed:?}"),
    )?;
    let lo = corollary1_branch(&spec, 3, Branch::Low).map_err(|e| e.to_string())?;
    let hi = corollary1_branch(&spec, 3, Branch::High).map_err(|e| e.to_string())?;
    ensure(lo == 14 && hi == 14, || {
        format!("branches at r=3: {lo} vs {hi}")
    })?;
    Ok(
        "(8,12,14,18,20,21) by direct, thm1, gauss, period and closed form; branches agree at r=3"
            .into(),
    )
}

fn even_l_case() -> Check {
    let (ctx, spec) = setup(2, 4, 3, vec![0]);
    for (m, got) in hierarchies(&ctx, &spec)? {
        ensure(got == [2, 3, 4, 5], || format!("{m}: {got:?}"))?;
    }
    let preds: Vec<Prediction> = (1..=4)
        .map(|r| corollary2_ghw(&spec, r))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let want = [
        Prediction::Value(2),
        Prediction::NotCovered,
        Prediction::Value(4),
        Prediction::Value(5),
    ];
    ensure(preds == want, || format!("closed form {preds:?}"))?;
    let sp = semiprimitive_params(&spec).map_err(|e| e.to_string())?;
    ensure(sp.l % 2 == 0, || format!("l = {}", sp.l))?;
    let wd = code(&ctx, &spec)
        .weight_distribution(DEFAULT_ENUMERATION_BUDGET)
        .map_err(|e| e.to_string())?;
    ensure(wd.counts == dist(&[(0, 1), (2, 10), (4, 5)]), || {
        format!("distribution {:?}", wd.counts)
    })?;
    let table = theorem3_predict(&spec).map_err(|e| e.to_string())?;
    ensure(table.distribution() == wd.counts, || {
        format!("table {:?}", table.rows)
    })?;
    Ok(
        "(2,3,4,5); closed form at r=1,3,4, not covered at r=2; {0:1, 2:10, 4:5} matches table"
            .into(),
    )
}

fn simplex_case() -> Check {
    let (ctx, spec) = setup(2, 4, 3, vec![0, 1, 2]);
    let c = code(&ctx, &spec);
    ensure((c.n(), c.rank()) == (15, 4), || {
        format!("[{}, {}]", c.n(), c.rank())
    })?;
    let want: Vec<u64> = (1..=4).map(|r| 16 - 2u64.pow(4 - r)).collect();
    for (m, got) in hierarchies(&ctx, &spec)? {
        ensure(got == want, || format!("{m}: {got:?}"))?;
    }
    for (i, &d) in want.iter().enumerate() {
        let r = i as u32 + 1;
        let b = bounds(15, 4, 2, r, want[0]);
        ensure(b.plotkin_hi == d, || {
            format!("r={r}: plotkin {} vs d_r {d}", b.plotkin_hi)
        })?;
    }
    Ok("[15, 4], d_r = 16 - 2^(4-r) by all methods, Plotkin bound tight at r=1..4".into())
}

fn mds_case() -> Check {
    let (ctx, spec) = setup(3, 2, 2, vec![0]);
    let c = code(&ctx, &spec);
    ensure((c.n(), c.rank()) == (2, 2), || {
        format!("[{}, {}]", c.n(), c.rank())
    })?;
    let wd = c
        .weight_distribution(DEFAULT_ENUMERATION_BUDGET)
        .map_err(|e| e.to_string())?;
    ensure(wd.counts == dist(&[(0, 1), (1, 4), (2, 4)]), || {
        format!("distribution {:?}", wd.counts)
    })?;
    for (m, got) in hierarchies(&ctx, &spec)? {
        ensure(got == [1, 2], || format!("{m}: {got:?}"))?;
    }
    let b = bounds(2, 2, 3, 1, 1);
    ensure(b.singleton_hi == 1, || {
        format!("n-m+1 = {}", b.singleton_hi)
    })?;
    Ok("[2, 2] MDS, {0:1, 1:4, 2:4}, d = (1, 2), Singleton tight at r = m-1".into())
}

fn character_sums() -> Check {
    let ctx = build_field(2, 1, 6).map_err(|e| e.to_string())?;
    let spec = validate_spec(2, 1, 6, 3, vec![0]).map_err(|e| e.to_string())?;
    let chars = Characters::new(&ctx);
    let eta = chars.gaussian_periods(3).map_err(|e| e.to_string())?;
    let sp = semiprimitive_params(&spec).map_err(|e| e.to_string())?;
    let closed = lemma1_periods(&spec, &sp);
    ensure(closed == [5.0, -3.0, -3.0], || {
        format!("closed form {closed:?}")
    })?;
    let mut worst_eta: f64 = 0.0;
    for (a, &b) in eta.iter().zip(&closed) {
        worst_eta = worst_eta.max((a - b).norm());
    }
    ensure(worst_eta < 1e-9, || format!("eta residual {worst_eta:e}"))?;
    let mut worst_s: f64 = 0.0;
    for i in 0..63 {
        let s = chars
            .exponential_sum(ctx.elem(i), 3)
            .map_err(|e| e.to_string())?;
        worst_s = worst_s.max((s - (eta[(i % 3) as usize] * 3.0 + 1.0)).norm());
    }
    ensure(worst_s < 1e-9, || format!("S residual {worst_s:e}"))?;
    let mut worst_g: f64 = 0.0;
    for j in 1..63 {
        worst_g = worst_g.max((chars.gauss_sum(j).norm() - 8.0).abs());
    }
    ensure(worst_g < 1e-9, || format!("|G| residual {worst_g:e}"))?;
    Ok(format!(
        "eta = (5,-3,-3) to {worst_eta:.1e}; S residual {worst_s:.1e}; ||G|-8| {worst_g:.1e} over 62 characters"
    ))
}

fn grid() -> Check {
    let entries = default_grid();
    let (report, code) = verify_grid(&entries, &VerifyOptions::default());
    let s = report.summary;
    let first_bad = report
        .records
        .iter()
        .find(|r| r.status != cyclocode::report::Status::Pass)
        .map(|r| {
            format!(
                "{:?} {:?} {:?} {:?}",
                r.input, r.status, r.failures, r.error
            )
        });
    ensure(s.total > 0 && s.passed == s.total && code == 0, || {
        format!("{s:?}; first: {}", first_bad.unwrap_or_default())
    })?;
    let mut levels = 0;
    let mut identity_subspaces = 0u128;
    for rec in &report.records {
        let m = rec.input.m;
        for l in &rec.levels {
            levels += 1;
            let values = l.d_r.values();
            ensure(values.len() == 4 && l.methods_agree, || {
                format!("{:?} r={}", rec.input, l.r)
            })?;
            let d = values[0];
            ensure(d >= l.bounds.lower() && d <= l.bounds.upper(), || {
                format!("{:?} r={} d={d} bounds {:?}", rec.input, l.r, l.bounds)
            })?;
            match l.identity {
                Some(i) => {
                    ensure(i.mismatches == 0, || {
                        format!("{:?} r={} identity", rec.input, l.r)
                    })?;
                    identity_subspaces += i.subspaces;
                }
                None => ensure(m > 4, || {
                    format!("{:?} r={} identity not checked", rec.input, l.r)
                })?,
            }
        }
        ensure(rec.increasing == Some(true), || {
            format!("{:?} not increasing", rec.input)
        })?;
    }
    Ok(format!(
        "{} specs, {levels} (spec, r) pairs agree and lie within bounds; identity over {identity_subspaces} subspace checks",
        s.total
    ))
}

fn rejection() -> Check {
    let err = validate_spec(2, 1, 4, 5, vec![0]).expect_err("must be rejected");
    ensure(
        err.violations() == [Violation::HOutOfRange { h: 5, order: 16 }],
        || format!("violations {:?}", err.violations()),
    )?;
    let out = Command::new(env!("CARGO_BIN_EXE_cyclocode"))
        .args([
            "info", "--p", "2", "--e", "1", "--m", "4", "--h", "5", "--t", "0",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(2), || {
        format!("exit {:?}", out.status.code())
    })?;
    ensure(stderr.contains("HOutOfRange"), || {
        format!("stderr {stderr:?}")
    })?;
    Ok("HOutOfRange, exit code 2".into())
}

type Criterion = (&'static str, Duration, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "flagship weight distribution",
            Duration::from_secs(1),
            flagship_weights,
        ),
        (
            "flagship weight hierarchy",
            Duration::from_secs(30),
            flagship_hierarchy,
        ),
        (
            "even-l hierarchy and gap",
            Duration::from_secs(1),
            even_l_case,
        ),
        (
            "all classes give the simplex code",
            Duration::from_secs(1),
            simplex_case,
        ),
        ("m = 2 MDS code", Duration::from_secs(1), mds_case),
        (
            "character sums at Q = 64",
            Duration::from_secs(1),
            character_sums,
        ),
        ("cross-method grid", Duration::from_secs(600), grid),
        (
            "h at the sqrt(Q) + 1 boundary is rejected",
            Duration::from_secs(1),
            rejection,
        ),
    ];
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool");
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = pool.install(f);
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {}/8 {name} ({} ms, limit {} s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_millis(),
            limit.as_secs()
        );
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
