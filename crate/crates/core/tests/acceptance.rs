//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::time::{Duration, Instant};

use osp_core::oracle::{atypicality_types, verify_sweep};
use osp_core::{
    AtypType, BlockReport, Branch, ChainPosition, CheckKind, Coefficients, Execution, OddRoot, Osp,
    RootSystem, Weight, WeylElement,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Wall-clock limit for the two paper examples.
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
/// Wall-clock limit for the block sweep.
const SWEEP_BUDGET: Duration = Duration::from_secs(600);
/// Sweep parameters: ranks, largest doubled atypicality-type entry (9/2),
/// chain radius and window depth.
const SWEEP_KS: [i64; 5] = [3, 4, 5, 6, 7];
const SWEEP_MAX_TWICE: i32 = 9;
const SWEEP_I_MAX: u32 = 3;
const SWEEP_DEPTH: u32 = 10;
/// Random regular weights per rank for the Weyl-layer properties.
const WEYL_SAMPLES: usize = 10_000;
const RNG_SEED: u64 = 0x05b2_2024;
/// Every identity is exact: no multiplicity may differ.
const EXACT: i64 = 0;

type Outcome = Result<String, String>;

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn paper_examples() -> Outcome {
    let start = Instant::now();
    let cases = [
        (
            6,
            "1|2,1,-1",
            OddRoot::DeltaPlusEps(3),
            "2|2,1,0",
            "-1|2,2,-2",
        ),
        (
            7,
            "2|2,0,0",
            OddRoot::DeltaMinusEps(3),
            "3|2,0,0",
            "0|2,1,1",
        ),
    ];
    for (k, l, root, up, down) in cases {
        let rs = RootSystem::new(k).map_err(|e| e.to_string())?;
        let l = w(l);
        let d = rs.atypical_data(&l).unwrap().ok_or("typical")?;
        ensure(d.root == root, || {
            format!("k={k}: atypical root {}", d.root)
        })?;
        let got = (rs.raise(&l).unwrap(), rs.lower(&l).unwrap());
        ensure(got == (w(up), w(down)), || {
            format!("k={k}: got {} / {}", got.0, got.1)
        })?;
        // Minimal steps under the stated definition: a₊ = 1, a₋ = 2.
        let steps = (
            rs.step_size(&l, root, 1).unwrap(),
            rs.step_size(&l, root, -1).unwrap(),
        );
        ensure(steps == (1, 2), || format!("k={k}: steps {steps:?}"))?;
    }
    let t = start.elapsed();
    ensure(t < EXAMPLE_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("raise/lower at k=6,7 reproduced in {t:?}"))
}

fn k4_chain_table() -> Outcome {
    let rs = RootSystem::new(4).unwrap();
    let bar = AtypType::parse(&rs, "1").unwrap();
    let p = |i, b| ChainPosition::new(i, b);
    let table = [
        (ChainPosition::unbranched(0), "0|1,0"),
        (p(1, Branch::Plus), "2|2,1"),
        (p(2, Branch::Plus), "3|3,1"),
        (p(-1, Branch::Plus), "-2|2,1"),
        (p(-2, Branch::Plus), "-3|3,1"),
        (p(1, Branch::Minus), "2|2,-1"),
        (p(2, Branch::Minus), "3|3,-1"),
        (p(-1, Branch::Minus), "-2|2,-1"),
        (p(-2, Branch::Minus), "-3|3,-1"),
    ];
    for (pos, shifted) in table {
        let got = rs.rho_shift(&rs.chain_weight(&bar, pos).unwrap());
        ensure(got == w(shifted), || {
            format!("{pos}: {got}, expected {shifted}")
        })?;
        let back = rs.chain_index(&rs.rho_unshift(&w(shifted))).unwrap();
        ensure(back == (bar.clone(), pos), || {
            format!("{shifted}: indexed as {}", back.1)
        })?;
    }
    Ok(format!("{} ρ-shifted chain weights match", table.len()))
}

fn count(reports: &[BlockReport], kinds: &[CheckKind]) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for r in reports {
        for rec in r.records.iter().filter(|x| kinds.contains(&x.check)) {
            n += 1;
            if !rec.pass {
                bad.push(format!(
                    "k={} {} {} ({}{}): {:?} {}",
                    r.k, r.lambda_bar, rec.weight, rec.index, rec.branch, rec.check, rec.detail
                ));
            }
        }
    }
    (n, bad)
}

fn summarize(reports: &[BlockReport], kinds: &[CheckKind]) -> Outcome {
    let (n, bad) = count(reports, kinds);
    ensure(n > 0, || "no records".into())?;
    ensure(bad.len() as i64 == EXACT, || bad.join("\n"))?;
    Ok(format!("{n} exact checks over {} blocks", reports.len()))
}

fn dimensions() -> Outcome {
    let g = Osp::new(3).unwrap();
    let bar = AtypType::parse(&g, "").unwrap();
    let full = |l: &Weight| l.twice()[0] as u32 + 2;
    for (i, want) in [(0, 1), (1, 5), (2, 30)] {
        let l = g.chain_weight(&bar, ChainPosition::unbranched(i)).unwrap();
        let formula = g.dim_l(&l).map_err(|e| e.to_string())?;
        let sum = g.ch_l(&l, full(&l)).unwrap().total_multiplicity();
        ensure(formula == want && sum == want, || {
            format!("dim L({l}): {formula} / {sum}")
        })?;
    }
    let l2 = g.chain_weight(&bar, ChainPosition::unbranched(2)).unwrap();
    let (formula, sum) = (
        g.dim_k(&l2).unwrap(),
        g.ch_k(&l2, full(&l2)).unwrap().total_multiplicity(),
    );
    ensure(formula == 36 && sum == 36, || {
        format!("dim K(λ⁽²⁾): {formula} / {sum}")
    })?;
    let adj = w("2|0");
    let (formula, sum) = (
        g.dim_k(&adj).unwrap(),
        g.ch_k(&adj, full(&adj)).unwrap().total_multiplicity(),
    );
    ensure(formula == 12 && sum == 12, || {
        format!("dim K(2|0): {formula} / {sum}")
    })?;
    Ok("1, 5, 30, 36 and 12 by formula and by multiplicity sum".into())
}

fn cohomology() -> Outcome {
    let table: [(u32, Coefficients, &[u32]); 4] = [
        (1, Coefficients::Irreducible, &[2]),
        (1, Coefficients::Kac, &[3]),
        (2, Coefficients::Irreducible, &[1, 3]),
        (2, Coefficients::Kac, &[1, 4]),
    ];
    let mut checked = 0;
    for k in 3..=7 {
        let osp = Osp::new(k).unwrap();
        let zero = Weight::zero(osp.m());
        let zero_type = osp.atypical_data(&zero).unwrap().unwrap().lambda_bar;
        for i in 0..=5u32 {
            let big = osp.cohomology_weight(i);
            ensure(osp.is_g_dominant(&big), || {
                format!("k={k}: Λ⁽{i}⁾ not dominant")
            })?;
            let d = osp
                .atypical_data(&big)
                .unwrap()
                .ok_or(format!("k={k}: Λ⁽{i}⁾ typical"))?;
            ensure(d.lambda_bar == zero_type, || {
                format!("k={k}: Λ⁽{i}⁾ off the principal block")
            })?;
            for (deg, coeff, hits) in table {
                let got = osp.cohomology_dim(deg, coeff, &big).unwrap();
                let want = hits.contains(&i) as u32;
                ensure(got == want, || {
                    format!("k={k} H^{deg}({coeff:?}, Λ⁽{i}⁾) = {got}")
                })?;
                checked += 1;
            }
        }
        // Dominant weights of other blocks, and typical ones, give zero.
        let mut off = Vec::new();
        for bar in atypicality_types(&osp, 7)
            .into_iter()
            .filter(|b| *b != zero_type)
        {
            for i in 0..=4 {
                let pos = match osp.chain_case(&bar) {
                    osp_core::ChainCase::Split if i > 0 => ChainPosition::new(i, Branch::Plus),
                    _ => ChainPosition::unbranched(i),
                };
                off.push(osp.chain_weight(&bar, pos).unwrap());
            }
        }
        for d in 0..=6 {
            let mut t = vec![0; osp.m() + 1];
            t[0] = 2 * d;
            t[1] = 2;
            let x = Weight::from_twice(t);
            if osp.is_g_dominant(&x) && osp.atypical_data(&x).unwrap().is_none() {
                off.push(x);
            }
        }
        ensure(!off.is_empty(), || format!("k={k}: no off-block samples"))?;
        for x in &off {
            for (deg, coeff, _) in table {
                let got = osp.cohomology_dim(deg, coeff, x).unwrap();
                ensure(got == 0, || {
                    format!("k={k}: H^{deg}({coeff:?}, {x}) = {got}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} table lookups"))
}

fn random_regular(rng: &mut StdRng, rs: &RootSystem) -> Weight {
    loop {
        let twice_shift = if rs.s_twice() == 1 && rng.gen_bool(0.5) {
            1
        } else {
            0
        };
        let mut t = vec![2 * rng.gen_range(-6..=6)];
        for _ in 0..rs.m() {
            t.push(2 * rng.gen_range(-12..=12) + twice_shift);
        }
        let x = Weight::from_twice(t);
        if rs.is_regular(&x) {
            return x;
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn weyl_layer() -> Outcome {
    let mut rng = StdRng::seed_from_u64(RNG_SEED);
    for k in 3..=7i64 {
        let rs = RootSystem::new(k).unwrap();
        let m = rs.m();
        let want = factorial(m) << if m * 2 + 1 == k as usize { m } else { m - 1 };
        ensure(rs.w0().len() == want && rs.w0_order() == want, || {
            format!("k={k}: |W₀| = {}", rs.w0().len())
        })?;
        ensure(rs.weyl_elements().len() == 2 * want, || {
            format!("k={k}: |W|")
        })?;
        let pick = |rng: &mut StdRng| -> WeylElement { rs.w0()[rng.gen_range(0..want)].clone() };
        for _ in 0..WEYL_SAMPLES {
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            ensure(a.compose(&b).sign() == a.sign() * b.sign(), || {
                format!("k={k}: sign")
            })?;
            let x = random_regular(&mut rng, &rs);
            let (dom, g) = rs.dominant_conjugate(&x).unwrap();
            ensure(rs.dot_act(&g, &x) == dom, || {
                format!("k={k}: {x} not sent to {dom}")
            })?;
            let (again, h) = rs.dominant_conjugate(&dom).unwrap();
            ensure(again == dom && h.is_identity(), || {
                format!("k={k}: {dom} not fixed")
            })?;
            let (moved, _) = rs.dominant_conjugate(&rs.dot_act(&a, &x)).unwrap();
            ensure(moved == dom, || format!("k={k}: orbit of {x}"))?;
        }
    }
    Ok(format!(
        "{WEYL_SAMPLES} random regular weights per k in 3..=7"
    ))
}

fn discrepancies() -> Outcome {
    let mut lines = Vec::new();
    for (k, bar) in [(3, ""), (4, "1")] {
        let run = || {
            let osp = Osp::new(k).unwrap();
            let bar = AtypType::parse(&osp, bar).unwrap();
            osp.verify_block(&bar, SWEEP_I_MAX, SWEEP_DEPTH, Execution::Parallel)
                .unwrap()
        };
        let (a, b) = (run(), run());
        ensure(a == b, || format!("k={k}: report differs between runs"))?;
        ensure(a.all_pass(), || {
            format!("k={k}: {:?}", a.failures().collect::<Vec<_>>())
        })?;
        let kac = a.kac_i2_three_factors.ok_or("Kac flag missing")?;
        let d = a.d_case_i1_extra_factor_supported;
        if k == 4 {
            ensure(d.is_some(), || "D-case flag missing at k=4".into())?;
        }
        lines.push(format!(
            "k={k}: kac_i2_three_factors={kac} d_case_i1_extra_factor_supported={}",
            d.map_or("n/a".to_string(), |x| x.to_string())
        ));
    }
    Ok(lines.join("; "))
}

#[test]
fn acceptance() {
    let sweep_start = Instant::now();
    let reports = verify_sweep(
        &SWEEP_KS,
        SWEEP_MAX_TWICE,
        SWEEP_I_MAX,
        SWEEP_DEPTH,
        Execution::Parallel,
    );
    let sweep_time = sweep_start.elapsed();
    let sweep = |kinds: &[CheckKind]| -> Outcome {
        let reports = reports.as_ref().map_err(|e| e.to_string())?;
        ensure(sweep_time < SWEEP_BUDGET, || {
            format!("sweep took {sweep_time:?}")
        })?;
        summarize(reports, kinds)
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("1 paper examples", paper_examples()),
        ("2 k=4 chain table", k4_chain_table()),
        (
            "3 Verma decomposition identity",
            sweep(&[CheckKind::VermaIdentity]).map(|s| format!("{s} in {sweep_time:?}")),
        ),
        (
            "4 multiplicity cross-check",
            sweep(&[
                CheckKind::MultiplicityFormula,
                CheckKind::MultiplicityBound,
                CheckKind::CandidateSet,
            ]),
        ),
        (
            "5 closed and tail character formulas",
            sweep(&[CheckKind::ClosedFormula, CheckKind::TailIdentity]),
        ),
        (
            "6 dimensions",
            dimensions().and_then(|s| {
                sweep(&[
                    CheckKind::Dimension,
                    CheckKind::KacDimension,
                    CheckKind::KacDichotomy,
                ])
                .map(|t| format!("{s}; sweep {t}"))
            }),
        ),
        ("7 cohomology table", cohomology()),
        ("8 Weyl-layer properties", weyl_layer()),
        ("9 discrepancy flags", discrepancies()),
    ];
    let mut failed = Vec::new();
    for (name, r) in &results {
        match r {
            Ok(s) => println!("criterion {name}: PASS ({s})"),
            Err(e) => {
                println!("criterion {name}: FAIL ({e})");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
