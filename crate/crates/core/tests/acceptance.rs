//! Acceptance suite: one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always
//! printed. Criterion 7 carries soft targets; a miss there prints FAIL but
//! only its ordering property decides the exit status. The literal RGB
//! monomial check in criterion 9 is soft too; its divisibility form is
//! the hard check. Set
//! `TBCC_ACCEPTANCE_LONG=1` to add the 2^36-word brute-force spectrum.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tbcc::algebra::{monomial_in_ideal, reduced_basis, MonomialOrder};
use tbcc::codec::{
    build_parity_check, build_pseudo_inverse, catalog, encode, is_nondegenerate, validate_code,
    CodeSpec, PackedGenerator, TorusGrid,
};
use tbcc::graph::{build_region_graph, build_tanner, RegionMode};
use tbcc::harness::{
    awgn_bpsk, curve_crossing, run_wer, ChannelConfig, Crossing, DecoderConfig, ExperimentPlan,
    ResolvedPlan, StopRule, WerCurve,
};
use tbcc::spectrum::{
    beast_spectrum, bound_crossing, bruteforce_spectrum, union_bound, BeastCaps, SpherePacking,
    WeightSpectrum,
};
use tbcc::trellis::{
    exhaustive_ml, Schedule, Trellis2dDecoder, Trellis2dOptions, ViterbiDecoder, ViterbiOptions,
};
use tbcc::Poly2;

const TARGET_WER: f64 = 1e-3;

struct Outcome {
    pass: bool,
    /// Counted against the exit status.
    hard: bool,
    detail: String,
}

impl Outcome {
    fn hard(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            hard: true,
            detail,
        }
    }
}

type Check = Result<Vec<Outcome>, String>;

fn code(name: &str) -> CodeSpec {
    catalog::get(name).expect("catalog code")
}

// 1: non-degenerate, invertibility as tabulated, code #1 inverse exact.
fn algebraic_validation() -> Check {
    let mut out = Vec::new();
    for name in ["c1", "c2", "c3", "c4", "c5", "c6", "c7"] {
        let t = Instant::now();
        let spec = code(name);
        let r = validate_code(&spec).map_err(|e| e.to_string())?;
        let expect_invertible = name != "c4";
        let inverse_ok = match build_pseudo_inverse(&spec).map_err(|e| e.to_string())? {
            Some(inv) => inv.verify(&spec),
            None => !expect_invertible,
        };
        let secs = t.elapsed().as_secs_f64();
        out.push(Outcome::hard(
            r.nondegenerate && r.invertible == expect_invertible && inverse_ok && secs < 1.0,
            format!(
                "{name}: non-degenerate={} invertible={} ({secs:.2} s)",
                r.nondegenerate, r.invertible
            ),
        ));
    }
    let c1 = validate_code(&code("c1")).map_err(|e| e.to_string())?;
    let inv = build_pseudo_inverse(&code("c1"))
        .map_err(|e| e.to_string())?
        .ok_or("c1 not invertible")?;
    out.push(Outcome::hard(
        inv.q == vec![Poly2::one(), Poly2::one()]
            && (inv.alpha, inv.beta) == (1, 1)
            && inv.verify(&code("c1")),
        format!(
            "c1: q = {:?}, delay {:?}",
            c1.inverse.unwrap_or_default(),
            c1.delay
        ),
    ));
    Ok(out)
}

// 2: G H^T = 0 for every valid code; on 4x4 the kernel of H is exactly the
// encoder image.
fn parity_identity() -> Check {
    let t = Instant::now();
    let mut out = Vec::new();
    let mut all_identities = true;
    for name in catalog::names() {
        let r = validate_code(&code(name)).map_err(|e| e.to_string())?;
        if r.is_valid() {
            all_identities &= r.parity_identity;
        }
    }
    out.push(Outcome::hard(
        all_identities,
        "G H^T = 0 on every valid catalog code".into(),
    ));

    for spec in [
        catalog::example_4x4(),
        code("c1").with_info(4, 4).map_err(|e| e.to_string())?,
    ] {
        let h = build_parity_check(&spec).map_err(|e| e.to_string())?;
        let gen = PackedGenerator::new(&spec).map_err(|e| e.to_string())?;
        let len = spec.block_length();
        let mut image = BTreeSet::new();
        let mut in_kernel = true;
        for u in 0..1u64 << spec.k() {
            let v = gen.encode_word(u);
            let bits: Vec<u8> = (0..len).map(|i| (v >> i & 1) as u8).collect();
            in_kernel &= h.matrix.annihilates(&bits);
            image.insert(v);
        }
        // |ker H| = 2^(len - rank); equal sizes plus inclusion give equality
        let kernel_dim = len - h.matrix.rank();
        let pass = in_kernel && image.len() == 1 << spec.k() && kernel_dim == spec.k();
        out.push(Outcome::hard(
            pass,
            format!(
                "{}: {} codewords all in ker H, dim ker H = {kernel_dim}",
                spec.kernel_summary(),
                image.len()
            ),
        ));
    }
    let secs = t.elapsed().as_secs_f64();
    out.push(Outcome::hard(secs < 10.0, format!("{secs:.2} s")));
    Ok(out)
}

// 3: golden spectra and BEAST against brute force.
fn spectrum_golden() -> Check {
    let golden: [(&str, &[(usize, u64)]); 3] = [
        ("c1", &[(6, 12), (7, 36), (8, 72), (9, 180), (10, 396)]),
        ("c2", &[(6, 48), (7, 0), (8, 306), (9, 0), (10, 1440)]),
        ("c3", &[(5, 36), (6, 84), (7, 72), (8, 180), (9, 504)]),
    ];
    let mut out = Vec::new();
    for (name, want) in golden {
        let t = Instant::now();
        let w_max = want.last().unwrap().0;
        let s =
            beast_spectrum(&code(name), w_max, BeastCaps::default()).map_err(|e| e.to_string())?;
        let got: Vec<(usize, u64)> = (want[0].0..=w_max).map(|w| (w, s.get(w))).collect();
        let below_empty = (1..want[0].0).all(|w| s.get(w) == 0);
        let secs = t.elapsed().as_secs_f64();
        out.push(Outcome::hard(
            s.exhaustive && below_empty && got == want && secs < 300.0,
            format!("{name}: {got:?} ({secs:.2} s)"),
        ));
    }

    let t = Instant::now();
    let (mut compared, mut mismatches) = (0, 0);
    for a in 1..16u32 {
        for b in 1..16u32 {
            let kernel = |m: u32| {
                vec![
                    vec![(m & 1) as u8, (m >> 1 & 1) as u8],
                    vec![(m >> 2 & 1) as u8, (m >> 3 & 1) as u8],
                ]
            };
            let spec = CodeSpec::new((4, 4), (2, 2), vec![kernel(a), kernel(b)])
                .map_err(|e| e.to_string())?;
            if !is_nondegenerate(&spec).map_err(|e| e.to_string())? {
                continue;
            }
            let beast =
                beast_spectrum(&spec, 10, BeastCaps::default()).map_err(|e| e.to_string())?;
            let brute = bruteforce_spectrum(&spec, 10).map_err(|e| e.to_string())?;
            compared += 1;
            if beast.pairs() != brute.pairs() {
                mismatches += 1;
            }
        }
    }
    out.push(Outcome::hard(
        compared > 0 && mismatches == 0,
        format!(
            "BEAST = brute force on {compared} non-degenerate 2x2 codes over 4x4, {mismatches} mismatches ({:.2} s)",
            t.elapsed().as_secs_f64()
        ),
    ));

    if std::env::var_os("TBCC_ACCEPTANCE_LONG").is_some() {
        let t = Instant::now();
        let s = bruteforce_spectrum(&code("c6"), 12).map_err(|e| e.to_string())?;
        let want = [(8, 36), (9, 0), (10, 288), (11, 0), (12, 1812)];
        let got: Vec<(usize, u64)> = (8..=12).map(|w| (w, s.get(w))).collect();
        out.push(Outcome::hard(
            got == want && (1..8).all(|w| s.get(w) == 0),
            format!(
                "c6 brute force {got:?} ({:.0} s)",
                t.elapsed().as_secs_f64()
            ),
        ));
    }
    Ok(out)
}

// 4: union-bound anchor, sphere-packing gap and the angle residual.
fn bounds() -> Check {
    let t = Instant::now();
    let spec = code("c1");
    let s: WeightSpectrum =
        beast_spectrum(&spec, 10, BeastCaps::default()).map_err(|e| e.to_string())?;
    let union = bound_crossing(|db| union_bound(&s, spec.rate(), db), TARGET_WER, 0.0, 10.0)
        .map_err(|e| e.to_string())?;
    let sp = SpherePacking::new(72, 36).map_err(|e| e.to_string())?;
    let splb =
        bound_crossing(|db| sp.eval(db), TARGET_WER, -2.0, 10.0).map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    Ok(vec![
        Outcome::hard(
            (union - 4.25).abs() <= 0.3,
            format!("union bound crosses 1e-3 at {union:.3} dB (4.25 +- 0.3)"),
        ),
        Outcome::hard(
            (union - splb - 1.4).abs() <= 0.25,
            format!(
                "SPLB(72,36) at {splb:.3} dB, gap {:.3} dB (1.4 +- 0.25)",
                union - splb
            ),
        ),
        Outcome::hard(
            sp.residual < 1e-12,
            format!("theta residual {:.1e}", sp.residual),
        ),
        Outcome::hard(secs < 1.0, format!("{secs:.2} s")),
    ])
}

// 5: exact Viterbi against exhaustive search on the 4x4 example.
fn ml_equivalence() -> Check {
    let t = Instant::now();
    let spec = catalog::example_4x4();
    let vit = ViterbiDecoder::new(&spec, ViterbiOptions::default()).map_err(|e| e.to_string())?;
    let cfg = ChannelConfig::new(3.0, spec.rate(), 0).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut disagreements = 0;
    for _ in 0..1000 {
        let u = TorusGrid::random(4, 4, &mut rng);
        let llr = awgn_bpsk(
            &encode(&u, &spec).map_err(|e| e.to_string())?,
            &cfg,
            &mut rng,
        );
        let a = vit.decode(&llr).map_err(|e| e.to_string())?.info;
        let b = exhaustive_ml(&llr, &spec).map_err(|e| e.to_string())?;
        disagreements += (a != b) as usize;
    }
    let secs = t.elapsed().as_secs_f64();
    Ok(vec![Outcome::hard(
        disagreements == 0 && secs < 120.0,
        format!("1000 trials at 3 dB, {disagreements} disagreements ({secs:.1} s)"),
    )])
}

fn plan(
    decoder: DecoderConfig,
    snr_db: Vec<f64>,
    min_word_errors: u64,
) -> Result<ResolvedPlan, String> {
    let p = ExperimentPlan {
        code: "c1".into(),
        seed: 20_240_601,
        snr_db,
        stop: StopRule {
            min_word_errors,
            max_trials: 1_000_000,
        },
        decoder,
        batch: 1024,
        output: None,
    };
    ResolvedPlan::in_memory(p, code("c1")).map_err(|e| e.to_string())
}

/// Walks 0.5 dB steps from `start` until the curve brackets the target.
fn bracketed_curve(
    decoder: DecoderConfig,
    start: f64,
    min_word_errors: u64,
) -> Result<(WerCurve, Crossing), String> {
    let mut curve: Option<WerCurve> = None;
    let mut db = start;
    loop {
        let point = run_wer(&plan(decoder.clone(), vec![db], min_word_errors)?)
            .map_err(|e| e.to_string())?;
        let wer = point.rows[0].wer;
        let c = match curve.take() {
            None => point,
            Some(mut c) => {
                c.rows.extend(point.rows);
                c.rows.sort_by(|a, b| a.ebn0_db.total_cmp(&b.ebn0_db));
                c
            }
        };
        let above = c.rows.iter().any(|r| r.wer >= TARGET_WER);
        let below = c.rows.iter().any(|r| r.wer <= TARGET_WER);
        if above && below {
            let x = curve_crossing(&c, TARGET_WER).map_err(|e| e.to_string())?;
            return Ok((c, x));
        }
        if !(2.0..=9.0).contains(&db) {
            return Err(format!("{}: no bracket between 2 and 9 dB", decoder.name()));
        }
        let lowest = c.rows.first().map(|r| r.ebn0_db).unwrap_or(db);
        let highest = c.rows.last().map(|r| r.ebn0_db).unwrap_or(db);
        db = if wer > TARGET_WER && db >= highest {
            highest + 0.5
        } else {
            lowest - 0.5
        };
        curve = Some(c);
    }
}

fn band(x: &Crossing) -> String {
    let f = |v: Option<f64>| v.map_or("?".to_string(), |d| format!("{d:.3}"));
    format!("[{}, {}]", f(x.low_db), f(x.high_db))
}

fn describe(c: &WerCurve) -> String {
    c.rows
        .iter()
        .map(|r| format!("{} dB {}/{}", r.ebn0_db, r.word_errors, r.trials))
        .collect::<Vec<_>>()
        .join(", ")
}

// 6: Monte-Carlo anchor for exact Viterbi.
fn monte_carlo_anchor() -> Result<(Vec<Outcome>, f64), String> {
    let t = Instant::now();
    let curve = run_wer(&plan(
        DecoderConfig::Viterbi(ViterbiOptions::default()),
        vec![4.0, 4.5],
        100,
    )?)
    .map_err(|e| e.to_string())?;
    let x = curve_crossing(&curve, TARGET_WER).map_err(|e| e.to_string())?;
    let enough = curve.rows.iter().all(|r| r.word_errors >= 100);
    Ok((
        vec![Outcome::hard(
            enough && (x.ebn0_db - 4.25).abs() <= 0.15,
            format!(
                "crossing {:.3} dB, 95% band {} (4.25 +- 0.15); {} ({:.0} s)",
                x.ebn0_db,
                band(&x),
                describe(&curve),
                t.elapsed().as_secs_f64()
            ),
        )],
        x.ebn0_db,
    ))
}

// 7: degradations of the suboptimal decoders; ordering is the hard part.
fn suboptimal(reference_db: f64) -> Check {
    let cases: [(DecoderConfig, f64, f64, u64); 4] = [
        (
            DecoderConfig::Trellis2d(Trellis2dOptions::default()),
            0.36,
            4.5,
            100,
        ),
        (DecoderConfig::Lbp(Default::default()), 1.96, 6.0, 100),
        (
            DecoderConfig::ModifiedLbp(Default::default()),
            0.20,
            5.0,
            100,
        ),
        (DecoderConfig::Gbp(Default::default()), 0.40, 4.0, 50),
    ];
    let mut out = Vec::new();
    let mut deg = Vec::new();
    for (cfg, target, start, errors) in cases {
        let t = Instant::now();
        let (curve, x) = bracketed_curve(cfg.clone(), start, errors)?;
        let d = x.ebn0_db - reference_db;
        deg.push(d);
        out.push(Outcome {
            pass: (d - target).abs() <= 0.3,
            hard: false,
            detail: format!(
                "{}: degradation {d:.2} dB (target {target:.2} +- 0.3); {} ({:.0} s)",
                cfg.name(),
                describe(&curve),
                t.elapsed().as_secs_f64()
            ),
        });
    }
    let (trellis, lbp, modified, gbp) = (deg[0], deg[1], deg[2], deg[3]);
    out.push(Outcome::hard(
        modified <= lbp,
        format!("modified LBP {modified:.2} <= LBP {lbp:.2}"),
    ));
    out.push(Outcome::hard(
        lbp >= trellis && lbp >= modified && lbp >= gbp,
        format!("LBP worst: 2D trellis {trellis:.2}, LBP {lbp:.2}, modified {modified:.2}, GBP {gbp:.2}"),
    ));
    Ok(out)
}

fn region_sets(text: &[&[usize]]) -> BTreeSet<Vec<usize>> {
    text.iter().map(|r| r.to_vec()).collect()
}

// 8: the 48 regions of the worked 4x4 example.
fn region_golden() -> Check {
    let t = Instant::now();
    let large: [&[usize]; 16] = [
        &[0, 3, 12, 19, 28],
        &[0, 1, 13, 16, 29],
        &[1, 2, 14, 17, 30],
        &[2, 3, 15, 18, 31],
        &[0, 4, 7, 16, 23],
        &[1, 4, 5, 17, 20],
        &[2, 5, 6, 18, 21],
        &[3, 6, 7, 19, 22],
        &[4, 8, 11, 20, 27],
        &[5, 8, 9, 21, 24],
        &[6, 9, 10, 22, 25],
        &[7, 10, 11, 23, 26],
        &[8, 12, 15, 24, 31],
        &[9, 12, 13, 25, 28],
        &[10, 13, 14, 26, 29],
        &[11, 14, 15, 27, 30],
    ];
    let pairs: [&[usize]; 16] = [
        &[3, 19],
        &[12, 28],
        &[0, 16],
        &[13, 29],
        &[1, 17],
        &[14, 30],
        &[2, 18],
        &[15, 31],
        &[7, 23],
        &[4, 20],
        &[5, 21],
        &[6, 22],
        &[11, 27],
        &[8, 24],
        &[9, 25],
        &[10, 26],
    ];
    let mut want = region_sets(&large);
    want.extend(region_sets(&pairs));
    let kikuchi_want = want.clone();
    want.extend((0..16).map(|v| vec![v]));

    let graph =
        build_tanner(&build_parity_check(&catalog::example_4x4()).map_err(|e| e.to_string())?);
    let modified = build_region_graph(&graph, RegionMode::Modified);
    let kikuchi = build_region_graph(&graph, RegionMode::Kikuchi);
    let secs = t.elapsed().as_secs_f64();
    Ok(vec![
        Outcome::hard(
            modified.canonical() == want
                && modified.regions.len() == 48
                && modified.layer_sizes() == [16, 16, 16],
            format!(
                "modified: {} regions, layers {:?}",
                modified.regions.len(),
                modified.layer_sizes()
            ),
        ),
        Outcome::hard(
            kikuchi.canonical() == kikuchi_want && kikuchi.regions.len() == 32,
            format!("kikuchi: {} regions", kikuchi.regions.len()),
        ),
        Outcome::hard(secs < 1.0, format!("{secs:.3} s")),
    ])
}

fn random_kernels(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<Vec<u8>>> {
    loop {
        let ks: Vec<Vec<Vec<u8>>> = (0..2)
            .map(|_| {
                (0..k)
                    .map(|_| (0..k).map(|_| rng.random_range(0..2u8)).collect())
                    .collect()
            })
            .collect();
        if ks.iter().all(|m| m.iter().flatten().any(|&b| b == 1)) {
            return ks;
        }
    }
}

// 9: property checks with a fixed seed (the proptest suites cover the
// same ground with shrinking).
fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut out = Vec::new();

    let t = Instant::now();
    let mut linear = true;
    let mut equivariant = true;
    for i in 0..10_000 {
        let spec = code(["c1", "c2", "c5", "c7"][i % 4]);
        let u1 = TorusGrid::random(6, 6, &mut rng);
        let u2 = TorusGrid::random(6, 6, &mut rng);
        let (a, b) = (
            rng.random_range(-6..6i32) as isize,
            rng.random_range(-6..6i32) as isize,
        );
        let e = |u: &TorusGrid| encode(u, &spec).expect("6x6 encodes");
        linear &= e(&u1.xor(&u2)) == e(&u1).xor(&e(&u2));
        equivariant &= e(&u1.shift(a, b)) == e(&u1).shift(a, b);
    }
    out.push(Outcome::hard(
        linear && equivariant,
        format!(
            "encoder linearity and shift equivariance on 10^4 cases ({:.1} s)",
            t.elapsed().as_secs_f64()
        ),
    ));

    // The literal claim cannot hold when a generator like 1+x+y has a leading
    // term dividing the monomial; the weaker divisibility form always holds.
    let (mut sets, mut held, mut divided) = (0, 0, 0);
    while sets < 100 {
        let k = if rng.random_bool(0.5) { 2 } else { 3 };
        let spec = CodeSpec::new((6, 6), (k, k), random_kernels(&mut rng, k))
            .map_err(|e| e.to_string())?;
        let gens = spec.kernel_polys();
        let Some(w) = monomial_in_ideal(&gens).map_err(|e| e.to_string())? else {
            continue;
        };
        sets += 1;
        let rgb = reduced_basis(&gens, MonomialOrder::GrevLex).map_err(|e| e.to_string())?;
        let m = Poly2::monomial(w.alpha, w.beta);
        if rgb.generators.contains(&m) {
            held += 1;
        }
        if rgb
            .leading_monomials()
            .iter()
            .any(|lm| lm.x <= w.alpha && lm.y <= w.beta)
            && rgb.contains(&m).unwrap_or(false)
        {
            divided += 1;
        }
    }
    out.push(Outcome {
        pass: held == sets,
        hard: false,
        detail: format!("RGB holds the minimal monomial on {held}/{sets} invertible kernel sets"),
    });
    out.push(Outcome::hard(
        divided == sets,
        format!("an RGB leading term divides the minimal monomial on {divided}/{sets} sets"),
    ));

    let mut worst: f64 = 0.0;
    for (name, schedule) in [("c1", Schedule::Flooding), ("c5", Schedule::Serial)] {
        let spec = code(name);
        let dec = Trellis2dDecoder::new(
            &spec,
            Trellis2dOptions {
                schedule,
                ..Default::default()
            },
        );
        let cfg = ChannelConfig::new(2.0, spec.rate(), 0).map_err(|e| e.to_string())?;
        let llr = awgn_bpsk(
            &encode(&TorusGrid::random(6, 6, &mut rng), &spec).map_err(|e| e.to_string())?,
            &cfg,
            &mut rng,
        );
        for iters in [1, 3, 7] {
            let st = dec.state_after(&llr, iters);
            for table in st.incoming.iter().flatten().chain(&st.beliefs) {
                worst = worst.max((table.iter().sum::<f64>() - 1.0).abs());
                if table.iter().any(|&x| x < 0.0) {
                    worst = f64::INFINITY;
                }
            }
        }
    }
    out.push(Outcome::hard(
        worst <= 1e-10,
        format!("2D trellis tables sum to 1 within {worst:.1e}"),
    ));

    let small = |cfg: DecoderConfig| plan(cfg, vec![3.0], 5);
    let mut same = true;
    for cfg in [
        DecoderConfig::Viterbi(ViterbiOptions::default()),
        DecoderConfig::ModifiedLbp(Default::default()),
    ] {
        let mut p1 = small(cfg.clone())?;
        let mut p2 = small(cfg)?;
        p1.plan.batch = 3;
        p2.plan.batch = 500;
        let a = run_wer(&p1).map_err(|e| e.to_string())?.to_csv();
        let b = run_wer(&p2).map_err(|e| e.to_string())?.to_csv();
        same &= a == b;
    }
    out.push(Outcome::hard(
        same,
        "fixed seed gives byte-identical CSVs across batch sizes".into(),
    ));

    let mut sums_ok = true;
    for spec in [catalog::example_4x4(), code("c1"), code("c2")] {
        let rg = build_region_graph(
            &build_tanner(&build_parity_check(&spec).map_err(|e| e.to_string())?),
            RegionMode::Modified,
        );
        sums_ok &= rg.variable_sum_violations().is_empty() && rg.check_sum_violations().is_empty();
    }
    out.push(Outcome::hard(
        sums_ok,
        "counting numbers sum to 1 per variable and per check".into(),
    ));
    Ok(out)
}

fn report(id: usize, title: &str, result: Check, failures: &mut usize) {
    match result {
        Ok(outcomes) => {
            let hard_ok = outcomes.iter().filter(|o| o.hard).all(|o| o.pass);
            let all_ok = outcomes.iter().all(|o| o.pass);
            let tag = if all_ok { "PASS" } else { "FAIL" };
            println!("[{tag}] {id}. {title}");
            for o in &outcomes {
                let mark = match (o.pass, o.hard) {
                    (true, _) => "ok  ",
                    (false, true) => "FAIL",
                    (false, false) => "soft",
                };
                println!("       {mark} {}", o.detail);
            }
            if !hard_ok {
                *failures += 1;
            }
        }
        Err(e) => {
            println!("[FAIL] {id}. {title}: {e}");
            *failures += 1;
        }
    }
}

fn main() -> ExitCode {
    let mut failures = 0;
    report(
        1,
        "algebraic validation",
        algebraic_validation(),
        &mut failures,
    );
    report(2, "parity identity", parity_identity(), &mut failures);
    report(3, "spectrum golden tests", spectrum_golden(), &mut failures);
    report(4, "bounds", bounds(), &mut failures);
    report(5, "ML oracle equivalence", ml_equivalence(), &mut failures);
    let reference = match monte_carlo_anchor() {
        Ok((outcomes, x)) => {
            report(6, "Monte-Carlo anchor", Ok(outcomes), &mut failures);
            Some(x)
        }
        Err(e) => {
            report(6, "Monte-Carlo anchor", Err(e), &mut failures);
            None
        }
    };
    match reference {
        Some(x) => report(7, "suboptimal decoders", suboptimal(x), &mut failures),
        None => report(
            7,
            "suboptimal decoders",
            Err("no Viterbi reference".into()),
            &mut failures,
        ),
    }
    report(
        8,
        "region graph golden test",
        region_golden(),
        &mut failures,
    );
    report(9, "property suites", properties(), &mut failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criterion(s) failed");
        ExitCode::FAILURE
    }
}
