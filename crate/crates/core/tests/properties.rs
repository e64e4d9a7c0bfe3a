use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tbcc::algebra::{monomial_in_ideal, reduced_basis, MonomialOrder};
use tbcc::codec::{build_parity_check, catalog, encode, CodeSpec, LlrPlanes, TorusGrid};
use tbcc::graph::{
    build_region_graph, build_tanner, lbp_decode, modified_lbp_decode, RegionMode, SyndromeFamily,
};
use tbcc::harness::{awgn_bpsk, ChannelConfig};
use tbcc::trellis::{Schedule, Trellis2dDecoder, Trellis2dOptions};
use tbcc::Poly2;

fn grid(rows: usize, cols: usize) -> impl Strategy<Value = TorusGrid> {
    prop::collection::vec(0u8..2, rows * cols)
        .prop_map(move |b| TorusGrid::from_bits(rows, cols, b).unwrap())
}

fn kernel_set(k: usize) -> impl Strategy<Value = Vec<Vec<Vec<u8>>>> {
    prop::collection::vec(
        prop::collection::vec(prop::collection::vec(0u8..2, k), k),
        2,
    )
    .prop_filter("nonzero kernels", |ks| {
        ks.iter().all(|m| m.iter().flatten().any(|&b| b == 1))
    })
}

fn catalog_code() -> impl Strategy<Value = CodeSpec> {
    prop::sample::select(vec!["c1", "c2", "c3", "c5", "c6", "c7"])
        .prop_map(|n| catalog::get(n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn encoder_is_linear(spec in catalog_code(), a in grid(6, 6), b in grid(6, 6)) {
        let e = |u: &TorusGrid| encode(u, &spec).unwrap();
        prop_assert_eq!(e(&a.xor(&b)), e(&a).xor(&e(&b)));
    }

    #[test]
    fn encoder_commutes_with_shifts(spec in catalog_code(), u in grid(6, 6), r in -6isize..6, c in -6isize..6) {
        prop_assert_eq!(encode(&u.shift(r, c), &spec).unwrap(), encode(&u, &spec).unwrap().shift(r, c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduced_basis_leading_terms_divide_the_minimal_monomial(ks in prop_oneof![kernel_set(2), kernel_set(3)]) {
        let k = ks[0].len();
        let spec = CodeSpec::new((6, 6), (k, k), ks).unwrap();
        let gens = spec.kernel_polys();
        if let Some(w) = monomial_in_ideal(&gens).unwrap() {
            let rgb = reduced_basis(&gens, MonomialOrder::GrevLex).unwrap();
            prop_assert!(rgb.contains(&Poly2::monomial(w.alpha, w.beta)).unwrap());
            prop_assert!(rgb.leading_monomials().iter().any(|lm| lm.x <= w.alpha && lm.y <= w.beta));
            // A monomial generator of the basis is never smaller than the minimum.
            for g in &rgb.generators {
                if g.terms().count() == 1 {
                    let t = g.terms().next().unwrap();
                    prop_assert!(t.x + t.y >= w.alpha + w.beta);
                }
            }
        }
    }

    #[test]
    fn codewords_satisfy_every_syndrome_former(spec in catalog_code(), u in grid(6, 6)) {
        let v = encode(&u, &spec).unwrap().to_flat();
        prop_assert!(build_parity_check(&spec).unwrap().matrix.annihilates(&v));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trellis_tables_stay_normalized(seed in any::<u64>(), iters in 1usize..6, serial in any::<bool>()) {
        let spec = catalog::get("c1").unwrap();
        let schedule = if serial { Schedule::Serial } else { Schedule::Flooding };
        let dec = Trellis2dDecoder::new(&spec, Trellis2dOptions { schedule, ..Default::default() });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = ChannelConfig::new(1.0, 0.5, seed).unwrap();
        let llr = awgn_bpsk(&encode(&TorusGrid::random(6, 6, &mut rng), &spec).unwrap(), &cfg, &mut rng);
        let st = dec.state_after(&llr, iters);
        for t in st.incoming.iter().flatten().chain(&st.beliefs) {
            prop_assert!(t.iter().all(|&x| x >= 0.0));
            prop_assert!((t.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn trellis_decisions_shift_with_the_input(seed in any::<u64>(), r in 0isize..6, c in 0isize..6) {
        let spec = catalog::get("c1").unwrap();
        let dec = Trellis2dDecoder::new(&spec, Trellis2dOptions::default());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = ChannelConfig::new(3.0, 0.5, seed).unwrap();
        let llr = awgn_bpsk(&encode(&TorusGrid::random(6, 6, &mut rng), &spec).unwrap(), &cfg, &mut rng);
        prop_assert_eq!(dec.decode(&llr.shift(r, c)).info, dec.decode(&llr).info.shift(r, c));
    }

    #[test]
    fn stochastic_decoding_is_seed_deterministic(seed in any::<u64>()) {
        let spec = catalog::get("c1").unwrap();
        let family = SyndromeFamily::standard(&spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = ChannelConfig::new(2.0, 0.5, seed).unwrap();
        let llr = awgn_bpsk(&encode(&TorusGrid::random(6, 6, &mut rng), &spec).unwrap(), &cfg, &mut rng).to_flat();
        let run = || modified_lbp_decode(&llr, &family, Default::default(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn lbp_posteriors_are_finite(seed in any::<u64>()) {
        let spec = catalog::get("c2").unwrap();
        let graph = build_tanner(&build_parity_check(&spec).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = ChannelConfig::new(0.0, 0.5, seed).unwrap();
        let llr = awgn_bpsk(&encode(&TorusGrid::random(6, 6, &mut rng), &spec).unwrap(), &cfg, &mut rng);
        let out = lbp_decode(&llr.to_flat(), &graph, 20);
        prop_assert!(out.posterior.iter().all(|p| p.is_finite()));
    }
}

#[test]
fn counting_numbers_sum_to_one() {
    for spec in [
        catalog::example_4x4(),
        catalog::get("c1").unwrap(),
        catalog::get("c2").unwrap(),
    ] {
        let rg = build_region_graph(
            &build_tanner(&build_parity_check(&spec).unwrap()),
            RegionMode::Modified,
        );
        assert!(rg.variable_sum_violations().is_empty());
        assert!(rg.check_sum_violations().is_empty());
        assert!(rg.edges_are_nested());
    }
}

#[test]
fn flat_input_keeps_trellis_messages_uniform() {
    let spec = catalog::get("c5").unwrap();
    let dec = Trellis2dDecoder::new(&spec, Trellis2dOptions::default());
    let st = dec.state_after(&LlrPlanes::zeros(2, 6, 6), 5);
    for t in st.incoming.iter().flatten() {
        let u = 1.0 / t.len() as f64;
        assert!(t.iter().all(|&x| (x - u).abs() < 1e-12));
    }
}
