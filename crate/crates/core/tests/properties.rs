use caterpillar_spectra::oracle::{deradicalize, exact_charpoly, exact_det_shifted, mu_oracle, sym_eigs};
use caterpillar_spectra::*;
use proptest::prelude::*;

fn specs(kmax: usize, qmax: u64) -> impl Strategy<Value = CaterpillarSpec> {
    prop::collection::vec(0..=qmax, 1..=kmax).prop_map(|v| CaterpillarSpec::from_legs(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parse_round_trip(s in specs(10, 10)) {
        let back: CaterpillarSpec = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn charpoly_matches_determinant(s in specs(7, 6), t in -6i64..6) {
        let b = deradicalize(&build_c(&s));
        prop_assert_eq!(charpoly_p(&s).eval_i64(t), exact_det_shifted(&b, t));
    }

    #[test]
    fn laplacian_charpoly_is_exact(s in specs(6, 5)) {
        let l = IntMatrix::from_dense(&build_caterpillar(&s).laplacian()).unwrap();
        prop_assert_eq!(laplacian_charpoly(&s).unwrap(), exact_charpoly(&l));
    }

    #[test]
    fn spectrum_matches_dense_laplacian(s in specs(7, 6)) {
        let want = sym_eigs(&build_caterpillar(&s).laplacian()).unwrap().values;
        let got = laplacian_spectrum(&s).unwrap();
        prop_assert_eq!(got.max_abs_diff(&want).map(|d| d < 1e-8), Some(true));
    }

    #[test]
    fn bounds_sandwich_mu(s in specs(8, 6).prop_filter("k >= 2", |s| s.k() >= 2)) {
        let r = bounds_report(&s).unwrap();
        prop_assert!(r.violations.is_empty(), "{:?}", r.violations);
        let mu = mu_oracle(&s).unwrap();
        prop_assert!(r.lb.to_f64() <= mu + 1e-9);
        prop_assert!(mu <= r.ub_trace.unwrap().value.to_f64() + 1e-9);
        prop_assert!(mu <= r.ub_cardano.value + 1e-9);
    }

    #[test]
    fn hjoin_reproduces_line_graph(s in specs(6, 5).prop_filter("k >= 2", |s| s.k() >= 2)) {
        let composed = linegraph_as_hjoin(&s).unwrap().compose().unwrap();
        let line = build_caterpillar(&s).line_graph().unwrap();
        prop_assert_eq!(composed.sorted_degrees(), line.sorted_degrees());
        let a = sym_eigs(&composed.adjacency()).unwrap().values;
        let b = sym_eigs(&line.adjacency()).unwrap().values;
        prop_assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
    }
}

#[test]
fn verify_suite_passes_on_seeded_specs() {
    let specs = verify::random_specs(40, 8, 6, 11);
    let report = verify_many(&specs, &VerifyConfig::default());
    for c in &report.checks {
        assert!(c.ok(), "{}: {:?}", c.name, c.first_failure);
    }
}
