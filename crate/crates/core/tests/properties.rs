use numsg_core::determinantal::{certify, minors_2x2, MonomialMatrix};
use numsg_core::groebner::ideal_equal;
use numsg_core::{
    construct_candidate_matrix, toric_kernel, Binomial, ExponentVector, GbConfig, GeneratorSet, MonomialOrder,
    NumericalSemigroup,
};
use proptest::prelude::*;

fn monomial(n: usize) -> impl Strategy<Value = ExponentVector> {
    proptest::collection::vec(0u32..6, n).prop_map(ExponentVector::from)
}

/// Generator lists with gcd 1, as raw (possibly redundant) input.
fn generators() -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(3u64..30, 2..5).prop_filter("gcd 1", |v| v.iter().fold(0, |g, &x| gcd(g, x)) == 1)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn kernel(h: &NumericalSemigroup, order: MonomialOrder) -> numsg_core::DefiningIdeal {
    toric_kernel(h, &order, &GbConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn binomial_text_round_trip(a in monomial(4), b in monomial(4)) {
        prop_assume!(a != b);
        let f = Binomial::new(a, b).unwrap();
        prop_assert_eq!(Binomial::parse(&f.to_string(), 4).unwrap(), f);
    }

    #[test]
    fn matrix_text_round_trip(entries in proptest::collection::vec(monomial(3), 6)) {
        let m = MonomialMatrix::new(2, 3, entries);
        prop_assert_eq!(MonomialMatrix::parse(&m.to_string(), 3).unwrap(), m);
    }

    #[test]
    fn generator_key_round_trip(gens in generators()) {
        let g = GeneratorSet::minimalize(&gens).unwrap();
        prop_assert_eq!(g.canonical().parse::<GeneratorSet>().unwrap(), g.clone());
        let plain = g.as_slice().iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(plain.parse::<GeneratorSet>().unwrap(), g);
    }

    #[test]
    fn kernel_is_graded_and_order_independent(gens in generators()) {
        let h = NumericalSemigroup::new(&gens).unwrap();
        prop_assume!(h.embedding_dim() >= 2 && h.embedding_dim() <= 4);
        let g = kernel(&h, MonomialOrder::grevlex());
        let l = kernel(&h, MonomialOrder::lex());
        prop_assert_eq!(g.mu(), l.mu());
        prop_assert!(g.generators().iter().all(|b| b.is_homogeneous(g.weights())));
        prop_assert!(ideal_equal(g.ideal(), l.ideal(), g.order(), &GbConfig::default()).unwrap());
        // a minimal generating set of a prime binomial ideal has primitive members
        prop_assert!(g.generators().iter().all(Binomial::is_primitive));
    }

    #[test]
    fn construction_certifies_under_the_hypothesis(a0 in 3u64..12, extra in proptest::collection::vec(1u64..30, 0..4)) {
        // maximal embedding dimension semigroups <a0, a0+1, ..., 2a0-1> plus noise
        let mut gens: Vec<u64> = (a0..2 * a0).collect();
        gens.extend(extra);
        let h = NumericalSemigroup::new(&gens).unwrap();
        let hyp = h.check_hypothesis();
        prop_assume!(hyp.holds);
        let d = kernel(&h, MonomialOrder::grevlex());
        let m = construct_candidate_matrix(&h, &hyp).unwrap();
        prop_assert!(certify(&d, &m, &GbConfig::default()).unwrap().equal, "{} {}", h, m);
    }

    #[test]
    fn minors_are_symmetric_under_row_and_column_swaps(entries in proptest::collection::vec(monomial(3), 6), c in 0usize..3) {
        let m = MonomialMatrix::new(2, 3, entries);
        let o = MonomialOrder::grevlex();
        let cfg = GbConfig { max_degree: Some(200), ..GbConfig::default() };
        let base = minors_2x2(&m);
        for v in [m.swap_rows(0, 1), m.swap_cols(c, (c + 1) % 3)] {
            match ideal_equal(&base, &minors_2x2(&v), &o, &cfg) {
                Ok(eq) => prop_assert!(eq),
                Err(e) => prop_assert!(e.is_budget()),
            }
        }
    }
}

#[test]
fn pf_has_n_minus_one_elements_under_the_hypothesis() {
    for h in numsg_core::survey::enumerate_semigroups(12, None).filter(|h| h.is_proper()) {
        let hyp = h.check_hypothesis();
        if hyp.holds {
            assert_eq!(h.type_(), h.embedding_dim() - 1, "{h}");
        }
    }
}
