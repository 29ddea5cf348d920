use numsg_core::determinantal::{search_matrix, SearchConfig};
use numsg_core::groebner::{buchberger, reduce, s_binomial};
use numsg_core::survey::{compute_records, CertificatePath, DeterminantalStatus};
use numsg_core::{
    certify, construct_candidate_matrix, minors_2x2, toric_kernel, Binomial, BinomialIdeal, GbConfig, MonomialMatrix,
    MonomialOrder, NumericalSemigroup, SurveyConfig,
};

fn b(s: &str, n: usize) -> Binomial {
    Binomial::parse(s, n).unwrap()
}

fn kernel(g: &[u64]) -> numsg_core::DefiningIdeal {
    toric_kernel(&NumericalSemigroup::new(g).unwrap(), &MonomialOrder::grevlex(), &GbConfig::default()).unwrap()
}

fn same_up_to_sign(got: &[Binomial], want: &[&str], order: &MonomialOrder) -> bool {
    let n = got.first().map_or(0, Binomial::nvars);
    let mut g: Vec<Binomial> = got.iter().map(|x| x.normalized(order)).collect();
    let mut w: Vec<Binomial> = want.iter().map(|s| b(s, n).normalized(order)).collect();
    g.sort();
    w.sort();
    g == w
}

#[test]
fn s_binomial_with_coprime_leading_terms_reduces_to_zero() {
    let o = MonomialOrder::lex();
    let (f, g) = (b("x1^2 - x2", 2), b("x2^2 - x1", 2));
    let s = s_binomial(&f, &g, &o).unwrap();
    assert_eq!(reduce(&s, &[f, g], &o), None);
}

#[test]
fn s_binomial_degree_under_reversed_lex() {
    // lex with x3 > x2 > x1, written after swapping the names x1 and x3
    let o = MonomialOrder::lex();
    let f = b("x3*x1 - x2^2", 3).normalized(&o);
    let g = b("x2*x1 - x3^3", 3).normalized(&o);
    assert_eq!(f.to_string(), "x1*x3 - x2^2");
    let s = s_binomial(&f, &g, &o).unwrap();
    assert_eq!(s.to_string(), "x2^3 - x3^4");
    assert_eq!(s.degree(&[5, 4, 3]), 12);
}

#[test]
fn reduce_examples() {
    let o = MonomialOrder::grevlex().with_weights(vec![3, 4, 5]);
    let g = b("x2^2 - x1*x3", 3);
    let f = b("x1^3 - x2*x3", 3);
    assert_eq!(reduce(&f, std::slice::from_ref(&g), &o), Some(f.normalized(&o)));
    assert_eq!(reduce(&b("x1*x2^2 - x1^2*x3", 3), &[g.normalized(&o)], &o), None);
    assert_eq!(reduce(&g.normalized(&o), &[g.normalized(&o)], &o), None);
}

#[test]
fn groebner_basis_examples() {
    let o = MonomialOrder::lex();
    let gb = buchberger(&[b("x1^2 - x2", 2)], &o, &GbConfig::default()).unwrap();
    assert_eq!(gb.len(), 1);
    assert_eq!(gb[0].to_string(), "x1^2 - x2");

    let d = kernel(&[3, 4, 5]);
    let gb = d.ideal().groebner_basis(d.order(), &GbConfig::default()).unwrap();
    assert!(gb.len() == 3 || gb.len() == 4, "{gb:?}");
    for g in d.generators() {
        assert_eq!(reduce(g, &gb, d.order()), None);
    }
}

#[test]
fn normal_form_examples() {
    let cfg = GbConfig::default();
    let o = MonomialOrder::grevlex();
    let g = b("x1^2 - x2", 2);
    let i = BinomialIdeal::new(2, vec![g.clone()]).unwrap();
    assert_eq!(i.normal_form(&g, &o, &cfg).unwrap(), None);
    let zero = BinomialIdeal::zero(2);
    assert_eq!(zero.normal_form(&b("x1 - x2", 2), &o, &cfg).unwrap(), Some(b("x1 - x2", 2)));

    let d = kernel(&[3, 4, 5]);
    assert!(d.contains(&b("x1^4 - x1*x2*x3", 3), &cfg).unwrap());
}

#[test]
fn ideal_equality_examples() {
    let cfg = GbConfig::default();
    let d = kernel(&[3, 4, 5]);
    assert!(numsg_core::groebner::ideal_equal(d.ideal(), d.ideal(), d.order(), &cfg).unwrap());
    let two = BinomialIdeal::new(3, d.generators()[..2].to_vec()).unwrap();
    assert!(!numsg_core::groebner::ideal_equal(d.ideal(), &two, d.order(), &cfg).unwrap());
}

#[test]
fn minors_examples() {
    let o = MonomialOrder::grevlex();
    let m = MonomialMatrix::parse("x1,x2;x2,x3", 3).unwrap();
    assert!(same_up_to_sign(minors_2x2(&m).generators(), &["x1*x3 - x2^2"], &o));
    let m = MonomialMatrix::parse("x1,x2,x3,x4;x2,x3,x4,x1^2", 4).unwrap();
    let minors = minors_2x2(&m);
    let want = ["x1*x3 - x2^2", "x1*x4 - x2*x3", "x1^3 - x2*x4", "x2*x4 - x3^2", "x1^2*x2 - x3*x4", "x1^2*x3 - x4^2"];
    assert!(same_up_to_sign(minors.generators(), &want, &o));
    assert!(minors.generators().iter().all(|g| g.is_homogeneous(&[4, 5, 6, 7])));
    let d = kernel(&[4, 5, 6, 7]);
    assert!(same_up_to_sign(d.generators(), &want, d.order()));
}

#[test]
fn certify_examples() {
    let cfg = GbConfig::default();
    let d = kernel(&[3, 4, 5]);
    let h = d.semigroup().clone();
    let m = construct_candidate_matrix(&h, &h.check_hypothesis()).unwrap();
    assert!(certify(&d, &m, &cfg).unwrap().equal);

    let small = MonomialMatrix::parse("x1,x2;x2,x3", 3).unwrap();
    let cert = certify(&d, &small, &cfg).unwrap();
    assert!(!cert.equal);
    assert!(cert.witness_failures.iter().any(|w| w.to_string() == "x1^3 - x2*x3"), "{:?}", cert.witness_failures);

    let inconsistent = MonomialMatrix::parse("x1,x2,x3;x3,x1,x2", 3).unwrap();
    let cert = certify(&d, &inconsistent, &cfg).unwrap();
    assert!(!cert.equal);
    assert!(!cert.witness_failures.is_empty());
}

#[test]
fn search_examples() {
    let cfg = SearchConfig::default();
    let d = kernel(&[2, 3]);
    let m = search_matrix(&d, (2, 2), 6, None, &cfg).unwrap().unwrap();
    assert_eq!(m.to_string(), "x1,x2;x2,x1^2");
    assert_eq!(minors_2x2(&m).generators()[0].normalized(d.order()).to_string(), "x1^3 - x2^2");

    let d = kernel(&[3, 4, 5]);
    let m = search_matrix(&d, (2, 3), 10, Some(1), &cfg).unwrap().unwrap();
    assert!(certify(&d, &m, &cfg.gb).unwrap().equal);

    // mu = 6 is not C(3, 2)
    let d = kernel(&[4, 5, 6, 7]);
    assert_eq!(search_matrix(&d, (2, 3), 14, None, &cfg).unwrap(), None);
}

#[test]
fn construction_on_five_generators() {
    let h = NumericalSemigroup::new(&[5, 6, 7, 8, 9]).unwrap();
    assert_eq!(h.pseudo_frobenius(), &[1, 2, 3, 4]);
    let d = kernel(&[5, 6, 7, 8, 9]);
    assert_eq!(d.mu(), 10);
    let m = construct_candidate_matrix(&h, &h.check_hypothesis()).unwrap();
    assert_eq!((m.rows(), m.cols()), (2, 5));
    assert!(certify(&d, &m, &GbConfig::default()).unwrap().equal);
}

#[test]
fn principal_records_in_small_survey() {
    let cfg = SurveyConfig::new(6);
    let records = compute_records(&cfg, &Default::default(), |_| {}).unwrap();
    let principal: Vec<_> = records.iter().filter(|r| r.n == 2).collect();
    assert!(!principal.is_empty());
    for r in principal {
        assert_eq!(r.mu, Some(1), "{}", r.key);
        assert_eq!(r.determinantal, DeterminantalStatus::Certified, "{}", r.key);
        // a two-generator semigroup satisfies the hypothesis iff a0 = 2 (2n = 4 >= a + 2)
        let expected = if r.a0 == 2 { CertificatePath::Construction } else { CertificatePath::Search };
        assert_eq!(r.path, Some(expected), "{}", r.key);
        assert_eq!(r.matrix.as_deref().map(|m| m.split(';').count()), Some(2));
    }
    let r = &records[0];
    assert_eq!(r.key, "<2,3>");
    assert_eq!(r.matrix.as_deref(), Some("x1,x2;x2,x1^2"));
}
