use proptest::prelude::*;
use spindex_core::blocks::{self, Block};
use spindex_core::tetindex::{j_delta, j_delta_form, j_fkb, nu};
use spindex_core::{AdmissibleTriple, Monomial, QuadTriple, SixColors};

fn six_strategy(max: u64) -> impl Strategy<Value = SixColors> {
    let all = blocks::admissible_six(max);
    (0..all.len()).prop_map(move |i| all[i])
}

fn triple_strategy(r: i64) -> impl Strategy<Value = QuadTriple> {
    (-r..=r, -r..=r, -r..=r).prop_map(|(a, b, c)| QuadTriple::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tet_is_tetrahedrally_symmetric(s in six_strategy(4)) {
        let base = blocks::tet(&s);
        for img in s.tetrahedral_images() {
            prop_assert_eq!(blocks::tet(&img), base.clone());
        }
    }

    #[test]
    fn tet_is_palindromic(s in six_strategy(5)) {
        let t = blocks::tet(&s);
        let lo = t.lowest().unwrap();
        let hi = t.highest().unwrap();
        prop_assert_eq!(&lo.coeff, &hi.coeff);
        prop_assert_eq!(lo.exp2, -hi.exp2);
        prop_assert_eq!(lo, blocks::tet_lowest_closed(&s).unwrap());
    }

    #[test]
    fn hat_tet_routes_agree(s in six_strategy(4), p in 1i64..16) {
        prop_assert_eq!(blocks::hat_tet(&s, p).unwrap(), blocks::hat_tet_ell_sum(&s, p).unwrap());
    }

    #[test]
    fn j_delta_translation(t in triple_strategy(3), s in -2i64..=2) {
        let prec2 = 20;
        let shifted = j_delta(&t.translated(s), prec2 - s)
            .mul_monomial(&Monomial::neg_sqrt_q_pow(s))
            .truncate(prec2);
        prop_assert_eq!(shifted, j_delta(&t, prec2));
    }

    #[test]
    fn j_delta_symmetric(t in triple_strategy(3)) {
        let base = j_delta(&t, 20);
        for p in t.permutations() {
            prop_assert_eq!(j_delta(&p, 20), base.clone());
        }
    }

    #[test]
    fn j_delta_forms_and_fkb_agree(t in triple_strategy(3)) {
        let base = j_delta(&t, 20);
        for form in 0..3 {
            prop_assert_eq!(j_delta_form(&t, form, 20), base.clone());
        }
        prop_assert_eq!(j_fkb(&t, 20), base);
    }

    #[test]
    fn j_delta_leading_term(t in triple_strategy(4)) {
        let n = nu(&t);
        let j = j_delta(&t, n + 4);
        let sign = if QuadTriple::min(&t).rem_euclid(2) == 0 { 1 } else { -1 };
        prop_assert_eq!(j.lowest().unwrap(), Monomial::new(sign, n));
    }
}

#[test]
fn unknot_and_theta_extremes_follow_closed_form() {
    for a in 0..=8 {
        let u = blocks::unknot(a);
        assert_eq!(u.highest().unwrap(), blocks::closed_form_extremal(&Block::Unknot(a)));
        assert_eq!(u.lowest().unwrap(), blocks::unknot_lowest(a));
    }
    for t in blocks::admissible_triples(8) {
        let th = blocks::theta(&t);
        assert_eq!(th.highest().unwrap(), blocks::closed_form_extremal(&Block::Theta(t)));
        assert_eq!(th.lowest().unwrap(), blocks::theta_lowest(&t));
    }
}

#[test]
fn theta_and_tet_stabilize() {
    for t in blocks::admissible_triples(3) {
        let out = blocks::theta_stabilization(&t, 20, 10).unwrap();
        assert!(out.stabilized(), "{t:?}");
    }
    for s in blocks::admissible_six(2) {
        let out = blocks::tet_stabilization_signed(&s, 12, 8).unwrap();
        assert!(out.stabilized(), "{s:?}");
    }
    // The stated limit has constant term (-1)^ν(S*).
    let odd = SixColors::new(1, 1, 2, 1, 1, 2).unwrap();
    assert!(!blocks::tet_stabilization(&odd, 12, 8).unwrap().stabilized());
}

#[test]
fn degree_grows_with_color() {
    // The lowest exponent of hat-free blocks falls as colors grow.
    for a in 0..8 {
        assert!(blocks::unknot_lowest(a + 1).exp2 < blocks::unknot_lowest(a).exp2);
    }
    let t = AdmissibleTriple::new(1, 1, 2).unwrap();
    let lows: Vec<i64> = (0..6).map(|n| blocks::theta_lowest(&t.shifted(n)).exp2).collect();
    assert!(lows.windows(2).all(|w| w[1] < w[0]));
}
