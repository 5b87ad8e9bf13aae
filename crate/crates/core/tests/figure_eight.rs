use spindex_core::statesum::fkb_limit;
use spindex_core::surfaces::{index_series, verify_thm1};
use spindex_core::{QSeries, Triangulation};

fn q(coeffs: &[i64]) -> QSeries {
    let dense: Vec<i64> = coeffs.iter().flat_map(|&c| [c, 0]).collect();
    QSeries::from_i64s(0, &dense[..dense.len() - 1], Some(12))
}

fn index() -> QSeries {
    q(&[1, -2, -3, 2, 8, 18])
}

#[test]
fn two_tet_state_sum() {
    let tri = Triangulation::fixture("fig8-2tet").unwrap();
    let r = fkb_limit(&tri, 12, 40).unwrap();
    assert_eq!(r.i_fkb, index());
    assert_eq!(r.i0, q(&[1, 0, 4, 4, -6, -36]));
    assert_eq!(r.two_i1, q(&[-1, 2, 3, -2, -8, -18]));
    assert!(r.reconstruction_holds());
}

#[test]
fn three_tet_state_sum() {
    let tri = Triangulation::fixture("fig8-3tet").unwrap();
    let r = fkb_limit(&tri, 12, 40).unwrap();
    assert_eq!(r.i_fkb, index());
    // Constant terms depend on the triangulation.
    assert_eq!(r.i0, q(&[1, 0, 6, 8, -4, -43]));
    assert_eq!(r.two_i1, -&index());
    assert!(r.reconstruction_holds());
}

#[test]
fn routes_agree() {
    for name in ["fig8-2tet", "fig8-3tet"] {
        let tri = Triangulation::fixture(name).unwrap();
        let r = verify_thm1(&tri, 12, 40, 30).unwrap();
        assert!(r.agree(), "{name}: {:?}", r.first_mismatch);
        assert_eq!(index_series(&tri, 12, 30).unwrap(), index());
    }
}
