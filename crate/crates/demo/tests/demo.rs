use hoi_demo::*;

#[test]
fn curve_is_monotone_in_sigma() {
    let curve = entropy_curve_values(120, 0.05, 20.0, 12, 1.01, 3).unwrap();
    assert_eq!(curve.len(), 24);
    let h: Vec<f64> = curve.chunks(2).map(|p| p[1]).collect();
    assert!(h.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{h:?}");
    assert!(h[0] <= (120f64).log2() + 1e-9);
}

#[test]
fn triplet_sliders_move_the_sign() {
    let redundant = triplet_values(0.9, 0.0, 300, 5.0, 1.01, 1).unwrap();
    let synergistic = triplet_values(0.0, 1.0, 300, 5.0, 1.01, 1).unwrap();
    assert!(redundant[2] > 0.0, "{redundant:?}");
    assert!(synergistic[2] < 0.0, "{synergistic:?}");
    assert_eq!(redundant[2], redundant[0] - redundant[1]);
}

#[test]
fn module_views_show_both_regimes() {
    let v = compute_views(6, 300, 0.9, 5.0, 1.01, 2).unwrap();
    assert_eq!(v.channels(), 6);
    assert_eq!(v.mi().len(), 36);
    let oinfo = v.oinfo();
    assert_eq!(oinfo.len(), 216);
    let at = |i: usize, j: usize, k: usize| oinfo[(i * 6 + j) * 6 + k];
    assert!(at(0, 1, 2) > 0.0);
    assert!(at(3, 4, 5) < 0.0);
}

#[test]
fn size_limits() {
    assert!(synthetic_modules(MAX_CHANNELS + 1, 100, 0.5, 0).is_err());
    assert!(triplet_values(0.5, 0.5, MAX_TIMEPOINTS + 1, 5.0, 1.01, 0).is_err());
    assert!(entropy_curve_values(100, 1.0, 5.0, 4, 1.0, 0).is_err());
}
