//! Frozen values: recorded invariants of the catalogue curves and small
//! hand-checked cases.

use freecurve::analysis::{analyze_spec, AnalysisOptions};
use freecurve::arith::Rational;
use freecurve::families::{self, PRINTED_PROP2I};
use freecurve::freeness::{delta, exponents_from_tau, hp_hilbert_identities, SaturationMode};
use freecurve::linalg::rank_exact;
use freecurve::milnor::{
    annihilates_gradient, full_profile, jacobian_matrix_in_degree, smooth_reference_dim, CurveInput, ProfileOptions,
    Threshold,
};
use freecurve::parser::parse_homogeneous;
use freecurve::tripoly::TriPoly;
use freecurve::verify::{relation_space, VALLES_GOLDEN};

fn curve(s: &str) -> CurveInput {
    CurveInput::new(parse_homogeneous(s).unwrap()).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

#[test]
fn smooth_reference_quintic() {
    let m: Vec<i64> = (0..=10).map(|k| smooth_reference_dim(5, k)).collect();
    assert_eq!(m, vec![1, 3, 6, 10, 12, 12, 10, 6, 3, 1, 0]);
    assert_eq!(smooth_reference_dim(7, 7), 27);
}

#[test]
fn small_jacobian_ranks() {
    assert_eq!(rank_exact(&jacobian_matrix_in_degree(&curve("x^5+y^5+z^5"), 4)), 3);
    let m = jacobian_matrix_in_degree(&curve("y^2*z - x^3"), 2);
    assert_eq!((m.rows(), m.cols()), (6, 3));
    assert_eq!(rank_exact(&m), 3);
}

#[test]
fn cuspidal_cubic_profile() {
    let p = full_profile(&curve("y^2*z - x^3"), &ProfileOptions::default()).unwrap();
    assert_eq!(&p.m[..6], &[1, 3, 3, 2, 2, 2]);
    assert_eq!((p.tau, p.ct, p.st, p.mdr, p.t), (2, Threshold::Finite(2), 3, Threshold::Finite(1), 3));
}

#[test]
fn thm_quintic_profile() {
    let p = full_profile(&curve("(y*z+x^2)^2*y - x^5"), &ProfileOptions::default()).unwrap();
    assert_eq!(&p.m[..8], &[1, 3, 6, 10, 12, 12, 12, 12]);
    assert_eq!((p.ct, p.st), (Threshold::Finite(5), 4));
    assert_eq!((p.ar[1], p.ar[2]), (0, 2));
    let h = p.t / 2;
    assert_eq!(p.m_at(h) + p.m_at(p.t - h) - p.ms_at(h), 12);
}

#[test]
fn thresholds_of_degree_seven_curves() {
    let st = full_profile(&curve("y^6*z + x^7 + x^2*y^5"), &ProfileOptions::default()).unwrap();
    assert_eq!((st.tau, st.mdr, st.ct, st.st, st.t), (28, Threshold::Finite(2), Threshold::Finite(7), 8, 15));
    assert!(hp_hilbert_identities(&st, 2, 4));
    let th = full_profile(&curve("(y^2*z+x^3)^2*y - x^7"), &ProfileOptions::default()).unwrap();
    assert_eq!((th.tau, th.mdr, th.ct, th.st), (27, Threshold::Finite(3), Threshold::Finite(8), 7));
    assert_eq!(th.m_at(2 * 7 - 5 - 3) + th.er_at(3).unwrap(), 27);
    assert!(hp_hilbert_identities(&th, 3, 3));
}

#[test]
fn exponent_quadratic() {
    assert_eq!(exponents_from_tau(7, 28).unwrap(), (2, 4));
    assert_eq!(exponents_from_tau(13, 108).unwrap(), (6, 6));
    assert_eq!(exponents_from_tau(34, 823).unwrap(), (14, 19));
    assert_eq!(exponents_from_tau(89, 5889).unwrap(), (35, 53));
    assert_eq!(delta(13, 108), 0);
    assert_eq!(delta(9, 49), 4);
}

#[test]
fn recorded_tjurina_numbers() {
    let cases = [
        (families::gen_stfam(5, &q(1), &q(0), &q(0)).unwrap(), 12),
        (families::gen_stfam(7, &q(1), &q(0), &q(0)).unwrap(), 28),
        (families::gen_stfam(8, &q(1), &q(1), &q(1)).unwrap(), 39),
        (families::gen_prop2i(6).unwrap(), 19),
        (families::gen_thm2ii(4).unwrap(), 48),
        (families::gen_prop3(2, 1).unwrap(), 12),
        (families::gen_prop3(3, 1).unwrap(), 19),
        (families::gen_prop3(2, 2).unwrap(), 19),
        (families::gen_prop3(4, 4).unwrap(), 67),
        (families::gen_prop4i(3).unwrap(), 19),
        (families::gen_prop4ii(1).unwrap(), 108),
        (families::gen_line_arrangement("d7").unwrap(), 27),
        (families::gen_line_arrangement("d8").unwrap(), 37),
        (families::gen_line_arrangement("d9").unwrap(), 49),
    ];
    for (spec, tau) in cases {
        let an = analyze_spec(&spec, &AnalysisOptions::default()).unwrap();
        assert_eq!(an.report.tau, tau, "{}", spec.id);
        assert!(an.report.free, "{}", spec.id);
        assert_eq!(an.report.rigid, Some(true), "{}", spec.id);
    }
}

#[test]
fn not_free_quartics() {
    for spec in [families::gen_prop4i(2).unwrap(), families::gen_prop2i(4).unwrap(), families::gen_prop3(1, 1).unwrap()] {
        let an = analyze_spec(&spec, &AnalysisOptions::default()).unwrap();
        assert!(!an.report.free, "{}", spec.id);
    }
}

#[test]
fn rational_cuspidal_identity() {
    let an = analyze_spec(&families::gen_thm2ii(2).unwrap(), &AnalysisOptions::default()).unwrap();
    let e = an.report.euler.unwrap();
    assert_eq!((e.mu, e.eu), (12, 1));
    assert!(e.cuspidal_consistent);
    let an = analyze_spec(&families::gen_prop4ii(1).unwrap(), &AnalysisOptions::default()).unwrap();
    let e = an.report.euler.unwrap();
    assert_eq!(e.mu, 132);
    assert!(e.cuspidal_consistent);
}

#[test]
fn printed_recursion_and_catalan_coefficients() {
    for (d, text) in PRINTED_PROP2I {
        assert_eq!(families::prop2i_chain(d).unwrap().pop().unwrap(), parse_homogeneous(text).unwrap());
    }
    let a: Vec<Rational> = (5..=11).map(|d| families::prop2i_coefficient(d).unwrap()).collect();
    assert_eq!(a, [1, 2, 5, 14, 42, 132, 429].map(q));
    let f4 = families::prop2i_chain(4).unwrap().pop().unwrap();
    assert_eq!(f4, parse_homogeneous("(y*z+x^2)^2-x^3*z").unwrap());
}

#[test]
fn fibonacci_degrees() {
    let d: Vec<u32> = (0..=2).map(|k| families::gen_prop4ii(k).unwrap().d).collect();
    assert_eq!(d, vec![5, 13, 34]);
}

#[test]
fn relation_templates() {
    let c = CurveInput::new(families::gen_thm2ii(2).unwrap().f).unwrap();
    let r2 = [TriPoly::zero(), parse_homogeneous("-2*y^2").unwrap(), parse_homogeneous("x^2+3*y*z").unwrap()];
    assert!(annihilates_gradient(&c, &r2));
    assert_eq!(relation_space(&c, 2, &families::syzygy_templates_thm2ii(2)).unwrap(), (2, true));
    let c7 = CurveInput::new(families::gen_prop2i(7).unwrap().f).unwrap();
    let t = families::syzygy_template_rkeq2i(7, &q(5));
    assert_eq!(t[0], parse_homogeneous("5*x^2 - 16*x*y").unwrap());
    assert_eq!(t[2], parse_homogeneous("490*x^2 - 30*x*z + 110*y*z").unwrap());
    assert!(annihilates_gradient(&c7, &t));
    assert_eq!(relation_space(&c7, 2, &[t]).unwrap(), (1, true));
}

#[test]
fn saturation_defects_by_both_methods() {
    let opts = AnalysisOptions { saturation: SaturationMode::Both, ..Default::default() };
    let an = analyze_spec(&families::gen_cuspidal_cubic(), &opts).unwrap();
    let n: Vec<Option<i64>> = an.report.defects.entries.iter().map(|e| e.n).collect();
    assert_eq!(n, vec![Some(0), Some(1), Some(1), Some(0)]);
    let an = analyze_spec(&families::gen_prop3(3, 1).unwrap(), &opts).unwrap();
    assert_eq!(an.report.defects.all_zero(), Some(true));
    assert!(an.report.defects.disagreements().is_empty());
    let an = analyze_spec(&families::gen_fermat(5).unwrap(), &opts).unwrap();
    assert_eq!(an.report.rigid, Some(false));
    assert_eq!(an.report.defects.at(5), Some(smooth_reference_dim(5, 5)));
}

#[test]
fn valles_golden_value() {
    let an = analyze_spec(&families::gen_valles_pencil(), &AnalysisOptions::default()).unwrap();
    let (tau, d1, d2) = VALLES_GOLDEN;
    assert!(an.report.free);
    assert_eq!((an.report.tau, an.report.d1, an.report.d2), (tau, Some(d1), Some(d2)));
    assert_eq!((an.profile.ct, an.profile.st, an.profile.mdr), (Threshold::Finite(17), 22, Threshold::Finite(4)));
}
