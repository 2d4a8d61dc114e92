use std::collections::BTreeMap;

use proptest::prelude::*;

use freecurve::arith::{is_prime, PrimeSampler, Rational};
use freecurve::linalg::{multi_modular_rank, rank_exact, QMat};
use freecurve::milnor::{full_profile, CurveInput, Engine, ProfileOptions};
use freecurve::parser::parse_expression;
use freecurve::tripoly::{monomial_basis, Monomial, TriPoly, Var};

const P: u64 = 1_000_000_007;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn poly() -> impl Strategy<Value = TriPoly> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), rational()), 0..6)
        .prop_map(|terms| TriPoly::from_terms(terms.into_iter().map(|((a, b, c), q)| (Monomial::new(a, b, c), q))))
}

fn nonzero_poly() -> impl Strategy<Value = TriPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn homogeneous(d: u32) -> impl Strategy<Value = TriPoly> {
    let basis = monomial_basis(d);
    let n = basis.len();
    prop::collection::vec((0..n, -3i64..=3), 2..7).prop_map(move |terms| {
        TriPoly::from_terms(terms.into_iter().map(|(i, c)| (basis[i], Rational::from(c))))
    })
}

fn modp(p: &TriPoly) -> BTreeMap<Monomial, u64> {
    p.to_modp(P).unwrap().into_iter().filter(|(_, c)| *c != 0).collect()
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Rational::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(a in rational(), b in rational()) {
        let (ra, rb) = (a.reduce_mod(P).unwrap(), b.reduce_mod(P).unwrap());
        prop_assert_eq!((&a + &b).reduce_mod(P).unwrap(), ra + rb);
        prop_assert_eq!((&a * &b).reduce_mod(P).unwrap(), ra * rb);
        prop_assert_eq!((-&a).reduce_mod(P).unwrap(), -ra);
    }

    #[test]
    fn polynomial_reduction_commutes_with_sum(f in poly(), g in poly()) {
        let mut sum = modp(&f);
        for (m, c) in modp(&g) {
            let e = sum.entry(m).or_insert(0);
            *e = (*e + c) % P;
        }
        sum.retain(|_, c| *c != 0);
        prop_assert_eq!(modp(&(&f + &g)), sum);
    }

    #[test]
    fn polynomial_ring_laws(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn leibniz_rule(f in poly(), g in poly()) {
        for v in [Var::X, Var::Y, Var::Z] {
            let lhs = (&f * &g).partial_derivative(v);
            let rhs = &f.partial_derivative(v) * &g + &f * &g.partial_derivative(v);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exact_division_inverts_multiplication(f in poly(), g in nonzero_poly()) {
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), f);
    }

    #[test]
    fn render_parse_round_trip(f in poly()) {
        prop_assert_eq!(parse_expression(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn parser_is_total(s in "[xyz0-9+*^()/ -]{0,24}") {
        let _ = parse_expression(&s);
    }

    #[test]
    fn parser_is_total_on_arbitrary_text(s in "\\PC{0,24}") {
        let _ = parse_expression(&s);
    }

    #[test]
    fn euler_identity(f in homogeneous(4)) {
        let [fx, fy, fz] = f.gradient();
        let lhs = TriPoly::x() * fx + TriPoly::y() * fy + TriPoly::z() * fz;
        prop_assert_eq!(lhs, f.scale(&Rational::from(4)));
    }

    #[test]
    fn modular_rank_matches_exact(
        rows in 1usize..9,
        cols in 1usize..9,
        entries in prop::collection::vec((0usize..9, 0usize..9, -5i64..=5), 0..40),
        dependent in any::<bool>(),
    ) {
        let mut triplets: Vec<(usize, usize, Rational)> = entries
            .into_iter()
            .filter(|(r, c, _)| *r < rows && *c < cols)
            .map(|(r, c, v)| (r, c, Rational::from(v)))
            .collect();
        if dependent && cols > 1 {
            // duplicate column 0 into the last column to force a dependency
            let copy: Vec<_> = triplets.iter().filter(|t| t.1 == 0).map(|t| (t.0, cols - 1, t.2.clone())).collect();
            triplets.retain(|t| t.1 != cols - 1);
            triplets.extend(copy);
        }
        let m = QMat::from_triplets(rows, cols, triplets);
        let cert = multi_modular_rank(&m, 2, &mut PrimeSampler::new(11));
        prop_assert_eq!(cert.rank, rank_exact(&m));
        prop_assert!(cert.primes_used.iter().all(|&p| is_prime(p)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engines_agree_on_hilbert_function(f in prop_oneof![homogeneous(3), homogeneous(4), homogeneous(5)]) {
        let Ok(c) = CurveInput::new(f) else { return Ok(()) };
        let run = |engine| full_profile(&c, &ProfileOptions { engine, ..Default::default() });
        if let (Ok(a), Ok(b)) = (run(Engine::Matrix), run(Engine::Groebner)) {
            let n = a.m.len().min(b.m.len());
            prop_assert_eq!(&a.m[..n], &b.m[..n]);
        }
    }
}
