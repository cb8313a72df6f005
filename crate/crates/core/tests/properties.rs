#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;

use vfrep_core::catalog::{affine_a, finite_a};
use vfrep_core::oracle::b_matrix_identity;
use vfrep_core::representation::{build_deltas, build_representation};
use vfrep_core::scalar::{int, ratio, Scalar};
use vfrep_core::vectorfield::{ad_pow_closed_form, bracket_closed_form};
use vfrep_core::{
    build_cartan_data, normalized_solution_matrices, verify_relations, Derivation, Gcm,
    LaurentPoly, Monomial,
};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=5, 1i64..=4, any::<bool>()).prop_map(|(p, q, neg)| ratio(if neg { -p } else { p }, q))
}

fn exps(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, rank)
}

fn poly(rank: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((exps(rank), scalar()), 0..5).prop_map(move |terms| {
        LaurentPoly::from_terms(rank, terms.into_iter().map(|(e, c)| (Monomial(e), c)))
    })
}

fn unit(rank: usize) -> impl Strategy<Value = LaurentPoly> {
    (exps(rank), nonzero_scalar()).prop_map(|(e, c)| LaurentPoly::term(Monomial(e), c))
}

fn field(rank: usize) -> impl Strategy<Value = Derivation> {
    prop::collection::vec(poly(rank), rank)
        .prop_map(|coords| Derivation::from_coords(coords).unwrap())
}

fn h(rank: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(scalar(), rank)
}

fn nonzero_n(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop::sample::select(vec![-2i64, -1, 1, 2]), rank)
}

fn diag(rank: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(nonzero_scalar(), rank)
}

fn br(x: &Derivation, y: &Derivation) -> Derivation {
    x.bracket(y).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(2), b in poly(2), c in poly(2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(2), a.clone());
    }

    #[test]
    fn unit_power_laws(u in unit(3), m in -4i64..=4, k in -4i64..=4) {
        prop_assert!(u.is_unit());
        let inv = u.invert().unwrap();
        prop_assert_eq!(&u * &inv, LaurentPoly::one(3));
        prop_assert_eq!(
            &u.power(m).unwrap() * &u.power(k).unwrap(),
            u.power(m + k).unwrap()
        );
    }

    #[test]
    fn non_units_have_no_inverse(a in poly(2)) {
        prop_assume!(a.num_terms() >= 2);
        prop_assert!(a.invert().is_err());
    }

    #[test]
    fn parse_display_round_trip(a in poly(3)) {
        prop_assert_eq!(LaurentPoly::parse(&a.to_string(), 3).unwrap(), a);
    }

    #[test]
    fn leibniz(d in field(2), f in poly(2), g in poly(2)) {
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&d.apply(&f).unwrap() * &g) + &(&f * &d.apply(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_commutator(d in field(2), e in field(2), f in poly(2)) {
        let lhs = br(&d, &e).apply(&f).unwrap();
        let rhs = &d.apply(&e.apply(&f).unwrap()).unwrap() - &e.apply(&d.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antisymmetry(d in field(3), e in field(3)) {
        prop_assert_eq!(br(&d, &e), -&br(&e, &d));
    }

    #[test]
    fn jacobi(x in field(2), y in field(2), z in field(2)) {
        let sum = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn monomial_bracket_closed_form(
        (a, ha, b, hb) in (1usize..=3).prop_flat_map(|r| (exps(r), h(r), exps(r), h(r)))
    ) {
        let x = Derivation::monomial_field(&a, &ha);
        let y = Derivation::monomial_field(&b, &hb);
        prop_assert_eq!(br(&x, &y), bracket_closed_form(&a, &ha, &b, &hb));
    }

    #[test]
    fn monomial_ad_closed_form(
        (a, ha, b, hb) in (1usize..=3).prop_flat_map(|r| (exps(r), h(r), exps(r), h(r))),
        k in 1usize..=4,
    ) {
        let x = Derivation::monomial_field(&a, &ha);
        let y = Derivation::monomial_field(&b, &hb);
        let mut iterated = y.clone();
        for _ in 0..k {
            iterated = br(&x, &iterated);
        }
        prop_assert_eq!(iterated, ad_pow_closed_form(&a, &ha, k, &b, &hb));
    }

    #[test]
    fn classification_is_permutation_invariant(
        (r, affine, perm) in (2usize..=6, any::<bool>())
            .prop_flat_map(|(r, aff)| (Just(r), Just(aff), Just((0..r).collect::<Vec<_>>()).prop_shuffle()))
    ) {
        let m = if affine { affine_a(r - 1) } else { finite_a(r) };
        let g = Gcm::new(m).unwrap();
        let p = g.permuted(&perm);
        prop_assert_eq!(g.classify().unwrap().kind, p.classify().unwrap().kind);
        prop_assert_eq!(g.corank(), p.corank());
        prop_assert_eq!(
            normalized_solution_matrices(&g).unwrap().len(),
            normalized_solution_matrices(&p).unwrap().len()
        );
    }

    #[test]
    fn relations_hold_for_scaled_families(
        (k, affine, sm, d, n) in (1usize..=3, any::<bool>(), 0usize..2)
            .prop_flat_map(|(k, aff, sm)| {
                let r = if aff { k + 1 } else { k };
                (Just(k), Just(aff), Just(sm), diag(r), nonzero_n(r))
            })
    ) {
        let g = Gcm::new(if affine { affine_a(k) } else { finite_a(k) }).unwrap();
        let cd = build_cartan_data(&g).unwrap();
        let sms = normalized_solution_matrices(&g).unwrap();
        let s = sms[sm % sms.len()].scale(&d).unwrap();
        let rep = build_representation(&cd, &s, &n).unwrap();
        let report = verify_relations(&rep);
        prop_assert!(report.all_passed());
        prop_assert!(b_matrix_identity(&cd, &s).is_ok());
    }

    #[test]
    fn weights_survive_rescaling(d in diag(3), n in nonzero_n(3)) {
        let g = Gcm::new(finite_a(3)).unwrap();
        let cd = build_cartan_data(&g).unwrap();
        let s = normalized_solution_matrices(&g).unwrap()[0].scale(&d).unwrap();
        let rep = build_representation(&cd, &s, &n).unwrap();
        for a in 0..3 {
            for i in 0..3 {
                let zi = LaurentPoly::term(Monomial::var(3, i, n[i]), int(1));
                prop_assert_eq!(
                    rep.h(a).apply(&zi).unwrap(),
                    zi.scale(&int(g.get(a, i)))
                );
            }
        }
    }

    #[test]
    fn scaling_covariance(d in diag(3), n in nonzero_n(3)) {
        let g = Gcm::new(affine_a(2)).unwrap();
        let cd = build_cartan_data(&g).unwrap();
        let base = normalized_solution_matrices(&g).unwrap().remove(1);
        let plain = build_representation(&cd, &base, &n).unwrap();
        let scaled = build_representation(&cd, &base.scale(&d).unwrap(), &n).unwrap();
        prop_assert_eq!(plain.h_images(), scaled.h_images());
        for i in 0..3 {
            prop_assert_eq!(scaled.x(i), &plain.x(i).scale(&d[i]));
            prop_assert_eq!(scaled.x_minus(i), &plain.x_minus(i).scale(&d[i].recip()));
        }
    }

    #[test]
    fn transpose_involution_swaps_deltas(d in diag(4), sm in 0usize..2) {
        let g = Gcm::new(finite_a(4)).unwrap();
        let s = normalized_solution_matrices(&g).unwrap()[sm].scale(&d).unwrap();
        let t = s.transpose_involution();
        prop_assert_eq!(t.transpose_involution(), s.clone());
        let (p, m) = build_deltas(&s);
        let (tp, tm) = build_deltas(&t);
        for i in 0..4 {
            prop_assert_eq!(&tp[i], &-&m[i]);
            prop_assert_eq!(&tm[i], &-&p[i]);
        }
    }
}
