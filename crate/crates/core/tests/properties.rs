use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::Rational64;
use proptest::prelude::*;

use verlinde::characters::{
    character_value, tensor_decompose, weight_system, weyl_denominator, weyl_dimension, Caps, TorusPoint,
};
use verlinde::fusion::{project_to_fusion, FusionContext};
use verlinde::lie::{level_k_weights, t_lambda, torus_order};
use verlinde::quantize::{fixed_point_contribution, IsolatedFixedPoint};
use verlinde::weyl::dominant_reduce;
use verlinde::{Error, Group, Weight};

const LABELS: [&str; 6] = ["A1", "A2", "B2", "G2", "A3", "C3"];

fn groups() -> &'static Vec<Group> {
    static GROUPS: OnceLock<Vec<Group>> = OnceLock::new();
    GROUPS.get_or_init(|| LABELS.iter().map(|l| Group::from_label(l).unwrap()).collect())
}

fn arb_group() -> impl Strategy<Value = &'static Group> {
    (0..LABELS.len()).prop_map(|i| &groups()[i])
}

fn arb_weight(rank: usize, lo: i64, hi: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(lo..=hi, rank).prop_map(Weight)
}

fn arb_point(rank: usize) -> impl Strategy<Value = TorusPoint> {
    (1i64..60).prop_flat_map(move |n| {
        prop::collection::vec(0..n, rank).prop_map(move |p| TorusPoint::new(p, n))
    })
}

/// Group, regular point, and a dominant weight.
fn arb_regular_case() -> impl Strategy<Value = (&'static Group, TorusPoint, Weight)> {
    arb_group()
        .prop_flat_map(|g| (Just(g), arb_point(g.rank()), arb_weight(g.rank(), 0, 3)))
        .prop_filter("regular point", |(g, t, _)| weyl_denominator(&g.datum, &g.weyl, t).norm() > 1e-6)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_denominator_is_anti_invariant(
        (g, t, w) in arb_group().prop_flat_map(|g| (Just(g), arb_point(g.rank()), 0..g.weyl.order()))
    ) {
        let w = &g.weyl.elements[w];
        let j = weyl_denominator(&g.datum, &g.weyl, &t);
        let moved = weyl_denominator(&g.datum, &g.weyl, &t.act_inverse(w));
        prop_assert!(close(moved, j * w.sign() as f64, 1e-9));
    }

    #[test]
    fn characters_bounded_by_dimension((g, t, mu) in arb_regular_case()) {
        let chi = character_value(&g.datum, &g.weyl, &mu, &t).unwrap();
        prop_assert!(chi.norm() <= weyl_dimension(&g.datum, &mu) as f64 + 1e-6);
    }

    #[test]
    fn weyl_formula_matches_weight_multiplicities((g, t, mu) in arb_regular_case()) {
        let chi = character_value(&g.datum, &g.weyl, &mu, &t).unwrap();
        let by_weights: Complex64 = weight_system(&g.datum, &mu, &Caps::default())
            .unwrap()
            .iter()
            .map(|(nu, &m)| t.value(nu) * m as f64)
            .sum();
        prop_assert!(close(chi, by_weights, 1e-7), "{chi} vs {by_weights}");
    }

    #[test]
    fn dual_character_is_conjugate((g, t, mu) in arb_regular_case()) {
        let dual = -&g.weyl.longest().apply(&mu);
        let a = character_value(&g.datum, &g.weyl, &mu, &t).unwrap();
        let b = character_value(&g.datum, &g.weyl, &dual, &t).unwrap();
        prop_assert!(close(b, a.conj(), 1e-9));
    }

    #[test]
    fn phases_are_additive(
        (g, t, a, b) in arb_group().prop_flat_map(|g| {
            (Just(g), arb_point(g.rank()), arb_weight(g.rank(), -9, 9), arb_weight(g.rank(), -9, 9))
        })
    ) {
        let _ = g;
        let lhs = t.phase(&(&a + &b));
        let rhs = t.phase(&a) + t.phase(&b);
        let diff = rhs - lhs;
        prop_assert!(diff.is_integer());
        prop_assert!(lhs >= Rational64::from_integer(0) && lhs < Rational64::from_integer(1));
    }

    #[test]
    fn torus_order_scales_with_rank_power((g, l) in (arb_group(), 1u64..12)) {
        let r = g.rank() as u32;
        prop_assert_eq!(torus_order(&g.datum, l), l.pow(r) * torus_order(&g.datum, 1));
    }

    #[test]
    fn dominant_reduction_is_weyl_invariant(
        (g, nu, w) in arb_group().prop_flat_map(|g| (Just(g), arb_weight(g.rank(), -6, 6), 0..g.weyl.order()))
    ) {
        let w = &g.weyl.elements[w];
        let a = dominant_reduce(&g.datum, &nu);
        let b = dominant_reduce(&g.datum, &w.apply(&nu));
        prop_assert!(a.weight.is_dominant());
        prop_assert_eq!(&a.weight, &b.weight);
        prop_assert_eq!(a.singular, b.singular);
        if !a.singular {
            prop_assert_eq!(a.sign, b.sign * w.sign());
        }
    }

    #[test]
    fn tensor_products_preserve_dimension(
        (g, mu, nu) in arb_group().prop_flat_map(|g| (Just(g), arb_weight(g.rank(), 0, 2), arb_weight(g.rank(), 0, 2)))
    ) {
        let product = tensor_decompose(&g.datum, &mu, &nu, &Caps::default()).unwrap();
        let lhs = weyl_dimension(&g.datum, &mu) as i128 * weyl_dimension(&g.datum, &nu) as i128;
        prop_assert_eq!(product.dimension(&g.datum), lhs);
        prop_assert!(product.terms().values().all(|&c| c > 0));
    }

    #[test]
    fn fixed_point_contributions_are_weyl_covariant(
        (g, t, w, betas, shift) in arb_group().prop_flat_map(|g| {
            let r = g.rank();
            (
                Just(g),
                arb_point(r),
                0..g.weyl.order(),
                prop::collection::vec(arb_weight(r, -3, 3), 1..4),
                arb_weight(r, -4, 4),
            )
        })
    ) {
        let w = &g.weyl.elements[w];
        let fp = IsolatedFixedPoint {
            normal_weights: betas,
            shift_weight: shift.labels().iter().map(|&x| Rational64::from_integer(x)).collect(),
            sign: -1,
            orientation_note: String::new(),
        };
        let lhs = fixed_point_contribution(&fp, &t.act_inverse(w));
        let rhs = fixed_point_contribution(&fp.translated(w), &t);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => prop_assert!(close(a, b, 1e-9)),
            (Err(Error::DegenerateWeight { .. }), Err(Error::DegenerateWeight { .. })) => {}
            (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
        }
    }
}

fn small_contexts() -> Vec<(&'static Group, u32)> {
    let g = groups();
    vec![(&g[0], 3), (&g[0], 6), (&g[1], 2), (&g[2], 2), (&g[3], 1), (&g[4], 1)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(case in 0..6usize, a in 0..64usize, b in 0..64usize) {
        let (g, k) = small_contexts()[case];
        let ctx = FusionContext::new(g, k).unwrap();
        let table = ctx.fusion_table().unwrap();
        let n = ctx.len();
        let x = ctx.basis(&ctx.weights()[a % n]).unwrap();
        let y = ctx.basis(&ctx.weights()[b % n]).unwrap();
        let xy = table.multiply(&x, &y);
        for l in 0..n {
            let lhs = ctx.evaluate(&xy, l).unwrap();
            let rhs = ctx.evaluate(&x, l).unwrap() * ctx.evaluate(&y, l).unwrap();
            prop_assert!(close(lhs, rhs, 1e-9));
        }
    }

    #[test]
    fn projection_preserves_values_at_special_points(case in 0..6usize, mu in prop::collection::vec(0i64..7, 3)) {
        let (g, k) = small_contexts()[case];
        let mu = Weight(mu[..g.rank()].to_vec());
        let image = project_to_fusion(&g.datum, &verlinde::characters::VirtualCharacter::irreducible(mu.clone()), k);
        for lam in level_k_weights(&g.datum, k) {
            let t = t_lambda(&g.datum, &lam, k).unwrap();
            let direct = character_value(&g.datum, &g.weyl, &mu, &t).unwrap();
            let projected: Complex64 = image
                .terms()
                .iter()
                .map(|(nu, &c)| character_value(&g.datum, &g.weyl, nu, &t).unwrap() * c as f64)
                .sum();
            prop_assert!(close(direct, projected, 1e-9), "({mu}) at ({lam}): {direct} vs {projected}");
        }
    }

    #[test]
    fn star_conjugates_values(case in 0..6usize, a in 0..64usize) {
        let (g, k) = small_contexts()[case];
        let ctx = FusionContext::new(g, k).unwrap();
        let x = ctx.basis(&ctx.weights()[a % ctx.len()]).unwrap();
        let xs = ctx.star(&x).unwrap();
        for l in 0..ctx.len() {
            prop_assert!(close(ctx.evaluate(&xs, l).unwrap(), ctx.evaluate(&x, l).unwrap().conj(), 1e-9));
        }
    }
}
