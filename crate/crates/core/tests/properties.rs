use cg3_core::cg_engine::{cg_expansion, collect_terms, target_diagram, valid_descents, CGTerm, Readings};
use cg3_core::contiguity::{h_coeff, pi_product, relation_identity_holds, y_coeff, Reading, RelationInput};
use cg3_core::exact_core::{rat, Rational};
use cg3_core::gamma_series::{eval_at_one, expand_standard, fot1_closed_form, GammaParams};
use cg3_core::gl3_model::{dual_map, gt_vector, sopd, DetPolynomial, Factor, GTDiagram, HighestWeight};
use cg3_core::oracle::{compare, expand_in_product_basis, oracle_expansion};
use cg3_core::tensor_space::{enumerate_labels, label_weight, WeightPair};
use proptest::prelude::*;

fn weight(max: i64) -> impl Strategy<Value = HighestWeight> {
    (0..=max).prop_flat_map(|m1| (Just(m1), 0..=m1)).prop_map(|(m1, m2)| HighestWeight::new(m1, m2).unwrap())
}

fn weight_pair(max: i64) -> impl Strategy<Value = WeightPair> {
    (weight(max), weight(max)).prop_map(|(a, b)| WeightPair::new(a, b))
}

fn diagram(max: i64) -> impl Strategy<Value = GTDiagram> {
    weight(max).prop_flat_map(|w| {
        let ds = w.diagrams();
        (0..ds.len()).prop_map(move |i| ds[i])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_series_shift_invariant(g in prop::array::uniform4(-2i64..5), k in -3i64..4) {
        let g = GammaParams::from_array(g);
        prop_assert_eq!(expand_standard(&g), expand_standard(&g.shifted(k)));
    }

    #[test]
    fn evaluation_matches_closed_form(a in 0i64..6, b in 0i64..6, c in 0i64..6) {
        let g = GammaParams::planar(a, b, c);
        prop_assert_eq!(fot1_closed_form(&g), Some(eval_at_one(&g)));
    }

    #[test]
    fn pi_product_is_positive(p in 0i64..5, g in prop::array::uniform3(0i64..4)) {
        prop_assert!(pi_product(p, &GammaParams::planar(g[0], g[1], g[2])) > Rational::from_integer(0.into()));
    }

    #[test]
    fn single_step_h_readings_agree(l in 0i64..5, m in 0i64..5, w in 0i64..5) {
        prop_assert_eq!(h_coeff(l, m, w, 1, 0, 0, Reading::Adopted), (l + m + w).into());
        prop_assert_eq!(h_coeff(l, m, w, 1, 0, 0, Reading::Literal), (l + m + w).into());
    }

    #[test]
    fn empty_target_series_gives_zero(u in 0i64..4, g in prop::array::uniform3(0i64..3), p in 0i64..4) {
        let g = GammaParams::planar(g[0], g[1], g[2]);
        let (tau, y) = y_coeff(u, &g, p, Reading::Adopted);
        if tau.is_empty() {
            prop_assert_eq!(y, Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn rel1_identity(u in 0i64..4, g in prop::array::uniform3(0i64..4)) {
        let gamma = GammaParams::planar(g[0], g[1], g[2]);
        let input = RelationInput::Rel1 { u, gamma };
        prop_assert!(relation_identity_holds(&input, Reading::Adopted));
    }

    #[test]
    fn rel3_identity(n in 0i64..4, k2 in 0i64..4, mk in 0i64..3, g in prop::array::uniform3(0i64..4)) {
        let gamma = GammaParams::planar(g[0], g[1], g[2]);
        let input = RelationInput::Rel3 { n, gamma, m1_minus_k1: mk, k2 };
        prop_assert!(relation_identity_holds(&input, Reading::Adopted));
    }

    #[test]
    fn duality_is_an_involution(d in diagram(4)) {
        let g = gt_vector(&d, Factor::A).unwrap();
        prop_assert_eq!(dual_map(&dual_map(&g)), g.clone());
        let (star, eps) = sopd(&d).unwrap();
        prop_assert_eq!(dual_map(&g), gt_vector(&star, Factor::A).unwrap().scale(&rat(eps, 1)));
    }

    #[test]
    fn collect_is_idempotent_and_sorted(cs in prop::collection::vec((0usize..3, 0usize..3, -3i64..4), 0..12)) {
        let ds = HighestWeight::new(1, 0).unwrap().diagrams();
        let terms: Vec<CGTerm> = cs.iter().map(|&(i, j, c)| CGTerm { diagram_u: ds[i], diagram_v: ds[j], coeff: rat(c, 2) }).collect();
        let once = collect_terms(terms);
        prop_assert_eq!(collect_terms(once.clone()), once.clone());
        prop_assert!(once.windows(2).all(|w| (w[0].diagram_u, w[0].diagram_v) < (w[1].diagram_u, w[1].diagram_v)));
    }

    #[test]
    fn product_basis_round_trip(wp in weight_pair(2), seed in prop::collection::vec(-4i64..5, 1..40)) {
        let us = wp.w1.diagrams();
        let vs = wp.w2.diagrams();
        let mut p = DetPolynomial::zero();
        let mut expect = Vec::new();
        for (k, c) in seed.iter().enumerate() {
            let (u, v) = (us[k % us.len()], vs[(k / us.len()) % vs.len()]);
            let c = rat(*c, (k % 3) as i64 + 1);
            p += &(&gt_vector(&u, Factor::A).unwrap() * &gt_vector(&v, Factor::B).unwrap()).scale(&c);
            expect.push(CGTerm { diagram_u: u, diagram_v: v, coeff: c });
        }
        prop_assert_eq!(expand_in_product_basis(&p, &wp).unwrap().terms, collect_terms(expect));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn formula_matches_oracle(wp in weight_pair(3), li in 0usize..64, di in 0usize..64) {
        let labels = enumerate_labels(&wp);
        prop_assume!(!labels.is_empty());
        let l = labels[li % labels.len()];
        let ds = valid_descents(&l);
        let d = ds[di % ds.len()];
        let f = cg_expansion(&l, &d, Readings::ADOPTED).unwrap();
        let o = oracle_expansion(&l, &d).unwrap();
        prop_assert!(compare(&f, &o.terms).is_empty(), "{} {} {}", wp, l, d);
        prop_assert_eq!(cg_expansion(&l, &d, Readings::ADOPTED).unwrap(), f.clone());
        let target = target_diagram(&l, &d).unwrap().weight();
        for t in &f {
            let (a, b) = (t.diagram_u.weight(), t.diagram_v.weight());
            prop_assert_eq!([a[0] + b[0], a[1] + b[1], a[2] + b[2]], target);
        }
        let top = label_weight(&l);
        prop_assert_eq!(top.iter().sum::<i64>(), wp.w1.m1 + wp.w1.m2 + wp.w2.m1 + wp.w2.m2);
    }
}
