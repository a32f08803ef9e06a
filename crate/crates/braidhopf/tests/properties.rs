//! Randomized invariants: the differential lands in cocycles, gauge
//! actions preserve the cocycle identity, the purity decision matches a
//! direct constraint evaluation, products stay associative on random
//! elements, and substitution is a ring homomorphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use braidhopf::algebra::Element;
use braidhopf::cocycle::{act_unit, is_hopf_cocycle, Functional1, Functional2};
use braidhopf::hochschild::{
    big, d1, hochschild_residuals, purity_decide, PurityVerdict, PURITY_CONSTRAINTS,
};
use braidhopf::instances::{a2_golden_cocycle, cartan_a2, rank1};
use braidhopf::scalar::{ParamSet, Scalar, Sign, SignConfig};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=9)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn sign_config() -> impl Strategy<Value = SignConfig> {
    prop_oneof![
        Just(SignConfig::new(Sign::Minus)),
        Just(SignConfig::new(Sign::Plus)),
    ]
}

/// A random polynomial over the three deformation parameters.
fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((prop::collection::vec(0u16..=2, 3), rational()), 0..=4).prop_map(
        |monos| {
            let params = a2_params();
            let mut acc = Scalar::zero(&params);
            for (exps, c) in monos {
                acc += &Scalar::monomial(&params, exps, c);
            }
            acc
        },
    )
}

fn a2_params() -> Arc<ParamSet> {
    ParamSet::new(&["l1", "l2", "l12"])
}

fn element(params: &Arc<ParamSet>, coeffs: &[BigRational]) -> Element {
    let mut out = Element::zero();
    for (i, c) in coeffs.iter().enumerate() {
        out.add_term(i, Scalar::constant(params, c.clone()));
    }
    out
}

fn substitute_table(f: &Functional2, bind: &BTreeMap<usize, BigRational>) -> Functional2 {
    Functional2 {
        vals: f
            .vals
            .iter()
            .map(|row| row.iter().map(|s| s.substitute(bind)).collect())
            .collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differential_image_is_a_cocycle(
        cfg in sign_config(),
        vals in prop::collection::vec(rational(), 8),
    ) {
        let params = a2_params();
        let b = cartan_a2(&params, cfg).unwrap();
        let f: Vec<Scalar> = vals
            .iter()
            .map(|v| Scalar::constant(&params, v.clone()))
            .collect();
        let eta = d1(&b, &f);
        prop_assert!(hochschild_residuals(&b, &eta).iter().all(|r| r.is_zero()));
    }

    #[test]
    fn differential_image_is_a_cocycle_at_rank_one(
        vals in prop::collection::vec(rational(), 2),
    ) {
        let params = ParamSet::new(&["l"]);
        let b = rank1(&params).unwrap();
        let f: Vec<Scalar> = vals
            .iter()
            .map(|v| Scalar::constant(&params, v.clone()))
            .collect();
        let eta = d1(&b, &f);
        prop_assert!(hochschild_residuals(&b, &eta).iter().all(|r| r.is_zero()));
    }

    #[test]
    fn gauge_action_preserves_the_cocycle_identity(
        cfg in sign_config(),
        lambda in prop::collection::vec(rational(), 3),
        dev in prop::collection::vec(rational(), 8),
    ) {
        let params = a2_params();
        let b = cartan_a2(&params, cfg).unwrap();
        let mut bind = BTreeMap::new();
        for (k, v) in lambda.iter().enumerate() {
            bind.insert(k, v.clone());
        }
        let sigma = substitute_table(&a2_golden_cocycle(&params, cfg), &bind);
        prop_assert!(is_hopf_cocycle(&b, &sigma).is_ok());
        // Gauge functionals live on the transparent part of the grading:
        // slots whose braiding against every degree is trivial both ways.
        let transparent = |i: usize| {
            b.degrees.iter().all(|d| {
                b.chi(&b.degrees[i], d) == Sign::Plus && b.chi(d, &b.degrees[i]) == Sign::Plus
            })
        };
        let mut alpha = Functional1::eps(&b);
        for (i, v) in dev.iter().enumerate() {
            if i != b.unit() && transparent(i) {
                alpha.vals[i] = Scalar::constant(&params, v.clone());
            }
        }
        let acted = act_unit(&b, &alpha, &sigma).unwrap();
        prop_assert!(is_hopf_cocycle(&b, &acted).is_ok());
    }

    #[test]
    fn purity_matches_the_direct_constraint_evaluation(
        cfg in sign_config(),
        l in prop::collection::vec(-2i64..=2, 3),
    ) {
        let lambda: Vec<BigRational> = l.iter().map(|&v| big(v)).collect();
        let verdict = purity_decide(&lambda, cfg).unwrap();
        let combo = &lambda[2] + big(2) * cfg.q12() * &lambda[0] * &lambda[1];
        let violated = if !(&lambda[0] * &lambda[1]).is_zero() {
            Some(PURITY_CONSTRAINTS[0])
        } else if !(&lambda[0] * &combo).is_zero() {
            Some(PURITY_CONSTRAINTS[1])
        } else if !(&lambda[1] * &combo).is_zero() {
            Some(PURITY_CONSTRAINTS[2])
        } else {
            None
        };
        match (violated, verdict) {
            (Some(want), PurityVerdict::Pure { violated }) => prop_assert_eq!(want, violated),
            (None, PurityVerdict::Trivial) => {
                prop_assert!(lambda.iter().all(|v| v.is_zero()))
            }
            (None, PurityVerdict::Exponential { .. }) => {
                prop_assert!(lambda.iter().any(|v| !v.is_zero()))
            }
            (want, got) => prop_assert!(false, "verdict mismatch: want {want:?}, got {got:?}"),
        }
    }

    #[test]
    fn random_elements_multiply_associatively(
        cfg in sign_config(),
        xs in prop::collection::vec(rational(), 8),
        ys in prop::collection::vec(rational(), 8),
        zs in prop::collection::vec(rational(), 8),
    ) {
        let params = a2_params();
        let b = cartan_a2(&params, cfg).unwrap();
        let x = element(&params, &xs);
        let y = element(&params, &ys);
        let z = element(&params, &zs);
        let xy = b.alg.multiply(&x, &y);
        let yz = b.alg.multiply(&y, &z);
        prop_assert_eq!(b.alg.multiply(&xy, &z), b.alg.multiply(&x, &yz));
        let u = b.alg.unit_element();
        prop_assert_eq!(b.alg.multiply(&u, &x), x.clone());
        prop_assert_eq!(b.alg.multiply(&x, &u), x);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        p in poly(),
        q in poly(),
        binds in prop::collection::vec(rational(), 3),
    ) {
        let mut bind = BTreeMap::new();
        for (k, v) in binds.iter().enumerate() {
            bind.insert(k, v.clone());
        }
        let sum = (&p + &q).substitute(&bind);
        prop_assert_eq!(sum, &p.substitute(&bind) + &q.substitute(&bind));
        let prod = (&p * &q).substitute(&bind);
        prop_assert_eq!(prod, &p.substitute(&bind) * &q.substitute(&bind));
    }
}
