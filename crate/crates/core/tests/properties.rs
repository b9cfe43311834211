use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use proptest::prelude::*;
use qskein::bq::{bq_rewrite, BqContext};
use qskein::nc::{NcPoly, RewriteSystem, Word};
use qskein::oq::{oq_rewrite, OqContext};
use qskein::scalar::{Laurent, SpecPoint};
use qskein::tensor::{TensorElement, TensorPower};

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-8i32..8, -5i64..6), 0..5)
        .prop_map(|ts| Laurent::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn free_poly(max_len: usize) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((prop::collection::vec(0u8..4, 0..=max_len), laurent()), 0..4).prop_map(|ts| {
        let mut p = NcPoly::zero();
        for (w, c) in ts {
            p.add_term(Word(w), &c);
        }
        p
    })
}

fn tensor2() -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((prop::collection::vec(0u8..4, 0..=2), prop::collection::vec(0u8..4, 0..=1), laurent()), 1..3)
        .prop_map(|ts| {
            let bq = bq_rules();
            let mut t = TensorElement::zero(2);
            for (x, y, c) in ts {
                // keys must be normal words
                let ny = bq.normal_form_word(&Word(y));
                for (wx, cx) in bq.normal_form_word(&Word(x)).terms() {
                    for (wy, cy) in ny.terms() {
                        t.add_term(vec![wx.clone(), wy.clone()], &(&c * &(cx * cy)));
                    }
                }
            }
            t
        })
}

fn oq_rules() -> &'static RewriteSystem {
    static R: OnceLock<RewriteSystem> = OnceLock::new();
    R.get_or_init(oq_rewrite)
}

fn bq_rules() -> &'static RewriteSystem {
    static R: OnceLock<RewriteSystem> = OnceLock::new();
    R.get_or_init(bq_rewrite)
}

fn tensor_power() -> &'static TensorPower {
    static T: OnceLock<TensorPower> = OnceLock::new();
    T.get_or_init(|| TensorPower::new(Arc::new(BqContext::new(Arc::new(OqContext::default())))))
}

proptest! {
    #[test]
    fn specialization_is_a_ring_map(a in laurent(), b in laurent()) {
        prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        prop_assert_eq!((&a + &b).eval_at_one(), a.eval_at_one() + b.eval_at_one());
        let at5 = SpecPoint::prime_field(5).unwrap();
        let lhs = (&a * &b).specialize(at5);
        let five = BigInt::from(5);
        let rhs = ((a.eval_at_one() * b.eval_at_one()) % &five + &five) % &five;
        let rhs = u64::try_from(rhs).unwrap();
        prop_assert_eq!(lhs, qskein::scalar::SpecValue::Fp { value: rhs, p: 5 });
    }

    #[test]
    fn fractions_agree_with_laurent_arithmetic(a in laurent(), b in laurent()) {
        let (ra, rb) = (a.to_rational(), b.to_rational());
        prop_assert_eq!((&a * &b).to_rational(), &ra * &rb);
        prop_assert_eq!((&a + &b).to_rational(), &ra + &rb);
        if !b.is_zero() {
            prop_assert_eq!(&ra.div(&rb).unwrap() * &rb, ra);
        }
    }

    #[test]
    fn laurent_text_round_trip(a in laurent()) {
        prop_assert_eq!(a.to_string().parse::<Laurent>().unwrap(), a);
    }

    #[test]
    fn poly_text_round_trip(p in free_poly(4)) {
        prop_assert_eq!(NcPoly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn normal_forms_are_normal_and_idempotent(p in free_poly(5)) {
        for rs in [oq_rules(), bq_rules()] {
            let n = rs.normal_form(&p);
            prop_assert!(n.terms().all(|(w, _)| rs.is_normal(w)));
            prop_assert_eq!(rs.normal_form(&n), n);
        }
    }

    #[test]
    fn products_are_associative(x in free_poly(2), y in free_poly(2), z in free_poly(2)) {
        for rs in [oq_rules(), bq_rules()] {
            let (x, y, z) = (rs.normal_form(&x), rs.normal_form(&y), rs.normal_form(&z));
            prop_assert_eq!(rs.mul(&rs.mul(&x, &y), &z), rs.mul(&x, &rs.mul(&y, &z)));
        }
    }

    #[test]
    fn braiding_is_invertible(x in tensor2()) {
        let t = tensor_power();
        prop_assert_eq!(&t.braiding_inverse(&t.braiding(&x).unwrap()).unwrap(), &x);
        prop_assert_eq!(&t.braiding(&t.braiding_inverse(&x).unwrap()).unwrap(), &x);
    }
}
