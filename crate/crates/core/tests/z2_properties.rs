use std::sync::Arc;

use kyfan_core::z2::{
    invert_total_class, reduce_t_power, w_conner, w_table_recurrence, GradedRing, RingElement, TPowerExpression,
    TotalClass,
};
use proptest::prelude::*;

/// `1 + Σ bits[d-1] a^d` in `Z2[a]/(a^{m+1})`, rank `bits.len()`.
fn class_over_point_ring(m: u32, bits: &[bool]) -> TotalClass {
    let ring = GradedRing::truncated("a", 1, m + 1).unwrap();
    let mut total = RingElement::one(&ring);
    for (d, b) in bits.iter().enumerate() {
        if *b {
            total = &total + &RingElement::generator_power(&ring, "a", d as u32 + 1).unwrap();
        }
    }
    TotalClass::from_total(&total, bits.len() as u32).unwrap()
}

fn class_strategy() -> impl Strategy<Value = (u32, Vec<bool>)> {
    (1u32..=10).prop_flat_map(|m| (Just(m), prop::collection::vec(any::<bool>(), 1..=m as usize)))
}

proptest! {
    #[test]
    fn recurrence_matches_convolution((m, bits) in class_strategy()) {
        let w = class_over_point_ring(m, &bits);
        let n = w.rank() - 1;
        let table = w_table_recurrence(&w, n, m);
        for i in 1..=n + 1 {
            for j in 0..=m.saturating_sub(i) {
                prop_assert_eq!(table.get(i, j), w_conner(&w, i, j), "W_{{{},{}}}", i, j);
            }
        }
    }

    #[test]
    fn dual_is_inverse((m, bits) in class_strategy()) {
        let w = class_over_point_ring(m, &bits);
        let dual = invert_total_class(&w);
        prop_assert!((&w.total() * &dual.total()).is_one());
    }

    #[test]
    fn reduction_matches_repeated_multiplication((m, bits) in class_strategy()) {
        let w = class_over_point_ring(m, &bits);
        let n = w.rank() - 1;
        let mut power = TPowerExpression::basis(&w, n, 0);
        for e in 0..=n + m + 2 {
            prop_assert_eq!(&reduce_t_power(&w, n, e), &power, "t^{}", e);
            power = power.times_t(&w);
        }
    }

    #[test]
    fn two_generator_rings(b1 in any::<bool>(), b2 in any::<bool>(), b11 in any::<bool>()) {
        let ring: Arc<GradedRing> = GradedRing::parse("u:1:4,v:2:3").unwrap();
        let mut text = String::from("1");
        if b1 { text.push_str(" + u"); }
        if b2 { text.push_str(" + v"); }
        if b11 { text.push_str(" + u^2"); }
        let w = TotalClass::from_total(&RingElement::parse(&ring, &text).unwrap(), 2).unwrap();
        prop_assert!((&w.total() * &invert_total_class(&w).total()).is_one());
        let table = w_table_recurrence(&w, 1, 6);
        for i in 1..=2 {
            for j in 0..=6 {
                prop_assert_eq!(table.get(i, j), w_conner(&w, i, j));
            }
        }
    }
}

#[test]
fn t_powers_vanish_above_total_dimension() {
    for m in 1..=8 {
        let bits: Vec<bool> = (0..m).map(|d| d % 3 == 0).collect();
        let w = class_over_point_ring(m as u32, &bits);
        let n = w.rank() - 1;
        assert!(reduce_t_power(&w, n, n + m as u32 + 1).is_zero());
    }
}
