//! Randomized checks against independent series evaluations.

use num_bigint::BigInt;
use partition_theta::jacobi::{
    four2_terms, four_instance, jkb_instance, kalvade_instance, verify_zero_combination,
    FourParams, JkbParams,
};
use partition_theta::partitions::{count_with_parts, parts_of};
use partition_theta::theta::{ramanujan_f_sum, FMono};
use partition_theta::Series;
use proptest::prelude::*;

fn small_series(order: i64) -> impl Strategy<Value = Series> {
    (-3i64..3, prop::collection::vec(-20i64..20, 1..12))
        .prop_map(move |(offset, c)| Series::from_i64(offset, &c, order))
}

fn admissible_four() -> impl Strategy<Value = FourParams> {
    (5i64..=14)
        .prop_flat_map(|n| (prop::collection::vec(1..=2 * n, 5), Just(n)))
        .prop_filter_map("degenerate or non-primitive", |(v, n)| {
            let p = FourParams::from_slice(&v, n).ok()?;
            four2_terms(&p).ok()?;
            Some(p)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_commutes_and_associates(a in small_series(25), b in small_series(25), c in small_series(25)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn invert_round_trips(mut c in prop::collection::vec(-9i64..9, 1..10), offset in -4i64..4) {
        c[0] = if c[0] >= 0 { 1 } else { -1 };
        let s = Series::from_i64(offset, &c, 30);
        let inv = s.invert().unwrap();
        let prod = s.mul(&inv);
        prop_assert_eq!(prod.first_difference(&Series::one(prod.order())), None);
    }

    #[test]
    fn four_and_four2_hold(p in admissible_four()) {
        let inst = four_instance(&p).unwrap();
        prop_assert!(verify_zero_combination(&inst.zero_combination(), 150).unwrap().pass);
        let (t1, t2) = four2_terms(&p).unwrap();
        let sum = &t1.series(150).unwrap() + &t2.series(150).unwrap();
        prop_assert_eq!(sum.first_difference(&Series::one(150)), None);
    }

    #[test]
    fn jkb_holds(n in 3i64..=14, e in prop::collection::vec(-20i64..30, 4)) {
        let p = JkbParams { z: e[0], t: e[1], x: e[2], y: e[3], n };
        if let Ok(inst) = jkb_instance(&p) {
            let terms = [inst.l1.clone(), inst.l2.neg(), inst.r.neg()];
            prop_assert!(verify_zero_combination(&terms, 150).unwrap().pass);
        }
    }

    #[test]
    fn kalvade_holds(ex in 1i64..30, ey in 1i64..30, n in 2i64..20) {
        if let Ok(id) = kalvade_instance(ex, ey, n) {
            prop_assert!(id.verify(200).unwrap().pass);
        }
    }

    #[test]
    fn dp_matches_series(set in prop::collection::btree_set(1i64..=20, 1..8), m in 40i64..=41) {
        let s: Vec<i64> = set.into_iter().collect();
        let series = Series::residue_product(&s, m, 120).unwrap();
        let dp = count_with_parts(&parts_of(&s, m, 120).unwrap(), 120);
        prop_assert_eq!(series.coeff_range(0, 120).unwrap(), dp);
    }
}

/// `f(a, b) = f(a³b, ab³) + a f(b/a, a⁵b³)`, splitting the sum by the parity
/// of the index.
#[test]
fn two_dissection() {
    let order = 300;
    for ea in 1..=6 {
        for eb in 1..=6 {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let a = FMono::new(sa, ea);
                let b = FMono::new(sb, eb);
                let lhs = ramanujan_f_sum(a, b, order).unwrap();
                let even = ramanujan_f_sum(
                    FMono::new(sa * sa * sa * sb, 3 * ea + eb),
                    FMono::new(sa * sb * sb * sb, ea + 3 * eb),
                    order,
                )
                .unwrap();
                let odd = ramanujan_f_sum(
                    FMono::new(sa * sb, eb - ea),
                    FMono::new(sa * sb, 5 * ea + 3 * eb),
                    order,
                )
                .unwrap()
                .shift_scale(sa, ea);
                assert_eq!(
                    lhs.first_difference(&(&even + &odd)),
                    None,
                    "a={a:?} b={b:?}"
                );
            }
        }
    }
}

/// `f(±q, ∓q²) = f(-q⁵, -q⁷) ± q f(-q, -q¹¹)`.
#[test]
fn two_dissection_instances() {
    let f = |a: FMono, b: FMono| ramanujan_f_sum(a, b, 300).unwrap();
    let common = f(FMono::neg_q(5), FMono::neg_q(7));
    let odd = f(FMono::neg_q(1), FMono::neg_q(11));
    for s in [1, -1] {
        let lhs = f(FMono::new(s, 1), FMono::new(-s, 2));
        let rhs = &common + &odd.shift_scale(s, 1);
        assert_eq!(lhs.first_difference(&rhs), None);
    }
}

#[test]
fn partition_numbers_frozen() {
    // p(n) for n = 100, 200 (independently tabulated values).
    let p = Series::pochhammer(1, 1, 1, 200).unwrap().invert().unwrap();
    assert_eq!(p.coeff(100).unwrap(), BigInt::from(190_569_292u64));
    assert_eq!(
        p.coeff(200).unwrap(),
        "3972999029388".parse::<BigInt>().unwrap()
    );
}
