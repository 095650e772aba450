use std::cmp::Ordering;

use lattice_succ::arith::{lower, upper};
use lattice_succ::cf::verify_table;
use lattice_succ::oracle::{naive_next, naive_prev};
use lattice_succ::successor::{locate, next, prev, value};
use lattice_succ::{compare_affine, compare_fraction, AffineForm, ConvergentTable, GeneratorPair, GridPoint};
use proptest::prelude::*;

const PAIRS: &[(u64, u64)] = &[(2, 3), (2, 5), (3, 5), (2, 12), (6, 10), (5, 7), (3, 10), (7, 11)];

fn any_pair() -> impl Strategy<Value = GeneratorPair> {
    prop::sample::select(PAIRS).prop_map(|(a, b)| GeneratorPair::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fraction_never_equal(pair in any_pair(), h in 0u64..5000, k in 1u64..5000) {
        prop_assert_ne!(compare_fraction(&pair, h, k).unwrap(), Ordering::Equal);
    }

    #[test]
    fn affine_consistent_with_fraction(pair in any_pair(), h in 0i64..3000, k in 1i64..3000) {
        // kα − h > 0  ⇔  h/k < α
        let sign = compare_affine(&pair, AffineForm::new(k, h), AffineForm::ZERO).unwrap();
        let frac = compare_fraction(&pair, h as u64, k as u64).unwrap();
        prop_assert_eq!(sign, frac.reverse());
    }

    #[test]
    fn affine_is_antisymmetric_and_exact(
        pair in any_pair(),
        k1 in -2000i64..2000, n1 in -2000i64..2000,
        k2 in -2000i64..2000, n2 in -2000i64..2000,
    ) {
        let (u, v) = (AffineForm::new(k1, n1), AffineForm::new(k2, n2));
        let uv = compare_affine(&pair, u, v).unwrap();
        prop_assert_eq!(uv, compare_affine(&pair, v, u).unwrap().reverse());
        prop_assert_eq!(uv == Ordering::Equal, u == v);
    }

    #[test]
    fn upper_lower_bracket(pair in any_pair(), n in 1u64..20_000) {
        let f = upper(&pair, n).unwrap();
        let g = lower(&pair, n).unwrap();
        prop_assert_eq!(f - g, 1);
        let (n, f, g) = (n as i64, f as i64, g as i64);
        prop_assert_eq!(compare_affine(&pair, AffineForm::new(g, n), AffineForm::ZERO).unwrap(), Ordering::Less);
        prop_assert_eq!(compare_affine(&pair, AffineForm::new(f, n), AffineForm::ZERO).unwrap(), Ordering::Greater);
        prop_assert!(upper(&pair, n as u64 + 1).unwrap() as i64 > f);
    }

    #[test]
    fn next_is_strictly_larger_and_invertible(pair in any_pair(), i in 0u64..400, j in 0u64..400) {
        let table = ConvergentTable::new(pair);
        let p = GridPoint::new(i, j);
        let n = next(&table, p).unwrap();
        prop_assert_ne!(n, GridPoint::ORIGIN);
        prop_assert_eq!(pair.compare_products((n.i, n.j), (i, j)).unwrap(), Ordering::Greater);
        prop_assert_eq!(prev(&table, n).unwrap(), p);
        if p != GridPoint::ORIGIN {
            prop_assert_eq!(next(&table, prev(&table, p).unwrap()).unwrap(), p);
        }
        let id = locate(&table, p).unwrap();
        prop_assert_eq!(id.point(&table.snapshot()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn next_and_prev_match_enumeration(pair in any_pair(), i in 0u64..14, j in 0u64..10) {
        let table = ConvergentTable::new(pair);
        let p = GridPoint::new(i, j);
        prop_assert_eq!(next(&table, p).unwrap(), naive_next(&pair, p).unwrap());
        let expected_prev = naive_prev(&pair, p).unwrap();
        prop_assert_eq!(prev(&table, p).ok(), expected_prev);
    }

    #[test]
    fn table_invariants_at_any_depth(pair in any_pair(), depth in 0usize..9) {
        let table = ConvergentTable::new(pair);
        let c = table.extend_to(depth).unwrap();
        let report = verify_table(&c).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }
}

#[test]
fn value_matches_power_products() {
    let pair = GeneratorPair::new(6, 10).unwrap();
    let v = value(&pair, GridPoint::new(3, 4)).unwrap();
    assert_eq!(v, num_bigint::BigUint::from(216u32 * 10_000));
}

#[test]
fn concurrent_queries_share_one_table() {
    let pair = GeneratorPair::new(2, 3).unwrap();
    let table = ConvergentTable::new(pair);
    std::thread::scope(|s| {
        for start in 0..4u64 {
            let table = &table;
            s.spawn(move || {
                let mut p = GridPoint::new(start * 50, start * 30);
                for _ in 0..500 {
                    let n = next(table, p).unwrap();
                    assert_eq!(prev(table, n).unwrap(), p);
                    p = n;
                }
            });
        }
    });
    assert!(verify_table(&table.snapshot()).unwrap().passed());
}
