//! Property tests across generation, columns and the lattice algebra.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;
use crate::algebra::{hermite_normal_form, structurally_equivalent, SymbolTable, SymbolicVector};
use crate::columns::{classify_period_doubling, detect_eventual_period, transform_t, PeriodEffect};
use crate::{generate, generate_reference, Bound, InitialConfig, LatticePoint, SizeFunction, UlamSet};

fn config_2d() -> impl Strategy<Value = InitialConfig> {
    prop::collection::btree_set((0u64..=4, 0u64..=4), 1..=4)
        .prop_filter_map("needs a nonzero vector", |vs| {
            let rows: Vec<[u64; 2]> = vs.into_iter().filter(|&(x, y)| (x, y) != (0, 0)).map(|(x, y)| [x, y]).collect();
            InitialConfig::from_rows(&rows).ok()
        })
}

fn point_set(s: &UlamSet) -> HashSet<LatticePoint> {
    s.points().iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn size_function_does_not_matter(cfg in config_2d(), b in 8u64..=30) {
        let bound = Bound::Box(vec![b, b]);
        let sum = generate(&cfg, &bound, &SizeFunction::CoordinateSum).unwrap();
        let l2 = generate(&cfg, &bound, &SizeFunction::EuclideanSquared).unwrap();
        let w = SizeFunction::WeightedSum(vec![Ratio::new(2, 3), Ratio::new(5, 2)]);
        let weighted = generate(&cfg, &bound, &w).unwrap();
        prop_assert_eq!(point_set(&sum), point_set(&l2));
        prop_assert_eq!(point_set(&sum), point_set(&weighted));
    }

    #[test]
    fn matches_reference(cfg in config_2d(), b in 4u64..=14) {
        let bound = Bound::Box(vec![b, b]);
        let fast = generate(&cfg, &bound, &SizeFunction::CoordinateSum).unwrap();
        let slow = generate_reference(&cfg, &bound).unwrap();
        prop_assert_eq!(fast.points(), slow.points());
    }

    #[test]
    fn larger_bound_restricts_to_smaller(cfg in config_2d(), b in 6u64..=20, d in 1u64..=10) {
        let small = generate(&cfg, &Bound::Box(vec![b, b]), &SizeFunction::CoordinateSum).unwrap();
        let big = generate(&cfg, &Bound::Box(vec![b + d, b]), &SizeFunction::CoordinateSum).unwrap();
        let restricted: HashSet<_> = big.points().iter().filter(|p| p.coords()[0] <= b).cloned().collect();
        prop_assert_eq!(restricted, point_set(&small));
    }

    #[test]
    fn swapping_coordinates_commutes(cfg in config_2d(), b in 6u64..=20) {
        let swapped: Vec<LatticePoint> = cfg.initials().iter().map(|p| p.permuted(&[1, 0])).collect();
        let cfg2 = InitialConfig::new(2, swapped).unwrap();
        let a = generate(&cfg, &Bound::Box(vec![b, b]), &SizeFunction::CoordinateSum).unwrap();
        let s = generate(&cfg2, &Bound::Box(vec![b, b]), &SizeFunction::CoordinateSum).unwrap();
        let mapped: HashSet<_> = a.points().iter().map(|p| p.permuted(&[1, 0])).collect();
        prop_assert_eq!(mapped, point_set(&s));
    }

    #[test]
    fn scaling_the_config_scales_the_set(cfg in config_2d(), b in 4u64..=12, c in 2u64..=3) {
        let a = generate(&cfg, &Bound::Box(vec![b, b]), &SizeFunction::CoordinateSum).unwrap();
        let s = generate(&cfg.scaled(c).unwrap(), &Bound::Box(vec![b * c, b * c]), &SizeFunction::CoordinateSum).unwrap();
        let mapped: HashSet<_> = a.points().iter().map(|p| p.scaled(c).unwrap()).collect();
        prop_assert_eq!(mapped, point_set(&s));
    }

    #[test]
    fn transform_doubles_exactly_on_flip_patterns(pattern in prop::collection::vec(0u8..=2, 1..=10)) {
        let p = pattern.len();
        let word: Vec<u8> = pattern.iter().cycle().take(6 * p).cloned().collect();
        let t = transform_t(&word).unwrap();
        let periodic = |q: usize| (p..t.len() - q).all(|i| t[i] == t[i + q]);
        prop_assert!(periodic(2 * p));
        let doubles = classify_period_doubling(&pattern) == PeriodEffect::Doubles;
        prop_assert_eq!(doubles, !periodic(p));
    }

    #[test]
    fn detection_agrees_with_exhaustive_scan(
        pre in prop::collection::vec(0u8..=1, 0..=8),
        pattern in prop::collection::vec(0u8..=1, 1..=6),
        reps in 3usize..=6,
    ) {
        let mut w = pre.clone();
        for _ in 0..reps {
            w.extend(&pattern);
        }
        let fit = detect_eventual_period(&w, 16, 3).unwrap();
        // Exhaustive reference: least t, then least p, with p | suffix
        // consistency and at least three whole periods.
        let n = w.len();
        let mut want = None;
        'outer: for t in 0..n {
            for p in 1..=16usize {
                if (n - t) / p >= 3 && (t..n - p).all(|j| w[j] == w[j + p]) {
                    want = Some((t, p));
                    break 'outer;
                }
            }
        }
        let got = fit.fit().map(|f| (f.preperiod, f.period));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn hnf_ignores_row_order_and_unimodular_mixing(
        rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..=4),
        shift in 0usize..4,
        mult in -3i64..=3,
    ) {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut mixed = big.clone();
        let len = mixed.len();
        mixed.rotate_left(shift % len);
        if len > 1 {
            let src = mixed[1].clone();
            for (x, y) in mixed[0].iter_mut().zip(&src) {
                *x += BigInt::from(mult) * y;
            }
        }
        prop_assert_eq!(hermite_normal_form(big), hermite_normal_form(mixed));
    }

    #[test]
    fn equivalence_is_an_equivalence(
        a in prop::collection::btree_set((0i64..=3, 0i64..=3), 3),
        c in 2i64..=4,
    ) {
        let t = SymbolTable::new();
        let rows: Vec<SymbolicVector> = a.iter().filter(|&&v| v != (0, 0)).map(|&(x, y)| SymbolicVector::from_integers(&[x, y])).collect();
        prop_assume!(rows.len() == 3);
        let scaled: Vec<SymbolicVector> = a.iter().map(|&(x, y)| SymbolicVector::from_integers(&[c * x, c * y])).collect();
        let sheared: Vec<SymbolicVector> = a.iter().map(|&(x, y)| SymbolicVector::from_integers(&[x, x + y])).collect();
        prop_assert!(structurally_equivalent(&rows, &rows, &t).unwrap());
        prop_assert!(structurally_equivalent(&rows, &scaled, &t).unwrap());
        prop_assert!(structurally_equivalent(&scaled, &rows, &t).unwrap());
        prop_assert!(structurally_equivalent(&scaled, &sheared, &t).unwrap());
    }
}

#[test]
fn reference_agrees_on_named_configs() {
    let cases: [(&[[u64; 2]], [u64; 2]); 10] = [
        (&[[1, 0], [2, 0], [0, 1]], [20, 30]),
        (&[[2, 5], [3, 1]], [24, 24]),
        (&[[1, 0], [0, 1]], [15, 15]),
        (&[[2, 0], [0, 1], [3, 1]], [18, 18]),
        (&[[1, 0], [0, 1], [2, 3]], [18, 18]),
        (&[[3, 0], [0, 1], [1, 1]], [18, 18]),
        (&[[2, 0], [3, 0], [0, 1]], [16, 30]),
        (&[[1, 0], [0, 1], [6, 4]], [18, 18]),
        (&[[1, 1], [1, 2], [2, 1]], [16, 16]),
        (&[[4, 1], [1, 3]], [20, 20]),
    ];
    for (rows, b) in cases {
        let cfg = InitialConfig::from_rows(rows).unwrap();
        let bound = Bound::Box(b.to_vec());
        let fast = generate(&cfg, &bound, &SizeFunction::CoordinateSum).unwrap();
        let slow = generate_reference(&cfg, &bound).unwrap();
        assert_eq!(fast.points(), slow.points(), "{rows:?}");
    }
}
