use proptest::prelude::*;

use subpart_core::counting::count_subpartitions;
use subpart_core::envelope::{decreasing_lower_convex_envelope, lower_convex_envelope, DiscreteFunction};
use subpart_core::partition::{conjugate, Partition};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..8, 0..8).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn grid() -> impl Strategy<Value = DiscreteFunction> {
    (-5i64..5, prop::collection::vec(-10.0f64..10.0, 1..16))
        .prop_map(|(start, v)| DiscreteFunction::new(start, v).unwrap())
}

proptest! {
    #[test]
    fn parse_display_round_trip(p in partition()) {
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn conjugation_is_an_involution_preserving_counts(p in partition()) {
        let c = conjugate(&p);
        prop_assert_eq!(conjugate(&c), p.clone());
        prop_assert_eq!(count_subpartitions(&c).value, count_subpartitions(&p).value);
    }

    #[test]
    fn profile_area_and_steps(p in partition()) {
        let prof = p.profile();
        prop_assert_eq!(prof.excess_area(), 2 * p.n() as i64);
        for w in prof.values().windows(2) {
            prop_assert_eq!((w[1] - w[0]).abs(), 1);
        }
    }

    #[test]
    fn envelope_is_a_convex_minorant(f in grid()) {
        let h = lower_convex_envelope(&f);
        for (a, b) in h.values().iter().zip(f.values()) {
            prop_assert!(*a <= b + 1e-9);
        }
        for w in h.values().windows(3) {
            prop_assert!(w[0] + w[2] - 2.0 * w[1] >= -1e-9);
        }
        prop_assert_eq!(h.values()[0], f.values()[0]);
        prop_assert_eq!(h.values().last(), f.values().last());
        let hh = lower_convex_envelope(&h);
        for (a, b) in hh.values().iter().zip(h.values()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn decreasing_envelope_is_monotone(f in grid()) {
        let h = decreasing_lower_convex_envelope(&f);
        for w in h.values().windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9);
        }
        for (a, b) in h.values().iter().zip(f.values()) {
            prop_assert!(*a <= b + 1e-9);
        }
    }
}
