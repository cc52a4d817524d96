use num_bigint::BigInt;
use proptest::prelude::*;
use qnorm_core::diagrams::*;
use qnorm_core::exact::{double_factorial_odd, factorial};

#[test]
fn fast_search_matches_reference_for_every_family() {
    let e = Enumerator::new(2).unwrap();
    for n in 1..=9 {
        for family in [
            PairingFamily::ParityReversing,
            PairingFamily::ConnectedParityReversing,
        ] {
            let fast = e.histogram(n, family).unwrap();
            let slow = e.reference_histogram(n, family).unwrap();
            assert_eq!(fast, slow, "n={n} {family}");
        }
    }
    for n in 1..=7 {
        let fast = e.histogram(n, PairingFamily::All).unwrap();
        assert_eq!(
            fast,
            e.reference_histogram(n, PairingFamily::All).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn worker_count_does_not_change_results() {
    for family in [
        PairingFamily::All,
        PairingFamily::ParityReversing,
        PairingFamily::ConnectedParityReversing,
    ] {
        let one = enumerate_histogram(7, family, 1).unwrap();
        for t in [2, 3, 5] {
            assert_eq!(one, enumerate_histogram(7, family, t).unwrap());
        }
    }
}

#[test]
fn totals() {
    let e = Enumerator::default();
    for n in 1..=9u64 {
        let h = e
            .histogram(n as usize, PairingFamily::ParityReversing)
            .unwrap();
        assert_eq!(h.total(), factorial(n));
    }
    for n in 1..=7u64 {
        let h = e.histogram(n as usize, PairingFamily::All).unwrap();
        assert_eq!(h.total(), double_factorial_odd(n));
    }
}

#[test]
fn extremal_crossing_counts() {
    let e = Enumerator::default();
    for n in 3..=9usize {
        let h = e.histogram(n, PairingFamily::ParityReversing).unwrap();
        let top = h.max_key().unwrap();
        if n % 2 == 1 {
            assert_eq!(top, n * (n - 1) / 2);
            assert_eq!(h.get(top), BigInt::from(1));
        } else {
            assert_eq!(top, n * (n - 2) / 2);
            assert_eq!(h.get(top), BigInt::from(2));
        }
    }
}

#[test]
fn ceilings_are_reported() {
    let e = Enumerator::new(1).unwrap().with_ceilings(5, 4);
    assert!(matches!(
        e.histogram(6, PairingFamily::ParityReversing),
        Err(qnorm_core::Error::CeilingExceeded {
            n: 6,
            ceiling: 5,
            ..
        })
    ));
    assert!(e.histogram(5, PairingFamily::All).is_err());
    assert!(Enumerator::new(0).is_err());
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn pairing_round_trip(images in (1usize..=10).prop_flat_map(permutation)) {
        let s = Permutation::new(images).unwrap();
        let p = permutation_to_pairing(&s);
        prop_assert!(p.is_parity_reversing());
        prop_assert_eq!(pairing_to_permutation(&p).unwrap(), s);
    }

    #[test]
    fn decomposition_reassembles(images in (1usize..=10).prop_flat_map(permutation)) {
        let p = permutation_to_pairing(&Permutation::new(images).unwrap());
        let d = decompose(&p);
        prop_assert_eq!(d.reassemble(), p.clone());
        let total: usize = d.parts.iter().map(|c| crossing_number(&c.component)).sum();
        prop_assert_eq!(total, crossing_number(&p));
    }
}
