use isoform::ring::RingDescriptor;
use proptest::prelude::*;

fn ring() -> impl Strategy<Value = RingDescriptor> {
    (prop::sample::select(vec![3u64, 5, 7, 11, 13]), 1u32..=4).prop_map(|(p, k)| RingDescriptor::local(p, k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_axioms(r in ring(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (r.reduce_u(a), r.reduce_u(b), r.reduce_u(c));
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), 0);
        prop_assert_eq!(r.sub(a, b), r.add(a, r.neg(b)));
    }

    #[test]
    fn units_are_exactly_nonzero_residues(r in ring(), a in any::<u64>()) {
        let a = r.reduce_u(a);
        prop_assert_eq!(r.is_unit(a), a % r.p() != 0);
        match r.inv(a) {
            Ok(b) => prop_assert_eq!(r.mul(a, b), 1),
            Err(_) => prop_assert!(!r.is_unit(a)),
        }
    }

    #[test]
    fn residue_is_a_homomorphism(r in ring(), a in any::<u64>(), b in any::<u64>()) {
        let f = r.residue_field();
        let (a, b) = (r.reduce_u(a), r.reduce_u(b));
        prop_assert_eq!(r.residue(r.add(a, b)), f.add(r.residue(a), r.residue(b)));
        prop_assert_eq!(r.residue(r.mul(a, b)), f.mul(r.residue(a), r.residue(b)));
    }

    #[test]
    fn ring_strings_round_trip(r in ring()) {
        let s = r.to_string();
        prop_assert_eq!(s.parse::<RingDescriptor>().unwrap(), r);
    }
}

#[test]
fn malformed_rings_rejected() {
    for s in ["fp:4", "fp:2", "zpk:3", "zpk:3,0", "fq:5", "", "fp:x"] {
        assert!(s.parse::<RingDescriptor>().is_err(), "{s}");
    }
}
