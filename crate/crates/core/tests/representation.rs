use isoform::gen;
use isoform::quadform::PfisterSpec;
use isoform::ring::RingDescriptor;
use isoform::solver::{self, RepresentationProblem, SolveOptions, Verdict};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn full_pipeline(seed: u64) -> SolveOptions {
    SolveOptions { seed, fast_paths: false }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn forward_then_reduce(p in prop::sample::select(vec![3u64, 5, 7]), k in 1u32..=3, n in 3usize..=5, seed in any::<u64>()) {
        let r = RingDescriptor::local(p, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (alphas, sol) = loop {
            let mut a: Vec<u64> = (0..n - 1).map(|_| gen::unit(r, &mut rng)).collect();
            let s = gen::vector(r, n - 1, &mut rng);
            let total = a.iter().zip(&s).fold(0, |acc, (&x, &y)| r.add(acc, r.mul(x, r.mul(y, y))));
            if r.is_unit(total) {
                a.push(r.neg(total));
                break (a, s);
            }
        };
        let v = solver::lemma_tech_forward(r, &alphas, &sol).unwrap();
        prop_assert_eq!(*v.last().unwrap(), 1);
        let back = solver::lemma_tech_reduce(r, &alphas, &v, seed).unwrap();
        prop_assert_eq!(back, sol);
    }

    #[test]
    fn solved_witnesses_evaluate_exactly(p in prop::sample::select(vec![3u64, 5, 7]), k in 1u32..=4, m in 1usize..=3, seed in any::<u64>()) {
        let r = RingDescriptor::local(p, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = gen::pfister_spec(r, m, &mut rng);
        let c = gen::unit(r, &mut rng);
        let cert = solver::solve_pfister_with(&RepresentationProblem::new(spec.clone(), c).unwrap(), full_pipeline(seed)).unwrap();
        prop_assert_eq!(cert.verdict, Verdict::Solved);
        let w = cert.witness.clone().unwrap();
        prop_assert_eq!(spec.expand().eval_quad(&w).unwrap(), c);
    }
}

#[test]
fn reflection_path_example_over_z9() {
    let r = RingDescriptor::local(3, 2).unwrap();
    let alphas = [1, r.reduce(-1), 1, r.reduce(-1)];
    for seed in 0..10 {
        let t = solver::lemma_tech_reduce(r, &alphas, &[1, 1, 3, 3], seed).unwrap();
        let value = (0..3).fold(0, |acc, i| r.add(acc, r.mul(alphas[i], r.mul(t[i], t[i]))));
        assert_eq!(value, 1);
    }
}

#[test]
fn two_coefficients_rejected() {
    let r = RingDescriptor::local(3, 2).unwrap();
    assert!(solver::lemma_tech_forward(r, &[1, r.reduce(-1)], &[1]).is_err());
    assert!(solver::lemma_tech_reduce(r, &[1, r.reduce(-1)], &[1, 1], 0).is_err());
}

#[test]
fn difference_of_squares_represents_two_over_z9() {
    let r = RingDescriptor::local(3, 2).unwrap();
    let spec = PfisterSpec::from_i64(r, &[1]).unwrap();
    let q = spec.expand();
    assert!(solver::exhaustive_witness(&q, 2).unwrap().is_some());
    assert_eq!(q.eval_quad(&[6, 5]).unwrap(), 2);
    for seed in 0..5 {
        let cert = solver::solve_pfister_with(&RepresentationProblem::new(spec.clone(), 2).unwrap(), full_pipeline(seed)).unwrap();
        assert_eq!(cert.verdict, Verdict::Solved);
        assert!(cert.verify().unwrap());
    }
}

#[test]
fn sum_of_two_squares_over_z9() {
    let r = RingDescriptor::local(3, 2).unwrap();
    let f = RingDescriptor::prime_field(3).unwrap();
    let spec = PfisterSpec::from_i64(r, &[-1]).unwrap();
    let cert = solver::solve_pfister_with(&RepresentationProblem::new(spec.clone(), 2).unwrap(), full_pipeline(0)).unwrap();
    let residue = solver::exhaustive_witness(&spec.with_ring(f).unwrap().expand(), 2).unwrap();
    assert_eq!(cert.verdict == Verdict::Solved, residue.is_some());
    let transcript = cert.residue_transcript.expect("transcript recorded");
    assert_eq!(transcript.hyperbolic, residue.is_some());
}

#[test]
fn agreement_with_exhaustive_search_over_small_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for p in [3u64, 5, 7] {
        let f = RingDescriptor::prime_field(p).unwrap();
        for m in 1..=2 {
            for _ in 0..5 {
                let spec = gen::pfister_spec(f, m, &mut rng);
                for c in 1..p {
                    let cert = solver::solve_pfister_with(&RepresentationProblem::new(spec.clone(), c).unwrap(), full_pipeline(c)).unwrap();
                    let oracle = solver::exhaustive_witness(&spec.expand(), c).unwrap();
                    assert_eq!(cert.verdict == Verdict::Solved, oracle.is_some());
                }
            }
        }
    }
}

#[test]
fn verdict_is_stable_across_precision() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for p in [3u64, 5, 7] {
        let top = RingDescriptor::local(p, 4).unwrap();
        for m in 1..=2 {
            let spec = gen::pfister_spec(top, m, &mut rng);
            let c = gen::unit(top, &mut rng);
            let verdicts: Vec<Verdict> = (1..=4)
                .map(|k| {
                    let r = RingDescriptor::local(p, k).unwrap();
                    let prob = RepresentationProblem::new(spec.with_ring(r).unwrap(), c).unwrap();
                    solver::solve_pfister_with(&prob, full_pipeline(0)).unwrap().verdict
                })
                .collect();
            assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "{verdicts:?}");
        }
    }
}

#[test]
fn value_set_of_hyperbolic_plane_over_f5_is_a_subgroup() {
    let f = RingDescriptor::prime_field(5).unwrap();
    let q = PfisterSpec::from_i64(f, &[1]).unwrap().expand();
    let values = solver::value_set(&q).unwrap();
    for &a in values.keys() {
        for &b in values.keys() {
            assert!(values.contains_key(&f.mul(a, b)));
        }
        assert!(values.contains_key(&f.inv(a).unwrap()));
    }
    assert!(values.contains_key(&1));
    assert!(solver::check_value_group_exhaustive(&q).unwrap().is_clean());
}

#[test]
fn inverse_witness_identity() {
    let r = RingDescriptor::local(7, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let spec = gen::pfister_spec(r, 2, &mut rng);
        let c = gen::unit(r, &mut rng);
        let cert = solver::solve_pfister(&RepresentationProblem::new(spec.clone(), c).unwrap(), 0).unwrap();
        let v = cert.witness.unwrap();
        let inv = r.inv(c).unwrap();
        let scaled: Vec<u64> = v.iter().map(|&x| r.mul(inv, x)).collect();
        assert_eq!(spec.expand().eval_quad(&scaled).unwrap(), inv);
    }
}

#[test]
fn group_law_over_local_rings() {
    let r = RingDescriptor::local(5, 2).unwrap();
    let spec = PfisterSpec::from_i64(r, &[2, 3]).unwrap();
    let report = solver::check_group_law(&spec, r, 25, 1).unwrap();
    assert!(report.is_clean(), "{:?}", report.violations);
    assert_eq!(report.checked + report.inconclusive, 25);
}
