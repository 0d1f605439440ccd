use isoform::gen;
use isoform::linalg::{self, certify_free_summand, echelonize, kernel_generator, nullspace, Matrix, Subspace};
use isoform::ring::RingDescriptor;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fp(p: u64) -> RingDescriptor {
    RingDescriptor::prime_field(p).unwrap()
}

fn rows_strategy(p: u64, max_rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0..p, cols), 0..=max_rows)
}

fn subspace(p: u64, rows: &[Vec<u64>], cols: usize) -> Subspace {
    echelonize(&Matrix::from_rows_with_cols(fp(p), rows, cols).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // Intersection against the dual description A ∩ B = (A^⊥ + B^⊥)^⊥,
    // where ^⊥ is the annihilator under the dot product.
    #[test]
    fn intersection_matches_annihilator_oracle(
        p in prop::sample::select(vec![3u64, 5, 7]),
        a in rows_strategy(7, 4, 5),
        b in rows_strategy(7, 4, 5),
    ) {
        let f = fp(p);
        let reduce = |m: &Vec<Vec<u64>>| m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect::<Vec<Vec<u64>>>();
        let sa = subspace(p, &reduce(&a), 5);
        let sb = subspace(p, &reduce(&b), 5);
        let meet = sa.intersect(&sb).unwrap();
        let ann = |s: &Subspace| nullspace(s.basis()).unwrap();
        let both = ann(&sa).basis().vstack(ann(&sb).basis()).unwrap();
        let oracle = nullspace(&both).unwrap();
        prop_assert_eq!(&meet, &oracle);
        prop_assert_eq!(meet.dim() + sa.sum(&sb).unwrap().dim(), sa.dim() + sb.dim());
        prop_assert!(sa.contains_subspace(&meet) && sb.contains_subspace(&meet));
        let _ = f;
    }

    #[test]
    fn echelon_form_is_canonical(p in prop::sample::select(vec![3u64, 5]), rows in rows_strategy(5, 4, 4), seed in any::<u64>()) {
        let f = fp(p);
        let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
        let s = subspace(p, &rows, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gen::invertible_matrix(f, s.dim(), &mut rng);
        let mixed = g.mul(s.basis()).unwrap();
        prop_assert_eq!(echelonize(&mixed).unwrap(), s);
    }
}

fn leibniz_det(m: &Matrix) -> u64 {
    let r = m.ring();
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0;
    fn permutations(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permutations(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    let mut all = Vec::new();
    permutations(0, &mut perm, &mut all);
    for p in all {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let term = (0..n).fold(1 % r.modulus(), |acc, i| r.mul(acc, m.get(i, p[i])));
        total = if inversions % 2 == 0 { r.add(total, term) } else { r.sub(total, term) };
    }
    total
}

#[test]
fn invertibility_matches_residue_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (p, k) in [(3, 3), (5, 2), (7, 2)] {
        let r = RingDescriptor::local(p, k).unwrap();
        for _ in 0..200 {
            let m = gen::matrix(r, 4, 4, &mut rng);
            let det = leibniz_det(&m);
            assert_eq!(m.determinant().unwrap(), det);
            assert_eq!(m.is_invertible(), r.is_unit(det));
            if m.is_invertible() {
                let inv = m.inverse().unwrap();
                assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(r, 4));
            } else {
                assert!(m.inverse().is_err());
            }
        }
    }
}

#[test]
fn kernel_generator_of_random_surjections() {
    let r = RingDescriptor::local(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut tested = 0;
    while tested < 100 {
        let n = 1 + tested % 4;
        let a = gen::matrix(r, n, n + 1, &mut rng);
        if a.residue_rank() < n {
            assert!(kernel_generator(&a).is_err());
            continue;
        }
        let w = kernel_generator(&a).unwrap();
        assert!(a.mul_vec(&w).unwrap().iter().all(|&x| x == 0));
        assert!(linalg::is_unimodular(r, &w));
        // The kernel is free of rank one: any other kernel vector is a multiple of w.
        let other = gen::vector(r, n + 1, &mut rng);
        let k = a.mul_vec(&other).unwrap();
        if k.iter().all(|&x| x == 0) {
            let ws = certify_free_summand(&Matrix::from_rows(r, std::slice::from_ref(&w)).unwrap()).unwrap();
            assert!(ws.contains(&other));
        }
        tested += 1;
    }
}

#[test]
fn kernel_example_over_z9() {
    let r = RingDescriptor::local(3, 2).unwrap();
    let a = Matrix::from_i64(r, &[vec![1, 0, 2], vec![0, 1, 5]]).unwrap();
    assert_eq!(kernel_generator(&a).unwrap(), vec![7, 4, 1]);
}

#[test]
fn random_summands_complete_to_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r = RingDescriptor::local(5, 3).unwrap();
    for _ in 0..100 {
        let rows = gen::matrix(r, 3, 5, &mut rng);
        match certify_free_summand(&rows) {
            Ok(s) => {
                assert!(s.completed_basis().is_invertible());
                for i in 0..3 {
                    assert!(s.contains(rows.row(i)));
                }
            }
            Err(_) => assert!(rows.residue_rank() < 3),
        }
    }
}
