use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use resbench_core::field::Fq;
use resbench_core::gf2::{BitMatrix, BitVec, Subspace};
use resbench_core::orbits::{stats, stats_checked, EmbeddingSpec, Omega};
use resbench_core::partitions::{enumerate_partitions, mullineux, Partition};
use resbench_core::symgrp::{GroupKind, Perm, StabChain};

fn matrix(rows: usize, cols: usize, bits: &[bool]) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, bits[(i * cols + j) % bits.len()]);
        }
    }
    m
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut images: Vec<u32> = (0..n as u32).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Perm::from_images(images).unwrap()
}

proptest! {
    #[test]
    fn rank_nullity(rows in 1usize..40, cols in 1usize..40, bits in prop::collection::vec(any::<bool>(), 1..200)) {
        let m = matrix(rows, cols, &bits);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let k = m.nullspace();
        prop_assert_eq!(k.dim() + m.rank(), cols);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).is_zero());
        }
    }

    #[test]
    fn sum_and_meet_dimensions(n in 2usize..30, a in prop::collection::vec(any::<u32>(), 1..8), b in prop::collection::vec(any::<u32>(), 1..8)) {
        let vecs = |seeds: &[u32]| -> Vec<BitVec> {
            seeds.iter().map(|&s| BitVec::from_indices(n, (0..n).filter(|i| (s >> (i % 32)) & 1 == 1))).collect()
        };
        let u = Subspace::from_vectors(n, &vecs(&a));
        let w = Subspace::from_vectors(n, &vecs(&b));
        let s = u.sum(&w).unwrap();
        let i = u.meet(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        prop_assert_eq!(u.orthogonal_complement().dim(), n - u.dim());
    }

    #[test]
    fn mullineux_is_an_involution(n in 1usize..16, p in prop::sample::select(vec![2u32, 3, 5, 7]), pick in any::<prop::sample::Index>()) {
        let parts: Vec<Partition> = enumerate_partitions(n, Some(p)).collect();
        let lam = pick.get(&parts);
        let m = mullineux(lam, p).unwrap();
        prop_assert!(m.is_p_regular(p));
        prop_assert_eq!(&mullineux(&m, p).unwrap(), lam);
        if p == 2 {
            prop_assert_eq!(&m, lam);
        }
    }

    #[test]
    fn perm_group_laws(n in 1usize..30, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h, k) = (random_perm(&mut rng, n), random_perm(&mut rng, n), random_perm(&mut rng, n));
        prop_assert_eq!(g.compose(&h).compose(&k), g.compose(&h.compose(&k)));
        prop_assert!(g.compose(&g.inverse()).is_identity());
        prop_assert_eq!(g.compose(&h).is_even(), g.is_even() == h.is_even());
    }

    #[test]
    fn stab_chain_contains_products(n in 3usize..12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = vec![random_perm(&mut rng, n), random_perm(&mut rng, n)];
        let chain = StabChain::from_generators(n, &gens);
        prop_assert!(chain.contains(&gens[0].compose(&gens[1])));
        prop_assert!(chain.contains(&gens[1].inverse()));
        let total: u128 = (1..=n as u128).product();
        prop_assert_eq!(total % chain.order(), 0);
    }

    #[test]
    fn field_axioms(q in prop::sample::select(vec![4u32, 8, 9, 16, 25, 27, 49]), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Fq::of_order(q).unwrap();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.frob(a), f.frob(b)), f.frob(f.add(a, b)));
        prop_assert_eq!(f.mul(f.frob(a), f.frob(b)), f.frob(f.mul(a, b)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, (q - 1) as u64), 1);
        }
    }
}

/// `induced(gh) = induced(g) ∘ induced(h)` on 1000 random pairs per spec.
#[test]
fn induced_action_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for s in ["ksubsets:m=7,k=3", "ksubsets:m=9,k=2", "blocks:a=2,b=4", "blocks:a=3,b=3", "blocks:a=4,b=2"] {
        let spec: EmbeddingSpec = s.parse().unwrap();
        let omega = Omega::new(&spec).unwrap();
        let m = spec.m();
        for _ in 0..1000 {
            let (g, h) = (random_perm(&mut rng, m), random_perm(&mut rng, m));
            let lhs = omega.induced(&g.compose(&h)).unwrap();
            let rhs = omega.induced(&g).unwrap().compose(&omega.induced(&h).unwrap());
            assert_eq!(lhs, rhs, "{s}");
        }
    }
}

/// Burnside and union-find agree wherever enumeration is affordable.
#[test]
fn burnside_agrees_with_enumeration() {
    for m in 5..=10 {
        for group in [GroupKind::Alt, GroupKind::Sym] {
            for spec in EmbeddingSpec::all_for(m, group) {
                let (b, e) = stats_checked(&spec, 10_000_000).unwrap();
                if let Some(e) = e {
                    assert_eq!((b.f1, b.f2, b.f3), (e.f1, e.f2, e.f3), "{spec}");
                }
            }
        }
    }
}

/// `e_2 ≥ 2` for `m ≥ 11`, except the action on 2-subsets where `e_2 = 1`.
#[test]
fn e2_lower_bound() {
    for m in 11..=13 {
        for spec in EmbeddingSpec::all_for(m, GroupKind::Alt) {
            let e2 = stats(&spec).unwrap().e2;
            if spec == EmbeddingSpec::ksubsets(m, 2, GroupKind::Alt).unwrap() {
                assert_eq!(e2, 1);
            } else {
                assert!(e2 >= 2, "{spec}: e2 = {e2}");
            }
        }
    }
}

/// Every nonempty `Ω_r` has at least one orbit.
#[test]
fn orbit_counts_are_positive() {
    for m in 6..=12 {
        for spec in EmbeddingSpec::all_for(m, GroupKind::Sym) {
            let s = stats(&spec).unwrap();
            assert!(s.f1 >= 1 && s.f2 >= 1 && s.f3 >= 1, "{spec}");
            assert_eq!(s.e2, s.f2 as i64 - s.f1 as i64);
            assert_eq!(s.e3, s.f3 as i64 - s.f2 as i64);
        }
    }
}
