//! Norton's irreducibility test and a recursive composition-factor splitter.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::hom_dim;
use super::RepModule;
use crate::gf2::{spin, BitMatrix, BitVec, Subspace};
use crate::{Error, Result};

const MAX_NULLITY: usize = 6;
const DEFAULT_BUDGET: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
    /// No suitable algebra element was found within the budget.
    Inconclusive,
}

fn random_subset_sum(rng: &mut ChaCha8Rng, words: &[BitMatrix], dim: usize) -> BitMatrix {
    let mut theta = BitMatrix::zeros(dim, dim);
    let mut any = false;
    for w in words {
        if rng.gen::<bool>() {
            theta.add_assign(w);
            any = true;
        }
    }
    if !any {
        theta.add_assign(&words[rng.gen_range(0..words.len())]);
    }
    theta
}

fn proper(s: &Subspace, dim: usize) -> bool {
    !s.is_zero() && s.dim() < dim
}

/// Runs the test on raw generator matrices.
///
/// For a singular algebra element `θ` of small nullity, every nonzero vector
/// of `ker θ` is spun; if all of them generate the module and one nonzero
/// vector of `ker θᵀ` generates the dual, the module is irreducible.
pub fn irreducibility_test(mats: &[&BitMatrix], dim: usize, seed: u64, budget: usize) -> Irreducibility {
    if dim == 0 {
        return Irreducibility::Reducible(Subspace::zero(0));
    }
    if dim == 1 {
        return Irreducibility::Irreducible;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut words: Vec<BitMatrix> = mats.iter().map(|m| (*m).clone()).collect();
    if words.is_empty() {
        return Irreducibility::Reducible(Subspace::span_of(&BitVec::unit(dim, 0)));
    }
    let transposed: Vec<BitMatrix> = mats.iter().map(|m| m.transpose()).collect();
    let transposed_refs: Vec<&BitMatrix> = transposed.iter().collect();
    let id = BitMatrix::identity(dim);
    for _ in 0..budget {
        let (i, j) = (rng.gen_range(0..words.len()), rng.gen_range(0..words.len()));
        let prod = words[i].mul(&words[j]);
        if words.len() < 12 {
            words.push(prod);
        } else {
            let k = rng.gen_range(mats.len()..words.len());
            words[k] = prod;
        }
        let base = random_subset_sum(&mut rng, &words, dim);
        for theta in [base.clone(), base.add(&id)] {
            let kernel = theta.nullspace();
            let k = kernel.dim();
            if k == 0 {
                continue;
            }
            let kv = kernel.basis_vectors();
            if k > MAX_NULLITY {
                let mut v = BitVec::zeros(dim);
                while v.is_zero() {
                    for b in &kv {
                        if rng.gen::<bool>() {
                            v.xor_assign(b);
                        }
                    }
                }
                let s = spin(&[v], mats);
                if proper(&s, dim) {
                    return Irreducibility::Reducible(s);
                }
                continue;
            }
            for bits in 1u32..(1 << k) {
                let mut v = BitVec::zeros(dim);
                for (t, b) in kv.iter().enumerate() {
                    if bits >> t & 1 == 1 {
                        v.xor_assign(b);
                    }
                }
                let s = spin(&[v], mats);
                if proper(&s, dim) {
                    return Irreducibility::Reducible(s);
                }
            }
            let w = theta.transpose().nullspace().basis().row(0);
            let z = spin(&[w], &transposed_refs);
            if z.dim() < dim {
                return Irreducibility::Reducible(z.orthogonal_complement());
            }
            return Irreducibility::Irreducible;
        }
    }
    Irreducibility::Inconclusive
}

pub fn is_irreducible(m: &RepModule, seed: u64) -> Irreducibility {
    irreducibility_test(&m.matrices(), m.dim, seed, DEFAULT_BUDGET)
}

/// A composition factor with its multiplicity.
#[derive(Clone, Debug)]
pub struct Factor {
    pub module: RepModule,
    pub mult: usize,
}

fn split(m: &RepModule, seed: u64, out: &mut Vec<RepModule>) -> Result<()> {
    if m.dim == 0 {
        return Ok(());
    }
    match is_irreducible(m, seed) {
        Irreducibility::Irreducible => {
            out.push(m.clone());
            Ok(())
        }
        Irreducibility::Reducible(w) => {
            let sub = m.submodule(&w, &format!("{}/sub", m.label))?;
            let quo = m.quotient(&w, &format!("{}/quo", m.label))?;
            split(&sub, seed.wrapping_add(1), out)?;
            split(&quo, seed.wrapping_add(2), out)
        }
        Irreducibility::Inconclusive => {
            Err(Error::Inconclusive(format!("irreducibility of {} (dim {})", m.label, m.dim)))
        }
    }
}

/// Composition factors, grouped by isomorphism type.
pub fn chop(m: &RepModule, seed: u64) -> Result<Vec<Factor>> {
    let mut pieces = Vec::new();
    split(m, seed, &mut pieces)?;
    let mut factors: Vec<Factor> = Vec::new();
    'next: for p in pieces {
        for f in factors.iter_mut() {
            // Simple modules of equal dimension are isomorphic iff some map is nonzero.
            if f.module.dim == p.dim && hom_dim(&f.module, &p)? > 0 {
                f.mult += 1;
                continue 'next;
            }
        }
        let mut module = p;
        module.label = format!("factor{}(dim {})", factors.len() + 1, module.dim).to_string();
        factors.push(Factor { module, mult: 1 });
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;
    use crate::permmod::{permutation_module, simple_head};

    #[test]
    fn simple_heads_are_irreducible() {
        for n in 2..=8 {
            for lam in enumerate_partitions(n, Some(2)) {
                let d = simple_head(&lam).unwrap();
                assert_eq!(is_irreducible(&d, 7), Irreducibility::Irreducible, "{lam:?}");
            }
        }
    }

    #[test]
    fn m1_chops_into_two_trivials_and_d1() {
        let m1 = permutation_module(8, 1);
        assert!(matches!(is_irreducible(&m1, 1), Irreducibility::Reducible(_)));
        let mut f: Vec<(usize, usize)> = chop(&m1, 3).unwrap().iter().map(|f| (f.module.dim, f.mult)).collect();
        f.sort();
        assert_eq!(f, [(1, 2), (6, 1)]);
    }

    #[test]
    fn reducible_witness_is_invariant() {
        let m = permutation_module(6, 2);
        match is_irreducible(&m, 11) {
            Irreducibility::Reducible(w) => {
                assert!(m.is_invariant(&w));
                assert!(w.dim() > 0 && w.dim() < m.dim);
            }
            other => panic!("expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn composition_lengths_of_permutation_modules() {
        // M_2 for n = 6: Specht factors of dims 1, 5, 9 give triv (x3), D_1 (x2), D_2.
        let m = permutation_module(6, 2);
        let mut f: Vec<(usize, usize)> = chop(&m, 5).unwrap().iter().map(|f| (f.module.dim, f.mult)).collect();
        f.sort();
        assert_eq!(f, [(1, 3), (4, 1), (4, 2)]);
    }
}
