//! Equivariant maps between modules, solved over a spin basis of the source.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RepModule;
use crate::gf2::{BitMatrix, BitVec, RowReducer, Subspace};
use crate::symgrp::Perm;
use crate::{Error, Result};

/// A basis of `Hom(U, V)`; each map is a `dim V × dim U` matrix.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub dim: usize,
    pub maps: Vec<BitMatrix>,
}

/// Row reducer that remembers how each kept row was formed from the inserted vectors.
struct TrackedReducer {
    rows: Vec<(usize, BitVec, BitVec)>,
    width: usize,
    inserted: usize,
}

impl TrackedReducer {
    fn new(width: usize) -> Self {
        TrackedReducer { rows: Vec::new(), width, inserted: 0 }
    }

    fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut v = v.clone();
        let mut combo = BitVec::zeros(self.width);
        for (p, row, c) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (v, combo)
    }

    /// Inserts `v`; on dependence returns its coordinates in the inserted vectors.
    fn insert(&mut self, v: &BitVec) -> Option<BitVec> {
        let (r, mut combo) = self.reduce(v);
        match r.leading() {
            None => Some(combo),
            Some(p) => {
                combo.toggle(self.inserted);
                self.inserted += 1;
                self.rows.push((p, r, combo));
                None
            }
        }
    }
}

struct SpinBasis {
    vectors: Vec<BitVec>,
    seed_of: Vec<usize>,
    parent: Vec<Option<(usize, usize)>>,
    // (basis index k, generator index g, coordinates of A_g b_k)
    relations: Vec<(usize, usize, BitVec)>,
    seeds: usize,
}

fn spin_basis(mats: &[&BitMatrix], dim: usize) -> SpinBasis {
    let mut red = TrackedReducer::new(dim);
    let mut sb =
        SpinBasis { vectors: Vec::new(), seed_of: Vec::new(), parent: Vec::new(), relations: Vec::new(), seeds: 0 };
    let mut next_unit = 0;
    let mut head = 0;
    while sb.vectors.len() < dim {
        if head == sb.vectors.len() {
            // Start a new cyclic piece from the first unit vector outside the span.
            while red.insert(&BitVec::unit(dim, next_unit)).is_some() {
                next_unit += 1;
            }
            sb.vectors.push(BitVec::unit(dim, next_unit));
            sb.seed_of.push(sb.seeds);
            sb.parent.push(None);
            sb.seeds += 1;
            next_unit += 1;
        }
        while head < sb.vectors.len() {
            let k = head;
            head += 1;
            for (g, m) in mats.iter().enumerate() {
                let w = m.mul_vec(&sb.vectors[k]);
                match red.insert(&w) {
                    Some(c) => sb.relations.push((k, g, c)),
                    None => {
                        sb.vectors.push(w);
                        sb.seed_of.push(sb.seed_of[k]);
                        sb.parent.push(Some((k, g)));
                    }
                }
            }
        }
    }
    sb
}

fn paired_matrices<'a>(u: &'a RepModule, v: &'a RepModule) -> Result<(Vec<&'a BitMatrix>, Vec<&'a BitMatrix>)> {
    if u.gens.len() != v.gens.len() {
        return Err(Error::LabelMismatch(format!("{:?} vs {:?}", u.labels(), v.labels())));
    }
    let mut mu = Vec::new();
    let mut mv = Vec::new();
    for g in &u.gens {
        let h = v
            .matrix(&g.label)
            .ok_or_else(|| Error::LabelMismatch(format!("{} lacks generator {}", v.label, g.label)))?;
        mu.push(&g.matrix);
        mv.push(h);
    }
    Ok((mu, mv))
}

/// Solves for all `F` with `F·A_U = A_V·F` for every generator.
///
/// Returns the spin basis of `U` and, for every solution, the images
/// `F b_k` of the spin basis vectors.
fn solve(u: &RepModule, v: &RepModule) -> Result<(SpinBasis, Vec<Vec<BitVec>>)> {
    let (mu, mv) = paired_matrices(u, v)?;
    let dv = v.dim;
    let sb = spin_basis(&mu, u.dim);
    if u.dim == 0 || dv == 0 {
        return Ok((sb, Vec::new()));
    }
    // F b_k = P_k x_{seed(k)} with P_seed = I and P_child = A_g P_parent.
    let mut p: Vec<BitMatrix> = Vec::with_capacity(sb.vectors.len());
    for k in 0..sb.vectors.len() {
        let pk = match sb.parent[k] {
            None => BitMatrix::identity(dv),
            Some((par, g)) => mv[g].mul(&p[par]),
        };
        p.push(pk);
    }
    let unknowns = sb.seeds * dv;
    let mut red = RowReducer::new(unknowns);
    for (k, g, c) in &sb.relations {
        if red.rank() == unknowns {
            break;
        }
        // A^V_g P_k x_{s(k)} = Σ_j c_j P_j x_{s(j)}.
        let mut blocks = vec![BitMatrix::zeros(dv, dv); sb.seeds];
        blocks[sb.seed_of[*k]].add_assign(&mv[*g].mul(&p[*k]));
        for j in c.ones_iter() {
            blocks[sb.seed_of[j]].add_assign(&p[j]);
        }
        let mut row_words: Vec<u64> = Vec::new();
        for i in 0..dv {
            let row = blocks.iter().skip(1).fold(blocks[0].row(i), |acc, b| acc.concat(&b.row(i)));
            row_words.clear();
            row_words.extend_from_slice(row.words());
            red.insert_words(&row_words);
        }
    }
    let constraints = red.into_subspace();
    let solutions = if constraints.is_zero() { Subspace::full(unknowns) } else { constraints.orthogonal_complement() };
    let images = solutions
        .basis()
        .row_iter()
        .map(|x| {
            let xs: Vec<BitVec> = (0..sb.seeds).map(|s| x.slice(s * dv, dv)).collect();
            (0..sb.vectors.len()).map(|k| p[k].mul_vec(&xs[sb.seed_of[k]])).collect()
        })
        .collect();
    Ok((sb, images))
}

pub fn hom_space(u: &RepModule, v: &RepModule) -> Result<HomSpace> {
    let (sb, images) = solve(u, v)?;
    if images.is_empty() {
        return Ok(HomSpace { dim: 0, maps: Vec::new() });
    }
    let b = BitMatrix::from_cols(u.dim, &sb.vectors);
    let b_inv = b.inverse().expect("spin basis is a basis");
    let maps: Vec<BitMatrix> = images.iter().map(|ys| BitMatrix::from_cols(v.dim, ys).mul(&b_inv)).collect();
    Ok(HomSpace { dim: maps.len(), maps })
}

pub fn hom_dim(u: &RepModule, v: &RepModule) -> Result<usize> {
    Ok(solve(u, v)?.1.len())
}

/// Sum of the images of all maps `U → V`.
pub fn hom_images(u: &RepModule, v: &RepModule) -> Result<(usize, Subspace)> {
    let (_, images) = solve(u, v)?;
    let all: Vec<BitVec> = images.iter().flatten().cloned().collect();
    Ok((images.len(), Subspace::from_vectors(v.dim, &all)))
}

pub fn endomorphism_dim(m: &RepModule) -> Result<usize> {
    hom_dim(m, m)
}

/// `∩_g Ker(A_g − 1)`.
pub fn fixed_space(m: &RepModule) -> Subspace {
    let mut red = RowReducer::new(m.dim);
    for g in &m.gens {
        let a = g.matrix.add(&BitMatrix::identity(m.dim));
        for i in 0..m.dim {
            red.insert_words(a.row_words(i));
        }
    }
    red.into_subspace().orthogonal_complement()
}

/// Dimension of the space fixed by every given permutation.
pub fn fixed_points(m: &RepModule, gens: &[Perm]) -> Result<usize> {
    let mut red = RowReducer::new(m.dim);
    for g in gens {
        let a = m.matrixize(g)?.add(&BitMatrix::identity(m.dim));
        for i in 0..m.dim {
            red.insert_words(a.row_words(i));
        }
    }
    Ok(m.dim - red.rank())
}

/// Whether some equivariant map `A → B` is invertible.
///
/// Small hom spaces are searched exhaustively; larger ones by seeded random
/// combinations, so a `false` there is not a proof.
pub fn is_isomorphic(a: &RepModule, b: &RepModule) -> Result<bool> {
    if a.dim != b.dim {
        return Ok(false);
    }
    if a.dim == 0 {
        return Ok(true);
    }
    let hom = hom_space(a, b)?;
    if hom.dim == 0 {
        return Ok(false);
    }
    let invertible = |mask: &dyn Fn(usize) -> bool| {
        let mut f = BitMatrix::zeros(b.dim, a.dim);
        for (i, m) in hom.maps.iter().enumerate() {
            if mask(i) {
                f.add_assign(m);
            }
        }
        f.rank() == a.dim
    };
    if hom.dim <= 12 {
        for bits in 1u32..(1 << hom.dim) {
            if invertible(&|i| bits >> i & 1 == 1) {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..4096 {
        let picks: Vec<bool> = (0..hom.dim).map(|_| rng.gen()).collect();
        if invertible(&|i| picks[i]) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::permmod::{permutation_module, trivial_module, two_row_simple};

    /// Solves `F A_U = A_V F` directly in `dim U · dim V` unknowns.
    pub(crate) fn hom_dim_direct(u: &RepModule, v: &RepModule) -> usize {
        let (du, dv) = (u.dim, v.dim);
        let idx = |i: usize, j: usize| i * du + j;
        let mut red = RowReducer::new(du * dv);
        for g in &u.gens {
            let a = &g.matrix;
            let b = v.matrix(&g.label).unwrap();
            // Entry (i, j) of F·A − B·F.
            for i in 0..dv {
                for j in 0..du {
                    let mut row = BitVec::zeros(du * dv);
                    for k in 0..du {
                        if a.get(k, j) {
                            row.toggle(idx(i, k));
                        }
                    }
                    for k in 0..dv {
                        if b.get(i, k) {
                            row.toggle(idx(k, j));
                        }
                    }
                    red.insert(&row);
                }
            }
        }
        du * dv - red.rank()
    }

    #[test]
    fn trivial_hom() {
        let t = trivial_module(6);
        assert_eq!(hom_dim(&t, &t).unwrap(), 1);
    }

    #[test]
    fn hom_m1_m3() {
        for n in [6usize, 8, 10] {
            assert_eq!(hom_dim(&permutation_module(n, 1), &permutation_module(n, 3)).unwrap(), 2, "n = {n}");
        }
    }

    #[test]
    fn hom_d1_m3_vanishes() {
        for n in [8usize, 10] {
            assert_eq!(hom_dim(&two_row_simple(n, 1).unwrap(), &permutation_module(n, 3)).unwrap(), 0);
        }
    }

    #[test]
    fn hom_maps_are_equivariant_and_match_direct_count() {
        let pairs = [
            (permutation_module(6, 1), permutation_module(6, 2)),
            (permutation_module(6, 2), permutation_module(6, 2)),
            (two_row_simple(6, 1).unwrap(), permutation_module(6, 2)),
            (permutation_module(5, 2), two_row_simple(5, 1).unwrap()),
        ];
        for (u, v) in &pairs {
            let h = hom_space(u, v).unwrap();
            assert_eq!(h.dim, hom_dim_direct(u, v), "{} -> {}", u.label, v.label);
            for f in &h.maps {
                for g in &u.gens {
                    assert_eq!(f.mul(&g.matrix), v.matrix(&g.label).unwrap().mul(f));
                }
            }
        }
    }

    #[test]
    fn self_dual_hom_symmetry() {
        let ms: Vec<_> = (1..=3).map(|r| permutation_module(8, r)).collect();
        for a in &ms {
            for b in &ms {
                assert_eq!(hom_dim(a, b).unwrap(), hom_dim(b, a).unwrap());
            }
        }
    }

    #[test]
    fn fixed_points_of_transitive_action() {
        for r in 1..4 {
            let m = permutation_module(7, r);
            assert_eq!(fixed_space(&m).dim(), 1);
        }
    }

    #[test]
    fn label_mismatch_is_error() {
        let a = permutation_module(5, 1);
        let b = a.restrict("b", &[("x".into(), Perm::identity(5))]).unwrap();
        assert!(matches!(hom_dim(&a, &b), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn isomorphism_detection() {
        let m = permutation_module(6, 2);
        let e12 = crate::permmod::eta(6, 1, 2).matrix;
        let img = e12.column_space();
        let sub = m.submodule(&img, "im").unwrap();
        let q = permutation_module(6, 1).quotient(&Subspace::span_of(&BitVec::ones(6)), "Q").unwrap();
        assert!(is_isomorphic(&sub, &q).unwrap());
        assert!(!is_isomorphic(&permutation_module(6, 1), &two_row_simple(6, 1).unwrap()).unwrap());
    }
}
