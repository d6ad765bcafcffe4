//! Permutation modules on subsets and tabloids, incidence maps, Specht
//! modules and their simple heads.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf2::{BitMatrix, BitVec, CoordinateBasis, Subspace};
use crate::modstruct::RepModule;
use crate::partitions::Partition;
use crate::symgrp::Perm;
use crate::{binom_i, binomial, Error, Result};

/// Colexicographic indexing of the `r`-subsets of `{0, …, n−1}`.
///
/// Colex order is the numeric order of the subsets' bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetIndexer {
    n: usize,
    r: usize,
    masks: Vec<u64>,
}

impl SubsetIndexer {
    pub fn new(n: usize, r: usize) -> Self {
        assert!(n < 64, "subset indexer supports n < 64");
        let mut masks = Vec::with_capacity(binomial(n as u64, r as u64) as usize);
        if r == 0 {
            masks.push(0);
        } else if r <= n {
            let mut x: u64 = (1 << r) - 1;
            while x < 1 << n {
                masks.push(x);
                // Next mask with the same popcount.
                let c = x & x.wrapping_neg();
                let y = x + c;
                x = (((x ^ y) >> 2) / c) | y;
            }
        }
        SubsetIndexer { n, r, masks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn unrank(&self, i: usize) -> u64 {
        self.masks[i]
    }

    /// `Σ_i C(a_i, i)` over the sorted elements `a_1 < … < a_r`.
    pub fn rank(&self, mask: u64) -> usize {
        let mut m = mask;
        let mut i = 1;
        let mut acc = 0u128;
        while m != 0 {
            let a = m.trailing_zeros() as u64;
            acc += binomial(a, i);
            m &= m - 1;
            i += 1;
        }
        acc as usize
    }

    pub fn elements(&self, i: usize) -> Vec<usize> {
        let mut m = self.masks[i];
        let mut out = Vec::with_capacity(self.r);
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    fn image(&self, g: &Perm, mask: u64) -> u64 {
        let mut m = mask;
        let mut out = 0u64;
        while m != 0 {
            out |= 1 << g.apply(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }
}

/// Tabloids of shape `λ`, indexed by their row contents in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabloidModule {
    lambda: Partition,
    n: usize,
    // Each key packs the row of point x into bits 4x..4x+4.
    keys: Vec<u64>,
    lookup: Vec<(u64, u32)>,
}

impl TabloidModule {
    pub fn new(lambda: &Partition) -> Result<Self> {
        let n = lambda.n();
        if n > 16 || lambda.len() > 16 {
            return Err(Error::InvalidArgument(format!("tabloid module for {lambda:?} is out of range")));
        }
        let mut rows_of: Vec<Vec<u8>> = Vec::new();
        let mut cur = vec![0u8; n];
        let mut room: Vec<usize> = lambda.parts().to_vec();
        fill(0, &mut cur, &mut room, &mut rows_of);
        // Sort by the tuple of sorted rows.
        let mut keyed: Vec<(Vec<Vec<u8>>, u64)> = rows_of
            .iter()
            .map(|ro| {
                let mut content = vec![Vec::new(); lambda.len()];
                for (x, &r) in ro.iter().enumerate() {
                    content[r as usize].push(x as u8);
                }
                (content, pack(ro))
            })
            .collect();
        keyed.sort();
        let keys: Vec<u64> = keyed.into_iter().map(|(_, k)| k).collect();
        let mut lookup: Vec<(u64, u32)> = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        lookup.sort_unstable();
        Ok(TabloidModule { lambda: lambda.clone(), n, keys, lookup })
    }

    pub fn shape(&self) -> &Partition {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn index_of_key(&self, key: u64) -> usize {
        let pos = self.lookup.binary_search_by_key(&key, |&(k, _)| k).expect("tabloid key");
        self.lookup[pos].1 as usize
    }

    /// Index of the tabloid `{t}` of a tableau given by its rows.
    pub fn index_of_tableau(&self, t: &Tableau) -> usize {
        let mut rows = vec![0u8; self.n];
        for (i, row) in t.rows.iter().enumerate() {
            for &x in row {
                rows[x] = i as u8;
            }
        }
        self.index_of_key(pack(&rows))
    }

    /// Row contents of tabloid `i`.
    pub fn rows(&self, i: usize) -> Vec<Vec<usize>> {
        let mut content = vec![Vec::new(); self.lambda.len()];
        for x in 0..self.n {
            content[((self.keys[i] >> (4 * x)) & 15) as usize].push(x);
        }
        content
    }

    fn image(&self, g: &Perm, key: u64) -> u64 {
        let mut out = 0u64;
        for x in 0..self.n {
            out |= ((key >> (4 * x)) & 15) << (4 * g.apply(x));
        }
        out
    }
}

fn pack(rows: &[u8]) -> u64 {
    rows.iter().enumerate().fold(0u64, |acc, (x, &r)| acc | (r as u64) << (4 * x))
}

fn fill(x: usize, cur: &mut Vec<u8>, room: &mut Vec<usize>, out: &mut Vec<Vec<u8>>) {
    if x == cur.len() {
        out.push(cur.clone());
        return;
    }
    for r in 0..room.len() {
        if room[r] > 0 {
            room[r] -= 1;
            cur[x] = r as u8;
            fill(x + 1, cur, room, out);
            room[r] += 1;
        }
    }
}

/// A permutation module: the basis is permuted by `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    Subsets(SubsetIndexer),
    Tabloids(TabloidModule),
}

impl Ambient {
    pub fn degree(&self) -> usize {
        match self {
            Ambient::Subsets(s) => s.n,
            Ambient::Tabloids(t) => t.n,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Ambient::Subsets(s) => s.len(),
            Ambient::Tabloids(t) => t.len(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Ambient::Subsets(s) => format!("M_{}(n={})", s.r, s.n),
            Ambient::Tabloids(t) => format!("M^({})", t.lambda),
        }
    }

    /// Image index of every basis element under `g`.
    pub fn basis_perm(&self, g: &Perm) -> Vec<u32> {
        assert_eq!(g.degree(), self.degree(), "permutation degree mismatch");
        match self {
            Ambient::Subsets(s) => s.masks.iter().map(|&m| s.rank(s.image(g, m)) as u32).collect(),
            Ambient::Tabloids(t) => t.keys.iter().map(|&k| t.index_of_key(t.image(g, k)) as u32).collect(),
        }
    }
}

/// Sends basis vector `i` to basis vector `pi[i]`.
pub fn permute_vector(pi: &[u32], v: &BitVec) -> BitVec {
    BitVec::from_indices(v.len(), v.ones_iter().map(|i| pi[i] as usize))
}

/// How a module's basis sits inside a permutation module: basis vector `j`
/// is the coset of `reps[j]` modulo `bottom`.
#[derive(Clone, Debug)]
pub struct Provenance {
    ambient: Arc<Ambient>,
    bottom: Subspace,
    reps: BitMatrix,
    coords: CoordinateBasis,
}

impl Provenance {
    pub fn new(ambient: Arc<Ambient>, bottom: Subspace, reps: BitMatrix) -> Result<Self> {
        let d = ambient.dim();
        if bottom.ambient_dim() != d || reps.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: reps.cols() });
        }
        let reduced: Vec<BitVec> = reps.row_iter().map(|r| bottom.reduce(&r)).collect();
        let coords = CoordinateBasis::new(d, &reduced)?;
        Ok(Provenance { ambient, bottom, reps, coords })
    }

    /// The subquotient `top / bottom` with an echelon complement basis.
    pub fn subquotient(ambient: Arc<Ambient>, top: &Subspace, bottom: &Subspace) -> Result<Self> {
        if !bottom.is_subspace_of(top) {
            return Err(Error::InvalidArgument("bottom is not contained in top".into()));
        }
        let reduced: Vec<BitVec> = top.basis().row_iter().map(|v| bottom.reduce(&v)).collect();
        let comp = Subspace::from_vectors(top.ambient_dim(), &reduced);
        Provenance::new(ambient, bottom.clone(), comp.basis().clone())
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn bottom(&self) -> &Subspace {
        &self.bottom
    }

    pub fn reps(&self) -> &BitMatrix {
        &self.reps
    }

    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    /// `top` as a subspace of the ambient.
    pub fn top(&self) -> Subspace {
        Subspace::from_matrix(&self.reps.vstack(self.bottom.basis()))
    }

    /// A representative in the ambient of the element with coordinates `x`.
    pub fn lift(&self, x: &BitVec) -> BitVec {
        self.reps.vec_mul(x)
    }

    /// Coordinates of an ambient vector, if it lies in `top`.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        self.coords.coordinates(&self.bottom.reduce(v))
    }

    /// Preimage in the ambient of a subspace given in module coordinates.
    pub fn lift_subspace(&self, u: &Subspace) -> Subspace {
        let m =
            BitMatrix::from_rows(self.ambient.dim(), &u.basis().row_iter().map(|x| self.lift(&x)).collect::<Vec<_>>());
        Subspace::from_matrix(&m.vstack(self.bottom.basis()))
    }

    /// Image in module coordinates of an ambient subspace contained in `top`.
    pub fn project_subspace(&self, s: &Subspace) -> Result<Subspace> {
        let vs = s
            .basis()
            .row_iter()
            .map(|v| {
                self.coordinates(&v).ok_or_else(|| Error::InvalidArgument("subspace is not inside the module".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_vectors(self.dim(), &vs))
    }

    /// Matrix of `g` in module coordinates (columns are images of basis vectors).
    pub fn matrixize(&self, g: &Perm) -> Result<BitMatrix> {
        let pi = self.ambient.basis_perm(g);
        let cols = self
            .reps
            .row_iter()
            .map(|r| {
                self.coordinates(&permute_vector(&pi, &r))
                    .ok_or_else(|| Error::ClosureFailure(format!("{g} does not preserve the module")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix::from_cols(self.dim(), &cols))
    }

    /// Provenance of a submodule spanned by the rows of `u` (module coordinates).
    pub fn sub(&self, u: &Subspace) -> Result<Self> {
        let reps =
            BitMatrix::from_rows(self.ambient.dim(), &u.basis().row_iter().map(|x| self.lift(&x)).collect::<Vec<_>>());
        Provenance::new(self.ambient.clone(), self.bottom.clone(), reps)
    }

    /// Provenance of the quotient by `u`, with basis the non-pivot unit vectors.
    pub fn quotient(&self, u: &Subspace) -> Result<Self> {
        let free = non_pivots(u);
        let reps =
            BitMatrix::from_rows(self.ambient.dim(), &free.iter().map(|&j| self.reps.row(j)).collect::<Vec<_>>());
        Provenance::new(self.ambient.clone(), self.lift_subspace(u), reps)
    }
}

pub(crate) fn non_pivots(u: &Subspace) -> Vec<usize> {
    let mut is_pivot = vec![false; u.ambient_dim()];
    for &p in u.pivots() {
        is_pivot[p] = true;
    }
    (0..u.ambient_dim()).filter(|&j| !is_pivot[j]).collect()
}

/// `(0 1)` labelled `s` and `(0 1 … n−1)` labelled `c`.
pub fn standard_generators(n: usize) -> Vec<(String, Perm)> {
    if n < 2 {
        return vec![("s".to_string(), Perm::identity(n))];
    }
    vec![("s".to_string(), Perm::transposition(n, 0, 1)), ("c".to_string(), Perm::cycle_range(n, 0, n))]
}

fn ambient_module(ambient: Ambient, label: String) -> RepModule {
    let n = ambient.degree();
    let d = ambient.dim();
    let prov = Provenance::new(Arc::new(ambient), Subspace::zero(d), BitMatrix::identity(d)).expect("identity basis");
    RepModule::from_provenance(label, prov, &standard_generators(n)).expect("ambient is closed")
}

/// `M_r`, the permutation module on `r`-subsets of `n` points.
pub fn permutation_module(n: usize, r: usize) -> RepModule {
    ambient_module(Ambient::Subsets(SubsetIndexer::new(n, r)), format!("M_{r}"))
}

/// The trivial module of `S_n`.
pub fn trivial_module(n: usize) -> RepModule {
    let mut m = permutation_module(n, 0);
    m.label = "triv".into();
    m
}

/// The permutation module on tabloids of shape `λ`.
pub fn tabloid_module(lambda: &Partition) -> Result<RepModule> {
    Ok(ambient_module(Ambient::Tabloids(TabloidModule::new(lambda)?), format!("M^({lambda})")))
}

/// The incidence map `η_{r,s}: M_r → M_s` as a `C(n,s) × C(n,r)` matrix.
#[derive(Clone, Debug)]
pub struct IncidenceMap {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub matrix: BitMatrix,
}

/// An `r`-set goes to the sum of the `s`-sets containing it or contained in it.
pub fn eta(n: usize, r: usize, s: usize) -> IncidenceMap {
    let src = SubsetIndexer::new(n, r);
    let dst = SubsetIndexer::new(n, s);
    let mut m = BitMatrix::zeros(dst.len(), src.len());
    for (j, &a) in src.masks.iter().enumerate() {
        for (i, &b) in dst.masks.iter().enumerate() {
            if a & b == a || a & b == b {
                m.set(i, j, true);
            }
        }
    }
    IncidenceMap { n, r, s, matrix: m }
}

/// Rank of `η_{r,s}` over GF(2) from the closed formula
/// `Σ_{0≤i≤r, C(s−i, r−i) odd} (C(n,i) − C(n,i−1))`.
pub fn wilson_rank(n: usize, r: usize, s: usize) -> Result<u128> {
    if r > s || r + s > n {
        return Err(Error::InvalidArgument(format!("need r ≤ min(s, n−s), got n={n}, r={r}, s={s}")));
    }
    let mut total = 0u128;
    for i in 0..=r {
        // C(a, b) is odd iff b's bits are a subset of a's (Lucas).
        let (a, b) = (s - i, r - i);
        if b & !a == 0 {
            total += binom_i(n as i64, i as i64) - binom_i(n as i64, i as i64 - 1);
        }
    }
    Ok(total)
}

/// Rank of `η_{r,s}` for any admissible pair, using adjointness when `r > s`.
pub fn wilson_rank_any(n: usize, r: usize, s: usize) -> Result<u128> {
    if r <= s {
        wilson_rank(n, r, s)
    } else {
        wilson_rank(n, s, r)
    }
}

/// `T_r`, the sum of all `r`-subsets.
pub fn t_vector(n: usize, r: usize) -> BitVec {
    BitVec::ones(binomial(n as u64, r as u64) as usize)
}

/// `M'_r = Ker η_{r,0}`.
pub fn augmentation(n: usize, r: usize) -> Subspace {
    eta(n, r, 0).matrix.nullspace()
}

/// `S_r = ∩_{t<r} Ker η_{r,t}` as a subspace of `M_r`.
pub fn specht_two_row_subspace(n: usize, r: usize) -> Subspace {
    let dim = binomial(n as u64, r as u64) as usize;
    let mut stacked = BitMatrix::zeros(0, dim);
    for t in 0..r {
        stacked = stacked.vstack(&eta(n, r, t).matrix);
    }
    if r == 0 {
        return Subspace::full(dim);
    }
    stacked.nullspace()
}

/// The Specht module `S^{(n−r, r)}` inside `M_r`.
pub fn specht_two_row(n: usize, r: usize) -> Result<RepModule> {
    if 2 * r > n {
        return Err(Error::InvalidArgument(format!("need n ≥ 2r, got n={n}, r={r}")));
    }
    permutation_module(n, r).submodule(&specht_two_row_subspace(n, r), &format!("S_{r}"))
}

/// Quotient of a module by the radical of the restricted standard form.
fn head_by_form(specht: &RepModule, label: &str) -> Result<RepModule> {
    let prov = specht.provenance.as_ref().ok_or_else(|| Error::InvalidArgument("module has no ambient".into()))?;
    let basis: Vec<BitVec> = (0..specht.dim).map(|j| prov.lift(&BitVec::unit(specht.dim, j))).collect();
    let mut gram = BitMatrix::zeros(specht.dim, specht.dim);
    for i in 0..basis.len() {
        for j in i..basis.len() {
            if basis[i].dot(&basis[j]) {
                gram.set(i, j, true);
                gram.set(j, i, true);
            }
        }
    }
    let rad = gram.nullspace();
    specht.quotient(&rad, label)
}

/// `D_r = D^{(n−r, r)}` realised as `S_r / (S_r ∩ S_r^⊥)` inside `M_r`.
pub fn two_row_simple(n: usize, r: usize) -> Result<RepModule> {
    if r == 0 {
        return Ok(trivial_module(n));
    }
    if 2 * r >= n {
        return Err(Error::NotRegular { p: 2 });
    }
    head_by_form(&specht_two_row(n, r)?, &format!("D_{r}"))
}

/// A Young tableau with 0-indexed entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = rows.iter().map(|r| r.len()).sum();
        let mut seen = vec![false; n];
        for &x in rows.iter().flatten() {
            if x >= n || seen[x] {
                return Err(Error::InvalidArgument(format!("tableau {rows:?} must contain 0..{n} once each")));
            }
            seen[x] = true;
        }
        if rows.iter().any(|r| r.is_empty()) || rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidArgument(format!("tableau {rows:?} does not have partition shape")));
        }
        Ok(Tableau { rows })
    }

    /// Builds from 1-indexed rows.
    pub fn from_one_indexed(rows: &[&[usize]]) -> Result<Self> {
        if rows.iter().flat_map(|r| r.iter()).any(|&x| x == 0) {
            return Err(Error::InvalidArgument("1-indexed tableau contains 0".into()));
        }
        Tableau::new(rows.iter().map(|r| r.iter().map(|&x| x - 1).collect()).collect())
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len()).collect())
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let w = self.rows.first().map_or(0, |r| r.len());
        (0..w).map(|j| self.rows.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect()).collect()
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations_of(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// All elements of the column group of `t`.
pub fn column_group(t: &Tableau) -> Vec<Perm> {
    let n = t.shape().n();
    let mut group = vec![Perm::identity(n)];
    for col in t.columns() {
        let arrangements = permutations_of(&col);
        let mut next = Vec::with_capacity(group.len() * arrangements.len());
        for g in &group {
            for arr in &arrangements {
                let mut images: Vec<u32> = (0..n as u32).collect();
                for (src, &dst) in col.iter().zip(arr) {
                    images[*src] = dst as u32;
                }
                next.push(g.compose(&Perm::from_images_unchecked(images)));
            }
        }
        group = next;
    }
    group
}

/// `e_t = Σ_{σ ∈ C_t} σ{t}`; signs vanish over GF(2).
pub fn polytabloid(tabloids: &TabloidModule, t: &Tableau) -> BitVec {
    let base = tabloids.index_of_tableau(t);
    let key = tabloids.keys[base];
    BitVec::from_indices(tabloids.len(), column_group(t).iter().map(|s| tabloids.index_of_key(tabloids.image(s, key))))
}

/// Standard tableaux of shape `λ`, rows and columns increasing.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Tableau> {
    fn go(lambda: &Partition, x: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if x == lambda.n() {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for i in 0..lambda.len() {
            let len = rows[i].len();
            let fits = len < lambda.part(i) && (i == 0 || rows[i - 1].len() > len);
            if fits {
                rows[i].push(x);
                go(lambda, x + 1, rows, out);
                rows[i].pop();
            }
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, &mut vec![Vec::new(); lambda.len()], &mut out);
    out
}

/// `S^λ`, spanned by standard polytabloids inside the tabloid module.
pub fn specht_general(lambda: &Partition) -> Result<RepModule> {
    let m = tabloid_module(lambda)?;
    let Some(Ambient::Tabloids(tab)) = m.provenance.as_ref().map(|p| p.ambient().as_ref()) else {
        unreachable!("tabloid module has a tabloid ambient")
    };
    let std = standard_tableaux(lambda);
    let vs: Vec<BitVec> = std.iter().map(|t| polytabloid(tab, t)).collect();
    let span = Subspace::from_vectors(tab.len(), &vs);
    if span.dim() != std.len() {
        return Err(Error::InvalidArgument(format!(
            "standard polytabloids of {lambda:?} span {} < {}",
            span.dim(),
            std.len()
        )));
    }
    m.submodule(&span, &format!("S^({lambda})"))
}

/// `D^λ = S^λ / (S^λ ∩ S^λ⊥)` for 2-regular `λ`.
pub fn simple_head(lambda: &Partition) -> Result<RepModule> {
    if !lambda.is_p_regular(2) {
        return Err(Error::NotRegular { p: 2 });
    }
    if lambda.len() == 1 {
        let mut t = trivial_module(lambda.n());
        t.label = format!("D^({lambda})");
        return Ok(t);
    }
    head_by_form(&specht_general(lambda)?, &format!("D^({lambda})"))
}

/// Terms of `x = Σ σ g σ⁻¹` (mod 2) over `g ∈ S_{1,2,3}` and
/// `σ ∈ S_{1,4} × S_{2,5} × S_{3,6}`, as permutations of 6 points.
pub fn x_element() -> Vec<Perm> {
    let sym3: Vec<Perm> = permutations_of(&[0, 1, 2])
        .into_iter()
        .map(|arr| {
            let mut images: Vec<u32> = (0..6).collect();
            for (i, &a) in arr.iter().enumerate() {
                images[i] = a as u32;
            }
            Perm::from_images_unchecked(images)
        })
        .collect();
    let mut sigmas = Vec::new();
    for mask in 0..8u32 {
        let mut images: Vec<u32> = (0..6).collect();
        for k in 0..3 {
            if mask >> k & 1 == 1 {
                images.swap(k, k + 3);
            }
        }
        sigmas.push(Perm::from_images_unchecked(images));
    }
    let mut counts: BTreeMap<Perm, u32> = BTreeMap::new();
    for g in &sym3 {
        for s in &sigmas {
            *counts.entry(s.compose(g).compose(&s.inverse())).or_default() += 1;
        }
    }
    counts.into_iter().filter(|(_, c)| c % 2 == 1).map(|(p, _)| p).collect()
}

/// Outcome of applying the element `x` to `S^{(3,2,1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct XActionReport {
    /// Coefficient of `{s}` in `x·e_t`.
    pub coefficient: bool,
    /// Whether `x` kills every standard polytabloid.
    pub annihilates_specht: bool,
    pub terms: usize,
}

/// `t = [[1,4,6],[2,5],[3]]`, `s = [[1,2,4],[3,5],[6]]` in the tabloid module of `(3,2,1)`.
pub fn x_action_check() -> Result<XActionReport> {
    let lambda = Partition::new(vec![3, 2, 1]);
    let tab = TabloidModule::new(&lambda)?;
    let t = Tableau::from_one_indexed(&[&[1, 4, 6], &[2, 5], &[3]])?;
    let s = Tableau::from_one_indexed(&[&[1, 2, 4], &[3, 5], &[6]])?;
    let x = x_element();
    let apply_x = |v: &BitVec| {
        let mut out = BitVec::zeros(v.len());
        for g in &x {
            let pi: Vec<u32> = tab.keys.iter().map(|&k| tab.index_of_key(tab.image(g, k)) as u32).collect();
            out.xor_assign(&permute_vector(&pi, v));
        }
        out
    };
    let xet = apply_x(&polytabloid(&tab, &t));
    let coefficient = xet.get(tab.index_of_tableau(&s));
    let annihilates_specht = standard_tableaux(&lambda).iter().all(|u| apply_x(&polytabloid(&tab, u)).is_zero());
    Ok(XActionReport { coefficient, annihilates_specht, terms: x.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    fn naive_rank(m: &BitMatrix) -> usize {
        // Independent elimination on Vec<Vec<bool>>, column by column.
        let mut a: Vec<Vec<bool>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            if let Some(p) = (rank..a.len()).find(|&i| a[i][c]) {
                a.swap(rank, p);
                for i in 0..a.len() {
                    if i != rank && a[i][c] {
                        let pivot = a[rank].clone();
                        for (x, y) in a[i].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn colex_round_trip() {
        for n in 0..10 {
            for r in 0..=n {
                let s = SubsetIndexer::new(n, r);
                assert_eq!(s.len() as u128, binomial(n as u64, r as u64));
                for i in 0..s.len() {
                    assert_eq!(s.rank(s.unrank(i)), i);
                }
            }
        }
    }

    #[test]
    fn eta_adjoint_and_augmentation() {
        let a = eta(7, 2, 3).matrix;
        assert_eq!(eta(7, 3, 2).matrix, a.transpose());
        let e10 = eta(5, 1, 0).matrix;
        assert_eq!(e10.rows(), 1);
        assert_eq!(e10.mul_vec(&BitVec::unit(5, 3)), BitVec::ones(1));
    }

    #[test]
    fn wilson_formula_special_cases() {
        for n in [6usize, 8, 10, 12] {
            assert_eq!(wilson_rank(n, 1, 2).unwrap(), n as u128 - 1);
            assert_eq!(wilson_rank(n, 2, 3).unwrap(), 1 + (n * (n - 3) / 2) as u128);
            assert_eq!(wilson_rank(n, 1, 3).unwrap(), n as u128);
        }
        assert!(wilson_rank(5, 3, 2).is_err());
    }

    #[test]
    fn wilson_matches_naive_elimination() {
        for n in 1..=9 {
            for r in 0..=n {
                for s in r..=n - r {
                    let m = eta(n, r, s).matrix;
                    assert_eq!(naive_rank(&m) as u128, wilson_rank(n, r, s).unwrap(), "n={n} r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn incidence_compositions() {
        let e13 = eta(8, 1, 3).matrix;
        let e31 = eta(8, 3, 1).matrix;
        assert!(e31.mul(&e13).is_identity());
        for n in [6usize, 8, 10] {
            assert!(eta(n, 2, 3).matrix.mul(&eta(n, 1, 2).matrix).is_zero());
        }
        assert_eq!(eta(8, 1, 2).matrix.nullspace().dim(), 1);
    }

    #[test]
    fn two_row_specht_dimensions() {
        assert_eq!(specht_two_row(8, 2).unwrap().dim, 20);
        for n in 4..10 {
            assert_eq!(specht_two_row(n, 1).unwrap().dim, n - 1);
        }
    }

    #[test]
    fn special_vector_identities() {
        for n in [8usize, 10] {
            let t1 = t_vector(n, 1);
            assert_eq!(eta(n, 1, 3).matrix.mul_vec(&t1), t_vector(n, 3));
            assert_eq!(augmentation(n, 3).dim() as u128, binomial(n as u64, 3) - 1);
            let t2_in_aug = augmentation(n, 2).contains(&t_vector(n, 2));
            assert_eq!(t2_in_aug, (n * (n - 1) / 2) % 2 == 0);
        }
    }

    #[test]
    fn tabloid_counts() {
        let t = TabloidModule::new(&Partition::new(vec![3, 2, 1])).unwrap();
        assert_eq!(t.len(), 60);
        assert_eq!(t.rows(0), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
    }

    #[test]
    fn specht_dims_match_hook_lengths() {
        for n in 1..=7 {
            for lam in crate::partitions::enumerate_partitions(n, None) {
                let hooks: u128 = lam.hook_lengths().iter().flatten().map(|&h| h as u128).product();
                let expect = crate::factorial(n as u64) / hooks;
                assert_eq!(specht_general(&lam).unwrap().dim as u128, expect, "{lam:?}");
            }
        }
    }

    #[test]
    fn simple_head_dimensions() {
        assert_eq!(simple_head(&Partition::new(vec![5, 1])).unwrap().dim, 4);
        assert_eq!(simple_head(&Partition::new(vec![4, 2])).unwrap().dim, 4);
        assert_eq!(simple_head(&Partition::new(vec![3, 2, 1])).unwrap().dim, 16);
        assert_eq!(simple_head(&Partition::new(vec![6])).unwrap().dim, 1);
        assert!(simple_head(&Partition::new(vec![2, 2])).is_err());
        assert_eq!(two_row_simple(8, 1).unwrap().dim, 6);
    }

    #[test]
    fn x_action_coefficient() {
        let rep = x_action_check().unwrap();
        assert!(rep.coefficient);
        assert!(!rep.annihilates_specht);
    }
}
