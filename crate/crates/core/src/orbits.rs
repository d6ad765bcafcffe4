//! Orbit statistics `f_r`, `e_r` for the actions of `A_m` and `S_m` on
//! `k`-subsets and on set partitions into equal blocks, and the hypothesis
//! certificate built from them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::gf2::BitVec;
use crate::modstruct::fixed_points;
use crate::permmod::specht_two_row;
use crate::symgrp::{
    conj_classes, even_part_generators, group_generators, group_order, two_abelianization_dim_gens,
    young_subgroup_generators, GroupKind, Perm,
};
use crate::{binomial, factorial, Error, Result};

/// Default cap on the number of 3-subsets enumerated directly.
pub const DEFAULT_TRIPLE_CAP: u64 = 10_000_000;
/// Largest `Ω` built explicitly.
pub const OMEGA_CAP: u128 = 3_000_000;
/// Largest `n` for which `S_2` is built to compute fixed points directly.
const SPECHT_FIXED_MAX_N: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Variant {
    KSubsets { m: usize, k: usize },
    BlockPartitions { a: usize, b: usize },
}

/// The action of `A_m` or `S_m` on `k`-subsets or on partitions into `b` blocks of size `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EmbeddingSpec {
    pub variant: Variant,
    pub group: GroupKind,
}

impl EmbeddingSpec {
    pub fn ksubsets(m: usize, k: usize, group: GroupKind) -> Result<Self> {
        let s = EmbeddingSpec { variant: Variant::KSubsets { m, k }, group };
        s.validate()?;
        Ok(s)
    }

    pub fn blocks(a: usize, b: usize, group: GroupKind) -> Result<Self> {
        let s = EmbeddingSpec { variant: Variant::BlockPartitions { a, b }, group };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self.variant {
            Variant::KSubsets { m, k } => {
                if k < 2 || 2 * k >= m || m > 64 {
                    return Err(Error::InvalidArgument(format!(
                        "k-subsets need 2 ≤ k < m/2 and m ≤ 64, got m={m}, k={k}"
                    )));
                }
            }
            Variant::BlockPartitions { a, b } => {
                if a < 2 || b < 2 || a * b > 16 {
                    return Err(Error::InvalidArgument(format!(
                        "block partitions need a, b ≥ 2 and ab ≤ 16, got a={a}, b={b}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Degree `m` of the acting group.
    pub fn m(&self) -> usize {
        match self.variant {
            Variant::KSubsets { m, .. } => m,
            Variant::BlockPartitions { a, b } => a * b,
        }
    }

    /// Every valid spec of the given degree.
    pub fn all_for(m: usize, group: GroupKind) -> Vec<EmbeddingSpec> {
        let mut out = Vec::new();
        for k in 2..m {
            if 2 * k < m {
                out.extend(EmbeddingSpec::ksubsets(m, k, group));
            }
        }
        for b in 2..=m / 2 {
            if m.is_multiple_of(b) {
                out.extend(EmbeddingSpec::blocks(m / b, b, group));
            }
        }
        out
    }
}

impl fmt::Display for EmbeddingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.group {
            GroupKind::Alt => "alt",
            GroupKind::Sym => "sym",
        };
        match self.variant {
            Variant::KSubsets { m, k } => write!(f, "ksubsets:m={m},k={k},group={g}"),
            Variant::BlockPartitions { a, b } => write!(f, "blocks:a={a},b={b},group={g}"),
        }
    }
}

impl FromStr for EmbeddingSpec {
    type Err = Error;

    /// Parses `ksubsets:m=11,k=3,group=alt` or `blocks:a=3,b=4,group=sym`;
    /// the group defaults to `alt`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad embedding spec {s:?}"));
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let mut vals: Vec<(&str, &str)> = Vec::new();
        for kv in rest.split(',').filter(|t| !t.trim().is_empty()) {
            let (key, v) = kv.split_once('=').ok_or_else(bad)?;
            vals.push((key.trim(), v.trim()));
        }
        let get = |key: &str| -> Result<usize> {
            vals.iter().find(|(k, _)| *k == key).ok_or_else(bad)?.1.parse::<usize>().map_err(|_| bad())
        };
        let group = match vals.iter().find(|(k, _)| *k == "group").map(|x| x.1) {
            None | Some("alt") | Some("A") => GroupKind::Alt,
            Some("sym") | Some("S") => GroupKind::Sym,
            Some(_) => return Err(bad()),
        };
        if let Some((k, _)) = vals.iter().find(|(k, _)| !matches!(*k, "m" | "k" | "a" | "b" | "group")) {
            return Err(Error::Parse(format!("unknown key {k:?} in {s:?}")));
        }
        match kind.trim() {
            "ksubsets" => EmbeddingSpec::ksubsets(get("m")?, get("k")?, group),
            "blocks" => EmbeddingSpec::blocks(get("a")?, get("b")?, group),
            _ => Err(bad()),
        }
    }
}

/// `|Ω|`: `C(m, k)` or `(ab)! / ((a!)^b b!)`.
pub fn omega_size(spec: &EmbeddingSpec) -> u128 {
    match spec.variant {
        Variant::KSubsets { m, k } => binomial(m as u64, k as u64),
        Variant::BlockPartitions { a, b } => {
            factorial((a * b) as u64) / (factorial(a as u64).pow(b as u32) * factorial(b as u64))
        }
    }
}

/// The points of `Ω` with a canonical numbering.
///
/// A `k`-subset is its bit mask; a set partition is the block label of each
/// point (4 bits per point), blocks numbered by first occurrence.
#[derive(Clone, Debug)]
pub struct Omega {
    spec: EmbeddingSpec,
    keys: Vec<u64>,
}

fn normalize_labels(labels: &[u8]) -> u64 {
    let mut map = [u8::MAX; 16];
    let mut next = 0u8;
    let mut key = 0u64;
    for (x, &l) in labels.iter().enumerate() {
        if map[l as usize] == u8::MAX {
            map[l as usize] = next;
            next += 1;
        }
        key |= (map[l as usize] as u64) << (4 * x);
    }
    key
}

fn block_keys(a: usize, b: usize) -> Vec<u64> {
    fn rec(x: usize, m: usize, a: usize, b: usize, labels: &mut Vec<u8>, sizes: &mut Vec<usize>, out: &mut Vec<u64>) {
        if x == m {
            out.push(normalize_labels(labels));
            return;
        }
        for blk in 0..sizes.len() {
            if sizes[blk] < a {
                sizes[blk] += 1;
                labels.push(blk as u8);
                rec(x + 1, m, a, b, labels, sizes, out);
                labels.pop();
                sizes[blk] -= 1;
            }
        }
        if sizes.len() < b {
            sizes.push(1);
            labels.push((sizes.len() - 1) as u8);
            rec(x + 1, m, a, b, labels, sizes, out);
            labels.pop();
            sizes.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, a * b, a, b, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

impl Omega {
    pub fn new(spec: &EmbeddingSpec) -> Result<Self> {
        spec.validate()?;
        let size = omega_size(spec);
        if size > OMEGA_CAP {
            return Err(Error::CapExceeded { cap: OMEGA_CAP as usize, reached: size.min(usize::MAX as u128) as usize });
        }
        let mut keys = match spec.variant {
            Variant::KSubsets { m, k } => {
                let mut keys = Vec::with_capacity(size as usize);
                let mut mask: u64 = (1u64 << k) - 1;
                while mask < (1u64 << m) || (m == 64 && mask != 0) {
                    keys.push(mask);
                    // Gosper's hack: next mask with the same popcount.
                    let c = mask & mask.wrapping_neg();
                    let r = mask.wrapping_add(c);
                    if r == 0 {
                        break;
                    }
                    mask = (((r ^ mask) >> 2) / c) | r;
                }
                keys
            }
            Variant::BlockPartitions { a, b } => block_keys(a, b),
        };
        keys.sort_unstable();
        debug_assert_eq!(keys.len() as u128, size);
        Ok(Omega { spec: *spec, keys })
    }

    pub fn spec(&self) -> &EmbeddingSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> u64 {
        self.keys[i]
    }

    pub fn index_of(&self, key: u64) -> Option<usize> {
        self.keys.binary_search(&key).ok()
    }

    fn image_key(&self, g: &Perm, key: u64) -> u64 {
        let m = self.spec.m();
        match self.spec.variant {
            Variant::KSubsets { .. } => {
                let mut out = 0u64;
                let mut k = key;
                while k != 0 {
                    let x = k.trailing_zeros() as usize;
                    out |= 1u64 << g.apply(x);
                    k &= k - 1;
                }
                out
            }
            Variant::BlockPartitions { .. } => {
                let mut labels = [0u8; 16];
                for x in 0..m {
                    labels[g.apply(x)] = ((key >> (4 * x)) & 15) as u8;
                }
                normalize_labels(&labels[..m])
            }
        }
    }

    /// The permutation of `Ω` induced by `g ∈ S_m`.
    pub fn induced(&self, g: &Perm) -> Result<Perm> {
        if g.degree() != self.spec.m() {
            return Err(Error::DimensionMismatch { expected: self.spec.m(), found: g.degree() });
        }
        let images = self
            .keys
            .iter()
            .map(|&k| self.index_of(self.image_key(g, k)).map(|i| i as u32))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::ClosureFailure(format!("image of a point of Ω under {g} is not in Ω")))?;
        Perm::from_images(images)
    }

    /// Generators of the acting group, induced on `Ω`.
    pub fn generators(&self) -> Result<Vec<Perm>> {
        group_generators(self.spec.m(), self.spec.group).iter().map(|g| self.induced(g)).collect()
    }

    /// Human-readable form of a point, 1-indexed.
    pub fn describe(&self, i: usize) -> String {
        let key = self.keys[i];
        match self.spec.variant {
            Variant::KSubsets { m, .. } => {
                let xs: Vec<String> = (0..m).filter(|&x| key >> x & 1 == 1).map(|x| (x + 1).to_string()).collect();
                format!("{{{}}}", xs.join(","))
            }
            Variant::BlockPartitions { b, .. } => {
                let m = self.spec.m();
                let blocks: Vec<String> = (0..b as u64)
                    .map(|l| {
                        (0..m)
                            .filter(|&x| (key >> (4 * x)) & 15 == l)
                            .map(|x| (x + 1).to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                blocks.join("|")
            }
        }
    }
}

/// The permutation of `Ω` induced by `g`.
pub fn induced_perm(g: &Perm, spec: &EmbeddingSpec) -> Result<Perm> {
    Omega::new(spec)?.induced(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Method {
    Burnside,
    Enumeration,
    /// `f_3` is a lower bound given by distinct triple marks.
    Marks,
}

/// Orbit counts on `Ω_1, Ω_2, Ω_3` and their successive differences.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ActionStats {
    pub n: u64,
    pub f1: u64,
    pub f2: u64,
    pub f3: u64,
    pub e2: i64,
    pub e3: i64,
    pub method: Method,
}

impl ActionStats {
    pub fn new(n: u64, f: [u64; 3], method: Method) -> Self {
        ActionStats {
            n,
            f1: f[0],
            f2: f[1],
            f3: f[2],
            e2: f[1] as i64 - f[0] as i64,
            e3: f[2] as i64 - f[1] as i64,
            method,
        }
    }
}

/// `f_r = |X|⁻¹ Σ_classes |C| · #{r-subsets of Ω fixed by C}` for `r = 1, 2, 3`.
pub fn stats(spec: &EmbeddingSpec) -> Result<ActionStats> {
    let omega = Omega::new(spec)?;
    let m = spec.m();
    let order = group_order(m, spec.group);
    let mut sums = [0u128; 3];
    for class in conj_classes(m, spec.group) {
        let ct = omega.induced(&class.representative())?.cycle_type();
        for (r, s) in sums.iter_mut().enumerate() {
            *s += class.weight() * crate::symgrp::fixed_r_subsets(&ct, r + 1);
        }
    }
    let mut f = [0u64; 3];
    for r in 0..3 {
        if sums[r] % order != 0 {
            return Err(Error::ClosureFailure(format!("Burnside sum for r={} is not divisible by |X|", r + 1)));
        }
        f[r] = (sums[r] / order) as u64;
    }
    Ok(ActionStats::new(omega.len() as u64, f, Method::Burnside))
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    fn roots(mut self) -> Vec<u32> {
        (0..self.parent.len() as u32).map(|x| self.find(x)).collect()
    }
}

fn c2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

fn c3(x: u64) -> u64 {
    x * x.saturating_sub(1) * x.saturating_sub(2) / 6
}

fn sort3(mut a: u64, mut b: u64, mut c: u64) -> (u64, u64, u64) {
    if a > b {
        core::mem::swap(&mut a, &mut b);
    }
    if b > c {
        core::mem::swap(&mut b, &mut c);
    }
    if a > b {
        core::mem::swap(&mut a, &mut b);
    }
    (a, b, c)
}

/// Orbit representatives (smallest colex rank) for each `r`-subset, `r ≤ 3`.
///
/// `r`-subsets are numbered in colex order. Fails if `C(n, r)` exceeds `cap`.
pub fn subset_orbit_labels(n: usize, gens: &[Perm], r: usize, cap: u64) -> Result<Vec<u32>> {
    let total = binomial(n as u64, r as u64);
    if total > cap as u128 || total > u32::MAX as u128 {
        return Err(Error::CapExceeded { cap: cap as usize, reached: total.min(usize::MAX as u128) as usize });
    }
    if gens.iter().any(|g| g.degree() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: gens.iter().map(|g| g.degree()).find(|&d| d != n).unwrap_or(0),
        });
    }
    let mut uf = UnionFind::new(total as usize);
    let n = n as u64;
    match r {
        0 => {}
        1 => {
            for g in gens {
                for x in 0..n {
                    uf.union(x as u32, g.apply(x as usize) as u32);
                }
            }
        }
        2 => {
            let mut idx = 0u32;
            for b in 0..n {
                for a in 0..b {
                    for g in gens {
                        let (x, y) = (g.apply(a as usize) as u64, g.apply(b as usize) as u64);
                        let (x, y) = if x < y { (x, y) } else { (y, x) };
                        uf.union(idx, (c2(y) + x) as u32);
                    }
                    idx += 1;
                }
            }
        }
        3 => {
            let mut idx = 0u32;
            for c in 0..n {
                for b in 0..c {
                    for a in 0..b {
                        for g in gens {
                            let (x, y, z) = sort3(
                                g.apply(a as usize) as u64,
                                g.apply(b as usize) as u64,
                                g.apply(c as usize) as u64,
                            );
                            uf.union(idx, (c3(z) + c2(y) + x) as u32);
                        }
                        idx += 1;
                    }
                }
            }
        }
        _ => return Err(Error::InvalidArgument(format!("subset size {r} not supported"))),
    }
    Ok(uf.roots())
}

/// Number of orbits of `⟨gens⟩` on `r`-subsets of `n` points, `r ≤ 3`.
pub fn count_subset_orbits(n: usize, gens: &[Perm], r: usize, cap: u64) -> Result<u64> {
    let labels = subset_orbit_labels(n, gens, r, cap)?;
    Ok(labels.iter().enumerate().filter(|(i, &l)| *i as u32 == l).count() as u64)
}

/// `f_1, f_2, f_3` of a permutation group by direct orbit enumeration.
pub fn stats_enumerated(n: usize, gens: &[Perm], cap: u64) -> Result<ActionStats> {
    let f1 = count_subset_orbits(n, gens, 1, cap)?;
    let f2 = count_subset_orbits(n, gens, 2, cap)?;
    let f3 = count_subset_orbits(n, gens, 3, cap)?;
    Ok(ActionStats::new(n as u64, [f1, f2, f3], Method::Enumeration))
}

/// Burnside counts, cross-checked by enumeration when `C(n, 3) ≤ cap`.
pub fn stats_checked(spec: &EmbeddingSpec, cap: u64) -> Result<(ActionStats, Option<ActionStats>)> {
    let b = stats(spec)?;
    if binomial(b.n, 3) > cap as u128 {
        return Ok((b, None));
    }
    let omega = Omega::new(spec)?;
    let e = stats_enumerated(omega.len(), &omega.generators()?, cap)?;
    if (e.f1, e.f2, e.f3) != (b.f1, b.f2, b.f3) {
        return Err(Error::ClosureFailure(format!(
            "{spec}: Burnside gives ({}, {}, {}) but enumeration gives ({}, {}, {})",
            b.f1, b.f2, b.f3, e.f1, e.f2, e.f3
        )));
    }
    Ok((b, Some(e)))
}

/// `f_3 − f_2` for `S_{sa}` on partitions into `s` blocks of size `a`.
pub fn sym_blocks_e3(a: usize, s: usize) -> Result<i64> {
    Ok(stats(&EmbeddingSpec::blocks(a, s, GroupKind::Sym)?)?.e3)
}

/// Upper bounds derived from the point stabilizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HBound {
    /// `dim H¹(X, M_1) = dim Hom(X_1, F_2)`.
    pub dim_h1_m1: usize,
    /// `dim_h1_m1 + dim H²(X, F_2)` with the latter equal to 1.
    pub h_max: usize,
}

/// `dim H¹(X, M_1)` is 2 for two blocks of even size, 1 otherwise; `h ≤ dim H¹ + 1`.
pub fn h_bound(spec: &EmbeddingSpec) -> Result<HBound> {
    spec.validate()?;
    if spec.group != GroupKind::Alt || spec.m() < 5 {
        return Err(Error::InvalidArgument(format!("h bound needs X = A_m with m ≥ 5, got {spec}")));
    }
    let dim = match spec.variant {
        Variant::BlockPartitions { b: 2, .. } if spec.m().is_multiple_of(4) => 2,
        _ => 1,
    };
    Ok(HBound { dim_h1_m1: dim, h_max: dim + 1 })
}

/// Generators of the stabilizer in `X` of the first canonical point of `Ω`:
/// `{0..k−1}`, or the partition into consecutive blocks.
pub fn point_stabilizer_generators(spec: &EmbeddingSpec) -> Result<Vec<Perm>> {
    spec.validate()?;
    let m = spec.m();
    let full = match spec.variant {
        Variant::KSubsets { m, k } => young_subgroup_generators(&[k, m - k]),
        Variant::BlockPartitions { a, b } => {
            let mut gens = vec![Perm::transposition(m, 0, 1)];
            if a > 2 {
                gens.push(Perm::cycle_range(m, 0, a));
            }
            let swap: Vec<usize> = (0..m)
                .map(|x| {
                    if x < a {
                        x + a
                    } else if x < 2 * a {
                        x - a
                    } else {
                        x
                    }
                })
                .collect();
            gens.push(Perm::from_images(swap.iter().map(|&x| x as u32).collect())?);
            if b > 2 {
                gens.push(Perm::from_images((0..m).map(|x| ((x + a) % m) as u32).collect())?);
            }
            gens
        }
    };
    Ok(match spec.group {
        GroupKind::Sym => full,
        GroupKind::Alt => even_part_generators(&full),
    })
}

/// `dim Hom(X_1, F_2)` computed from stabilizer generators.
pub fn stabilizer_two_rank(spec: &EmbeddingSpec) -> Result<usize> {
    two_abelianization_dim_gens(spec.m(), &point_stabilizer_generators(spec)?)
}

/// An orbit on 2-subsets whose sum lies in `S_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ParityWitness {
    /// A pair in the orbit, 0-indexed.
    pub representative: (usize, usize),
    pub orbit_size: u64,
    pub orbits_checked: usize,
}

/// Finds an orbit on 2-subsets of even size and even degree at every point.
///
/// Its orbit sum is killed by `η_{2,0}` and `η_{2,1}`, so it is a nonzero
/// fixed vector in `S_2`.
pub fn pair_orbit_parity_witness(n: usize, gens: &[Perm], cap: u64) -> Result<Option<ParityWitness>> {
    let labels = subset_orbit_labels(n, gens, 2, cap)?;
    let mut ids: Vec<u32> = vec![u32::MAX; labels.len()];
    let mut roots: Vec<u32> = Vec::new();
    for (i, &l) in labels.iter().enumerate() {
        if i as u32 == l {
            ids[i] = roots.len() as u32;
            roots.push(l);
        }
    }
    let mut sizes = vec![0u64; roots.len()];
    let mut degrees: Vec<BitVec> = vec![BitVec::zeros(n); roots.len()];
    let mut idx = 0usize;
    for b in 0..n {
        for a in 0..b {
            let o = ids[labels[idx] as usize] as usize;
            sizes[o] += 1;
            degrees[o].toggle(a);
            degrees[o].toggle(b);
            idx += 1;
        }
    }
    for (o, &root) in roots.iter().enumerate() {
        if sizes[o].is_multiple_of(2) && degrees[o].is_zero() {
            let r = root as u64;
            let mut y = 1u64;
            while c2(y + 1) <= r {
                y += 1;
            }
            let x = r - c2(y);
            return Ok(Some(ParityWitness {
                representative: (x as usize, y as usize),
                orbit_size: sizes[o],
                orbits_checked: o + 1,
            }));
        }
    }
    Ok(None)
}

/// The parity witness for even `n`.
pub fn specht2_parity_witness(n: usize, gens: &[Perm], cap: u64) -> Result<Option<ParityWitness>> {
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("parity witness needs even n, got {n}")));
    }
    pair_orbit_parity_witness(n, gens, cap)
}

/// Source of the permutation action to certify.
#[derive(Clone, Debug)]
pub enum ActionSource {
    Spec(EmbeddingSpec),
    /// A raw action with an externally justified bound on `h(X)`.
    Raw {
        n: usize,
        gens: Vec<Perm>,
        h_max: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HypothesisCheck {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Outcome of checking the reduction hypotheses on `X ≤ S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Certificate {
    pub source: String,
    pub n: u64,
    pub stats: ActionStats,
    pub h_max: usize,
    pub checks: Vec<HypothesisCheck>,
    pub satisfied: bool,
}

fn check(name: &str, status: Status, detail: String) -> HypothesisCheck {
    HypothesisCheck { name: name.to_string(), status, detail }
}

/// Checks `f_1 = 1`, `e_3 ≥ h + 1` (with `h` replaced by an upper bound),
/// `f_2 ≥ 3` or `S_2^X ≠ 0`, and `X = O²(X)`.
///
/// When all pass, every irreducible `F S_n`-module `V` with `d_3(V) > d_1(V)`
/// restricts reducibly to `X`.
pub fn reduction_certificate(source: &ActionSource, assume_o2: bool, cap: u64) -> Result<Certificate> {
    let (label, n, gens, st, h_max, o2) = match source {
        ActionSource::Spec(spec) => {
            let st = stats(spec)?;
            let omega = Omega::new(spec)?;
            let h = match spec.group {
                GroupKind::Alt => h_bound(spec)?.h_max,
                // h is only bounded for A_m; S_m fails the O² test anyway.
                GroupKind::Sym => h_bound(&EmbeddingSpec { group: GroupKind::Alt, ..*spec })?.h_max,
            };
            let o2 = match (spec.group, assume_o2) {
                (GroupKind::Sym, _) => check("o2", Status::Fail, "S_m has a quotient of order 2".into()),
                (GroupKind::Alt, true) => check("o2", Status::Pass, "A_m is perfect (assumed)".into()),
                (GroupKind::Alt, false) => {
                    let d = two_abelianization_dim_gens(spec.m(), &group_generators(spec.m(), spec.group))?;
                    check("o2", if d == 0 { Status::Pass } else { Status::Fail }, format!("dim Hom(X, F_2) = {d}"))
                }
            };
            (spec.to_string(), omega.len(), omega.generators()?, st, h, o2)
        }
        ActionSource::Raw { n, gens, h_max } => {
            let st = stats_enumerated(*n, gens, cap)?;
            let o2 = if assume_o2 {
                check("o2", Status::Pass, "assumed".into())
            } else {
                let d = two_abelianization_dim_gens(*n, gens)?;
                check("o2", if d == 0 { Status::Pass } else { Status::Fail }, format!("dim Hom(X, F_2) = {d}"))
            };
            (format!("raw action on {n} points"), *n, gens.clone(), st, *h_max, o2)
        }
    };
    if n % 2 != 0 {
        return Err(Error::InvalidArgument(format!("reduction certificate needs even n, got {n}")));
    }
    let mut checks = Vec::new();
    checks.push(check("transitive", if st.f1 == 1 { Status::Pass } else { Status::Fail }, format!("f_1 = {}", st.f1)));
    checks.push(check(
        "e3_bound",
        if st.e3 > h_max as i64 { Status::Pass } else { Status::Fail },
        format!("e_3 = {} vs h_max + 1 = {}", st.e3, h_max + 1),
    ));
    let f2_check = if st.f2 >= 3 {
        check("f2_or_specht", Status::Pass, format!("f_2 = {}", st.f2))
    } else {
        match specht2_parity_witness(n, &gens, cap) {
            Ok(Some(w)) => check(
                "f2_or_specht",
                Status::Pass,
                format!(
                    "f_2 = {}; parity witness orbit of size {} through {:?}",
                    st.f2, w.orbit_size, w.representative
                ),
            ),
            Ok(None) | Err(Error::CapExceeded { .. }) if n <= SPECHT_FIXED_MAX_N => {
                let s2 = specht_two_row(n, 2)?;
                let d = fixed_points(&s2, &gens)?;
                check(
                    "f2_or_specht",
                    if d > 0 { Status::Pass } else { Status::Fail },
                    format!("f_2 = {}; dim S_2^X = {d}", st.f2),
                )
            }
            Ok(None) => check("f2_or_specht", Status::Unknown, format!("f_2 = {}; no parity witness", st.f2)),
            Err(Error::CapExceeded { .. }) => {
                check("f2_or_specht", Status::Unknown, format!("f_2 = {}; pair orbits beyond cap", st.f2))
            }
            Err(e) => return Err(e),
        }
    };
    checks.push(f2_check);
    checks.push(o2);
    let satisfied = checks.iter().all(|c| c.status == Status::Pass);
    Ok(Certificate { source: label, n: n as u64, stats: st, h_max, checks, satisfied })
}

/// One special embedding in the `f_2`/`e_3` bound battery.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundEntry {
    pub spec: String,
    pub n: u64,
    pub f2: Option<u64>,
    pub e3: Option<i64>,
    pub h_max: usize,
    pub excluded: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// For each special embedding of `A_m` with even `n` and `m` in range:
/// `f_2 ≥ 3` and `e_3 ≥ h_max + 2`, except the action on 2-subsets.
pub fn bound_battery(m_lo: usize, m_hi: usize) -> Result<BoundReport> {
    if m_lo < 11 || m_hi < m_lo {
        return Err(Error::InvalidArgument(format!("need 11 ≤ m_lo ≤ m_hi, got {m_lo}..{m_hi}")));
    }
    let mut entries = Vec::new();
    for m in m_lo..=m_hi {
        for spec in EmbeddingSpec::all_for(m, GroupKind::Alt) {
            let n = omega_size(&spec);
            if !n.is_multiple_of(2) {
                continue;
            }
            let h_max = h_bound(&spec)?.h_max;
            if matches!(spec.variant, Variant::KSubsets { k: 2, .. }) {
                entries.push(BoundEntry {
                    spec: spec.to_string(),
                    n: n as u64,
                    f2: None,
                    e3: None,
                    h_max,
                    excluded: Some("action on 2-subsets".into()),
                    pass: true,
                });
                continue;
            }
            let entry = match stats(&spec) {
                Ok(st) => BoundEntry {
                    spec: spec.to_string(),
                    n: n as u64,
                    f2: Some(st.f2),
                    e3: Some(st.e3),
                    h_max,
                    excluded: None,
                    pass: st.f2 >= 3 && st.e3 >= h_max as i64 + 2,
                },
                Err(Error::CapExceeded { .. }) => BoundEntry {
                    spec: spec.to_string(),
                    n: n as u64,
                    f2: None,
                    e3: None,
                    h_max,
                    excluded: Some("Ω beyond cap".into()),
                    pass: true,
                },
                Err(e) => return Err(e),
            };
            entries.push(entry);
        }
    }
    Ok(BoundReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgrp::{enumerate_group, sym_generators, two_abelianization_dim};
    use alloc::collections::BTreeSet;

    fn spec(s: &str) -> EmbeddingSpec {
        s.parse().unwrap()
    }

    #[test]
    fn omega_sizes() {
        assert_eq!(omega_size(&spec("ksubsets:m=5,k=2")), 10);
        assert_eq!(omega_size(&spec("blocks:a=2,b=5")), 945);
        // 9! / (6³ · 6)
        assert_eq!(omega_size(&spec("blocks:a=3,b=3")), 362_880 / (216 * 6));
        for s in ["ksubsets:m=9,k=4", "blocks:a=3,b=3", "blocks:a=2,b=4", "blocks:a=4,b=2"] {
            let sp = spec(s);
            assert_eq!(Omega::new(&sp).unwrap().len() as u128, omega_size(&sp));
        }
    }

    #[test]
    fn spec_round_trip_and_errors() {
        let s = spec("blocks:a=3,b=4,group=sym");
        assert_eq!(s.to_string().parse::<EmbeddingSpec>().unwrap(), s);
        assert!("ksubsets:m=6,k=3".parse::<EmbeddingSpec>().is_err());
        assert!("blocks:a=1,b=4".parse::<EmbeddingSpec>().is_err());
        assert!("ksubsets:m=6,k=2,x=1".parse::<EmbeddingSpec>().is_err());
    }

    #[test]
    fn transposition_on_pairs_of_four() {
        // Not a valid spec (k < m/2 fails), so build the action by hand.
        let om = Omega {
            spec: EmbeddingSpec { variant: Variant::KSubsets { m: 4, k: 2 }, group: GroupKind::Sym },
            keys: {
                let mut v: Vec<u64> = (0u64..16).filter(|x| x.count_ones() == 2).collect();
                v.sort();
                v
            },
        };
        let g = Perm::transposition(4, 0, 1);
        let h = om.induced(&g).unwrap();
        let idx = |a: u32, b: u32| om.index_of((1 << a) | (1 << b)).unwrap();
        assert_eq!(h.apply(idx(0, 1)), idx(0, 1));
        assert_eq!(h.apply(idx(2, 3)), idx(2, 3));
        assert_eq!(h.apply(idx(0, 2)), idx(1, 2));
        assert_eq!(h.apply(idx(0, 3)), idx(1, 3));
        assert!(om.induced(&Perm::identity(4)).unwrap().is_identity());
    }

    #[test]
    fn f2_of_ksubsets_is_k() {
        for m in 6..=12 {
            for k in 2..m {
                if 2 * k < m {
                    assert_eq!(stats(&EmbeddingSpec::ksubsets(m, k, GroupKind::Alt).unwrap()).unwrap().f2, k as u64);
                }
            }
        }
    }

    #[test]
    fn e2_of_small_block_actions() {
        for ((a, b), e2) in [((3, 2), 0), ((2, 3), 1), ((4, 2), 1), ((5, 2), 1), ((3, 3), 3)] {
            assert_eq!(stats(&EmbeddingSpec::blocks(a, b, GroupKind::Alt).unwrap()).unwrap().e2, e2, "({a},{b})");
        }
    }

    #[test]
    fn burnside_matches_enumeration() {
        for m in 5..=9 {
            for group in [GroupKind::Alt, GroupKind::Sym] {
                for sp in EmbeddingSpec::all_for(m, group) {
                    let (_, e) = stats_checked(&sp, 2_000_000).unwrap();
                    assert!(e.is_some() || omega_size(&sp) > 200, "{sp}");
                }
            }
        }
    }

    #[test]
    fn sym_orbits_refine_alt_orbits() {
        for m in 6..=10 {
            for sp in EmbeddingSpec::all_for(m, GroupKind::Alt) {
                let a = stats(&sp).unwrap();
                let s = stats(&EmbeddingSpec { group: GroupKind::Sym, ..sp }).unwrap();
                assert!(s.f2 <= a.f2 && s.f3 <= a.f3, "{sp}");
            }
        }
    }

    #[test]
    fn four_two_blocks_triple_orbits() {
        // Frozen from an independent enumeration: A_8 has 6 orbits, S_8 only 5.
        for (g, f3) in [(GroupKind::Alt, 6), (GroupKind::Sym, 5)] {
            let (b, e) = stats_checked(&EmbeddingSpec::blocks(4, 2, g).unwrap(), DEFAULT_TRIPLE_CAP).unwrap();
            assert_eq!(b.f3, f3);
            assert_eq!(e.unwrap().f3, f3);
        }
    }

    #[test]
    fn degree_is_at_least_m_choose_2() {
        for m in 8..=16 {
            for sp in EmbeddingSpec::all_for(m, GroupKind::Alt) {
                assert!(omega_size(&sp) >= (m * (m - 1) / 2) as u128, "{sp}");
            }
        }
    }

    #[test]
    fn ksubsets_e3_bounds() {
        for m in 6..=12 {
            for sp in EmbeddingSpec::all_for(m, GroupKind::Alt) {
                if let Variant::KSubsets { k, .. } = sp.variant {
                    let e3 = stats(&sp).unwrap().e3;
                    assert!(e3 >= 4 || (k == 2 && e3 == 3), "{sp}: e3 = {e3}");
                }
            }
        }
    }

    #[test]
    fn stabilizer_rank_matches_bound() {
        for m in 5..=10 {
            for sp in EmbeddingSpec::all_for(m, GroupKind::Alt) {
                assert_eq!(stabilizer_two_rank(&sp).unwrap(), h_bound(&sp).unwrap().dim_h1_m1, "{sp}");
            }
        }
    }

    #[test]
    fn stabilizer_generators_fix_the_base_point() {
        for m in 5..=8 {
            for sp in EmbeddingSpec::all_for(m, GroupKind::Alt) {
                let om = Omega::new(&sp).unwrap();
                let base = match sp.variant {
                    Variant::KSubsets { k, .. } => om.index_of((1u64 << k) - 1).unwrap(),
                    Variant::BlockPartitions { a, .. } => {
                        let labels: Vec<u8> = (0..m).map(|x| (x / a) as u8).collect();
                        om.index_of(normalize_labels(&labels)).unwrap()
                    }
                };
                let stab = point_stabilizer_generators(&sp).unwrap();
                for g in &stab {
                    assert!(g.is_even());
                    assert_eq!(om.induced(g).unwrap().apply(base), base);
                }
                // Orbit-stabilizer: |X| = |Ω| · |X_ω|.
                let order = crate::symgrp::StabChain::from_generators(m, &stab).order();
                assert_eq!(order * om.len() as u128, group_order(m, GroupKind::Alt), "{sp}");
                if m <= 7 {
                    let elems = enumerate_group(&stab, 10_000).unwrap();
                    assert_eq!(two_abelianization_dim(&elems).unwrap(), h_bound(&sp).unwrap().dim_h1_m1);
                }
            }
        }
    }

    #[test]
    fn parity_witness_behaviour() {
        let n = 8;
        assert!(specht2_parity_witness(n, &sym_generators(n), 1_000_000).unwrap().is_none());
        assert!(specht2_parity_witness(7, &sym_generators(7), 1_000_000).is_err());
        // Pairs of 6 points under S_6: n = 15 is odd, so use 2-subsets of 8 points, n = 28.
        let sp = EmbeddingSpec::ksubsets(8, 2, GroupKind::Alt).unwrap();
        let om = Omega::new(&sp).unwrap();
        let w = specht2_parity_witness(om.len(), &om.generators().unwrap(), 1_000_000).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn witness_orbit_sum_is_in_specht() {
        let sp = EmbeddingSpec::ksubsets(8, 2, GroupKind::Alt).unwrap();
        let om = Omega::new(&sp).unwrap();
        let gens = om.generators().unwrap();
        let n = om.len();
        let w = specht2_parity_witness(n, &gens, 1_000_000).unwrap().unwrap();
        let labels = subset_orbit_labels(n, &gens, 2, 1_000_000).unwrap();
        let root = labels[(c2(w.representative.1 as u64) + w.representative.0 as u64) as usize];
        let v =
            BitVec::from_indices(labels.len(), labels.iter().enumerate().filter(|(_, &l)| l == root).map(|(i, _)| i));
        let s2 = crate::permmod::specht_two_row_subspace(n, 2);
        // Pair indices here are colex ranks, the same numbering as M_2.
        assert!(s2.contains(&v));
    }

    #[test]
    fn certificate_examples() {
        let c =
            reduction_certificate(&ActionSource::Spec(spec("ksubsets:m=12,k=3")), true, DEFAULT_TRIPLE_CAP).unwrap();
        assert!(c.satisfied, "{c:?}");
        let c =
            reduction_certificate(&ActionSource::Spec(spec("ksubsets:m=8,k=2")), false, DEFAULT_TRIPLE_CAP).unwrap();
        assert_eq!(c.stats.f2, 2);
        assert_eq!(c.stats.e3, 3);
        assert!(c.satisfied, "{c:?}");
        let triv = ActionSource::Raw { n: 6, gens: vec![Perm::identity(6)], h_max: 2 };
        let c = reduction_certificate(&triv, true, DEFAULT_TRIPLE_CAP).unwrap();
        assert!(!c.satisfied);
        assert_eq!(c.checks[0].status, Status::Fail);
    }

    #[test]
    fn enumerated_orbits_on_small_sets() {
        let g = sym_generators(6);
        assert_eq!(count_subset_orbits(6, &g, 3, 1000).unwrap(), 1);
        let c = vec![Perm::cycle_range(6, 0, 6)];
        // Cyclic group of order 6 on 3-subsets: (20 + 2 + 2) / 6 = 4 orbits.
        assert_eq!(count_subset_orbits(6, &c, 3, 1000).unwrap(), 4);
        assert!(count_subset_orbits(300, &[Perm::identity(300)], 3, 1000).is_err());
        let distinct: BTreeSet<u32> = subset_orbit_labels(6, &c, 2, 1000).unwrap().into_iter().collect();
        assert_eq!(distinct.len(), 3);
    }
}
