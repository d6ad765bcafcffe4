//! Permutations, conjugacy classes of symmetric and alternating groups, and
//! small-group closure utilities.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::partitions::{enumerate_partitions, Partition};
use crate::{factorial, Error, Result};

/// A permutation of `{0, …, deg−1}` stored by images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(deg: usize) -> Self {
        Perm { images: (0..deg as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation from 0-indexed cycles.
    pub fn from_cycles(deg: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..deg as u32).collect();
        let mut used = vec![false; deg];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= deg || used[x] {
                    return Err(Error::InvalidArgument(format!("bad cycle {c:?} on {deg} points")));
                }
                used[x] = true;
                images[x] = c[(i + 1) % c.len()] as u32;
            }
        }
        Ok(Perm { images })
    }

    /// The cycle `(start, start+1, …, end−1)`.
    pub fn cycle_range(deg: usize, start: usize, end: usize) -> Self {
        let mut images: Vec<u32> = (0..deg as u32).collect();
        if end > start + 1 {
            for x in start..end {
                images[x] = if x + 1 == end { start as u32 } else { x as u32 + 1 };
            }
        }
        Perm { images }
    }

    pub fn transposition(deg: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<u32> = (0..deg as u32).collect();
        images.swap(a, b);
        Perm { images }
    }

    /// Parses 1-indexed cycle notation such as `"(1 2)(3 4 5)"`.
    pub fn parse_cycles(s: &str, deg: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = &open[..close];
            let pts = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(x) if x >= 1 => Ok(x - 1),
                    _ => Err(Error::Parse(format!("bad point {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(deg, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut out = Perm::identity(self.degree());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Cycles of length at least 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Partition {
        let moved: usize = self.cycles().iter().map(|c| c.len()).sum();
        let mut parts: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        parts.extend(core::iter::repeat_n(1, self.degree() - moved));
        Partition::new(parts)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// `+1` for even permutations, `−1` for odd ones.
    pub fn sign(&self) -> i8 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    /// Restriction to a degree `deg ≥` current, fixing the new points.
    pub fn extend(&self, deg: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..deg as u32);
        Perm { images }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which group acts on the `m` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GroupKind {
    Sym,
    Alt,
}

/// `(0 1)` and `(0 1 … m−1)`.
pub fn sym_generators(m: usize) -> Vec<Perm> {
    if m < 2 {
        return vec![Perm::identity(m)];
    }
    vec![Perm::transposition(m, 0, 1), Perm::cycle_range(m, 0, m)]
}

/// `(0 1 2)` together with an even long cycle.
pub fn alt_generators(m: usize) -> Vec<Perm> {
    if m < 3 {
        return vec![Perm::identity(m)];
    }
    let long = if m % 2 == 1 { Perm::cycle_range(m, 0, m) } else { Perm::cycle_range(m, 1, m) };
    vec![Perm::cycle_range(m, 0, 3), long]
}

pub fn group_generators(m: usize, kind: GroupKind) -> Vec<Perm> {
    match kind {
        GroupKind::Sym => sym_generators(m),
        GroupKind::Alt => alt_generators(m),
    }
}

pub fn group_order(m: usize, kind: GroupKind) -> u128 {
    match kind {
        GroupKind::Sym => factorial(m as u64),
        GroupKind::Alt if m < 2 => 1,
        GroupKind::Alt => factorial(m as u64) / 2,
    }
}

/// A conjugacy class described by its cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConjClassInfo {
    pub cycle_type: Partition,
    /// Size of the class; for a class that splits in `A_m` this is the size
    /// of one of the two halves.
    pub size: u128,
    pub even: bool,
    pub splits_in_am: bool,
}

impl ConjClassInfo {
    /// Total number of group elements of this cycle type.
    pub fn weight(&self) -> u128 {
        if self.splits_in_am {
            2 * self.size
        } else {
            self.size
        }
    }

    /// Cycles laid out left to right in decreasing length.
    pub fn representative(&self) -> Perm {
        type_representative(&self.cycle_type)
    }
}

pub fn type_representative(ct: &Partition) -> Perm {
    let m = ct.n();
    let mut images: Vec<u32> = (0..m as u32).collect();
    let mut start = 0;
    for &len in ct.parts() {
        for x in start..start + len {
            images[x] = if x + 1 == start + len { start as u32 } else { x as u32 + 1 };
        }
        start += len;
    }
    Perm { images }
}

/// `z_λ = Π_j j^{a_j} a_j!`.
pub fn centralizer_order(ct: &Partition) -> u128 {
    let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
    for &x in ct.parts() {
        *mult.entry(x).or_default() += 1;
    }
    mult.iter().map(|(&j, &a)| (j as u128).pow(a as u32) * factorial(a)).product()
}

fn type_is_even(ct: &Partition) -> bool {
    ct.parts().iter().map(|&x| x - 1).sum::<usize>() % 2 == 0
}

fn type_splits(ct: &Partition) -> bool {
    ct.n() >= 2 && ct.parts().iter().all(|&x| x % 2 == 1) && ct.parts().windows(2).all(|w| w[0] != w[1])
}

pub fn conj_classes(m: usize, kind: GroupKind) -> Vec<ConjClassInfo> {
    let mfact = factorial(m as u64);
    enumerate_partitions(m, None)
        .filter_map(|ct| {
            let even = type_is_even(&ct);
            let full = mfact / centralizer_order(&ct);
            match kind {
                GroupKind::Sym => Some(ConjClassInfo { cycle_type: ct, size: full, even, splits_in_am: false }),
                GroupKind::Alt if !even => None,
                GroupKind::Alt => {
                    let splits = type_splits(&ct);
                    let size = if splits { full / 2 } else { full };
                    Some(ConjClassInfo { cycle_type: ct, size, even, splits_in_am: splits })
                }
            }
        })
        .collect()
}

/// Number of `r`-subsets fixed setwise by a permutation of the given cycle
/// type: the coefficient of `x^r` in `Π_c (1 + x^{len c})`.
pub fn fixed_r_subsets(cycle_type: &Partition, r: usize) -> u128 {
    let mut poly = vec![0u128; r + 1];
    poly[0] = 1;
    for &len in cycle_type.parts() {
        if len > r {
            continue;
        }
        for d in (len..=r).rev() {
            poly[d] += poly[d - len];
        }
    }
    poly[r]
}

/// All elements generated by `gens`, by breadth-first closure.
pub fn enumerate_group(gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let deg = gens.first().map_or(0, |g| g.degree());
    let id = Perm::identity(deg);
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for g in gens {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded { cap, reached: out.len() + 1 });
                }
                seen.insert(y.clone());
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// `dim Hom(G, F_2)`: the 2-rank of `G / ⟨g² : g ∈ G⟩`.
///
/// The subgroup generated by squares contains every commutator, so the
/// quotient is the largest elementary abelian 2-quotient.
pub fn two_abelianization_dim(elements: &[Perm]) -> Result<usize> {
    let order = elements.len();
    if order == 0 {
        return Err(Error::InvalidArgument("empty group".into()));
    }
    let deg = elements[0].degree();
    let mut sub: BTreeSet<Perm> = BTreeSet::new();
    sub.insert(Perm::identity(deg));
    let mut gens: Vec<Perm> = Vec::new();
    for g in elements {
        let s = g.compose(g);
        if sub.contains(&s) {
            continue;
        }
        gens.push(s);
        let all = enumerate_group(&gens, order)?;
        sub = all.into_iter().collect();
    }
    let index = order / sub.len();
    if index * sub.len() != order || !index.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "element list of size {order} is not a group (square subgroup has order {})",
            sub.len()
        )));
    }
    Ok(index.trailing_zeros() as usize)
}

struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `trans[x]` maps the base point to `x`.
    trans: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

/// A base and strong generating set built by the Schreier–Sims algorithm,
/// with base `0, 1, …, deg−1`.
pub struct StabChain {
    deg: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(deg: usize) -> Self {
        let levels = (0..deg)
            .map(|b| {
                let mut trans = vec![None; deg];
                trans[b] = Some(Perm::identity(deg));
                Level { base: b, gens: Vec::new(), trans, orbit: vec![b] }
            })
            .collect();
        StabChain { deg, levels }
    }

    pub fn from_generators(deg: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain::new(deg);
        for g in gens {
            chain.add(g.clone());
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    fn sift(&self, from: usize, g: &Perm) -> Perm {
        let mut g = g.clone();
        for level in &self.levels[from..] {
            let x = g.apply(level.base);
            match &level.trans[x] {
                Some(u) => g = u.inverse().compose(&g),
                None => return g,
            }
        }
        g
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.deg && self.sift(0, g).is_identity()
    }

    pub fn add(&mut self, g: Perm) {
        assert_eq!(g.degree(), self.deg);
        self.extend(0, g);
    }

    fn extend(&mut self, i: usize, g: Perm) {
        if i >= self.levels.len() || self.sift(i, &g).is_identity() {
            return;
        }
        self.levels[i].gens.push(g);
        self.rebuild_orbit(i);
        let level = &self.levels[i];
        let mut schreier = Vec::new();
        for &x in &level.orbit {
            let ux = level.trans[x].as_ref().expect("orbit point");
            for s in &level.gens {
                let y = s.apply(x);
                let uy = level.trans[y].as_ref().expect("orbit closed");
                schreier.push(uy.inverse().compose(&s.compose(ux)));
            }
        }
        for h in schreier {
            if !h.is_identity() {
                self.extend(i + 1, h);
            }
        }
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let level = &mut self.levels[i];
        let mut head = 0;
        while head < level.orbit.len() {
            let x = level.orbit[head];
            head += 1;
            for s in &level.gens {
                let y = s.apply(x);
                if level.trans[y].is_none() {
                    let ux = level.trans[x].as_ref().expect("orbit point");
                    level.trans[y] = Some(s.compose(ux));
                    level.orbit.push(y);
                }
            }
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// All strong generators.
    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }
}

/// Generators of the normal closure of `seeds` in the group generated by `gens`.
pub fn normal_closure(deg: usize, gens: &[Perm], seeds: &[Perm]) -> StabChain {
    let mut chain = StabChain::new(deg);
    let mut queue: Vec<Perm> = seeds.to_vec();
    while let Some(x) = queue.pop() {
        if chain.contains(&x) {
            continue;
        }
        chain.add(x.clone());
        for g in gens {
            queue.push(g.compose(&x).compose(&g.inverse()));
        }
    }
    chain
}

/// `dim Hom(G, F_2)` for `G = ⟨gens⟩`, as `log₂ [G : N]` where `N` is the
/// normal closure of the squares and commutators of the generators.
pub fn two_abelianization_dim_gens(deg: usize, gens: &[Perm]) -> Result<usize> {
    let g = StabChain::from_generators(deg, gens);
    let mut seeds = Vec::new();
    for (i, s) in gens.iter().enumerate() {
        seeds.push(s.compose(s));
        for t in &gens[i + 1..] {
            seeds.push(s.compose(t).compose(&s.inverse()).compose(&t.inverse()));
        }
    }
    let n = normal_closure(deg, gens, &seeds);
    let (go, no) = (g.order(), n.order());
    let index = go / no;
    if index * no != go || !index.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("index {go}/{no} is not a power of two")));
    }
    Ok(index.trailing_zeros() as usize)
}

/// Generators of the even part of `⟨gens⟩`, by Schreier's lemma over the
/// transversal `{1, t}` with `t` the first odd generator.
pub fn even_part_generators(gens: &[Perm]) -> Vec<Perm> {
    let Some(t) = gens.iter().find(|g| !g.is_even()) else {
        return gens.to_vec();
    };
    let ti = t.inverse();
    let mut out = Vec::new();
    for s in gens {
        if s.is_even() {
            out.push(s.clone());
            out.push(t.compose(s).compose(&ti));
        } else {
            out.push(s.compose(&ti));
            out.push(t.compose(s));
        }
    }
    out.retain(|p| !p.is_identity());
    out.sort();
    out.dedup();
    if out.is_empty() {
        out.push(Perm::identity(t.degree()));
    }
    out
}

/// Generators of `S_{c_1} × S_{c_2} × …` on consecutive blocks of points.
pub fn young_subgroup_generators(sizes: &[usize]) -> Vec<Perm> {
    let deg: usize = sizes.iter().sum();
    let mut out = Vec::new();
    let mut start = 0;
    for &c in sizes {
        if c >= 2 {
            out.push(Perm::transposition(deg, start, start + 1));
            if c > 2 {
                out.push(Perm::cycle_range(deg, start, start + c));
            }
        }
        start += c;
    }
    if out.is_empty() {
        out.push(Perm::identity(deg));
    }
    out
}
