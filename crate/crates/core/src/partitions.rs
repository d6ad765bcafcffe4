//! Integer partitions, p-rims and the Mullineux involution.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the input and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Accepts only weakly decreasing positive parts.
    pub fn try_from_parts(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The i-th part, zero beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// No part occurs `p` or more times; every partition is 0-regular.
    pub fn is_p_regular(&self, p: u32) -> bool {
        if p == 0 {
            return true;
        }
        let p = p as usize;
        let mut run = 1;
        for w in self.parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
                if run >= p {
                    return false;
                }
            } else {
                run = 1;
            }
        }
        p > 1 || self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols).map(|j| self.parts.iter().take_while(|&&x| x > j).count()).collect();
        Partition { parts }
    }

    /// Whether every row of `other` is at most the matching row of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Hook lengths row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let c = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| (0..row).map(|j| row - j + c.parts[j] - i - 1).collect())
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::try_from_parts(parts)
    }
}

/// Iterator over the partitions of `n` in reverse-lexicographic order.
pub struct Partitions {
    current: Option<Vec<usize>>,
    p: u32,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            let cur = self.current.take()?;
            self.current = next_revlex(&cur);
            let part = Partition { parts: cur };
            if part.is_p_regular(self.p) {
                return Some(part);
            }
        }
    }
}

fn next_revlex(a: &[usize]) -> Option<Vec<usize>> {
    // Find the last part larger than 1, decrement it, and refill greedily.
    let k = a.iter().rposition(|&x| x > 1)?;
    let mut out = a[..k].to_vec();
    let m = a[k] - 1;
    let mut rest = a[k + 1..].len() + 1;
    out.push(m);
    while rest > 0 {
        let t = rest.min(m);
        out.push(t);
        rest -= t;
    }
    Some(out)
}

/// Partitions of `n`, restricted to `p`-regular ones when `p` is given and nonzero.
pub fn enumerate_partitions(n: usize, p: Option<u32>) -> Partitions {
    let current = if n == 0 { Some(Vec::new()) } else { Some(vec![n]) };
    Partitions { current, p: p.unwrap_or(0) }
}

/// One column `(h, r)` of a Mullineux symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SymbolColumn {
    pub h: usize,
    pub r: usize,
}

/// The Mullineux symbol: rim sizes and row counts of successive p-rim strips.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MullineuxSymbol {
    pub p: u32,
    pub columns: Vec<SymbolColumn>,
}

impl MullineuxSymbol {
    pub fn n(&self) -> usize {
        self.columns.iter().map(|c| c.h).sum()
    }

    /// `ε_i`: zero when `p` divides `h_i`, one otherwise.
    pub fn epsilon(&self, i: usize) -> usize {
        usize::from(!self.columns[i].h.is_multiple_of(self.p as usize))
    }

    /// Columns `(h_i, h_i − r_i + ε_i)`.
    pub fn dual(&self) -> MullineuxSymbol {
        let columns = (0..self.columns.len())
            .map(|i| {
                let c = self.columns[i];
                SymbolColumn { h: c.h, r: c.h + self.epsilon(i) - c.r }
            })
            .collect();
        MullineuxSymbol { p: self.p, columns }
    }

    pub fn parse(s: &str, p: u32) -> Result<Self> {
        let columns = s
            .split(',')
            .map(|t| {
                let (h, r) =
                    t.trim().split_once('/').ok_or_else(|| Error::Parse(format!("column {t:?} is not h/r")))?;
                let h = h.trim().parse().map_err(|_| Error::Parse(format!("bad h in {t:?}")))?;
                let r = r.trim().parse().map_err(|_| Error::Parse(format!("bad r in {t:?}")))?;
                Ok(SymbolColumn { h, r })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MullineuxSymbol { p, columns })
    }
}

impl fmt::Display for MullineuxSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}/{}", c.h, c.r)?;
        }
        Ok(())
    }
}

/// Number of p-rim cells removed from each row.
fn p_rim_row_counts(lambda: &Partition, p: usize) -> Vec<usize> {
    let rows = lambda.len();
    let mut removed = vec![0; rows];
    let mut row = 0;
    while row < rows {
        // Walk the rim from the rightmost cell of `row`, taking up to p cells.
        let mut left = p;
        let mut i = row;
        loop {
            let stop = lambda.part(i + 1).saturating_sub(1);
            let avail = lambda.part(i) - stop;
            let take = avail.min(left);
            removed[i] += take;
            left -= take;
            if left == 0 || i + 1 == rows {
                break;
            }
            if take < avail {
                break;
            }
            i += 1;
        }
        row = i + 1;
    }
    removed
}

/// Strips the p-rim: returns `(h, r, remainder)`.
pub fn p_rim_strip(lambda: &Partition, p: u32) -> Result<(usize, usize, Partition)> {
    if lambda.is_empty() {
        return Err(Error::InvalidArgument("empty partition has no p-rim".into()));
    }
    if p < 2 {
        return Err(Error::InvalidArgument(format!("characteristic {p} < 2")));
    }
    let removed = p_rim_row_counts(lambda, p as usize);
    let h = removed.iter().sum();
    let rest = lambda.parts.iter().zip(&removed).map(|(a, b)| a - b).collect();
    Ok((h, lambda.len(), Partition::new(rest)))
}

pub fn mullineux_symbol(lambda: &Partition, p: u32) -> Result<MullineuxSymbol> {
    if !lambda.is_p_regular(p) || p < 2 {
        return Err(Error::NotRegular { p });
    }
    let mut columns = Vec::new();
    let mut cur = lambda.clone();
    while !cur.is_empty() {
        let (h, r, rest) = p_rim_strip(&cur, p)?;
        columns.push(SymbolColumn { h, r });
        cur = rest;
    }
    Ok(MullineuxSymbol { p, columns })
}

/// All `λ ⊇ μ` with exactly `r` rows and `|λ| = total`.
fn extensions(mu: &Partition, r: usize, total: usize) -> Vec<Partition> {
    fn go(mu: &Partition, r: usize, i: usize, left: usize, cap: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == r {
            if left == 0 {
                out.push(Partition { parts: acc.clone() });
            }
            return;
        }
        let lo = mu.part(i).max(1);
        // Remaining rows each need at least their μ entry (and at least 1).
        let need: usize = (i + 1..r).map(|j| mu.part(j).max(1)).sum();
        if left < lo + need {
            return;
        }
        let hi = cap.min(left - need);
        for x in (lo..=hi).rev() {
            acc.push(x);
            go(mu, r, i + 1, left - x, x, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if r < mu.len() || total < mu.n() {
        return out;
    }
    go(mu, r, 0, total, total, &mut Vec::new(), &mut out);
    out
}

/// Rebuilds the partition from its symbol, last column first.
pub fn partition_from_symbol(sym: &MullineuxSymbol) -> Result<Partition> {
    let p = sym.p;
    if p < 2 {
        return Err(Error::InvalidSymbol(format!("characteristic {p}")));
    }
    let mut mu = Partition::empty();
    for (k, col) in sym.columns.iter().enumerate().rev() {
        if col.h == 0 || col.r == 0 {
            return Err(Error::InvalidSymbol(format!("column {} is {}/{}", k + 1, col.h, col.r)));
        }
        let mut found: Option<Partition> = None;
        for lam in extensions(&mu, col.r, mu.n() + col.h) {
            if !lam.is_p_regular(p) {
                continue;
            }
            let (h, _, rest) = p_rim_strip(&lam, p)?;
            if h == col.h && rest == mu {
                if found.is_some() {
                    return Err(Error::AmbiguousSymbol(format!("{sym} at column {}", k + 1)));
                }
                found = Some(lam);
            }
        }
        mu = found.ok_or_else(|| Error::InvalidSymbol(format!("{sym} at column {}", k + 1)))?;
    }
    Ok(mu)
}

/// `λ^M`, the image under the Mullineux involution.
pub fn mullineux(lambda: &Partition, p: u32) -> Result<Partition> {
    partition_from_symbol(&mullineux_symbol(lambda, p)?.dual())
}

/// `α_n`: `(k+1, k−1)` for `n = 2k`, `(k+1, k)` for `n = 2k+1`.
pub fn basic_spin(n: usize) -> Partition {
    let k = n / 2;
    if n.is_multiple_of(2) {
        Partition::new(vec![k + 1, k.saturating_sub(1)])
    } else {
        Partition::new(vec![k + 1, k])
    }
}

/// `2^⌊(n−1)/2⌋`.
pub fn basic_spin_dim(n: usize) -> u128 {
    1u128 << ((n.max(1) - 1) / 2)
}

/// At least two rows and `λ_1 − λ_2 ∈ {1, 2}`.
pub fn splits_necessary_p2(lambda: &Partition) -> bool {
    lambda.len() >= 2 && matches!(lambda.part(0) - lambda.part(1), 1 | 2)
}

fn require_odd(p: u32) -> Result<()> {
    if p.is_multiple_of(2) || p < 3 {
        return Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")));
    }
    Ok(())
}

/// `λ_1 ≥ (n + p + 2)/2`.
pub fn ext2_irreducible_over_an(lambda: &Partition, p: u32) -> Result<bool> {
    require_odd(p)?;
    Ok(2 * lambda.part(0) >= lambda.n() + p as usize + 2)
}

/// Some `s ≥ 1` has weakly decreasing gaps `λ_i − λ_{i+1} ≥ p` for `i ≤ s`
/// and `Σ_{i≤s} ⌊(λ_i − λ_{i+1})/p⌋ > n/(2p−1)`.
pub fn ext3_irreducible_over_an(lambda: &Partition, p: u32) -> Result<bool> {
    require_odd(p)?;
    let p = p as usize;
    let n = lambda.n();
    let mut sum = 0;
    let mut prev = usize::MAX;
    for i in 0..lambda.len() {
        let gap = lambda.part(i) - lambda.part(i + 1);
        if gap < p || gap > prev {
            break;
        }
        prev = gap;
        sum += gap / p;
        if sum * (2 * p - 1) > n {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Labels a partition for reports, e.g. `(5,4,1)`.
pub fn label(lambda: &Partition) -> String {
    format!("({lambda})")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn all_partitions_naive(n: usize) -> Vec<Vec<usize>> {
        // Independent generator: recursive with maximum part.
        fn go(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 0 {
                out.push(acc.clone());
                return;
            }
            for x in (1..=n.min(max)).rev() {
                acc.push(x);
                go(n - x, x, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn enumeration_small_cases() {
        let p4: Vec<_> = enumerate_partitions(4, Some(2)).collect();
        assert_eq!(p4, vec![part("4"), part("3,1")]);
        assert_eq!(enumerate_partitions(5, None).count(), 7);
        let p6: Vec<_> = enumerate_partitions(6, Some(2)).collect();
        assert_eq!(p6, vec![part("6"), part("5,1"), part("4,2"), part("3,2,1")]);
    }

    #[test]
    fn enumeration_matches_naive_generator() {
        for n in 0..=15 {
            let ours: Vec<Vec<usize>> = enumerate_partitions(n, None).map(|p| p.parts).collect();
            assert_eq!(ours, all_partitions_naive(n), "n = {n}");
        }
    }

    #[test]
    fn rim_strip_examples() {
        assert_eq!(p_rim_strip(&part("3,1"), 5).unwrap(), (4, 2, Partition::empty()));
        assert_eq!(p_rim_strip(&part("1"), 7).unwrap(), (1, 1, Partition::empty()));
        assert!(p_rim_strip(&Partition::empty(), 2).is_err());
        for k in 2..10 {
            let mut cur = basic_spin(2 * k);
            let mut total = 0;
            while !cur.is_empty() {
                let (h, _, rest) = p_rim_strip(&cur, 2).unwrap();
                total += h;
                cur = rest;
            }
            assert_eq!(total, 2 * k);
        }
    }

    #[test]
    fn symbol_examples() {
        let s = mullineux_symbol(&part("3,1"), 5).unwrap();
        assert_eq!(s.columns, vec![SymbolColumn { h: 4, r: 2 }]);
        let s = mullineux_symbol(&part("1"), 2).unwrap();
        assert_eq!(s.columns, vec![SymbolColumn { h: 1, r: 1 }]);
        assert_eq!(s.to_string(), "1/1");
        assert_eq!(MullineuxSymbol::parse("4/2", 5).unwrap().columns, vec![SymbolColumn { h: 4, r: 2 }]);
    }

    #[test]
    fn invalid_symbol_rejected() {
        let bad = MullineuxSymbol { p: 2, columns: vec![SymbolColumn { h: 1, r: 3 }] };
        assert!(matches!(partition_from_symbol(&bad), Err(Error::InvalidSymbol(_))));
    }

    #[test]
    fn mullineux_examples() {
        assert_eq!(mullineux(&part("3,1"), 5).unwrap(), part("2,1,1"));
        assert_eq!(mullineux(&part("5,4,1"), 2).unwrap(), part("5,4,1"));
        assert!(mullineux(&part("2,2"), 2).is_err());
    }

    #[test]
    fn basic_spin_values() {
        assert_eq!((basic_spin(6), basic_spin_dim(6)), (part("4,2"), 4));
        assert_eq!((basic_spin(7), basic_spin_dim(7)), (part("4,3"), 8));
        assert_eq!((basic_spin(2), basic_spin_dim(2)), (part("2"), 1));
    }

    #[test]
    fn splitting_filter() {
        assert!(splits_necessary_p2(&part("5,4,1")));
        assert!(!splits_necessary_p2(&part("7,1")));
        assert!(!splits_necessary_p2(&part("9")));
    }

    #[test]
    fn extendibility_predicates() {
        let l = part("11,1");
        assert!(ext2_irreducible_over_an(&l, 3).unwrap());
        assert_ne!(mullineux(&l, 3).unwrap(), l);
        assert!(!ext2_irreducible_over_an(&part("4,4,4"), 3).unwrap());
        assert!(ext2_irreducible_over_an(&l, 2).is_err());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part("3,1").conjugate(), part("2,1,1"));
        assert_eq!(part("5").conjugate(), part("1,1,1,1,1"));
    }

    #[test]
    fn hook_length_dimension() {
        let h: usize = part("3,2,1").hook_lengths().iter().flatten().product();
        assert_eq!(720 / h, 16);
    }
}
