//! Socles and socle series with respect to a list of simple modules.

use alloc::string::String;
use alloc::vec::Vec;

use super::hom::{endomorphism_dim, hom_images};
use super::{quotient_preimage, RepModule};
use crate::gf2::Subspace;
use crate::{Error, Result};

/// `mult` copies of the simple module `simple` inside one socle layer.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Constituent {
    pub simple: String,
    pub dim: usize,
    pub mult: usize,
}

/// Socle layers of a module together with any checked claims.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StructureReport {
    pub module: String,
    pub layers: Vec<Vec<Constituent>>,
    pub claims: Vec<super::Claim>,
}

impl StructureReport {
    /// Each layer is a single simple module occurring once.
    pub fn is_uniserial(&self) -> bool {
        self.layers.iter().all(|l| l.len() == 1 && l[0].mult == 1)
    }

    /// Layer labels when uniserial, e.g. `["triv", "D_1", "triv"]`.
    pub fn layer_labels(&self) -> Vec<Vec<String>> {
        self.layers
            .iter()
            .map(|l| l.iter().flat_map(|c| core::iter::repeat_n(c.simple.clone(), c.mult)).collect())
            .collect()
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.iter().map(|c| c.dim * c.mult).sum()).collect()
    }

    pub fn all_claims_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

/// The socle series as a chain of subspaces of the module plus its report.
#[derive(Clone, Debug)]
pub struct SocleSeries {
    /// `chain[k]` is `soc^{k+1}(M)`; the last entry is the whole module.
    pub chain: Vec<Subspace>,
    pub report: StructureReport,
}

struct Probe {
    images: Subspace,
    constituents: Vec<Constituent>,
}

fn probe(m: &RepModule, simples: &[RepModule], ends: &[usize]) -> Result<Probe> {
    let mut images = Subspace::zero(m.dim);
    let mut constituents = Vec::new();
    for (s, &e) in simples.iter().zip(ends) {
        let (h, img) = hom_images(s, m)?;
        if h > 0 {
            images = images.sum(&img)?;
            constituents.push(Constituent { simple: s.label.clone(), dim: s.dim, mult: h / e });
        }
    }
    Ok(Probe { images, constituents })
}

/// `soc(M)`: the sum of the images of all maps from the given simples.
pub fn socle_wrt(m: &RepModule, simples: &[RepModule]) -> Result<Subspace> {
    let mut acc = Subspace::zero(m.dim);
    for s in simples {
        acc = acc.sum(&hom_images(s, m)?.1)?;
    }
    Ok(acc)
}

/// Iterates `soc^{k+1}/soc^k = soc(M / soc^k)` until the module is exhausted.
pub fn socle_series_wrt(m: &RepModule, simples: &[RepModule]) -> Result<SocleSeries> {
    let ends = simples.iter().map(endomorphism_dim).collect::<Result<Vec<_>>>()?;
    let mut chain: Vec<Subspace> = Vec::new();
    let mut layers = Vec::new();
    let mut current = Subspace::zero(m.dim);
    while current.dim() < m.dim {
        let q = m.quotient(&current, "quotient")?;
        let pr = probe(&q, simples, &ends)?;
        let covered: usize = pr.constituents.iter().map(|c| c.dim * c.mult).sum();
        if pr.images.is_zero() || covered != pr.images.dim() {
            return Err(Error::IncompleteSimples { covered: current.dim() + covered, dim: m.dim });
        }
        current = quotient_preimage(&current, &pr.images);
        chain.push(current.clone());
        layers.push(pr.constituents);
    }
    Ok(SocleSeries { chain, report: StructureReport { module: m.label.clone(), layers, claims: Vec::new() } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permmod::{permutation_module, trivial_module, two_row_simple};

    #[test]
    fn m1_layers() {
        for n in [6usize, 8] {
            let m1 = permutation_module(n, 1);
            let simples = [trivial_module(n), two_row_simple(n, 1).unwrap()];
            let s = socle_series_wrt(&m1, &simples).unwrap();
            assert_eq!(s.report.layer_dims(), [1, n - 2, 1]);
            assert_eq!(s.report.layer_labels(), [["triv"], ["D_1"], ["triv"]]);
            assert!(s.report.is_uniserial());
        }
    }

    #[test]
    fn missing_simple_detected() {
        let m1 = permutation_module(8, 1);
        let only_triv = [trivial_module(8)];
        assert!(matches!(socle_series_wrt(&m1, &only_triv), Err(Error::IncompleteSimples { .. })));
    }

    #[test]
    fn socle_is_invariant_and_semisimple() {
        let m2 = permutation_module(8, 2);
        let simples = [trivial_module(8), two_row_simple(8, 1).unwrap(), two_row_simple(8, 2).unwrap()];
        let soc = socle_wrt(&m2, &simples).unwrap();
        assert!(m2.is_invariant(&soc));
        // Recomputing the socle of the socle changes nothing.
        let sub = m2.submodule(&soc, "soc").unwrap();
        assert_eq!(socle_wrt(&sub, &simples).unwrap().dim(), soc.dim());
    }
}
