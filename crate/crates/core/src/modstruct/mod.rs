//! Modules given by matrices of labelled generators, with hom spaces,
//! socle series, an irreducibility test and the structure batteries.

mod battery;
mod hom;
mod meataxe;
mod socle;

pub use battery::{
    branching_check, d_r, hom_battery, structure_battery, young_generators, BranchingReport, Claim, HomBatteryEntry,
    HomBatteryReport,
};
pub use hom::{endomorphism_dim, fixed_points, fixed_space, hom_dim, hom_images, hom_space, is_isomorphic, HomSpace};
pub use meataxe::{chop, irreducibility_test, is_irreducible, Factor, Irreducibility};
pub use socle::{socle_series_wrt, socle_wrt, Constituent, SocleSeries, StructureReport};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::gf2::{BitMatrix, BitVec, Subspace};
use crate::permmod::{non_pivots, Provenance};
use crate::symgrp::Perm;
use crate::{Error, Result};

/// The matrix by which a labelled group element acts.
#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub perm: Option<Perm>,
    pub matrix: BitMatrix,
}

/// A GF(2)-module given by the action of labelled generators.
///
/// Matrices act on column vectors. When `provenance` is present the module
/// is a subquotient of a permutation module and any permutation can be
/// turned into a matrix.
#[derive(Clone, Debug)]
pub struct RepModule {
    pub label: String,
    pub dim: usize,
    pub gens: Vec<Generator>,
    pub provenance: Option<Provenance>,
}

impl RepModule {
    pub fn from_provenance(label: impl Into<String>, prov: Provenance, gens: &[(String, Perm)]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|(l, g)| Ok(Generator { label: l.clone(), perm: Some(g.clone()), matrix: prov.matrixize(g)? }))
            .collect::<Result<Vec<_>>>()?;
        check_labels(&gens)?;
        Ok(RepModule { label: label.into(), dim: prov.dim(), gens, provenance: Some(prov) })
    }

    /// A module from raw matrices; each must be square and invertible.
    pub fn from_matrices(label: impl Into<String>, dim: usize, gens: Vec<(String, BitMatrix)>) -> Result<Self> {
        for (l, m) in &gens {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.rows() });
            }
            if m.rank() != dim {
                return Err(Error::InvalidArgument(format!("generator {l} is singular")));
            }
        }
        let gens: Vec<Generator> =
            gens.into_iter().map(|(label, matrix)| Generator { label, perm: None, matrix }).collect();
        check_labels(&gens)?;
        Ok(RepModule { label: label.into(), dim, gens, provenance: None })
    }

    pub fn labels(&self) -> Vec<&str> {
        self.gens.iter().map(|g| g.label.as_str()).collect()
    }

    pub fn matrix(&self, label: &str) -> Option<&BitMatrix> {
        self.gens.iter().find(|g| g.label == label).map(|g| &g.matrix)
    }

    pub fn matrices(&self) -> Vec<&BitMatrix> {
        self.gens.iter().map(|g| &g.matrix).collect()
    }

    /// Matrix of an arbitrary permutation; needs provenance.
    pub fn matrixize(&self, g: &Perm) -> Result<BitMatrix> {
        self.provenance
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument(format!("{} has no permutation ambient", self.label)))?
            .matrixize(g)
    }

    /// The same space acted on by a different set of permutations.
    pub fn restrict(&self, label: impl Into<String>, gens: &[(String, Perm)]) -> Result<RepModule> {
        let prov = self
            .provenance
            .clone()
            .ok_or_else(|| Error::InvalidArgument(format!("{} has no permutation ambient", self.label)))?;
        RepModule::from_provenance(label, prov, gens)
    }

    pub fn is_invariant(&self, u: &Subspace) -> bool {
        u.ambient_dim() == self.dim && u.is_invariant(&self.matrices())
    }

    pub fn spin(&self, seeds: &[BitVec]) -> Subspace {
        if seeds.is_empty() {
            return Subspace::zero(self.dim);
        }
        crate::gf2::spin(seeds, &self.matrices())
    }

    /// The submodule with basis the echelon rows of `u`.
    pub fn submodule(&self, u: &Subspace, label: &str) -> Result<RepModule> {
        if !self.is_invariant(u) {
            return Err(Error::InvalidArgument(format!("subspace of {} is not a submodule", self.label)));
        }
        let basis = u.basis();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<BitVec> = basis
                    .row_iter()
                    .map(|v| u.coordinates(&g.matrix.mul_vec(&v)).expect("invariant subspace"))
                    .collect();
                Generator { label: g.label.clone(), perm: g.perm.clone(), matrix: BitMatrix::from_cols(u.dim(), &cols) }
            })
            .collect();
        let provenance = self.provenance.as_ref().map(|p| p.sub(u)).transpose()?;
        Ok(RepModule { label: label.to_string(), dim: u.dim(), gens, provenance })
    }

    /// The quotient by `u`; its basis is the images of the non-pivot unit vectors.
    pub fn quotient(&self, u: &Subspace, label: &str) -> Result<RepModule> {
        if !self.is_invariant(u) {
            return Err(Error::InvalidArgument(format!("subspace of {} is not a submodule", self.label)));
        }
        let free = non_pivots(u);
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<BitVec> = free.iter().map(|&j| project(u, &free, &g.matrix.col(j))).collect();
                Generator {
                    label: g.label.clone(),
                    perm: g.perm.clone(),
                    matrix: BitMatrix::from_cols(free.len(), &cols),
                }
            })
            .collect();
        let provenance = self.provenance.as_ref().map(|p| p.quotient(u)).transpose()?;
        Ok(RepModule { label: label.to_string(), dim: free.len(), gens, provenance })
    }
}

fn check_labels(gens: &[Generator]) -> Result<()> {
    for (i, g) in gens.iter().enumerate() {
        if gens[..i].iter().any(|h| h.label == g.label) {
            return Err(Error::LabelMismatch(format!("duplicate label {}", g.label)));
        }
    }
    Ok(())
}

/// Coordinates of `v` modulo `u` in the quotient basis indexed by `free`.
pub(crate) fn project(u: &Subspace, free: &[usize], v: &BitVec) -> BitVec {
    let r = u.reduce(v);
    BitVec::from_indices(free.len(), free.iter().enumerate().filter(|(_, &c)| r.get(c)).map(|(i, _)| i))
}

/// The vector with quotient coordinates `x` and zeros at the pivots of `u`.
pub(crate) fn lift_from_quotient(u: &Subspace, x: &BitVec) -> BitVec {
    let free = non_pivots(u);
    BitVec::from_indices(u.ambient_dim(), x.ones_iter().map(|i| free[i]))
}

/// Preimage of a quotient subspace: `lift(s) + u`.
pub fn quotient_preimage(u: &Subspace, s: &Subspace) -> Subspace {
    let mut rows: Vec<BitVec> = s.basis().row_iter().map(|x| lift_from_quotient(u, &x)).collect();
    rows.extend(u.basis().row_iter());
    Subspace::from_vectors(u.ambient_dim(), &rows)
}

/// Image of a subspace in the quotient by `u`.
pub fn quotient_image(u: &Subspace, s: &Subspace) -> Subspace {
    let free = non_pivots(u);
    let rows: Vec<BitVec> = s.basis().row_iter().map(|v| project(u, &free, &v)).collect();
    Subspace::from_vectors(free.len(), &rows)
}
