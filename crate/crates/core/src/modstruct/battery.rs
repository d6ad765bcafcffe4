//! Batteries over the permutation modules `M_1, M_2, M_3` and the invariants `d_r`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::hom::{endomorphism_dim, hom_dim, hom_space, is_isomorphic};
use super::meataxe::{chop, is_irreducible, Irreducibility};
use super::socle::{socle_series_wrt, socle_wrt, StructureReport};
use super::{quotient_image, quotient_preimage, RepModule};
use crate::gf2::{BitMatrix, BitVec, Subspace};
use crate::partitions::{basic_spin, enumerate_partitions, Partition};
use crate::permmod::{
    augmentation, eta, permutation_module, simple_head, specht_two_row, specht_two_row_subspace, standard_generators,
    t_vector, trivial_module, two_row_simple, wilson_rank,
};
use crate::symgrp::Perm;
use crate::{Error, Result};

/// A checked statement with the numbers behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Claim {
    pub id: String,
    #[cfg_attr(feature = "serde", serde(rename = "status", serialize_with = "status"))]
    pub pass: bool,
    pub detail: String,
}

#[cfg(feature = "serde")]
fn status<S: serde::Serializer>(pass: &bool, s: S) -> core::result::Result<S::Ok, S::Error> {
    s.serialize_str(if *pass { "pass" } else { "fail" })
}

impl Claim {
    pub fn new(id: &str, pass: bool, detail: impl Into<String>) -> Self {
        Claim { id: id.to_string(), pass, detail: detail.into() }
    }
}

/// Generators of the Young subgroup `S_{n−r} × S_r`, labelled `y1, y2, …`.
pub fn young_generators(n: usize, r: usize) -> Vec<(String, Perm)> {
    let k = n - r;
    let mut perms = Vec::new();
    if k >= 2 {
        perms.push(Perm::transposition(n, 0, 1));
        perms.push(Perm::cycle_range(n, 0, k));
    }
    if r >= 2 {
        perms.push(Perm::transposition(n, k, k + 1));
        perms.push(Perm::cycle_range(n, k, n));
    }
    let mut uniq: Vec<Perm> = Vec::new();
    for p in perms {
        if !p.is_identity() && !uniq.contains(&p) {
            uniq.push(p);
        }
    }
    if uniq.is_empty() {
        uniq.push(Perm::identity(n));
    }
    uniq.into_iter().enumerate().map(|(i, p)| (format!("y{}", i + 1), p)).collect()
}

fn restrict_young(v: &RepModule, r: usize) -> Result<RepModule> {
    let n = v.provenance.as_ref().map(|p| p.ambient().degree()).unwrap_or(0);
    v.restrict(format!("{}|S_{},{}", v.label, n - r, r), &young_generators(n, r))
}

/// `d_r(V)`: dimension of the commutant of `V` restricted to `S_{n−r} × S_r`.
pub fn d_r(v: &RepModule, r: usize) -> Result<usize> {
    endomorphism_dim(&restrict_young(v, r)?)
}

/// One partition's row in the `d_1` versus `d_3` battery.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HomBatteryEntry {
    pub lambda: String,
    pub dim: usize,
    pub d1: Option<usize>,
    pub d3: Option<usize>,
    /// Equality is expected only for the trivial and basic spin modules.
    pub expect_equal: bool,
    /// Irreducibility of the two restrictions; `d_r = 1` must match.
    pub restriction_irreducible: [Option<bool>; 2],
    pub skipped: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HomBatteryReport {
    pub n: usize,
    pub cap: usize,
    pub entries: Vec<HomBatteryEntry>,
}

impl HomBatteryReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn skipped(&self) -> usize {
        self.entries.iter().filter(|e| e.skipped.is_some()).count()
    }
}

fn irreducible_flag(m: &RepModule, seed: u64) -> Option<bool> {
    match is_irreducible(m, seed) {
        Irreducibility::Irreducible => Some(true),
        Irreducibility::Reducible(_) => Some(false),
        Irreducibility::Inconclusive => None,
    }
}

/// For every 2-regular `λ ⊢ n` with `dim D^λ ≤ cap`, compares `d_3(D^λ)` with `d_1(D^λ)`.
pub fn hom_battery(n: usize, cap: usize) -> Result<HomBatteryReport> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(Error::InvalidArgument(format!("need even n ≥ 6, got {n}")));
    }
    let alpha = basic_spin(n);
    let mut entries = Vec::new();
    for lam in enumerate_partitions(n, Some(2)) {
        let expect_equal = lam.len() == 1 || lam == alpha;
        let d = simple_head(&lam)?;
        if d.dim > cap {
            entries.push(HomBatteryEntry {
                lambda: lam.to_string(),
                dim: d.dim,
                d1: None,
                d3: None,
                expect_equal,
                restriction_irreducible: [None, None],
                skipped: Some(format!("dim {} exceeds cap {cap}", d.dim)),
                pass: true,
            });
            continue;
        }
        let r1 = restrict_young(&d, 1)?;
        let r3 = restrict_young(&d, 3)?;
        let d1 = endomorphism_dim(&r1)?;
        let d3 = endomorphism_dim(&r3)?;
        let irr = [irreducible_flag(&r1, 1), irreducible_flag(&r3, 3)];
        let consistent = [(d1, irr[0]), (d3, irr[1])].iter().all(|&(dr, f)| f.is_none_or(|f| f == (dr == 1)));
        let ordered = if expect_equal { d3 == d1 } else { d3 > d1 };
        entries.push(HomBatteryEntry {
            lambda: lam.to_string(),
            dim: d.dim,
            d1: Some(d1),
            d3: Some(d3),
            expect_equal,
            restriction_irreducible: irr,
            skipped: None,
            pass: ordered && consistent && d1 >= 1,
        });
    }
    Ok(HomBatteryReport { n, cap, entries })
}

/// Composition factors of `D^λ` restricted to `S_k` on the first `k` points.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BranchingReport {
    pub lambda: String,
    pub k: usize,
    /// `(dimension, multiplicity)` per isomorphism type.
    pub factors: Vec<(usize, usize)>,
    pub has_trivial: bool,
    pub has_natural: bool,
}

/// Checks that `Res_{S_k} D^λ` has both `D^{(k)}` and `D^{(k−1,1)}` as composition factors.
pub fn branching_check(lambda: &Partition, k: usize, seed: u64) -> Result<BranchingReport> {
    let n = lambda.n();
    if !(3..=n).contains(&k) {
        return Err(Error::InvalidArgument(format!("need 3 ≤ k ≤ n, got k={k}")));
    }
    let d = simple_head(lambda)?;
    let gens: Vec<(String, Perm)> = standard_generators(k).into_iter().map(|(l, g)| (l, g.extend(n))).collect();
    let res = d.restrict(format!("{}|S_{k}", d.label), &gens)?;
    let triv = trivial_module(k);
    let natural = simple_head(&Partition::new(vec![k - 1, 1]))?;
    let factors = chop(&res, seed)?;
    let mut has_trivial = false;
    let mut has_natural = false;
    for f in &factors {
        has_trivial |= is_isomorphic(&f.module, &triv)?;
        has_natural |= is_isomorphic(&f.module, &natural)?;
    }
    Ok(BranchingReport {
        lambda: lambda.to_string(),
        k,
        factors: factors.iter().map(|f| (f.module.dim, f.mult)).collect(),
        has_trivial,
        has_natural,
    })
}

/// `top / bottom` for subspaces `bottom ⊆ top` of a module, with maps between
/// ambient and local coordinates.
struct Section {
    top: Subspace,
    bottom: Subspace,
    module: RepModule,
}

impl Section {
    fn new(m: &RepModule, top: &Subspace, bottom: &Subspace, label: &str) -> Result<Self> {
        let sub = m.submodule(top, label)?;
        let bottom = coordinates_in(top, bottom)?;
        let module = if bottom.is_zero() { sub } else { sub.quotient(&bottom, label)? };
        Ok(Section { top: top.clone(), bottom, module })
    }

    fn whole(m: &RepModule, top: &Subspace, label: &str) -> Result<Self> {
        Section::new(m, top, &Subspace::zero(top.ambient_dim()), label)
    }

    fn local(&self, s: &Subspace) -> Result<Subspace> {
        Ok(quotient_image(&self.bottom, &coordinates_in(&self.top, s)?))
    }

    fn ambient(&self, s: &Subspace) -> Subspace {
        let pre = quotient_preimage(&self.bottom, s);
        let rows: Vec<BitVec> = pre.basis().row_iter().map(|x| self.top.basis().vec_mul(&x)).collect();
        Subspace::from_vectors(self.top.ambient_dim(), &rows)
    }

    /// Socle series in ambient coordinates, each term containing `bottom`.
    fn series(&self, simples: &[RepModule]) -> Result<(Vec<Subspace>, StructureReport)> {
        let s = socle_series_wrt(&self.module, simples)?;
        Ok((s.chain.iter().map(|c| self.ambient(c)).collect(), s.report))
    }

    fn socle(&self, simples: &[RepModule]) -> Result<Subspace> {
        Ok(self.ambient(&socle_wrt(&self.module, simples)?))
    }

    fn sub(&self, s: &Subspace, label: &str) -> Result<RepModule> {
        self.module.submodule(&self.local(s)?, label)
    }
}

fn coordinates_in(top: &Subspace, s: &Subspace) -> Result<Subspace> {
    let rows = s
        .basis()
        .row_iter()
        .map(|v| top.coordinates(&v).ok_or_else(|| Error::InvalidArgument("subspace not contained in section".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::from_vectors(top.dim(), &rows))
}

fn uniserial_as(report: &StructureReport, expected: &[&str]) -> bool {
    report.is_uniserial() && report.layer_labels().iter().map(|l| l[0].as_str()).eq(expected.iter().copied())
}

fn layers_text(report: &StructureReport) -> String {
    let parts: Vec<String> = report.layer_labels().iter().map(|l| l.join("+")).collect();
    format!("layers [{}], dims {:?}", parts.join(", "), report.layer_dims())
}

fn multiplicities(report: &StructureReport, labels: &[&str]) -> Vec<usize> {
    labels.iter().map(|l| report.layers.iter().flatten().filter(|c| c.simple == *l).map(|c| c.mult).sum()).collect()
}

fn span(v: BitVec) -> Subspace {
    Subspace::span_of(&v)
}

fn eq_claim(id: &str, a: &Subspace, b: &Subspace, what: &str) -> Claim {
    Claim::new(id, a == b, format!("{what}: dims {} and {}", a.dim(), b.dim()))
}

fn sub_claim(id: &str, a: &Subspace, b: &Subspace, what: &str) -> Claim {
    Claim::new(id, a.is_subspace_of(b) && a != b, format!("{what}: dims {} ⊂ {}", a.dim(), b.dim()))
}

fn iso_claim(id: &str, a: &RepModule, b: &RepModule) -> Result<Claim> {
    Ok(Claim::new(id, is_isomorphic(a, b)?, format!("{} (dim {}) ≅ {} (dim {})", a.label, a.dim, b.label, b.dim)))
}

fn uniserial_claim(id: &str, report: &StructureReport, expected: &[&str]) -> Claim {
    Claim::new(
        id,
        uniserial_as(report, expected),
        format!("expected [{}], got {}", expected.join(", "), layers_text(report)),
    )
}

/// Injective (or surjective) maps in a hom space all have the same image (or kernel).
fn unique_claim(id: &str, maps: &[BitMatrix], target: &Subspace, injective: bool) -> Claim {
    let mut hits = 0;
    let mut ok = true;
    for bits in 1u32..(1 << maps.len()) {
        let mut f = BitMatrix::zeros(maps[0].rows(), maps[0].cols());
        for (i, m) in maps.iter().enumerate() {
            if bits >> i & 1 == 1 {
                f.add_assign(m);
            }
        }
        let full = if injective { f.rank() == f.cols() } else { f.rank() == f.rows() };
        if full {
            hits += 1;
            let s = if injective { f.column_space() } else { f.nullspace() };
            ok &= s == *target;
        }
    }
    Claim::new(id, ok && hits > 0, format!("{hits} maps of full rank among {} nonzero maps", (1u32 << maps.len()) - 1))
}

struct Context {
    n: usize,
    simples: Vec<RepModule>,
    m1: RepModule,
    m2: RepModule,
    m3: RepModule,
    q: RepModule,
}

const TRIV: &str = "triv";
const D1: &str = "D_1";
const D2: &str = "D_2";
const D3: &str = "D_3";

fn report(module: &str, layers: Option<StructureReport>, claims: Vec<Claim>) -> StructureReport {
    let mut r = layers.unwrap_or_default();
    r.module = module.to_string();
    r.claims = claims;
    r
}

fn m1_report(cx: &Context) -> Result<StructureReport> {
    let n = cx.n;
    let series = socle_series_wrt(&cx.m1, &cx.simples)?;
    let r = &series.report;
    let claims = vec![
        Claim::new("m1.layers", uniserial_as(r, &[TRIV, D1, TRIV]) && r.layer_dims() == [1, n - 2, 1], layers_text(r)),
        eq_claim("m1.socle_is_t1", &series.chain[0], &span(t_vector(n, 1)), "soc(M_1) vs F·T_1"),
    ];
    Ok(report("M_1", Some(series.report), claims))
}

fn m2_report(cx: &Context) -> Result<StructureReport> {
    let n = cx.n;
    let e12 = eta(n, 1, 2).matrix;
    let e23 = eta(n, 2, 3).matrix;
    let im12 = e12.column_space();
    let t2 = span(t_vector(n, 2));
    let y = augmentation(n, 2);
    let mut claims = vec![
        Claim::new(
            "m2.rank_eta12",
            e12.rank() == n - 1 && wilson_rank(n, 1, 2)? == (n - 1) as u128,
            format!("rank {} vs n−1 = {}", e12.rank(), n - 1),
        ),
        Claim::new(
            "m2.rank_eta23",
            e23.rank() == 1 + n * (n - 3) / 2,
            format!("rank {} vs 1+n(n−3)/2 = {}", e23.rank(), 1 + n * (n - 3) / 2),
        ),
        iso_claim("m2.image_eta12_is_q", &cx.m2.submodule(&im12, "im η_{1,2}")?, &cx.q)?,
    ];
    let layers = if n.is_multiple_of(4) {
        let series = socle_series_wrt(&cx.m2, &cx.simples)?;
        let mult = multiplicities(&series.report, &[TRIV, D1, D2]);
        claims.push(Claim::new(
            "m2.composition_factors",
            mult == [2, 2, 1],
            format!("triv, D_1, D_2 multiplicities {mult:?}"),
        ));
        let bottom = im12.sum(&t2)?;
        let top = Subspace::full(cx.m2.dim);
        let dual = Section::new(&cx.m2, &top, &bottom, "M_2/(im η_{1,2}+F·T_2)")?;
        let (_, r) = dual.series(&cx.simples)?;
        claims.push(uniserial_claim("m2.dual_specht_quotient", &r, &[D2, D1]));
        series.report
    } else {
        claims.push(Claim::new(
            "m2.t2_splits",
            t2.meet(&y)?.is_zero() && t2.dim() + y.dim() == cx.m2.dim,
            format!("dim M'_2 = {}", y.dim()),
        ));
        let (_, r) = Section::whole(&cx.m2, &y, "M'_2")?.series(&cx.simples)?;
        claims.push(uniserial_claim("m2.augmentation_uniserial", &r, &[D1, TRIV, D2, TRIV, D1]));
        r
    };
    Ok(report(if n.is_multiple_of(4) { "M_2" } else { "M'_2" }, Some(layers), claims))
}

fn m3_common(cx: &Context, claims: &mut Vec<Claim>) -> Result<(Subspace, Subspace)> {
    let n = cx.n;
    let im13 = eta(n, 1, 3).matrix.column_space();
    let nker = eta(n, 3, 1).matrix.nullspace();
    let hom13 = hom_space(&cx.m1, &cx.m3)?;
    claims.push(Claim::new("m3.hom_m1_m3", hom13.dim == 2, format!("dim Hom(M_1, M_3) = {}", hom13.dim)));
    let hd = hom_dim(&cx.simples[1], &cx.m3)?;
    claims.push(Claim::new("m3.hom_d1_m3", hd == 0, format!("dim Hom(D_1, M_3) = {hd}")));
    claims.push(unique_claim("m3.unique_copy_of_m1", &hom13.maps, &im13, true));
    let hom31 = hom_space(&cx.m3, &cx.m1)?;
    claims.push(unique_claim("m3.unique_kernel_with_quotient_m1", &hom31.maps, &nker, false));
    claims.push(iso_claim("m3.quotient_by_n_is_m1", &cx.m3.quotient(&nker, "M_3/N")?, &cx.m1)?);
    Ok((im13, nker))
}

fn m3_zero_mod4(cx: &Context) -> Result<Vec<StructureReport>> {
    let n = cx.n;
    let mut claims = Vec::new();
    let (im13, nker) = m3_common(cx, &mut claims)?;
    let e13 = eta(n, 1, 3).matrix;
    let e31 = eta(n, 3, 1).matrix;
    claims.push(Claim::new("m3.eta31_eta13_identity", e31.mul(&e13).is_identity(), "η_{3,1}∘η_{1,3} = 1".to_string()));
    claims.push(Claim::new(
        "m3.direct_sum",
        im13.meet(&nker)?.is_zero() && im13.dim() + nker.dim() == cx.m3.dim,
        format!("dims {} + {} = {}", im13.dim(), nker.dim(), cx.m3.dim),
    ));
    claims.push(iso_claim("m3.image_eta13_is_m1", &cx.m3.submodule(&im13, "im η_{1,3}")?, &cx.m1)?);
    let n_sec = Section::whole(&cx.m3, &nker, "N")?;
    let (chain, r) = n_sec.series(&cx.simples)?;
    claims.push(uniserial_claim("m3.complement_uniserial", &r, &[D2, D1, D3, D1, D2]));
    let m3_report = report("M_3", None, claims);

    // N = Ker η_{3,1} against η_{3,2}.
    let e32 = eta(n, 3, 2).matrix;
    let soc3 = chain.get(2).cloned().unwrap_or_else(|| Subspace::zero(cx.m3.dim));
    let ker32 = e32.nullspace();
    let image_n = nker.image(&e32);
    let s2 = specht_two_row_subspace(n, 2);
    let y = augmentation(n, 2);
    let mut c = vec![
        eq_claim("n.ker_eta32_is_soc3", &ker32.meet(&nker)?, &soc3, "Ker η_{3,2} ∩ N vs soc³(N)"),
        eq_claim(
            "n.eta32_image_in_augmentation",
            &image_n,
            &e32.column_space().meet(&y)?,
            "η_{3,2}(N) vs im η_{3,2} ∩ M'_2",
        ),
        eq_claim("n.eta32_image_is_specht", &image_n, &s2, "η_{3,2}(N) vs S_2"),
    ];
    let top = Section::new(&cx.m3, &nker, &soc3, "N/soc³(N)")?;
    c.push(iso_claim("n.top_is_specht", &top.module, &specht_two_row(n, 2)?)?);
    Ok(vec![m3_report, report("N", Some(r), c)])
}

fn m3_two_mod4(cx: &Context) -> Result<Vec<StructureReport>> {
    let n = cx.n;
    let dim3 = cx.m3.dim;
    let mut claims = Vec::new();
    let (im13, nker) = m3_common(cx, &mut claims)?;
    let full = Section::whole(&cx.m3, &Subspace::full(dim3), "M_3")?;
    let t3 = span(t_vector(n, 3));
    claims.push(eq_claim("m3.socle_is_t3", &full.socle(&cx.simples)?, &t3, "soc(M_3) vs F·T_3"));
    let (_, mr) = full.series(&cx.simples)?;
    let mult = multiplicities(&mr, &[TRIV, D1, D2, D3]);
    claims.push(Claim::new(
        "m3.composition_factors",
        mult == [4, 2, 2, 1],
        format!("triv, D_1, D_2, D_3 multiplicities {mult:?}"),
    ));

    let e23 = eta(n, 2, 3).matrix;
    let w = e23.column_space();
    let w_sec = Section::whole(&cx.m3, &w, "W")?;
    let (wchain, wr) = w_sec.series(&cx.simples)?;
    claims.push(uniserial_claim("w.uniserial", &wr, &[TRIV, D2, TRIV, D1]));
    let m3_report = report("M_3", Some(mr), claims);
    let w_report = report("W", Some(wr.clone()), Vec::new());
    if wchain.len() < 3 {
        return Ok(vec![m3_report, w_report]);
    }
    let (soc2w, soc3w) = (&wchain[1], &wchain[2]);

    let mut c = Vec::new();
    // W and N.
    c.push(sub_claim("w.soc2_in_n", soc2w, &nker, "soc²(W) ⊂ N"));
    c.push(Claim::new(
        "w.soc2_layers",
        wr.layer_labels().first().is_some_and(|l| l == &[TRIV]) && wr.layer_labels().get(1).is_some_and(|l| l == &[D2]),
        layers_text(&wr),
    ));

    // Y = M'_2 under η_{2,3}.
    let y = augmentation(n, 2);
    let y_sec = Section::whole(&cx.m2, &y, "Y")?;
    let soc_y = y_sec.socle(&cx.simples)?;
    c.push(eq_claim("y.kernel_is_socle", &e23.nullspace().meet(&y)?, &soc_y, "Ker(η_{2,3}|Y) vs soc(Y)"));
    c.push(eq_claim("y.image_is_w", &y.image(&e23), &w, "η_{2,3}(Y) vs W"));
    let y_top = Section::new(&cx.m2, &y, &soc_y, "Y/soc(Y)")?;
    c.push(iso_claim("y.top_is_w", &y_top.module, &w_sec.module)?);

    // N ∩ W.
    c.push(eq_claim("nw.meet_w", &nker.meet(&w)?, soc2w, "N ∩ W vs soc²(W)"));
    c.push(eq_claim("nw.meet_soc3w", &nker.meet(soc3w)?, soc2w, "N ∩ soc³(W) vs soc²(W)"));
    let q_sec = Section::new(&cx.m3, &Subspace::full(dim3), &nker.sum(soc3w)?, "M_3/(N+soc³(W))")?;
    c.push(iso_claim("nw.quotient_is_q", &q_sec.module, &cx.q)?);

    // N' = N/soc²(W) and Q'.
    c.push(sub_claim("n.contains_image_eta13", &im13, &nker, "im η_{1,3} ⊂ N"));
    c.push(eq_claim("n.image_eta13_meet_w", &im13.meet(&w)?, &t3, "im η_{1,3} ∩ W vs F·T_3"));
    let n_prime = Section::new(&cx.m3, &nker, soc2w, "N'")?;
    let q_prime_amb = im13.sum(soc2w)?;
    let q_prime = n_prime.sub(&q_prime_amb, "Q'")?;
    c.push(iso_claim("n.q_prime_is_q", &q_prime, &cx.q)?);
    let n2 = Section::new(&cx.m3, &nker, &q_prime_amb, "N''")?;
    let (_, n2r) = n2.series(&cx.simples)?;
    c.push(uniserial_claim("n.n_double_prime_uniserial", &n2r, &[D3, D2]));

    // Specht S_3 inside N and D'.
    let s3 = specht_two_row_subspace(n, 3);
    c.push(sub_claim("n.soc2w_in_s3", soc2w, &s3, "soc²(W) ⊂ S_3"));
    c.push(sub_claim("n.s3_in_n", &s3, &nker, "S_3 ⊂ N"));
    let d_prime = n_prime.sub(&s3, "D'")?;
    c.push(iso_claim("n.d_prime_is_d3", &d_prime, &cx.simples[3])?);
    let soc_np = n_prime.socle(&cx.simples)?;
    let soc_qp_local = socle_wrt(&q_prime, &cx.simples)?;
    let qp_local = n_prime.local(&q_prime_amb)?;
    let soc_qp = n_prime.ambient(&Subspace::from_vectors(
        qp_local.ambient_dim(),
        &soc_qp_local.basis().row_iter().map(|x| qp_local.basis().vec_mul(&x)).collect::<Vec<_>>(),
    ));
    let sum = s3.sum(&soc_qp)?;
    let direct = s3.meet(&soc_qp)? == *soc2w;
    c.push(Claim::new(
        "n.socle_n_prime_split",
        direct && sum == soc_np,
        format!("soc(N') dim {} vs D' + soc(Q') dim {}", soc_np.dim() - soc2w.dim(), sum.dim() - soc2w.dim()),
    ));
    let (_, npr) = n_prime.series(&cx.simples)?;
    let mut first: Vec<String> = npr.layer_labels().first().cloned().unwrap_or_default();
    first.sort();
    c.push(Claim::new("n.socle_n_prime_types", first == [D1, D3], format!("soc(N') = {}", first.join(" ⊕ "))));
    let s2 = specht_two_row(n, 2)?;
    let np_over_dp = Section::new(&cx.m3, &nker, &s3, "N'/D'")?;
    c.push(iso_claim("n.n_over_s3_is_specht", &np_over_dp.module, &s2)?);
    let np_local_top = n_prime.module.quotient(&n_prime.local(&s3)?, "N'/D'")?;
    c.push(iso_claim("n.n_prime_over_d_prime_is_specht", &np_local_top, &s2)?);
    c.push(eq_claim(
        "n.eta32_image_is_specht",
        &nker.image(&eta(n, 3, 2).matrix),
        &specht_two_row_subspace(n, 2),
        "η_{3,2}(N) vs S_2",
    ));
    Ok(vec![m3_report, w_report, report("N", None, c)])
}

/// Checks the socle structure of `M_1`, `M_2`, `M_3` and the submodules built
/// from incidence maps, for even `n ≥ 8`.
pub fn structure_battery(n: usize) -> Result<Vec<StructureReport>> {
    if !n.is_multiple_of(2) || n < 8 {
        return Err(Error::InvalidArgument(format!("need even n ≥ 8, got {n}")));
    }
    let simples = vec![trivial_module(n), two_row_simple(n, 1)?, two_row_simple(n, 2)?, two_row_simple(n, 3)?];
    let m1 = permutation_module(n, 1);
    let q = m1.quotient(&span(t_vector(n, 1)), "Q")?;
    let cx = Context { n, m2: permutation_module(n, 2), m3: permutation_module(n, 3), m1, q, simples };
    let mut out = vec![m1_report(&cx)?, m2_report(&cx)?];
    if n.is_multiple_of(4) {
        out.extend(m3_zero_mod4(&cx)?);
    } else {
        out.extend(m3_two_mod4(&cx)?);
    }
    Ok(out)
}
