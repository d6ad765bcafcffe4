//! Manifest of expected values and the registry of claims that produce them.
//!
//! A manifest is TOML:
//!
//! ```toml
//! schema = 1
//! seed = 1
//! cap_triples = 10000000
//! pending = ["some.claim"]   # slots to be filled by `--record`
//!
//! [claims]
//! "orbits.blocks_2_5.alt.f2" = 6
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{Context as _, Result};
use serde::{Deserialize, Serialize};
use serde_json::json;

use resbench_core::classical::{build_action, default_cases, rank3_battery, ClassicalCase, R3Report};
use resbench_core::modstruct::{branching_check, hom_battery, structure_battery, HomBatteryReport, StructureReport};
use resbench_core::orbits::{
    bound_battery, h_bound, stabilizer_two_rank, stats, sym_blocks_e3, ActionStats, BoundReport, EmbeddingSpec,
};
use resbench_core::partitions::{
    enumerate_partitions, ext2_irreducible_over_an, ext3_irreducible_over_an, mullineux, mullineux_symbol, Partition,
};
use resbench_core::permmod::{eta, wilson_rank_any, x_action_check};
use resbench_core::symgrp::GroupKind;

use crate::output::{usage, Outcome, SCHEMA};
use crate::Cli;

pub const DEFAULT_MANIFEST: &str = include_str!("../manifest/default.toml");

/// An expected or observed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Val {
    Bool(bool),
    Int(i64),
    Str(String),
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Bool(b) => write!(f, "{b}"),
            Val::Int(i) => write!(f, "{i}"),
            Val::Str(s) => write!(f, "{}", toml::Value::String(s.clone())),
        }
    }
}

impl From<bool> for Val {
    fn from(b: bool) -> Self {
        Val::Bool(b)
    }
}

impl From<i64> for Val {
    fn from(i: i64) -> Self {
        Val::Int(i)
    }
}

impl From<usize> for Val {
    fn from(i: usize) -> Self {
        Val::Int(i as i64)
    }
}

impl From<u64> for Val {
    fn from(i: u64) -> Self {
        Val::Int(i as i64)
    }
}

impl From<String> for Val {
    fn from(s: String) -> Self {
        Val::Str(s)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema: u32,
    pub seed: Option<u64>,
    pub cap_triples: Option<u64>,
    #[serde(default)]
    pub pending: Vec<String>,
    #[serde(default)]
    pub claims: BTreeMap<String, Val>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        let m: Manifest = toml::from_str(text).map_err(|e| usage(format!("manifest: {e}")))?;
        if m.schema != SCHEMA {
            return Err(usage(format!("manifest schema {} is not {SCHEMA}", m.schema)));
        }
        let known: Vec<&str> = registry().iter().map(|c| c.id).collect();
        for id in m.claims.keys().chain(&m.pending) {
            if !known.contains(&id.as_str()) {
                return Err(usage(format!("manifest: unknown claim id {id:?}")));
            }
        }
        if let Some(id) = m.pending.iter().find(|id| m.claims.contains_key(*id)) {
            return Err(usage(format!("manifest: claim {id:?} is both pending and filled")));
        }
        Ok(m)
    }

    pub fn load(which: &str) -> Result<Self> {
        if which == "default" {
            return Manifest::parse(DEFAULT_MANIFEST);
        }
        let text = fs::read_to_string(which).with_context(|| format!("cannot read manifest {which}"))?;
        Manifest::parse(&text)
    }
}

/// Memoized inputs shared between claims.
pub struct Ctx {
    pub seed: u64,
    pub cap: u64,
    stats: HashMap<String, ActionStats>,
    structure: HashMap<usize, Vec<StructureReport>>,
    hom: HashMap<usize, HomBatteryReport>,
    bound: Option<BoundReport>,
    r3: Option<R3Report>,
}

impl Ctx {
    pub fn new(seed: u64, cap: u64) -> Self {
        Ctx { seed, cap, stats: HashMap::new(), structure: HashMap::new(), hom: HashMap::new(), bound: None, r3: None }
    }

    fn stats(&mut self, spec: &str) -> Result<ActionStats> {
        if let Some(s) = self.stats.get(spec) {
            return Ok(s.clone());
        }
        let s = stats(&spec.parse::<EmbeddingSpec>()?)?;
        self.stats.insert(spec.to_string(), s.clone());
        Ok(s)
    }

    fn structure(&mut self, n: usize) -> Result<&[StructureReport]> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.structure.entry(n) {
            e.insert(structure_battery(n)?);
        }
        Ok(&self.structure[&n])
    }

    fn structure_claim(&mut self, n: usize, id: &str) -> Result<Val> {
        let found = self.structure(n)?.iter().flat_map(|r| &r.claims).find(|c| c.id == id).map(|c| c.pass);
        found.map(Val::Bool).ok_or_else(|| anyhow::anyhow!("structure battery at n={n} has no claim {id}"))
    }

    fn hom(&mut self, n: usize) -> Result<&HomBatteryReport> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.hom.entry(n) {
            e.insert(hom_battery(n, 1000)?);
        }
        Ok(&self.hom[&n])
    }

    fn bound(&mut self) -> Result<&BoundReport> {
        if self.bound.is_none() {
            self.bound = Some(bound_battery(11, 13)?);
        }
        Ok(self.bound.as_ref().unwrap())
    }

    fn r3(&mut self) -> Result<&R3Report> {
        if self.r3.is_none() {
            self.r3 = Some(rank3_battery(&default_cases(), self.cap, self.seed)?);
        }
        Ok(self.r3.as_ref().unwrap())
    }

    fn r3_entry(&mut self, case: &str) -> Result<&resbench_core::classical::R3Entry> {
        let key = case.parse::<ClassicalCase>()?.to_string();
        self.r3()?.entries.iter().find(|e| e.case == key).ok_or_else(|| anyhow::anyhow!("no classical case {case}"))
    }
}

type Eval = Box<dyn Fn(&mut Ctx) -> Result<Val>>;

pub struct ClaimDef {
    pub id: &'static str,
    pub eval: Eval,
}

fn claim(id: &'static str, f: impl Fn(&mut Ctx) -> Result<Val> + 'static) -> ClaimDef {
    ClaimDef { id, eval: Box::new(f) }
}

fn part(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

/// Every claim the manifest may name, in report order.
pub fn registry() -> Vec<ClaimDef> {
    let mut v = vec![
        claim("mullineux.involution.upto_18", |_| {
            let mut ok = true;
            for p in [2, 3, 5, 7] {
                for n in 1..=18 {
                    for lam in enumerate_partitions(n, Some(p)) {
                        ok &= mullineux(&mullineux(&lam, p)?, p)? == lam;
                    }
                }
            }
            Ok(ok.into())
        }),
        claim("mullineux.p2_identity.upto_18", |_| {
            let mut ok = true;
            for n in 1..=18 {
                for lam in enumerate_partitions(n, Some(2)) {
                    ok &= mullineux(&lam, 2)? == lam;
                }
            }
            Ok(ok.into())
        }),
        claim("mullineux.large_p_is_conjugate.upto_18", |_| {
            let mut ok = true;
            for p in [2u32, 3, 5, 7, 11, 13, 17, 19] {
                for n in 1..(p as usize).min(19) {
                    for lam in enumerate_partitions(n, Some(p)) {
                        ok &= mullineux(&lam, p)? == lam.conjugate();
                    }
                }
            }
            Ok(ok.into())
        }),
        claim("mullineux.p3.6_3_1.symbol", |_| Ok(mullineux_symbol(&part("6,3,1"), 3)?.to_string().into())),
        claim("mullineux.p3.6_3_1.image", |_| Ok(mullineux(&part("6,3,1"), 3)?.to_string().into())),
        claim("wilson.formula_matches_elimination.upto_12", |_| {
            let mut ok = true;
            for n in 1..=12 {
                for r in 0..=n {
                    for s in 0..=n {
                        if r.min(s) + r.max(s) <= n {
                            ok &= eta(n, r, s).matrix.rank() as u128 == wilson_rank_any(n, r, s)?;
                        }
                    }
                }
            }
            Ok(ok.into())
        }),
        claim("wilson.eta_1_2.n12", |_| Ok((eta(12, 1, 2).matrix.rank()).into())),
        claim("wilson.eta_2_3.n12", |_| Ok((eta(12, 2, 3).matrix.rank()).into())),
        claim("wilson.eta_1_3.n12", |_| Ok((eta(12, 1, 3).matrix.rank()).into())),
        claim("x_action.tabloid_coefficient", |_| Ok(x_action_check()?.coefficient.into())),
        claim("x_action.nonzero_on_specht", |_| Ok((!x_action_check()?.annihilates_specht).into())),
    ];
    for n in [6usize, 8] {
        let id: &'static str = if n == 6 { "hom_battery.n6.pass" } else { "hom_battery.n8.pass" };
        v.push(claim(id, move |cx| {
            let h = cx.hom(n)?;
            Ok((h.all_pass() && h.skipped() == 0).into())
        }));
        let id: &'static str = if n == 6 { "hom_battery.n6.equal_cases" } else { "hom_battery.n8.equal_cases" };
        v.push(claim(id, move |cx| {
            let eq: Vec<String> = cx
                .hom(n)?
                .entries
                .iter()
                .filter(|e| e.d1.is_some() && e.d1 == e.d3)
                .map(|e| format!("({})", e.lambda))
                .collect();
            Ok(eq.join(" ").into())
        }));
    }
    for (n, layers, claims, extra) in [
        (8usize, "structure.n8.m1_layers", "structure.n8.claims", None),
        (10, "structure.n10.m1_layers", "structure.n10.claims", Some("structure.n10.augmentation_uniserial")),
        (12, "structure.n12.m1_layers", "structure.n12.claims", None),
        (14, "structure.n14.m1_layers", "structure.n14.claims", Some("structure.n14.augmentation_uniserial")),
    ] {
        v.push(claim(layers, move |cx| {
            let r = cx.structure(n)?.iter().find(|r| r.module == "M_1").map(|r| r.layer_dims()).unwrap_or_default();
            Ok(r.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",").into())
        }));
        v.push(claim(claims, move |cx| {
            let reps = cx.structure(n)?;
            Ok((reps.iter().all(|r| r.all_claims_pass()) && reps.iter().any(|r| !r.claims.is_empty())).into())
        }));
        if let Some(id) = extra {
            v.push(claim(id, move |cx| cx.structure_claim(n, "m2.augmentation_uniserial")));
        }
    }
    v.extend([
        claim("orbits.blocks_2_5.alt.degree", |cx| Ok(cx.stats("blocks:a=2,b=5,group=alt")?.n.into())),
        claim("orbits.blocks_2_5.alt.f2", |cx| Ok(cx.stats("blocks:a=2,b=5,group=alt")?.f2.into())),
        claim("orbits.blocks_2_5.alt.f3", |cx| Ok(cx.stats("blocks:a=2,b=5,group=alt")?.f3.into())),
        claim("e32.blocks_3_3.sym", |_| Ok(sym_blocks_e3(3, 3)?.into())),
        claim("orbits.blocks_4_2.alt.f3", |cx| Ok(cx.stats("blocks:a=4,b=2,group=alt")?.f3.into())),
        claim("orbits.blocks_4_2.sym.f3", |cx| Ok(cx.stats("blocks:a=4,b=2,group=sym")?.f3.into())),
        claim("orbits.blocks_3_2.alt.e2", |cx| Ok(cx.stats("blocks:a=3,b=2,group=alt")?.e2.into())),
        claim("orbits.blocks_2_3.alt.e2", |cx| Ok(cx.stats("blocks:a=2,b=3,group=alt")?.e2.into())),
        claim("orbits.blocks_4_2.alt.e2", |cx| Ok(cx.stats("blocks:a=4,b=2,group=alt")?.e2.into())),
        claim("orbits.blocks_5_2.alt.e2", |cx| Ok(cx.stats("blocks:a=5,b=2,group=alt")?.e2.into())),
        claim("orbits.blocks_3_3.alt.e2", |cx| Ok(cx.stats("blocks:a=3,b=3,group=alt")?.e2.into())),
        claim("orbits.ksubsets.f2_equals_k.m6_12", |cx| {
            let mut ok = true;
            for m in 6..=12usize {
                for k in 2..m.div_ceil(2) {
                    for g in ["alt", "sym"] {
                        ok &= cx.stats(&format!("ksubsets:m={m},k={k},group={g}"))?.f2 == k as u64;
                    }
                }
            }
            Ok(ok.into())
        }),
        claim("bound_battery.m11_13.pass", |cx| Ok(cx.bound()?.all_pass().into())),
        claim("bound_battery.m11_13.checked", |cx| {
            Ok(cx.bound()?.entries.iter().filter(|e| e.excluded.is_none()).count().into())
        }),
        claim("ext_criteria.never_mullineux_fixed.upto_14", |_| {
            let mut ok = true;
            for p in [3u32, 5] {
                for n in 1..=14 {
                    for lam in enumerate_partitions(n, Some(p)) {
                        if ext2_irreducible_over_an(&lam, p)? || ext3_irreducible_over_an(&lam, p)? {
                            ok &= mullineux(&lam, p)? != lam;
                        }
                    }
                }
            }
            Ok(ok.into())
        }),
        claim("ext_criteria.passing.upto_14", |_| {
            let mut count = 0usize;
            for p in [3u32, 5] {
                for n in 1..=14 {
                    for lam in enumerate_partitions(n, Some(p)) {
                        if ext2_irreducible_over_an(&lam, p)? || ext3_irreducible_over_an(&lam, p)? {
                            count += 1;
                        }
                    }
                }
            }
            Ok(count.into())
        }),
        claim("h_bound.stabilizer_rank_matches.upto_10", |_| {
            let mut ok = true;
            for m in 5..=10 {
                for spec in EmbeddingSpec::all_for(m, GroupKind::Alt) {
                    ok &= stabilizer_two_rank(&spec)? == h_bound(&spec)?.dim_h1_m1;
                }
            }
            Ok(ok.into())
        }),
        claim("h_bound.blocks_4_2.alt.stabilizer_rank", |_| {
            Ok(stabilizer_two_rank(&EmbeddingSpec::blocks(4, 2, GroupKind::Alt)?)?.into())
        }),
        claim("h_bound.blocks_4_4.alt.stabilizer_rank", |_| {
            Ok(stabilizer_two_rank(&EmbeddingSpec::blocks(4, 4, GroupKind::Alt)?)?.into())
        }),
    ]);
    for (case, deg, pass) in [
        ("sl:d=4,q=2", "classical.sl_4_2.degree", "classical.sl_4_2.pass"),
        ("sl:d=4,q=3", "classical.sl_4_3.degree", "classical.sl_4_3.pass"),
        ("sp:d=4,q=3", "classical.sp_4_3.degree", "classical.sp_4_3.pass"),
        ("su:d=4,q=2", "classical.su_4_2.degree", "classical.su_4_2.pass"),
        ("su:d=4,q=3", "classical.su_4_3.degree", "classical.su_4_3.pass"),
        ("o:d=5,q=3", "classical.o_5_3.degree", "classical.o_5_3.pass"),
        ("o+:d=6,q=2", "classical.o_plus_6_2.degree", "classical.o_plus_6_2.pass"),
        ("o-:d=6,q=2", "classical.o_minus_6_2.degree", "classical.o_minus_6_2.pass"),
    ] {
        v.push(claim(deg, move |_| Ok((build_action(&case.parse::<ClassicalCase>()?)?.degree()).into())));
        v.push(claim(pass, move |cx| Ok(cx.r3_entry(case)?.pass.into())));
    }
    v.push(claim("classical.sl_4_2.f3", |cx| Ok(cx.r3_entry("sl:d=4,q=2")?.stats.f3.into())));
    for (lam, k, id) in [
        ("7,1", 3usize, "branching.7_1.k3"),
        ("7,1", 4, "branching.7_1.k4"),
        ("6,2", 3, "branching.6_2.k3"),
        ("6,2", 4, "branching.6_2.k4"),
    ] {
        v.push(claim(id, move |cx| {
            let r = branching_check(&part(lam), k, cx.seed)?;
            Ok((r.has_trivial && r.has_natural).into())
        }));
    }
    v
}

struct Row {
    id: &'static str,
    expected: Option<Val>,
    observed: std::result::Result<Val, String>,
}

pub fn verify(cli: &Cli, which: &str, record: Option<&Path>, only: &[String]) -> Result<Outcome> {
    let manifest = Manifest::load(which)?;
    let seed = cli.seed.or(manifest.seed).unwrap_or(crate::DEFAULT_SEED);
    let cap = cli.cap_triples.or(manifest.cap_triples).unwrap_or(resbench_core::orbits::DEFAULT_TRIPLE_CAP);
    let mut cx = Ctx::new(seed, cap);
    let selected = |id: &str| only.is_empty() || only.iter().any(|p| id.starts_with(p.as_str()));
    let mut rows = Vec::new();
    for def in registry() {
        let expected = manifest.claims.get(def.id).cloned();
        let listed = expected.is_some() || manifest.pending.iter().any(|p| p == def.id);
        if !listed || !selected(def.id) {
            continue;
        }
        let observed = (def.eval)(&mut cx).map_err(|e| format!("{e:#}"));
        rows.push(Row { id: def.id, expected, observed });
    }
    let mut out = Outcome::new("verify-paper", serde_json::Value::Null);
    let mut results = Vec::new();
    for r in &rows {
        let (status, detail) = match (&r.expected, &r.observed) {
            (_, Err(e)) => ("error", e.clone()),
            (Some(exp), Ok(obs)) if exp == obs => ("pass", format!("{obs}")),
            (Some(exp), Ok(obs)) => ("fail", format!("expected {exp}, observed {obs}")),
            (None, Ok(obs)) => ("pending", format!("observed {obs}")),
        };
        match status {
            "pending" => {
                out.line(format!("[....] {}: {detail}", r.id));
            }
            s => {
                out.check(r.id, s == "pass", detail);
            }
        }
        results.push(json!({
            "id": r.id,
            "status": status,
            "expected": r.expected,
            "observed": r.observed.as_ref().ok(),
        }));
    }
    let failed = results.iter().filter(|r| r["status"] == "fail" || r["status"] == "error").count();
    out.line(format!("{} claims, {failed} failed", results.len()));
    out.data = json!({ "manifest": which, "seed": seed, "cap_triples": cap, "claims": results });
    if let Some(path) = record {
        let text = render(seed, cap, &rows)?;
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
        out.line(format!("recorded {} claims to {}", rows.len(), path.display()));
    }
    Ok(out)
}

/// A manifest with every slot set to the observed value where one was
/// expected or pending; failed slots keep their expected value.
fn render(seed: u64, cap: u64, rows: &[Row]) -> Result<String> {
    let mut s = format!("schema = {SCHEMA}\nseed = {seed}\ncap_triples = {cap}\n\n[claims]\n");
    for r in rows {
        let v = match (&r.expected, &r.observed) {
            (Some(e), _) => e.clone(),
            (None, Ok(o)) => o.clone(),
            (None, Err(e)) => anyhow::bail!("cannot record {}: {e}", r.id),
        };
        s.push_str(&format!("{:?} = {v}\n", r.id));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_manifest_loads() {
        let m = Manifest::parse(DEFAULT_MANIFEST).unwrap();
        assert!(m.pending.is_empty());
        assert_eq!(m.claims.len(), registry().len());
    }

    #[test]
    fn registry_ids_are_unique() {
        let reg = registry();
        let mut ids: Vec<&str> = reg.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
    }

    #[test]
    fn unknown_ids_are_rejected() {
        assert!(Manifest::parse("schema = 1\n[claims]\n\"nope\" = 1\n").is_err());
        assert!(Manifest::parse("schema = 2\n").is_err());
        assert!(Manifest::parse("schema = 1\npending = [\"e32.blocks_3_3.sym\"]\n").is_ok());
    }

    #[test]
    fn values_render_as_toml() {
        for v in [Val::Str("a\"b'c".into()), Val::Str("7/3,3/1".into()), Val::Int(-3), Val::Bool(true)] {
            let t: BTreeMap<String, Val> = toml::from_str(&format!("x = {v}")).unwrap();
            assert_eq!(t["x"], v);
        }
    }
}
