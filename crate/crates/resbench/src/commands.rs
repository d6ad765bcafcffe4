//! One function per subcommand.

use anyhow::{bail, Result};
use serde_json::{json, Value};

use resbench_core::classical::{build_action, default_cases, rank3_battery, ClassicalCase};
use resbench_core::modstruct::{d_r, hom_battery, socle_series_wrt, structure_battery, RepModule};
use resbench_core::orbits::{
    bound_battery, h_bound, pair_orbit_parity_witness, reduction_certificate, stabilizer_two_rank, stats_checked,
    sym_blocks_e3, ActionSource, EmbeddingSpec, Omega, Status,
};
use resbench_core::partitions::{enumerate_partitions, label, mullineux, mullineux_symbol, Partition};
use resbench_core::permmod::{
    augmentation, eta, permutation_module, simple_head, specht_general, specht_two_row, trivial_module, two_row_simple,
    wilson_rank_any,
};

use crate::manifest;
use crate::output::{usage, Outcome};
use crate::{Cli, Command};

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cap = cli.cap();
    match &cli.command {
        Command::Mullineux { n, p, lambda } => cmd_mullineux(*n, *p, lambda),
        Command::Partitions { n, p } => cmd_partitions(*n, *p),
        Command::WilsonRank { n, r, s } => cmd_wilson(*n, *r, *s),
        Command::Specht { lambda } => cmd_specht(lambda),
        Command::Socle { n, module } => cmd_socle(*n, module),
        Command::Dr { lambda, r } => cmd_dr(lambda, r),
        Command::HomBattery { n, cap } => cmd_hom_battery(*n, *cap),
        Command::StructureBattery { n } => cmd_structure_battery(*n),
        Command::Orbits { spec, witness } => cmd_orbits(spec, *witness, cap),
        Command::E32 { a, s } => cmd_e32(*a, *s),
        Command::HBound { spec, check } => cmd_h_bound(spec, *check),
        Command::ReduceCert { spec, classical, assume_o2 } => {
            cmd_reduce(spec.as_deref(), classical.as_deref(), *assume_o2, cap)
        }
        Command::BoundBattery { m_lo, m_hi } => cmd_bound_battery(*m_lo, *m_hi),
        Command::Classical { cases } => cmd_classical(cases, cap, cli.seed()),
        Command::VerifyPaper { manifest, record, only } => manifest::verify(cli, manifest, record.as_deref(), only),
    }
}

fn parse_partition(s: &str) -> Result<Partition> {
    s.parse::<Partition>().map_err(|e| usage(format!("bad partition {s:?}: {e}")))
}

fn parse_spec(s: &str) -> Result<EmbeddingSpec> {
    s.parse::<EmbeddingSpec>().map_err(|e| usage(format!("bad spec {s:?}: {e}")))
}

fn parse_case(s: &str) -> Result<ClassicalCase> {
    s.parse::<ClassicalCase>().map_err(|e| usage(format!("bad case {s:?}: {e}")))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn cmd_mullineux(n: Option<usize>, p: u32, lambda: &str) -> Result<Outcome> {
    let lam = parse_partition(lambda)?;
    if let Some(n) = n {
        if lam.n() != n {
            return Err(usage(format!("λ = {lambda} is a partition of {}, not {n}", lam.n())));
        }
    }
    let sym = mullineux_symbol(&lam, p)?;
    let image = mullineux(&lam, p)?;
    let fixed = image == lam;
    let mut out = Outcome::new(
        "mullineux",
        json!({
            "lambda": lam.to_string(),
            "p": p,
            "symbol": sym.to_string(),
            "image": image.to_string(),
            "fixed": fixed,
        }),
    );
    out.line(format!("λ      = {}", label(&lam)));
    out.line(format!("G(λ)   = {sym}"));
    out.line(format!("λ^M    = {}", label(&image)));
    out.line(format!("fixed  = {fixed}"));
    let back = mullineux(&image, p)?;
    out.check("involution", back == lam, format!("M(λ^M) = {}", label(&back)));
    Ok(out)
}

fn cmd_partitions(n: usize, p: Option<u32>) -> Result<Outcome> {
    let parts: Vec<String> = enumerate_partitions(n, p).map(|l| l.to_string()).collect();
    let mut out = Outcome::new("partitions", json!({ "n": n, "p": p, "count": parts.len(), "partitions": parts }));
    for s in &parts {
        out.line(format!("({s})"));
    }
    out.line(format!("{} partitions", parts.len()));
    Ok(out)
}

fn cmd_wilson(n: usize, r: usize, s: usize) -> Result<Outcome> {
    if r > n || s > n {
        return Err(usage(format!("need r, s ≤ n, got n={n}, r={r}, s={s}")));
    }
    let formula = wilson_rank_any(n, r, s)?;
    let rank = eta(n, r, s).matrix.rank() as u128;
    let mut out = Outcome::new("wilson-rank", json!({ "n": n, "r": r, "s": s, "formula": formula, "rank": rank }));
    out.line(format!("rank η_{{{r},{s}}} over GF(2), n = {n}: {rank}"));
    out.check("formula", rank == formula, format!("formula {formula}, elimination {rank}"));
    Ok(out)
}

fn cmd_specht(lambda: &str) -> Result<Outcome> {
    let lam = parse_partition(lambda)?;
    let s = specht_general(&lam)?;
    let head = if lam.is_p_regular(2) { Some(simple_head(&lam)?.dim) } else { None };
    let mut out = Outcome::new("specht", json!({ "lambda": lam.to_string(), "specht_dim": s.dim, "head_dim": head }));
    out.line(format!("dim S^{} = {}", label(&lam), s.dim));
    match head {
        Some(d) => out.line(format!("dim D^{} = {d}", label(&lam))),
        None => out.line(format!("{} is not 2-regular; no simple head", label(&lam))),
    };
    Ok(out)
}

fn two_row_simples(n: usize) -> Result<Vec<RepModule>> {
    let mut simples = vec![trivial_module(n)];
    for r in 1..=3 {
        if 2 * r < n {
            simples.push(two_row_simple(n, r)?);
        }
    }
    Ok(simples)
}

fn cmd_socle(n: usize, module: &str) -> Result<Outcome> {
    if n < 4 {
        return Err(usage(format!("need n ≥ 4, got {n}")));
    }
    let m = match module {
        "m1" => permutation_module(n, 1),
        "m2" => permutation_module(n, 2),
        "m2prime" => permutation_module(n, 2).submodule(&augmentation(n, 2), "M'_2")?,
        "m3" => permutation_module(n, 3),
        "s2" => specht_two_row(n, 2)?,
        other => bail!(usage(format!("unknown module {other}"))),
    };
    let series = socle_series_wrt(&m, &two_row_simples(n)?)?;
    let rep = &series.report;
    let mut out = Outcome::new(
        "socle",
        json!({
            "n": n,
            "module": m.label,
            "dim": m.dim,
            "layers": to_value(&rep.layers),
            "layer_dims": rep.layer_dims(),
            "uniserial": rep.is_uniserial(),
        }),
    );
    out.line(format!("{} (n = {n}, dim {})", m.label, m.dim));
    for (i, layer) in rep.layers.iter().enumerate() {
        let parts: Vec<String> = layer
            .iter()
            .map(|c| if c.mult == 1 { c.simple.clone() } else { format!("{}×{}", c.mult, c.simple) })
            .collect();
        out.line(format!("  layer {}: {}", i + 1, parts.join(" ⊕ ")));
    }
    out.line(format!("uniserial: {}", rep.is_uniserial()));
    Ok(out)
}

fn cmd_dr(lambda: &str, rs: &[usize]) -> Result<Outcome> {
    let lam = parse_partition(lambda)?;
    let d = simple_head(&lam)?;
    let mut rows = Vec::new();
    let mut out = Outcome::new("dr", Value::Null);
    out.line(format!("D^{} (dim {})", label(&lam), d.dim));
    for &r in rs {
        if r == 0 || r >= lam.n() {
            return Err(usage(format!("need 1 ≤ r < n, got r={r}")));
        }
        let v = d_r(&d, r)?;
        out.line(format!("  d_{r} = {v}"));
        rows.push(json!({ "r": r, "d": v }));
    }
    out.data = json!({ "lambda": lam.to_string(), "dim": d.dim, "values": rows });
    Ok(out)
}

fn cmd_hom_battery(n: usize, cap: usize) -> Result<Outcome> {
    let rep = hom_battery(n, cap)?;
    let mut out = Outcome::new("hom-battery", to_value(&rep));
    out.line(format!("{:<14} {:>6} {:>4} {:>4}  expect", "λ", "dim", "d1", "d3"));
    for e in &rep.entries {
        let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let expect = if e.expect_equal { "d3 = d1" } else { "d3 > d1" };
        let note = e.skipped.as_deref().unwrap_or("");
        out.line(format!("({:<12}) {:>6} {:>4} {:>4}  {expect} {note}", e.lambda, e.dim, show(e.d1), show(e.d3)));
        out.check(&format!("({})", e.lambda), e.pass, expect);
    }
    if rep.skipped() > 0 {
        out.line(format!("{} partitions skipped above the dimension cap", rep.skipped()));
    }
    Ok(out)
}

fn cmd_structure_battery(n: usize) -> Result<Outcome> {
    let reports = structure_battery(n)?;
    let mut out = Outcome::new("structure-battery", json!({ "n": n, "reports": to_value(&reports) }));
    for r in &reports {
        if !r.layers.is_empty() {
            let dims: Vec<String> = r.layer_dims().iter().map(|d| d.to_string()).collect();
            out.line(format!("{}: layers {}", r.module, dims.join(", ")));
        }
        for c in &r.claims {
            out.check(&c.id, c.pass, &c.detail);
        }
    }
    Ok(out)
}

fn cmd_orbits(spec: &str, witness: bool, cap: u64) -> Result<Outcome> {
    let spec = parse_spec(spec)?;
    let (burnside, enumerated) = stats_checked(&spec, cap)?;
    let w = if witness {
        let omega = Omega::new(&spec)?;
        Some(pair_orbit_parity_witness(omega.len(), &omega.generators()?, cap)?)
    } else {
        None
    };
    let mut out = Outcome::new(
        "orbits",
        json!({
            "spec": spec.to_string(),
            "stats": to_value(&burnside),
            "enumerated": enumerated.is_some(),
            "witness": w.as_ref().map(to_value),
        }),
    );
    out.line(format!("{spec}"));
    out.line(format!("n   = {}", burnside.n));
    out.line(format!("f_1 = {}  f_2 = {}  f_3 = {}", burnside.f1, burnside.f2, burnside.f3));
    out.line(format!("e_2 = {}  e_3 = {}", burnside.e2, burnside.e3));
    out.line(if enumerated.is_some() {
        "Burnside and enumeration agree"
    } else {
        "Burnside only (above the enumeration cap)"
    });
    if let Some(w) = w {
        match w {
            Some(w) => out.line(format!(
                "parity witness: orbit of {{{}, {}}}, size {}",
                w.representative.0, w.representative.1, w.orbit_size
            )),
            None => out.line("no pair orbit is a parity witness"),
        };
    }
    Ok(out)
}

fn cmd_e32(a: usize, s: usize) -> Result<Outcome> {
    let e = sym_blocks_e3(a, s)?;
    let mut out = Outcome::new("e32", json!({ "a": a, "s": s, "e3": e }));
    out.line(format!("f_3 − f_2 for S_{} on partitions into {s} blocks of size {a}: {e}", a * s));
    Ok(out)
}

fn cmd_h_bound(spec: &str, check: bool) -> Result<Outcome> {
    let spec = parse_spec(spec)?;
    let hb = h_bound(&spec)?;
    let rank = if check { Some(stabilizer_two_rank(&spec)?) } else { None };
    let mut out = Outcome::new(
        "h-bound",
        json!({ "spec": spec.to_string(), "bound": to_value(&hb), "stabilizer_two_rank": rank }),
    );
    out.line(format!("{spec}"));
    out.line(format!("dim H¹ contribution from M_1 ≤ {}, h ≤ {}", hb.dim_h1_m1, hb.h_max));
    if let Some(r) = rank {
        out.check("stabilizer", r == hb.dim_h1_m1, format!("dim Hom(X_1, F_2) = {r}"));
    }
    Ok(out)
}

fn cmd_reduce(spec: Option<&str>, classical: Option<&str>, assume_o2: bool, cap: u64) -> Result<Outcome> {
    let source = match (spec, classical) {
        (Some(s), None) => ActionSource::Spec(parse_spec(s)?),
        (None, Some(c)) => {
            let case = parse_case(c)?;
            let action = build_action(&case)?;
            ActionSource::Raw { n: action.degree(), gens: action.gens.clone(), h_max: case.h_max() }
        }
        _ => return Err(usage("give exactly one of --spec and --classical")),
    };
    let cert = reduction_certificate(&source, assume_o2, cap)?;
    let mut out = Outcome::new("reduce-cert", to_value(&cert));
    out.line(format!("{} (n = {}, h ≤ {})", cert.source, cert.n, cert.h_max));
    for c in &cert.checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Unknown => "????",
        };
        out.line(format!("  [{tag}] {}: {}", c.name, c.detail));
    }
    out.check("certificate", cert.satisfied, if cert.satisfied { "all hypotheses hold" } else { "not certified" });
    Ok(out)
}

fn cmd_bound_battery(m_lo: usize, m_hi: usize) -> Result<Outcome> {
    let rep = bound_battery(m_lo, m_hi)?;
    let mut out = Outcome::new("bound-battery", to_value(&rep));
    out.line(format!("{:<36} {:>12} {:>4} {:>6} {:>3}", "spec", "n", "f2", "e3", "h"));
    for e in &rep.entries {
        let id = e.spec.to_string();
        let show = |x: Option<String>| x.unwrap_or_else(|| "-".to_string());
        let (f2, e3) = (show(e.f2.map(|v| v.to_string())), show(e.e3.map(|v| v.to_string())));
        out.line(format!("{id:<36} {:>12} {f2:>4} {e3:>6} {:>3}", e.n, e.h_max));
        if let Some(why) = &e.excluded {
            out.line(format!("  {id}: excluded ({why})"));
        } else {
            out.check(&id, e.pass, format!("f2 ≥ 3 and e3 ≥ {}", e.h_max + 2));
        }
    }
    Ok(out)
}

fn cmd_classical(cases: &[String], cap: u64, seed: u64) -> Result<Outcome> {
    let cases = if cases.is_empty() {
        default_cases()
    } else {
        cases.iter().map(|c| parse_case(c)).collect::<Result<Vec<_>>>()?
    };
    let rep = rank3_battery(&cases, cap, seed)?;
    let mut out = Outcome::new("classical", to_value(&rep));
    out.line(format!("{:<14} {:>5} {:>4} {:>3} {:>3} {:>4} {:>5}", "case", "n", "rank", "f1", "f2", "f3", "bound"));
    for e in &rep.entries {
        out.line(format!(
            "{:<14} {:>5} {:>4} {:>3} {:>3} {:>4} {:>5}",
            e.case, e.n, e.rank, e.stats.f1, e.stats.f2, e.stats.f3, e.f3_bound
        ));
        let detail = if e.failures.is_empty() { "ok".to_string() } else { e.failures.join("; ") };
        out.check(&e.case, e.pass, detail);
    }
    Ok(out)
}
