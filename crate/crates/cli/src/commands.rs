use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use dixmier_core::clifford::verification_suite;
use dixmier_core::cohomology::{cohomology, cohomology_all, CoefficientRing};
use dixmier_core::linalg::{bigint_to_json, FgAbelianGroup};
use dixmier_core::simplicial::{builtin, catalog_names, SimplicialComplex};
use dixmier_core::ssa::{
    absorbs, catalog_algebras, homotopy_groups_aut, k0, pi0_aut_graded, positive_units, units, SsaDescriptor,
};
use dixmier_core::twisted::{
    brauer_group, build_twisted_group, bundle_group, check_group_axioms, AxiomReport, TwistedGroupStructure,
};

use crate::{Command, SpaceArgs};

pub struct Outcome {
    pub text: String,
    /// False when a checked identity failed.
    pub verified: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, verified: true }
    }
}

fn load_space(arg: &str) -> Result<SimplicialComplex> {
    let from_text = |text: &str, origin: &str| SimplicialComplex::from_json(text).with_context(|| format!("reading {origin}"));
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return from_text(&text, "stdin");
    }
    if arg.ends_with(".json") || Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        return from_text(&text, arg);
    }
    Ok(builtin(arg)?)
}

fn group_value(g: &FgAbelianGroup) -> Value {
    json!({ "rank": g.free_rank, "torsion": g.torsion.iter().map(bigint_to_json).collect::<Vec<_>>() })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

pub fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Cohomology { space, ring, deg, json } => cohomology_cmd(&space, &ring, deg, json),
        Command::TwistedGroup(a) => twisted_cmd(&a),
        Command::BundleGroup(a) => bundle_cmd(&a),
        Command::Brauer(a) => brauer_cmd(&a),
        Command::CliffordVerify { all, check, trials, seed, json } => clifford_cmd(all, check.as_deref(), trials, seed, json),
        Command::SsaInfo { name, algebra, json } => ssa_cmd(name.or(algebra).as_deref(), json),
        Command::Catalog { json } => catalog_cmd(json),
    }
}

fn cohomology_cmd(space: &str, ring: &str, deg: Option<usize>, as_json: bool) -> Result<Outcome> {
    let x = load_space(space)?;
    let ring: CoefficientRing = ring.parse()?;
    if let Some(k) = deg {
        let h = cohomology(&x, k, &ring)?;
        return Ok(Outcome::ok(group_value(h.group()).to_string()));
    }
    let all = cohomology_all(&x, &ring);
    if as_json {
        let v: Vec<_> = all
            .iter()
            .map(|h| {
                let mut g = group_value(h.group());
                g["degree"] = json!(h.degree());
                g
            })
            .collect();
        return Ok(Outcome::ok(pretty(&json!({ "space": space, "ring": ring.to_string(), "groups": v }))));
    }
    let mut s = String::new();
    for h in &all {
        writeln!(s, "H^{}({space}; {ring}) = {}", h.degree(), h.group())?;
    }
    Ok(Outcome::ok(s.trim_end().to_string()))
}

fn axioms_text(r: &AxiomReport) -> String {
    let scope = match r.enumerated {
        Some(n) if r.exhaustive() => format!("exhaustive over {n} elements"),
        Some(n) => format!("{n} elements enumerated, {} sampled triples", r.associativity_checks),
        None => format!("{} sampled triples", r.associativity_checks),
    };
    if r.passed() {
        format!("group axioms: pass ({scope})")
    } else {
        let mut s = format!("group axioms: FAIL ({scope})");
        for f in &r.failures {
            let _ = write!(s, "\n  {}: {} with witness {}", f.axiom, f.detail, f.witness.join(", "));
        }
        s
    }
}

fn twisted_text(s: &TwistedGroupStructure, out: &mut String) {
    let _ = writeln!(out, "algebra: {} (K0 = {})", s.algebra(), k0(s.algebra()));
    let _ = writeln!(out, "H^1(X; Z/2): rank {}", s.h1_rank());
    let _ = writeln!(out, "T = H^3(X; {}): {}", s.coefficient_ring(), s.t_group());
    if s.is_untwisted() {
        let _ = writeln!(out, "cocycle table: zero");
    } else {
        let _ = writeln!(out, "cocycle table:");
        for i in 0..s.h1_rank() {
            for j in i + 1..s.h1_rank() {
                let e: Vec<_> = s.table_entry(i, j).iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "  c(e{i}, e{j}) = [{}]", e.join(" "));
            }
        }
    }
}

fn finish(mut text: String, mut v: Value, report: AxiomReport, as_json: bool) -> Outcome {
    let verified = report.passed();
    if as_json {
        v["axioms"] = serde_json::to_value(&report).expect("reports serialize");
        text = pretty(&v);
    } else {
        text.push_str(&axioms_text(&report));
    }
    Outcome { text, verified }
}

fn twisted_cmd(a: &SpaceArgs) -> Result<Outcome> {
    let x = load_space(&a.space)?;
    let d: SsaDescriptor = a.algebra.parse()?;
    let s = build_twisted_group(&x, &d)?;
    let report = check_group_axioms(&s, a.samples, a.seed);
    let mut text = String::new();
    twisted_text(&s, &mut text);
    writeln!(text, "isomorphism type: {}", s.isomorphism_type())?;
    let mut v = s.to_json();
    v["space"] = json!(a.space);
    Ok(finish(text, v, report, a.json))
}

fn bundle_cmd(a: &SpaceArgs) -> Result<Outcome> {
    let x = load_space(&a.space)?;
    let d: SsaDescriptor = a.algebra.parse()?;
    let g = bundle_group(&x, &d)?;
    let report = check_group_axioms(&g, a.samples, a.seed);
    let mut text = format!("components: {}\n", g.components());
    twisted_text(g.twisted(), &mut text);
    writeln!(text, "bundle group: {}", g.isomorphism_type())?;
    let mut v = g.to_json();
    v["space"] = json!(a.space);
    Ok(finish(text, v, report, a.json))
}

fn brauer_cmd(a: &SpaceArgs) -> Result<Outcome> {
    let x = load_space(&a.space)?;
    let d: SsaDescriptor = a.algebra.parse()?;
    let g = brauer_group(&x, &d)?;
    let report = check_group_axioms(&g, a.samples, a.seed);
    let mut text = format!("components: {}\n", g.components());
    twisted_text(g.twisted(), &mut text);
    writeln!(text, "Brauer group: {} (order {})", g.isomorphism_type(), g.order())?;
    let mut v = g.to_json();
    v["space"] = json!(a.space);
    Ok(finish(text, v, report, a.json))
}

fn clifford_cmd(all: bool, filter: Option<&str>, trials: usize, seed: u64, as_json: bool) -> Result<Outcome> {
    let checks: Vec<_> = verification_suite(seed, trials)
        .into_iter()
        .filter(|c| all || filter.is_some_and(|f| c.name.contains(f)))
        .collect();
    if checks.is_empty() {
        bail!("no check matches `{}`", filter.unwrap_or_default());
    }
    let verified = checks.iter().all(|c| c.passed);
    let text = if as_json {
        pretty(&json!({ "passed": verified, "checks": checks }))
    } else {
        let mut s = String::new();
        for c in &checks {
            match &c.witness {
                None => writeln!(s, "pass  {}", c.name)?,
                Some(w) => writeln!(s, "FAIL  {}: {w}", c.name)?,
            }
        }
        let passed = checks.iter().filter(|c| c.passed).count();
        write!(s, "{passed}/{} checks passed", checks.len())?;
        s
    };
    Ok(Outcome { text, verified })
}

fn ssa_value(d: &SsaDescriptor) -> Value {
    let pi: Vec<String> = (0..4).map(|i| homotopy_groups_aut(d, i).to_string()).collect();
    let absorbed_by: Vec<String> =
        catalog_algebras().iter().filter(|big| absorbs(d, big)).map(|big| big.to_string()).collect();
    json!({
        "algebra": d.to_string(),
        "k0": k0(d).to_string(),
        "units": units(d).to_string(),
        "positive_units": positive_units(d).to_string(),
        "pi_aut": pi,
        "pi0_aut_graded": pi0_aut_graded(d).to_string(),
        "purely_infinite": d.is_purely_infinite(),
        "stably_finite": d.is_stably_finite(),
        "absorbed_by": absorbed_by,
    })
}

fn ssa_cmd(name: Option<&str>, as_json: bool) -> Result<Outcome> {
    let list = match name {
        Some(n) => vec![n.parse::<SsaDescriptor>()?],
        None => catalog_algebras(),
    };
    let values: Vec<Value> = list.iter().map(ssa_value).collect();
    if as_json {
        let v = if name.is_some() { values[0].clone() } else { Value::Array(values) };
        return Ok(Outcome::ok(pretty(&v)));
    }
    let mut s = String::new();
    for v in &values {
        let field = |k: &str| v[k].as_str().unwrap_or_default().to_string();
        let pi: Vec<_> = v["pi_aut"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        writeln!(
            s,
            "{:<12} K0 = {:<10} units = {:<16} positive units = {:<14} pi_i(Aut) = [{}]  pi0(Aut_gr) = {}",
            field("algebra"),
            field("k0"),
            field("units"),
            field("positive_units"),
            pi.join(", "),
            field("pi0_aut_graded"),
        )?;
    }
    Ok(Outcome::ok(s.trim_end().to_string()))
}

fn catalog_cmd(as_json: bool) -> Result<Outcome> {
    let mut rows = Vec::new();
    for name in catalog_names() {
        let x = builtin(name)?;
        let z = cohomology_all(&x, &CoefficientRing::Z);
        let f2 = cohomology_all(&x, &CoefficientRing::F2);
        rows.push(json!({
            "name": name,
            "vertices": x.n_vertices(),
            "dimension": x.dimension(),
            "f_vector": x.f_vector(),
            "euler_characteristic": x.euler_characteristic(),
            "betti": z.iter().map(|h| h.group().free_rank).collect::<Vec<_>>(),
            "betti_f2": f2.iter().map(|h| h.group().generator_count()).collect::<Vec<_>>(),
            "integral": z.iter().map(|h| h.group().to_string()).collect::<Vec<_>>(),
        }));
    }
    if as_json {
        return Ok(Outcome::ok(pretty(&Value::Array(rows))));
    }
    let mut s = format!("{:<10} {:>4} {:>4} {:>6}  {:<14} {:<14} integral cohomology\n", "name", "dim", "vert", "chi", "betti", "betti mod 2");
    for r in &rows {
        let list = |k: &str| {
            let v: Vec<String> = r[k].as_array().into_iter().flatten().map(|x| x.to_string()).collect();
            v.join(" ")
        };
        let integral: Vec<_> = r["integral"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        writeln!(
            s,
            "{:<10} {:>4} {:>4} {:>6}  {:<14} {:<14} {}",
            r["name"].as_str().unwrap_or_default(),
            r["dimension"].to_string(),
            r["vertices"].to_string(),
            r["euler_characteristic"].to_string(),
            list("betti"),
            list("betti_f2"),
            integral.join(", "),
        )?;
    }
    Ok(Outcome::ok(s.trim_end().to_string()))
}
