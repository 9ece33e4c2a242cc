//! The acceptance-criteria runner. Check names start with the criterion id,
//! `c1` through `c11`.

use bhl_core::report::Check;
use serde_json::{json, Value};

use crate::commands::{self, Outcome};

/// The shipped diagram corpus, `(file name, text)`.
pub const CORPUS: &[(&str, &str)] = &[
    ("anti_twist.bdsl", include_str!("../../../corpus/anti_twist.bdsl")),
    ("anyonic_hopf.bdsl", include_str!("../../../corpus/anyonic_hopf.bdsl")),
    ("braided_module.bdsl", include_str!("../../../corpus/braided_module.bdsl")),
    ("naturality.bdsl", include_str!("../../../corpus/naturality.bdsl")),
    ("negative_control.bdsl", include_str!("../../../corpus/negative_control.bdsl")),
    ("yang_baxter.bdsl", include_str!("../../../corpus/yang_baxter.bdsl")),
    ("zigzag.bdsl", include_str!("../../../corpus/zigzag.bdsl")),
];

/// Cayley table of S_3 on [e, (12), (13), (23), (123), (132)].
pub const S3_CAYLEY: &str = include_str!("../../../assets/s3_cayley.json");

/// Frozen kernel dimensions of 1 − ς^H on the regular representation:
/// (p, μ, power, dim ker).
pub const STABLE_FIXTURES: &[(u64, u64, u64, usize)] = &[(2, 0, 1, 4), (2, 1, 1, 6), (2, 1, 2, 8), (3, 0, 1, 9), (5, 0, 1, 25)];

/// Frozen S_3 class data: (size, centralizer order) by representative.
pub const S3_CLASSES: &[(usize, usize)] = &[(1, 6), (3, 2), (2, 3)];

fn tag(id: &str, checks: Vec<Check>) -> Vec<Check> {
    checks.into_iter().map(|c| c.prefixed(id)).collect()
}

/// Frozen-value checks over `stable-dim` data.
pub fn stable_fixture_checks(data: &Value) -> Vec<Check> {
    let mut out = Vec::new();
    for entry in data.as_array().into_iter().flatten() {
        let (p, mu) = (entry["p"].as_u64().unwrap_or(0), entry["mu"].as_u64().unwrap_or(0));
        for &(fp, fmu, power, dim) in STABLE_FIXTURES.iter().filter(|f| f.0 == p && f.1 == mu) {
            let got = entry["kernel_dims"]
                .as_array()
                .into_iter()
                .flatten()
                .find(|k| k["power"].as_u64() == Some(power))
                .and_then(|k| k["dim"].as_u64());
            out.push(Check::from_witness(
                format!("μ={fmu}.kernel fixture k={power}"),
                format!("p = {fp}: dim ker (1 − ς^H)^{power} = {dim}"),
                (got != Some(dim as u64)).then(|| format!("found {got:?}")),
            ));
        }
    }
    out
}

/// Frozen-value checks over `decompose rep-g` data for S_3.
pub fn s3_checks(data: &Value) -> Vec<Check> {
    let classes: Vec<(usize, usize, bool)> = data["classes"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|c| {
            (
                c["size"].as_u64().unwrap_or(0) as usize,
                c["centralizer_order"].as_u64().unwrap_or(0) as usize,
                c["singleton"].as_bool().unwrap_or(false),
            )
        })
        .collect();
    let shape: Vec<(usize, usize)> = classes.iter().map(|c| (c.0, c.1)).collect();
    let singletons = classes.iter().filter(|c| c.2).count();
    vec![
        Check::from_witness(
            "S_3 class sizes and centralizers",
            "sizes (1, 3, 2), centralizers (6, 2, 3)",
            (shape != S3_CLASSES).then(|| format!("found {shape:?}")),
        ),
        Check::from_witness(
            "exactly one singleton class",
            "only the identity is central",
            (singletons != 1).then(|| format!("{singletons} singleton classes")),
        ),
    ]
}

/// Frozen-value checks over `decompose vec-g` data at c = 1.
pub fn vec_g_checks(n: u64, data: &Value) -> Vec<Check> {
    let len = |k: &str| data[k].as_array().map(|a| a.len()).unwrap_or(0);
    let mut out = Vec::new();
    if n == 2 {
        let singletons = data["braided_classes"].as_array().into_iter().flatten().all(|c| c.as_array().map(|c| c.len()) == Some(1));
        out.push(Check::from_witness(
            "two singleton braided classes",
            "ω trivial",
            (len("braided_classes") != 2 || !singletons).then(|| format!("braided classes {}", data["braided_classes"])),
        ));
    } else if n % 2 == 1 && bhl_core::scalars::is_prime(n) {
        out.push(Check::from_witness(
            "one braided class",
            "ω an isomorphism",
            (len("braided_classes") != 1).then(|| format!("braided classes {}", data["braided_classes"])),
        ));
        let expected = (n as usize).div_ceil(2);
        out.push(Check::from_witness(
            "|I| = (p+1)/2",
            format!("expected {expected}"),
            (len("I") != expected || len("stable_classes") != expected).then(|| format!("|I| = {}, {} stable classes", len("I"), len("stable_classes"))),
        ));
    }
    if n == 3 {
        out.push(Check::from_witness(
            "multiplicities (1, 2)",
            "θ-values 1 and ξ",
            (data["multiplicities"] != json!([1, 2])).then(|| format!("found {}", data["multiplicities"])),
        ));
    }
    out
}

/// The corpus at N = n, c = 1, μ = 0. Ordinary scripts must pass; the
/// negative control must fail on every assertion with a witness.
pub fn corpus_checks(n: u64) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    for (name, text) in CORPUS {
        let checks = commands::dsl_check(text, n, 1, 0)?.checks;
        if name.starts_with("negative") {
            let bad = checks.iter().find(|c| c.passed() || c.witnesses.is_empty());
            out.push(Check::from_witness(
                format!("{name} rejected"),
                format!("{} assertions fail with witnesses", checks.len()),
                bad.map(|c| format!("{} did not fail with a witness", c.name)),
            ));
        } else {
            out.extend(checks.into_iter().map(|c| c.prefixed(name)));
        }
    }
    Ok(out)
}

/// Runs every criterion applicable at p. Returns the checks and the list of
/// criteria that ran.
pub fn run(p: u64, seed: u64) -> Result<(Vec<Check>, Vec<&'static str>), String> {
    let odd = p > 2 && bhl_core::scalars::is_prime(p);
    let mut out = Vec::new();
    let mut ran = Vec::new();
    let mut add = |id: &'static str, checks: Vec<Check>| {
        out.extend(tag(id, checks));
        ran.push(id);
    };

    let c1 = commands::hopf_axioms(p, 1, seed)?.checks;
    let powers: Vec<Check> = c1.iter().filter(|c| c.name.contains("coproduct_power")).cloned().collect();
    add("c1", c1);
    add("c2", commands::dual_algebra(p)?.checks);
    if odd {
        add("c3", commands::q_combinatorics(p)?.checks);
        let mut c4 = commands::uqsl2_iso(p, None)?.checks;
        c4.extend(powers);
        add("c4", c4);
        add("c5", commands::ribbon(p, None)?.checks);
        add("c6", commands::center(p)?.checks);
    }
    let Outcome { mut checks, data } = commands::stable_dim(p, None)?;
    checks.extend(stable_fixture_checks(data.as_ref().unwrap_or(&Value::Null)));
    add("c7", checks);
    if p == 2 {
        add("c8", commands::ayd(2, None, None)?.checks);
    }
    let Outcome { mut checks, data } = commands::decompose_vec(p, 1)?;
    checks.extend(vec_g_checks(p, data.as_ref().unwrap_or(&Value::Null)));
    add("c9", checks);
    let table: Value = serde_json::from_str(S3_CAYLEY).map_err(|e| e.to_string())?;
    let Outcome { mut checks, data } = commands::decompose_rep(&table)?;
    checks.extend(s3_checks(data.as_ref().unwrap_or(&Value::Null)));
    add("c10", checks);
    add("c11", corpus_checks(p)?);
    Ok((out, ran))
}
