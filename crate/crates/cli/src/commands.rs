//! One function per subcommand. Each returns the report text plus a pass
//! flag: `Ok((text, false))` is a property failure (exit 1), `Err` is an
//! invalid-input/usage failure (exit 2).

use std::collections::BTreeSet;

use idealtop_core::cofinite::{
    cf_extend_to_envelope, cf_is_limit_set, cf_is_prime, cofull, finite, SetDescriptor,
};
use idealtop_core::cstar::{
    self, induced_retraction_config, min_primal, verify_hull_identities, verify_theorem_min,
    BlockAlgebra, BlockIdeal,
};
use idealtop_core::dot::hasse_dot;
use idealtop_core::envelope::{extend_to_envelope, sobrify};
use idealtop_core::hyperspace::build_hyperspace;
use idealtop_core::limit::{is_limit_set, limit_witness_family, max_limit_sets};
use idealtop_core::poset::SpaceMap;
use idealtop_core::retraction::{
    build_theta, cfg0, check_hypothesis, search_counterexample, validate_config, RetractionConfig,
};
use idealtop_core::subset::Subset;

use crate::parse::{
    emit_algebra, emit_map, emit_space, parse_set_literal, MapEntry, SpaceEntry, SpaceRef,
    Workspace,
};

/// Invalid-input failure: printed to stderr, exit status 2.
pub struct UsageError(pub String);

fn usage(e: impl ToString) -> UsageError {
    UsageError(e.to_string())
}

type Outcome = Result<(String, bool), UsageError>;

pub fn envelope(ws: &Workspace, space: &str, limit: usize) -> Outcome {
    if space == "cofinite" {
        let env = idealtop_core::cofinite::cf_sobrify();
        let mut out = String::from("PRIME singletons (schema)\nGENERIC: whole space\n");
        out.push_str(&format!("non-point primes: {}\n", env.non_point_prime_count()));
        return Ok((out, true));
    }
    let entry = lookup_space(ws, space)?;
    let env = sobrify(&entry.poset, limit).map_err(usage)?;
    let non_point: BTreeSet<usize> = env.non_point_primes().into_iter().collect();
    let mut out = String::new();
    for (k, p) in env.primes().iter().enumerate() {
        out.push_str("PRIME ");
        out.push_str(&entry.set_name(p));
        if non_point.contains(&k) {
            out.push_str(" (non-point)");
        }
        out.push('\n');
    }
    out.push_str(&format!("non-point primes: {}\n", non_point.len()));
    Ok((out, true))
}

pub fn ml(ws: &Workspace, space: &str) -> Outcome {
    if space == "cofinite" {
        return Ok((String::from("cofull\n"), true));
    }
    let entry = lookup_space(ws, space)?;
    let family = max_limit_sets(&entry.poset);
    let mut out = String::new();
    for m in family.members() {
        out.push_str(&entry.set_name(m));
        out.push('\n');
    }
    Ok((out, true))
}

pub fn limit(ws: &Workspace, space: &str, set: &str) -> Outcome {
    if space == "cofinite" {
        let s = parse_cofinite_set(set)?;
        let yes = cf_is_limit_set(&s).map_err(usage)?;
        return Ok((format!("LIMIT {set}: {}\n", yes_no(yes)), yes));
    }
    let entry = lookup_space(ws, space)?;
    let s = point_set(entry, set)?;
    let yes = is_limit_set(&entry.poset, &s).map_err(usage)?;
    let mut out = format!("LIMIT {}: {}\n", entry.set_name(&s), yes_no(yes));
    if !yes {
        out.push_str("witness family:\n");
        for u in limit_witness_family(&entry.poset, &s).expect("not a limit set") {
            out.push_str("  ");
            out.push_str(&entry.set_name(&u));
            out.push('\n');
        }
    }
    Ok((out, yes))
}

pub fn prime(ws: &Workspace, space: &str, set: &str, limit: usize) -> Outcome {
    if space == "cofinite" {
        let s = parse_cofinite_set(set)?;
        let yes = cf_is_prime(&s).map_err(usage)?;
        return Ok((format!("PRIME {set}: {}\n", yes_no(yes)), yes));
    }
    let entry = lookup_space(ws, space)?;
    let s = point_set(entry, set)?;
    let yes = idealtop_core::envelope::is_prime(&entry.poset, &s, limit)
        .map_err(usage)?;
    Ok((format!("PRIME {}: {}\n", entry.set_name(&s), yes_no(yes)), yes))
}

pub fn hyper(ws: &Workspace, space: &str, limit: usize, dot: Option<&mut String>) -> Outcome {
    let entry = lookup_space(ws, space)?;
    let h = build_hyperspace(&entry.poset, limit).map_err(usage)?;
    // member names in declaration order, so the emitted file is readable
    // alongside the input
    let display: Vec<String> = h.members().iter().map(|m| entry.set_name(m)).collect();
    let hyper_entry = SpaceEntry {
        poset: rename(h.as_poset(), &display),
        display,
    };
    let name = format!("hyper({space})");
    if let Some(dot_out) = dot {
        *dot_out = hasse_dot(&hyper_entry.poset, &name, None);
    }
    Ok((emit_space(&name, &hyper_entry), true))
}

pub fn extend(ws: &Workspace, map: &str, limit: usize) -> Outcome {
    let entry = ws
        .maps
        .get(map)
        .ok_or_else(|| UsageError(format!("unknown map `{map}`")))?;
    match entry {
        MapEntry::Finite { src, map, .. } => {
            let env = sobrify(map.source(), limit).map_err(usage)?;
            let ext = extend_to_envelope(map, &env).map_err(usage)?;
            let src_entry = match ws.resolve_space(src, 0, 0) {
                Ok(SpaceRef::Finite(e)) => e,
                _ => SpaceEntry::derived(map.source().clone()),
            };
            let mut out = String::new();
            for (k, p) in env.primes().iter().enumerate() {
                out.push_str(&format!(
                    "{} -> {}\n",
                    src_entry.set_name(p),
                    map.target().name(ext.apply(k))
                ));
            }
            Ok((out, true))
        }
        MapEntry::Cofinite { map, .. } => {
            let ext = cf_extend_to_envelope(map).map_err(usage)?;
            let mut out = format!(
                "default -> {}\n",
                map.target().name(map.default_value())
            );
            for (p, v) in map.exceptions() {
                out.push_str(&format!("{p} -> {}\n", map.target().name(*v)));
            }
            out.push_str(&format!(
                "GENERIC -> {}\n",
                map.target().name(ext.generic_value)
            ));
            Ok((out, true))
        }
    }
}

pub fn check_retraction(ws: &Workspace, name: &str, dot: Option<&mut String>) -> Outcome {
    let config = if name == "CFG0" {
        cfg0()
    } else {
        ws.configs
            .get(name)
            .ok_or_else(|| UsageError(format!("unknown config `{name}`")))?
            .clone()
    };
    if let Some(dot_out) = dot {
        // highlight Z = the image of phi inside Y
        let image = Subset::from_indices(
            config.y().len(),
            (0..config.phi().source().len()).map(|i| config.phi().apply(i)),
        );
        *dot_out = hasse_dot(config.y(), name, Some(&image));
    }
    let validation = validate_config(&config);
    let mut out = validation.to_string();
    if !validation.all_pass() {
        return Ok((out, false));
    }
    let outcome = check_hypothesis(&config).map_err(usage)?;
    if outcome.holds {
        out.push_str("HYPOTHESIS PASS\n");
        let theta = build_theta(&config).map_err(usage)?;
        out.push_str(&format!(
            "THETA homeomorphism: {} x {} pairs onto {} maximal limit sets\n",
            theta.ml1.len(),
            theta.ml2.len(),
            theta.ml_y.len()
        ));
        Ok((out, true))
    } else {
        let w = outcome.witness.expect("failing hypothesis carries a witness");
        out.push_str(&format!("HYPOTHESIS FAIL {}\n", w.describe(&config)));
        Ok((out, false))
    }
}

pub fn mine_cex(extra: usize, size: usize) -> Outcome {
    let found = search_counterexample(extra, size).map_err(usage)?;
    let mut out = format!("found {} configuration(s)\n", found.len());
    for (k, c) in found.iter().enumerate() {
        out.push('\n');
        out.push_str(&emit_config(&format!("cex{}", k + 1), c));
    }
    Ok((out, true))
}

/// Re-emits a configuration as a parseable workspace fragment.
pub fn emit_config(name: &str, c: &RetractionConfig) -> String {
    let x1 = SpaceEntry::derived(c.x1().clone());
    let x2 = SpaceEntry::derived(c.x2().clone());
    let y = SpaceEntry::derived(c.y().clone());
    let (nx1, nx2, ny) = (
        format!("{name}.x1"),
        format!("{name}.x2"),
        format!("{name}.y"),
    );
    let product = format!("{nx1}*{nx2}");
    let mut out = String::new();
    out.push_str(&emit_space(&nx1, &x1));
    out.push_str(&emit_space(&nx2, &x2));
    out.push_str(&emit_space(&ny, &y));
    out.push_str(&emit_map(
        &format!("{name}.phi"),
        &MapEntry::Finite {
            src: product.clone(),
            dst: ny.clone(),
            map: c.phi().clone(),
        },
    ));
    out.push_str(&emit_map(
        &format!("{name}.psi"),
        &MapEntry::Finite {
            src: ny.clone(),
            dst: product,
            map: c.psi().clone(),
        },
    ));
    out.push_str(&format!(
        "config {name}\nx1 {nx1}\nx2 {nx2}\ny {ny}\nphi {name}.phi\npsi {name}.psi\n"
    ));
    out
}

pub fn cstar_phi(ws: &Workspace, a: &str, b: &str) -> Outcome {
    let (_, i1) = algebra_ideal(ws, a)?;
    let (_, i2) = algebra_ideal(ws, b)?;
    let result = cstar::phi(&i1, &i2);
    Ok((format!("PHI = hull{}\n", result.hull_names()), true))
}

pub fn cstar_psi(ws: &Workspace, t: &str) -> Outcome {
    let (expr, lit) = t
        .split_once(':')
        .ok_or_else(|| UsageError(format!("expected `A*B:hull{{...}}`, got `{t}`")))?;
    let (na, nb) = expr
        .split_once('*')
        .ok_or_else(|| UsageError(format!("expected a tensor algebra `A*B`, got `{expr}`")))?;
    let a = lookup_algebra(ws, na)?;
    let b = lookup_algebra(ws, nb)?;
    let k = ideal_literal(&a.tensor(b), lit)?;
    let (i1, i2) = cstar::psi(&k, a, b);
    Ok((
        format!(
            "I1 = hull{}\nI2 = hull{}\n",
            i1.hull_names(),
            i2.hull_names()
        ),
        true,
    ))
}

pub fn cstar_verify_hulls(ws: &Workspace, a: &str, b: &str) -> Outcome {
    let a = lookup_algebra(ws, a)?;
    let b = lookup_algebra(ws, b)?;
    let report = verify_hull_identities(a, b).map_err(usage)?;
    let mut out = String::new();
    for check in report.checks.iter().filter(|c| !c.pass) {
        out.push_str(&format!(
            "FAIL {} -- {}\n",
            check.name,
            check.witness.as_deref().unwrap_or("")
        ));
    }
    out.push_str(&format!(
        "checked {} identities: {}\n",
        report.checks.len(),
        if report.all_pass() { "all pass" } else { "FAIL" }
    ));
    Ok((out, report.all_pass()))
}

pub fn cstar_verify_min(ws: &Workspace, a: &str, b: &str) -> Outcome {
    let a = lookup_algebra(ws, a)?;
    let b = lookup_algebra(ws, b)?;
    let report = verify_theorem_min(a, b).map_err(usage)?;
    let mut out = report.to_string();
    let theta = build_theta(&induced_retraction_config(a, b));
    if let Ok(theta) = theta {
        out.push_str(&format!(
            "MIN-PRIMAL {} x {} pairs onto {} minimal primal ideals\n",
            theta.ml1.len(),
            theta.ml2.len(),
            min_primal(&a.tensor(b)).len()
        ));
    }
    Ok((out, report.all_pass()))
}

pub fn emit(ws: &Workspace, name: &str) -> Outcome {
    if let Some(entry) = ws.spaces.get(name) {
        return Ok((emit_space(name, entry), true));
    }
    if let Some(entry) = ws.maps.get(name) {
        return Ok((emit_map(name, entry), true));
    }
    if let Some(a) = ws.algebras.get(name) {
        return Ok((emit_algebra(name, a), true));
    }
    if let Some(c) = ws.configs.get(name) {
        return Ok((emit_config(name, c), true));
    }
    Err(UsageError(format!("unknown object `{name}`")))
}

fn lookup_space<'a>(ws: &'a Workspace, name: &str) -> Result<&'a SpaceEntry, UsageError> {
    ws.spaces
        .get(name)
        .ok_or_else(|| UsageError(format!("unknown space `{name}`")))
}

fn lookup_algebra<'a>(ws: &'a Workspace, name: &str) -> Result<&'a BlockAlgebra, UsageError> {
    ws.algebras
        .get(name)
        .ok_or_else(|| UsageError(format!("unknown algebra `{name}`")))
}

fn algebra_ideal<'a>(
    ws: &'a Workspace,
    spec: &str,
) -> Result<(&'a BlockAlgebra, BlockIdeal), UsageError> {
    let (name, lit) = spec
        .split_once(':')
        .ok_or_else(|| UsageError(format!("expected `ALGEBRA:hull{{...}}`, got `{spec}`")))?;
    let a = lookup_algebra(ws, name)?;
    Ok((a, ideal_literal(a, lit)?))
}

fn ideal_literal(a: &BlockAlgebra, lit: &str) -> Result<BlockIdeal, UsageError> {
    let set = lit
        .strip_prefix("hull")
        .ok_or_else(|| UsageError(format!("expected `hull{{...}}`, got `{lit}`")))?;
    let names = parse_set_literal(set).map_err(UsageError)?;
    a.ideal(&names).map_err(usage)
}

fn point_set(entry: &SpaceEntry, lit: &str) -> Result<Subset, UsageError> {
    let names = parse_set_literal(lit).map_err(UsageError)?;
    entry.poset.subset_of_names(&names).map_err(usage)
}

fn parse_cofinite_set(lit: &str) -> Result<SetDescriptor, UsageError> {
    if lit == "cofull" {
        return Ok(cofull());
    }
    let names = parse_set_literal(lit).map_err(UsageError)?;
    let mut points = Vec::new();
    for n in names {
        points.push(
            n.parse::<u64>()
                .map_err(|_| UsageError(format!("cofinite points are naturals, got `{n}`")))?,
        );
    }
    Ok(finite(points))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Relabels a poset's points, keeping the order matrix.
fn rename(p: &idealtop_core::FinitePoset, names: &[String]) -> idealtop_core::FinitePoset {
    let n = p.len();
    let le: Vec<bool> = (0..n * n).map(|k| p.le(k / n, k % n)).collect();
    idealtop_core::FinitePoset::from_le_matrix(names.to_vec(), le)
        .expect("relabeling keeps the order")
}

// keep SpaceMap in the public signature surface for doc purposes
#[allow(dead_code)]
fn _phantom(_: &SpaceMap) {}
