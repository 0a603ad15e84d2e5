//! Acceptance gate: ten end-to-end criteria, each printed as a single
//! pass/fail line. Every check is exact (combinatorial equality); there
//! are no tolerances.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use idealtop_core::cofinite::{
    cf_constant, cf_extend_to_envelope, cf_extension_is_unique, cf_max_limit_sets, cf_sobrify,
    cofull, finite, CofiniteMap,
};
use idealtop_core::cstar::{phi, psi, verify_hull_identities, verify_theorem_min, BlockAlgebra};
use idealtop_core::enumerate::{all_posets_up_to_iso, random_poset};
use idealtop_core::envelope::{extend_to_envelope, sobrify};
use idealtop_core::hyperspace::build_hyperspace;
use idealtop_core::limit::{
    is_limit_set, is_limit_set_literal, is_limit_set_minimal_families, max_limit_sets,
    max_limit_sets_brute,
};
use idealtop_core::poset::{FinitePoset, SpaceMap};
use idealtop_core::retraction::{
    build_theta, cfg0, check_hypothesis, config_canonical_key, random_config,
    search_counterexample, validate_config,
};
use idealtop_core::subset::Subset;
use idealtop_core::DEFAULT_CAPACITY;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Result<(), String>);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("sobriety of finite spaces", c1_sobriety),
        ("hyperspace topology coincidence", c2_hyperspace),
        ("envelope extension and uniqueness", c3_extension),
        ("limit-set criterion equivalences", c4_limit_sets),
        ("retraction homeomorphism construction", c5_retraction),
        ("tensor hull identities", c6_hull_identities),
        ("minimal-primal correspondence", c7_min_primal),
        ("tensor map identities and density", c8_map_facts),
        ("cofinite model", c9_cofinite),
        ("CLI contract", c10_cli),
    ];
    let mut failures = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("PASS {:2} {name}", k + 1),
            Err(e) => {
                println!("FAIL {:2} {name}: {e}", k + 1);
                failures.push(*name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

fn corpus_le(n: usize) -> Vec<FinitePoset> {
    (0..=n).flat_map(all_posets_up_to_iso).collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 1: every prime closed set of a finite T0 space is a point closure,
/// so sobrification is a bijective homeomorphism. Exhaustive at <= 5
/// points up to isomorphism, plus 200 seeded random 6-7 point posets.
fn c1_sobriety() -> Result<(), String> {
    let mut spaces = corpus_le(5);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..200 {
        let n = 6 + (k % 2);
        spaces.push(random_poset(n, rng.gen_range(0.1..0.7), &mut rng));
    }
    for p in &spaces {
        let env = sobrify(p, DEFAULT_CAPACITY).map_err(|e| e.to_string())?;
        check(
            env.poset().len() == p.len() && env.non_point_primes().is_empty(),
            || format!("non-point prime in {p:?}"),
        )?;
        let e = env.embedding_map();
        check(
            e.is_injective()
                && e.is_surjective()
                && e.is_homeomorphism_onto_image().unwrap_or(false),
            || format!("embedding not a homeomorphism for {p:?}"),
        )?;
    }
    Ok(())
}

/// 2: the generated lower Vietoris topology equals the inclusion-order
/// topology on the closed-set family, and point embedding is a
/// homeomorphism onto its image; exhaustive at <= 5 points.
fn c2_hyperspace() -> Result<(), String> {
    for p in corpus_le(5) {
        let h = build_hyperspace(&p, DEFAULT_CAPACITY).map_err(|e| e.to_string())?;
        check(
            h.lower_vietoris_coincides(1 << 22).map_err(|e| e.to_string())?,
            || format!("topologies differ on {p:?}"),
        )?;
        if !p.is_empty() {
            let e = h.embedding_map();
            check(
                e.is_injective() && e.is_homeomorphism_onto_image().unwrap_or(false),
                || format!("point embedding fails on {p:?}"),
            )?;
        }
    }
    Ok(())
}

/// 3: every continuous map into a discrete target of <= 4 points extends
/// to the envelope, the extension restricts to the original map, and it
/// is the unique continuous extension (rivals enumerated exhaustively).
/// The cofinite space is included via its symbolic envelope.
fn c3_extension() -> Result<(), String> {
    for p in corpus_le(5).into_iter().filter(|p| !p.is_empty()) {
        let env = sobrify(&p, DEFAULT_CAPACITY).map_err(|e| e.to_string())?;
        for tsize in 1..=4usize {
            let names: Vec<String> = (0..tsize).map(|i| format!("t{i}")).collect();
            let t = FinitePoset::discrete(&names).unwrap();
            // all continuous rivals on the envelope, precomputed
            let rivals: Vec<Vec<usize>> = all_assignments(env.poset().len(), tsize)
                .into_iter()
                .filter(|a| {
                    SpaceMap::from_assignment(env.poset().clone(), t.clone(), a.clone())
                        .is_continuous()
                })
                .collect();
            for a in all_assignments(p.len(), tsize) {
                let f = SpaceMap::from_assignment(p.clone(), t.clone(), a);
                if !f.is_continuous() {
                    continue;
                }
                let ext = extend_to_envelope(&f, &env).map_err(|e| e.to_string())?;
                check(ext.is_continuous(), || "extension not continuous".into())?;
                for (x, &ex) in env.embedding().iter().enumerate() {
                    check(ext.apply(ex) == f.apply(x), || {
                        format!("extension does not restrict to f on {p:?}")
                    })?;
                }
                let agreeing: Vec<&Vec<usize>> = rivals
                    .iter()
                    .filter(|r| {
                        env.embedding()
                            .iter()
                            .enumerate()
                            .all(|(x, &ex)| r[ex] == f.apply(x))
                    })
                    .collect();
                check(
                    agreeing.len() == 1 && agreeing[0].as_slice() == ext.assignment(),
                    || format!("extension not unique on {p:?}"),
                )?;
            }
        }
    }
    // cofinite source: continuous maps into discrete targets are exactly
    // the constant ones, and the symbolic extension is unique
    for tsize in 1..=4usize {
        let names: Vec<String> = (0..tsize).map(|i| format!("t{i}")).collect();
        let t = FinitePoset::discrete(&names).unwrap();
        for v in 0..tsize {
            let f = cf_constant(t.clone(), v);
            let ext = cf_extend_to_envelope(&f).map_err(|e| e.to_string())?;
            check(ext.generic_value == v, || "wrong generic value".into())?;
            check(cf_extension_is_unique(&f, &ext), || {
                "cofinite extension not unique".into()
            })?;
        }
        if tsize >= 2 {
            let g = CofiniteMap::new(t.clone(), 0, [(3u64, 1usize)].into_iter().collect());
            check(
                !g.is_continuous().map_err(|e| e.to_string())?,
                || "non-constant cofinite map accepted".into(),
            )?;
            check(cf_extend_to_envelope(&g).is_err(), || {
                "extension of a discontinuous map".into()
            })?;
        }
    }
    Ok(())
}

/// 4: the fast common-upper-bound test, the minimal-open-family test and
/// (at <= 4 points) the full literal family enumeration agree on every
/// nonempty subset; the maximal-limit-set formula equals brute force.
fn c4_limit_sets() -> Result<(), String> {
    for p in corpus_le(5).into_iter().filter(|p| !p.is_empty()) {
        for s in Subset::all_subsets(p.len()).filter(|s| !s.is_empty()) {
            let fast = is_limit_set(&p, &s).map_err(|e| e.to_string())?;
            let minimal = is_limit_set_minimal_families(&p, &s).map_err(|e| e.to_string())?;
            check(fast == minimal, || format!("minimal-family mismatch {p:?} {s:?}"))?;
            if p.len() <= 4 {
                let literal = is_limit_set_literal(&p, &s, 1 << 22).map_err(|e| e.to_string())?;
                check(fast == literal, || format!("literal mismatch {p:?} {s:?}"))?;
            }
        }
        let fast = max_limit_sets(&p);
        let brute = max_limit_sets_brute(&p).map_err(|e| e.to_string())?;
        check(fast.members() == brute.as_slice(), || {
            format!("ML mismatch on {p:?}")
        })?;
    }
    Ok(())
}

/// 5: positive direction — 100 random valid configurations satisfying
/// the closure hypothesis all admit the homeomorphism; negative
/// direction — CFG0 validates, fails the hypothesis with witness sets of
/// sizes 3 vs 2, and the miner at bounds (1,3) rediscovers it.
fn c5_retraction() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut positives = 0;
    while positives < 100 {
        let c = random_config(3, 1, &mut rng);
        let outcome = check_hypothesis(&c).map_err(|e| e.to_string())?;
        if !outcome.holds {
            continue;
        }
        build_theta(&c).map_err(|e| format!("theta failed on a valid config: {e}"))?;
        positives += 1;
    }
    let c0 = cfg0();
    check(validate_config(&c0).all_pass(), || "CFG0 invalid".into())?;
    let outcome = check_hypothesis(&c0).map_err(|e| e.to_string())?;
    check(!outcome.holds, || "CFG0 hypothesis held".into())?;
    let w = outcome.witness.ok_or("missing witness")?;
    check(
        w.preimage.count() == 3 && w.closure.count() == 2,
        || format!("witness sizes {} vs {}", w.preimage.count(), w.closure.count()),
    )?;
    let mined = search_counterexample(1, 3).map_err(|e| e.to_string())?;
    let key0 = config_canonical_key(&c0);
    check(
        mined.iter().any(|c| config_canonical_key(c) == key0),
        || "miner did not rediscover CFG0".into(),
    )?;
    Ok(())
}

fn algebra_pairs() -> Vec<(BlockAlgebra, BlockAlgebra)> {
    // all block counts 1..=3 per factor; matrix sizes vary to keep the
    // algebras honest but are topologically irrelevant
    let sizes = [vec![2], vec![2, 3], vec![1, 2, 2]];
    let mut out = Vec::new();
    for s1 in &sizes {
        for s2 in &sizes {
            out.push((
                BlockAlgebra::from_sizes("b", s1).unwrap(),
                BlockAlgebra::from_sizes("c", s2).unwrap(),
            ));
        }
    }
    out
}

/// 6: both hull identities hold for every ideal pair over all factor
/// pairs with <= 3 blocks each.
fn c6_hull_identities() -> Result<(), String> {
    for (a, b) in algebra_pairs() {
        let report = verify_hull_identities(&a, &b).map_err(|e| e.to_string())?;
        check(report.all_pass(), || {
            format!(
                "{:?} x {:?}: {}",
                a,
                b,
                report.first_failure().map(|f| f.name.clone()).unwrap_or_default()
            )
        })?;
    }
    Ok(())
}

/// 7: the end-to-end minimal-primal verification passes for all factor
/// pairs with <= 3 blocks each, including the hypothesis on minimal
/// primal pairs and the identification of the homeomorphism's image.
fn c7_min_primal() -> Result<(), String> {
    for (a, b) in algebra_pairs() {
        let report = verify_theorem_min(&a, &b).map_err(|e| e.to_string())?;
        check(report.all_pass(), || {
            format!(
                "{:?} x {:?}: {}",
                a,
                b,
                report.first_failure().map(|f| f.name.clone()).unwrap_or_default()
            )
        })?;
    }
    Ok(())
}

/// 8: Psi after Phi is the identity on pairs of proper ideals, and Phi's
/// image is dense in the proper ideals of the tensor product; exhaustive
/// at <= 3 blocks per factor.
fn c8_map_facts() -> Result<(), String> {
    for (a, b) in algebra_pairs() {
        for i1 in a.proper_ideals() {
            for i2 in b.proper_ideals() {
                let (j1, j2) = psi(&phi(&i1, &i2), &a, &b);
                check(j1 == i1 && j2 == i2, || {
                    format!("psi∘phi moved ({i1:?}, {i2:?}) in {a:?} x {b:?}")
                })?;
            }
        }
        // density of the image in Id'(A1 ⊗ A2) with the hull-kernel
        // topology, computed on the hyperspace poset of the tensor spectrum
        let tensor = a.tensor(&b);
        let lattice = tensor
            .ideal_lattice(DEFAULT_CAPACITY)
            .map_err(|e| e.to_string())?;
        let members = lattice.as_hyperspace().members().len();
        let proper: Vec<usize> = tensor
            .proper_ideals()
            .iter()
            .map(|i| lattice.index_of(i))
            .collect();
        let proper_set = Subset::from_indices(members, proper.iter().copied());
        let (subspace, kept) = lattice.as_hyperspace().as_poset().subspace(&proper_set);
        let image: BTreeSet<usize> = a
            .proper_ideals()
            .iter()
            .flat_map(|i1| {
                b.proper_ideals()
                    .iter()
                    .map(|i2| lattice.index_of(&phi(i1, i2)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let image_sub = Subset::from_indices(
            subspace.len(),
            image
                .iter()
                .map(|ix| kept.iter().position(|k| k == ix).expect("image is proper")),
        );
        check(subspace.is_dense(&image_sub), || {
            format!("phi image not dense for {a:?} x {b:?}")
        })?;
    }
    Ok(())
}

/// 9: the cofinite space has exactly one non-point prime (the whole
/// space), its unique maximal limit set is the whole space, and the
/// symbolic set algebra agrees with truncation oracles on
/// truncation-stable queries.
fn c9_cofinite() -> Result<(), String> {
    let env = cf_sobrify();
    check(env.non_point_prime_count() == 1, || {
        "wrong non-point prime count".into()
    })?;
    check(env.generic_prime() == cofull(), || "wrong generic prime".into())?;
    check(cf_max_limit_sets() == vec![cofull()], || {
        "ML(cofinite) is not the whole space".into()
    })?;
    let samples = [
        finite([]),
        finite([0]),
        finite([1, 2, 3]),
        finite([5, 50]),
        cofull(),
        finite([2, 4]).complement(),
        finite([0, 1, 2, 3, 4, 5, 6, 7]).complement(),
    ];
    for n in [10u64, 50] {
        for x in &samples {
            for y in &samples {
                let sym = x.union(y).truncate(n);
                let tru: BTreeSet<u64> = &x.truncate(n) | &y.truncate(n);
                check(sym == tru, || format!("union truncation mismatch at {n}"))?;
                let sym = x.intersection(y).truncate(n);
                let tru: BTreeSet<u64> = &x.truncate(n) & &y.truncate(n);
                check(sym == tru, || format!("intersection truncation mismatch at {n}"))?;
            }
            for p in 0..n {
                check(
                    x.contains(p) == x.truncate(n).contains(&p),
                    || format!("membership mismatch at {p}"),
                )?;
            }
        }
        // closure of finite sets is truncation-stable
        for pts in [vec![], vec![1], vec![2, 7]] {
            let s = finite(pts.clone());
            check(
                idealtop_core::cofinite::cf_closure(&s).truncate(n)
                    == s.truncate(n),
                || "closure of a finite set moved".into(),
            )?;
        }
    }
    Ok(())
}

/// 10: the binary honors the 0/1/2 exit contract on the three fixture
/// suites, emits byte-identical output on repeated runs, and re-parses
/// its own emissions.
fn c10_cli() -> Result<(), String> {
    let fixture = |name: &str| {
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures")
            .join(name)
    };
    let run = |file: Option<&str>, args: &[&str]| -> Output {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_idealtop"));
        if let Some(f) = file {
            cmd.arg("-f").arg(fixture(f));
        }
        cmd.args(args).output().expect("binary runs")
    };
    let expect = |file: Option<&str>, args: &[&str], want: i32| -> Result<Output, String> {
        let out = run(file, args);
        let got = out.status.code().unwrap_or(-1);
        if got == want {
            Ok(out)
        } else {
            Err(format!("{args:?}: exit {got}, wanted {want}"))
        }
    };

    // pass suite
    let ml = expect(Some("basic.top"), &["ml", "V3"], 0)?;
    check(ml.stdout == b"{p,m}\n{p,z}\n", || "ml V3 output".into())?;
    expect(Some("basic.top"), &["envelope", "cofinite"], 0)?;
    expect(Some("basic.top"), &["cstar", "verify-min", "A", "B"], 0)?;
    expect(Some("identity-config.top"), &["check-retraction", "ID"], 0)?;

    // property-failure suite
    expect(None, &["check-retraction", "CFG0"], 1)?;
    expect(Some("basic.top"), &["limit", "V3", "{m,z}"], 1)?;
    expect(Some("basic.top"), &["prime", "V3", "{p,m,z}"], 1)?;

    // parse-error suite
    expect(Some("parse-error-antisymmetry.top"), &["ml", "BAD"], 2)?;
    expect(Some("parse-error-unknown-map.top"), &["ml", "X"], 2)?;
    expect(Some("parse-error-syntax.top"), &["ml", "X"], 2)?;

    // byte determinism
    for args in [
        vec!["ml", "V3"],
        vec!["hyper", "V3"],
        vec!["mine-cex", "--extra", "1", "--size", "2"],
    ] {
        let a = run(Some("basic.top"), &args);
        let b = run(Some("basic.top"), &args);
        check(a.stdout == b.stdout, || format!("{args:?} not deterministic"))?;
    }

    // round-trip: emit, re-parse, emit again
    let first = expect(Some("basic.top"), &["emit", "V3"], 0)?;
    let dir = std::env::temp_dir().join("idealtop-acceptance");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("v3.top");
    std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
    let second = run(None, &["-f", path.to_str().unwrap(), "emit", "V3"]);
    check(first.stdout == second.stdout, || "round-trip changed the space".into())?;
    Ok(())
}

fn all_assignments(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = t.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        out.push(
            (0..n)
                .map(|_| {
                    let v = c % t;
                    c /= t;
                    v
                })
                .collect(),
        );
    }
    out
}
