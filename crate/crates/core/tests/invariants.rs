//! Corpus-wide invariants: every poset up to isomorphism at small sizes,
//! plus seeded random posets at larger sizes, pushed through each layer
//! of the engine with independent formulations cross-checked.

use idealtop_core::enumerate::{all_posets_up_to_iso, random_poset};
use idealtop_core::envelope::{extend_to_envelope, sobrify};
use idealtop_core::hyperspace::build_hyperspace;
use idealtop_core::limit::{
    is_limit_set, is_limit_set_literal, is_limit_set_minimal_families, max_limit_sets,
    max_limit_sets_brute, ml_subspace_via_hyperspace,
};
use idealtop_core::poset::{FinitePoset, SpaceMap};
use idealtop_core::subset::Subset;
use idealtop_core::DEFAULT_CAPACITY;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus_small() -> Vec<FinitePoset> {
    (0..=4).flat_map(all_posets_up_to_iso).collect()
}

fn corpus_random(count: usize, size: usize) -> Vec<FinitePoset> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dea1);
    (0..count)
        .map(|_| {
            let p = rng.gen_range(0.1..0.6);
            random_poset(size, p, &mut rng)
        })
        .collect()
}

#[test]
fn closure_is_a_kuratowski_operator() {
    for p in corpus_small().into_iter().chain(corpus_random(20, 8)) {
        let n = p.len();
        // empty set is fixed
        assert_eq!(p.closure(&Subset::empty(n)), Subset::empty(n));
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let samples: Vec<Subset> = if n <= 5 {
            Subset::all_subsets(n).collect()
        } else {
            (0..40)
                .map(|_| {
                    Subset::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.4)))
                })
                .collect()
        };
        for a in &samples {
            let ca = p.closure(a);
            assert!(a.is_subset_of(&ca), "extensive");
            assert_eq!(p.closure(&ca), ca, "idempotent");
            assert!(p.is_down_set(&ca), "closed sets are down-sets");
            for b in samples.iter().take(8) {
                let cb = p.closure(b);
                assert_eq!(
                    p.closure(&a.union(b)),
                    ca.union(&cb),
                    "closure distributes over finite unions"
                );
            }
        }
    }
}

#[test]
fn continuity_is_order_preservation() {
    // the monotone characterization must agree with the literal
    // preimage-of-opens definition for every map between tiny spaces
    let spaces = corpus_small();
    for s in spaces.iter().filter(|s| s.len() >= 1 && s.len() <= 3) {
        for t in spaces.iter().filter(|t| t.len() >= 1 && t.len() <= 3) {
            let mut assignment = vec![0usize; s.len()];
            loop {
                let m = SpaceMap::from_assignment(s.clone(), t.clone(), assignment.clone());
                assert_eq!(
                    m.is_continuous(),
                    m.is_continuous_literal(DEFAULT_CAPACITY).unwrap(),
                    "{s:?} -> {t:?} via {assignment:?}"
                );
                // odometer over all assignments
                let mut k = 0;
                loop {
                    if k == assignment.len() {
                        break;
                    }
                    assignment[k] += 1;
                    if assignment[k] < t.len() {
                        break;
                    }
                    assignment[k] = 0;
                    k += 1;
                }
                if k == assignment.len() {
                    break;
                }
            }
        }
    }
}

#[test]
fn product_closure_is_componentwise() {
    for a in corpus_random(10, 5) {
        for b in corpus_random(6, 4) {
            let prod = a.product(&b);
            for sa in Subset::all_subsets(a.len()).step_by(3) {
                for sb in Subset::all_subsets(b.len()).step_by(2) {
                    let mut rect = Subset::empty(prod.len());
                    for i in sa.iter() {
                        for j in sb.iter() {
                            rect.insert(a.product_index(&b, i, j));
                        }
                    }
                    let ca = a.closure(&sa);
                    let cb = b.closure(&sb);
                    let mut crect = Subset::empty(prod.len());
                    for i in ca.iter() {
                        for j in cb.iter() {
                            crect.insert(a.product_index(&b, i, j));
                        }
                    }
                    assert_eq!(prod.closure(&rect), crect);
                }
            }
        }
    }
}

#[test]
fn hyperspace_topologies_coincide_on_corpus() {
    for p in corpus_small() {
        let h = build_hyperspace(&p, DEFAULT_CAPACITY).unwrap();
        assert!(
            h.lower_vietoris_coincides(1 << 22).unwrap(),
            "coincidence failed on {p:?}"
        );
        // the point embedding is always a homeomorphism onto its image
        if p.len() > 0 {
            let e = h.embedding_map();
            assert!(e.is_homeomorphism_onto_image().unwrap());
            assert!(e
                .is_homeomorphism_onto_image_literal(DEFAULT_CAPACITY)
                .unwrap());
        }
    }
}

#[test]
fn small_spaces_are_sober() {
    // every prime of a finite T0 space is a point closure
    for p in (0..=5).flat_map(all_posets_up_to_iso) {
        let env = sobrify(&p, DEFAULT_CAPACITY).unwrap();
        assert!(
            env.non_point_primes().is_empty(),
            "non-point prime in {p:?}"
        );
        assert_eq!(env.poset().len(), p.len());
        assert!(env.embedding_map().is_homeomorphism_onto_image().unwrap());
    }
}

#[test]
fn envelope_extension_is_unique() {
    // any continuous extension to the envelope that agrees with f on the
    // embedded points equals the canonical one
    let targets: Vec<FinitePoset> = vec![
        FinitePoset::discrete(&["a", "b"]).unwrap(),
        FinitePoset::discrete(&["a", "b", "c"]).unwrap(),
    ];
    for p in corpus_small().into_iter().filter(|p| !p.is_empty()) {
        let env = sobrify(&p, DEFAULT_CAPACITY).unwrap();
        for t in &targets {
            for code in 0..t.len().pow(p.len() as u32) {
                let mut c = code;
                let assignment: Vec<usize> = (0..p.len())
                    .map(|_| {
                        let v = c % t.len();
                        c /= t.len();
                        v
                    })
                    .collect();
                let f = SpaceMap::from_assignment(p.clone(), t.clone(), assignment);
                if !f.is_continuous() {
                    continue;
                }
                let ext = extend_to_envelope(&f, &env).unwrap();
                // enumerate rivals
                let en = env.poset().len();
                for rival_code in 0..t.len().pow(en as u32) {
                    let mut c = rival_code;
                    let rival: Vec<usize> = (0..en)
                        .map(|_| {
                            let v = c % t.len();
                            c /= t.len();
                            v
                        })
                        .collect();
                    let g =
                        SpaceMap::from_assignment(env.poset().clone(), t.clone(), rival.clone());
                    if !g.is_continuous() {
                        continue;
                    }
                    let agrees = env
                        .embedding()
                        .iter()
                        .enumerate()
                        .all(|(x, &ex)| rival[ex] == f.apply(x));
                    if agrees {
                        assert_eq!(
                            g.assignment(),
                            ext.assignment(),
                            "two distinct continuous extensions on {p:?}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn limit_set_formulations_agree_on_corpus() {
    for p in corpus_small().into_iter().filter(|p| !p.is_empty()) {
        for s in Subset::all_subsets(p.len()) {
            if s.is_empty() {
                continue;
            }
            let fast = is_limit_set(&p, &s).unwrap();
            let minimal = is_limit_set_minimal_families(&p, &s).unwrap();
            assert_eq!(fast, minimal, "{p:?} {s:?}");
            let literal = is_limit_set_literal(&p, &s, 1 << 22).unwrap();
            assert_eq!(fast, literal, "{p:?} {s:?}");
        }
    }
}

#[test]
fn max_limit_sets_match_on_corpus() {
    for p in (1..=5)
        .flat_map(all_posets_up_to_iso)
        .chain(corpus_random(15, 8))
    {
        let fast = max_limit_sets(&p);
        let brute = max_limit_sets_brute(&p).unwrap();
        assert_eq!(fast.members(), brute.as_slice(), "{p:?}");
        if p.len() <= 5 {
            let via_hyper = ml_subspace_via_hyperspace(&p, DEFAULT_CAPACITY).unwrap();
            assert!(fast.as_subspace().is_isomorphic_to(&via_hyper));
        }
        // ML members are pairwise incomparable closed limit sets
        for (i, a) in fast.members().iter().enumerate() {
            assert!(is_limit_set(&p, a).unwrap());
            assert_eq!(&p.closure(a), a);
            for b in fast.members().iter().skip(i + 1) {
                assert!(!a.is_subset_of(b) && !b.is_subset_of(a));
            }
        }
    }
}

#[test]
fn point_closures_refine_into_max_limit_sets() {
    // every point closure is a limit set, hence lies inside some maximal one
    for p in corpus_random(15, 9) {
        let ml = max_limit_sets(&p);
        for x in 0..p.len() {
            let cl = p.down_set_of(x);
            assert!(is_limit_set(&p, &cl).unwrap());
            assert!(
                ml.members().iter().any(|m| cl.is_subset_of(m)),
                "point closure not dominated in {p:?}"
            );
        }
    }
}
