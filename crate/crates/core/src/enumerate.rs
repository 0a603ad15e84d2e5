//! Enumeration and random generation of small posets, used to drive the
//! exhaustive test corpora.

use rand::Rng;

use crate::error::PosetError;
use crate::poset::FinitePoset;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// All posets on `n` labeled elements, up to isomorphism. Enumerates the
/// 3^(n(n-1)/2) orientations of the unordered pairs, keeps the transitive
/// ones and deduplicates by canonical key. Practical for n <= 5
/// (counts 1, 1, 2, 5, 16, 63).
pub fn all_posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    assert!(n <= 6, "poset enumeration is only intended for tiny sizes");
    let names = names(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for code in 0..total {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => le[i * n + j] = true,
                2 => le[j * n + i] = true,
                _ => {}
            }
            c /= 3;
        }
        if !is_transitive(&le, n) {
            continue;
        }
        let p = FinitePoset::from_le_matrix(names.clone(), le)
            .expect("transitive orientation is a partial order");
        if seen.insert(p.canonical_key()) {
            out.push(p);
        }
    }
    out
}

fn is_transitive(le: &[bool], n: usize) -> bool {
    for i in 0..n {
        for j in 0..n {
            if le[i * n + j] {
                for k in 0..n {
                    if le[j * n + k] && !le[i * n + k] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A random poset on `n` elements: a random DAG over the index order,
/// transitively closed.
pub fn random_poset(n: usize, edge_prob: f64, rng: &mut impl Rng) -> FinitePoset {
    let names = names(n);
    let mut rels: Vec<(String, String)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                rels.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    match FinitePoset::new(&names, &rels) {
        Ok(p) => p,
        Err(PosetError::AntisymmetryViolation(_, _)) => {
            unreachable!("edges respect the index order, so no cycles arise")
        }
        Err(e) => panic!("random poset construction failed: {e}"),
    }
}
