//! Retraction configurations and the induced map Θ on maximal limit sets.
//!
//! A configuration is (X1, X2, Y, φ, ψ) where φ embeds X1 × X2
//! homeomorphically onto a dense subspace of Y and ψ retracts Y back onto
//! the product. When ψ⁻¹(M1 × M2) equals the closure of φ(M1 × M2) for
//! every pair of maximal limit sets, the assignment
//! (M1, M2) ↦ ψ⁻¹(M1 × M2) is a homeomorphism of ML(X1) × ML(X2) onto
//! ML(Y); this module validates the side conditions, checks the closure
//! hypothesis, constructs Θ with all homeomorphism checks run
//! exhaustively, and mines small configurations where the hypothesis
//! fails.

use rayon::prelude::*;
use thiserror::Error;

use crate::enumerate::all_posets_up_to_iso;
use crate::error::CapacityError;
use crate::limit::{max_limit_sets, MaxLimitFamily};
use crate::poset::{FinitePoset, SpaceMap};
use crate::report::Report;
use crate::subset::Subset;

#[derive(Debug, Error)]
pub enum RetractionError {
    #[error("configuration is invalid: {0}")]
    InvalidConfig(String),
    #[error("closure hypothesis fails at {0}")]
    HypothesisFails(String),
    #[error("Θ value is not a maximal limit set: {0}")]
    ValueNotMaximal(String),
    #[error("Θ failed a homeomorphism check: {0}")]
    NotHomeomorphism(String),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

/// The data of a retraction configuration. Construction only checks the
/// shape (φ : X1 × X2 → Y, ψ : Y → X1 × X2); the topological side
/// conditions are the business of `validate_config`.
#[derive(Clone, Debug)]
pub struct RetractionConfig {
    x1: FinitePoset,
    x2: FinitePoset,
    y: FinitePoset,
    phi: SpaceMap,
    psi: SpaceMap,
}

impl RetractionConfig {
    pub fn new(
        x1: FinitePoset,
        x2: FinitePoset,
        y: FinitePoset,
        phi: SpaceMap,
        psi: SpaceMap,
    ) -> Result<RetractionConfig, RetractionError> {
        let product = x1.product(&x2);
        if phi.source() != &product {
            return Err(RetractionError::InvalidConfig(
                "phi's source is not the product of the factors".into(),
            ));
        }
        if phi.target() != &y {
            return Err(RetractionError::InvalidConfig("phi's target is not Y".into()));
        }
        if psi.source() != &y {
            return Err(RetractionError::InvalidConfig("psi's source is not Y".into()));
        }
        if psi.target() != &product {
            return Err(RetractionError::InvalidConfig(
                "psi's target is not the product of the factors".into(),
            ));
        }
        Ok(RetractionConfig { x1, x2, y, phi, psi })
    }

    /// The identity configuration over a product: Y = X1 × X2 and both
    /// maps the identity.
    pub fn identity(x1: FinitePoset, x2: FinitePoset) -> RetractionConfig {
        let product = x1.product(&x2);
        let id = SpaceMap::identity(product.clone());
        RetractionConfig {
            x1,
            x2,
            y: product,
            phi: id.clone(),
            psi: id,
        }
    }

    pub fn x1(&self) -> &FinitePoset {
        &self.x1
    }

    pub fn x2(&self) -> &FinitePoset {
        &self.x2
    }

    pub fn y(&self) -> &FinitePoset {
        &self.y
    }

    pub fn phi(&self) -> &SpaceMap {
        &self.phi
    }

    pub fn psi(&self) -> &SpaceMap {
        &self.psi
    }

    /// The rectangle M1 × M2 as a subset of the product space.
    fn rectangle(&self, m1: &Subset, m2: &Subset) -> Subset {
        let mut rect = Subset::empty(self.x1.len() * self.x2.len());
        for a in m1.iter() {
            for b in m2.iter() {
                rect.insert(self.x1.product_index(&self.x2, a, b));
            }
        }
        rect
    }
}

/// Checks the four side conditions that do not mention limit sets:
/// φ a homeomorphism onto its image, the image dense, ψ continuous and
/// ψ∘φ the identity. Failures are report entries with witnesses, not
/// errors.
pub fn validate_config(c: &RetractionConfig) -> Report {
    let mut report = Report::new();

    if !c.phi.is_continuous() {
        report.record("phi homeomorphism onto image", false, "phi is not continuous");
    } else {
        let homeo = c.phi.is_homeomorphism_onto_image().expect("continuity checked");
        report.record(
            "phi homeomorphism onto image",
            homeo,
            "phi is not an order embedding of the product into Y",
        );
    }

    let image = c.phi.image();
    let dense = c.y.is_dense(&image);
    let witness = (0..c.y.len())
        .find(|&i| !c.y.up_set_of(i).intersects(&image))
        .map(|i| format!("open {} misses the image", c.y.subset_name(&c.y.up_set_of(i))))
        .unwrap_or_default();
    report.record("phi image dense in Y", dense, witness);

    let cont = c.psi.is_continuous();
    let witness = if cont {
        String::new()
    } else {
        let mut w = String::new();
        'outer: for i in 0..c.y.len() {
            for j in 0..c.y.len() {
                if c.y.le(i, j)
                    && !c
                        .psi
                        .target()
                        .le(c.psi.apply(i), c.psi.apply(j))
                {
                    w = format!(
                        "{} <= {} in Y but psi images are not comparable that way",
                        c.y.name(i),
                        c.y.name(j)
                    );
                    break 'outer;
                }
            }
        }
        w
    };
    report.record("psi continuous", cont, witness);

    let composite = c.phi.then(&c.psi);
    let product = c.x1.product(&c.x2);
    let is_id = (0..product.len()).all(|i| composite.apply(i) == i);
    let witness = (0..product.len())
        .find(|&i| composite.apply(i) != i)
        .map(|i| {
            format!(
                "psi(phi({})) = {}",
                product.name(i),
                product.name(composite.apply(i))
            )
        })
        .unwrap_or_default();
    report.record("psi ∘ phi = identity", is_id, witness);

    report
}

/// A violating pair for the closure hypothesis, with both sides.
#[derive(Clone, Debug)]
pub struct HypothesisWitness {
    pub m1: Subset,
    pub m2: Subset,
    pub preimage: Subset,
    pub closure: Subset,
}

impl HypothesisWitness {
    pub fn describe(&self, c: &RetractionConfig) -> String {
        format!(
            "(M1,M2) = ({}, {}): psi^-1 = {} vs closure = {}",
            c.x1.subset_name(&self.m1),
            c.x2.subset_name(&self.m2),
            c.y.subset_name(&self.preimage),
            c.y.subset_name(&self.closure),
        )
    }
}

/// Outcome of the closure-hypothesis check.
#[derive(Clone, Debug)]
pub struct HypothesisOutcome {
    pub holds: bool,
    pub witness: Option<HypothesisWitness>,
}

/// For every pair of maximal limit sets, compares ψ⁻¹(M1 × M2) with the
/// closure of φ(M1 × M2). Requires a valid configuration.
pub fn check_hypothesis(c: &RetractionConfig) -> Result<HypothesisOutcome, RetractionError> {
    let validation = validate_config(c);
    if !validation.all_pass() {
        return Err(RetractionError::InvalidConfig(
            validation
                .first_failure()
                .map(|f| f.name.clone())
                .unwrap_or_default(),
        ));
    }
    Ok(check_hypothesis_unchecked(c))
}

/// The comparison itself, without re-validating; the miner re-validates
/// separately.
fn check_hypothesis_unchecked(c: &RetractionConfig) -> HypothesisOutcome {
    let ml1 = crate::limit::max_limit_members(&c.x1);
    let ml2 = crate::limit::max_limit_members(&c.x2);
    for m1 in &ml1 {
        for m2 in &ml2 {
            let rect = c.rectangle(m1, m2);
            let preimage = c.psi.preimage_of(&rect);
            let closure = c.y.closure(&c.phi.image_of(&rect));
            if preimage != closure {
                return HypothesisOutcome {
                    holds: false,
                    witness: Some(HypothesisWitness {
                        m1: m1.clone(),
                        m2: m2.clone(),
                        preimage,
                        closure,
                    }),
                };
            }
        }
    }
    HypothesisOutcome {
        holds: true,
        witness: None,
    }
}

/// Θ together with the families it maps between.
#[derive(Clone, Debug)]
pub struct ThetaMap {
    pub ml1: MaxLimitFamily,
    pub ml2: MaxLimitFamily,
    pub ml_y: MaxLimitFamily,
    /// assignment[i * ml2.len() + j] = index in ml_y of ψ⁻¹(M1_i × M2_j).
    pub assignment: Vec<usize>,
    /// Θ as a map between the product of the ML subspaces and ML(Y).
    pub as_map: SpaceMap,
}

/// Builds Θ and verifies that it is a bijection onto ML(Y) and that both
/// it and its inverse are continuous, each by exhaustive open-preimage
/// checks on the finite subspace topologies.
pub fn build_theta(c: &RetractionConfig) -> Result<ThetaMap, RetractionError> {
    let outcome = check_hypothesis(c)?;
    if let Some(w) = outcome.witness {
        return Err(RetractionError::HypothesisFails(w.describe(c)));
    }
    let ml1 = max_limit_sets(&c.x1);
    let ml2 = max_limit_sets(&c.x2);
    let ml_y = max_limit_sets(&c.y);

    let mut assignment = Vec::with_capacity(ml1.len() * ml2.len());
    for m1 in ml1.members() {
        for m2 in ml2.members() {
            let value = c.psi.preimage_of(&c.rectangle(m1, m2));
            match ml_y.member_index(&value) {
                Some(k) => assignment.push(k),
                None => {
                    return Err(RetractionError::ValueNotMaximal(format!(
                        "psi^-1({} x {}) = {}",
                        c.x1.subset_name(m1),
                        c.x2.subset_name(m2),
                        c.y.subset_name(&value)
                    )));
                }
            }
        }
    }

    let domain = ml1.as_subspace().product(ml2.as_subspace());
    let theta = SpaceMap::from_assignment(domain.clone(), ml_y.as_subspace().clone(), assignment.clone());

    let mut sorted = assignment.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != assignment.len() {
        return Err(RetractionError::NotHomeomorphism("Θ is not injective".into()));
    }
    if sorted.len() != ml_y.len() {
        return Err(RetractionError::NotHomeomorphism(
            "Θ is not onto ML(Y)".into(),
        ));
    }
    let limit = 1 << 20;
    if !theta
        .is_continuous_literal(limit)
        .map_err(RetractionError::Capacity)?
    {
        return Err(RetractionError::NotHomeomorphism("Θ is not continuous".into()));
    }
    let mut inverse_assignment = vec![0usize; ml_y.len()];
    for (d, &k) in assignment.iter().enumerate() {
        inverse_assignment[k] = d;
    }
    let inverse = SpaceMap::from_assignment(
        ml_y.as_subspace().clone(),
        domain,
        inverse_assignment,
    );
    if !inverse
        .is_continuous_literal(limit)
        .map_err(RetractionError::Capacity)?
    {
        return Err(RetractionError::NotHomeomorphism(
            "Θ⁻¹ is not continuous".into(),
        ));
    }
    Ok(ThetaMap {
        ml1,
        ml2,
        ml_y,
        assignment,
        as_map: theta,
    })
}

/// The 4-point configuration exhibiting the failure of the closure
/// hypothesis: X1 has a bottom point below two incomparable points m and
/// z1, X2 is a point, and Y adds one extra point below (z1, o) only, which
/// ψ sends to the bottom. The preimage of the maximal limit set
/// {p, m} × {o} then strictly contains the closure of its φ-image by
/// exactly the extra point.
pub fn cfg0() -> RetractionConfig {
    let x1 = FinitePoset::new(&["p", "m", "z1"], &[("p", "m"), ("p", "z1")]).unwrap();
    let x2 = FinitePoset::point("o");
    let product = x1.product(&x2);
    let mut names: Vec<String> = product.names().to_vec();
    names.push("ystar".into());
    let n = names.len();
    let mut le = vec![false; n * n];
    for i in 0..product.len() {
        for j in 0..product.len() {
            le[i * n + j] = product.le(i, j);
        }
    }
    let ystar = n - 1;
    le[ystar * n + ystar] = true;
    let z1o = product.index_of("(z1,o)").unwrap();
    le[ystar * n + z1o] = true;
    let y = FinitePoset::from_le_matrix(names, le).unwrap();
    let phi = SpaceMap::from_assignment(
        product.clone(),
        y.clone(),
        (0..product.len()).collect(),
    );
    let mut psi_assignment: Vec<usize> = (0..product.len()).collect();
    psi_assignment.push(product.index_of("(p,o)").unwrap());
    let psi = SpaceMap::from_assignment(y.clone(), product, psi_assignment);
    RetractionConfig::new(x1, x2, y, phi, psi).unwrap()
}

/// Canonical isomorphism key of a configuration in the miner's normal
/// form (Y = product followed by extra points, φ the inclusion). Two
/// configs get equal keys iff they differ by relabelings of X1, X2 and
/// the extra points that intertwine φ and ψ.
pub fn config_canonical_key(c: &RetractionConfig) -> Vec<u8> {
    let n1 = c.x1.len();
    let n2 = c.x2.len();
    let ny = c.y.len();
    let extras = ny - n1 * n2;
    let mut best: Option<Vec<u8>> = None;
    for perm1 in permutations(n1) {
        for perm2 in permutations(n2) {
            for perme in permutations(extras) {
                // beta on Y: product part by the induced pair relabeling,
                // extras by perme
                let beta = |i: usize| -> usize {
                    if i < n1 * n2 {
                        perm1[i / n2] * n2 + perm2[i % n2]
                    } else {
                        n1 * n2 + perme[i - n1 * n2]
                    }
                };
                let mut key = Vec::with_capacity(n1 * n1 + n2 * n2 + ny * ny + ny + 3);
                key.push(n1 as u8);
                key.push(n2 as u8);
                key.push(extras as u8);
                for i in 0..n1 {
                    for j in 0..n1 {
                        key.push(c.x1.le(inv(&perm1, i), inv(&perm1, j)) as u8);
                    }
                }
                for i in 0..n2 {
                    for j in 0..n2 {
                        key.push(c.x2.le(inv(&perm2, i), inv(&perm2, j)) as u8);
                    }
                }
                let inv_beta: Vec<usize> = {
                    let mut v = vec![0; ny];
                    for i in 0..ny {
                        v[beta(i)] = i;
                    }
                    v
                };
                for i in 0..ny {
                    for j in 0..ny {
                        key.push(c.y.le(inv_beta[i], inv_beta[j]) as u8);
                    }
                }
                for i in 0..ny {
                    let orig = inv_beta[i];
                    let img = c.psi.apply(orig);
                    let relabeled = perm1[img / n2] * n2 + perm2[img % n2];
                    key.push(relabeled as u8);
                }
                if best.as_ref().map_or(true, |b| key < *b) {
                    best = Some(key);
                }
            }
        }
    }
    best.unwrap()
}

fn inv(perm: &[usize], i: usize) -> usize {
    perm.iter().position(|&p| p == i).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permute(&mut perm, n, &mut out);
    out
}

fn heap_permute(perm: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(perm.clone());
        return;
    }
    for i in 0..k {
        heap_permute(perm, k - 1, out);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

/// Mines configurations that satisfy all four side conditions yet fail
/// the closure hypothesis. The search universe: factors up to
/// `max_factor_size` points (up to isomorphism), Y the product plus up to
/// `max_extra_points` new points with every admissible order extension, φ
/// the inclusion, ψ every continuous retraction. Results are re-verified
/// with the full validator, deduplicated up to isomorphism and returned
/// in canonical key order.
pub fn search_counterexample(
    max_extra_points: usize,
    max_factor_size: usize,
) -> Result<Vec<RetractionConfig>, CapacityError> {
    if max_extra_points > 2 || max_factor_size > 3 {
        return Err(CapacityError {
            what: "counterexample search bounds",
            limit: 2,
        });
    }
    let mut factors: Vec<FinitePoset> = Vec::new();
    for k in 1..=max_factor_size {
        factors.extend(all_posets_up_to_iso(k));
    }
    let pairs: Vec<(FinitePoset, FinitePoset)> = factors
        .iter()
        .flat_map(|a| factors.iter().map(move |b| (a.clone(), b.clone())))
        .collect();

    let mut found: Vec<(Vec<u8>, RetractionConfig)> = pairs
        .par_iter()
        .flat_map_iter(|(x1, x2)| mine_pair(x1, x2, max_extra_points))
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    Ok(found.into_iter().map(|(_, c)| c).collect())
}

fn mine_pair(
    x1: &FinitePoset,
    x2: &FinitePoset,
    max_extra: usize,
) -> Vec<(Vec<u8>, RetractionConfig)> {
    let product = x1.product(x2);
    let mut results = Vec::new();
    // candidate Y spaces with 0..=max_extra added points
    let mut layer: Vec<FinitePoset> = vec![product.clone()];
    for extra in 0..=max_extra {
        if extra > 0 {
            layer = layer
                .iter()
                .flat_map(|y| extend_by_one_point(y, &format!("q{}", extra - 1), product.len()))
                .collect();
        }
        for y in &layer {
            for config in retractions(x1, x2, &product, y) {
                // independent re-check, not the search pruning
                if !validate_config(&config).all_pass() {
                    continue;
                }
                let outcome = check_hypothesis_unchecked(&config);
                if !outcome.holds {
                    results.push((config_canonical_key(&config), config));
                }
            }
        }
    }
    results
}

/// All partial orders extending `y` by one new point. Relations induced
/// through the new point are taken into the transitive closure, except
/// that no new relation may arise among points below index `frozen` (the
/// product part, whose subspace order must stay intact). Extensions that
/// close to the same order are deduplicated.
fn extend_by_one_point(y: &FinitePoset, name: &str, frozen: usize) -> Vec<FinitePoset> {
    let n = y.len();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    'combos: for code in 0..total {
        let mut below = Vec::new(); // old points below the new one
        let mut above = Vec::new(); // old points above the new one
        let mut c = code;
        for i in 0..n {
            match c % 3 {
                1 => below.push(i),
                2 => above.push(i),
                _ => {}
            }
            c /= 3;
        }
        // transitive closure through the new point: everything under a
        // chosen lower bound is below, everything over an upper bound is
        // above, and every below-above pair becomes related
        let mut below_cl = Subset::empty(n);
        for &b in &below {
            below_cl = below_cl.union(&y.down_set_of(b));
        }
        let mut above_cl = Subset::empty(n);
        for &a in &above {
            above_cl = above_cl.union(&y.up_set_of(a));
        }
        if below_cl.intersects(&above_cl) {
            continue; // would break antisymmetry
        }
        for b in below_cl.iter() {
            for a in above_cl.iter() {
                if !y.le(b, a) && b < frozen && a < frozen {
                    continue 'combos; // would disturb the product subspace
                }
            }
        }
        let mut names: Vec<String> = y.names().to_vec();
        names.push(name.to_owned());
        let m = n + 1;
        let mut le = vec![false; m * m];
        for i in 0..n {
            for j in 0..n {
                le[i * m + j] = y.le(i, j);
            }
        }
        le[n * m + n] = true;
        for b in below_cl.iter() {
            le[b * m + n] = true;
            for a in above_cl.iter() {
                le[b * m + a] = true;
            }
        }
        for a in above_cl.iter() {
            le[n * m + a] = true;
        }
        if !seen.insert(le.clone()) {
            continue;
        }
        match FinitePoset::from_le_matrix(names, le) {
            Ok(p) => out.push(p),
            Err(_) => continue,
        }
    }
    out
}

/// All configurations over fixed Y: φ the inclusion of the product and ψ
/// every continuous map with ψ∘φ the identity.
fn retractions(
    x1: &FinitePoset,
    x2: &FinitePoset,
    product: &FinitePoset,
    y: &FinitePoset,
) -> Vec<RetractionConfig> {
    let np = product.len();
    let extras = y.len() - np;
    let phi = SpaceMap::from_assignment(product.clone(), y.clone(), (0..np).collect());
    let mut out = Vec::new();
    let mut choices = vec![0usize; extras];
    loop {
        let mut assignment: Vec<usize> = (0..np).collect();
        assignment.extend(choices.iter().copied());
        let psi = SpaceMap::from_assignment(y.clone(), product.clone(), assignment);
        if psi.is_continuous() {
            if let Ok(config) =
                RetractionConfig::new(x1.clone(), x2.clone(), y.clone(), phi.clone(), psi)
            {
                out.push(config);
            }
        }
        // odometer over the extra-point images
        let mut k = 0;
        loop {
            if k == extras {
                return out;
            }
            choices[k] += 1;
            if choices[k] < np {
                break;
            }
            choices[k] = 0;
            k += 1;
        }
    }
}

/// A random valid configuration in the miner's normal form, by rejection
/// sampling. Used to generate positive instances of the retraction-to-homeomorphism property.
pub fn random_config(
    max_factor_size: usize,
    max_extra_points: usize,
    rng: &mut impl rand::Rng,
) -> RetractionConfig {
    loop {
        let n1 = rng.gen_range(1..=max_factor_size);
        let n2 = rng.gen_range(1..=max_factor_size);
        let x1 = crate::enumerate::random_poset(n1, 0.4, rng);
        let x2 = crate::enumerate::random_poset(n2, 0.4, rng);
        let product = x1.product(&x2);
        let mut y = product.clone();
        let extras = rng.gen_range(0..=max_extra_points);
        let mut ok = true;
        for e in 0..extras {
            let candidates = extend_by_one_point(&y, &format!("q{e}"), product.len());
            if candidates.is_empty() {
                ok = false;
                break;
            }
            y = candidates[rng.gen_range(0..candidates.len())].clone();
        }
        if !ok {
            continue;
        }
        let configs = retractions(&x1, &x2, &product, &y);
        let valid: Vec<RetractionConfig> = configs
            .into_iter()
            .filter(|c| validate_config(c).all_pass())
            .collect();
        if valid.is_empty() {
            continue;
        }
        return valid[rng.gen_range(0..valid.len())].clone();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v3() -> FinitePoset {
        FinitePoset::new(&["p", "m", "z"], &[("p", "m"), ("p", "z")]).unwrap()
    }

    #[test]
    fn identity_config_validates_and_satisfies_hypothesis() {
        let c = RetractionConfig::identity(v3(), FinitePoset::point("o"));
        let report = validate_config(&c);
        assert!(report.all_pass(), "{report}");
        assert!(check_hypothesis(&c).unwrap().holds);
    }

    #[test]
    fn cfg0_validates_but_fails_hypothesis() {
        let c = cfg0();
        let report = validate_config(&c);
        assert!(report.all_pass(), "{report}");
        let outcome = check_hypothesis(&c).unwrap();
        assert!(!outcome.holds);
        let w = outcome.witness.unwrap();
        assert_eq!(w.preimage.count(), 3);
        assert_eq!(w.closure.count(), 2);
        // the differing point is exactly the extra one
        let diff = w.preimage.difference(&w.closure);
        assert_eq!(c.y().subset_name(&diff), "{ystar}");
        // M1 is the closure of m
        assert_eq!(c.x1().subset_name(&w.m1), "{m,p}");
    }

    #[test]
    fn cfg0_with_bad_psi_fails_continuity() {
        let c = cfg0();
        let product = c.x1().product(c.x2());
        let mut assignment: Vec<usize> = (0..product.len()).collect();
        assignment.push(product.index_of("(m,o)").unwrap());
        let bad_psi = SpaceMap::from_assignment(c.y().clone(), product, assignment);
        let bad = RetractionConfig::new(
            c.x1().clone(),
            c.x2().clone(),
            c.y().clone(),
            c.phi().clone(),
            bad_psi,
        )
        .unwrap();
        let report = validate_config(&bad);
        assert!(!report.all_pass());
        assert_eq!(report.first_failure().unwrap().name, "psi continuous");
    }

    #[test]
    fn theta_on_identity_config() {
        let c = RetractionConfig::identity(v3(), v3());
        let theta = build_theta(&c).unwrap();
        assert_eq!(theta.ml1.len(), 2);
        assert_eq!(theta.ml2.len(), 2);
        assert_eq!(theta.ml_y.len(), 4);

        let pt = FinitePoset::point("o");
        let c = RetractionConfig::identity(pt.clone(), pt);
        let theta = build_theta(&c).unwrap();
        assert_eq!(theta.ml_y.len(), 1);
    }

    #[test]
    fn theta_refused_when_hypothesis_fails() {
        let c = cfg0();
        assert!(matches!(
            build_theta(&c),
            Err(RetractionError::HypothesisFails(_))
        ));
    }

    #[test]
    fn check_hypothesis_rejects_invalid_config() {
        let c = cfg0();
        let product = c.x1().product(c.x2());
        let mut assignment: Vec<usize> = (0..product.len()).collect();
        assignment.push(product.index_of("(m,o)").unwrap());
        let bad_psi = SpaceMap::from_assignment(c.y().clone(), product, assignment);
        let bad = RetractionConfig::new(
            c.x1().clone(),
            c.x2().clone(),
            c.y().clone(),
            c.phi().clone(),
            bad_psi,
        )
        .unwrap();
        assert!(matches!(
            check_hypothesis(&bad),
            Err(RetractionError::InvalidConfig(_))
        ));
    }

    #[test]
    fn miner_bounds_are_guarded() {
        assert!(search_counterexample(3, 3).is_err());
        assert!(search_counterexample(1, 4).is_err());
    }

    #[test]
    fn miner_empty_at_trivial_bounds() {
        assert!(search_counterexample(0, 3).unwrap().is_empty());
        assert!(search_counterexample(1, 1).unwrap().is_empty());
    }

    #[test]
    fn miner_rediscovers_cfg0() {
        let mined = search_counterexample(1, 3).unwrap();
        assert!(!mined.is_empty());
        let key0 = config_canonical_key(&cfg0());
        assert!(
            mined.iter().any(|c| config_canonical_key(c) == key0),
            "no mined config isomorphic to cfg0"
        );
        // soundness: every mined config validates and fails the hypothesis
        for c in &mined {
            assert!(validate_config(c).all_pass());
            assert!(!check_hypothesis(c).unwrap().holds);
        }
    }

    #[test]
    fn canonical_key_is_a_congruence_on_relabelings() {
        // relabel cfg0's x1 and confirm the keys agree
        let c = cfg0();
        let x1 = FinitePoset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let x2 = FinitePoset::point("w");
        let product = x1.product(&x2);
        let mut names: Vec<String> = product.names().to_vec();
        names.push("extra".into());
        let n = names.len();
        let mut le = vec![false; n * n];
        for i in 0..product.len() {
            for j in 0..product.len() {
                le[i * n + j] = product.le(i, j);
            }
        }
        le[(n - 1) * n + (n - 1)] = true;
        let target = product.index_of("(b,w)").unwrap();
        le[(n - 1) * n + target] = true;
        let y = FinitePoset::from_le_matrix(names, le).unwrap();
        let phi =
            SpaceMap::from_assignment(product.clone(), y.clone(), (0..product.len()).collect());
        let mut psi_assignment: Vec<usize> = (0..product.len()).collect();
        psi_assignment.push(product.index_of("(a,w)").unwrap());
        let psi = SpaceMap::from_assignment(y.clone(), product, psi_assignment);
        let relabeled = RetractionConfig::new(x1, x2, y, phi, psi).unwrap();
        assert_eq!(config_canonical_key(&c), config_canonical_key(&relabeled));
    }
}
