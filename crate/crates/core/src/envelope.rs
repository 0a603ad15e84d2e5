//! Prime closed sets, the point-complete envelope and the continuous
//! extension operator.
//!
//! A nonempty closed set is prime when it is not the union of two closed
//! proper subsets. The envelope of a space is the family of its prime
//! closed sets with the relative lower Vietoris topology; the base space
//! embeds by point closures. Finite T0 spaces are sober, so for them the
//! embedding is a bijection; the symbolic cofinite space (see `cofinite`)
//! is the one model here where it is not.

use crate::error::{CapacityError, TopologyError};
use crate::poset::{FinitePoset, SpaceMap};
use crate::subset::Subset;

/// The point-complete envelope of a finite base space.
#[derive(Clone, Debug)]
pub struct Envelope {
    base: FinitePoset,
    /// Prime closed sets, in canonical subset order.
    primes: Vec<Subset>,
    /// The primes ordered by inclusion (the relative Vietoris topology of
    /// a finite hyperspace is the Alexandrov topology of inclusion).
    poset: FinitePoset,
    /// embedding[i] = index in `primes` of the closure of point i.
    embedding: Vec<usize>,
}

impl Envelope {
    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn primes(&self) -> &[Subset] {
        &self.primes
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn embedding_map(&self) -> SpaceMap {
        SpaceMap::from_assignment(self.base.clone(), self.poset.clone(), self.embedding.clone())
    }

    /// Primes that are not the closure of any point. Empty for finite
    /// bases (they are sober); the acceptance suite asserts this.
    pub fn non_point_primes(&self) -> Vec<usize> {
        (0..self.primes.len())
            .filter(|i| !self.embedding.contains(i))
            .collect()
    }
}

/// Brute-force primality: no pair of proper closed subsets unions to `f`.
pub fn is_prime(
    base: &FinitePoset,
    f: &Subset,
    limit: usize,
) -> Result<bool, TopologyError> {
    if f.is_empty() {
        return Err(TopologyError::EmptySet);
    }
    if !base.is_down_set(f) {
        return Err(TopologyError::NotClosed);
    }
    let closed: Vec<Subset> = base
        .all_down_sets(limit)
        .map_err(TopologyError::Capacity)?
        .into_iter()
        .filter(|c| c.is_subset_of(f) && c != f)
        .collect();
    for a in &closed {
        for b in &closed {
            if a.union(b) == *f {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Fast-path primality for finite spaces: a closed set is prime iff it is
/// a point closure, i.e. has a unique maximal element. Must agree with
/// `is_prime` (tested exhaustively).
pub fn is_prime_fast(base: &FinitePoset, f: &Subset) -> Result<bool, TopologyError> {
    if f.is_empty() {
        return Err(TopologyError::EmptySet);
    }
    if !base.is_down_set(f) {
        return Err(TopologyError::NotClosed);
    }
    let maximal_in_f: Vec<usize> = f
        .iter()
        .filter(|&i| f.iter().all(|j| !base.le(i, j) || i == j))
        .collect();
    Ok(maximal_in_f.len() == 1)
}

/// Enumerates all prime closed sets, orders them by inclusion and records
/// the point embedding x ↦ closure{x}.
pub fn sobrify(base: &FinitePoset, limit: usize) -> Result<Envelope, CapacityError> {
    let closed = base.all_down_sets(limit)?;
    let mut primes: Vec<Subset> = closed
        .into_iter()
        .filter(|c| {
            !c.is_empty()
                && is_prime_fast(base, c).expect("enumerated down-sets are closed and nonempty")
        })
        .collect();
    primes.sort();
    let m = primes.len();
    let names: Vec<String> = primes.iter().map(|s| base.subset_name(s)).collect();
    let mut le = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            le[i * m + j] = primes[i].is_subset_of(&primes[j]);
        }
    }
    let poset = FinitePoset::from_le_matrix(names, le).expect("inclusion order");
    let embedding: Vec<usize> = (0..base.len())
        .map(|i| {
            let cl = base.down_set_of(i);
            primes
                .iter()
                .position(|p| *p == cl)
                .expect("point closures are prime")
        })
        .collect();
    Ok(Envelope {
        base: base.clone(),
        primes,
        poset,
        embedding,
    })
}

/// The unique continuous extension of `f` to the envelope of its source.
///
/// `f` must be continuous into a T1 target; finite T1 spaces are discrete,
/// which is validated. A continuous map into a T1 space is constant on
/// every prime closed set; the extension sends a prime to that common
/// value. Constancy is re-verified at runtime: a violation would
/// contradict the construction and aborts loudly instead of silently
/// picking a value.
pub fn extend_to_envelope(f: &SpaceMap, env: &Envelope) -> Result<SpaceMap, TopologyError> {
    assert_eq!(f.source(), env.base(), "envelope is not of the map's source");
    let target = f.target();
    let discrete = (0..target.len())
        .all(|i| (0..target.len()).all(|j| i == j || !target.le(i, j)));
    if !discrete {
        return Err(TopologyError::TargetNotT1);
    }
    if !f.is_continuous() {
        return Err(TopologyError::NotContinuous);
    }
    let assignment: Vec<usize> = env
        .primes()
        .iter()
        .map(|prime| {
            let mut values = prime.iter().map(|x| f.apply(x));
            let first = values.next().expect("primes are nonempty");
            assert!(
                values.all(|v| v == first),
                "continuous map not constant on a prime closed set; upstream bug"
            );
            first
        })
        .collect();
    Ok(SpaceMap::from_assignment(
        env.poset().clone(),
        target.clone(),
        assignment,
    ))
}

/// Checks that the canonical map (S1, S2) ↦ closure(S1 × S2) is a
/// homeomorphism of Envelope(x1) × Envelope(x2) onto Envelope(x1 × x2)
/// which is the identity on embedded points. For finite spaces this must
/// always hold.
pub fn product_envelope_check(
    x1: &FinitePoset,
    x2: &FinitePoset,
    limit: usize,
) -> Result<bool, CapacityError> {
    let e1 = sobrify(x1, limit)?;
    let e2 = sobrify(x2, limit)?;
    let prod = x1.product(x2);
    let ep = sobrify(&prod, limit)?;
    let domain = e1.poset().product(e2.poset());
    if domain.len() != ep.primes().len() {
        return Ok(false);
    }
    // the closure of a rectangle of down-sets is the rectangle itself
    let mut assignment = Vec::with_capacity(domain.len());
    for i in 0..e1.primes().len() {
        for j in 0..e2.primes().len() {
            let mut rect = Subset::empty(prod.len());
            for a in e1.primes()[i].iter() {
                for b in e2.primes()[j].iter() {
                    rect.insert(x1.product_index(x2, a, b));
                }
            }
            let rect = prod.closure(&rect);
            match ep.primes().iter().position(|p| *p == rect) {
                Some(k) => assignment.push(k),
                None => return Ok(false),
            }
        }
    }
    let nu = SpaceMap::from_assignment(domain, ep.poset().clone(), assignment);
    if !nu.is_continuous() || !nu.is_surjective() {
        return Ok(false);
    }
    if !nu.is_homeomorphism_onto_image().expect("continuity checked") {
        return Ok(false);
    }
    // identity on embedded points: nu(embed(a), embed(b)) = embed((a,b))
    for a in 0..x1.len() {
        for b in 0..x2.len() {
            let d = e1.embedding()[a] * e2.primes().len() + e2.embedding()[b];
            let p = ep.embedding()[prod
                .index_of(&format!("({},{})", x1.name(a), x2.name(b)))
                .expect("product names")];
            if nu.apply(d) != p {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
