//! Limit sets and maximal limit sets.
//!
//! A set L is a limit set when some net converges to every point of L;
//! for our purposes this is captured by the finite Dieudonné criterion:
//! every finite collection of open sets that all meet L has a nonempty
//! common intersection. In a finite Alexandrov space an open set meets L
//! iff it contains the minimal open neighbourhood of some point of L, so
//! the criterion reduces to the family of those minimal opens, and
//! further to a single question: do the points of L have a common upper
//! bound? All three formulations are implemented; the reductions are
//! verified against one another by the test suites.

use crate::error::{CapacityError, TopologyError};
use crate::hyperspace::build_hyperspace;
use crate::poset::FinitePoset;
use crate::subset::Subset;

/// Fast path: L is a limit set iff its points have a common upper bound
/// (a point in every minimal open neighbourhood of a point of L).
pub fn is_limit_set(base: &FinitePoset, l: &Subset) -> Result<bool, TopologyError> {
    if l.is_empty() {
        return Err(TopologyError::EmptySet);
    }
    let mut common = Subset::full(base.len());
    for x in l.iter() {
        common = common.intersection(&base.up_set_of(x));
    }
    Ok(!common.is_empty())
}

/// The Dieudonné criterion over the families of minimal opens of members
/// of L: every nonempty subfamily of `{↑x | x ∈ L}` must have a nonempty
/// intersection.
pub fn is_limit_set_minimal_families(
    base: &FinitePoset,
    l: &Subset,
) -> Result<bool, TopologyError> {
    if l.is_empty() {
        return Err(TopologyError::EmptySet);
    }
    let minimal_opens: Vec<Subset> = l.iter().map(|x| base.up_set_of(x)).collect();
    let k = minimal_opens.len();
    if k >= 32 {
        return Err(TopologyError::Capacity(CapacityError {
            what: "minimal-open family enumeration",
            limit: 1 << 31,
        }));
    }
    for mask in 1u32..1 << k {
        let mut inter = Subset::full(base.len());
        for (i, u) in minimal_opens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                inter = inter.intersection(u);
            }
        }
        if inter.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The literal criterion, quantified over all families of open sets that
/// each meet L. Exponential in the number of opens; only usable on very
/// small spaces, where it validates the reductions above.
pub fn is_limit_set_literal(
    base: &FinitePoset,
    l: &Subset,
    limit: usize,
) -> Result<bool, TopologyError> {
    if l.is_empty() {
        return Err(TopologyError::EmptySet);
    }
    let meeting: Vec<Subset> = base
        .all_up_sets(limit)
        .map_err(TopologyError::Capacity)?
        .into_iter()
        .filter(|u| u.intersects(l))
        .collect();
    let k = meeting.len();
    if k >= 25 {
        return Err(TopologyError::Capacity(CapacityError {
            what: "open-family enumeration",
            limit: 1 << 25,
        }));
    }
    for mask in 1u32..1 << k {
        let mut inter = Subset::full(base.len());
        for (i, u) in meeting.iter().enumerate() {
            if mask >> i & 1 == 1 {
                inter = inter.intersection(u);
            }
        }
        if inter.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A witness family of opens meeting L with empty intersection, when L is
/// not a limit set: the minimal opens of the points of L.
pub fn limit_witness_family(base: &FinitePoset, l: &Subset) -> Option<Vec<Subset>> {
    if is_limit_set(base, l).ok()? {
        return None;
    }
    Some(l.iter().map(|x| base.up_set_of(x)).collect())
}

/// The maximal limit sets of a space, with the relative hyperspace
/// topology materialized as a poset.
#[derive(Clone, Debug)]
pub struct MaxLimitFamily {
    base: FinitePoset,
    /// Members in canonical subset order; each is closed.
    members: Vec<Subset>,
    /// The members with the relative lower Vietoris topology, which for
    /// finite spaces is the inclusion order.
    as_subspace: FinitePoset,
}

impl MaxLimitFamily {
    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn as_subspace(&self) -> &FinitePoset {
        &self.as_subspace
    }

    pub fn member_index(&self, s: &Subset) -> Option<usize> {
        self.members.iter().position(|m| m == s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Members of ML(X) without the subspace topology: the closures of the
/// maximal elements, in canonical order.
pub fn max_limit_members(base: &FinitePoset) -> Vec<Subset> {
    let mut members: Vec<Subset> = base
        .maximal_elements()
        .into_iter()
        .map(|m| base.down_set_of(m))
        .collect();
    members.sort();
    members.dedup();
    members
}

/// Fast path: the maximal limit sets of a finite space are exactly the
/// closures of its maximal elements. Verified against `max_limit_sets_brute`.
/// The subspace topology is the inclusion order on the members, which
/// agrees with the trace of the hyperspace (checked by
/// `subspace_matches_hyperspace` in the tests).
pub fn max_limit_sets(base: &FinitePoset) -> MaxLimitFamily {
    let members = max_limit_members(base);
    let m = members.len();
    let names: Vec<String> = members.iter().map(|s| base.subset_name(s)).collect();
    let mut le = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            le[i * m + j] = members[i].is_subset_of(&members[j]);
        }
    }
    let as_subspace = FinitePoset::from_le_matrix(names, le).expect("inclusion order");
    MaxLimitFamily {
        base: base.clone(),
        members,
        as_subspace,
    }
}

/// The relative topology of ML(X) inside the hyperspace, computed the
/// long way round; oracle for `max_limit_sets`'s direct construction.
pub fn ml_subspace_via_hyperspace(
    base: &FinitePoset,
    limit: usize,
) -> Result<FinitePoset, CapacityError> {
    let members = max_limit_members(base);
    let hyper = build_hyperspace(base, limit)?;
    let member_set = Subset::from_indices(
        hyper.members().len(),
        members.iter().map(|s| {
            hyper
                .member_index(s)
                .expect("closures of points are closed sets")
        }),
    );
    let (as_subspace, _) = hyper.as_poset().subspace(&member_set);
    Ok(as_subspace)
}

/// Brute force: enumerate every subset, keep the limit sets, and take the
/// maximal ones under inclusion. Only for small bases.
pub fn max_limit_sets_brute(base: &FinitePoset) -> Result<Vec<Subset>, CapacityError> {
    let n = base.len();
    if n >= 20 {
        return Err(CapacityError {
            what: "brute-force limit subset enumeration",
            limit: 1 << 20,
        });
    }
    let mut limit_sets: Vec<Subset> = Vec::new();
    for mask in 1u32..1 << n {
        let s = Subset::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
        if is_limit_set_minimal_families(base, &s).expect("nonempty") {
            limit_sets.push(s);
        }
    }
    let mut maximal: Vec<Subset> = limit_sets
        .iter()
        .filter(|s| {
            limit_sets
                .iter()
                .all(|t| !(s.is_subset_of(t) && *s != t))
        })
        .cloned()
        .collect();
    maximal.sort();
    Ok(maximal)
}

/// An ideal is primal iff its hull is a closed limit set. The hull lives
/// in a prime-ideal space supplied by the block-algebra module; this
/// predicate is the topological side of the correspondence, verified
/// against the algebraic zero-product definition in `cstar`.
pub fn primal_check(prime_space: &FinitePoset, hull: &Subset) -> Result<bool, TopologyError> {
    if !prime_space.is_down_set(hull) {
        return Err(TopologyError::NotClosed);
    }
    if hull.is_empty() {
        return Err(TopologyError::EmptySet);
    }
    is_limit_set(prime_space, hull)
}
