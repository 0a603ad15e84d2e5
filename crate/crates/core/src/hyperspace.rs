//! The hyperspace F(X) of closed sets with the lower Vietoris topology.
//!
//! For a finite space the closed sets are the down-sets of the order, and
//! the lower Vietoris topology (generated by the hit sets of the opens of
//! the base) coincides with the Alexandrov topology of the inclusion
//! order. The family is therefore materialized as a `FinitePoset` so that
//! every poset-core operation applies to hyperspaces unchanged; the
//! hit-set generators are kept alongside so the coincidence can be checked
//! rather than assumed.

use crate::error::{CapacityError, TopologyError};
use crate::poset::{FinitePoset, SpaceMap};
use crate::subset::Subset;

/// Default guard on the number of closed sets a hyperspace may enumerate.
pub const DEFAULT_CAPACITY: usize = 1 << 16;

/// F(X) for a finite base space.
#[derive(Clone, Debug)]
pub struct ClosedSetFamily {
    base: FinitePoset,
    /// All down-sets of the base, by cardinality then lexicographic.
    members: Vec<Subset>,
    /// The members ordered by inclusion, as a space in its own right.
    as_poset: FinitePoset,
}

impl ClosedSetFamily {
    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn as_poset(&self) -> &FinitePoset {
        &self.as_poset
    }

    pub fn member_index(&self, s: &Subset) -> Option<usize> {
        self.members.iter().position(|m| m == s)
    }

    /// Name of a member in the hyperspace poset, e.g. `{a,b}`.
    pub fn member_name(&self, i: usize) -> String {
        self.base.subset_name(&self.members[i])
    }
}

/// Enumerates all closed sets of `x` and builds the inclusion order.
pub fn build_hyperspace(
    x: &FinitePoset,
    limit: usize,
) -> Result<ClosedSetFamily, CapacityError> {
    let mut members = x.all_down_sets(limit).map_err(|e| CapacityError {
        what: "hyperspace member enumeration",
        limit: e.limit,
    })?;
    // canonical member order: cardinality, then lexicographic
    members.sort();
    let m = members.len();
    let names: Vec<String> = members.iter().map(|s| x.subset_name(s)).collect();
    let mut le = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            le[i * m + j] = members[i].is_subset_of(&members[j]);
        }
    }
    let as_poset =
        FinitePoset::from_le_matrix(names, le).expect("inclusion order is a partial order");
    Ok(ClosedSetFamily {
        base: x.clone(),
        members,
        as_poset,
    })
}

impl ClosedSetFamily {
    /// Sub-basic open `{F | F ∩ U ≠ ∅}` for an open `u` of the base.
    pub fn hit_set(&self, u: &Subset) -> Result<Vec<usize>, TopologyError> {
        if !self.base.is_up_set(u) {
            return Err(TopologyError::NotOpen);
        }
        Ok((0..self.members.len())
            .filter(|&i| self.members[i].intersects(u))
            .collect())
    }

    /// Same hit set as a subset of the member carrier.
    pub fn hit_subset(&self, u: &Subset) -> Result<Subset, TopologyError> {
        Ok(Subset::from_indices(
            self.members.len(),
            self.hit_set(u)?,
        ))
    }

    /// The canonical embedding x ↦ closure{x}, as a member index.
    pub fn embed_point(&self, x: usize) -> Result<usize, TopologyError> {
        if x >= self.base.len() {
            return Err(TopologyError::UnknownPoint(format!("#{x}")));
        }
        let cl = self.base.down_set_of(x);
        Ok(self
            .member_index(&cl)
            .expect("point closure is a closed set"))
    }

    /// The embedding as a map of spaces into the hyperspace poset.
    pub fn embedding_map(&self) -> SpaceMap {
        let assignment: Vec<usize> = (0..self.base.len())
            .map(|i| self.embed_point(i).unwrap())
            .collect();
        SpaceMap::from_assignment(self.base.clone(), self.as_poset.clone(), assignment)
    }

    /// Exhaustively checks that the topology generated by the hit sets of
    /// all opens of the base equals the up-set topology of the inclusion
    /// order. Both topologies are enumerated in full and compared.
    pub fn lower_vietoris_coincides(&self, limit: usize) -> Result<bool, CapacityError> {
        let m = self.members.len();
        let base_opens = self.base.all_up_sets(limit)?;
        let subbasis: Vec<Subset> = base_opens
            .iter()
            .map(|u| self.hit_subset(u).expect("enumerated opens are open"))
            .collect();
        // Minimal generated neighbourhood of each member: the intersection
        // of all sub-basic opens containing it (the whole family is finite,
        // so the generated topology is the Alexandrov topology of these
        // neighbourhoods).
        let mut generated_le = vec![false; m * m];
        for i in 0..m {
            let mut nbhd = Subset::full(m);
            for s in &subbasis {
                if s.contains(i) {
                    nbhd = nbhd.intersection(s);
                }
            }
            for j in nbhd.iter() {
                generated_le[i * m + j] = true;
            }
        }
        // The generated relation must itself be a partial order for the
        // comparison below to enumerate it; fall back to "not equal" if
        // it is not even antisymmetric.
        let names: Vec<String> = (0..m).map(|i| self.as_poset.name(i).to_owned()).collect();
        let generated = match FinitePoset::from_le_matrix(names, generated_le) {
            Ok(p) => p,
            Err(_) => return Ok(false),
        };
        let generated_opens = generated.all_up_sets(limit)?;
        let alexandrov_opens = self.as_poset.all_up_sets(limit)?;
        Ok(generated_opens == alexandrov_opens)
    }
}
