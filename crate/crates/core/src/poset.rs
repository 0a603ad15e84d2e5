//! Finite T0 spaces in Alexandrov form.
//!
//! A finite T0 space is determined by its specialization order: `x <= y`
//! means x lies in the closure of {y}. Closed sets are the down-sets of the
//! order, open sets the up-sets. Every topological question about such a
//! space reduces to a finite order computation, which is what this module
//! provides: closure, continuity, products, density and homeomorphism
//! checks for maps between spaces.

use std::fmt;

use crate::error::{CapacityError, PosetError, TopologyError};
use crate::subset::Subset;

/// A finite poset, i.e. a finite T0 space presented by its specialization
/// order. Elements are named; the canonical element ordering is
/// lexicographic by name and all indices below refer to that ordering.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    names: Vec<String>,
    /// n*n matrix, `le[i*n+j]` iff element i <= element j.
    le: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from named elements and generating relations
    /// `a <= b`. The reflexive-transitive closure of the relations is
    /// taken; a cycle through distinct elements violates antisymmetry and
    /// is rejected rather than repaired.
    pub fn new<S: AsRef<str>>(
        names: &[S],
        relations: &[(S, S)],
    ) -> Result<FinitePoset, PosetError> {
        let mut sorted: Vec<String> = names.iter().map(|s| s.as_ref().to_owned()).collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(PosetError::DuplicateElement(w[0].clone()));
            }
        }
        let n = sorted.len();
        let idx = |name: &str| -> Result<usize, PosetError> {
            sorted
                .binary_search_by(|x| x.as_str().cmp(name))
                .map_err(|_| PosetError::UnknownElement(name.to_owned()))
        };
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (a, b) in relations {
            let (i, j) = (idx(a.as_ref())?, idx(b.as_ref())?);
            le[i * n + j] = true;
        }
        transitive_close(&mut le, n);
        for i in 0..n {
            for j in 0..i {
                if le[i * n + j] && le[j * n + i] {
                    return Err(PosetError::AntisymmetryViolation(
                        sorted[j].clone(),
                        sorted[i].clone(),
                    ));
                }
            }
        }
        Ok(FinitePoset { names: sorted, le })
    }

    /// Builds a poset from an explicit order matrix. The matrix must
    /// already be reflexive, antisymmetric and transitive. Unlike `new`,
    /// the element order is taken as given; derived spaces (products,
    /// hyperspaces) fix their own canonical element orders.
    pub fn from_le_matrix(names: Vec<String>, le: Vec<bool>) -> Result<FinitePoset, PosetError> {
        let n = names.len();
        assert_eq!(le.len(), n * n);
        {
            let mut sorted = names.clone();
            sorted.sort();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(PosetError::DuplicateElement(w[0].clone()));
                }
            }
        }
        for i in 0..n {
            if !le[i * n + i] {
                return Err(PosetError::NotReflexive(names[i].clone()));
            }
            for j in 0..n {
                if i != j && le[i * n + j] && le[j * n + i] {
                    return Err(PosetError::AntisymmetryViolation(
                        names[i.min(j)].clone(),
                        names[i.max(j)].clone(),
                    ));
                }
                for k in 0..n {
                    if le[i * n + j] && le[j * n + k] && !le[i * n + k] {
                        return Err(PosetError::NotTransitive(
                            names[i].clone(),
                            names[j].clone(),
                            names[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(FinitePoset { names, le })
    }

    /// The one-point space.
    pub fn point(name: &str) -> FinitePoset {
        FinitePoset::new(&[name], &[]).unwrap()
    }

    /// Discrete space on the given names.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> Result<FinitePoset, PosetError> {
        FinitePoset::new(names, &[])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.len() + j]
    }

    /// Generating relations `i < j` with nothing strictly between (the
    /// Hasse covers).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.le(i, j) {
                    let covered = (0..n)
                        .any(|k| k != i && k != j && self.le(i, k) && self.le(k, j));
                    if !covered {
                        out.push((i, j));
                    }
                }
            }
        }
        out
    }

    /// Principal down-set of one element, i.e. the closure of a point.
    pub fn down_set_of(&self, i: usize) -> Subset {
        Subset::from_indices(self.len(), (0..self.len()).filter(|&j| self.le(j, i)))
    }

    /// Principal up-set, i.e. the minimal open neighbourhood of a point.
    pub fn up_set_of(&self, i: usize) -> Subset {
        Subset::from_indices(self.len(), (0..self.len()).filter(|&j| self.le(i, j)))
    }

    /// Least down-set containing `s`: the topological closure.
    pub fn closure(&self, s: &Subset) -> Subset {
        self.check_carrier(s);
        let mut out = Subset::empty(self.len());
        for i in s.iter() {
            out = out.union(&self.down_set_of(i));
        }
        out
    }

    /// Least up-set containing `s` (open saturation).
    pub fn up_closure(&self, s: &Subset) -> Subset {
        self.check_carrier(s);
        let mut out = Subset::empty(self.len());
        for i in s.iter() {
            out = out.union(&self.up_set_of(i));
        }
        out
    }

    pub fn is_down_set(&self, s: &Subset) -> bool {
        self.check_carrier(s);
        self.closure(s) == *s
    }

    pub fn is_up_set(&self, s: &Subset) -> bool {
        self.check_carrier(s);
        self.up_closure(s) == *s
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.le(i, j) || i == j))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.le(j, i) || i == j))
            .collect()
    }

    /// All closed sets (down-sets), in the canonical subset order, with a
    /// capacity guard on the count.
    pub fn all_down_sets(&self, limit: usize) -> Result<Vec<Subset>, CapacityError> {
        let up = self.all_up_sets(limit)?;
        let mut out: Vec<Subset> = up.into_iter().map(|u| u.complement()).collect();
        out.sort();
        Ok(out)
    }

    /// All open sets (up-sets), in the canonical subset order.
    pub fn all_up_sets(&self, limit: usize) -> Result<Vec<Subset>, CapacityError> {
        let n = self.len();
        let mut out = Vec::new();
        let mut partial = Subset::empty(n);
        // Recurse over elements in a linear extension compatible order:
        // process elements so that all strict successors are decided first.
        let order = self.topo_order_max_first();
        self.enumerate_up_sets(&order, 0, &mut partial, &mut out, limit)?;
        out.sort();
        Ok(out)
    }

    fn topo_order_max_first(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        // sort by number of elements above, ascending: maximal first
        order.sort_by_key(|&i| (0..n).filter(|&j| self.le(i, j)).count());
        order
    }

    fn enumerate_up_sets(
        &self,
        order: &[usize],
        pos: usize,
        partial: &mut Subset,
        out: &mut Vec<Subset>,
        limit: usize,
    ) -> Result<(), CapacityError> {
        if pos == order.len() {
            if out.len() >= limit {
                return Err(CapacityError {
                    what: "up-set enumeration",
                    limit,
                });
            }
            out.push(partial.clone());
            return Ok(());
        }
        let i = order[pos];
        // excluding i is always allowed
        self.enumerate_up_sets(order, pos + 1, partial, out, limit)?;
        // including i requires everything strictly above i to be present;
        // all such elements come earlier in the max-first order
        let above_present = (0..self.len())
            .filter(|&j| self.le(i, j) && j != i)
            .all(|j| partial.contains(j));
        if above_present {
            partial.insert(i);
            self.enumerate_up_sets(order, pos + 1, partial, out, limit)?;
            partial.remove(i);
        }
        Ok(())
    }

    /// Product space: pairs with the componentwise order. For finite
    /// spaces the product topology coincides with the Alexandrov topology
    /// of this order (a verified invariant of the test suite).
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let mut names = Vec::with_capacity(self.len() * other.len());
        for a in &self.names {
            for b in &other.names {
                names.push(format!("({a},{b})"));
            }
        }
        let pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| (0..other.len()).map(move |j| (i, j)))
            .collect();
        // names constructed in lexicographic pair order; element names are
        // themselves sorted, so the formatted names are already sorted
        let n = pairs.len();
        let mut le = vec![false; n * n];
        for (p, &(i1, j1)) in pairs.iter().enumerate() {
            for (q, &(i2, j2)) in pairs.iter().enumerate() {
                le[p * n + q] = self.le(i1, i2) && other.le(j1, j2);
            }
        }
        FinitePoset::from_le_matrix(names, le).expect("componentwise order is a partial order")
    }

    /// Index of `(i, j)` in `self.product(other)`.
    pub fn product_index(&self, other: &FinitePoset, i: usize, j: usize) -> usize {
        i * other.len() + j
    }

    /// Subspace on the given points, with the restricted order. Returns
    /// the subspace together with the map subspace-index -> parent-index.
    pub fn subspace(&self, points: &Subset) -> (FinitePoset, Vec<usize>) {
        self.check_carrier(points);
        let kept: Vec<usize> = points.iter().collect();
        let names: Vec<String> = kept.iter().map(|&i| self.names[i].clone()).collect();
        let m = kept.len();
        let mut le = vec![false; m * m];
        for (a, &i) in kept.iter().enumerate() {
            for (b, &j) in kept.iter().enumerate() {
                le[a * m + b] = self.le(i, j);
            }
        }
        (
            FinitePoset::from_le_matrix(names, le).expect("restriction of a partial order"),
            kept,
        )
    }

    /// True iff every nonempty open set meets `z`; for Alexandrov spaces
    /// it suffices that each minimal open neighbourhood does.
    pub fn is_dense(&self, z: &Subset) -> bool {
        self.check_carrier(z);
        (0..self.len()).all(|i| self.up_set_of(i).intersects(z))
    }

    /// Literal density check quantifying over every open set; the fast
    /// path above must agree with this (tested).
    pub fn is_dense_literal(&self, z: &Subset, limit: usize) -> Result<bool, CapacityError> {
        self.check_carrier(z);
        Ok(self
            .all_up_sets(limit)?
            .iter()
            .all(|u| u.is_empty() || u.intersects(z)))
    }

    /// Distinct points have distinct closures; this is exactly T0 and is
    /// forced by antisymmetry. Exposed so the equivalence can be asserted.
    pub fn t0_check(&self) -> bool {
        for i in 0..self.len() {
            for j in 0..i {
                if self.down_set_of(i) == self.down_set_of(j) {
                    return false;
                }
            }
        }
        true
    }

    /// Order-isomorphism test by brute force over permutations. Only
    /// sensible for the small spaces this crate works with.
    pub fn is_isomorphic_to(&self, other: &FinitePoset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        self.canonical_key() == other.canonical_key()
    }

    /// Canonical invariant: the minimum order matrix over all relabelings.
    /// Equal keys iff isomorphic posets.
    pub fn canonical_key(&self) -> Vec<bool> {
        let n = self.len();
        let mut best: Option<Vec<bool>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute_all(&mut perm, 0, &mut |p| {
            let mut mat = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    mat[p[i] * n + p[j]] = self.le(i, j);
                }
            }
            if best.as_ref().map_or(true, |b| mat < *b) {
                best = Some(mat);
            }
        });
        best.unwrap_or_default()
    }

    fn check_carrier(&self, s: &Subset) {
        assert_eq!(
            s.carrier_len(),
            self.len(),
            "subset carrier does not match space"
        );
    }

    /// Parses a subset from element names, rejecting unknown points.
    pub fn subset_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Subset, TopologyError> {
        let mut s = Subset::empty(self.len());
        for name in names {
            match self.index_of(name.as_ref()) {
                Some(i) => s.insert(i),
                None => {
                    return Err(TopologyError::UnknownPoint(name.as_ref().to_owned()));
                }
            }
        }
        Ok(s)
    }

    /// Renders a subset as `{a,b,c}` in canonical name order.
    pub fn subset_name(&self, s: &Subset) -> String {
        let mut out = String::from("{");
        for (k, i) in s.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&self.names[i]);
        }
        out.push('}');
        out
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePoset[{}; ", self.names.join(" "))?;
        let covers: Vec<String> = self
            .covers()
            .iter()
            .map(|&(i, j)| format!("{}<{}", self.names[i], self.names[j]))
            .collect();
        write!(f, "{}]", covers.join(" "))
    }
}

fn transitive_close(le: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if le[i * n + k] {
                for j in 0..n {
                    if le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
    }
}

fn permute_all(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// A total map between finite spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct SpaceMap {
    source: FinitePoset,
    target: FinitePoset,
    /// assignment[i] = index in target of the image of source element i
    assignment: Vec<usize>,
}

impl SpaceMap {
    pub fn new(
        source: FinitePoset,
        target: FinitePoset,
        pairs: &[(&str, &str)],
    ) -> Result<SpaceMap, TopologyError> {
        let mut assignment = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            let i = source
                .index_of(a)
                .ok_or_else(|| TopologyError::UnknownPoint((*a).to_owned()))?;
            let j = target
                .index_of(b)
                .ok_or_else(|| TopologyError::UnknownPoint((*b).to_owned()))?;
            assignment[i] = j;
        }
        if let Some(i) = assignment.iter().position(|&j| j == usize::MAX) {
            return Err(TopologyError::PartialMap(source.name(i).to_owned()));
        }
        Ok(SpaceMap {
            source,
            target,
            assignment,
        })
    }

    pub fn from_assignment(
        source: FinitePoset,
        target: FinitePoset,
        assignment: Vec<usize>,
    ) -> SpaceMap {
        assert_eq!(assignment.len(), source.len());
        assert!(assignment.iter().all(|&j| j < target.len()));
        SpaceMap {
            source,
            target,
            assignment,
        }
    }

    pub fn identity(space: FinitePoset) -> SpaceMap {
        let assignment = (0..space.len()).collect();
        SpaceMap {
            source: space.clone(),
            target: space,
            assignment,
        }
    }

    pub fn source(&self) -> &FinitePoset {
        &self.source
    }

    pub fn target(&self) -> &FinitePoset {
        &self.target
    }

    pub fn apply(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image_of(&self, s: &Subset) -> Subset {
        Subset::from_indices(self.target.len(), s.iter().map(|i| self.assignment[i]))
    }

    pub fn image(&self) -> Subset {
        self.image_of(&Subset::full(self.source.len()))
    }

    pub fn preimage_of(&self, s: &Subset) -> Subset {
        Subset::from_indices(
            self.source.len(),
            (0..self.source.len()).filter(|&i| s.contains(self.assignment[i])),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.image().count() == self.source.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().count() == self.target.len()
    }

    /// Continuity. For maps between Alexandrov spaces this is equivalent
    /// to the assignment being order-preserving; the equivalence with the
    /// preimage definition is exercised by `is_continuous_literal`.
    pub fn is_continuous(&self) -> bool {
        let n = self.source.len();
        for i in 0..n {
            for j in 0..n {
                if self.source.le(i, j) && !self.target.le(self.assignment[i], self.assignment[j])
                {
                    return false;
                }
            }
        }
        true
    }

    /// Literal continuity: preimage of every open of the target is open.
    pub fn is_continuous_literal(&self, limit: usize) -> Result<bool, CapacityError> {
        Ok(self
            .target
            .all_up_sets(limit)?
            .iter()
            .all(|u| self.source.is_up_set(&self.preimage_of(u))))
    }

    /// True iff the map is injective and open onto its image: the image of
    /// every open of the source is the trace on the image of an open of
    /// the target. For finite spaces this is exactly the condition that
    /// the map reflects the order.
    pub fn is_homeomorphism_onto_image(&self) -> Result<bool, TopologyError> {
        if !self.is_continuous() {
            return Err(TopologyError::NotContinuous);
        }
        if !self.is_injective() {
            return Ok(false);
        }
        let n = self.source.len();
        for i in 0..n {
            for j in 0..n {
                if self.target.le(self.assignment[i], self.assignment[j]) && !self.source.le(i, j)
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Literal form of the open-onto-image condition, used as the oracle
    /// for `is_homeomorphism_onto_image`.
    pub fn is_homeomorphism_onto_image_literal(
        &self,
        limit: usize,
    ) -> Result<bool, TopologyError> {
        if !self.is_continuous() {
            return Err(TopologyError::NotContinuous);
        }
        if !self.is_injective() {
            return Ok(false);
        }
        let image = self.image();
        let opens = self
            .source
            .all_up_sets(limit)
            .map_err(TopologyError::Capacity)?;
        for u in opens {
            let fu = self.image_of(&u);
            // trace of the up-closure is the smallest candidate trace
            let trace = self.target.up_closure(&fu).intersection(&image);
            if trace != fu {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Composition `other ∘ self` (apply self first).
    pub fn then(&self, other: &SpaceMap) -> SpaceMap {
        assert_eq!(self.target, other.source, "composition type mismatch");
        SpaceMap {
            source: self.source.clone(),
            target: other.target.clone(),
            assignment: self
                .assignment
                .iter()
                .map(|&i| other.assignment[i])
                .collect(),
        }
    }
}

impl fmt::Debug for SpaceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sends: Vec<String> = (0..self.source.len())
            .map(|i| format!("{}->{}", self.source.name(i), self.target.name(self.apply(i))))
            .collect();
        write!(f, "SpaceMap[{}]", sends.join(" "))
    }
}
