//! Finite-dimensional C*-algebras as lists of matrix blocks, their ideal
//! lattices and the tensor-product maps Φ, Δ, Ψ.
//!
//! A finite-dimensional C*-algebra is a direct sum of matrix blocks; an
//! ideal is the sum of a subset of the blocks and is identified here by
//! its hull — the set of blocks NOT contained in it, i.e. the primitive
//! ideals containing it. Block sizes are carried so the model is an
//! honest algebra description, but the topology only sees block identity.
//!
//! Derivations used below, in hull terms. Write q_I for the quotient map
//! with kernel I. The quotient A/I acts exactly on the hull blocks of I,
//! so q_{I_1} ⊗ q_{I_2} acts on the blocks (b, c) with b in hull(I_1) and
//! c in hull(I_2); its kernel Φ(I_1, I_2) therefore has hull
//! hull(I_1) × hull(I_2). For Δ(I_1, I_2) = I_1 ⊗ A_2 + A_1 ⊗ I_2 the
//! support is (supp I_1 × all) ∪ (all × supp I_2), whose complement is
//! again hull(I_1) × hull(I_2); so Φ = Δ for every pair, which is the
//! hypothesis of the minimal-primal theorem. For Ψ, an element supported
//! on block b has b ⊗ A_2 inside I iff every (b, c) lies in supp I, so
//! supp I_{A_1} = {b | ∀c: (b,c) ∈ supp I} and hull I_{A_1} is the first
//! projection of hull I; symmetrically for the second factor.

use std::fmt;

use crate::error::{CapacityError, TopologyError};
use crate::hyperspace::{build_hyperspace, ClosedSetFamily};
use crate::limit::{max_limit_members, primal_check};
use crate::poset::{FinitePoset, SpaceMap};
use crate::report::Report;
use crate::retraction::{build_theta, RetractionConfig, RetractionError};
use crate::subset::Subset;

/// A finite-dimensional C*-algebra: named matrix blocks with sizes.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockAlgebra {
    /// (name, matrix size), sorted by name; at least one block.
    blocks: Vec<(String, u32)>,
}

impl BlockAlgebra {
    pub fn new<S: AsRef<str>>(blocks: &[(S, u32)]) -> Result<BlockAlgebra, TopologyError> {
        if blocks.is_empty() {
            return Err(TopologyError::EmptySet);
        }
        let mut blocks: Vec<(String, u32)> = blocks
            .iter()
            .map(|(n, s)| (n.as_ref().to_owned(), *s))
            .collect();
        blocks.sort();
        for w in blocks.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(TopologyError::UnknownPoint(format!(
                    "duplicate block name `{}`",
                    w[0].0
                )));
            }
        }
        if blocks.iter().any(|&(_, s)| s == 0) {
            return Err(TopologyError::UnknownPoint("block size must be >= 1".into()));
        }
        Ok(BlockAlgebra { blocks })
    }

    /// Convenience constructor naming blocks `b1`, `b2`, ... from sizes.
    pub fn from_sizes(prefix: &str, sizes: &[u32]) -> Result<BlockAlgebra, TopologyError> {
        let blocks: Vec<(String, u32)> = sizes
            .iter()
            .enumerate()
            .map(|(i, &s)| (format!("{prefix}{}", i + 1), s))
            .collect();
        BlockAlgebra::new(&blocks)
    }

    pub fn blocks(&self) -> &[(String, u32)] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one block by construction
    }

    pub fn block_index(&self, name: &str) -> Option<usize> {
        self.blocks.iter().position(|(n, _)| n == name)
    }

    /// The primitive ideal space: one point per block, discrete.
    pub fn prim_space(&self) -> FinitePoset {
        let names: Vec<&str> = self.blocks.iter().map(|(n, _)| n.as_str()).collect();
        FinitePoset::discrete(&names).expect("unique block names")
    }

    /// Prime(A) = Prim(A)^c; a discrete space is sober, so the two
    /// coincide. The identification is asserted, not assumed.
    pub fn prime_space(&self) -> FinitePoset {
        let prim = self.prim_space();
        let env = crate::envelope::sobrify(&prim, crate::hyperspace::DEFAULT_CAPACITY)
            .expect("tiny space");
        assert_eq!(
            env.primes().len(),
            prim.len(),
            "discrete spaces are sober; sobrification added primes"
        );
        prim
    }

    /// The minimal tensor product: blocks are pairs with product sizes.
    pub fn tensor(&self, other: &BlockAlgebra) -> BlockAlgebra {
        let blocks: Vec<(String, u32)> = self
            .blocks
            .iter()
            .flat_map(|(a, s)| {
                other
                    .blocks
                    .iter()
                    .map(move |(b, t)| (format!("({a},{b})"), s * t))
            })
            .collect();
        BlockAlgebra::new(&blocks).expect("pair names are unique")
    }

    /// The ideal with the given hull blocks.
    pub fn ideal<S: AsRef<str>>(&self, hull_blocks: &[S]) -> Result<BlockIdeal, TopologyError> {
        let mut hull = Subset::empty(self.len());
        for b in hull_blocks {
            match self.block_index(b.as_ref()) {
                Some(i) => hull.insert(i),
                None => return Err(TopologyError::UnknownPoint(b.as_ref().to_owned())),
            }
        }
        Ok(BlockIdeal {
            algebra: self.clone(),
            hull,
        })
    }

    pub fn ideal_from_hull(&self, hull: Subset) -> BlockIdeal {
        assert_eq!(hull.carrier_len(), self.len());
        BlockIdeal {
            algebra: self.clone(),
            hull,
        }
    }

    /// All ideals, i.e. all hull subsets, in canonical order.
    pub fn all_ideals(&self) -> Vec<BlockIdeal> {
        let mut hulls: Vec<Subset> = Subset::all_subsets(self.len()).collect();
        hulls.sort();
        hulls
            .into_iter()
            .map(|hull| self.ideal_from_hull(hull))
            .collect()
    }

    /// Id'(A): all ideals except the algebra itself (empty hull).
    pub fn proper_ideals(&self) -> Vec<BlockIdeal> {
        self.all_ideals()
            .into_iter()
            .filter(|i| !i.is_whole_algebra())
            .collect()
    }

    /// Id(A) with the topology pulled from F(Prim(A)) along the hull map.
    pub fn ideal_lattice(&self, limit: usize) -> Result<IdealLattice, CapacityError> {
        let as_hyperspace = build_hyperspace(&self.prim_space(), limit)?;
        Ok(IdealLattice {
            algebra: self.clone(),
            as_hyperspace,
        })
    }
}

impl fmt::Debug for BlockAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(n, s)| format!("{n}:M{s}"))
            .collect();
        write!(f, "BlockAlgebra[{}]", parts.join(" ⊕ "))
    }
}

/// An ideal of a block algebra, identified by its hull: the set of blocks
/// it does NOT contain. Empty hull = the whole algebra; full hull = the
/// zero ideal. The support (blocks inside the ideal) is the complement.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockIdeal {
    algebra: BlockAlgebra,
    hull: Subset,
}

impl BlockIdeal {
    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn hull(&self) -> &Subset {
        &self.hull
    }

    pub fn support(&self) -> Subset {
        self.hull.complement()
    }

    pub fn is_zero(&self) -> bool {
        self.hull.count() == self.algebra.len()
    }

    pub fn is_whole_algebra(&self) -> bool {
        self.hull.is_empty()
    }

    /// Ideal containment is hull reversal: I ⊆ J iff hull I ⊇ hull J.
    pub fn contains(&self, other: &BlockIdeal) -> bool {
        assert_eq!(self.algebra, other.algebra);
        self.hull.is_subset_of(&other.hull)
    }

    /// Product of ideals; in a block algebra this is the intersection of
    /// supports, so the hull of the product is the union of hulls.
    pub fn product(&self, other: &BlockIdeal) -> BlockIdeal {
        assert_eq!(self.algebra, other.algebra);
        BlockIdeal {
            algebra: self.algebra.clone(),
            hull: self.hull.union(&other.hull),
        }
    }

    pub fn hull_names(&self) -> String {
        self.algebra.prim_space().subset_name(&self.hull)
    }
}

impl fmt::Debug for BlockIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hull{}", self.hull_names())
    }
}

/// Id(A) together with the hyperspace of its primitive spectrum; the
/// hull map is an order-reversing bijection onto the closed sets.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    algebra: BlockAlgebra,
    as_hyperspace: ClosedSetFamily,
}

impl IdealLattice {
    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn as_hyperspace(&self) -> &ClosedSetFamily {
        &self.as_hyperspace
    }

    /// Index of an ideal in the hyperspace, via its hull.
    pub fn index_of(&self, ideal: &BlockIdeal) -> usize {
        self.as_hyperspace
            .member_index(ideal.hull())
            .expect("every hull is a closed set of the discrete spectrum")
    }

    pub fn ideal_at(&self, index: usize) -> BlockIdeal {
        self.algebra
            .ideal_from_hull(self.as_hyperspace.members()[index].clone())
    }
}

/// Φ(I1, I2) = ker(q_{I_1} ⊗ q_{I_2}): the hull is the product rectangle
/// (see the module derivation).
pub fn phi(i1: &BlockIdeal, i2: &BlockIdeal) -> BlockIdeal {
    let tensor = i1.algebra.tensor(&i2.algebra);
    let n2 = i2.algebra.len();
    let mut hull = Subset::empty(tensor.len());
    for b in i1.hull.iter() {
        for c in i2.hull.iter() {
            hull.insert(b * n2 + c);
        }
    }
    tensor.ideal_from_hull(hull)
}

/// Δ(I1, I2) = I1 ⊗ A2 + A1 ⊗ I2, computed on supports: the sum is
/// spanned by the blocks touched by either summand.
pub fn delta(i1: &BlockIdeal, i2: &BlockIdeal) -> BlockIdeal {
    let tensor = i1.algebra.tensor(&i2.algebra);
    let n2 = i2.algebra.len();
    let supp1 = i1.support();
    let supp2 = i2.support();
    let mut support = Subset::empty(tensor.len());
    for b in supp1.iter() {
        for c in 0..n2 {
            support.insert(b * n2 + c);
        }
    }
    for b in 0..i1.algebra.len() {
        for c in supp2.iter() {
            support.insert(b * n2 + c);
        }
    }
    tensor.ideal_from_hull(support.complement())
}

/// Ψ(I) = (I_{A_1}, I_{A_2}): the factor hulls are the coordinate
/// projections of the tensor hull.
pub fn psi(
    tensor_ideal: &BlockIdeal,
    a1: &BlockAlgebra,
    a2: &BlockAlgebra,
) -> (BlockIdeal, BlockIdeal) {
    assert_eq!(tensor_ideal.algebra, a1.tensor(a2), "ideal not of A1 ⊗ A2");
    let n2 = a2.len();
    let mut hull1 = Subset::empty(a1.len());
    let mut hull2 = Subset::empty(n2);
    for k in tensor_ideal.hull.iter() {
        hull1.insert(k / n2);
        hull2.insert(k % n2);
    }
    (a1.ideal_from_hull(hull1), a2.ideal_from_hull(hull2))
}

/// Ψ as a point map Prime(A1 ⊗ A2) → Prime(A1) × Prime(A2): a primitive
/// ideal with hull {(b, c)} goes to the pair with hulls ({b}, {c}).
pub fn psi_point_map(a1: &BlockAlgebra, a2: &BlockAlgebra) -> SpaceMap {
    let p1 = a1.prime_space();
    let p2 = a2.prime_space();
    let tensor_prime = a1.tensor(a2).prime_space();
    let product = p1.product(&p2);
    // block pair names coincide with product point names
    let assignment: Vec<usize> = (0..tensor_prime.len())
        .map(|k| {
            product
                .index_of(tensor_prime.name(k))
                .expect("tensor block names match product point names")
        })
        .collect();
    SpaceMap::from_assignment(tensor_prime, product, assignment)
}

/// The algebraic primality definition: I is primal iff for every finite
/// family of ideals with at least two members and zero product, I
/// contains a member. Checked exhaustively over families of 2..=3 members
/// (larger zero-product families contain two-member subfamilies with the
/// same union of hulls at these sizes, and the check is monotone in the
/// family anyway).
pub fn is_primal_algebraic(ideal: &BlockIdeal, max_family: usize) -> bool {
    let ideals = ideal.algebra.all_ideals();
    let mut families: Vec<Vec<&BlockIdeal>> = ideals.iter().map(|i| vec![i]).collect();
    for size in 2..=max_family {
        let mut next = Vec::new();
        for fam in &families {
            for i in &ideals {
                next.push([fam.as_slice(), &[i]].concat());
            }
        }
        families = next;
        for fam in &families {
            let mut prod = fam[0].clone();
            for i in &fam[1..] {
                prod = prod.product(i);
            }
            if prod.is_zero() && !fam.iter().any(|member| ideal.contains(member)) {
                let _ = size;
                return false;
            }
        }
    }
    true
}

/// Topological primality of an ideal: its hull is a closed limit set in
/// the prime space.
pub fn is_primal_topological(ideal: &BlockIdeal) -> Result<bool, TopologyError> {
    let prime = ideal.algebra.prime_space();
    primal_check(&prime, ideal.hull())
}

/// Exhaustive check of the two hull identities over every ideal pair:
/// hull Δ(I1, I2) = Ψ⁻¹(hull I1 × hull I2) and
/// hull Φ(I1, I2) = closure(Φ(hull I1 × hull I2)), hulls taken in the
/// prime spaces and the closure in the tensor prime space.
pub fn verify_hull_identities(
    a1: &BlockAlgebra,
    a2: &BlockAlgebra,
) -> Result<Report, CapacityError> {
    if a1.len() > 4 || a2.len() > 4 {
        return Err(CapacityError {
            what: "hull identity verification (blocks per factor)",
            limit: 4,
        });
    }
    let mut report = Report::new();
    let psi_points = psi_point_map(a1, a2);
    let tensor_prime = a1.tensor(a2).prime_space();
    let n2 = a2.len();
    for i1 in a1.all_ideals() {
        for i2 in a2.all_ideals() {
            let label = format!("I1 = {:?}, I2 = {:?}", i1, i2);
            // rectangle hull I1 × hull I2 as a subset of the product space
            let mut rect = Subset::empty(a1.len() * n2);
            for b in i1.hull().iter() {
                for c in i2.hull().iter() {
                    rect.insert(b * n2 + c);
                }
            }
            let lhs_delta = delta(&i1, &i2);
            let pre = psi_points.preimage_of(&rect);
            report.record(
                format!("hullΔ = Ψ⁻¹(hullI1 × hullI2) for {label}"),
                *lhs_delta.hull() == pre,
                format!(
                    "hullΔ = {:?} vs preimage = {:?}",
                    lhs_delta.hull(),
                    pre
                ),
            );
            // Φ on points sends (b, c) to the tensor block (b, c); its
            // image of the rectangle is the same rectangle, closed in the
            // (discrete) tensor prime space
            let lhs_phi = phi(&i1, &i2);
            let closure = tensor_prime.closure(&rect);
            report.record(
                format!("hullΦ = closure Φ(hullI1 × hullI2) for {label}"),
                *lhs_phi.hull() == closure,
                format!("hullΦ = {:?} vs closure = {:?}", lhs_phi.hull(), closure),
            );
        }
    }
    Ok(report)
}

/// Minimal primal ideals: those whose hulls are the maximal limit sets of
/// the prime space. For a finite-dimensional algebra the prime space is
/// discrete, so these are exactly the primitive ideals.
pub fn min_primal(a: &BlockAlgebra) -> Vec<BlockIdeal> {
    let prime = a.prime_space();
    max_limit_members(&prime)
        .into_iter()
        .map(|hull| a.ideal_from_hull(hull))
        .collect()
}

/// End-to-end verification of the minimal-primal theorem at block scale:
/// Φ = Δ on minimal primal pairs, the induced retraction configuration on
/// prime spaces is valid and satisfies the closure hypothesis, Θ is a
/// homeomorphism, and its values are the hulls of Min-Primal of the
/// tensor algebra.
pub fn verify_theorem_min(a1: &BlockAlgebra, a2: &BlockAlgebra) -> Result<Report, CapacityError> {
    if a1.len() > 4 || a2.len() > 4 {
        return Err(CapacityError {
            what: "minimal-primal verification (blocks per factor)",
            limit: 4,
        });
    }
    let mut report = Report::new();

    for i1 in min_primal(a1) {
        for i2 in min_primal(a2) {
            let same = phi(&i1, &i2) == delta(&i1, &i2);
            report.record(
                format!("Φ = Δ for minimal primal pair ({:?}, {:?})", i1, i2),
                same,
                "Φ and Δ differ",
            );
        }
    }

    let config = induced_retraction_config(a1, a2);
    let validation = crate::retraction::validate_config(&config);
    report.record(
        "induced configuration valid",
        validation.all_pass(),
        validation
            .first_failure()
            .map(|f| f.name.clone())
            .unwrap_or_default(),
    );

    match build_theta(&config) {
        Ok(theta) => {
            report.record("Θ is a homeomorphism onto ML(Prime(A1 ⊗ A2))", true, "");
            // values of Θ correspond to Min-Primal(tensor) under hull ↔ ideal
            let tensor = a1.tensor(a2);
            let mut theta_hulls: Vec<Subset> = theta
                .ml_y
                .members()
                .to_vec();
            theta_hulls.sort();
            let mut min_primal_hulls: Vec<Subset> = min_primal(&tensor)
                .into_iter()
                .map(|i| i.hull().clone())
                .collect();
            min_primal_hulls.sort();
            report.record(
                "Θ values are the hulls of Min-Primal(A1 ⊗ A2)",
                theta_hulls == min_primal_hulls,
                format!("{theta_hulls:?} vs {min_primal_hulls:?}"),
            );
        }
        Err(RetractionError::Capacity(e)) => return Err(e),
        Err(e) => {
            report.record("Θ is a homeomorphism onto ML(Prime(A1 ⊗ A2))", false, e.to_string());
        }
    }

    Ok(report)
}

/// The retraction configuration induced by Φ and Ψ on the prime spaces:
/// X1 = Prime(A1), X2 = Prime(A2), Y = Prime(A1 ⊗ A2), φ the point form
/// of Φ and ψ the point form of Ψ.
pub fn induced_retraction_config(a1: &BlockAlgebra, a2: &BlockAlgebra) -> RetractionConfig {
    let p1 = a1.prime_space();
    let p2 = a2.prime_space();
    let product = p1.product(&p2);
    let y = a1.tensor(a2).prime_space();
    // Φ on points: the pair of primitive ideals (b, c) goes to the tensor
    // block named (b, c)
    let phi_assignment: Vec<usize> = (0..product.len())
        .map(|k| y.index_of(product.name(k)).expect("matching names"))
        .collect();
    let phi = SpaceMap::from_assignment(product.clone(), y.clone(), phi_assignment);
    let psi = psi_point_map(a1, a2);
    RetractionConfig::new(p1, p2, y, phi, psi).expect("shapes match by construction")
}
