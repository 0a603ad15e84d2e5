use thiserror::Error;

/// Structured rejection of inputs that are not partial orders.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}` in order relation")]
    UnknownElement(String),
    #[error("antisymmetry violation between `{0}` and `{1}`")]
    AntisymmetryViolation(String, String),
    #[error("order matrix not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("order matrix not transitive via `{0}` <= `{1}` <= `{2}`")]
    NotTransitive(String, String, String),
}

/// A combinatorial enumeration exceeded its configured size guard.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("{what} exceeded the capacity limit of {limit}")]
pub struct CapacityError {
    pub what: &'static str,
    pub limit: usize,
}

/// Invalid inputs to topological operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("map is not total: `{0}` has no image")]
    PartialMap(String),
    #[error("map is not continuous")]
    NotContinuous,
    #[error("set is not open")]
    NotOpen,
    #[error("set is not closed")]
    NotClosed,
    #[error("set is empty")]
    EmptySet,
    #[error("target space is not T1 (finite T1 spaces are discrete)")]
    TargetNotT1,
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}
