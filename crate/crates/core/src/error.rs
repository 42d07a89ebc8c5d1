use thiserror::Error;

/// Malformed input: wrong shapes, out-of-range entries, mismatched sizes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry ({row},{col}) = {value} is outside 0..{order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("permutation entry {index} = {value} is outside 0..{order}")]
    PermutationEntryOutOfRange { index: usize, value: usize, order: usize },
    #[error("permutation repeats the value {value}")]
    PermutationNotBijective { value: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
}

/// A concrete instance at which the rack axioms fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("row {row} is not a bijection (value {repeated} repeats)")]
    RowNotBijective { row: usize, repeated: usize },
    #[error("self-distributivity fails at (x,y,z)=({x},{y},{z}): x>(y>z)={left} but (x>y)>(x>z)={right}")]
    SelfDistributivity { x: usize, y: usize, z: usize, left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("input error: {0}")]
    Input(#[from] InputError),
    #[error("not a rack: {0}")]
    Axiom(#[from] AxiomViolation),
}

/// A request whose size exceeds a configured search cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what}: order {order} exceeds the cap of {cap}")]
pub struct CapError {
    pub what: &'static str,
    pub order: usize,
    pub cap: usize,
}
