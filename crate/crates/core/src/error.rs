use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("disconnected")]
    Disconnected,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex index {index} out of range for n = {n}")]
    BadIndex { index: usize, n: usize },
    #[error("too-large: {0}")]
    TooLarge(String),
    #[error("empty set")]
    EmptySet,
    #[error("mismatched spaces")]
    MismatchedSpaces,
    #[error("no-edge-atoms: odd distance on a non-graph metric")]
    NoEdgeAtoms,
    #[error("has-partition: plan splits into {0} components")]
    HasPartition(usize),
    #[error("ipf did not converge: residual {0}")]
    IpfDiverged(f64),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("irregular graph")]
    Irregular,
    #[error("generation failed after {0} retries")]
    GenerationFailed(usize),
    #[error("bad input: {0}")]
    BadInput(String),
}
