use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("torsion modulus {0} is smaller than 2")]
    BadModulus(BigInt),
    #[error("element shape mismatch: group has rank {rank} and {torsion} torsion factors, element has {got_free} free and {got_torsion} torsion coordinates")]
    Shape { rank: usize, torsion: usize, got_free: usize, got_torsion: usize },
    #[error("torsion residue {0} is not reduced modulo {1}")]
    Unreduced(BigInt, BigInt),
    #[error("degree list is empty")]
    EmptyDegreeList,
    #[error("cannot parse degree {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("Hilbert basis computation requires a torsion-free group")]
    TorsionUnsupported,
    #[error("resource limit exceeded: {0}")]
    Overflow(String),
    #[error("the degrees do not span a pointed cone: no positive functional exists")]
    NotPointed,
    #[error("dual configuration is empty: n = {n} variables, free rank {r}")]
    RankDeficient { n: usize, r: usize },
    #[error("chamber point lies on a wall of the cone spanned by {0:?}")]
    DegenerateChamberPoint(Vec<usize>),
    #[error("chamber point lies outside the cone spanned by the degrees")]
    ChamberOutside,
    #[error("invalid triangulation: {0}")]
    BadTriangulation(String),
    #[error("triangulation disagrees with the one determined by the chamber point")]
    InconsistentTriangulation,
    #[error("the chamber is not full-dimensional")]
    ChamberNotFullDimensional,
    #[error("{n} vertices exceed the subset-scan cap of {cap}")]
    SubsetCapExceeded { n: usize, cap: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no witness found within the search bound")]
    SearchExhausted,
    #[error("invalid point set: {0}")]
    BadPoints(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
