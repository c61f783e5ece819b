use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
	#[error("parse error: {0}")]
	Parse(String),
	#[error("vertex {vertex} is outside 0..{vertices}")]
	BadVertex { vertex: usize, vertices: usize },
	#[error("graph is not connected")]
	DisconnectedGraph,
	#[error("vertex {vertex} has degree {degree}, at least 3 is required")]
	DegreeTooLow { vertex: usize, degree: usize },
	#[error("duplicate edge id {0}")]
	DuplicateEdgeId(i64),
	#[error("edge {edge} has endpoint {endpoint} outside 0..{vertices}")]
	EndpointOutOfRange { edge: i64, endpoint: usize, vertices: usize },
	#[error("dimension mismatch: {0}")]
	DimensionMismatch(String),
	#[error("basis matrix does not have full column rank")]
	NotFullColumnRank,
	#[error("input too large: {0}")]
	InputTooLarge(String),
	#[error("enumeration bound too large: {0}")]
	BoundTooLarge(String),
	#[error("vectors do not span the ambient space")]
	NotAFrame,
	#[error("frame is not crystallographic")]
	NotCrystallographic,
	#[error("frame has no exact representation")]
	NotExact,
	#[error("frame is not tight")]
	NotTight,
	#[error("bad parameters: {0}")]
	BadParameters(String),
	#[error("invalid rank: {0}")]
	InvalidRank(String),
	#[error("frame size {size} exceeds the automorphism scan limit {limit}")]
	SizeTooLarge { size: usize, limit: usize },
	#[error("subgroup is not a direct summand")]
	NotASummand,
	#[error("period lattice is degenerate")]
	DegeneratePeriodLattice,
	#[error("force does not sum to zero")]
	UnbalancedForce,
	#[error("period homomorphism does not vanish on the summand")]
	PeriodHomDoesNotKillH,
	#[error("realization is not two-dimensional")]
	NotTwoDimensional,
	#[error("{0} is not square-free")]
	NotSquareFree(String),
	#[error("({0}) does not lie on the conic")]
	NotOnConic(String),
	#[error("matrix is not in the Lie algebra of the metric")]
	NotInLieAlgebra,
	#[error("I + X is singular")]
	SingularIplusX,
	#[error("({0}) is not a primitive nonzero vector")]
	NotPrimitive(String),
	#[error("({0}) is not a primitive Pythagorean triple")]
	NotPythagorean(String),
	#[error("unknown verification suite {0:?}")]
	UnknownSuite(String),
	#[error("i/o error: {0}")]
	Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
	fn from(e: std::io::Error) -> Self {
		Error::Io(e.to_string())
	}
}

impl From<serde_json::Error> for Error {
	fn from(e: serde_json::Error) -> Self {
		Error::Parse(e.to_string())
	}
}
