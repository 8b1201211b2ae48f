use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element id `{0}`")]
    DuplicateId(String),
    #[error("unknown element id `{0}`")]
    UnknownElement(String),
    #[error("relation is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    NotAntisymmetric(String, String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("not a frame: {0}")]
    NotAFrame(String),
    #[error("map does not preserve joins; violating subset {0:?}")]
    NotJoinPreserving(Vec<String>),
    #[error("map does not preserve meets; violating subset {0:?}")]
    NotMeetPreserving(Vec<String>),
    #[error("not a homomorphism of locales: {0}")]
    NotLocaleHomomorphism(String),
    #[error("source/target mismatch: {0}")]
    Mismatch(String),
    #[error("{what}: enumeration needs {needed} steps, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modulus {0} is not a prime")]
    NotPrime(u32),
    #[error("point index {0} out of range")]
    OutOfRange(usize),
    #[error("map is not surjective; point `{0}` is not hit")]
    NotSurjective(String),
    #[error("map is not open; image of {0:?} is not open")]
    NotOpenMap(Vec<String>),
    #[error("map is not continuous; preimage of open {0:?} is not open")]
    NotContinuous(Vec<String>),
    #[error("kernel map is not continuous at `{point}`; witness Vietoris open {open:?}")]
    KernelNotContinuous { point: String, open: Vec<String> },
    #[error("quotient map is not open; image of basic open {0:?} is not open")]
    QuotientNotOpen(Vec<String>),
    #[error("carrier topology unsupported: {0}")]
    UnsupportedCarrier(String),
    #[error("lax morphism law fails at a = {a}, y = `{y}`")]
    LaxLawViolated { a: String, y: String },
    #[error("lax commutation fails at V = {0}")]
    LaxCommutationViolated(String),
    #[error("spectral kernel is not continuous; witness Vietoris open {0:?}")]
    SpectralKernelNotContinuous(Vec<String>),
    #[error("bundle is not spectral: {0}")]
    NotSpectral(String),
    #[error("interval requires V1 <= V2: {0} is not contained in {1}")]
    NotAnInterval(String, String),
    #[error("classification criteria disagree: {0}")]
    CriterionDisagreement(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("invalid input: {}", .0.join("; "))]
    InvalidInput(Vec<String>),
}
