use thiserror::Error;

#[derive(Error, Debug)]
pub enum GroupError {
    #[error("bad permutation: {0}")]
    BadPermutation(String),
    #[error("bad word: {0}")]
    BadWord(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("group too large: exceeded cap of {cap} elements")]
    TooLarge { cap: usize },
    #[error("bad group file: {0}")]
    BadFile(String),
    #[error("asserted order {asserted} but closure has {actual} elements")]
    OrderMismatch { asserted: usize, actual: usize },
    #[error("map is not a homomorphism: images of `{witness}` disagree")]
    NotHomomorphism { witness: String },
    #[error("map is not injective: `{a}` and `{b}` share an image")]
    NotInjective { a: String, b: String },
}

#[derive(Error, Debug)]
pub enum CoverError {
    #[error("inadmissible signature {signature}: {reason}")]
    InadmissibleSignature { signature: String, reason: String },
    #[error("bad signature: {0}")]
    BadSignature(String),
    #[error("invalid generating vector:\n{}", violations.join("\n"))]
    InvalidVector { violations: Vec<String> },
    #[error("fixed-point count undefined for identity")]
    IdentityFixedPoints,
    #[error("internal error: non-integral fixed-point count for element {element}")]
    NonIntegralCount { element: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Error, Debug)]
pub enum MixedError {
    #[error("subgroup has index {index} in the ambient group, expected index 2")]
    NotIndexTwo { index: usize },
    #[error("coset representative `{word}` lies in the index-2 subgroup")]
    TauPrimeInSubgroup { word: String },
    #[error("action is not free: `{witness}` lies in both the stabilizer set and its flip image")]
    NotFree { witness: String },
    #[error("non-integral {what}: {value}")]
    NonIntegral { what: String, value: String },
    #[error("exceptional-curve bound table needs 1 <= K^2 <= 8, got {k2}")]
    BoundDomain { k2: i64 },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Divisor(Box<DivisorError>),
}

impl From<DivisorError> for MixedError {
    fn from(e: DivisorError) -> Self {
        MixedError::Divisor(Box::new(e))
    }
}

#[derive(Error, Debug)]
pub enum DivisorError {
    #[error("graph intersection requires distinct elements, got `{element}` twice")]
    EqualElements { element: String },
    #[error("non-integral {quantity} for orbit of `{rep}`: {value}")]
    NonIntegral {
        quantity: &'static str,
        rep: String,
        value: String,
    },
    #[error("negative arithmetic genus {value} for orbit of `{rep}`")]
    NegativeGenus { rep: String, value: String },
    #[error("found {found} disjoint exceptional curves but the invariant bound is {bound}")]
    BoundExceeded { found: usize, bound: usize },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Mixed(#[from] MixedError),
}

#[derive(Error, Debug)]
pub enum LiftError {
    #[error("no lift rule for signature {0}")]
    NoLiftRule(String),
    #[error("lifted cover is inconsistent with the base datum:\n{}", .mismatches.join("\n"))]
    Inconsistent { mismatches: Vec<String> },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

#[derive(Error, Debug)]
pub enum ScenarioError {
    #[error("bad scenario file: {0}")]
    Parse(String),
    #[error("cannot read `{path}`")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("scenario `{name}`: {reason}")]
    Invalid { name: String, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Mixed(#[from] MixedError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Lift(#[from] LiftError),
}
