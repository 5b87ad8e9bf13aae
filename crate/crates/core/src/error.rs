use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not invertible over the integers: leading coefficient {0}")]
    NotInvertible(String),

    #[error("zero series has no extremal monomial")]
    ZeroSeries,

    #[error("series is truncated; its highest monomial is unknown")]
    NotPolynomial,

    #[error("multinomial parts sum to {sum}, expected {total}")]
    MultinomialParts { total: u64, sum: u64 },

    #[error("inadmissible triple ({0}, {1}, {2})")]
    InadmissibleTriple(u64, u64, u64),

    #[error("inadmissible six-tuple: vertex triple {which} = ({x}, {y}, {z}) is not admissible")]
    InadmissibleSix { which: usize, x: u64, y: u64, z: u64 },

    #[error("Tet sum is empty (T+ = {t_plus} > S* = {s_star}); the block vanishes")]
    EmptyTet { t_plus: u64, s_star: u64 },

    #[error("limit requires min(S1*, S2*, S3*) = 0, got ({0}, {1}, {2})")]
    UnnormalizedLimit(u64, u64, u64),

    #[error("triangulation: {0}")]
    Triangulation(String),

    #[error(transparent)]
    Gluing(#[from] crate::triangulation::GluingError),

    #[error("Euler characteristic {0} is not an integer")]
    NonIntegralEuler(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("no stabilization up to N = {n_max}: triangulation may not be 1-efficient or N_max too small")]
    NoStabilization { n_max: u32 },

    #[error("quad vector has no rational triangle completion: {0:?}")]
    NoTriangleCompletion(Vec<i64>),

    #[error("degree cutoff not certifiable with coordinates up to {max_coord}")]
    CutoffNotCertified { max_coord: u32 },

    #[error("integer overflow in lattice arithmetic")]
    Overflow,

    #[error("malformed series record: {0}")]
    Record(String),
}
