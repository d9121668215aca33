use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} exceeds cap {cap} (reached {reached})")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        reached: usize,
    },

    #[error("group spec error: {0}")]
    Spec(String),

    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("homomorphism is not injective")]
    NotInjective,

    #[error("homomorphism is not surjective")]
    NotSurjective,

    #[error("G-sets live over different groups")]
    GroupMismatch,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("G-set is not faithful (kernel of order {kernel_order}, generated by {kernel_gens:?})")]
    NotFaithful {
        kernel_order: usize,
        kernel_gens: Vec<String>,
    },

    #[error("action kernels differ (orders {0} and {1})")]
    KernelMismatch(usize, usize),

    #[error("invalid family: condition ({0}) violated")]
    InvalidFamily(u8),

    #[error("group is not a non-regular Frobenius group")]
    NotFrobenius,

    #[error("group order {0} is not a prime power")]
    NotPrimePower(usize),

    #[error("group is cyclic")]
    IsCyclic,

    #[error("target characteristic {0} equals the group prime")]
    SameCharacteristic(u32),

    #[error("no stabilizer of X is non-isomorphic to every stabilizer of Y")]
    ObstructionFails,

    #[error("pair is isomorphic")]
    Isomorphic,

    #[error("pair is not linearly equivalent in characteristic {0}")]
    NotEquivalent(u32),

    #[error("no collision up to degree cap {cap} ({examined} vectors examined); mindeg is finite but unknown")]
    SearchCapExceeded { cap: usize, examined: u64 },

    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("io error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

impl Error {
    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}
