use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported root system {0}")]
    UnsupportedType(String),
    #[error("Weyl group of order {order} exceeds cap {cap}")]
    WeylCap { order: u128, cap: u128 },
    #[error("lattice enumeration needs {needed} points, cap is {cap}")]
    LatticeCap { needed: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("phase e^(2 pi i {0}) is not in Q(i); exact mode cannot represent it")]
    PhaseOutsideGaussian(String),
    #[error("series is zero to jet order {0}; raise the jet order")]
    ZeroToJetOrder(usize),
    #[error("numerator has u-order {num} below denominator u-order {den}: pole at z = 0")]
    UPole { num: usize, den: usize },
    #[error("incompatible series: {0}")]
    Incompatible(String),
    #[error("numerical evaluation: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
