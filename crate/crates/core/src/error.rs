use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live over different prime fields.
    ModulusMismatch { left: u32, right: u32 },
    /// Inverse of zero requested.
    DivisionByZero,
    /// The modulus failed the primality check or is out of range.
    NotPrime(u64),
    /// Two polynomials (or a polynomial and a system) have different variable counts.
    RingMismatch { left: usize, right: usize },
    /// Operation undefined on the zero polynomial.
    ZeroPolynomial,
    /// A system needs at least one generator.
    EmptySystem,
    InvalidOrder(String),
    /// The operation requires a degree-compatible term order.
    NotDegreeCompatible,
    /// The operation requires homogeneous input.
    NotHomogeneous,
    /// A polynomial exceeds the degree bound of the space it is tested against.
    DegreeTooLarge { degree: usize, bound: usize },
    /// The polynomial is not an element of the ideal.
    NotInIdeal,
    /// A resource cap was hit.
    Capacity { what: &'static str, limit: u64, detail: String },
    /// Any other precondition violation.
    Usage(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {} vs {}", left, right)
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotPrime(p) => write!(f, "{} is not a prime below 2^31", p),
            Error::RingMismatch { left, right } => {
                write!(f, "variable count mismatch: {} vs {}", left, right)
            }
            Error::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
            Error::EmptySystem => write!(f, "system has no generators"),
            Error::InvalidOrder(msg) => write!(f, "invalid term order: {}", msg),
            Error::NotDegreeCompatible => write!(f, "term order is not degree-compatible"),
            Error::NotHomogeneous => write!(f, "input is not homogeneous"),
            Error::DegreeTooLarge { degree, bound } => {
                write!(f, "degree {} exceeds bound {}", degree, bound)
            }
            Error::NotInIdeal => write!(f, "polynomial is not in the ideal"),
            Error::Capacity { what, limit, detail } => {
                write!(f, "capacity exceeded: {} > {}", what, limit)?;
                if !detail.is_empty() {
                    write!(f, " ({})", detail)?;
                }
                Ok(())
            }
            Error::Usage(msg) => write!(f, "{}", msg),
        }
    }
}

impl core::error::Error for Error {}
