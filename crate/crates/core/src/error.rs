use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `quotient_exact` was asked to divide by a non-divisor.
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },

    /// A coefficient was requested above the truncation cap; the
    /// degree-capped representation cannot answer there.
    #[error("total degree {tdeg} exceeds series cap {cap}")]
    CapExceeded { tdeg: u64, cap: u32 },

    /// Checked 64-bit coefficient arithmetic overflowed.
    #[error("integer overflow in coefficient arithmetic")]
    ArithmeticOverflow,

    /// A generator stream emitted a monomial outside its declared degree.
    #[error("stream emitted {monomial} in degree slice {degree}")]
    StreamDegreeMismatch { degree: u32, monomial: String },

    /// Text input (monomial, partition, ideal file, JSON) failed to parse.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    /// A partition referenced a class outside `1..=r`.
    #[error("class {class} out of range 1..={r}")]
    ClassOutOfRange { class: u32, r: u32 },

    /// The operation needs a finite variable bound but the series is
    /// marked as living in all of `Z[[X]]`.
    #[error("operation requires a series over finitely many variables")]
    UnboundedVariables,
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            col: 1,
            msg: msg.into(),
        }
    }

    pub(crate) fn parse_at(col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            col,
            msg: msg.into(),
        }
    }
}
