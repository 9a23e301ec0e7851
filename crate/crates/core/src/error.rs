use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid angle: {0}")]
    InvalidAngle(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point is not on the curve")]
    OffCurve,
    #[error("point at infinity has no triple")]
    PointAtInfinity,
    #[error("2-torsion point has no triple")]
    TwoTorsionPoint,
    #[error("degenerate triple: {0}")]
    Degenerate(String),
    #[error("b^2 - a^2 = 0, the Fermat step does not apply")]
    DegenerateIsoceles,
    #[error("c = 0, the Fermat step does not apply")]
    DegenerateC,
    #[error("orbit stopped at index {index}: {source}")]
    OrbitStopped {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("triples belong to different (angle, N)")]
    MismatchedContext,
    #[error("sum of the points is the point at infinity")]
    SumAtInfinity,
    #[error("sum of the points is a 2-torsion point")]
    SumIsTwoTorsion,
    #[error("case {case} constraint violated: {condition}")]
    Constraint { case: String, condition: String },
    #[error("value does not fit the scalar type")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    pub fn constraint(case: impl ToString, condition: impl Into<String>) -> Self {
        Error::Constraint {
            case: case.to_string(),
            condition: condition.into(),
        }
    }

    /// Short machine-readable tag, used in error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidAngle(_) => "InvalidAngle",
            Error::InvalidTriple(_) => "InvalidTriple",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::OffCurve => "OffCurve",
            Error::PointAtInfinity => "PointAtInfinity",
            Error::TwoTorsionPoint => "TwoTorsionPoint",
            Error::Degenerate(_) => "Degenerate",
            Error::DegenerateIsoceles => "DegenerateIsoceles",
            Error::DegenerateC => "DegenerateC",
            Error::OrbitStopped { .. } => "OrbitStopped",
            Error::MismatchedContext => "MismatchedContext",
            Error::SumAtInfinity => "SumAtInfinity",
            Error::SumIsTwoTorsion => "SumIsTwoTorsion",
            Error::Constraint { .. } => "Constraint",
            Error::Overflow => "Overflow",
            Error::Parse(_) => "Parse",
            Error::InternalInconsistency(_) => "InternalInconsistency",
        }
    }
}
