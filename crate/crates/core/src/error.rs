use thiserror::Error;

use crate::monomial::Space;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    Dimension(String),
    #[error("operands live in different rings: {left:?} vs {right:?}")]
    SpaceMismatch { left: Space, right: Space },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("indices must be pairwise distinct, got {0:?}")]
    RepeatedIndex(Vec<usize>),
    #[error("radial potential tower exhausted: V^({needed}) requested but depth is {depth}")]
    TowerExhausted { needed: usize, depth: usize },
    #[error("expression is not divisible by i*hbar")]
    NotDivisibleByIHbar,
    #[error("invalid evaluation point: {0}")]
    InvalidPoint(String),
    #[error("generator {generator} is not defined for the {model} model")]
    ModelMismatch { generator: &'static str, model: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("radial point sampling exhausted after {attempts} attempts; increase the coordinate bound")]
    SamplingExhausted { attempts: usize },
    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
