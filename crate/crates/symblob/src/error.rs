use thiserror::Error;

/// Errors surfaced by the engines. Internal invariant violations that are
/// mathematically impossible on valid inputs are reported through the
/// `Internal`-style variants rather than panics, so callers can print a
/// diagnostic and exit nonzero.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} must be invertible")]
    ZeroParameter(&'static str),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("diagram sizes do not match: {0} vs {1}")]
    SizeMismatch(u16, u16),
    #[error("edge ({0}, {1}) does not belong to the diagram")]
    UnknownEdge(u16, u16),
    #[error("arc index {0} out of range")]
    UnknownArc(usize),
    #[error("generator index {0} out of range for n = {1}")]
    GeneratorOutOfRange(usize, u16),
    #[error("letter E{0} out of range for n = {1}")]
    LetterOutOfRange(u8, u16),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error(
        "flavor `{0}` is not produced by basis enumeration; build it through its own constructor"
    )]
    FlavorNotEnumerable(String),
    #[error("reduced-word closure exceeded the length cap {cap} at n = {n}")]
    CapExceeded { n: u16, cap: usize },
    #[error("dimension not stabilized: still changing between lengths {0} and {1}; raise the cap")]
    NotStabilized(usize, usize),
    #[error("word-span oracle would need {0} words; raise n-specific limits or lower the cap")]
    OracleTooLarge(usize),
    #[error("n = 1 requires kappaL = kappaR = kappaLR; got distinct values")]
    CollapsedParametersRequired,
    #[error("reduced word is neither reducible nor a commuting product nor IJ/JI: {0}")]
    TrichotomyViolation(String),
    #[error("quotient inconsistency: {0}")]
    QuotientInconsistent(String),
    #[error("rendering rejected: {0}")]
    RenderTooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
