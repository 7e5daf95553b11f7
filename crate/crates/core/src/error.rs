use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate edge {u} {v}{}", fmt_line(*.line))]
    DuplicateEdge { u: u32, v: u32, line: Option<usize> },

    #[error("vertex {v} outside 1..={n}{}", fmt_line(*.line))]
    VertexOutOfRange { v: u32, n: u32, line: Option<usize> },

    #[error("loop at vertex {v} in a simple graph{}", fmt_line(*.line))]
    LoopInSimpleGraph { v: u32, line: Option<usize> },

    #[error("invalid vertex order: {0}")]
    InvalidOrder(String),

    #[error("{what} = {value} exceeds the enumeration limit {limit}")]
    LimitExceeded { what: &'static str, value: u64, limit: u64 },

    #[error("graph must be simple")]
    NotSimple,

    #[error("odd vertex count {0}; the quotient needs vertex pairs")]
    OddVertexCount(u32),

    #[error("n*degree = {n}*{degree} is odd; no regular graph exists")]
    OddDegreeSum { n: u32, degree: u32 },

    #[error("degree {degree} must be below the vertex count {n}")]
    DegreeTooLarge { n: u32, degree: u32 },

    #[error("no simple pairing after {0} attempts")]
    RejectionCapExceeded(u64),

    #[error("k = {k} outside the admissible range {lo}..={hi}")]
    KOutOfRange { k: u64, lo: f64, hi: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache entry {key} already holds {cached}, recomputed {computed}")]
    CacheMismatch { key: String, cached: String, computed: String },

    #[error("cache line {line}: {msg}")]
    CacheFormat { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_line(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}
