use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,
    #[error("node {0} is out of range")]
    NodeOutOfRange(usize),
    #[error("node {0} is inactive")]
    InactiveNode(usize),
    #[error("double isolation of node {0}")]
    DoubleIsolation(usize),
    #[error("graph is disconnected ({components} components); evaluate per connected component")]
    Disconnected { components: usize },
    #[error("invalid growth spec: {0}")]
    InvalidSpec(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("katz divergent: kappa {kappa} >= 1/lambda_max ({bound})")]
    KatzDivergent { kappa: f64, bound: f64 },
    #[error("pdf pole at x = 0 for shape k = {0} < 1")]
    PdfPole(f64),
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    #[error("would empty graph: {requested} isolations requested on {nodes} nodes")]
    WouldEmptyGraph { requested: usize, nodes: usize },
    #[error("only {isolated} of {requested} nodes can be isolated without disconnecting the graph")]
    ConnectivityExhausted { isolated: usize, requested: usize },
    #[error("expected force undefined for node {0} with degree 0")]
    ZeroDegree(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
