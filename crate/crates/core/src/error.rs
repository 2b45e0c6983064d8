use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },
    #[error("edge {edge} references vertex {vertex}, but the graph has {num_vertices} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        num_vertices: usize,
    },
    #[error("invalid vertex id {vertex} (graph has {num_vertices} vertices)")]
    InvalidVertex { vertex: usize, num_vertices: usize },
    #[error("invalid edge id {edge} (graph has {num_edges} edges)")]
    InvalidEdge { edge: usize, num_edges: usize },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("invalid JSON graph: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {edge} is not incident to vertex {vertex}")]
    NotIncident { vertex: usize, edge: usize },
    #[error("edge {edge} appears in both sides of the split")]
    PartitionOverlap { edge: usize },
    #[error("edge {edge} at vertex {vertex} is missing from the split")]
    PartitionIncomplete { vertex: usize, edge: usize },
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    Degree {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("the two remaining edges at vertex {vertex} are parallel; apply the multi-pendant fix first")]
    ParallelRemainder { vertex: usize },
    #[error("the two remaining edges at vertex {vertex} are not parallel")]
    NotParallel { vertex: usize },
    #[error("cannot eliminate pendant vertex {vertex}: {reason}")]
    StuckPendant { vertex: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("frontier width {width} exceeds the cap of {cap}")]
    WidthCap { width: usize, cap: usize },
    #[error("graph has {vertices} vertices; the brute-force counter supports at most {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("elimination order is not a permutation of the {num_vertices} vertices")]
    BadOrder { num_vertices: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineGraphError {
    #[error("graph is not cubic (vertex {vertex} has degree {degree})")]
    NotCubic { vertex: usize, degree: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has parallel edges")]
    NotSimple,
    #[error("found more than one triangle partition")]
    AmbiguousPartition,
}
