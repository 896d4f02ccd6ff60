//! Dominating-and-paired-dominating partitions of multigraphs: exact search,
//! 2-subdivision graphs, good subgraphs and minimality.

pub mod catalog;
pub mod domination;
pub mod error;
pub mod goodsub;
pub mod graph;
pub mod minimality;
pub mod subdivision;

pub use domination::{enumerate_dp_pairs, find_dp_pair, is_dp_pair, is_dpdp, DpPair};
pub use error::{CatalogError, FormatError, GoodSubgraphError, GraphError, MinimalityError, SubdivisionError};
pub use goodsub::{GoodSubgraphCertificate, ReductionPlan, Violation};
pub use graph::{EdgeId, EdgeRecord, Multigraph, VertexId, VertexSet};
pub use minimality::{MinimalityReport, XcheckReport};
pub use subdivision::{build_s2, invert_s2, Alpha, EdgeSide, EdgeTag, S2Labeling, VertexTag};

/// Version string reported in machine-readable output.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
