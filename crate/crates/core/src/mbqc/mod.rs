//! Translation of the Simon circuit to ZX form, simplification to a
//! graph-like diagram and execution as a measurement pattern.

mod pattern;
mod raw;
mod simplify;
mod topology;
mod translate;

pub use pattern::{
    extract_pattern, pattern_outcome_distribution, simulate_pattern, support, Basis, Measurement,
    MeasurementPattern,
};
pub use raw::{bind_params, build_raw_translation, instantiate, AdaptiveDiagram, OracleSettings};
pub use simplify::{
    color_change_all, fuse_all, insert_readout_spiders, plug_auxiliary, remove_identities,
    simplify_stages, simplify_to_mbqc, Stage, STAGES,
};
pub use topology::{topology, ClusterTopology, Form, Role, TopoEdge, TopoNode};
pub use translate::{circuit_to_zx, ops_to_zx};
