//! Topologically trivial Legendrian embeddings of planar graphs in the tight
//! 3-sphere, modeled as rotation systems with vertex signs, edge twists and
//! dividing-curve chord diagrams.

pub mod chord;
pub mod classifier;
pub mod dividing;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod handle;
pub mod invariants;
pub mod matcher;
pub mod minor;
pub mod presentation;

pub use chord::{reachability_oracle, Matching, OracleClass, Side, ORACLE_BOUND};
pub use classifier::{
    count_classes, decide_isotopy, default_config, is_simple, rotation_vector, tw_from_tb,
    Candidate, ClassCount, Difference, IsotopyVerdict, SimplicityReport, SimplicityVerdict,
};
pub use dividing::{
    bypass_rewrite, canonical_config, canonical_config_with_budget, face_layouts, legal_moves,
    twist_from_gamma, validate_config, BypassArc, ConfigDiagnostic, ConfigView, DividingConfig,
    FaceLayout, Occ,
};
pub use embedding::{trace_faces, Embedding, Face, RotationSystem};
pub use error::{Error, Result};
pub use graph::{Cycle, EdgeId, End, Graph, Path, Separation, VertexId};
pub use handle::{
    build_gadget, gadget_unknot_invariants, image_invariants, reduce_to_p0, transport_invariants,
    Arc, CycleImage, GadgetSpec, HandleCounts, LedgerEntry, Node, Part, PlacedGadget,
    ReductionResult,
};
pub use invariants::{
    connect_sum_invariants, destabilize, find_theta_triple, invariant_vectors,
    orientation_obstruction, rot_vector, stabilize, tb_vector, total_rotation, CycleSet,
    InvariantVectors, Obstruction, ThetaTriple,
};
pub use matcher::{
    match_face_matchings, match_faces, match_spheres, FaceMatch, Move, MoveSequence, SphereMatch,
    Strategy, Which,
};
pub use minor::{has_minor, Pattern};
pub use presentation::{
    augment_to_3_connected, flip_ribbon_orientation, ribbon_equal, ribbon_invariant, Diagnostic,
    PositiveEdgeSet, Presentation, RawPresentation, RibbonInvariant, RibbonMode, Sign, Twist,
};
