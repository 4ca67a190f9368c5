//! Construction and certification of the graph exteriors `M_g`: the ideal
//! triangulation `T_g`, its hyperbolic geometry, canonicity via tilts, its
//! symmetry group and Dehn filling certificates from cusp slope lengths.

pub mod angles;
pub mod automorphism;
pub mod cusp;
pub mod error;
pub mod halfspace;
pub mod lattice;
pub mod perm;
pub mod quadrature;
pub mod serialize;
pub mod slopes;
pub mod tilts;
pub mod triangulation;
pub mod volume;

pub use angles::{angles, check_consistency, edge_angle_sums, AngleData, TetShape};
pub use automorphism::{automorphism_group, check_dihedral, AutGroup, Automorphism, DihedralCheck};
pub use cusp::{build_cusp_torus, cusp_area, edge_slope_length, CuspTorus};
pub use error::{GexError, Result};
pub use halfspace::{check_rprime_inequality, realize_half_space, HalfSpaceRealization};
pub use perm::Perm4;
pub use slopes::{
    certify_filling, exhaustive_slope_audit, slope_length, FillingCertificate, Slope, SlopeAudit,
    Verdict,
};
pub use tilts::{
    certify_canonical, certify_canonical_at, check_tilt_identities, compute_tilts,
    CanonicityCertificate, TiltData,
};
pub use triangulation::{
    build_double_cone, build_triangulation, classify_vertex_links, edge_classes, subdivide,
    ConeVertex, DoubleConeComplex, EdgeClass, Triangulation, VertexLinkSummary,
};
pub use volume::{tet_volume, volume_of_mg, VolumeResult, VolumeRow};
