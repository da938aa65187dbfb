//! Pointwise verification engine for the closed-form curvature identities of
//! generalized Sasakian-space-forms under four deformed connections.
//!
//! Every printed closed form (curvature tensors, Ricci and scalar
//! contractions on submanifolds, minimality theorems) is evaluated exactly as
//! typeset and judged against independently derived oracles; deviations are
//! collected into a machine-readable errata report.

pub mod connection;
pub mod contact;
pub mod errata;
pub mod error;
pub mod frame;
pub mod report;
pub mod ricci;
pub mod submanifold;
pub mod suite;

pub use connection::{
    compare_curvature, curvature_closed, curvature_closed_terms, curvature_oracle, deformation,
    deformation_derivative, structure_derivative_phi, structure_derivative_xi, ComparisonReport,
    ConnectionKind, Verdict,
};
pub use contact::{
    canonical_structure, gssf_curvature, sasakian_params, tf_split, validate,
    AlmostContactStructure, SpaceFormParams, ValidationReport,
};
pub use errata::{errata_report, ErrataEntry, ErrataWitness};
pub use error::{Error, Result};
pub use frame::{
    orthonormalize, project, symmetric_spectrum, Matrix, Metric, Sampler, SpectralCluster, Vector,
};
pub use ricci::{
    equality_check, ricci_closed, ricci_direct, scalar_closed, scalar_direct, theorem_inequalities,
    theorem_ricci_bound, theorem_scalar_bound, ContractionConvention, EqualityReport, FormVariant,
    RicciForm, TheoremReport,
};
pub use submanifold::{
    random_minimal_sff, verify_slant_identity, ClusterClass, DistributionCluster,
    DistributionSplit, SecondFundamentalForm, SffClass, SlantReport, Submanifold,
};
