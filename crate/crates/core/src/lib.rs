//! Riemannian geometry on the space of planar triangular meshes.
//!
//! A mesh is a [`ConnectivityComplex`] (which vertices form triangles) plus a
//! [`VertexConfiguration`] (where the vertices are). Configurations that form
//! a proper, positively oriented triangulation are *admissible*. The metric
//! `g = I + ∇f ∇fᵀ`, with `f` blowing up at the boundary of the admissible
//! set, makes that set geodesically complete; geodesics are computed with a
//! symplectic Störmer–Verlet scheme.
//!
//! ```
//! use meshgeo::{fixtures, admissibility::is_in_mplus};
//!
//! let (complex, q) = fixtures::cross_mesh();
//! assert!(is_in_mplus(&complex, &q).unwrap().is_admissible_oriented());
//! ```

pub mod admissibility;
pub mod augmented;
pub mod experiment;
pub mod fixtures;
pub mod geometry;
pub mod integrator;
pub mod io;
pub mod metric;
pub mod oned;
pub mod simplicial;

pub use admissibility::{is_in_m0, is_in_mplus, AdmissibilityReport};
pub use augmented::{AugmentedMetric, DomainError, MetricAt};
pub use geometry::{Point, VertexConfiguration};
pub use integrator::{
    exponential_map, stormer_verlet, GeodesicTrajectory, IntegrationError, SolverOptions,
};
pub use metric::{Cutoff, MeshMetric, MetricParams};
pub use simplicial::ConnectivityComplex;
