//! Exact combinatorics of toric varieties proper over affine space.
//!
//! Everything here is computed over arbitrary-precision rationals: restricted
//! root systems and their Weyl groups, fans supported in the positive orthant,
//! piecewise-linear support functions and their ampleness criteria, the
//! polyhedra `Q_h` / polytopes `P_h` attached to a linearized bundle, and
//! surjectivity of section multiplication phrased as lattice-point Minkowski
//! decomposition, with constructive splitting algorithms for the built-in
//! fan families.

pub mod rat;
pub mod linalg;
pub mod lattice;
pub mod roots;
pub mod fan;
pub mod catalog;
pub mod bundle;
pub mod polyhedra;
pub mod normality;
pub mod split;
pub mod json;
pub mod cli;

pub use lattice::{pair, MVec, NVec};
pub use rat::{Int, Rat};

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular linear system")]
    SingularSystem,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("empty polyhedron")]
    EmptyPolyhedron,
    #[error("empty face")]
    EmptyFace,
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Enumeration caps, overridable through the `SYMNORM_CAP` environment
/// variable (a single integer that replaces the lattice-point cap).
#[derive(Debug, Clone)]
pub struct Caps {
    /// Maximum number of Weyl group elements generated.
    pub weyl_elements: usize,
    /// Maximum rank accepted by exact vertex enumeration.
    pub vertex_rank: usize,
    /// Maximum number of lattice points scanned in one box enumeration.
    pub lattice_points: usize,
}

impl Default for Caps {
    fn default() -> Self {
        let mut caps = Caps { weyl_elements: 1_000_000, vertex_rank: 5, lattice_points: 50_000_000 };
        if let Ok(v) = std::env::var("SYMNORM_CAP") {
            if let Ok(n) = v.trim().parse::<usize>() {
                caps.lattice_points = n;
            }
        }
        caps
    }
}
