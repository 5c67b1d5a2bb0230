//! Exact-rational affine geometry in R^d: generic linear maps, intersection
//! signs, PL linking numbers, distances, volumes, and thickness.

pub mod embedding;
pub mod gauss;
pub mod linalg;
pub mod linking;
pub mod predicates;

pub use embedding::{
    generic_linear_map, normalize_to_unit_ball, simplex_volume, thickness, PLEmbedding,
    ThicknessReport,
};
pub use gauss::{gauss_linking_estimate, gauss_linking_pl, GaussEstimate, SmoothCycle};
pub use linalg::{rat, rat_to_f64, Rat};
pub use linking::{linking_number, Cycle, OrientedCell};
pub use predicates::{hulls_intersect, simplex_intersection_sign, simplex_pair_distance_sq, Crossing};

use thiserror::Error;

/// A point of R^d with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<Rat>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn zero(d: usize) -> Point {
        use num_traits::Zero;
        Point(vec![Rat::zero(); d])
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rat) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, other: &Point) -> Rat {
        use num_traits::Zero;
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rat_to_f64).collect()
    }
}

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degenerate configuration: {0}")]
    Degeneracy(String),
    #[error("genericity failure after {attempts} attempts: {detail}")]
    GenericityFailure { attempts: u32, detail: String },
    #[error("not an embedding: {0}")]
    NotEmbedding(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}
