//! Concrete monotone set functions: facility location with convenience
//! scores, genre-weighted recommendation, task averages, rectangle-area
//! coverage, and modular / coverage fixtures.

mod area;
mod augment;
mod average;
mod coverage;
mod facility;
mod modular;
mod recommendation;

pub use area::{build_counterexample, union_area, AreaCoverageObjective, Rect};
pub use augment::{best_augmentation_exact, best_augmentation_value, BestAugmentation};
pub use average::TaskAverageObjective;
pub use coverage::CoverageObjective;
pub use facility::{convenience_score, FacilityLocationObjective, Point};
pub use modular::ModularObjective;
pub use recommendation::{genre_index, RecommendationObjective, GENRES};
