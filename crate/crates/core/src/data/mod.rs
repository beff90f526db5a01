//! Dataset ingestion, task construction and synthetic task suites.

mod movielens;
mod pickups;
mod rideshare;
mod sampler;
mod synthetic;

pub use movielens::{
    load_movies, load_ratings, make_movielens_tasks, MovieLensParams, MovieLensSuite, RatingsTable, TableStats,
};
pub use pickups::{format_datetime, load_pickups, parse_datetime, write_pickups, PickupColumns, PickupLoad, PickupRecord};
pub use rideshare::{make_rideshare_task, sample_ground, RideshareParams, RideshareTask};
pub use sampler::TaskSampler;
pub use synthetic::{synthetic_suite, SuiteKind, SyntheticSuite};
