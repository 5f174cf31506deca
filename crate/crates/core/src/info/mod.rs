//! Second moments, entropies and majorization of one-pair distributions.

mod covariance;
mod entropy;
mod majorization;

pub use covariance::{covariance, first_moments, CovarianceMatrix};
pub use entropy::{find_wq_crossing, renyi_entropy, renyi_entropy_kernel, renyi_offset, EntropyValue};
pub use majorization::{
    concave_average, concave_average_kernel, default_family, majorizes, ConcaveTestFunction, MajorizationVerdict,
    Relation, Witness,
};
