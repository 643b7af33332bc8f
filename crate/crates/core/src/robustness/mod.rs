//! Influence functions of the measures and their growth in `|x|`.

mod contamination;
mod growth;
mod influence;

pub use contamination::{contaminated_quantile, default_eps_sequence, ContaminatedDistribution, ContaminationSpec};
pub use growth::{
    default_x_grid, expected_growth, growth_order, log_grid, uses_symmetric_influence, ExpectedGrowth,
    GrowthOrderEstimate, GROWTH_STATISTICS, MIN_FIT_POINTS, SIGN_CHANGE_MARGIN,
};
pub use influence::{
    adaptive_influence, LADDER_LEVELS, MAX_LADDER_SHIFTS,
    influence_estimate, influence_estimate_from, initial_eps, scaled_spec, sif_equals_if_check, InfluenceEstimate,
    SifIfCheck, SifIfRow, HL_TAIL_FRACTION, QUOTIENT_STABILITY,
};
