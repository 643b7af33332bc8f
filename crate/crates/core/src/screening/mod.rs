//! Screening of every variable of a data matrix by summary statistics.

mod matrix;
mod plot;
mod ranked;

pub use matrix::{load_matrix, load_matrix_path, DataMatrix};
pub use plot::{
    export_marginal_plot_data, silverman_bandwidth, ClassDensity, MarginalPlotData, VariablePlot, BANDWIDTH_RULE,
    KDE_GRID_POINTS,
};
pub use ranked::{
    bottom_k, compute_summaries, rank_by, screen, top_k, Direction, Exclusion, RankedEntry, RankedList,
    VariableSummary,
};
