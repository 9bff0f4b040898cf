pub mod ablate;
pub mod evaluate;
pub mod export_figures;
pub mod train;
