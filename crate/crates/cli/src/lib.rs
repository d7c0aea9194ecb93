//! Sweep engine, CSV/SVG emitters and the point report behind the `qstep`
//! binary.

pub mod config;
pub mod report;
pub mod svg;
pub mod sweep;

pub use config::{FigurePreset, PanelSet, SweepConfig, WEntry};
pub use sweep::{compute_row, run_sweep, run_with_configured_threads, Row, SweepOutcome, CSV_HEADER};
