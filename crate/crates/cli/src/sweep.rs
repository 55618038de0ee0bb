//! Conductor-variant sweeps over one patch geometry.

use gpatch_core::circuit::{antenna_report, s11_spectrum_with_feed, FeedMatch};
use gpatch_core::{AntennaReport, ConductorSpec, PatchGeometry, SpectrumResult};
use rayon::prelude::*;

use crate::config::RunConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct CellOutput {
    pub report: AntennaReport,
    pub spectrum: Vec<SpectrumResult>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub conductor: ConductorSpec,
    /// Numerical failures stay with their cell.
    pub outcome: Result<CellOutput, gpatch_core::Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub geometry: PatchGeometry,
    pub feed: FeedMatch,
    pub cells: Vec<SweepCell>,
}

pub fn evaluate_cell(
    geometry: &PatchGeometry,
    conductor: &ConductorSpec,
    feed: &FeedMatch,
    band: (f64, f64),
    points: usize,
) -> Result<CellOutput, gpatch_core::Error> {
    let spectrum = s11_spectrum_with_feed(geometry, conductor, feed, band, points)?;
    let report = antenna_report(geometry, conductor, feed, band, points)?;
    Ok(CellOutput { report, spectrum })
}

/// Builds the geometry and feed once, then evaluates every variant in
/// parallel. Cells come back in input order.
pub fn run_sweep(config: &RunConfig) -> Result<SweepResult, gpatch_core::Error> {
    let geometry = config.build_geometry()?;
    let feed = FeedMatch::metal_matched(&geometry, config.metal_conductivity)?;
    let grid = &config.sweep;
    let cells = grid
        .conductor_variants
        .par_iter()
        .map(|conductor| SweepCell {
            conductor: *conductor,
            outcome: evaluate_cell(&geometry, conductor, &feed, grid.frequency_band, grid.frequency_points),
        })
        .collect();
    Ok(SweepResult { geometry, feed, cells })
}
