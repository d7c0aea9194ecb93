//! Sweep configuration: potentials, energy grids, output selection.

use std::path::PathBuf;

/// One quaternionic potential entry of a sweep, as (V1, V2) components.
/// A bare magnitude w parses to V1 = 0, V2 = w (phase zero).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WEntry {
    pub v1: f64,
    pub v2: f64,
}

impl WEntry {
    pub fn from_magnitude(w: f64) -> Self {
        Self { v1: 0.0, v2: w }
    }

    pub fn magnitude(&self) -> f64 {
        self.v1.hypot(self.v2)
    }

    /// Parse either `2.5` (magnitude) or `1.5:0.5` (V1:V2).
    pub fn parse(text: &str) -> Result<Self, String> {
        let parse_f = |s: &str| -> Result<f64, String> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid number in W0 entry: {s:?}"))
        };
        match text.split_once(':') {
            Some((v1, v2)) => Ok(Self {
                v1: parse_f(v1)?,
                v2: parse_f(v2)?,
            }),
            None => {
                let mag = parse_f(text)?;
                if mag < 0.0 {
                    return Err(format!("W0 magnitude must be non-negative: {mag}"));
                }
                Ok(Self::from_magnitude(mag))
            }
        }
    }

    pub fn label(&self) -> String {
        if self.v1 == 0.0 {
            format!("|W0| = {}", self.v2)
        } else {
            format!("W0 = {}:{}", self.v1, self.v2)
        }
    }
}

/// Which quantities the SVG output plots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PanelSet {
    /// |R|, |R~|, |T|, |T~|, flux residual, v+, v-.
    Full,
    /// |R| and |R~|.
    Reflection,
    /// |T| and |T~|.
    Transmission,
    /// Reflected flux, transmitted flux and the balance residual.
    Conservation,
    /// v+, v- and the incident velocity.
    Velocities,
}

/// A full sweep specification. Energies are in units of the mass.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub mass: f64,
    pub v0: f64,
    pub w_entries: Vec<WEntry>,
    pub energies_over_m: Vec<f64>,
    pub out: PathBuf,
    pub svg: Option<PathBuf>,
    pub tol: f64,
    pub panels: PanelSet,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(format!("mass must be positive (m = {})", self.mass));
        }
        if !(self.v0.is_finite() && self.v0 >= 0.0) {
            return Err(format!("V0 must be non-negative (V0 = {})", self.v0));
        }
        if self.w_entries.is_empty() {
            return Err("at least one W0 entry is required".into());
        }
        if self.energies_over_m.len() < 2 {
            return Err("the energy grid needs at least 2 points".into());
        }
        if self.energies_over_m.iter().any(|&e| !(e > 1.0)) {
            return Err("every E/m grid point must exceed 1 (E > m)".into());
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(format!("tolerance must be positive (tol = {})", self.tol));
        }
        Ok(())
    }

    /// Entries sorted by ascending magnitude, the row order of the CSV.
    pub fn sorted_entries(&self) -> Vec<WEntry> {
        let mut entries = self.w_entries.clone();
        entries.sort_by(|a, b| {
            a.magnitude()
                .partial_cmp(&b.magnitude())
                .expect("finite magnitudes")
        });
        entries
    }
}

/// Inclusive linear grid with `steps` points.
pub fn inclusive_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2);
    (0..steps)
        .map(|idx| lo + (hi - lo) * idx as f64 / (steps - 1) as f64)
        .collect()
}

/// Half-open grid over (lo, hi] with `steps` points; used by the presets to
/// keep the lower endpoint (E = m) out of the grid.
pub fn half_open_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 1);
    (0..steps)
        .map(|idx| lo + (hi - lo) * (idx + 1) as f64 / steps as f64)
        .collect()
}

/// The four preset sweeps: a fixed complex step V0 = 3m with quaternionic
/// magnitudes |W0| = 0, 1, 2, 3 m over E/m in (1, 10].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigurePreset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl FigurePreset {
    pub fn name(&self) -> &'static str {
        match self {
            FigurePreset::Fig1 => "fig1",
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
        }
    }

    pub fn panels(&self) -> PanelSet {
        match self {
            FigurePreset::Fig1 => PanelSet::Reflection,
            FigurePreset::Fig2 => PanelSet::Transmission,
            FigurePreset::Fig3 => PanelSet::Conservation,
            FigurePreset::Fig4 => PanelSet::Velocities,
        }
    }

    pub fn config(&self, out_dir: &std::path::Path, steps: usize, tol: f64) -> SweepConfig {
        let mass = 1.0;
        SweepConfig {
            mass,
            v0: 3.0 * mass,
            w_entries: [0.0, 1.0, 2.0, 3.0]
                .iter()
                .map(|&w| WEntry::from_magnitude(w * mass))
                .collect(),
            energies_over_m: half_open_grid(1.0, 10.0, steps),
            out: out_dir.join(format!("{}.csv", self.name())),
            svg: Some(out_dir.join(format!("{}.svg", self.name()))),
            tol,
            panels: self.panels(),
        }
    }
}
