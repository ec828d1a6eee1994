use serde::{Deserialize, Serialize};

/// Recognition thresholds. Distances in meters, angles in degrees.
///
/// Every field can be overridden from JSON; missing fields keep defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
pub struct Thresholds {
    /// Gap below which two related views latch for linking.
    pub link_distance: f64,
    /// Break distance as a multiple of `link_distance`.
    pub hysteresis: f64,
    /// Gap below which views count as side by side.
    pub juxtapose_distance: f64,
    /// Minimum angle between panel normals for superimposing.
    pub superimpose_angle_deg: f64,
    /// Minimum host/client diagonal ratio for nesting.
    pub host_client_ratio: f64,
    /// Pcp axis gap, as a multiple of the default gap, that activates a region.
    pub spread_factor: f64,
    /// Pull distance that lifts or extracts an element.
    pub pull_distance: f64,
    /// Partition bin step as a fraction of the axis length.
    pub bin_step_fraction: f64,
    /// Arc angle in radians applied to new small-multiple layouts.
    pub curvature: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            link_distance: 0.15,
            hysteresis: 1.25,
            juxtapose_distance: 0.30,
            superimpose_angle_deg: 45.0,
            host_client_ratio: 2.5,
            spread_factor: 1.5,
            pull_distance: 0.20,
            bin_step_fraction: 0.5,
            curvature: 0.0,
        }
    }
}

impl Thresholds {
    pub fn break_distance(&self) -> f64 {
        self.link_distance * self.hysteresis
    }

    /// Problems with the values, empty when usable.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let positive = [
            ("linkDistance", self.link_distance),
            ("juxtaposeDistance", self.juxtapose_distance),
            ("superimposeAngleDeg", self.superimpose_angle_deg),
            ("hostClientRatio", self.host_client_ratio),
            ("spreadFactor", self.spread_factor),
            ("pullDistance", self.pull_distance),
            ("binStepFraction", self.bin_step_fraction),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                out.push(format!("{name} must be positive"));
            }
        }
        if !(self.hysteresis > 1.0 && self.hysteresis.is_finite()) {
            out.push("hysteresis must exceed 1 so breaking is harder than latching".into());
        }
        if !self.curvature.is_finite() {
            out.push("curvature must be finite".into());
        }
        out
    }
}
