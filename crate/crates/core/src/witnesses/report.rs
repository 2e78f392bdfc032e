//! Non-Markovianity measure reports: the value, the detected backflow
//! windows, and the monitored trajectory they were read from.

use crate::error::{Error, Result};
use crate::qip::Convention;
use crate::textio::format_sci;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    /// Integrated positive derivative of the QIP.
    Qip,
    /// Integrated positive derivative of the trace distance of a state pair.
    Blp,
    /// Integrated positive derivative of the quantum mutual information.
    MutualInformation,
    /// Integrated Choi trace-norm excess of the per-step intermediate maps.
    Rhp,
}

impl MeasureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MeasureKind::Qip => "qip",
            MeasureKind::Blp => "blp",
            MeasureKind::MutualInformation => "mutual",
            MeasureKind::Rhp => "rhp",
        }
    }

    /// CSV column name of the monitored quantity.
    pub fn column_name(self) -> &'static str {
        match self {
            MeasureKind::Qip => "Q",
            MeasureKind::Blp => "D",
            MeasureKind::MutualInformation => "I",
            MeasureKind::Rhp => "N_cumulative",
        }
    }
}

/// A non-Markovianity value, the backflow windows it came from, and the
/// monitored samples.
#[derive(Debug, Clone)]
pub struct MeasureReport {
    pub measure: MeasureKind,
    pub value: f64,
    /// Disjoint, ordered (t_start, t_end) windows inside the grid span.
    pub intervals: Vec<(f64, f64)>,
    pub times: Vec<f64>,
    /// Monitored quantity at each grid time.
    pub samples: Vec<f64>,
    /// Reporting convention (QIP-based measures only).
    pub convention: Option<Convention>,
    pub initial_state_label: String,
    /// Grid steps skipped because the intermediate map was singular
    /// (RHP only).
    pub skipped_steps: Vec<usize>,
}

impl MeasureReport {
    /// Checks the report invariants: nonnegative value, ordered disjoint
    /// in-span intervals, and consistency between the value and the summed
    /// endpoint differences of the monitored quantity.
    pub fn validate(&self) -> Result<()> {
        if !(self.value >= 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "measure value",
                value: self.value,
            });
        }
        let (t0, t1) = (
            *self.times.first().unwrap_or(&0.0),
            *self.times.last().unwrap_or(&0.0),
        );
        let mut prev_end = f64::NEG_INFINITY;
        for &(a, b) in &self.intervals {
            if !(a <= b) || a < t0 - 1e-12 || b > t1 + 1e-12 || a < prev_end - 1e-12 {
                return Err(Error::ParameterOutOfRange {
                    name: "interval bounds",
                    value: a,
                });
            }
            prev_end = b;
        }
        let summed: f64 = self
            .intervals
            .iter()
            .map(|&(a, b)| (self.interpolate(b) - self.interpolate(a)).max(0.0))
            .sum();
        if (summed - self.value).abs() > 1e-6 {
            return Err(Error::ParameterOutOfRange {
                name: "fundamental-theorem consistency",
                value: summed - self.value,
            });
        }
        Ok(())
    }

    /// Linear interpolation of the monitored samples.
    pub fn interpolate(&self, t: f64) -> f64 {
        let times = &self.times;
        let n = times.len();
        if t <= times[0] {
            return self.samples[0];
        }
        if t >= times[n - 1] {
            return self.samples[n - 1];
        }
        let k = times.partition_point(|&x| x <= t).min(n - 1);
        let (ta, tb) = (times[k - 1], times[k]);
        let (fa, fb) = (self.samples[k - 1], self.samples[k]);
        fa + (fb - fa) * (t - ta) / (tb - ta)
    }

    /// Structured text document with the measure, value, convention,
    /// initial state, intervals and a grid summary.
    pub fn to_report_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("measure = {}\n", self.measure.as_str()));
        out.push_str(&format!("value = {}\n", format_sci(self.value)));
        out.push_str(&format!(
            "convention = {}\n",
            self.convention.map_or("none", |c| c.as_str())
        ));
        out.push_str(&format!("initial_state = {}\n", self.initial_state_label));
        out.push_str(&format!("grid_points = {}\n", self.times.len()));
        out.push_str(&format!(
            "t_start = {}\n",
            format_sci(*self.times.first().unwrap_or(&0.0))
        ));
        out.push_str(&format!(
            "t_end = {}\n",
            format_sci(*self.times.last().unwrap_or(&0.0))
        ));
        if self.times.len() > 1 {
            out.push_str(&format!(
                "grid_step = {}\n",
                format_sci(self.times[1] - self.times[0])
            ));
        }
        out.push_str(&format!("interval_count = {}\n", self.intervals.len()));
        let pairs: Vec<String> = self
            .intervals
            .iter()
            .map(|&(a, b)| format!("({}, {})", format_sci(a), format_sci(b)))
            .collect();
        out.push_str(&format!("intervals = [{}]\n", pairs.join("; ")));
        if !self.skipped_steps.is_empty() {
            let steps: Vec<String> = self.skipped_steps.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!("skipped_steps = [{}]\n", steps.join("; ")));
        }
        out
    }

    /// CSV of the monitored trajectory (`t,<quantity>` with a comment line
    /// naming the measure).
    pub fn monitored_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# measure={}\n", self.measure.as_str()));
        out.push_str(&format!("t,{}\n", self.measure.column_name()));
        for (t, q) in self.times.iter().zip(&self.samples) {
            out.push_str(&format!("{},{}\n", format_sci(*t), format_sci(*q)));
        }
        out
    }
}
