use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{DensityReport, Direction, EscapeAssignment};

/// Contents of a solution file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub directions: Vec<Direction>,
    pub density: u64,
    pub boundary_density: u64,
}

impl Solution {
    pub fn new(assignment: &EscapeAssignment, report: &DensityReport) -> Self {
        Solution {
            directions: assignment.as_slice().to_vec(),
            density: report.density,
            boundary_density: report.boundary_density,
        }
    }

    pub fn assignment(&self) -> EscapeAssignment {
        EscapeAssignment::new(self.directions.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("solution serializes");
        out.push('\n');
        out
    }
}
