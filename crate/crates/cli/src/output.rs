//! Machine-readable output. JSON keys follow struct field order and path
//! coordinates are written with 17 significant digits.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;
use serde_json::value::RawValue;

/// `x` in scientific notation with 17 significant digits.
pub fn number(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { format!("{x:.16e}") } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted floats are valid JSON")
}

pub fn numbers(xs: &[f64]) -> Vec<Box<RawValue>> {
    xs.iter().copied().map(number).collect()
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// One path sample: time, flattened coordinates, optional joint positions.
pub struct Sample {
    pub t: f64,
    pub coords: Vec<f64>,
    pub joints: Option<Vec<Vec<f64>>>,
}

#[derive(Serialize)]
struct PathJson<'a> {
    space: &'a str,
    from: Vec<Box<RawValue>>,
    to: Vec<Box<RawValue>>,
    rule_index: usize,
    rule: &'a str,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    cells: &'a [(Vec<usize>, Vec<usize>)],
    samples: Vec<Vec<Box<RawValue>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    joints: Option<Vec<Vec<Vec<Box<RawValue>>>>>,
}

pub struct PathTrace<'a> {
    pub space: &'a str,
    pub from: &'a [f64],
    pub to: &'a [f64],
    pub rule_index: usize,
    pub rule: &'a str,
    pub cells: &'a [(Vec<usize>, Vec<usize>)],
    pub samples: Vec<Sample>,
}

impl PathTrace<'_> {
    pub fn to_json(&self) -> Result<String> {
        let samples = self
            .samples
            .iter()
            .map(|s| std::iter::once(number(s.t)).chain(numbers(&s.coords)).collect())
            .collect();
        let joints = self.samples.first().and_then(|s| s.joints.as_ref()).map(|_| {
            self.samples
                .iter()
                .map(|s| s.joints.iter().flatten().map(|j| numbers(j)).collect())
                .collect()
        });
        json(&PathJson {
            space: self.space,
            from: numbers(self.from),
            to: numbers(self.to),
            rule_index: self.rule_index,
            rule: self.rule,
            cells: self.cells,
            samples,
            joints,
        })
    }

    /// Header `t,c1,c2,…`, then `j<k>_<axis>` columns for joints 1.. when
    /// kinematics were requested. The fixed origin joint is left out.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        let dim = self.samples.first().map_or(0, |s| s.coords.len());
        for c in 1..=dim {
            write!(out, ",c{c}").unwrap();
        }
        if let Some(joints) = self.samples.first().and_then(|s| s.joints.as_ref()) {
            for (k, joint) in joints.iter().enumerate().skip(1) {
                for axis in ["x", "y", "z"].iter().take(joint.len()) {
                    write!(out, ",j{k}_{axis}").unwrap();
                }
            }
        }
        out.push('\n');
        for s in &self.samples {
            write!(out, "{:.16e}", s.t).unwrap();
            for x in &s.coords {
                write!(out, ",{x:.16e}").unwrap();
            }
            for joint in s.joints.iter().flatten().skip(1) {
                for x in joint {
                    write!(out, ",{x:.16e}").unwrap();
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_full_precision() {
        let x = std::f64::consts::PI;
        let back: f64 = number(x).get().parse().unwrap();
        assert_eq!(back, x);
        assert_eq!(number(-0.5).get(), "-5.0000000000000000e-1");
        assert_eq!(number(f64::NAN).get(), "null");
    }

    #[test]
    fn csv_header_and_rows() {
        let trace = PathTrace {
            space: "circle",
            from: &[1.0, 0.0],
            to: &[0.0, 1.0],
            rule_index: 1,
            rule: "r",
            cells: &[],
            samples: vec![Sample {
                t: 0.0,
                coords: vec![1.0, 0.0],
                joints: Some(vec![vec![0.0, 0.0], vec![1.0, 0.0]]),
            }],
        };
        let csv = trace.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,c1,c2,j1_x,j1_y"));
        assert_eq!(lines.next().unwrap().split(',').count(), 5);
    }
}
