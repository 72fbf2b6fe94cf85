use super::geometry::ConfigPoint;
use super::PlanError;

/// Joint positions of a bar linkage fixed at the origin. Each factor is the
/// unit direction of one bar: a 2-vector for planar arms, a 3-vector for
/// spatial ones. The first entry is the origin.
pub fn forward_kinematics(config: &ConfigPoint, lengths: &[f64]) -> Result<Vec<Vec<f64>>, PlanError> {
    if config.factors.len() != lengths.len() {
        return Err(PlanError::LengthMismatch {
            expected: config.factors.len(),
            found: lengths.len(),
        });
    }
    if let Some(l) = lengths.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        return Err(PlanError::InvalidArgument(format!("bar length {l} is not positive")));
    }
    let dim = config.factors.first().map_or(2, |f| f.len());
    if !(dim == 2 || dim == 3) || config.factors.iter().any(|f| f.len() != dim) {
        return Err(PlanError::InvalidArgument(
            "arm factors must all be circle directions or all 2-sphere directions".into(),
        ));
    }
    let mut joints = vec![vec![0.0; dim]];
    for (direction, length) in config.factors.iter().zip(lengths) {
        let last = joints.last().expect("origin present");
        let next = last.iter().zip(direction).map(|(p, d)| p + length * d).collect();
        joints.push(next);
    }
    Ok(joints)
}
