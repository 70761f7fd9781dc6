//! Closed-form Euclidean projection onto the second-order cone
//! `{(w, z) : z ≥ ‖w‖₂}`, with `z` the last coordinate.
//!
//! This is the one deliberately floating-point corner of the crate: the
//! Euclidean norm leaves the rational field, so the ice-cream cone gets an
//! analytic oracle instead of an LP. Everything else stays exact.

use crate::error::{Error, Result};

/// Relative error bound documented for [`soc_project`] distances. The
/// projection formula is a handful of well-conditioned f64 operations.
pub const SOC_RELATIVE_ERROR_BOUND: f64 = 1e-12;

/// Result of projecting a point onto the second-order cone.
#[derive(Clone, Debug, PartialEq)]
pub struct SocProjection {
    /// Euclidean projection of the input onto the cone.
    pub projection: Vec<f64>,
    /// `‖p - projection‖₂`, accurate to [`SOC_RELATIVE_ERROR_BOUND`] relative.
    pub distance: f64,
}

/// Projects `p = (w, z)` onto `{(w, z) : z ≥ ‖w‖₂}`.
///
/// Inside the cone the point is its own projection; inside the polar cone
/// (`-z ≥ ‖w‖₂`) the projection is the origin; otherwise the projection is
/// the halfway point `((‖w‖ + z)/2) · (w/‖w‖, 1)`.
pub fn soc_project(p: &[f64]) -> Result<SocProjection> {
    if p.len() < 2 {
        return Err(Error::MalformedInput(
            "second-order cone needs dimension at least 2".into(),
        ));
    }
    let (w, z) = p.split_at(p.len() - 1);
    let z = z[0];
    let w_norm = norm2(w);

    if z >= w_norm {
        return Ok(SocProjection { projection: p.to_vec(), distance: 0.0 });
    }
    if -z >= w_norm {
        let distance = norm2(p);
        return Ok(SocProjection { projection: vec![0.0; p.len()], distance });
    }
    // Here w_norm > |z| > 0, so the division is safe.
    let alpha = (w_norm + z) / 2.0;
    let mut projection: Vec<f64> = w.iter().map(|wi| wi * (alpha / w_norm)).collect();
    projection.push(alpha);
    let distance = norm2(
        &p.iter()
            .zip(projection.iter())
            .map(|(a, b)| a - b)
            .collect::<Vec<_>>(),
    );
    Ok(SocProjection { projection, distance })
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_point_is_fixed() {
        let r = soc_project(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(r.projection, vec![0.0, 0.0, 1.0]);
        assert_eq!(r.distance, 0.0);
    }

    #[test]
    fn polar_point_maps_to_origin() {
        let r = soc_project(&[0.0, 0.0, -1.0]).unwrap();
        assert_eq!(r.projection, vec![0.0, 0.0, 0.0]);
        assert!((r.distance - 1.0).abs() < 1e-15);
    }

    #[test]
    fn goossens_sample_distance() {
        // x1 = (1/(1-cos 1))(cos 1, sin 1, cos 1): distance is sqrt(1/2).
        let c = 1.0 / (1.0 - 1.0f64.cos());
        let p = [c * 1.0f64.cos(), c * 1.0f64.sin(), c * 1.0f64.cos()];
        let r = soc_project(&p).unwrap();
        assert!((r.distance - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn boundary_halfway_formula() {
        // (1, 0, 0) projects to (1/2, 0, 1/2) at distance sqrt(1/2).
        let r = soc_project(&[1.0, 0.0, 0.0]).unwrap();
        assert!((r.projection[0] - 0.5).abs() < 1e-15);
        assert!((r.projection[2] - 0.5).abs() < 1e-15);
        assert!((r.distance - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rejects_dimension_below_two() {
        assert!(soc_project(&[1.0]).is_err());
    }
}
