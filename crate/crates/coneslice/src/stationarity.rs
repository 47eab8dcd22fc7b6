//! The stationarity condition and its equivalent characterizations.
//!
//! An admissible hyperplane H(b) through A is stationary for the
//! cross-section volume exactly when `AH = n * AG` (H the foot of the origin
//! on the plane, G the section centroid). For n >= 3 this is tied, two out
//! of three, to (ii) the point A' = (n-1)/2 * A being equidistant from the
//! section vertices and (iii) the foot H coinciding with the section's
//! Monge point.

use crate::error::{Error, Result};
use crate::geometry::{self, Hyperangle, Hyperplane, Point, Section};
use crate::tol;

/// Everything the stationarity residual evaluation produces.
#[derive(Debug, Clone)]
pub struct StationarityReport {
    /// AH - n*AG; lies in the plane's direction space.
    pub residual_vector: Point,
    pub residual_norm: f64,
    /// Orthogonal projection of the origin on the plane.
    pub foot: Point,
    /// Centroid of the cross-section.
    pub centroid: Point,
    /// A' with OA' = (n-1)/2 * OA.
    pub a_prime: Point,
    /// max - min of the distances A'A_i.
    pub equal_distance_spread: f64,
    /// |H - M| where M is the Monge point of the section; undefined (None)
    /// for n = 2 where the Monge condition is missing.
    pub monge_gap: Option<f64>,
    pub is_stationary: bool,
    /// Max pairwise vertex distance; the scale residual_norm is compared to.
    pub section_diameter: f64,
}

/// The point A' defined by OA' = (n-1)/2 * OA.
pub fn a_prime(a: &Point, n: usize) -> Point {
    a * ((n as f64 - 1.0) / 2.0)
}

fn require_on_plane(plane: &Hyperplane, a: &Point) -> Result<()> {
    let gap = plane.eval(a).abs();
    if gap > tol::ON_PLANE_REL * (1.0 + plane.normal().norm() * a.norm()) {
        return Err(Error::PointNotOnPlane { gap });
    }
    Ok(())
}

/// Evaluate the stationarity condition of `plane` at `a`.
///
/// `tol_stat` scales with the section diameter: the plane counts as
/// stationary when |AH - n*AG| <= tol_stat * diameter.
pub fn residual(
    cone: &Hyperangle,
    a: &Point,
    plane: &Hyperplane,
    tol_stat: f64,
) -> Result<StationarityReport> {
    let section = cone.section(plane)?;
    require_on_plane(plane, a)?;
    let n = cone.dim();
    let foot = plane.foot_of_origin();
    let centroid = section.centroid();
    let residual_vector = (&foot - a) - (&centroid - a) * n as f64;
    let residual_norm = residual_vector.norm();
    let ap = a_prime(a, n);
    let dists: Vec<f64> = section.vertices().iter().map(|v| (v - &ap).norm()).collect();
    let (dmin, dmax) = dists
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &d| (lo.min(d), hi.max(d)));
    let monge_gap = if n >= 3 {
        let m = geometry::monge_point(section.vertices())?;
        Some((&foot - &m).norm())
    } else {
        None
    };
    let section_diameter = section.diameter();
    Ok(StationarityReport {
        residual_norm,
        residual_vector,
        foot,
        centroid,
        a_prime: ap,
        equal_distance_spread: dmax - dmin,
        monge_gap,
        is_stationary: residual_norm <= tol_stat * section_diameter,
        section_diameter,
    })
}

/// The three conditions of the two-of-three equivalence, each within
/// `tol_stat` at the section's scale:
/// (i) stationarity, (ii) equal distances A'A_i, (iii) foot = Monge point.
pub fn two_of_three_check(
    cone: &Hyperangle,
    a: &Point,
    plane: &Hyperplane,
    tol_stat: f64,
) -> Result<(bool, bool, bool)> {
    if cone.dim() < 3 {
        return Err(Error::InvalidInput(
            "the two-of-three equivalence needs n >= 3".into(),
        ));
    }
    let report = residual(cone, a, plane, tol_stat)?;
    let section = cone.section(plane)?;
    let dists: Vec<f64> = section
        .vertices()
        .iter()
        .map(|v| (v - &report.a_prime).norm())
        .collect();
    let mean = dists.iter().sum::<f64>() / dists.len() as f64;
    let ii = report.equal_distance_spread <= tol_stat * mean.max(f64::MIN_POSITIVE);
    let iii = report.monge_gap.expect("n >= 3") <= tol_stat * report.section_diameter;
    Ok((report.is_stationary, ii, iii))
}

/// Barycentric coordinates of `x` with respect to the section's vertices.
/// Requires `x` to lie in the section's affine hull.
pub fn barycentric_coordinates(section: &Section, x: &Point) -> Result<Vec<f64>> {
    require_on_plane(section.plane(), x)?;
    let n = section.vertices().len();
    let v = nalgebra::DMatrix::from_fn(n, n, |i, j| section.vertices()[j][i]);
    let coords = v
        .lu()
        .solve(x)
        .ok_or_else(|| Error::Degenerate("section vertices are dependent".into()))?;
    Ok(coords.iter().copied().collect())
}

/// Barycentric form of the stationarity condition: for a stationary plane,
/// `h_i + (n-1) a_i = 1` where h and a are the barycentric coordinates of
/// the foot H and of A. Returns the max absolute defect over i.
pub fn bar_identity_gap(cone: &Hyperangle, a: &Point, plane: &Hyperplane) -> Result<f64> {
    let section = cone.section(plane)?;
    require_on_plane(plane, a)?;
    let n = cone.dim() as f64;
    let h = barycentric_coordinates(&section, &plane.foot_of_origin())?;
    let ab = barycentric_coordinates(&section, a)?;
    Ok(h.iter()
        .zip(ab.iter())
        .map(|(&hi, &ai)| (hi + (n - 1.0) * ai - 1.0).abs())
        .fold(0.0, f64::max))
}
