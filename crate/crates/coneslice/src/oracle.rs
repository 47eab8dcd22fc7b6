//! Brute-force reference implementations.
//!
//! These deliberately avoid the solvers' closed-form volume: every section
//! volume here is evaluated by constructing the vertices and taking the Gram
//! determinant, so oracle and solver constitute two independent routes.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::geometry::{self, Hyperangle, Hyperplane, Point};
use crate::solver::Chart;
use crate::tol;

/// Shrink-and-refine grid search parameters.
#[derive(Debug, Clone)]
pub struct GridSpec {
    /// Grid points per axis and refinement level.
    pub resolution: usize,
    /// Number of refinement levels.
    pub levels: usize,
    /// Half-width multiplier between levels, in (0, 1).
    pub shrink: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        // converges to ~1e-6 relative within ~3e5 evaluations for n <= 3
        Self {
            resolution: 21,
            levels: 8,
            shrink: 0.35,
        }
    }
}

impl GridSpec {
    fn validate(&self) -> Result<()> {
        if self.resolution < 3 {
            return Err(Error::InvalidInput("grid resolution must be >= 3".into()));
        }
        if self.levels < 1 {
            return Err(Error::InvalidInput("grid levels must be >= 1".into()));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::InvalidInput("shrink factor must be in (0,1)".into()));
        }
        Ok(())
    }
}

/// Result of the grid refinement search.
#[derive(Debug, Clone)]
pub struct OracleMin {
    /// Chart coordinates of the best point.
    pub t: Vec<f64>,
    /// Normal of the best plane.
    pub plane: Hyperplane,
    /// Gram-determinant volume at the best point.
    pub volume: f64,
    /// Number of objective evaluations.
    pub evaluations: usize,
}

/// Gram-determinant section volume; infinity when not admissible.
fn gram_volume(cone: &Hyperangle, b: &Point) -> f64 {
    let n = cone.dim();
    let mut verts = Vec::with_capacity(n);
    for i in 0..n {
        let d = cone.generators().column(i).dot(b);
        if d <= tol::EPS_ADMISSIBLE {
            return f64::INFINITY;
        }
        verts.push(cone.generators().column(i).into_owned() / d);
    }
    geometry::simplex_volume(&verts).unwrap_or(f64::INFINITY)
}

/// Direct search over the constraint chart: iterative shrink-and-refine
/// around the incumbent grid minimum.
pub fn grid_refine_min(cone: &Hyperangle, a: &Point, spec: &GridSpec) -> Result<OracleMin> {
    spec.validate()?;
    if !cone.interior_contains(a)? {
        return Err(Error::NotInterior);
    }
    let chart = Chart::new(cone, a)?;
    let dim = chart.dim();
    let mut evaluations = 0usize;
    let mut eval = |t: &[f64]| {
        evaluations += 1;
        gram_volume(cone, &chart.point(t))
    };
    // admissibility interval along each chart axis, found by doubling and
    // bisection; the constraint polytope is bounded for interior points
    let mut center = vec![0.0; dim];
    let mut halfw = vec![0.0; dim];
    for j in 0..dim {
        let mut axis_range = [0.0f64; 2];
        for (side, sign) in [(0usize, -1.0f64), (1usize, 1.0f64)] {
            let mut s = 1.0;
            let mut inside = 0.0;
            let mut t = vec![0.0; dim];
            for _ in 0..60 {
                t[j] = sign * s;
                if eval(&t).is_finite() {
                    inside = s;
                    s *= 2.0;
                } else {
                    break;
                }
                if s > 1e9 {
                    break;
                }
            }
            let mut lo = inside;
            let mut hi = s;
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                t[j] = sign * mid;
                if eval(&t).is_finite() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            axis_range[side] = sign * lo;
        }
        center[j] = 0.5 * (axis_range[0] + axis_range[1]);
        halfw[j] = 0.6 * (axis_range[1] - axis_range[0]);
    }
    // incumbent: the chart base, always admissible
    let mut best_t = vec![0.0; dim];
    let mut best_v = eval(&best_t);
    for _ in 0..spec.levels {
        let mut grid = vec![0usize; dim];
        loop {
            let t: Vec<f64> = (0..dim)
                .map(|j| {
                    center[j] - halfw[j]
                        + 2.0 * halfw[j] * grid[j] as f64 / (spec.resolution - 1) as f64
                })
                .collect();
            let v = eval(&t);
            if v < best_v {
                best_v = v;
                best_t = t;
            }
            // lexicographic counter over the grid
            let mut carry = dim;
            for j in (0..dim).rev() {
                grid[j] += 1;
                if grid[j] < spec.resolution {
                    carry = j;
                    break;
                }
                grid[j] = 0;
            }
            if carry == dim {
                break;
            }
        }
        center.clone_from(&best_t);
        for w in &mut halfw {
            *w *= spec.shrink;
        }
    }
    Ok(OracleMin {
        plane: Hyperplane::new(chart.point(&best_t))?,
        t: best_t,
        volume: best_v,
        evaluations,
    })
}

/// Length of the segment a line through `a` with direction angle `phi` cuts
/// from a 2D cone; None if the line does not cut a bounded segment.
fn cut_length(cone: &Hyperangle, a: &Point, phi: f64) -> Option<f64> {
    let u = DVector::from_column_slice(&[phi.cos(), phi.sin()]);
    let cross = |p: &Point, q: &Point| p[0] * q[1] - p[1] * q[0];
    let mut hits = Vec::with_capacity(2);
    for i in 0..2 {
        let e = cone.generator(i);
        let denom = cross(&u, &e);
        if denom.abs() < 1e-14 {
            return None; // parallel to an edge: unbounded cut
        }
        let s = -cross(a, &e) / denom;
        let p = a + &u * s;
        if p.dot(&e) <= 0.0 {
            return None; // hit on the ray's negative extension
        }
        hits.push(p);
    }
    Some((&hits[0] - &hits[1]).norm())
}

/// Scan line directions through `a` and return the direction and length of
/// the shortest cut segment, golden-section refined around the best sample.
pub fn segment_scan_2d(cone: &Hyperangle, a: &Point, num_angles: usize) -> Result<(f64, f64)> {
    if cone.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: cone.dim(),
        });
    }
    if !cone.interior_contains(a)? {
        return Err(Error::NotInterior);
    }
    let num = num_angles.max(8);
    let length = |phi: f64| cut_length(cone, a, phi).unwrap_or(f64::INFINITY);
    let mut best = (f64::INFINITY, 0.0f64);
    for i in 0..num {
        let phi = std::f64::consts::PI * (i as f64 + 0.5) / num as f64;
        let l = length(phi);
        if l < best.0 {
            best = (l, phi);
        }
    }
    let step = std::f64::consts::PI / num as f64;
    let (mut lo, mut hi) = (best.1 - step, best.1 + step);
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (length(x1), length(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = length(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = length(x2);
        }
    }
    let phi = 0.5 * (lo + hi);
    Ok((phi, length(phi)))
}

/// All stationary lines through `a` for a 2D cone, found by bisecting sign
/// changes of the 1D stationarity residual along the admissible family of
/// normals.
pub fn residual_sign_sweep_2d(
    cone: &Hyperangle,
    a: &Point,
    num_angles: usize,
) -> Result<Vec<Hyperplane>> {
    if cone.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: cone.dim(),
        });
    }
    if a.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: a.len(),
        });
    }
    if a.norm() == 0.0 {
        return Err(Error::VertexPoint);
    }
    let f = cone.dual_generators();
    let alpha = cone.coordinates(a)?;
    let scale = alpha.amax();
    // signed residual component along the line direction, as a function of
    // the dual mixing weight psi in (0, 1)
    let sigma = |psi: f64| -> Option<f64> {
        let den = psi * alpha[0] + (1.0 - psi) * alpha[1];
        if den <= 1e-12 * scale {
            return None;
        }
        let b = (f.column(0) * psi + f.column(1) * (1.0 - psi)) / den;
        let mut verts = Vec::with_capacity(2);
        for i in 0..2 {
            let d = cone.generators().column(i).dot(&b);
            if d <= tol::EPS_ADMISSIBLE {
                return None;
            }
            verts.push(cone.generators().column(i).into_owned() / d);
        }
        let foot = &b / b.norm_squared();
        let centroid = (&verts[0] + &verts[1]) / 2.0;
        let r = (&foot - a) - (&centroid - a) * 2.0;
        let u = DVector::from_column_slice(&[-b[1], b[0]]).normalize();
        Some(r.dot(&u))
    };
    let num = num_angles.max(16);
    let mut roots: Vec<f64> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..num {
        let psi = (i as f64 + 0.5) / num as f64;
        let s = match sigma(psi) {
            Some(s) => s,
            None => {
                prev = None;
                continue;
            }
        };
        if s == 0.0 {
            roots.push(psi);
        } else if let Some((p_psi, p_s)) = prev {
            if p_s * s < 0.0 {
                let (mut lo, mut hi) = (p_psi, psi);
                let mut s_lo = p_s;
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    match sigma(mid) {
                        Some(sm) if sm * s_lo < 0.0 => hi = mid,
                        Some(sm) => {
                            lo = mid;
                            s_lo = sm;
                        }
                        None => break,
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
        }
        prev = Some((psi, s));
    }
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
    roots
        .into_iter()
        .map(|psi| {
            let den = psi * alpha[0] + (1.0 - psi) * alpha[1];
            Hyperplane::new((f.column(0) * psi + f.column(1) * (1.0 - psi)) / den)
        })
        .collect()
}
