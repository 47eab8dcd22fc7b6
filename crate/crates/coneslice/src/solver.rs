//! Numeric solver for arbitrary hyperangles: minimization, stationary-plane
//! enumeration and classification, 2D region classification, and the
//! boundary infimum.
//!
//! Hyperplanes through A are parametrized on a chart: one admissible normal
//! `base_b` with (base_b, a) = 1 plus an orthonormal basis of `{v : (v,a) =
//! 0}`, so `b(t) = base_b + sum t_j v_j` ranges over all normals of planes
//! through A. The stationarity residual `AH - n*AG` projected on the chart
//! basis is an (n-1)-dimensional root problem solved by damped Newton with
//! finite-difference Jacobians.

use nalgebra::{DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Hyperangle, Hyperplane, Point};
use crate::tol;

const NEWTON_MAX_ITER: usize = 80;
const ATTAINMENT_STARTS: usize = 64;
const ATTAINMENT_SEED: u64 = 0xC0FFEE;

// ---------------------------------------------------------------------------
// Chart
// ---------------------------------------------------------------------------

/// Coordinates on the affine slice `{b : (b, a) = 1}` of normal vectors.
#[derive(Debug, Clone)]
pub struct Chart {
    base_b: Point,
    /// n x (n-1), orthonormal columns spanning the orthogonal complement
    /// of a.
    tangent: DMatrix<f64>,
    a: Point,
}

impl Chart {
    /// Chart centered at a deterministic admissible normal through `a`.
    /// Fails with [`Error::NoAdmissiblePlane`] when no admissible hyperplane
    /// passes through the point (a in -K or a = O).
    pub fn new(cone: &Hyperangle, a: &Point) -> Result<Self> {
        let alpha = cone.coordinates(a)?;
        let pos_sq: f64 = alpha.iter().filter(|&&v| v > 0.0).map(|v| v * v).sum();
        if pos_sq <= 0.0 {
            return Err(Error::NoAdmissiblePlane);
        }
        let max_pos = alpha.iter().cloned().filter(|&v| v > 0.0).fold(0.0, f64::max);
        let sum: f64 = alpha.iter().sum();
        // weights w = alpha_+ + delta stay strictly positive and satisfy
        // (F w, a) = sum w_i alpha_i >= pos_sq / 2 > 0
        let delta = if sum >= 0.0 {
            0.1 * max_pos
        } else {
            (0.1 * max_pos).min(pos_sq / (2.0 * sum.abs()))
        };
        let w = DVector::from_iterator(alpha.len(), alpha.iter().map(|&v| v.max(0.0) + delta));
        let b_raw = cone.dual_generators() * w;
        let denom = b_raw.dot(a);
        debug_assert!(denom > 0.0);
        Ok(Self {
            base_b: b_raw / denom,
            tangent: householder_complement(a),
            a: a.clone(),
        })
    }

    /// Chart centered at a given admissible normal with (base, a) = 1.
    pub fn from_base(cone: &Hyperangle, a: &Point, base: Point) -> Result<Self> {
        let gap = (base.dot(a) - 1.0).abs();
        if gap > tol::ON_PLANE_REL * (1.0 + base.norm() * a.norm()) {
            return Err(Error::PointNotOnPlane { gap });
        }
        if !cone.in_dual_interior(&base) {
            return Err(Error::NotAdmissible {
                floor: tol::EPS_ADMISSIBLE,
            });
        }
        Ok(Self {
            base_b: base,
            tangent: householder_complement(a),
            a: a.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.tangent.ncols()
    }

    pub fn base(&self) -> &Point {
        &self.base_b
    }

    /// The point every charted plane passes through.
    pub fn anchor(&self) -> &Point {
        &self.a
    }

    pub fn tangent_basis(&self) -> &DMatrix<f64> {
        &self.tangent
    }

    /// b(t) = base_b + sum t_j v_j.
    pub fn point(&self, t: &[f64]) -> Point {
        let tv = DVector::from_column_slice(t);
        &self.base_b + &self.tangent * tv
    }

    /// Chart parameters of a normal with (b, a) = 1.
    pub fn params_for(&self, b: &Point) -> Vec<f64> {
        let d = b - &self.base_b;
        (0..self.dim()).map(|j| self.tangent.column(j).dot(&d)).collect()
    }
}

/// Angle between two nonzero vectors, computed from the chord of the unit
/// vectors; accurate down to machine precision for small angles where
/// acos of the dot product is not.
pub fn angular_distance(u: &Point, v: &Point) -> f64 {
    let chord = (u / u.norm() - v / v.norm()).norm();
    2.0 * (chord / 2.0).min(1.0).asin()
}

/// Orthonormal basis of the orthogonal complement of `a` via a Householder
/// reflection mapping a onto the first coordinate axis.
fn householder_complement(a: &Point) -> DMatrix<f64> {
    let n = a.len();
    let mut u = a.clone();
    let sign = if a[0] >= 0.0 { 1.0 } else { -1.0 };
    u[0] += sign * a.norm();
    let uu = u.norm_squared();
    DMatrix::from_fn(n, n - 1, |i, j| {
        let col = j + 1;
        let id = if i == col { 1.0 } else { 0.0 };
        id - 2.0 * u[i] * u[col] / uu
    })
}

// ---------------------------------------------------------------------------
// Volume objective
// ---------------------------------------------------------------------------

/// Closed-form cross-section volume for a normal `b`:
/// `|det E| prod x_i / ((n-1)! d)` with `x_i = 1/(b, e_i)` and `d = 1/|b|`.
/// None when the plane is not admissible.
fn closed_volume(cone: &Hyperangle, b: &Point) -> Option<f64> {
    let n = cone.dim();
    let mut dots = Vec::with_capacity(n);
    for i in 0..n {
        let d = cone.generators().column(i).dot(b);
        if d <= tol::EPS_ADMISSIBLE {
            return None;
        }
        dots.push(d);
    }
    let norm = b.norm();
    if n > tol::LOG_DOMAIN_DIM {
        let ln = cone.abs_det().ln() - dots.iter().map(|d| d.ln()).sum::<f64>() + norm.ln()
            - (1..n).map(|i| (i as f64).ln()).sum::<f64>();
        Some(ln.exp())
    } else {
        let prod: f64 = dots.iter().map(|d| 1.0 / d).product();
        Some(cone.abs_det() * prod * norm / (1..n).map(|i| i as f64).product::<f64>())
    }
}

/// Cross-section volume of an admissible plane, by the closed form.
pub fn section_volume(cone: &Hyperangle, plane: &Hyperplane) -> Result<f64> {
    closed_volume(cone, plane.normal()).ok_or(Error::NotAdmissible {
        floor: tol::EPS_ADMISSIBLE,
    })
}

/// The minimization objective in chart coordinates. Errors on inadmissible
/// chart points; optimizer internals use an infinity sentinel instead.
pub fn objective_volume(cone: &Hyperangle, chart: &Chart, t: &[f64]) -> Result<f64> {
    closed_volume(cone, &chart.point(t)).ok_or(Error::NotAdmissible {
        floor: tol::EPS_ADMISSIBLE,
    })
}

fn objective_or_inf(cone: &Hyperangle, chart: &Chart, t: &[f64]) -> f64 {
    closed_volume(cone, &chart.point(t)).unwrap_or(f64::INFINITY)
}

// ---------------------------------------------------------------------------
// Residual evaluation and Newton
// ---------------------------------------------------------------------------

/// Minimal per-normal data used by the Newton iteration.
#[derive(Debug, Clone)]
struct LightEval {
    b: Point,
    residual: Point,
    r_norm: f64,
    /// Section diameter, the scale the residual is compared against.
    scale: f64,
    volume: f64,
}

fn light_eval(cone: &Hyperangle, a: &Point, b: &Point) -> Option<LightEval> {
    let n = cone.dim();
    let mut verts: Vec<Point> = Vec::with_capacity(n);
    for i in 0..n {
        let d = cone.generators().column(i).dot(b);
        if d <= tol::EPS_ADMISSIBLE {
            return None;
        }
        verts.push(cone.generators().column(i).into_owned() / d);
    }
    let mut centroid = DVector::zeros(n);
    for v in &verts {
        centroid += v;
    }
    centroid /= n as f64;
    let foot = b / b.norm_squared();
    let residual = (&foot - a) - (&centroid - a) * n as f64;
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            scale = scale.max((&verts[i] - &verts[j]).norm());
        }
    }
    let volume = closed_volume(cone, b)?;
    Some(LightEval {
        b: b.clone(),
        r_norm: residual.norm(),
        residual,
        scale,
        volume,
    })
}

/// Damped Newton on the chart-projected residual map, starting at `t0`.
/// Returns the converged evaluation or None.
fn newton_residual(
    cone: &Hyperangle,
    a: &Point,
    chart: &Chart,
    t0: &[f64],
    tol_stat: f64,
) -> Option<LightEval> {
    let dim = chart.dim();
    let mut t = t0.to_vec();
    let mut ev = light_eval(cone, a, &chart.point(&t))?;
    let project = |e: &LightEval| -> DVector<f64> {
        DVector::from_iterator(
            dim,
            (0..dim).map(|j| chart.tangent_basis().column(j).dot(&e.residual)),
        )
    };
    // after crossing the tolerance, keep polishing with a few more Newton
    // steps while they still help; leaves clean roots near machine precision
    let mut converged = false;
    let mut polish_left = 4usize;
    for _ in 0..NEWTON_MAX_ITER {
        if ev.r_norm <= tol_stat * ev.scale {
            converged = true;
            if polish_left == 0 || ev.r_norm <= 1e3 * f64::EPSILON * ev.scale {
                return Some(ev);
            }
            polish_left -= 1;
        }
        let r = project(&ev);
        // central-difference Jacobian; h per the cube root of machine epsilon
        let t_inf = t.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        let mut h = f64::EPSILON.cbrt() * (1.0 + t_inf);
        let mut jac = None;
        'fd: for _ in 0..4 {
            let mut m = DMatrix::zeros(dim, dim);
            for j in 0..dim {
                let mut tp = t.clone();
                let mut tm = t.clone();
                tp[j] += h;
                tm[j] -= h;
                let (ep, em) = match (
                    light_eval(cone, a, &chart.point(&tp)),
                    light_eval(cone, a, &chart.point(&tm)),
                ) {
                    (Some(p), Some(q)) => (p, q),
                    _ => {
                        h *= 0.25;
                        continue 'fd;
                    }
                };
                let col = (project(&ep) - project(&em)) / (2.0 * h);
                m.set_column(j, &col);
            }
            jac = Some(m);
            break;
        }
        // backtracking on the full residual norm
        let next = jac
            .and_then(|m| m.lu().solve(&(-&r)))
            .and_then(|delta| {
                let mut step = 1.0;
                while step >= 1e-10 {
                    let tn: Vec<f64> = t
                        .iter()
                        .zip(delta.iter())
                        .map(|(&ti, &di)| ti + step * di)
                        .collect();
                    if let Some(en) = light_eval(cone, a, &chart.point(&tn)) {
                        if en.r_norm < (1.0 - 1e-4 * step) * ev.r_norm {
                            return Some((tn, en));
                        }
                    }
                    step *= 0.5;
                }
                None
            });
        match next {
            Some((tn, en)) => {
                t = tn;
                ev = en;
            }
            None => break, // stalled: fine if already converged
        }
    }
    converged.then_some(ev)
}

// ---------------------------------------------------------------------------
// Stationary points
// ---------------------------------------------------------------------------

/// Second-order type of a stationary plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationaryKind {
    LocalMin,
    LocalMax,
    Saddle,
    Degenerate,
}

impl StationaryKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StationaryKind::LocalMin => "local_min",
            StationaryKind::LocalMax => "local_max",
            StationaryKind::Saddle => "saddle",
            StationaryKind::Degenerate => "degenerate",
        }
    }
}

/// A stationary hyperplane with its classification.
#[derive(Debug, Clone)]
pub struct StationaryPoint {
    pub plane: Hyperplane,
    pub volume: f64,
    pub residual_norm: f64,
    pub kind: StationaryKind,
    pub hessian_eigenvalues: Vec<f64>,
}

/// Classify a stationary plane by the eigenvalues of the central
/// finite-difference Hessian of the volume objective in chart coordinates.
pub fn classify(
    cone: &Hyperangle,
    a: &Point,
    plane: &Hyperplane,
    tol_stat: f64,
) -> Result<(StationaryKind, Vec<f64>)> {
    let ev = light_eval(cone, a, plane.normal()).ok_or(Error::NotAdmissible {
        floor: tol::EPS_ADMISSIBLE,
    })?;
    if ev.r_norm > 10.0 * tol_stat * ev.scale {
        return Err(Error::NotStationary {
            residual: ev.r_norm,
        });
    }
    let chart = Chart::from_base(cone, a, plane.normal().clone())?;
    let dim = chart.dim();
    let f = |t: &[f64]| objective_or_inf(cone, &chart, t);
    let h = f64::EPSILON.powf(0.25) * (1.0 + chart.base().norm());
    let mut hess = DMatrix::zeros(dim, dim);
    let at = |i: usize, s: f64, j: usize, r: f64| {
        let mut t = vec![0.0; dim];
        t[i] += s;
        t[j] += r;
        f(&t)
    };
    let f0 = f(&vec![0.0; dim]);
    for i in 0..dim {
        for j in i..dim {
            let v = if i == j {
                (at(i, h, i, 0.0) - 2.0 * f0 + at(i, -h, i, 0.0)) / (h * h)
            } else {
                (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) + at(i, -h, j, -h))
                    / (4.0 * h * h)
            };
            hess[(i, j)] = v;
            hess[(j, i)] = v;
        }
    }
    if hess.iter().any(|v| !v.is_finite()) {
        return Err(Error::Degenerate(
            "Hessian sample left the admissible region".into(),
        ));
    }
    let mut eigen: Vec<f64> = hess.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigen.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let max_abs = eigen.iter().map(|v| v.abs()).fold(0.0f64, f64::max);
    let cut = tol::EPS_EIG_REL * max_abs;
    let kind = if max_abs == 0.0 || eigen.iter().any(|v| v.abs() <= cut) {
        StationaryKind::Degenerate
    } else if eigen.iter().all(|&v| v > 0.0) {
        StationaryKind::LocalMin
    } else if eigen.iter().all(|&v| v < 0.0) {
        StationaryKind::LocalMax
    } else {
        StationaryKind::Saddle
    };
    Ok((kind, eigen))
}

fn make_point(
    cone: &Hyperangle,
    a: &Point,
    ev: &LightEval,
    tol_stat: f64,
) -> StationaryPoint {
    let plane = Hyperplane::new(ev.b.clone()).expect("converged normal is nonzero");
    let (kind, eigen) = classify(cone, a, &plane, tol_stat)
        .unwrap_or((StationaryKind::Degenerate, Vec::new()));
    StationaryPoint {
        plane,
        volume: ev.volume,
        residual_norm: ev.r_norm,
        kind,
        hessian_eigenvalues: eigen,
    }
}

// ---------------------------------------------------------------------------
// Minimize
// ---------------------------------------------------------------------------

/// Compact Nelder-Mead; returns the best vertex when progress stalls
/// (relative improvement below 1e-12 for 2*dim iterations) or the iteration
/// budget runs out.
fn nelder_mead<F: Fn(&[f64]) -> f64>(f: &F, t0: &[f64], init_step: f64) -> Vec<f64> {
    let dim = t0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((t0.to_vec(), f(t0)));
    for j in 0..dim {
        let mut h = init_step;
        let mut x = t0.to_vec();
        for _ in 0..50 {
            x[j] = t0[j] + h;
            if f(&x).is_finite() {
                break;
            }
            h *= 0.5;
        }
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let max_iter = 400 * dim.max(1);
    let mut stall = 0usize;
    let mut best_seen = simplex
        .iter()
        .map(|p| p.1)
        .fold(f64::INFINITY, f64::min);
    for _ in 0..max_iter {
        simplex.sort_by(|p, q| p.1.partial_cmp(&q.1).unwrap_or(std::cmp::Ordering::Equal));
        let improvement = best_seen - simplex[0].1;
        if improvement > 1e-12 * simplex[0].1.abs().max(1e-300) {
            best_seen = simplex[0].1;
            stall = 0;
        } else {
            stall += 1;
            if stall >= 2 * dim.max(1) {
                break;
            }
        }
        // centroid of all but the worst
        let mut c = vec![0.0; dim];
        for p in &simplex[..dim] {
            for (ci, xi) in c.iter_mut().zip(&p.0) {
                *ci += xi / dim as f64;
            }
        }
        let worst = simplex[dim].clone();
        let combine = |s: f64| -> Vec<f64> {
            c.iter()
                .zip(&worst.0)
                .map(|(&ci, &wi)| ci + s * (ci - wi))
                .collect()
        };
        let refl = combine(1.0);
        let f_refl = f(&refl);
        if f_refl < simplex[0].1 {
            let exp = combine(2.0);
            let f_exp = f(&exp);
            simplex[dim] = if f_exp < f_refl { (exp, f_exp) } else { (refl, f_refl) };
        } else if f_refl < simplex[dim - 1].1 {
            simplex[dim] = (refl, f_refl);
        } else {
            let contr = if f_refl < worst.1 { combine(0.5) } else { combine(-0.5) };
            let f_contr = f(&contr);
            if f_contr < worst.1.min(f_refl) {
                simplex[dim] = (contr, f_contr);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0.clone();
                for p in simplex.iter_mut().skip(1) {
                    for (xi, bi) in p.0.iter_mut().zip(&best) {
                        *xi = bi + 0.5 * (*xi - bi);
                    }
                    p.1 = f(&p.0);
                }
            }
        }
    }
    simplex.sort_by(|p, q| p.1.partial_cmp(&q.1).unwrap_or(std::cmp::Ordering::Equal));
    simplex[0].0.clone()
}

/// Local minimizer of the cross-section volume over planes through the
/// interior point `a`: simplex descent followed by Newton on the
/// stationarity residual.
pub fn minimize(
    cone: &Hyperangle,
    a: &Point,
    start: Option<&[f64]>,
    tol_stat: f64,
) -> Result<StationaryPoint> {
    if !cone.interior_contains(a)? {
        return Err(Error::NotInterior);
    }
    let chart = Chart::new(cone, a)?;
    let t0 = match start {
        Some(t) => {
            if t.len() != chart.dim() {
                return Err(Error::DimensionMismatch {
                    expected: chart.dim(),
                    got: t.len(),
                });
            }
            t.to_vec()
        }
        None => vec![0.0; chart.dim()],
    };
    let f = |t: &[f64]| objective_or_inf(cone, &chart, t);
    let incumbent = nelder_mead(&f, &t0, 0.1 * (1.0 + chart.base().norm()));
    match newton_residual(cone, a, &chart, &incumbent, tol_stat) {
        Some(ev) => Ok(make_point(cone, a, &ev, tol_stat)),
        None => {
            let best = light_eval(cone, a, &chart.point(&incumbent));
            let (residual, volume, normal) = best
                .map(|e| (e.r_norm, e.volume, e.b.iter().copied().collect()))
                .unwrap_or((f64::INFINITY, f64::INFINITY, Vec::new()));
            Err(Error::NoConvergence {
                iterations: NEWTON_MAX_ITER,
                best_residual: residual,
                best_volume: volume,
                best_normal: normal,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Default multi-start budget: max(5^(n-1), 50), capped at 2000.
pub fn default_num_starts(n: usize) -> usize {
    let grid = 5usize.saturating_pow(n.saturating_sub(1) as u32);
    grid.clamp(50, 2000)
}

/// All distinct compositions of `total` into `parts` non-negative integers,
/// lexicographic.
fn compositions(parts: usize, total: usize, out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(parts - 1, total - k, out, prefix);
        prefix.pop();
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    r
}

/// Jittered regular grid on the weight simplex; `num` rows, each strictly
/// positive and summing to one.
fn simplex_weights(n: usize, num: usize, seed: u64) -> Vec<DVector<f64>> {
    let mut m = 1usize;
    while binomial(m + n - 1, n - 1) < num as u128 && m < 4096 {
        m += 1;
    }
    let mut comps = Vec::new();
    compositions(n, m, &mut comps, &mut Vec::new());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jitter = 0.25 / m as f64;
    let mut all: Vec<DVector<f64>> = comps
        .iter()
        .map(|c| {
            let mut w: Vec<f64> = c
                .iter()
                .map(|&k| (k as f64 / m as f64 + rng.random_range(-jitter..jitter)).max(1e-4))
                .collect();
            let s: f64 = w.iter().sum();
            for v in &mut w {
                *v /= s;
            }
            DVector::from_column_slice(&w)
        })
        .collect();
    if all.len() > num {
        let stride = all.len() as f64 / num as f64;
        all = (0..num)
            .map(|i| all[(i as f64 * stride) as usize].clone())
            .collect();
    }
    all
}

/// Multi-start Newton enumeration of the stationary hyperplanes through `a`,
/// deduplicated by the angular distance of unit normals and classified.
/// Deterministic for a fixed seed; an empty result means none were found.
pub fn enumerate_stationary(
    cone: &Hyperangle,
    a: &Point,
    num_starts: usize,
    seed: u64,
    tol_stat: f64,
) -> Vec<StationaryPoint> {
    let chart = match Chart::new(cone, a) {
        Ok(c) => c,
        Err(_) => return Vec::new(),
    };
    let dual = cone.dual_generators();
    let weights = simplex_weights(cone.dim(), num_starts.max(1), seed);
    let runs: Vec<Option<LightEval>> = weights
        .par_iter()
        .map(|w| {
            let b_raw = &dual * w;
            let denom = b_raw.dot(a);
            if denom <= 1e-14 {
                return None;
            }
            let b = b_raw / denom;
            let t = chart.params_for(&b);
            newton_residual(cone, a, &chart, &t, tol_stat)
        })
        .collect();
    let mut distinct: Vec<LightEval> = Vec::new();
    for ev in runs.into_iter().flatten() {
        let dup = distinct
            .iter()
            .any(|d| angular_distance(&d.b, &ev.b) < tol::TOL_DEDUP);
        if !dup {
            distinct.push(ev);
        }
    }
    let mut points: Vec<StationaryPoint> = distinct
        .iter()
        .map(|ev| make_point(cone, a, ev, tol_stat))
        .collect();
    points.sort_by(|p, q| {
        p.volume
            .partial_cmp(&q.volume)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| {
                for (x, y) in p.plane.normal().iter().zip(q.plane.normal().iter()) {
                    match x.partial_cmp(y) {
                        Some(std::cmp::Ordering::Equal) | None => continue,
                        Some(o) => return o,
                    }
                }
                std::cmp::Ordering::Equal
            })
    });
    points
}

// ---------------------------------------------------------------------------
// 2D regions
// ---------------------------------------------------------------------------

/// Where a 2D point sits relative to the cone K and the stationary-line
/// region T.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionLabel {
    /// A in K \ {O} (stationary line exists and is the global minimum).
    InteriorK,
    /// A strictly between K and the boundary of T: two stationary lines.
    InTminusK,
    /// A on the boundary of T (within angular tolerance): one saddle line.
    OnBoundaryT,
    /// No stationary line through A.
    Outside,
    /// A = O.
    AtVertex,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::InteriorK => "InteriorK",
            RegionLabel::InTminusK => "InTminusK",
            RegionLabel::OnBoundaryT => "OnBoundaryT",
            RegionLabel::Outside => "Outside",
            RegionLabel::AtVertex => "AtVertex",
        }
    }
}

/// 2D region classification for a point in the plane of an angle of
/// aperture `alpha` bisected by the positive x-axis.
#[derive(Debug, Clone)]
pub struct Region2D {
    pub label: RegionLabel,
    /// Half-aperture of T.
    pub theta: f64,
    /// Stationary-line count predicted for the region.
    pub expected_count: usize,
    /// Signed angular distance from A to the boundary of T (positive
    /// outside). A point is never exactly on the boundary at finite
    /// precision; this gap qualifies the label.
    pub t_boundary_gap: f64,
}

/// Half-aperture of the region T of points with at least one stationary
/// line. For alpha < pi/2,
/// `theta = arctan(((1 + sin^2(alpha/2)) / (1 + cos^2(alpha/2)))^(3/2))`;
/// for alpha >= pi/2 the region is K itself.
pub fn philon_theta(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        return Err(Error::InvalidInput(format!(
            "aperture must lie in (0, pi), got {alpha}"
        )));
    }
    if alpha < std::f64::consts::FRAC_PI_2 {
        let h = alpha / 2.0;
        let ratio = (1.0 + h.sin().powi(2)) / (1.0 + h.cos().powi(2));
        Ok(ratio.powf(1.5).atan())
    } else {
        Ok(alpha / 2.0)
    }
}

/// Classify a 2D point by region and predicted stationary-line count.
pub fn philon2d_region(alpha: f64, a: &Point) -> Result<Region2D> {
    if a.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: a.len(),
        });
    }
    let theta = philon_theta(alpha)?;
    if a.norm() == 0.0 {
        return Err(Error::VertexPoint);
    }
    let phi = a[1].atan2(a[0]).abs();
    let half = alpha / 2.0;
    let eps = tol::EPS_T_BOUNDARY;
    let (label, expected_count) = if alpha >= std::f64::consts::FRAC_PI_2 {
        // no stationary line outside the open cone
        if phi < half - eps {
            (RegionLabel::InteriorK, 1)
        } else {
            (RegionLabel::Outside, 0)
        }
    } else if phi <= half + eps {
        (RegionLabel::InteriorK, 1)
    } else if phi < theta - eps {
        (RegionLabel::InTminusK, 2)
    } else if phi <= theta + eps {
        (RegionLabel::OnBoundaryT, 1)
    } else {
        (RegionLabel::Outside, 0)
    };
    Ok(Region2D {
        label,
        theta,
        expected_count,
        t_boundary_gap: phi - theta,
    })
}

// ---------------------------------------------------------------------------
// Boundary infimum
// ---------------------------------------------------------------------------

/// Infimum data for cross-sections through a boundary point of the cone.
#[derive(Debug, Clone)]
pub struct BoundaryReport {
    /// Infimum of cross-section volumes over admissible planes through A.
    pub m_a: f64,
    /// Dimension k of the minimal face containing A; the infimum is
    /// positive exactly when k = n-1.
    pub face_dimension: usize,
    /// Whether an enumerated stationary plane attains the infimum within
    /// relative 1e-6.
    pub attained_numerically: bool,
    /// Minimizing intercepts along the facet generators (facet case only).
    pub facet_solution: Option<Vec<f64>>,
    /// Indices of the generators spanning the facet.
    pub facet_generators: Option<Vec<usize>>,
    /// |AO - n*AG| for the degenerate stationarity identity with the foot
    /// at the origin, G the centroid of the minimal facet segment.
    pub centroid_identity_gap: Option<f64>,
}

/// Infimum of cross-section volumes for a boundary point `a` of the cone.
///
/// With k strictly positive generator coordinates: the infimum is 0 for
/// k < n-1; for k = n-1 it equals the minimal (n-1)-volume of the facet
/// cone's segment cut by an (n-2)-plane through `a`.
pub fn boundary_infimum(cone: &Hyperangle, a: &Point) -> Result<BoundaryReport> {
    let alpha = cone.coordinates(a)?;
    let n = cone.dim();
    let scale = alpha.amax();
    if scale == 0.0 {
        return Err(Error::VertexPoint);
    }
    let cut = tol::EPS_PRED * scale;
    if alpha.iter().any(|&v| v < -cut) {
        return Err(Error::NotBoundary);
    }
    let positive: Vec<usize> = (0..n).filter(|&i| alpha[i] > cut).collect();
    let k = positive.len();
    if k == 0 {
        return Err(Error::VertexPoint);
    }
    if k == n {
        return Err(Error::NotBoundary);
    }
    if k < n - 1 {
        return Ok(BoundaryReport {
            m_a: 0.0,
            face_dimension: k,
            attained_numerically: false,
            facet_solution: None,
            facet_generators: None,
            centroid_identity_gap: None,
        });
    }
    // facet case: minimal segment of the (n-1)-dimensional facet cone
    let sub = DMatrix::from_fn(n, k, |i, j| cone.generators()[(i, positive[j])]);
    let r = sub.clone().qr().unpack_r();
    let sub_det: f64 = (0..k).map(|i| r[(i, i)].abs()).product();
    let kf = k as f64;
    let alpha_t: Vec<f64> = positive.iter().map(|&i| alpha[i]).collect();
    let intercepts: Vec<f64> = alpha_t.iter().map(|&v| kf * v).collect();
    let m_a = if k > tol::LOG_DOMAIN_DIM {
        (sub_det.ln() + intercepts.iter().map(|&x| x.ln()).sum::<f64>()
            - (1..=k).map(|i| (i as f64).ln()).sum::<f64>())
        .exp()
    } else {
        sub_det * intercepts.iter().product::<f64>() / (1..=k).map(|i| i as f64).product::<f64>()
    };
    // degenerate stationarity identity: AO = n*AG with G the centroid of
    // the facet segment (origin plus intercept points)
    let mut g = DVector::zeros(n);
    for (j, &i) in positive.iter().enumerate() {
        g += cone.generators().column(i) * intercepts[j];
    }
    g /= n as f64;
    let gap = ((-a) - (&g - a) * n as f64).norm();
    // attained only by a genuine (non-degenerate) stationary plane; the
    // facet-approach family converges to the infimum in volume but its
    // members classify as degenerate
    let attained = enumerate_stationary(cone, a, ATTAINMENT_STARTS, ATTAINMENT_SEED, tol::TOL_STAT)
        .iter()
        .any(|p| p.kind != StationaryKind::Degenerate && (p.volume - m_a).abs() <= 1e-6 * m_a);
    Ok(BoundaryReport {
        m_a,
        face_dimension: k,
        attained_numerically: attained,
        facet_solution: Some(intercepts),
        facet_generators: Some(positive),
        centroid_identity_gap: Some(gap),
    })
}
