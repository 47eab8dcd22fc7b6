//! Geometric primitives: simplicial cones (hyperangles), hyperplanes,
//! simplex measures, special points, and dual-cone predicates.
//!
//! Conventions: a hyperplane is `{x : (b, x) = 1}` represented by its normal
//! `b`, so the origin is never on the plane. A hyperangle is spanned by `n`
//! linearly independent generators, stored normalized to unit length.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tol;

/// A point (or vector) in R^n.
pub type Point = DVector<f64>;

/// k! as f64 (exact for k <= 20).
fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// ln(k!)
fn ln_factorial(k: usize) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

fn check_same_dim(points: &[Point]) -> Result<usize> {
    let n = points
        .first()
        .ok_or_else(|| Error::InvalidInput("empty vertex list".into()))?
        .len();
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        if !p.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
    }
    Ok(n)
}

// ---------------------------------------------------------------------------
// Hyperplane
// ---------------------------------------------------------------------------

/// Affine hyperplane `{x : (b, x) = 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    normal: Point,
}

impl Hyperplane {
    pub fn new(normal: Point) -> Result<Self> {
        if !normal.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("non-finite normal".into()));
        }
        if normal.norm() == 0.0 {
            return Err(Error::InvalidInput("zero normal vector".into()));
        }
        Ok(Self { normal })
    }

    /// The plane through `n` linearly independent points in R^n.
    pub fn through_points(points: &[Point]) -> Result<Self> {
        let n = check_same_dim(points)?;
        if points.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: points.len(),
            });
        }
        // rows are the points: P b = 1
        let p = DMatrix::from_fn(n, n, |i, j| points[i][j]);
        let rhs = DVector::from_element(n, 1.0);
        let b = p
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Degenerate("points do not span a hyperplane".into()))?;
        Self::new(b)
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Orthogonal projection of the origin on the plane: `b / |b|^2`.
    pub fn foot_of_origin(&self) -> Point {
        &self.normal / self.normal.norm_squared()
    }

    /// Distance from the origin, `1 / |b|`.
    pub fn distance_from_origin(&self) -> f64 {
        1.0 / self.normal.norm()
    }

    /// Signed residual of the plane equation at `x`: `(b, x) - 1`.
    pub fn eval(&self, x: &Point) -> f64 {
        self.normal.dot(x) - 1.0
    }

    /// Whether `x` lies on the plane within a relative tolerance.
    pub fn contains(&self, x: &Point, rel_tol: f64) -> bool {
        self.eval(x).abs() <= rel_tol * (1.0 + self.normal.norm() * x.norm())
    }
}

// ---------------------------------------------------------------------------
// Hyperangle
// ---------------------------------------------------------------------------

/// A pointed full-dimensional simplicial cone: the non-negative hull of `n`
/// linearly independent generators in R^n.
#[derive(Debug, Clone)]
pub struct Hyperangle {
    /// Generator matrix E, columns normalized to unit length.
    generators: DMatrix<f64>,
    /// Cached E^{-1}.
    inverse: DMatrix<f64>,
    /// Cached |det E|.
    abs_det: f64,
}

impl Hyperangle {
    pub fn new(generators: Vec<Point>) -> Result<Self> {
        let n = check_same_dim(&generators)?;
        if n < 2 {
            return Err(Error::InvalidInput("dimension must be at least 2".into()));
        }
        if generators.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: generators.len(),
            });
        }
        let mut e = DMatrix::zeros(n, n);
        for (j, g) in generators.iter().enumerate() {
            let norm = g.norm();
            if norm == 0.0 {
                return Err(Error::Degenerate(format!("generator {j} is zero")));
            }
            for i in 0..n {
                e[(i, j)] = g[i] / norm;
            }
        }
        let abs_det = e.clone().lu().determinant().abs();
        if abs_det <= tol::EPS_RANK {
            return Err(Error::Degenerate(format!(
                "generators are linearly dependent (|det E| = {abs_det:.3e})"
            )));
        }
        let inverse = e
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Degenerate("generator matrix is singular".into()))?;
        Ok(Self {
            generators: e,
            inverse,
            abs_det,
        })
    }

    /// The non-negative orthant of R^n.
    pub fn orthant(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("dimension must be at least 2".into()));
        }
        Ok(Self {
            generators: DMatrix::identity(n, n),
            inverse: DMatrix::identity(n, n),
            abs_det: 1.0,
        })
    }

    /// Planar angle of aperture `alpha` (radians), bisected by the positive
    /// x-axis.
    pub fn angle2d(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
            return Err(Error::InvalidInput(format!(
                "aperture must lie in (0, pi), got {alpha}"
            )));
        }
        let h = alpha / 2.0;
        Self::new(vec![
            DVector::from_column_slice(&[h.cos(), -h.sin()]),
            DVector::from_column_slice(&[h.cos(), h.sin()]),
        ])
    }

    /// Trihedral cone in R^3 realizing the face angles `alpha <= beta <=
    /// gamma` between its extreme rays.
    pub fn from_face_angles(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        check_face_angles(alpha, beta, gamma)?;
        // angle(e1,e2) = gamma, angle(e1,e3) = beta, angle(e2,e3) = alpha
        let e1 = DVector::from_column_slice(&[1.0, 0.0, 0.0]);
        let e2 = DVector::from_column_slice(&[gamma.cos(), gamma.sin(), 0.0]);
        let x = beta.cos();
        let y = (alpha.cos() - beta.cos() * gamma.cos()) / gamma.sin();
        let z2 = 1.0 - x * x - y * y;
        if z2 <= 0.0 {
            return Err(Error::InfeasibleAngles(format!(
                "angles ({alpha}, {beta}, {gamma}) are not realizable"
            )));
        }
        let e3 = DVector::from_column_slice(&[x, y, z2.sqrt()]);
        Self::new(vec![e1, e2, e3])
    }

    pub fn dim(&self) -> usize {
        self.generators.nrows()
    }

    /// Unit generator `e_i`.
    pub fn generator(&self, i: usize) -> Point {
        self.generators.column(i).into_owned()
    }

    /// Generator matrix E (unit columns).
    pub fn generators(&self) -> &DMatrix<f64> {
        &self.generators
    }

    /// |det E| for the normalized generator matrix.
    pub fn abs_det(&self) -> f64 {
        self.abs_det
    }

    /// Coordinates of `x` in the generator basis: E^{-1} x.
    pub fn coordinates(&self, x: &Point) -> Result<Point> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(&self.inverse * x)
    }

    /// Dual generators (columns of E^{-T}); they span the closure of K+.
    pub fn dual_generators(&self) -> DMatrix<f64> {
        self.inverse.transpose()
    }

    /// The dual cone K* as a hyperangle (its generators re-normalized).
    pub fn dual(&self) -> Result<Hyperangle> {
        let f = self.dual_generators();
        Self::new((0..self.dim()).map(|j| f.column(j).into_owned()).collect())
    }

    /// x in K (all generator-basis coordinates non-negative, with slack).
    pub fn contains(&self, x: &Point) -> Result<bool> {
        let c = self.coordinates(x)?;
        let scale = c.amax().max(1e-300);
        Ok(c.iter().all(|&v| v >= -tol::EPS_PRED * scale))
    }

    /// x in the interior of K (all coordinates strictly positive).
    pub fn interior_contains(&self, x: &Point) -> Result<bool> {
        let c = self.coordinates(x)?;
        let scale = c.amax().max(1e-300);
        Ok(c.iter().all(|&v| v > tol::EPS_PRED * scale))
    }

    /// b in K+, the interior of the dual cone: (b, e_i) > 0 for all i.
    pub fn in_dual_interior(&self, b: &Point) -> bool {
        (0..self.dim()).all(|i| self.generators.column(i).dot(b) > 0.0)
    }

    /// K subset of K*: the angles between the extreme rays are non-obtuse
    /// ((e_i, e_j) >= 0 for all i != j).
    pub fn k_subset_kstar(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.generators.column(i).dot(&self.generators.column(j)) < -tol::EPS_PRED {
                    return false;
                }
            }
        }
        true
    }

    /// K* subset of K: every dual generator has non-negative coordinates in
    /// the generator basis, equivalently all entries of (E^T E)^{-1} are
    /// non-negative.
    pub fn kstar_subset_k(&self) -> bool {
        let m = &self.inverse * self.inverse.transpose();
        m.iter().all(|&v| v >= -tol::EPS_PRED)
    }

    /// Cross-section of the cone by an admissible hyperplane.
    pub fn section(&self, plane: &Hyperplane) -> Result<Section> {
        let n = self.dim();
        if plane.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: plane.dim(),
            });
        }
        let mut intercepts = Vec::with_capacity(n);
        let mut vertices = Vec::with_capacity(n);
        for i in 0..n {
            let d = self.generators.column(i).dot(plane.normal());
            if d <= tol::EPS_ADMISSIBLE {
                return Err(Error::NotAdmissible {
                    floor: tol::EPS_ADMISSIBLE,
                });
            }
            let x = 1.0 / d;
            intercepts.push(x);
            vertices.push(self.generators.column(i).into_owned() * x);
        }
        Ok(Section {
            vertices,
            intercepts,
            cone: self.clone(),
            plane: plane.clone(),
        })
    }

    /// Minimal n-volume of a cone segment (truncation of K between its
    /// vertex and a hyperplane through `a`), with the minimizing intercepts.
    ///
    /// For `a = sum alpha_i e_i` (all alpha_i > 0) the minimizer cuts the
    /// rays at `x_i = n * alpha_i`, making `a` the centroid of the
    /// cross-section, and the minimal volume is `|det E| n^n prod alpha_i / n!`.
    pub fn min_segment_volume(&self, a: &Point) -> Result<(f64, Vec<f64>)> {
        let alpha = self.coordinates(a)?;
        if !alpha.iter().all(|&v| v > 0.0) {
            return Err(Error::NotInterior);
        }
        let n = self.dim();
        let nf = n as f64;
        let intercepts: Vec<f64> = alpha.iter().map(|&v| nf * v).collect();
        let value = if n > tol::LOG_DOMAIN_DIM {
            let ln = self.abs_det.ln() + intercepts.iter().map(|&x| x.ln()).sum::<f64>()
                - ln_factorial(n);
            ln.exp()
        } else {
            self.abs_det * intercepts.iter().product::<f64>() / factorial(n)
        };
        Ok((value, intercepts))
    }
}

fn check_face_angles(alpha: f64, beta: f64, gamma: f64) -> Result<()> {
    let pi = std::f64::consts::PI;
    if !(alpha <= beta && beta <= gamma) {
        return Err(Error::InvalidInput(
            "face angles must be sorted ascending".into(),
        ));
    }
    if alpha <= 0.0 || gamma >= pi {
        return Err(Error::InfeasibleAngles(
            "face angles must lie in (0, pi)".into(),
        ));
    }
    if gamma >= alpha + beta {
        return Err(Error::InfeasibleAngles(
            "largest angle must be less than the sum of the others".into(),
        ));
    }
    if alpha + beta + gamma >= 2.0 * pi {
        return Err(Error::InfeasibleAngles(
            "angle sum must be less than 2*pi".into(),
        ));
    }
    Ok(())
}

/// Criterion for K* subset of K for a trihedral cone with face angles
/// `alpha <= beta <= gamma` (radians): the dihedral angles are non-acute iff
/// `beta >= pi/2` and `cos alpha <= cos beta * cos gamma`.
pub fn trihedral_kstar_subset_k(alpha: f64, beta: f64, gamma: f64) -> Result<bool> {
    check_face_angles(alpha, beta, gamma)?;
    let half_pi = std::f64::consts::FRAC_PI_2;
    Ok(beta >= half_pi - tol::EPS_PRED
        && alpha.cos() <= beta.cos() * gamma.cos() + tol::EPS_PRED)
}

// ---------------------------------------------------------------------------
// Section
// ---------------------------------------------------------------------------

/// The (n-1)-simplex K(b) = K `intersect` H(b), with vertices on the cone's
/// extreme rays: `A_i = x_i e_i`, `x_i = 1 / (b, e_i)`.
#[derive(Debug, Clone)]
pub struct Section {
    vertices: Vec<Point>,
    intercepts: Vec<f64>,
    cone: Hyperangle,
    plane: Hyperplane,
}

impl Section {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn intercepts(&self) -> &[f64] {
        &self.intercepts
    }

    pub fn cone(&self) -> &Hyperangle {
        &self.cone
    }

    pub fn plane(&self) -> &Hyperplane {
        &self.plane
    }

    pub fn centroid(&self) -> Point {
        centroid(&self.vertices).expect("section has vertices")
    }

    /// Max pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                d = d.max((&self.vertices[i] - &self.vertices[j]).norm());
            }
        }
        d
    }

    /// (n-1)-volume via the Gram determinant.
    pub fn volume(&self) -> f64 {
        simplex_volume(&self.vertices).expect("section vertices are consistent")
    }
}

// ---------------------------------------------------------------------------
// Simplex measures and special points
// ---------------------------------------------------------------------------

/// k-dimensional volume of the simplex on `k+1` vertices, via the Gram
/// determinant of edge vectors (computed as the product of the R diagonal of
/// a QR factorization). Affinely dependent input gives 0.
pub fn simplex_volume(vertices: &[Point]) -> Result<f64> {
    let n = check_same_dim(vertices)?;
    if vertices.len() < 2 {
        return Err(Error::InvalidInput(
            "simplex volume needs at least 2 vertices".into(),
        ));
    }
    let k = vertices.len() - 1;
    if k > n {
        return Ok(0.0); // more than n+1 points are always affinely dependent
    }
    let u = DMatrix::from_fn(n, k, |i, j| vertices[j + 1][i] - vertices[0][i]);
    let r = u.qr().unpack_r();
    if k > tol::LOG_DOMAIN_DIM {
        let ln: f64 = (0..k).map(|i| r[(i, i)].abs().ln()).sum::<f64>() - ln_factorial(k);
        Ok(ln.exp())
    } else {
        Ok((0..k).map(|i| r[(i, i)].abs()).product::<f64>() / factorial(k))
    }
}

/// Arithmetic mean of the vertices.
pub fn centroid(vertices: &[Point]) -> Result<Point> {
    let n = check_same_dim(vertices)?;
    let mut g = DVector::zeros(n);
    for v in vertices {
        g += v;
    }
    Ok(g / vertices.len() as f64)
}

/// Circumcenter of `k+1` affinely independent points: the unique point of
/// their affine hull equidistant from all of them.
///
/// Solved as the k x k linear system of equalized squared distances in an
/// orthonormal basis of the affine hull; the system's condition number is
/// logged when it exceeds 1e8.
pub fn circumcenter(vertices: &[Point]) -> Result<Point> {
    let n = check_same_dim(vertices)?;
    if vertices.len() < 2 {
        return Err(Error::InvalidInput(
            "circumcenter needs at least 2 vertices".into(),
        ));
    }
    let k = vertices.len() - 1;
    if k > n {
        return Err(Error::Degenerate(
            "too many vertices: affinely dependent".into(),
        ));
    }
    let u = DMatrix::from_fn(n, k, |i, j| vertices[j + 1][i] - vertices[0][i]);
    let scale = (0..k)
        .map(|j| u.column(j).norm())
        .fold(0.0f64, f64::max);
    let qr = u.qr();
    let q = qr.q();
    let r = qr.unpack_r();
    for i in 0..k {
        if r[(i, i)].abs() <= 1e-12 * scale {
            return Err(Error::Degenerate("affinely dependent vertices".into()));
        }
    }
    // In the Q basis the i-th edge vector is w_i = R e_i; the center c
    // satisfies |c - w_i| = |c|, i.e. 2 (w_i, c) = |w_i|^2.
    let m = 2.0 * r.transpose();
    let rhs = DVector::from_fn(k, |i, _| r.column(i).norm_squared());
    let cond = {
        let sv = m.clone().svd(false, false).singular_values;
        sv.max() / sv.min().max(f64::MIN_POSITIVE)
    };
    if cond > 1e8 {
        log::warn!("circumcenter system is ill-conditioned (cond = {cond:.3e})");
    }
    let c = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Degenerate("singular circumcenter system".into()))?;
    Ok(&vertices[0] + q * c)
}

/// Monge point of a simplex on `v >= 3` vertices: the common point of the
/// hyperplanes through the centroids of the (v-3)-dimensional faces
/// orthogonal to the opposite edges. Computed from the circumcenter C and
/// centroid G as `M = C + v/(v-2) (G - C)`; for v = 3 this is the triangle's
/// orthocenter.
pub fn monge_point(vertices: &[Point]) -> Result<Point> {
    let v = vertices.len();
    if v < 3 {
        return Err(Error::InvalidInput(
            "Monge point needs at least 3 vertices".into(),
        ));
    }
    let c = circumcenter(vertices)?;
    let g = centroid(vertices)?;
    let factor = v as f64 / (v as f64 - 2.0);
    Ok(&c + (g - &c) * factor)
}

/// Whether the simplex is orthocentric: every pair of disjoint edges is
/// orthogonal (equivalently each edge is orthogonal to the opposite face).
/// Triangles are vacuously orthocentric.
pub fn is_orthocentric(vertices: &[Point], rel_tol: f64) -> Result<bool> {
    check_same_dim(vertices)?;
    let v = vertices.len();
    let mut scale2 = 0.0f64;
    for i in 0..v {
        for j in (i + 1)..v {
            scale2 = scale2.max((&vertices[i] - &vertices[j]).norm_squared());
        }
    }
    for i in 0..v {
        for j in (i + 1)..v {
            let e1 = &vertices[i] - &vertices[j];
            for p in 0..v {
                for q in (p + 1)..v {
                    if p == i || p == j || q == i || q == j {
                        continue;
                    }
                    let e2 = &vertices[p] - &vertices[q];
                    if e1.dot(&e2).abs() > rel_tol * scale2 {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
