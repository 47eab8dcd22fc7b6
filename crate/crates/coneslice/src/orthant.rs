//! Closed-form solver for the non-negative orthant.
//!
//! For an interior point A = (a_1, ..., a_n), set b_i = (n-1)/2 * a_i and
//!
//! ```text
//! f_A(x) = sum_i b_i / (b_i + sqrt(b_i^2 + x)) - (n-1)/2.
//! ```
//!
//! f_A is continuous and strictly decreasing on [-min b_i^2, +inf) with
//! f_A(0) = 1/2, so f_A(x) = 0 has a unique real root lambda > 0. The unique
//! stationary hyperplane through A cuts the axes at c_i = b_i +
//! sqrt(b_i^2 + lambda), its distance from the origin is sqrt(lambda), and
//! the cross-section volume is prod c_i / ((n-1)! sqrt(lambda)).

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::geometry::Hyperplane;
use crate::tol;

/// Full output of the orthant solver.
#[derive(Debug, Clone)]
pub struct OrthantSolution {
    /// The unique root of f_A; equals the squared distance from the origin
    /// to the stationary hyperplane.
    pub lambda: f64,
    /// b_i = (n-1)/2 * a_i.
    pub b_vec: Vec<f64>,
    /// Axis intercepts c_i of the stationary hyperplane.
    pub intercepts: Vec<f64>,
    /// The stationary hyperplane, normal components 1/c_i.
    pub plane: Hyperplane,
    /// Cross-section volume prod c_i / ((n-1)! sqrt(lambda)).
    pub volume: f64,
    /// Distance from the origin to the plane.
    pub distance: f64,
}

fn check_interior(a: &[f64]) -> Result<()> {
    if a.len() < 2 {
        return Err(Error::InvalidInput("dimension must be at least 2".into()));
    }
    if !a.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidInput("non-finite coordinate".into()));
    }
    if !a.iter().all(|&v| v > 0.0) {
        return Err(Error::NotInterior);
    }
    Ok(())
}

fn b_of(a: &[f64]) -> Vec<f64> {
    let s = (a.len() as f64 - 1.0) / 2.0;
    a.iter().map(|&ai| s * ai).collect()
}

/// Evaluate f_A at x. Defined for x >= -min b_i^2.
pub fn f_eval(a: &[f64], x: f64) -> Result<f64> {
    check_interior(a)?;
    let b = b_of(a);
    let min_b2 = b.iter().map(|&bi| bi * bi).fold(f64::INFINITY, f64::min);
    if x < -min_b2 {
        return Err(Error::OutOfDomain { x, min: -min_b2 });
    }
    Ok(f_raw(&b, x))
}

fn f_raw(b: &[f64], x: f64) -> f64 {
    let n = b.len() as f64;
    b.iter()
        .map(|&bi| bi / (bi + (bi * bi + x).sqrt()))
        .sum::<f64>()
        - (n - 1.0) / 2.0
}

fn f_derivative(b: &[f64], x: f64) -> f64 {
    // d/dx [ b/(b+s) ] = -b / (2 s (b+s)^2), s = sqrt(b^2+x)
    b.iter()
        .map(|&bi| {
            let s = (bi * bi + x).sqrt();
            -bi / (2.0 * s * (bi + s) * (bi + s))
        })
        .sum()
}

/// The unique positive root of f_A.
///
/// The root is bracketed in (0, (2 sum b_i / (n-1))^2 + 1] (f_A(x) <= sum
/// b_i/sqrt(x) - (n-1)/2 makes f negative there), narrowed by bisection and
/// polished by Newton with the analytic derivative. Inputs are solved in
/// units of max a_i and the root rescaled by that factor squared.
pub fn solve_lambda(a: &[f64]) -> Result<f64> {
    solve_lambda_detail(a).map(|(lambda, _)| lambda)
}

/// [`solve_lambda`] plus the number of bisection + Newton iterations.
pub fn solve_lambda_detail(a: &[f64]) -> Result<(f64, usize)> {
    check_interior(a)?;
    let scale = a.iter().cloned().fold(0.0f64, f64::max);
    let scaled: Vec<f64> = a.iter().map(|&v| v / scale).collect();
    let b = b_of(&scaled);
    let n = b.len() as f64;
    let sum_b: f64 = b.iter().sum();
    let mut iterations = 0usize;
    let mut lo = 0.0f64;
    let mut hi = (2.0 * sum_b / (n - 1.0)).powi(2) + 1.0;
    debug_assert!(f_raw(&b, hi) < 0.0);
    // bisection down to a narrow bracket
    let width_target = 1e-3 * hi;
    while hi - lo > width_target {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if f_raw(&b, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish, safeguarded by the bracket
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let fx = f_raw(&b, x);
        if fx.abs() < tol::TOL_ROOT {
            break;
        }
        iterations += 1;
        if fx > 0.0 {
            lo = lo.max(x);
        } else {
            hi = hi.min(x);
        }
        let step = fx / f_derivative(&b, x);
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        x = next;
    }
    Ok((x * scale * scale, iterations))
}

/// The unique stationary hyperplane through the interior point `a`, with
/// intercepts, volume, and distance.
pub fn stationary_section(a: &[f64]) -> Result<OrthantSolution> {
    stationary_section_detail(a).map(|(sol, _)| sol)
}

/// [`stationary_section`] plus the root-solve iteration count.
pub fn stationary_section_detail(a: &[f64]) -> Result<(OrthantSolution, usize)> {
    let (lambda, iterations) = solve_lambda_detail(a)?;
    let b = b_of(a);
    let n = a.len();
    let intercepts: Vec<f64> = b.iter().map(|&bi| bi + (bi * bi + lambda).sqrt()).collect();
    let normal = DVector::from_iterator(n, intercepts.iter().map(|&c| 1.0 / c));
    let plane = Hyperplane::new(normal)?;
    let sqrt_lambda = lambda.sqrt();
    let volume = if n > tol::LOG_DOMAIN_DIM {
        let ln = intercepts.iter().map(|&c| c.ln()).sum::<f64>()
            - (1..n).map(|i| (i as f64).ln()).sum::<f64>()
            - sqrt_lambda.ln();
        ln.exp()
    } else {
        intercepts.iter().product::<f64>()
            / ((1..n).map(|i| i as f64).product::<f64>() * sqrt_lambda)
    };
    Ok((
        OrthantSolution {
            lambda,
            b_vec: b,
            intercepts,
            plane,
            volume,
            distance: sqrt_lambda,
        },
        iterations,
    ))
}

/// Length of the shortest segment cut from the first quadrant by a line
/// through (a1, a2): `(a1^(2/3) + a2^(2/3))^(3/2)`.
pub fn philon_length_2d(a1: f64, a2: f64) -> Result<f64> {
    if !(a1 > 0.0 && a2 > 0.0) || !a1.is_finite() || !a2.is_finite() {
        return Err(Error::InvalidInput(
            "quadrant point coordinates must be positive".into(),
        ));
    }
    let s = a1.cbrt().powi(2) + a2.cbrt().powi(2);
    Ok(s * s.sqrt())
}

/// Length of a shortest segment cut from the non-negative orthant by a line
/// through the interior point `a`: the 2D value on the two smallest
/// coordinates.
pub fn shortest_segment(a: &[f64]) -> Result<f64> {
    check_interior(a)?;
    let mut sorted = a.to_vec();
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    philon_length_2d(sorted[0], sorted[1])
}

/// Tie structure behind [`minimal_line_count`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineCount {
    /// Number of distinct lines through `a` cutting a segment of minimal
    /// length from the orthant.
    pub count: usize,
    /// True when coordinates outside the two-smallest tie class are also
    /// tied among themselves; such ties do not enter the counting rule and
    /// are surfaced for reporting.
    pub extra_ties: bool,
}

/// Count of minimal-length cutting lines through `a`.
///
/// With sorted coordinates, let k be the size of the tie class of a_2: the
/// count is k when a_1 < a_2 (one line per tied coordinate paired with a_1)
/// and binomial(k, 2) when a_1 is part of the class. The line is unique iff
/// a_2 < a_3. Ties are detected with relative tolerance [`tol::TOL_TIE`].
pub fn minimal_line_count(a: &[f64]) -> Result<usize> {
    Ok(line_count_detail(a)?.count)
}

/// [`minimal_line_count`] plus a flag for tie patterns outside the rule,
/// using the default tie tolerance.
pub fn line_count_detail(a: &[f64]) -> Result<LineCount> {
    line_count_detail_with_tol(a, tol::TOL_TIE)
}

/// Tie detection with a caller-chosen relative tolerance, for inputs whose
/// ties are not exact.
pub fn line_count_detail_with_tol(a: &[f64], tie_tol: f64) -> Result<LineCount> {
    check_interior(a)?;
    if a.len() == 2 {
        return Ok(LineCount {
            count: 1,
            extra_ties: false,
        });
    }
    let mut s = a.to_vec();
    s.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let tied = |x: f64, y: f64| (x - y).abs() <= tie_tol * x.abs().max(y.abs());
    let a2 = s[1];
    let class: Vec<usize> = (0..s.len()).filter(|&i| tied(s[i], a2)).collect();
    let k = class.len();
    let count = if class.contains(&0) {
        k * (k - 1) / 2
    } else {
        k
    };
    let beyond = *class.last().expect("class contains a_2") + 1;
    let extra_ties = s[beyond..].windows(2).any(|w| tied(w[0], w[1]));
    Ok(LineCount { count, extra_ties })
}
