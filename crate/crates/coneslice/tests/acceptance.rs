//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured figures (run with `--nocapture` to see them).
//!
//! Every tolerance is pinned here; the random draws are seeded so the suite
//! is deterministic.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use coneslice::geometry::{self, Hyperangle, Hyperplane, Point};
use coneslice::solver::{self, Chart, StationaryKind};
use coneslice::{oracle, orthant, stationarity, tol};

fn pt(coords: &[f64]) -> Point {
    DVector::from_column_slice(coords)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Random rotation: Q factor of a random matrix.
fn random_rotation(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    m.qr().q()
}

/// Cone with pairwise non-acute generator angles (so K* inside K).
fn obtuse_cone(rng: &mut ChaCha8Rng, n: usize) -> Hyperangle {
    let c = rng.random_range(0.3..0.9);
    let q = random_rotation(rng, n);
    let gens: Vec<Point> = (0..n)
        .map(|j| {
            let mut g: Point = q.column(j).into_owned();
            for i in 0..n {
                let mean: f64 = q.row(i).sum() / n as f64;
                g[i] -= c * mean;
            }
            g
        })
        .collect();
    Hyperangle::new(gens).unwrap()
}

/// Criterion 1: the closed 2D form (a1^(2/3)+a2^(2/3))^(3/2) is reproduced
/// by the orthant solver to relative 1e-9 on 1000 random points, in < 1 s.
#[test]
fn criterion_1_corollary_2d_closed_form() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a1 = rng.random_range(0.1..10.0);
        let a2 = rng.random_range(0.1..10.0);
        let sol = orthant::stationary_section(&[a1, a2]).unwrap();
        let expect = (a1.cbrt().powi(2) + a2.cbrt().powi(2)).powf(1.5);
        worst = worst.max(rel(sol.volume, expect));
        assert!(
            rel(sol.volume, expect) < 1e-9,
            "volume {} vs closed form {} at ({a1}, {a2})",
            sol.volume,
            expect
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "PASS criterion 1: 1000 points, worst rel diff {worst:.3e}, {:.0} ms",
        elapsed.as_secs_f64() * 1e3
    );
}

/// Criterion 2: internal consistency of the orthant solution on 200 random
/// points in dimensions 2..8: root residual, lambda = d^2, closed-form vs
/// Gram volume, stationarity residual. Runtime < 5 s.
#[test]
fn criterion_2_orthant_internal_consistency() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..200 {
        let n = rng.random_range(2..=8usize);
        let a: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..10.0)).collect();
        let sol = orthant::stationary_section(&a).unwrap();
        let f_res = orthant::f_eval(&a, sol.lambda).unwrap().abs();
        assert!(f_res < 1e-12, "|f(lambda)| = {f_res:.3e}");
        let d = sol.plane.distance_from_origin();
        assert!(
            (sol.lambda - d * d).abs() / sol.lambda < 1e-9,
            "lambda {} vs d^2 {}",
            sol.lambda,
            d * d
        );
        let verts: Vec<Point> = (0..n)
            .map(|i| {
                let mut v = DVector::zeros(n);
                v[i] = sol.intercepts[i];
                v
            })
            .collect();
        let gram = geometry::simplex_volume(&verts).unwrap();
        assert!(
            rel(sol.volume, gram) < 1e-10,
            "closed form {} vs Gram {}",
            sol.volume,
            gram
        );
        let cone = Hyperangle::orthant(n).unwrap();
        let report =
            stationarity::residual(&cone, &pt(&a), &sol.plane, tol::TOL_STAT).unwrap();
        assert!(report.residual_norm < 1e-8, "residual {}", report.residual_norm);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "PASS criterion 2: 200 points n=2..8 consistent, {:.0} ms",
        elapsed.as_secs_f64() * 1e3
    );
}

/// Criterion 3: in the orthant (n = 3) enumeration finds exactly one
/// stationary plane, the closed-form one (angular distance < 1e-7), with
/// the brute-force grid minimum within relative 1e-5.
#[test]
fn criterion_3_uniqueness_and_global_min() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let cone = Hyperangle::orthant(3).unwrap();
    for _ in 0..50 {
        let a: Vec<f64> = (0..3).map(|_| rng.random_range(0.2..5.0)).collect();
        let point = pt(&a);
        let found = solver::enumerate_stationary(&cone, &point, 200, 11, tol::TOL_STAT);
        assert_eq!(found.len(), 1, "expected a unique stationary plane at {a:?}");
        let exact = orthant::stationary_section(&a).unwrap();
        let angle = solver::angular_distance(found[0].plane.normal(), exact.plane.normal());
        assert!(angle < 1e-7, "angular distance {angle:.3e}");
        let grid = oracle::grid_refine_min(&cone, &point, &oracle::GridSpec::default()).unwrap();
        assert!(
            rel(found[0].volume, grid.volume) < 1e-5,
            "solver {} vs oracle {}",
            found[0].volume,
            grid.volume
        );
    }
    println!("PASS criterion 3: 50 points, unique plane matches closed form and oracle");
}

/// Criterion 4: the trihedral cone example returns exactly three stationary
/// planes classified {local_min, local_min, saddle}, stable across seeds
/// 1..10 and start budgets {100, 400}, in < 10 s.
#[test]
fn criterion_4_trihedral_example() {
    let started = Instant::now();
    let cone = Hyperangle::new(vec![
        pt(&[1.0, -1.0, -0.2]),
        pt(&[1.0, 1.0, -0.2]),
        pt(&[1.0, 0.0, 0.01]),
    ])
    .unwrap();
    let a = pt(&[1.0, 0.0, 0.0]);
    let mut reference: Option<Vec<f64>> = None;
    for seed in 1..=10u64 {
        for starts in [100usize, 400] {
            let points = solver::enumerate_stationary(&cone, &a, starts, seed, tol::TOL_STAT);
            assert_eq!(
                points.len(),
                3,
                "seed {seed} starts {starts}: found {}",
                points.len()
            );
            let kinds: Vec<StationaryKind> = points.iter().map(|p| p.kind).collect();
            assert_eq!(
                kinds,
                vec![
                    StationaryKind::LocalMin,
                    StationaryKind::LocalMin,
                    StationaryKind::Saddle
                ],
                "seed {seed} starts {starts}"
            );
            let volumes: Vec<f64> = points.iter().map(|p| p.volume).collect();
            match &reference {
                None => reference = Some(volumes),
                Some(r) => {
                    for (v, rv) in volumes.iter().zip(r) {
                        assert!(rel(*v, *rv) < 1e-9, "volumes drifted across runs");
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "PASS criterion 4: 3 planes {{min, min, saddle}} stable over 10 seeds x 2 budgets, {:.0} ms",
        elapsed.as_secs_f64() * 1e3
    );
}

/// Criterion 5: stationary-line counts for aperture 60 degrees are 1 / 2 / 0
/// in the three regions, on 200 samples each, and theta matches its formula
/// to 1e-12.
#[test]
fn criterion_5_region_counts_60_degrees() {
    let alpha = 60.0f64.to_radians();
    let cone = Hyperangle::angle2d(alpha).unwrap();
    let theta = solver::philon_theta(alpha).unwrap();
    let formula = ((1.0 + (alpha / 2.0).sin().powi(2)) / (1.0 + (alpha / 2.0).cos().powi(2)))
        .powf(1.5)
        .atan();
    assert!((theta - formula).abs() < 1e-12);
    let margin = 1e-3;
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    // (phi range, expected count); sampling stays a hair inside each open
    // region so the sample is unambiguous at f64 resolution
    let ranges = [
        (0.0, alpha / 2.0 - 1e-6, 1usize),
        (alpha / 2.0 + 1e-6, theta - margin, 2),
        (theta + margin, std::f64::consts::PI, 0),
    ];
    for (lo, hi, expect) in ranges {
        for _ in 0..200 {
            let phi = rng.random_range(lo..hi);
            let r = rng.random_range(0.5..2.0);
            let side = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let a = pt(&[r * phi.cos(), side * r * phi.sin()]);
            let lines = oracle::residual_sign_sweep_2d(&cone, &a, 1440).unwrap();
            assert_eq!(
                lines.len(),
                expect,
                "phi = {:.6} deg expected {expect}",
                phi.to_degrees()
            );
            let region = solver::philon2d_region(alpha, &a).unwrap();
            assert_eq!(region.expected_count, expect);
        }
    }
    println!("PASS criterion 5: 200 samples per region count 1/2/0, theta exact to 1e-12");
}

/// Newton search for a plane whose foot of the origin equals the section's
/// Monge point. Returns None when no admissible solution is found.
fn find_monge_foot_plane(
    cone: &Hyperangle,
    rng: &mut ChaCha8Rng,
) -> Option<Hyperplane> {
    let n = cone.dim();
    // anchor the chart at an interior direction so (b, q) = 1
    let q: Point = cone.generators() * DVector::from_element(n, 1.0);
    let chart = Chart::new(cone, &q).ok()?;
    let dim = chart.dim();
    let eval = |t: &[f64]| -> Option<(DVector<f64>, f64)> {
        let b = chart.point(t);
        let plane = Hyperplane::new(b).ok()?;
        let section = cone.section(&plane).ok()?;
        let m = geometry::monge_point(section.vertices()).ok()?;
        let gap = &plane.foot_of_origin() - &m;
        let proj = DVector::from_iterator(
            dim,
            (0..dim).map(|j| chart.tangent_basis().column(j).dot(&gap)),
        );
        Some((proj, section.diameter()))
    };
    'starts: for _ in 0..12 {
        let mut t: Vec<f64> = (0..dim).map(|_| rng.random_range(-0.3..0.3)).collect();
        for _ in 0..60 {
            let (r, scale) = match eval(&t) {
                Some(v) => v,
                None => continue 'starts,
            };
            if r.norm() <= 1e-11 * scale.max(1.0) {
                return Hyperplane::new(chart.point(&t)).ok();
            }
            let h = f64::EPSILON.cbrt() * (1.0 + t.iter().fold(0.0f64, |m, &v| m.max(v.abs())));
            let mut jac = DMatrix::zeros(dim, dim);
            for j in 0..dim {
                let mut tp = t.clone();
                let mut tm = t.clone();
                tp[j] += h;
                tm[j] -= h;
                match (eval(&tp), eval(&tm)) {
                    (Some((rp, _)), Some((rm, _))) => jac.set_column(j, &((rp - rm) / (2.0 * h))),
                    _ => continue 'starts,
                }
            }
            let delta = match jac.lu().solve(&(-&r)) {
                Some(d) => d,
                None => continue 'starts,
            };
            let mut step = 1.0;
            let mut moved = false;
            while step >= 1e-8 {
                let tn: Vec<f64> = t
                    .iter()
                    .zip(delta.iter())
                    .map(|(&ti, &di)| ti + step * di)
                    .collect();
                if let Some((rn, _)) = eval(&tn) {
                    if rn.norm() < r.norm() {
                        t = tn;
                        moved = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if !moved {
                continue 'starts;
            }
        }
    }
    None
}

/// Criterion 6: 500 triples where two of the three conditions hold within
/// 1e-9 (at the section scale); the third holds within 5e-8 in all of them.
#[test]
fn criterion_6_two_of_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut checked = 0usize;
    // family A: stationary planes on rotated orthants; the O-simplex is
    // orthocentric, so (i) and (ii) hold; (iii) must follow
    while checked < 300 {
        let n = 3 + checked % 3;
        let scale = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                rng.random_range(0.5..2.0)
            } else {
                0.0
            }
        });
        let gens = random_rotation(&mut rng, n) * scale;
        let cone = Hyperangle::new((0..n).map(|j| gens.column(j).into_owned()).collect()).unwrap();
        let alpha = DVector::from_fn(n, |_, _| rng.random_range(0.3..2.0));
        let a = cone.generators() * alpha;
        let found = match solver::minimize(&cone, &a, None, tol::TOL_STAT) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let report = stationarity::residual(&cone, &a, &found.plane, tol::TOL_STAT).unwrap();
        let section = cone.section(&found.plane).unwrap();
        let dists: Vec<f64> = section
            .vertices()
            .iter()
            .map(|v| (v - &report.a_prime).norm())
            .collect();
        let mean = dists.iter().sum::<f64>() / dists.len() as f64;
        let spread = report.equal_distance_spread / mean;
        // the construction must give (i) and (ii) within 1e-9
        assert!(report.residual_norm <= 1e-9 * report.section_diameter);
        assert!(spread <= 1e-9);
        // third condition within 5e-8
        let monge = report.monge_gap.unwrap() / report.section_diameter;
        assert!(monge <= 5e-8, "(i)+(ii) but Monge gap {monge:.3e}");
        checked += 1;
    }
    // family B: planes with foot = Monge point on perturbed rotated
    // orthants, paired with the unique point satisfying the residual
    // identity; (i) and (iii) hold, (ii) must follow
    while checked < 500 {
        let n = 3 + checked % 3;
        let eps = rng.random_range(0.05..0.3);
        let base = random_rotation(&mut rng, n);
        let bump = DMatrix::from_fn(n, n, |_, _| rng.random_range(-eps..eps));
        let gens = &base + &base * bump;
        let cone = match Hyperangle::new((0..n).map(|j| gens.column(j).into_owned()).collect()) {
            Ok(c) if c.abs_det() > 0.1 => c,
            _ => continue,
        };
        let plane = match find_monge_foot_plane(&cone, &mut rng) {
            Some(p) => p,
            None => continue,
        };
        let section = cone.section(&plane).unwrap();
        let g = section.centroid();
        let h = plane.foot_of_origin();
        let a = (g * n as f64 - &h) / (n as f64 - 1.0);
        let report = stationarity::residual(&cone, &a, &plane, tol::TOL_STAT).unwrap();
        // the construction must give (i) and (iii) within 1e-9
        assert!(report.residual_norm <= 1e-9 * report.section_diameter);
        assert!(report.monge_gap.unwrap() <= 1e-9 * report.section_diameter);
        // third condition within 5e-8
        let dists: Vec<f64> = section
            .vertices()
            .iter()
            .map(|v| (v - &report.a_prime).norm())
            .collect();
        let mean = dists.iter().sum::<f64>() / dists.len() as f64;
        let spread = report.equal_distance_spread / mean;
        assert!(spread <= 5e-8, "(i)+(iii) but distance spread {spread:.3e}");
        checked += 1;
    }
    println!("PASS criterion 6: 500 triples, the third condition held in all");
}

/// Criterion 7: facet-case boundary infimum in the orthant matches the
/// closed form k^k prod(alpha)/k!, the approach sequence of admissible
/// planes decreases to within 1% of it in 10 steps, and the degenerate
/// stationarity identity AO = n*AG holds to 1e-12.
#[test]
fn criterion_7_boundary_facet_case() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for n in [3usize, 4] {
        let cone = Hyperangle::orthant(n).unwrap();
        for _ in 0..25 {
            let zero_at = rng.random_range(0..n);
            let mut a = vec![0.0; n];
            for (i, v) in a.iter_mut().enumerate() {
                if i != zero_at {
                    *v = rng.random_range(0.3..2.0);
                }
            }
            let point = pt(&a);
            let report = solver::boundary_infimum(&cone, &point).unwrap();
            let k = n - 1;
            assert_eq!(report.face_dimension, k);
            let closed: f64 = (k as f64).powi(k as i32)
                * a.iter().filter(|&&v| v > 0.0).product::<f64>()
                / (1..=k).map(|i| i as f64).product::<f64>();
            assert!(
                rel(report.m_a, closed) < 1e-13,
                "m_a {} vs closed form {}",
                report.m_a,
                closed
            );
            assert!(
                report.centroid_identity_gap.unwrap() <= 1e-12 * (1.0 + point.norm()),
                "AO = n*AG gap {:.3e}",
                report.centroid_identity_gap.unwrap()
            );
            // approach sequence: facet cut fixed at the minimizer, off-facet
            // intercept halved each step
            let intercepts = report.facet_solution.clone().unwrap();
            let facet = report.facet_generators.clone().unwrap();
            let mut t = intercepts.iter().sum::<f64>() / k as f64;
            let mut prev = f64::INFINITY;
            let mut last = f64::INFINITY;
            for _ in 0..10 {
                t *= 0.5;
                let mut points_on_plane: Vec<Point> = facet
                    .iter()
                    .zip(&intercepts)
                    .map(|(&i, &x)| cone.generator(i) * x)
                    .collect();
                points_on_plane.push(cone.generator(zero_at) * t);
                let plane = Hyperplane::through_points(&points_on_plane).unwrap();
                let volume = cone.section(&plane).unwrap().volume();
                assert!(volume <= prev * (1.0 + 1e-12), "sequence not decreasing");
                prev = volume;
                last = volume;
            }
            assert!(
                (last - report.m_a) / report.m_a < 0.01,
                "gap {} after 10 steps",
                (last - report.m_a) / report.m_a
            );
        }
    }
    println!("PASS criterion 7: facet infimum closed form, decreasing approach, AO = n*AG");
}

/// Criterion 8: the shortest-segment length matches the 2D scan oracle on
/// the two-smallest-coordinate plane for 100 random points (rel 1e-6), and
/// the minimizing-line counts for the tie cases are confirmed by a
/// per-coordinate-pair scan.
#[test]
fn criterion_8_shortest_segment_and_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let quad = Hyperangle::orthant(2).unwrap();
    for _ in 0..100 {
        let n = rng.random_range(3..=5usize);
        let a: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..5.0)).collect();
        let len = orthant::shortest_segment(&a).unwrap();
        let mut sorted = a.clone();
        sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let (_, scan) = oracle::segment_scan_2d(&quad, &pt(&[sorted[0], sorted[1]]), 720).unwrap();
        assert!(rel(len, scan) < 1e-6, "closed {len} vs scan {scan}");
    }
    // tie cases: count coordinate pairs whose in-plane scan attains the
    // global minimum
    for (a, expect) in [(vec![1.0, 2.0, 2.0, 5.0], 2usize), (vec![1.0, 1.0, 1.0, 4.0], 3)] {
        let n = a.len();
        let mut lengths = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let (_, l) = oracle::segment_scan_2d(&quad, &pt(&[a[i], a[j]]), 720).unwrap();
                lengths.push(l);
            }
        }
        let min = lengths.iter().cloned().fold(f64::INFINITY, f64::min);
        let count = lengths.iter().filter(|&&l| rel(l, min) < 1e-9).count();
        assert_eq!(count, expect, "scan count for {a:?}");
        assert_eq!(orthant::minimal_line_count(&a).unwrap(), expect);
    }
    println!("PASS criterion 8: scan oracle agreement and tie counts 2 / 3");
}

/// Criterion 9: the barycentric identity h_i + (n-1) a_i = 1 holds to 1e-8
/// for 100 solver outputs on cones with K* inside K.
#[test]
fn criterion_9_barycentric_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut checked = 0usize;
    while checked < 100 {
        let n = 3 + checked % 3;
        let cone = obtuse_cone(&mut rng, n);
        assert!(cone.kstar_subset_k(), "construction guarantees K* in K");
        let alpha = DVector::from_fn(n, |_, _| rng.random_range(0.3..1.5));
        let a = cone.generators() * alpha;
        let found = match solver::minimize(&cone, &a, None, tol::TOL_STAT) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let gap = stationarity::bar_identity_gap(&cone, &a, &found.plane).unwrap();
        assert!(gap < 1e-8, "barycentric identity gap {gap:.3e}");
        checked += 1;
    }
    println!("PASS criterion 9: 100 solver outputs, max barycentric defect < 1e-8");
}
