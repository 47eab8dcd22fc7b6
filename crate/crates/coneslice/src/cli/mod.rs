//! Command-line front end.
//!
//! Subcommands: orthant-solve | solve | enumerate | classify-cone | philon |
//! shortest-segment | boundary | oracle. Output is a JSON envelope on
//! stdout (or `--output <path>`); human-readable logging goes to stderr,
//! controlled by the `CONESLICE_LOG` environment variable.
//!
//! Exit codes: 0 success; 2 for domain errors (NotInterior, NotAdmissible,
//! ...) with a structured error envelope; 1 for malformed input.

mod envelope;

use std::fs;
use std::io::Write;
use std::time::Instant;

use clap::{Arg, ArgAction, ArgMatches, Command};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{Hyperangle, Hyperplane, Point};
use crate::{oracle, orthant, solver, stationarity, tol};
use envelope::{diagnostics, num, obj, to_json_string, Envelope, ErrorEnvelope};

/// The hard cap on problem dimension accepted by the CLI.
const MAX_DIM: usize = 64;

const SWEEP_ANGLES: usize = 1440;

pub fn run<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let _ = env_logger::Builder::from_env(
        env_logger::Env::new().filter_or("CONESLICE_LOG", "warn"),
    )
    .try_init();
    let matches = match command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return 1;
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            return 0;
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let started = Instant::now();
    let threads = match parse_usize(sub, "threads", 1) {
        Ok(t) if t >= 1 => t,
        _ => return fail_malformed("threads: must be a positive integer"),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => return fail_malformed(&format!("threads: {e}")),
    };
    let outcome = pool.install(|| dispatch(name, sub, started));
    match outcome {
        Ok((envelope, plot)) => {
            let body = to_json_string(&envelope);
            if let Some((path, csv)) = plot {
                if let Err(e) = fs::write(&path, csv) {
                    log::error!("failed to write plot data to {path}: {e}");
                    return 1;
                }
            }
            match sub.get_one::<String>("output").map(String::as_str) {
                None | Some("-") => {
                    print!("{body}");
                    let _ = std::io::stdout().flush();
                }
                Some(path) => {
                    if let Err(e) = fs::write(path, &body) {
                        log::error!("failed to write output to {path}: {e}");
                        return 1;
                    }
                }
            }
            0
        }
        Err(err) => {
            log::error!("{err}");
            let body = to_json_string(&ErrorEnvelope::from_error(&err));
            print!("{body}");
            let _ = std::io::stdout().flush();
            if err.is_domain() {
                2
            } else {
                1
            }
        }
    }
}

fn fail_malformed(msg: &str) -> i32 {
    let err = Error::InvalidInput(msg.to_string());
    log::error!("{err}");
    print!("{}", to_json_string(&ErrorEnvelope::from_error(&err)));
    1
}

fn command() -> Command {
    let shared = |cmd: Command| -> Command {
        cmd.arg(
            Arg::new("point")
                .long("point")
                .value_name("CSV")
                .allow_hyphen_values(true),
        )
        .arg(Arg::new("cone").long("cone").value_name("PATH"))
        .arg(Arg::new("preset").long("preset").value_name("orthant|angle2d"))
        .arg(
            Arg::new("alpha")
                .long("alpha")
                .value_name("DEGREES")
                .allow_hyphen_values(true),
        )
            .arg(Arg::new("tol").long("tol").value_name("FLOAT"))
            .arg(Arg::new("starts").long("starts").value_name("INT"))
            .arg(Arg::new("seed").long("seed").value_name("INT"))
            .arg(Arg::new("output").long("output").value_name("PATH|-"))
            .arg(Arg::new("plot-data").long("plot-data").value_name("PATH"))
            .arg(Arg::new("threads").long("threads").value_name("INT"))
            .arg(
                Arg::new("levels")
                    .long("levels")
                    .value_name("INT")
                    .action(ArgAction::Set),
            )
    };
    Command::new("coneslice")
        .about("Minimal cone cross-sections: stationary hyperplanes through a point")
        .version(crate::VERSION)
        .subcommand_required(true)
        .arg_required_else_help(true)
        .subcommands([
            shared(Command::new("orthant-solve").about(
                "Unique stationary hyperplane through an interior point of the orthant",
            )),
            shared(Command::new("solve").about(
                "Minimize the cross-section volume over hyperplanes through a point",
            )),
            shared(Command::new("enumerate").about(
                "Find and classify all stationary hyperplanes through a point",
            )),
            shared(Command::new("classify-cone").about("Dual-cone inclusion predicates")),
            shared(Command::new("philon").about(
                "2D region classification and stationary lines for an angle",
            )),
            shared(
                Command::new("shortest-segment")
                    .about("Shortest segment cut from the orthant by a line through a point"),
            ),
            shared(Command::new("boundary").about(
                "Infimum of cross-section volumes through a boundary point",
            )),
            shared(Command::new("oracle").about(
                "Brute-force grid minimum (reference for solve)",
            )),
        ])
}

fn dispatch(
    name: &str,
    sub: &ArgMatches,
    started: Instant,
) -> Result<(Envelope, Option<(String, String)>)> {
    match name {
        "orthant-solve" => cmd_orthant_solve(sub, started),
        "solve" => cmd_solve(sub, started),
        "enumerate" => cmd_enumerate(sub, started),
        "classify-cone" => cmd_classify_cone(sub, started),
        "philon" => cmd_philon(sub, started),
        "shortest-segment" => cmd_shortest_segment(sub, started),
        "boundary" => cmd_boundary(sub, started),
        "oracle" => cmd_oracle(sub, started),
        other => Err(Error::InvalidInput(format!("unknown subcommand {other}"))),
    }
}

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

fn parse_point(sub: &ArgMatches) -> Result<Vec<f64>> {
    let raw = sub
        .get_one::<String>("point")
        .ok_or_else(|| Error::InvalidInput("point: required flag --point is missing".into()))?;
    let mut coords = Vec::new();
    for (i, tok) in raw.split(',').enumerate() {
        let v: f64 = tok.trim().parse().map_err(|_| {
            Error::InvalidInput(format!("point[{i}]: invalid float {:?}", tok.trim()))
        })?;
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!("point[{i}]: must be finite")));
        }
        coords.push(v);
    }
    if coords.len() < 2 {
        return Err(Error::InvalidInput(
            "point: at least 2 coordinates required".into(),
        ));
    }
    if coords.len() > MAX_DIM {
        return Err(Error::InvalidInput(format!(
            "point: dimension {} exceeds the cap {MAX_DIM}",
            coords.len()
        )));
    }
    Ok(coords)
}

fn parse_f64(sub: &ArgMatches, key: &str, default: f64) -> Result<f64> {
    match sub.get_one::<String>(key) {
        None => Ok(default),
        Some(raw) => raw
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{key}: invalid float {raw:?}"))),
    }
}

fn parse_usize(sub: &ArgMatches, key: &str, default: usize) -> Result<usize> {
    match sub.get_one::<String>(key) {
        None => Ok(default),
        Some(raw) => raw
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{key}: invalid integer {raw:?}"))),
    }
}

fn parse_u64(sub: &ArgMatches, key: &str, default: u64) -> Result<u64> {
    match sub.get_one::<String>(key) {
        None => Ok(default),
        Some(raw) => raw
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{key}: invalid integer {raw:?}"))),
    }
}

/// JSON cone description accepted by `--cone <path>`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeSpecFile {
    preset: Option<String>,
    dimension: Option<usize>,
    alpha_degrees: Option<f64>,
    generators: Option<Vec<Vec<f64>>>,
}

fn cone_from_spec(spec: &ConeSpecFile) -> Result<Hyperangle> {
    match spec.preset.as_deref() {
        Some("orthant") => {
            let n = spec.dimension.ok_or_else(|| {
                Error::InvalidInput("dimension: required with preset \"orthant\"".into())
            })?;
            if n > MAX_DIM {
                return Err(Error::InvalidInput(format!(
                    "dimension: {n} exceeds the cap {MAX_DIM}"
                )));
            }
            Hyperangle::orthant(n)
        }
        Some("angle2d") => {
            let alpha = spec.alpha_degrees.ok_or_else(|| {
                Error::InvalidInput("alpha_degrees: required with preset \"angle2d\"".into())
            })?;
            Hyperangle::angle2d(alpha.to_radians())
        }
        Some(other) => Err(Error::InvalidInput(format!(
            "preset: unknown preset {other:?} (expected \"orthant\" or \"angle2d\")"
        ))),
        None => {
            let gens = spec.generators.as_ref().ok_or_else(|| {
                Error::InvalidInput("generators: required when no preset is given".into())
            })?;
            let n = spec.dimension.unwrap_or(gens.len());
            if n > MAX_DIM {
                return Err(Error::InvalidInput(format!(
                    "dimension: {n} exceeds the cap {MAX_DIM}"
                )));
            }
            if gens.len() != n {
                return Err(Error::InvalidInput(format!(
                    "generators: expected {n} vectors, got {}",
                    gens.len()
                )));
            }
            let mut columns = Vec::with_capacity(n);
            for (j, g) in gens.iter().enumerate() {
                if g.len() != n {
                    return Err(Error::InvalidInput(format!(
                        "generators[{j}]: expected {n} coordinates, got {}",
                        g.len()
                    )));
                }
                columns.push(Point::from_column_slice(g));
            }
            Hyperangle::new(columns)
        }
    }
}

/// Resolve the cone from --cone / --preset (+ --alpha); `point_dim` supplies
/// the dimension for the orthant preset.
fn load_cone(sub: &ArgMatches, point_dim: Option<usize>) -> Result<(Hyperangle, Value)> {
    if let Some(path) = sub.get_one::<String>("cone") {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cone: cannot read {path:?}: {e}")))?;
        let spec: ConeSpecFile = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("cone: invalid JSON in {path:?}: {e}")))?;
        let cone = cone_from_spec(&spec)?;
        return Ok((cone, json!({ "file": path })));
    }
    match sub.get_one::<String>("preset").map(String::as_str) {
        Some("orthant") => {
            let n = point_dim.ok_or_else(|| {
                Error::InvalidInput("preset: orthant needs --point for its dimension".into())
            })?;
            Ok((Hyperangle::orthant(n)?, json!({ "preset": "orthant", "dimension": n })))
        }
        Some("angle2d") => {
            let deg = parse_f64(sub, "alpha", f64::NAN)?;
            if !deg.is_finite() {
                return Err(Error::InvalidInput(
                    "alpha: required with --preset angle2d".into(),
                ));
            }
            Ok((
                Hyperangle::angle2d(deg.to_radians())?,
                json!({ "preset": "angle2d", "alpha_degrees": deg }),
            ))
        }
        Some(other) => Err(Error::InvalidInput(format!(
            "preset: unknown preset {other:?} (expected \"orthant\" or \"angle2d\")"
        ))),
        None => Err(Error::InvalidInput(
            "cone: either --cone <path> or --preset is required".into(),
        )),
    }
}

fn generators_json(cone: &Hyperangle) -> Value {
    let n = cone.dim();
    Value::Array(
        (0..n)
            .map(|j| envelope::vec_f64(cone.generator(j).as_slice()))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Shared result builders
// ---------------------------------------------------------------------------

fn stationary_point_json(
    cone: &Hyperangle,
    point: &solver::StationaryPoint,
) -> Result<Value> {
    let section = cone.section(&point.plane)?;
    Ok(obj(vec![
        ("plane_normal", envelope::vec_f64(point.plane.normal().as_slice())),
        ("intercepts", envelope::vec_f64(section.intercepts())),
        ("volume", num(point.volume)),
        ("distance", num(point.plane.distance_from_origin())),
        ("residual_norm", num(point.residual_norm)),
        ("kind", Value::String(point.kind.as_str().to_string())),
        (
            "hessian_eigenvalues",
            envelope::vec_f64(&point.hessian_eigenvalues),
        ),
    ]))
}

fn stationarity_report_json(report: &stationarity::StationarityReport) -> Value {
    obj(vec![
        ("residual_norm", num(report.residual_norm)),
        ("residual_vector", envelope::vec_f64(report.residual_vector.as_slice())),
        ("foot", envelope::vec_f64(report.foot.as_slice())),
        ("centroid", envelope::vec_f64(report.centroid.as_slice())),
        ("a_prime", envelope::vec_f64(report.a_prime.as_slice())),
        ("equal_distance_spread", num(report.equal_distance_spread)),
        (
            "monge_gap",
            report.monge_gap.map(num).unwrap_or(Value::Null),
        ),
        ("is_stationary", Value::Bool(report.is_stationary)),
    ])
}

// ---------------------------------------------------------------------------
// Plot data
// ---------------------------------------------------------------------------

fn push_series(csv: &mut String, name: &str, pts: &[Vec<f64>]) {
    for p in pts {
        let coords: Vec<String> = p.iter().map(|v| format!("{v:.17e}")).collect();
        csv.push_str(&format!("{name},{}\n", coords.join(",")));
    }
}

/// CSV polylines of the cone edges and the given sections; 2D and 3D only.
fn plot_sections(
    sub: &ArgMatches,
    cone: &Hyperangle,
    planes: &[&Hyperplane],
) -> Result<Option<(String, String)>> {
    let path = match sub.get_one::<String>("plot-data") {
        Some(p) => p.clone(),
        None => return Ok(None),
    };
    let n = cone.dim();
    if n > 3 {
        log::warn!("plot data is only emitted for dimensions 2 and 3");
        return Ok(None);
    }
    let mut csv = String::from(if n == 2 { "series,x,y\n" } else { "series,x,y,z\n" });
    let mut reach = 1.0f64;
    for plane in planes {
        if let Ok(s) = cone.section(plane) {
            for &x in s.intercepts() {
                reach = reach.max(1.5 * x);
            }
        }
    }
    for j in 0..n {
        let e = cone.generator(j);
        let tip: Vec<f64> = e.iter().map(|v| v * reach).collect();
        push_series(&mut csv, &format!("cone_edge_{j}"), &[vec![0.0; n], tip]);
    }
    for (k, plane) in planes.iter().enumerate() {
        if let Ok(s) = cone.section(plane) {
            let mut poly: Vec<Vec<f64>> = s
                .vertices()
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect();
            if n == 3 {
                poly.push(poly[0].clone()); // close the triangle
            }
            push_series(&mut csv, &format!("section_{k}"), &poly);
        }
    }
    Ok(Some((path, csv)))
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

type CmdOutput = Result<(Envelope, Option<(String, String)>)>;

fn cmd_orthant_solve(sub: &ArgMatches, started: Instant) -> CmdOutput {
    let point = parse_point(sub)?;
    let tol_stat = parse_f64(sub, "tol", tol::TOL_STAT)?;
    let (sol, iterations) = orthant::stationary_section_detail(&point)?;
    let cone = Hyperangle::orthant(point.len())?;
    let a = Point::from_column_slice(&point);
    let report = stationarity::residual(&cone, &a, &sol.plane, tol_stat)?;
    let f_residual = orthant::f_eval(&point, sol.lambda)?;
    let result = obj(vec![
        ("lambda", num(sol.lambda)),
        ("b_vec", envelope::vec_f64(&sol.b_vec)),
        ("intercepts", envelope::vec_f64(&sol.intercepts)),
        ("volume", num(sol.volume)),
        ("distance", num(sol.distance)),
        ("plane_normal", envelope::vec_f64(sol.plane.normal().as_slice())),
        ("stationarity", stationarity_report_json(&report)),
    ]);
    let plot = plot_sections(sub, &cone, &[&sol.plane])?;
    Ok((
        Envelope {
            version: crate::VERSION,
            command: "orthant-solve".into(),
            inputs: obj(vec![
                ("point", envelope::vec_f64(&point)),
                ("tol", num(tol_stat)),
            ]),
            result,
            diagnostics: diagnostics(
                iterations as u64,
                json!({
                    "f_at_lambda": num(f_residual),
                    "stationarity_residual": num(report.residual_norm),
                }),
                started.elapsed().as_secs_f64() * 1e3,
            ),
        },
        plot,
    ))
}

fn cmd_solve(sub: &ArgMatches, started: Instant) -> CmdOutput {
    let point = parse_point(sub)?;
    let (cone, cone_echo) = load_cone(sub, Some(point.len()))?;
    let tol_stat = parse_f64(sub, "tol", tol::TOL_STAT)?;
    let a = Point::from_column_slice(&point);
    let found = solver::minimize(&cone, &a, None, tol_stat)?;
    let result = stationary_point_json(&cone, &found)?;
    let plot = plot_sections(sub, &cone, &[&found.plane])?;
    Ok((
        Envelope {
            version: crate::VERSION,
            command: "solve".into(),
            inputs: obj(vec![
                ("point", envelope::vec_f64(&point)),
                ("cone", cone_echo),
                ("generators", generators_json(&cone)),
                ("tol", num(tol_stat)),
            ]),
            result,
            diagnostics: diagnostics(
                1,
                json!({ "stationarity_residual": num(found.residual_norm) }),
                started.elapsed().as_secs_f64() * 1e3,
            ),
        },
        plot,
    ))
}

fn cmd_enumerate(sub: &ArgMatches, started: Instant) -> CmdOutput {
    let point = parse_point(sub)?;
    let (cone, cone_echo) = load_cone(sub, Some(point.len()))?;
    let tol_stat = parse_f64(sub, "tol", tol::TOL_STAT)?;
    let starts = parse_usize(sub, "starts", solver::default_num_starts(cone.dim()))?;
    let seed = parse_u64(sub, "seed", 0)?;
    let a = Point::from_column_slice(&point);
    let points = solver::enumerate_stationary(&cone, &a, starts, seed, tol_stat);
    let mut entries = Vec::new();
    for p in &points {
        entries.push(stationary_point_json(&cone, p)?);
    }
    let worst = points.iter().map(|p| p.residual_norm).fold(0.0, f64::max);
    let planes: Vec<&Hyperplane> = points.iter().map(|p| &p.plane).collect();
    let plot = plot_sections(sub, &cone, &planes)?;
    Ok((
        Envelope {
            version: crate::VERSION,
            command: "enumerate".into(),
            inputs: obj(vec![
                ("point", envelope::vec_f64(&point)),
                ("cone", cone_echo),
                ("generators", generators_json(&cone)),
                ("tol", num(tol_stat)),
                ("starts", json!(starts)),
                ("seed", json!(seed)),
            ]),
            result: obj(vec![
                ("count", json!(points.len())),
                ("points", Value::Array(entries)),
            ]),
            diagnostics: diagnostics(
                starts as u64,
                json!({ "max_residual": num(worst) }),
                started.elapsed().as_secs_f64() * 1e3,
            ),
        },
        plot,
    ))
}

fn cmd_classify_cone(sub: &ArgMatches, started: Instant) -> CmdOutput {
    let point_dim = sub
        .get_one::<String>("point")
        .map(|_| parse_point(sub))
        .transpose()?
        .map(|p| p.len());
    let (cone, cone_echo) = load_cone(sub, point_dim)?;
    let k_in_kstar = cone.k_subset_kstar();
    let kstar_in_k = cone.kstar_subset_k();
    let mut entries = vec![
        ("dimension", json!(cone.dim())),
        ("k_subset_kstar", Value::Bool(k_in_kstar)),
        ("kstar_subset_k", Value::Bool(kstar_in_k)),
        ("self_dual", Value::Bool(k_in_kstar && kstar_in_k)),
    ];
    if cone.dim() == 3 {
        let mut angles = vec![];
        for i in 0..3 {
            for j in (i + 1)..3 {
                let d = cone.generator(i).dot(&cone.generator(j));
                angles.push(d.clamp(-1.0, 1.0).acos());
            }
        }
        angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let criterion =
            crate::geometry::trihedral_kstar_subset_k(angles[0], angles[1], angles[2])?;
        entries.push((
            "face_angles_degrees",
            envelope::vec_f64(&angles.iter().map(|a| a.to_degrees()).collect::<Vec<_>>()),
        ));
        entries.push(("trihedral_kstar_subset_k", Value::Bool(criterion)));
    }
    Ok((
        Envelope {
            version: crate::VERSION,
            command: "classify-cone".into(),
            inputs: obj(vec![
                ("cone", cone_echo),
                ("generators", generators_json(&cone)),
            ]),
            result: obj(entries),
            diagnostics: diagnostics(0, json!({}), started.elapsed().as_secs_f64() * 1e3),
        },
        None,
    ))
}

fn cmd_philon(sub: &ArgMatches, started: Instant) -> CmdOutput {
    let point = parse_point(sub)?;
    if point.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: point.len(),
        });
    }
    let deg = parse_f64(sub, "alpha", f64::NAN)?;
    if !deg.is_finite() {
        return Err(Error::InvalidInput("alpha: required flag --alpha is missing".into()));
    }
    let alpha = deg.to_radians();
    let tol_stat = parse_f64(sub, "tol", tol::TOL_STAT)?;
    let a = Point::from_column_slice(&point);
    let region = solver::philon2d_region(alpha, &a)?;
    let cone = Hyperangle::angle2d(alpha)?;
    let lines = oracle::residual_sign_sweep_2d(&cone, &a, SWEEP_ANGLES)?;
    let mut line_entries = Vec::new();
    for plane in &lines {
        let volume = solver::section_volume(&cone, plane)?;
        let report = stationarity::residual(&cone, &a, plane, tol_stat)?;
        let kind = solver::classify(&cone, &a, plane, tol_stat)
            .map(|(k, _)| k.as_str().to_string())
            .unwrap_or_else(|_| "degenerate".to_string());
        line_entries.push(obj(vec![
            ("plane_normal", envelope::vec_f64(plane.normal().as_slice())),
            ("length", num(volume)),
            ("residual_norm", num(report.residual_norm)),
            ("kind", Value::String(kind)),
        ]));
    }
    let planes: Vec<&Hyperplane> = lines.iter().collect();
    let plot = plot_sections(sub, &cone, &planes)?;
    Ok((
        Envelope {
            version: crate::VERSION,
            command: "philon".into(),
            inputs: obj(vec![
                ("point", envelope::vec_f64(&point)),
                ("alpha_degrees", num(deg)),
                ("tol", num(tol_stat)),
            ]),
            result: obj(vec![
                ("label", Value::String(region.label.as_str().to_string())),
                ("theta", num(region.theta)),
                ("theta_degrees", num(region.theta.to_degrees())),
                ("expected_count", json!(region.expected_count)),
                ("t_boundary_gap", num(region.t_boundary_gap)),
                ("count", json!(lines.len())),
                ("lines", Value::Array(line_entries)),
            ]),
            diagnostics: diagnostics(
                SWEEP_ANGLES as u64,
                json!({}),
                started.elapsed().as_secs_f64() * 1e3,
            ),
        },
        plot,
    ))
}

fn cmd_shortest_segment(sub: &ArgMatches, started: Instant) -> CmdOutput {
    let point = parse_point(sub)?;
    let length = orthant::shortest_segment(&point)?;
    let detail = orthant::line_count_detail(&point)?;
    Ok((
        Envelope {
            version: crate::VERSION,
            command: "shortest-segment".into(),
            inputs: obj(vec![("point", envelope::vec_f64(&point))]),
            result: obj(vec![
                ("length", num(length)),
                ("count", json!(detail.count)),
                ("extra_ties", Value::Bool(detail.extra_ties)),
            ]),
            diagnostics: diagnostics(0, json!({}), started.elapsed().as_secs_f64() * 1e3),
        },
        None,
    ))
}

fn cmd_boundary(sub: &ArgMatches, started: Instant) -> CmdOutput {
    let point = parse_point(sub)?;
    let (cone, cone_echo) = load_cone(sub, Some(point.len()))?;
    let a = Point::from_column_slice(&point);
    let report = solver::boundary_infimum(&cone, &a)?;
    Ok((
        Envelope {
            version: crate::VERSION,
            command: "boundary".into(),
            inputs: obj(vec![
                ("point", envelope::vec_f64(&point)),
                ("cone", cone_echo),
                ("generators", generators_json(&cone)),
            ]),
            result: obj(vec![
                ("m_a", num(report.m_a)),
                ("face_dimension", json!(report.face_dimension)),
                ("attained_numerically", Value::Bool(report.attained_numerically)),
                (
                    "facet_solution",
                    report
                        .facet_solution
                        .as_deref()
                        .map(envelope::vec_f64)
                        .unwrap_or(Value::Null),
                ),
                (
                    "facet_generators",
                    report
                        .facet_generators
                        .as_ref()
                        .map(|g| json!(g))
                        .unwrap_or(Value::Null),
                ),
                (
                    "centroid_identity_gap",
                    report.centroid_identity_gap.map(num).unwrap_or(Value::Null),
                ),
            ]),
            diagnostics: diagnostics(0, json!({}), started.elapsed().as_secs_f64() * 1e3),
        },
        None,
    ))
}

fn cmd_oracle(sub: &ArgMatches, started: Instant) -> CmdOutput {
    let point = parse_point(sub)?;
    let (cone, cone_echo) = load_cone(sub, Some(point.len()))?;
    let tol_stat = parse_f64(sub, "tol", tol::TOL_STAT)?;
    let mut spec = oracle::GridSpec::default();
    spec.levels = parse_usize(sub, "levels", spec.levels)?;
    let a = Point::from_column_slice(&point);
    let found = oracle::grid_refine_min(&cone, &a, &spec)?;
    let section = cone.section(&found.plane)?;
    let report = stationarity::residual(&cone, &a, &found.plane, tol_stat)?;
    let plot = plot_sections(sub, &cone, &[&found.plane])?;
    Ok((
        Envelope {
            version: crate::VERSION,
            command: "oracle".into(),
            inputs: obj(vec![
                ("point", envelope::vec_f64(&point)),
                ("cone", cone_echo),
                ("generators", generators_json(&cone)),
                ("tol", num(tol_stat)),
                ("levels", json!(spec.levels)),
            ]),
            result: obj(vec![
                ("plane_normal", envelope::vec_f64(found.plane.normal().as_slice())),
                ("intercepts", envelope::vec_f64(section.intercepts())),
                ("volume", num(found.volume)),
                ("distance", num(found.plane.distance_from_origin())),
                ("residual_norm", num(report.residual_norm)),
                ("kind", Value::Null),
                ("hessian_eigenvalues", Value::Null),
                ("evaluations", json!(found.evaluations)),
            ]),
            diagnostics: diagnostics(
                found.evaluations as u64,
                json!({ "stationarity_residual": num(report.residual_norm) }),
                started.elapsed().as_secs_f64() * 1e3,
            ),
        },
        plot,
    ))
}
