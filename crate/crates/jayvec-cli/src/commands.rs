//! Implementations of the CLI commands.

use jayvec::conics::{sample_points, write_csv_points, ConicKind, CsdPair};
use jayvec::dirvec::JayVector;
use jayvec::planewave::{
    build_solution, csd_pair_elliptic, csd_pair_hyperbolic, degenerate_direction, ruled_lines,
    section_form, OperatorClass, PdeOperator, SectionClass, SectionFrame, SolutionKind,
};
use jayvec::quadrics::{
    pseudo_rotation_generator, Axis, Ellipsoid, HyperboloidPair, PseudoRotation, Triad,
};
use jayvec::serde_util::{mat3_to_rows, vec3_to_array};
use jayvec::{tol, JayScalar, Mat3, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{JobConfig, SolveReport};
use crate::{CliError, GlobalOpts};

/// Agreement required between stored and recomputed residuals in `verify`.
const ROUND_TRIP_TOL: f64 = 1e-12;

/// Resolved numeric parameters with their documented defaults.
struct Resolved {
    t: f64,
    amp_plus: f64,
    amp_minus: f64,
    psi: f64,
    samples: usize,
    seed: u64,
}

fn resolve(cfg: &JobConfig, opts: &GlobalOpts) -> Resolved {
    let p = &cfg.params;
    Resolved {
        t: p.t.unwrap_or(1.0),
        amp_plus: p.amp_plus.unwrap_or(1.0),
        amp_minus: p.amp_minus.unwrap_or(0.0),
        psi: p.psi.unwrap_or(0.0),
        samples: p.samples.unwrap_or(100),
        seed: opts.seed.or(p.seed).unwrap_or(0),
    }
}

/// Deterministic residual sample points in the cube [-1,1]^3.
fn sample_cube(seed: u64, n: usize) -> Vec<Vec3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
        })
        .collect()
}

/// Classify the operator and flip its sign to the orientation the section
/// machinery expects: positive definite for elliptic, signature (+,+,-)
/// for hyperbolic, nonnegative trace for degenerate. The PDE is invariant
/// under the flip; the quadric `r.Mr = 1` is not.
fn normalized_operator(matrix: Mat3) -> Result<(PdeOperator, Mat3, f64), CliError> {
    let op = PdeOperator::new(matrix)?;
    let (normalized, sign) = match op.class() {
        OperatorClass::Elliptic | OperatorClass::Degenerate => {
            if matrix.trace() < 0.0 {
                (-matrix, -1.0)
            } else {
                (matrix, 1.0)
            }
        }
        OperatorClass::Hyperbolic => op.normalize_one_sheet()?,
    };
    if sign < 0.0 {
        eprintln!(
            "note: operator negated to its normalized orientation (the equation is unchanged)"
        );
    }
    Ok((op, normalized, sign))
}

fn require_frame(cfg: &JobConfig) -> Result<SectionFrame, CliError> {
    let (m, n) = cfg
        .frame_vectors()
        .ok_or_else(|| CliError::Config("this command needs a \"frame\" with m and n".into()))?;
    let frame = SectionFrame::from_span(m, n)?;
    let adjusted = (frame.m() - m).norm().max((frame.n() - n).norm());
    if adjusted > tol::FRAME {
        eprintln!("note: frame orthonormalized (adjustment {adjusted:.3e})");
    }
    Ok(frame)
}

fn section_tol(opts: &GlobalOpts) -> f64 {
    opts.tol.unwrap_or(tol::SECTION_DEGENERACY)
}

pub fn run_classify(cfg: &JobConfig, _opts: &GlobalOpts) -> Result<Value, CliError> {
    let matrix = cfg.require_matrix()?;
    let op = PdeOperator::new(matrix)?;
    let ev = op.eigenvalues();
    let mut report = json!({
        "class": op.class().as_str(),
        "eigenvalues": ev,
        "determinant": op.matrix().determinant(),
    });
    if op.class() == OperatorClass::Hyperbolic {
        let (_, sign) = op.normalize_one_sheet()?;
        report["one_sheet_sign"] = json!(sign);
    }
    eprintln!(
        "operator class: {} (eigenvalues {:.6e}, {:.6e}, {:.6e})",
        op.class().as_str(),
        ev[0],
        ev[1],
        ev[2]
    );
    Ok(report)
}

pub fn run_section(cfg: &JobConfig, opts: &GlobalOpts) -> Result<Value, CliError> {
    let matrix = cfg.require_matrix()?;
    let (op, normalized, sign) = normalized_operator(matrix)?;
    let frame = require_frame(cfg)?;
    let form = section_form(&normalized, &frame);
    let class = form.classify_with(section_tol(opts))?;
    eprintln!(
        "section class: {} (a={:.6e}, h={:.6e}, g={:.6e}, det={:.6e})",
        class.as_str(),
        form.a,
        form.h,
        form.g,
        form.det()
    );
    Ok(json!({
        "operator_class": op.class().as_str(),
        "sign": sign,
        "form": { "a": form.a, "h": form.h, "g": form.g },
        "det": form.det(),
        "class": class.as_str(),
        "frame": { "m": vec3_to_array(&frame.m()), "n": vec3_to_array(&frame.n()) },
    }))
}

pub fn run_solve(cfg: &JobConfig, opts: &GlobalOpts) -> Result<Value, CliError> {
    let matrix = cfg.require_matrix()?;
    let (op, normalized, sign) = normalized_operator(matrix)?;
    let frame = require_frame(cfg)?;
    let p = resolve(cfg, opts);

    let form = section_form(&normalized, &frame);
    let class = form.classify_with(tol::SECTION_DEGENERACY)?;
    let (kind, a, b) = match class {
        SectionClass::Ellipse => {
            let (a, b) = csd_pair_elliptic(&normalized, &frame, p.psi)?;
            (SolutionKind::EllipticBivector, a, b)
        }
        SectionClass::Hyperbola => {
            let (a, b) = csd_pair_hyperbolic(&normalized, &frame, p.psi)?;
            (SolutionKind::HyperbolicJay, a, b)
        }
        SectionClass::ParallelLines => {
            if p.amp_minus != 0.0 {
                eprintln!("note: amp_minus is ignored for a degenerate-line wave");
            }
            let d = degenerate_direction(&form, &frame)?;
            (SolutionKind::DegenerateLine, d, Vec3::zeros())
        }
    };
    let solution = build_solution(&normalized, kind, a, b, p.t, p.amp_plus, p.amp_minus)?;

    let points = sample_cube(p.seed, p.samples);
    let residual_analytic = solution.residual_analytic(&normalized, &points);
    let residual_fd = solution.residual_fd(&normalized, &points);
    let analytic_gate = opts.tol.unwrap_or(tol::RESIDUAL_ANALYTIC);
    if residual_analytic > analytic_gate || residual_fd > tol::RESIDUAL_FD {
        return Err(CliError::Check(format!(
            "solution residual out of tolerance: analytic {residual_analytic:.3e} (limit {analytic_gate:.1e}), \
             finite-difference {residual_fd:.3e} (limit {:.1e})",
            tol::RESIDUAL_FD
        )));
    }

    if opts.emit_points > 0 {
        let field_points = sample_cube(p.seed.wrapping_add(0x9e37_79b9), opts.emit_points);
        let mut rows = String::from("x,y,z,phi\n");
        for x in &field_points {
            rows.push_str(&format!("{},{},{},{}\n", x.x, x.y, x.z, solution.value(x)));
        }
        std::fs::write(&opts.points_file, rows)
            .map_err(|e| CliError::Config(format!("cannot write points file: {e}")))?;
        eprintln!(
            "wrote {} field samples to {}",
            opts.emit_points,
            opts.points_file.display()
        );
    }

    eprintln!(
        "built {:?} wave from a {} section; residuals: analytic {residual_analytic:.3e}, finite-difference {residual_fd:.3e}",
        kind,
        class.as_str()
    );
    let report = SolveReport {
        solution,
        residual_analytic,
        residual_fd,
        matrix: normalized,
        seed: p.seed,
        samples: p.samples,
        operator_class: op.class().as_str().to_string(),
        section_class: class.as_str().to_string(),
        sign,
    };
    serde_json::to_value(&report).map_err(|e| CliError::Config(format!("serialize: {e}")))
}

pub fn run_verify(text: &str, opts: &GlobalOpts) -> Result<Value, CliError> {
    let report: SolveReport = serde_json::from_str(text)
        .map_err(|e| CliError::Config(format!("malformed solution JSON: {e}")))?;
    let sol = &report.solution;
    // Rebuild through the validating constructor: any tampering with the
    // slowness vectors is caught here by name.
    let rebuilt = build_solution(
        &report.matrix,
        sol.kind,
        sol.a,
        sol.b,
        sol.t,
        sol.amp_plus,
        sol.amp_minus,
    )?;
    let points = sample_cube(report.seed, report.samples);
    let residual_analytic = rebuilt.residual_analytic(&report.matrix, &points);
    let residual_fd = rebuilt.residual_fd(&report.matrix, &points);
    let divergence = (residual_analytic - report.residual_analytic)
        .abs()
        .max((residual_fd - report.residual_fd).abs());
    let gate = opts.tol.unwrap_or(ROUND_TRIP_TOL);
    if divergence > gate {
        return Err(CliError::Check(format!(
            "stored residuals diverge from recomputation by {divergence:.3e} (limit {gate:.1e})"
        )));
    }
    if residual_analytic > tol::RESIDUAL_ANALYTIC || residual_fd > tol::RESIDUAL_FD {
        return Err(CliError::Check(format!(
            "recomputed residuals out of tolerance: analytic {residual_analytic:.3e}, \
             finite-difference {residual_fd:.3e}"
        )));
    }
    eprintln!(
        "verified: residuals reproduce within {divergence:.3e} (analytic {residual_analytic:.3e}, finite-difference {residual_fd:.3e})"
    );
    Ok(json!({
        "ok": true,
        "kind": sol.kind,
        "residual_analytic": residual_analytic,
        "residual_fd": residual_fd,
        "stored_residual_analytic": report.residual_analytic,
        "stored_residual_fd": report.residual_fd,
        "max_divergence": divergence,
    }))
}

pub fn run_csd(cfg: &JobConfig, opts: &GlobalOpts) -> Result<Value, CliError> {
    let matrix = cfg.require_matrix()?;
    let (op, normalized, sign) = normalized_operator(matrix)?;
    if cfg.frame.is_some() {
        csd_section_pair(cfg, opts, &op, &normalized, sign)
    } else {
        csd_triad(cfg, opts, &op, &normalized, sign)
    }
}

fn quadratic_checks(m: &Mat3, vs: &[(&str, Vec3)]) -> Value {
    let mut out = serde_json::Map::new();
    for (i, (ni, vi)) in vs.iter().enumerate() {
        for (nj, vj) in vs.iter().skip(i) {
            out.insert(format!("{ni}_m_{nj}"), json!(vi.dot(&(m * vj))));
        }
    }
    Value::Object(out)
}

fn csd_section_pair(
    cfg: &JobConfig,
    opts: &GlobalOpts,
    op: &PdeOperator,
    normalized: &Mat3,
    sign: f64,
) -> Result<Value, CliError> {
    let frame = require_frame(cfg)?;
    let p = resolve(cfg, opts);
    let form = section_form(normalized, &frame);
    let class = form.classify_with(section_tol(opts))?;
    let mut report = json!({
        "mode": "section_pair",
        "operator_class": op.class().as_str(),
        "section_class": class.as_str(),
        "sign": sign,
    });
    match class {
        SectionClass::Ellipse => {
            let (a, b) = csd_pair_elliptic(normalized, &frame, p.psi)?;
            report["a"] = json!(vec3_to_array(&a));
            report["b"] = json!(vec3_to_array(&b));
            report["checks"] = quadratic_checks(normalized, &[("a", a), ("b", b)]);
            emit_conic_points(opts, a, b, ConicKind::Ellipse)?;
            eprintln!("elliptic section CSD pair at psi={}", p.psi);
        }
        SectionClass::Hyperbola => {
            let (a, b) = csd_pair_hyperbolic(normalized, &frame, p.psi)?;
            report["a"] = json!(vec3_to_array(&a));
            report["b"] = json!(vec3_to_array(&b));
            report["checks"] = quadratic_checks(normalized, &[("a", a), ("b", b)]);
            emit_conic_points(opts, a, b, ConicKind::Hyperbola)?;
            eprintln!("hyperbolic section CSD pair at psi={}", p.psi);
        }
        SectionClass::ParallelLines => {
            let d = degenerate_direction(&form, &frame)?;
            report["d"] = json!(vec3_to_array(&d));
            report["checks"] = quadratic_checks(normalized, &[("d", d)]);
            if opts.emit_points > 0 {
                eprintln!("note: --emit-points is not supported for a degenerate section");
            }
            eprintln!("degenerate section: single characteristic direction");
        }
    }
    Ok(report)
}

fn emit_conic_points(opts: &GlobalOpts, a: Vec3, b: Vec3, kind: ConicKind) -> Result<(), CliError> {
    if opts.emit_points == 0 {
        return Ok(());
    }
    let pair = CsdPair::new(a, b)?;
    let mut points = sample_points(&pair, kind, opts.emit_points);
    if kind == ConicKind::Hyperbola {
        // Also trace the conjugate so the plot shows the full pair.
        points.extend(sample_points(
            &pair,
            ConicKind::ConjugateHyperbola,
            opts.emit_points,
        ));
    }
    let mut out = Vec::new();
    write_csv_points(&points, &mut out)
        .map_err(|e| CliError::Config(format!("cannot render points: {e}")))?;
    std::fs::write(&opts.points_file, out)
        .map_err(|e| CliError::Config(format!("cannot write points file: {e}")))?;
    eprintln!("wrote conic samples to {}", opts.points_file.display());
    Ok(())
}

fn rotation_from(params: Option<[f64; 3]>) -> Mat3 {
    let [r, p, y] = params.unwrap_or([0.0, 0.0, 0.0]);
    *nalgebra::Rotation3::from_euler_angles(r, p, y).matrix()
}

fn parse_axis(name: &str) -> Result<Axis, CliError> {
    match name.to_ascii_lowercase().as_str() {
        "x" | "1" => Ok(Axis::X),
        "y" | "2" => Ok(Axis::Y),
        "z" | "3" => Ok(Axis::Z),
        other => Err(CliError::Config(format!(
            "unknown generator axis {other:?} (expected x, y, or z)"
        ))),
    }
}

fn pseudo_word(cfg: &JobConfig) -> Result<PseudoRotation, CliError> {
    let mut q = PseudoRotation::identity();
    if let Some(steps) = &cfg.params.boosts {
        for step in steps {
            q = q * pseudo_rotation_generator(parse_axis(&step.axis)?, step.theta)?;
        }
    }
    Ok(q)
}

fn triad_json(t: &Triad) -> Value {
    json!({
        "a": vec3_to_array(&t.a()),
        "b": vec3_to_array(&t.b()),
        "c": vec3_to_array(&t.c()),
        "delta": t.delta(),
    })
}

fn csd_triad(
    cfg: &JobConfig,
    opts: &GlobalOpts,
    op: &PdeOperator,
    normalized: &Mat3,
    sign: f64,
) -> Result<Value, CliError> {
    match op.class() {
        OperatorClass::Elliptic => {
            let ellipsoid = Ellipsoid::new(*normalized)?;
            let rot = rotation_from(cfg.params.rotation);
            let triad = ellipsoid.csd_triad(&rot)?;
            if opts.emit_points > 0 {
                emit_surface_points(opts, &triad, false)?;
            }
            eprintln!("ellipsoid CSD triad (delta = {:.6e})", triad.delta());
            Ok(json!({
                "mode": "triad",
                "operator_class": "elliptic",
                "sign": sign,
                "surface": "ellipsoid",
                "triad": triad_json(&triad),
                "checks": quadratic_checks(
                    normalized,
                    &[("a", triad.a()), ("b", triad.b()), ("c", triad.c())],
                ),
            }))
        }
        OperatorClass::Hyperbolic => {
            // r.Mr = 1 is the one-sheet surface for the normalized M, so
            // -M carries the (-,-,+) pair orientation.
            let pair = HyperboloidPair::new(-normalized)?;
            let q = pseudo_word(cfg)?;
            let triad = pair.csd_triad(&q);
            if opts.emit_points > 0 {
                emit_surface_points(opts, &triad, true)?;
            }
            eprintln!("hyperboloid CSD triad (delta = {:.6e})", triad.delta());
            Ok(json!({
                "mode": "triad",
                "operator_class": "hyperbolic",
                "sign": sign,
                "surface": "hyperboloid_pair",
                "triad": triad_json(&triad),
                "checks": quadratic_checks(
                    pair.matrix(),
                    &[("a", triad.a()), ("b", triad.b()), ("c", triad.c())],
                ),
            }))
        }
        OperatorClass::Degenerate => Err(CliError::Math(jayvec::Error::WrongClass {
            expected: "nonsingular operator for CSD triads",
            found: "degenerate operator".into(),
        })),
    }
}

fn emit_surface_points(
    opts: &GlobalOpts,
    triad: &Triad,
    hyperboloid: bool,
) -> Result<(), CliError> {
    let n = opts.emit_points;
    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    let mut points = Vec::with_capacity(2 * n);
    for i in 0..n {
        let phi = golden * i as f64;
        if hyperboloid {
            let theta = -1.5 + 3.0 * (i as f64 + 0.5) / n as f64;
            points.push(triad.one_sheet_point(phi, theta));
            points.push(triad.two_sheet_point(
                if i % 2 == 0 {
                    jayvec::conics::Branch::Plus
                } else {
                    jayvec::conics::Branch::Minus
                },
                phi,
                theta,
            ));
        } else {
            let theta = ((1.0 - 2.0 * (i as f64 + 0.5) / n as f64).clamp(-1.0, 1.0)).acos();
            points.push(triad.ellipsoid_point(phi, theta));
        }
    }
    let mut out = Vec::new();
    write_csv_points(&points, &mut out)
        .map_err(|e| CliError::Config(format!("cannot render points: {e}")))?;
    std::fs::write(&opts.points_file, out)
        .map_err(|e| CliError::Config(format!("cannot write points file: {e}")))?;
    eprintln!("wrote surface samples to {}", opts.points_file.display());
    Ok(())
}

pub fn run_demo() -> Result<Value, CliError> {
    // Orthogonal jay-vectors on non-orthogonal planes: A = x + 7j z is
    // normal to y, B = (1+j)(7x - z) + mu y is not, yet A.B = 0 for every
    // real mu.
    let a = JayVector::new(Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 0.0, 7.0));
    let base = JayVector::new(Vec3::new(7.0, 0.0, -1.0), Vec3::zeros());
    let one_plus_j = JayScalar::new(1.0, 1.0);
    let mut dots = Vec::new();
    for mu in [0.0, 1.5, -2.25] {
        let b = one_plus_j * base + JayVector::new(Vec3::new(0.0, mu, 0.0), Vec3::zeros());
        let d = a.dot(&b);
        dots.push(json!({ "mu": mu, "dot": { "re": d.re, "jay": d.jay } }));
    }

    // Straight lines lying entirely on a one-sheet hyperboloid.
    let (semi_a, semi_b, semi_c, alpha) = (2.0, 3.0, 1.0, std::f64::consts::FRAC_PI_4);
    let (line_plus, line_minus) = ruled_lines(semi_a, semi_b, semi_c, alpha)?;
    let h = Mat3::from_diagonal(&Vec3::new(
        -1.0 / (semi_a * semi_a),
        -1.0 / (semi_b * semi_b),
        1.0 / (semi_c * semi_c),
    ));
    let mut worst = 0.0_f64;
    for k in 0..41 {
        let t = -2.0 + 0.1 * k as f64;
        for line in [&line_plus, &line_minus] {
            let r = line.at(t);
            worst = worst.max((r.dot(&(h * r)) + 1.0).abs());
        }
    }

    // One hyperbolic operator, three section classes.
    let m = Mat3::from_diagonal(&Vec3::new(1.0, 1.0, -1.0));
    let s = 0.5_f64.sqrt();
    let frames = [
        ("xy", SectionFrame::new(Vec3::x(), Vec3::y())),
        ("xz", SectionFrame::new(Vec3::x(), Vec3::z())),
        (
            "x,45deg",
            SectionFrame::new(Vec3::x(), Vec3::new(0.0, s, s)),
        ),
    ];
    let mut sections = Vec::new();
    for (name, frame) in frames {
        let frame = frame?;
        let form = section_form(&m, &frame);
        let class = form.classify()?;
        sections.push(json!({
            "frame": name,
            "form": { "a": form.a, "h": form.h, "g": form.g },
            "class": class.as_str(),
        }));
    }

    eprintln!(
        "demo: jay-vector orthogonality, ruled lines (residual {worst:.3e}), section classes"
    );
    Ok(json!({
        "orthogonal_jay_vectors": {
            "a": { "re": [1.0, 0.0, 0.0], "jay": [0.0, 0.0, 7.0] },
            "b": "(1+j)(7x - z) + mu y",
            "dots": dots,
        },
        "ruled_lines": {
            "semi_axes": [semi_a, semi_b, semi_c],
            "alpha": alpha,
            "line_plus": line_plus,
            "line_minus": line_minus,
            "max_membership_residual": worst,
        },
        "sections": {
            "matrix": mat3_to_rows(&m),
            "cases": sections,
        },
    }))
}
