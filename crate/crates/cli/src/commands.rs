use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use slosh_iso::inequalities::format_value;
use slosh_iso::troesch::TROESCH_EQUALITY_TOL;
use slosh_iso::{
    angular_frequency, assemble, build_shape, estimate_mu1, evaluate, neumann_eigs, radial_slosh_eigs, slosh_eig,
    sweep_family, triangulate, troesch_bound, write_csv, Error, InequalityKind, InequalityReport, PhysicalContext,
    Profile, RadialBasin, ShapeFamily,
};

use crate::args::{BasinKind, CheckArgs, EigArgs, FamilyKind, Format, MeshArgs, SloshArgs, SweepArgs, TroeschArgs};
use crate::input::{parse_shapes, read_text, NamedShape};
use crate::{emit, CliError, Finished, SCHEMA_VERSION};

#[derive(Debug, Serialize)]
struct Failure {
    shape_id: String,
    code: String,
    message: String,
}

type Split<T> = (Vec<(String, T)>, Vec<Failure>);

/// Splits per-shape outcomes into successes and numerical failures. Any
/// other error aborts the command.
fn partition<T>(outcomes: Vec<(String, Result<T, Error>)>) -> Result<Split<T>, CliError> {
    let mut ok = Vec::new();
    let mut failed = Vec::new();
    for (id, outcome) in outcomes {
        match outcome {
            Ok(v) => ok.push((id, v)),
            Err(e) if e.is_numerical() => failed.push(Failure {
                shape_id: id,
                code: e.code().into(),
                message: e.to_string(),
            }),
            Err(e) => return Err(CliError::Core(e)),
        }
    }
    Ok((ok, failed))
}

fn note_failures(failures: &[Failure]) {
    for f in failures {
        eprintln!("error[{}]: {}: {}", f.code, f.shape_id, f.message);
    }
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

fn json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn load_shapes(path: &Path) -> Result<Vec<NamedShape>, CliError> {
    parse_shapes(&read_text(path)?)
}

fn require_extrapolation_level(level: u8) -> Result<usize, CliError> {
    if level < 2 {
        return Err(CliError::Usage(format!(
            "--level must be at least 2 to extrapolate over three meshes, got {level}"
        )));
    }
    Ok(level as usize)
}

fn file_safe(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "._-".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

struct EigOutcome {
    nodes: usize,
    triangles: usize,
    spectrum: slosh_iso::Spectrum,
}

/// Writes `PREFIX_<id>_K.txt` and `PREFIX_<id>_M.txt` for each shape.
fn dump_matrices(shapes: &[NamedShape], level: usize, prefix: &Path) -> Result<(), CliError> {
    for shape in shapes {
        let (k, m) = assemble(&triangulate(&build_shape::<f64>(&shape.spec)?, level))?;
        let base = format!("{}_{}", prefix.display(), file_safe(&shape.id));
        for (suffix, mat) in [("K", &k), ("M", &m)] {
            let path = PathBuf::from(format!("{base}_{suffix}.txt"));
            std::fs::write(&path, mat.to_coordinate_text())
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(())
}

fn solve_shape(shape: &NamedShape, level: usize, modes: usize, seed: u64) -> Result<EigOutcome, Error> {
    let built = build_shape::<f64>(&shape.spec)?;
    let mesh = triangulate(&built, level);
    let (k, m) = assemble(&mesh)?;
    let spectrum = neumann_eigs(&k, &m, modes, seed)?;
    Ok(EigOutcome {
        nodes: mesh.num_nodes(),
        triangles: mesh.triangles.len(),
        spectrum,
    })
}

pub fn eig(a: &EigArgs) -> Result<Finished, CliError> {
    let shapes = load_shapes(&a.input.shape)?;
    let level = a.input.level as usize;
    if let Some(prefix) = &a.dump_matrices {
        dump_matrices(&shapes, level, prefix)?;
    }
    let outcomes: Vec<_> = shapes
        .par_iter()
        .map(|s| (s.id.clone(), solve_shape(s, level, a.modes as usize, a.input.seed)))
        .collect();
    let (ok, failures) = partition(outcomes)?;
    let text = match a.output.format {
        Format::Csv => {
            note_failures(&failures);
            let rows = ok.iter().flat_map(|(id, r)| {
                r.spectrum
                    .values
                    .iter()
                    .zip(&r.spectrum.residuals)
                    .enumerate()
                    .map(move |(i, (mu, res))| {
                        vec![
                            id.clone(),
                            level.to_string(),
                            r.nodes.to_string(),
                            (i + 1).to_string(),
                            format_value(*mu),
                            format_value(*res),
                        ]
                    })
            });
            csv_table(&["shape_id", "level", "nodes", "mode", "mu", "residual"], rows)
        }
        Format::Json => {
            let results: Vec<_> = ok
                .iter()
                .map(|(id, r)| {
                    json!({
                        "shape_id": id,
                        "nodes": r.nodes,
                        "triangles": r.triangles,
                        "values": r.spectrum.values,
                        "residuals": r.spectrum.residuals,
                        "iterations": r.spectrum.iterations,
                    })
                })
                .collect();
            json_text(&json!({
                "schema": SCHEMA_VERSION,
                "command": "eig",
                "level": level,
                "modes": a.modes,
                "seed": a.input.seed,
                "results": results,
                "failures": failures,
            }))
        }
    };
    emit(a.output.output.as_deref(), &text)?;
    Ok(Finished {
        failures: failures.len(),
    })
}

pub fn slosh(a: &SloshArgs) -> Result<Finished, CliError> {
    let shapes = load_shapes(&a.input.shape)?;
    let level = a.input.level as usize;
    let ctx = PhysicalContext::new(a.g)?;
    let outcomes: Vec<_> = shapes
        .par_iter()
        .map(|s| {
            let res = solve_shape(s, level, a.modes as usize, a.input.seed).and_then(|r| {
                r.spectrum
                    .values
                    .iter()
                    .map(|&mu| {
                        let nu = slosh_eig(mu, a.depth)?;
                        Ok((mu, nu, angular_frequency(nu, &ctx)?))
                    })
                    .collect::<Result<Vec<_>, Error>>()
            });
            (s.id.clone(), res)
        })
        .collect();
    let (ok, failures) = partition(outcomes)?;
    let depth = a.depth.to_string();
    let text = match a.output.format {
        Format::Csv => {
            note_failures(&failures);
            let rows = ok.iter().flat_map(|(id, modes)| {
                let depth = depth.clone();
                modes.iter().enumerate().map(move |(i, (mu, nu, omega))| {
                    vec![
                        id.clone(),
                        depth.clone(),
                        (i + 1).to_string(),
                        format_value(*mu),
                        format_value(*nu),
                        format_value(*omega),
                    ]
                })
            });
            csv_table(&["shape_id", "depth", "mode", "mu", "nu", "omega"], rows)
        }
        Format::Json => {
            let results: Vec<_> = ok
                .iter()
                .map(|(id, modes)| {
                    json!({
                        "shape_id": id,
                        "mu": modes.iter().map(|m| m.0).collect::<Vec<_>>(),
                        "nu": modes.iter().map(|m| m.1).collect::<Vec<_>>(),
                        "omega": modes.iter().map(|m| m.2).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json_text(&json!({
                "schema": SCHEMA_VERSION,
                "command": "slosh",
                "level": level,
                "depth": depth,
                "g": a.g,
                "seed": a.input.seed,
                "results": results,
                "failures": failures,
            }))
        }
    };
    emit(a.output.output.as_deref(), &text)?;
    Ok(Finished {
        failures: failures.len(),
    })
}

fn verdict_lines(r: &InequalityReport) -> String {
    let mut out = String::new();
    for kind in InequalityKind::ALL {
        let rec = r.record(kind);
        out.push_str(&format!(
            "{} {} {} value={} bound={} margin={}\n",
            r.shape_id,
            kind.name(),
            rec.verdict(),
            format_value(rec.value),
            format_value(rec.bound),
            format_value(rec.margin),
        ));
    }
    out
}

pub fn check(a: &CheckArgs) -> Result<Finished, CliError> {
    let shapes = load_shapes(&a.input.shape)?;
    let level = require_extrapolation_level(a.input.level)?;
    let outcomes: Vec<_> = shapes
        .par_iter()
        .map(|s| {
            let res = build_shape::<f64>(&s.spec).and_then(|shape| {
                let est = estimate_mu1(&shape, level, a.input.seed)?;
                evaluate(&s.id, &shape, est.mu1, est.error_gauge, a.depth)
            });
            (s.id.clone(), res)
        })
        .collect();
    let (ok, failures) = partition(outcomes)?;
    note_failures(&failures);
    let reports: Vec<InequalityReport> = ok.into_iter().map(|(_, r)| r).collect();
    let lines: String = reports.iter().map(verdict_lines).collect();
    emit(None, &lines)?;
    if let Some(path) = &a.output {
        let text = match a.format {
            Format::Csv => write_csv(&reports),
            Format::Json => json_text(&json!({
                "schema": SCHEMA_VERSION,
                "command": "check",
                "level": level,
                "depth": a.depth.to_string(),
                "seed": a.input.seed,
                "reports": reports,
                "failures": failures,
            })),
        };
        emit(Some(path), &text)?;
    }
    Ok(Finished {
        failures: failures.len(),
    })
}

fn family(a: &SweepArgs) -> Result<ShapeFamily, CliError> {
    Ok(match a.family {
        FamilyKind::Rectangles => ShapeFamily::Rectangles {
            aspects: a.params.clone(),
        },
        FamilyKind::Ellipses => ShapeFamily::Ellipses {
            ratios: a.params.clone(),
            boundary_points: a.boundary_points,
        },
        FamilyKind::RegularPolygons => ShapeFamily::RegularPolygons {
            sides: a
                .params
                .iter()
                .map(|&p| {
                    if p.fract() == 0.0 && (3.0..=1e6).contains(&p) {
                        Ok(p as usize)
                    } else {
                        Err(CliError::Usage(format!(
                            "regular polygon side counts must be integers >= 3, got {p}"
                        )))
                    }
                })
                .collect::<Result<_, _>>()?,
        },
    })
}

pub fn sweep(a: &SweepArgs) -> Result<Finished, CliError> {
    let level = require_extrapolation_level(a.level)?;
    let fam = family(a)?;
    for (_, spec) in fam.members() {
        spec.validate()?;
    }
    let table = sweep_family::<f64>(&fam, a.depth, level, a.seed);
    let failures: Vec<Failure> = table
        .rows
        .iter()
        .filter_map(|row| {
            let msg = row.outcome.as_ref().err()?;
            let (code, message) = msg.split_once(": ").unwrap_or(("error", msg.as_str()));
            Some(Failure {
                shape_id: row.shape_id.clone(),
                code: code.into(),
                message: message.into(),
            })
        })
        .collect();
    note_failures(&failures);
    let text = match a.output.format {
        Format::Csv => write_csv(table.reports()),
        Format::Json => {
            let rows: Vec<_> = table
                .rows
                .iter()
                .filter_map(|row| {
                    let report = row.outcome.as_ref().ok()?;
                    Some(json!({ "parameter": row.parameter, "shape_id": row.shape_id, "report": report }))
                })
                .collect();
            json_text(&json!({
                "schema": SCHEMA_VERSION,
                "command": "sweep",
                "family": table.family,
                "level": level,
                "depth": a.depth.to_string(),
                "seed": a.seed,
                "rows": rows,
                "argmax": table.argmax,
                "failures": failures,
            }))
        }
    };
    emit(a.output.output.as_deref(), &text)?;
    let summary: String = table
        .argmax
        .iter()
        .map(|m| {
            format!(
                "argmax {}: {} (parameter {}) value {}\n",
                m.name.name(),
                m.shape_id,
                m.parameter,
                format_value(m.value)
            )
        })
        .collect();
    if a.output.output.is_some() {
        emit(None, &summary)?;
    } else {
        eprint!("{summary}");
    }
    Ok(Finished {
        failures: failures.len(),
    })
}

fn basin(a: &TroeschArgs) -> Result<RadialBasin, CliError> {
    if let Some(path) = &a.profile {
        if a.nu.is_some() || a.h0.is_some() {
            return Err(CliError::Usage(
                "--nu and --h0 apply to built-in basins, not --profile".into(),
            ));
        }
        return Ok(RadialBasin::from_table(&read_text(path)?)?);
    }
    let kind = a
        .basin
        .ok_or_else(|| CliError::Usage("one of --basin or --profile is required".into()))?;
    if a.nu.is_some() && kind != BasinKind::Parabolic {
        return Err(CliError::Usage("--nu applies only to --basin parabolic".into()));
    }
    let h0 = a.h0.unwrap_or(1.0);
    Ok(match kind {
        BasinKind::Parabolic => match a.nu {
            Some(nu) => slosh_iso::parabolic_basin(nu, a.r0)?,
            None => RadialBasin::new(a.r0, Profile::Parabolic { h0 })?,
        },
        BasinKind::Conical => RadialBasin::new(a.r0, Profile::Conical { h0 })?,
        BasinKind::Flat => RadialBasin::new(a.r0, Profile::Flat { h0 })?,
        BasinKind::Quartic => RadialBasin::new(a.r0, Profile::Quartic { h0 })?,
    })
}

pub fn troesch(a: &TroeschArgs) -> Result<Finished, CliError> {
    let b = basin(a)?;
    let spectrum = radial_slosh_eigs(&b, a.m, a.n, a.modes as usize)?;
    let nu1 = spectrum.values[0];
    let bound = troesch_bound(&b);
    let ratio = nu1 / bound;
    let equality = (ratio - 1.0).abs() < TROESCH_EQUALITY_TOL;
    let in_regime = b.vanishes_at_rim();
    let text = match a.output.format {
        Format::Csv => csv_table(
            &[
                "basin",
                "r0",
                "n",
                "m",
                "nu1",
                "bound",
                "ratio",
                "equality",
                "in_regime",
            ],
            [vec![
                b.kind_name().to_string(),
                format_value(b.r0),
                a.n.to_string(),
                a.m.to_string(),
                format_value(nu1),
                format_value(bound),
                format_value(ratio),
                equality.to_string(),
                in_regime.to_string(),
            ]],
        ),
        Format::Json => json_text(&json!({
            "schema": SCHEMA_VERSION,
            "command": "troesch",
            "basin": b.kind_name(),
            "r0": b.r0,
            "n": a.n,
            "m": a.m,
            "nu1": nu1,
            "bound": bound,
            "ratio": ratio,
            "equality": equality,
            "in_regime": in_regime,
            "values": spectrum.values,
        })),
    };
    emit(a.output.output.as_deref(), &text)?;
    Ok(Finished { failures: 0 })
}

pub fn mesh(a: &MeshArgs) -> Result<Finished, CliError> {
    let shapes = load_shapes(&a.input.shape)?;
    let [shape] = shapes.as_slice() else {
        return Err(CliError::Usage(format!(
            "mesh takes exactly one shape, the file has {}",
            shapes.len()
        )));
    };
    let built = build_shape::<f64>(&shape.spec)?;
    emit(
        a.output.as_deref(),
        &triangulate(&built, a.input.level as usize).to_text(),
    )?;
    Ok(Finished { failures: 0 })
}
