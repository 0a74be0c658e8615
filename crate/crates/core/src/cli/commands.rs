//! The four subcommands, each turning a [`RunConfig`] into a [`Report`].

use rayon::prelude::*;

use crate::contour::{big_arc_decay, default_rho_grid, rho_sweep};
use crate::error::Error;
use crate::kramers_kronig::{kk, Relation};
use crate::response::{PoleClass, ResponseModel, Status};

use super::config::{RunConfig, Units};
use super::output::{Cell, Record, Report};
use super::CliError;

/// Largest parity defect accepted by `eval --check`, relative to `max(|ε|, 1)`.
const PARITY_TOLERANCE: f64 = 1e-14;

/// Largest `|Im ε(iξ)| / |Re ε(iξ)|` accepted by `imag-axis --check`.
const IMAGINARY_AXIS_REALNESS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Kk,
    ImagAxis,
    Contour,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Kk => "kk",
            Command::ImagAxis => "imag-axis",
            Command::Contour => "contour",
        }
    }
}

pub fn execute(command: Command, config: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::Eval => cmd_eval(config),
        Command::Kk => cmd_kk(config, &config.kk.relations),
        Command::ImagAxis => cmd_kk(config, &[Relation::ImagAxis]),
        Command::Contour => cmd_contour(config),
    }
}

/// One model instance per wave vector; a single instance (and no `k`) for
/// models without one.
struct Instance {
    k: Option<f64>,
    model: ResponseModel,
    /// Grid unit in natural frequency units: `b` for graphene, 1 otherwise.
    scale: f64,
}

fn instances(config: &RunConfig) -> Result<Vec<Instance>, CliError> {
    let ks = config.wave_vectors()?;
    if ks.is_empty() {
        return Ok(vec![Instance {
            k: None,
            model: config.response_model(1.0)?,
            scale: 1.0,
        }]);
    }
    ks.into_iter()
        .map(|k| {
            let model = config.response_model(k)?;
            let scale = model.branch_frequency().unwrap_or(1.0);
            Ok(Instance {
                k: Some(k),
                model,
                scale,
            })
        })
        .collect()
}

fn axis(config: &RunConfig, name: &str) -> Result<Option<Vec<f64>>, CliError> {
    let axis = match name {
        "omega" => &config.grid.omega,
        _ => &config.grid.xi,
    };
    axis.as_ref().map(|a| a.points(name)).transpose()
}

fn status_text(status: Status) -> Cell {
    Cell::Text(status.as_str().into())
}

fn pass_text(passed: bool) -> Cell {
    Cell::Text(if passed { "pass" } else { "fail" }.into())
}

fn leading_columns(graphene: bool, grid_name: &'static str) -> Vec<&'static str> {
    if graphene {
        vec!["k", grid_name, "omega"]
    } else {
        vec!["omega"]
    }
}

fn leading_cells(inst: &Instance, x: f64, units: &Units) -> Vec<Cell> {
    let omega = Cell::Num(x * inst.scale * units.frequency);
    match inst.k {
        Some(k) => vec![Cell::Num(k), Cell::Num(x), omega],
        None => vec![omega],
    }
}

fn cmd_eval(config: &RunConfig) -> Result<Report, CliError> {
    let units = config.units();
    let insts = instances(config)?;
    let graphene = config.model.is_graphene();
    let real = axis(config, "omega")?;
    let imaginary = axis(config, "xi")?;
    if real.is_none() && imaginary.is_none() {
        return Err(CliError::Config(
            "eval needs `grid.omega` or `grid.xi`".into(),
        ));
    }

    let mut columns = vec!["axis"];
    columns.extend(leading_columns(graphene, "omega_over_b"));
    columns.extend(["re_eps", "im_eps", "status"]);

    let mut jobs = Vec::new();
    for (i, _) in insts.iter().enumerate() {
        for &x in real.iter().flatten() {
            jobs.push((i, false, x));
        }
        for &x in imaginary.iter().flatten() {
            jobs.push((i, true, x));
        }
    }
    let rows: Vec<(Vec<Cell>, Status, f64)> = jobs
        .par_iter()
        .map(|&(i, imag, x)| {
            let inst = &insts[i];
            let w = x * inst.scale;
            let (value, parity) = if imag {
                let v = inst
                    .model
                    .eval_imaginary_axis(w)
                    .map_err(CliError::Numerical)?;
                (v, 0.0)
            } else {
                let v = inst.model.eval_real(w);
                let parity = match inst.model.parity_defect(w) {
                    Ok((re, im)) => re.max(im) / v.value.norm().max(1.0),
                    Err(_) => 0.0,
                };
                (v, parity)
            };
            let mut row = vec![Cell::Text(if imag { "imaginary" } else { "real" }.into())];
            row.extend(leading_cells(inst, x, &units));
            if value.is_regular() {
                row.push(Cell::Num(value.value.re));
                row.push(Cell::Num(value.value.im));
            } else {
                row.push(Cell::Flag(value.status.as_str()));
                row.push(Cell::Flag(value.status.as_str()));
            }
            row.push(status_text(value.status));
            Ok((row, value.status, parity))
        })
        .collect::<Result<_, CliError>>()?;

    let singular = rows.iter().filter(|r| r.1 != Status::Regular).count();
    let max_parity = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let passed = max_parity <= PARITY_TOLERANCE;
    let mut summary = Record::default();
    summary
        .push("rows", Cell::Int(rows.len()))
        .push("singular", Cell::Int(singular))
        .push("max_parity_defect", Cell::Num(max_parity))
        .push("status", pass_text(passed));
    Ok(Report {
        command: Command::Eval.as_str(),
        model: config.model_name(),
        units: units.name(),
        columns,
        rows: rows.into_iter().map(|r| r.0).collect(),
        summary: vec![summary],
        passed,
    })
}

struct KkRow {
    cells: Vec<Cell>,
    counted: bool,
    excluded: bool,
    singular: bool,
    degraded: bool,
    abs: f64,
    rel: f64,
    imag_ratio: f64,
}

fn cmd_kk(config: &RunConfig, relations: &[Relation]) -> Result<Report, CliError> {
    let units = config.units();
    let insts = instances(config)?;
    let graphene = config.model.is_graphene();
    let imaginary = relations == [Relation::ImagAxis];
    let grid_name = if imaginary { "xi" } else { "omega" };
    let grid = axis(config, grid_name)?
        .ok_or_else(|| CliError::Config(format!("this command needs `grid.{grid_name}`")))?;
    if relations.is_empty() {
        return Err(CliError::Config("`kk.relations` is empty".into()));
    }
    if !imaginary && relations.contains(&Relation::ImagAxis) {
        return Err(CliError::Config(
            "use the imag-axis command for the imaginary-axis relation".into(),
        ));
    }
    let cfg = config.quad_config();

    let mut columns = vec!["relation"];
    columns.extend(leading_columns(
        graphene,
        if imaginary {
            "xi_over_b"
        } else {
            "omega_over_b"
        },
    ));
    columns.extend([
        "direct",
        "reconstructed",
        "subtraction_term",
        "abs_residual",
        "rel_residual",
        "abs_error_estimate",
    ]);
    if imaginary {
        columns.push("direct_im");
    }
    columns.extend(["excluded", "status"]);

    let mut jobs = Vec::new();
    for i in 0..insts.len() {
        for &relation in relations {
            for &x in &grid {
                jobs.push((i, relation, x));
            }
        }
    }
    let rows: Vec<KkRow> = jobs
        .par_iter()
        .map(|&(i, relation, x)| {
            let inst = &insts[i];
            let w = x * inst.scale;
            let excluded = graphene && (x.abs() - 1.0).abs() < config.kk.exclusion;
            let mut cells = vec![Cell::Text(relation.as_str().into())];
            cells.extend(leading_cells(inst, x, &units));
            let numeric = if imaginary { 7 } else { 6 };
            match kk(&inst.model, relation, w, Some(&cfg)) {
                Ok(r) => {
                    cells.extend([
                        Cell::Num(r.direct),
                        Cell::Num(r.reconstructed),
                        Cell::Num(r.subtraction_term),
                        Cell::Num(r.abs_residual),
                        Cell::Num(r.rel_residual),
                        Cell::Num(r.abs_error_estimate),
                    ]);
                    let mut imag_ratio = 0.0;
                    if imaginary {
                        let v = inst
                            .model
                            .eval_imaginary_axis(w)
                            .map_err(CliError::Numerical)?
                            .value;
                        imag_ratio = v.im.abs() / v.re.abs();
                        cells.push(Cell::Num(v.im));
                    }
                    cells.push(Cell::Bool(excluded));
                    cells.push(Cell::Text(
                        if r.degraded { "degraded" } else { "ok" }.into(),
                    ));
                    Ok(KkRow {
                        cells,
                        counted: !excluded,
                        excluded,
                        singular: false,
                        degraded: r.degraded,
                        abs: r.abs_residual,
                        rel: r.rel_residual,
                        imag_ratio,
                    })
                }
                Err(Error::SingularEvaluationPoint { .. }) => {
                    let status = inst.model.eval_real(w).status;
                    let flag = match status {
                        Status::Regular => Status::AtZeroFrequencyPole.as_str(),
                        s => s.as_str(),
                    };
                    cells.extend((0..numeric).map(|_| Cell::Flag(flag)));
                    cells.push(Cell::Bool(excluded));
                    cells.push(Cell::Text(flag.into()));
                    Ok(KkRow {
                        cells,
                        counted: false,
                        excluded,
                        singular: true,
                        degraded: false,
                        abs: 0.0,
                        rel: 0.0,
                        imag_ratio: 0.0,
                    })
                }
                Err(e) => Err(CliError::Numerical(e)),
            }
        })
        .collect::<Result<_, CliError>>()?;

    let counted = rows.iter().filter(|r| r.counted);
    let max_abs = counted.clone().map(|r| r.abs).fold(0.0, f64::max);
    let max_rel = counted.clone().map(|r| r.rel).fold(0.0, f64::max);
    let max_imag = counted.map(|r| r.imag_ratio).fold(0.0, f64::max);
    let mut passed = max_rel <= config.kk.max_rel_residual;
    if let Some(limit) = config.kk.max_abs_residual {
        passed &= max_abs <= limit;
    }
    if imaginary {
        passed &= max_imag <= IMAGINARY_AXIS_REALNESS;
    }
    let mut summary = Record::default();
    summary
        .push("rows", Cell::Int(rows.len()))
        .push(
            "excluded",
            Cell::Int(rows.iter().filter(|r| r.excluded).count()),
        )
        .push(
            "singular",
            Cell::Int(rows.iter().filter(|r| r.singular).count()),
        )
        .push(
            "degraded",
            Cell::Int(rows.iter().filter(|r| r.degraded).count()),
        )
        .push("max_abs_residual", Cell::Num(max_abs))
        .push("max_rel_residual", Cell::Num(max_rel));
    if imaginary {
        summary.push("max_imag_ratio", Cell::Num(max_imag));
    }
    summary.push("status", pass_text(passed));
    Ok(Report {
        command: if imaginary {
            Command::ImagAxis.as_str()
        } else {
            Command::Kk.as_str()
        },
        model: config.model_name(),
        units: units.name(),
        columns,
        rows: rows.into_iter().map(|r| r.cells).collect(),
        summary: vec![summary],
        passed,
    })
}

fn complex_cells(cells: &mut Vec<Cell>, z: num_complex::Complex64, scale: f64) {
    cells.push(Cell::Num(z.re * scale));
    cells.push(Cell::Num(z.im * scale));
}

fn cmd_contour(config: &RunConfig) -> Result<Report, CliError> {
    if !config.model.is_graphene() {
        return Err(CliError::Config("contour needs a graphene model".into()));
    }
    let units = config.units();
    let opts = &config.contour;
    let rhos = match &opts.rho {
        Some(a) => a.points("rho")?,
        None => default_rho_grid(),
    };
    // largest radius first so the extrapolation uses the two smallest
    let rhos: Vec<f64> = rhos.into_iter().rev().collect();
    let arc_radii = opts
        .arc_radii
        .as_ref()
        .map(|a| a.points("arc_radii"))
        .transpose()?;
    let cfg = config.quad_config();

    let columns = vec![
        "k",
        "rho_over_b",
        "rho",
        "real_axis_re",
        "real_axis_im",
        "pole_re",
        "pole_im",
        "left_branch_re",
        "left_branch_im",
        "right_branch_re",
        "right_branch_im",
        "big_arc_re",
        "big_arc_im",
        "residue_re",
        "residue_im",
        "defect_re",
        "defect_im",
        "relative_defect",
        "decomposition_defect",
        "decomposition_bound",
    ];
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut all_passed = true;
    for inst in instances(config)? {
        let b = inst.scale;
        let k = inst.k.unwrap_or(1.0);
        let abs_rhos: Vec<f64> = rhos.iter().map(|r| r * b).collect();
        let study = rho_sweep(
            &inst.model,
            opts.xi * b,
            opts.big_radius * b,
            &abs_rhos,
            Some(&cfg),
        )
        .map_err(contour_error)?;
        // contour integrals carry the unit of frequency through dω/ω
        for (report, rho) in study.reports.iter().zip(&rhos) {
            let mut cells = vec![
                Cell::Num(k),
                Cell::Num(*rho),
                Cell::Num(rho * b * units.frequency),
            ];
            for z in [
                report.real_axis_part,
                report.pole_semicircle,
                report.left_branch_semicircle,
                report.right_branch_semicircle,
                report.big_arc,
                report.residue_term,
                report.residue_identity_defect,
            ] {
                complex_cells(&mut cells, z, 1.0);
            }
            cells.push(Cell::Num(report.relative_defect()));
            cells.push(Cell::Num(report.decomposition_defect.norm()));
            cells.push(Cell::Num(report.decomposition_bound()));
            rows.push(cells);
        }

        let expected_slope = match inst.model.pole_class() {
            PoleClass::DoublePole(_) => 1.5,
            _ => 0.5,
        };
        let slopes_ok = (study.left_slope - expected_slope).abs() <= opts.slope_tolerance
            && (study.right_slope - expected_slope).abs() <= opts.slope_tolerance;
        let pole_ok = study.pole_error() <= opts.max_pole_error;
        let defect_ok = study.max_relative_defect() <= opts.max_relative_defect;
        let mut record = Record::default();
        record
            .push("k", Cell::Num(k))
            .push("left_slope", Cell::Num(study.left_slope))
            .push("right_slope", Cell::Num(study.right_slope))
            .push("expected_slope", Cell::Num(expected_slope))
            .push(
                "pole_extrapolated_re",
                Cell::Num(study.pole_extrapolated.re),
            )
            .push(
                "pole_extrapolated_im",
                Cell::Num(study.pole_extrapolated.im),
            )
            .push("pole_limit_im", Cell::Num(study.pole_limit.im))
            .push("pole_error", Cell::Num(study.pole_error()))
            .push(
                "max_relative_defect",
                Cell::Num(study.max_relative_defect()),
            );
        let mut passed = slopes_ok && pole_ok && defect_ok;
        if let Some(radii) = &arc_radii {
            let abs_radii: Vec<f64> = radii.iter().map(|r| r * b).collect();
            let (_, slope) = big_arc_decay(
                &inst.model,
                opts.xi * b,
                abs_rhos[abs_rhos.len() - 1],
                &abs_radii,
                Some(&cfg),
            )
            .map_err(contour_error)?;
            record.push("arc_slope", Cell::Num(slope));
            passed &= slope <= ARC_SLOPE_LIMIT;
        }
        record.push("status", pass_text(passed));
        all_passed &= passed;
        summary.push(record);
    }
    Ok(Report {
        command: Command::Contour.as_str(),
        model: config.model_name(),
        units: units.name(),
        columns,
        rows,
        summary,
        passed: all_passed,
    })
}

/// Largest accepted log–log slope of the closing arc against `R`; the arc
/// falls off as `1/R` up to relative corrections of order `(b/R)²`.
pub const ARC_SLOPE_LIMIT: f64 = -1.0 + 1e-4;

fn contour_error(e: Error) -> CliError {
    match e {
        Error::RadiusTooLarge { .. } | Error::InvalidParameters(_) | Error::Unsupported(_) => {
            CliError::Config(e.to_string())
        }
        e => CliError::Numerical(e),
    }
}
