//! The five subcommands: per-point evaluation, closed-form-vs-engine
//! validation, grid scans, extremal integration, and the Minkowski
//! diagonalization check.

use clap::ArgMatches;
use std::fmt::Write as _;

use jetfinsler::engine::{self, JcmLagrangian};
use jetfinsler::error::Result;
use jetfinsler::field;
use jetfinsler::jcm::{self, JetPoint};
use jetfinsler::tensor::{sym_eigenvalues, Rank3, Rank4};

use crate::config::{field_setup, parse_grid, parse_list4};
use crate::output::{emit, fmt_f64_csv, Json};

fn rank3_json(t: &Rank3) -> Json {
    Json::Arr(
        t.entries()
            .iter()
            .map(|plane| Json::from_rows(plane))
            .collect(),
    )
}

fn rank4_json(t: &Rank4) -> Json {
    Json::Arr(
        t.entries()
            .iter()
            .map(|cube| {
                Json::Arr(cube.iter().map(|plane| Json::from_rows(plane)).collect())
            })
            .collect(),
    )
}

fn named_zeros(list: &[(&'static str, f64)]) -> Json {
    Json::Obj(list.iter().map(|&(name, v)| (name, Json::Num(v))).collect())
}

fn point_of(matches: &ArgMatches) -> Result<JetPoint> {
    let t = *matches.get_one::<f64>("t").unwrap();
    let x = parse_list4(matches.get_one::<String>("x").unwrap(), "x")?;
    let y = parse_list4(matches.get_one::<String>("y").unwrap(), "y")?;
    Ok(JetPoint::new(t, x, y))
}

fn json_path(matches: &ArgMatches) -> Option<&str> {
    matches.get_one::<String>("json").map(|s| s.as_str())
}

fn csv_path(matches: &ArgMatches) -> Option<&str> {
    matches.get_one::<String>("csv").map(|s| s.as_str())
}

/// `eval`: every geometric object at one jet point, as a JSON document.
pub fn cmd_eval(matches: &ArgMatches) -> Result<u8> {
    let (sigma, h) = field_setup(matches)?;
    let k = *matches.get_one::<f64>("K").unwrap();
    let p = point_of(matches)?;

    let f = jcm::jcm_f(&p, &sigma, &h)?;
    let b = jcm::geometry_bundle(&p, &sigma, &h)?;
    let einstein = field::einstein_blocks(&p.x, p.t, &sigma, &h)?;
    let stress = field::stress_energy(&p.x, p.t, &sigma, &h, k)?;
    let em = field::em_2form_jcm(&p, &sigma, &h)?;

    let doc = Json::Obj(vec![
        (
            "point",
            Json::Obj(vec![
                ("t", Json::Num(p.t)),
                ("x", Json::from_row(&p.x)),
                ("y", Json::from_row(&p.y)),
            ]),
        ),
        ("F", Json::Num(f)),
        ("g", Json::from_rows(&b.g.rows())),
        ("ginv", Json::from_rows(&b.ginv.rows())),
        ("M", Json::from_row(&b.m)),
        ("N", Json::from_rows(&b.n.rows())),
        ("L", rank3_json(&b.l)),
        ("frakR", rank4_json(&b.frak_r)),
        ("torsion", rank3_json(&b.torsion)),
        ("ricci", Json::from_rows(&b.ricci.rows())),
        ("scalarR", Json::Num(b.scalar_r)),
        (
            "einstein",
            Json::Obj(vec![
                ("G", Json::from_rows(&einstein.g_tensor.rows())),
                ("block_tt", Json::Num(einstein.block_tt)),
                ("block_yy", Json::from_rows(&einstein.block_yy.rows())),
                ("zero_blocks", named_zeros(&einstein.zero_blocks)),
            ]),
        ),
        (
            "stress_energy",
            Json::Obj(vec![
                ("K", Json::Num(stress.k)),
                ("T11_up", Json::Num(stress.t11_up)),
                ("T_mixed", Json::from_rows(&stress.t_mixed.rows())),
                ("Tyy_mixed", Json::from_rows(&stress.tyy_mixed.rows())),
                ("zero_components", named_zeros(&stress.zero_components)),
            ]),
        ),
        ("em2form", Json::from_rows(&em.rows())),
    ]);
    emit(json_path(matches), &doc.render()).map_err(io_err)?;
    Ok(0)
}

/// `validate`: cross-validation report; exit 1 on a tolerance breach (the
/// report is still emitted).
pub fn cmd_validate(matches: &ArgMatches) -> Result<u8> {
    let (sigma, h) = field_setup(matches)?;
    let samples = *matches.get_one::<usize>("samples").unwrap();
    let seed = *matches.get_one::<u64>("seed").unwrap();
    let tolerance = *matches.get_one::<f64>("tolerance").unwrap();
    let report = engine::cross_validate(&sigma, &h, samples, seed)?;

    let objects = report
        .objects
        .iter()
        .map(|o| {
            Json::Obj(vec![
                ("name", Json::Str(o.name.to_string())),
                ("max_abs", Json::Num(o.max_abs)),
                ("max_rel", Json::Num(o.max_rel)),
                ("pass", Json::Bool(o.max_rel <= tolerance)),
            ])
        })
        .collect();
    let pass = report.pass(tolerance);
    let doc = Json::Obj(vec![
        ("seed", Json::Int(report.seed)),
        ("samples", Json::Int(report.samples as u64)),
        ("tolerance", Json::Num(tolerance)),
        ("pass", Json::Bool(pass)),
        ("objects", Json::Arr(objects)),
    ]);
    emit(json_path(matches), &doc.render()).map_err(io_err)?;
    Ok(if pass { 0 } else { 1 })
}

/// `scan`: scalar curvature and Ricci eigen-summaries over an x-grid, CSV.
pub fn cmd_scan(matches: &ArgMatches) -> Result<u8> {
    let (sigma, h) = field_setup(matches)?;
    let _ = h;
    let base = parse_list4(matches.get_one::<String>("x").unwrap(), "x")?;
    let specs: Vec<String> = matches
        .get_many::<String>("grid")
        .map(|v| v.cloned().collect())
        .unwrap_or_default();
    let axes = parse_grid(&specs)?;

    let mut columns: [Vec<f64>; 4] = [
        vec![base[0]],
        vec![base[1]],
        vec![base[2]],
        vec![base[3]],
    ];
    for a in &axes {
        columns[a.axis] = a.values.clone();
    }

    let mut out = String::from("x1,x2,x3,x4,scalarR,ricci_trace,ricci_eig_min,ricci_eig_max\n");
    for &v1 in &columns[0] {
        for &v2 in &columns[1] {
            for &v3 in &columns[2] {
                for &v4 in &columns[3] {
                    let x = [v1, v2, v3, v4];
                    let r = jcm::scalar_curvature(&x, &sigma)?;
                    let ric = jcm::ricci(&x, &sigma)?;
                    let trace: f64 = (0..4).map(|i| ric.get(i, i)).sum();
                    let eig = sym_eigenvalues(&ric);
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        fmt_f64_csv(v1),
                        fmt_f64_csv(v2),
                        fmt_f64_csv(v3),
                        fmt_f64_csv(v4),
                        fmt_f64_csv(r),
                        fmt_f64_csv(trace),
                        fmt_f64_csv(eig[0]),
                        fmt_f64_csv(eig[3]),
                    );
                }
            }
        }
    }
    emit(csv_path(matches), &out).map_err(io_err)?;
    Ok(0)
}

/// `extremal`: integrate the Euler-Lagrange extremal, emit the sampled
/// trajectory as CSV with a final residual summary line.
pub fn cmd_extremal(matches: &ArgMatches) -> Result<u8> {
    let (sigma, h) = field_setup(matches)?;
    let p = point_of(matches)?;
    let t_end = *matches.get_one::<f64>("t-end").unwrap();
    let steps = *matches.get_one::<usize>("steps").unwrap();
    let lag = JcmLagrangian::new(sigma, h)?;
    let traj = engine::integrate_extremal(&lag, &h, &p, t_end, steps)?;
    let residual = engine::el_residual_max(&lag, &h, &traj)?;

    let mut out = String::from("t,x1,x2,x3,x4,y1,y2,y3,y4\n");
    for (t, x, y) in &traj.samples {
        let mut row = fmt_f64_csv(*t);
        for v in x.iter().chain(y.iter()) {
            row.push(',');
            row.push_str(&fmt_f64_csv(*v));
        }
        out.push_str(&row);
        out.push('\n');
    }
    let _ = writeln!(out, "# el_residual_max,{}", fmt_f64_csv(residual));
    emit(csv_path(matches), &out).map_err(io_err)?;
    Ok(0)
}

/// `diag`: the congruence transform A and the check AᵀQA = diag(1,−1,−1,−1).
pub fn cmd_diag(matches: &ArgMatches) -> Result<u8> {
    let d = jcm::minkowski_transform()?;
    let doc = Json::Obj(vec![
        ("A", Json::from_rows(&d.a.rows())),
        ("AtQA", Json::from_rows(&d.a_t_q_a.rows())),
        ("signature", Json::from_row(&d.signature)),
        ("max_deviation", Json::Num(d.max_dev)),
    ]);
    emit(json_path(matches), &doc.render()).map_err(io_err)?;
    Ok(0)
}

fn io_err(e: std::io::Error) -> jetfinsler::Error {
    jetfinsler::Error::Parse {
        line: 0,
        key: "output".into(),
        msg: e.to_string(),
    }
}
