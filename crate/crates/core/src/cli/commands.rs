use serde::Serialize;
use serde_json::{json, Value};

use super::{CliError, Command, CommonArgs, Format, RunConfig, SCHEMA};
use crate::bodies::{Body, BodySpec, SmoothBody};
use crate::functionals::{
    area_measure, hellinger_integral, l_neg_n_asa, lp_quermass, mixed_asa, renyi_divergence,
    renyi_order, FunctionalRecord, PExponent,
};
use crate::quadrature::{SphereQuadrature, SphereRegion};
use crate::steiner::{
    build_grid, check_offset, direct_parallel_asa, direct_parallel_asa_on, direct_polytope_asa,
    evaluate_series, local_series, polytope_series, PolytopeSeries, SeriesOptions,
    DEFAULT_TOLERANCE,
};

use super::region::parse_region;

pub(super) struct Output {
    /// Written to `--out`, or to stdout without it.
    pub file: String,
    /// Printed to stdout when `--out` is given.
    pub summary: String,
    pub failed: bool,
}

const VERIFY_TOL: f64 = 1e-6;
const MEASURES_TOL: f64 = 1e-4;

fn sweep_p(n: usize) -> Vec<PExponent> {
    [-6.0, -0.5, 0.0, 0.5, 1.0, 2.0, 7.0]
        .into_iter()
        .map(PExponent::Finite)
        .chain([PExponent::PosInf, PExponent::NegInf])
        .filter(|p| !p.is_minus_n(n))
        .collect()
}

pub(super) fn prepare(command: Command, args: CommonArgs) -> Result<(RunConfig, Body), CliError> {
    let spec = BodySpec::parse(&args.body)?;
    let body = spec.build(args.n)?;
    let n = body.dim();
    let spec = spec.with_dim(n);
    let is_polytope = matches!(body, Body::Polytope(_));

    match (command, is_polytope) {
        (Command::Polytope, false) => {
            return Err(CliError::config("`polytope` needs a polytope body"));
        }
        (Command::Asp | Command::Expand | Command::Measures | Command::Renyi, true) => {
            return Err(CliError::config(
                "this command needs a smooth body; use `polytope` or `verify` for polytopes",
            ));
        }
        _ => {}
    }
    if args.neg_n && command != Command::Asp {
        return Err(CliError::config("--neg-n applies to `asp` only"));
    }
    if args.region.is_some() && command != Command::Measures {
        return Err(CliError::config("--region applies to `measures` only"));
    }
    if args.alpha.is_some() && command != Command::Renyi {
        return Err(CliError::config("--alpha applies to `renyi` only"));
    }
    if args.quad_level == 0 {
        return Err(CliError::config("--quad-level must be at least 1"));
    }
    if args.m_max as usize > crate::algebra::MAX_SERIES_ORDER
        || args.k_max as usize > crate::algebra::MAX_SERIES_ORDER
    {
        return Err(crate::error::Error::TruncationTooLarge {
            order: args.m_max.max(args.k_max) as usize,
            max: crate::algebra::MAX_SERIES_ORDER,
        }
        .into());
    }

    let p = if !args.p.is_empty() {
        args.p.clone()
    } else if args.neg_n {
        vec![PExponent::Finite(-(n as f64))]
    } else if command == Command::Verify {
        if is_polytope {
            [1.0, 2.0, 5.0].into_iter().map(PExponent::Finite).collect()
        } else {
            sweep_p(n)
        }
    } else {
        vec![PExponent::Finite(1.0)]
    };
    let s = if !args.s.is_empty() {
        args.s.clone()
    } else if command == Command::Verify && !is_polytope {
        vec![0.0, -1.0, 2.0]
    } else {
        vec![0.0]
    };
    if command != Command::Verify && (p.len() != 1 || s.len() != 1) {
        return Err(CliError::config("--p and --s take lists only for `verify`"));
    }
    if args.neg_n {
        if !p[0].is_minus_n(n) {
            return Err(CliError::config(format!("--neg-n evaluates p = -{n}; drop --p")));
        }
    } else if command != Command::Polytope {
        for pe in &p {
            pe.check(n)?;
        }
    }

    let beta = body.beta();
    let t = if !args.t.is_empty() {
        args.t.clone()
    } else {
        let fractions: &[f64] = match (command, is_polytope) {
            (Command::Verify, false) => &[0.0, 0.1, 0.3, 0.5],
            (Command::Verify | Command::Polytope, _) => &[0.25, 0.5],
            (Command::Measures, _) => &[0.1, 0.3],
            _ => &[],
        };
        fractions.iter().map(|f| f * beta).collect()
    };
    if matches!(command, Command::Asp | Command::Renyi) && !t.is_empty() {
        return Err(CliError::config("--t does not apply to this command"));
    }
    let opts = SeriesOptions {
        tolerance: DEFAULT_TOLERANCE,
        allow_near_beta: args.allow_near_beta,
    };
    for &ti in &t {
        check_offset(ti, beta, &opts)?;
    }
    let tol = args.tol.unwrap_or(match command {
        Command::Verify => VERIFY_TOL,
        Command::Measures => MEASURES_TOL,
        _ => DEFAULT_TOLERANCE,
    });
    if !(tol > 0.0) {
        return Err(CliError::config("--tol must be positive"));
    }
    let region = match command {
        Command::Measures => {
            let token = args.region.clone().unwrap_or_else(|| "full".into());
            parse_region(&token, body.as_smooth().expect("checked above"))?;
            Some(token.trim().to_string())
        }
        _ => None,
    };

    let config = RunConfig {
        command,
        body: spec,
        n,
        p,
        s,
        m: args.m,
        k: args.k,
        alpha: args.alpha,
        t,
        quad_level: args.quad_level,
        m_max: args.m_max,
        k_max: args.k_max,
        tol,
        format: args.format,
        allow_near_beta: args.allow_near_beta,
        neg_n: args.neg_n,
        region,
        threads: args.threads,
        out: args.out,
    };
    Ok((config, body))
}

fn report(config: &RunConfig, result: Value) -> String {
    let mut text = serde_json::to_string_pretty(&json!({
        "schema": SCHEMA,
        "config": config,
        "result": result,
    }))
    .expect("report serializes");
    text.push('\n');
    text
}

fn csv_rows<R: Serialize>(rows: &[R]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| CliError::config(format!("CSV: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::config(format!("CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

/// Tabular output: the rows as CSV, or the full JSON report.
fn tabular<R: Serialize>(
    config: &RunConfig,
    rows: &[R],
    result: Value,
    failed: bool,
) -> Result<Output, CliError> {
    let json = report(config, result);
    let file = match config.format {
        Format::Json => json.clone(),
        Format::Csv => csv_rows(rows)?,
    };
    Ok(Output {
        file,
        summary: json,
        failed,
    })
}

fn series_opts(config: &RunConfig) -> SeriesOptions {
    SeriesOptions {
        tolerance: if matches!(config.command, Command::Verify | Command::Measures) {
            DEFAULT_TOLERANCE
        } else {
            config.tol
        },
        allow_near_beta: config.allow_near_beta,
    }
}

pub(super) fn execute(config: &RunConfig, body: &Body) -> Result<Output, CliError> {
    match config.command {
        Command::Asp => asp(config, body.as_smooth().expect("checked in prepare")),
        Command::Expand => expand(config, body.as_smooth().expect("checked in prepare")),
        Command::Verify => match body {
            Body::Smooth(b) => verify_smooth(config, b),
            Body::Polytope(_) => polytope(config, body, true),
        },
        Command::Measures => measures(config, body.as_smooth().expect("checked in prepare")),
        Command::Polytope => polytope(config, body, false),
        Command::Renyi => renyi(config, body.as_smooth().expect("checked in prepare")),
    }
}

fn asp(config: &RunConfig, body: &SmoothBody) -> Result<Output, CliError> {
    let n = config.n;
    let (p, s) = (config.p[0], config.s[0]);
    let result = if config.neg_n {
        let rec = FunctionalRecord::evaluate("as_-n", json!({}), n, config.quad_level, |q| {
            l_neg_n_asa(body, q).map(|m| m.value)
        })?;
        let q = SphereQuadrature::build(n, config.quad_level)?;
        let at = l_neg_n_asa(body, &q)?;
        json!({
            "functional": rec.functional,
            "value": rec.value,
            "quad_level": rec.quad_level,
            "refinement_delta": rec.est_error,
            "direction": at.direction,
        })
    } else {
        let rec = FunctionalRecord::evaluate(
            "as_p,s",
            json!({"p": p, "s": s}),
            n,
            config.quad_level,
            |q| mixed_asa(body, p, s, q),
        )?;
        json!({
            "functional": rec.functional,
            "value": rec.value,
            "quad_level": rec.quad_level,
            "refinement_delta": rec.est_error,
        })
    };
    let text = report(config, result);
    Ok(Output {
        file: text.clone(),
        summary: text,
        failed: false,
    })
}

#[derive(Serialize)]
struct SeriesRow {
    t: f64,
    value: f64,
    tail_estimate: f64,
    converged: bool,
    curvature_expansion_ok: bool,
}

fn expand(config: &RunConfig, body: &SmoothBody) -> Result<Output, CliError> {
    let q = SphereQuadrature::build(config.n, config.quad_level)?;
    let grid = build_grid(body, config.p[0], config.s[0], config.m_max, config.k_max, &q)?;
    let opts = series_opts(config);
    let rows = config
        .t
        .iter()
        .map(|&t| {
            let v = evaluate_series(&grid, t, &opts)?;
            Ok(SeriesRow {
                t,
                value: v.value,
                tail_estimate: v.tail_estimate,
                converged: v.converged,
                curvature_expansion_ok: v.curvature_expansion_ok,
            })
        })
        .collect::<Result<Vec<_>, crate::error::Error>>()?;
    let mut result = json!({
        "W00": grid.get(0, 0),
        "beta": grid.beta,
        "series": rows,
    });
    let grid_text = match config.format {
        Format::Json => {
            let mut text = grid.to_json()?;
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut buf = Vec::new();
            grid.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("CSV output is UTF-8")
        }
    };
    if let Some(path) = &config.out {
        result["grid_file"] = json!(path.display().to_string());
        return Ok(Output {
            file: grid_text,
            summary: report(config, result),
            failed: false,
        });
    }
    let file = match config.format {
        Format::Json => {
            result["grid"] = serde_json::to_value(&grid).expect("grid serializes");
            report(config, result)
        }
        Format::Csv => grid_text,
    };
    Ok(Output {
        summary: file.clone(),
        file,
        failed: false,
    })
}

#[derive(Serialize)]
struct VerifyRow {
    p: PExponent,
    s: f64,
    t: f64,
    case: &'static str,
    series: f64,
    direct: Option<f64>,
    rel_error: Option<f64>,
    tail: f64,
    pass: bool,
}

fn verify_smooth(config: &RunConfig, body: &SmoothBody) -> Result<Output, CliError> {
    let q = SphereQuadrature::build(config.n, config.quad_level)?;
    let opts = series_opts(config);
    let mut rows = Vec::new();
    for &p in &config.p {
        for &s in &config.s {
            let grid = build_grid(body, p, s, config.m_max, config.k_max, &q)?;
            for &t in &config.t {
                let v = evaluate_series(&grid, t, &opts)?;
                let direct = direct_parallel_asa(body, p, s, t, &q)?;
                let rel = (v.value - direct).abs() / direct.abs();
                rows.push(VerifyRow {
                    p,
                    s,
                    t,
                    case: "series",
                    series: v.value,
                    direct: Some(direct),
                    rel_error: Some(rel),
                    tail: v.tail_estimate,
                    pass: rel <= config.tol,
                });
            }
        }
    }
    let failed = rows.iter().any(|r| !r.pass);
    let result = json!({"tol": config.tol, "all_pass": !failed, "rows": rows});
    tabular(config, &rows, result, failed)
}

fn polytope(config: &RunConfig, body: &Body, verifying: bool) -> Result<Output, CliError> {
    let poly = body.as_polytope().expect("checked in prepare");
    let opts = series_opts(config);
    let mut rows = Vec::new();
    for &p in &config.p {
        for &s in &config.s {
            for &t in &config.t {
                let got = polytope_series(poly, p, s, config.m_max, t, &opts, config.quad_level)?;
                let (case, tail, direct) = match got {
                    PolytopeSeries::Series { tail, .. } => (
                        "series",
                        tail,
                        Some(direct_polytope_asa(poly, p, s, t, config.quad_level)?),
                    ),
                    PolytopeSeries::Infinite => ("infinite", 0.0, None),
                    PolytopeSeries::VolumeBranch { .. } => ("volume", 0.0, None),
                };
                let rel = direct.map(|d| (got.value() - d).abs() / d.abs());
                rows.push(VerifyRow {
                    p,
                    s,
                    t,
                    case,
                    series: got.value(),
                    direct,
                    rel_error: rel,
                    tail,
                    pass: !verifying || rel.is_none_or(|r| r <= config.tol),
                });
            }
        }
    }
    let failed = rows.iter().any(|r| !r.pass);
    let result = if verifying {
        json!({"tol": config.tol, "all_pass": !failed, "rows": rows})
    } else {
        json!({"rows": rows})
    };
    tabular(config, &rows, result, failed)
}

#[derive(Serialize)]
struct LocalRow {
    t: f64,
    series: f64,
    direct: f64,
    rel_error: f64,
    tail: f64,
    pass: bool,
}

fn measures(config: &RunConfig, body: &SmoothBody) -> Result<Output, CliError> {
    let q = SphereQuadrature::build(config.n, config.quad_level)?;
    let token = config.region.as_deref().unwrap_or("full");
    let region = parse_region(token, body)?;
    let (p, s) = (config.p[0], config.s[0]);
    let value = if s == 0.0 {
        area_measure(body, p, config.m, config.k, &region, &q)?
    } else {
        crate::functionals::mixed_quermass(body, p, s, config.m, config.k, &region, &q)?
    };
    let opts = series_opts(config);
    let mut rows = Vec::new();
    for &t in &config.t {
        let series = local_series(body, p, s, &region, config.m_max, config.k_max, t, &opts, &q)?;
        let direct = direct_parallel_asa_on(body, p, s, t, &region, &q)?;
        let rel = (series.value - direct).abs() / direct.abs();
        rows.push(LocalRow {
            t,
            series: series.value,
            direct,
            rel_error: rel,
            tail: series.tail_estimate,
            pass: rel <= config.tol,
        });
    }
    let measure = if matches!(region, SphereRegion::Pullback { .. }) { "C" } else { "S" };
    let result = json!({
        "measure": measure,
        "m": config.m,
        "k": config.k,
        "value": value,
        "region_measure": q.region_measure(&region),
        "rows": rows,
    });
    tabular(config, &rows, result, false)
}

fn renyi(config: &RunConfig, body: &SmoothBody) -> Result<Output, CliError> {
    let q = SphereQuadrature::build(config.n, config.quad_level)?;
    let p = config.p[0];
    let order = renyi_order(p, config.n)?;
    let mass = lp_quermass(body, p, config.m, config.k, &q)?;
    let divergence = renyi_divergence(body, config.m, config.k, p, &q)?;
    let alpha = config.alpha.unwrap_or(order);
    let hellinger = hellinger_integral(body, alpha, &q)?;
    let result = json!({
        "alpha": order,
        "mass": mass,
        "divergence": divergence,
        "hellinger": {"alpha": alpha, "value": hellinger},
    });
    let text = report(config, result);
    Ok(Output {
        file: text.clone(),
        summary: text,
        failed: false,
    })
}
