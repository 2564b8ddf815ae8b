//! Acceptance checks, one PASS/FAIL line each. Exits non-zero if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use lp_steiner::algebra::{
    a_coeff, a_coeff_neg_n, b_coeffs, binomial_f64, gen_binom, SeriesPoly,
};
use lp_steiner::bodies::{normalized_symmetric, Polytope, SmoothBody, UnitVector};
use lp_steiner::functionals::{
    curvature_energy, hellinger_integral, lp_asa, lp_quermass, renyi_divergence, PExponent,
};
use lp_steiner::quadrature::{gauss_legendre_on, SphereQuadrature, SphereRegion};
use lp_steiner::steiner::{
    build_grid, direct_parallel_asa, direct_parallel_asa_on, evaluate_series, local_series,
    node_series_neg_n, polytope_series, series_coefficients, series_neg_n, PolytopeSeries,
    SeriesOptions,
};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORDER: u32 = 24;

const TOL_BALL: f64 = 1e-6;
const TOL_CLASSICAL: f64 = 1e-6;
const TOL_CLASSICAL_HIGH: f64 = 1e-10;
const TOL_DUAL: f64 = 1e-8;
const TOL_COEFF: f64 = 1e-12;
const TOL_ORACLE: f64 = 1e-6;
const TOL_NEG_N: f64 = 1e-8;
const TOL_POLYTOPE: f64 = 1e-6;
const TOL_POLYTOPE_VOLUME: f64 = 1e-10;
const TOL_LOCAL_HALF: f64 = 1e-10;
const TOL_LOCAL_SECTOR: f64 = 1e-4;
const TOL_LOGCONVEX_EQ: f64 = 1e-8;
const TOL_MINKOWSKI: f64 = 1e-8;
const TOL_SPHERE: f64 = 1e-10;
const TOL_WILLMORE: f64 = 1e-10;
const TOL_HELLINGER: f64 = 1e-10;
const TOL_RENYI: f64 = 1e-12;

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Worst relative error over a sweep, with the case that attains it.
#[derive(Default)]
struct Worst {
    err: f64,
    case: String,
    failures: Vec<String>,
}

impl Worst {
    fn record(&mut self, err: f64, tol: f64, case: impl FnOnce() -> String) {
        let failed = !(err <= tol);
        if failed || err > self.err || self.case.is_empty() {
            let c = case();
            if failed {
                self.failures.push(format!("{c}: {err:.3e}"));
            }
            if err > self.err || self.case.is_empty() || err.is_nan() {
                self.err = err;
                self.case = c;
            }
        }
    }

    fn outcome(self, what: &str) -> Outcome {
        let msg = format!("worst {what} {:.3e} at {}", self.err, self.case);
        if self.failures.is_empty() {
            Ok(msg)
        } else {
            let shown: Vec<_> = self.failures.iter().take(12).cloned().collect();
            Err(format!(
                "{msg}; {} failing case(s): {}{}",
                self.failures.len(),
                shown.join(", "),
                if self.failures.len() > 12 { ", ..." } else { "" }
            ))
        }
    }
}

fn ball_closed_form() -> Outcome {
    let opts = SeriesOptions::default();
    let mut worst = Worst::default();
    for n in [2usize, 3] {
        let q = SphereQuadrature::build(n, 3).map_err(|e| e.to_string())?;
        let area = lp_steiner::quadrature::sphere_area(n);
        for r in [1.0, 2.0] {
            let ball = SmoothBody::ball(n, r).unwrap();
            for p in [-6.0, -0.5, 0.5, 1.0, 2.0, 7.0] {
                let grid = build_grid(&ball, PExponent::Finite(p), 0.0, ORDER, ORDER, &q)
                    .map_err(|e| e.to_string())?;
                let nf = n as f64;
                for t in [0.0, 0.25 * r, 0.5 * r] {
                    let v = evaluate_series(&grid, t, &opts).map_err(|e| e.to_string())?;
                    let exact = area * (r + t).powf(nf * (nf - p) / (nf + p));
                    worst.record(rel(v.value, exact), TOL_BALL, || {
                        format!("n={n} R={r} p={p} t={t}")
                    });
                }
            }
        }
    }
    worst.outcome("rel error")
}

/// Ellipse perimeter by the trapezoid rule on the arc-length integrand,
/// which is periodic and analytic.
fn ellipse_perimeter(a: f64, b: f64) -> f64 {
    let n = 4096;
    let h = 2.0 * PI / n as f64;
    (0..n)
        .map(|i| {
            let th = i as f64 * h;
            (a * a * th.sin().powi(2) + b * b * th.cos().powi(2)).sqrt()
        })
        .sum::<f64>()
        * h
}

fn classical_reduction() -> Outcome {
    let q = SphereQuadrature::build(2, 6).unwrap();
    let e = SmoothBody::ellipsoid(vec![1.0, 2.0]).unwrap();
    let grid = build_grid(&e, PExponent::Finite(0.0), 0.0, ORDER, ORDER, &q).map_err(|e| e.to_string())?;
    let area = PI * 2.0;
    let perimeter = ellipse_perimeter(1.0, 2.0);
    let mut worst = Worst::default();
    for t in [0.1, 0.25, 0.5, 0.9] {
        let v = evaluate_series(&grid, t, &SeriesOptions::default()).map_err(|e| e.to_string())?;
        let exact = 2.0 * (area + perimeter * t + PI * t * t);
        worst.record(rel(v.value, exact), TOL_CLASSICAL, || format!("t={t}"));
    }
    let coeffs = series_coefficients(&grid);
    let high = coeffs[3..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    worst.record(high, TOL_CLASSICAL_HIGH, || "max |coeff t^k|, k>2".into());
    worst.outcome("error")
}

fn dual_reduction() -> Outcome {
    let q = SphereQuadrature::build(3, 4).unwrap();
    let ball = SmoothBody::ball(3, 2.0).unwrap();
    let grid = build_grid(&ball, PExponent::PosInf, 0.0, ORDER, ORDER, &q).map_err(|e| e.to_string())?;
    let coeffs = series_coefficients(&grid);
    let mut worst = Worst::default();
    for (k, &coeff) in coeffs.iter().enumerate().take(11) {
        // W̃_{-k}(B_{1/2}) = (1/3) 4π (1/2)^{3+k}
        let dual = 4.0 * PI / 3.0 * 0.5f64.powi(3 + k as i32);
        let expect = 3.0 * gen_binom(-3.0, k as i64) * dual;
        worst.record(rel(coeff, expect), TOL_DUAL, || format!("k={k}"));
    }
    let v = evaluate_series(&grid, 0.5, &SeriesOptions::default()).map_err(|e| e.to_string())?;
    worst.record(rel(v.value, 4.0 * PI / 2.5f64.powi(3)), TOL_DUAL, || "sum at t=0.5".into());
    worst.outcome("rel error")
}

/// Coefficients `t^0..t^10` of `(1 + Σ c_j t^j)^alpha`, computed over the
/// rationals from the binary values of `alpha` and `c`.
fn exact_power(alpha: f64, c: &[f64]) -> Vec<f64> {
    let mut coeffs = vec![BigRational::from_float(1.0).unwrap()];
    coeffs.extend(c.iter().map(|&x| BigRational::from_float(x).unwrap()));
    let alpha = BigRational::from_float(alpha).unwrap();
    SeriesPoly::new(coeffs, 10)
        .unwrap()
        .pow_rational(&alpha)
        .unwrap()
        .coeffs()
        .iter()
        .map(|r| r.to_f64().unwrap())
        .collect()
}

fn coefficient_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = Worst::default();
    let start = Instant::now();
    for draw in 0..200 {
        let n: usize = rng.gen_range(2..=5);
        let radii: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.3..3.0)).collect();
        let sym = normalized_symmetric(&radii);
        let top = sym[n - 1];
        let h_curv: Vec<f64> = (1..n).map(|j| sym[n - 1 - j] / top).collect();
        let p = loop {
            let p: f64 = rng.gen_range(-12.0..12.0);
            if (n as f64 + p).abs() > 0.25 {
                break p;
            }
        };
        let s: f64 = rng.gen_range(-2.0..4.0);
        let support: f64 = rng.gen_range(0.3..3.0);

        let alpha = (n as f64 - s) / (n as f64 + p);
        let c: Vec<f64> = (1..n)
            .map(|j| binomial_f64(n - 1, j) * h_curv[j - 1])
            .collect();
        let oracle = exact_power(alpha, &c);
        let b = b_coeffs(&h_curv, support).unwrap();
        let oracle_neg = exact_power(0.5, &b);
        for m in 0..=10u32 {
            let got = a_coeff(p, s, m, &h_curv).unwrap();
            let want = oracle[m as usize];
            worst.record((got - want).abs() / want.abs().max(1.0), TOL_COEFF, || {
                format!("draw {draw} A^{m} n={n} p={p:.3} s={s:.3}")
            });
            let got = a_coeff_neg_n(m, &b);
            let want = oracle_neg[m as usize];
            worst.record((got - want).abs() / want.abs().max(1.0), TOL_COEFF, || {
                format!("draw {draw} A^{m}_-n n={n}")
            });
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let mut out = worst.outcome("scaled error");
    if secs > 10.0 {
        out = Err(format!("runtime {secs:.1}s exceeds 10s"));
    }
    out.map(|m| format!("{m}; {secs:.2}s"))
}

fn ellipsoid_oracle_match() -> Outcome {
    let opts = SeriesOptions::default();
    let mut worst = Worst::default();
    let mut flagged = 0usize;
    for (axes, level) in [(vec![1.0, 1.5], 6u32), (vec![1.0, 1.2, 1.5], 6)] {
        let n = axes.len();
        let body = SmoothBody::ellipsoid(axes).unwrap();
        let q = SphereQuadrature::build(n, level).unwrap();
        let beta = body.beta();
        let ps = [
            PExponent::Finite(-6.0),
            PExponent::Finite(-0.5),
            PExponent::Finite(0.0),
            PExponent::Finite(0.5),
            PExponent::Finite(1.0),
            PExponent::Finite(2.0),
            PExponent::Finite(7.0),
            PExponent::PosInf,
            PExponent::NegInf,
        ];
        for p in ps.into_iter().filter(|p| !p.is_minus_n(n)) {
            for s in [0.0, -1.0, 2.0] {
                let grid = build_grid(&body, p, s, ORDER, ORDER, &q).map_err(|e| e.to_string())?;
                for frac in [0.0, 0.1, 0.3, 0.5] {
                    let t = frac * beta;
                    let v = evaluate_series(&grid, t, &opts).map_err(|e| e.to_string())?;
                    if !v.curvature_expansion_ok {
                        flagged += 1;
                    }
                    let d = direct_parallel_asa(&body, p, s, t, &q).map_err(|e| e.to_string())?;
                    worst.record(rel(v.value, d), TOL_ORACLE, || {
                        format!("n={n} p={p} s={s} t={frac}β")
                    });
                }
            }
        }
    }
    worst
        .outcome("rel error")
        .map(|m| format!("{m}; {flagged} evaluation(s) flagged by the curvature predicate"))
        .map_err(|m| format!("{m}; {flagged} evaluation(s) flagged by the curvature predicate"))
}

fn neg_n_series() -> Outcome {
    let opts = SeriesOptions::default();
    let mut worst = Worst::default();
    for n in [2usize, 3] {
        let q = SphereQuadrature::build(n, 3).unwrap();
        for r in [1.0, 2.0] {
            let ball = SmoothBody::ball(n, r).unwrap();
            for t in [0.0, 0.25 * r, 0.5 * r] {
                let v = series_neg_n(&ball, 16, t, &opts, &q).map_err(|e| e.to_string())?;
                let exact = (r + t).powi(n as i32);
                worst.record(rel(v.value, exact), TOL_NEG_N, || format!("ball n={n} R={r} t={t}"));
            }
        }
    }
    let e = SmoothBody::ellipsoid(vec![1.0, 1.5]).unwrap();
    let q = SphereQuadrature::build(2, 4).unwrap();
    for frac in [0.25, 0.5] {
        let t = frac * e.beta();
        let par = e.parallel_transform(t).unwrap();
        for u in q.nodes() {
            let got = node_series_neg_n(&e, u, 16, t).map_err(|e| e.to_string())?;
            let exact = par.curvature_function(u).unwrap().sqrt() * par.support(u).powf(1.5);
            worst.record(rel(got, exact), TOL_NEG_N, || {
                format!("ellipse node {:?} t={frac}β", u.as_slice())
            });
        }
    }
    worst.outcome("rel error")
}

fn polytope_formula() -> Outcome {
    let sq = Polytope::square(1.0).unwrap();
    let opts = SeriesOptions::default();
    let (x, w) = gauss_legendre_on(400, 0.0, PI / 2.0);
    let mut worst = Worst::default();
    let mut notes = Vec::new();
    for p in [1.0, 2.0, 5.0] {
        let gamma = 2.0 * (1.0 - p) / (2.0 + p);
        for t in [0.25f64, 0.5] {
            let direct = t.powf(2.0 / (2.0 + p))
                * 4.0
                * x.iter()
                    .zip(&w)
                    .map(|(th, wi)| wi * (th.cos() + th.sin() + t).powf(gamma))
                    .sum::<f64>();
            let got = polytope_series(&sq, PExponent::Finite(p), 0.0, ORDER, t, &opts, 4)
                .map_err(|e| e.to_string())?;
            worst.record(rel(got.value(), direct), TOL_POLYTOPE, || format!("p={p} t={t}"));
        }
    }
    for t in [0.25, 0.5] {
        let inf = polytope_series(&sq, PExponent::Finite(-1.0), 0.0, ORDER, t, &opts, 4)
            .map_err(|e| e.to_string())?;
        if inf != PolytopeSeries::Infinite {
            notes.push(format!("p=-1 t={t} returned {inf:?}"));
        }
        let vol = polytope_series(&sq, PExponent::Finite(0.0), 0.0, ORDER, t, &opts, 4)
            .map_err(|e| e.to_string())?;
        let exact = 2.0 * (4.0 + 8.0 * t + PI * t * t);
        if !matches!(vol, PolytopeSeries::VolumeBranch { .. }) {
            notes.push(format!("p=0 t={t} did not take the volume branch"));
        }
        worst.record(rel(vol.value(), exact), TOL_POLYTOPE_VOLUME, || format!("p=0 t={t}"));
    }
    let out = worst.outcome("rel error");
    match (out, notes.is_empty()) {
        (Ok(m), true) => Ok(format!("{m}; p=-1 infinite")),
        (Ok(m), false) | (Err(m), false) => Err(format!("{m}; {}", notes.join(", "))),
        (Err(m), true) => Err(m),
    }
}

fn local_steiner() -> Outcome {
    let opts = SeriesOptions::default();
    let mut worst = Worst::default();
    let q = SphereQuadrature::build(3, 4).unwrap();
    let ball = SmoothBody::ball(3, 1.0).unwrap();
    let cap = SphereRegion::Cap {
        center: UnitVector::new(vec![0.0, 0.0, 1.0]).unwrap(),
        angle: PI / 2.0,
    };
    for p in [PExponent::Finite(1.0), PExponent::Finite(-0.5), PExponent::PosInf] {
        for t in [0.1, 0.3] {
            let full = evaluate_series(&build_grid(&ball, p, 0.0, ORDER, ORDER, &q).unwrap(), t, &opts)
                .map_err(|e| e.to_string())?;
            let half = local_series(&ball, p, 0.0, &cap, ORDER, ORDER, t, &opts, &q)
                .map_err(|e| e.to_string())?;
            worst.record(rel(half.value, full.value / 2.0), TOL_LOCAL_HALF, || {
                format!("ball hemisphere p={p} t={t}")
            });
        }
    }
    let q = SphereQuadrature::build(2, 6).unwrap();
    let e = SmoothBody::ellipsoid(vec![1.0, 2.0]).unwrap();
    let sector = SphereRegion::Sector {
        start: 0.0,
        end: PI / 2.0,
    };
    let p = PExponent::Finite(1.0);
    let t = 0.3;
    let series = local_series(&e, p, 0.0, &sector, ORDER, ORDER, t, &opts, &q).map_err(|e| e.to_string())?;
    let direct = direct_parallel_asa_on(&e, p, 0.0, t, &sector, &q).map_err(|e| e.to_string())?;
    worst.record(rel(series.value, direct), TOL_LOCAL_SECTOR, || "ellipse quarter sector".into());
    worst.outcome("rel error")
}

fn log_convexity() -> Outcome {
    let mut worst = Worst::default();
    let mut checked = 0usize;
    let q = SphereQuadrature::build(2, 6).unwrap();
    let e = SmoothBody::ellipsoid(vec![1.0, 2.0]).unwrap();
    let b = SmoothBody::ball(2, 1.7).unwrap();
    for p in [0.0, 0.5, 1.0, 2.0] {
        let p = PExponent::Finite(p);
        for m in 0..=1u32 {
            let we: Vec<f64> = (0..=5).map(|k| if k < m { f64::NAN } else { lp_quermass(&e, p, m, k, &q).unwrap() }).collect();
            let wb: Vec<f64> = (0..=5).map(|k| if k < m { f64::NAN } else { lp_quermass(&b, p, m, k, &q).unwrap() }).collect();
            for i in m..=5 {
                for j in i + 1..=5 {
                    for k in j + 1..=5 {
                        let (i_, j_, k_) = (i as usize, j as usize, k as usize);
                        let lhs = |w: &[f64]| {
                            (j - i) as f64 * w[k_].ln() + (k - j) as f64 * w[i_].ln()
                        };
                        let rhs = |w: &[f64]| (k - i) as f64 * w[j_].ln();
                        checked += 1;
                        // log form: deficit > 0 means the inequality fails
                        let deficit = rhs(&we) - lhs(&we);
                        worst.record(deficit.max(0.0), 0.0, || {
                            format!("ellipse p={p} m={m} (i,j,k)=({i},{j},{k})")
                        });
                        let ratio = (lhs(&wb) - rhs(&wb)).exp() - 1.0;
                        worst.record(ratio.abs(), TOL_LOGCONVEX_EQ, || {
                            format!("ball p={p} m={m} (i,j,k)=({i},{j},{k})")
                        });
                    }
                }
            }
        }
    }
    worst.outcome("violation").map(|m| format!("{m}; {checked} triples"))
}

fn quadrature_sanity() -> Outcome {
    let mut worst = Worst::default();
    for n in [2usize, 3, 4, 5] {
        let q = SphereQuadrature::build(n, 4).unwrap();
        let measure = q.region_measure(&SphereRegion::Full);
        worst.record(rel(measure, lp_steiner::quadrature::sphere_area(n)), TOL_SPHERE, || {
            format!("sphere measure n={n}")
        });
    }
    let bodies = [
        SmoothBody::ball(3, 1.3).unwrap(),
        SmoothBody::ellipsoid(vec![1.0, 2.0]).unwrap(),
        SmoothBody::ellipsoid(vec![1.0, 1.2, 1.5]).unwrap(),
        SmoothBody::ellipsoid(vec![1.0, 1.1, 1.3, 1.6]).unwrap(),
    ];
    for body in &bodies {
        let n = body.dim();
        let q = SphereQuadrature::build(n, 5).unwrap();
        for j in 1..n {
            let lhs = q
                .integrate(&SphereRegion::Full, |u| Ok(body.local_data(u)?.sym[j]))
                .map_err(|e| e.to_string())?;
            let rhs = q
                .integrate(&SphereRegion::Full, |u| {
                    let l = body.local_data(u)?;
                    Ok(l.support * l.sym[j - 1])
                })
                .map_err(|e| e.to_string())?;
            worst.record(rel(lhs, rhs), TOL_MINKOWSKI, || format!("Minkowski n={n} j={j}"));
        }
    }
    let q = SphereQuadrature::build(3, 4).unwrap();
    for r in [0.5, 1.0, 2.0] {
        let ball = SmoothBody::ball(3, r).unwrap();
        let w = curvature_energy(&ball, 2.0, &q).map_err(|e| e.to_string())?;
        worst.record(rel(w, 4.0 * PI), TOL_WILLMORE, || format!("Willmore R={r}"));
    }
    worst.outcome("rel error")
}

fn renyi() -> Outcome {
    let mut worst = Worst::default();
    for n in [2usize, 3] {
        let q = SphereQuadrature::build(n, 4).unwrap();
        let ball = SmoothBody::ball(n, 1.0).unwrap();
        for alpha in [-1.0, 0.0, 0.3, 0.75, 2.5] {
            let h = hellinger_integral(&ball, alpha, &q).map_err(|e| e.to_string())?;
            worst.record(rel(h, lp_steiner::quadrature::sphere_area(n)), TOL_HELLINGER, || {
                format!("Hellinger n={n} α={alpha}")
            });
        }
    }
    let q = SphereQuadrature::build(3, 4).unwrap();
    let e = SmoothBody::ellipsoid(vec![1.0, 1.2, 1.5]).unwrap();
    for p in [-5.0, -1.0, 0.5, 1.0, 3.0] {
        let d = renyi_divergence(&e, 0, 0, PExponent::Finite(p), &q).map_err(|e| e.to_string())?;
        let alpha = p / (3.0 + p);
        let asa = lp_asa(&e, PExponent::Finite(p), &q).map_err(|e| e.to_string())?;
        let expect = asa.ln() / (alpha - 1.0);
        worst.record(rel(d, expect), TOL_RENYI, || format!("Rényi p={p}"));
    }
    worst.outcome("rel error")
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("ball closed form", ball_closed_form),
        ("classical reduction", classical_reduction),
        ("dual reduction", dual_reduction),
        ("coefficient oracle", coefficient_oracle),
        ("ellipsoid oracle match", ellipsoid_oracle_match),
        ("p = -n series", neg_n_series),
        ("polytope formula", polytope_formula),
        ("local Steiner", local_steiner),
        ("log-convexity inequality", log_convexity),
        ("quadrature sanity", quadrature_sanity),
        ("Rényi and Hellinger", renyi),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS  {:>2}. {name}: {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
