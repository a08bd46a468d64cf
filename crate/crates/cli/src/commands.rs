use crate::emit::{dec, dec_f64, Report};
use crate::OutputOpts;
use anyhow::{anyhow, Context, Result};
use p4hermite::asymptotics::{
    asymptotic_w_from, phase_chart, re_phi_tilde, spectral_data, trace_boundary, trace_sigma,
};
use p4hermite::hermite::{gen_hermite, hermite, rotate_argument_by_i};
use p4hermite::hp;
use p4hermite::painleve4::{
    build_solution, check_lemma_switch, check_psi_representations, p4_residual, scaled_eval_with,
    Family, SolutionEvaluator,
};
use p4hermite::ratfn::ExactRationalFn;
use p4hermite::rootfinder::{scaled_zero_cloud_with, AberthConfig, ScaleVar};
use std::process::ExitCode;
use std::str::FromStr;

/// Marker for argument-validation failures (exit code 2).
#[derive(Debug)]
pub struct BadArguments(pub String);

impl std::fmt::Display for BadArguments {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for BadArguments {}

fn bad_args(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(BadArguments(msg.into()))
}

fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(bad_args(format!("expected re,im but got {s:?}")));
    }
    Ok((
        parts[0].trim().parse().map_err(|e| bad_args(format!("bad number in {s:?}: {e}")))?,
        parts[1].trim().parse().map_err(|e| bad_args(format!("bad number in {s:?}: {e}")))?,
    ))
}

fn parse_window(s: &str) -> Result<[f64; 4]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(bad_args(format!("expected x0,x1,y0,y1 but got {s:?}")));
    }
    let mut out = [0.0; 4];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|e| bad_args(format!("bad number in {s:?}: {e}")))?;
    }
    Ok(out)
}

fn require_r(r: f64) -> Result<()> {
    if r < 1.0 || !r.is_finite() {
        return Err(bad_args(format!("r must be >= 1, got {r}")));
    }
    Ok(())
}

fn echo_output(report: &mut Report, o: &OutputOpts) {
    report.meta("precision_bits", o.precision_bits.to_string());
}

pub fn zeros(m: usize, n: usize, scale: &str, seed: u64, o: &OutputOpts) -> Result<ExitCode> {
    if m < 1 || n < 1 {
        return Err(bad_args(format!("zeros needs m, n >= 1, got ({m}, {n})")));
    }
    let scale_by = match scale.to_ascii_lowercase().as_str() {
        "m" => ScaleVar::M,
        "n" => ScaleVar::N,
        other => return Err(bad_args(format!("--scale must be m or n, got {other:?}"))),
    };
    let cfg = AberthConfig { precision_bits: o.precision_bits as usize, seed, ..Default::default() };
    let set = scaled_zero_cloud_with(m, n, scale_by, &cfg)
        .with_context(|| format!("root finding for ({m}, {n})"))?;

    let mut report = Report::new("zeros");
    report.meta("m", m.to_string());
    report.meta("n", n.to_string());
    report.meta("scale", scale.to_ascii_lowercase());
    report.meta("seed", seed.to_string());
    echo_output(&mut report, o);
    report.meta("degree", set.source_degree.to_string());
    report.meta(
        "clustered_roots",
        set.cluster_flags.iter().filter(|&&f| f).count().to_string(),
    );
    let section = report.section("roots", &["re", "im", "residual"]);
    for (z, res) in set.roots.iter().zip(&set.residuals) {
        section.rows.push(vec![dec(&z.re), dec(&z.im), dec(res)]);
    }
    report.emit(o.out.as_deref(), o.format)?;
    Ok(ExitCode::SUCCESS)
}

pub fn boundary(r: f64, samples: u32, o: &OutputOpts) -> Result<ExitCode> {
    require_r(r)?;
    let prec = o.precision_bits as usize;
    let curve = trace_boundary(r, samples as usize, prec).context("boundary tracing")?;

    let mut report = Report::new("boundary");
    report.meta("r", dec_f64(r, prec));
    report.meta("samples_per_quadrant", samples.to_string());
    echo_output(&mut report, o);
    report.meta("x_c_re", dec(&curve.x_c.re));
    report.meta("x_c_im", dec(&curve.x_c.im));
    report.meta("real_axis_crossing", dec_f64(curve.real_axis_crossing, prec));
    report.meta("imag_axis_crossing", dec_f64(curve.imag_axis_crossing, prec));
    let section = report.section("points", &["re", "im", "abs_f"]);
    for (p, res) in curve.points.iter().zip(&curve.residuals) {
        section.rows.push(vec![dec(&p.re), dec(&p.im), dec(res)]);
    }
    report.emit(o.out.as_deref(), o.format)?;
    Ok(ExitCode::SUCCESS)
}

pub fn compare(
    family: &str,
    r: f64,
    mn: &[String],
    window: &str,
    samples: u32,
    o: &OutputOpts,
) -> Result<ExitCode> {
    require_r(r)?;
    let family = Family::from_str(family).map_err(|e| bad_args(e.to_string()))?;
    let w = parse_window(window)?;
    let (x0, x1) = (w[0], w[1]);
    if x1 <= x0 || !x0.is_finite() || !x1.is_finite() {
        return Err(bad_args(format!("empty x range [{x0}, {x1}]")));
    }
    let prec = o.precision_bits as usize;
    let mut pairs = Vec::new();
    for spec in mn {
        let (pm, pn) = parse_pair(spec)?;
        if pm.fract() != 0.0 || pn.fract() != 0.0 || pm < 1.0 || pn < 1.0 {
            return Err(bad_args(format!("--mn wants positive integers, got {spec:?}")));
        }
        pairs.push((pm as i64, pn as i64));
    }

    let mut report = Report::new("compare");
    report.meta("family", family.to_string());
    report.meta("r", dec_f64(r, prec));
    report.meta("pairs", pairs.iter().map(|(m, n)| format!("({m},{n})")).collect::<Vec<_>>().join(" "));
    report.meta("x_range", format!("{x0},{x1}"));
    report.meta("samples", samples.to_string());
    echo_output(&mut report, o);

    let solutions: Vec<_> = pairs
        .iter()
        .map(|&(m, n)| {
            let w = build_solution(family, m, n)?;
            let ev = SolutionEvaluator::new(&w, prec);
            Ok::<_, p4hermite::Error>((w, ev))
        })
        .collect::<std::result::Result<_, _>>()
        .context("constructing solutions")?;

    let section = report.section(
        "comparison",
        &["m", "n", "x", "exact_re", "exact_im", "approx_re", "approx_im", "abs_error", "status"],
    );
    for k in 0..samples {
        let x_val = x0 + (x1 - x0) * k as f64 / (samples as f64 - 1.0);
        let x = hp::Complex::from_f64(x_val, 0.0, prec);
        let sd = spectral_data(&x, r, prec).context("spectral data")?;
        let approx = asymptotic_w_from(&sd, family);
        for ((m, n), (w, ev)) in pairs.iter().zip(&solutions) {
            let mut row = vec![m.to_string(), n.to_string(), dec_f64(x_val, prec)];
            match scaled_eval_with(ev, w, &x, prec) {
                Ok(exact) => {
                    let err = exact.sub(&approx).abs();
                    row.extend([
                        dec(&exact.re),
                        dec(&exact.im),
                        dec(&approx.re),
                        dec(&approx.im),
                        dec(&err),
                        "ok".to_string(),
                    ]);
                }
                Err(p4hermite::Error::NearPole(_)) => {
                    row.extend([
                        "nan".into(),
                        "nan".into(),
                        dec(&approx.re),
                        dec(&approx.im),
                        "nan".into(),
                        "near-pole".into(),
                    ]);
                }
                Err(e) => return Err(anyhow!(e)).context("scaled evaluation"),
            }
            section.rows.push(row);
        }
    }
    report.emit(o.out.as_deref(), o.format)?;
    Ok(ExitCode::SUCCESS)
}

pub fn phase(
    x: &str,
    r: f64,
    window: &str,
    grid: u32,
    with_sigma: bool,
    o: &OutputOpts,
) -> Result<ExitCode> {
    require_r(r)?;
    let (re, im) = parse_pair(x)?;
    let w = parse_window(window)?;
    if w[1] <= w[0] || w[3] <= w[2] || w.iter().any(|v| !v.is_finite()) {
        return Err(bad_args(format!("degenerate window {window:?}")));
    }
    let prec = o.precision_bits as usize;
    let xh = hp::Complex::from_f64(re, im, prec);
    let sd = spectral_data(&xh, r, prec).context("spectral data")?;
    let chart = phase_chart(&sd, w, grid as usize).context("phase chart")?;

    let mut report = Report::new("phase");
    report.meta("x", format!("{re},{im}"));
    report.meta("r", dec_f64(r, prec));
    report.meta("window", window.to_string());
    report.meta("grid", grid.to_string());
    echo_output(&mut report, o);
    for (name, v) in [("a", &sd.a), ("b", &sd.b), ("c", &sd.c)] {
        report.meta(&format!("{name}_re"), dec(&v.re));
        report.meta(&format!("{name}_im"), dec(&v.im));
    }
    let section = report.section("grid", &["re", "im", "sign"]);
    for row in 0..chart.grid_n {
        for col in 0..chart.grid_n {
            let (zre, zim) = chart.cell_center(row, col);
            section.rows.push(vec![
                dec_f64(zre, prec),
                dec_f64(zim, prec),
                chart.sign(row, col).to_string(),
            ]);
        }
    }
    if with_sigma {
        let trace = trace_sigma(&sd, 4000).context("band-line trace")?;
        let section = report.section("sigma", &["re", "im"]);
        for p in &trace.points {
            section.rows.push(vec![dec(&p.re), dec(&p.im)]);
        }
    }
    report.emit(o.out.as_deref(), o.format)?;
    Ok(ExitCode::SUCCESS)
}

pub fn sigma(x: &str, r: f64, max_steps: usize, o: &OutputOpts) -> Result<ExitCode> {
    require_r(r)?;
    let (re, im) = parse_pair(x)?;
    let prec = o.precision_bits as usize;
    let xh = hp::Complex::from_f64(re, im, prec);
    let sd = spectral_data(&xh, r, prec).context("spectral data")?;
    let trace = trace_sigma(&sd, max_steps).context("band-line trace")?;

    let mut report = Report::new("sigma");
    report.meta("x", format!("{re},{im}"));
    report.meta("r", dec_f64(r, prec));
    report.meta("max_steps", max_steps.to_string());
    echo_output(&mut report, o);
    for (name, v) in [("a", &sd.a), ("b", &sd.b)] {
        report.meta(&format!("{name}_re"), dec(&v.re));
        report.meta(&format!("{name}_im"), dec(&v.im));
    }
    report.meta("winding", format!("{:.6}", trace.winding));
    report.meta("steps", trace.points.len().to_string());
    let section = report.section("points", &["re", "im", "re_phi"]);
    for p in &trace.points {
        let level = re_phi_tilde(p, &sd).map(|v| dec(&v)).unwrap_or_else(|_| "0".into());
        section.rows.push(vec![dec(&p.re), dec(&p.im), level]);
    }
    report.emit(o.out.as_deref(), o.format)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(max_mn: u32, o: &OutputOpts) -> Result<ExitCode> {
    let max = max_mn as i64;
    let mut report = Report::new("verify");
    report.meta("max_mn", max.to_string());
    echo_output(&mut report, o);
    let section = report.section("checks", &["suite", "family", "m", "n", "pass"]);
    let mut all_pass = true;
    let push = |section: &mut crate::emit::Section, suite: &str, family: &str, m: i64, n: i64, pass: bool| {
        section.rows.push(vec![
            suite.into(),
            family.into(),
            m.to_string(),
            n.to_string(),
            if pass { "true".into() } else { "false".into() },
        ]);
        pass
    };

    // ODE residual: the structural solution solves Painleve-IV exactly
    for family in [Family::I, Family::II, Family::III] {
        for m in 0..=max {
            for n in 0..=max {
                let Ok(w) = build_solution(family, m, n) else { continue };
                let pass = p4_residual(&w).is_zero();
                all_pass &= push(section, "ode_residual", &family.to_string(), m, n, pass);
            }
        }
    }
    // determinant switch (both identities)
    for m in 1..=max {
        for n in 1..=m {
            let rep = check_lemma_switch(m as usize, n as usize)?;
            all_pass &= push(section, "determinant_switch", "-", m, n, rep.holds);
        }
    }
    // symmetry
    for m in 0..=max {
        for n in 0..=max {
            let twisted = rotate_argument_by_i(&gen_hermite(m as usize, n as usize));
            let pass = twisted.as_ref() == Some(&*gen_hermite(n as usize, m as usize));
            all_pass &= push(section, "symmetry", "-", m, n, pass);
        }
    }
    // specializations along the edges
    for m in 0..=max {
        let pass = *gen_hermite(m as usize, 1) == hermite(m as usize);
        all_pass &= push(section, "specialization_row", "-", m, 1, pass);
    }
    for n in 0..=max {
        let pass = rotate_argument_by_i(&hermite(n as usize))
            .is_some_and(|t| t == *gen_hermite(1, n as usize));
        all_pass &= push(section, "specialization_column", "-", 1, n, pass);
    }
    // orthogonal-polynomial determinant representations
    for m in 1..=max {
        for n in 1..=m {
            let pass = check_psi_representations(m as usize, n as usize)?;
            all_pass &= push(section, "psi_representation", "-", m, n, pass);
        }
    }
    // sum rule w^I + w^II + w^III + 2y = 0
    for m in 1..=max {
        for n in 1..=max {
            let to_fn = |f| -> Result<ExactRationalFn> {
                let w = build_solution(f, m, n)?;
                let (num, den) = w.as_num_den();
                Ok(ExactRationalFn::new(num, den)?)
            };
            let sum = to_fn(Family::I)?
                .add(&to_fn(Family::II)?)?
                .add(&to_fn(Family::III)?)?
                .add(&ExactRationalFn::from_poly(
                    p4hermite::poly::ExactPoly::from_integers(&[0, 2]),
                ))?;
            all_pass &= push(section, "sum_rule", "-", m, n, sum.is_zero());
        }
    }

    report.meta("all_pass", if all_pass { "true" } else { "false" });
    report.emit(o.out.as_deref(), o.format)?;
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
