//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints its own PASS/FAIL line; the process fails if any criterion does.

use std::f64::consts::{LN_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex;

use hypspeed::comb_builder::{build_comb, verify_comb, ASpec, GSpec};
use hypspeed::domains::{DomainKind, DomainSpec};
use hypspeed::semigroups::{Classification, KoenigsSemigroup};
use hypspeed::speeds::{
    fit_speeds, geometric_grid, nontangential_report, sample_speeds, surrogate_speeds, Basis,
    SpeedColumn, SpeedSample, Verdict,
};
use hypspeed::verify::run_suite;

const SEED: u64 = 42;
const TOL: f64 = 1e-9;
const WINDOW: (f64, f64) = (1e6, 1e8);

type Outcome = Result<String, String>;

fn models() -> Vec<(&'static str, KoenigsSemigroup<f64>)> {
    let o = Complex::new(0.0, 0.0);
    [
        ("Strip{pi/2}", DomainSpec::strip(PI / 2.0).unwrap()),
        ("HalfPlaneRight{0}", DomainSpec::halfplane(o)),
        ("Sector{0,pi/4,pi/4}", DomainSpec::sector(o, PI / 4.0, PI / 4.0).unwrap()),
        ("Sector{0,pi,0}", DomainSpec::sector(o, PI, 0.0).unwrap()),
        ("Koebe{0}", DomainSpec::koebe(o)),
    ]
    .into_iter()
    .map(|(n, d)| (n, KoenigsSemigroup::new(d).unwrap()))
    .collect()
}

fn grid() -> Vec<f64> {
    geometric_grid(1.0, 1e8, 512).unwrap()
}

fn speeds(sg: &KoenigsSemigroup<f64>) -> Vec<SpeedSample<f64>> {
    sample_speeds(sg, &grid()).unwrap()
}

fn suite_clean(name: &str, n: usize) -> Result<hypspeed::verify::SuiteReport, String> {
    let r = run_suite(name, n, SEED, TOL).map_err(|e| e.to_string())?;
    if r.passed() {
        Ok(r)
    } else {
        Err(format!(
            "{name}: {} violations, worst margin {:e}",
            r.violations, r.worst_margin
        ))
    }
}

fn pythagoras() -> Outcome {
    let r = suite_clean("pythagoras", 10_000)?;
    let gap = r.metrics["min_upper_gap"];
    if gap > 0.05 {
        return Err(format!("closest approach to the upper inequality is {gap:e}"));
    }
    Ok(format!("{} samples, min upper gap {gap:.2e}", r.samples))
}

fn lemma() -> Outcome {
    let r = suite_clean("lemma_halfplane", 10_000)?;
    Ok(format!("{} checks, worst margin {:.2e}", r.samples, r.worst_margin))
}

fn split_and_julia() -> Outcome {
    let mut checked = 0;
    for (name, sg) in models() {
        for s in speeds(&sg) {
            let lower = s.v_o + s.v_t - 0.5 * LN_2;
            let upper = s.v_o + s.v_t;
            let julia = s.v_o + 4.0 * LN_2;
            if !(lower <= s.v + TOL && s.v <= upper + TOL && s.v_t <= julia + TOL) {
                return Err(format!(
                    "{name} at t = {:e}: v = {}, v_o = {}, v_T = {}",
                    s.t, s.v, s.v_o, s.v_t
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} samples"))
}

fn surrogates() -> Outcome {
    let bounds = [0.5 * LN_2, 0.5 * LN_2, 1.5 * LN_2];
    let mut checked = 0;
    for (name, sg) in models() {
        for s in surrogate_speeds(&sg, &grid()).unwrap() {
            if !s.past_threshold {
                continue;
            }
            let devs = [s.dev_total, s.dev_orth, s.dev_tang];
            for (k, (d, b)) in devs.iter().zip(bounds).enumerate() {
                // rounding in v itself grows with its size
                let slack = TOL + 16.0 * f64::EPSILON * s.s_total.abs().max(1.0);
                if !(d.abs() <= b + slack) {
                    return Err(format!("{name} at t = {:e}: deviation {k} is {d}", s.t));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} samples past threshold"))
}

fn coefficient(rows: &[SpeedSample<f64>], column: SpeedColumn, basis: Basis) -> f64 {
    fit_speeds(rows, column, basis, WINDOW).unwrap().coefficient
}

fn asymptotics() -> Outcome {
    let mut notes = Vec::new();
    let mut within = |label: &str, got: f64, want: f64, tol: f64| -> Result<(), String> {
        notes.push(format!("{label}={got:.4}"));
        if (got - want).abs() <= tol {
            Ok(())
        } else {
            Err(format!("{label} = {got}, expected {want} ± {tol}"))
        }
    };
    let m = models();
    let by = |n: &str| &m.iter().find(|(name, _)| *name == n).unwrap().1;

    let koebe = speeds(by("Koebe{0}"));
    within("koebe.v", coefficient(&koebe, SpeedColumn::V, Basis::LogT), 0.25, 0.02)?;
    let sup = koebe.iter().map(|s| s.v_t).fold(0.0, f64::max);
    if sup >= 3.0 {
        return Err(format!("Koebe sup v_T = {sup}"));
    }

    let sym = speeds(by("Sector{0,pi/4,pi/4}"));
    within("sector_sym.v_o", coefficient(&sym, SpeedColumn::VO, Basis::LogT), 1.0, 0.02)?;

    let half = speeds(by("Sector{0,pi,0}"));
    within("sector_half.v", coefficient(&half, SpeedColumn::V, Basis::LogT), 1.0, 0.03)?;
    within("sector_half.v_o", coefficient(&half, SpeedColumn::VO, Basis::LogT), 0.5, 0.03)?;
    within("sector_half.v_T", coefficient(&half, SpeedColumn::VT, Basis::LogT), 0.5, 0.03)?;

    let strip = speeds(by("Strip{pi/2}"));
    let last = strip.last().unwrap();
    within("strip.v/t", last.v / last.t, 1.0, 0.01)?;

    let hp = by("HalfPlaneRight{0}");
    let base = hp.base_model_point();
    if (base - Complex::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(format!("half-plane orbit starts at {base}, not p + 1"));
    }
    let sup = speeds(hp)
        .iter()
        .filter(|s| s.t >= WINDOW.0)
        .map(|s| (s.v - s.t.ln()).abs())
        .fold(0.0, f64::max);
    if sup >= 2.0 {
        return Err(format!("half-plane sup |v - log t| = {sup}"));
    }
    notes.push(format!("halfplane.sup|v-log t|={sup:.4}"));
    Ok(notes.join(", "))
}

fn lower_bounds() -> Outcome {
    let mut worst = f64::INFINITY;
    for (name, sg) in models() {
        let class = sg.classification();
        let rows = speeds(&sg);
        let mut exprs: Vec<Box<dyn Fn(&SpeedSample<f64>) -> f64>> = vec![
            match class {
                Classification::Hyperbolic { lambda } => Box::new(move |s| s.v - 0.5 * lambda * s.t),
                Classification::ParabolicPositiveStep => Box::new(|s| s.v - s.t.ln()),
                Classification::ParabolicZeroStep => Box::new(|s| s.v - 0.25 * s.t.ln()),
            },
            Box::new(|s| s.v_o - 0.25 * s.t.ln()),
        ];
        if class == Classification::ParabolicPositiveStep {
            exprs.push(Box::new(|s| s.v_o - 0.5 * s.t.ln()));
        }
        for (k, f) in exprs.iter().enumerate() {
            let m = rows.iter().map(|s| f(s)).fold(f64::INFINITY, f64::min);
            if !(m > -10.0) {
                return Err(format!("{name}: expression {k} reaches {m}"));
            }
            worst = worst.min(m);
        }
    }
    Ok(format!("smallest minimum {worst:.4}"))
}

fn projection() -> Outcome {
    let p = suite_clean("projection", 1_000)?;
    let err = p.metrics["max_argmin_error"];
    if err > 1e-6 {
        return Err(format!("argmin error {err:e}"));
    }
    let c = suite_clean("contraction", 10_000)?;
    Ok(format!(
        "max argmin error {err:.2e}, {} contraction checks",
        c.samples
    ))
}

fn comb() -> Outcome {
    let cc = build_comb::<f64>(GSpec::Log1p, &ASpec::Linear, 10).map_err(|e| e.to_string())?;
    for j in 1..=10 {
        if !(cc.a[j - 1] == j as f64) {
            return Err(format!("a_{j} = {}", cc.a[j - 1]));
        }
        let c = cc.constraint(j);
        if !(c < 1.0) {
            return Err(format!("constraint at j = {j} is {c}"));
        }
    }
    let rows = verify_comb(&cc).map_err(|e| e.to_string())?;
    if rows.len() != 10 {
        return Err(format!("{} ratio rows", rows.len()));
    }
    for r in &rows {
        if !(r.ratio >= r.j as f64 / 4.0 - 1e-9) {
            return Err(format!("ratio_{} = {} < {}", r.j, r.ratio, r.j as f64 / 4.0));
        }
    }
    let growth = rows[9].ratio / rows[0].ratio;
    if !(growth > 5.0) {
        return Err(format!("ratio_10 / ratio_1 = {growth}"));
    }
    Ok(format!("ratio_10/ratio_1 = {growth:.3}"))
}

fn nontangential() -> Outcome {
    let mut notes = Vec::new();
    for (name, sg) in models() {
        let expect = match *sg.domain().kind() {
            DomainKind::Strip { .. } => continue,
            DomainKind::Sector { alpha, beta, .. } if alpha > 0.0 && beta > 0.0 => Verdict::Bounded,
            DomainKind::Koebe { .. } => Verdict::Bounded,
            _ => Verdict::Unbounded,
        };
        let r = nontangential_report(&sg, &grid()).map_err(|e| e.to_string())?;
        if r.ratio_verdict != expect || r.v_t_verdict != expect {
            return Err(format!("{name}: {r:?}"));
        }
        if expect == Verdict::Unbounded {
            let end = r.ratio_end.max(1.0 / r.ratio_end);
            if !(end > 1e6 && r.v_t_end > 5.0) {
                return Err(format!("{name}: ratio at 1e8 is {end}, v_T is {}", r.v_t_end));
            }
        } else if !(r.ratio_sup <= 10.0 && r.v_t_sup < 3.0) {
            return Err(format!("{name}: {r:?}"));
        }
        notes.push(format!("{name} {expect:?}"));
    }
    Ok(notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("pythagoras sandwich", pythagoras),
        ("half-plane distance lemma", lemma),
        ("speed split and tangential bound", split_and_julia),
        ("surrogate bounds", surrogates),
        ("asymptotic constants", asymptotics),
        ("class and orthogonal lower bounds", lower_bounds),
        ("projection oracle and contraction", projection),
        ("comb construction", comb),
        ("non-tangentiality cross-check", nontangential),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = run();
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} ({secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
