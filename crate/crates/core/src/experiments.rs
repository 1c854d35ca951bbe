//! Data presets for questions the theory leaves open. They only emit
//! series; nothing here asserts an answer.

use std::f64::consts::PI;

use num_complex::Complex;
use serde::Serialize;

use crate::comb_builder::{build_comb, verify_comb, ASpec, GSpec};
use crate::domains::DomainSpec;
use crate::error::{HypError, Result};
use crate::semigroups::{Classification, KoenigsSemigroup};
use crate::speeds::{sample_speeds, SpeedSample};

/// Preset names with the quantity each one tabulates.
pub const EXPERIMENTS: &[(&str, &str)] = &[
    ("q1", "vᵀ(t) - ½ log t for every example"),
    ("q2", "|vᵀ(t) - ½ log t| for parabolic examples, positive step first"),
    ("q3", "vᵀ(t) and vᵀ(t)/v°(t) for parabolic examples"),
    ("q4", "v°(t) - ṽ°(t) for nested Koenigs domains h(𝔻) ⊂ h̃(𝔻)"),
    ("q5", "lower bounds for v(b_j)/g(b_j) along a comb, g = log(1+t)"),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub label: String,
    pub t: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Experiment {
    pub name: String,
    pub description: String,
    pub series: Vec<Series>,
}

impl Experiment {
    /// Long-format CSV: `series,t,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("series,t,value\n");
        for s in &self.series {
            for (t, v) in s.t.iter().zip(&s.values) {
                out.push_str(&format!("{},{t:.16e},{v:.16e}\n", s.label));
            }
        }
        out
    }
}

fn o() -> Complex<f64> {
    Complex::new(0.0, 0.0)
}

fn examples() -> Result<Vec<(&'static str, DomainSpec<f64>)>> {
    Ok(vec![
        ("strip(pi/2)", DomainSpec::strip(PI / 2.0)?),
        ("halfplane(0)", DomainSpec::halfplane(o())),
        ("sector(0,pi,0)", DomainSpec::sector(o(), PI, 0.0)?),
        ("sector(0,pi/2,0)", DomainSpec::sector(o(), PI / 2.0, 0.0)?),
        ("sector(0,pi/4,pi/4)", DomainSpec::sector(o(), PI / 4.0, PI / 4.0)?),
        ("sector(0,pi/2,pi)", DomainSpec::sector(o(), PI / 2.0, PI)?),
        ("koebe(0)", DomainSpec::koebe(o())),
    ])
}

fn series_of(
    label: &str,
    rows: &[SpeedSample<f64>],
    f: impl Fn(&SpeedSample<f64>) -> f64,
) -> Series {
    Series {
        label: label.to_string(),
        t: rows.iter().map(|s| s.t).collect(),
        values: rows.iter().map(f).collect(),
    }
}

fn half_log(t: f64) -> f64 {
    0.5 * t.ln()
}

/// Run a preset on the time grid (ignored by `q5`).
pub fn run_experiment(name: &str, grid: &[f64]) -> Result<Experiment> {
    let description = EXPERIMENTS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, d)| d.to_string())
        .ok_or_else(|| HypError::spec(format!("unknown experiment {name:?}")))?;
    let positive: Vec<f64> = grid.iter().copied().filter(|t| *t > 0.0).collect();
    let mut series = Vec::new();
    match name {
        "q1" | "q2" | "q3" => {
            let mut list = Vec::new();
            for (label, dom) in examples()? {
                let sg = KoenigsSemigroup::new(dom)?;
                let class = sg.classification();
                if name != "q1" && matches!(class, Classification::Hyperbolic { .. }) {
                    continue;
                }
                let first = class == Classification::ParabolicPositiveStep;
                list.push((!first, label, sg));
            }
            list.sort_by_key(|(rank, _, _)| *rank);
            for (_, label, sg) in list {
                let rows = sample_speeds(&sg, &positive)?;
                match name {
                    "q1" => series.push(series_of(label, &rows, |s| s.v_t - half_log(s.t))),
                    "q2" => series.push(series_of(label, &rows, |s| (s.v_t - half_log(s.t)).abs())),
                    _ => {
                        series.push(series_of(&format!("{label}:v_t"), &rows, |s| s.v_t));
                        series.push(series_of(&format!("{label}:v_t/v_o"), &rows, |s| s.v_t / s.v_o));
                    }
                }
            }
        }
        "q4" => {
            let pairs = [
                ("sector(0,pi/4,pi/4)<sector(0,pi/2,pi/2)",
                    DomainSpec::sector(o(), PI / 4.0, PI / 4.0)?,
                    DomainSpec::sector(o(), PI / 2.0, PI / 2.0)?),
                ("sector(0,pi/2,pi/2)<koebe(0)",
                    DomainSpec::sector(o(), PI / 2.0, PI / 2.0)?,
                    DomainSpec::koebe(o())),
                ("halfplane(0)<halfplane(-1)",
                    DomainSpec::halfplane(o()),
                    DomainSpec::halfplane(Complex::new(-1.0, 0.0))),
                ("sector(0,pi/2,0)<halfplane(0)",
                    DomainSpec::sector(o(), PI / 2.0, 0.0)?,
                    DomainSpec::halfplane(o())),
            ];
            for (label, inner, outer) in pairs {
                let a = sample_speeds(&KoenigsSemigroup::new(inner)?, &positive)?;
                let b = sample_speeds(&KoenigsSemigroup::new(outer)?, &positive)?;
                series.push(Series {
                    label: label.to_string(),
                    t: positive.clone(),
                    values: a.iter().zip(&b).map(|(x, y)| x.v_o - y.v_o).collect(),
                });
            }
        }
        _ => {
            let cc = build_comb(GSpec::Log1p, &ASpec::Linear, 10)?;
            let rows = verify_comb(&cc)?;
            series.push(Series {
                label: "comb:ratio".into(),
                t: rows.iter().map(|r| cc.b[r.j]).collect(),
                values: rows.iter().map(|r| r.ratio).collect(),
            });
        }
    }
    Ok(Experiment {
        name: name.to_string(),
        description,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_emit_data() {
        let grid: Vec<f64> = crate::speeds::geometric_grid(1.0, 1e6, 32).unwrap();
        for (name, _) in EXPERIMENTS {
            let e = run_experiment(name, &grid).unwrap();
            assert!(!e.series.is_empty(), "{name}");
            assert!(e.series.iter().all(|s| s.t.len() == s.values.len()));
            assert!(e.to_csv().starts_with("series,t,value\n"));
        }
        assert!(run_experiment("q9", &grid).is_err());
    }
}
