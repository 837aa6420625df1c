//! Diagonalization pipeline against the closed-form concurrences.

use spinthermal::concurrence::{concurrence_closed_form, concurrence_general};
use spinthermal::thermalstate::gibbs_density;
use spinthermal::ModelSpec;

const JS: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
const DELTAS: [f64; 7] = [-3.0, -1.5, -0.5, 0.0, 0.5, 1.0, 2.0];
const BS: [f64; 5] = [-3.0, -1.0, 0.0, 1.5, 3.0];
const TS: [f64; 6] = [0.05, 0.12, 0.3, 1.0, 2.5, 5.0];

fn numeric(spec: &ModelSpec, t: f64) -> f64 {
    let rho = gibbs_density(spec, t).unwrap().trace_out(3).unwrap();
    concurrence_general(&rho).unwrap().concurrence
}

fn worst(specs: impl Iterator<Item = (ModelSpec, f64)>) -> (usize, f64, String) {
    let mut count = 0;
    let mut max = 0.0f64;
    let mut at = String::new();
    for (spec, t) in specs {
        let err = (numeric(&spec, t) - concurrence_closed_form(&spec, t).unwrap()).abs();
        if err > max {
            max = err;
            at = format!("{spec:?} T={t}");
        }
        count += 1;
    }
    (count, max, at)
}

#[test]
fn field_model_grid() {
    let points = JS.iter().flat_map(|&j| {
        DELTAS.iter().flat_map(move |&delta| {
            BS.iter()
                .flat_map(move |&b| TS.iter().map(move |&t| (ModelSpec::XxzField { j, delta, b }, t)))
        })
    });
    let (n, err, at) = worst(points);
    assert!(n >= 500);
    assert!(err < 1e-8, "max error {err:e} at {at}");
}

#[test]
fn xxz_model_grid() {
    let points = JS.iter().flat_map(|&j| {
        DELTAS.iter().flat_map(move |&delta| TS.iter().map(move |&t| (ModelSpec::Xxz { j, delta }, t)))
    });
    let (_, err, at) = worst(points);
    assert!(err < 1e-8, "max error {err:e} at {at}");
}

#[test]
fn xx_model_grid() {
    let points = (-40..=40).flat_map(|i| {
        let j = i as f64 * 0.05;
        TS.iter().map(move |&t| (ModelSpec::Xx { j }, t))
    });
    let (n, err, at) = worst(points);
    assert!(n >= 400);
    assert!(err < 1e-8, "max error {err:e} at {at}");
}
