//! Quadrature-mode derivatives against closed forms on a catalogue of
//! elementary functions, at seeded random interior points.

use num_complex::Complex64;
use oscdisc_core::analytic::{jet, mobius_jet, AnalyticFunction, Jet};
use oscdisc_core::disc::DiscPoint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn catalogue() -> Vec<(AnalyticFunction, AnalyticFunction)> {
    let mut pairs: Vec<(AnalyticFunction, AnalyticFunction)> = Vec::new();

    let push = |pairs: &mut Vec<(AnalyticFunction, AnalyticFunction)>,
                label: &str,
                value: fn(Complex64) -> Complex64,
                jet_fn: fn(Complex64) -> Jet| {
        pairs.push((
            AnalyticFunction::from_closed_form(label, jet_fn),
            AnalyticFunction::from_values(label, value),
        ));
    };

    push(&mut pairs, "exp", |z| z.exp(), |z| {
        let e = z.exp();
        Jet::new(e, e, e, e)
    });
    push(&mut pairs, "sin", |z| z.sin(), |z| {
        Jet::new(z.sin(), z.cos(), -z.sin(), -z.cos())
    });
    push(&mut pairs, "cos", |z| z.cos(), |z| {
        Jet::new(z.cos(), -z.sin(), -z.cos(), z.sin())
    });
    push(&mut pairs, "sinh", |z| z.sinh(), |z| {
        Jet::new(z.sinh(), z.cosh(), z.sinh(), z.cosh())
    });
    push(&mut pairs, "cubic", |z| z * z * z + 2.0 * z, |z| {
        Jet::new(
            z * z * z + 2.0 * z,
            3.0 * z * z + Complex64::new(2.0, 0.0),
            6.0 * z,
            Complex64::new(6.0, 0.0),
        )
    });
    push(
        &mut pairs,
        "geometric",
        |z| Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - z),
        |z| {
            let d = Complex64::new(1.0, 0.0) - z;
            Jet::new(
                1.0 / d,
                1.0 / (d * d),
                2.0 / (d * d * d),
                6.0 / (d * d * d * d),
            )
        },
    );
    push(
        &mut pairs,
        "log1p",
        |z| (Complex64::new(1.0, 0.0) + z).ln(),
        |z| {
            let d = Complex64::new(1.0, 0.0) + z;
            Jet::new(d.ln(), 1.0 / d, -1.0 / (d * d), 2.0 / (d * d * d))
        },
    );
    push(&mut pairs, "gauss", |z| (z * z).exp(), |z| {
        let e = (z * z).exp();
        Jet::new(
            e,
            2.0 * z * e,
            (2.0 + 4.0 * z * z) * e,
            (12.0 * z + 8.0 * z * z * z) * e,
        )
    });
    push(
        &mut pairs,
        "shifted-square",
        |z| {
            let d = Complex64::new(2.0, 0.0) - z;
            1.0 / (d * d)
        },
        |z| {
            let d = Complex64::new(2.0, 0.0) - z;
            let d2 = d * d;
            Jet::new(1.0 / d2, 2.0 / (d2 * d), 6.0 / (d2 * d2), 24.0 / (d2 * d2 * d))
        },
    );
    // Möbius with a fixed parameter
    let a = DiscPoint::from_parts(0.3, 0.2).unwrap();
    pairs.push((
        AnalyticFunction::from_closed_form("moebius", move |z| mobius_jet(a, z)),
        AnalyticFunction::from_values("moebius", move |z| mobius_jet(a, z).value),
    ));

    pairs
}

#[test]
fn quadrature_jets_match_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let points: Vec<DiscPoint> = (0..20)
        .map(|_| loop {
            let re: f64 = rng.gen_range(-0.85..0.85);
            let im: f64 = rng.gen_range(-0.85..0.85);
            if (re * re + im * im).sqrt() < 0.85 {
                break DiscPoint::from_parts(re, im).unwrap();
            }
        })
        .collect();

    for (closed, quadrature) in catalogue() {
        for &z in &points {
            let a = jet(&closed, z, 3).unwrap();
            let b = jet(&quadrature, z, 3).unwrap();
            for (label, (x, y)) in [
                ("value", (a.value, b.value)),
                ("d1", (a.d1, b.d1)),
                ("d2", (a.d2, b.d2)),
                ("d3", (a.d3, b.d3)),
            ] {
                let scale = x.norm().max(1.0);
                assert!(
                    (x - y).norm() / scale < 1e-8,
                    "{} {label} mismatch at {z:?}: {x} vs {y}",
                    closed.label(),
                );
            }
        }
    }
}
