use branchloci_core::dataset::parse_data_set;
use branchloci_core::disc::hyperbolic_distance;
use branchloci_core::polygon::{build_glued_octagon, embed, realize_type1};
use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

fn valid_grid(steps: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..steps {
        let alpha = 0.3 + i as f64 * 0.7 / (steps - 1) as f64;
        let bound = (1.0 / (alpha / 2.0).tan()).powi(2).acosh();
        for j in 0..steps {
            out.push((alpha, bound + 0.05 + j as f64 * 3.0 / (steps - 1) as f64));
        }
    }
    out
}

#[test]
fn family_side_lengths_and_inradii() {
    let cases = [
        (
            "(10,0;(1,2),(2,5),(1,10))",
            (2.0 + 5f64.sqrt()).acosh(),
            ((5.0 + 3.0 * 5f64.sqrt()) / 2.0).sqrt().asinh(),
        ),
        (
            "(8,0;(1,2),(3,8),(1,8))",
            (5.0 + 4.0 * 2f64.sqrt()).acosh(),
            (2.0 + 2.0 * 2f64.sqrt()).sqrt().asinh(),
        ),
    ];
    for (text, a, s) in cases {
        let p = realize_type1(&parse_data_set(text).unwrap()).unwrap();
        assert!((p.side_length.value() - a).abs() <= 1e-10 * a, "{text}");
        assert!((p.inradius.value() - s).abs() <= 1e-10 * s, "{text}");
        let e = embed(&p);
        let area = 2.0 * PI * (2.0 * p.genus as f64 - 2.0);
        assert!((e.area() - area).abs() < 1e-8);
        let r = (s / 2.0).tanh();
        assert!(e.midpoints.iter().all(|m| (m.norm() - r).abs() < 1e-12));
    }
}

#[test]
fn polygon_json_round_trips() {
    let e = embed(&realize_type1(&parse_data_set("(8,0;(1,2),(3,8),(1,8))").unwrap()).unwrap());
    let json = e.to_json();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(json["source"]["pairing"][0], 4);
    let back: branchloci_core::EmbeddedPolygon = serde_json::from_value(json).unwrap();
    assert_eq!(back, e);
}

#[test]
fn glued_octagon_sides_and_seam() {
    for (alpha, s) in valid_grid(6) {
        let g = build_glued_octagon(alpha, s).unwrap();
        let v = g.octagon_vertices();
        // the seam is a diagonal; all eight sides have length s
        for i in 0..8 {
            let len = hyperbolic_distance(v[i], v[(i + 1) % 8]).value();
            assert!((len - s).abs() < 1e-9, "side {i}: {len}");
        }
        let p = &g.pentagon_vertices;
        for i in 1..5 {
            assert!((hyperbolic_distance(p[i], p[(i + 1) % 5]).value() - s).abs() < 1e-9);
        }
        assert!((3.0 * g.alpha + 2.0 * g.beta - PI).abs() <= 4.0 * f64::EPSILON);
    }
}

/// The two routes to `cosh ℓ` disagree in the source derivation; this check
/// is kept at its stated tolerance.
#[test]
fn seam_two_route_grid() {
    let worst = valid_grid(10)
        .into_iter()
        .map(|(a, s)| build_glued_octagon(a, s).unwrap().seam_residual())
        .fold(0.0, f64::max);
    assert!(worst < 1e-9, "max relative residual {worst:e}");
}

/// Six angles α and two angles 2β, measured from the vertex positions.
#[test]
fn glued_octagon_measured_angles() {
    for (alpha, s) in [(FRAC_PI_4, 3.0), (0.5, 4.0), (FRAC_PI_3 - 0.05, 2.5)] {
        let g = build_glued_octagon(alpha, s).unwrap();
        let a = g.measured_angles();
        for (i, &x) in a.iter().enumerate() {
            let want = if i == 0 || i == 4 {
                2.0 * g.beta
            } else {
                g.alpha
            };
            assert!(
                (x - want).abs() < 1e-8,
                "alpha {alpha}, s {s}, vertex {i}: {x} vs {want}"
            );
        }
    }
}
