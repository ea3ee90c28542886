//! End-to-end verification suite, shared by the `acceptance` test target
//! and `branchloci selftest`.
//!
//! Every check compares against an oracle computed independently of the
//! pipeline under test. Passing `Some(tol)` to [`run`] replaces every
//! tolerance, which is how the harness is exercised with a deliberately
//! impossible budget.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_3, PI, TAU};
use std::time::Instant;

use crate::dataset::{
    check_compatibility, compose_compatible, parse_data_set, ActionKind, DataSet,
};
use crate::disc::{
    common_perpendicular, geodesic_through, hyperbolic_distance, rotation, translation_to_origin,
    DiscPoint, Geodesic, Length,
};
use crate::fnpipe::{
    branch_locus_point, family_length, fn_fixed_point, gamma2_two_route_residual,
    irregular_lengths, min_length_family, solve_fixed_point, Family, FixedPoint,
};
use crate::oracle;
use crate::polygon::build_glued_octagon;

pub const ORDER10: &str = "(10,0;(1,2),(2,5),(1,10))";
pub const ORDER8: &str = "(8,0;(1,2),(3,8),(1,8))";
pub const ORDER5: &str = "(5,0;(2,5),(2,5),(1,5))";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.detail
        )
    }
}

struct Budget(Option<f64>);

impl Budget {
    fn tol(&self, stated: f64) -> f64 {
        self.0.unwrap_or(stated)
    }
}

fn rel_err(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
}

fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| rel_err(*x, *y))
        .fold(0.0, f64::max)
}

fn solved(text: &str) -> Result<FixedPoint, String> {
    let d = parse_data_set(text).map_err(|e| e.to_string())?;
    solve_fixed_point(&d).map_err(|e| e.to_string())
}

/// Runs criteria 1 to 10 in order.
pub fn run(tolerance_override: Option<f64>) -> Vec<CheckResult> {
    let b = Budget(tolerance_override);
    vec![
        fixed_point(&b, 1, "order-10 fixed point", ORDER10, Family::Order10),
        fixed_point(&b, 2, "order-8 fixed point", ORDER8, Family::Order8),
        dual_closed_forms(&b),
        geometric_agreement(&b),
        order8_intermediates(&b),
        shared_fixed_point(),
        compatible_pair_locus(&b),
        data_set_suite(),
        length_family(&b),
        property_suites(&b),
    ]
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

fn fixed_point(
    b: &Budget,
    criterion: u8,
    name: &'static str,
    text: &str,
    family: Family,
) -> CheckResult {
    let start = Instant::now();
    let outcome = parse_data_set(text)
        .map_err(|e| e.to_string())
        .and_then(|d| fn_fixed_point(&d).map_err(|e| e.to_string()));
    let elapsed = start.elapsed().as_secs_f64();
    let (passed, detail) = match outcome {
        Ok(c) => {
            let expected: Vec<f64> = oracle::closed_forms(family)
                .iter()
                .map(|f| f.value)
                .collect();
            let err = max_rel(&c.as_vec(), &expected);
            (
                err <= b.tol(1e-9) && elapsed < 1.0,
                format!(
                    "max rel err {err:.2e}, {elapsed:.3}s, coords {:?}",
                    c.as_vec()
                ),
            )
        }
        Err(e) => (false, e),
    };
    CheckResult {
        criterion,
        name,
        passed,
        detail,
    }
}

fn dual_closed_forms(b: &Budget) -> CheckResult {
    let mut worst: f64 = 0.0;
    for family in [Family::Order10, Family::Order8] {
        let cf = oracle::closed_forms(family);
        for (i, alt) in oracle::log_forms(family) {
            worst = worst.max((cf[i].value - alt.value).abs());
        }
    }
    CheckResult {
        criterion: 3,
        name: "logarithmic closed forms",
        passed: worst <= b.tol(1e-12),
        detail: format!("max abs gap {worst:.2e} over 5 forms"),
    }
}

fn foot_pair(g1: &Geodesic, g2: &Geodesic) -> Result<(DiscPoint, DiscPoint), String> {
    common_perpendicular(g1, g2)
        .map(|(_, f1, f2)| (f1, f2))
        .map_err(|e| e.to_string())
}

/// Lengths from distances between embedded marked points and twists from
/// perpendicular feet, independently of the template machinery.
fn geometric_agreement(b: &Budget) -> CheckResult {
    let outcome = (|| -> Result<(f64, f64), String> {
        let d = |p, q| hyperbolic_distance(p, q).value();
        let geo = |p, q| geodesic_through(p, q).map_err(|e| e.to_string());
        let mut rel: f64 = 0.0;
        let mut abs: f64 = 0.0;

        let e = solved(ORDER10)?.polygon;
        let m = &e.midpoints;
        let cf: Vec<f64> = oracle::closed_forms(Family::Order10)
            .iter()
            .map(|f| f.value)
            .collect();
        let (p3, p1) = foot_pair(&geo(m[0], m[5])?, &geo(m[1], m[2])?)?;
        let measured = [
            d(m[1], m[2]) + d(m[7], m[6]),
            d(m[3], m[4]) + d(m[9], m[8]),
            d(m[0], m[5]),
            2.0 * d(p1, m[2]),
            2.0 * d(p1, m[2]),
            -2.0 * d(e.center, p3),
        ];
        rel = rel.max(max_rel(&measured, &cf));
        let (x3, y3) = oracle::order10_p3();
        let (x1, y1) = oracle::order10_p1();
        abs = abs.max((p3.x - x3).abs().max((p3.y - y3).abs()));
        abs = abs.max((p1.x - x1).abs().max((p1.y - y1).abs()));

        let e = solved(ORDER8)?.polygon;
        let (m, v) = (&e.midpoints, &e.vertices);
        let cf: Vec<f64> = oracle::closed_forms(Family::Order8)
            .iter()
            .map(|f| f.value)
            .collect();
        let (q1, p1) = foot_pair(&geo(m[0], m[1])?, &geo(v[0], v[4])?)?;
        let measured = [
            d(m[0], m[1]) + d(m[5], m[4]),
            d(m[2], m[3]) + d(m[7], m[6]),
            d(v[0], v[4]),
            2.0 * d(q1, m[1]),
            2.0 * d(q1, m[1]),
            -2.0 * d(e.center, p1),
        ];
        rel = rel.max(max_rel(&measured, &cf));
        Ok((rel, abs))
    })();
    let (passed, detail) = match outcome {
        Ok((rel, abs)) => (
            rel <= b.tol(1e-9) && abs <= b.tol(1e-10),
            format!("max rel err {rel:.2e}; order-10 P1, P3 vs printed coordinates {abs:.2e}"),
        ),
        Err(e) => (false, e),
    };
    CheckResult {
        criterion: 4,
        name: "disc-kernel lengths and twists",
        passed,
        detail,
    }
}

fn order8_intermediates(b: &Budget) -> CheckResult {
    let outcome = (|| -> Result<f64, String> {
        let e = solved(ORDER8)?.polygon;
        let (m, v) = (&e.midpoints, &e.vertices);
        let want = oracle::order8_values();
        let mut gaps = vec![
            (m[0].norm() - want.r).abs(),
            m[0].x.abs(),
            (m[0].y + want.r).abs(),
        ];
        match geodesic_through(m[0], m[1]).map_err(|e| e.to_string())? {
            Geodesic::Arc { a, b, rho } => gaps.extend([
                (a - want.a).abs(),
                (b - want.b).abs(),
                (rho - want.rho).abs(),
            ]),
            other => return Err(format!("M1M2 is not an arc: {other:?}")),
        }
        let g3 = geodesic_through(v[0], v[4]).map_err(|e| e.to_string())?;
        let (q1, p1) = foot_pair(
            &geodesic_through(m[0], m[1]).map_err(|e| e.to_string())?,
            &g3,
        )?;
        gaps.extend([
            (q1.x - want.q1.0).abs(),
            (q1.y - want.q1.1).abs(),
            q1.euclidean_distance(m[0]),
            (p1.x - want.p1.0).abs(),
            (p1.y - want.p1.1).abs(),
        ]);
        Ok(gaps.into_iter().fold(0.0, f64::max))
    })();
    let (passed, detail) = match outcome {
        Ok(gap) => (
            gap <= b.tol(1e-10),
            format!("R, (a, b, rho), Q1 = M1, P1: max abs gap {gap:.2e}"),
        ),
        Err(e) => (false, e),
    };
    CheckResult {
        criterion: 5,
        name: "order-8 intermediate values",
        passed,
        detail,
    }
}

fn shared_fixed_point() -> CheckResult {
    let json = |text: &str| -> Result<String, String> {
        let d = parse_data_set(text).map_err(|e| e.to_string())?;
        fn_fixed_point(&d)
            .map(|c| c.to_json())
            .map_err(|e| e.to_string())
    };
    let (passed, detail) = match (json(ORDER5), json(ORDER10)) {
        (Ok(a), Ok(b)) if a == b => (true, format!("{} bytes identical", a.len())),
        (Ok(a), Ok(b)) => (false, format!("{a} != {b}")),
        (Err(e), _) | (_, Err(e)) => (false, e),
    };
    CheckResult {
        criterion: 6,
        name: "order-5 shares the order-10 fixed point",
        passed,
        detail,
    }
}

/// The 20×20 grid: α over `[0.3, 1.0]`, `s` over three units above the
/// existence bound.
pub fn locus_grid() -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(400);
    for i in 0..20 {
        let alpha = 0.3 + i as f64 * 0.7 / 19.0;
        let bound = (1.0 / (alpha / 2.0).tan()).powi(2).acosh();
        for j in 0..20 {
            out.push((alpha, bound + 0.05 + j as f64 * 3.0 / 19.0));
        }
    }
    out
}

fn compatible_pair_locus(b: &Budget) -> CheckResult {
    let start = Instant::now();
    let mut pattern_ok = true;
    let mut worst: f64 = 0.0;
    let mut errors = Vec::new();
    for (alpha, s) in locus_grid() {
        match branch_locus_point(alpha, s) {
            Ok(p) => {
                let c = &p.coords;
                pattern_ok &= c.lengths[0] == c.lengths[2]
                    && c.twists[1] == 0.0
                    && c.twists[2] == -c.twists[0]
                    && c.lengths.len() == 3
                    && c.twists.len() == 3;
            }
            Err(e) => errors.push(format!("({alpha}, {s}): {e}")),
        }
        match gamma2_two_route_residual(alpha, s) {
            Ok(r) => worst = worst.max(r),
            Err(e) => errors.push(format!("({alpha}, {s}): {e}")),
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let gb = build_glued_octagon(0.5, 4.0)
        .map(|g| (3.0 * g.alpha + 2.0 * g.beta - PI).abs() <= 4.0 * f64::EPSILON)
        .unwrap_or(false);
    let bound = (1.0 / (PI / 8.0).tan()).powi(2).acosh();
    let alpha = PI / 4.0;
    let probes = branch_locus_point(alpha, bound - 1e-9).is_err()
        && branch_locus_point(alpha, bound + 1e-6).is_ok()
        && branch_locus_point(FRAC_PI_3, 5.0).is_err()
        && branch_locus_point(FRAC_PI_3 - 1e-9, 5.0).is_ok()
        && branch_locus_point(0.0, 5.0).is_err()
        && branch_locus_point(1.2, 3.0).is_err();
    let residual_ok = worst < b.tol(1e-9);
    CheckResult {
        criterion: 7,
        name: "compatible-pair locus",
        passed: pattern_ok && errors.is_empty() && residual_ok && gb && probes && elapsed < 2.0,
        detail: format!(
            "pattern {}, two-route gamma2 residual max {worst:.3e} (budget {:.0e}) {}, \
             3a+2b=pi {}, boundary probes {}, {} errors, {elapsed:.3}s",
            ok(pattern_ok),
            b.tol(1e-9),
            ok(residual_ok),
            ok(gb),
            ok(probes),
            errors.len()
        ),
    }
}

fn ok(flag: bool) -> &'static str {
    if flag {
        "ok"
    } else {
        "FAILED"
    }
}

/// The data sets quoted in the paper with their genus and class.
pub const QUOTED: [(&str, u64, ActionKind, bool); 6] = [
    (ORDER10, 2, ActionKind::Type1, true),
    (ORDER8, 2, ActionKind::Type1, true),
    (ORDER5, 2, ActionKind::Type1, true),
    ("(4,0;(1,2),(1,4),(1,4))", 1, ActionKind::Type1, true),
    ("(4,0;(1,2),(3,4),(3,4))", 1, ActionKind::Type1, true),
    ("(4,0;(1,2),(1,2),(1,4),(3,4))", 2, ActionKind::Type2, false),
];

fn data_set_suite() -> CheckResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (text, genus, kind, irreducible) in QUOTED {
        match parse_data_set(text) {
            Ok(d) => {
                let class = d.classify();
                if !d.validate().valid
                    || d.genus().ok() != Some(genus)
                    || class.kind != kind
                    || class.irreducible != irreducible
                {
                    failures.push(format!("{text}: {:?}", class));
                }
            }
            Err(e) => failures.push(format!("{text}: {e}")),
        }
    }
    let all = oracle::enumerate_data_sets(8, 3);
    let mut pairs = 0usize;
    for d1 in &all {
        for d2 in all.iter().filter(|d2| d2.n == d1.n) {
            for r in 1..=d1.len() {
                for s in 1..=d2.len() {
                    if check_compatibility(d1, r, d2, s) != Ok(true) {
                        continue;
                    }
                    pairs += 1;
                    let k = d1.pairs[r - 1].n_i;
                    let expected = oracle::glued_genus(
                        d1.genus().unwrap_or(0),
                        d2.genus().unwrap_or(0),
                        d1.n,
                        k,
                    );
                    let got = compose_compatible(d1, r, d2, s).map(|g: DataSet| g.genus());
                    if got != Ok(Ok(expected)) {
                        failures.push(format!(
                            "{d1} at {r} with {d2} at {s}: {got:?} vs {expected}"
                        ));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    CheckResult {
        criterion: 8,
        name: "data-set suite",
        passed: failures.is_empty() && pairs > 0 && elapsed < 30.0,
        detail: format!(
            "6 quoted data sets, {} enumerated, {pairs} compatible pairs, {} failures{}, {elapsed:.2}s",
            all.len(),
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    }
}

fn length_family(b: &Budget) -> CheckResult {
    let mut worst: f64 = 0.0;
    for d in [0.5, 1.0, 2.0, 5.0] {
        let (l, g) = min_length_family(Length::new(d).expect("positive"));
        worst = worst.max(l.abs()).max((g.value() - d).abs());
    }
    let even = (family_length(1.0, 0.5) - family_length(1.0, -0.5)).abs() == 0.0;
    let a = Length::new((2.0 + 5f64.sqrt()).acosh()).expect("positive");
    let reduced = irregular_lengths(&[a; 5], 2.0 * PI / 5.0, 2.0 * PI / 5.0)
        .map(|(c1, _)| (c1.value() - oracle::closed_forms(Family::Order10)[0].value).abs())
        .unwrap_or(f64::INFINITY);
    CheckResult {
        criterion: 9,
        name: "length family and irregular lengths",
        passed: worst <= b.tol(1e-8) && reduced <= b.tol(1e-10) && even,
        detail: format!(
            "min_length_family max gap {worst:.2e}; irregular reduction gap {reduced:.2e}"
        ),
    }
}

fn random_point(rng: &mut ChaCha8Rng, r_max: f64) -> DiscPoint {
    let r = rng.gen_range(0.0..r_max);
    DiscPoint::polar(r, rng.gen_range(0.0..TAU)).expect("inside the disc")
}

fn property_suites(b: &Budget) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6f_7461_7279);
    let mut worst_metric: f64 = 0.0;
    let mut worst_iso: f64 = 0.0;
    let mut symmetric = true;
    for _ in 0..1000 {
        let (p, q, r) = (
            random_point(&mut rng, 0.95),
            random_point(&mut rng, 0.95),
            random_point(&mut rng, 0.95),
        );
        let pq = hyperbolic_distance(p, q).value();
        symmetric &= hyperbolic_distance(q, p).value() == pq;
        let tri = pq + hyperbolic_distance(q, r).value() - hyperbolic_distance(p, r).value();
        worst_metric = worst_metric.max((-tri).max(0.0));
        let center = random_point(&mut rng, 0.6);
        let f = rotation(center, rng.gen_range(0.0..TAU))
            .compose(&translation_to_origin(random_point(&mut rng, 0.6)));
        let (x, y) = (random_point(&mut rng, 0.9), random_point(&mut rng, 0.9));
        let d = hyperbolic_distance(x, y).value();
        let moved = hyperbolic_distance(f.apply(x), f.apply(y)).value();
        worst_iso = worst_iso.max((moved - d).abs() / (1.0 + d));
    }
    let mut gauss_bonnet: f64 = 0.0;
    let mut equivariance: f64 = 0.0;
    for text in [ORDER10, ORDER8] {
        let fp = match solved(text) {
            Ok(fp) => fp,
            Err(e) => {
                return CheckResult {
                    criterion: 10,
                    name: "property suites",
                    passed: false,
                    detail: e,
                }
            }
        };
        let e = &fp.polygon;
        let area = 2.0 * PI * (2.0 * e.source.genus as f64 - 2.0);
        gauss_bonnet = gauss_bonnet.max((e.area() - area).abs());
        let k = e.k();
        let shift = e.source.rotation_shift;
        let rot = e.rotation();
        let samples = [DiscPoint::ORIGIN, e.midpoints[0], e.vertices[1]];
        for m in 0..k {
            let (Ok(lhs), Ok(base)) = (e.pairing_isometry((m + shift) % k), e.pairing_isometry(m))
            else {
                equivariance = f64::INFINITY;
                continue;
            };
            let rhs = rot.compose(&base).compose(&rot.inverse());
            for x in samples {
                equivariance = equivariance.max(lhs.apply(x).euclidean_distance(rhs.apply(x)));
            }
        }
    }
    let passed = symmetric
        && worst_metric <= b.tol(1e-10)
        && worst_iso <= b.tol(1e-11)
        && gauss_bonnet < b.tol(1e-8)
        && equivariance < b.tol(1e-10);
    CheckResult {
        criterion: 10,
        name: "property suites",
        passed,
        detail: format!(
            "1000 random cases: triangle slack {worst_metric:.1e}, isometry drift {worst_iso:.1e}, \
             symmetric {symmetric}; Gauss-Bonnet {gauss_bonnet:.1e}; equivariance {equivariance:.1e}"
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn impossible_budget_fails_numeric_checks() {
        let results = run(Some(1e-300));
        assert_eq!(results.len(), 10);
        assert!(!all_passed(&results));
        assert!(!results[0].passed);
    }

    #[test]
    fn lines_are_labelled() {
        let r = CheckResult {
            criterion: 3,
            name: "x",
            passed: true,
            detail: "d".into(),
        };
        assert_eq!(r.line(), "PASS  3 x: d");
    }
}
