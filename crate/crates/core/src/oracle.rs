//! Independent reference values: closed forms evaluated directly, the
//! logarithmic alternatives, intermediate quantities of the order-8
//! computation, and a brute-force enumeration of data sets.

use serde::Serialize;

use crate::dataset::{gcd, DataSet};
use crate::fnpipe::Family;

/// One coordinate in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClosedForm {
    pub name: &'static str,
    pub expression: &'static str,
    pub value: f64,
}

fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

const S5: f64 = 2.23606797749979;

/// `(ℓ1, ℓ2, ℓ3, t1, t2, t3)` of a built-in family, in closed form.
pub fn closed_forms(family: Family) -> [ClosedForm; 6] {
    let cf = |name, expression, value| ClosedForm {
        name,
        expression,
        value,
    };
    match family {
        Family::Order10 => {
            let l = 2.0 * ((2.0 + S5) / 2.0).acosh();
            let l3 = 2.0 * sqrt((5.0 + 3.0 * S5) / 2.0).asinh();
            let t = 2.0 * (sqrt(25.0 + 9.0 * S5) / 4.0).acosh();
            let t3 = -((3.0 + S5) / 2.0).acosh();
            [
                cf("l1", "2*arcosh((2+sqrt(5))/2)", l),
                cf("l2", "2*arcosh((2+sqrt(5))/2)", l),
                cf("l3", "2*arsinh(sqrt((5+3*sqrt(5))/2))", l3),
                cf("t1", "2*arcosh(sqrt(25+9*sqrt(5))/4)", t),
                cf("t2", "2*arcosh(sqrt(25+9*sqrt(5))/4)", t),
                cf("t3", "-arcosh((3+sqrt(5))/2)", t3),
            ]
        }
        Family::Order8 => {
            let s2 = std::f64::consts::SQRT_2;
            let l = 2.0 * (1.0 + s2).acosh();
            let l3 = 2.0 * (2.0 * sqrt(4.0 + 3.0 * s2)).asinh();
            let t3 = -2.0 * sqrt(2.0 + s2).acosh();
            [
                cf("l1", "2*arcosh(1+sqrt(2))", l),
                cf("l2", "2*arcosh(1+sqrt(2))", l),
                cf("l3", "2*arsinh(2*sqrt(4+3*sqrt(2)))", l3),
                cf("t1", "2*arcosh(1+sqrt(2))", l),
                cf("t2", "2*arcosh(1+sqrt(2))", l),
                cf("t3", "-2*arcosh(sqrt(2+sqrt(2)))", t3),
            ]
        }
    }
}

/// Logarithmic forms printed alongside the inverse hyperbolic ones, paired
/// with the index of the coordinate they express.
pub fn log_forms(family: Family) -> Vec<(usize, ClosedForm)> {
    match family {
        Family::Order10 => vec![
            (
                5,
                ClosedForm {
                    name: "t3",
                    expression: "-ln((3+sqrt(5)+sqrt(10+6*sqrt(5)))/2)",
                    value: -((3.0 + S5 + sqrt(10.0 + 6.0 * S5)) / 2.0).ln(),
                },
            ),
            (
                3,
                ClosedForm {
                    name: "t1",
                    expression: "ln((17+9*sqrt(5)+3*sqrt(70+34*sqrt(5)))/8)",
                    value: ((17.0 + 9.0 * S5 + 3.0 * sqrt(70.0 + 34.0 * S5)) / 8.0).ln(),
                },
            ),
        ],
        Family::Order8 => {
            let s2 = std::f64::consts::SQRT_2;
            vec![
                (
                    0,
                    ClosedForm {
                        name: "l1",
                        expression: "2*ln(1+sqrt(2)+sqrt(2+2*sqrt(2)))",
                        value: 2.0 * (1.0 + s2 + sqrt(2.0 + 2.0 * s2)).ln(),
                    },
                ),
                (
                    2,
                    ClosedForm {
                        name: "l3",
                        expression: "2*ln(3+2*sqrt(2)+2*sqrt(4+3*sqrt(2)))",
                        value: 2.0 * (3.0 + 2.0 * s2 + 2.0 * sqrt(4.0 + 3.0 * s2)).ln(),
                    },
                ),
                (
                    5,
                    ClosedForm {
                        name: "t3",
                        expression: "-2*ln(sqrt(1+sqrt(2))+sqrt(2+sqrt(2)))",
                        value: -2.0 * (sqrt(1.0 + s2) + sqrt(2.0 + s2)).ln(),
                    },
                ),
            ]
        }
    }
}

/// Printed quantities of the order-8 twist computation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Order8Values {
    /// Euclidean radius of the midpoints, `tanh(s/2)`.
    pub r: f64,
    /// Center `(a, b)` and radius `ρ` of the circle carrying `M1M2`.
    pub a: f64,
    pub b: f64,
    pub rho: f64,
    /// Foot on `M1M2` of the perpendicular to the diagonal.
    pub q1: (f64, f64),
    /// Foot on the diagonal.
    pub p1: (f64, f64),
}

pub fn order8_values() -> Order8Values {
    let s2 = std::f64::consts::SQRT_2;
    let r = sqrt(s2 - 1.0);
    let a = sqrt(-0.5 + 1.0 / s2);
    let b = a / (1.0 - s2);
    Order8Values {
        r,
        a,
        b,
        rho: sqrt(a * a + b * b - 1.0),
        q1: (0.0, -r),
        p1: (
            -0.5 * sqrt(-6.0 + 5.0 * s2 - 2.0 * sqrt(2.0 * (10.0 - 7.0 * s2))),
            -0.5 * sqrt(2.0 + 3.0 * s2 - 2.0 * sqrt(2.0 * (2.0 + s2))),
        ),
    }
}

/// `P3` of the order-10 computation, on the diameter through `M1`.
pub fn order10_p3() -> (f64, f64) {
    (0.0, -(S5.sqrt() - sqrt(S5 - 1.0)))
}

/// `P1` of the order-10 computation: the foot on `M2M3` of the
/// perpendicular to the diameter through `M1`.
pub fn order10_p1() -> (f64, f64) {
    let x1 =
        (30.0 * sqrt(2.0 + S5) - 10.0 * sqrt(5.0 * (2.0 + S5)) - 4.0 * sqrt(-925.0 + 415.0 * S5))
            / (-75.0 + 43.0 * S5);
    let y1 = -S5.sqrt()
        + 2.0
            * sqrt(
                10.0 * (-803.0 + 362.0 * S5 + 6.0 * sqrt(225.0 - 95.0 * S5)
                    - 10.0 * sqrt(45.0 - 19.0 * S5)),
            )
            / (-75.0 + 43.0 * S5);
    (x1, y1)
}

/// Every valid data set of degree `2 ≤ n ≤ max_n` acting on a surface of
/// genus `1 ≤ g ≤ max_g`, with cone pairs listed in a canonical order.
pub fn enumerate_data_sets(max_n: u64, max_g: u64) -> Vec<DataSet> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let types: Vec<(u64, u64)> = (2..=n)
            .filter(|m| n % m == 0)
            .flat_map(|m| (1..m).filter(move |&c| gcd(c, m) == 1).map(move |c| (c, m)))
            .collect();
        // 2g = 2 − 2n + 2n·g0 + Σ(n − n/n_i) bounds g0 and the number of pairs
        let max_twice = 2 * max_g as i64;
        for g0 in 0..=max_g + 1 {
            let base = 2 - 2 * n as i64 + 2 * n as i64 * g0 as i64;
            if base > max_twice {
                break;
            }
            for r in 1..n {
                let d = DataSet::new(n, g0, r, &[]);
                if d.validate().valid && (1..=max_g).contains(&d.genus().unwrap_or(0)) {
                    out.push(d);
                }
            }
            // (first admissible pair type, pairs so far, running 2g)
            type Partial = (usize, Vec<(u64, u64)>, i64);
            let mut stack: Vec<Partial> = vec![(0, Vec::new(), base)];
            while let Some((from, pairs, twice)) = stack.pop() {
                if !pairs.is_empty() {
                    let d = DataSet::new(n, g0, 0, &pairs);
                    if d.validate().valid && (1..=max_g).contains(&d.genus().unwrap_or(0)) {
                        out.push(d);
                    }
                }
                for (t, &(c, m)) in types.iter().enumerate().skip(from) {
                    let next = twice + (n - n / m) as i64;
                    if next <= max_twice {
                        let mut p = pairs.clone();
                        p.push((c, m));
                        stack.push((t, p, next));
                    }
                }
            }
        }
    }
    out
}

/// Genus of the glued action by the lemma's formula `g1 + g2 + n/k − 1`.
pub fn glued_genus(g1: u64, g2: u64, n: u64, k: u64) -> u64 {
    g1 + g2 + n / k - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_forms_agree() {
        for family in [Family::Order10, Family::Order8] {
            let cf = closed_forms(family);
            for (i, alt) in log_forms(family) {
                assert!(
                    (cf[i].value - alt.value).abs() < 1e-12,
                    "{}",
                    alt.expression
                );
            }
        }
    }

    #[test]
    fn order8_printed_values_are_consistent() {
        let v = order8_values();
        assert!((v.rho - v.r).abs() < 1e-12);
        assert!((v.b + sqrt(0.5 + 1.0 / std::f64::consts::SQRT_2)).abs() < 1e-12);
        // P1 lies on the diagonal y = (1 + √2)x and on the perpendicular circle
        let (x, y) = v.p1;
        assert!((y - (1.0 + std::f64::consts::SQRT_2) * x).abs() < 1e-12);
        assert!(((x + v.a).powi(2) + (y - v.b).powi(2) - v.rho * v.rho).abs() < 1e-12);
    }

    #[test]
    fn enumeration_contains_the_quoted_data_sets() {
        let all = enumerate_data_sets(10, 2);
        let shown: Vec<String> = all.iter().map(|d| d.to_string()).collect();
        for text in [
            "(10,0;(1,2),(2,5),(1,10))",
            "(8,0;(1,2),(1,8),(3,8))",
            "(4,0;(1,2),(1,4),(1,4))",
            "(4,0;(1,2),(1,2),(1,4),(3,4))",
            "(2,0;(1,2),(1,2),(1,2),(1,2),(1,2),(1,2))",
        ] {
            assert!(shown.iter().any(|s| s == text), "{text}");
        }
        assert!(all.iter().all(|d| d.validate().valid));
        let mut dedup = shown.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), shown.len());
    }
}
