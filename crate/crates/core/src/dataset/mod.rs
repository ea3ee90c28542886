//! Cyclic data sets: the combinatorial signature of a finite cyclic action.
//!
//! A data set `(n, g0, r; (c1,n1), ..., (cl,nl))` records the degree `n`,
//! the genus `g0` of the quotient orbifold, the free-rotation amount `r`, and
//! one `(c_i, n_i)` pair per cone point. Conjugacy classes of `C_n`-actions
//! on `S_g` correspond one-to-one to valid data sets of degree `n` and genus
//! `g`, so everything here is exact integer arithmetic.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

mod parse;

pub use parse::parse_data_set;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DataSetError {
    #[error("syntax error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("pair index {index} out of range (data set has {len} pairs, indices start at 1)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("incompatible pair: {0}")]
    Incompatible(String),
    #[error("invalid data set: {0}")]
    Invalid(String),
}

/// A cone point `(c, n_i)`: local order `n_i`, rotation residue `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConePair {
    pub c: u64,
    pub n_i: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DataSet {
    pub n: u64,
    pub g0: u64,
    pub r: u64,
    pub pairs: Vec<ConePair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Condition id: `"i"` to `"v"`, `"degree"`, or `"riemann-hurwitz"`.
    pub condition: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ActionKind {
    Rotational,
    Type1,
    Type2,
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionKind::Rotational => "Rotational",
            ActionKind::Type1 => "Type1",
            ActionKind::Type2 => "Type2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActionClass {
    pub kind: ActionKind,
    pub irreducible: bool,
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn lcm_of<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1, lcm)
}

impl DataSet {
    pub fn new(n: u64, g0: u64, r: u64, pairs: &[(u64, u64)]) -> Self {
        DataSet {
            n,
            g0,
            r,
            pairs: pairs.iter().map(|&(c, n_i)| ConePair { c, n_i }).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, DataSetError> {
        parse_data_set(text)
    }

    /// Number of cone points, `ℓ`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `2g` from the Riemann-Hurwitz equation multiplied through by `n`.
    ///
    /// `None` if some `n_i` does not divide `n` (the equation then has no
    /// integral reading).
    fn twice_genus(&self) -> Option<i128> {
        let n = self.n as i128;
        let mut acc = 2 - 2 * n + 2 * n * self.g0 as i128;
        for p in &self.pairs {
            if p.n_i == 0 || !self.n.is_multiple_of(p.n_i) {
                return None;
            }
            acc += n - n / p.n_i as i128;
        }
        Some(acc)
    }

    /// Genus of the surface the data set acts on.
    pub fn genus(&self) -> Result<u64, DataSetError> {
        if self.n < 2 {
            return Err(DataSetError::Invalid("degree must be at least 2".into()));
        }
        let two_g = self.twice_genus().ok_or_else(|| {
            DataSetError::Invalid("a cone order does not divide the degree".into())
        })?;
        if two_g < 0 {
            return Err(DataSetError::Invalid(format!(
                "Riemann-Hurwitz gives negative genus {}/2",
                two_g
            )));
        }
        if two_g % 2 != 0 {
            return Err(DataSetError::Invalid(format!(
                "Riemann-Hurwitz gives non-integral genus {}/2",
                two_g
            )));
        }
        Ok((two_g / 2) as u64)
    }

    /// Checks conditions (i)-(v) and integrality of the genus, recording each
    /// failure separately.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let mut push = |condition: &str, message: String| {
            out.push(Violation {
                condition: condition.to_string(),
                message,
            })
        };
        let n = self.n;
        if n < 2 {
            push("degree", format!("degree n = {n} must be at least 2"));
        }

        // (i)
        if self.r >= n.max(1) {
            push("i", format!("r = {} must lie in [0, n-1]", self.r));
        }
        if (self.r > 0) != self.pairs.is_empty() {
            push(
                "i",
                if self.r > 0 {
                    format!("r = {} > 0 requires no cone points", self.r)
                } else {
                    "a data set without cone points needs r > 0".to_string()
                },
            );
        }
        if self.r > 0 && gcd(self.r, n) != 1 {
            push("i", format!("gcd(r, n) = gcd({}, {n}) != 1", self.r));
        }

        // (ii), (iii)
        let mut orders_divide = true;
        for (i, p) in self.pairs.iter().enumerate() {
            let idx = i + 1;
            if p.n_i < 2 || p.n_i > n || !n.is_multiple_of(p.n_i) {
                orders_divide = false;
                push(
                    "ii",
                    format!(
                        "pair {idx}: cone order {} must divide n = {n} and be >= 2",
                        p.n_i
                    ),
                );
            }
            if p.c < 1 || p.c + 1 > p.n_i.max(1) || gcd(p.c, p.n_i) != 1 {
                push(
                    "iii",
                    format!(
                        "pair {idx}: residue {} must satisfy 1 <= c <= {} and gcd(c, {}) = 1",
                        p.c,
                        p.n_i.saturating_sub(1),
                        p.n_i
                    ),
                );
            }
        }

        // (iv): the deletion clause only bites for ℓ >= 2; the g0 = 0 clause
        // applies for every ℓ (an empty list has lcm 1, which never equals n).
        let total = lcm_of(self.pairs.iter().map(|p| p.n_i));
        if self.pairs.len() >= 2 {
            for i in 0..self.pairs.len() {
                let rest = lcm_of(
                    self.pairs
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, p)| p.n_i),
                );
                if rest != total {
                    push(
                        "iv",
                        format!(
                            "deleting pair {} changes the lcm from {total} to {rest}",
                            i + 1
                        ),
                    );
                }
            }
        }
        if self.g0 == 0 && total != n {
            push(
                "iv",
                format!("g0 = 0 requires lcm of cone orders = n, got {total}"),
            );
        }

        // (v)
        if orders_divide && n >= 2 {
            let sum: u128 = self
                .pairs
                .iter()
                .map(|p| (n / p.n_i) as u128 * p.c as u128)
                .sum();
            if !sum.is_multiple_of(n as u128) {
                push(
                    "v",
                    format!("sum of (n/n_i)*c_i = {sum} is not divisible by n = {n}"),
                );
            }
        }

        if n >= 2 {
            match self.twice_genus() {
                Some(t) if t < 0 => push(
                    "riemann-hurwitz",
                    format!("genus would be negative ({t}/2)"),
                ),
                Some(t) if t % 2 != 0 => push(
                    "riemann-hurwitz",
                    format!("genus would be non-integral ({t}/2)"),
                ),
                Some(_) => {}
                None => push(
                    "riemann-hurwitz",
                    "genus undefined because a cone order does not divide n".to_string(),
                ),
            }
        }
        ValidationReport::from_violations(out)
    }

    /// Rotational / Type 1 / Type 2, plus the irreducibility flag
    /// (quotient is a sphere with three cone points).
    pub fn classify(&self) -> ActionClass {
        let kind = if self.is_rotational() {
            ActionKind::Rotational
        } else if self.pairs.len() == 3 && self.pairs.iter().any(|p| p.n_i == self.n) {
            ActionKind::Type1
        } else {
            ActionKind::Type2
        };
        ActionClass {
            kind,
            irreducible: self.g0 == 0 && self.pairs.len() == 3,
        }
    }

    /// Free rotation, or all cone points of full order whose residues match
    /// up as couples `(c, n), (n-c, n)` for a single `c`.
    fn is_rotational(&self) -> bool {
        if self.r != 0 {
            return true;
        }
        let l = self.pairs.len();
        if l < 2 || !l.is_multiple_of(2) || self.pairs.iter().any(|p| p.n_i != self.n) {
            return false;
        }
        let c = self.pairs[0].c;
        let partner = self.n - c;
        let count_c = self.pairs.iter().filter(|p| p.c == c).count();
        let count_partner = self.pairs.iter().filter(|p| p.c == partner).count();
        if c == partner {
            count_c == l
        } else {
            count_c == count_partner && count_c + count_partner == l
        }
    }

    fn pair_at(&self, index: usize) -> Result<ConePair, DataSetError> {
        if index == 0 || index > self.pairs.len() {
            return Err(DataSetError::IndexOutOfRange {
                index,
                len: self.pairs.len(),
            });
        }
        Ok(self.pairs[index - 1])
    }
}

impl fmt::Display for DataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}", self.n, self.g0)?;
        if self.r != 0 {
            write!(f, ",{}", self.r)?;
        }
        f.write_str(";")?;
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", p.c, p.n_i)?;
        }
        f.write_str(")")
    }
}

/// `(r, s)`-compatibility of two data sets; indices are 1-based as in the
/// `(r, s)` notation.
///
/// Data sets of different degree are never compatible.
pub fn check_compatibility(
    d1: &DataSet,
    r: usize,
    d2: &DataSet,
    s: usize,
) -> Result<bool, DataSetError> {
    let p1 = d1.pair_at(r)?;
    let p2 = d2.pair_at(s)?;
    if d1.n != d2.n || p1.n_i != p2.n_i {
        return Ok(false);
    }
    Ok((p1.c + p2.c) % p1.n_i == 0)
}

/// Glues an `(r, s)`-compatible pair into the data set of the reducible
/// action it defines: quotient genera add, the `r`-th and `s`-th pairs drop.
pub fn compose_compatible(
    d1: &DataSet,
    r: usize,
    d2: &DataSet,
    s: usize,
) -> Result<DataSet, DataSetError> {
    if !check_compatibility(d1, r, d2, s)? {
        return Err(DataSetError::Incompatible(format!(
            "{d1} at {r} and {d2} at {s} are not compatible"
        )));
    }
    let pairs = d1
        .pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != r)
        .map(|(_, p)| *p)
        .chain(
            d2.pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i + 1 != s)
                .map(|(_, p)| *p),
        )
        .collect();
    Ok(DataSet {
        n: d1.n,
        g0: d1.g0 + d2.g0,
        r: 0,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ds(text: &str) -> DataSet {
        parse_data_set(text).unwrap()
    }

    #[test]
    fn paper_data_sets_validate() {
        for (text, g) in [
            ("(10,0;(1,2),(2,5),(1,10))", 2),
            ("(8,0;(1,2),(3,8),(1,8))", 2),
            ("(4,0;(1,2)^[2],(1,4),(3,4))", 2),
            ("(4,0;(1,2),(1,4),(1,4))", 1),
            ("(4,0;(1,2),(3,4),(3,4))", 1),
            ("(5,0;(2,5),(2,5),(1,5))", 2),
        ] {
            let d = ds(text);
            let report = d.validate();
            assert!(report.valid, "{text}: {:?}", report.violations);
            assert_eq!(d.genus().unwrap(), g, "{text}");
        }
    }

    #[test]
    fn condition_five_failure() {
        let report = ds("(10,0;(1,2),(1,5),(1,10))").validate();
        assert!(!report.valid);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].condition, "v");
        assert!(report.violations[0].message.contains("= 8"));
    }

    #[test]
    fn order_eight_condition_five_sum() {
        // 4*1 + 1*3 + 1*1 = 8
        let d = ds("(8,0;(1,2),(3,8),(1,8))");
        let sum: u64 = d.pairs.iter().map(|p| d.n / p.n_i * p.c).sum();
        assert_eq!(sum, 8);
        assert!(d.validate().valid);
    }

    #[test]
    fn each_violation_recorded_separately() {
        // r with cone points, residue not coprime, order not dividing n
        let d = DataSet::new(6, 1, 1, &[(2, 4), (1, 6)]);
        let report = d.validate();
        let ids: Vec<_> = report
            .violations
            .iter()
            .map(|v| v.condition.as_str())
            .collect();
        assert!(ids.contains(&"i"));
        assert!(ids.contains(&"ii"));
        assert!(ids.contains(&"iii"));
        assert!(!report.valid);
    }

    #[test]
    fn condition_four_edge_cases() {
        // ℓ = 1 with g0 > 0: deletion clause vacuous, (v) fails on its own.
        let report = DataSet::new(4, 1, 0, &[(1, 4)]).validate();
        assert!(report.violations.iter().all(|v| v.condition != "iv"));
        // ℓ = 1 with g0 = 0: lcm(n_1) = n holds, deletion clause vacuous.
        let report = DataSet::new(4, 0, 0, &[(1, 4)]).validate();
        assert!(report.violations.iter().all(|v| v.condition != "iv"));
        // ℓ = 0 with g0 = 0: lcm of the empty list is 1 != n.
        let report = DataSet::new(3, 0, 1, &[]).validate();
        assert!(report.violations.iter().any(|v| v.condition == "iv"));
        // deletion changes the lcm
        let report = DataSet::new(6, 1, 0, &[(1, 2), (1, 3), (1, 3)]).validate();
        assert!(report.violations.iter().any(|v| v.condition == "iv"));
    }

    #[test]
    fn genus_values() {
        assert_eq!(ds("(10,0;(1,2),(2,5),(1,10))").genus().unwrap(), 2);
        assert_eq!(ds("(4,0;(1,2),(1,4),(1,4))").genus().unwrap(), 1);
        assert_eq!(ds("(8,0;(1,2),(3,8),(1,8))").genus().unwrap(), 2);
        assert_eq!(ds("(2,1,1;)").genus().unwrap(), 1);
        assert!(ds("(2,0;(1,2),(1,2),(1,2))").genus().is_err());
        assert!(ds("(3,0;(1,3))").genus().is_err());
    }

    #[test]
    fn classification() {
        let c = ds("(10,0;(1,2),(2,5),(1,10))").classify();
        assert_eq!(c.kind, ActionKind::Type1);
        assert!(c.irreducible);
        let c = ds("(4,0;(1,2),(1,2),(1,4),(3,4))").classify();
        assert_eq!(c.kind, ActionKind::Type2);
        assert!(!c.irreducible);
        assert_eq!(ds("(6,1,1;)").classify().kind, ActionKind::Rotational);
        // irreducible without a cone point of full order
        let d = ds("(30,0;(1,6),(1,10),(11,15))");
        assert!(d.validate().valid);
        assert_eq!(d.genus().unwrap(), 11);
        let c = d.classify();
        assert!(c.irreducible);
        assert_ne!(c.kind, ActionKind::Type1);
        assert_eq!(
            ds("(5,0;(1,5),(4,5),(1,5),(4,5))").classify().kind,
            ActionKind::Rotational
        );
        // order-insensitive matching
        assert_eq!(
            ds("(5,0;(1,5),(1,5),(4,5),(4,5))").classify().kind,
            ActionKind::Rotational
        );
        // two different residues do not form a rotation
        assert_eq!(
            ds("(5,0;(1,5),(4,5),(2,5),(3,5))").classify().kind,
            ActionKind::Type2
        );
        // hyperelliptic involution style: c = n - c
        assert_eq!(
            ds("(2,1;(1,2),(1,2))").classify().kind,
            ActionKind::Rotational
        );
    }

    #[test]
    fn compatibility_examples() {
        let d1 = ds("(4,0;(1,2),(1,4),(1,4))");
        let d2 = ds("(4,0;(1,2),(3,4),(3,4))");
        assert!(check_compatibility(&d1, 3, &d2, 3).unwrap());
        assert!(!check_compatibility(&d1, 1, &d2, 2).unwrap());
        let d = ds("(10,0;(1,2),(2,5),(1,10))");
        assert!(!check_compatibility(&d, 2, &d, 2).unwrap());
        assert!(matches!(
            check_compatibility(&d1, 0, &d2, 1),
            Err(DataSetError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            check_compatibility(&d1, 1, &d2, 4),
            Err(DataSetError::IndexOutOfRange { index: 4, len: 3 })
        ));
    }

    #[test]
    fn compose_example() {
        let d1 = ds("(4,0;(1,2),(1,4),(1,4))");
        let d2 = ds("(4,0;(1,2),(3,4),(3,4))");
        let g = compose_compatible(&d1, 3, &d2, 3).unwrap();
        assert_eq!(g, ds("(4,0;(1,2),(1,4),(1,2),(3,4))"));
        assert!(g.validate().valid);
        assert_eq!(g.genus().unwrap(), 2);
        assert_eq!(
            g.genus().unwrap(),
            d1.genus().unwrap() + d2.genus().unwrap() + 4 / 4 - 1
        );
        assert!(compose_compatible(&d1, 1, &d2, 2).is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["(10,0;(1,2),(2,5),(1,10))", "(2,1,1;)"] {
            assert_eq!(ds(text).to_string(), text);
        }
    }

    #[test]
    fn json_field_names() {
        let v = serde_json::to_value(ds("(10,0;(1,2),(2,5),(1,10))")).unwrap();
        assert_eq!(v["n"], 10);
        assert_eq!(v["g0"], 0);
        assert_eq!(v["r"], 0);
        assert_eq!(v["pairs"][1]["c"], 2);
        assert_eq!(v["pairs"][1]["n_i"], 5);
        let v = serde_json::to_value(ds("(10,0;(1,2),(1,5),(1,10))").validate()).unwrap();
        assert_eq!(v["valid"], false);
        assert_eq!(v["violations"][0]["condition"], "v");
    }

    proptest! {
        // Riemann-Hurwitz holds exactly in rationals for whatever validate accepts.
        #[test]
        fn riemann_hurwitz_exact(
            n in 2u64..13,
            g0 in 0u64..3,
            raw in proptest::collection::vec((1u64..13, 1u64..13), 0..5),
        ) {
            let pairs: Vec<(u64, u64)> = raw;
            let d = DataSet::new(n, g0, 0, &pairs);
            if d.validate().valid {
                let g = d.genus().unwrap() as i128;
                // (2 - 2g)/n == 2 - 2g0 + Σ(1/n_i - 1), cleared by n
                let lhs = 2 - 2 * g;
                let rhs: i128 = n as i128 * (2 - 2 * g0 as i128)
                    + d.pairs.iter().map(|p| (n / p.n_i) as i128 - n as i128).sum::<i128>();
                prop_assert_eq!(lhs, rhs);
                let c = d.classify();
                if c.irreducible {
                    prop_assert_eq!(d.g0, 0);
                    prop_assert_eq!(d.len(), 3);
                }
            }
        }
    }
}
