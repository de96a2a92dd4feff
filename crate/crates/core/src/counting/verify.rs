use num_rational::Rational64;
use serde::Serialize;

use crate::cayley::GenSet;
use crate::error::Result;
use crate::stable::{stable_length, PowerSchedule};
use crate::words::CyclicClass;
use crate::WordMetric;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: String, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check {
        pass: expected == actual,
        name,
        expected,
        actual,
    }
}

/// The generating set `{a, b, a^5}`: `l_S(a^(5n) b) = n + 1` while the
/// stable length of `a` is `1/5`.
pub fn verify_paper_example() -> Result<VerificationReport> {
    let genset = GenSet::build(2, &["a", "b", "aaaaa"], 4)?;
    let metric = WordMetric::new(genset).with_class_table(6)?;
    let mut checks = Vec::new();
    for n in 1..=4u32 {
        let word = "a".repeat(5 * n as usize) + "b";
        let class = CyclicClass::parse(2, &word, false)?;
        let actual = match metric.conj_length(&class, 8) {
            Ok(k) => k.to_string(),
            Err(e) => e.to_string(),
        };
        checks.push(check(format!("length of a^{}b", 5 * n), n + 1, actual));
    }
    let a = CyclicClass::parse(2, "a", false)?;
    let estimate = stable_length(&a, &metric, &PowerSchedule::All, 5, 8)?;
    let fifth = Rational64::new(1, 5);
    checks.push(check(
        "stable bracket of a".into(),
        format!("[{fifth}, {fifth}]"),
        format!("[{}, {}]", estimate.lower, estimate.upper),
    ));
    checks.push(check("length of a".into(), 1, metric.conj_length(&a, 8)?));
    Ok(VerificationReport { checks })
}
