//! Serialized forms of values and reports.
//!
//! A value `x = p^v * u` with `u` a unit of `Z_q` is printed as `valuation = v`
//! and, for each coefficient of `u` in the basis `1, zeta, .., zeta^(f-1)`,
//! its base-`p` digits little endian, as many as are certified.

use free_series::Word;
use mzv_closed_forms::{Ingredient, MzvValue};
use padic_core::{Zq, ZqElem};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct PadicOut {
    /// `None` for a value that is zero to its certified precision.
    pub valuation: Option<i32>,
    pub digits: Vec<Vec<u8>>,
    pub certified_digits: i32,
}

impl PadicOut {
    pub fn new(ring: &Zq, x: &ZqElem, certified: i32) -> Self {
        let x = x.with_prec(certified.min(x.prec()));
        match x.valuation() {
            None => PadicOut { valuation: None, digits: Vec::new(), certified_digits: certified },
            Some(v) => PadicOut {
                valuation: Some(v),
                digits: ring.unit_digits(&x, certified - v),
                certified_digits: certified,
            },
        }
    }

    pub fn text(&self, p: u64) -> String {
        let Some(v) = self.valuation else {
            return format!("0 (mod {p}^{})", self.certified_digits);
        };
        let coeffs: Vec<String> =
            self.digits.iter().map(|d| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        format!("{p}^{v} * [{}] (certified to {p}^{})", coeffs.join(" | "), self.certified_digits)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueOut {
    pub p: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub base: u8,
    pub word: String,
    #[serde(flatten)]
    pub value: PadicOut,
    pub provenance: Vec<String>,
    pub ingredients: Vec<Ingredient>,
}

impl ValueOut {
    pub fn new(ring: &Zq, base: u8, word: &Word, v: &MzvValue) -> Self {
        ValueOut {
            p: ring.p(),
            m: ring.m(),
            base,
            word: word.to_string(),
            value: PadicOut::new(ring, &v.value, v.certified_digits),
            provenance: v.provenance.clone(),
            ingredients: v.ingredients.clone(),
        }
    }

    pub fn text(&self) -> String {
        format!("g_{}[{}] = {}\t{}", self.base, self.word, self.value.text(self.p), self.provenance.join(" <- "))
    }
}

/// One check inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Digits of agreement or certificate, where that is meaningful.
    pub digits: Option<i32>,
    pub detail: String,
}

impl Check {
    pub fn digits(name: impl Into<String>, digits: i32, need: i32, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed: digits >= need, digits: Some(digits), detail: detail.into() }
    }

    pub fn flag(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, digits: None, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        SuiteReport { suite: suite.into(), passed: !checks.is_empty() && checks.iter().all(|c| c.passed), checks }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub p: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub threshold: i32,
    pub passed: bool,
    pub first_failure: Option<(String, Check)>,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn new(p: u64, m: u64, threshold: i32, suites: Vec<SuiteReport>) -> Self {
        let first_failure = suites.iter().find_map(|s| s.first_failure().map(|c| (s.suite.clone(), c.clone())));
        VerifyReport { p, m, threshold, passed: suites.iter().all(|s| s.passed), first_failure, suites }
    }

    pub fn text(&self) -> String {
        let mut out = Vec::new();
        for s in &self.suites {
            let n = s.checks.iter().filter(|c| c.passed).count();
            out.push(format!(
                "[{}] {}: {n}/{} checks",
                if s.passed { "PASS" } else { "FAIL" },
                s.suite,
                s.checks.len()
            ));
            for c in s.checks.iter().filter(|c| !c.passed) {
                out.push(format!(
                    "    failed {}: {} {}",
                    c.name,
                    c.digits.map_or(String::new(), |d| format!("({d} digits)")),
                    c.detail
                ));
            }
        }
        out.join("\n")
    }
}
