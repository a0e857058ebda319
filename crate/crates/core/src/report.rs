//! Structured verification records shared by every check.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_rational::Rational64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A witness value attached to a check.
#[derive(Clone, Debug, PartialEq)]
pub enum Detail {
    Text(String),
    Integer(i64),
    Number(f64),
    Fraction(Rational64),
    Complex(f64, f64),
    Bool(bool),
    List(Vec<Detail>),
    Map(Vec<(String, Detail)>),
}

impl From<&str> for Detail {
    fn from(s: &str) -> Self {
        Detail::Text(s.into())
    }
}

impl From<String> for Detail {
    fn from(s: String) -> Self {
        Detail::Text(s)
    }
}

impl From<i64> for Detail {
    fn from(n: i64) -> Self {
        Detail::Integer(n)
    }
}

impl From<usize> for Detail {
    fn from(n: usize) -> Self {
        Detail::Integer(n as i64)
    }
}

impl From<f64> for Detail {
    fn from(x: f64) -> Self {
        Detail::Number(x)
    }
}

impl From<bool> for Detail {
    fn from(b: bool) -> Self {
        Detail::Bool(b)
    }
}

impl From<Rational64> for Detail {
    fn from(r: Rational64) -> Self {
        Detail::Fraction(r)
    }
}

impl core::fmt::Display for Detail {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Detail::Text(s) => write!(f, "{s}"),
            Detail::Integer(n) => write!(f, "{n}"),
            Detail::Number(x) => write!(f, "{x:e}"),
            Detail::Fraction(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Detail::Complex(re, im) => write!(f, "[{re}, {im}]"),
            Detail::Bool(b) => write!(f, "{b}"),
            Detail::List(items) => {
                write!(f, "[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, "]")
            }
            Detail::Map(entries) => {
                write!(f, "{{")?;
                for (i, (k, v)) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{k}: {v}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: Vec<(String, Detail)>,
    /// Wall-clock seconds, filled in by hosts that have a clock.
    pub timing: Option<f64>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check { name: name.into(), status, details: Vec::new(), timing: None }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Check::new(name, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, reason: impl ToString) -> Self {
        Check::new(name, Status::Fail).with("reason", Detail::Text(reason.to_string()))
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, Status::from_bool(ok))
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Detail>) -> Self {
        self.details.push((key.into(), value.into()));
        self
    }

    pub fn detail(&self, key: &str) -> Option<&Detail> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Report {
    pub command: String,
    pub config: Vec<(String, Detail)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), config: Vec::new(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Fail if any check failed, otherwise pass.
    pub fn overall(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.overall() == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Orders checks by name, the fixed assembly order of reports.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_fails_on_any_failure() {
        let mut r = Report::new("demo");
        r.push(Check::pass("b"));
        r.push(Check::new("a", Status::Skip));
        assert!(r.passed());
        r.push(Check::fail("c", "boom"));
        assert_eq!(r.overall(), Status::Fail);
        r.sort();
        assert_eq!(r.checks[0].name, "a");
        assert_eq!(r.check("c").unwrap().detail("reason"), Some(&Detail::Text("boom".into())));
    }

    #[test]
    fn fractions_render_as_num_over_den() {
        let d = Detail::List(alloc::vec![Detail::Fraction(Rational64::new(-1, 2)), Detail::Fraction(Rational64::from(0))]);
        assert_eq!(alloc::format!("{d}"), "[-1/2, 0/1]");
    }
}
