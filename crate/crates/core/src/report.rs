//! Structured verdicts for identity checks.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::exactlin::{LinMap, Shape, Tensor};

/// Number of offending cases kept per identity.
const MAX_VIOLATIONS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Basis multi-index of the input where the two sides differ.
    pub at: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub scope: String,
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub violations: Vec<Violation>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// `scope/name`, or just `name` at top level.
    pub fn qualified_name(&self) -> String {
        if self.scope.is_empty() {
            self.name.clone()
        } else {
            format!("{}/{}", self.scope, self.name)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<IdentityCheck>,
    pub notes: Vec<String>,
}

/// Renders a sparse tensor as `c[i,j] + …`, or `0`.
pub fn render_tensor(t: &Tensor) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.terms()
        .map(|(idx, c)| format!("{c}{idx:?}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

impl CheckReport {
    pub fn new() -> CheckReport {
        CheckReport::default()
    }

    /// Evaluates `lhs` and `rhs` on every basis multi-index of `domain` and
    /// records where they differ.
    pub fn check_identity<L, R>(&mut self, name: &str, domain: &Shape, lhs: L, rhs: R) -> Result<()>
    where
        L: Fn(&[usize]) -> Result<Tensor>,
        R: Fn(&[usize]) -> Result<Tensor>,
    {
        let mut check = IdentityCheck {
            scope: String::new(),
            name: name.to_string(),
            cases: 0,
            failures: 0,
            violations: Vec::new(),
        };
        for idx in domain.indices() {
            check.cases += 1;
            let (l, r) = (lhs(&idx)?, rhs(&idx)?);
            if l.to_dense() != r.to_dense() {
                check.failures += 1;
                if check.violations.len() < MAX_VIOLATIONS {
                    check.violations.push(Violation {
                        at: idx,
                        lhs: render_tensor(&l),
                        rhs: render_tensor(&r),
                    });
                }
            }
        }
        self.checks.push(check);
        Ok(())
    }

    /// Column-by-column equality of two maps with the same domain.
    pub fn compare_maps(&mut self, name: &str, lhs: &LinMap, rhs: &LinMap) -> Result<()> {
        self.check_identity(name, lhs.domain(), |i| Ok(lhs.image_of(i)), |i| {
            rhs.image_of(i).reshape(lhs.codomain().clone())
        })
    }

    /// Records a single yes/no verdict.
    pub fn flag(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let violations = if ok {
            Vec::new()
        } else {
            vec![Violation { at: Vec::new(), lhs: detail.into(), rhs: String::new() }]
        };
        self.checks.push(IdentityCheck {
            scope: String::new(),
            name: name.to_string(),
            cases: 1,
            failures: usize::from(!ok),
            violations,
        });
    }

    /// Folds every check of `parts` into a single check called `name`.
    pub fn absorb_as(&mut self, name: &str, parts: CheckReport) {
        let mut c = IdentityCheck {
            scope: String::new(),
            name: name.to_string(),
            cases: 0,
            failures: 0,
            violations: Vec::new(),
        };
        for p in parts.checks {
            c.cases += p.cases;
            c.failures += p.failures;
            for v in p.violations {
                if c.violations.len() < MAX_VIOLATIONS {
                    c.violations.push(v);
                }
            }
        }
        self.checks.push(c);
        self.notes.extend(parts.notes);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    /// Merges `other` with its check names prefixed by `scope`.
    pub fn merge_scoped(&mut self, scope: &str, other: CheckReport) {
        for mut c in other.checks {
            c.scope = if c.scope.is_empty() {
                scope.to_string()
            } else {
                format!("{scope}/{}", c.scope)
            };
            self.checks.push(c);
        }
        self.notes.extend(other.notes.into_iter().map(|n| format!("{scope}: {n}")));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn get(&self, qualified: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.qualified_name() == qualified)
    }

    /// True only if the named check exists and passed.
    pub fn passes(&self, qualified: &str) -> bool {
        self.get(qualified).is_some_and(IdentityCheck::passed)
    }

    /// True if every named check exists and passed.
    pub fn all_pass(&self, names: &[&str]) -> bool {
        names.iter().all(|n| self.passes(n))
    }

    pub fn failed_names(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(IdentityCheck::qualified_name)
            .collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.checks.iter().map(IdentityCheck::qualified_name).collect()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "PASS {} ({} cases)", c.qualified_name(), c.cases)?;
            } else {
                writeln!(f, "FAIL {} ({}/{} cases)", c.qualified_name(), c.failures, c.cases)?;
                for v in &c.violations {
                    if v.at.is_empty() && v.rhs.is_empty() {
                        writeln!(f, "    {}", v.lhs)?;
                    } else {
                        writeln!(f, "    at {:?}: lhs = {}; rhs = {}", v.at, v.lhs, v.rhs)?;
                    }
                }
            }
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;

    #[test]
    fn records_first_violations() {
        let q = FieldSpec::Rationals;
        let shape = Shape::new([3]);
        let mut r = CheckReport::new();
        r.check_identity(
            "diag",
            &shape,
            |i| Ok(Tensor::basis(q, shape.clone(), i)),
            |i| Ok(Tensor::basis(q, shape.clone(), i).scale(&q.from_i64(if i[0] == 1 { 2 } else { 1 }))),
        )
        .unwrap();
        let c = r.get("diag").unwrap();
        assert_eq!((c.cases, c.failures), (3, 1));
        assert_eq!(c.violations[0].at, vec![1]);
        assert_eq!(c.violations[0].rhs, "2[1]");
        assert!(!r.passed());
        assert_eq!(r.failed_names(), vec!["diag".to_string()]);
    }

    #[test]
    fn scoping_and_lookup() {
        let mut inner = CheckReport::new();
        inner.flag("assoc", true, "");
        let mut outer = CheckReport::new();
        outer.merge_scoped("base", inner);
        assert!(outer.passes("base/assoc"));
        assert!(!outer.passes("assoc"));
        assert!(outer.all_pass(&["base/assoc"]));
        assert!(!outer.all_pass(&["base/assoc", "missing"]));
    }
}
